"""Prints terms and declarations back to `.lp` source

Output is ASCII (`Pi`, `->`, `\\`, `-->`) and parses back to the printed
term. Rule variables print as `$x`; hats and frozen names print as they are
spelt, which is readable but not parsable.

Contains the following functions:
    * print_term
    * print_declaration
    * print_source

"""

import re
from typing import List

from syntax.parser import RuleDecl, SourceFile, SymbolDecl
from terms import (
    Abs,
    App,
    BVar,
    Prod,
    Sort,
    SortKind,
    Symbol,
    Term,
    Var,
    symbols_of,
)

KEYWORDS = {"symbol", "rule", "with", "constant", "injective", "TYPE", "Pi"}

_IDENT = re.compile(r"(?:[^\s(),:;$\\λΠ→↪#^\u0302\-\/]|-(?!-?>)|\/(?!\/))+")

# printing levels: a term at a lower level needs parens in a higher context
_BINDER, _APP, _ATOM = 0, 1, 2


def _binds_index(t: Term, depth: int = 0) -> bool:
    match t:
        case BVar(index):
            return index == depth
        case App(head, arg):
            return _binds_index(head, depth) or _binds_index(arg, depth)
        case Abs(domain, body, _) | Prod(domain, body, _):
            return _binds_index(domain, depth) or _binds_index(body, depth + 1)
        case _:
            return False


def _is_identifier(name: str) -> bool:
    return name not in KEYWORDS and _IDENT.fullmatch(name) is not None


def _pick_name(hint: str, body: Term, scope: List[str]) -> str:
    """Chooses a printable binder name that captures nothing in `body`"""
    base = hint if _is_identifier(hint) else "x"
    taken = symbols_of(body) | set(scope)

    name, suffix = base, 0
    while name in taken:
        suffix += 1
        name = f"{base}{suffix}"
    return name


def _print(t: Term, scope: List[str], level: int) -> str:
    match t:
        case Sort(kind):
            return "TYPE" if kind == SortKind.STAR else "KIND"
        case BVar(index):
            if index >= len(scope):
                return f"<{index}>"
            return scope[-1 - index]
        case Var(name):
            return f"${name}"
        case Symbol(name):
            return name
        case App(head, arg):
            text = f"{_print(head, scope, _APP)} {_print(arg, scope, _ATOM)}"
            own = _APP
        case Prod(domain, codomain, hint) if not _binds_index(codomain):
            # scope still grows so indices in the codomain stay aligned
            text = (
                f"{_print(domain, scope, _APP)} -> "
                f"{_print(codomain, scope + ['_'], _BINDER)}"
            )
            own = _BINDER
        case Prod(domain, codomain, hint):
            name = _pick_name(hint, codomain, scope)
            text = (
                f"Pi {name} : {_print(domain, scope, _BINDER)}, "
                f"{_print(codomain, scope + [name], _BINDER)}"
            )
            own = _BINDER
        case Abs(domain, body, hint):
            name = _pick_name(hint, body, scope)
            text = (
                f"\\{name} : {_print(domain, scope, _BINDER)}, "
                f"{_print(body, scope + [name], _BINDER)}"
            )
            own = _BINDER
        case _:
            raise TypeError(f"not a term: {t!r}")

    return f"({text})" if own < level else text


def print_term(t: Term) -> str:
    """Prints a term in ASCII surface syntax

    Example:
        ``print_term(Prod(Symbol("N"), App(Symbol("V"), BVar(0)), "x"))``
        -->  ``"Pi x : N, V x"``

    Args:
        t (Term): Term to print; loose indices print as `<i>`.

    Returns:
        str: source text that parses back to `t` when every free name is a
            legal identifier

    """
    return _print(t, [], _BINDER)


def print_declaration(declaration) -> str:
    if isinstance(declaration, RuleDecl):
        return (
            f"rule {print_term(declaration.lhs)} --> {print_term(declaration.rhs)}"
        )

    if not isinstance(declaration, SymbolDecl):
        raise TypeError(f"not a declaration: {declaration!r}")

    modifiers = []
    if declaration.constant:
        modifiers.append("constant")
    if declaration.fully_injective:
        modifiers.append("injective")
    elif declaration.injective_on:
        indices = ",".join(str(i) for i in sorted(declaration.injective_on))
        modifiers.append(f"injective({indices})")

    return " ".join(
        modifiers + ["symbol", declaration.name, ":", print_term(declaration.type)]
    )


def print_source(source: SourceFile) -> str:
    return "".join(print_declaration(d) + "\n" for d in source)
