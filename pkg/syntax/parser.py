"""Parses `.lp` sources into declarations

Contains the following:
    * SymbolDecl, RuleDecl, SourceFile (abstract syntax)
    * parse
    * parse_term

"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional, Tuple, Union

from lark import Lark, Transformer, Token, v_args
from lark.exceptions import UnexpectedInput, VisitError

from syntax.grammar import GRAMMAR
from terms import STAR, Abs, App, Prod, Symbol, Term, Var, abstract

logger = logging.getLogger(__name__)


class ParseError(ValueError):
    """Raised on malformed source text, with the offending line and column"""

    def __init__(self, message: str, line: int = None, column: int = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


@dataclass(frozen=True)
class SymbolDecl:
    name: str
    type: Term
    constant: bool = False
    injective_on: frozenset = frozenset()
    fully_injective: bool = False
    line: Optional[int] = field(default=None, compare=False)


@dataclass(frozen=True)
class RuleDecl:
    lhs: Term
    rhs: Term
    line: Optional[int] = field(default=None, compare=False)


Declaration = Union[SymbolDecl, RuleDecl]


@dataclass(frozen=True)
class SourceFile:
    declarations: Tuple[Declaration, ...] = ()

    def __iter__(self):
        return iter(self.declarations)

    def __len__(self) -> int:
        return len(self.declarations)


def _bind(body: Term, name: str) -> Term:
    # identifiers parse to symbols; a binder claims the ones spelling its name
    return abstract(body, Symbol(name))


@v_args(inline=True)
class _ToAst(Transformer):
    def start(self, *declarations):
        flat = []
        for declaration in declarations:
            if isinstance(declaration, list):
                flat += declaration
            else:
                flat.append(declaration)
        return SourceFile(tuple(flat))

    @v_args(meta=True, inline=True)
    def symbol_decl(self, meta, *children):
        *modifiers, name, type_ = children
        constant = "constant" in [kind for kind, _ in modifiers]
        injective_on, fully_injective = frozenset(), False
        for kind, indices in modifiers:
            if kind != "injective":
                continue
            if indices is None:
                fully_injective = True
            else:
                injective_on |= indices

        return SymbolDecl(
            str(name),
            type_,
            constant=constant,
            injective_on=injective_on,
            fully_injective=fully_injective,
            line=getattr(meta, "line", None),
        )

    def constant(self):
        return "constant", None

    def injective(self, indices=None):
        return "injective", indices

    def index_set(self, *indices):
        return frozenset(int(index) for index in indices)

    @v_args(meta=True, inline=True)
    def rule_decl(self, meta, *rewrites):
        line = getattr(meta, "line", None)
        return [RuleDecl(lhs, rhs, line=line) for lhs, rhs in rewrites]

    def rewrite(self, lhs, rhs):
        return lhs, rhs

    def arrow(self, domain, codomain):
        # the unused binder cannot capture: `codomain` holds no loose index 0
        return Prod(domain, abstract(codomain, Var("")), "_")

    def pi(self, name, domain, codomain):
        return Prod(domain, _bind(codomain, str(name)), str(name))

    def lam(self, name, domain, body):
        return Abs(domain, _bind(body, str(name)), str(name))

    def app(self, head, arg):
        return App(head, arg)

    def symbol(self, token: Token):
        return Symbol(str(token))

    def var(self, token: Token):
        return Var(str(token)[1:])

    def sort(self):
        return STAR


_PARSER = Lark(GRAMMAR, parser="lalr", propagate_positions=True)
_TERM_PARSER = Lark(
    GRAMMAR, parser="lalr", start="term", propagate_positions=True
)


def _run(parser: Lark, text: str):
    try:
        tree = parser.parse(text)
    except UnexpectedInput as err:
        line = err.line if err.line != -1 else None
        column = err.column if err.column != -1 else None
        raise ParseError(f"syntax error: {_describe(err)}", line, column) from err

    try:
        return _ToAst().transform(tree)
    except VisitError as err:
        raise ParseError(f"syntax error: {err.orig_exc}") from err


def _describe(err: UnexpectedInput) -> str:
    token = getattr(err, "token", None)
    if token is not None:
        if token.type == "$END":
            return "unexpected end of input"
        return f"unexpected token '{token}'"
    char = getattr(err, "char", None)
    if char is not None:
        return f"unexpected character '{char}'"
    return type(err).__name__


def parse(text: str) -> SourceFile:
    """Parses a `.lp` source into a SourceFile

    `$x` parses to the rule variable `x`, every other identifier to a symbol
    (or to the bound variable of an enclosing binder with that name).
    Whether symbols are declared is not checked here.

    Args:
        text (str): Source text.

    Returns:
        SourceFile: declarations in source order, `rule ... with ...` blocks
            flattened into one RuleDecl per rewrite

    Raises:
        ParseError: If `text` does not follow the grammar.

    """
    source = _run(_PARSER, text)
    logger.debug("parsed %d declarations", len(source))
    return source


def parse_term(text: str) -> Term:
    """Parses a single term, e.g. ``"Pi x : N, V x"``"""
    return _run(_TERM_PARSER, text)
