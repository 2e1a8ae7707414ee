"""Term algebra of the λΠ-calculus

Bound variables are de Bruijn indices (`BVar`); free and rule variables are
named (`Var`). Binders keep the user's name only as a printing hint, so two
terms that differ in bound names compare equal and α-equivalence is plain
structural equality.

Contains the following:
    * Sort, BVar, Var, Symbol, Abs, App, Prod (term variants)
    * subst, alpha_eq, free_vars, subterm_at
    * lift, instantiate, abstract, open_binder, spine, apply_args
    * iter_subterms, replace_at, symbols_of, is_closed, term_size
    * fresh_name

"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Set, Tuple, Union


class TermError(ValueError):
    """Base class for errors raised by term operations."""


class InvalidPosition(TermError):
    """Raised when a position addresses no subterm."""


class SortKind(enum.Enum):
    STAR = "TYPE"
    BOX = "KIND"


@dataclass(frozen=True)
class Sort:
    kind: SortKind


@dataclass(frozen=True)
class BVar:
    index: int


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Symbol:
    name: str


@dataclass(frozen=True)
class Abs:
    domain: "Term"
    body: "Term"
    name: str = field(default="x", compare=False)


@dataclass(frozen=True)
class App:
    head: "Term"
    arg: "Term"


@dataclass(frozen=True)
class Prod:
    domain: "Term"
    codomain: "Term"
    name: str = field(default="x", compare=False)


Term = Union[Sort, BVar, Var, Symbol, Abs, App, Prod]
Substitution = Dict[str, Term]
Position = Tuple[int, ...]

STAR = Sort(SortKind.STAR)
BOX = Sort(SortKind.BOX)

FRESH_SEPARATOR = "#"


def fresh_name(hint: str = "x", taken: Iterable[str] = ()) -> str:
    """Returns the first of `hint#1`, `hint#2`, ... that is not in `taken`

    Parsed identifiers never contain `FRESH_SEPARATOR`, so the result cannot
    clash with user names. The result depends only on the arguments.

    Example:
        ``fresh_name("n", {"n#1"})``  -->  ``"n#2"``

    """
    taken = set(taken)
    base = hint.split(FRESH_SEPARATOR)[0] or "x"
    for k in itertools.count(1):
        name = f"{base}{FRESH_SEPARATOR}{k}"
        if name not in taken:
            return name


def lift(t: Term, by: int = 1, cutoff: int = 0) -> Term:
    """Shifts the loose bound indices of `t` (those >= `cutoff`) by `by`"""
    if by == 0:
        return t

    match t:
        case BVar(index):
            return BVar(index + by) if index >= cutoff else t
        case App(head, arg):
            return App(lift(head, by, cutoff), lift(arg, by, cutoff))
        case Abs(domain, body, name):
            return Abs(lift(domain, by, cutoff), lift(body, by, cutoff + 1), name)
        case Prod(domain, codomain, name):
            return Prod(
                lift(domain, by, cutoff), lift(codomain, by, cutoff + 1), name
            )
        case _:
            return t


def instantiate(body: Term, u: Term) -> Term:
    """Replaces the outermost bound variable of a binder body by `u`"""

    def go(t: Term, depth: int) -> Term:
        match t:
            case BVar(index):
                if index == depth:
                    return lift(u, depth)
                if index > depth:
                    return BVar(index - 1)
                return t
            case App(head, arg):
                return App(go(head, depth), go(arg, depth))
            case Abs(domain, inner, name):
                return Abs(go(domain, depth), go(inner, depth + 1), name)
            case Prod(domain, codomain, name):
                return Prod(go(domain, depth), go(codomain, depth + 1), name)
            case _:
                return t

    return go(body, 0)


def abstract(t: Term, target: Union[Var, Symbol]) -> Term:
    """Turns every occurrence of the atom `target` into the binder's index

    The result is meant to be used as the body of a new binder, so loose
    indices already present in `t` are shifted up by one.

    """

    def go(s: Term, depth: int) -> Term:
        if s == target:
            return BVar(depth)

        match s:
            case BVar(index):
                return BVar(index + 1) if index >= depth else s
            case App(head, arg):
                return App(go(head, depth), go(arg, depth))
            case Abs(domain, body, name):
                return Abs(go(domain, depth), go(body, depth + 1), name)
            case Prod(domain, codomain, name):
                return Prod(go(domain, depth), go(codomain, depth + 1), name)
            case _:
                return s

    return go(t, 0)


def open_binder(body: Term, name: str) -> Term:
    return instantiate(body, Var(name))


def spine(t: Term) -> Tuple[Term, List[Term]]:
    """Splits `t` into its head and the list of arguments it is applied to"""
    args = []
    while isinstance(t, App):
        args.append(t.arg)
        t = t.head
    args.reverse()
    return t, args


def apply_args(head: Term, args) -> Term:
    for arg in args:
        head = App(head, arg)
    return head


def subst(t: Term, sigma: Substitution) -> Term:
    """Capture-avoiding substitution of free variables

    Variables outside the domain of `sigma` map to themselves. Images are
    lifted over the binders they are placed under, so no free variable of an
    image is ever captured.

    Args:
        t (Term): Term to substitute into.
        sigma (dict): Finite map from variable names to terms.

    Returns:
        Term: `t` with every free occurrence of a domain variable replaced

    """
    if not sigma:
        return t

    def go(s: Term, depth: int) -> Term:
        match s:
            case Var(name):
                if name in sigma:
                    return lift(sigma[name], depth)
                return s
            case App(head, arg):
                return App(go(head, depth), go(arg, depth))
            case Abs(domain, body, name):
                return Abs(go(domain, depth), go(body, depth + 1), name)
            case Prod(domain, codomain, name):
                return Prod(go(domain, depth), go(codomain, depth + 1), name)
            case _:
                return s

    return go(t, 0)


def alpha_eq(t: Term, u: Term) -> bool:
    # binder names are excluded from comparison
    return t == u


def free_vars(t: Term) -> Set[str]:
    """Returns the names of the variables occurring free in `t`"""
    names = set()
    stack = [t]
    while stack:
        match stack.pop():
            case Var(name):
                names.add(name)
            case App(head, arg):
                stack += [head, arg]
            case Abs(domain, body, _) | Prod(domain, body, _):
                stack += [domain, body]
    return names


def free_vars_in_order(t: Term) -> List[str]:
    """Free variable names of `t` in left-to-right order of first occurrence"""
    ordered = []
    for _, sub, _ in iter_subterms(t):
        if isinstance(sub, Var) and sub.name not in ordered:
            ordered.append(sub.name)
    return ordered


def symbols_of(t: Term) -> Set[str]:
    names = set()
    stack = [t]
    while stack:
        match stack.pop():
            case Symbol(name):
                names.add(name)
            case App(head, arg):
                stack += [head, arg]
            case Abs(domain, body, _) | Prod(domain, body, _):
                stack += [domain, body]
    return names


def is_closed(t: Term) -> bool:
    return not free_vars(t)


def term_size(t: Term) -> int:
    """Counts symbols, variables and sorts, plus one per binder

    Application nodes are not counted, so `s 0` has size 2 and `+ 0 0` size 3.

    """
    match t:
        case App(head, arg):
            return term_size(head) + term_size(arg)
        case Abs(domain, body, _) | Prod(domain, body, _):
            return 1 + term_size(domain) + term_size(body)
        case _:
            return 1


def _children(t: Term) -> Tuple[Term, ...]:
    match t:
        case App(head, arg):
            return head, arg
        case Abs(domain, body, _) | Prod(domain, body, _):
            return domain, body
        case _:
            return ()


def subterm_at(t: Term, position: Position) -> Term:
    """Returns the subterm of `t` addressed by `position`

    Positions are words over {1, 2}: for an application 1 is the head and 2
    the argument, for an abstraction or product 1 is the annotation and 2 the
    body. Descending into a body opens the binder with a variable carrying
    the binder's name, so the result never contains loose indices.

    Args:
        t (Term): Term to descend into.
        position (tuple): Sequence of 1s and 2s, `()` being the root.

    Raises:
        InvalidPosition: If `position` addresses nothing in `t`.

    """
    for depth, step in enumerate(position):
        if step not in (1, 2) or not _children(t):
            raise InvalidPosition(
                f"position {format_position(position)} invalid at step {depth + 1}"
            )

        match t:
            case App(head, arg):
                t = head if step == 1 else arg
            case Abs(domain, body, name) | Prod(domain, body, name):
                t = domain if step == 1 else open_binder(body, name)

    return t


def iter_subterms(t: Term) -> Iterator[Tuple[Position, Term, int]]:
    """Yields (position, subterm, binder depth) for every subterm of `t`

    Subterms are yielded outermost first, then left to right, and are not
    opened: a subterm under binders may contain loose indices relative to
    the given depth.

    """
    stack = [((), t, 0)]
    while stack:
        position, sub, depth = stack.pop()
        yield position, sub, depth

        match sub:
            case App(head, arg):
                stack.append((position + (2,), arg, depth))
                stack.append((position + (1,), head, depth))
            case Abs(domain, body, _) | Prod(domain, body, _):
                stack.append((position + (2,), body, depth + 1))
                stack.append((position + (1,), domain, depth))


def replace_at(t: Term, position: Position, u: Term) -> Term:
    """Replaces the subterm at `position` by `u`, with no index adjustment"""
    if not position:
        return u

    step, rest = position[0], position[1:]
    match t:
        case App(head, arg):
            if step == 1:
                return App(replace_at(head, rest, u), arg)
            return App(head, replace_at(arg, rest, u))
        case Abs(domain, body, name):
            if step == 1:
                return Abs(replace_at(domain, rest, u), body, name)
            return Abs(domain, replace_at(body, rest, u), name)
        case Prod(domain, codomain, name):
            if step == 1:
                return Prod(replace_at(domain, rest, u), codomain, name)
            return Prod(domain, replace_at(codomain, rest, u), name)

    raise InvalidPosition(f"position {format_position(position)} invalid")


def format_position(position: Position) -> str:
    return "·".join(str(step) for step in position) or "ε"
