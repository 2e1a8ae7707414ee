"""Rewriting engine: matching, β and rule steps, normal forms, conversion

The same engine serves the base calculus and its extensions: a RuleSet holds
the user rules R and, optionally, extra ground rules (the output of
completion) that are looked up after them.

Contains the following:
    * KernelError, FuelExhausted
    * Fuel, Rule, RuleSet
    * match
    * whnf
    * normalize
    * convertible
    * reducts
    * one_step

"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

from terms import (
    Abs,
    App,
    Prod,
    Substitution,
    Symbol,
    Term,
    Var,
    apply_args,
    instantiate,
    is_closed,
    spine,
    subst,
)

logger = logging.getLogger(__name__)

DEFAULT_FUEL = 100000


class KernelError(ValueError):
    """Base class for errors raised by the kernel"""


class FuelExhausted(KernelError):
    """Raised when a computation runs out of rewrite steps"""


class Fuel:
    """Step budget shared by every reduction of one computation

    Args:
        steps (int, optional): Number of rewrite steps allowed. Defaults to
            DEFAULT_FUEL.

    """

    def __init__(self, steps: int = DEFAULT_FUEL):
        if steps < 0:
            raise ValueError(f"fuel must be nonnegative, got {steps}")
        self.initial = steps
        self.remaining = steps

    def consume(self, steps: int = 1) -> None:
        if self.remaining < steps:
            raise FuelExhausted(
                f"fuel exhausted after {self.initial} rewrite steps "
                "(is the rewrite system terminating?)"
            )
        self.remaining -= steps

    @property
    def used(self) -> int:
        return self.initial - self.remaining

    def __repr__(self) -> str:
        return f"Fuel({self.remaining}/{self.initial})"


@dataclass(frozen=True)
class Rule:
    lhs: Term
    rhs: Term
    head: str
    arity: int
    label: str = ""
    line: Optional[int] = field(default=None, compare=False)

    @classmethod
    def from_sides(
        cls, lhs: Term, rhs: Term, label: str = "", line: int = None
    ) -> "Rule":
        head, args = spine(lhs)
        if not isinstance(head, Symbol):
            raise KernelError("rule left-hand side must be headed by a symbol")
        return cls(lhs, rhs, head.name, len(args), label or head.name, line)

    @property
    def patterns(self) -> List[Term]:
        return spine(self.lhs)[1]

    @property
    def is_ground(self) -> bool:
        return is_closed(self.lhs) and is_closed(self.rhs)


class RuleSet:
    """Rules indexed by head symbol, user rules before ground rules

    Args:
        rules (iterable, optional): User rules (R).
        ground (iterable, optional): Closed rules added by completion (D).

    """

    def __init__(self, rules: Iterable[Rule] = (), ground: Iterable[Rule] = ()):
        self.rules: Tuple[Rule, ...] = tuple(rules)
        self.ground: Tuple[Rule, ...] = tuple(ground)

        self._index: Dict[str, List[Rule]] = {}
        for rule in self.rules + self.ground:
            self._index.setdefault(rule.head, []).append(rule)

    def rules_for(self, head: str) -> List[Rule]:
        return self._index.get(head, [])

    def extended(self, ground: Iterable[Rule]) -> "RuleSet":
        return RuleSet(self.rules, self.ground + tuple(ground))

    def __iter__(self) -> Iterator[Rule]:
        return iter(self.rules + self.ground)

    def __len__(self) -> int:
        return len(self.rules) + len(self.ground)

    def __repr__(self) -> str:
        return f"RuleSet({len(self.rules)} rules, {len(self.ground)} ground)"


EMPTY_RULES = RuleSet()


def _match_into(
    pattern: Term,
    subject: Term,
    sigma: Substitution,
    rs: Optional[RuleSet],
    fuel: Optional[Fuel],
) -> bool:
    if isinstance(pattern, Var):
        if pattern.name in sigma:
            return sigma[pattern.name] == subject
        sigma[pattern.name] = subject
        return True

    # an open pattern must still bind its variables
    if pattern == subject and is_closed(pattern):
        return True

    if rs is not None:
        subject = whnf(rs, subject, fuel)

    phead, pargs = spine(pattern)
    shead, sargs = spine(subject)
    if phead != shead or len(pargs) != len(sargs):
        return False

    return all(
        _match_into(p, s, sigma, rs, fuel) for p, s in zip(pargs, sargs)
    )


def match(pattern: Term, subject: Term) -> Optional[Substitution]:
    """Syntactic first-order matching

    Repeated variables of a non-linear pattern must be matched by equal
    (α-equivalent) subterms.

    Example:
        ``match(+ $x 0, + (s 0) 0)``  -->  ``{"x": s 0}``

    Args:
        pattern (Term): A pattern or closed left-hand side.
        subject (Term): Term to match against.

    Returns:
        dict: substitution σ with `subst(pattern, σ) == subject`, or None

    """
    sigma: Substitution = {}
    if _match_into(pattern, subject, sigma, None, None):
        return sigma
    return None


def _fire(rs: RuleSet, head: str, args: List[Term], fuel: Fuel) -> Optional[Term]:
    for rule in rs.rules_for(head):
        if rule.arity > len(args):
            continue

        sigma: Substitution = {}
        if all(
            _match_into(p, a, sigma, rs, fuel)
            for p, a in zip(rule.patterns, args)
        ):
            fuel.consume()
            logger.debug("fired %s", rule.label)
            return apply_args(subst(rule.rhs, sigma), args[rule.arity :])

    return None


def whnf(rs: RuleSet, t: Term, fuel: Fuel = None) -> Term:
    """Reduces the head of `t` until neither β nor a rule applies there

    Arguments of the head are only reduced as far as needed to match rule
    patterns, and such reductions are kept only when a rule fires.

    Args:
        rs (RuleSet): Rules to rewrite with.
        t (Term): Term to reduce.
        fuel (Fuel, optional): Step budget. Defaults to a fresh DEFAULT_FUEL.

    Returns:
        Term: weak-head normal form of `t`

    Raises:
        FuelExhausted: If `fuel` runs out.

    """
    fuel = fuel if fuel is not None else Fuel()

    while True:
        head, args = spine(t)

        if isinstance(head, Abs) and args:
            fuel.consume()
            t = apply_args(instantiate(head.body, args[0]), args[1:])
            continue

        if isinstance(head, Symbol):
            fired = _fire(rs, head.name, args, fuel)
            if fired is not None:
                t = fired
                continue

        return t


def normalize(rs: RuleSet, t: Term, fuel: Fuel = None) -> Term:
    """Computes the normal form of `t` with a leftmost-outermost strategy

    Raises:
        FuelExhausted: If `fuel` runs out.

    """
    fuel = fuel if fuel is not None else Fuel()
    t = whnf(rs, t, fuel)

    match t:
        case App():
            head, args = spine(t)
            reduced = apply_args(
                normalize(rs, head, fuel), [normalize(rs, a, fuel) for a in args]
            )
            if reduced == t:
                return t
            # normal arguments can enable a non-linear rule at the root
            again = whnf(rs, reduced, fuel)
            if again != reduced:
                return normalize(rs, again, fuel)
            return reduced
        case Abs(domain, body, name):
            return Abs(normalize(rs, domain, fuel), normalize(rs, body, fuel), name)
        case Prod(domain, codomain, name):
            return Prod(
                normalize(rs, domain, fuel), normalize(rs, codomain, fuel), name
            )
        case _:
            return t


def _convertible_whnf(rs: RuleSet, t: Term, u: Term, fuel: Fuel) -> bool:
    if t == u:
        return True

    t, u = whnf(rs, t, fuel), whnf(rs, u, fuel)
    if t == u:
        return True

    match t, u:
        case App(), App():
            thead, targs = spine(t)
            uhead, uargs = spine(u)
            if len(targs) == len(uargs) and _convertible_whnf(
                rs, thead, uhead, fuel
            ):
                if all(
                    _convertible_whnf(rs, a, b, fuel) for a, b in zip(targs, uargs)
                ):
                    return True
        case (Abs(tdom, tbody, _), Abs(udom, ubody, _)) | (
            Prod(tdom, tbody, _),
            Prod(udom, ubody, _),
        ):
            if _convertible_whnf(rs, tdom, udom, fuel) and _convertible_whnf(
                rs, tbody, ubody, fuel
            ):
                return True

    return normalize(rs, t, fuel) == normalize(rs, u, fuel)


def convertible(rs: RuleSet, t: Term, u: Term, fuel: Fuel = None) -> bool:
    """Decides t ≃ u, assuming `rs` together with β is convergent

    Compares weak-head normal forms structurally along spines and binders and
    falls back to comparing full normal forms on a mismatch.

    Raises:
        FuelExhausted: If `fuel` runs out.

    """
    fuel = fuel if fuel is not None else Fuel()
    return _convertible_whnf(rs, t, u, fuel)


def _steps(rs: RuleSet, t: Term) -> Iterator[Term]:
    # one-step reducts, outermost first then left to right
    if isinstance(t, App) and isinstance(t.head, Abs):
        yield instantiate(t.head.body, t.arg)

    head, args = spine(t)
    if isinstance(head, Symbol):
        for rule in rs.rules_for(head.name):
            if rule.arity != len(args):
                continue
            sigma = match(rule.lhs, t)
            if sigma is not None:
                yield subst(rule.rhs, sigma)

    match t:
        case App(head, arg):
            for reduct in _steps(rs, head):
                yield App(reduct, arg)
            for reduct in _steps(rs, arg):
                yield App(head, reduct)
        case Abs(domain, body, name):
            for reduct in _steps(rs, domain):
                yield Abs(reduct, body, name)
            for reduct in _steps(rs, body):
                yield Abs(domain, reduct, name)
        case Prod(domain, codomain, name):
            for reduct in _steps(rs, domain):
                yield Prod(reduct, codomain, name)
            for reduct in _steps(rs, codomain):
                yield Prod(domain, reduct, name)


def reducts(rs: RuleSet, t: Term) -> set:
    """Returns every term reachable from `t` in exactly one β or rule step"""
    return set(_steps(rs, t))


def one_step(rs: RuleSet, t: Term) -> Optional[Term]:
    """Returns the leftmost-outermost one-step reduct of `t`, or None"""
    return next(_steps(rs, t), None)
