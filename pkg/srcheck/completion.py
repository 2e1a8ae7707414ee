"""Lexicographic path ordering and completion of closed equations

Completion turns a set of closed equations into a terminating, confluent
set of ground rules with the same equational theory. Equations are oriented
with the lexicographic path ordering induced by a total precedence on
symbols, then the rules are interreduced: a rule whose left-hand side
another rule rewrites goes back to the equations (collapse), and right-hand
sides are rewritten by the other rules (compose).

An equation between a hat symbol and a term with binders or sorts is
oriented from the hat when the hat does not occur on the other side.

Contains the following:
    * CompletionError and its subclasses
    * Precedence, override_names
    * default_precedence
    * lpo_gt
    * CompletionEvent, GroundRules
    * complete

"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from kernel import Rule, RuleSet
from srcheck.constraints import HAT, CheckError, Equation, is_hat
from syntax import print_term
from terms import Symbol, Term, is_closed, iter_subterms, replace_at, spine, symbols_of
from utils import unique_in_order

logger = logging.getLogger(__name__)

COMPLETION_STEP_LIMIT = 10000

ASCII_HAT = "^"


class CompletionError(CheckError):
    pass


class PrecedenceError(CompletionError):
    pass


class NonAlgebraicTerm(CompletionError):
    pass


class UnorientableEquation(CompletionError):
    pass


class OccursViolation(CompletionError):
    pass


class CompletionDiverges(CompletionError):
    pass


class Precedence:
    """Total strict order on symbol names, greatest first

    Args:
        names (sequence): Distinct names, from greatest to smallest.

    Raises:
        PrecedenceError: If a name is repeated.

    """

    def __init__(self, names: Sequence[str]):
        self.names: Tuple[str, ...] = tuple(names)
        self._rank: Dict[str, int] = {name: i for i, name in enumerate(self.names)}
        if len(self._rank) != len(self.names):
            raise PrecedenceError("precedence lists a name twice")

    def rank(self, name: str) -> int:
        try:
            return self._rank[name]
        except KeyError:
            raise PrecedenceError(f"{name} is not ordered by the precedence") from None

    def gt(self, f: str, g: str) -> bool:
        return self.rank(f) < self.rank(g)

    def with_override(self, text: str, strict: bool = True) -> "Precedence":
        """Re-orders the names listed in `text` (``"a > b > c"``)

        The listed names take the positions they already occupy, in the
        listed order; all other names stay where they are. Hats may be
        written `^x` for `x̂`.

        Args:
            text (str): Names separated by `>`, greatest first.
            strict (bool, optional): If False, listed names this precedence
                does not order are skipped instead of rejected. Defaults to
                True.

        Raises:
            PrecedenceError: If a name is listed twice, or, when `strict`,
                if a listed name is not ordered by this precedence.

        """
        listed = override_names(text)
        unknown = [name for name in listed if name not in self._rank]
        if unknown and strict:
            raise PrecedenceError(
                f"precedence override mentions unknown {', '.join(unknown)}"
            )
        listed = [name for name in listed if name in self._rank]

        slots = sorted(self._rank[name] for name in listed)
        names = list(self.names)
        for slot, name in zip(slots, listed):
            names[slot] = name
        return Precedence(names)

    def __contains__(self, name: str) -> bool:
        return name in self._rank

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    def __len__(self) -> int:
        return len(self.names)

    def __eq__(self, other) -> bool:
        return isinstance(other, Precedence) and self.names == other.names

    __hash__ = None

    def __str__(self) -> str:
        return " > ".join(self.names)

    def __repr__(self) -> str:
        return f"Precedence({self})"


def _canonical(name: str) -> str:
    name = name.strip()
    if name.startswith(ASCII_HAT):
        return name[len(ASCII_HAT) :] + HAT
    return name


def override_names(text: str) -> List[str]:
    """Returns the names of a precedence override, greatest first

    Example:
        ``override_names("^x > N")``  -->  ``["x\u0302", "N"]``

    Raises:
        PrecedenceError: If a name is listed twice.

    """
    listed = [_canonical(name) for name in text.split(">") if name.strip()]
    if len(set(listed)) != len(listed):
        raise PrecedenceError("precedence override lists a name twice")
    return listed


def default_precedence(sig, hats: Iterable[str], frozen: Iterable[str]) -> Precedence:
    """Builds the default precedence used to complete a rule's constraints

    Hats come first in the order given, then signature symbols from the
    last declared to the first, then frozen variables, the one given first
    being smallest.

    Args:
        sig (Signature): Signature whose symbols to order.
        hats (iterable): Hat names, by first occurrence.
        frozen (iterable): Frozen variable names, by first occurrence.

    Returns:
        Precedence: hats > signature symbols > frozen variables

    """
    return Precedence(
        unique_in_order(
            list(hats) + list(reversed(sig.symbols)) + list(reversed(list(frozen)))
        )
    )


def _check_algebraic(t: Term) -> Tuple[str, List[Term]]:
    head, args = spine(t)
    if not isinstance(head, Symbol):
        raise NonAlgebraicTerm(
            f"{print_term(t)} is not a closed symbol application"
        )
    return head.name, args


def lpo_gt(prec: Precedence, s: Term, t: Term) -> bool:
    """Decides s >lpo t on closed algebraic terms

    `f s1 ... sm >lpo t` when some si equals or is greater than t; or
    `t = g t1 ... tn` with f > g and s greater than every tj; or f = g, the
    arguments of s are lexicographically greater (a strict prefix being
    smaller), and s is greater than every tj.

    Raises:
        NonAlgebraicTerm: If either term is not a symbol applied to closed
            algebraic arguments.
        PrecedenceError: If a symbol is missing from `prec`.

    """
    f, ss = _check_algebraic(s)
    g, ts = _check_algebraic(t)

    if s == t:
        return False

    if any(si == t or lpo_gt(prec, si, t) for si in ss):
        return True

    if f != g:
        return prec.gt(f, g) and all(lpo_gt(prec, s, tj) for tj in ts)

    for si, ti in zip(ss, ts):
        if si != ti:
            if not lpo_gt(prec, si, ti):
                return False
            break
    else:
        if len(ss) <= len(ts):
            return False

    return all(lpo_gt(prec, s, tj) for tj in ts)


def _is_algebraic(t: Term) -> bool:
    try:
        _, args = _check_algebraic(t)
    except NonAlgebraicTerm:
        return False
    return all(_is_algebraic(arg) for arg in args)


@dataclass(frozen=True)
class CompletionEvent:
    kind: str
    detail: str

    def __str__(self) -> str:
        return f"{self.kind}: {self.detail}"


@dataclass
class GroundRules:
    """Rules produced by completion, with the steps that produced them"""

    rules: Tuple[Rule, ...] = ()
    history: List[CompletionEvent] = field(default_factory=list)
    hat_shortcuts: Tuple[str, ...] = ()

    def __iter__(self) -> Iterator[Rule]:
        return iter(self.rules)

    def __len__(self) -> int:
        return len(self.rules)

    def pairs(self) -> List[Tuple[Term, Term]]:
        return [(rule.lhs, rule.rhs) for rule in self.rules]

    def rule_set(self) -> RuleSet:
        return RuleSet(ground=self.rules)

    def is_shortcut(self, rule: Rule) -> bool:
        return rule.label in self.hat_shortcuts

    def __str__(self) -> str:
        return (
            "{"
            + ", ".join(f"{print_term(r.lhs)} ↪ {print_term(r.rhs)}" for r in self)
            + "}"
        )


def _rewrite_once(t: Term, rules: Sequence[Tuple[Term, Term]]) -> Optional[Term]:
    # outermost-leftmost occurrence of any left-hand side, rules in order
    for position, sub, _ in iter_subterms(t):
        for lhs, rhs in rules:
            if sub == lhs:
                return replace_at(t, position, rhs)
    return None


@dataclass
class _Oriented:
    lhs: Term
    rhs: Term
    from_hat: bool = False

    def __str__(self) -> str:
        return f"{print_term(self.lhs)} ↪ {print_term(self.rhs)}"


class _Completion:
    def __init__(self, prec: Precedence, step_limit: int):
        self.prec = prec
        self.step_limit = step_limit
        self.steps = 0
        self.pending: deque = deque()
        self.rules: List[_Oriented] = []
        self.history: List[CompletionEvent] = []

    def record(self, kind: str, detail) -> None:
        self.history.append(CompletionEvent(kind, str(detail)))
        logger.debug("%s: %s", kind, detail)

    def tick(self) -> None:
        self.steps += 1
        if self.steps > self.step_limit:
            raise CompletionDiverges(
                f"completion did not finish within {self.step_limit} steps"
            )

    def others(self, i: int) -> List[Tuple[Term, Term]]:
        return [(r.lhs, r.rhs) for j, r in enumerate(self.rules) if j != i]

    def orient(self, equation: Equation) -> None:
        left, right = equation.left, equation.right

        if left == right:
            self.record("delete", equation)
            return

        if not (_is_algebraic(left) and _is_algebraic(right)):
            rule = self.orient_hat(equation)
        elif lpo_gt(self.prec, left, right):
            rule = _Oriented(left, right)
        elif lpo_gt(self.prec, right, left):
            rule = _Oriented(right, left)
        else:
            raise UnorientableEquation(f"cannot orient {equation}")

        self.rules.append(rule)
        self.record("orient-hat" if rule.from_hat else "orient", rule)

    def orient_hat(self, equation: Equation) -> _Oriented:
        sides = [(equation.left, equation.right), (equation.right, equation.left)]
        for lhs, rhs in sides:
            if not (isinstance(lhs, Symbol) and is_hat(lhs.name)):
                continue
            if _is_algebraic(rhs):
                continue
            if lhs.name in symbols_of(rhs):
                raise OccursViolation(f"{lhs.name} occurs in {print_term(rhs)}")
            return _Oriented(lhs, rhs, from_hat=True)

        raise UnorientableEquation(
            f"completion inapplicable to non-algebraic equation {equation}"
        )

    def collapse(self) -> bool:
        for i, rule in enumerate(self.rules):
            reduced = _rewrite_once(rule.lhs, self.others(i))
            if reduced is None:
                continue

            del self.rules[i]
            self.pending.append(Equation(reduced, rule.rhs))
            self.record("collapse", rule)
            return True
        return False

    def compose(self) -> bool:
        for i, rule in enumerate(self.rules):
            reduced = _rewrite_once(rule.rhs, self.others(i))
            if reduced is None:
                continue

            if any(sub == rule.lhs for _, sub, _ in iter_subterms(reduced)):
                raise OccursViolation(
                    f"{print_term(rule.lhs)} occurs in {print_term(reduced)}"
                )
            rule.rhs = reduced
            self.record("compose", rule)
            return True
        return False

    def run(self, equations: Iterable[Equation]) -> None:
        self.pending.extend(equations)

        while self.pending:
            self.tick()
            self.orient(self.pending.popleft())

            while self.collapse() or self.compose():
                self.tick()


def complete(
    equations: Iterable[Equation],
    prec: Precedence,
    step_limit: int = COMPLETION_STEP_LIMIT,
) -> GroundRules:
    """Completes closed equations into convergent ground rules

    Args:
        equations (iterable): Closed equations.
        prec (Precedence): Precedence ordering every symbol of the
            equations.
        step_limit (int, optional): Bound on the number of completion
            steps. Defaults to COMPLETION_STEP_LIMIT.

    Returns:
        GroundRules: interreduced rules labelled `D#1`, `D#2`, ...; every
            rule decreases in the ordering except those oriented from a hat

    Raises:
        CompletionError: If an equation is open, cannot be oriented, or
            completion does not finish within `step_limit` steps.

    """
    equations = list(equations)
    for equation in equations:
        if not (is_closed(equation.left) and is_closed(equation.right)):
            raise CompletionError(f"equation {equation} is not closed")

    completion = _Completion(prec, step_limit)
    completion.run(equations)

    oriented = list(enumerate(completion.rules, 1))
    rules = tuple(
        Rule.from_sides(rule.lhs, rule.rhs, label=f"D#{i}") for i, rule in oriented
    )
    shortcuts = tuple(f"D#{i}" for i, rule in oriented if rule.from_hat)
    result = GroundRules(rules, completion.history, shortcuts)

    logger.debug(
        "completed %d equations into %d rules in %d steps: %s",
        len(equations),
        len(rules),
        completion.steps,
        result,
    )
    return result
