"""Confluence diagnostics for the rules of a signature

Rules whose left-hand sides are algebraic, linear and pairwise
non-overlapping are orthogonal, and orthogonal rules are confluent together
with β. Anything else leaves confluence as an assumption, which is reported
but never fatal.

Contains the following:
    * Overlap
    * ConfluenceReport
    * argument_subterms
    * is_linear
    * confluence_diagnostics

"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator, List, Tuple

from natsort import natsorted

from terms import (
    Position,
    Term,
    Var,
    format_position,
    iter_subterms,
    rename_apart,
    spine,
    unify,
)

logger = logging.getLogger(__name__)

ORTHOGONAL_MESSAGE = "orthogonal: confluence assumption discharged"


@dataclass(frozen=True)
class Overlap:
    outer: str
    inner: str
    position: Position

    def __str__(self) -> str:
        return f"{self.inner} overlaps {self.outer} at {format_position(self.position)}"


@dataclass
class ConfluenceReport:
    non_linear: List[str] = field(default_factory=list)
    overlaps: List[Overlap] = field(default_factory=list)

    @property
    def orthogonal(self) -> bool:
        return not self.non_linear and not self.overlaps

    def messages(self) -> List[str]:
        if self.orthogonal:
            return [ORTHOGONAL_MESSAGE]

        messages = [f"rule {label} is not left-linear" for label in self.non_linear]
        messages += [f"rule {overlap}" for overlap in self.overlaps]
        messages.append("rules are not orthogonal: confluence remains an assumption")
        return messages


def argument_subterms(
    t: Term, position: Position = ()
) -> Iterator[Tuple[Position, Term]]:
    """Yields the non-variable subterms of an algebraic term with positions

    Only full applications count: in `f a b`, `f a` and `f` are not
    subterms, `a` and `b` are.

    """
    if isinstance(t, Var):
        return

    yield position, t

    _, args = spine(t)
    for i, arg in enumerate(args):
        # the i-th of n arguments sits under n - 1 - i heads
        step = (1,) * (len(args) - 1 - i) + (2,)
        yield from argument_subterms(arg, position + step)


def is_linear(t: Term) -> bool:
    counts = Counter(
        sub.name for _, sub, _ in iter_subterms(t) if isinstance(sub, Var)
    )
    return all(count == 1 for count in counts.values())


def confluence_diagnostics(sig) -> ConfluenceReport:
    """Reports left-linearity and overlaps of the rules of `sig`

    An overlap is a unifier between a rule's left-hand side and a
    non-variable subterm of another (or the same, away from the root)
    left-hand side, the two renamed apart first.

    Args:
        sig (Signature): Signature whose rules to inspect.

    Returns:
        ConfluenceReport: non-linear rule labels and overlaps, natsorted

    """
    report = ConfluenceReport()
    rules = sig.rules

    for rule in rules:
        if not is_linear(rule.lhs):
            report.non_linear.append(rule.label)

    for outer in rules:
        outer_lhs = rename_apart(outer.lhs, "outer")
        for inner in rules:
            inner_lhs = rename_apart(inner.lhs, "inner")
            for position, sub in argument_subterms(outer_lhs):
                if inner is outer and not position:
                    continue
                if unify(inner_lhs, sub) is not None:
                    overlap = Overlap(outer.label, inner.label, position)
                    report.overlaps.append(overlap)

    report.non_linear = natsorted(report.non_linear)
    report.overlaps = natsorted(
        report.overlaps, key=lambda o: (o.outer, o.inner, format_position(o.position))
    )

    for message in report.messages():
        if report.orthogonal:
            logger.info(message)
        else:
            logger.warning(message)

    return report
