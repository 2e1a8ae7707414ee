"""Syntactic conditions under which ground rules can be postponed

If the user rules R and the completed ground rules D satisfy the conditions
below, any reduction sequence mixing βR-steps and D-steps can be reordered
so that D-steps come last; termination of the combined system then follows
from the termination of βR and of D on their own.

Contains the following:
    * ConditionStatus
    * Condition
    * postponement_report

"""

import enum
import logging
from dataclasses import dataclass
from typing import List

from kernel import argument_subterms, is_linear, one_step
from syntax import print_term
from terms import Abs, is_closed, rename_apart, spine, unify

logger = logging.getLogger(__name__)


class ConditionStatus(enum.Enum):
    ASSUMED = "assumed"
    HOLDS = "holds"
    VIOLATED = "violated"


@dataclass(frozen=True)
class Condition:
    label: str
    status: ConditionStatus
    detail: str

    @property
    def violated(self) -> bool:
        return self.status is ConditionStatus.VIOLATED

    def __str__(self) -> str:
        return f"({self.label}) {self.status.value}: {self.detail}"


def _left_linear(sig) -> Condition:
    offenders = [rule.label for rule in sig.rules if not is_linear(rule.lhs)]
    if offenders:
        return Condition(
            "b",
            ConditionStatus.VIOLATED,
            f"rules not left-linear: {', '.join(offenders)}",
        )
    return Condition("b", ConditionStatus.HOLDS, "user rules are left-linear")


def _closed(ground) -> Condition:
    open_rules = [
        rule.label
        for rule in ground
        if not (is_closed(rule.lhs) and is_closed(rule.rhs))
    ]
    if open_rules:
        return Condition(
            "c",
            ConditionStatus.VIOLATED,
            f"ground rules with variables: {', '.join(open_rules)}",
        )
    return Condition("c", ConditionStatus.HOLDS, "ground rules are closed")


def _irreducible_rhs(sig, ground) -> Condition:
    rs = sig.rule_set()
    offenders = []
    for rule in ground:
        head, _ = spine(rule.rhs)
        if isinstance(head, Abs):
            offenders.append(f"{rule.label} has an abstraction at its head")
        elif one_step(rs, rule.rhs) is not None:
            offenders.append(f"{rule.label} has a βR-reducible right-hand side")

    if offenders:
        return Condition("d", ConditionStatus.VIOLATED, "; ".join(offenders))
    return Condition(
        "d",
        ConditionStatus.HOLDS,
        "ground right-hand sides are βR-normal and not abstraction-headed",
    )


def _no_overlap(sig, ground) -> Condition:
    offenders = []
    for rule in ground:
        for user_rule in sig.rules:
            lhs = rename_apart(user_rule.lhs, "user")
            for _, sub in argument_subterms(lhs):
                if unify(sub, rule.rhs) is not None:
                    offenders.append(
                        f"{rule.label} right-hand side {print_term(rule.rhs)} "
                        f"unifies with {print_term(sub)} in {user_rule.label}"
                    )

    if offenders:
        return Condition("e", ConditionStatus.VIOLATED, "; ".join(offenders))
    return Condition(
        "e",
        ConditionStatus.HOLDS,
        "no ground right-hand side unifies with a user left-hand side subterm",
    )


def postponement_report(sig, ground) -> List[Condition]:
    """Checks the conditions for postponing ground rules after βR-steps

    Termination of βR and of the ground rules is not checked and is reported
    as assumed; the other conditions are decided syntactically.

    Args:
        sig (Signature): Signature holding the user rules.
        ground (GroundRules): Rules produced by completion.

    Returns:
        list: one Condition per label `a` to `e`, in that order

    """
    report = [
        Condition(
            "a", ConditionStatus.ASSUMED, "βR and the ground rules terminate"
        ),
        _left_linear(sig),
        _closed(ground),
        _irreducible_rhs(sig, ground),
        _no_overlap(sig, ground),
    ]

    for condition in report:
        if condition.violated:
            logger.warning("postponement %s", condition)
        else:
            logger.debug("postponement %s", condition)

    return report
