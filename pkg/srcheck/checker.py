"""Subject-reduction verdicts for single rewrite rules

A rule `l ↪ r` is checked by inferring the type `T` of `l` together with the
equations its typable instances satisfy, simplifying and completing those
equations into ground rules D, and type-checking `r` against `T` in an
extended system. The extended system freezes every variable `x` of `l` into
a constant `$x : x̂` with `x̂ : TYPE`, and adds D to the user rules.

Acceptance means every instance of the rule preserves typing, assuming the
base rules are confluent and the declared injectivities hold. Rejection is
never a disproof.

Contains the following:
    * NameCollision
    * Status, Verdict
    * frozen_name, freeze, freeze_equations
    * ExtendedSystem
    * build_extended
    * check_rule

"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from kernel import (
    DEFAULT_FUEL,
    EMPTY_ENV,
    Fuel,
    KernelError,
    Rule,
    RuleSet,
    TypingError,
    check,
    infer,
)
from srcheck.completion import GroundRules, Precedence, complete, default_precedence
from srcheck.constraints import (
    CheckError,
    Equation,
    EquationSet,
    hat,
    infer_constraints,
    is_hat,
    simplify,
)
from srcheck.postponement import Condition, postponement_report
from syntax import print_term
from terms import (
    STAR,
    Symbol,
    Term,
    free_vars,
    free_vars_in_order,
    subst,
    symbols_of,
)

logger = logging.getLogger(__name__)

FROZEN_PREFIX = "$"


class NameCollision(CheckError):
    pass


class Status(enum.Enum):
    ACCEPTED = "Accepted"
    REJECTED = "Rejected"
    INAPPLICABLE = "Inapplicable"


@dataclass
class Verdict:
    """Outcome of checking one rule, with everything computed on the way

    Terms and equations are stored frozen: rule variables as `$x` constants
    and their types as `x̂` constants.

    """

    label: str
    head: str
    line: Optional[int] = None
    status: Status = Status.INAPPLICABLE
    reasons: List[str] = field(default_factory=list)
    inferred_type: Optional[Term] = None
    equations: Optional[EquationSet] = None
    simplified: Optional[EquationSet] = None
    ground_rules: Optional[GroundRules] = None
    precedence: Optional[Precedence] = None
    warnings: List[str] = field(default_factory=list)
    postponement: List[Condition] = field(default_factory=list)

    @property
    def accepted(self) -> bool:
        return self.status is Status.ACCEPTED

    def __str__(self) -> str:
        text = f"{self.label}: {self.status.value}"
        if self.reasons:
            text += f" ({'; '.join(self.reasons)})"
        return text


def frozen_name(name: str) -> str:
    """Constant standing for the variable `name`; hats keep their name"""
    return name if is_hat(name) else FROZEN_PREFIX + name


def freeze(t: Term) -> Term:
    """Replaces every free variable of `t` by its frozen constant"""
    return subst(t, {name: Symbol(frozen_name(name)) for name in free_vars(t)})


def freeze_equations(equations: EquationSet) -> EquationSet:
    return EquationSet(
        Equation(freeze(equation.left), freeze(equation.right))
        for equation in equations
    )


class ExtendedSystem:
    """A signature extended with constants, and its rules with ground rules

    Works wherever the kernel expects a signature, i.e. it provides
    `type_of`.

    Args:
        sig (Signature): Base signature.
        constants (dict): Type of each added constant, by name.
        ground (GroundRules): Ground rules added after the user rules.

    Raises:
        NameCollision: If a constant is already declared in `sig`.

    """

    def __init__(self, sig, constants: Dict[str, Term], ground: GroundRules):
        clashes = sorted(name for name in constants if name in sig)
        if clashes:
            raise NameCollision(f"names already declared: {', '.join(clashes)}")

        self.sig = sig
        self.constants = dict(constants)
        self.ground = ground
        self._rule_set = sig.rule_set().extended(ground.rules)

    def type_of(self, name: str) -> Optional[Term]:
        if name in self.constants:
            return self.constants[name]
        return self.sig.type_of(name)

    def __contains__(self, name: str) -> bool:
        return name in self.constants or name in self.sig

    def rule_set(self) -> RuleSet:
        return self._rule_set

    def infer(self, t: Term, fuel: Fuel = None) -> Term:
        return infer(self, self._rule_set, EMPTY_ENV, t, fuel)

    def check(self, t: Term, expected: Term, fuel: Fuel = None) -> None:
        check(self, self._rule_set, EMPTY_ENV, t, expected, fuel)

    def __repr__(self) -> str:
        return (
            f"ExtendedSystem({len(self.constants)} constants, "
            f"{len(self.ground)} ground rules)"
        )


def build_extended(sig, l: Term, ground: GroundRules) -> ExtendedSystem:
    """Builds the system in which the right-hand side of `l ↪ r` is checked

    Each variable `x` of `l` becomes a constant `$x` of type `x̂`, and `x̂` a
    constant of type TYPE; `ground` is appended to the rules of `sig`.

    Example:
        ``build_extended(sig, tail $n (cons $x $p $v), D)``  -->  a system
        where `$v : v̂` and `v̂ ↪ V $n`, so `$v` has type `V $n`

    Raises:
        NameCollision: If a frozen or hat name is declared in `sig`.

    """
    constants: Dict[str, Term] = {}
    for name in free_vars_in_order(l):
        constants[hat(name)] = STAR
        constants[frozen_name(name)] = Symbol(hat(name))
    return ExtendedSystem(sig, constants, ground)


def _injectivity_warnings(sig, equations: EquationSet) -> List[str]:
    used = set()
    for equation in equations:
        for side in (equation.left, equation.right):
            used |= {
                name
                for name in symbols_of(side)
                if name in sig and sig.info(name).declared_injective
            }
    return [f"assumes {name} is injective as declared" for name in sorted(used)]


def _frozen_order(result, simplified: EquationSet) -> List[str]:
    names = [frozen_name(name) for name in result.hat_map]
    for equation in simplified:
        for side in (equation.left, equation.right):
            for name in free_vars_in_order(side):
                if not is_hat(name) and frozen_name(name) not in names:
                    names.append(frozen_name(name))
    return names


def check_rule(
    sig,
    rule: Rule,
    prec_override: Optional[str] = None,
    fuel: int = DEFAULT_FUEL,
    simplify_constraints: bool = True,
    strict_override: bool = True,
) -> Verdict:
    """Decides whether `rule` provably preserves typing

    Args:
        sig (Signature): Signature the rule is stored in.
        rule (Rule): Rule to check.
        prec_override (str, optional): Re-ordering of the default
            precedence, e.g. ``"$a > $a'"``.
        fuel (int, optional): Step budget for each kernel computation.
            Defaults to DEFAULT_FUEL.
        simplify_constraints (bool, optional): If False, the inferred
            equations are completed as they are. Defaults to True.
        strict_override (bool, optional): If False, names of
            `prec_override` that this rule's precedence does not order are
            ignored. Defaults to True.

    Returns:
        Verdict: Accepted if the right-hand side has the inferred type in
            the extended system, Rejected if it does not, Inapplicable if
            the constraints cannot be turned into ground rules

    """
    verdict = Verdict(rule.label, rule.head, rule.line)
    rs = sig.rule_set()

    try:
        result = infer_constraints(sig, rule.lhs, Fuel(fuel))
        verdict.inferred_type = freeze(result.inferred_type)
        verdict.equations = freeze_equations(result.equations)
        verdict.warnings += _injectivity_warnings(sig, result.equations)

        if simplify_constraints:
            simplified = simplify(
                sig, rs, result.delta_env, result.equations, Fuel(fuel)
            )
        else:
            simplified = result.equations
        verdict.simplified = freeze_equations(simplified)

        prec = default_precedence(
            sig, result.hat_map.values(), _frozen_order(result, simplified)
        )
        if prec_override:
            prec = prec.with_override(prec_override, strict_override)
        verdict.precedence = prec

        ground = complete(verdict.simplified, prec)
        verdict.ground_rules = ground
        system = build_extended(sig, rule.lhs, ground)
    except (CheckError, KernelError) as err:
        verdict.status = Status.INAPPLICABLE
        verdict.reasons.append(str(err))
        logger.info("%s", verdict)
        return verdict

    verdict.postponement = postponement_report(sig, ground)
    verdict.warnings += [
        f"postponement {condition}"
        for condition in verdict.postponement
        if condition.violated
    ]

    rhs = freeze(rule.rhs)
    try:
        system.check(rhs, verdict.inferred_type, Fuel(fuel))
        # a second, independent run must agree before accepting
        system.check(rhs, verdict.inferred_type, Fuel(fuel))
    except TypingError as err:
        verdict.status = Status.REJECTED
        verdict.reasons.append(
            f"{print_term(rhs)} does not have type "
            f"{print_term(verdict.inferred_type)}: {err}"
        )
    except KernelError as err:
        verdict.status = Status.INAPPLICABLE
        verdict.reasons.append(str(err))
    else:
        verdict.status = Status.ACCEPTED

    logger.info("%s", verdict)
    return verdict
