"""Typability constraints of rule left-hand sides and their simplification

Inference assigns every variable `x` of a left-hand side the type `x̂`, a
variable of its own, and collects the equations that any typable instance
must satisfy. Simplification then rewrites the equations into an equivalent
set that completion is more likely to orient.

Contains the following:
    * CheckError, ConstraintError, LhsNotPattern, ArityOverflow,
      SimplificationDiverges
    * hat, is_hat, unhat
    * Equation, EquationSet, ConstraintResult
    * infer_constraints
    * simplify_step
    * simplify

"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Optional, Set, Tuple

from kernel import (
    Environment,
    Fuel,
    FuelExhausted,
    RuleSet,
    convertible,
    normalize,
    one_step,
    reducts,
    whnf,
)
from syntax import print_term
from terms import (
    STAR,
    Prod,
    Symbol,
    Term,
    Var,
    free_vars,
    free_vars_in_order,
    fresh_name,
    instantiate,
    iter_subterms,
    open_binder,
    replace_at,
    spine,
)

logger = logging.getLogger(__name__)

MAX_SIMPLIFY_PASSES = 100
SIDE_CONDITION_FUEL = 2000
SIDE_CONDITION_NODES = 200

HAT = "\u0302"


class CheckError(ValueError):
    """Base class for errors raised while checking a rule"""


class ConstraintError(CheckError):
    pass


class LhsNotPattern(ConstraintError):
    pass


class ArityOverflow(ConstraintError):
    pass


class SimplificationDiverges(ConstraintError):
    pass


def hat(name: str) -> str:
    """Name of the type variable of `name`, e.g. `x` -> `x̂`"""
    return name + HAT


def is_hat(name: str) -> bool:
    return name.endswith(HAT)


def unhat(name: str) -> str:
    return name[: -len(HAT)] if is_hat(name) else name


@dataclass(frozen=True)
class Equation:
    left: Term
    right: Term

    @property
    def key(self) -> frozenset:
        # sides are unordered for identity purposes
        return frozenset((self.left, self.right))

    @property
    def is_trivial(self) -> bool:
        return self.left == self.right

    def flipped(self) -> "Equation":
        return Equation(self.right, self.left)

    def __str__(self) -> str:
        return f"{print_term(self.left)} = {print_term(self.right)}"


class EquationSet:
    """Ordered set of equations, duplicate-free modulo α and symmetry

    Equality between two sets ignores order; use `list()` to compare orders.

    """

    def __init__(self, equations: Iterable[Equation] = ()):
        self._equations: List[Equation] = []
        self._keys: Set[frozenset] = set()
        for equation in equations:
            self.add(equation)

    def add(self, equation: Equation) -> bool:
        if equation.key in self._keys:
            return False
        self._keys.add(equation.key)
        self._equations.append(equation)
        return True

    def replace(self, index: int, replacements: Iterable[Equation]) -> "EquationSet":
        """Returns a copy with the equation at `index` replaced in place"""
        equations = list(self._equations)
        equations[index : index + 1] = list(replacements)
        return EquationSet(equations)

    def without(self, index: int) -> "EquationSet":
        return self.replace(index, ())

    def copy(self) -> "EquationSet":
        return EquationSet(self._equations)

    def free_vars(self) -> Set[str]:
        names = set()
        for equation in self._equations:
            names |= free_vars(equation.left) | free_vars(equation.right)
        return names

    def __iter__(self) -> Iterator[Equation]:
        return iter(self._equations)

    def __len__(self) -> int:
        return len(self._equations)

    def __getitem__(self, index: int) -> Equation:
        return self._equations[index]

    def __contains__(self, equation: Equation) -> bool:
        return equation.key in self._keys

    def __eq__(self, other) -> bool:
        if not isinstance(other, EquationSet):
            return NotImplemented
        return self._keys == other._keys

    __hash__ = None

    def __str__(self) -> str:
        return "{" + ", ".join(str(e) for e in self._equations) + "}"

    def __repr__(self) -> str:
        return f"EquationSet({self})"


@dataclass(frozen=True)
class ConstraintResult:
    inferred_type: Term
    equations: EquationSet
    hat_map: Dict[str, str]
    delta_env: Environment


def _infer(
    sig, rs: RuleSet, t: Term, equations: List[Equation], fuel: Fuel
) -> Term:
    if isinstance(t, Var):
        return Var(hat(t.name))

    head, args = spine(t)
    type_ = sig.type_of(head.name)

    argument_types = [_infer(sig, rs, arg, equations, fuel) for arg in args]

    for i, (arg, argument_type) in enumerate(zip(args, argument_types), 1):
        type_ = whnf(rs, type_, fuel)
        if not isinstance(type_, Prod):
            raise ArityOverflow(
                f"{head.name} takes fewer than {i} arguments in {print_term(t)}"
            )
        equations.append(Equation(argument_type, type_.domain))
        type_ = instantiate(type_.codomain, arg)

    return type_


def infer_constraints(sig, l: Term, fuel: Fuel = None) -> ConstraintResult:
    """Infers the type of a left-hand side together with its typability
    constraints

    For `f t1 ... tn` with `f : Π x1:T1, ..., Π xn:Tn, U`, the constraints of
    the arguments come first, then one equation `Ai = Tiσ` per argument where
    `Ai` is the type inferred for `ti` and σ maps each `xi` to `ti`; the
    result type is `Uσ`. A variable `y` gets the type `ŷ`.

    Example:
        ``infer_constraints(sig, cons $x $p $v)``  -->  type ``V (s $p)``
        with equations ``{$x̂ = R, $p̂ = N, $v̂ = V $p}``

    Args:
        sig (Signature): Signature the pattern is written in.
        l (Term): A pattern.
        fuel (Fuel, optional): Step budget for exposing products in types.

    Returns:
        ConstraintResult: inferred type, equations, the map from each
            variable to its hat, and the environment Δ binding `ŷ : TYPE`
            then `y : ŷ` for every variable `y` in order of occurrence

    Raises:
        LhsNotPattern: If `l` is not a pattern.
        ArityOverflow: If a symbol is given more arguments than its type
            has products.

    """
    fuel = fuel if fuel is not None else Fuel()

    if not sig.is_pattern(l):
        raise LhsNotPattern(f"{print_term(l)} is not a pattern")

    names = free_vars_in_order(l)
    hat_map = {name: hat(name) for name in names}
    clashes = [h for h in hat_map.values() if h in sig or h in names]
    if clashes:
        raise ConstraintError(f"hat names already in use: {', '.join(clashes)}")

    bindings: List[Tuple[str, Term]] = []
    for name in names:
        bindings += [(hat_map[name], STAR), (name, Var(hat_map[name]))]

    equations: List[Equation] = []
    inferred = _infer(sig, sig.rule_set(), l, equations, fuel)

    result = ConstraintResult(
        inferred, EquationSet(equations), hat_map, Environment(bindings)
    )
    logger.debug("%s : %s [%s]", print_term(l), print_term(inferred), result.equations)
    return result


# simplification


def _neighbours(rs: RuleSet, t: Term, equations: EquationSet) -> Iterator[Term]:
    yield from reducts(rs, t)
    for position, sub, _ in iter_subterms(t):
        for equation in equations:
            if sub == equation.left:
                yield replace_at(t, position, equation.right)
            elif sub == equation.right:
                yield replace_at(t, position, equation.left)


def equal_modulo(
    rs: RuleSet,
    t: Term,
    u: Term,
    equations: EquationSet,
    max_nodes: int = SIDE_CONDITION_NODES,
    max_steps: int = SIDE_CONDITION_FUEL,
) -> bool:
    """Semi-decides that `t` and `u` are equal modulo β, `rs` and `equations`

    Tries conversion under `rs` first, then explores terms reachable from
    both sides by single reductions and by replacing one side of an equation
    by the other, until the two explorations meet or `max_nodes` terms have
    been visited.

    Returns:
        bool: True if equality was established, False if it was not found
            within the bounds

    """
    try:
        if convertible(rs, t, u, Fuel(max_steps)):
            return True
    except FuelExhausted:
        pass

    seen = [{t}, {u}]
    queues = [deque([t]), deque([u])]

    while any(queues) and len(seen[0]) + len(seen[1]) < max_nodes:
        for side in (0, 1):
            if not queues[side]:
                continue
            for neighbour in _neighbours(rs, queues[side].popleft(), equations):
                if neighbour in seen[1 - side]:
                    return True
                if neighbour not in seen[side]:
                    seen[side].add(neighbour)
                    queues[side].append(neighbour)

    return False


def _fresh_for(hint: str, lctx: Optional[Environment], equations: EquationSet) -> str:
    taken = equations.free_vars() | set(lctx.names if lctx is not None else ())
    return fresh_name(hint, taken)


def _decompose_product(
    equation: Equation, lctx: Optional[Environment], equations: EquationSet
) -> Optional[List[Equation]]:
    left, right = equation.left, equation.right
    if equation.is_trivial:
        return None
    if not (isinstance(left, Prod) and isinstance(right, Prod)):
        return None

    x = _fresh_for(left.name, lctx, equations)
    return [
        Equation(left.domain, right.domain),
        Equation(open_binder(left.codomain, x), open_binder(right.codomain, x)),
    ]


def _decompose_injective(
    sig, rs: RuleSet, equations: EquationSet, index: int
) -> Optional[List[Equation]]:
    equation = equations[index]
    if equation.is_trivial:
        return None

    lhead, largs = spine(equation.left)
    rhead, rargs = spine(equation.right)
    if (
        not isinstance(lhead, Symbol)
        or lhead != rhead
        or len(largs) != len(rargs)
        or not largs
    ):
        return None

    positions = sig.injective_positions(lhead.name, len(largs))
    if not positions:
        return None

    others = equations.without(index)
    for i, (t, u) in enumerate(zip(largs, rargs), 1):
        if i not in positions and not equal_modulo(rs, t, u, others):
            logger.debug(
                "%s: argument %d not known equal, %s kept", lhead.name, i, equation
            )
            return None

    return [
        Equation(t, u)
        for i, (t, u) in enumerate(zip(largs, rargs), 1)
        if i in positions
    ]


def simplify_step(
    sig, rs: RuleSet, lctx: Optional[Environment], equations: EquationSet
) -> Optional[EquationSet]:
    """Applies a single simplification to `equations`

    Tried in order, on the first equation where it applies:
        1. one leftmost-outermost reduction step on the left, else the right
           side of an equation;
        2. `Π x:t1, t2 = Π x:u1, u2` becomes `t1 = u1, t2 = u2` for a fresh
           `x`;
        3. `f t1 ... tn = f u1 ... un` becomes `{ti = ui | i in I}` when f is
           injective on I and every other pair of arguments is known equal
           modulo the rest of the equations.

    Args:
        sig (Signature): Signature giving injectivity.
        rs (RuleSet): Rules for reduction steps.
        lctx (Environment, optional): Environment of the left-hand side;
            fresh variables avoid its names.
        equations (EquationSet): Equations to simplify.

    Returns:
        EquationSet: the simplified copy, or None if nothing applies

    """
    for index, equation in enumerate(equations):
        reduced = one_step(rs, equation.left)
        if reduced is not None:
            return equations.replace(index, [Equation(reduced, equation.right)])
        reduced = one_step(rs, equation.right)
        if reduced is not None:
            return equations.replace(index, [Equation(equation.left, reduced)])

    for index, equation in enumerate(equations):
        parts = _decompose_product(equation, lctx, equations)
        if parts is not None:
            return equations.replace(index, parts)

    for index in range(len(equations)):
        parts = _decompose_injective(sig, rs, equations, index)
        if parts is not None:
            return equations.replace(index, parts)

    return None


def _pass(
    sig, rs: RuleSet, lctx: Optional[Environment], equations: EquationSet, fuel: Fuel
) -> EquationSet:
    equations = EquationSet(
        Equation(normalize(rs, e.left, fuel), normalize(rs, e.right, fuel))
        for e in equations
    )

    index = 0
    while index < len(equations):
        parts = _decompose_product(equations[index], lctx, equations)
        if parts is None:
            index += 1
        else:
            equations = equations.replace(index, parts)

    index = 0
    while index < len(equations):
        parts = _decompose_injective(sig, rs, equations, index)
        if parts is None:
            index += 1
        else:
            before = len(equations)
            equations = equations.replace(index, parts)
            # parts that are duplicates vanish, so step over what was kept
            index += max(len(equations) - before + 1, 0)

    return equations


def simplify(
    sig,
    rs: RuleSet,
    lctx: Optional[Environment],
    equations: EquationSet,
    fuel: Fuel = None,
) -> EquationSet:
    """Simplifies typability constraints until nothing changes

    Each pass normalizes both sides of every equation, then decomposes
    products, then applies injectivity to each equation in order. Every
    substitution satisfying the input satisfies the output.

    Args:
        sig (Signature): Signature giving injectivity.
        rs (RuleSet): Rules used for normalization.
        lctx (Environment, optional): Environment of the left-hand side.
        equations (EquationSet): Equations to simplify.
        fuel (Fuel, optional): Step budget for normalization.

    Returns:
        EquationSet: the simplified equations

    Raises:
        FuelExhausted: If normalization runs out of fuel.
        SimplificationDiverges: If no fixpoint is reached within
            MAX_SIMPLIFY_PASSES passes.

    """
    fuel = fuel if fuel is not None else Fuel()

    for count in range(1, MAX_SIMPLIFY_PASSES + 1):
        simplified = _pass(sig, rs, lctx, equations, fuel)
        if list(simplified) == list(equations):
            logger.debug("simplification stable after %d passes", count)
            return simplified
        equations = simplified

    raise SimplificationDiverges(
        f"no fixpoint after {MAX_SIMPLIFY_PASSES} simplification passes"
    )
