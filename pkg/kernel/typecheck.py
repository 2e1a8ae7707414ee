"""Type inference and checking for the λΠ-calculus modulo rewriting

The syntax-directed rules are named after the typing rules they implement
(`ax`, `var`, `fun`, `app`, `abs`, `prod`, `conv`); every typing error
records the name of the rule that failed. Weakening is absorbed into
variable lookup.

A signature is anything with a `type_of(name)` method returning the declared
type of a symbol, or None for unknown names.

Contains the following:
    * TypingError, NotTypable, BoxUntypable, TypeMismatch,
      InvalidEnvironment, SubstitutionIllTyped
    * TermClass, Environment
    * infer
    * check
    * check_env
    * check_subst
    * classify

"""

from __future__ import annotations

import enum
import logging
from typing import Iterator, Optional, Tuple

from kernel.reduce import Fuel, KernelError, RuleSet, convertible, normalize, whnf
from syntax.printer import print_term
from terms import (
    BOX,
    STAR,
    Abs,
    App,
    BVar,
    Prod,
    Sort,
    Substitution,
    Symbol,
    Term,
    Var,
    abstract,
    free_vars,
    fresh_name,
    instantiate,
    open_binder,
    subst,
)

logger = logging.getLogger(__name__)


class TypingError(KernelError):
    """Base class for typing errors

    Args:
        message (str): Description of the failure.
        rule (str, optional): Name of the typing rule that failed.

    """

    def __init__(self, message: str, rule: str = None):
        self.rule = rule
        if rule is not None:
            message = f"[{rule}] {message}"
        super().__init__(message)


class NotTypable(TypingError):
    pass


class BoxUntypable(NotTypable):
    def __init__(self):
        super().__init__("KIND is not typable", rule="ax")


class TypeMismatch(TypingError):
    def __init__(
        self, term: Term, expected: Term, actual: Term, rule: str = "conv"
    ):
        self.term = term
        self.expected = expected
        self.actual = actual
        super().__init__(
            f"{print_term(term)} has type {print_term(actual)} "
            f"but {print_term(expected)} was expected",
            rule=rule,
        )


class InvalidEnvironment(TypingError):
    pass


class SubstitutionIllTyped(TypingError):
    pass


class TermClass(enum.Enum):
    KIND = "kind"
    PREDICATE = "predicate"
    OBJECT = "object"


class Environment:
    """Typing environment: an ordered telescope of `name : type` bindings

    Raises:
        InvalidEnvironment: If a variable is bound twice.

    """

    def __init__(self, bindings=()):
        self.bindings: Tuple[Tuple[str, Term], ...] = tuple(bindings)
        self._types = dict(self.bindings)

        if len(self._types) != len(self.bindings):
            seen = set()
            for name, _ in self.bindings:
                if name in seen:
                    raise InvalidEnvironment(f"variable ${name} bound twice", "var")
                seen.add(name)

    def extend(self, name: str, type_: Term) -> "Environment":
        return Environment(self.bindings + ((name, type_),))

    def lookup(self, name: str) -> Optional[Term]:
        return self._types.get(name)

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(name for name, _ in self.bindings)

    def __iter__(self) -> Iterator[Tuple[str, Term]]:
        return iter(self.bindings)

    def __len__(self) -> int:
        return len(self.bindings)

    def __contains__(self, name: str) -> bool:
        return name in self._types

    def __repr__(self) -> str:
        inner = ", ".join(f"${x} : {print_term(a)}" for x, a in self.bindings)
        return f"Environment({inner})"


EMPTY_ENV = Environment()


def _sort_of(
    sig, rs: RuleSet, env: Environment, t: Term, fuel: Fuel, rule: str
) -> Sort:
    s = whnf(rs, infer(sig, rs, env, t, fuel), fuel)
    if not isinstance(s, Sort):
        raise NotTypable(f"{print_term(t)} is not a type", rule=rule)
    return s


def _conv(
    sig,
    rs: RuleSet,
    env: Environment,
    t: Term,
    expected: Term,
    fuel: Fuel,
    rule: str,
) -> None:
    actual = infer(sig, rs, env, t, fuel)
    if expected == BOX:
        if actual != BOX:
            raise TypeMismatch(t, expected, actual, rule)
        return

    if not convertible(rs, actual, expected, fuel):
        raise TypeMismatch(
            t, normalize(rs, expected, fuel), normalize(rs, actual, fuel), rule
        )


def infer(sig, rs: RuleSet, env: Environment, t: Term, fuel: Fuel = None) -> Term:
    """Infers a type T such that `env ⊢ t : T`

    Args:
        sig: Signature providing `type_of(name)`.
        rs (RuleSet): Rules used for conversion.
        env (Environment): A valid typing environment.
        t (Term): Term to type; it must not contain loose bound indices.
        fuel (Fuel, optional): Step budget. Defaults to a fresh DEFAULT_FUEL.

    Returns:
        Term: the inferred type, not normalized

    Raises:
        BoxUntypable: If `t` is KIND.
        NotTypable: If no typing rule applies.
        TypeMismatch: If an argument does not have the expected type.
        FuelExhausted: If conversion runs out of fuel.

    """
    fuel = fuel if fuel is not None else Fuel()

    match t:
        case Sort() if t == STAR:
            return BOX

        case Sort():
            raise BoxUntypable()

        case Var(name):
            type_ = env.lookup(name)
            if type_ is None:
                raise NotTypable(f"unbound variable ${name}", rule="var")
            return type_

        case Symbol(name):
            type_ = sig.type_of(name)
            if type_ is None:
                raise NotTypable(f"unknown symbol {name}", rule="fun")
            return type_

        case BVar(index):
            raise NotTypable(f"loose bound index {index}", rule="var")

        case App(head, arg):
            product = whnf(rs, infer(sig, rs, env, head, fuel), fuel)
            if not isinstance(product, Prod):
                raise NotTypable(
                    f"{print_term(head)} is applied but has type "
                    f"{print_term(product)}",
                    rule="app",
                )
            _conv(sig, rs, env, arg, product.domain, fuel, "app")
            return instantiate(product.codomain, arg)

        case Abs(domain, body, name):
            _conv(sig, rs, env, domain, STAR, fuel, "abs")
            x = fresh_name(name, set(env.names) | free_vars(body))
            inner = env.extend(x, domain)
            body_type = infer(sig, rs, inner, open_binder(body, x), fuel)
            if body_type == BOX:
                raise NotTypable("abstraction over a kind", rule="abs")
            _sort_of(sig, rs, inner, body_type, fuel, "abs")
            return Prod(domain, abstract(body_type, Var(x)), name)

        case Prod(domain, codomain, name):
            _conv(sig, rs, env, domain, STAR, fuel, "prod")
            x = fresh_name(name, set(env.names) | free_vars(codomain))
            inner = env.extend(x, domain)
            return _sort_of(sig, rs, inner, open_binder(codomain, x), fuel, "prod")

    raise TypeError(f"not a term: {t!r}")


def check(
    sig, rs: RuleSet, env: Environment, t: Term, expected: Term, fuel: Fuel = None
) -> None:
    """Checks `env ⊢ t : expected`

    `expected` must itself have a sort, unless both it and the type of `t`
    are KIND.

    Raises:
        TypeMismatch: If the inferred type is not convertible to `expected`.
        NotTypable: If `t` or `expected` cannot be typed.

    """
    fuel = fuel if fuel is not None else Fuel()

    if expected != BOX:
        _sort_of(sig, rs, env, expected, fuel, "conv")
    _conv(sig, rs, env, t, expected, fuel, "conv")


def check_env(sig, rs: RuleSet, env: Environment, fuel: Fuel = None) -> None:
    """Checks that each binding's type has a sort in the preceding bindings

    Raises:
        InvalidEnvironment: At the first offending binding.

    """
    fuel = fuel if fuel is not None else Fuel()

    prefix = EMPTY_ENV
    for name, type_ in env:
        try:
            _sort_of(sig, rs, prefix, type_, fuel, "var")
        except TypingError as err:
            raise InvalidEnvironment(f"binding ${name}: {err}", rule="var") from err
        prefix = prefix.extend(name, type_)


def check_subst(
    sig,
    rs: RuleSet,
    env_to: Environment,
    sigma: Substitution,
    env_from: Environment,
    fuel: Fuel = None,
) -> None:
    """Checks `env_to ⊢ xσ : Aσ` for every binding `x : A` of `env_from`

    Raises:
        SubstitutionIllTyped: Naming the first binding that fails.

    """
    fuel = fuel if fuel is not None else Fuel()

    for name, type_ in env_from:
        image = sigma.get(name, Var(name))
        try:
            check(sig, rs, env_to, image, subst(type_, sigma), fuel)
        except TypingError as err:
            raise SubstitutionIllTyped(f"binding ${name}: {err}") from err


def classify(
    sig, rs: RuleSet, env: Environment, t: Term, fuel: Fuel = None
) -> TermClass:
    fuel = fuel if fuel is not None else Fuel()

    type_ = infer(sig, rs, env, t, fuel)
    if type_ == BOX:
        return TermClass.KIND
    if whnf(rs, infer(sig, rs, env, type_, fuel), fuel) == BOX:
        return TermClass.PREDICATE
    return TermClass.OBJECT
