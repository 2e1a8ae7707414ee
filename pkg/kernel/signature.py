"""Symbol table and rule store of a λΠ-calculus modulo rewriting

Contains the following:
    * SignatureError and its subclasses
    * SymbolInfo
    * Signature

"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Tuple

from kernel.reduce import DEFAULT_FUEL, Fuel, KernelError, Rule, RuleSet, whnf
from kernel.typecheck import EMPTY_ENV, TypingError, infer
from syntax import RuleDecl, SourceFile, SymbolDecl, print_term
from terms import (
    STAR,
    Prod,
    Sort,
    Symbol,
    Term,
    Var,
    free_vars,
    fresh_name,
    open_binder,
    spine,
    symbols_of,
)

logger = logging.getLogger(__name__)


class SignatureError(KernelError):
    """Base class for errors raised while building a signature

    Args:
        message (str): Description of the failure.
        line (int, optional): Source line of the offending declaration.

    """

    def __init__(self, message: str, line: int = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DuplicateSymbol(SignatureError):
    pass


class UnknownSymbol(SignatureError):
    pass


class IllTypedDeclaration(SignatureError):
    pass


class NotAPattern(SignatureError):
    pass


class FreeRhsVariable(SignatureError):
    pass


class ConstantHead(SignatureError):
    pass


@dataclass(frozen=True)
class SymbolInfo:
    name: str
    type: Term
    sort: Sort
    constant: bool = False
    injective_on: FrozenSet[int] = frozenset()
    fully_injective: bool = False
    line: Optional[int] = field(default=None, compare=False)

    @property
    def declared_injective(self) -> bool:
        return self.fully_injective or bool(self.injective_on)


class Signature:
    """Declared symbols with their types and sorts, plus the rule set R

    Symbols and rules are added in order with `declare` and `add_rule`; each
    returns the signature itself so calls can be chained. Once built, a
    signature is only read.

    Args:
        fuel (int, optional): Step budget for each kernel computation made
            while checking declarations. Defaults to DEFAULT_FUEL.

    """

    def __init__(self, fuel: int = DEFAULT_FUEL):
        self.fuel = fuel
        self._symbols: Dict[str, SymbolInfo] = {}
        self._rules: List[Rule] = []
        self._rule_set: Optional[RuleSet] = None

    # symbols

    def __contains__(self, name: str) -> bool:
        return name in self._symbols

    def __len__(self) -> int:
        return len(self._symbols)

    @property
    def symbols(self) -> Tuple[str, ...]:
        """Symbol names in declaration order"""
        return tuple(self._symbols)

    def info(self, name: str) -> SymbolInfo:
        try:
            return self._symbols[name]
        except KeyError:
            raise UnknownSymbol(f"unknown symbol {name}") from None

    def type_of(self, name: str) -> Optional[Term]:
        info = self._symbols.get(name)
        return info.type if info is not None else None

    def declare(self, decl: SymbolDecl) -> "Signature":
        """Adds a symbol after checking that its type has a sort

        Args:
            decl (SymbolDecl): Declaration to add.

        Returns:
            Signature: this signature, with the symbol recorded

        Raises:
            DuplicateSymbol: If the name is already declared.
            UnknownSymbol: If the type mentions an undeclared symbol.
            IllTypedDeclaration: If the type is open or has no sort.

        """
        if decl.name in self._symbols:
            raise DuplicateSymbol(f"symbol {decl.name} already declared", decl.line)

        unknown = sorted(symbols_of(decl.type) - self._symbols.keys())
        if unknown:
            raise UnknownSymbol(
                f"type of {decl.name} mentions undeclared {', '.join(unknown)}",
                decl.line,
            )

        if free_vars(decl.type):
            raise IllTypedDeclaration(
                f"type of {decl.name} mentions rule variables", decl.line
            )

        try:
            sort = whnf(
                self.rule_set(),
                infer(self, self.rule_set(), EMPTY_ENV, decl.type, Fuel(self.fuel)),
                Fuel(self.fuel),
            )
        except TypingError as err:
            raise IllTypedDeclaration(
                f"type of {decl.name} is ill-typed: {err}", decl.line
            ) from err

        if not isinstance(sort, Sort):
            raise IllTypedDeclaration(
                f"type of {decl.name} is {print_term(decl.type)}, not a type",
                decl.line,
            )

        if 0 in decl.injective_on:
            raise SignatureError("injectivity positions start at 1", decl.line)

        self._symbols[decl.name] = SymbolInfo(
            decl.name,
            decl.type,
            sort,
            decl.constant,
            frozenset(decl.injective_on),
            decl.fully_injective,
            decl.line,
        )
        logger.debug("declared %s : %s", decl.name, print_term(decl.type))
        return self

    # rules

    @property
    def rules(self) -> Tuple[Rule, ...]:
        return tuple(self._rules)

    def rule_set(self) -> RuleSet:
        if self._rule_set is None:
            self._rule_set = RuleSet(self._rules)
        return self._rule_set

    def is_defined(self, name: str) -> bool:
        return bool(self.rule_set().rules_for(name))

    def rules_for(self, name: str) -> List[Rule]:
        return [rule for rule in self._rules if rule.head == name]

    def add_rule(self, decl: RuleDecl) -> "Signature":
        """Stores a rewrite rule after checking its shape

        Args:
            decl (RuleDecl): Rule to add.

        Returns:
            Signature: this signature, with the rule stored and its head
                symbol now defined

        Raises:
            UnknownSymbol: If either side mentions an undeclared symbol.
            NotAPattern: If the left-hand side is not a pattern.
            ConstantHead: If the head symbol is declared constant.
            FreeRhsVariable: If the right-hand side has a variable the
                left-hand side lacks.

        """
        unknown = sorted(
            (symbols_of(decl.lhs) | symbols_of(decl.rhs)) - self._symbols.keys()
        )
        if unknown:
            raise UnknownSymbol(
                f"rule mentions undeclared {', '.join(unknown)}", decl.line
            )

        head, args = spine(decl.lhs)
        if not isinstance(head, Symbol):
            raise NotAPattern(
                f"left-hand side {print_term(decl.lhs)} is not headed by a symbol",
                decl.line,
            )

        if self._symbols[head.name].constant:
            raise ConstantHead(
                f"{head.name} is constant and cannot head a rule", decl.line
            )

        if not self.is_pattern(decl.lhs):
            raise NotAPattern(
                f"left-hand side {print_term(decl.lhs)} is not a pattern", decl.line
            )

        extra = sorted(free_vars(decl.rhs) - free_vars(decl.lhs))
        if extra:
            raise FreeRhsVariable(
                "right-hand side variables not bound by the left-hand side: "
                + ", ".join(f"${x}" for x in extra),
                decl.line,
            )

        label = f"{head.name}#{len(self.rules_for(head.name)) + 1}"
        rule = Rule(decl.lhs, decl.rhs, head.name, len(args), label, decl.line)
        self._rules.append(rule)
        self._rule_set = None
        logger.debug("added rule %s", label)
        return self

    @classmethod
    def from_source(cls, source: SourceFile, fuel: int = DEFAULT_FUEL) -> "Signature":
        """Builds a signature from parsed declarations, in order

        Raises:
            SignatureError: At the first declaration that cannot be added.

        """
        sig = cls(fuel)
        for decl in source:
            if isinstance(decl, SymbolDecl):
                sig.declare(decl)
            else:
                sig.add_rule(decl)
        return sig

    # injectivity

    def injective_positions(self, name: str, arity: int) -> FrozenSet[int]:
        """Argument positions (from 1) on which `name` is known injective

        Undefined symbols are injective on every position; defined symbols
        only on the positions their declaration lists.

        """
        every = frozenset(range(1, arity + 1))
        info = self.info(name)
        if not self.is_defined(name) or info.fully_injective:
            return every
        return info.injective_on & every

    # algebraic terms and patterns

    def _exposes_products(self, type_: Term, count: int) -> bool:
        fuel = Fuel(self.fuel)
        for _ in range(count):
            type_ = whnf(self.rule_set(), type_, fuel)
            if not isinstance(type_, Prod):
                return False
            x = fresh_name(type_.name, free_vars(type_))
            type_ = open_binder(type_.codomain, x)
        return True

    def is_algebraic(self, t: Term) -> bool:
        """Checks that `t` is a variable or a declared symbol applied to at
        most as many algebraic arguments as its type has leading products"""
        if isinstance(t, Var):
            return True

        head, args = spine(t)
        if not isinstance(head, Symbol) or head.name not in self._symbols:
            return False

        type_ = self._symbols[head.name].type
        return self._exposes_products(type_, len(args)) and all(
            self.is_algebraic(arg) for arg in args
        )

    def is_object_algebraic(self, t: Term) -> bool:
        return self.is_algebraic(t) and all(
            self._symbols[name].sort == STAR for name in symbols_of(t)
        )

    def is_pattern(self, t: Term) -> bool:
        head, args = spine(t)
        return (
            isinstance(head, Symbol)
            and self.is_algebraic(t)
            and all(self.is_object_algebraic(arg) for arg in args)
        )

    def __repr__(self) -> str:
        return f"Signature({len(self._symbols)} symbols, {len(self._rules)} rules)"
