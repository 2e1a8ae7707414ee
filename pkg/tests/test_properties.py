import itertools
from typing import List, Optional, Tuple

from tests import *
from tests.generators import (
    arities_of,
    closed_terms,
    normal_forms,
    open_terms,
    reachable,
    sized_terms,
)

GROUND_CORPUS = [name for name in CORPUS_NAMES if name != "nonpattern"]

PEANO_ARITIES = {"0": 0, "s": 1, "+": 2}
JOINABILITY_SIZE = 6

# an inhabitant of every object type, and object types to instantiate with
STLC_INHABITANTS = """
symbol o : T;
symbol d : Pi a : T, τ a;
"""
STLC_TYPES = ["o", "arr o o", "arr (arr o o) o"]

SUBSTITUTIONS = [
    {},
    {"x": Var("y")},
    {"y": t("s $x")},
    {"x": t("\\z : N, z"), "z": Var("y")},
    {"x": t("0"), "y": t("+ $z $x")},
]


def rename_binders(term: Term, name: str) -> Term:
    match term:
        case App(head, arg):
            return App(rename_binders(head, name), rename_binders(arg, name))
        case Abs(domain, body, _):
            return Abs(
                rename_binders(domain, name), rename_binders(body, name), name
            )
        case Prod(domain, body, _):
            return Prod(
                rename_binders(domain, name), rename_binders(body, name), name
            )
        case _:
            return term


def compose_substitutions(sigma: Substitution, theta: Substitution) -> Substitution:
    composed = {name: subst(image, theta) for name, image in sigma.items()}
    composed.update(
        {name: image for name, image in theta.items() if name not in sigma}
    )
    return composed


def closed_subterms(term: Term) -> List[Tuple[Position, Term]]:
    # subterms outside every binder, which are closed when `term` is
    return [
        (position, sub) for position, sub, depth in iter_subterms(term) if not depth
    ]


def typable(sig: Signature, rs: RuleSet, term: Term) -> Optional[Term]:
    try:
        return infer(sig, rs, EMPTY_ENV, term)
    except TypingError:
        return None


class TestTermProperties(unittest.TestCase):
    @classmethod
    def setUpClass(cls) -> None:
        cls.terms = open_terms(2)

    def test_generated_terms(self):
        self.assertGreater(len(self.terms), 150)
        self.assertTrue(any(isinstance(term, Abs) for term in self.terms))

    def test_empty_substitution(self):
        for term in self.terms:
            self.assertEqual(subst(term, {}), term)

    def test_substitutions_compose(self):
        for sigma in SUBSTITUTIONS:
            for theta in SUBSTITUTIONS:
                composed = compose_substitutions(sigma, theta)
                for term in self.terms:
                    twice = subst(subst(term, sigma), theta)
                    with self.subTest(term=print_term(term), sigma=sigma, theta=theta):
                        self.assertTrue(alpha_eq(twice, subst(term, composed)))

    def test_free_variables_of_substitution(self):
        for sigma in SUBSTITUTIONS:
            images = set().union(*(free_vars(u) for u in sigma.values()))
            for term in self.terms:
                with self.subTest(term=print_term(term), sigma=sigma):
                    bound = (free_vars(term) - sigma.keys()) | images
                    self.assertLessEqual(free_vars(subst(term, sigma)), bound)

    def test_alpha_equivalence(self):
        for term in self.terms:
            first, second = rename_binders(term, "a"), rename_binders(term, "b")
            with self.subTest(term=print_term(term)):
                self.assertTrue(alpha_eq(term, term))
                self.assertTrue(alpha_eq(term, first) and alpha_eq(first, term))
                self.assertTrue(alpha_eq(first, second))
                self.assertTrue(alpha_eq(term, second))

        sample = self.terms[:40]
        for u in sample:
            for v in sample:
                self.assertEqual(alpha_eq(u, v), alpha_eq(v, u))


class TestReductionProperties(unittest.TestCase):
    @classmethod
    def setUpClass(cls) -> None:
        cls.sig = load("peano")
        cls.rs = cls.sig.rule_set()
        cls.terms = sized_terms(PEANO_ARITIES, 6)

    def test_reducts_are_rule_instances(self):
        for term in self.terms:
            instances = set()
            for position, sub in closed_subterms(term):
                for rule in self.sig.rules:
                    sigma = match(rule.lhs, sub)
                    if sigma is None:
                        continue
                    # the instance found rebuilds the subterm it matched
                    self.assertEqual(subst(rule.lhs, sigma), sub)
                    instances.add(replace_at(term, position, subst(rule.rhs, sigma)))

            with self.subTest(term=print_term(term)):
                self.assertEqual(reducts(self.rs, term), instances)

    def test_normal_forms_are_idempotent(self):
        sig = load("vectors", VECTORS_WITH_REAL)
        rs = sig.rule_set()
        beta = [t("(\\x : N, s x) 0"), t("(\\v : V 0, cons r 0 v) nil")]
        cases = [(self.rs, term) for term in self.terms] + [
            (rs, term) for term in closed_terms(sig, 4) + beta
        ]

        for rules, term in cases:
            with self.subTest(term=print_term(term)):
                head_normal = whnf(rules, term)
                self.assertEqual(whnf(rules, head_normal), head_normal)
                normal = normalize(rules, term)
                self.assertEqual(normalize(rules, normal), normal)
                self.assertEqual(reducts(rules, normal), set())


class TestTypingProperties(unittest.TestCase):
    @classmethod
    def setUpClass(cls) -> None:
        cls.sig = load("vectors", VECTORS_WITH_REAL)
        cls.rs = cls.sig.rule_set()
        cls.terms = closed_terms(cls.sig, 4)

    def redexes(self) -> List[Term]:
        # each term with one closed subterm abstracted out and passed back in
        found = []
        for term in self.terms:
            for position, sub in closed_subterms(term):
                if not position:
                    continue
                domain = infer(self.sig, self.rs, EMPTY_ENV, sub)
                hole = Var("hole")
                body = abstract(replace_at(term, position, hole), hole)
                redex = App(Abs(domain, body, "y"), sub)
                if typable(self.sig, self.rs, redex) is not None:
                    found.append(redex)
        return found

    def test_subterms_are_typable(self):
        for term in self.terms + self.redexes():
            for _, sub in closed_subterms(term):
                with self.subTest(term=print_term(term), subterm=print_term(sub)):
                    self.assertIsNotNone(typable(self.sig, self.rs, sub))

    def test_beta_preserves_types(self):
        redexes = self.redexes()
        self.assertGreater(len(redexes), 20)

        for redex in redexes:
            type_ = infer(self.sig, self.rs, EMPTY_ENV, redex)
            for reduct in reachable(self.rs, redex):
                with self.subTest(
                    redex=print_term(redex), reduct=print_term(reduct)
                ):
                    reduct_type = infer(self.sig, self.rs, EMPTY_ENV, reduct)
                    self.assertTrue(convertible(self.rs, type_, reduct_type))

    def test_weakening(self):
        env = EMPTY_ENV.extend("w", t("N")).extend("u", t("V $w"))
        check_env(self.sig, self.rs, env)

        for term in self.terms:
            with self.subTest(term=print_term(term)):
                self.assertEqual(
                    infer(self.sig, self.rs, env, term),
                    infer(self.sig, self.rs, EMPTY_ENV, term),
                )


class TestSubjectReduction(unittest.TestCase):
    """Accepted rules preserve the type of every small closed instance"""

    def assert_preserves_types(self, sig: Signature, depth: int):
        self.assertTrue(all(check_rule(sig, rule).accepted for rule in sig.rules))

        rs = sig.rule_set()
        fired = set()
        for term in closed_terms(sig, depth):
            type_ = infer(sig, rs, EMPTY_ENV, term)
            fired |= {
                rule.label for rule in sig.rules if match(rule.lhs, term) is not None
            }
            for reduct in reducts(rs, term):
                with self.subTest(term=print_term(term), reduct=print_term(reduct)):
                    reduct_type = infer(sig, rs, EMPTY_ENV, reduct)
                    self.assertTrue(convertible(rs, type_, reduct_type))

        # every rule had an instance to reduce
        self.assertEqual(fired, {rule.label for rule in sig.rules})

    def test_peano(self):
        self.assert_preserves_types(load("peano"), 4)

    def test_vectors(self):
        self.assert_preserves_types(load("vectors", VECTORS_WITH_REAL), 4)

    def assert_application_preserves_types(self, name: str):
        sig = load(name, STLC_INHABITANTS)
        rs = sig.rule_set()
        app = sig.rules[1]
        self.assertTrue(check_rule(sig, app).accepted)

        instances = []
        for a, b, a2, b2 in itertools.product(STLC_TYPES, repeat=4):
            body = f"\\y : τ ({a2}), d ({b2})"
            if a2 == b2:
                body = f"\\y : τ ({a2}), y"
            term = t(f"app ({a}) ({b}) (lam ({a2}) ({b2}) ({body})) (d ({a}))")
            if typable(sig, rs, term) is not None:
                instances.append(term)
        self.assertEqual(len(instances), len(STLC_TYPES) ** 2)

        for term in instances:
            self.assertIsNotNone(match(app.lhs, term))
            type_ = infer(sig, rs, EMPTY_ENV, term)
            for reduct in reachable(rs, term):
                with self.subTest(term=print_term(term), reduct=print_term(reduct)):
                    reduct_type = infer(sig, rs, EMPTY_ENV, reduct)
                    self.assertTrue(convertible(rs, type_, reduct_type))

    def test_stlc(self):
        self.assert_application_preserves_types("stlc")

    def test_opaque_stlc(self):
        self.assert_application_preserves_types("stlc_opaque")


class TestCompletionOutput(unittest.TestCase):
    """Ground rules decrease, are interreduced, and have the theory of E"""

    @classmethod
    def setUpClass(cls) -> None:
        cls.verdicts = []
        for name in GROUND_CORPUS:
            sig = load(name)
            for rule in sig.rules:
                verdict = check_rule(sig, rule)
                if verdict.ground_rules is not None:
                    cls.verdicts.append((name, verdict))

    def test_corpus(self):
        self.assertGreater(len(self.verdicts), 10)
        for name, verdict in self.verdicts:
            with self.subTest(rule=verdict.label, file=name):
                self.assert_convergent(verdict.ground_rules, verdict.precedence)

    def assert_convergent(self, ground: GroundRules, prec: Precedence):
        for rule in ground:
            if ground.is_shortcut(rule):
                self.assertNotIn(rule.lhs.name, symbols_of(rule.rhs))
            else:
                self.assertTrue(lpo_gt(prec, rule.lhs, rule.rhs))

        # no rule rewrites a side of another, so no critical pairs remain
        for rule in ground:
            for other in ground:
                if other is rule:
                    continue
                for side in (rule.lhs, rule.rhs):
                    subterms = [sub for _, sub, _ in iter_subterms(side)]
                    self.assertNotIn(other.lhs, subterms)

    def test_equations_are_joined(self):
        for name, verdict in self.verdicts:
            rs = verdict.ground_rules.rule_set()
            for equation in verdict.simplified:
                with self.subTest(file=name, rule=verdict.label, equation=equation):
                    self.assertEqual(
                        normalize(rs, equation.left), normalize(rs, equation.right)
                    )

    def test_rules_follow_from_equations(self):
        for name, verdict in self.verdicts:
            for rule in verdict.ground_rules:
                with self.subTest(file=name, rule=verdict.label, ground=rule.label):
                    self.assertTrue(
                        equal_modulo(
                            EMPTY_RULES,
                            rule.lhs,
                            rule.rhs,
                            verdict.simplified,
                            max_nodes=5000,
                        )
                    )

    def test_small_terms_have_one_normal_form(self):
        for name, verdict in self.verdicts:
            rs = verdict.ground_rules.rule_set()
            sides = [side for pair in verdict.ground_rules.pairs() for side in pair]
            terms = sized_terms(arities_of(sides), JOINABILITY_SIZE)
            ambiguous = [
                print_term(term) for term in terms if len(normal_forms(rs, term)) != 1
            ]
            with self.subTest(file=name, rule=verdict.label):
                self.assertEqual(ambiguous, [])


class TestNormalization(unittest.TestCase):
    def test_normal_forms_are_unique(self):
        sig = load("peano")
        rs = sig.rule_set()
        terms = sized_terms(PEANO_ARITIES, 8)
        self.assertEqual(len(terms), 216)
        self.assertIn(t("s (s (s (s (s (s (s 0)))))))"), terms)

        for term in terms:
            with self.subTest(term=print_term(term)):
                self.assertEqual(normal_forms(rs, term), {normalize(rs, term)})
