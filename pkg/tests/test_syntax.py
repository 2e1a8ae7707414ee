from tests import *


class TestParser(unittest.TestCase):
    def test_parses_corpus_declarations_in_order(self):
        source = parse(read_source(VECTORS_PATH))
        self.assertEqual(len(source), 9)

        names = [d.name for d in source if isinstance(d, SymbolDecl)]
        self.assertEqual(names, ["N", "0", "s", "R", "V", "nil", "cons", "tail"])
        self.assertEqual(source.declarations[0], SymbolDecl("N", STAR))

        rule = source.declarations[-1]
        self.assertIsInstance(rule, RuleDecl)
        self.assertEqual(rule.lhs, t("tail $n (cons $x $p $v)"))
        self.assertEqual(rule.rhs, Var("v"))
        self.assertEqual(rule.line, 14)

    def test_with_splits_rules(self):
        source = parse(read_source(PEANO_PATH))
        rules = [d for d in source if isinstance(d, RuleDecl)]
        self.assertEqual(len(rules), 5)
        self.assertEqual(rules[2].rhs, t("s (+ $x $y)"))

    def test_modifiers(self):
        source = parse(
            "injective(1, 3) symbol f : A -> A -> A -> A;\n"
            "injective symbol g : A -> A;\n"
            "constant symbol c : A\n"
        )
        f, g, c = source.declarations
        self.assertEqual(f.injective_on, frozenset({1, 3}))
        self.assertFalse(f.fully_injective)
        self.assertTrue(g.fully_injective)
        self.assertTrue(c.constant)
        self.assertEqual(c.line, 3)

    def test_binders(self):
        self.assertEqual(t("A -> B"), Prod(Symbol("A"), Symbol("B")))
        self.assertEqual(
            t("Pi x : N, V x"), Prod(Symbol("N"), App(Symbol("V"), BVar(0)))
        )
        self.assertEqual(t("\\x : N, s x"), Abs(Symbol("N"), App(Symbol("s"), BVar(0))))

    def test_unicode_spellings(self):
        self.assertEqual(t("Π x : N, V x"), t("Pi x : N, V x"))
        self.assertEqual(t("λx : N, x"), t("\\x : N, x"))
        self.assertEqual(t("A → B"), t("A -> B"))
        self.assertEqual(parse("rule f $x ↪ $x"), parse("rule f $x --> $x"))

    def test_arrow_is_right_associative(self):
        self.assertEqual(t("A -> B -> C"), t("A -> (B -> C)"))
        self.assertNotEqual(t("A -> B -> C"), t("(A -> B) -> C"))

    def test_application_is_left_associative(self):
        self.assertEqual(t("f a b"), App(App(Symbol("f"), Symbol("a")), Symbol("b")))

    def test_comments_are_ignored(self):
        source = parse("// nothing here\nsymbol A : TYPE; // trailing\n")
        self.assertEqual(len(source), 1)

    def test_syntax_error_has_line(self):
        with self.assertRaises(ParseError) as ctx:
            parse("symbol N : TYPE;\nsymbol : N;\n")
        self.assertEqual(ctx.exception.line, 2)

    def test_reserved_characters_rejected(self):
        with self.assertRaises(ParseError):
            parse_term("x#1")
        with self.assertRaises(ParseError):
            parse_term("^x")


class TestPrinter(unittest.TestCase):
    def test_print_terms(self):
        self.assertEqual(print_term(STAR), "TYPE")
        self.assertEqual(print_term(BOX), "KIND")
        self.assertEqual(print_term(t("Pi x : N, V x")), "Pi x : N, V x")
        self.assertEqual(print_term(t("N -> N -> N")), "N -> N -> N")
        self.assertEqual(print_term(t("(N -> N) -> N")), "(N -> N) -> N")
        self.assertEqual(print_term(t("f (g $x) y")), "f (g $x) y")
        self.assertEqual(print_term(t("\\x : N, s x")), "\\x : N, s x")

    def test_binder_names_avoid_capture(self):
        term = Prod(Symbol("N"), App(App(Symbol("f"), Symbol("x")), BVar(0)), "x")
        printed = print_term(term)
        self.assertNotEqual(printed, "Pi x : N, f x x")
        self.assertEqual(parse_term(printed), term)

    def test_loose_indices(self):
        self.assertEqual(print_term(App(Symbol("f"), BVar(3))), "f <3>")

    def test_printed_terms_parse_back(self):
        for text in [
            "Pi n : N, V n -> V (s n)",
            "\\f : N -> N, \\x : N, f (f x)",
            "tail $n (cons $x $p $v)",
            "(\\x : N, x) 0",
            "V (+ (s 0) $n) -> TYPE",
        ]:
            with self.subTest(text=text):
                self.assertEqual(parse_term(print_term(t(text))), t(text))

    def test_print_declarations(self):
        decl = SymbolDecl("f", t("A -> A"), injective_on=frozenset({2, 1}))
        self.assertEqual(print_declaration(decl), "injective(1,2) symbol f : A -> A")
        self.assertEqual(
            print_declaration(RuleDecl(t("f $x"), t("$x"))), "rule f $x --> $x"
        )

    def test_print_source_parses_back(self):
        source = parse(read_source(VECTORS_PATH))
        self.assertEqual(parse(print_source(source)), source)
