from tests import *


class TestTerms(unittest.TestCase):
    def test_bound_names_do_not_matter(self):
        self.assertEqual(t("\\x : N, x"), t("\\y : N, y"))
        self.assertTrue(alpha_eq(t("Pi n : N, V n"), t("Pi m : N, V m")))
        self.assertNotEqual(t("\\x : N, x"), t("\\x : N, y"))

    def test_subst_replaces_free_variables_only(self):
        self.assertEqual(subst(t("f $x $y"), {"x": t("s 0")}), t("f (s 0) $y"))
        self.assertEqual(subst(t("f x"), {"x": t("0")}), t("f x"))

    def test_subst_under_binder_does_not_capture(self):
        body = t("\\z : N, f $x z")
        self.assertEqual(subst(body, {"x": t("g z")}), t("\\w : N, f (g z) w"))

    def test_instantiate(self):
        body = App(Symbol("f"), BVar(0))
        self.assertEqual(instantiate(body, Symbol("a")), t("f a"))

    def test_instantiate_lowers_outer_indices(self):
        body = App(BVar(0), BVar(1))
        self.assertEqual(instantiate(body, Symbol("a")), App(Symbol("a"), BVar(0)))

    def test_abstract_then_open(self):
        body = abstract(t("f $x (g $x)"), Var("x"))
        expected = App(App(Symbol("f"), BVar(0)), App(Symbol("g"), BVar(0)))
        self.assertEqual(body, expected)
        self.assertEqual(open_binder(body, "x"), t("f $x (g $x)"))

    def test_lift(self):
        self.assertEqual(lift(BVar(0), 2), BVar(2))
        self.assertEqual(lift(Abs(Symbol("N"), BVar(0)), 2), Abs(Symbol("N"), BVar(0)))

    def test_spine_and_apply_args(self):
        head, args = spine(t("f a (g b) c"))
        self.assertEqual(head, Symbol("f"))
        self.assertEqual(args, [t("a"), t("g b"), t("c")])
        self.assertEqual(apply_args(head, args), t("f a (g b) c"))

    def test_free_vars(self):
        term = t("f $y (g $x $y) (\\z : N, z)")
        self.assertEqual(free_vars(term), {"x", "y"})
        self.assertEqual(free_vars_in_order(term), ["y", "x"])
        self.assertFalse(is_closed(term))
        self.assertTrue(is_closed(t("f a")))

    def test_symbols_of_skips_bound_names(self):
        self.assertEqual(symbols_of(t("Pi x : N, V x")), {"N", "V"})

    def test_term_size(self):
        self.assertEqual(term_size(t("0")), 1)
        self.assertEqual(term_size(t("s 0")), 2)
        self.assertEqual(term_size(t("+ 0 0")), 3)
        self.assertEqual(term_size(t("s (s (s (s (s (s (s 0)))))))")), 8)
        self.assertEqual(term_size(t("\\x : N, s x")), 4)
        self.assertEqual(term_size(t("Pi x : N, V x")), 4)


class TestPositions(unittest.TestCase):
    def test_subterm_at(self):
        term = t("f a b")
        self.assertEqual(subterm_at(term, ()), term)
        self.assertEqual(subterm_at(term, (2,)), t("b"))
        self.assertEqual(subterm_at(term, (1, 2)), t("a"))

    def test_subterm_at_opens_binders(self):
        term = t("\\x : N, s x")
        self.assertEqual(subterm_at(term, (1,)), t("N"))
        self.assertEqual(subterm_at(term, (2,)), App(Symbol("s"), Var("x")))
        self.assertEqual(subterm_at(term, (2, 2)), Var("x"))

    def test_invalid_positions(self):
        with self.assertRaises(InvalidPosition):
            subterm_at(t("a"), (1,))
        with self.assertRaises(InvalidPosition):
            subterm_at(t("f a"), (3,))
        with self.assertRaises(InvalidPosition):
            replace_at(t("a"), (2,), t("b"))

    def test_replace_at(self):
        self.assertEqual(replace_at(t("f a b"), (1, 2), t("c")), t("f c b"))
        self.assertEqual(replace_at(t("f a b"), (), t("c")), t("c"))

    def test_iter_subterms_outermost_first(self):
        positions = [position for position, _, _ in iter_subterms(t("f a b"))]
        self.assertEqual(positions, [(), (1,), (1, 1), (1, 2), (2,)])

    def test_iter_subterms_depth(self):
        depths = {
            position: depth for position, _, depth in iter_subterms(t("\\x : N, s x"))
        }
        self.assertEqual(depths[(1,)], 0)
        self.assertEqual(depths[(2, 2)], 1)

    def test_format_position(self):
        self.assertEqual(format_position(()), "ε")
        self.assertEqual(format_position((1, 2)), "1·2")


class TestFreshNames(unittest.TestCase):
    def test_fresh_names_avoid_taken(self):
        self.assertEqual(fresh_name("x"), "x" + FRESH_SEPARATOR + "1")
        self.assertEqual(fresh_name("x", {"x#1", "x#2"}), "x#3")
        self.assertEqual(fresh_name("x", {"x#2"}), "x#1")

    def test_fresh_names_are_repeatable(self):
        self.assertEqual(fresh_name("n", {"n#1"}), fresh_name("n", {"n#1"}))

    def test_fresh_name_keeps_base_of_fresh_hint(self):
        self.assertEqual(fresh_name("y#7"), "y#1")
        self.assertEqual(fresh_name(""), "x#1")


class TestUnification(unittest.TestCase):
    def check_unifier(self, left, right):
        sigma = unify(left, right)
        self.assertIsNotNone(sigma)
        self.assertEqual(subst(left, sigma), subst(right, sigma))
        return sigma

    def test_unify_binds_both_sides(self):
        sigma = self.check_unifier(t("f $x b"), t("f a $y"))
        self.assertEqual(sigma, {"x": t("a"), "y": t("b")})

    def test_unify_chained_variables(self):
        sigma = self.check_unifier(t("f $x $y"), t("f $y a"))
        self.assertEqual(sigma["x"], t("a"))
        self.assertEqual(sigma["y"], t("a"))

    def test_unify_under_binders(self):
        self.check_unifier(t("\\z : N, f $x z"), t("\\w : N, f a w"))

    def test_symbol_clash(self):
        self.assertIsNone(unify(t("f $x"), t("g $x")))
        self.assertIsNone(unify(t("f $x $x"), t("f a b")))

    def test_occurs_check(self):
        self.assertIsNone(unify(Var("x"), t("s $x")))

    def test_rename_apart(self):
        self.assertEqual(
            rename_apart(t("f $x"), "1"),
            App(Symbol("f"), Var("x" + FRESH_SEPARATOR + "1")),
        )
