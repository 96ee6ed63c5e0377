import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nonassoc.assoc_calculus import evaluate_in
from nonassoc.cayley_dickson import builtin
from nonassoc.parser import parse
from nonassoc.scalar import Scalar
from nonassoc.term import Expr, Generator, Leaf, Product, product, set_symbol
from nonassoc.ym_derive import (Decomposition, DerivedEquation, GaugeContext, GaugeError,
                                derive, derive_many, field_strength, leibniz_terms,
                                lint_equation, substitute_decomposition, ym_equations)

from oracles import generator_jets, jet_assignment, jet_of_expr
from strategies import exprs

SU2 = GaugeContext.su2()
AB3 = GaugeContext.abelian(3)


def A(a, mu, derivs=()):
    return Leaf(Generator("A", (a,), (mu,), "x", False, tuple(derivs)))


def test_derive_generator():
    assert derive(parse("phi(x)"), "0") == parse("d_{0}phi(x)")


def test_derive_product_is_leibniz():
    assert derive(parse("[a b]"), "1") == parse("[d_{1}a b] + [a d_{1}b]")


def test_derive_keeps_bracketing():
    e = derive(parse("[[a b] c]"), "2")
    assert e == parse("[[d_{2}a b] c] + [[a d_{2}b] c] + [[a b] d_{2}c]")


def test_derive_associator_is_trilinear():
    e = derive(parse("{a, b, c}-"), "0")
    assert e == parse("{d_{0}a, b, c}- + {a, d_{0}b, c}- + {a, b, d_{0}c}-")


def test_derivative_markers_sorted():
    assert derive_many(parse("a"), ["3", "0", "2"]) == parse("d_{0,2,3}a")


@settings(max_examples=150, deadline=None)
@given(exprs(4), st.sampled_from("0123"), st.sampled_from("0123"))
def test_mixed_derivatives_commute(e, mu, nu):
    assert derive(derive(e, mu), nu) == derive(derive(e, nu), mu)


@settings(max_examples=100, deadline=None)
@given(exprs(3), exprs(3), st.sampled_from("0123"))
def test_derive_product_rule_on_exprs(x, y, mu):
    assert derive(product(x, y), mu) == product(derive(x, mu), y) + product(x, derive(y, mu))


def test_abelian_field_strength():
    f = field_strength(AB3, "2", "0", "1")
    assert f == Expr.from_pairs([(1, A("2", "1", "0")), (-1, A("2", "0", "1"))])


def test_su2_field_strength_has_two_quadratic_terms():
    f = field_strength(SU2, "1", "0", "1")
    quad = [(t, s) for t, s in f.items() if isinstance(t, Product)]
    assert len(quad) == 2
    assert dict((t, s) for t, s in quad) == {
        Product(A("2", "0"), A("3", "1")): Scalar.symbol("g"),
        Product(A("3", "0"), A("2", "1")): -Scalar.symbol("g"),
    }


@pytest.mark.parametrize("a", ["1", "2", "3"])
def test_su2_field_strength_antisymmetric_modulo_commutator(a):
    g = Scalar.symbol("g")
    for mu in "0123":
        for nu in "0123":
            total = field_strength(SU2, a, mu, nu) + field_strength(SU2, a, nu, mu)
            want = Expr.zero()
            for b in SU2.colors:
                for c in SU2.colors:
                    f = SU2.f(int(a), int(b), int(c))
                    if f.is_zero():
                        continue
                    comm = Expr.of(Product(A(b, mu), A(c, nu))) - Expr.of(Product(A(c, nu), A(b, mu)))
                    want = want + comm.scale(g * f)
            assert total == want


def test_su2_antisymmetry_holds_in_a_commutative_algebra():
    C = builtin("c")
    rng = random.Random(5)
    vals = {}

    def assign(gen):
        return vals.setdefault(gen, C.element([rng.randint(-3, 3), rng.randint(-3, 3)]))
    for mu, nu in (("0", "1"), ("2", "3"), ("1", "1")):
        total = field_strength(SU2, "1", mu, nu) + field_strength(SU2, "1", nu, mu)
        assert evaluate_in(C, total, assign, {"g": 3}).is_zero()


def test_abelian_equation_term_census():
    eqs = ym_equations(GaugeContext.abelian(1))
    assert len(eqs) == 4
    for eq in eqs:
        assert eq.raw_term_count == 8
    # F^{0 nu} = -F_{0 nu} for spatial nu under diag(+,-,-,-)
    assert str(eqs[0].lhs) == ("-d_{0,1}A^{1}_{1}(x) - d_{0,2}A^{1}_{2}(x) - d_{0,3}A^{1}_{3}(x)"
                               " + d_{1,1}A^{1}_{0}(x) + d_{2,2}A^{1}_{0}(x) + d_{3,3}A^{1}_{0}(x)")


def test_su2_equation_census():
    for eq in ym_equations(SU2):
        assert eq.raw_term_count == 24
        degs = {s.mono for _, s in eq.lhs.items()}
        assert degs == {(), (("g", 1),)}
    cov = ym_equations(SU2, covariant=True)
    for eq in cov:
        assert (("g", 2),) in {s.mono for _, s in eq.lhs.items()}


def test_su2_at_zero_coupling_matches_abelian():
    su2 = ym_equations(SU2)
    ab = ym_equations(AB3)
    for x, y in zip(su2, ab):
        assert x.free_indices == y.free_indices
        assert set_symbol(x.lhs, "g", 0) == y.lhs
        assert f"{set_symbol(x.lhs, 'g', 0)} = 0" == y.text


def test_depth_one_is_renaming():
    d = Decomposition(depth=1)
    for eq, sub in zip(ym_equations(SU2), substitute_decomposition(ym_equations(SU2), d, SU2)):
        renamed = {(t.key.replace("A^", "phi^"), s) for t, s in eq.lhs.items()}
        assert renamed == {(t.key, s) for t, s in sub.lhs.items()}


def test_depth_two_double_derivative_has_four_leibniz_terms():
    d = Decomposition(depth=2)
    (t,) = [t for t, _ in d.expansion("1", "0").items()][:1]
    assert isinstance(t, Product)
    assert len(leibniz_terms(t, ["0", "1"])) == 4
    assert len(leibniz_terms(t, ["2", "2"])) == 4


def test_decomposition_rendering():
    assert Decomposition(depth=3).render() == "A^{a}_{mu}(x) = [[phi^{a}_{i1}(x) phi^{i1}_{i2}(x)] phi^{i2}_{mu}(x)]"
    assert Decomposition(depth=3, nesting="right").render() == \
        "A^{a}_{mu}(x) = [phi^{a}_{i1}(x) [phi^{i1}_{i2}(x) phi^{i2}_{mu}(x)]]"


def test_substitution_preserves_nested_brackets():
    d = Decomposition(depth=3, nesting="right")
    sub = substitute_decomposition(ym_equations(GaugeContext.abelian(1)), d)
    for eq in sub:
        for t, _ in eq.lhs.items():
            assert isinstance(t, Product) and isinstance(t.right, Product)
        assert lint_equation(eq, d) == []


def _commuting_square(ctx, d, seed, covariant=False):
    alg = builtin("oct")
    rng = random.Random(seed)
    eqs = ym_equations(ctx, covariant=covariant)
    sub = substitute_decomposition(eqs, d, ctx)
    phis = {g.underived() for eq in sub for t, _ in eq.lhs.items() for g in t.leaves()}
    phi_jets = generator_jets(phis, alg, rng)
    a_jets = {}
    for a in ctx.colors:
        for mu in ctx.spacetime:
            gen = Generator("A", (a,), (mu,), "x")
            a_jets[gen] = jet_of_expr(d.expansion(a, mu), phi_jets, alg)
    symbols = {"g": 2}
    for eq, s in zip(eqs, sub):
        before = evaluate_in(alg, eq.lhs, jet_assignment(a_jets), symbols)
        after = evaluate_in(alg, s.lhs, jet_assignment(phi_jets), symbols)
        assert before == after


@pytest.mark.parametrize("nesting", ["left", "right"])
def test_commuting_square_su2_depth_two(nesting):
    _commuting_square(SU2, Decomposition(depth=2, nesting=nesting), 1)


def test_commuting_square_abelian_depth_three():
    _commuting_square(GaugeContext.abelian(1), Decomposition(depth=3), 2)


def test_commuting_square_covariant():
    _commuting_square(SU2, Decomposition(depth=2, inner_range=("s1",)), 3, covariant=True)


def test_lint_flags_uncontracted_index():
    d = Decomposition(depth=2)
    bad = DerivedEquation(parse("[phi^{1}_{s1}(x) phi^{s2}_{0}(x)]"), {"a": "1", "mu": "0"})
    assert any("not contracted" in p for p in lint_equation(bad, d))
    good = DerivedEquation(parse("[phi^{1}_{s1}(x) phi^{s1}_{0}(x)]"), {"a": "1", "mu": "0"})
    assert lint_equation(good, d) == []


def test_all_substituted_outputs_lint_clean():
    d = Decomposition(depth=2)
    for eq in substitute_decomposition(ym_equations(SU2, covariant=True), d, SU2):
        assert lint_equation(eq, d) == []


def test_su3_structure_constants_pass_jacobi():
    ctx = GaugeContext.su3()
    assert ctx.f(4, 5, 8) == Scalar(1, 0, (("sqrt3", 1),)) * Scalar(Scalar.coerce(1).re / 2)


def test_broken_structure_constants_rejected():
    with pytest.raises(GaugeError):
        GaugeContext("bad", 3, {(1, 2, 3): 1})
    # [T1,T2] = T3 and [T3,T4] = T5 break Jacobi on (T1, T2, T4)
    bad = {}
    for a, b, c in ((1, 2, 3), (3, 4, 5)):
        for perm, sgn in (((a, b, c), 1), ((b, c, a), 1), ((c, a, b), 1),
                          ((b, a, c), -1), ((a, c, b), -1), ((c, b, a), -1)):
            bad[perm] = sgn
    with pytest.raises(GaugeError, match="Jacobi"):
        GaugeContext("bad", 5, bad)


def test_decomposition_errors():
    with pytest.raises(GaugeError):
        substitute_decomposition(ym_equations(SU2), Decomposition(inner_range=("1", "s")), SU2)
    with pytest.raises(GaugeError):
        substitute_decomposition(ym_equations(SU2), Decomposition(target="B"), SU2)
    with pytest.raises(GaugeError):
        Decomposition(depth=0)


def test_parallel_substitution_matches_serial():
    d = Decomposition(depth=2)
    eqs = ym_equations(SU2)[:4]
    assert [e.text for e in substitute_decomposition(eqs, d, SU2, jobs=2)] == \
        [e.text for e in substitute_decomposition(eqs, d, SU2)]
