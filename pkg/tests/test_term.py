import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nonassoc.cayley_dickson import builtin
from nonassoc.assoc_calculus import evaluate
from nonassoc.parser import parse, parse_term
from nonassoc.scalar import Scalar
from nonassoc.term import (Assoc, Expr, Generator, Leaf, Product, bracketings,
                           canonicalize, conjugate, expand_associators, leaf, left_comb,
                           product, reassociate, right_comb, shapes, to_left_normal_form,
                           to_right_normal_form)

from oracles import random_element
from strategies import exprs, terms

a, b, c, d = (leaf(s) for s in "abcd")


def E(text):
    return parse(text)


def test_generator_equality_uses_all_fields():
    g = Generator("phi", ("a",), ("i1",), "x1", False)
    assert g == Generator("phi", ("a",), ("i1",), "x1", False)
    assert g != Generator("phi", ("a",), ("i1",), "x1", True)
    assert g != Generator("phi", ("a",), ("i1",), "x2", False)
    assert g != Generator("phi", ("i1",), ("a",), "x1", False)


@pytest.mark.parametrize("bad", [dict(symbol=""), dict(symbol="phi", upper=("",)),
                                 dict(symbol="phi", point="x-1")])
def test_generator_rejects_bad_fields(bad):
    with pytest.raises(ValueError):
        Generator(**bad)


def test_product_of_generators():
    phi1 = leaf("phi", point="x1")
    phi2 = leaf("phi", point="x2")
    assert product(phi1, phi2) == Expr.of(Product(phi1, phi2))


def test_product_with_zero():
    assert product(Expr.zero(), E("[a b]")).is_zero()
    assert product(E("c"), Expr.zero()).is_zero()


def test_product_distributes():
    assert product(E("2*a"), E("3*b + c")) == E("6*[a b] + 2*[a c]")


def test_product_degrees_add():
    x, y = E("[a [b c]] + d"), E("[a b] - c")
    for t, _ in product(x, y).items():
        assert t.degree in (5, 4, 3, 2)
    assert product(x, y).max_degree() == 5


def test_structural_non_associativity():
    assert Product(Product(a, b), c) != Product(a, Product(b, c))
    assert E("[[a b] c]") != E("[a [b c]]")


def test_canonicalize_merges_and_cancels():
    assert canonicalize(E("[a b] + [a b]")) == E("2*[a b]")
    assert canonicalize(E("[a b] - [a b]")).is_zero()


@settings(max_examples=200, deadline=None)
@given(exprs())
def test_canonicalize_idempotent(e):
    once = canonicalize(e)
    assert canonicalize(once) == once
    assert [k for k in once.items()] == [k for k in e.items()]


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(st.integers(-3, 3), terms(4)), max_size=8), st.randoms())
def test_canonical_form_independent_of_insertion_order(pairs, rnd):
    shuffled = list(pairs)
    rnd.shuffle(shuffled)
    assert Expr.from_pairs(pairs) == Expr.from_pairs(shuffled)
    assert [str(t) for t, _ in Expr.from_pairs(pairs).items()] == \
        [str(t) for t, _ in Expr.from_pairs(shuffled).items()]


def test_term_order_is_serialized_lexicographic():
    e = E("b + [a b] + a + {a, b, c}-")
    keys = [t.key for t, _ in e.items()]
    assert keys == sorted(keys)


def test_catalan_counts():
    assert [sum(1 for _ in shapes(n)) for n in range(1, 8)] == [1, 1, 2, 5, 14, 42, 132]


def test_degree_cap():
    with pytest.raises(ValueError):
        next(shapes(13))
    assert sum(1 for _ in shapes(3, cap=3)) == 2


def test_left_normal_form_examples():
    comb, corr = to_left_normal_form(parse_term("[a [b c]]"))
    assert comb == parse_term("[[a b] c]")
    assert corr == -Expr.of(Assoc("-", a, b, c))

    comb, corr = to_left_normal_form(parse_term("[[a b] c]"))
    assert comb == parse_term("[[a b] c]") and corr.is_zero()

    comb, corr = to_left_normal_form(parse_term("[[a b] [c d]]"))
    assert comb == parse_term("[[[a b] c] d]")
    assert corr == E("-{[a b], c, d}-")


def test_left_normal_form_of_two_by_two_expands_back():
    t = parse_term("[[a b] [c d]]")
    comb, corr = to_left_normal_form(t)
    by_hand = E("[[[a b] c] d]") - (E("[[[a b] c] d]") - E("[[a b] [c d]]"))
    assert expand_associators(Expr.of(comb) + corr) == by_hand == Expr.of(t)


@pytest.mark.parametrize("n", range(1, 7))
@pytest.mark.parametrize("target", ["left", "right"])
def test_reassociation_sound_exhaustive(n, target):
    gens = [Leaf(Generator(f"x{i}")) for i in range(1, n + 1)]
    rng = random.Random(n)
    oct_ = builtin("oct")
    assignment = {g.gen: random_element(oct_, rng) for g in gens}
    for t in bracketings(gens):
        nf = reassociate(t, target)
        assert nf.comb.leaves() == t.leaves()
        assert nf.comb == (left_comb(gens) if target == "left" else right_comb(gens))
        assert nf.rewrites <= (n - 1) * (n - 2) // 2
        assert expand_associators(Expr.of(nf.comb) + nf.corrections) == Expr.of(t)
        assert evaluate(Expr.of(nf.comb) + nf.corrections, assignment) == evaluate(Expr.of(t), assignment)


def test_right_normal_form_example():
    comb, corr = to_right_normal_form(parse_term("[[a b] [c d]]"))
    assert comb == parse_term("[a [b [c d]]]")
    assert corr == E("{a, b, [c d]}-")


def test_conjugate_examples():
    assert conjugate(E("psi")) == E("psi*")
    assert conjugate(E("[a b]")) == E("[b* a*]")
    assert conjugate(E("i*a")) == E("-i*a*")


def test_conjugate_of_associator_matches_expansion():
    for sign in "+-":
        sym = Expr.of(Assoc(sign, parse_term("[a b]"), c, d))
        assert expand_associators(conjugate(sym)) == conjugate(expand_associators(sym))


@settings(max_examples=200, deadline=None)
@given(exprs())
def test_conjugate_involution(e):
    assert conjugate(conjugate(e)) == e


@settings(max_examples=100, deadline=None)
@given(exprs(4), exprs(4))
def test_conjugate_antiautomorphism(x, y):
    assert conjugate(product(x, y)) == product(conjugate(y), conjugate(x))
    assert conjugate(x + y) == conjugate(x) + conjugate(y)


def test_scalar_surd_reduction():
    r3 = Scalar.symbol("sqrt3")
    assert r3 * r3 == Scalar(3)
    assert (r3 * Scalar.symbol("g")) * r3 == Scalar(3) * Scalar.symbol("g")


def test_scalars_reject_floats():
    with pytest.raises(TypeError):
        Scalar.coerce(0.5)
    assert Scalar.coerce(Fraction(1, 2)) == Scalar(Fraction(1, 2))
