"""Yang-Mills equations with gauge fields factored into non-associative products.

Pipeline: formal derivatives obeying the Leibniz rule on the binary product,
the field strength ``F^a_{mu nu} = d_mu A^a_nu - d_nu A^a_mu + g f^{abc}
[A^b_mu A^c_nu]``, the divergence equations ``d_nu F^{a mu nu} = 0`` and
substitution of ``A^a_mu`` by a nested product of ``phi`` factors at one
spacetime point.  All index sums are written out explicitly.
"""
from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product as iproduct
from typing import Iterable, Sequence

from .scalar import Scalar, make_monomial
from .term import (Assoc, Expr, Generator, Leaf, Product, Term, as_expr, conjugate,
                   left_comb, product, right_comb, substitute)

SPACETIME = ("0", "1", "2", "3")
MINKOWSKI = (1, -1, -1, -1)


class GaugeError(ValueError):
    pass


# --- derivatives ----------------------------------------------------------

@lru_cache(maxsize=200000)
def _derive_term(t: Term, mu: str) -> tuple[Term, ...]:
    """Leibniz expansion of one term: a list of terms, not merged."""
    if isinstance(t, Leaf):
        return (Leaf(t.gen.differentiated(mu)),)
    if isinstance(t, Product):
        return tuple(Product(dl, t.right) for dl in _derive_term(t.left, mu)) + \
            tuple(Product(t.left, dr) for dr in _derive_term(t.right, mu))
    a, b, c = t.slots
    return tuple(Assoc(t.sign, da, b, c) for da in _derive_term(a, mu)) + \
        tuple(Assoc(t.sign, a, db, c) for db in _derive_term(b, mu)) + \
        tuple(Assoc(t.sign, a, b, dc) for dc in _derive_term(c, mu))


def leibniz_terms(t: Term, mus: Sequence[str]) -> list[Term]:
    """All Leibniz terms of ``d_{mus} t`` before any merging."""
    terms = [t]
    for mu in mus:
        terms = [d for s in terms for d in _derive_term(s, mu)]
    return terms


def derive(e, mu: str) -> Expr:
    """Formal derivative ``d_mu e``; linear, Leibniz on every binary product."""
    e = as_expr(e)
    return e.map_terms(lambda t: Expr.from_pairs((1, d) for d in _derive_term(t, mu)))


def derive_many(e, mus: Iterable[str]) -> Expr:
    e = as_expr(e)
    for mu in mus:
        e = derive(e, mu)
    return e


# --- gauge context --------------------------------------------------------

def _poly_add(acc: dict, s: Scalar) -> None:
    re, im = acc.get(s.mono, (0, 0))
    acc[s.mono] = (re + s.re, im + s.im)


def _poly_zero(acc: dict) -> bool:
    return all(re == 0 and im == 0 for re, im in acc.values())


@dataclass
class GaugeContext:
    group: str
    n_colors: int
    structure_constants: dict
    metric: tuple = MINKOWSKI
    coupling: str = "g"
    field_symbol: str = "A"
    point: str = "x"

    def __post_init__(self):
        if self.n_colors < 1:
            raise GaugeError("need at least one color")
        self.colors = tuple(str(a) for a in range(1, self.n_colors + 1))
        self.spacetime = tuple(str(m) for m in range(len(self.metric)))
        f = {}
        for (a, b, c), v in self.structure_constants.items():
            v = Scalar.coerce(v)
            if not v.is_zero():
                f[(int(a), int(b), int(c))] = v
        self.structure_constants = f
        self._check()

    def f(self, a: int, b: int, c: int) -> Scalar:
        return self.structure_constants.get((a, b, c), Scalar(0))

    def _check(self) -> None:
        n = self.n_colors
        for (a, b, c), v in self.structure_constants.items():
            if not all(1 <= x <= n for x in (a, b, c)):
                raise GaugeError(f"color index out of range in f{(a, b, c)}")
            for perm, sgn in (((b, a, c), -1), ((a, c, b), -1), ((c, b, a), -1),
                              ((b, c, a), 1), ((c, a, b), 1)):
                if self.f(*perm) != v * sgn:
                    raise GaugeError(f"structure constants not totally antisymmetric at {(a, b, c)}")
        r = range(1, n + 1)
        for a, b, c, e in iproduct(r, r, r, r):
            acc: dict = {}
            for d in r:
                for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
                    u, w = self.f(x, y, d), self.f(d, z, e)
                    if not u.is_zero() and not w.is_zero():
                        _poly_add(acc, u * w)
            if not _poly_zero(acc):
                raise GaugeError(f"Jacobi identity fails at {(a, b, c, e)}")

    @classmethod
    def abelian(cls, n_colors: int = 1, **kw) -> "GaugeContext":
        return cls("abelian", n_colors, {}, **kw)

    @classmethod
    def su2(cls, **kw) -> "GaugeContext":
        eps = {}
        for (a, b, c), s in (((1, 2, 3), 1), ((2, 3, 1), 1), ((3, 1, 2), 1),
                             ((2, 1, 3), -1), ((1, 3, 2), -1), ((3, 2, 1), -1)):
            eps[(a, b, c)] = s
        return cls("su2", 3, eps, **kw)

    @classmethod
    def su3(cls, **kw) -> "GaugeContext":
        half = Fraction(1, 2)
        r3 = Scalar(half, 0, make_monomial({"sqrt3": 1}))
        base = {(1, 2, 3): Scalar(1), (1, 4, 7): Scalar(half), (1, 5, 6): Scalar(-half),
                (2, 4, 6): Scalar(half), (2, 5, 7): Scalar(half), (3, 4, 5): Scalar(half),
                (3, 6, 7): Scalar(-half), (4, 5, 8): r3, (6, 7, 8): r3}
        return cls("su3", 8, _antisymmetrize(base), **kw)

    @classmethod
    def named(cls, group: str, **kw) -> "GaugeContext":
        if group in ("abelian", "u1"):
            return cls.abelian(**kw)
        if group == "su2":
            return cls.su2(**kw)
        if group == "su3":
            return cls.su3(**kw)
        raise GaugeError(f"unknown gauge group {group!r}")

    def potential(self, a: str, mu: str, derivs: Sequence[str] = ()) -> Term:
        return Leaf(Generator(self.field_symbol, (a,), (mu,), self.point, False, tuple(derivs)))


def _antisymmetrize(base: dict) -> dict:
    out = {}
    for (a, b, c), v in base.items():
        for perm, sgn in (((a, b, c), 1), ((b, c, a), 1), ((c, a, b), 1),
                          ((b, a, c), -1), ((a, c, b), -1), ((c, b, a), -1)):
            out[perm] = v * sgn
    return out


# --- field strength and equations ----------------------------------------

def _fs_pieces(ctx: GaugeContext, a: str, mu: str, nu: str) -> list[tuple[Scalar, Term]]:
    g = Scalar.symbol(ctx.coupling)
    pieces = [(Scalar(1), ctx.potential(a, nu, (mu,))),
              (Scalar(-1), ctx.potential(a, mu, (nu,)))]
    ai = int(a)
    for b in ctx.colors:
        for c in ctx.colors:
            f = ctx.f(ai, int(b), int(c))
            if not f.is_zero():
                pieces.append((g * f, Product(ctx.potential(b, mu), ctx.potential(c, nu))))
    return pieces


def field_strength(ctx: GaugeContext, a: str, mu: str, nu: str) -> Expr:
    """``F^a_{mu nu}`` with the quadratic part as explicit products ``[A^b_mu A^c_nu]``."""
    return Expr.from_pairs(_fs_pieces(ctx, str(a), str(mu), str(nu)))


def field_strength_family(ctx: GaugeContext) -> dict:
    return {(a, mu, nu): field_strength(ctx, a, mu, nu)
            for a in ctx.colors for mu in ctx.spacetime for nu in ctx.spacetime}


@dataclass
class DerivedEquation:
    """``lhs = 0`` for fixed free indices."""

    lhs: Expr
    free_indices: dict
    raw_term_count: int = 0

    @property
    def text(self) -> str:
        return f"{self.lhs} = 0"

    def to_json(self) -> dict:
        return {"free_indices": dict(self.free_indices), "terms": self.lhs.to_json()["terms"]}


def ym_equations(ctx: GaugeContext, covariant: bool = False) -> list[DerivedEquation]:
    """``d_nu F^{a mu nu} = 0`` for every color ``a`` and ``mu``, nu summed explicitly.

    With ``covariant=True`` the term ``g f^{abc} [A^b_nu F^{c mu nu}]`` is
    added (the covariant divergence).
    """
    eqs = []
    g = Scalar.symbol(ctx.coupling)
    for a in ctx.colors:
        for mi, mu in enumerate(ctx.spacetime):
            pairs: list[tuple[Scalar, Term]] = []
            raw = 0
            for ni, nu in enumerate(ctx.spacetime):
                eta = ctx.metric[mi] * ctx.metric[ni]
                for s, t in _fs_pieces(ctx, a, mu, nu):
                    dts = _derive_term(t, nu)
                    raw += len(dts)
                    pairs.extend((s * eta, d) for d in dts)
                if covariant:
                    for b in ctx.colors:
                        for c in ctx.colors:
                            f = ctx.f(int(a), int(b), int(c))
                            if f.is_zero():
                                continue
                            for s, t in _fs_pieces(ctx, c, mu, nu):
                                raw += 1
                                pairs.append((g * f * s * eta, Product(ctx.potential(b, nu), t)))
            eqs.append(DerivedEquation(Expr.from_pairs(pairs), {"a": a, "mu": mu}, raw))
    return eqs


# --- decomposition --------------------------------------------------------

@dataclass
class Decomposition:
    """``A^a_mu = phi^a_{i1} phi^{i1}_{i2} ... phi^{i_{n-1}}_mu`` nested left or right.

    ``depth`` counts the factors; the ``depth - 1`` inner indices run over
    ``inner_range`` and adjacent upper/lower inner labels are contracted.
    """

    depth: int = 2
    nesting: str = "left"
    inner_range: tuple = ("s1", "s2")
    target: str = "A"
    factor: str = "phi"
    point: str = "x"

    def __post_init__(self):
        if self.depth < 1:
            raise GaugeError("depth must be at least 1")
        if self.nesting not in ("left", "right"):
            raise GaugeError("nesting must be 'left' or 'right'")
        self.inner_range = tuple(str(x) for x in self.inner_range)
        if not self.inner_range or len(set(self.inner_range)) != len(self.inner_range):
            raise GaugeError("inner range must be nonempty and duplicate-free")

    def factors(self, a: str, mu: str, inner: Sequence[str]) -> list[Term]:
        labels = [a, *inner, mu]
        out = []
        for k in range(self.depth):
            up, lo = labels[k], labels[k + 1]
            out.append(Leaf(Generator(self.factor, (up,), (lo,), self.point)))
        return out

    def nest(self, leaves: Sequence[Term]) -> Term:
        return left_comb(leaves) if self.nesting == "left" else right_comb(leaves)

    def expansion(self, a: str, mu: str) -> Expr:
        pairs = []
        for inner in iproduct(self.inner_range, repeat=self.depth - 1):
            pairs.append((1, self.nest(self.factors(a, mu, inner))))
        return Expr.from_pairs(pairs)

    def render(self, a: str = "a", mu: str = "mu") -> str:
        inner = [f"i{k}" for k in range(1, self.depth)]
        leaves = self.factors(a, mu, inner)
        return f"{self.target}^{{{a}}}_{{{mu}}}({self.point}) = {self.nest(leaves).key}"

    def check_against(self, ctx: GaugeContext) -> None:
        clash = set(self.inner_range) & (set(ctx.colors) | set(ctx.spacetime))
        if clash:
            raise GaugeError(f"inner index range clashes with color/spacetime labels: {sorted(clash)}")
        if self.target != ctx.field_symbol:
            raise GaugeError(f"decomposition target {self.target!r} does not match field {ctx.field_symbol!r}")


def _image(d: Decomposition, g: Generator) -> Expr | None:
    if g.symbol != d.target:
        return None
    if len(g.upper) != 1 or len(g.lower) != 1:
        raise GaugeError(f"cannot substitute {g}: expected one color and one spacetime index")
    base = derive_many(d.expansion(g.upper[0], g.lower[0]), g.derivs)
    return conjugate(base) if g.conjugated else base


def _substitute_one(args):
    eq, d = args
    memo: dict = {}

    def fn(g: Generator):
        if g not in memo:
            memo[g] = _image(d, g)
        return memo[g]

    lhs = substitute(eq.lhs, fn)
    return DerivedEquation(lhs, dict(eq.free_indices), eq.raw_term_count)


def substitute_decomposition(eqs: Sequence[DerivedEquation], d: Decomposition,
                             ctx: GaugeContext | None = None, jobs: int = 1) -> list[DerivedEquation]:
    """Replace every ``A`` by its nested ``phi`` product and expand all derivatives."""
    if ctx is not None:
        d.check_against(ctx)
    symbols = {g.symbol for eq in eqs for t, _ in eq.lhs.items() for g in t.leaves()}
    if eqs and symbols and d.target not in symbols:
        raise GaugeError(f"equations contain no {d.target!r} to substitute")
    if jobs > 1 and len(eqs) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_substitute_one, [(eq, d) for eq in eqs]))
    return [_substitute_one((eq, d)) for eq in eqs]


def lint_equation(eq: DerivedEquation, d: Decomposition | None = None) -> list[str]:
    """Index-hygiene problems in ``eq`` (empty list when clean).

    Without a decomposition every leaf must be a potential with one color and
    one spacetime index.  With one, each run of ``d.depth`` consecutive factor
    leaves must chain color -> inner -> ... -> spacetime with every inner
    label contracted exactly twice (once upper, once lower).
    """
    problems = []
    for t, _ in eq.lhs.items():
        leaves = t.leaves()
        if d is None:
            for g in leaves:
                if len(g.upper) != 1 or len(g.lower) != 1:
                    problems.append(f"{t.key}: leaf {g} lacks color/spacetime index")
            continue
        if len(leaves) % d.depth:
            problems.append(f"{t.key}: {len(leaves)} leaves is not a multiple of depth {d.depth}")
            continue
        for start in range(0, len(leaves), d.depth):
            chunk = leaves[start:start + d.depth]
            if any(g.symbol != d.factor for g in chunk):
                problems.append(f"{t.key}: non-factor leaf in composite")
                continue
            counts: dict = {}
            for k in range(len(chunk) - 1):
                lo, up = chunk[k].lower[0], chunk[k + 1].upper[0]
                if lo != up:
                    problems.append(f"{t.key}: inner indices {lo}/{up} not contracted")
                if lo not in d.inner_range:
                    problems.append(f"{t.key}: inner label {lo} outside declared range")
                counts[lo] = counts.get(lo, 0) + 2
            for lab in (chunk[0].upper[0], chunk[-1].lower[0]):
                if lab in d.inner_range and counts.get(lab, 0) == 0:
                    problems.append(f"{t.key}: inner label {lab} left free")
    return problems


def equations_json(eqs: Sequence[DerivedEquation]) -> str:
    return json.dumps([eq.to_json() for eq in eqs], sort_keys=True, indent=1)
