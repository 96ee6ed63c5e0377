"""Free non-associative terms and their exact linear combinations.

A :class:`Term` is a binary bracketing tree (free-magma element) whose leaves
are :class:`Generator` objects.  A third node kind, :class:`Assoc`, stands for
a formal associator ``{a, b, c}_{+/-}`` that is kept unevaluated until
:func:`expand_associators` replaces it by ``(ab)c +/- a(bc)``.

Products are never flattened: ``Product(Product(a, b), c)`` and
``Product(a, Product(b, c))`` are different terms.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Iterator, NamedTuple

from .scalar import Monomial, Scalar

MINUS = "-"
PLUS = "+"
DEFAULT_DEGREE_CAP = 12

_LABEL = re.compile(r"^[A-Za-z0-9]+$")
_NAME = re.compile(r"^[A-Za-z][A-Za-z0-9]*$")


def _check_sign(sign: str) -> str:
    if sign in ("minus", MINUS):
        return MINUS
    if sign in ("plus", PLUS):
        return PLUS
    raise ValueError(f"associator sign must be '+' or '-', got {sign!r}")


@dataclass(frozen=True, order=True)
class Generator:
    """An indexed operator symbol such as ``phi^{a}_{i1}(x)``.

    ``derivs`` holds spacetime derivative markers; they commute, so the tuple
    is kept sorted.
    """

    symbol: str
    upper: tuple[str, ...] = ()
    lower: tuple[str, ...] = ()
    point: str | None = None
    conjugated: bool = False
    derivs: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if not _NAME.match(self.symbol or ""):
            raise ValueError(f"bad generator symbol {self.symbol!r}")
        for lab in (*self.upper, *self.lower, *self.derivs):
            if not isinstance(lab, str) or not _LABEL.match(lab):
                raise ValueError(f"bad index label {lab!r}")
        if self.point is not None and not _LABEL.match(self.point):
            raise ValueError(f"bad point label {self.point!r}")
        object.__setattr__(self, "upper", tuple(self.upper))
        object.__setattr__(self, "lower", tuple(self.lower))
        object.__setattr__(self, "derivs", tuple(sorted(self.derivs)))

    def starred(self) -> "Generator":
        return Generator(self.symbol, self.upper, self.lower, self.point,
                         not self.conjugated, self.derivs)

    def differentiated(self, mu: str) -> "Generator":
        return Generator(self.symbol, self.upper, self.lower, self.point,
                         self.conjugated, self.derivs + (mu,))

    def underived(self) -> "Generator":
        return Generator(self.symbol, self.upper, self.lower, self.point,
                         self.conjugated)

    @property
    def text(self) -> str:
        out = []
        if self.derivs:
            out.append("d_{" + ",".join(self.derivs) + "}")
        out.append(self.symbol)
        if self.upper:
            out.append("^{" + ",".join(self.upper) + "}")
        if self.lower:
            out.append("_{" + ",".join(self.lower) + "}")
        if self.point is not None:
            out.append(f"({self.point})")
        if self.conjugated:
            out.append("*")
        return "".join(out)

    def __str__(self) -> str:
        return self.text


class Term:
    """Base class; use :class:`Leaf`, :class:`Product` or :class:`Assoc`."""

    __slots__ = ("key", "degree", "_hash")

    def __eq__(self, other) -> bool:
        return isinstance(other, Term) and self.key == other.key

    def __lt__(self, other: "Term") -> bool:
        return self.key < other.key

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        return self.key

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.key})"

    def leaves(self) -> list[Generator]:
        out: list[Generator] = []
        stack: list[Term] = [self]
        while stack:
            t = stack.pop()
            if isinstance(t, Leaf):
                out.append(t.gen)
            elif isinstance(t, Product):
                stack.append(t.right)
                stack.append(t.left)
            else:
                stack.extend(reversed(t.slots))
        return out

    def has_assoc(self) -> bool:
        if isinstance(self, Leaf):
            return False
        if isinstance(self, Product):
            return self.left.has_assoc() or self.right.has_assoc()
        return True


class Leaf(Term):
    __slots__ = ("gen",)

    def __init__(self, gen: Generator):
        self.gen = gen
        self.key = gen.text
        self.degree = 1
        self._hash = hash(self.key)


class Product(Term):
    __slots__ = ("left", "right")

    def __init__(self, left: Term, right: Term):
        self.left = left
        self.right = right
        self.key = f"[{left.key} {right.key}]"
        self.degree = left.degree + right.degree
        self._hash = hash(self.key)


class Assoc(Term):
    """Formal associator ``{a, b, c}_sign``; slots are terms."""

    __slots__ = ("sign", "slots")

    def __init__(self, sign: str, a: Term, b: Term, c: Term):
        self.sign = _check_sign(sign)
        self.slots = (a, b, c)
        self.key = "{" + f"{a.key}, {b.key}, {c.key}" + "}" + self.sign
        self.degree = a.degree + b.degree + c.degree
        self._hash = hash(self.key)


def leaf(symbol: str | Generator, upper=(), lower=(), point=None, conjugated=False) -> Term:
    if isinstance(symbol, Generator):
        return Leaf(symbol)
    return Leaf(Generator(symbol, tuple(upper), tuple(lower), point, conjugated))


def left_comb(terms: Iterable[Term]) -> Term:
    it = iter(terms)
    acc = next(it)
    for t in it:
        acc = Product(acc, t)
    return acc


def right_comb(terms: Iterable[Term]) -> Term:
    seq = list(terms)
    acc = seq[-1]
    for t in reversed(seq[:-1]):
        acc = Product(t, acc)
    return acc


def shapes(n: int, cap: int = DEFAULT_DEGREE_CAP) -> Iterator[Term]:
    """Every bracketing of ``n`` placeholder leaves ``x1..xn`` in order."""
    if n > cap:
        raise ValueError(f"degree {n} exceeds cap {cap}; pass cap= to override")
    gens = [Leaf(Generator(f"x{i + 1}")) for i in range(n)]
    yield from bracketings(gens, cap=cap)


def bracketings(items: list[Term], cap: int = DEFAULT_DEGREE_CAP) -> Iterator[Term]:
    """All binary trees with ``items`` as leaves in order (Catalan many)."""
    if len(items) > cap:
        raise ValueError(f"degree {len(items)} exceeds cap {cap}; pass cap= to override")
    if len(items) == 1:
        yield items[0]
        return
    for k in range(1, len(items)):
        for left in bracketings(items[:k], cap):
            for right in bracketings(items[k:], cap):
                yield Product(left, right)


# --- Expr -----------------------------------------------------------------

_Key = tuple  # (Term, Monomial)


class Expr:
    """Canonical finite linear combination of terms.

    Storage maps ``(term, monomial)`` to a Gaussian rational ``(re, im)``;
    zero coefficients are never stored and iteration order is the
    serialized-tree lexicographic order, then the monomial.
    """

    __slots__ = ("_data", "_items")

    def __init__(self, data: dict | None = None):
        self._data = {} if data is None else {
            k: v for k, v in data.items() if v[0] or v[1]
        }
        self._items = None

    @classmethod
    def zero(cls) -> "Expr":
        return cls()

    @classmethod
    def of(cls, term: Term | Generator, coeff=1) -> "Expr":
        if isinstance(term, Generator):
            term = Leaf(term)
        return cls.from_pairs([(coeff, term)])

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[object, Term]]) -> "Expr":
        acc: dict = {}
        for coeff, term in pairs:
            s = Scalar.coerce(coeff)
            if s.is_zero():
                continue
            k = (term, s.mono)
            re, im = acc.get(k, (0, 0))
            acc[k] = (re + s.re, im + s.im)
        return cls(acc)

    def items(self) -> list[tuple[Term, Scalar]]:
        if self._items is None:
            keys = sorted(self._data, key=lambda k: (k[0].key, k[1]))
            self._items = [(k[0], Scalar(*self._data[k], k[1])) for k in keys]
        return self._items

    def terms(self) -> list[Term]:
        seen, out = set(), []
        for t, _ in self.items():
            if t not in seen:
                seen.add(t)
                out.append(t)
        return out

    def coeff(self, term: Term, mono: Monomial = ()) -> Scalar:
        re, im = self._data.get((term, mono), (0, 0))
        return Scalar(re, im, mono)

    def __len__(self) -> int:
        return len(self._data)

    def __iter__(self):
        return iter(self.items())

    def is_zero(self) -> bool:
        return not self._data

    def __bool__(self) -> bool:
        return bool(self._data)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)) and other == 0:
            return self.is_zero()
        return isinstance(other, Expr) and self._data == other._data

    def __hash__(self) -> int:
        return hash(frozenset(self._data.items()))

    def __add__(self, other: "Expr") -> "Expr":
        acc = dict(self._data)
        for k, (re, im) in other._data.items():
            r0, i0 = acc.get(k, (0, 0))
            acc[k] = (r0 + re, i0 + im)
        return Expr(acc)

    def __neg__(self) -> "Expr":
        return Expr({k: (-re, -im) for k, (re, im) in self._data.items()})

    def __sub__(self, other: "Expr") -> "Expr":
        return self + (-other)

    def scale(self, c) -> "Expr":
        s = Scalar.coerce(c)
        return Expr.from_pairs((Scalar(re, im, mono) * s, t)
                               for (t, mono), (re, im) in self._data.items())

    def __rmul__(self, c) -> "Expr":
        return self.scale(c)

    def map_terms(self, fn: Callable[[Term], "Expr"]) -> "Expr":
        """Linear extension of a term-level map."""
        acc: dict = {}
        for (t, mono), (re, im) in self._data.items():
            image = fn(t)
            s = Scalar(re, im, mono)
            for (t2, m2), (r2, i2) in image._data.items():
                prod = s * Scalar(r2, i2, m2)
                k = (t2, prod.mono)
                r0, i0 = acc.get(k, (0, 0))
                acc[k] = (r0 + prod.re, i0 + prod.im)
        return Expr(acc)

    def max_degree(self) -> int:
        return max((t.degree for t, _ in self._data), default=0)

    def to_json(self) -> dict:
        from .parser import format_scalar
        return {"terms": [{"coeff": format_scalar(s), "tree": t.key} for t, s in self.items()]}

    def __str__(self) -> str:
        from .parser import print_expr
        return print_expr(self)

    def __repr__(self) -> str:
        return f"Expr({self})"


def as_expr(x) -> Expr:
    if isinstance(x, Expr):
        return x
    if isinstance(x, (Term, Generator)):
        return Expr.of(x)
    raise TypeError(f"cannot interpret {type(x).__name__} as Expr")


def canonicalize(e: Expr) -> Expr:
    """Expressions are canonical on construction; this re-merges defensively."""
    return Expr.from_pairs((s, t) for t, s in e.items())


def product(a, b) -> Expr:
    """Bilinear non-associative product ``a b``."""
    a, b = as_expr(a), as_expr(b)
    acc: dict = {}
    for (ta, ma), (ra, ia) in a._data.items():
        sa = Scalar(ra, ia, ma)
        for (tb, mb), (rb, ib) in b._data.items():
            s = sa * Scalar(rb, ib, mb)
            k = (Product(ta, tb), s.mono)
            r0, i0 = acc.get(k, (0, 0))
            acc[k] = (r0 + s.re, i0 + s.im)
    return Expr(acc)


def associator_expr(sign: str, a, b, c) -> Expr:
    """``(ab)c +/- a(bc)`` expanded, trilinear in each slot."""
    sign = _check_sign(sign)
    left = product(product(a, b), c)
    right = product(a, product(b, c))
    return left - right if sign == MINUS else left + right


def assoc_symbol(sign: str, a, b, c) -> Expr:
    """Formal (unexpanded) associator, extended trilinearly over Expr slots."""
    sign = _check_sign(sign)
    a, b, c = as_expr(a), as_expr(b), as_expr(c)
    pairs = []
    for ta, sa in a.items():
        for tb, sb in b.items():
            for tc, sc in c.items():
                pairs.append((sa * sb * sc, Assoc(sign, ta, tb, tc)))
    return Expr.from_pairs(pairs)


@lru_cache(maxsize=65536)
def _expand_term(t: Term) -> Expr:
    if isinstance(t, Leaf):
        return Expr.of(t)
    if isinstance(t, Product):
        if not t.has_assoc():
            return Expr.of(t)
        return product(_expand_term(t.left), _expand_term(t.right))
    a, b, c = (_expand_term(s) for s in t.slots)
    return associator_expr(t.sign, a, b, c)


def expand_associators(e: Expr) -> Expr:
    """Replace every formal associator by its definition, recursively."""
    return as_expr(e).map_terms(_expand_term)


# --- reassociation ----------------------------------------------------------

class NormalForm(NamedTuple):
    comb: Term
    corrections: Expr
    rewrites: int


def _times_right(e: Expr, t: Term) -> Expr:
    return product(e, Expr.of(t))


def _times_left(t: Term, e: Expr) -> Expr:
    return product(Expr.of(t), e)


def reassociate(t: Term, target: str = "left") -> NormalForm:
    """Rewrite ``t`` as ``comb + corrections`` with ``comb`` a left (or right) comb.

    Left target uses ``x(yz) = (xy)z - {x, y, z}_-``; right target uses
    ``(xy)z = x(yz) + {x, y, z}_-``.  Associator slots are whatever subterms
    the rewrite meets, so composite slots appear naturally.
    """
    if target not in ("left", "right"):
        raise ValueError("target must be 'left' or 'right'")
    rewrites = 0
    corrections = Expr()
    # Iterative on the spine; the context wraps the spine term once it is
    # finished and records how to lift corrections from the spine outward.
    if target == "left":
        suffix: list[Term] = []  # t == (((spine s1) s2) ...)
        while True:
            if isinstance(t, Product):
                r = t.right
                if isinstance(r, Product):
                    corrections = corrections - _wrap_left_ctx(
                        Expr.of(Assoc(MINUS, t.left, r.left, r.right)), suffix)
                    t = Product(Product(t.left, r.left), r.right)
                    rewrites += 1
                    continue
                suffix.append(r)
                t = t.left
                continue
            break
        comb = t
        for s in reversed(suffix):
            comb = Product(comb, s)
        return NormalForm(comb, corrections, rewrites)
    prefix: list[Term] = []  # t == (p1 (p2 (... spine)))
    while True:
        if isinstance(t, Product):
            lt = t.left
            if isinstance(lt, Product):
                corrections = corrections + _wrap_right_ctx(
                    Expr.of(Assoc(MINUS, lt.left, lt.right, t.right)), prefix)
                t = Product(lt.left, Product(lt.right, t.right))
                rewrites += 1
                continue
            prefix.append(lt)
            t = t.right
            continue
        break
    comb = t
    for p in reversed(prefix):
        comb = Product(p, comb)
    return NormalForm(comb, corrections, rewrites)


def _wrap_left_ctx(e: Expr, suffix: list[Term]) -> Expr:
    for s in reversed(suffix):
        e = _times_right(e, s)
    return e


def _wrap_right_ctx(e: Expr, prefix: list[Term]) -> Expr:
    for p in reversed(prefix):
        e = _times_left(p, e)
    return e


def to_left_normal_form(t: Term) -> tuple[Term, Expr]:
    nf = reassociate(t, "left")
    return nf.comb, nf.corrections


def to_right_normal_form(t: Term) -> tuple[Term, Expr]:
    nf = reassociate(t, "right")
    return nf.comb, nf.corrections


def normal_form_expr(e: Expr, target: str = "left") -> Expr:
    """Linear extension of :func:`reassociate`: every term becomes comb + corrections."""
    def one(t: Term) -> Expr:
        nf = reassociate(t, target)
        return Expr.of(nf.comb) + nf.corrections
    return as_expr(e).map_terms(one)


# --- star ---------------------------------------------------------------

@lru_cache(maxsize=65536)
def _conj_term(t: Term) -> tuple[int, Term]:
    if isinstance(t, Leaf):
        return 1, Leaf(t.gen.starred())
    if isinstance(t, Product):
        sl, l = _conj_term(t.left)
        sr, r = _conj_term(t.right)
        return sl * sr, Product(r, l)
    sa, a = _conj_term(t.slots[0])
    sb, b = _conj_term(t.slots[1])
    sc, c = _conj_term(t.slots[2])
    # ((ab)c -/+ a(bc))* = c*(b*a*) -/+ (c*b*)a*
    flip = -1 if t.sign == MINUS else 1
    return sa * sb * sc * flip, Assoc(t.sign, c, b, a)


def conjugate(e) -> Expr:
    """Antilinear involution with ``(ab)* = b* a*``."""
    e = as_expr(e)
    pairs = []
    for t, s in e.items():
        sign, ct = _conj_term(t)
        pairs.append((s.conj() * sign, ct))
    return Expr.from_pairs(pairs)


# --- misc -----------------------------------------------------------------

def substitute(e: Expr, fn: Callable[[Generator], Expr | None]) -> Expr:
    """Replace generators by expressions, preserving every bracketing."""
    cache: dict[Term, Expr] = {}

    def go(t: Term) -> Expr:
        if t in cache:
            return cache[t]
        if isinstance(t, Leaf):
            img = fn(t.gen)
            out = Expr.of(t) if img is None else img
        elif isinstance(t, Product):
            out = product(go(t.left), go(t.right))
        else:
            out = assoc_symbol(t.sign, *(go(s) for s in t.slots))
        cache[t] = out
        return out

    return as_expr(e).map_terms(go)


def set_symbol(e: Expr, symbol: str, value) -> Expr:
    """Specialize a scalar symbol to an exact value (e.g. the coupling to 0)."""
    value = Scalar.coerce(value)
    pairs = []
    for t, s in e.items():
        powers = dict(s.mono)
        p = powers.pop(symbol, 0)
        rest = Scalar(s.re, s.im, tuple(sorted(powers.items())))
        factor = Scalar(1)
        for _ in range(p):
            factor = factor * value
        pairs.append((rest * factor, t))
    return Expr.from_pairs(pairs)


def expr_json(e: Expr) -> str:
    return json.dumps(e.to_json(), sort_keys=True)
