"""Concrete finite-dimensional algebras and their elements.

Cayley-Dickson doubling uses the fixed convention

    (a, b)(c, d) = (ac + gamma * conj(d) b,  d a + b conj(c)),
    conj(a, b)   = (conj(a), -b),

so ``gammas = (-1, -1, -1)`` gives the octonions and a ``+1`` anywhere gives
a split variant.  User tables with arbitrary structure constants are also
accepted (see :meth:`Algebra.from_json`).
"""
from __future__ import annotations

import json
import re
from array import array
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct
from typing import Sequence

from . import kernels


class AlgebraError(ValueError):
    pass


def _frac(x) -> Fraction:
    if isinstance(x, float):
        raise AlgebraError(f"structure constants must be exact, got float {x!r}")
    return Fraction(x)


class Algebra:
    """Structure constants plus an optional diagonal involution.

    Cayley-Dickson members have a monomial table (``e_i e_j = +/- e_k``),
    stored as ``sign``/``idx`` int64 buffers for the kernels.  General tables
    keep ``struct[i][j]`` as full coefficient tuples.
    """

    def __init__(self, name: str, dim: int, *, gammas=None, sign=None, idx=None,
                 struct=None, involution=None):
        self.name = name
        self.dim = dim
        self.gammas = None if gammas is None else tuple(gammas)
        self.involution = None if involution is None else tuple(int(s) for s in involution)
        if sign is not None:
            self.sign = array("q", sign)
            self.idx = array("q", idx)
            self.monomial = True
            struct = []
            for i in range(dim):
                row = []
                for j in range(dim):
                    vec = [Fraction(0)] * dim
                    vec[self.idx[i * dim + j]] = Fraction(self.sign[i * dim + j])
                    row.append(tuple(vec))
                struct.append(tuple(row))
            self.struct = tuple(struct)
        else:
            self.struct = tuple(tuple(tuple(_frac(c) for c in vec) for vec in row) for row in struct)
            self.sign, self.idx = _monomial_view(self.struct, dim)
            self.monomial = self.sign is not None
        self._validate()

    def _validate(self) -> None:
        if len(self.struct) != self.dim or any(len(r) != self.dim for r in self.struct):
            raise AlgebraError("table must be dim x dim")
        if any(len(v) != self.dim for r in self.struct for v in r):
            raise AlgebraError("every table entry needs dim coefficients")
        if self.involution is not None:
            if len(self.involution) != self.dim or any(s not in (1, -1) for s in self.involution):
                raise AlgebraError("involution must be dim signs in {+1, -1}")

    def __repr__(self) -> str:
        return f"Algebra({self.name!r}, dim={self.dim})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Algebra) and self.struct == other.struct \
            and self.involution == other.involution

    def __hash__(self) -> int:
        return hash((self.dim, self.struct[1:2]))

    @property
    def is_cd(self) -> bool:
        return self.gammas is not None

    # -- elements
    def element(self, coeffs) -> "Element":
        return Element(self, coeffs)

    def zero(self) -> "Element":
        return Element(self, [0] * self.dim)

    def basis(self, i: int) -> "Element":
        if not 0 <= i < self.dim:
            raise AlgebraError(f"basis index {i} out of range for {self.name}")
        v = [0] * self.dim
        v[i] = 1
        return Element(self, v)

    def one(self) -> "Element":
        return self.basis(0)

    def mul_coeffs(self, a: Sequence, b: Sequence) -> list:
        if self.monomial:
            return kernels.mul_monomial(self.sign, self.idx, self.dim, a, b)
        out = [Fraction(0)] * self.dim
        for i, ai in enumerate(a):
            if not ai:
                continue
            row = self.struct[i]
            for j, bj in enumerate(b):
                if not bj:
                    continue
                w = ai * bj
                for m, c in enumerate(row[j]):
                    if c:
                        out[m] += w * c
        return out

    # -- serialization
    def to_json(self) -> dict:
        out = {"name": self.name, "dim": self.dim}
        if self.gammas is not None:
            out["gammas"] = list(self.gammas)
        out["table"] = [[[_fmt(c) for c in vec] for vec in row] for row in self.struct]
        if self.involution is not None:
            out["involution"] = list(self.involution)
        return out

    @classmethod
    def from_json(cls, data: dict) -> "Algebra":
        name = data.get("name", "user")
        if "gammas" in data:
            alg = cd_algebra(data["gammas"], name=name)
            if "dim" in data and int(data["dim"]) != alg.dim:
                raise AlgebraError("dim does not match gammas")
            if "table" in data:
                given = tuple(tuple(tuple(_frac(c) for c in v) for v in r) for r in data["table"])
                if given != alg.struct:
                    raise AlgebraError("table does not match the doubling of the given gammas")
            return alg
        if "table" not in data:
            raise AlgebraError("algebra file needs 'gammas' or 'table'")
        table = data["table"]
        dim = int(data.get("dim", len(table)))
        return cls(name, dim, struct=table, involution=data.get("involution"))


def _fmt(q: Fraction) -> str | int:
    q = Fraction(q)
    return q.numerator if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _monomial_view(struct, dim):
    sign, idx = [], []
    for i in range(dim):
        for j in range(dim):
            nz = [(m, c) for m, c in enumerate(struct[i][j]) if c]
            if len(nz) == 0:
                sign.append(0)
                idx.append(0)
            elif len(nz) == 1 and nz[0][1] in (1, -1):
                sign.append(int(nz[0][1]))
                idx.append(nz[0][0])
            else:
                return None, None
    return sign, idx


@dataclass(frozen=True)
class Element:
    algebra: Algebra
    coeffs: tuple

    def __init__(self, algebra: Algebra, coeffs):
        coeffs = tuple(_frac(c) for c in coeffs)
        if len(coeffs) != algebra.dim:
            raise AlgebraError(f"expected {algebra.dim} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "coeffs", coeffs)

    def _same(self, other: "Element") -> None:
        if not isinstance(other, Element):
            raise TypeError(f"expected Element, got {type(other).__name__}")
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise AlgebraError(f"algebra mismatch: {self.algebra.name} vs {other.algebra.name}")

    def __add__(self, other: "Element") -> "Element":
        self._same(other)
        return Element(self.algebra, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "Element") -> "Element":
        self._same(other)
        return Element(self.algebra, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "Element":
        return Element(self.algebra, [-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, Element):
            return mul(self, other)
        q = _frac(other)
        return Element(self.algebra, [a * q for a in self.coeffs])

    def __rmul__(self, other):
        q = _frac(other)
        return Element(self.algebra, [a * q for a in self.coeffs])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self.coeffs == other.coeffs and self.algebra == other.algebra

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_real(self) -> bool:
        """True iff a rational multiple of the identity e0."""
        return not any(self.coeffs[1:])

    def conj(self) -> "Element":
        return conj(self)

    def __str__(self) -> str:
        return format_element(self)

    def __repr__(self) -> str:
        return f"Element({self.algebra.name}: {format_element(self)})"


def mul(a: Element, b: Element) -> Element:
    a._same(b)
    return Element(a.algebra, a.algebra.mul_coeffs(a.coeffs, b.coeffs))


def conj(a: Element) -> Element:
    inv = a.algebra.involution
    if inv is None:
        raise AlgebraError(f"{a.algebra.name} has no declared involution")
    return Element(a.algebra, [s * c for s, c in zip(inv, a.coeffs)])


def norm_sq(a: Element) -> Fraction:
    return mul(a, conj(a)).coeffs[0]


def format_element(a: Element) -> str:
    parts = []
    for i, c in enumerate(a.coeffs):
        if not c:
            continue
        mag = abs(c)
        body = f"e{i}" if mag == 1 else f"{_fmt(mag)}*e{i}"
        if not parts:
            parts.append(f"-{body}" if c < 0 else body)
        else:
            parts.append(f" - {body}" if c < 0 else f" + {body}")
    return "".join(parts) if parts else "0"


_ELEM_TERM = re.compile(r"\s*([+-]?)\s*(?:(\d+(?:/\d+)?)\s*\*\s*)?e(\d+)\s*")


def parse_element(alg: Algebra, text: str) -> Element:
    """Parse ``"e1 + 2*e3 - 1/2*e0"`` (or ``"0"``) into an element of ``alg``."""
    s = text.strip()
    if s == "0":
        return alg.zero()
    coeffs = [Fraction(0)] * alg.dim
    pos = 0
    first = True
    while pos < len(s):
        m = _ELEM_TERM.match(s, pos)
        if not m or m.end() == pos or (not first and not m.group(1)):
            raise AlgebraError(f"cannot parse element {text!r} at offset {pos}")
        i = int(m.group(3))
        if i >= alg.dim:
            raise AlgebraError(f"e{i} out of range for {alg.name} (dim {alg.dim})")
        q = Fraction(m.group(2) or 1)
        coeffs[i] += -q if m.group(1) == "-" else q
        pos = m.end()
        first = False
    return Element(alg, coeffs)


# --- construction ---------------------------------------------------------

def reals() -> Algebra:
    return Algebra("r", 1, gammas=(), sign=[1], idx=[0], involution=[1])


def cd_double(base: Algebra, gamma: int, name: str | None = None) -> Algebra:
    """Double a Cayley-Dickson algebra with sign ``gamma``."""
    if base.gammas is None:
        raise AlgebraError("cd_double needs a Cayley-Dickson base (reals or a doubling)")
    if gamma not in (1, -1):
        raise AlgebraError("gamma must be +1 or -1")
    h = base.dim
    dim = 2 * h
    bs, bi = base.sign, base.idx

    def cs(k):
        return 1 if k == 0 else -1

    sign = [0] * (dim * dim)
    idx = [0] * (dim * dim)
    for i in range(dim):
        for j in range(dim):
            k = i * dim + j
            if i < h and j < h:
                s, m = bs[i * h + j], bi[i * h + j]
            elif i < h:                      # (e_i,0)(0,e_j') = (0, e_j' e_i)
                jp = j - h
                s, m = bs[jp * h + i], h + bi[jp * h + i]
            elif j < h:                      # (0,e_i')(e_j,0) = (0, e_i' conj(e_j))
                ip = i - h
                s, m = bs[ip * h + j] * cs(j), h + bi[ip * h + j]
            else:                            # (0,e_i')(0,e_j') = (gamma conj(e_j') e_i', 0)
                ip, jp = i - h, j - h
                s, m = gamma * cs(jp) * bs[jp * h + ip], bi[jp * h + ip]
            sign[k], idx[k] = s, m
    gammas = base.gammas + (gamma,)
    involution = [1] + [-1] * (dim - 1)
    return Algebra(name or _cd_name(gammas), dim, gammas=gammas, sign=sign, idx=idx,
                   involution=involution)


_NAMES = {
    (): "r",
    (-1,): "c",
    (-1, -1): "quat",
    (-1, -1, -1): "oct",
    (-1, -1, 1): "split-oct",
    (-1, -1, -1, -1): "sed",
}


def _cd_name(gammas) -> str:
    return _NAMES.get(tuple(gammas), "cd(" + ",".join(f"{g:+d}" for g in gammas) + ")")


def cd_algebra(gammas, name: str | None = None) -> Algebra:
    alg = reals()
    for g in gammas:
        alg = cd_double(alg, int(g))
    if name:
        alg.name = name
    return alg


ALIASES = {
    "r": (),
    "c": (-1,),
    "quat": (-1, -1),
    "oct": (-1, -1, -1),
    "split-oct": (-1, -1, 1),
    "sed": (-1, -1, -1, -1),
}

_cache: dict[str, Algebra] = {}


def builtin(alias: str) -> Algebra:
    if alias not in ALIASES:
        raise AlgebraError(f"unknown algebra alias {alias!r}; choose from {', '.join(ALIASES)}")
    if alias not in _cache:
        _cache[alias] = cd_algebra(ALIASES[alias])
    return _cache[alias]


def load_algebra(path: str) -> Algebra:
    with open(path, encoding="utf-8") as fh:
        return Algebra.from_json(json.load(fh))


# --- identity checks ------------------------------------------------------

@dataclass(frozen=True)
class IdentityResult:
    which: str
    holds: bool
    counterexample: tuple | None = None

    def __bool__(self) -> bool:
        return self.holds


def check_identity(alg: Algebra, which: str) -> IdentityResult:
    """Exhaustive basis-tuple check of a polynomial identity.

    Identities of degree two in one variable (alternative, flexible, Moufang)
    are checked in polarized multilinear form, which is equivalent over the
    rationals and needs only basis tuples.
    """
    if which not in kernels.IDENTITY_CODES:
        raise AlgebraError(f"unknown identity {which!r}")
    code = kernels.IDENTITY_CODES[which]
    if alg.monomial:
        found = kernels.scan_identity(alg.sign, alg.idx, alg.dim, code)
    else:
        found = _scan_general(alg, code)
    return IdentityResult(which, found is None, None if found is None else tuple(found))


def _scan_general(alg: Algebra, code: int):
    e = [alg.basis(i) for i in range(alg.dim)]

    def ev(t):
        if isinstance(t, int):
            return e[t]
        return mul(ev(t[0]), ev(t[1]))

    def bad(plus, minus):
        acc = alg.zero()
        for t in plus:
            acc = acc + ev(t)
        for t in minus:
            acc = acc - ev(t)
        return not acc.is_zero()

    r = range(alg.dim)
    if code == 0:
        for i, j, k in iproduct(r, r, r):
            if bad([((i, j), k)], [(i, (j, k))]):
                return (i, j, k)
    elif code == 1:
        for i, j in iproduct(r, r):
            if bad([(i, j)], [(j, i)]):
                return (i, j)
    elif code == 2:
        for i, j, k in iproduct(r, r, r):
            if j < i:
                continue
            if bad([((i, j), k), ((j, i), k)], [(i, (j, k)), (j, (i, k))]):
                return (i, j, k)
            if bad([((k, i), j), ((k, j), i)], [(k, (i, j)), (k, (j, i))]):
                return (k, i, j)
    elif code == 3:
        for i, j, k in iproduct(r, r, r):
            if j >= i and bad([((i, k), j), ((j, k), i)], [(i, (k, j)), (j, (k, i))]):
                return (i, k, j)
    elif code == 4:
        for a, b, x, y in iproduct(r, r, r, r):
            if b < a:
                continue
            if (bad([(a, (x, (b, y))), (b, (x, (a, y)))], [(((a, x), b), y), (((b, x), a), y)])
                    or bad([(x, (a, (y, b))), (x, (b, (y, a)))], [(((x, a), y), b), (((x, b), y), a)])
                    or bad([((a, x), (y, b)), ((b, x), (y, a))], [((a, (x, y)), b), ((b, (x, y)), a)])):
                return (a, b, x, y)
    return None


def find_zero_divisor(alg: Algebra):
    """Search pairs (e_a +/- e_b, e_c +/- e_d) for a product equal to zero."""
    n = alg.dim
    pairs = []
    for a in range(n):
        for b in range(a + 1, n):
            for s in (1, -1):
                v = [0] * n
                v[a], v[b] = 1, s
                pairs.append(Element(alg, v))
    for u in pairs:
        for v in pairs:
            if mul(u, v).is_zero():
                return u, v
    return None
