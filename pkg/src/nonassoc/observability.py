"""Associative subalgebras, observability classification, bracketing defects.

An element counts as observable when it lies in an associative subalgebra.
"Real" means a rational multiple of the identity e0, and the volume integral
of an expectation value is a finite weighted sum over sites.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import kernels
from .cayley_dickson import Algebra, AlgebraError, Element, conj, mul
from .linalg import in_span, nullspace, rref


class Subspace:
    """Span of elements of one algebra, kept in exact reduced echelon form."""

    def __init__(self, algebra: Algebra, vectors: Sequence[Sequence] = ()):
        self.algebra = algebra
        self.rows, self.pivots = rref(vectors, algebra.dim)

    @classmethod
    def spanned_by(cls, elements: Sequence[Element]) -> "Subspace":
        if not elements:
            raise AlgebraError("need at least one element")
        alg = elements[0].algebra
        for e in elements[1:]:
            e._same(elements[0])
        return cls(alg, [e.coeffs for e in elements])

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def basis(self) -> list[Element]:
        return [Element(self.algebra, r) for r in self.rows]

    def __contains__(self, e: Element) -> bool:
        return in_span(self.rows, self.pivots, e.coeffs)

    def __le__(self, other: "Subspace") -> bool:
        return all(b in other for b in self.basis)

    def __eq__(self, other) -> bool:
        return isinstance(other, Subspace) and self.rows == other.rows

    def __str__(self) -> str:
        return f"dim {self.dim}: " + ", ".join(str(b) for b in self.basis)

    def to_json(self) -> dict:
        return {"dim": self.dim, "basis": [str(b) for b in self.basis]}


def associator(a: Element, b: Element, c: Element, sign: str = "-") -> Element:
    left = mul(mul(a, b), c)
    right = mul(a, mul(b, c))
    return left - right if sign in ("-", "minus") else left + right


def _assoc_tensor(alg: Algebra) -> list:
    n = alg.dim
    if alg.monomial:
        return kernels.associator_tensor(alg.sign, alg.idx, n)
    out = [0] * n ** 4
    for i in range(n):
        for j in range(n):
            for k in range(n):
                v = associator(alg.basis(i), alg.basis(j), alg.basis(k)).coeffs
                base = ((i * n + j) * n + k) * n
                out[base:base + n] = v
    return out


def nucleus(alg: Algebra) -> Subspace:
    """Kernel of x -> ((x,e_i,e_j), (e_i,x,e_j), (e_i,e_j,x)) over all basis pairs."""
    n = alg.dim
    T = _assoc_tensor(alg)

    def t(i, j, k, m):
        return T[((i * n + j) * n + k) * n + m]

    rows = set()
    for i in range(n):
        for j in range(n):
            for m in range(n):
                for pos in range(3):
                    if pos == 0:
                        row = tuple(t(k, i, j, m) for k in range(n))
                    elif pos == 1:
                        row = tuple(t(i, k, j, m) for k in range(n))
                    else:
                        row = tuple(t(i, j, k, m) for k in range(n))
                    if any(row):
                        rows.add(row)
    return Subspace(alg, nullspace(sorted(rows), n))


def generated_subalgebra(gens: Sequence[Element]) -> Subspace:
    """Smallest product-closed subspace containing ``gens``."""
    space = Subspace.spanned_by(gens)
    while True:
        basis = space.basis
        new = [mul(x, y).coeffs for x in basis for y in basis]
        grown = Subspace(space.algebra, space.rows + new)
        if grown.dim == space.dim:
            return space
        space = grown


def first_associator_witness(space: Subspace):
    """First (i, j, k) over the space's basis with a nonzero minus-associator."""
    basis = space.basis
    for i, x in enumerate(basis):
        for j, y in enumerate(basis):
            xy = mul(x, y)
            for k, z in enumerate(basis):
                v = mul(xy, z) - mul(x, mul(y, z))
                if not v.is_zero():
                    return (i, j, k), v
    return None


@dataclass
class ObservabilityReport:
    observable: bool
    closure: Subspace
    witness: tuple | None = None
    witness_value: Element | None = None
    involution_closed: bool | None = None

    def to_json(self) -> dict:
        return {
            "observable": self.observable,
            "closure_dim": self.closure.dim,
            "witness": None if self.witness is None else list(self.witness),
        }


def classify(gens: Sequence[Element]) -> ObservabilityReport:
    closure = generated_subalgebra(gens)
    found = first_associator_witness(closure)
    inv_closed = None
    if closure.algebra.involution is not None:
        inv_closed = all(conj(b) in closure for b in closure.basis)
    if found is None:
        return ObservabilityReport(True, closure, None, None, inv_closed)
    (i, j, k), value = found
    return ObservabilityReport(False, closure, (i, j, k), value, inv_closed)


@dataclass
class StateVector:
    """Discretized wavefunction: ``sites`` are (positive weight, value) pairs."""

    sites: list = field(default_factory=list)

    def __post_init__(self):
        if not self.sites:
            raise AlgebraError("a state needs at least one site")
        fixed = []
        for w, v in self.sites:
            w = Fraction(w)
            if w <= 0:
                raise AlgebraError("site weights must be positive")
            fixed.append((w, v))
        alg = fixed[0][1].algebra
        for _, v in fixed[1:]:
            fixed[0][1]._same(v)
        self.sites = fixed
        self.algebra = alg


def expectation(psi: StateVector, M: Element, bracketing: str = "left") -> Element:
    """``sum_k w_k (psi_k* M) psi_k`` (left) or ``sum_k w_k psi_k* (M psi_k)`` (right)."""
    if bracketing not in ("left", "right"):
        raise ValueError("bracketing must be 'left' or 'right'")
    M._same(psi.sites[0][1])
    acc = M.algebra.zero()
    for w, p in psi.sites:
        ps = conj(p)
        if bracketing == "left":
            v = mul(mul(ps, M), p)
        else:
            v = mul(ps, mul(M, p))
        acc = acc + w * v
    return acc


def bracketing_defect(psi: StateVector, M: Element) -> Element:
    return expectation(psi, M, "left") - expectation(psi, M, "right")


def is_real(e: Element) -> bool:
    return e.is_real()
