"""Exact Fraction row reduction, kernels and spans."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


def rref(rows: Iterable[Sequence], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; zero rows dropped."""
    m = [[Fraction(x) for x in r] for r in rows if any(r)]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        row = [x * inv for x in m[r]]
        m[r] = row
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], row)]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def nullspace(rows: Iterable[Sequence], ncols: int) -> list[list[Fraction]]:
    """Basis of ``{x : A x = 0}``, one vector per free column."""
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def in_span(red: list[list[Fraction]], pivots: list[int], v: Sequence) -> bool:
    """Membership test against an RREF basis."""
    w = [Fraction(x) for x in v]
    for row, p in zip(red, pivots):
        if w[p]:
            f = w[p]
            w = [a - f * b for a, b in zip(w, row)]
    return not any(w)
