"""Exact scalars: Gaussian rationals times a monomial in named real symbols.

Symbols named ``sqrtN`` (N a positive integer) are quadratic surds and
reduce by ``sqrtN**2 == N``; every other symbol is a free commuting
indeterminate.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Tuple

Monomial = Tuple[Tuple[str, int], ...]

_SURD = re.compile(r"^sqrt([1-9][0-9]*)$")


def make_monomial(powers: Mapping[str, int] | Iterable[tuple[str, int]]) -> Monomial:
    items = powers.items() if isinstance(powers, Mapping) else powers
    merged: dict[str, int] = {}
    for name, p in items:
        if p:
            merged[name] = merged.get(name, 0) + p
    return tuple(sorted((n, p) for n, p in merged.items() if p))


def _mono_mul(a: Monomial, b: Monomial) -> tuple[Fraction, Monomial]:
    """Multiply monomials; returns (rational factor from surd reduction, monomial)."""
    merged = dict(a)
    for name, p in b:
        merged[name] = merged.get(name, 0) + p
    factor = Fraction(1)
    out = []
    for name in sorted(merged):
        p = merged[name]
        m = _SURD.match(name)
        if m and p >= 2:
            factor *= Fraction(int(m.group(1))) ** (p // 2)
            p %= 2
        if p:
            out.append((name, p))
    return factor, tuple(out)


def mono_str(mono: Monomial) -> str:
    return " ".join(n if p == 1 else f"{n}^{p}" for n, p in mono)


def mono_degree(mono: Monomial, symbol: str) -> int:
    return dict(mono).get(symbol, 0)


def _frac_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class Scalar:
    """``(re + i*im) * monomial`` with exact rational parts."""

    __slots__ = ("re", "im", "mono")

    def __init__(self, re=0, im=0, mono: Monomial = ()):
        self.re = Fraction(re)
        self.im = Fraction(im)
        self.mono = mono

    @classmethod
    def coerce(cls, x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, complex):
            raise TypeError("floating complex values are not exact scalars")
        if isinstance(x, float):
            raise TypeError("floats are not exact scalars")
        return cls(Fraction(x))

    @classmethod
    def symbol(cls, name: str, power: int = 1) -> "Scalar":
        return cls(1, 0, make_monomial({name: power}))

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def conj(self) -> "Scalar":
        return Scalar(self.re, -self.im, self.mono)

    def __neg__(self) -> "Scalar":
        return Scalar(-self.re, -self.im, self.mono)

    def __mul__(self, other) -> "Scalar":
        other = Scalar.coerce(other)
        factor, mono = _mono_mul(self.mono, other.mono)
        re = self.re * other.re - self.im * other.im
        im = self.re * other.im + self.im * other.re
        return Scalar(re * factor, im * factor, mono)

    __rmul__ = __mul__

    def add_same_mono(self, other: "Scalar") -> "Scalar":
        if self.mono != other.mono:
            raise ValueError("cannot merge scalars with different monomials")
        return Scalar(self.re + other.re, self.im + other.im, self.mono)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return (self.re, self.im, self.mono) == (other.re, other.im, other.mono)

    def __hash__(self) -> int:
        if self.is_zero():
            return hash(0)
        return hash((self.re, self.im, self.mono))

    def coefficient_text(self) -> str:
        """Magnitude-free rendering used by the printer; sign handled by caller."""
        return _frac_str(self.re)

    def __repr__(self) -> str:
        parts = []
        if self.re or not self.im:
            parts.append(_frac_str(self.re))
        if self.im:
            parts.append(f"{_frac_str(self.im)}i")
        body = "+".join(parts).replace("+-", "-")
        if self.mono:
            body = f"({body}) {mono_str(self.mono)}" if len(parts) > 1 else f"{body} {mono_str(self.mono)}"
        return f"Scalar({body})"
