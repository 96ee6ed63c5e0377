"""Plus/minus associators, composite operators and their (anti)commutators.

The associators of composite operators are kept as formal symbols with a
definitional expansion; nothing assumes a closed form for them.  Concrete
checks go through :func:`evaluate`, which maps generators to algebra
elements.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from .cayley_dickson import AlgebraError, Element, conj, mul
from .scalar import Scalar
from .term import (MINUS, PLUS, Assoc, Expr, Generator, Leaf, Product, Term,
                   _check_sign, as_expr, assoc_symbol, associator_expr,
                   expand_associators, left_comb, normal_form_expr, product,
                   right_comb)


def associator(sign, a, b, c):
    """``(ab)c +/- a(bc)``.

    Symbolic for terms/expressions (returned expanded and canonical),
    concrete when all three slots are :class:`Element`.
    """
    sign = _check_sign(sign)
    if all(isinstance(x, Element) for x in (a, b, c)):
        left = mul(mul(a, b), c)
        right = mul(a, mul(b, c))
        return left - right if sign == MINUS else left + right
    return associator_expr(sign, a, b, c)


@dataclass(frozen=True)
class AssocSymbol:
    sign: str
    slots: tuple
    label: str | None = None

    @classmethod
    def from_node(cls, node: Assoc) -> "AssocSymbol":
        return cls(node.sign, tuple(Expr.of(s) for s in node.slots), assoc_label(node))

    def expand(self) -> Expr:
        return associator_expr(self.sign, *self.slots)

    def as_expr(self) -> Expr:
        return assoc_symbol(self.sign, *self.slots)

    def to_json(self) -> dict:
        return {"sign": self.sign, "slots": [str(s) for s in self.slots], "label": self.label}


def assoc_label(node: Assoc) -> str | None:
    """Names for the associator shapes of two-factor composites."""
    degs = tuple(s.degree for s in node.slots)
    if degs == (1, 1, 1):
        return "A"
    if degs == (2, 1, 1):
        return "A1"
    if degs == (1, 1, 2):
        return "A2"
    return None


@dataclass(frozen=True)
class CompositeOp:
    """Product of non-associative factors with a fixed bracketing."""

    term: Term

    @classmethod
    def nested(cls, factors: Sequence[Generator | Term], nesting: str = "left") -> "CompositeOp":
        leaves = [f if isinstance(f, Term) else Leaf(f) for f in factors]
        if not leaves:
            raise ValueError("a composite needs at least one factor")
        if nesting == "left":
            return cls(left_comb(leaves))
        if nesting == "right":
            return cls(right_comb(leaves))
        raise ValueError("nesting must be 'left' or 'right'")

    @property
    def factors(self) -> list[Generator]:
        return self.term.leaves()

    @property
    def degree(self) -> int:
        return self.term.degree

    def rebracket(self, nesting: str) -> "CompositeOp":
        return CompositeOp.nested(self.factors, nesting)

    def expr(self) -> Expr:
        return Expr.of(self.term)


def _collect_assoc(t: Term, out: dict) -> None:
    if isinstance(t, Assoc):
        out.setdefault(t.key, t)
        for s in t.slots:
            _collect_assoc(s, out)
    elif isinstance(t, Product):
        _collect_assoc(t.left, out)
        _collect_assoc(t.right, out)


@dataclass
class CommutatorResult:
    raw: Expr
    normal: Expr
    associators: list

    def check(self) -> bool:
        """Expanding every associator symbol in ``normal`` gives ``raw``."""
        return expand_associators(self.normal) == self.raw

    def to_json(self) -> dict:
        return {
            "raw": self.raw.to_json(),
            "normal": self.normal.to_json(),
            "associators": [a.to_json() for a in self.associators],
        }


def composite_commutator(sign, A, B, target: str = "left") -> CommutatorResult:
    """``A B -/+ B A`` plus its rewrite over combs and formal associators.

    ``sign='-'`` is the commutator, ``'+'`` the anticommutator.
    """
    sign = _check_sign(sign)
    a = A.expr() if isinstance(A, CompositeOp) else as_expr(A)
    b = B.expr() if isinstance(B, CompositeOp) else as_expr(B)
    ab, ba = product(a, b), product(b, a)
    raw = ab - ba if sign == MINUS else ab + ba
    normal = normal_form_expr(raw, target)
    found: dict = {}
    for t, _ in normal.items():
        _collect_assoc(t, found)
    symbols = [AssocSymbol.from_node(found[k]) for k in sorted(found)]
    return CommutatorResult(raw, normal, symbols)


Assignment = Mapping[Generator, Element] | Callable[[Generator], Element]


def _lookup(assignment, g: Generator) -> Element:
    if callable(assignment) and not isinstance(assignment, Mapping):
        v = assignment(g)
        if v is None:
            raise KeyError(f"unassigned generator {g}")
        return v
    if g in assignment:
        return assignment[g]
    if g.conjugated:
        base = g.starred()
        if base in assignment:
            return conj(assignment[base])
    raise KeyError(f"unassigned generator {g}")


def evaluate(e, assignment: Assignment, symbols: Mapping[str, object] | None = None) -> Element:
    """Homomorphic image of ``e`` under a generator-to-element assignment.

    Conjugated generators fall back to the algebra involution of the
    unstarred assignment.  Scalar symbols need values in ``symbols``.
    """
    e = as_expr(e)
    cache: dict[Term, Element] = {}

    def go(t: Term) -> Element:
        if t in cache:
            return cache[t]
        if isinstance(t, Leaf):
            v = _lookup(assignment, t.gen)
        elif isinstance(t, Product):
            v = mul(go(t.left), go(t.right))
        else:
            v = associator(t.sign, *(go(s) for s in t.slots))
        cache[t] = v
        return v

    acc = None
    for t, s in e.items():
        v = go(t)
        acc = v.algebra.zero() if acc is None else acc
        acc = acc + _scalar_value(s, symbols) * v
    if acc is None:
        raise AlgebraError("cannot evaluate the zero expression without an algebra; use evaluate_in")
    return acc


def evaluate_in(alg, e, assignment: Assignment, symbols=None) -> Element:
    e = as_expr(e)
    if e.is_zero():
        return alg.zero()
    return evaluate(e, assignment, symbols)


def _scalar_value(s: Scalar, symbols):
    if s.im:
        raise AlgebraError("imaginary coefficients have no value in a real algebra")
    value = s.re
    for name, p in s.mono:
        if symbols is None or name not in symbols:
            raise AlgebraError(f"no value for scalar symbol {name!r}")
        value = value * Scalar.coerce(symbols[name]).re ** p
    return value


__all__ = [
    "MINUS", "PLUS", "AssocSymbol", "CommutatorResult", "CompositeOp", "assoc_label",
    "associator", "composite_commutator", "evaluate", "evaluate_in",
]
