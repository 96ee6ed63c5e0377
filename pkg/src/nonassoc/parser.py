"""Text form of expressions: recursive-descent parser and printer.

Grammar (every product explicitly bracketed)::

    expr      := "0" | ["+"|"-"] prodterm (("+"|"-") prodterm)*
    prodterm  := [scalar "*"] factor
    factor    := generator
               | "[" factor factor "]"
               | "{" factor "," factor "," factor "}" ("-"|"+")
    generator := ["d_{" idx ("," idx)* "}"] name
                 ["^{" idx ("," idx)* "}"] ["_{" idx ("," idx)* "}"]
                 ["(" point ")"] ["*"]
    scalar    := [rational] ["i"] (symbol ["^" int])*
    rational  := int ["/" int]

A trailing ``*`` on a generator is the star (conjugation).  At the start of
a top-level term, ``name*`` followed by a factor is read as a scalar symbol
times that factor, since a conjugated generator cannot be juxtaposed there.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .scalar import Scalar, make_monomial, mono_str
from .term import Assoc, Expr, Generator, Leaf, Product, Term

KINDS = ("UnexpectedToken", "UnbalancedBracket", "EmptyProduct", "BadIndex", "BadScalar")

_TEMPLATES = {
    "UnexpectedToken": "unexpected {what} at byte {start}",
    "UnbalancedBracket": "unbalanced bracket: {what} at byte {start}",
    "EmptyProduct": "product needs exactly two factors at byte {start}",
    "BadIndex": "bad index label {what} at byte {start}",
    "BadScalar": "bad scalar {what} at byte {start}",
}


@dataclass(frozen=True)
class SourceSpan:
    start: int
    end: int


class ParseError(ValueError):
    def __init__(self, kind: str, start: int, end: int, what: str = ""):
        assert kind in KINDS
        self.kind = kind
        self.span = SourceSpan(start, end)
        self.message = _TEMPLATES[kind].format(what=what, start=start)
        super().__init__(self.message)


def _is_name_start(c: str) -> bool:
    return c.isascii() and c.isalpha()


def _is_name_char(c: str) -> bool:
    return c.isascii() and c.isalnum()


class _Parser:
    def __init__(self, text: str):
        self.s = text
        self.n = len(text)
        self.pos = 0

    # -- helpers
    def peek(self, k: int = 0) -> str:
        i = self.pos + k
        return self.s[i] if i < self.n else ""

    def ws(self) -> None:
        while self.pos < self.n and self.s[self.pos] in " \t\r\n":
            self.pos += 1

    def err(self, kind: str, start: int | None = None, end: int | None = None, what: str = ""):
        start = self.pos if start is None else start
        start = min(start, self.n)
        if end is None:
            end = min(start + 1, self.n)
        if not what:
            what = repr(self.s[start:end]) if start < self.n else "end of input"
        raise ParseError(kind, start, max(start, min(end, self.n)), what)

    def name(self) -> str:
        start = self.pos
        if not _is_name_start(self.peek()):
            self.err("UnexpectedToken")
        while self.pos < self.n and _is_name_char(self.s[self.pos]):
            self.pos += 1
        return self.s[start:self.pos]

    def digits(self) -> str:
        start = self.pos
        while self.pos < self.n and self.s[self.pos].isdigit() and self.s[self.pos].isascii():
            self.pos += 1
        return self.s[start:self.pos]

    def index_list(self) -> tuple[str, ...]:
        # positioned just after "{"
        labels = []
        while True:
            start = self.pos
            while self.pos < self.n and _is_name_char(self.s[self.pos]):
                self.pos += 1
            lab = self.s[start:self.pos]
            if not lab:
                self.err("BadIndex", start)
            labels.append(lab)
            c = self.peek()
            if c == ",":
                self.pos += 1
                continue
            if c == "}":
                self.pos += 1
                return tuple(labels)
            if c == "":
                self.err("UnbalancedBracket", what="missing '}'")
            self.err("BadIndex")

    # -- grammar
    def parse(self) -> Expr:
        self.ws()
        if self.pos == self.n:
            self.err("UnexpectedToken", what="empty input")
        pairs: list[tuple[Scalar, Term]] = []
        sign = 1
        if self.peek() in "+-":
            sign = -1 if self.peek() == "-" else 1
            self.pos += 1
            self.ws()
        while True:
            coeff, term = self.prodterm()
            if term is not None:
                pairs.append((coeff * sign, term))
            self.ws()
            c = self.peek()
            if c == "":
                break
            if c in "+-":
                sign = -1 if c == "-" else 1
                self.pos += 1
                self.ws()
                continue
            if c in "])}":
                self.err("UnbalancedBracket", what=repr(c))
            self.err("UnexpectedToken")
        return Expr.from_pairs(pairs)

    def prodterm(self) -> tuple[Scalar, Term | None]:
        save = self.pos
        scalar = self.try_scalar()
        if scalar is not None:
            coeff, has_factor = scalar
            if not has_factor:
                return coeff, None
            self.ws()
            return coeff, self.factor()
        self.pos = save
        return Scalar(1), self.factor()

    def try_scalar(self):
        """Return (Scalar, followed_by_factor) or None to re-read as a factor."""
        start = self.pos
        q = None
        if self.peek().isdigit():
            num = self.digits()
            den = "1"
            if self.peek() == "/":
                self.pos += 1
                den = self.digits()
                if not den or int(den) == 0:
                    self.err("BadScalar", start, self.pos + 1)
            q = Fraction(int(num), int(den))
        imag = False
        if self.peek() == "i" and not _is_name_char(self.peek(1)):
            imag = True
            self.pos += 1
        numeric = q is not None or imag
        powers: list[tuple[str, int]] = []
        while True:
            mark = self.pos
            self.ws()
            if not _is_name_start(self.peek()):
                self.pos = mark
                break
            nstart = self.pos
            nm = self.name()
            if self.peek() and self.peek() in "(^_" and not (self.peek() == "^" and self.peek(1).isdigit()):
                # generator syntax: not a scalar prefix
                if numeric:
                    self.err("BadScalar", start, nstart, what="missing '*' after scalar")
                return None
            p = 1
            if self.peek() == "^":
                self.pos += 1
                p = int(self.digits())
            powers.append((nm, p))
        if not numeric and not powers:
            return None
        end = self.pos
        self.ws()
        if self.peek() == "*":
            self.pos += 1
            self.ws()
            c = self.peek()
            if (c and c in "[{") or _is_name_start(c):
                for nm, _ in powers:
                    if nm == "i":
                        self.err("BadScalar", start, end, what="'i' used as a scalar symbol")
                coeff = Scalar(1 if q is None else q, 0, make_monomial(powers))
                if imag:
                    coeff = Scalar(0, coeff.re, coeff.mono)
                return coeff, True
        if q is None:
            return None
        if q == 0 and not imag and not powers and self.peek() in ("", "+", "-"):
            self.pos = end
            return Scalar(0), False
        self.err("BadScalar", start, max(end, start + 1), what="scalar must be followed by '*' and a factor")

    def factor(self) -> Term:
        c = self.peek()
        if c == "[":
            open_at = self.pos
            self.pos += 1
            self.ws()
            if self.peek() == "]":
                self.err("EmptyProduct", open_at, self.pos + 1)
            if self.peek() == "":
                self.err("UnbalancedBracket", open_at, what="'[' never closed")
            left = self.factor()
            self.ws()
            if self.peek() == "]":
                self.err("EmptyProduct", open_at, self.pos + 1)
            if self.peek() == "":
                self.err("UnbalancedBracket", open_at, what="'[' never closed")
            right = self.factor()
            self.ws()
            c = self.peek()
            if c == "]":
                self.pos += 1
                return Product(left, right)
            if c == "":
                self.err("UnbalancedBracket", open_at, what="'[' never closed")
            self.err("UnexpectedToken", what=f"{c!r} (products take exactly two bracketed factors)")
        if c == "{":
            open_at = self.pos
            self.pos += 1
            slots = []
            for k in range(3):
                self.ws()
                if self.peek() == "":
                    self.err("UnbalancedBracket", open_at, what="'{' never closed")
                slots.append(self.factor())
                self.ws()
                want = "," if k < 2 else "}"
                if self.peek() == "":
                    self.err("UnbalancedBracket", open_at, what="'{' never closed")
                if self.peek() != want:
                    self.err("UnexpectedToken")
                self.pos += 1
            sign = self.peek()
            if sign not in "+-" or sign == "":
                self.err("UnexpectedToken", what="associator needs '+' or '-' right after '}'")
            self.pos += 1
            return Assoc(sign, *slots)
        if c == "":
            self.err("UnexpectedToken", what="end of input")
        if c in "])}":
            self.err("UnbalancedBracket", what=repr(c))
        if _is_name_start(c):
            return Leaf(self.generator())
        self.err("UnexpectedToken")

    def generator(self) -> Generator:
        derivs: tuple[str, ...] = ()
        if self.s.startswith("d_{", self.pos):
            save = self.pos
            self.pos += 3
            labels = self.index_list()
            if _is_name_start(self.peek()):
                derivs = labels
            else:
                self.pos = save
        nm = self.name()
        upper = lower = ()
        point = None
        if self.s.startswith("^{", self.pos):
            self.pos += 2
            upper = self.index_list()
        elif self.peek() == "^":
            self.err("BadIndex", what="'^' must be followed by '{'")
        if self.s.startswith("_{", self.pos):
            self.pos += 2
            lower = self.index_list()
        elif self.peek() == "_":
            self.err("BadIndex", what="'_' must be followed by '{'")
        if self.peek() == "(":
            open_at = self.pos
            self.pos += 1
            start = self.pos
            while self.pos < self.n and _is_name_char(self.s[self.pos]):
                self.pos += 1
            point = self.s[start:self.pos]
            if not point:
                self.err("BadIndex", start)
            if self.peek() != ")":
                if self.peek() == "":
                    self.err("UnbalancedBracket", open_at, what="'(' never closed")
                self.err("BadIndex")
            self.pos += 1
        conj = False
        if self.peek() == "*":
            conj = True
            self.pos += 1
        return Generator(nm, upper, lower, point, conj, derivs)


def parse(text: str) -> Expr:
    """Parse text into a canonical :class:`Expr`; raises :class:`ParseError`."""
    raw = text.encode("utf-8")
    for i, b in enumerate(raw):
        if b >= 0x80:
            j = i + 1
            while j < len(raw) and 0x80 <= raw[j] < 0xC0:
                j += 1
            raise ParseError("UnexpectedToken", i, j, "non-ASCII byte")
    return _Parser(text).parse()


def parse_term(text: str) -> Term:
    e = parse(text)
    items = e.items()
    if len(items) != 1 or items[0][1] != Scalar(1):
        raise ValueError(f"expected a single term, got {text!r}")
    return items[0][0]


def _frac(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _parts(s: Scalar):
    """Split a Gaussian scalar into printable (sign, magnitude-text) pieces."""
    out = []
    for q, imag in ((s.re, False), (s.im, True)):
        if not q:
            continue
        mag = abs(q)
        txt = "" if mag == 1 and (imag or s.mono) else _frac(mag)
        if mag == 1 and not imag and not s.mono:
            txt = ""
        if imag:
            txt += "i"
        if s.mono:
            txt = (txt + " " if txt else "") + mono_str(s.mono)
        out.append((q < 0, txt))
    return out


def print_expr(e: Expr) -> str:
    """Deterministic text for a canonical expression; ``parse`` inverts it."""
    chunks: list[str] = []
    for term, s in e.items():
        for neg, txt in _parts(s):
            body = f"{txt}*{term.key}" if txt else term.key
            if not chunks:
                chunks.append(f"-{body}" if neg else body)
            else:
                chunks.append(f" - {body}" if neg else f" + {body}")
    return "".join(chunks) if chunks else "0"


def format_scalar(s: Scalar) -> str:
    if s.re and s.im:
        sign = "-" if s.im < 0 else "+"
        body = f"({_frac(s.re)}{sign}{_frac(abs(s.im))}i)"
    elif s.im:
        body = f"{_frac(s.im)}i"
    else:
        body = _frac(s.re)
    return f"{body} {mono_str(s.mono)}" if s.mono else body
