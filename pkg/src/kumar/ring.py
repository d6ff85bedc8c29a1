"""Polynomial rings over prime fields with packed-integer monomials.

A monomial is stored as a single non-negative int (its *code*).  The
encoding is chosen per monomial order so that comparing codes as ints
compares monomials in that order, and multiplying monomials is
``a + b - ring.one``.  Exponents live in fixed-width fields with a guard
bit, which makes divisibility a couple of integer operations.
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Sequence

from .field import GF, PrimeField

ORDERS = ("grevlex", "grlex", "lex")

_FIELD_BITS = 12  # 11 exponent bits + 1 guard bit
_MAX_EXP = (1 << (_FIELD_BITS - 1)) - 1
_LEX_DEG_BITS = 16
_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class RingMismatch(ValueError):
    pass


class PolyRing:
    """``K[x_0, ..., x_n]`` with a fixed monomial order.

    >>> R = PolyRing(["x", "y"], GF(7))
    >>> x, y = R.gens
    >>> str((x + y) ** 2)
    'x^2+2*x*y+y^2'
    """

    def __init__(self, names: Sequence[str], field: PrimeField | int = 32003, order: str = "grevlex"):
        names = tuple(names)
        if not names:
            raise ValueError("a polynomial ring needs at least one variable")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for name in names:
            if not _NAME_RE.match(name):
                raise ValueError(f"bad variable name {name!r}")
        if order not in ORDERS:
            raise ValueError(f"unknown monomial order {order!r}")
        self.names = names
        self.nvars = n = len(names)
        self.field = field if isinstance(field, PrimeField) else GF(field)
        self.order = order
        self.index = {name: i for i, name in enumerate(names)}

        w = _FIELD_BITS
        self._bits = w * n
        self._full = (1 << self._bits) - 1
        self._guard = sum(1 << (w * i + w - 1) for i in range(n))
        if order == "grevlex":
            # last variable in the most significant field, then complemented
            self._shift = [w * i for i in range(n)]
        else:
            self._shift = [w * (n - 1 - i) for i in range(n)]
        if order == "grevlex":
            self.one = self._full
        else:
            self.one = 0
        self._var_codes = tuple(self.code(tuple(int(i == j) for j in range(n))) for i in range(n))

    # -- identity -------------------------------------------------------
    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PolyRing)
            and other.names == self.names
            and other.field == self.field
            and other.order == self.order
        )

    def __hash__(self) -> int:
        return hash((self.names, self.field, self.order))

    def __repr__(self) -> str:
        return f"{self.field!r}[{','.join(self.names)}] order {self.order}"

    # -- monomial codes ------------------------------------------------
    def code(self, exps: Sequence[int]) -> int:
        if len(exps) != self.nvars:
            raise ValueError(f"exponent vector of length {len(exps)} for {self.nvars} variables")
        low = 0
        deg = 0
        for e, s in zip(exps, self._shift):
            if e < 0 or e > _MAX_EXP:
                raise ValueError(f"exponent {e} out of range")
            low |= e << s
            deg += e
        if self.order == "grevlex":
            return (deg << self._bits) | (self._full ^ low)
        if self.order == "grlex":
            return (deg << self._bits) | low
        return (low << _LEX_DEG_BITS) | deg

    def low(self, c: int) -> int:
        """Packed exponent fields of a code, guard bits clear."""
        if self.order == "grevlex":
            return (c & self._full) ^ self._full
        if self.order == "grlex":
            return c & self._full
        return c >> _LEX_DEG_BITS

    def deg(self, c: int) -> int:
        if self.order == "lex":
            return c & ((1 << _LEX_DEG_BITS) - 1)
        return c >> self._bits

    def exponents(self, c: int) -> tuple[int, ...]:
        low = self.low(c)
        mask = (1 << _FIELD_BITS) - 1
        return tuple((low >> s) & mask for s in self._shift)

    def from_low(self, low: int) -> int:
        mask = (1 << _FIELD_BITS) - 1
        deg = sum((low >> s) & mask for s in self._shift)
        if self.order == "grevlex":
            return (deg << self._bits) | (self._full ^ low)
        if self.order == "grlex":
            return (deg << self._bits) | low
        return (low << _LEX_DEG_BITS) | deg

    def divides(self, b: int, a: int) -> bool:
        """True iff monomial ``b`` divides monomial ``a``."""
        g = self._guard
        return ((self.low(a) | g) - self.low(b)) & g == g

    def lcm(self, a: int, b: int) -> int:
        la, lb = self.low(a), self.low(b)
        mask = (1 << _FIELD_BITS) - 1
        out = 0
        for s in self._shift:
            out |= max((la >> s) & mask, (lb >> s) & mask) << s
        return self.from_low(out)

    def gcd(self, a: int, b: int) -> int:
        la, lb = self.low(a), self.low(b)
        mask = (1 << _FIELD_BITS) - 1
        out = 0
        for s in self._shift:
            out |= min((la >> s) & mask, (lb >> s) & mask) << s
        return self.from_low(out)

    def var_exponent(self, c: int, i: int) -> int:
        return (self.low(c) >> self._shift[i]) & ((1 << _FIELD_BITS) - 1)

    def var_code(self, i: int) -> int:
        return self._var_codes[i]

    def pure_power_var(self, c: int) -> int | None:
        """Index of the variable if ``c`` is a pure power ``x_i^k`` (k >= 1)."""
        exps = self.exponents(c)
        nz = [i for i, e in enumerate(exps) if e]
        return nz[0] if len(nz) == 1 else None

    def compare(self, a: Sequence[int], b: Sequence[int]) -> int:
        """-1, 0 or 1 as exponent vector ``a`` is smaller, equal or larger."""
        if len(a) != len(b) or len(a) != self.nvars:
            raise ValueError("exponent vectors of different lengths")
        ca, cb = self.code(a), self.code(b)
        return (ca > cb) - (ca < cb)

    def monomials_of_degree(self, d: int) -> list[int]:
        """All monomial codes of total degree ``d``, descending."""
        if d < 0:
            return []
        out = []
        for combo in combinations_with_replacement(range(self.nvars), d):
            exps = [0] * self.nvars
            for i in combo:
                exps[i] += 1
            out.append(self.code(exps))
        out.sort(reverse=True)
        return out

    # -- element construction -------------------------------------------
    @property
    def gens(self) -> tuple["Polynomial", ...]:
        return tuple(Polynomial(self, {c: self.field.one}) for c in self._var_codes)

    def var(self, name: str) -> "Polynomial":
        return self.gens[self.index[name]]

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one_poly(self) -> "Polynomial":
        return Polynomial(self, {self.one: self.field.one})

    def constant(self, value) -> "Polynomial":
        v = self.field(value)
        return Polynomial(self, {self.one: v} if v else {})

    def monomial(self, exps: Sequence[int], coeff=1) -> "Polynomial":
        v = self.field(coeff)
        return Polynomial(self, {self.code(exps): v} if v else {})

    def __call__(self, value) -> "Polynomial":
        if isinstance(value, Polynomial):
            if value.ring != self:
                return self.convert(value)
            return value
        if isinstance(value, str):
            return self.parse(value)
        return self.constant(value)

    def parse(self, text: str) -> "Polynomial":
        return Polynomial(self, _Parser(self, text).parse())

    def convert(self, f: "Polynomial") -> "Polynomial":
        """Map ``f`` into this ring by variable name (missing names must not occur)."""
        src = f.ring
        terms = {}
        for c, v in f.terms.items():
            exps = [0] * self.nvars
            for i, e in enumerate(src.exponents(c)):
                if e:
                    name = src.names[i]
                    if name not in self.index:
                        raise RingMismatch(f"variable {name} not in {self!r}")
                    exps[self.index[name]] = e
            val = self.field(src.field.to_int(v) if src.field.p else v)
            if val:
                terms[self.code(exps)] = val
        return Polynomial(self, terms)

    def drop_variable(self, i: int) -> "PolyRing":
        names = self.names[:i] + self.names[i + 1 :]
        return PolyRing(names, self.field, self.order)

    def with_field(self, field: PrimeField | int) -> "PolyRing":
        return PolyRing(self.names, field, self.order)

    def format_monomial(self, c: int) -> str:
        parts = []
        for name, e in zip(self.names, self.exponents(c)):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"


# -- raw dict arithmetic (code -> coeff), used by the engine ----------------


def raw_add(f: dict, g: dict, p: int, scale=1) -> dict:
    """``f + scale * g`` as a new dict."""
    out = dict(f)
    if p:
        for k, v in g.items():
            nv = (out.get(k, 0) + scale * v) % p
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)
    else:
        for k, v in g.items():
            nv = out.get(k, 0) + scale * v
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)
    return out


def raw_mul(f: dict, g: dict, one: int, p: int) -> dict:
    out: dict = {}
    if len(f) > len(g):
        f, g = g, f
    for a, u in f.items():
        shift = a - one
        for b, v in g.items():
            k = b + shift
            nv = out.get(k, 0) + u * v
            if p:
                nv %= p
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)
    return out


def raw_scale(f: dict, c, p: int) -> dict:
    if p:
        c %= p
        if not c:
            return {}
        return {k: (v * c) % p for k, v in f.items()}
    if not c:
        return {}
    return {k: v * c for k, v in f.items()}


class Polynomial:
    """Immutable polynomial: a ring plus a dict from monomial code to coefficient."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- queries ------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.ring.one in self.terms)

    def constant_value(self):
        return self.terms.get(self.ring.one, self.ring.field.zero)

    def degree(self) -> int:
        """Degree of the leading monomial; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return self.ring.deg(max(self.terms))

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(self.ring.deg(c) for c in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {self.ring.deg(c) for c in self.terms}
        return len(degs) <= 1

    def leading_code(self) -> int:
        return max(self.terms)

    def leading_coefficient(self):
        return self.terms[max(self.terms)]

    def leading_exponents(self) -> tuple[int, ...]:
        return self.ring.exponents(max(self.terms))

    def sorted_terms(self) -> list[tuple[tuple[int, ...], object]]:
        R = self.ring
        return [(R.exponents(c), self.terms[c]) for c in sorted(self.terms, reverse=True)]

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        F = self.ring.field
        return self.scale(F.inv(self.leading_coefficient()))

    def variables_used(self) -> set[int]:
        used = set()
        for c in self.terms:
            for i, e in enumerate(self.ring.exponents(c)):
                if e:
                    used.add(i)
        return used

    # -- arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatch(f"{other.ring!r} vs {self.ring!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial(self.ring, raw_add(self.terms, other.terms, self.ring.field.p))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial(self.ring, raw_add(self.terms, other.terms, self.ring.field.p, -1))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return self.scale(-1)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        R = self.ring
        return Polynomial(R, raw_mul(self.terms, other.terms, R.one, R.field.p))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = self.ring.one_poly()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, c) -> "Polynomial":
        F = self.ring.field
        return Polynomial(self.ring, raw_scale(self.terms, F(c) if F.p == 0 else c, F.p))

    def mul_monomial(self, code: int, coeff=1) -> "Polynomial":
        R = self.ring
        shift = code - R.one
        p = R.field.p
        if p:
            coeff %= p
            if not coeff:
                return R.zero()
            return Polynomial(R, {k + shift: (v * coeff) % p for k, v in self.terms.items()})
        return Polynomial(R, {k + shift: v * coeff for k, v in self.terms.items()})

    def div_monomial(self, code: int) -> "Polynomial":
        """Exact quotient by a monomial; ValueError if some term is not divisible."""
        R = self.ring
        if not all(R.divides(code, k) for k in self.terms):
            raise ValueError(f"{self} is not divisible by {R.format_monomial(code)}")
        shift = code - R.one
        return Polynomial(R, {k - shift: v for k, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    # -- structure ------------------------------------------------------------
    def expand_in(self, i: int) -> dict[int, "Polynomial"]:
        """Coefficients of ``self`` as a polynomial in variable ``i``.

        Returns ``{power: coefficient}`` with coefficients in the ring without
        variable ``i``.
        """
        R = self.ring
        sub = R.drop_variable(i)
        out: dict[int, dict] = {}
        for c, v in self.terms.items():
            exps = list(R.exponents(c))
            k = exps.pop(i)
            out.setdefault(k, {})[sub.code(exps)] = v
        return {k: Polynomial(sub, t) for k, t in out.items()}

    def substitute(self, values: dict[int, "Polynomial"]) -> "Polynomial":
        """Replace variables (by index) with polynomials of the same ring."""
        R = self.ring
        out = R.zero()
        for c, v in self.terms.items():
            term = R.constant(1).scale(v)
            rest = [0] * R.nvars
            for i, e in enumerate(R.exponents(c)):
                if not e:
                    continue
                if i in values:
                    term = term * values[i] ** e
                else:
                    rest[i] = e
            out = out + term.mul_monomial(R.code(rest))
        return out

    def evaluate(self, point: Sequence) -> object:
        R = self.ring
        F = R.field
        total = F.zero
        for c, v in self.terms.items():
            t = v
            for x, e in zip(point, R.exponents(c)):
                if e:
                    t = F.mul(t, pow(x, e, F.p) if F.p else x**e)
            total = F.add(total, t)
        return total

    # -- text ---------------------------------------------------------------
    def __str__(self) -> str:
        if not self.terms:
            return "0"
        R = self.ring
        F = R.field
        pieces = []
        for c in sorted(self.terms, reverse=True):
            v = F.to_int(self.terms[c])
            mon = R.format_monomial(c)
            neg = v < 0
            a = -v if neg else v
            if mon == "1":
                body = str(a)
            elif a == 1:
                body = mon
            else:
                body = f"{a}*{mon}"
            if pieces:
                pieces.append(("-" if neg else "+") + body)
            else:
                pieces.append(("-" if neg else "") + body)
        return "".join(pieces)

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r})"


class PolynomialSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at column {pos + 1} in {text!r}")
        self.column = pos + 1


class _Parser:
    """Recursive descent for ``expr := term (('+'|'-') term)*`` and friends."""

    def __init__(self, ring: PolyRing, text: str):
        self.ring = ring
        self.text = text
        self.pos = 0

    def error(self, msg: str):
        raise PolynomialSyntaxError(msg, self.text, self.pos)

    def peek(self) -> str:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self) -> dict:
        if not self.peek():
            self.error("empty polynomial")
        out = self.expr()
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")
        return out

    def expr(self) -> dict:
        R = self.ring
        p = R.field.p
        sign = 1
        if self.peek() and self.peek() in "+-":
            sign = -1 if self.text[self.pos] == "-" else 1
            self.pos += 1
        out = raw_scale(self.product(), sign, p)
        while self.peek() in ("+", "-"):
            sign = -1 if self.text[self.pos] == "-" else 1
            self.pos += 1
            out = raw_add(out, self.product(), p, sign)
        return out

    def product(self) -> dict:
        R = self.ring
        p = R.field.p
        out = self.power()
        while True:
            ch = self.peek()
            if ch == "*" and self.text[self.pos : self.pos + 2] != "**":
                self.pos += 1
                out = raw_mul(out, self.power(), R.one, p)
            elif ch == "/":
                self.pos += 1
                start = self.pos
                den = self.integer()
                if den == 0:
                    self.pos = start
                    self.error("division by zero")
                out = raw_scale(out, R.field.inv(R.field(den)), p)
            else:
                return out

    def power(self) -> dict:
        R = self.ring
        base = self.atom()
        ch = self.peek()
        if ch == "^" or self.text[self.pos : self.pos + 2] == "**":
            self.pos += 1 if ch == "^" else 2
            k = self.integer()
            out = {R.one: R.field.one}
            for _ in range(k):
                out = raw_mul(out, base, R.one, R.field.p)
            return out
        return base

    def integer(self) -> int:
        self.peek()
        m = re.compile(r"\d+").match(self.text, self.pos)
        if not m:
            self.error("expected an integer")
        self.pos = m.end()
        return int(m.group())

    def atom(self) -> dict:
        R = self.ring
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            out = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return out
        if ch.isdigit():
            v = R.field(self.integer())
            return {R.one: v} if v else {}
        m = re.compile(r"[A-Za-z_][A-Za-z0-9_]*").match(self.text, self.pos)
        if not m:
            self.error("expected a variable, number or '('" if ch else "unexpected end of input")
        name = m.group()
        if name not in R.index:
            self.error(f"unknown variable {name!r}")
        self.pos = m.end()
        return {R.var_code(R.index[name]): R.field.one}


def polynomials(ring: PolyRing, texts: Iterable[str]) -> list[Polynomial]:
    return [ring.parse(t) for t in texts]
