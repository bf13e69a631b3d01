"""Scalars and sparse polynomials in k[x, y, z, w].

Monomials are plain 4-tuples of exponents ``(u1, u2, u3, u4)`` for
``x, y, z, w``.  Polynomials are immutable maps from monomials to nonzero
field elements.  Two coefficient fields are supported: a prime field with a
large modulus (the default, fast) and the rationals (exact audits).
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Dict, Iterable, Iterator, Tuple

import numpy as np

Monomial = Tuple[int, int, int, int]

VARIABLES = ("x", "y", "z", "w")
ONE: Monomial = (0, 0, 0, 0)
VAR_MONOMIALS: Tuple[Monomial, ...] = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))

DEFAULT_PRIME = 2**31 - 1


# --------------------------------------------------------------------------
# fields


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for all n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for p in small:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class FieldSpec:
    """Coefficient field: ``FieldSpec.prime(p)`` or ``FieldSpec.rationals()``.

    Elements are Python ints in ``[0, p)`` for a prime field and
    ``Fraction`` instances for the rationals.
    """

    __slots__ = ("p",)

    def __init__(self, p: int | None = None):
        if p is not None:
            if p <= 2**20 or not is_prime(p):
                raise ValueError(f"prime field modulus must be a prime > 2^20, got {p}")
        self.p = p

    @classmethod
    def prime(cls, p: int = DEFAULT_PRIME) -> "FieldSpec":
        return cls(p)

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(None)

    @property
    def is_exact_rationals(self) -> bool:
        return self.p is None

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and self.p == other.p

    def __hash__(self):
        return hash(("FieldSpec", self.p))

    def __repr__(self):
        return "FieldSpec.rationals()" if self.p is None else f"FieldSpec.prime({self.p})"

    def to_json(self):
        return "Q" if self.p is None else {"p": self.p}

    @classmethod
    def from_json(cls, obj) -> "FieldSpec":
        if obj in ("Q", "q"):
            return cls.rationals()
        if isinstance(obj, dict) and "p" in obj:
            return cls.prime(int(obj["p"]))
        raise ValueError(f"unrecognised field description: {obj!r}")

    # scalar arithmetic
    def __call__(self, value) -> int | Fraction:
        """Coerce an int or Fraction into the field."""
        if self.p is None:
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise ZeroDivisionError("denominator vanishes in the prime field")
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        return int(value) % self.p

    @property
    def zero(self):
        return Fraction(0) if self.p is None else 0

    @property
    def one(self):
        return Fraction(1) if self.p is None else 1

    def add(self, a, b):
        return a + b if self.p is None else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.p is None else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.p is None else a * b % self.p

    def neg(self, a):
        return -a if self.p is None else (-a) % self.p

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a if self.p is None else pow(int(a), -1, self.p)

    def to_signed(self, a) -> int | Fraction:
        """Symmetric representative, for printing."""
        if self.p is None:
            return a
        return a - self.p if a > self.p // 2 else a

    # numpy support
    @property
    def dtype(self):
        if self.p is not None and self.p < 2**31:
            return np.int64
        return object

    def zeros(self, shape) -> np.ndarray:
        if self.dtype is object:
            out = np.empty(shape, dtype=object)
            out.fill(self.zero)
            return out
        return np.zeros(shape, dtype=np.int64)

    def reduce(self, arr: np.ndarray) -> np.ndarray:
        return arr if self.p is None else arr % self.p

    def array(self, rows) -> np.ndarray:
        """Build a field matrix from nested sequences of ints/Fractions."""
        if self.p is None:
            return np.array([[Fraction(v) for v in row] for row in rows], dtype=object).reshape(
                len(rows), -1 if rows else 0
            )
        out = np.array([[self(v) for v in row] for row in rows], dtype=self.dtype)
        return out.reshape(len(rows), -1 if rows else 0)


# --------------------------------------------------------------------------
# monomials


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3])


def mono_degree(m: Monomial) -> int:
    return m[0] + m[1] + m[2] + m[3]


def mono_bidegree(m: Monomial) -> Tuple[int, int]:
    return (m[0] + m[1], m[2] + m[3])


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return a[0] <= b[0] and a[1] <= b[1] and a[2] <= b[2] and a[3] <= b[3]


def mono_div(b: Monomial, a: Monomial) -> Monomial:
    return (b[0] - a[0], b[1] - a[1], b[2] - a[2], b[3] - a[3])


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(i, j) for i, j in zip(a, b))  # type: ignore[return-value]


def grevlex_key(m: Monomial):
    """Sort key: larger key means larger in grevlex with x > y > z > w."""
    return (m[0] + m[1] + m[2] + m[3], -m[3], -m[2], -m[1])


def monomials_of_degree(d: int) -> list[Monomial]:
    """All monomials of total degree d, grevlex-descending."""
    if d < 0:
        return []
    out = []
    for combo in combinations_with_replacement(range(4), d):
        u = [0, 0, 0, 0]
        for v in combo:
            u[v] += 1
        out.append(tuple(u))
    out.sort(key=grevlex_key, reverse=True)
    return out


def mono_str(m: Monomial) -> str:
    parts = []
    for name, e in zip(VARIABLES, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


# --------------------------------------------------------------------------
# polynomials


class Polynomial:
    """Immutable sparse polynomial over a :class:`FieldSpec`."""

    __slots__ = ("field", "terms", "_hash")

    def __init__(self, terms: Dict[Monomial, object] | Iterable[Tuple[Monomial, object]], field: FieldSpec):
        items = terms.items() if isinstance(terms, dict) else terms
        clean: Dict[Monomial, object] = {}
        for m, c in items:
            c = field(c)
            if c:
                clean[tuple(m)] = c  # type: ignore[index]
        self.field = field
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Monomial, object], field: FieldSpec) -> "Polynomial":
        # terms already reduced and nonzero
        p = cls.__new__(cls)
        p.field = field
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, field: FieldSpec) -> "Polynomial":
        return cls._raw({}, field)

    @classmethod
    def monomial(cls, m: Monomial, field: FieldSpec, coeff=1) -> "Polynomial":
        return cls({tuple(m): coeff}, field)

    @classmethod
    def variable(cls, name: str, field: FieldSpec) -> "Polynomial":
        return cls.monomial(VAR_MONOMIALS[VARIABLES.index(name)], field)

    # inspection
    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self) -> Iterator[Tuple[Monomial, object]]:
        """Terms in grevlex-descending order."""
        for m in sorted(self.terms, key=grevlex_key, reverse=True):
            yield m, self.terms[m]

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.field == other.field and self.terms == other.terms
        if isinstance(other, int) and other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, frozenset(self.terms.items())))
        return self._hash

    def coeff(self, m: Monomial):
        return self.terms.get(tuple(m), self.field.zero)

    def leading_monomial(self) -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=grevlex_key)

    def leading_coeff(self):
        return self.terms[self.leading_monomial()]

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(mono_degree(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        return len({mono_degree(m) for m in self.terms}) <= 1

    def is_bihomogeneous(self) -> bool:
        return len({mono_bidegree(m) for m in self.terms}) <= 1

    def bidegree(self) -> Tuple[int, int]:
        degs = {mono_bidegree(m) for m in self.terms}
        if len(degs) != 1:
            raise ValueError("polynomial is not bihomogeneous (or is zero)")
        return degs.pop()

    # arithmetic
    def _check(self, other: "Polynomial"):
        if self.field != other.field:
            raise ValueError(f"mixed fields: {self.field!r} vs {other.field!r}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial({ONE: other}, self.field)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        f = self.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = f.add(out.get(m, f.zero), c)
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial._raw(out, f)

    __radd__ = __add__

    def __neg__(self):
        f = self.field
        return Polynomial._raw({m: f.neg(c) for m, c in self.terms.items()}, f)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Polynomial":
        f = self.field
        c = f(c)
        if not c:
            return Polynomial.zero(f)
        return Polynomial._raw({m: f.mul(a, c) for m, a in self.terms.items()}, f)

    def mul_monomial(self, m: Monomial, c=None) -> "Polynomial":
        f = self.field
        if c is None:
            return Polynomial._raw({mono_mul(t, m): a for t, a in self.terms.items()}, f)
        c = f(c)
        if not c:
            return Polynomial.zero(f)
        return Polynomial._raw({mono_mul(t, m): f.mul(a, c) for t, a in self.terms.items()}, f)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        f = self.field
        out: Dict[Monomial, object] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                out[m] = f.add(out.get(m, f.zero), f.mul(c1, c2))
        return Polynomial._raw({m: c for m, c in out.items() if c}, f)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = Polynomial.monomial(ONE, self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def derivative(self, var: int | str) -> "Polynomial":
        """Formal partial derivative in x, y, z or w (name or index 0..3)."""
        v = VARIABLES.index(var) if isinstance(var, str) else var
        f = self.field
        out = {}
        for m, c in self.terms.items():
            e = m[v]
            if e:
                dm = list(m)
                dm[v] -= 1
                val = f.mul(c, f(e))
                if val:
                    out[tuple(dm)] = val
        return Polynomial._raw(out, f)

    def homogeneous_parts(self) -> Dict[int, "Polynomial"]:
        parts: Dict[int, Dict[Monomial, object]] = {}
        for m, c in self.terms.items():
            parts.setdefault(mono_degree(m), {})[m] = c
        return {d: Polynomial._raw(t, self.field) for d, t in parts.items()}

    def to_field(self, field: FieldSpec) -> "Polynomial":
        """Map a rational polynomial into another field (e.g. reduce mod p)."""
        if not self.field.is_exact_rationals and field != self.field:
            raise ValueError("only rational polynomials can be mapped to another field")
        return Polynomial({m: field(c) for m, c in self.terms.items()}, field)

    # printing
    def __str__(self):
        if not self.terms:
            return "0"
        f = self.field
        pieces = []
        for m, c in self:
            c = f.to_signed(c)
            sign = "-" if c < 0 else "+"
            a = -c if c < 0 else c
            body = mono_str(m)
            if m == ONE:
                text = str(a)
            elif a == 1:
                text = body
            else:
                text = f"{a}*{body}"
            pieces.append((sign, text))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, text in pieces[1:]:
            out += f" {sign} {text}"
        return out

    def __repr__(self):
        return f"Polynomial({str(self)!r})"


# --------------------------------------------------------------------------
# parsing


class PolySyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\^)|(\*)|(/)|([+-]))")


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise PolySyntaxError(f"unexpected character {text[pos:].lstrip()[:1]!r}", pos)
        start = m.start(m.lastindex)
        kind = ("int", "name", "^", "*", "/", "sign")[m.lastindex - 1]
        out.append((kind, m.group(m.lastindex), start))
        pos = m.end()
    return out


def parse_poly(text: str, field: FieldSpec) -> Polynomial:
    """Parse e.g. ``"3*x^2*w - 1/2*y*z"`` into a :class:`Polynomial`."""
    tokens = _tokenize(text)
    if not tokens:
        raise PolySyntaxError("empty polynomial", 0)
    i = 0
    result: Dict[Monomial, object] = {}

    def peek(k=0):
        return tokens[i + k] if i + k < len(tokens) else None

    while i < len(tokens):
        sign = 1
        tok = peek()
        if tok[0] == "sign":
            sign = -1 if tok[1] == "-" else 1
            i += 1
        elif result or i > 0:
            raise PolySyntaxError("expected '+' or '-'", tok[2])
        tok = peek()
        if tok is None:
            raise PolySyntaxError("dangling sign", len(text))
        coeff = Fraction(1)
        have_factor = False
        if tok[0] == "int":
            coeff = Fraction(int(tok[1]))
            i += 1
            have_factor = True
            if peek() and peek()[0] == "/":
                i += 1
                den = peek()
                if den is None or den[0] != "int":
                    raise PolySyntaxError("expected integer denominator", den[2] if den else len(text))
                if int(den[1]) == 0:
                    raise PolySyntaxError("zero denominator", den[2])
                coeff /= int(den[1])
                i += 1
            if peek() and peek()[0] == "*":
                i += 1
                if peek() is None or peek()[0] != "name":
                    raise PolySyntaxError("expected variable after '*'", peek()[2] if peek() else len(text))
        exps = [0, 0, 0, 0]
        while peek() and peek()[0] == "name":
            name, pos = peek()[1], peek()[2]
            if name not in VARIABLES:
                raise PolySyntaxError(f"unknown variable {name!r}", pos)
            i += 1
            e = 1
            if peek() and peek()[0] == "^":
                i += 1
                t = peek()
                if t is None or t[0] != "int":
                    raise PolySyntaxError("exponent must be a nonnegative integer", t[2] if t else len(text))
                e = int(t[1])
                i += 1
                if peek() and peek()[0] == "/":
                    raise PolySyntaxError("exponent must be an integer", peek()[2])
            exps[VARIABLES.index(name)] += e
            have_factor = True
            if peek() and peek()[0] == "*":
                i += 1
                if peek() is None or peek()[0] != "name":
                    raise PolySyntaxError("expected variable after '*'", peek()[2] if peek() else len(text))
        if not have_factor:
            t = peek()
            raise PolySyntaxError("expected a term", t[2] if t else len(text))
        m = tuple(exps)
        c = field(sign * coeff)
        result[m] = field.add(result.get(m, field.zero), c)
    return Polynomial(result, field)
