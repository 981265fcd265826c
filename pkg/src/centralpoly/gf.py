"""Exact arithmetic in F_p and F_{p^m} = F_p[t]/(modulus).

Elements are stored as an integer *code* ``sum(coords[k] * p**k)`` where
``coords`` are the coordinates in the power basis 1, t, ..., t^(m-1).
A prime-field residue r has code r in every extension of the same
characteristic, so embedding F_p into F_{p^m} is the identity on codes.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property

from .errors import (
    DegreeMismatch,
    DivisionByZero,
    FieldMismatch,
    NonPrimeP,
    ParseError,
    ReducibleModulus,
)

# Monic irreducible moduli, coefficients low -> high degree.
DEFAULT_MODULI = {
    (2, 2): (1, 1, 1),  # t^2+t+1
    (2, 3): (1, 1, 0, 1),  # t^3+t+1
    (2, 4): (1, 1, 0, 0, 1),  # t^4+t+1
    (2, 5): (1, 0, 1, 0, 0, 1),  # t^5+t^2+1
    (2, 6): (1, 1, 0, 1, 1, 0, 1),  # t^6+t^4+t^3+t+1
    (3, 2): (1, 0, 1),  # t^2+1
    (3, 3): (1, 2, 0, 1),  # t^3+2t+1
    (3, 4): (2, 0, 0, 2, 1),  # t^4+2t^3+2
    (5, 2): (2, 4, 1),  # t^2+4t+2
    (7, 2): (3, 6, 1),  # t^2+6t+3
}

_TABLE_LIMIT = 256


def is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, b, p):
    """Remainder of a by monic b over F_p (coefficient lists, low -> high)."""
    a = [c % p for c in a]
    db = len(b) - 1
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            for k in range(db + 1):
                a[i - db + k] = (a[i - db + k] - c * b[k]) % p
    return _trim(a[:db])


def is_irreducible(modulus, p):
    """Exhaustive check: no monic factor of degree 1..m//2 divides modulus."""
    m = len(modulus) - 1
    for d in range(1, m // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _poly_mod(modulus, list(low) + [1], p):
                return False
    return True


def default_modulus(p, m):
    """Table entry for (p, m), else the first irreducible in lexicographic order."""
    if (p, m) in DEFAULT_MODULI:
        return DEFAULT_MODULI[(p, m)]
    for low in itertools.product(range(p), repeat=m):
        cand = tuple(reversed(low)) + (1,)
        if is_irreducible(cand, p):
            return cand
    raise ReducibleModulus(f"no irreducible of degree {m} over F_{p}")  # pragma: no cover


@dataclass(frozen=True)
class FieldSpec:
    """The field F_p (m = 1) or F_p[t]/(modulus) (m > 1).

    ``modulus`` holds the m+1 coefficients low -> high and is ``None`` for
    prime fields.
    """

    p: int
    m: int = 1
    modulus: tuple | None = None

    def __post_init__(self):
        if not is_prime(self.p):
            raise NonPrimeP(f"{self.p} is not prime")
        if self.m < 1:
            raise DegreeMismatch(f"extension degree must be >= 1, got {self.m}")
        if self.m == 1:
            if self.modulus is not None:
                raise DegreeMismatch("prime fields take no modulus")
            return
        if self.modulus is None:
            raise DegreeMismatch(f"modulus required for m = {self.m}")
        mod = tuple(int(c) % self.p for c in self.modulus)
        if len(mod) != self.m + 1 or mod[-1] != 1:
            raise DegreeMismatch(f"modulus must be monic of degree {self.m}, got {self.modulus!r}")
        if not is_irreducible(mod, self.p):
            raise ReducibleModulus(f"{format_modulus(mod)} is reducible over F_{self.p}")
        object.__setattr__(self, "modulus", mod)

    @property
    def order(self):
        return self.p**self.m

    @property
    def is_prime_field(self):
        return self.m == 1

    @cached_property
    def prime_field(self):
        return self if self.m == 1 else FieldSpec(self.p)

    def __str__(self):
        if self.m == 1:
            return str(self.p)
        return f"{self.p}^{self.m}:{format_modulus(self.modulus)}"

    def __repr__(self):
        return f"FieldSpec({self})"

    # code-level arithmetic; used by the polynomial and matrix layers
    def coords(self, code):
        out = []
        for _ in range(self.m):
            code, r = divmod(code, self.p)
            out.append(r)
        return tuple(out)

    def code(self, coords):
        c = 0
        for r in reversed(coords):
            c = c * self.p + (r % self.p)
        return c

    def add(self, a, b):
        if self.m == 1:
            return (a + b) % self.p
        p = self.p
        out, scale = 0, 1
        while a or b:
            a, ra = divmod(a, p)
            b, rb = divmod(b, p)
            out += ((ra + rb) % p) * scale
            scale *= p
        return out

    def neg(self, a):
        if self.m == 1:
            return -a % self.p
        return self.code([-r for r in self.coords(a)])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    @cached_property
    def _mul_table(self):
        q = self.order
        return [[self._mul_direct(a, b) for b in range(q)] for a in range(q)]

    def _mul_direct(self, a, b):
        ca, cb = self.coords(a), self.coords(b)
        prod = [0] * (2 * self.m - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] += x * y
        return self.code(_poly_mod(prod, self.modulus, self.p) + [0] * self.m)

    def mul(self, a, b):
        if self.m == 1:
            return a * b % self.p
        if self.order <= _TABLE_LIMIT:
            return self._mul_table[a][b]
        return self._mul_direct(a, b)

    def power(self, a, e):
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def inv(self, a):
        if a == 0:
            raise DivisionByZero(f"0 has no inverse in F_{self.order}")
        if self.m == 1:
            return pow(a, self.p - 2, self.p)
        return self.power(a, self.order - 2)

    # element-level helpers
    def __call__(self, value):
        return self.elem(value)

    def elem(self, value):
        """Coerce an int, a coordinate sequence, text, or a FieldElem."""
        if isinstance(value, FieldElem):
            return self.embed(value)
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            return FieldElem(self, value % self.p)
        if isinstance(value, str):
            return parse_element(value, self)
        coords = tuple(value)
        if len(coords) != self.m:
            raise DegreeMismatch(f"expected {self.m} coordinates, got {len(coords)}")
        return FieldElem(self, self.code(coords))

    def embed(self, a):
        """Image of ``a`` in this field: same field, or prime subfield into extension."""
        if a.field == self:
            return a
        if a.field.is_prime_field and a.field.p == self.p:
            return FieldElem(self, a.code)
        raise FieldMismatch(f"cannot embed F_{a.field.order} element into {self}")

    @property
    def zero(self):
        return FieldElem(self, 0)

    @property
    def one(self):
        return FieldElem(self, 1)

    @property
    def theta(self):
        """Residue class of t in F_p[t]/(modulus)."""
        if self.m == 1:
            raise DegreeMismatch("prime fields have no generator t")
        return FieldElem(self, self.p)

    def elements(self):
        return [FieldElem(self, c) for c in range(self.order)]

    def basis(self):
        """Power basis 1, t, ..., t^(m-1) of the field over F_p."""
        return [FieldElem(self, self.p**k) for k in range(self.m)]


@dataclass(frozen=True)
class FieldElem:
    field: FieldSpec
    code: int

    @property
    def coords(self):
        return self.field.coords(self.code)

    def _other(self, other):
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other.code
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElem(self.field, self.field.add(self.code, b))

    __radd__ = __add__

    def __neg__(self):
        return FieldElem(self.field, self.field.neg(self.code))

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElem(self.field, self.field.sub(self.code, b))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElem(self.field, self.field.mul(self.code, b))

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        return FieldElem(self.field, self.field.power(self.code, e))

    def inverse(self):
        return FieldElem(self.field, self.field.inv(self.code))

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElem(self.field, self.field.mul(self.code, self.field.inv(b)))

    def __bool__(self):
        return self.code != 0

    def __int__(self):
        if self.code >= self.field.p:
            raise ValueError(f"{self} is not in the prime field")
        return self.code

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"FieldElem({self}, F_{self.field.order})"


def make_field(p, m=1, modulus=None):
    """Validated field spec. ``modulus`` falls back to the built-in table when m > 1."""
    if m > 1 and modulus is None:
        if not is_prime(p):
            raise NonPrimeP(f"{p} is not prime")
        modulus = default_modulus(p, m)
    return FieldSpec(p, m, None if modulus is None else tuple(modulus))


def _check(a, b):
    if a.field != b.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")


def ff_add(a, b):
    _check(a, b)
    return a + b


def ff_sub(a, b):
    _check(a, b)
    return a - b


def ff_neg(a):
    return -a


def ff_mul(a, b):
    _check(a, b)
    return a * b


def ff_inv(a):
    return a.inverse()


def fp_decompose(a):
    """Prime-field coordinates of ``a`` in the power basis 1, t, ..., t^(m-1)."""
    return a.coords


def fp_compose(coords, field):
    return field.elem(coords)


# -- text forms ---------------------------------------------------------------


def _format_tpoly(coeffs_low_high, var="t"):
    parts = []
    for k in range(len(coeffs_low_high) - 1, -1, -1):
        c = coeffs_low_high[k]
        if not c:
            continue
        if k == 0:
            parts.append(str(c))
            continue
        mono = var if k == 1 else f"{var}^{k}"
        parts.append(mono if c == 1 else f"{c}*{mono}")
    return "+".join(parts) if parts else "0"


def format_modulus(modulus):
    return _format_tpoly(modulus)


def format_element(a):
    return _format_tpoly(a.coords)


_TERM = re.compile(r"^(?:(\d+)\*?)?(?:(t)(?:\^(\d+))?)?$")


def _parse_tpoly(text, p):
    """Coefficients (low -> high, reduced mod p) of a polynomial in t."""
    s = text.replace(" ", "")
    if not s:
        raise ParseError("empty element", text, 0)
    coeffs = {}
    pos = 0
    for m in re.finditer(r"[+-]?[^+-]+", s):
        if m.start() != pos:
            raise ParseError("malformed element", text, pos)
        pos = m.end()
        tok = m.group()
        sign = -1 if tok[0] == "-" else 1
        body = tok.lstrip("+-")
        tm = _TERM.match(body)
        if not body or not tm or (tm.group(1) is None and tm.group(2) is None):
            raise ParseError(f"malformed term {tok!r}", text, m.start())
        c = int(tm.group(1)) if tm.group(1) else 1
        k = 0 if tm.group(2) is None else int(tm.group(3) or 1)
        coeffs[k] = coeffs.get(k, 0) + sign * c
    if pos != len(s):
        raise ParseError("malformed element", text, pos)
    deg = max(coeffs)
    return [coeffs.get(k, 0) % p for k in range(deg + 1)]


def parse_element(text, field):
    """Parse an integer or a polynomial in ``t``; reduced modulo the field's modulus."""
    coeffs = _parse_tpoly(text, field.p)
    if len(coeffs) > 1 and field.m == 1:
        raise ParseError(f"'t' is not an element of F_{field.p}", text, text.find("t"))
    if field.m == 1:
        return FieldElem(field, coeffs[0])
    red = _poly_mod(coeffs, field.modulus, field.p) if len(coeffs) > field.m else _trim(coeffs)
    red = red + [0] * (field.m - len(red))
    return FieldElem(field, field.code(red))


def parse_field(text):
    """``p`` or ``p^m`` or ``p^m:modulus`` (modulus written in t)."""
    s = text.replace(" ", "")
    m = re.fullmatch(r"(\d+)(?:\^(\d+))?(?::(.+))?", s)
    if not m:
        raise ParseError(f"malformed field {text!r}", text, 0)
    p = int(m.group(1))
    deg = int(m.group(2) or 1)
    modulus = None
    if m.group(3):
        modulus = _parse_tpoly(m.group(3), p) if is_prime(p) else None
        if modulus is not None and len(modulus) != deg + 1:
            raise DegreeMismatch(f"modulus {m.group(3)} does not have degree {deg}")
    return make_field(p, deg, modulus)
