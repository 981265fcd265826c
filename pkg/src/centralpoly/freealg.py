"""Sparse noncommutative polynomials over a finite field.

A monomial is a tuple of :class:`Variable` (the empty tuple is the unit).
Terms are kept in graded-lexicographic order: shorter words first, then
letter by letter with every x_i before every y_ij.
"""

from __future__ import annotations

from collections import Counter
from typing import NamedTuple

from .errors import FieldMismatch, NotMultihomogeneous
from .gf import FieldElem, FieldSpec

ORIGINAL = 0
SPLIT = 1


class Variable(NamedTuple):
    kind: int
    index: int
    slot: int = 0

    @property
    def is_split(self):
        return self.kind == SPLIT

    @property
    def parent(self):
        """The original variable x_i this one belongs to."""
        return Variable(ORIGINAL, self.index)

    def __str__(self):
        if self.kind == SPLIT:
            return f"y{self.index}_{self.slot}"
        return f"x{self.index}"

    def __repr__(self):
        return str(self)


def x(i):
    if i < 1:
        raise ValueError(f"variable index must be >= 1, got {i}")
    return Variable(ORIGINAL, i)


def y(i, j):
    if i < 1 or j < 1:
        raise ValueError(f"split variable indices must be >= 1, got ({i}, {j})")
    return Variable(SPLIT, i, j)


def word_key(word):
    return (len(word), word)


def format_word(word):
    if not word:
        return "1"
    parts = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        e = j - i
        parts.append(str(word[i]) if e == 1 else f"{word[i]}^{e}")
        i = j
    return "*".join(parts)


class NcPolynomial:
    """Element of the free associative algebra F<X> with sparse terms.

    ``terms`` maps words to coefficients; coefficients may be ints, field
    elements of ``field``, or prime-field elements of the same
    characteristic. Zero coefficients are dropped.
    """

    __slots__ = ("field", "_terms", "_hash")

    def __init__(self, field, terms=None):
        self.field = field
        clean = {}
        for word, c in (terms or {}).items():
            code = _coerce_code(field, c)
            if code:
                clean[tuple(word)] = code
        self._terms = {w: clean[w] for w in sorted(clean, key=word_key)}
        self._hash = None

    @classmethod
    def _from_codes(cls, field, codes):
        obj = cls.__new__(cls)
        obj.field = field
        obj._terms = {w: codes[w] for w in sorted(codes, key=word_key) if codes[w]}
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, field):
        return cls._from_codes(field, {})

    @classmethod
    def constant(cls, field, c):
        return cls(field, {(): c})

    @classmethod
    def variable(cls, field, var):
        return cls._from_codes(field, {(var,): 1})

    @classmethod
    def monomial(cls, field, word, coeff=1):
        return cls(field, {tuple(word): coeff})

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self):
        """Word -> FieldElem, in canonical order."""
        return {w: FieldElem(self.field, c) for w, c in self._terms.items()}

    def items(self):
        return ((w, FieldElem(self.field, c)) for w, c in self._terms.items())

    def words(self):
        return list(self._terms)

    def coefficient(self, word):
        return FieldElem(self.field, self._terms.get(tuple(word), 0))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    @property
    def is_zero(self):
        return not self._terms

    def variables(self):
        return sorted({v for w in self._terms for v in w})

    def degree(self):
        return max((len(w) for w in self._terms), default=-1)

    def __eq__(self, other):
        if not isinstance(other, NcPolynomial):
            return NotImplemented
        return self.field == other.field and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, tuple(self._terms.items())))
        return self._hash

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"NcPolynomial({format_poly(self)!r}, F_{self.field.order})"

    # -- arithmetic ---------------------------------------------------------

    def _same(self, other):
        if isinstance(other, NcPolynomial):
            if other.field == self.field:
                return other
            if other.field.p == self.field.p and other.field.is_prime_field:
                return other.change_field(self.field)
            if self.field.is_prime_field and self.field.p == other.field.p:
                raise FieldMismatch("promote the prime-field operand with change_field first")
            raise FieldMismatch(f"{self.field} vs {other.field}")
        if isinstance(other, (int, FieldElem)):
            return NcPolynomial.constant(self.field, other)
        return NotImplemented

    def __add__(self, other):
        other = self._same(other)
        if other is NotImplemented:
            return other
        f = self.field
        out = dict(self._terms)
        for w, c in other._terms.items():
            out[w] = f.add(out.get(w, 0), c)
        return NcPolynomial._from_codes(f, out)

    __radd__ = __add__

    def __neg__(self):
        f = self.field
        return NcPolynomial._from_codes(f, {w: f.neg(c) for w, c in self._terms.items()})

    def __sub__(self, other):
        other = self._same(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        code = _coerce_code(self.field, c)
        f = self.field
        return NcPolynomial._from_codes(f, {w: f.mul(code, v) for w, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, FieldElem)):
            return self.scale(other)
        other = self._same(other)
        if other is NotImplemented:
            return other
        f = self.field
        out = {}
        for w1, c1 in self._terms.items():
            for w2, c2 in other._terms.items():
                w = w1 + w2
                out[w] = f.add(out.get(w, 0), f.mul(c1, c2))
        return NcPolynomial._from_codes(f, out)

    def __rmul__(self, other):
        if isinstance(other, (int, FieldElem)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative powers do not exist in the free algebra")
        result = NcPolynomial.constant(self.field, 1)
        for _ in range(e):
            result = result * self
        return result

    def change_field(self, field):
        """Embed prime-field coefficients into ``field`` (same characteristic)."""
        if field == self.field:
            return self
        if not (self.field.is_prime_field and self.field.p == field.p):
            raise FieldMismatch(f"cannot embed {self.field} coefficients into {field}")
        return NcPolynomial._from_codes(field, dict(self._terms))


def _coerce_code(field, c):
    if isinstance(c, FieldElem):
        return field.embed(c).code
    if isinstance(c, int):
        return c % field.p
    raise TypeError(f"unsupported coefficient {c!r}")


# -- functional surface -------------------------------------------------------


def poly_add(f, g):
    return f + g


def poly_scale(f, c):
    return f.scale(c)


def poly_mul(f, g):
    return f * g


def commutator(f, g):
    """[f, g] = fg - gf."""
    return f * g - g * f


def word_degrees(word):
    return Counter(word)


def is_multihomogeneous(f):
    it = iter(f.words())
    first = next(it, None)
    if first is None:
        return True
    target = Counter(first)
    return all(Counter(w) == target for w in it)


def multidegree(f):
    """Per-variable degrees of a multihomogeneous polynomial, sorted by variable."""
    words = f.words()
    if not words:
        return {}
    target = Counter(words[0])
    for w in words[1:]:
        if Counter(w) != target:
            raise NotMultihomogeneous(f"{format_word(words[0])} and {format_word(w)} differ in degree")
    return {v: target[v] for v in sorted(target)}


def substitute(f, bindings):
    """Homomorphic image of f under variable -> polynomial; unbound letters stay."""
    field = f.field
    cache = {}

    def image(v):
        if v not in cache:
            g = bindings.get(v)
            if g is None:
                g = NcPolynomial.variable(field, v)
            elif isinstance(g, NcPolynomial):
                if g.field != field:
                    g = g.change_field(field)
            else:
                raise TypeError(f"binding for {v} is not a polynomial")
            cache[v] = g
        return cache[v]

    out = {}
    for w, c in f._terms.items():
        partial = {(): c}
        for v in w:
            g = image(v)
            nxt = {}
            for pw, pc in partial.items():
                for gw, gc in g._terms.items():
                    key = pw + gw
                    nxt[key] = field.add(nxt.get(key, 0), field.mul(pc, gc))
            partial = {k: v2 for k, v2 in nxt.items() if v2}
            if not partial:
                break
        for pw, pc in partial.items():
            out[pw] = field.add(out.get(pw, 0), pc)
    return NcPolynomial._from_codes(field, out)


def homogeneous_component(f, target):
    """Terms of f whose letter counts equal ``target`` (missing variables mean degree 0)."""
    want = Counter({v: k for v, k in target.items() if k})
    return NcPolynomial._from_codes(f.field, {w: c for w, c in f._terms.items() if Counter(w) == want})


def format_poly(f):
    """Text form in the package's polynomial grammar."""
    if not f._terms:
        return "0"
    field = f.field
    pieces = []
    for w, c in f._terms.items():
        neg = field.m == 1 and field.p > 2 and c == field.p - 1
        if neg:
            c = 1
        body = format_word(w)
        if c != 1:
            cs = str(FieldElem(field, c))
            if field.m > 1 and c >= field.p:
                cs = f"({cs})"
            body = cs if not w else f"{cs}*{body}"
        pieces.append((neg, body))
    out = ("-" if pieces[0][0] else "") + pieces[0][1]
    for neg, body in pieces[1:]:
        out += (" - " if neg else " + ") + body
    return out
