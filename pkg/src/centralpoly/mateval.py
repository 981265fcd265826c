"""Dense n x n matrices over finite fields and polynomial evaluation on them."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

from .errors import (
    CapExceeded,
    CharacteristicMismatch,
    FieldMismatch,
    ParseError,
    SizeMismatch,
    UnboundVariable,
)
from .gf import FieldElem, FieldSpec, parse_element

DEFAULT_BUDGET = 10**7


@dataclass(frozen=True)
class FFMatrix:
    """Square matrix with entries stored as field-element codes, row-major."""

    field: FieldSpec
    rows: tuple

    @classmethod
    def from_entries(cls, field, entries):
        rows = tuple(tuple(field.elem(e).code for e in row) for row in entries)
        if any(len(r) != len(rows) for r in rows):
            raise SizeMismatch("matrix must be square")
        return cls(field, rows)

    @classmethod
    def zero(cls, n, field):
        return cls(field, tuple((0,) * n for _ in range(n)))

    @classmethod
    def identity(cls, n, field):
        return cls(field, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def unit(cls, i, j, n, field):
        """Matrix unit e_ij with 1-based indices."""
        return cls(field, tuple(tuple(int((r, c) == (i - 1, j - 1)) for c in range(n)) for r in range(n)))

    @property
    def n(self):
        return len(self.rows)

    def entry(self, i, j):
        return FieldElem(self.field, self.rows[i][j])

    def __getitem__(self, ij):
        i, j = ij
        return self.entry(i, j)

    def _check(self, other):
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")
        if other.n != self.n:
            raise SizeMismatch(f"{self.n}x{self.n} vs {other.n}x{other.n}")

    def __add__(self, other):
        self._check(other)
        add = self.field.add
        return FFMatrix(self.field, tuple(tuple(add(a, b) for a, b in zip(r, s))
                                          for r, s in zip(self.rows, other.rows)))

    def __neg__(self):
        neg = self.field.neg
        return FFMatrix(self.field, tuple(tuple(neg(a) for a in r) for r in self.rows))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = self.field.elem(c).code
        mul = self.field.mul
        return FFMatrix(self.field, tuple(tuple(mul(c, a) for a in r) for r in self.rows))

    def __mul__(self, other):
        if isinstance(other, (int, FieldElem)):
            return self.scale(other)
        self._check(other)
        f = self.field
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            row = []
            for col in cols:
                acc = 0
                for a, b in zip(r, col):
                    if a and b:
                        acc = f.add(acc, f.mul(a, b))
                row.append(acc)
            out.append(tuple(row))
        return FFMatrix(f, tuple(out))

    def __rmul__(self, other):
        if isinstance(other, (int, FieldElem)):
            return self.scale(other)
        return NotImplemented

    @property
    def is_zero(self):
        return not any(any(r) for r in self.rows)

    def is_scalar(self):
        d = self.rows[0][0]
        return all(a == (d if i == j else 0) for i, r in enumerate(self.rows) for j, a in enumerate(r))

    def __str__(self):
        return "[" + ";".join(",".join(str(FieldElem(self.field, a)) for a in r) for r in self.rows) + "]"

    def __repr__(self):
        return f"FFMatrix({self}, F_{self.field.order})"


def mat_add(a, b):
    return a + b


def mat_mul(a, b):
    return a * b


def mat_scale(a, c):
    return a.scale(c)


def is_scalar(a):
    return a.is_scalar()


def matrix_units(n, field):
    """[e_11, e_12, ..., e_nn] in row-major order."""
    if n < 1:
        raise SizeMismatch(f"n must be >= 1, got {n}")
    return [FFMatrix.unit(i, j, n, field) for i in range(1, n + 1) for j in range(1, n + 1)]


def count_matrices(n, field):
    return field.order ** (n * n)


def all_matrices(n, field, cap=DEFAULT_BUDGET):
    """Every n x n matrix over the field, entries row-major with the first most significant."""
    total = count_matrices(n, field)
    if total > cap:
        raise CapExceeded(total, cap, "matrices")
    for flat in itertools.product(range(field.order), repeat=n * n):
        yield FFMatrix(field, tuple(flat[i * n:(i + 1) * n] for i in range(n)))


def _coefficient_field_ok(poly_field, mat_field):
    if poly_field == mat_field:
        return
    if poly_field.p != mat_field.p:
        raise CharacteristicMismatch(f"polynomial over {poly_field}, matrices over {mat_field}")
    if not poly_field.is_prime_field:
        raise FieldMismatch(f"coefficients in {poly_field} do not embed in {mat_field}")


def _assignment_shape(assignment):
    mats = list(assignment.values())
    if not mats:
        return None, None
    field, n = mats[0].field, mats[0].n
    for a in mats[1:]:
        if a.field != field:
            raise FieldMismatch("assignment mixes fields")
        if a.n != n:
            raise SizeMismatch("assignment mixes sizes")
    return n, field


def evaluate(f, assignment, n=None, field=None):
    """f evaluated at ``assignment`` (Variable -> FFMatrix); the unit word gives I.

    ``n``/``field`` are only needed when the assignment is empty.
    """
    an, afield = _assignment_shape(assignment)
    n = an if an is not None else n
    field = afield if afield is not None else (field or f.field)
    if n is None:
        raise SizeMismatch("cannot infer matrix size from an empty assignment")
    _coefficient_field_ok(f.field, field)
    for v in f.variables():
        if v not in assignment:
            raise UnboundVariable(f"{v} is not bound")
    result = FFMatrix.zero(n, field)
    ident = FFMatrix.identity(n, field)
    for word, code in f._terms.items():
        prod = ident
        for v in word:
            prod = prod * assignment[v]
            if prod.is_zero:
                break
        if not prod.is_zero:
            result = result + prod.scale(FieldElem(field, code))
    return result


def parse_matrix(text, field):
    """``[a,b;c,d]`` with entries in the field's element syntax."""
    s = text.strip()
    if not re.fullmatch(r"\[.*\]", s, flags=re.S):
        raise ParseError("matrix must be written [r1;r2;...]", text, 0)
    rows = [[parse_element(e, field) for e in row.split(",")] for row in s[1:-1].split(";")]
    return FFMatrix.from_entries(field, rows)
