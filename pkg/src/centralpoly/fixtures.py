"""Named test polynomials: standard polynomials, Hall's polynomial, L, and x1^3."""

from __future__ import annotations

import itertools
import re

from .freealg import NcPolynomial, commutator, x


def _var(field, i):
    return NcPolynomial.variable(field, x(i))


def permutation_sign(perm):
    inversions = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
    return -1 if inversions % 2 else 1


def standard_polynomial(k, field):
    """s_k = sum over permutations of sgn(sigma) x_sigma(1) ... x_sigma(k)."""
    if k < 2:
        raise ValueError(f"standard polynomials need k >= 2, got {k}")
    terms = {tuple(x(i + 1) for i in perm): permutation_sign(perm) for perm in itertools.permutations(range(k))}
    return NcPolynomial(field, terms)


def hall_polynomial(field):
    """(x1x2 - x2x1)^2, central for M_2 over every field."""
    return commutator(_var(field, 1), _var(field, 2)) ** 2


def multilinear_central_m2(field):
    """L = [x1,x2][x3,x4] + [x3,x4][x1,x2], the multilinear form of Hall's polynomial."""
    a = commutator(_var(field, 1), _var(field, 2))
    b = commutator(_var(field, 3), _var(field, 4))
    return a * b + b * a


def paper_example(field):
    """x1^3."""
    return _var(field, 1) ** 3


NAMED = {
    "hall": hall_polynomial,
    "L": multilinear_central_m2,
    "cube": paper_example,
}


def named_polynomial(name, field):
    """Builder lookup for ``@name`` references; ``s<k>`` is the standard polynomial."""
    m = re.fullmatch(r"s(\d+)", name)
    if m:
        return standard_polynomial(int(m.group(1)), field)
    if name not in NAMED:
        raise KeyError(name)
    return NAMED[name](field)


def fixture_names():
    return ["s2", "s3", "s4", *NAMED]
