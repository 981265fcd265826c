"""Partial linearizations f(b : y_ij) of multihomogeneous polynomials.

Replacing x_i by y_i1 + ... + y_ik and keeping the part of degree b_ij in
each y_ij is done per monomial: the positions of x_i in a word are
labelled with slots 1..k in every way that uses slot j exactly b_ij times.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

from .errors import ParseError, SpecMismatch
from .freealg import SPLIT, NcPolynomial, Variable, multidegree, x, y


def compositions_of(m):
    """All 2^(m-1) compositions of m, by length, then descending lexicographic.

    >>> compositions_of(3)
    [(3,), (2, 1), (1, 2), (1, 1, 1)]
    """
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    out = []
    for cuts in range(m):
        level = []
        for pos in itertools.combinations(range(1, m), cuts):
            bounds = (0,) + pos + (m,)
            level.append(tuple(b - a for a, b in zip(bounds, bounds[1:])))
        out.extend(sorted(level, reverse=True))
    return out


def multiset_permutations(counts):
    """Sequences over labels 1..len(counts) using label j exactly counts[j-1] times.

    Generated in lexicographic order.
    """
    counts = list(counts)
    total = sum(counts)
    seq = []

    def rec():
        if len(seq) == total:
            yield tuple(seq)
            return
        for j, c in enumerate(counts):
            if c:
                counts[j] -= 1
                seq.append(j + 1)
                yield from rec()
                seq.pop()
                counts[j] += 1

    return rec()


@dataclass(frozen=True)
class LinearizationSpec:
    """Compositions b^(i) for each original variable x_i, sorted by variable."""

    per_variable: tuple

    @classmethod
    def from_mapping(cls, mapping):
        items = []
        for var, comp in mapping.items():
            if isinstance(var, int):
                var = x(var)
            if var.is_split:
                raise SpecMismatch(f"{var} is not an original variable")
            comp = tuple(int(b) for b in comp)
            if not comp or any(b < 1 for b in comp):
                raise SpecMismatch(f"composition for {var} must have positive parts: {comp}")
            items.append((var, comp))
        return cls(tuple(sorted(items)))

    @classmethod
    def parse(cls, text):
        """Text form ``x1:2,1|x2:1``."""
        mapping = {}
        for chunk in text.replace(" ", "").split("|"):
            m = re.fullmatch(r"x(\d+):(\d+(?:,\d+)*)", chunk)
            if not m:
                raise ParseError(f"malformed spec component {chunk!r}", text, max(text.find(chunk), 0))
            var = x(int(m.group(1)))
            if var in mapping:
                raise SpecMismatch(f"{var} listed twice")
            mapping[var] = tuple(int(b) for b in m.group(2).split(","))
        return cls.from_mapping(mapping)

    def compositions(self):
        return dict(self.per_variable)

    def split_variables(self):
        return [y(v.index, j) for v, comp in self.per_variable for j in range(1, len(comp) + 1)]

    def split_degrees(self):
        return {y(v.index, j): b for v, comp in self.per_variable for j, b in enumerate(comp, 1)}

    @property
    def is_multilinear(self):
        return all(b == 1 for _, comp in self.per_variable for b in comp)

    def __str__(self):
        return "|".join(f"{v}:{','.join(map(str, comp))}" for v, comp in self.per_variable)


def _check_spec(f, spec):
    md = multidegree(f)
    if any(v.is_split for v in md):
        raise SpecMismatch("only polynomials in original variables x_i can be linearized")
    comps = spec.compositions()
    if set(comps) != set(md):
        raise SpecMismatch(f"spec covers {sorted(comps)} but polynomial has {sorted(md)}")
    for v, comp in comps.items():
        if sum(comp) != md[v]:
            raise SpecMismatch(f"composition {comp} for {v} does not sum to degree {md[v]}")
    return md


def partial_linearize(f, spec):
    """The partial linearization f(b : y_ij) for the compositions in ``spec``."""
    _check_spec(f, spec)
    field = f.field
    comps = spec.per_variable
    labelings = [list(multiset_permutations(comp)) for _, comp in comps]
    out = {}
    for word, c in f._terms.items():
        positions = [[k for k, letter in enumerate(word) if letter == v] for v, _ in comps]
        for choice in itertools.product(*labelings):
            new = list(word)
            for (v, _), pos, labels in zip(comps, positions, choice):
                for k, lab in zip(pos, labels):
                    new[k] = Variable(SPLIT, v.index, lab)
            key = tuple(new)
            out[key] = field.add(out.get(key, 0), c)
    return NcPolynomial._from_codes(field, out)


def enumerate_specs(f):
    """All linearization specs of f: product of compositions_of(deg_i) in variable order."""
    md = multidegree(f)
    if any(v.is_split for v in md):
        raise SpecMismatch("only polynomials in original variables x_i can be linearized")
    variables = list(md)
    per_var = [compositions_of(md[v]) for v in variables]
    return [LinearizationSpec(tuple(zip(variables, combo))) for combo in itertools.product(*per_var)]


def is_power_of(k, p):
    while k % p == 0:
        k //= p
    return k == 1


def filter_p_power(specs, p):
    """Keep specs whose every part is a power of p (1 = p^0 included)."""
    return [s for s in specs if all(is_power_of(b, p) for _, comp in s.per_variable for b in comp)]


def full_multilinearization(f):
    md = multidegree(f)
    spec = LinearizationSpec(tuple((v, (1,) * d) for v, d in md.items()))
    return partial_linearize(f, spec)


def linearization_substitution(f):
    """Bindings x_i -> y_i1 + ... + y_im with m = deg_{x_i} f."""
    md = multidegree(f)
    bindings = {}
    for v, d in md.items():
        bindings[v] = sum((NcPolynomial.variable(f.field, y(v.index, j)) for j in range(1, d + 1)),
                          NcPolynomial.zero(f.field))
    return bindings
