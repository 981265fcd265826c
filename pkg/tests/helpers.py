"""Random multihomogeneous polynomials and hypothesis strategies shared by the tests."""

import itertools
import random

from hypothesis import strategies as st

from centralpoly import NcPolynomial, make_field, x
from centralpoly.gf import FieldElem
from centralpoly.linearize import multiset_permutations


def words_of_multidegree(degrees):
    """All distinct words with letter x_i occurring degrees[i-1] times."""
    return [tuple(x(k) for k in w) for w in multiset_permutations(degrees)]


def random_composition(rng, total, parts):
    cuts = sorted(rng.sample(range(1, total), parts - 1))
    bounds = [0] + cuts + [total]
    return [b - a for a, b in zip(bounds, bounds[1:])]


def random_multihomogeneous(rng, field, max_vars=3, max_degree=4, max_terms=6, balanced=False):
    """Nonzero multihomogeneous f over ``field``.

    ``balanced`` makes the coefficients sum to zero (commutative image 0).
    """
    total = rng.randint(1, max_degree)
    nvars = rng.randint(1, min(max_vars, total))
    degrees = random_composition(rng, total, nvars)
    words = words_of_multidegree(degrees)
    if balanced and len(words) < 2:
        balanced = False
    k = rng.randint(2 if balanced else 1, min(max_terms, len(words)))
    chosen = rng.sample(words, k)
    terms = {w: FieldElem(field, rng.randrange(1, field.order)) for w in chosen}
    if balanced:
        rest = sum((terms[w] for w in chosen[:-1]), field.zero)
        terms[chosen[-1]] = -rest
    f = NcPolynomial(field, terms)
    if f.is_zero:
        return random_multihomogeneous(rng, field, max_vars, max_degree, max_terms, balanced)
    return f


def suite(seed, count, primes=(2, 3), **kw):
    """Deterministic list of (field, f) with half of them balanced."""
    rng = random.Random(seed)
    out = []
    for k in range(count):
        field = make_field(primes[k % len(primes)])
        out.append((field, random_multihomogeneous(rng, field, balanced=bool(k % 4 >= 2), **kw)))
    return out


@st.composite
def polynomials(draw, field, max_vars=3, max_degree=4, max_terms=5):
    """Arbitrary (not necessarily homogeneous) polynomials."""
    n_terms = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n_terms):
        length = draw(st.integers(0, max_degree))
        word = tuple(x(draw(st.integers(1, max_vars))) for _ in range(length))
        terms[word] = FieldElem(field, draw(st.integers(1, field.order - 1)))
    return NcPolynomial(field, terms)


@st.composite
def multihomogeneous(draw, field, max_vars=3, max_degree=4, max_terms=6, balanced=None):
    seed = draw(st.integers(0, 2**32 - 1))
    bal = draw(st.booleans()) if balanced is None else balanced
    return random_multihomogeneous(random.Random(seed), field, max_vars, max_degree, max_terms, bal)


def all_weak_compositions(total, parts):
    for cut in itertools.combinations_with_replacement(range(total + 1), parts - 1):
        bounds = (0,) + cut + (total,)
        yield tuple(b - a for a, b in zip(bounds, bounds[1:]))
