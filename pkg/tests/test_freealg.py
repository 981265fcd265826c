import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from centralpoly import (
    NcPolynomial,
    commutator,
    homogeneous_component,
    is_multihomogeneous,
    make_field,
    multidegree,
    parse_poly,
    substitute,
    x,
    y,
)
from centralpoly.errors import FieldMismatch, NotMultihomogeneous

from helpers import all_weak_compositions, multihomogeneous, polynomials

F2, F3 = make_field(2), make_field(3)


def P(text, field=F2):
    return parse_poly(text, field)


def test_mul_single_monomial():
    f = NcPolynomial.variable(F2, x(1)) * NcPolynomial.variable(F2, x(2))
    assert f.terms == {(x(1), x(2)): F2.one}


def test_f_minus_f_is_zero():
    f = P("x1*x2 + x2^2*x1", F3)
    assert (f + f.scale(-1)).is_zero
    assert str(f - f) == "0"


def test_square_over_f2_keeps_distinct_words():
    s = P("x1 + x2")
    assert s * s == P("x1^2 + x1*x2 + x2*x1 + x2^2")
    assert len(s * s) == 4


def test_commutator_examples():
    assert commutator(P("x1", F3), P("x2", F3)) == P("x1*x2 - x2*x1", F3)
    f = P("x1^2*x2 + x2*x1", F3)
    assert commutator(f, f).is_zero
    assert str(commutator(P("x1"), P("x2"))) == "x1*x2 + x2*x1"


def test_multidegree_examples():
    assert multidegree(P("x1^3")) == {x(1): 3}
    assert multidegree(P("x1^2*x2 + x2*x1^2")) == {x(1): 2, x(2): 1}
    assert not is_multihomogeneous(P("x1^2 + x1"))
    with pytest.raises(NotMultihomogeneous):
        multidegree(P("x1^2 + x1"))
    assert is_multihomogeneous(NcPolynomial.zero(F2))


def test_substitute_examples():
    f = P("x1^3")
    ys = NcPolynomial.variable(F2, y(1, 1)) + NcPolynomial.variable(F2, y(1, 2)) + NcPolynomial.variable(F2, y(1, 3))
    e = substitute(f, {x(1): ys})
    assert len(e) == 27
    g = P("x1*x2^2 + x2*x1", F3)
    assert substitute(g, {}) == g
    assert substitute(g, {x(1): NcPolynomial.variable(F3, x(1))}) == g
    assert substitute(P("x1*x2"), {x(1): NcPolynomial.zero(F2)}).is_zero


def test_homogeneous_component_examples():
    f = P("x1^3")
    e = substitute(f, {x(1): NcPolynomial.variable(F2, y(1, 1)) + NcPolynomial.variable(F2, y(1, 2))})
    comp = homogeneous_component(e, {y(1, 1): 2, y(1, 2): 1})
    assert str(comp) == "y1_1^2*y1_2 + y1_1*y1_2*y1_1 + y1_2*y1_1^2"
    assert homogeneous_component(f, {x(1): 3}) == f
    assert homogeneous_component(f, {x(1): 2}).is_zero


def test_term_order_is_graded_lex_with_x_before_y():
    f = P("y1_1 + x2*x1 + x1*x2 + x3 + 1 + x1*y1_1 + y1_1*x1")
    assert [str(NcPolynomial.monomial(F2, w)) for w in f.words()] == [
        "1", "x3", "y1_1", "x1*x2", "x1*y1_1", "x2*x1", "y1_1*x1",
    ]


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        P("x1") + P("x1", F3)
    F4 = make_field(2, 2)
    # prime-field operands are promoted into the extension
    assert (P("t*x1", F4) + P("x1")) == P("(t+1)*x1", F4)


@settings(max_examples=500, deadline=None)
@given(st.sampled_from([F2, F3]).flatmap(lambda F: st.tuples(*(polynomials(F, max_vars=3, max_degree=4),) * 3)))
def test_ring_axioms(triple):
    f, g, h = triple
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert (f + g) * h == f * h + g * h
    assert f + g == g + f
    assert (f + g) + h == f + (g + h)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([F2, F3]).flatmap(lambda F: polynomials(F)))
def test_format_parse_round_trip(f):
    assert parse_poly(str(f), f.field) == f


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([F2, F3]).flatmap(lambda F: multihomogeneous(F, max_vars=2, max_degree=4)))
def test_substitution_partitions_into_components(f):
    md = multidegree(f)
    (v, m), *rest = md.items()
    bind = {v: sum((NcPolynomial.variable(f.field, y(v.index, j)) for j in range(1, m + 1)), NcPolynomial.zero(f.field))}
    full = substitute(f, bind)
    others = {u: d for u, d in rest}
    total = NcPolynomial.zero(f.field)
    for a in all_weak_compositions(m, m):
        target = dict(others)
        target.update({y(v.index, j): e for j, e in enumerate(a, 1)})
        total = total + homogeneous_component(full, target)
    assert total == full
