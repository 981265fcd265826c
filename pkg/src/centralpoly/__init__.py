"""Partial linearization, identity/centrality tests on M_n over finite fields,
and descent of central polynomials to prime-field coefficients."""

__version__ = "0.1.0"

from .descent import (
    DescentCertificate,
    Decomposition,
    descend,
    fp_components,
    theorem2_identity_split,
)
from .errors import *  # noqa: F401,F403
from .fixtures import fixture_names, hall_polynomial, multilinear_central_m2, named_polynomial, standard_polynomial
from .freealg import (
    NcPolynomial,
    Variable,
    commutator,
    homogeneous_component,
    is_multihomogeneous,
    multidegree,
    poly_add,
    poly_mul,
    poly_scale,
    substitute,
    x,
    y,
)
from .gf import FieldElem, FieldSpec, ff_add, ff_inv, ff_mul, ff_neg, fp_decompose, make_field, parse_field
from .linearize import (
    LinearizationSpec,
    compositions_of,
    enumerate_specs,
    filter_p_power,
    full_multilinearization,
    partial_linearize,
)
from .mateval import FFMatrix, all_matrices, evaluate, is_scalar, mat_add, mat_mul, mat_scale, matrix_units
from .parsing import parse_poly
from .verify import (
    CheckResult,
    Status,
    Verdict,
    Witness,
    classify_central,
    cost_estimate,
    evaluate_via_linearizations,
    is_identity_bruteforce,
    is_identity_lemma1,
    is_identity_sampled,
)
