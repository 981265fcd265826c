"""Identity and centrality decisions for M_n over finite fields.

The matrix-unit test evaluates every partial linearization of f on every
tuple of matrix units. If all of them vanish, f is an identity of M_n(F)
for every field F containing the coefficients, because any evaluation of f
expands into these values. A failure only exhibits a nonzero linearization
value. Non-identity over a *specific* finite field is therefore only ever
claimed with a direct evaluation witness.

Search order is canonical everywhere: specs in ``enumerate_specs`` order,
then tuples in mixed-radix order with the first variable most significant
and matrices in row-major order. The first hit is the reported witness,
also when chunks are scanned by several workers.
"""

from __future__ import annotations

import enum
import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Optional

import numpy as np

from .batch import CompiledPolynomial, Embedding
from .errors import CapExceeded, DegeneratePolynomial, FieldMismatch, NoWitnessFound
from .freealg import NcPolynomial, commutator, multidegree, x, y
from .linearize import LinearizationSpec, enumerate_specs, filter_p_power, partial_linearize
from .mateval import DEFAULT_BUDGET, FFMatrix, count_matrices, evaluate, matrix_units

DEFAULT_SAMPLES = 10**4
DEFAULT_SEED = 0


class Status(str, enum.Enum):
    IDENTITY = "Identity"
    CENTRAL = "Central"
    NEITHER = "Neither"

    def __str__(self):
        return self.value


@dataclass
class Witness:
    """A replayable evaluation: ``polynomial`` at ``assignment`` equals ``value``.

    ``polynomial`` is what was actually evaluated: f itself, or the partial
    linearization f(spec) when ``spec`` is set.
    """

    polynomial: NcPolynomial
    assignment: dict
    value: FFMatrix
    spec: Optional[LinearizationSpec] = None
    kind: str = "nonzero"

    @property
    def field(self):
        return self.value.field

    def replay(self):
        return evaluate(self.polynomial, self.assignment) == self.value

    def to_dict(self):
        return {
            "kind": self.kind,
            "spec": None if self.spec is None else str(self.spec),
            "polynomial": str(self.polynomial),
            "coefficient_field": str(self.polynomial.field),
            "field": str(self.field),
            "assignment": {str(v): str(m) for v, m in sorted(self.assignment.items())},
            "value": str(self.value),
        }

    @classmethod
    def from_dict(cls, data):
        from .gf import parse_field
        from .mateval import parse_matrix
        from .parsing import parse_poly, parse_variable

        field = parse_field(data["field"])
        poly = parse_poly(data["polynomial"], parse_field(data["coefficient_field"]))
        assignment = {parse_variable(k): parse_matrix(v, field) for k, v in data["assignment"].items()}
        spec = None if data.get("spec") is None else LinearizationSpec.parse(data["spec"])
        return cls(poly, assignment, parse_matrix(data["value"], field), spec, data.get("kind", "nonzero"))


@dataclass(frozen=True)
class CheckResult:
    """Outcome of an identity test. Unpacks as ``(holds, witness)``."""

    holds: bool
    witness: Optional[Witness] = None
    method: str = "matrix-units"
    specs_checked: int = 0
    evaluations: int = 0
    filtered: bool = False

    def __iter__(self):
        yield self.holds
        yield self.witness

    def to_dict(self):
        return {
            "holds": self.holds,
            "method": self.method,
            "p_power_filter": self.filtered,
            "specs_checked": self.specs_checked,
            "evaluations": self.evaluations,
            "witness": None if self.witness is None else self.witness.to_dict(),
        }


@dataclass
class Verdict:
    status: Status
    certificates: list = dc_field(default_factory=list)
    identity_check: Optional[CheckResult] = None
    commutator_check: Optional[CheckResult] = None
    search_evaluations: int = 0

    def to_dict(self):
        return {
            "status": str(self.status),
            "identity_check": None if self.identity_check is None else self.identity_check.to_dict(),
            "commutator_check": None if self.commutator_check is None else self.commutator_check.to_dict(),
            "search_evaluations": self.search_evaluations,
            "certificates": [w.to_dict() for w in self.certificates],
        }


# -- tuple sources ------------------------------------------------------------


class _ProductSource:
    """All tuples from per-variable pools, mixed radix, first variable most significant."""

    def __init__(self, pools, emb):
        self.codes = pools
        self.embedded = [emb.embed(p) for p in pools]
        self.sizes = [len(p) for p in pools]
        self.total = int(np.prod(self.sizes, dtype=object)) if pools else 1

    def _digits(self, idx):
        digits = []
        for size in reversed(self.sizes):
            idx, d = np.divmod(idx, size)
            digits.append(d)
        return digits[::-1]

    def batch(self, start, stop):
        digits = self._digits(np.arange(start, stop, dtype=np.int64))
        return [e[d] for e, d in zip(self.embedded, digits)]

    def tuple_codes(self, index):
        out = []
        for size in reversed(self.sizes):
            index, d = divmod(index, size)
            out.append(d)
        return [c[d] for c, d in zip(self.codes, out[::-1])]


class _ZipSource:
    """Row k of every per-variable array forms tuple k."""

    def __init__(self, arrays, emb):
        self.codes = arrays
        self.embedded = [emb.embed(a) for a in arrays]
        self.total = len(arrays[0])

    def batch(self, start, stop):
        return [e[start:stop] for e in self.embedded]

    def tuple_codes(self, index):
        return [c[index] for c in self.codes]


def _nonzero_rows(codes):
    return np.any(codes.reshape(len(codes), -1) != 0, axis=1)


def _nonscalar_rows(codes):
    n = codes.shape[-1]
    diag = codes[:, np.arange(n), np.arange(n)]
    off = codes.copy()
    off[:, np.arange(n), np.arange(n)] = 0
    return np.any(off.reshape(len(codes), -1) != 0, axis=1) | np.any(diag != diag[:, :1], axis=1)


def _chunk_size(dim):
    return max(64, 2**17 // (dim * dim))


def _scan(compiled, source, predicate, workers=1):
    """Smallest tuple index whose value satisfies ``predicate``, or None."""
    emb = compiled.embedding
    total = source.total
    chunk = _chunk_size(emb.dim)

    def job(start):
        stop = min(start + chunk, total)
        codes = emb.unembed(compiled(source.batch(start, stop)))
        hits = np.flatnonzero(predicate(codes))
        return None if len(hits) == 0 else start + int(hits[0])

    starts = range(0, total, chunk)
    if workers <= 1:
        for s in starts:
            hit = job(s)
            if hit is not None:
                return hit
        return None
    with ThreadPoolExecutor(max_workers=workers) as pool:
        it = iter(starts)
        while True:
            wave = list(itertools.islice(it, workers))
            if not wave:
                return None
            hits = [h for h in pool.map(job, wave) if h is not None]
            if hits:
                return min(hits)


def _make_witness(poly, variables, source, index, emb, spec=None, kind="nonzero"):
    codes = source.tuple_codes(index)
    assignment = {v: emb.matrices(c)[0] for v, c in zip(variables, codes)}
    value = evaluate(poly, assignment)
    fast = emb.unembed(CompiledPolynomial(poly, variables, emb)([emb.embed(c[None]) for c in codes]))[0]
    if value.rows != tuple(tuple(int(a) for a in r) for r in fast):
        raise RuntimeError(f"batch kernel disagrees with direct evaluation at {assignment}")
    return Witness(poly, assignment, value, spec, kind)


# -- entry points -------------------------------------------------------------


def _target_field(f, field):
    if field is None:
        return f.field
    if field != f.field and not (f.field.is_prime_field and f.field.p == field.p):
        raise FieldMismatch(f"polynomial over {f.field} cannot be evaluated over {field}")
    return field


def _require_entry(f):
    md = multidegree(f)
    if not md:
        raise DegeneratePolynomial("identity and centrality tests need a nonzero polynomial of degree >= 1")
    return md


def _unit_codes(n):
    units = np.zeros((n * n, n, n), dtype=np.int64)
    for k in range(n * n):
        units[k, k // n, k % n] = 1
    return units


def _all_matrix_codes(n, field):
    q = field.order
    flat = np.array(list(itertools.product(range(q), repeat=n * n)), dtype=np.int64)
    return flat.reshape(-1, n, n)


def _specs_for(f, use_p_power_filter):
    specs = enumerate_specs(f)
    if use_p_power_filter:
        specs = filter_p_power(specs, f.field.p)
    return specs


def cost_estimate(f, n, use_p_power_filter=False):
    """(number of specs, total matrix-unit tuples) for the matrix-unit identity test."""
    specs = _specs_for(f, use_p_power_filter)
    return len(specs), sum((n * n) ** len(s.split_variables()) for s in specs)


def is_identity_lemma1(f, n, field=None, use_p_power_filter=False, budget=DEFAULT_BUDGET, workers=1):
    """Decide whether every partial linearization of f vanishes on all matrix-unit tuples.

    True means f is an identity of M_n(F) for every field F of the
    characteristic that contains the coefficients. False returns the first
    nonzero linearization value in canonical order.
    """
    field = _target_field(f, field)
    _require_entry(f)
    n_specs, total = cost_estimate(f, n, use_p_power_filter)
    if total > budget:
        raise CapExceeded(total, budget)
    specs = _specs_for(f, use_p_power_filter)
    emb = Embedding(field, n)
    units = _unit_codes(n)
    done = 0
    for k, spec in enumerate(specs):
        g = partial_linearize(f, spec)
        variables = spec.split_variables()
        source = _ProductSource([units] * len(variables), emb)
        if g.is_zero:
            done += source.total
            continue
        hit = _scan(CompiledPolynomial(g, variables, emb), source, _nonzero_rows, workers)
        if hit is not None:
            w = _make_witness(g, variables, source, hit, emb, spec)
            return CheckResult(False, w, "matrix-units", k + 1, done + hit + 1, use_p_power_filter)
        done += source.total
    return CheckResult(True, None, "matrix-units", n_specs, done, use_p_power_filter)


def is_identity_bruteforce(f, n, field=None, budget=DEFAULT_BUDGET, workers=1):
    """Whether f vanishes on every tuple of n x n matrices over this particular field."""
    field = _target_field(f, field)
    variables = f.variables()
    per_var = count_matrices(n, field)
    total = per_var ** len(variables)
    if total > budget:
        raise CapExceeded(total, budget)
    if not variables:
        value = evaluate(f, {}, n=n, field=field)
        if value.is_zero:
            return CheckResult(True, None, "bruteforce", 0, 1)
        return CheckResult(False, Witness(f, {}, value), "bruteforce", 0, 1)
    emb = Embedding(field, n)
    source = _ProductSource([_all_matrix_codes(n, field)] * len(variables), emb)
    hit = _scan(CompiledPolynomial(f, variables, emb), source, _nonzero_rows, workers)
    if hit is not None:
        return CheckResult(False, _make_witness(f, variables, source, hit, emb), "bruteforce", 0, hit + 1)
    return CheckResult(True, None, "bruteforce", 0, total)


def _random_codes(rng, count, n, field):
    return rng.integers(0, field.order, size=(count, n, n), dtype=np.int64)


def is_identity_sampled(f, n, field=None, trials=1000, seed=DEFAULT_SEED, workers=1):
    """Randomized refutation; ``holds`` only means no counterexample was drawn."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    field = _target_field(f, field)
    variables = f.variables()
    if not variables:
        return is_identity_bruteforce(f, n, field)
    rng = np.random.default_rng(seed)
    emb = Embedding(field, n)
    source = _ZipSource([_random_codes(rng, trials, n, field) for _ in variables], emb)
    hit = _scan(CompiledPolynomial(f, variables, emb), source, _nonzero_rows, workers)
    if hit is not None:
        return CheckResult(False, _make_witness(f, variables, source, hit, emb), "sampled", 0, hit + 1)
    return CheckResult(True, None, "sampled", 0, trials)


def find_evaluation(f, n, field=None, kind="nonzero", budget=DEFAULT_BUDGET,
                    samples=DEFAULT_SAMPLES, seed=DEFAULT_SEED, workers=1):
    """Direct evaluation witness for f: matrix units, then all matrices, then samples.

    ``kind`` is "nonzero" or "non-scalar". Returns (witness or None, evaluations).
    """
    field = _target_field(f, field)
    predicate = _nonzero_rows if kind == "nonzero" else _nonscalar_rows
    variables = f.variables()
    emb = Embedding(field, n)
    compiled = CompiledPolynomial(f, variables, emb)
    d = len(variables)
    spent = 0
    sources = [lambda: _ProductSource([_unit_codes(n)] * d, emb)]
    per_var = count_matrices(n, field)
    if per_var ** d <= budget:
        sources.append(lambda: _ProductSource([_all_matrix_codes(n, field)] * d, emb))
    if samples > 0:
        rng = np.random.default_rng(seed)
        sources.append(lambda: _ZipSource([_random_codes(rng, samples, n, field) for _ in variables], emb))
    for make in sources:
        source = make()
        hit = _scan(compiled, source, predicate, workers)
        if hit is not None:
            return _make_witness(f, variables, source, hit, emb, kind=kind), spent + hit + 1
        spent += source.total
    return None, spent


def fresh_variable(f):
    return x(max((v.index for v in f.variables()), default=0) + 1)


def classify_central(f, n, field=None, use_p_power_filter=False, budget=DEFAULT_BUDGET,
                     samples=DEFAULT_SAMPLES, seed=DEFAULT_SEED, workers=1):
    """Identity, Central or Neither for f on M_n(field), with replayable certificates.

    Central needs [f, x_{d+1}] to pass the matrix-unit identity test and an
    explicit nonzero value of f; Neither needs an explicit non-scalar value.
    """
    field = _target_field(f, field)
    ident = is_identity_lemma1(f, n, field, use_p_power_filter, budget, workers)
    if ident.holds:
        return Verdict(Status.IDENTITY, [], ident)
    comm = commutator(f, NcPolynomial.variable(f.field, fresh_variable(f)))
    cc = is_identity_lemma1(comm, n, field, use_p_power_filter, budget, workers)
    kind = "nonzero" if cc.holds else "non-scalar"
    w, spent = find_evaluation(f, n, field, kind, budget, samples, seed, workers)
    if w is None:
        raise NoWitnessFound(
            f"no {kind} evaluation of {f} on M_{n}({field}) within budget "
            f"({spent} evaluations); commutator test {'passed' if cc.holds else 'failed'}"
        )
    if cc.holds:
        return Verdict(Status.CENTRAL, [w], ident, cc, spent)
    return Verdict(Status.NEITHER, [w, cc.witness], ident, cc, spent)


def evaluate_via_linearizations(f, assignment):
    """f at ``assignment`` rebuilt from linearization values on matrix units.

    Each r_i = sum_a xi_ia e_a contributes, for every spec and every increasing
    choice of basis indices q_i1 < ... < q_ik, the coefficient prod xi^b times
    f(spec) evaluated at the chosen units.
    """
    mats = list(assignment.values())
    n, field = mats[0].n, mats[0].field
    basis = matrix_units(n, field)
    md = multidegree(f)
    xi = {v: [assignment[v].entry(a // n, a % n) for a in range(n * n)] for v in md}
    total = FFMatrix.zero(n, field)
    for spec in enumerate_specs(f):
        g = partial_linearize(f, spec)
        if g.is_zero:
            continue
        comps = spec.per_variable
        choices = [itertools.combinations(range(n * n), len(comp)) for _, comp in comps]
        for pick in itertools.product(*choices):
            coeff = field.one
            sub = {}
            for (v, comp), qs in zip(comps, pick):
                for j, (b, q) in enumerate(zip(comp, qs), 1):
                    coeff = coeff * xi[v][q] ** b
                    sub[y(v.index, j)] = basis[q]
            if coeff:
                total = total + evaluate(g, sub).scale(coeff)
    return total
