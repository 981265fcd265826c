"""From an F_{p^m}-central polynomial to an F_p-central one of the same multidegree.

Writing every coefficient in the power basis 1, t, ..., t^(m-1) splits
c = sum_t t^k c_k with c_k over F_p. Linearization commutes with this
split, so if [c, x] vanishes on matrix units so does every [c_k, x], and
each c_k is central or an identity. At least one is not an identity.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional

from .errors import InputNotCentral, NoCentralComponent, NoWitnessFound, TheoremViolation
from .freealg import NcPolynomial, commutator, multidegree
from .gf import FieldElem, FieldSpec
from .mateval import DEFAULT_BUDGET
from .verify import (
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    CheckResult,
    Status,
    Verdict,
    Witness,
    classify_central,
    fresh_variable,
    is_identity_lemma1,
)


@dataclass(frozen=True)
class Decomposition:
    """Pairs (t^k, c_k) for the nonzero prime-field components, k ascending."""

    field: FieldSpec
    terms: tuple

    def reconstruct(self):
        out = NcPolynomial.zero(self.field)
        for eta, comp in self.terms:
            out = out + comp.change_field(self.field).scale(eta)
        return out

    @property
    def etas(self):
        return [eta for eta, _ in self.terms]

    @property
    def components(self):
        return [comp for _, comp in self.terms]


def fp_components(c):
    """Split c over F_{p^m} into prime-field components along the power basis."""
    multidegree(c)
    field = c.field
    prime = field.prime_field
    buckets = [{} for _ in range(field.m)]
    for word, code in c._terms.items():
        for k, r in enumerate(field.coords(code)):
            if r:
                buckets[k][word] = r
    terms = tuple(
        (FieldElem(field, field.p**k), NcPolynomial._from_codes(prime, b)) for k, b in enumerate(buckets) if b
    )
    return Decomposition(field, terms)


@dataclass
class ComponentReport:
    index: int
    eta: FieldElem
    component: NcPolynomial
    verdict: Optional[Verdict] = None
    error: Optional[str] = None

    @property
    def status(self):
        if self.verdict is not None:
            return str(self.verdict.status)
        return "NoWitnessFound"

    def to_dict(self):
        return {
            "index": self.index,
            "eta": str(self.eta),
            "component": str(self.component),
            "status": self.status,
            "error": self.error,
            "verdict": None if self.verdict is None else self.verdict.to_dict(),
        }


@dataclass
class DescentCertificate:
    chosen_index: int
    eta: FieldElem
    commutator_check: CheckResult
    nonzero_witness: Witness
    n: int
    input_verdict: Optional[Verdict] = None
    components: list = dc_field(default_factory=list)

    @property
    def identity_components(self):
        return [r.index for r in self.components if r.status == str(Status.IDENTITY)]

    def replay(self, polynomial, use_p_power_filter=False):
        """Re-run the commutator test and the witness evaluation."""
        comm = commutator(polynomial, NcPolynomial.variable(polynomial.field, fresh_variable(polynomial)))
        again = is_identity_lemma1(comm, self.n, polynomial.field, use_p_power_filter)
        return (
            again.holds == self.commutator_check.holds
            and again.evaluations == self.commutator_check.evaluations
            and self.nonzero_witness.replay()
            and self.nonzero_witness.polynomial == polynomial
        )

    def to_dict(self):
        return {
            "chosen_index": self.chosen_index,
            "eta": str(self.eta),
            "n": self.n,
            "commutator_check": self.commutator_check.to_dict(),
            "nonzero_witness": self.nonzero_witness.to_dict(),
            "identity_components": self.identity_components,
            "input_verdict": None if self.input_verdict is None else self.input_verdict.to_dict(),
            "components": [r.to_dict() for r in self.components],
        }


def _classify_all(decomp, n, opts):
    prime = decomp.field.prime_field
    reports = []
    for k, (eta, comp) in enumerate(decomp.terms):
        try:
            verdict = classify_central(comp, n, prime, **opts)
            reports.append(ComponentReport(k, eta, comp, verdict))
        except NoWitnessFound as exc:
            reports.append(ComponentReport(k, eta, comp, None, str(exc)))
    return reports


def descend(c, n, unsafe_skip_input_check=False, use_p_power_filter=False, budget=DEFAULT_BUDGET,
            samples=DEFAULT_SAMPLES, seed=DEFAULT_SEED, workers=1):
    """Return (c0 over F_p, certificate) with c0 central for M_n over every field of characteristic p.

    The selected c0 is the lowest-index component classified Central.
    """
    opts = dict(use_p_power_filter=use_p_power_filter, budget=budget, samples=samples, seed=seed, workers=workers)
    input_verdict = None
    if not unsafe_skip_input_check:
        input_verdict = classify_central(c, n, c.field, **opts)
        if input_verdict.status != Status.CENTRAL:
            raise InputNotCentral(
                f"input is {input_verdict.status} on M_{n}({c.field}), not central", input_verdict
            )
    decomp = fp_components(c)
    reports = _classify_all(decomp, n, opts)
    for r in reports:
        if r.verdict is not None and r.verdict.status == Status.CENTRAL:
            cert = DescentCertificate(
                chosen_index=r.index,
                eta=r.eta,
                commutator_check=r.verdict.commutator_check,
                nonzero_witness=r.verdict.certificates[0],
                n=n,
                input_verdict=input_verdict,
                components=reports,
            )
            return r.component, cert
    if any(r.verdict is None for r in reports):
        raise NoWitnessFound("; ".join(r.error for r in reports if r.error))
    summary = ", ".join(f"{r.eta}: {r.status}" for r in reports)
    raise NoCentralComponent(f"no prime-field component of a central polynomial is central ({summary})", reports)


def theorem2_identity_split(f, n, use_p_power_filter=False, budget=DEFAULT_BUDGET):
    """Matrix-unit identity test on each F_p component of f.

    If f itself passes over its own field every component must pass; a
    component that fails then is a hard error.
    """
    whole = is_identity_lemma1(f, n, f.field, use_p_power_filter, budget)
    decomp = fp_components(f)
    prime = f.field.prime_field
    results = [is_identity_lemma1(comp, n, prime, use_p_power_filter, budget).holds for comp in decomp.components]
    if whole.holds and not all(results):
        raise TheoremViolation(f"{f} passes but component results are {results}")
    return results
