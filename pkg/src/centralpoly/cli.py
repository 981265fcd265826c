"""Command-line driver.

Exit status: 0 property holds / output produced, 1 property refuted,
2 usage or parse error, 3 budget exhausted (cap exceeded or no witness found
within the search budget).
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
import time

from . import __version__
from .descent import descend, theorem2_identity_split
from .errors import CapExceeded, InputNotCentral, NoWitnessFound, UnboundVariable
from .freealg import homogeneous_component, multidegree, substitute, y
from .gf import parse_field
from .linearize import LinearizationSpec, enumerate_specs, filter_p_power, linearization_substitution, partial_linearize
from .mateval import DEFAULT_BUDGET
from .parsing import parse_poly
from .verify import (
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    Status,
    classify_central,
    cost_estimate,
    is_identity_bruteforce,
    is_identity_lemma1,
    is_identity_sampled,
)

EXIT_OK, EXIT_REFUTED, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
SCHEMA = 1

__all__ = ["main", "parse_poly", "run"]


def _common(parser, needs_n=False):
    src = parser.add_mutually_exclusive_group(required=True)
    src.add_argument("--poly", help="polynomial text, or @name for a built-in fixture")
    src.add_argument("--poly-file", help="file holding the polynomial text")
    parser.add_argument("--field", default="2", help="p, p^m or p^m:modulus (default 2)")
    parser.add_argument("--json", action="store_true", help="emit a JSON report")
    if needs_n:
        parser.add_argument("--n", type=int, required=True, help="matrix size")
        parser.add_argument("--p-power-filter", action="store_true",
                            help="only linearizations whose degrees are powers of p")
        parser.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="evaluation cap")
        parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
        parser.add_argument("--workers", type=int, default=1)


def build_parser():
    ap = argparse.ArgumentParser(prog="centralpoly", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("linearize", help="partial linearizations of a multihomogeneous polynomial")
    _common(p)
    p.add_argument("--spec", help="e.g. x1:2,1|x2:1; all specs when omitted")
    p.add_argument("--p-power-filter", action="store_true")

    p = sub.add_parser("expand", help="substitute x_i -> y_i1+...+y_im and group by degree")
    _common(p)

    p = sub.add_parser("estimate", help="spec and tuple counts of the matrix-unit test")
    _common(p, needs_n=True)

    p = sub.add_parser("verify", help="identity / centrality decisions on M_n")
    p.add_argument("mode", choices=["identity", "central", "bruteforce", "sampled", "split"])
    _common(p, needs_n=True)
    p.add_argument("--trials", type=int, default=1000, help="samples for mode 'sampled'")
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES, help="random fallback for mode 'central'")

    p = sub.add_parser("descend", help="prime-field central polynomial from an extension-field one")
    _common(p, needs_n=True)
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    p.add_argument("--unsafe-skip-input-check", action="store_true")
    return ap


def _invocation(args):
    return {k: v for k, v in sorted(vars(args).items()) if k != "json"}


def _read_poly(args, field):
    text = args.poly
    if args.poly_file:
        with open(args.poly_file) as fh:
            text = fh.read()
    return parse_poly(text, field)


def _witness_lines(w, indent="  "):
    lines = []
    if w.spec is not None:
        lines.append(f"{indent}spec: {w.spec}")
    lines.append(f"{indent}polynomial: {w.polynomial}")
    for v, m in sorted(w.assignment.items()):
        lines.append(f"{indent}{v} = {m}")
    lines.append(f"{indent}value = {w.value}")
    return lines


def _cmd_linearize(args, f, field):
    specs = [LinearizationSpec.parse(args.spec)] if args.spec else enumerate_specs(f)
    if args.p_power_filter and not args.spec:
        specs = filter_p_power(specs, field.p)
    rows = [(str(s), str(partial_linearize(f, s))) for s in specs]
    if args.spec:
        text = [rows[0][1]]
    else:
        text = [f"{s} => {g}" for s, g in rows]
    return EXIT_OK, {"linearizations": [{"spec": s, "polynomial": g} for s, g in rows]}, text


def _cmd_expand(args, f, field):
    md = multidegree(f)
    full = substitute(f, linearization_substitution(f))
    groups = []
    split_vars = list(md.items())
    ranges = [list(_weak_compositions(d, d)) for _, d in split_vars]
    for combo in itertools.product(*ranges):
        target = {}
        for (v, _), a in zip(split_vars, combo):
            for j, e in enumerate(a, 1):
                target[y(v.index, j)] = e
        comp = homogeneous_component(full, target)
        if not comp.is_zero:
            label = "|".join(f"{v}:{','.join(map(str, a))}" for (v, _), a in zip(split_vars, combo))
            groups.append((label, str(comp)))
    text = [str(full), ""] + [f"{label} => {g}" for label, g in groups]
    return EXIT_OK, {"expansion": str(full), "groups": [{"degrees": a, "polynomial": g} for a, g in groups]}, text


def _weak_compositions(total, parts):
    """Tuples of ``parts`` nonnegative ints summing to ``total``, descending lexicographic."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _weak_compositions(total - first, parts - 1):
            yield (first,) + rest


def _cmd_estimate(args, f, field):
    specs, tuples = cost_estimate(f, args.n, args.p_power_filter)
    return EXIT_OK, {"specs": specs, "tuples": tuples}, [f"specs: {specs}", f"tuples: {tuples}"]


def _check_report(res):
    lines = [f"holds: {str(res.holds).lower()}", f"specs checked: {res.specs_checked}",
             f"evaluations: {res.evaluations}"]
    if res.witness is not None:
        lines += ["witness:"] + _witness_lines(res.witness)
    return (EXIT_OK if res.holds else EXIT_REFUTED), res.to_dict(), lines


def _cmd_verify(args, f, field):
    kw = dict(budget=args.budget, workers=args.workers)
    if args.mode == "identity":
        return _check_report(is_identity_lemma1(f, args.n, field, args.p_power_filter, **kw))
    if args.mode == "bruteforce":
        return _check_report(is_identity_bruteforce(f, args.n, field, **kw))
    if args.mode == "sampled":
        return _check_report(is_identity_sampled(f, args.n, field, args.trials, args.seed, args.workers))
    if args.mode == "split":
        results = theorem2_identity_split(f, args.n, args.p_power_filter, args.budget)
        code = EXIT_OK if all(results) else EXIT_REFUTED
        return code, {"components": results}, ["components: " + " ".join(str(r).lower() for r in results)]
    verdict = classify_central(f, args.n, field, args.p_power_filter, samples=args.samples, seed=args.seed, **kw)
    lines = [f"status: {verdict.status}"]
    if verdict.commutator_check is not None:
        lines.append(f"commutator identity: {str(verdict.commutator_check.holds).lower()}")
    for k, w in enumerate(verdict.certificates):
        lines += [f"certificate {k + 1} ({w.kind}):"] + _witness_lines(w)
    code = EXIT_OK if verdict.status == Status.CENTRAL else EXIT_REFUTED
    return code, verdict.to_dict(), lines


def _cmd_descend(args, f, field):
    try:
        c0, cert = descend(f, args.n, args.unsafe_skip_input_check, args.p_power_filter, args.budget,
                           args.samples, args.seed, args.workers)
    except InputNotCentral as exc:
        data = {"error": str(exc), "input_verdict": exc.verdict.to_dict() if exc.verdict else None}
        return EXIT_REFUTED, data, [f"input not central: {exc}"]
    lines = [str(c0), f"selected component: {cert.eta} (index {cert.chosen_index})"]
    for r in cert.components:
        lines.append(f"  {r.eta}: {r.status}: {r.component}")
    lines += ["witness:"] + _witness_lines(cert.nonzero_witness)
    return EXIT_OK, {"polynomial": str(c0), "certificate": cert.to_dict()}, lines


COMMANDS = {
    "linearize": _cmd_linearize,
    "expand": _cmd_expand,
    "estimate": _cmd_estimate,
    "verify": _cmd_verify,
    "descend": _cmd_descend,
}


def run(args, out=None):
    """Execute parsed ``args``; returns the exit status and writes the report to ``out``."""
    out = out or sys.stdout
    t0 = time.perf_counter()
    try:
        field = parse_field(args.field)
        f = _read_poly(args, field)
        code, data, lines = COMMANDS[args.verb](args, f, field)
    except (CapExceeded, NoWitnessFound) as exc:
        print(f"budget: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, TypeError, UnboundVariable, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.json:
        report = {
            "schema": SCHEMA,
            "verb": args.verb,
            "invocation": _invocation(args),
            "exit_status": code,
            "result": data,
            "timing": {"wall_seconds": round(time.perf_counter() - t0, 6)},
        }
        out.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    else:
        out.write("\n".join(lines) + "\n")
    return code


def main(argv=None):
    args = build_parser().parse_args(argv)
    return run(args)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
