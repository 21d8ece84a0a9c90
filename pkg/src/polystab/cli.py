"""Command-line front end: instance I/O, analysis commands, verify suites.

Exit codes: 0 region claim holds (or nothing to decide), 1 violated,
2 inconclusive, 64 usage error, 65 bad input data.
"""

import argparse
import hashlib
import json
import sys
import time

import numpy as np

from . import __version__
from .families import FAMILY_TAGS, make_family
from .hyperstab import hyper_survey
from .matpoly import (IrregularPolynomialError, eigenvalues, instance_from_dict,
                      instance_to_dict, numerical_range_sample, szasz_bound,
                      MatrixPolynomial)
from .polarization import polarize
from .regions import DEFAULT_BOUNDARY_TOL, Region, parse_region
from .verdict import Verdict
from .verify import SUITES, run_suites
from . import linalg

EXIT_HOLDS = 0
EXIT_VIOLATED = 1
EXIT_INCONCLUSIVE = 2
EXIT_USAGE = 64
EXIT_DATA = 65


class CliError(Exception):
    def __init__(self, message, code=EXIT_DATA):
        super().__init__(message)
        self.code = code


def _fmt_complex(z):
    z = complex(z)
    return f"{z.real:.10g}{z.imag:+.10g}i"


def _load_instance(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CliError(f"malformed JSON in {path}: {exc}") from exc
    try:
        inst = instance_from_dict(data)
    except (KeyError, ValueError, TypeError) as exc:
        raise CliError(f"bad instance in {path}: {exc}") from exc
    digest = hashlib.sha256(
        json.dumps(data, sort_keys=True).encode()).hexdigest()[:16]
    return inst, digest


def _report(args, command, digest, body, exit_code):
    out = {"command": command, "input_digest": digest, "seed": args.seed,
           "version": __version__, **body}
    if args.format == "json":
        print(json.dumps(out, indent=2, default=str))
    return exit_code


def cmd_eig(args):
    inst, digest = _load_instance(args.file)
    if not isinstance(inst, MatrixPolynomial):
        raise CliError("eig needs a univariate instance")
    t0 = time.perf_counter()
    report = eigenvalues(inst)
    body = {"regular": report.regular,
            "drop_in_degree": report.drop_in_degree,
            "eigenvalues": [_fmt_complex(z) for z in report.eigenvalues]}
    code = EXIT_HOLDS
    if args.format == "text":
        if report.regular:
            evs = ", ".join(body["eigenvalues"]) or "(no finite eigenvalues)"
            print(f"regular, degree drop {report.drop_in_degree}, "
                  f"eigenvalues: {evs}")
        else:
            print("irregular: determinant is identically zero")
    if not report.regular:
        body["verdict"] = "inconclusive"
        code = EXIT_INCONCLUSIVE
    elif args.region:
        region = parse_region(args.region)
        hits = [z for z in report.eigenvalues
                if region.includes(z, args.tol)]
        if hits:
            body["verdict"] = "violated"
            body["witness"] = _fmt_complex(hits[0])
            code = EXIT_VIOLATED
            if args.format == "text":
                print(f"violated: eigenvalue {body['witness']} in region")
        else:
            body["verdict"] = "holds"
            if args.format == "text":
                print("holds: no eigenvalue in region")
    body["elapsed_s"] = round(time.perf_counter() - t0, 4)
    return _report(args, "eig", digest, body, code)


def cmd_hyper(args):
    inst, digest = _load_instance(args.file)
    if not isinstance(inst, MatrixPolynomial):
        raise CliError("hyper needs a univariate instance")
    region = parse_region(args.region)
    t0 = time.perf_counter()
    survey = hyper_survey(inst, region, nx=args.nx, budget=args.budget,
                          seed=args.seed, tol=args.tol)
    rows = []
    for cert in survey.certificates:
        rows.append({"x": [_fmt_complex(v) for v in cert.x],
                     "y": [_fmt_complex(v) for v in cert.y],
                     "strategy": cert.strategy,
                     "roots": [_fmt_complex(r) for r in cert.roots]
                     if cert.roots is not None else []})
    fails = [{"x": [_fmt_complex(v) for v in f.x],
              "diagnostics": f.diagnostics} for f in survey.failures]
    body = {"verdict": survey.verdict, "sampled": survey.sampled,
            "certificates": rows, "failures": fails,
            "elapsed_s": round(time.perf_counter() - t0, 4)}
    if args.format == "text":
        print(f"verdict: {survey.verdict} ({len(rows)} certified, "
              f"{len(fails)} failed of {survey.sampled})")
        for r in rows:
            print(f"  x={r['x']} -> y={r['y']} [{r['strategy']}] "
                  f"roots {r['roots']}")
        for f in fails:
            print(f"  x={f['x']} FAILED: {'; '.join(f['diagnostics'])}")
    code = {"all-certified": EXIT_HOLDS,
            "counterexample-candidate": EXIT_VIOLATED,
            "inconclusive": EXIT_INCONCLUSIVE}[survey.verdict]
    return _report(args, "hyper", digest, body, code)


def cmd_polarize(args):
    inst, digest = _load_instance(args.file)
    if not isinstance(inst, MatrixPolynomial):
        raise CliError("polarize needs a univariate instance")
    try:
        lifted = polarize(inst, args.kappa)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    payload = instance_to_dict(lifted.result)
    if args.format == "text":
        print(json.dumps(payload, indent=2))
        return EXIT_HOLDS
    return _report(args, "polarize", digest, {"result": payload}, EXIT_HOLDS)


def cmd_numrange(args):
    inst, digest = _load_instance(args.file)
    sample = numerical_range_sample(inst, args.count, args.seed)
    lines = ["re,im"]
    lines += [f"{z.real:.16g},{z.imag:.16g}" for z in sample.points]
    if args.format == "text":
        print("\n".join(lines))
        return EXIT_HOLDS
    return _report(args, "numrange", digest,
                   {"csv": "\n".join(lines)}, EXIT_HOLDS)


def cmd_szasz(args):
    inst, digest = _load_instance(args.file)
    lines = ["re,im,norm,bound"]
    worst = 0.0
    for u in np.linspace(-args.extent, args.extent, args.grid):
        for v in np.linspace(-args.extent, args.extent, args.grid):
            z = complex(u, v)
            try:
                bound = szasz_bound(inst, z)
            except ValueError as exc:
                raise CliError(str(exc)) from exc
            norm = linalg.spectral_norm(inst.eval(z))
            worst = max(worst, norm / bound)
            lines.append(f"{u:.16g},{v:.16g},{norm:.16g},{bound:.16g}")
    if args.format == "text":
        print("\n".join(lines))
        return EXIT_HOLDS
    return _report(args, "szasz", digest,
                   {"csv": "\n".join(lines),
                    "worst_ratio": worst}, EXIT_HOLDS)


def cmd_gen(args):
    params = {}
    for item in args.param or []:
        key, _, val = item.partition("=")
        if not val:
            raise CliError(f"bad --param {item!r}, expected key=value",
                           EXIT_USAGE)
        params[key] = float(val)
    try:
        fam = make_family(args.tag, n=args.n, seed=args.seed, **params)
    except (ValueError, KeyError) as exc:
        raise CliError(str(exc)) from exc
    payload = {"instance": instance_to_dict(fam.poly),
               "meta": {"tag": fam.tag, "params": fam.params,
                        "claim": fam.claim,
                        "expected_region": fam.region.to_dict()}}
    print(json.dumps(payload, indent=2))
    return EXIT_HOLDS


def cmd_verify(args):
    names = [args.suite] if args.suite else None
    try:
        results = run_suites(names, seed=args.seed, threads=args.threads)
    except KeyError as exc:
        raise CliError(str(exc), EXIT_USAGE) from exc
    if args.format == "json":
        print(json.dumps([r.to_dict() for r in results], indent=2))
    else:
        for r in results:
            for c in r.checks:
                mark = "PASS" if c.passed else "FAIL"
                detail = f" ({c.detail})" if c.detail else ""
                print(f"[{mark}] {r.name}: {c.label}{detail}")
            print(f"       {r.name} finished in {r.elapsed:.2f} s")
    return EXIT_HOLDS if all(r.passed for r in results) else EXIT_VIOLATED


def build_parser():
    parser = argparse.ArgumentParser(
        prog="polystab",
        description="stability and hyperstability of matrix polynomials")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, region=False, region_required=False):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", choices=("json", "text"), default="text")
        p.add_argument("--tol", type=float, default=DEFAULT_BOUNDARY_TOL)
        p.add_argument("--threads", type=int, default=1)
        if region:
            p.add_argument("--region", required=region_required,
                           help="e.g. disc:c=0+0i,r=1,closed or halfplane:phi=1.5708,open")

    p = sub.add_parser("eig", help="eigenvalues and optional region verdict")
    p.add_argument("file")
    common(p, region=True)
    p.set_defaults(fn=cmd_eig)

    p = sub.add_parser("hyper", help="hyperstability certificate survey")
    p.add_argument("file")
    common(p, region=True, region_required=True)
    p.add_argument("--nx", type=int, default=8)
    p.add_argument("--budget", type=int, default=64)
    p.set_defaults(fn=cmd_hyper)

    p = sub.add_parser("polarize", help="emit the polarization as JSON")
    p.add_argument("file")
    p.add_argument("--kappa", type=int, required=True)
    common(p)
    p.set_defaults(fn=cmd_polarize)

    p = sub.add_parser("numrange", help="numerical range point cloud (CSV)")
    p.add_argument("file")
    p.add_argument("--count", "--samples", dest="count", type=int, default=200)
    common(p)
    p.set_defaults(fn=cmd_numrange)

    p = sub.add_parser("szasz", help="norm bound grid (CSV)")
    p.add_argument("file")
    p.add_argument("--grid", type=int, default=10)
    p.add_argument("--extent", type=float, default=5.0)
    common(p)
    p.set_defaults(fn=cmd_szasz)

    p = sub.add_parser("gen", help="generate a structured family instance")
    p.add_argument("tag", choices=FAMILY_TAGS)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--param", action="append",
                   help="family parameter as key=value (repeatable)")
    common(p)
    p.set_defaults(fn=cmd_gen)

    p = sub.add_parser("verify", help="run reproduction suites")
    p.add_argument("suite", nargs="?", choices=list(SUITES))
    common(p)
    p.set_defaults(fn=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; remap into the 64+ band
        if exc.code not in (0, None):
            raise SystemExit(EXIT_USAGE) from exc
        raise
    try:
        return args.fn(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except IrregularPolynomialError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE


if __name__ == "__main__":
    sys.exit(main())
