"""Command-line front end.

Subcommands compute dimensions of fat-point systems, run the reproduction
suites, classify self-maps by fiber census, and exercise the degeneration
checks. Exit status: 0 when every reported check passes, 1 when any fails,
2 on usage or spec-language errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict

from ._version import __version__
from .census import (
    DEFAULT_BUDGET,
    fiber_census,
    identifiability_verdict,
    map_from_system,
)
from .collisions import collision1_check, indip_check, limit_multiplicity_check
from .ffield import DEFAULT_PRIMES
from .formulas import hs_sequences, verify_sequence_properties
from .grammar import SpecSemanticError, SpecSyntaxError, parse_spec
from .schemes import castelnuovo_split, dimension
from .suites import (
    csv_summary,
    json_report,
    load_manifest,
    run_ah_suite,
    run_suite,
    suite_names,
)


class UsageError(Exception):
    """Invocation problem that is neither a syntax nor a domain error."""


def _int_list(text: str) -> list[int]:
    return [int(x) for x in text.replace(",", " ").split()]


def _add_common(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--prime", type=int, action="append", dest="prime_list",
                    help="working prime; repeatable")
    sp.add_argument("--primes", type=_int_list, help="comma-separated primes")
    sp.add_argument("--seed", type=int, action="append", dest="seed_list",
                    help="sampling seed; repeatable")
    sp.add_argument("--seeds", type=_int_list, help="comma-separated seeds")
    sp.add_argument("--trials", type=int, default=3,
                    help="number of seeds 0..trials-1 when none given")
    sp.add_argument("--budget", type=float, default=DEFAULT_BUDGET,
                    help="op budget for censuses")
    sp.add_argument("--json", action="store_true", help="emit the JSON report")
    sp.add_argument("--csv", action="store_true", help="emit a CSV summary")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="fatpoints",
        description="dimensions, censuses and limits of fat-point linear systems",
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="cmd", required=True)

    sp = sub.add_parser("dim", help="computed vs expected dimension")
    sp.add_argument("spec", nargs="+", help='system string, e.g. "L(2,4;2^5)"')
    _add_common(sp)

    sp = sub.add_parser("ah", help="double-point speciality grid")
    sp.add_argument("--n-max", type=int, default=4)
    sp.add_argument("--d-max", type=int, default=6)
    sp.add_argument("--manifest", help="alternate manifest path")
    _add_common(sp)

    sp = sub.add_parser("seq", help="multiplicity count tables and their checks")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)
    _add_common(sp)

    sp = sub.add_parser("cremona", help="fiber census of the attached self-map")
    sp.add_argument("spec")
    _add_common(sp)

    sp = sub.add_parser("identif", help="uniqueness of generic power decompositions")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--no-census", action="store_true",
                    help="skip the corroborating censuses")
    _add_common(sp)

    sp = sub.add_parser("collide", help="point-collision experiments")
    sp.add_argument("--op", choices=["merge", "chords", "limit"], required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--d", type=int)
    sp.add_argument("--h", type=int)
    _add_common(sp)

    sp = sub.add_parser("castelnuovo", help="hyperplane restriction split")
    sp.add_argument("spec")
    _add_common(sp)

    sp = sub.add_parser("suite", help="run manifest suites")
    sp.add_argument("names", nargs="*", help=f"subset of {', '.join(suite_names())}")
    sp.add_argument("--manifest", help="alternate manifest path")
    _add_common(sp)

    return p


def _primes(args, default=(DEFAULT_PRIMES[0],)) -> tuple[int, ...]:
    chosen = args.primes or args.prime_list or list(default)
    return tuple(int(p) for p in chosen)


def _seeds(args) -> tuple[int, ...]:
    chosen = args.seeds or args.seed_list or list(range(args.trials))
    return tuple(int(s) for s in chosen)


def _check_prime_bounds(specs, primes) -> None:
    for spec in specs:
        mults = [pt.multiplicity for pt in spec.points]
        bound = max([spec.d] + mults)
        for p in primes:
            if p <= bound:
                raise UsageError(
                    f"prime {p} must exceed max(degree, multiplicities) = {bound}"
                )


def _cmd_dim(args, primes, seeds):
    specs = [parse_spec(s) for s in args.spec]
    _check_prime_bounds(specs, primes)
    cases = []
    lines = []
    for text, spec in zip(args.spec, specs):
        rep = dimension(spec, primes, seeds)
        cases.append({"spec": text, "result": rep.as_dict(), "passed": not rep.unstable})
        tag = " special" if rep.special else ""
        tag += " UNSTABLE" if rep.unstable else ""
        lines.append(
            f"{text}: virtual={rep.virtual} expected={rep.expected} "
            f"computed={rep.computed}{tag}"
        )
    return {
        "spec": args.spec[0],
        "result": cases[0]["result"],
        "cases": cases,
        "passed": all(c["passed"] for c in cases),
        "lines": lines,
    }


def _cmd_ah(args, primes, seeds):
    manifest = load_manifest(args.manifest) if args.manifest else None
    res = run_ah_suite(args.n_max, args.d_max, manifest=manifest)
    lines = [f"ah grid: {len(res.cases) - len(res.failures)}/{len(res.cases)} passed"]
    lines += [f"  FAIL {cid}" for cid in res.failures]
    return {
        "spec": None,
        "result": {"passed": res.passed, "failures": list(res.failures)},
        "cases": [c.as_dict() for c in res.cases],
        "passed": res.passed,
        "lines": lines,
        "csv": csv_summary(res),
        "primes": res.primes,
        "seeds": res.seeds,
    }


def _cmd_seq(args, primes, seeds):
    t = hs_sequences(args.n, args.d)
    props = verify_sequence_properties(t)
    lines = [f"k({args.n},{args.d}) = {t.k}", "  i    h    s    a"]
    for i in range(2, t.n + 1):
        a = t.a.get(i)
        lines.append(f"{i:3d} {t.h[i]:4d} {t.s[i]:4d} {a if a is not None else '':>5}")
    lines.append("properties: " + ", ".join(f"{k2}={v}" for k2, v in props.items()))
    return {
        "spec": None,
        "result": {"table": t.as_dict(), "properties": props},
        "cases": [],
        "passed": all(props.values()),
        "lines": lines,
    }


def _cmd_cremona(args, primes, seeds):
    spec = parse_spec(args.spec)
    _check_prime_bounds([spec], primes)
    cases = []
    lines = []
    for p in primes:
        m = map_from_system(spec, p, seeds[0])
        c = fiber_census(m, args.budget)
        cases.append({"prime": p, "result": c.as_dict(), "passed": c.verdict != "inconclusive"})
        lines.append(
            f"{args.spec} @ p={p}: verdict={c.verdict} "
            f"fraction_unique={c.fraction_unique:.6f} image={c.image_size} "
            f"base={c.base_points}"
        )
    verdicts = {c["result"]["verdict"] for c in cases}
    passed = all(c["passed"] for c in cases) and len(verdicts) == 1
    if len(verdicts) > 1:
        lines.append("PRIME DISAGREEMENT: " + ", ".join(sorted(verdicts)))
    return {
        "spec": args.spec,
        "result": cases[0]["result"],
        "cases": cases,
        "passed": passed,
        "lines": lines,
    }


def _cmd_identif(args, primes, seeds):
    v = identifiability_verdict(
        args.n, args.d, corroborate=not args.no_census, budget=args.budget
    )
    if v.status == "identifiable":
        corroborated = all(c.verdict == "birational" for c in v.censuses)
    elif v.status == "not-identifiable":
        corroborated = all(c.verdict != "birational" for c in v.censuses)
    else:
        corroborated = True
    tail = f", s = {v.s}" if v.s is not None else ""
    lines = [f"({args.n},{args.d}): {v.status}{tail}"]
    for c in v.censuses:
        lines.append(f"  census p={c.prime}: {c.verdict} "
                     f"(fraction_unique={c.fraction_unique:.6f})")
    return {
        "spec": None,
        "result": {**v.as_dict(), "corroborated": corroborated},
        "cases": [c.as_dict() for c in v.censuses],
        "passed": corroborated,
        "lines": lines,
    }


def _cmd_collide(args, primes, seeds):
    p = primes[0]
    if args.op == "merge":
        if args.d is None:
            raise UsageError("--op merge needs --d")
        rep = collision1_check(args.n, args.d, p, seeds[0])
        passed = rep.dims_equal and rep.degree_identity_ok
        line = (f"merge ({args.n},{args.d}): generic={rep.generic_dim} "
                f"limit={rep.limit_dim} equal={rep.dims_equal}")
    elif args.op == "chords":
        rep = indip_check(args.n, p, seeds[0])
        passed = rep.independent and rep.all_triples_collinear
        line = (f"chords n={args.n}: rank={rep.quadric_rank}/{rep.points} "
                f"collinear_triples={rep.all_triples_collinear}")
    else:
        if args.d is None or args.h is None:
            raise UsageError("--op limit needs --d and --h")
        rep = limit_multiplicity_check(args.n, args.d, args.h, p, seeds[0])
        passed = rep.deeper_point_dim <= rep.doubles_dim and (
            not rep.exact or rep.fat_point_dim == rep.doubles_dim
        )
        line = (f"limit ({args.n},{args.d},{args.h}): mu={rep.mu} "
                f"lengths {rep.double_length} vs {rep.point_length} -> {rep.summary}")
    return {
        "spec": None,
        "result": asdict(rep),
        "cases": [],
        "passed": passed,
        "lines": [line],
    }


def _cmd_castelnuovo(args, primes, seeds):
    spec = parse_spec(args.spec)
    _check_prime_bounds([spec], primes)
    kernel, trace = castelnuovo_split(spec)
    h0 = {}
    for name, s in (("system", spec), ("kernel", kernel), ("trace", trace)):
        h0[name] = dimension(s, primes, seeds).computed + 1
    passed = h0["system"] <= h0["kernel"] + h0["trace"]
    return {
        "spec": args.spec,
        "result": {
            "kernel": kernel.to_dict(),
            "trace": trace.to_dict(),
            "h0": h0,
            "subadditive": passed,
        },
        "cases": [],
        "passed": passed,
        "lines": [
            f"h0: system={h0['system']} kernel={h0['kernel']} trace={h0['trace']} "
            f"subadditive={passed}"
        ],
    }


def _cmd_suite(args, primes, seeds):
    manifest = load_manifest(args.manifest) if args.manifest else load_manifest()
    names = args.names or list(suite_names())
    bad = [nm for nm in names if nm not in suite_names()]
    if bad:
        raise UsageError(f"unknown suite(s): {', '.join(bad)}")
    results = []
    for nm in names:
        kwargs = {"budget": args.budget} if nm == "theorem2" else {}
        results.append(run_suite(nm, manifest=manifest, **kwargs))
    report = json_report(results)
    lines = []
    for res in results:
        ok = len(res.cases) - len(res.failures)
        lines.append(f"{res.name}: {ok}/{len(res.cases)} passed ({res.elapsed:.1f}s)")
        lines += [f"  FAIL {cid}" for cid in res.failures]
    cases = [c for res in report["suites"] for c in res["cases"]]
    return {
        "spec": None,
        "result": report,
        "cases": cases,
        "passed": report["passed"],
        "lines": lines,
        "csv": csv_summary(results),
    }


_COMMANDS = {
    "dim": _cmd_dim,
    "ah": _cmd_ah,
    "seq": _cmd_seq,
    "cremona": _cmd_cremona,
    "identif": _cmd_identif,
    "collide": _cmd_collide,
    "castelnuovo": _cmd_castelnuovo,
    "suite": _cmd_suite,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    primes = _primes(args)
    seeds = _seeds(args)
    t0 = time.perf_counter()
    try:
        out = _COMMANDS[args.cmd](args, primes, seeds)
    except (SpecSyntaxError, SpecSemanticError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        payload = {"tool_version": __version__, "subcommand": args.cmd,
                   "error": str(exc)}
        if args.json:
            print(json.dumps(payload, sort_keys=True, indent=2))
        else:
            print(f"error: {exc}", file=sys.stderr)
        return 1
    payload = {
        "tool_version": __version__,
        "subcommand": args.cmd,
        "spec": out.get("spec"),
        "primes": list(out.get("primes", primes)),
        "seeds": list(out.get("seeds", seeds)),
        "result": out["result"],
        "cases": out["cases"],
        "timings": {"total": round(time.perf_counter() - t0, 3)},
    }
    if args.json:
        print(json.dumps(payload, sort_keys=True, indent=2))
    elif args.csv and "csv" in out:
        print(out["csv"], end="")
    else:
        print("\n".join(out["lines"]))
    return 0 if out["passed"] else 1


if __name__ == "__main__":
    sys.exit(main())
