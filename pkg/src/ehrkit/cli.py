"""Command-line interface.

Exit codes: 0 when every applicable theorem holds, 2 when some applicable
theorem fails (the record is still printed), 1 on input or budget errors.
Machine-readable output goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from . import bounds, generators
from .analysis import StageError, analyze
from .errors import EhrkitError, InvalidInput
from .generators import derive_seed, random_polytope
from .polytope import LatticePolytope, polytope_from_json

EXIT_OK, EXIT_INPUT, EXIT_VIOLATION = 0, 1, 2


def _dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False)


def _read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InvalidInput(f"{path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _read_polytope(path) -> LatticePolytope:
    return polytope_from_json(_read_json(path))


def cmd_analyze(args) -> int:
    P = _read_polytope(args.file)
    rec = analyze(P, args.c_max, args.dilates)
    print(_dumps(rec.to_json()))
    return EXIT_VIOLATION if rec.violations else EXIT_OK


def cmd_verify(args) -> int:
    P = _read_polytope(args.file)
    rec = analyze(P, args.c_max, args.dilates, theorems=(args.theorem,))
    report = rec.reports[0]
    print(_dumps(report.to_json()))
    return EXIT_VIOLATION if report.violated else EXIT_OK


def cmd_gen(args) -> int:
    fam = args.family
    if fam == "unimodular-simplex":
        P = generators.unimodular_simplex(args.dim)
    elif fam == "cube":
        P = generators.cube(args.dim, args.lo, args.hi)
    elif fam == "standard-reflexive-simplex":
        P = generators.standard_reflexive_simplex(args.dim)
    elif fam == "reeve-simplex":
        P = generators.reeve_simplex(args.k)
    elif fam == "cyclic":
        P = generators.cyclic_polytope(args.n, args.dim)
    elif fam == "random":
        P = random_polytope(args.dim, args.coord_bound, args.n_points, args.seed)
    elif fam == "order-polytope":
        P = generators.order_polytope(generators.Poset.from_json(_read_json(args.poset)))
    elif fam == "dilate":
        P = generators.dilate(_read_polytope(args.file), args.factor)
    else:  # pragma: no cover - argparse restricts choices
        raise InvalidInput(f"unknown family {fam}")
    print(_dumps(P.to_json()))
    return EXIT_OK


def census_record(dim, coord_bound, n_points, seed, index, c_max) -> dict:
    item_seed = derive_seed(seed, index)
    P = random_polytope(dim, coord_bound, n_points, item_seed)
    rec = analyze(P, c_max)
    out = rec.to_json()
    out["index"] = index
    out["seed"] = item_seed
    out["violations"] = [r.theorem_id for r in rec.violations]
    return out


def _census_job(params):
    return census_record(*params)


def run_census(dim, coord_bound, count, seed, out_path, c_max=None, n_points=None, jobs=1,
               quarantine_path=None) -> dict:
    """Analyze ``count`` seeded random polytopes, one JSONL record each.

    Records are written in generation order. Records with a violated
    theorem are also copied to the quarantine file; a unimodality failure
    stops the run after its record is saved.
    """
    n_points = dim + 3 if n_points is None else n_points
    quarantine_path = quarantine_path or f"{out_path}.quarantine.jsonl"
    summary = {"generated": 0, "integrally_closed": 0, "reflexive": 0, "smooth": 0,
               "violations": 0}
    params = [(dim, coord_bound, n_points, seed, i, c_max) for i in range(count)]
    pool = ProcessPoolExecutor(jobs) if jobs > 1 else None
    results = pool.map(_census_job, params, chunksize=4) if pool else map(_census_job, params)
    try:
        with open(out_path, "a", encoding="utf-8") as out:
            for rec in results:
                out.write(_dumps(rec) + "\n")
                out.flush()
                flags = rec["flags"]
                summary["generated"] += 1
                summary["integrally_closed"] += flags["integrally_closed"]
                summary["reflexive"] += flags["reflexive"]
                summary["smooth"] += flags["smooth"]
                if rec["violations"]:
                    summary["violations"] += 1
                    with open(quarantine_path, "a", encoding="utf-8") as q:
                        q.write(_dumps(rec) + "\n")
                    if "unimodality" in rec["violations"]:
                        summary["aborted_at"] = rec["index"]
                        break
    finally:
        if pool:
            pool.shutdown(cancel_futures=True)
    return summary


def cmd_census(args) -> int:
    summary = run_census(args.dim, args.coord_bound, args.count, args.seed, args.out,
                         args.c_max, args.n_points, args.jobs, args.quarantine)
    print(_dumps(summary))
    return EXIT_VIOLATION if summary["violations"] else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ehrkit", description="Ehrhart data and lattice polytope checks")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--c-max", type=int, default=None,
                        help="test integral closedness up to this c (default max(2, d-1))")
        sp.add_argument("--dilates", type=int, default=None,
                        help="count lattice points of mP for m up to this (default d+2)")

    a = sub.add_parser("analyze", help="full analysis of a polytope file")
    a.add_argument("file")
    common(a)
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify", help="run a single theorem check")
    v.add_argument("file")
    v.add_argument("--theorem", required=True, choices=bounds.THEOREM_IDS)
    common(v)
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("gen", help="print a polytope of a named family")
    gs = g.add_subparsers(dest="family", required=True)
    for name in ("unimodular-simplex", "standard-reflexive-simplex"):
        gs.add_parser(name).add_argument("--dim", type=int, required=True)
    c = gs.add_parser("cube")
    c.add_argument("--dim", type=int, required=True)
    c.add_argument("--lo", type=int, default=0)
    c.add_argument("--hi", type=int, default=1)
    gs.add_parser("reeve-simplex").add_argument("--k", type=int, default=2)
    cy = gs.add_parser("cyclic")
    cy.add_argument("--n", type=int, required=True)
    cy.add_argument("--dim", type=int, required=True)
    r = gs.add_parser("random")
    r.add_argument("--dim", type=int, required=True)
    r.add_argument("--coord-bound", type=int, default=2)
    r.add_argument("--n-points", type=int, default=None)
    r.add_argument("--seed", type=int, default=0)
    gs.add_parser("order-polytope").add_argument("poset")
    dl = gs.add_parser("dilate")
    dl.add_argument("file")
    dl.add_argument("--factor", type=int, required=True)
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("census", help="analyze seeded random polytopes into JSONL")
    s.add_argument("--dim", type=int, required=True)
    s.add_argument("--coord-bound", type=int, default=2)
    s.add_argument("--count", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", required=True)
    s.add_argument("--c-max", type=int, default=None)
    s.add_argument("--n-points", type=int, default=None, help="points drawn per polytope (default d+3)")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--quarantine", default=None, help="violation file (default <out>.quarantine.jsonl)")
    s.set_defaults(func=cmd_census)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "family", None) == "random" and args.n_points is None:
        args.n_points = args.dim + 3
    try:
        return args.func(args)
    except StageError as exc:
        print(f"error: budget exceeded in stage {exc.stage}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except EhrkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
