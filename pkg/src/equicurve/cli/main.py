"""The ``equicurve`` command.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage or schema error,
3 an undecided check and no failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from .. import config
from ..arith import FieldTower, TowerError
from .jobs import JobError, VerificationJob, run_job, validate
from .report import Report
from .suite import SUITE

USAGE_ERROR = 2


def _global_flags():
    common = argparse.ArgumentParser(add_help=False)
    S = argparse.SUPPRESS
    common.add_argument("--field", metavar="TOWER_JSON", default=S, help="field tower descriptor file")
    common.add_argument("--report", metavar="PATH", default=S, help="also write the full report here")
    common.add_argument("--jobs", type=int, default=S, help="worker processes")
    common.add_argument("--seed", type=int, default=S, help="seed for randomized property checks only")
    common.add_argument("--mutate", default=S, help=argparse.SUPPRESS)
    return common


def build_parser():
    common = _global_flags()
    parser = argparse.ArgumentParser(prog="equicurve", parents=[common],
                                     description="Exact verification of symbol, form, curve and cover computations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("split", parents=[common], help="decide whether (f, g) splits over K(x)")
    p.add_argument("--f", required=True, help="polynomial: coefficient list or expression")
    p.add_argument("--g", required=True)
    p.add_argument("--expect", choices=["split", "notsplit"], help="fail unless the decision matches")
    p.add_argument("--emit-proof", metavar="PATH")

    p = sub.add_parser("invariant", parents=[common], help="trace form and invariants of an étale algebra")
    p.add_argument("--etale", required=True, metavar="FILE",
                   help='JSON {"poly": [...], "field": {...}}; coefficients may be expressions')

    p = sub.add_parser("compress", parents=[common], help="an equivariant compression and its check")
    p.add_argument("--group", required=True, help="dihedral, s4, a5 or klein")
    p.add_argument("--n", type=int)
    p.add_argument("--verify-only", action="store_true")

    p = sub.add_parser("build-curve", parents=[common], help="construct a curve with its action")
    p.add_argument("--kind", required=True, choices=["even-cyclic", "klein", "even-dihedral"])
    p.add_argument("--params", required=True, metavar="FILE")

    p = sub.add_parser("ramify", parents=[common], help="polynomial with prescribed ramification")
    p.add_argument("--spec", required=True, metavar="FILE")

    p = sub.add_parser("sm-cover", parents=[common], help="S_p cover with all cycle types of S_m")
    p.add_argument("--m", type=int, required=True)

    sub.add_parser("verify-paper", parents=[common], help="run the reproduction suite")
    return parser


def _load_json(path, what):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise JobError(f"cannot read {what} {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise JobError(f"{what} {path} is not valid JSON: {exc}") from exc


def _field_param(args):
    path = getattr(args, "field", None)
    if path is None:
        return None
    obj = _load_json(path, "field tower")
    try:
        FieldTower.from_json(obj)
    except TowerError as exc:
        raise JobError(f"malformed field tower {path}: {exc}") from exc
    return obj


def jobs_from_args(args):
    field = _field_param(args)
    with_field = {} if field is None else {"field": field}
    cmd = args.command
    if cmd == "split":
        params = {"f": args.f, "g": args.g, **with_field}
        if args.expect:
            params["expect"] = args.expect
        return [VerificationJob("split", "split", params)]
    if cmd == "invariant":
        doc = _load_json(args.etale, "étale algebra")
        if not isinstance(doc, dict):
            raise JobError("the étale algebra file must hold a JSON object")
        params = {**with_field, **doc}
        return [VerificationJob("invariant", "invariant", params)]
    if cmd == "compress":
        params = {"group": args.group, **with_field}
        if args.n is not None:
            params["n"] = args.n
        if args.verify_only:
            params["verify_only"] = True
        return [VerificationJob("compress", "compress", params)]
    if cmd == "build-curve":
        doc = _load_json(args.params, "curve parameters")
        if not isinstance(doc, dict):
            raise JobError("the curve parameter file must hold a JSON object")
        return [VerificationJob(f"build-curve-{args.kind}", "build-curve", {**with_field, **doc, "kind": args.kind})]
    if cmd == "ramify":
        doc = _load_json(args.spec, "ramification spec")
        if not isinstance(doc, dict):
            raise JobError("the ramification spec must hold a JSON object")
        return [VerificationJob("ramify", "ramify", doc)]
    if cmd == "sm-cover":
        return [VerificationJob(f"sm-cover-m{args.m}", "sm-cover", {"m": args.m})]
    return [VerificationJob(name, "paper-check", {"name": name}) for name, _ in SUITE]


def _run_in_worker(job, cfg):
    with config.using(cfg):
        return run_job(job)


def run_jobs(jobs, cfg, workers=1):
    """Entries in submission order."""
    for job in jobs:
        validate(job)
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_run_in_worker, jobs, [cfg] * len(jobs)))
    return [_run_in_worker(job, cfg) for job in jobs]


def make_report(entries, cfg):
    rep = Report(cfg.lines())
    for e in entries:
        rep.add(e)
    return rep


def verify_paper_suite(cfg=None, workers=1):
    cfg = cfg or config.active()
    jobs = [VerificationJob(name, "paper-check", {"name": name}) for name, _ in SUITE]
    return make_report(run_jobs(jobs, cfg, workers), cfg)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = config.active()
    overrides = {k: getattr(args, k) for k in ("seed", "mutate") if getattr(args, k, None) is not None}
    cfg = cfg.with_(**overrides)
    workers = getattr(args, "jobs", 1)
    if workers < 1:
        parser.error("--jobs must be at least 1")
    try:
        jobs = jobs_from_args(args)
        entries = run_jobs(jobs, cfg, workers)
    except JobError as exc:
        print(f"equicurve: error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    rep = make_report(entries, cfg)
    if args.command == "verify-paper":
        sys.stdout.write(rep.to_text())
    else:
        entry = entries[0]
        for line in entry.details:
            print(line)
        print(f"CHECK {entry.id} {entry.status}")
        if args.command == "split" and args.emit_proof:
            proof = next((d[len("PROOF "):] for d in entry.details if d.startswith("PROOF ")), None)
            with open(args.emit_proof, "w", encoding="utf-8") as fh:
                fh.write((proof or "{}") + "\n")
    report_path = getattr(args, "report", None)
    if report_path:
        with open(report_path, "w", encoding="utf-8") as fh:
            fh.write(rep.to_text())
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
