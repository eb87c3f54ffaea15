"""Command-line surface: validate documents, run single operations, run the
certification suite, and re-render reports.

Exit codes: 0 pass, 1 falsified or validation failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import comodcontra as cc
from . import functors as fn
from . import interchange
from . import mockproj as mp
from . import suite as suite_mod
from .certify import ValidationError, canonical_json
from .exactlin import LinearMap, ShapeError
from .hopf import dual_algebra, grouplike_elements, validate_hopf

EXIT_OK = 0
EXIT_FALSIFIED = 1
EXIT_INPUT = 2


def _emit(doc, fmt, out=None):
    text = interchange.canonical_dumps(doc) if fmt == "json" else _render_text(doc)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _render_text(doc):
    lines = []
    if doc.get("format") == "contramod-report/1":
        for c in doc["checks"]:
            mark = "PASS" if c.get("ok") else ("SKIP" if c.get("skipped") else "FAIL")
            secs = f" [{c['seconds']}s]" if "seconds" in c else ""
            lines.append(f"{mark} {c['check']}: {c['statement']}{secs}")
            for r in c.get("records", []):
                if not r["ok"]:
                    lines.append(f"     FALSIFIED {r['instance']}")
        s = doc["summary"]
        lines.append(f"{s['pass']}/{s['total']} checks passed")
    else:
        lines.append(canonical_json(doc))
    return "\n".join(lines) + "\n"


def cmd_validate(args):
    try:
        bundle = interchange.load_path(args.path)
    except interchange.InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ShapeError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    failures = []
    results = []
    for name, desc in bundle.schemes.items():
        cert = desc.validate()
        results.append({"object": name, "ok": cert.ok,
                        "failed": [c.label for c in cert.failures()]})
        if not cert.ok:
            failures.append(name)
    from .hopf import validate_coalgebra_morphism

    for name, mor in bundle.morphisms.items():
        cert = validate_coalgebra_morphism(mor)
        results.append({"object": f"morphism {name}", "ok": cert.ok,
                        "failed": [c.label for c in cert.failures()]})
        if not cert.ok:
            failures.append(name)
    for name, m in bundle.comodules.items():
        cert = cc.validate_comodule(m)
        results.append({"object": f"comodule {name}", "ok": cert.ok,
                        "failed": [c.label for c in cert.failures()]})
        if not cert.ok:
            failures.append(name)
    for name, b in bundle.contramodules.items():
        cert = cc.validate_contramodule(b)
        results.append({"object": f"contramodule {name}", "ok": cert.ok,
                        "failed": [c.label for c in cert.failures()]})
        if not cert.ok:
            failures.append(name)
    doc = {"validated": results, "ok": not failures}
    if args.format == "json":
        _emit(doc, "json")
    else:
        for r in results:
            mark = "PASS" if r["ok"] else "FAIL"
            extra = f" ({', '.join(r['failed'])})" if r["failed"] else ""
            print(f"{mark} {r['object']}{extra}")
    return EXIT_OK if not failures else EXIT_FALSIFIED


def _resolve_module(desc, spec_str, rng):
    if spec_str == "trivial":
        return cc.trivial_contramodule(desc.hopf)
    if spec_str == "regular":
        return cc.dualize_comodule(cc.regular_comodule(desc.coalgebra), 1)
    if spec_str.startswith("free:"):
        return cc.free_contramodule(desc.coalgebra, int(spec_str.split(":", 1)[1]))
    if spec_str == "free":
        return cc.free_contramodule(desc.coalgebra, 1)
    if spec_str == "random":
        return cc.random_contramodule(desc.coalgebra, rng)
    raise interchange.InputError(
        f"unknown module spec {spec_str!r} (use trivial|regular|free[:r]|random)")


def cmd_op(args):
    rng = np.random.default_rng(args.seed)
    try:
        name = args.op
        if name == "free":
            desc = suite_mod.builtin_instance(args.instance)
            b = cc.free_contramodule(desc.coalgebra, args.rank)
            doc = interchange.encode_document(desc, contramodules=[b])
        elif name == "induce":
            tower = mp.build_tower(args.p, args.r)
            b = _resolve_module(tower.finite_subgroup, args.module, rng)
            ind = fn.induce(tower.subgroup_map, b)
            doc = interchange.encode_document(
                tower.ambient, auxiliary=[tower.finite_subgroup],
                morphisms=[tower.subgroup_map], contramodules=[ind.result])
        elif name == "is-projective":
            desc = suite_mod.builtin_instance(args.instance)
            b = _resolve_module(desc, args.module, rng)
            cert = cc.is_projective_contramodule(b)
            doc = {"instance": args.instance, "module": args.module,
                   "dim": b.dim, **cert.summary()}
        elif name == "weights":
            desc = suite_mod.builtin_instance(args.instance)
            b = _resolve_module(desc, args.module, rng)
            from .hopf import CoalgebraMorphism

            ident = CoalgebraMorphism(desc.coalgebra, desc.coalgebra,
                                      LinearMap.identity(desc.p, desc.dim), name="id")
            wd = fn.weight_decompose(b, ident)
            doc = {"instance": args.instance, "module": args.module,
                   "weights": [[int(x) for x in lam] for lam, _ in wd.spaces],
                   "dims": wd.dims(), "defect": wd.defect}
        elif name == "grouplikes":
            desc = suite_mod.builtin_instance(args.instance)
            gl = grouplike_elements(desc.coalgebra)
            doc = {"instance": args.instance,
                   "grouplikes": [[int(x) for x in g] for g in gl]}
        elif name == "dual":
            desc = suite_mod.builtin_instance(args.instance)
            a = dual_algebra(desc.coalgebra)
            from . import repthy

            rad = repthy.radical(a)
            doc = {"instance": args.instance, "dim": a.dim,
                   "radical_dim": int(rad.shape[0]),
                   "semisimple": rad.shape[0] == 0}
        else:
            print(f"unknown operation {name!r}", file=sys.stderr)
            return EXIT_INPUT
    except (interchange.InputError, KeyError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValidationError as exc:
        print(f"falsified: {exc}", file=sys.stderr)
        return EXIT_FALSIFIED
    _emit(doc, "json", args.out)
    return EXIT_OK


def cmd_suite(args):
    manifest = None
    if args.manifest:
        try:
            with open(args.manifest, "r", encoding="utf-8") as fh:
                manifest = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            print(f"input error: {exc}", file=sys.stderr)
            return EXIT_INPUT
    else:
        manifest = suite_mod.default_manifest(seed=args.seed if args.seed is not None else 0)
    if args.checks:
        manifest["checks"] = args.checks.split(",")
    if args.seed is not None:
        manifest["seed"] = args.seed
    try:
        report = suite_mod.run_suite(manifest, jobs=args.jobs,
                                     with_timings=args.timings,
                                     budget_seconds=args.budget_seconds)
    except interchange.InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    _emit(report, args.format, args.out)
    return EXIT_OK if report["summary"]["fail"] == 0 else EXIT_FALSIFIED


def cmd_report(args):
    try:
        with open(args.path, "r", encoding="utf-8") as fh:
            report = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if report.get("format") != "contramod-report/1":
        print("input error: not a report document", file=sys.stderr)
        return EXIT_INPUT
    recount = sum(1 for c in report.get("checks", []) if c.get("ok"))
    total = len(report.get("checks", []))
    consistent = (report.get("summary", {}).get("pass") == recount
                  and report.get("summary", {}).get("total") == total)
    if not consistent:
        print("falsified: summary does not match records", file=sys.stderr)
        return EXIT_FALSIFIED
    _emit(report, args.format)
    return EXIT_OK if report["summary"]["fail"] == 0 else EXIT_FALSIFIED


def build_parser():
    parser = argparse.ArgumentParser(
        prog="contramod",
        description="exact certification workbench for contramodules over "
                    "finite-dimensional Hopf algebras")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument("--format", choices=("json", "text"), default="text")
    parser.add_argument("--budget-seconds", type=float, default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="validate a document against all axioms")
    v.add_argument("path")

    o = sub.add_parser("op", help="run a single operation on builtin instances")
    o.add_argument("op", choices=["free", "induce", "is-projective", "weights",
                                  "grouplikes", "dual"])
    o.add_argument("--instance", default="z2_p2")
    o.add_argument("--module", default="trivial")
    o.add_argument("--rank", type=int, default=1)
    o.add_argument("--p", type=int, default=2)
    o.add_argument("--r", type=int, default=1)
    o.add_argument("--out", default=None)

    s = sub.add_parser("suite", help="run the certification suite")
    s.add_argument("--manifest", default=None)
    s.add_argument("--checks", default=None,
                   help="comma-separated subset of check ids")
    s.add_argument("--out", default=None)
    s.add_argument("--timings", action="store_true",
                   help="include wall-clock numbers (reports are then not "
                        "byte-reproducible)")

    r = sub.add_parser("report", help="verify and re-render a saved report")
    r.add_argument("path")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.seed is None and args.command != "suite":
        args.seed = 0
    handlers = {"validate": cmd_validate, "op": cmd_op,
                "suite": cmd_suite, "report": cmd_report}
    return handlers[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
