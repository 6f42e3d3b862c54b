"""Command-line front end.

Exit codes: 0 success, 1 mathematical failure (failed invariant, PSD
violation, recursion breakdown, divergence), 2 bad input or usage.
"""
from __future__ import annotations

import argparse
import json
import sys
import warnings
from pathlib import Path

from .errors import DomainError, InvalidParameterError, OutsideDiskWarning, RecursionBreakdownError, TreeHardyError
from .hardy import HardySeries, blaschke, point_eval
from .kalgebra import KElement
from .schur import InterpolationProblem, gram, interpolate, is_psd
from .verify import RunConfig, report

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _dump(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _emit(doc, out: str | None):
    text = _dump(doc)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _parse(fn, doc, what: str):
    try:
        return fn(doc)
    except (InvalidParameterError, TypeError, ValueError, KeyError) as exc:
        raise InputError(f"malformed {what}: {exc}") from exc


def _config(args) -> RunConfig:
    try:
        return RunConfig(q=args.q, depth=args.depth, degree=args.degree, tol=args.tol, tol_eig=args.tol_eig,
                         inv_threshold=args.inv_threshold, seed=args.seed, out=args.out)
    except InvalidParameterError as exc:
        raise InputError(str(exc)) from exc


def cmd_verify(args) -> int:
    cfg = _config(args)
    rep = report(cfg)
    for r in rep["records"]:
        status = "PASS" if r["passed"] else "FAIL"
        print(f"{status} {r['name']:<28} {r['max_residual']:.3e} <= {r['threshold']:.0e}  {r['identity']}",
              file=sys.stderr)
    _emit(rep, cfg.out)
    return EXIT_OK if rep["passed"] else EXIT_FAIL


def cmd_eval(args) -> int:
    cfg = _config(args)
    S = _parse(HardySeries.from_doc, _load(args.series), "series document")
    c = _parse(KElement.from_doc, _load(args.point), "point document")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", OutsideDiskWarning)
        value = point_eval(S, c)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    _emit({"value": value.to_doc(), "in_disk": c.in_disk()}, cfg.out)
    return EXIT_OK


def cmd_blaschke(args) -> int:
    cfg = _config(args)
    a = _parse(KElement.from_doc, _load(args.point), "point document")
    bl = blaschke(a, cfg.tol, cfg.inv_threshold)
    _emit({"coeffs": bl.series.to_doc()["coeffs"], "L": bl.L.to_doc(), "Kaa": bl.Kaa.to_doc()}, cfg.out)
    return EXIT_OK


def _points_doc(doc):
    if not isinstance(doc, dict) or not isinstance(doc.get("points"), list):
        raise InvalidParameterError("points document needs a 'points' list")
    pts = [KElement.from_doc(p) for p in doc["points"]]
    if "vectors" in doc:
        vecs = [KElement.from_doc(v) for v in doc["vectors"]]
    else:
        vecs = [KElement([1.0]) for _ in pts]
    return pts, vecs


def cmd_schur(args) -> int:
    cfg = _config(args)
    S = _parse(HardySeries.from_doc, _load(args.series), "series document")
    pts, vecs = _parse(_points_doc, _load(args.points), "points document")
    try:
        G = gram(S, pts, vecs, cfg.tol)
    except InvalidParameterError as exc:
        raise InputError(str(exc)) from exc
    rep = is_psd(G, cfg.tol_eig)
    _emit(rep.to_doc(), cfg.out)
    return EXIT_OK if rep.psd else EXIT_FAIL


def cmd_interp(args) -> int:
    cfg = _config(args)
    doc = _load(args.problem)
    if isinstance(doc, dict):
        doc = {"tol": cfg.tol, "inv_threshold": cfg.inv_threshold, **doc}
    problem = _parse(InterpolationProblem.from_doc, doc, "problem document")
    try:
        sol = interpolate(problem)
    except RecursionBreakdownError as exc:
        _emit({"breakdown": True, "index": exc.index, "message": str(exc)}, cfg.out)
        return EXIT_FAIL
    _emit(sol.to_doc(), cfg.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=int, default=2, help="branching order of the tree")
    common.add_argument("--depth", type=int, default=5, help="truncation depth")
    common.add_argument("--degree", type=int, default=3, help="series degree cap")
    common.add_argument("--tol", type=float, default=1e-12)
    common.add_argument("--tol-eig", type=float, default=1e-8)
    common.add_argument("--inv-threshold", type=float, default=1e-9)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", default=None, help="write the JSON document here instead of stdout")

    p = argparse.ArgumentParser(prog="treehardy", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    sp = sub.add_parser("verify", parents=[common], help="run every invariant suite")
    sp.set_defaults(fn=cmd_verify)
    sp = sub.add_parser("eval", parents=[common], help="evaluate a series at a point")
    sp.add_argument("series")
    sp.add_argument("point")
    sp.set_defaults(fn=cmd_eval)
    sp = sub.add_parser("blaschke", parents=[common], help="Blaschke factor at a point")
    sp.add_argument("point")
    sp.set_defaults(fn=cmd_blaschke)
    sp = sub.add_parser("schur", parents=[common], help="kernel positivity check")
    sp.add_argument("series")
    sp.add_argument("points")
    sp.set_defaults(fn=cmd_schur)
    sp = sub.add_parser("interp", parents=[common], help="homogeneous interpolation")
    sp.add_argument("problem")
    sp.set_defaults(fn=cmd_interp)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (InputError, InvalidParameterError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except TreeHardyError as exc:
        print(f"failure: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
