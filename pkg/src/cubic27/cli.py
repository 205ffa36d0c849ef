"""Command-line front end: ``cubic27 <command> [options]``.

Every command prints one report.  Exit status is 0 on success, 1 when a
verification suite fails and 2 on bad input.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from .errors import Cubic27Error

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(message)


class _Usage(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="GF(2^1)", help='base field, e.g. "GF(2^2)"')
    common.add_argument("--out", choices=("json", "tsv"), default="json")
    common.add_argument("--threads", type=int, default=None, help="cap on numba worker threads")
    common.add_argument("--timing", action="store_true", help="record wall-clock seconds in the report")

    p = _Parser(prog="cubic27", description="Cubic surfaces over GF(2^k): lines, automorphisms, quadric models.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, helptext in (("lines", "the 27 lines and their labels"),
                           ("aut", "automorphism group over the base field"),
                           ("galois", "Frobenius action on the line classes"),
                           ("blowdown", "contract an order-5-invariant quintuple of lines")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("--cubic", required=True)
    s = sub.add_parser("iso", parents=[common], help="isomorphism test for two cubics")
    s.add_argument("--cubic", required=True)
    s.add_argument("--cubic2", required=True)
    for name, helptext in (("orbits", "classes of general-position 5-point orbits"),
                           ("blowup", "blow up an order-5 orbit on a quadric model")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("--model", choices=("split", "weil"), required=True)
    s = sub.add_parser("verify", parents=[common], help="run a named verification suite")
    s.add_argument("suite", help="suite id, or 'all'")
    s.add_argument("--extended", action="store_true", help="include long-running suites")
    return p


# --- formatting helpers ------------------------------------------------------------
def _mat(M, F) -> list[list[str]]:
    return [[F.literal(int(x)) for x in row] for row in np.asarray(M)]


def _vec(v, F) -> list[str]:
    return [F.literal(int(x)) for x in np.asarray(v)]


def _qpoint(p) -> list[list[str]]:
    F = p.model.work
    return [_vec(c, F) for c in p.coords]


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    return x


# --- commands ------------------------------------------------------------------------
def _parse(args, text):
    from .cubic import parse_cubic
    from .gf2k import parse_field

    return parse_cubic(text, parse_field(args.field))


def cmd_lines(args) -> dict:
    from .cubic import find_lines, is_smooth
    from .picweyl import class_names

    C = _parse(args, args.cubic)
    smooth = is_smooth(C)
    if not smooth:
        return {"smooth": False}
    S = find_lines(C)
    names = class_names()
    return {
        "smooth": True,
        "split_degree": S.m,
        "splitting_field": repr(S.ext),
        "line_count": len(S.plucker),
        "lines": [{"class": names[int(S.class_of_line[i])], "plucker": _vec(S.plucker[i], S.ext)}
                  for i in range(len(S.plucker))],
    }


def cmd_aut(args) -> dict:
    from .cubic.aut import automorphisms

    A = automorphisms(_parse(args, args.cubic))
    F = A.cubic.spec
    gens = [int(np.flatnonzero(np.all(A.perms == g, axis=1))[0]) for g in A.handle.gens]
    return {
        "aut_order": A.order,
        "aut_label": A.label,
        "generators": [_mat(A.matrices[i], F) for i in gens],
    }


def cmd_galois(args) -> dict:
    from .cubic import galois_image

    g = galois_image(_parse(args, args.cubic))
    return {"galois": {"order": g.order, "class": g.label, "fixed_lines": g.fixed_lines,
                       "perm": [int(x) for x in g.perm]}}


def cmd_iso(args) -> dict:
    from .cubic.aut import is_isomorphic

    C1, C2 = _parse(args, args.cubic), _parse(args, args.cubic2)
    T = is_isomorphic(C1, C2)
    if T is None:
        return {"status": "not isomorphic"}
    return {"status": "isomorphic", "witness": _mat(T.array(), C1.spec)}


def _model(args):
    from . import quadric
    from .gf2k import parse_field

    F = parse_field(args.field)
    return quadric.split(F) if args.model == "split" else quadric.weil(F)


def cmd_orbits(args) -> dict:
    from . import quadric

    model = _model(args)
    if model.kind == "split" and model.base.k % 2:
        return {"model": repr(model), "orbit_classes": 0, "reason": "no elements of order 5"}
    method = "full" if quadric.aut_order(model) <= quadric.AUT_CAP else "reduced"
    orbits = quadric.general_position_orbits_reduced(model)
    return {
        "model": repr(model),
        "method": method,
        "orbit_classes": quadric.count_orbit_classes(model, method),
        "example_orbit": [_qpoint(p) for p in orbits[0]] if orbits else None,
    }


def cmd_blowup(args) -> dict:
    from . import quadric
    from .construct import blowup_to_cubic, marked
    from .cubic import find_lines, format_cubic, is_smooth

    model = _model(args)
    for g in quadric.order5_reps(model):
        for orb in quadric.orbits_of_aut(g):
            if quadric.is_general_position(orb, model):
                C = blowup_to_cubic(marked(model, orb, g))
                smooth = is_smooth(C)
                return {
                    "model": repr(model),
                    "points": [_qpoint(p) for p in orb],
                    "cubic": format_cubic(C),
                    "smooth": smooth,
                    "line_count": len(find_lines(C).plucker) if smooth else None,
                }
    return {"model": repr(model), "cubic": None, "reason": "no general-position orbit"}


def cmd_blowdown(args) -> dict:
    from .construct import blowdown_data, order5_subgroup
    from .cubic.aut import automorphisms

    A = automorphisms(_parse(args, args.cubic))
    mq = blowdown_data(A.cubic, order5_subgroup(A))
    return {
        "model": repr(mq.model),
        "points": [_qpoint(p) for p in mq.pts],
        "action": [_mat(np.array(m), mq.model.work) for m in mq.action.mats],
        "action_swaps": mq.action.flip,
    }


def cmd_verify(args) -> dict:
    from .suites import ACCEPTANCE_ORDER, run_suite, SUITES

    if args.suite == "all":
        reports = [run_suite(s, args.extended) for s in ACCEPTANCE_ORDER]
        status = "fail" if any(r["status"] == "fail" for r in reports) else "pass"
        return {"suites": reports, "verdict": status}
    if args.suite not in SUITES:
        run_suite(args.suite)   # raises UnknownSuite
    r = run_suite(args.suite, args.extended)
    return {"suites": [r], "verdict": "fail" if r["status"] == "fail" else "pass"}


COMMANDS = {
    "lines": cmd_lines, "aut": cmd_aut, "galois": cmd_galois, "iso": cmd_iso,
    "orbits": cmd_orbits, "blowup": cmd_blowup, "blowdown": cmd_blowdown, "verify": cmd_verify,
}


def _set_threads(n):
    if n is None:
        return
    if n < 1:
        raise _Usage("--threads must be positive")
    try:
        import numba
    except ImportError:
        return
    numba.set_num_threads(min(n, numba.config.NUMBA_NUM_THREADS))


def _inputs(args) -> dict:
    keys = ("cubic", "cubic2", "model", "suite", "extended")
    return {k: getattr(args, k) for k in keys if getattr(args, k, None) is not None}


def run(argv=None) -> tuple[int, dict]:
    """Execute one command; returns (exit code, report)."""
    argv = list(sys.argv[1:] if argv is None else argv)
    report: dict = {"command": argv, "timing": None}
    try:
        args = build_parser().parse_args(argv)
    except _Usage as e:
        report.update(status="error", error=f"usage: {e}")
        return EXIT_INPUT, report
    report.update(field=args.field, inputs=_inputs(args))
    t0 = time.perf_counter()
    try:
        _set_threads(args.threads)
        results = COMMANDS[args.command](args)
    except _Usage as e:
        report.update(status="error", error=f"usage: {e}")
        return EXIT_INPUT, report
    except Cubic27Error as e:
        report.update(status="error", error=f"{type(e).__name__}: {e}")
        return EXIT_INPUT, report
    if args.timing:
        report["timing"] = round(time.perf_counter() - t0, 3)
    report["results"] = _jsonable(results)
    code = EXIT_OK
    if args.command == "verify" and results["verdict"] == "fail":
        code = EXIT_FAIL
    report["status"] = {EXIT_OK: "ok", EXIT_FAIL: "fail"}[code]
    report["out"] = args.out
    return code, report


def to_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2)


def to_tsv(report: dict) -> str:
    res = report.get("results", {})
    lines = []
    if "suites" in res:
        lines.append("suite\tcheck\tok\tcomputed\texpected")
        for s in res["suites"]:
            if not s["checks"]:
                lines.append(f"{s['suite']}\t-\t{s['status']}\t\t")
            for c in s["checks"]:
                lines.append("\t".join([s["suite"], c["name"], "pass" if c["ok"] else "fail",
                                        json.dumps(c["computed"], sort_keys=True),
                                        json.dumps(c["expected"], sort_keys=True)]))
    elif "lines" in res:
        lines.append("class\tplucker")
        for row in res["lines"]:
            lines.append(f"{row['class']}\t{' '.join(row['plucker'])}")
    else:
        lines.append("key\tvalue")
        for k in sorted(res):
            lines.append(f"{k}\t{json.dumps(res[k], sort_keys=True)}")
    for k in ("status", "error"):
        if k in report:
            lines.append(f"# {k}\t{report[k]}")
    return "\n".join(lines)


def main(argv=None) -> int:
    code, report = run(argv)
    fmt = report.pop("out", "json")
    sys.stdout.write((to_tsv(report) if fmt == "tsv" else to_json(report)) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
