"""Command-line front end.

Every invocation prints one JSON report ``{command, status, payload,
duration}`` on stdout.  Exit codes: 0 pass, 1 fail, 2 usage or input
error, 3 unresolved (budget exhausted or nothing certified).
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from typing import List, Optional

from . import acceptance
from .bounds import (BoundsError, optimize_constants, theorem2_constants,
                     trivializable_bound)
from .diagram import (DiagramError, cube_knotted_projection, load, project,
                      resolutions, standard_plum_diagram, trivial_plum_diagram,
                      validate_diagram)
from .graph import GraphError, PlanarGraph, SpanningTree, build_plum_graph, spanning_tree
from .invariants import InvariantError, invariants_report, nontriviality_certificate
from .l1 import (DEFAULT_MAX_STATES, EXACT, L1Problem, min_l1, verify_subclaims,
                 verify_unknotting_number)
from .moves import move_set

PASS, FAIL, UNRESOLVED = "pass", "fail", "unresolved"
EXIT = {PASS: 0, FAIL: 1, UNRESOLVED: 3}


class UsageError(Exception):
    pass


def _read(path: Optional[str], flag: str) -> str:
    if not path:
        raise UsageError(f"{flag} is required")
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _plum_of(d, n: Optional[int]):
    """The P_{2n+1} the diagram is drawn over, or None."""
    if n is None:
        nv = len(d.graph.vertices)
        if nv < 8 or (nv - 4) % 4:
            return None
        n = (nv - 4) // 4
    P = build_plum_graph(n)
    same = [(e.id, e.tail, e.head) for e in d.graph.edges] == \
        [(e.id, e.tail, e.head) for e in P.graph.edges]
    return P if same else None


# ---------------------------------------------------------------------------
# subcommands: each returns (status, payload, errors)

def cmd_plum_gen(a):
    kind = a.kind
    if kind == "cube-projection":
        d = cube_knotted_projection()
    else:
        if a.n is None:
            raise UsageError("--n is required")
        d = {"standard": standard_plum_diagram, "trivial": trivial_plum_diagram,
             "projection": lambda n: project(standard_plum_diagram(n))}[kind](a.n)
    doc = d.to_dict()
    if a.file:
        with open(a.file, "w") as fh:
            fh.write(d.to_json())
    return PASS, {"kind": kind, "n": a.n, "crossings": len(d), "diagram": doc}, []


def cmd_diagram_validate(a):
    d = load(_read(a.file or a.diagram, "--file"))
    bad = validate_diagram(d)
    payload = {"violations": bad, "crossings": len(d),
               "projection": d.is_projection(),
               "components": d.graph.component_count()}
    return (FAIL if bad else PASS), payload, bad


def cmd_invariants(a):
    d = load(_read(a.diagram or a.file, "--diagram"))
    bad = validate_diagram(d)
    if bad:
        return FAIL, {"violations": bad}, bad
    payload = invariants_report(d, _plum_of(d, a.n))
    return PASS, payload, []


def cmd_moveset(a):
    if a.n is None:
        raise UsageError("--n is required")
    ms = move_set(a.n)
    payload = {"n": a.n, "vectors": [list(v) for v in ms.vectors],
               "labels": {k: list(v) for k, v in sorted(ms.labels.items())},
               "matchesClosedForm": ms.matches_closed_form(),
               "table": ms.table()}
    return PASS, payload, []


def _parse_target(text: str) -> List[int]:
    try:
        return [int(x) for x in text.replace(" ", "").strip("()[]").split(",") if x]
    except ValueError:
        raise UsageError(f"bad --target {text!r}") from None


def cmd_l1_solve(a):
    if a.target is None:
        raise UsageError("--target is required")
    try:
        gens = json.loads(_read(a.gens, "--gens"))
    except json.JSONDecodeError as exc:
        raise UsageError(f"--gens is not JSON: {exc}") from None
    if isinstance(gens, dict):
        gens = gens.get("vectors", gens.get("generators"))
    target = _parse_target(a.target)
    if a.dim is not None and a.dim != len(target):
        raise UsageError(f"--dim {a.dim} differs from the target length {len(target)}")
    try:
        prob = L1Problem(gens, target)
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    sol = min_l1(prob, max_cost=a.max_cost or 24,
                 max_states=a.max_states or DEFAULT_MAX_STATES)
    return (PASS if sol.status == EXACT else UNRESOLVED), sol.to_dict(), []


def cmd_verify_theorem1(a):
    if a.n is None:
        raise UsageError("--n is required")
    r = verify_unknotting_number(a.n, max_states=a.max_states or DEFAULT_MAX_STATES)
    if r["lowerStatus"] not in (EXACT, "skipped"):
        return UNRESOLVED, r, ["lower bound search exhausted its budget"]
    errs = []
    if r["lower"] is not None and r["lower"] != 2 * a.n:
        errs.append(f"lower bound {r['lower']} != {2 * a.n}")
    if not r["upperOk"]:
        errs.append("explicit sequence check failed")
    return (PASS if r["ok"] else FAIL), r, errs


def cmd_verify_subclaims(a):
    if a.n is None:
        raise UsageError("--n is required")
    r = verify_subclaims(a.n, max_states=a.max_states or DEFAULT_MAX_STATES)
    errs = [f"k={row['k']}: cost {row['cost']}, values {row['values']}"
            for row in r["rows"] if not row["ok"]]
    if any(row["status"] != EXACT for row in r["rows"]):
        return UNRESOLVED, r, errs
    return (PASS if r["ok"] else FAIL), r, errs


def cmd_projection_analyze(a):
    p = load(_read(a.file or a.diagram, "--file"))
    bad = validate_diagram(p)
    if bad:
        return FAIL, {"violations": bad}, bad
    rows = []
    for i, d in enumerate(resolutions(p)):
        cert = nontriviality_certificate(d, p.graph)
        rows.append({"resolution": i, "verdict": cert.verdict,
                     "hopfLinks": cert.hopf_count,
                     "witnesses": [w.to_dict() for w in cert.witnesses]})
    knotted = all(r["verdict"] == "nontrivial" for r in rows)
    payload = {"resolutions": len(rows), "knottedCertified": knotted,
               "hopfCounts": [r["hopfLinks"] for r in rows], "rows": rows}
    return (PASS if knotted else UNRESOLVED), payload, []


def cmd_bounds(a):
    if a.action == "eval":
        if a.c is None:
            raise UsageError("bounds eval needs --c")
        if a.c < 0:
            raise UsageError("--c must be nonnegative")
        payload = {"c": a.c, "trivializable": trivializable_bound(a.c)}
        if a.graph:
            consts = _constants(a)
            v = consts.evaluate(a.c)
            payload.update(consts.to_dict())
            payload["bound"] = str(v)
        return PASS, payload, []
    if not a.graph:
        raise UsageError("--graph is required")
    return PASS, _constants(a).to_dict(), []


def _constants(a):
    g = PlanarGraph.from_json(_read(a.graph, "--graph"))
    if a.optimize:
        return optimize_constants(g)
    if a.tree:
        doc = json.loads(_read(a.tree, "--tree"))
        edges = doc["edges"] if isinstance(doc, dict) else doc
        root = doc.get("root") if isinstance(doc, dict) else None
        if a.root is not None:
            root = a.root
        T = SpanningTree(frozenset(int(e) for e in edges),
                         min(g.vertices) if root is None else int(root))
    else:
        T = spanning_tree(g, "bfs", a.root)
    return theorem2_constants(g, T)


def cmd_selftest(a):
    results = acceptance.run_all(lambda line: print(line, file=sys.stderr))
    payload = {"criteria": [{"criterion": r.number, "title": r.title, "ok": r.ok}
                            for r in results],
               "passed": sum(r.ok for r in results), "total": len(results)}
    errs = [r.line() for r in results if not r.ok]
    return (PASS if not errs else FAIL), payload, errs


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int)
    common.add_argument("--graph")
    common.add_argument("--tree")
    common.add_argument("--diagram")
    common.add_argument("--file")
    common.add_argument("--dim", type=int)
    common.add_argument("--gens")
    common.add_argument("--target")
    common.add_argument("--max-cost", type=int)
    common.add_argument("--max-states", type=int)
    common.add_argument("--optimize", action="store_true")
    common.add_argument("--root", type=int)
    common.add_argument("--pretty", action="store_true")

    ap = argparse.ArgumentParser(prog="plumgraph", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="group", required=True)

    plum = sub.add_parser("plum", parents=[common]).add_subparsers(dest="action", required=True)
    gen = plum.add_parser("gen", parents=[common])
    gen.add_argument("--kind", default="standard",
                     choices=["standard", "trivial", "projection", "cube-projection"])
    gen.set_defaults(fn=cmd_plum_gen)

    dia = sub.add_parser("diagram", parents=[common]).add_subparsers(dest="action", required=True)
    dia.add_parser("validate", parents=[common]).set_defaults(fn=cmd_diagram_validate)

    sub.add_parser("invariants", parents=[common]).set_defaults(fn=cmd_invariants)
    sub.add_parser("moveset", parents=[common]).set_defaults(fn=cmd_moveset)

    l1 = sub.add_parser("l1", parents=[common]).add_subparsers(dest="action", required=True)
    l1.add_parser("solve", parents=[common]).set_defaults(fn=cmd_l1_solve)

    ver = sub.add_parser("verify", parents=[common]).add_subparsers(dest="action", required=True)
    ver.add_parser("theorem1", parents=[common]).set_defaults(fn=cmd_verify_theorem1)
    ver.add_parser("subclaims", parents=[common]).set_defaults(fn=cmd_verify_subclaims)

    proj = sub.add_parser("projection", parents=[common]).add_subparsers(dest="action", required=True)
    proj.add_parser("analyze", parents=[common]).set_defaults(fn=cmd_projection_analyze)

    bnd = sub.add_parser("bounds", parents=[common])
    bnd.add_argument("action", nargs="?", choices=["eval"])
    bnd.add_argument("--c", type=int)
    bnd.set_defaults(fn=cmd_bounds)

    sub.add_parser("selftest", parents=[common]).set_defaults(fn=cmd_selftest)
    return ap


def _emit(report: dict, pretty: bool) -> None:
    if pretty:
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        print(json.dumps(report, sort_keys=True, separators=(",", ":")))


def run(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    ap = build_parser()
    args = ap.parse_args(argv)          # exits 2 on usage errors
    t0 = time.perf_counter()
    report = {"command": " ".join(argv)}
    try:
        status, payload, errs = args.fn(args)
        code = EXIT[status]
    except UsageError as exc:
        ap.print_usage(sys.stderr)
        status, payload, errs, code = FAIL, None, [str(exc)], 2
    except (DiagramError, GraphError, InvariantError, BoundsError,
            json.JSONDecodeError, KeyError) as exc:
        status, payload, errs, code = FAIL, None, [f"invalid input: {exc}"], 2
    report.update(status=status, payload=payload,
                  duration=round(time.perf_counter() - t0, 4))
    if errs:
        report["errors"] = errs
    _emit(report, args.pretty)
    return code


def main() -> None:  # pragma: no cover
    sys.exit(run())
