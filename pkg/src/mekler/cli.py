"""Command-line front end.

Exit codes: 0 success, 1 usage or I/O error, 2 graph is not nice,
3 a resource cap was hit.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import fp
from .bilinear import BilinearError, BilinearSystem, f_of_group, find_separated_basis
from .classification import (
    ClassificationError,
    inp_pattern_check,
    minimal_A_index,
    recover_graph,
    support,
    type_census,
    type_of,
    vertex_of,
)
from .common import BoundExceededError
from .graphs import GraphError, is_nice, read_graph
from .group import (
    DEFAULT_ENUMERATION_CAP,
    EnumerationCapError,
    GroupError,
    NotNiceError,
    build_group,
    parse_element,
)
from .transversal import compute_full_transversal, transversal_cover_check

SCHEMA_VERSION = 1

EXIT_OK, EXIT_USAGE, EXIT_NOT_NICE, EXIT_CAP = 0, 1, 2, 3


def _emit(args, payload: dict, lines: list[str]) -> None:
    if args.format == "json":
        out = {"schema_version": SCHEMA_VERSION, "command": args.command, **payload}
        print(json.dumps(out, indent=2, sort_keys=True))
    else:
        print("\n".join(lines))


def _cap(args) -> int:
    if args.cap is not None:
        return args.cap
    env = os.environ.get("MEKLER_CAP")
    if env:
        try:
            value = int(env)
        except ValueError:
            raise GroupError(f"MEKLER_CAP must be an integer, got {env!r}") from None
        return value
    return DEFAULT_ENUMERATION_CAP


def _group(args):
    g = read_graph(args.path)
    return build_group(g, args.p, enumeration_cap=_cap(args))


def _order_text(G) -> str:
    return f"{G.p}^{G.order_exponent}"


def cmd_check_nice(args) -> int:
    g = read_graph(args.path)
    report = is_nice(g)
    lines = [f"nice: {str(report.verdict).lower()}"]
    if report.violation is not None:
        lines.append(f"violation: {report.violation}")
    _emit(args, report.to_json(), lines)
    return EXIT_OK if report.verdict else EXIT_NOT_NICE


def cmd_build(args) -> int:
    G = _group(args)
    T = compute_full_transversal(G)
    census = type_census(G)
    payload = {
        "p": G.p,
        "dimV": G.rank,
        "dimW": G.center_rank,
        "order_exponent": G.order_exponent,
        "order": _order_text(G),
        "transversal": T.sizes(),
    }
    lines = [
        f"order: {_order_text(G)}",
        f"dim V: {G.rank}",
        f"dim W: {G.center_rank}",
        "transversal: " + ", ".join(f"{k}={v}" for k, v in T.sizes().items()),
    ]
    if census.complete:
        payload["order_value"] = G.order
        payload["census"] = census.to_json()
        lines[0] += f" = {G.order}"
        lines.append("census: " + ", ".join(f"{k}={v}" for k, v in census.to_json().items()
                                            if k != "complete"))
    else:
        payload["order_value"] = "skipped"
        payload["census"] = "skipped"
        lines.append(f"census: skipped (order exceeds cap {G.enumeration_cap})")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_census(args) -> int:
    G = _group(args)
    census = type_census(G)
    data = census.to_json()
    lines = [f"{k}: {'skipped' if v is None else v}" for k, v in data.items() if k != "complete"]
    lines.append(f"complete: {str(census.complete).lower()}")
    _emit(args, {"order": _order_text(G), "census": data}, lines)
    if not census.complete:
        print(f"census incomplete: order {_order_text(G)} exceeds cap {G.enumeration_cap}",
              file=sys.stderr)
        return EXIT_CAP
    return EXIT_OK


def cmd_recover(args) -> int:
    G = _group(args)
    rec = recover_graph(G)
    cover = transversal_cover_check(G, compute_full_transversal(G), args.threshold)
    mapping = {str(k): v for k, v in sorted(rec.to_input.items())}
    payload = {
        "isomorphic": rec.isomorphic,
        "vertices": rec.graph.vertex_count,
        "edges": [list(e) for e in sorted(rec.graph.edges)],
        "to_input": mapping,
        "cover": {"verdict": cover.verdict, "threshold": args.threshold, "reason": cover.reason},
    }
    lines = [
        f"isomorphic: {str(rec.isomorphic).lower()}",
        f"vertices: {rec.graph.vertex_count}",
        f"edges: {len(rec.graph.edges)}",
        "to_input: " + " ".join(f"{k}->{v}" for k, v in sorted(rec.to_input.items())),
        f"transversal cover (threshold {args.threshold}): {str(cover.verdict).lower()}",
    ]
    _emit(args, payload, lines)
    return EXIT_OK


def _load_system(args) -> BilinearSystem:
    text = Path(args.path).read_text()
    if text.lstrip().startswith("{"):
        try:
            return BilinearSystem.from_json(text)
        except json.JSONDecodeError as exc:
            raise BilinearError(f"invalid JSON: {exc}") from None
    return f_of_group(_group(args))


def cmd_separated(args) -> int:
    sys_ = _load_system(args)
    full = [fp.unit(sys_.dim_v, i) for i in range(sys_.dim_v)]
    res = find_separated_basis(sys_, full, seed=args.seed)
    payload = {
        "p": sys_.p,
        "dimV": sys_.dim_v,
        "dimW": sys_.dim_w,
        "status": res.status,
        "method": res.method,
        "basis": [list(v) for v in res.basis] if res.basis is not None else None,
        "certificate": None if res.certificate is None else {
            "dimension": res.certificate.dimension,
            "required": res.certificate.required,
            "span_dimension": res.certificate.span_dimension,
        },
    }
    lines = [f"status: {res.status}", f"method: {res.method}"]
    if res.basis is not None:
        lines.append("basis: " + " ".join("[" + ",".join(map(str, v)) + "]" for v in res.basis))
    if res.certificate is not None:
        c = res.certificate
        lines.append(f"certificate: dim <beta(V0,V0)> = {c.span_dimension} < {c.required}")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_inp(args) -> int:
    G = _group(args)
    if args.vertices:
        verts = [int(x) for x in args.vertices.split(",")]
    else:
        verts = list(G.graph.vertices)
    rep = inp_pattern_check(G, args.m, verts)
    lines = [
        f"m: {rep.m}",
        f"vertices: {','.join(map(str, rep.vertices))}",
        f"consistent: {str(rep.consistent).lower()}",
        f"inconsistent_at: {rep.inconsistent_at}",
    ]
    _emit(args, rep.to_json(), lines)
    return EXIT_OK


def cmd_classify(args) -> int:
    G = _group(args)
    g = parse_element(G, args.element)
    t = type_of(G, g)
    payload = {"element": g.to_json(), "type": t.to_json()}
    lines = [f"element: {g}", f"type: {t.tag}", f"q: {t.q}", f"isolation: {t.isolation}"]
    if not g.is_central:
        h = t.handle
        n, m = minimal_A_index(G, g)
        rec = support(G, g, n, m)
        hv = None if h is None else vertex_of(h)
        payload.update({
            "handle": None if h is None else list(h),
            "handle_vertex": hv,
            "minimal_A_index": [n, m],
            "support": rec.to_json(),
        })
        lines += [
            f"handle: {'u' if h is None else f'{list(h)} (vertex {hv})'}",
            f"minimal A-index: ({n},{m})",
            "support: " + (" ".join(str(list(c)) for c in sorted(rec.s)) or "none"),
            "support handles: " + (" ".join(str(list(c)) for c in sorted(rec.s_handles)) or "none"),
        ]
    _emit(args, payload, lines)
    return EXIT_OK


COMMANDS = {
    "check-nice": cmd_check_nice,
    "build": cmd_build,
    "census": cmd_census,
    "recover": cmd_recover,
    "separated": cmd_separated,
    "inp": cmd_inp,
    "classify": cmd_classify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=3, help="odd prime (default 3)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--cap", type=int, default=None,
                        help="enumeration cap (default $MEKLER_CAP or 10^8)")
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(prog="mekler", description="Finite Mekler groups of nice graphs.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("check-nice", "build", "census", "separated"):
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("path")
    sp = sub.add_parser("recover", parents=[common])
    sp.add_argument("path")
    sp.add_argument("--threshold", type=int, default=2, help="cover neighbour threshold")
    sp = sub.add_parser("inp", parents=[common])
    sp.add_argument("path")
    sp.add_argument("--m", type=int, default=2)
    sp.add_argument("--vertices", default="", help="comma-separated vertex array (default: all)")
    sp = sub.add_parser("classify", parents=[common])
    sp.add_argument("path")
    sp.add_argument("element", help='literal such as "gen=[1,0,1,0,0];com=[0,0,0,0,0]"')
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if args.cap is not None and args.cap < 1:
        print("error: --cap must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except NotNiceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_NICE
    except (EnumerationCapError, BoundExceededError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (OSError, GraphError, GroupError, BilinearError, ClassificationError,
            ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
