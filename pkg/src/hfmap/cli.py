"""Command-line surface: index, map, coords, circuit, polygon, render, verify.

Exit codes: 0 success, 1 verification failure, 2 usage error.  Identical
invocations produce byte-identical stdout.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import coords as C
from . import maps as M
from . import polygon as P
from . import render as R
from . import verify as V
from .group import (
    HeckeParams,
    enumerate_group,
    principal_congruence_index,
)


class VerificationFailure(Exception):
    pass


def _params(args: argparse.Namespace) -> HeckeParams:
    return HeckeParams(args.q, args.n)


def _write_out(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_index(args: argparse.Namespace) -> None:
    p = _params(args)
    idx = principal_congruence_index(p)
    print(idx)
    if args.check:
        enumerated = enumerate_group(p).order
        if enumerated != idx:
            raise VerificationFailure(
                f"closure found {enumerated} elements, formula says {idx}"
            )
        print("check OK")


def cmd_map(args: argparse.Namespace) -> None:
    p = _params(args)
    group = enumerate_group(p)
    amap = M.build_algebraic_map(group)
    inv = amap.invariants()
    chi = inv.vertices - inv.edges + inv.faces
    if chi != 2 - 2 * inv.genus or inv.darts != group.order:
        raise VerificationFailure("internal Euler-characteristic cross-check failed")
    if p.n % 2:
        rep = M.correspondence_check(group, amap, M.build_coordinate_graph(p))
        if not rep.ok:
            raise VerificationFailure("; ".join(rep.problems))
    if args.json:
        print(M.invariants_json(p, inv, group.order))
    else:
        print(f"darts    {inv.darts}")
        print(f"vertices {inv.vertices}")
        print(f"edges    {inv.edges}")
        print(f"faces    {inv.faces}")
        print(f"genus    {inv.genus}")
        print(f"valency  {inv.vertex_valency}")
        print(f"face_sz  {inv.face_size}")


def cmd_coords(args: argparse.Namespace) -> None:
    p = _params(args)
    if args.names:
        table = C.vertex_names(p)
        for name in table.names():
            print(f"{name}: {table.printed_value(name)}")
        return
    for u in C.enumerate_coords(p):
        print(C.coord_value_str(u, p))


def _load_circuit(spec: str, p: HeckeParams) -> P.Circuit:
    if spec == "bring":
        return P.bring_circuit(p)
    return P.parse_circuit_text(Path(spec).read_text(encoding="utf-8"), p)


def cmd_circuit(args: argparse.Namespace) -> None:
    p = _params(args)
    if args.verify is not None:
        circuit = _load_circuit(args.verify, p)
        if not P.validate_circuit(circuit, p):
            raise VerificationFailure("circuit fails adjacency validation")
        print("OK")
        return
    if not args.search:
        raise ValueError("nothing to do: pass --verify or --search")
    table = None
    try:
        table = C.vertex_names(p)
    except ValueError:
        pass
    if ":" in args.start:
        kind, frac = args.start.split(":", 1)
        num, den = frac.split("/", 1)
        start = C.normalize(kind, int(num), int(den), p)
    elif table is not None:
        start = table.coord(args.start)
    else:
        raise ValueError("no name table; pass --start kind:num/den")
    poles = {int(x) for x in args.poles.split(",") if x.strip() != ""}
    found = P.search_circuits(start, args.length, poles, p)
    for circuit in found:
        print(P.format_circuit_text(circuit, p))
    print(f"# {len(found)} circuits")


def _load_pairing(path: str | None) -> P.PairingTable:
    if path is None:
        return P.bring_side_pairing()
    return P.parse_pairing_text(Path(path).read_text(encoding="utf-8"))


def cmd_polygon(args: argparse.Namespace) -> None:
    pairing = _load_pairing(args.pairing)
    wants_all = not (args.classes or args.genus or args.rule_check)
    if args.rule_check or wants_all:
        ok = P.pairing_rule_check(pairing)
        print(f"rule-check {'OK' if ok else 'FAIL'}")
        if not ok:
            raise VerificationFailure("side pairing violates the pairing rule")
    part = P.vertex_classes(pairing)
    if args.classes or wants_all:
        for cls in part.classes:
            print("class " + " ".join(str(c) for c in sorted(cls)))
    if args.genus or wants_all:
        print(f"genus {part.genus}")


def cmd_render(args: argparse.Namespace) -> None:
    if args.what == "universal":
        cfg = R.RenderConfig(model=args.model, depth=args.depth)
        _write_out(R.render_universal(args.q, cfg), args.out)
        return
    if args.what == "quotient":
        p = _params(args)
        _write_out(R.render_quotient(p, args.format), args.out)
        return
    p = HeckeParams(4, 5)
    boundary = P.boundary_from_circuit(P.bring_circuit(p), p)
    _write_out(R.render_polygon(boundary, _load_pairing(args.pairing)), args.out)


def cmd_verify(args: argparse.Namespace) -> None:
    circuit = None
    pairing = None
    if args.circuit:
        circuit = _load_circuit(args.circuit, HeckeParams(4, 5))
    if args.pairing:
        pairing = _load_pairing(args.pairing)
    results = V.run_checks(circuit=circuit, pairing=pairing)
    if args.json:
        print(json.dumps(
            [{"name": r.name, "ok": r.ok, "detail": r.detail} for r in results]
        ))
    else:
        for r in results:
            print(f"{'PASS' if r.ok else 'FAIL'}  {r.name:18s} {r.detail}")
    if not all(r.ok for r in results):
        raise VerificationFailure("verification suite failed")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hfmap",
        description="Hecke groups modulo n, Farey coordinates, and their maps",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_qn(sp, q_default=4, n_default=5):
        sp.add_argument("--q", type=int, default=q_default, choices=(3, 4, 6))
        sp.add_argument("--n", type=int, default=n_default)

    sp = sub.add_parser("index", help="print the subgroup index formula value")
    add_qn(sp)
    sp.add_argument("--check", action="store_true",
                    help="also enumerate the group and compare")
    sp.set_defaults(fn=cmd_index)

    sp = sub.add_parser("map", help="print map invariants")
    add_qn(sp)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=cmd_map)

    sp = sub.add_parser("coords", help="list coordinates mod n")
    add_qn(sp)
    sp.add_argument("--names", action="store_true",
                    help="use the customary vertex names")
    sp.set_defaults(fn=cmd_coords)

    sp = sub.add_parser("circuit", help="verify or search circuits")
    add_qn(sp)
    sp.add_argument("--verify", metavar="bring|FILE",
                    help="validate the built-in circuit or a circuit file")
    sp.add_argument("--search", action="store_true")
    sp.add_argument("--start", default="H2")
    sp.add_argument("--length", type=int, default=12)
    sp.add_argument("--poles", default="0,3,6,9",
                    help="comma-separated pole positions")
    sp.set_defaults(fn=cmd_circuit)

    sp = sub.add_parser("polygon", help="side pairing, corner classes, genus")
    sp.add_argument("--classes", action="store_true")
    sp.add_argument("--genus", action="store_true")
    sp.add_argument("--rule-check", action="store_true")
    sp.add_argument("--pairing", metavar="FILE",
                    help="pairing table file (lines 'i j')")
    sp.set_defaults(fn=cmd_polygon)

    sp = sub.add_parser("render", help="emit SVG/DOT documents")
    sp.add_argument("what", choices=("universal", "quotient", "polygon"))
    add_qn(sp)
    sp.add_argument("--depth", type=int, default=4)
    sp.add_argument("--model", choices=("halfplane", "disk"), default="halfplane")
    sp.add_argument("--format", choices=("svg", "dot"), default="dot")
    sp.add_argument("--out", metavar="PATH")
    sp.add_argument("--pairing", metavar="FILE")
    sp.set_defaults(fn=cmd_render)

    sp = sub.add_parser("verify", help="run the whole verification suite")
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--pairing", metavar="FILE")
    sp.add_argument("--circuit", metavar="FILE")
    sp.set_defaults(fn=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.fn(args)
    except VerificationFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
