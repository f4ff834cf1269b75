"""Command-line front end: ``isocycle <command> ...``.

Exit codes: 0 success or PASS, 1 a verified MISMATCH, 2 bad input or unmet
hypothesis, 3 missing or malformed modular-polynomial data.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import golden
from .errors import DataError, IsocycleError
from .field import default_def_poly, make_field
from .modpoly import KNOWN_FACTORIZATIONS, factorization_holds, get_modpoly, modpoly_path, symmetry_check
from .poly import DEFAULT_SEED
from .quadorder import (
    Kind,
    QuadOrder,
    class_number,
    class_ratio,
    cornacchia,
    form_order_of_L,
    order_m,
)
from .ssgraph import cm_seed, enumerate_supersingular, induced_subgraph, supersingular_count
from .theorems import (
    MISMATCH,
    CorollaryCase,
    construct_cycles,
    corollary51_case,
    corollary_case_for,
    lemma2_counts,
    neighbor_vertices,
    theorem5_check,
)

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_DATA = 0, 1, 2, 3


@dataclass
class CliConfig:
    data_dir: Path | None
    output_format: str
    seed: int
    def_poly: tuple[int, int] | None

    def field(self, p: int):
        return make_field(p, self.def_poly or default_def_poly(p))


def _def_poly(text: str) -> tuple[int, int]:
    try:
        c0, c1 = (int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'c0,c1', got {text!r}") from None
    return c0, c1


def _emit(cfg: CliConfig, payload: dict, text: str) -> None:
    if cfg.output_format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text.rstrip("\n"))


# commands ------------------------------------------------------------------

def cmd_enumerate(args, cfg: CliConfig) -> int:
    ctx = cfg.field(args.p)
    verts = enumerate_supersingular(ctx, cfg.data_dir, cfg.seed)
    expected = supersingular_count(args.p)
    labels = [ctx.format(v) for v in verts]
    ok = len(verts) == expected
    text = "\n".join(labels) + f"\n{len(verts)} vertices, formula {expected}: {'PASS' if ok else 'FAIL'}"
    _emit(cfg, {"p": args.p, "def_poly": list(ctx.def_poly), "vertices": labels,
                "count": len(verts), "expected": expected, "pass": ok}, text)
    return EXIT_OK if ok else EXIT_MISMATCH


def _seed_for(args, cfg: CliConfig, ctx, order: QuadOrder):
    if args.j is not None:
        return ctx.parse(args.j)
    return cm_seed(ctx, order.base_discriminant, cfg.seed)[1]


def cmd_subgraph(args, cfg: CliConfig) -> int:
    ctx = cfg.field(args.p)
    order = QuadOrder(args.d, Kind(args.tau))
    seed_j = _seed_for(args, cfg, ctx, order)
    verts = neighbor_vertices(ctx, args.ell, seed_j, cfg.data_dir, cfg.seed)
    g = induced_subgraph(verts, ctx, args.L, cfg.data_dir, method=args.method, seed=cfg.seed)
    if cfg.output_format == "dot":
        print(g.to_dot().rstrip("\n"))
    elif cfg.output_format == "json":
        print(g.to_json())
    else:
        print(f"# G_{args.L} on the {args.ell}-neighbours of {ctx.format(seed_j)}, p={args.p}")
        print(g.to_text().rstrip("\n"))
    return EXIT_OK


def cmd_predict(args, cfg: CliConfig) -> int:
    if args.ell == args.L:
        raise IsocycleError(f"ell and L must differ (both {args.L})")
    order = QuadOrder(args.d, Kind(args.tau))
    w = cornacchia(order, args.L)
    if w is None:
        raise IsocycleError(f"{args.L} is not the norm of an element of {order}")
    m = order_m(w, order, args.ell)
    m_forms = form_order_of_L(order.with_conductor(args.ell), args.L)
    h = class_number(order.discriminant)
    h_ell = class_number(order.with_conductor(args.ell).discriminant)
    ratio = class_ratio(order, args.ell)
    flags = {}
    for case in CorollaryCase:
        try:
            flags[case.value] = corollary51_case(case, args.ell, w, order)
        except IsocycleError:
            continue
    payload = {
        "order": str(order), "ell": args.ell, "L": args.L,
        "witness": [w.a, w.b], "m": m, "m_forms": m_forms,
        "h": h, "h_ell": h_ell, "ratio": ratio, "m_divides_ratio": ratio % m == 0,
        "ell_split": order.split_type(args.ell),
        "case": corollary_case_for(order, args.ell).value, "corollary_flags": flags,
    }
    text = "\n".join([
        f"order      {order}",
        f"witness    {w.a} + {w.b}*tau  (norm {args.L})",
        f"m          {m}  (class group: {m_forms})",
        f"h'/h       {ratio}  (h={h}, h'={h_ell})",
        f"ell        {order.split_type(args.ell)}",
        "2-cycles   " + ", ".join(f"{k}={v}" for k, v in flags.items()),
    ])
    _emit(cfg, payload, text)
    return EXIT_OK if m == m_forms else EXIT_MISMATCH


def cmd_cycles(args, cfg: CliConfig) -> int:
    r = construct_cycles(
        args.p, args.ell, args.L, args.d, args.tau, def_poly=cfg.def_poly, j=args.j,
        data_dir=cfg.data_dir, seed=cfg.seed,
    )
    lines = [
        f"seed {r.seed_j}  order d={r.d} ({r.kind})  witness {r.witness}  ell {r.ell_split}",
        f"m = {r.m}  bound ell^2*L*D = {r.bound}  ({'met' if r.bound_ok else 'not met'})",
    ]
    for v, lengths in r.observed.items():
        lines.append(f"  {v}: " + (", ".join(f"{n} of length {k}" for k, n in lengths.items()) or "no cycles"))
    lines += [f"  reason: {x}" for x in r.reasons] + [f"  note: {x}" for x in r.notes]
    lines.append(r.verdict)
    _emit(cfg, r.to_dict(evidence=args.evidence or None), "\n".join(lines))
    return EXIT_MISMATCH if r.verdict == MISMATCH else EXIT_OK


def cmd_sharpness(args, cfg: CliConfig) -> int:
    r = theorem5_check(
        args.p, args.ell, args.L, args.d, args.tau, def_poly=cfg.def_poly, j=args.j,
        data_dir=cfg.data_dir, seed=cfg.seed,
    )
    lines = [f"case {r.case}  witness {r.witness}  bound {r.bound} ({'met' if r.bound_ok else 'not met'})"]
    lines += [f"  {k}: {a} and {b}" for k, (a, b) in r.pair_counts.items()]
    lines.append(f"count {r.count}  {r.verdict}")
    _emit(cfg, r.to_dict(), "\n".join(lines))
    return EXIT_MISMATCH if r.verdict == MISMATCH else EXIT_OK


def cmd_lemma2(args, cfg: CliConfig) -> int:
    r = lemma2_counts(args.p, args.ell, args.vertex, def_poly=cfg.def_poly, data_dir=cfg.data_dir, seed=cfg.seed)
    text = (f"{r.neighbors} neighbours of {r.vertex} (expected {r.expected_neighbors}), "
            f"multiplicities {r.multiplicities} (expected {r.expected_mult} each): {'PASS' if r.holds else 'FAIL'}")
    _emit(cfg, {"p": r.p, "ell": r.ell, "vertex": r.vertex, "neighbors": r.neighbors,
                "multiplicities": r.multiplicities, "expected_neighbors": r.expected_neighbors,
                "expected_mult": r.expected_mult, "pass": r.holds}, text)
    return EXIT_OK if r.holds else EXIT_MISMATCH


def cmd_verify(args, cfg: CliConfig) -> int:
    which = list(golden.EXAMPLES) if args.example == "all" else [int(args.example)]
    golden.require_data(args.example, cfg.data_dir)
    results = {n: golden.run_example(n, cfg.data_dir, cfg.seed) for n in which}
    ok = all(c.ok for cs in results.values() for c in cs)
    lines = []
    for n, cs in results.items():
        lines.append(f"Example {n}: {'PASS' if all(c.ok for c in cs) else 'FAIL'}")
        lines += ["  " + c.line() for c in cs]
    payload = {str(n): [{"check": c.name, "pass": c.ok, "detail": c.detail} for c in cs] for n, cs in results.items()}
    _emit(cfg, payload, "\n".join(lines))
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_modpoly_verify(args, cfg: CliConfig) -> int:
    levels = args.levels or [2, 3]
    for n in levels:
        modpoly_path(n, cfg.data_dir)
    ctx = cfg.field(args.p)
    rows = []
    for n in levels:
        rows.append((f"Phi_{n} symmetric", symmetry_check(get_modpoly(n, cfg.data_dir), ctx, args.trials, cfg.seed)))
    for name, (level, j0, _) in KNOWN_FACTORIZATIONS.items():
        if level not in levels:
            continue
        # the closed forms at 1728 and 0 only matter where those are supersingular
        applicable = (j0 == 1728 and args.p % 4 == 3) or (j0 == 0 and args.p % 3 == 2)
        if applicable:
            rows.append((name, factorization_holds(name, ctx, cfg.data_dir)))
    ok = all(v for _, v in rows)
    _emit(cfg, {"p": args.p, "checks": {k: v for k, v in rows}, "pass": ok},
          "\n".join(f"{'PASS' if v else 'FAIL'}  {k}" for k, v in rows))
    return EXIT_OK if ok else EXIT_MISMATCH


# parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--data-dir", type=Path, default=None,
                        help="directory of phi_N.txt files (else $ISOCYCLE_MODPOLY_DIR, else ./data/phi)")
    common.add_argument("--format", dest="output_format", choices=("text", "json", "dot"), default="text")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for root-finding randomness")
    common.add_argument("--def-poly", type=_def_poly, default=None, metavar="C0,C1",
                        help="F_{p^2} = F_p[b]/(b^2 + C1*b + C0)")

    order = argparse.ArgumentParser(add_help=False)
    order.add_argument("--d", type=int, required=True)
    order.add_argument("--tau", choices=("sqrt", "half"), default="sqrt")
    order.add_argument("--ell", type=int, required=True)
    order.add_argument("--L", type=int, required=True)

    graph = argparse.ArgumentParser(add_help=False)
    graph.add_argument("--p", type=int, required=True)
    graph.add_argument("--j", default=None, help="seed j-invariant, overriding the CM seed")

    ap = argparse.ArgumentParser(prog="isocycle", description="Cycles in supersingular isogeny graphs.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", parents=[common], help="list all supersingular j-invariants")
    p.add_argument("--p", type=int, required=True)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("subgraph", parents=[common, graph, order], help="L-subgraph on the ell-neighbours of a seed")
    p.add_argument("--method", choices=("evaluate", "roots"), default="evaluate")
    p.set_defaults(func=cmd_subgraph)

    p = sub.add_parser("predict", parents=[common, order], help="m, witness and class number ratio")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("cycles", parents=[common, graph, order], help="predicted versus observed cycles")
    p.add_argument("--evidence", action="store_true", help="include graph and cycles in JSON output")
    p.set_defaults(func=cmd_cycles)

    p = sub.add_parser("sharpness", parents=[common, graph, order], help="L-isogeny counts inside 2-cycles")
    p.set_defaults(func=cmd_sharpness)

    p = sub.add_parser("lemma2", parents=[common], help="neighbourhoods of 1728 and 0")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--vertex", type=int, choices=(1728, 0), required=True)
    p.set_defaults(func=cmd_lemma2)

    p = sub.add_parser("verify", parents=[common], help="reproduce the worked examples")
    p.add_argument("--example", choices=("1", "2", "3", "4", "all"), default="all")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("modpoly", help="modular polynomial data checks")
    msub = p.add_subparsers(dest="action", required=True)
    q = msub.add_parser("verify", parents=[common], help="symmetry and closed forms at 1728 and 0")
    q.add_argument("--p", type=int, default=1019)
    q.add_argument("--levels", type=int, nargs="*")
    q.add_argument("--trials", type=int, default=50)
    q.set_defaults(func=cmd_modpoly_verify)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = CliConfig(args.data_dir, args.output_format, args.seed, args.def_poly)
    if cfg.output_format == "dot" and args.func is not cmd_subgraph:
        print("error: --format dot applies to subgraph only", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args, cfg)
    except DataError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (IsocycleError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
