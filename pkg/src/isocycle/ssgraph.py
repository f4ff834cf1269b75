"""Supersingular j-invariants, isogeny neighbours, induced subgraphs and cycles.

Edges are certified by modular polynomials only: ``w`` is an N-neighbour of
``v`` with multiplicity k when ``(X - w)^k`` exactly divides ``Phi_N(X, v)``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import CountMismatch, NoSeedFound
from .field import FieldContext, Fp2Element
from .modpoly import get_modpoly, resolve_data_dir, specialize
from .poly import DEFAULT_SEED, Poly, RootMultiset, root_multiplicity, roots_in_fp2
from .quadorder import kronecker

# j-invariants of the 13 class-number-one orders, keyed by discriminant.
CM_J_INVARIANTS = {
    -3: 0,
    -4: 1728,
    -7: -(15**3),
    -8: 20**3,
    -11: -(32**3),
    -12: 2 * 30**3,  # 54000
    -16: 66**3,
    -19: -(96**3),
    -27: -3 * 160**3,  # -12288000
    -28: 255**3,
    -43: -(960**3),
    -67: -(5280**3),
    -163: -(640320**3),
}

# Hilbert class polynomials for a few class-number > 1 discriminants,
# integer coefficients lowest degree first.
CLASS_POLYNOMIALS = {
    -44: [-653249011576832, 270413882112, -1122662608, 1],
}

SEED_ORDER = sorted(set(CM_J_INVARIANTS) | set(CLASS_POLYNOMIALS), key=abs)


def supersingular_count(p: int) -> int:
    """floor(p/12) + eps with eps = 0, 1, 1, 2 for p = 1, 5, 7, 11 mod 12."""
    return p // 12 + {1: 0, 5: 1, 7: 1, 11: 2}[p % 12]


def cm_j_values(disc: int, ctx: FieldContext, seed: int = DEFAULT_SEED) -> list[Fp2Element]:
    """Roots of the class polynomial of ``disc`` in F_{p^2}, F_p roots first."""
    if disc in CM_J_INVARIANTS:
        return [ctx(CM_J_INVARIANTS[disc])]
    if disc in CLASS_POLYNOMIALS:
        roots = roots_in_fp2(Poly.of(ctx, CLASS_POLYNOMIALS[disc]), seed).roots()
        return sorted(roots, key=lambda r: (r.a1 != 0, r))
    raise NoSeedFound(f"no CM data tabulated for discriminant {disc}")


def cm_seed(ctx: FieldContext, disc: int | None = None, seed: int = DEFAULT_SEED) -> tuple[int, Fp2Element]:
    """A supersingular j-invariant with known CM.

    With ``disc`` given, returns a CM j-invariant of that discriminant, which
    must be inert at p.  Otherwise the tabulated discriminant of smallest
    absolute value that is inert at p is used.
    """
    p = ctx.p
    if disc is not None:
        if kronecker(disc, p) != -1:
            raise NoSeedFound(f"discriminant {disc} is not inert at p={p}")
        return disc, cm_j_values(disc, ctx, seed)[0]
    for D in SEED_ORDER:
        if kronecker(D, p) == -1:
            return D, cm_j_values(D, ctx, seed)[0]
    raise NoSeedFound(f"no tabulated discriminant is inert at p={p}")


def neighbors(ctx: FieldContext, ell: int, j: Fp2Element, data_dir=None, seed: int = DEFAULT_SEED) -> RootMultiset:
    """ell-isogenous j-invariants with edge multiplicities (total ell + 1)."""
    return roots_in_fp2(specialize(get_modpoly(ell, data_dir), j, ctx), seed)


@lru_cache(maxsize=32)
def _enumerate_cached(ctx: FieldContext, data_dir: str, seed: int) -> frozenset:
    _, start = cm_seed(ctx, seed=seed)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for v in frontier:
            for w, _ in neighbors(ctx, 2, v, data_dir, seed):
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    expected = supersingular_count(ctx.p)
    if len(seen) != expected:
        raise CountMismatch(ctx.p, len(seen), expected)
    return frozenset(seen)


def enumerate_supersingular(ctx: FieldContext, data_dir=None, seed: int = DEFAULT_SEED) -> list[Fp2Element]:
    """All supersingular j-invariants: BFS closure of a CM seed in G_2.

    Raises :class:`CountMismatch` if the closure size disagrees with the
    count formula, which signals corrupt data or arithmetic.
    """
    return sorted(_enumerate_cached(ctx, str(resolve_data_dir(data_dir).resolve()), seed))


def is_supersingular(ctx: FieldContext, j: Fp2Element, data_dir=None) -> bool:
    return j in _enumerate_cached(ctx, str(resolve_data_dir(data_dir).resolve()), DEFAULT_SEED)


def count_isogenies(ctx: FieldContext, L: int, j1: Fp2Element, j2: Fp2Element, data_dir=None) -> int:
    """Multiplicity of j2 as a root of Phi_L(X, j1)."""
    return root_multiplicity(specialize(get_modpoly(L, data_dir), j1, ctx), j2)


@dataclass
class IsogenyGraph:
    """Directed multigraph on j-invariants; ``edges[(u, v)]`` is the multiplicity."""

    ctx: FieldContext
    level: int
    vertices: list
    edges: dict = field(default_factory=dict)

    def mult(self, u, v) -> int:
        return self.edges.get((u, v), 0)

    def successors(self, u) -> list:
        return [v for (a, v) in sorted(self.edges) if a == u]

    def out_degree(self, u) -> int:
        return sum(m for (a, _), m in self.edges.items() if a == u)

    def loops(self, u) -> int:
        return self.edges.get((u, u), 0)

    def reversed(self) -> IsogenyGraph:
        return IsogenyGraph(self.ctx, self.level, list(self.vertices), {(v, u): m for (u, v), m in self.edges.items()})

    # export ---------------------------------------------------------------
    def label(self, v) -> str:
        return self.ctx.format(v)

    def to_dict(self) -> dict:
        return {
            "p": self.ctx.p,
            "level": self.level,
            "def_poly": list(self.ctx.def_poly),
            "vertices": [self.label(v) for v in self.vertices],
            "edges": [
                {"from": self.label(u), "to": self.label(v), "mult": m}
                for (u, v), m in sorted(self.edges.items())
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_dot(self) -> str:
        lines = [f'digraph "G_{self.level}" {{']
        for v in self.vertices:
            lines.append(f'  "{self.label(v)}";')
        for (u, v), m in sorted(self.edges.items()):
            for _ in range(m):
                lines.append(f'  "{self.label(u)}" -> "{self.label(v)}";')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        lines = []
        for u in self.vertices:
            outs = [f"{self.label(v)}" + (f" x{m}" if m > 1 else "") for v in self.successors(u) for m in [self.mult(u, v)]]
            lines.append(f"{self.label(u)} -> " + (", ".join(outs) if outs else "(none)"))
        return "\n".join(lines) + "\n"


def induced_subgraph(
    vertex_set,
    ctx: FieldContext,
    L: int,
    data_dir=None,
    method: str = "evaluate",
    seed: int = DEFAULT_SEED,
) -> IsogenyGraph:
    """Subgraph of G_L on ``vertex_set`` with edge multiplicities.

    ``method="evaluate"`` reads each multiplicity off ``Phi_L(X, v)`` by
    repeated synthetic division at the candidate targets; ``"roots"`` factors
    ``Phi_L(X, v)`` completely and restricts.  Both give the same graph.
    """
    verts = sorted(set(vertex_set))
    mp = get_modpoly(L, data_dir)
    edges = {}
    for v in verts:
        f = specialize(mp, v, ctx)
        if method == "roots":
            rs = roots_in_fp2(f, seed)
            for w in verts:
                k = rs.mult(w)
                if k:
                    edges[(v, w)] = k
        elif method == "evaluate":
            for w in verts:
                k = root_multiplicity(f, w)
                if k:
                    edges[(v, w)] = k
        else:
            raise ValueError(f"unknown method {method!r}")
    return IsogenyGraph(ctx, L, verts, edges)


@dataclass(frozen=True)
class Cycle:
    """Simple directed cycle, rotated to start at its least vertex.

    ``mult`` counts the distinct edge-level cycles on this vertex sequence,
    the product of the edge multiplicities along it.
    """

    vertices: tuple
    mult: int = 1

    @property
    def length(self) -> int:
        return len(self.vertices)

    def __contains__(self, v) -> bool:
        return v in self.vertices


def simple_cycles(g: IsogenyGraph, max_len: int | None = None) -> list[Cycle]:
    """Every simple directed cycle (loops included), up to rotation only.

    A cycle and its reverse are separate entries.  Depth-first search from
    each start vertex over larger vertices only, so every cycle is found once,
    at its canonical rotation.
    """
    verts = sorted(g.vertices)
    if len(verts) > 64:
        raise ValueError("simple_cycles is meant for small subgraphs (<= 64 vertices)")
    limit = max_len or len(verts)
    succ = {u: g.successors(u) for u in verts}
    out: list[Cycle] = []
    for s in verts:
        if g.loops(s):
            out.append(Cycle((s,), g.loops(s)))
        path = [s]
        on_path = {s}

        def dfs(u, mult):
            for w in succ[u]:
                if w == s and len(path) > 1:
                    out.append(Cycle(tuple(path), mult * g.mult(u, w)))
                elif w > s and w not in on_path and len(path) < limit:
                    path.append(w)
                    on_path.add(w)
                    dfs(w, mult * g.mult(u, w))
                    path.pop()
                    on_path.discard(w)

        dfs(s, 1)
    out.sort(key=lambda c: (c.length, c.vertices))
    return out


def load_graph_json(text: str) -> IsogenyGraph:
    """Inverse of :meth:`IsogenyGraph.to_json`."""
    from .field import make_field

    d = json.loads(text)
    ctx = make_field(d["p"], tuple(d["def_poly"]))
    verts = [ctx.parse(s) for s in d["vertices"]]
    edges = {(ctx.parse(e["from"]), ctx.parse(e["to"])): e["mult"] for e in d["edges"]}
    return IsogenyGraph(ctx, d["level"], verts, edges)

