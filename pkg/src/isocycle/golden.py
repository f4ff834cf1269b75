"""Reproduction checks for the four worked examples of the construction.

Each ``example_N`` returns a list of :class:`Check` records; an example
passes when every record does.  The CLI ``verify`` command and the test
suite share these.
"""
from __future__ import annotations

from dataclasses import dataclass

from .field import is_prime, make_field
from .modpoly import get_modpoly, modpoly_path
from .poly import DEFAULT_SEED, Poly, roots_in_fp2
from .quadorder import Kind, QuadOrder, class_number, class_ratio, cornacchia, form_order_of_L, kronecker, order_m
from .ssgraph import CLASS_POLYNOMIALS, count_isogenies, induced_subgraph, neighbors, simple_cycles
from .theorems import CONFIRMED, construct_cycles, theorem5_check

# modular polynomial levels each example reads
LEVELS = {1: (5, 11, 23), 2: (2, 47), 3: (), 4: (2, 3, 13, 37)}


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'}  {self.name}" + (f"  ({self.detail})" if self.detail else "")


def require_data(example: int | str, data_dir=None) -> None:
    """Raise MissingFile before any computation if a needed Phi_N is absent."""
    todo = LEVELS if example == "all" else {int(example): LEVELS[int(example)]}
    for levels in todo.values():
        for n in levels:
            modpoly_path(n, data_dir)


def example_1(data_dir=None, seed: int = DEFAULT_SEED) -> list[Check]:
    ctx = make_field(3461, (1, 1))
    P = ctx.parse
    j = ctx(3185)
    expected = {P(s) for s in ("819", "2402", "2591b+1415", "1039b+2586", "870b+2285", "2422b+1547")}
    rs = neighbors(ctx, 5, j, data_dir, seed)
    out = [Check("255^3 = 3185 mod 3461", 255**3 % 3461 == 3185)]
    out.append(Check("roots of Phi_5(X, 3185)", set(rs.roots()) == expected and rs.total == 6,
                     ", ".join(ctx.format(r) for r in rs.roots())))
    tri1 = [P("819"), P("870b+2285"), P("2591b+1415")]
    tri2 = [P("2402"), P("1039b+2586"), P("2422b+1547")]
    g11 = induced_subgraph(expected, ctx, 11, data_dir, seed=seed)
    want = {}
    for tri in (tri1, tri2):
        for a in tri:
            for b in tri:
                if a != b:
                    want[(a, b)] = 1
    out.append(Check("G_11: two triangles, both orientations", g11.edges == want, f"{len(g11.edges)} edges"))
    g23 = induced_subgraph(expected, ctx, 23, data_dir, seed=seed)
    hexes = [c for c in simple_cycles(g23) if c.length == 6]
    hexagon = (
        len(hexes) == 2
        and all(c.mult == 1 for c in hexes)
        and hexes[0].vertices[1:] == hexes[1].vertices[:0:-1]
        and len(g23.edges) == 12
        and all(m == 1 and g23.mult(v, u) == 1 for (u, v), m in g23.edges.items())
        and all(len(g23.successors(v)) == 2 for v in expected)
    )
    out.append(Check("G_23: one 6-cycle, both orientations", hexagon, f"{len(hexes)} directed 6-cycles"))
    for L, m in ((11, 3), (23, 6)):
        r = construct_cycles(3461, 5, L, 7, Kind.SQRT, def_poly=(1, 1), data_dir=data_dir, seed=seed)
        out.append(Check(f"L={L}: predicted m={m}, verdict CONFIRMED", r.m == m and r.verdict == CONFIRMED,
                         f"m={r.m}, verdict={r.verdict}"))
    return out


def example_2(data_dir=None, seed: int = DEFAULT_SEED) -> list[Check]:
    ctx = make_field(12601, (11, 0))
    P = ctx.parse
    h44 = Poly.of(ctx, CLASS_POLYNOMIALS[-44])
    j = P("4825")
    out = [
        Check("12601 = 6 mod 11, -32^3 = 5035", 12601 % 11 == 6 and (-(32**3)) % 12601 == 5035),
        Check("4825 is a root of H_-44", h44(j) == ctx.zero and j in roots_in_fp2(h44, seed)),
    ]
    j0, j1, j2 = P("5035"), P("7022b+1350"), P("5579b+1350")
    rs = neighbors(ctx, 2, j, data_dir, seed)
    out.append(Check("2-neighbours of 4825", set(rs.roots()) == {j0, j1, j2},
                     ", ".join(ctx.format(r) for r in rs.roots())))
    g = induced_subgraph([j0, j1, j2], ctx, 47, data_dir, seed=seed)
    want = {(j0, j0): 2, (j1, j2): 2, (j2, j1): 2}
    out.append(Check("G_47: 2 loops at 5035, double 2-cycle j1 <-> j2", g.edges == want,
                     "; ".join(f"{ctx.format(u)}->{ctx.format(v)} x{k}" for (u, v), k in sorted(g.edges.items()))))
    r = construct_cycles(12601, 2, 47, 11, Kind.SQRT, def_poly=(11, 0), data_dir=data_dir, seed=seed)
    out.append(Check("every vertex on loops or a cycle", r.theorem1_holds, str(r.trichotomy)))
    return out


def example_3(data_dir=None, seed: int = DEFAULT_SEED) -> list[Check]:
    order = QuadOrder(7, Kind.SQRT)
    out = []
    for L, m in ((11, 3), (23, 6), (179, 1), (53, 2)):
        w = cornacchia(order, L)
        got = order_m(w, order, 5)
        alt = form_order_of_L(order.with_conductor(5), L)
        out.append(Check(f"m({L}) = {m}", got == m and alt == m, f"witness ({w.a},{w.b}), units {got}, forms {alt}"))
    ratio = class_ratio(order, 5)
    h = class_number(order.with_conductor(5).discriminant) // class_number(order.discriminant)
    out.append(Check("h'/h = 6", ratio == 6 and h == 6, f"formula {ratio}, forms {h}"))
    return out


def _largest_below(bound: int, ok) -> int:
    p = bound - 1
    while not (is_prime(p) and ok(p)):
        p -= 1
    return p


def _smallest_above(bound: int, ok) -> int:
    p = bound + 1
    while not (is_prime(p) and ok(p)):
        p += 1
    return p


def example_4(data_dir=None, seed: int = DEFAULT_SEED) -> list[Check]:
    out = []
    gauss = lambda p: p % 4 == 3  # noqa: E731
    hept = lambda p: kronecker(-7, p) == -1  # noqa: E731

    ctx = make_field(827, (1, 0))
    P = ctx.parse
    rs = neighbors(ctx, 2, ctx(66**3), data_dir, seed)
    out.append(Check("2-neighbours of 66^3 at p=827", set(rs.roots()) == {P("774b+169"), P("53b+169"), ctx(1728)},
                     ", ".join(ctx.format(r) for r in rs.roots())))
    k = count_isogenies(ctx, 13, P("774b+169"), P("53b+169"), data_dir)
    out.append(Check("three 13-isogenies 774b+169 -> 53b+169", k == 3, f"count {k}"))
    b1 = 16 * 4 * 13
    out.append(Check("832 = 16*2^2*13 and 827 is the largest p = 3 mod 4 below it",
                     b1 == 832 and _largest_below(b1, gauss) == 827))
    r = theorem5_check(827, 2, 13, 4, Kind.SQRT, def_poly=(1, 0), data_dir=data_dir, seed=seed)
    out.append(Check("structural pair at p=827 has count 3", r.count == 3 and not r.bound_ok, f"pair {r.pair}"))

    ctx = make_field(2309, (1, 1))
    P = ctx.parse
    seed_j = ctx(-(15**3))
    rs = neighbors(ctx, 3, seed_j, data_dir, seed)
    j1 = P("860b+1506")
    j2 = ctx.frobenius(j1)  # with b^2+b+1 conjugation moves a0 too: 1449b+646
    out.append(Check("860b+1506 and its conjugate 1449b+646 are 3-neighbours of -15^3",
                     j1 in rs and j2 in rs and ctx.format(j2) == "1449b+646"))
    k = count_isogenies(ctx, 37, j1, j2, data_dir)
    out.append(Check("three 37-isogenies 860b+1506 -> 1449b+646", k == 3, f"count {k}"))
    b2 = 7 * 9 * 37
    out.append(Check("2331 = 7*3^2*37 and 2309 is the largest inert p below it",
                     b2 == 2331 and _largest_below(b2, hept) == 2309))
    r = theorem5_check(2309, 3, 37, 7, Kind.HALF, def_poly=(1, 1), data_dir=data_dir, seed=seed)
    out.append(Check("structural pair at p=2309 has count 3", r.count == 3 and not r.bound_ok, f"pair {r.pair}"))

    for bound, ok, args in ((b1, gauss, (2, 13, 4, Kind.SQRT)), (b2, hept, (3, 37, 7, Kind.HALF))):
        p = _smallest_above(bound, ok)
        r = theorem5_check(p, *args, data_dir=data_dir, seed=seed)
        out.append(Check(f"first valid prime above {bound} (p={p}) has count 2",
                         r.verdict == CONFIRMED and r.count == 2, str(r.pair_counts)))
    return out


EXAMPLES = {1: example_1, 2: example_2, 3: example_3, 4: example_4}


def run_example(n: int, data_dir=None, seed: int = DEFAULT_SEED) -> list[Check]:
    require_data(n, data_dir)
    for level in LEVELS[n]:
        get_modpoly(level, data_dir)
    return EXAMPLES[n](data_dir, seed)
