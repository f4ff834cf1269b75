"""Predicted versus observed cycle structure at the ell-neighbours of a CM seed.

:func:`construct_cycles` builds the L-isogeny subgraph on the ell-neighbours
of a CM j-invariant and compares its cycles with the class-group prediction m.
:func:`theorem5_check` counts L-isogenies inside a 2-cycle and compares with
the bound ``D * ell^2 * L``.  :func:`lemma2_counts` checks the neighbourhoods
of 1728 and 0.

The p-bounds are sufficient conditions only, so a bound violation is recorded
next to the verdict instead of aborting the computation.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .errors import CaseMismatch, HypothesisFailure, NoSeedFound
from .field import FieldContext, Fp2Element, default_def_poly, make_field
from .poly import DEFAULT_SEED
from .quadorder import (
    Kind,
    QuadOrder,
    SplitWitness,
    UnitClass,
    class_number,
    class_ratio,
    cornacchia,
    form_order_of_L,
    kronecker,
    order_m,
)
from .ssgraph import (
    CLASS_POLYNOMIALS,
    CM_J_INVARIANTS,
    Cycle,
    IsogenyGraph,
    cm_j_values,
    cm_seed,
    induced_subgraph,
    neighbors,
    simple_cycles,
)

CONFIRMED = "CONFIRMED"
HYPOTHESES_NOT_MET = "HYPOTHESES_NOT_MET"
MISMATCH = "MISMATCH"
BELOW_BOUND = "BELOW_BOUND"

OPTIMALITY_NOTE = (
    "optimal embedding of Z[ell*tau] into End(E_n) is assumed from the CM seed, not verified"
)


class CorollaryCase(enum.Enum):
    GAUSS = "gauss"  # tau = i, ell > 2
    EISENSTEIN = "eisenstein"  # tau = (1+sqrt(-3))/2, ell > 3
    GENERIC_ODD = "generic_odd"  # tau not i or eps, ell > 2
    GENERIC_ELL2 = "generic_ell2"  # tau = sqrt(-d) != i, ell = 2


def order_conductor(order: QuadOrder) -> int:
    """Conductor of Z[tau] inside the maximal order of its fraction field."""
    disc = order.base_discriminant
    f = 1
    for q in range(2, math.isqrt(-disc) + 1):
        while disc % (q * q) == 0 and (disc // (q * q)) % 4 in (0, 1):
            disc //= q * q
            f *= q
    return f


def larger_order_js(ctx: FieldContext, order: QuadOrder, ell: int, seed: int = DEFAULT_SEED) -> tuple[set, list]:
    """CM j-invariants of the orders strictly containing Z[ell*tau].

    An ell-neighbour with one of these j-invariants is horizontal or ascending,
    so Z[ell*tau] is not its endomorphism ring.  Returns the set of such
    j-invariants and the discriminants for which no CM data is tabulated.
    """
    f = order_conductor(order) * ell
    fund = order.with_conductor(ell).discriminant // (f * f)
    found, missing = set(), []
    for g in range(1, f):
        if f % g:
            continue
        disc = fund * g * g
        if disc in CM_J_INVARIANTS or disc in CLASS_POLYNOMIALS:
            found.update(cm_j_values(disc, ctx, seed))
        else:
            missing.append(disc)
    return found, missing


def j_class(j: Fp2Element) -> str:
    if j == (1728, 0):
        return "1728"
    if j == (0, 0):
        return "0"
    return "GENERIC"


def _field(p: int, def_poly) -> FieldContext:
    return make_field(p, def_poly if def_poly is not None else default_def_poly(p))


def _seed(ctx: FieldContext, order: QuadOrder, j, seed: int) -> tuple[Fp2Element, int | None]:
    if j is not None:
        return (ctx.parse(j) if isinstance(j, str) else ctx(j[0], j[1]) if isinstance(j, tuple) else ctx(j)), None
    try:
        disc, jj = cm_seed(ctx, order.base_discriminant, seed)
    except NoSeedFound as exc:
        raise HypothesisFailure("SeedNotFound", str(exc)) from exc
    return jj, disc


def neighbor_vertices(ctx: FieldContext, ell: int, seed_j: Fp2Element, data_dir=None, seed: int = DEFAULT_SEED) -> list:
    """Distinct ell-neighbours of the seed; 0 and 1728 do not count themselves."""
    vs = neighbors(ctx, ell, seed_j, data_dir, seed).roots()
    if j_class(seed_j) != "GENERIC":
        vs = [v for v in vs if v != seed_j]
    return sorted(vs)


def nonbacktracking_profile(g: IsogenyGraph, cycles: list[Cycle]) -> dict:
    """Per vertex: cycle length -> number of non-backtracking closed cycles.

    A 2-cycle u -> v -> u that returns along the dual of the outgoing edge is
    backtracking; with a and b parallel edges each way there are
    ``a*b - min(a, b)`` that are not.  Loops and longer simple cycles count
    with their edge multiplicity.
    """
    prof = {v: {} for v in g.vertices}
    for c in cycles:
        if c.length == 2:
            u, v = c.vertices
            a, b = g.mult(u, v), g.mult(v, u)
            n = a * b - min(a, b)
        else:
            n = c.mult
        if n <= 0:
            continue
        for v in c.vertices:
            prof[v][c.length] = prof[v].get(c.length, 0) + n
    return prof


def _closed_walk_exists(g: IsogenyGraph, v, m: int) -> bool:
    idx = {u: i for i, u in enumerate(g.vertices)}
    n = len(idx)
    row = [0] * n
    row[idx[v]] = 1
    for _ in range(m):
        nxt = [0] * n
        for (a, b), k in g.edges.items():
            if row[idx[a]]:
                nxt[idx[b]] += row[idx[a]] * k
        row = nxt
    return row[idx[v]] > 0


@dataclass
class PredictionReport:
    p: int
    ell: int
    L: int
    d: int
    kind: str
    def_poly: tuple
    seed_j: str
    seed_disc: int | None
    witness: tuple | None
    ell_split: str
    bound: int
    bound_ok: bool
    j_class: str
    unit_class: str
    m: int
    m_forms: int
    class_number: int
    class_ratio: int
    vertices: list
    excluded: list
    observed: dict
    trichotomy: dict
    theorem1_holds: bool
    weak_claim_holds: bool | None
    verdict: str
    reasons: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    graph: IsogenyGraph | None = field(default=None, repr=False)
    cycles: list = field(default_factory=list, repr=False)

    def to_dict(self, evidence: bool | None = None) -> dict:
        out = {
            "inputs": {
                "p": self.p, "ell": self.ell, "L": self.L, "d": self.d, "kind": self.kind,
                "def_poly": list(self.def_poly), "seed_j": self.seed_j, "seed_disc": self.seed_disc,
            },
            "hypotheses": {
                "witness": list(self.witness) if self.witness else None,
                "ell_split": self.ell_split,
                "bound": self.bound,
                "bound_ok": self.bound_ok,
                "j_class": self.j_class,
                "unit_class": self.unit_class,
            },
            "prediction": {
                "m": self.m, "m_forms": self.m_forms,
                "class_number": self.class_number, "class_ratio": self.class_ratio,
            },
            "observed": {v: {str(k): n for k, n in sorted(d.items())} for v, d in self.observed.items()},
            "trichotomy": self.trichotomy,
            "theorem1_holds": self.theorem1_holds,
            "weak_claim_holds": self.weak_claim_holds,
            "vertices": self.vertices,
            "excluded": self.excluded,
            "verdict": self.verdict,
            "reasons": self.reasons,
            "notes": self.notes,
        }
        if evidence or (evidence is None and self.verdict == MISMATCH):
            out["graph"] = self.graph.to_dict()
            out["cycles"] = [
                {"vertices": [self.graph.label(v) for v in c.vertices], "mult": c.mult} for c in self.cycles
            ]
        return out


def construct_cycles(
    p: int,
    ell: int,
    L: int,
    d: int,
    kind: Kind | str = Kind.SQRT,
    *,
    def_poly=None,
    j=None,
    data_dir=None,
    seed: int = DEFAULT_SEED,
    method: str = "evaluate",
) -> PredictionReport:
    """Build the L-subgraph on the ell-neighbours of a CM seed and judge it against m."""
    kind = Kind(kind)
    if ell == L or p in (ell, L):
        raise HypothesisFailure("DistinctPrimes", f"need ell, L, p pairwise distinct (got {ell}, {L}, {p})")
    ctx = _field(p, def_poly)
    order = QuadOrder(d, kind)
    witness = cornacchia(order, L)
    if witness is None:
        raise HypothesisFailure("NotSplit", f"{L} does not split into principal ideals of {order}")
    seed_j, seed_disc = _seed(ctx, order, j, seed)
    jc = j_class(seed_j)

    m = order_m(witness, order, ell)
    m_forms = form_order_of_L(order.with_conductor(ell), L)
    h = class_number(order.base_discriminant)
    ratio = class_ratio(order, ell)
    bound = ell * ell * L * order.D
    bound_ok = p > bound
    split = order.split_type(ell)

    verts = neighbor_vertices(ctx, ell, seed_j, data_dir, seed)
    g = induced_subgraph(verts, ctx, L, data_dir, method=method, seed=seed)
    cycles = simple_cycles(g)
    prof = nonbacktracking_profile(g, cycles)

    def shape(v):
        lengths = prof[v]
        if lengths.get(1, 0) >= 2:
            return "loops"
        if lengths.get(2):
            return "2-cycles"
        if any(k > 2 for k in lengths):
            return "cycles"
        return "none"

    trich = {g.label(v): shape(v) for v in verts}
    theorem1 = all(s != "none" for s in trich.values())

    reasons = []
    notes = [OPTIMALITY_NOTE]
    if jc == "GENERIC":
        if split == "split":
            reasons.append("ell splits in Z[tau]; only closed non-backtracking walks of length m are claimed")
    else:
        if ell == 2:
            reasons.append("at j=0 or 1728 the cycle-length claim needs ell odd")
        if order.unit_class is UnitClass.GENERIC:
            notes.append(f"seed j={jc} but order {order} is not its full CM order")
    bigger, untabulated = larger_order_js(ctx, order, ell, seed) if jc == "GENERIC" else (set(), [])
    excluded = [v for v in verts if v in bigger]
    checked = [v for v in verts if v not in bigger]
    if excluded:
        notes.append(
            "not descending (CM by an order above Z[ell*tau]), excluded from the m check: "
            + ", ".join(ctx.format(v) for v in excluded)
        )
    if untabulated:
        notes.append(f"no CM data for discriminants {untabulated}; horizontal neighbours there are not detected")
    if not bound_ok:
        notes.append(f"p={p} <= ell^2*L*D = {bound}; the theorem's bound does not hold")
    if m != m_forms:
        notes.append(f"unit-power m={m} disagrees with class-group m={m_forms}")

    def passes(v):
        lengths = prof[v]
        if lengths.get(m, 0) < 2:
            return False
        if bound_ok and any(k < m and n > 0 for k, n in lengths.items()):
            return False
        return True

    weak = None
    if reasons:
        verdict = HYPOTHESES_NOT_MET
        if split == "split":
            weak = all(_closed_walk_exists(g, v, m) for v in checked)
    elif all(passes(v) for v in checked):
        verdict = CONFIRMED
    elif bound_ok:
        verdict = MISMATCH
    else:
        verdict = HYPOTHESES_NOT_MET
        reasons.append("observation deviates below the p-bound, where the theorem gives no guarantee")

    return PredictionReport(
        p=p, ell=ell, L=L, d=d, kind=kind.value, def_poly=ctx.def_poly,
        seed_j=ctx.format(seed_j), seed_disc=seed_disc,
        witness=(witness.a, witness.b), ell_split=split,
        bound=bound, bound_ok=bound_ok, j_class=jc, unit_class=order.unit_class.value,
        m=m, m_forms=m_forms, class_number=h, class_ratio=ratio,
        vertices=[ctx.format(v) for v in verts],
        excluded=[ctx.format(v) for v in excluded],
        observed={g.label(v): dict(sorted(prof[v].items())) for v in verts},
        trichotomy=trich, theorem1_holds=theorem1, weak_claim_holds=weak,
        verdict=verdict, reasons=reasons, notes=notes, graph=g, cycles=cycles,
    )


# ---------------------------------------------------------------------------
# 2-cycles and the sharpness bound

def sqrt_coordinates(witness: SplitWitness, order: QuadOrder | None) -> tuple[int, int]:
    """Coordinates (x, y) of the witness in the basis 1, sqrt(-d).

    A HALF witness is replaced by the associate lying in Z[sqrt(-d)] when one
    exists; otherwise (2a+b, b) is returned, which is twice the element and
    leaves divisibility by odd primes unchanged.
    """
    if order is None or order.kind is Kind.SQRT:
        return witness.a, witness.b
    for u in order.units():
        a, b = order.mul(u, (witness.a, witness.b))
        if b % 2 == 0:
            return abs((2 * a + b) // 2), abs(b // 2)
    return abs(2 * witness.a + witness.b), abs(witness.b)


def corollary_case_for(order: QuadOrder, ell: int) -> CorollaryCase:
    if order.unit_class is UnitClass.GAUSS:
        return CorollaryCase.GAUSS
    if order.unit_class is UnitClass.EISENSTEIN:
        return CorollaryCase.EISENSTEIN
    if ell == 2:
        return CorollaryCase.GENERIC_ELL2
    return CorollaryCase.GENERIC_ODD


def corollary51_case(
    case: CorollaryCase | str,
    ell: int,
    witness: SplitWitness | tuple,
    order: QuadOrder | None = None,
) -> bool:
    """Sufficient divisibility conditions for 2-cycles, evaluated as stated.

    ``witness`` is read in the basis 1, sqrt(-d) (converted first when
    ``order`` is a HALF order).
    """
    case = CorollaryCase(case)
    if not isinstance(witness, SplitWitness):
        witness = SplitWitness(*witness) if len(witness) == 3 else SplitWitness(witness[0], witness[1], 0)
    if case is CorollaryCase.GAUSS and ell <= 2:
        raise CaseMismatch("case (1) needs ell > 2")
    if case is CorollaryCase.EISENSTEIN and ell <= 3:
        raise CaseMismatch("case (2) needs ell > 3")
    if case is CorollaryCase.GENERIC_ODD and ell <= 2:
        raise CaseMismatch("case (3) needs ell > 2")
    if case is CorollaryCase.GENERIC_ELL2 and ell != 2:
        raise CaseMismatch("case (4) needs ell = 2")
    if order is not None:
        expected = corollary_case_for(order, ell)
        if case is not expected:
            raise CaseMismatch(f"{order} with ell={ell} falls under {expected.value}, not {case.value}")
        if case is CorollaryCase.GENERIC_ELL2 and order.kind is not Kind.SQRT:
            raise CaseMismatch("case (4) needs tau = sqrt(-d)")
    a, b = sqrt_coordinates(witness, order)
    if case is CorollaryCase.GAUSS:
        return (a * a - b * b) % ell == 0 and a % ell != 0
    if case is CorollaryCase.EISENSTEIN:
        return (
            a % ell != 0 and b % ell != 0 and (a + b) % ell != 0
            and ((a * a - b * b) % ell == 0 or (b * b + 2 * a * b) % ell == 0 or (a * a + 2 * a * b) % ell == 0)
        )
    if case is CorollaryCase.GENERIC_ODD:
        return a % ell == 0 and b % ell != 0
    return b % 2 != 0


@dataclass
class Theorem5Report:
    p: int
    ell: int
    L: int
    d: int
    kind: str
    def_poly: tuple
    seed_j: str
    witness: tuple
    case: str
    bound: int
    bound_ok: bool
    pair: tuple | None
    count: int | None
    pair_counts: dict
    verdict: str
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "inputs": {"p": self.p, "ell": self.ell, "L": self.L, "d": self.d, "kind": self.kind,
                       "def_poly": list(self.def_poly), "seed_j": self.seed_j},
            "witness": list(self.witness),
            "case": self.case,
            "bound": self.bound,
            "bound_ok": self.bound_ok,
            "pair": list(self.pair) if self.pair else None,
            "count": self.count,
            "pair_counts": self.pair_counts,
            "verdict": self.verdict,
            "notes": self.notes,
        }


def theorem5_check(
    p: int,
    ell: int,
    L: int,
    d: int,
    kind: Kind | str = Kind.SQRT,
    *,
    def_poly=None,
    j=None,
    data_dir=None,
    seed: int = DEFAULT_SEED,
) -> Theorem5Report:
    """Count L-isogenies between the ell-neighbours joined in a 2-cycle.

    Pairs are found structurally: distinct ell-neighbours (other than 0 and
    1728) joined by L-edges.  ``count`` is the largest pair count; above the
    bound every pair must have exactly two.
    """
    kind = Kind(kind)
    if ell == L or p in (ell, L):
        raise HypothesisFailure("DistinctPrimes", f"need ell, L, p pairwise distinct (got {ell}, {L}, {p})")
    ctx = _field(p, def_poly)
    order = QuadOrder(d, kind)
    if order.split_type(ell) == "split":
        raise HypothesisFailure("EllSplits", f"{ell} splits in {order}; the count bound needs it ramified or inert")
    witness = cornacchia(order, L)
    if witness is None:
        raise HypothesisFailure("NotSplit", f"{L} does not split into principal ideals of {order}")
    case = corollary_case_for(order, ell)
    try:
        ok = corollary51_case(case, ell, witness, order)
    except CaseMismatch as exc:
        raise HypothesisFailure("CorollaryCase", str(exc)) from exc
    if not ok:
        raise HypothesisFailure("CorollaryConditions", f"witness {tuple(witness)} fails case {case.value} for ell={ell}")
    seed_j, _ = _seed(ctx, order, j, seed)
    verts = [v for v in neighbor_vertices(ctx, ell, seed_j, data_dir, seed) if j_class(v) == "GENERIC"]
    g = induced_subgraph(verts, ctx, L, data_dir, seed=seed)
    counts = {}
    for (u, v), k in sorted(g.edges.items()):
        if u < v and g.mult(v, u):
            counts[(u, v)] = (k, g.mult(v, u))
    bound = order.D * ell * ell * L
    bound_ok = p > bound
    pair = None
    count = None
    if counts:
        pair = max(counts, key=lambda uv: (max(counts[uv]), [-x for x in uv[0]]))
        count = counts[pair][0]
    if bound_ok:
        good = bool(counts) and all(a == 2 and b == 2 for a, b in counts.values())
        verdict = CONFIRMED if good else MISMATCH
    else:
        verdict = BELOW_BOUND
    return Theorem5Report(
        p=p, ell=ell, L=L, d=d, kind=kind.value, def_poly=ctx.def_poly, seed_j=ctx.format(seed_j),
        witness=(witness.a, witness.b), case=case.value, bound=bound, bound_ok=bound_ok,
        pair=(ctx.format(pair[0]), ctx.format(pair[1])) if pair else None, count=count,
        pair_counts={f"{ctx.format(u)} <-> {ctx.format(v)}": list(c) for (u, v), c in counts.items()},
        verdict=verdict, notes=[OPTIMALITY_NOTE],
    )


# ---------------------------------------------------------------------------
# neighbourhoods of 1728 and 0

@dataclass
class Lemma2Result:
    p: int
    ell: int
    vertex: int
    neighbors: int
    multiplicities: list
    loops: int
    expected_neighbors: int
    expected_mult: int

    @property
    def holds(self) -> bool:
        return self.neighbors == self.expected_neighbors and all(m == self.expected_mult for m in self.multiplicities)


def lemma2_counts(p: int, ell: int, vertex: int, *, def_poly=None, data_dir=None, seed: int = DEFAULT_SEED) -> Lemma2Result:
    """Distinct neighbours of 1728 (or 0) in G_ell and their edge multiplicities."""
    if ell <= 3:
        raise HypothesisFailure("EllTooSmall", "needs ell > 3")
    if vertex == 1728:
        if p % 4 != 3 or p <= 4 * ell * ell:
            raise HypothesisFailure("Congruence", "needs p = 3 mod 4 and p > 4 ell^2")
        expected_n = (ell - kronecker(-1, ell)) // 2
        expected_k = 2
    elif vertex == 0:
        if p % 3 != 2 or p <= 3 * ell * ell:
            raise HypothesisFailure("Congruence", "needs p = 2 mod 3 and p > 3 ell^2")
        expected_n = (ell - kronecker(ell, 3)) // 3
        expected_k = 3
    else:
        raise ValueError("vertex must be 1728 or 0")
    ctx = _field(p, def_poly)
    v = ctx(vertex)
    rs = neighbors(ctx, ell, v, data_dir, seed)
    others = [(w, k) for w, k in rs if w != v]
    return Lemma2Result(
        p=p, ell=ell, vertex=vertex, neighbors=len(others),
        multiplicities=[k for _, k in others], loops=rs.mult(v),
        expected_neighbors=expected_n, expected_mult=expected_k,
    )


# ---------------------------------------------------------------------------
# random parameter tuples meeting the hypotheses of the cycle-length claim

# Z[tau] of class number one with units +-1, as (d, kind)
GENERIC_CLASS_ONE = [
    (2, Kind.SQRT), (3, Kind.SQRT), (4, Kind.SQRT), (7, Kind.SQRT),
    (7, Kind.HALF), (11, Kind.HALF), (19, Kind.HALF), (27, Kind.HALF),
    (43, Kind.HALF), (67, Kind.HALF), (163, Kind.HALF),
]


def random_hypothesis_tuple(rng, p_max: int, ells, Ls, orders=GENERIC_CLASS_ONE, tries: int = 10_000):
    """(p, ell, L, d, kind) with L principally split, ell not split, the seed
    discriminant inert at p and p > ell^2*L*D."""
    from .field import is_prime

    for _ in range(tries):
        d, kind = rng.choice(orders)
        order = QuadOrder(d, kind)
        ell, L = rng.choice(ells), rng.choice(Ls)
        if ell == L or order.split_type(ell) == "split":
            continue
        if cornacchia(order, L) is None:
            continue
        lo = ell * ell * L * order.D + 1
        if lo >= p_max:
            continue
        for _ in range(200):
            p = rng.randrange(lo, p_max)
            if p > 3 and is_prime(p) and kronecker(order.base_discriminant, p) == -1 and p not in (ell, L):
                return p, ell, L, d, kind
    raise RuntimeError("no admissible tuple found")
