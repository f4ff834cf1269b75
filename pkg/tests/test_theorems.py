import json
import random

import pytest

from isocycle.errors import CaseMismatch, HypothesisFailure
from isocycle.field import make_field
from isocycle.quadorder import Kind, QuadOrder, SplitWitness, cornacchia
from isocycle.ssgraph import IsogenyGraph, simple_cycles
from isocycle.theorems import (
    BELOW_BOUND,
    CONFIRMED,
    HYPOTHESES_NOT_MET,
    CorollaryCase,
    construct_cycles,
    corollary51_case,
    lemma2_counts,
    nonbacktracking_profile,
    order_conductor,
    random_hypothesis_tuple,
    sqrt_coordinates,
    theorem5_check,
)

LEVELS = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]


def test_example_one_reports():
    for L, m in ((11, 3), (23, 6)):
        r = construct_cycles(3461, 5, L, 7, Kind.SQRT, def_poly=(1, 1))
        assert r.verdict == CONFIRMED and r.m == r.m_forms == m
        assert len(r.vertices) == 6 and not r.bound_ok
        assert all(obs == {m: 2} for obs in r.observed.values())
        assert r.seed_j == "3185" and r.class_ratio == 6


def test_example_two_report():
    r = construct_cycles(12601, 2, 47, 11, Kind.SQRT, def_poly=(11, 0))
    assert r.seed_j == "4825" and r.seed_disc == -44
    assert r.excluded == ["5035"]
    assert r.trichotomy == {"5579b+1350": "2-cycles", "7022b+1350": "2-cycles", "5035": "loops"}
    assert r.theorem1_holds and r.verdict == CONFIRMED and r.m == 2


def test_half_seed_for_minus_eleven():
    # j = 5035 has CM by the maximal order; its 2-neighbours are a different triple
    r = construct_cycles(12601, 2, 47, 11, Kind.HALF, def_poly=(11, 0))
    assert r.seed_j == "5035" and "5035" not in r.vertices


def test_ramified_horizontal_neighbour_is_excluded():
    r = construct_cycles(17093, 2, 43, 2, Kind.SQRT)
    assert r.ell_split == "ramified" and r.excluded == ["8000"]
    assert r.observed["8000"] == {1: 2} and r.verdict == CONFIRMED


def test_hypothesis_errors():
    with pytest.raises(HypothesisFailure) as e:
        construct_cycles(3461, 5, 5, 7)
    assert e.value.condition == "DistinctPrimes"
    with pytest.raises(HypothesisFailure) as e:
        construct_cycles(3461, 5, 13, 7)
    assert e.value.condition == "NotSplit"
    with pytest.raises(HypothesisFailure) as e:
        construct_cycles(3469, 5, 11, 7)  # -28 splits at 3469
    assert e.value.condition == "SeedNotFound"


def test_split_ell_is_capped():
    # 2 splits in Z[(1+sqrt(-7))/2]
    r = construct_cycles(3461, 2, 11, 7, Kind.HALF, def_poly=(1, 1))
    assert r.ell_split == "split" and r.verdict == HYPOTHESES_NOT_MET
    assert r.weak_claim_holds is not None


def test_report_json_is_stable():
    a = construct_cycles(3461, 5, 11, 7, def_poly=(1, 1)).to_dict()
    b = construct_cycles(3461, 5, 11, 7, def_poly=(1, 1)).to_dict()
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    assert "graph" not in a
    ev = construct_cycles(3461, 5, 11, 7, def_poly=(1, 1)).to_dict(evidence=True)
    assert len(ev["graph"]["edges"]) == 12 and len(ev["cycles"]) == 10


def test_nonbacktracking_counts():
    F = make_field(101, (2, 0))
    a, b = F(1), F(2)
    g = IsogenyGraph(F, 5, [a, b], {(a, b): 2, (b, a): 2})
    assert nonbacktracking_profile(g, simple_cycles(g)) == {a: {2: 2}, b: {2: 2}}
    g = IsogenyGraph(F, 5, [a, b], {(a, b): 1, (b, a): 1, (a, a): 2})
    assert nonbacktracking_profile(g, simple_cycles(g)) == {a: {1: 2}, b: {}}


def test_m_one_means_loops():
    rng = random.Random(7)
    seen = 0
    for _ in range(400):
        t = random_hypothesis_tuple(rng, 20000, [2, 3, 5, 7], LEVELS)
        r = construct_cycles(*t)
        if r.m == 1:
            seen += 1
            assert all(r.observed[v].get(1, 0) >= 2 for v in r.vertices if v not in r.excluded)
        if seen >= 5:
            break
    assert seen >= 5


@pytest.mark.slow
def test_random_sweep_confirmed():
    rng = random.Random(2026)
    for _ in range(60):
        t = random_hypothesis_tuple(rng, 50000, [2, 3, 5, 7, 11, 13], LEVELS)
        r = construct_cycles(*t)
        assert r.verdict == CONFIRMED, (t, r.to_dict(evidence=True))
        for v in r.vertices:
            if v not in r.excluded:
                assert min(r.observed[v]) == r.m


def test_conjugate_symmetry_of_subgraphs():
    r = construct_cycles(3461, 5, 23, 7, def_poly=(1, 1))
    g = r.graph
    assert g.reversed().edges == g.edges


def test_corollary_predicates():
    assert corollary51_case(CorollaryCase.GAUSS, 3, SplitWitness(3, 2, 13)) is False
    assert corollary51_case(CorollaryCase.GENERIC_ODD, 3, SplitWitness(3, 2, 37)) is True
    assert corollary51_case(CorollaryCase.GENERIC_ELL2, 2, SplitWitness(2, 1, 11)) is True
    assert corollary51_case(CorollaryCase.GENERIC_ODD, 5, SplitWitness(2, 1, 11)) is False
    assert corollary51_case("gauss", 5, SplitWitness(1, 2, 5)) is False
    assert corollary51_case("gauss", 3, SplitWitness(1, 2, 5)) is True
    with pytest.raises(CaseMismatch):
        corollary51_case(CorollaryCase.GAUSS, 2, SplitWitness(3, 2, 13))
    with pytest.raises(CaseMismatch):
        corollary51_case(CorollaryCase.EISENSTEIN, 3, SplitWitness(2, 1, 7))
    with pytest.raises(CaseMismatch):
        corollary51_case(CorollaryCase.GENERIC_ELL2, 3, SplitWitness(2, 1, 11))
    with pytest.raises(CaseMismatch):
        corollary51_case(CorollaryCase.GAUSS, 3, SplitWitness(2, 1, 11), QuadOrder(7))


def test_sqrt_coordinates_of_half_witness():
    o = QuadOrder(7, Kind.HALF)
    w = cornacchia(o, 37)
    assert sqrt_coordinates(w, o) == (3, 2)
    assert corollary51_case(CorollaryCase.GENERIC_ODD, 3, w, o)
    e = QuadOrder(3, Kind.HALF)
    x, y = sqrt_coordinates(cornacchia(e, 7), e)
    assert x * x + 3 * y * y == 7


def test_conductor():
    assert order_conductor(QuadOrder(1)) == 1
    assert order_conductor(QuadOrder(4)) == 2
    assert order_conductor(QuadOrder(11)) == 2
    assert order_conductor(QuadOrder(27, Kind.HALF)) == 3
    assert order_conductor(QuadOrder(7, Kind.HALF)) == 1


def test_theorem5_examples():
    r = theorem5_check(827, 2, 13, 4, Kind.SQRT, def_poly=(1, 0))
    assert r.count == 3 and r.bound == 832 and r.verdict == BELOW_BOUND
    assert set(r.pair) == {"774b+169", "53b+169"}
    r = theorem5_check(2309, 3, 37, 7, Kind.HALF, def_poly=(1, 1))
    assert r.count == 3 and r.bound == 2331 and r.verdict == BELOW_BOUND
    assert set(r.pair) == {"860b+1506", "1449b+646"}
    r = theorem5_check(839, 2, 13, 4, Kind.SQRT)
    assert r.count == 2 and r.verdict == CONFIRMED
    assert json.loads(json.dumps(r.to_dict()))["count"] == 2


def test_theorem5_monotone_above_bound():
    from isocycle.field import is_prime
    from isocycle.quadorder import kronecker

    for args, ok in (((2, 13, 4, Kind.SQRT), lambda p: p % 4 == 3),
                     ((3, 37, 7, Kind.HALF), lambda p: kronecker(-7, p) == -1)):
        o = QuadOrder(args[2], args[3])
        bound = o.D * args[0] ** 2 * args[1]
        primes = [p for p in range(bound + 1, bound + 2500) if is_prime(p) and ok(p)][:8]
        for p in primes:
            r = theorem5_check(p, *args)
            assert r.verdict == CONFIRMED and r.count == 2, p


def test_theorem5_hypotheses():
    with pytest.raises(HypothesisFailure) as e:
        theorem5_check(3461, 2, 11, 7, Kind.HALF)
    assert e.value.condition == "EllSplits"
    with pytest.raises(HypothesisFailure) as e:
        theorem5_check(3461, 5, 11, 7, Kind.SQRT)  # 5 does not divide a = 2
    assert e.value.condition == "CorollaryConditions"


@pytest.mark.parametrize("p,ell,vertex,n,k", [(103, 5, 1728, 2, 2), (107, 5, 0, 2, 3), (199, 7, 1728, 4, 2)])
def test_lemma2(p, ell, vertex, n, k):
    r = lemma2_counts(p, ell, vertex)
    assert r.holds and r.neighbors == n and set(r.multiplicities) == {k}


def test_lemma2_preconditions():
    with pytest.raises(HypothesisFailure):
        lemma2_counts(103, 7, 1728)  # needs p > 196
    with pytest.raises(HypothesisFailure):
        lemma2_counts(103, 3, 1728)
    with pytest.raises(HypothesisFailure):
        lemma2_counts(101, 5, 1728)
