import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isocycle.errors import DiscriminantMismatch, InvalidDiscriminant, InvalidUnitClass, NotPositiveDefinite, NotSplit
from isocycle.field import is_prime
from isocycle.quadorder import (
    BQForm,
    Kind,
    QuadOrder,
    SplitWitness,
    UnitClass,
    class_number,
    class_ratio,
    compose,
    cornacchia,
    exhaustive_split,
    form_order,
    form_order_of_L,
    kronecker,
    order_m,
    prime_form,
    principal_form,
    reduce_form,
    reduced_forms,
    sqrt_mod_prime,
)

SWEEP_ORDERS = [
    QuadOrder(1), QuadOrder(2), QuadOrder(3), QuadOrder(3, Kind.HALF), QuadOrder(5),
    QuadOrder(7), QuadOrder(7, Kind.HALF), QuadOrder(11, Kind.HALF),
]
PRIMES = [p for p in range(2, 1000) if is_prime(p)]


def jacobi_naive(a, p):
    a %= p
    if a == 0:
        return 0
    return 1 if any(x * x % p == a for x in range(1, p)) else -1


def test_kronecker_values():
    assert kronecker(-7, 3461) == -1
    assert kronecker(-7, 2309) == -1
    for ell in PRIMES[1:60]:
        assert kronecker(-1, ell) == (1 if ell % 4 == 1 else -1)
        for a in range(-30, 30):
            assert kronecker(a, ell) == jacobi_naive(a, ell)
    # at 2: (D/2) = 0, 1, -1 for D even, D = +-1 mod 8, D = +-3 mod 8
    assert [kronecker(D, 2) for D in (-4, -7, -3, -11, -15)] == [0, 1, -1, -1, 1]


def test_sqrt_mod_prime():
    for p in PRIMES[1:80]:
        for a in range(p):
            r = sqrt_mod_prime(a, p)
            if jacobi_naive(a, p) == -1:
                assert r is None
            else:
                assert r * r % p == a


def test_order_invariants():
    o = QuadOrder(7)
    assert (o.D, o.base_discriminant, o.with_conductor(5).discriminant) == (28, -28, -700)
    assert QuadOrder(7, Kind.HALF).D == 7
    assert QuadOrder(4).D == 16
    with pytest.raises(InvalidDiscriminant):
        QuadOrder(5, Kind.HALF)
    with pytest.raises(InvalidDiscriminant):
        QuadOrder(0)


def test_cornacchia_examples():
    o = QuadOrder(7)
    assert cornacchia(o, 11)[:2] == (2, 1)
    assert cornacchia(o, 23)[:2] == (4, 1)
    assert cornacchia(QuadOrder(1), 13)[:2] == (3, 2)
    assert cornacchia(o, 5) is None
    assert cornacchia(o, 7) is None  # ramified


@pytest.mark.parametrize("order", SWEEP_ORDERS + [QuadOrder(11), QuadOrder(4), QuadOrder(6), QuadOrder(23, Kind.HALF)],
                         ids=str)
def test_cornacchia_vs_exhaustive(order):
    for L in PRIMES:
        w = cornacchia(order, L)
        oracle = exhaustive_split(order, L)
        assert (w is None) == (oracle is None), L
        if w is not None:
            assert order.norm(w.a, w.b) == L and w.b > 0
            if order.kind is Kind.SQRT:
                assert w.a > 0


def test_order_m_examples():
    o = QuadOrder(7)
    for L, m in ((11, 3), (23, 6), (179, 1), (53, 2)):
        assert order_m(cornacchia(o, L), o, 5) == m
        assert order_m(cornacchia(o, L), o, 5, UnitClass.GENERIC) == m
    with pytest.raises(InvalidUnitClass):
        order_m(cornacchia(o, 11), o, 5, UnitClass.GAUSS)
    # ell | b gives m = 1
    assert order_m(SplitWitness(2, 5, 179), o, 5) == 1
    # Gaussian loop case: i(3 + 2i) = -2 + 3i already lies in Z[3i]
    g = QuadOrder(1)
    assert order_m(cornacchia(g, 13), g, 3) == 1


def test_m_two_routes_agree_on_sweep():
    for order in SWEEP_ORDERS:
        for ell in (2, 3, 5, 7):
            ratio = class_ratio(order, ell)
            for L in PRIMES:
                if L >= 200 or L == ell:
                    continue
                w = cornacchia(order, L)
                if w is None:
                    continue
                m = order_m(w, order, ell)
                assert m == form_order_of_L(order.with_conductor(ell), L), (str(order), ell, L)
                assert ratio % m == 0


def dirichlet_class_number(D):
    """h(D) for a fundamental D < -4 from the class number formula."""
    return -sum(kronecker(D, a) * a for a in range(1, -D)) // -D


def is_fundamental(D):
    if D % 4 == 1:
        return all(D % (q * q) for q in range(3, math.isqrt(-D) + 1, 2))
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and all(m % (q * q) for q in range(3, math.isqrt(-m) + 1, 2))
    return False


def test_class_number_examples():
    assert class_number(-28) == 1
    assert class_number(-4) == 1
    assert class_number(-44) == 3
    assert class_number(-700) == 6
    assert class_number(-16) == 1
    with pytest.raises(InvalidDiscriminant):
        class_number(-5)


def test_class_number_vs_dirichlet():
    for D in range(-7, -1500, -1):
        if is_fundamental(D):
            assert class_number(D) == dirichlet_class_number(D), D


def test_class_ratio_vs_enumeration():
    assert class_ratio(QuadOrder(7), 5) == 6
    assert class_ratio(QuadOrder(1), 2) == 1
    assert class_ratio(QuadOrder(7), 7) == 7
    assert class_ratio(QuadOrder(7), 2) == 2  # h(-112) / h(-28)
    for order in SWEEP_ORDERS + [QuadOrder(11), QuadOrder(13)]:
        for ell in (2, 3, 5, 7, 11):
            h = class_number(order.discriminant)
            h2 = class_number(order.with_conductor(ell).discriminant)
            assert h2 == h * class_ratio(order, ell), (str(order), ell)


def test_reduce_form():
    assert reduce_form(principal_form(-28)) == principal_form(-28)
    r = reduce_form(BQForm(11, 8, 2))
    assert r == BQForm(2, 0, 3) and r in reduced_forms(-24)
    with pytest.raises(NotPositiveDefinite):
        reduce_form(BQForm(1, 5, 1))
    with pytest.raises(NotPositiveDefinite):
        reduce_form(BQForm(-1, 0, -3))


@given(st.integers(1, 500), st.integers(-500, 500), st.integers(1, 500))
@settings(max_examples=300, deadline=None)
def test_reduce_is_idempotent_and_equivalent(a, b, c):
    f = BQForm(a, b, c)
    if f.discriminant >= 0:
        return
    r = reduce_form(f)
    assert r.is_reduced() and reduce_form(r) == r and r.discriminant == f.discriminant


def random_forms(disc, k, rng):
    """Unreduced forms in random classes: act on reduced ones by (1 t; 0 1)."""
    base = reduced_forms(disc)
    out = []
    for _ in range(k):
        a, b, c = rng.choice(base)
        t = rng.randint(-5, 5)
        out.append(BQForm(a, b + 2 * a * t, a * t * t + b * t + c))
    return out


@pytest.mark.parametrize("disc", [-700, -1204, -2891, -5000, -3299])
def test_group_laws(disc, rng):
    e = principal_form(disc)
    forms = random_forms(disc, 12, rng)
    for f in forms:
        assert compose(e, f) == reduce_form(f)
        assert compose(f, f.inverse()) == e
    for f, g, h in itertools.islice(itertools.product(forms, repeat=3), 200):
        assert compose(f, g) == compose(g, f)
        assert compose(compose(f, g), h) == compose(f, compose(g, h))
    with pytest.raises(DiscriminantMismatch):
        compose(e, principal_form(-28))


@pytest.mark.parametrize("disc", [-700, -3299, -4 * 5 * 7 * 11])
def test_group_closure_has_class_number_elements(disc):
    forms = set(reduced_forms(disc))
    for f in forms:
        for g in forms:
            assert compose(f, g) in forms
    assert sum(1 for f in forms if form_order(f) == 1) == 1
    for f in forms:
        assert len(forms) % form_order(f) == 0


def test_form_order_of_L_examples():
    o = QuadOrder(7, conductor=5)
    assert [form_order_of_L(o, L) for L in (11, 23, 179)] == [3, 6, 1]
    group = set()
    f = prime_form(-700, 11)
    g = principal_form(-700)
    for _ in range(6):
        g = compose(g, f)
        group.add(g)
    assert len(group) == 3 and class_number(-700) == 6
    with pytest.raises(NotSplit):
        form_order_of_L(o, 5)
    with pytest.raises(NotSplit):
        prime_form(-700, 3)
