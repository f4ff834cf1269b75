"""Imaginary quadratic orders Z[tau], their class groups, and the cycle length m.

Two independent routes to m are provided: :func:`order_m` raises a norm-L
element to powers in (Z/ell)[tau], and :func:`form_order_of_L` takes the order
of the prime form above L in the form class group of Z[ell*tau].  Tests hold
them against each other.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import (
    DiscriminantMismatch,
    InvalidDiscriminant,
    InvalidUnitClass,
    NotPositiveDefinite,
    NotSplit,
)
from .field import is_prime


class Kind(enum.Enum):
    SQRT = "sqrt"  # tau = sqrt(-d)
    HALF = "half"  # tau = (1 + sqrt(-d)) / 2, d = 3 mod 4


class UnitClass(enum.Enum):
    GENERIC = "generic"  # units +-1
    GAUSS = "gauss"  # Z[i]
    EISENSTEIN = "eisenstein"  # Z[(1+sqrt(-3))/2]


# ---------------------------------------------------------------------------
# elementary number theory

def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n) for arbitrary integers."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    if a % 2 == 0 and n % 2 == 0:
        return 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v % 2 == 1 and a % 8 in (3, 5):
        result = -result
    # now n odd and positive: Jacobi symbol
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def sqrt_mod_prime(a: int, p: int) -> int | None:
    """Tonelli-Shanks; smallest-representative-agnostic root, or None."""
    a %= p
    if p == 2 or a == 0:
        return a
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


# ---------------------------------------------------------------------------
# orders

@dataclass(frozen=True)
class QuadOrder:
    """Z[f*tau] for tau = sqrt(-d) or (1+sqrt(-d))/2.

    ``d`` need not be square-free for SQRT orders (Z[2i] is d=4); HALF orders
    require d = 3 mod 4.
    """

    d: int
    kind: Kind = Kind.SQRT
    conductor: int = 1

    def __post_init__(self):
        if self.d < 1:
            raise InvalidDiscriminant(f"d must be positive, got {self.d}")
        if self.kind is Kind.HALF and self.d % 4 != 3:
            raise InvalidDiscriminant(f"(1+sqrt(-{self.d}))/2 needs d = 3 mod 4")
        if self.conductor < 1:
            raise InvalidDiscriminant("conductor must be positive")

    @property
    def trace(self) -> int:
        """Trace of tau; tau^2 = trace*tau - norm."""
        return 0 if self.kind is Kind.SQRT else 1

    @property
    def tau_norm(self) -> int:
        return self.d if self.kind is Kind.SQRT else (1 + self.d) // 4

    @property
    def base_discriminant(self) -> int:
        """Discriminant of Z[tau]: -4d or -d."""
        return -4 * self.d if self.kind is Kind.SQRT else -self.d

    @property
    def D(self) -> int:
        """|disc Z[tau]|, the quantity entering the p-bounds."""
        return -self.base_discriminant

    @property
    def discriminant(self) -> int:
        return self.conductor**2 * self.base_discriminant

    def with_conductor(self, f: int) -> QuadOrder:
        return QuadOrder(self.d, self.kind, f)

    @property
    def unit_class(self) -> UnitClass:
        if self.kind is Kind.SQRT and self.d == 1:
            return UnitClass.GAUSS
        if self.kind is Kind.HALF and self.d == 3:
            return UnitClass.EISENSTEIN
        return UnitClass.GENERIC

    @property
    def unit_count(self) -> int:
        if self.conductor > 1:
            return 2
        return {UnitClass.GENERIC: 2, UnitClass.GAUSS: 4, UnitClass.EISENSTEIN: 6}[self.unit_class]

    def norm(self, a: int, b: int) -> int:
        return a * a + self.trace * a * b + self.tau_norm * b * b

    def mul(self, x: tuple[int, int], y: tuple[int, int], mod: int | None = None) -> tuple[int, int]:
        x0, x1 = x
        y0, y1 = y
        t = x1 * y1
        r = (x0 * y0 - self.tau_norm * t, x0 * y1 + x1 * y0 + self.trace * t)
        if mod is not None:
            return (r[0] % mod, r[1] % mod)
        return r

    def units(self) -> list[tuple[int, int]]:
        """Unit group of Z[tau] in (1, tau) coordinates."""
        uc = self.unit_class
        if uc is UnitClass.GAUSS:
            return [(1, 0), (-1, 0), (0, 1), (0, -1)]
        if uc is UnitClass.EISENSTEIN:
            # tau, tau^2 = tau - 1
            return [(1, 0), (-1, 0), (0, 1), (0, -1), (-1, 1), (1, -1)]
        return [(1, 0), (-1, 0)]

    def split_type(self, ell: int) -> str:
        """How the prime ell behaves in Z[tau]: 'split', 'inert' or 'ramified'."""
        k = kronecker(self.base_discriminant, ell)
        return {1: "split", -1: "inert", 0: "ramified"}[k]

    def __str__(self) -> str:
        tau = f"sqrt(-{self.d})" if self.kind is Kind.SQRT else f"(1+sqrt(-{self.d}))/2"
        return f"Z[{tau}]" if self.conductor == 1 else f"Z[{self.conductor}*{tau}]"


class SplitWitness(NamedTuple):
    """a + b*tau of norm L in (1, tau) coordinates."""

    a: int
    b: int
    L: int


def _isqrt_exact(n: int) -> int | None:
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


def _cornacchia_4(d: int, L: int) -> tuple[int, int] | None:
    """Solve x^2 + d*y^2 = 4L (modified Cornacchia), x, y >= 0."""
    D = -d
    if L == 2:
        for y in range(0, 3):
            x = _isqrt_exact(8 - d * y * y)
            if x is not None:
                return x, y
        return None
    x0 = sqrt_mod_prime(D, L)
    if x0 is None:
        return None
    if (x0 - D) % 2:
        x0 = L - x0
    a, b = 2 * L, x0
    bound = math.isqrt(4 * L)
    while b > bound:
        a, b = b, a % b
    rest = 4 * L - b * b
    if rest % d:
        return None
    y = _isqrt_exact(rest // d)
    if y is None:
        return None
    return b, y


def _cornacchia_1(d: int, L: int) -> tuple[int, int] | None:
    """Solve x^2 + d*y^2 = L, x, y >= 0."""
    if L == 2:
        for y in range(0, 2):
            x = _isqrt_exact(2 - d * y * y)
            if x is not None:
                return x, y
        return None
    x0 = sqrt_mod_prime(-d, L)
    if x0 is None:
        return None
    if 2 * x0 < L:
        x0 = L - x0
    a, b = L, x0
    bound = math.isqrt(L)
    while b > bound:
        a, b = b, a % b
    rest = L - b * b
    if rest % d:
        return None
    y = _isqrt_exact(rest // d)
    if y is None:
        return None
    return b, y


def cornacchia(order: QuadOrder, L: int) -> SplitWitness | None:
    """Witness a + b*tau of norm L when L splits into principal ideals of Z[tau].

    Returns None for inert or ramified L, and for split L whose prime ideals
    are not principal.  Witnesses are normalised to b > 0, with a > 0 whenever such a
    representative exists.
    """
    if order.conductor != 1:
        raise ValueError("cornacchia works on Z[tau] (conductor 1)")
    if not is_prime(L) or kronecker(order.base_discriminant, L) != 1:
        return None
    if order.kind is Kind.SQRT:
        sol = _cornacchia_1(order.d, L)
        if sol is None or sol[1] == 0:
            return None
        return SplitWitness(sol[0], sol[1], L)
    sol = _cornacchia_4(order.d, L)
    if sol is None or sol[1] == 0:
        return None
    x, y = sol
    # a + b*tau = (2a + b)/2 + (b/2) sqrt(-d); candidates over units and conjugation
    cands = []
    for a, b in (((x - y) // 2, y), ((-x - y) // 2, y)):
        for u in order.units():
            for el in ((a, b), (a + b, -b)):
                cands.append(order.mul(u, el))
    # a >= 0 is not always reachable (e.g. -b < a < 0), so it is only preferred
    good = [(a, b) for a, b in cands if b > 0]
    a, b = min(good, key=lambda t: (t[0] <= 0, t[1], abs(t[0])))
    assert order.norm(a, b) == L
    return SplitWitness(a, b, L)


def exhaustive_split(order: QuadOrder, L: int) -> SplitWitness | None:
    """Brute-force search for a norm-L element with b != 0 (test oracle)."""
    if kronecker(order.base_discriminant, L) != 1:
        return None
    bmax = math.isqrt(4 * L // max(order.d, 1)) + 2
    for b in range(1, bmax + 1):
        for a in range(-2 * b - math.isqrt(4 * L) - 2, math.isqrt(4 * L) + 3):
            if order.norm(a, b) == L:
                return SplitWitness(a, b, L)
    return None


def order_m(
    witness: SplitWitness,
    order: QuadOrder,
    ell: int,
    unit_class: UnitClass | None = None,
) -> int:
    """Least m such that u * (a + b*tau)^m lies in Z[ell*tau] for some unit u.

    Computed with coordinates reduced mod ell; membership in Z[ell*tau] means
    the tau-coordinate vanishes mod ell.
    """
    expected = order.unit_class
    if unit_class is None:
        unit_class = expected
    elif unit_class is not expected:
        raise InvalidUnitClass(f"{unit_class.value} units do not belong to {order}")
    if witness.L % ell == 0:
        raise ValueError("ell must not divide L")
    units = order.units()
    base = (witness.a % ell, witness.b % ell)
    power = base
    limit = 6 * (ell + 1) + 1
    for m in range(1, limit + 1):
        for u in units:
            if order.mul(u, power, ell)[1] == 0:
                return m
        power = order.mul(power, base, ell)
    raise ArithmeticError("no power of the witness reached Z[ell*tau]")


# ---------------------------------------------------------------------------
# binary quadratic forms

class BQForm(NamedTuple):
    A: int
    B: int
    C: int

    @property
    def discriminant(self) -> int:
        return self.B * self.B - 4 * self.A * self.C

    def inverse(self) -> BQForm:
        return BQForm(self.A, -self.B, self.C)

    def is_reduced(self) -> bool:
        a, b, c = self
        if not (abs(b) <= a <= c):
            return False
        if (abs(b) == a or a == c) and b < 0:
            return False
        return True


def principal_form(disc: int) -> BQForm:
    _check_disc(disc)
    b = disc % 2
    return BQForm(1, b, (b * b - disc) // 4)


def _check_disc(disc: int) -> None:
    if disc >= 0 or disc % 4 not in (0, 1):
        raise InvalidDiscriminant(f"{disc} is not a negative discriminant")


def reduce_form(f: BQForm) -> BQForm:
    a, b, c = f
    disc = b * b - 4 * a * c
    if disc >= 0 or a <= 0:
        raise NotPositiveDefinite(f"{tuple(f)} is not positive definite")
    while True:
        r = b % (2 * a)
        if r > a:
            r -= 2 * a
        if r != b:
            b = r
            c = (b * b - disc) // (4 * a)
        if a > c:
            a, b, c = c, -b, a
            continue
        if a == c and b < 0:
            b = -b
        return BQForm(a, b, c)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def compose(f: BQForm, g: BQForm) -> BQForm:
    """Gauss composition of primitive forms, returned reduced."""
    disc = f.discriminant
    if g.discriminant != disc:
        raise DiscriminantMismatch(f"{disc} != {g.discriminant}")
    if f.A > g.A:
        f, g = g, f
    a1, b1, _ = f
    a2, b2, c2 = g
    s = (b1 + b2) // 2
    n = b2 - s
    if a2 % a1 == 0:
        y1, d = 0, a1
    else:
        d, u, _ = _xgcd(a2, a1)
        y1 = u
    if s % d == 0:
        y2, x2, d1 = -1, 0, d
    else:
        d1, x2, y2 = _xgcd(s, d)
        y2 = -y2
    v1 = a1 // d1
    v2 = a2 // d1
    r = (y1 * y2 * n - x2 * c2) % v1
    b3 = b2 + 2 * v2 * r
    a3 = v1 * v2
    c3 = (c2 * d1 + r * (b2 + v2 * r)) // v1
    return reduce_form(BQForm(a3, b3, c3))


def reduced_forms(disc: int) -> list[BQForm]:
    """All primitive reduced forms of a negative discriminant."""
    _check_disc(disc)
    out = []
    bmax = math.isqrt(-disc // 3)
    for b in range(-bmax, bmax + 1):
        if (b - disc) % 2:
            continue
        a = max(abs(b), 1)
        while 3 * a * a <= -disc:
            num = b * b - disc
            if num % (4 * a) == 0:
                c = num // (4 * a)
                f = BQForm(a, b, c)
                if c >= a and f.is_reduced() and math.gcd(math.gcd(a, b), c) == 1:
                    out.append(f)
            a += 1
    return sorted(out)


def class_number(disc: int) -> int:
    return len(reduced_forms(disc))


def class_ratio(order: QuadOrder, ell: int) -> int:
    """h(Z[ell*tau]) / h(Z[tau]) = (ell - (disc/ell)) / [O* : O'*].

    The symbol uses the discriminant of Z[tau] itself, which is 0 when ell
    already divides its conductor.
    """
    if order.conductor != 1:
        raise ValueError("class_ratio takes Z[tau] with conductor 1")
    num = ell - kronecker(order.base_discriminant, ell)
    index = order.unit_count // 2
    q, r = divmod(num, index)
    assert r == 0
    return q


def prime_form(disc: int, L: int) -> BQForm:
    """A form (L, B, C) of the given discriminant, B >= 0 with B = disc mod 2."""
    _check_disc(disc)
    if L == 2:
        for B in range(0, 4):
            if (B * B - disc) % 8 == 0:
                return BQForm(2, B, (B * B - disc) // 8)
        raise NotSplit(f"2 is not represented by a form of discriminant {disc}")
    if disc % L == 0:
        raise NotSplit(f"{L} divides the discriminant {disc}")
    r = sqrt_mod_prime(disc, L)
    if r is None:
        raise NotSplit(f"{disc} is not a square mod {L}")
    B = r if (r - disc) % 2 == 0 else L - r
    return BQForm(L, B, (B * B - disc) // (4 * L))


def form_order(f: BQForm) -> int:
    e = principal_form(f.discriminant)
    g = reduce_form(f)
    k = 1
    while g != e:
        g = compose(g, f)
        k += 1
    return k


def form_order_of_L(order: QuadOrder, L: int) -> int:
    """Order of the class of a prime above L in the class group of ``order``."""
    disc = order.discriminant
    if kronecker(disc, L) != 1:
        raise NotSplit(f"{L} does not split in {order}")
    return form_order(prime_form(disc, L))
