"""Arithmetic in F_p and F_{p^2} = F_p(b) with a caller-chosen defining polynomial.

Elements are plain ``(a0, a1)`` pairs meaning ``a0 + a1*b``; all arithmetic goes
through a :class:`FieldContext`, which knows ``p`` and the relation
``b^2 + c1*b + c0 = 0``.  Keeping the basis explicit lets coordinates such as
``2591b+1415`` be reproduced verbatim for any published choice of ``b``.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import NamedTuple

from .errors import (
    CompositeModulus,
    DivisionByZero,
    MalformedLiteral,
    ModulusTooLarge,
    ReduciblePolynomial,
)

MAX_MODULUS = 1 << 61

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(n: int) -> int:
    """Smallest prime strictly greater than n."""
    n += 1
    while not is_prime(n):
        n += 1
    return n


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


_CHUNK = 18
_CHUNK_SCALE = 10**_CHUNK


def reduce_integer_string(s: str, p: int) -> int:
    """Reduce a signed decimal literal mod p without building the full integer.

    Digits are folded in fixed-size chunks, so intermediates stay below
    ``p * 10**18`` however long the literal is.
    """
    t = s.strip()
    neg = t.startswith("-")
    if t[:1] in "+-" and t:
        t = t[1:]
    if not t or not t.isascii() or not t.isdigit():
        raise MalformedLiteral(f"not a decimal integer: {s!r}")
    head = len(t) % _CHUNK or _CHUNK
    r = int(t[:head]) % p
    for k in range(head, len(t), _CHUNK):
        r = (r * _CHUNK_SCALE + int(t[k:k + _CHUNK])) % p
    return (-r) % p if neg else r


class Fp2Element(NamedTuple):
    """``a0 + a1*b`` with both coordinates in [0, p)."""

    a0: int
    a1: int

    def in_base_field(self) -> bool:
        return self.a1 == 0


_ELEMENT_RE = re.compile(
    r"""^\s*(?:
        (?P<a1>[+-]?\s*\d*)\s*\*?\s*[bβ]\s*(?:(?P<sign>[+-])\s*(?P<a0>\d+))?
      | (?P<only>[+-]?\s*\d+)
    )\s*$""",
    re.VERBOSE,
)


@dataclass(frozen=True)
class FieldContext:
    """F_{p^2} = F_p[b] / (b^2 + c1*b + c0).  Build with :func:`make_field`."""

    p: int
    c0: int
    c1: int

    @property
    def def_poly(self) -> tuple[int, int]:
        return (self.c0, self.c1)

    @property
    def order(self) -> int:
        return self.p * self.p

    # construction ---------------------------------------------------------
    def __call__(self, a0: int, a1: int = 0) -> Fp2Element:
        return Fp2Element(a0 % self.p, a1 % self.p)

    @property
    def zero(self) -> Fp2Element:
        return Fp2Element(0, 0)

    @property
    def one(self) -> Fp2Element:
        return Fp2Element(1, 0)

    @property
    def gen(self) -> Fp2Element:
        return Fp2Element(0, 1)

    def from_int_string(self, s: str) -> Fp2Element:
        return Fp2Element(reduce_integer_string(s, self.p), 0)

    def random(self, rng: random.Random, nonzero: bool = False) -> Fp2Element:
        while True:
            x = Fp2Element(rng.randrange(self.p), rng.randrange(self.p))
            if not nonzero or x != (0, 0):
                return x

    # arithmetic -----------------------------------------------------------
    def add(self, x: Fp2Element, y: Fp2Element) -> Fp2Element:
        p = self.p
        return Fp2Element((x[0] + y[0]) % p, (x[1] + y[1]) % p)

    def sub(self, x: Fp2Element, y: Fp2Element) -> Fp2Element:
        p = self.p
        return Fp2Element((x[0] - y[0]) % p, (x[1] - y[1]) % p)

    def neg(self, x: Fp2Element) -> Fp2Element:
        p = self.p
        return Fp2Element(-x[0] % p, -x[1] % p)

    def mul(self, x: Fp2Element, y: Fp2Element) -> Fp2Element:
        p = self.p
        t = x[1] * y[1]
        return Fp2Element(
            (x[0] * y[0] - self.c0 * t) % p,
            (x[0] * y[1] + x[1] * y[0] - self.c1 * t) % p,
        )

    def norm(self, x: Fp2Element) -> int:
        a0, a1 = x
        return (a0 * a0 - self.c1 * a0 * a1 + self.c0 * a1 * a1) % self.p

    def frobenius(self, x: Fp2Element) -> Fp2Element:
        # b^p is the other root -c1 - b of the defining polynomial
        p = self.p
        return Fp2Element((x[0] - self.c1 * x[1]) % p, -x[1] % p)

    def inv(self, x: Fp2Element) -> Fp2Element:
        n = self.norm(x)
        if n == 0:
            raise DivisionByZero("inverse of zero in F_{p^2}")
        ninv = pow(n, -1, self.p)
        c = self.frobenius(x)
        return Fp2Element(c[0] * ninv % self.p, c[1] * ninv % self.p)

    def div(self, x: Fp2Element, y: Fp2Element) -> Fp2Element:
        return self.mul(x, self.inv(y))

    def pow(self, x: Fp2Element, e: int) -> Fp2Element:
        if e < 0:
            return self.pow(self.inv(x), -e)
        result = self.one
        base = Fp2Element(x[0] % self.p, x[1] % self.p)
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    # rendering ------------------------------------------------------------
    def format(self, x: Fp2Element) -> str:
        """``"2591b+1415"`` style; bare decimal for base-field elements."""
        a0, a1 = x
        if a1 == 0:
            return str(a0)
        if a0 == 0:
            return f"{a1}b"
        return f"{a1}b+{a0}"

    def parse(self, s: str) -> Fp2Element:
        m = _ELEMENT_RE.match(s)
        if m is None:
            raise MalformedLiteral(f"cannot parse field element {s!r}")
        if m.group("only") is not None:
            return self(int(m.group("only").replace(" ", "")))
        a1s = m.group("a1").replace(" ", "")
        a1 = {"": 1, "+": 1, "-": -1}.get(a1s)
        if a1 is None:
            a1 = int(a1s)
        a0 = 0
        if m.group("a0") is not None:
            a0 = int(m.group("a0")) * (-1 if m.group("sign") == "-" else 1)
        return self(a0, a1)


def make_field(p: int, def_poly: tuple[int, int]) -> FieldContext:
    """Validate ``p`` and ``b^2 + c1*b + c0`` and return the field context.

    ``def_poly`` is ``(c0, c1)``.
    """
    if p >= MAX_MODULUS:
        raise ModulusTooLarge(f"p must be below 2^61, got {p}")
    if p <= 3 or not is_prime(p):
        raise CompositeModulus(f"{p} is not a prime greater than 3")
    c0, c1 = (c % p for c in def_poly)
    # monic quadratic over odd F_p is irreducible iff its discriminant is a non-residue
    if legendre(c1 * c1 - 4 * c0, p) != -1:
        raise ReduciblePolynomial(f"b^2 + {c1}b + {c0} has a root mod {p}")
    return FieldContext(p, c0, c1)


def default_def_poly(p: int) -> tuple[int, int]:
    """``b^2+b+1`` when p = 2 mod 3, otherwise ``b^2 - n`` for the least non-residue n."""
    if p % 3 == 2:
        return (1, 1)
    n = 2
    while legendre(n, p) != -1:
        n += 1
    return (-n % p, 0)


def default_field(p: int) -> FieldContext:
    return make_field(p, default_def_poly(p))
