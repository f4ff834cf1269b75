"""Dense univariate polynomials over F_{p^2} and root extraction with multiplicity.

Coefficient lists are stored lowest degree first.  The hot loops (product,
division) work on unreduced Python integers and reduce once per coefficient,
which is what keeps degree-48 modular-polynomial specialisations cheap.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import DivisionByZero
from .field import FieldContext, Fp2Element

DEFAULT_SEED = 0x5EED

_ZERO = Fp2Element(0, 0)


def _trim(cs: list) -> list:
    while cs and cs[-1] == _ZERO:
        cs.pop()
    return cs


def _mul_lists(ctx: FieldContext, f: Sequence, g: Sequence) -> list:
    if not f or not g:
        return []
    p, c0, c1 = ctx.p, ctx.c0, ctx.c1
    n = len(f) + len(g) - 1
    r0 = [0] * n
    r1 = [0] * n
    t = [0] * n
    g0 = [b[0] for b in g]
    g1 = [b[1] for b in g]
    rng = range(len(g))
    for i, (a0, a1) in enumerate(f):
        if a0 == 0 and a1 == 0:
            continue
        for j in rng:
            k = i + j
            b0 = g0[j]
            b1 = g1[j]
            r0[k] += a0 * b0
            r1[k] += a0 * b1 + a1 * b0
            t[k] += a1 * b1
    return _trim([Fp2Element((r0[k] - c0 * t[k]) % p, (r1[k] - c1 * t[k]) % p) for k in range(n)])


def _divmod_lists(ctx: FieldContext, a: Sequence, b: Sequence) -> tuple[list, list]:
    if not b:
        raise DivisionByZero("polynomial division by zero")
    db = len(b) - 1
    if len(a) <= db:
        return [], list(a)
    p, c0, c1 = ctx.p, ctx.c0, ctx.c1
    lead = b[-1]
    inv_lead = None if lead == (1, 0) else ctx.inv(lead)
    b0 = [c[0] for c in b[:db]]
    b1 = [c[1] for c in b[:db]]
    x0 = [c[0] for c in a]
    x1 = [c[1] for c in a]
    q = [_ZERO] * (len(a) - db)
    rng = range(db)
    for k in range(len(a) - 1, db - 1, -1):
        u0 = x0[k] % p
        u1 = x1[k] % p
        if u0 == 0 and u1 == 0:
            continue
        if inv_lead is not None:
            u0, u1 = ctx.mul(Fp2Element(u0, u1), inv_lead)
        q[k - db] = Fp2Element(u0, u1)
        base = k - db
        for i in rng:
            v0 = b0[i]
            v1 = b1[i]
            tt = u1 * v1
            x0[base + i] -= u0 * v0 - c0 * tt
            x1[base + i] -= u0 * v1 + u1 * v0 - c1 * tt
    rem = _trim([Fp2Element(x0[i] % p, x1[i] % p) for i in range(db)])
    return _trim(q), rem


@dataclass(frozen=True)
class Poly:
    """Immutable polynomial; ``coeffs[i]`` is the coefficient of X^i."""

    coeffs: tuple
    ctx: FieldContext

    def __post_init__(self):
        cs = list(self.coeffs)
        _trim(cs)
        object.__setattr__(self, "coeffs", tuple(cs))

    # constructors ---------------------------------------------------------
    @classmethod
    def of(cls, ctx: FieldContext, coeffs: Iterable) -> Poly:
        """Build from ints or field elements, lowest degree first."""
        out = []
        for c in coeffs:
            out.append(ctx(c) if isinstance(c, int) else ctx(c[0], c[1]))
        return cls(tuple(out), ctx)

    @classmethod
    def x(cls, ctx: FieldContext) -> Poly:
        return cls((ctx.zero, ctx.one), ctx)

    @classmethod
    def constant(cls, ctx: FieldContext, c) -> Poly:
        return cls.of(ctx, [c])

    @classmethod
    def from_roots(cls, ctx: FieldContext, roots: Iterable) -> Poly:
        f = cls((ctx.one,), ctx)
        for r in roots:
            f = f * cls((ctx.neg(r), ctx.one), ctx)
        return f

    # basic queries ----------------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Fp2Element:
        return self.coeffs[-1] if self.coeffs else _ZERO

    def __call__(self, x: Fp2Element) -> Fp2Element:
        ctx = self.ctx
        acc = ctx.zero
        for c in reversed(self.coeffs):
            acc = ctx.add(ctx.mul(acc, x), c)
        return acc

    def __iter__(self) -> Iterator[Fp2Element]:
        return iter(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == _ZERO:
                continue
            s = self.ctx.format(c)
            if c[1]:
                s = f"({s})"
            mono = "" if i == 0 else ("X" if i == 1 else f"X^{i}")
            if mono and c == (1, 0):
                terms.append(mono)
            else:
                terms.append(s + ("*" + mono if mono else ""))
        return " + ".join(terms)

    # arithmetic -------------------------------------------------------------
    def _wrap(self, cs) -> Poly:
        return Poly(tuple(cs), self.ctx)

    def __add__(self, other: Poly) -> Poly:
        ctx = self.ctx
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return self._wrap([ctx.add(x, b[i]) if i < len(b) else x for i, x in enumerate(a)])

    def __neg__(self) -> Poly:
        return self._wrap([self.ctx.neg(c) for c in self.coeffs])

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other: Poly) -> Poly:
        return self._wrap(_mul_lists(self.ctx, self.coeffs, other.coeffs))

    def scale(self, c: Fp2Element) -> Poly:
        return self._wrap([self.ctx.mul(c, x) for x in self.coeffs])

    def __divmod__(self, other: Poly) -> tuple[Poly, Poly]:
        q, r = _divmod_lists(self.ctx, self.coeffs, other.coeffs)
        return self._wrap(q), self._wrap(r)

    def __floordiv__(self, other: Poly) -> Poly:
        return divmod(self, other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return divmod(self, other)[1]

    def monic(self) -> Poly:
        if not self.coeffs or self.lc == (1, 0):
            return self
        return self.scale(self.ctx.inv(self.lc))

    def derivative(self) -> Poly:
        p = self.ctx.p
        return self._wrap([Fp2Element(i * c[0] % p, i * c[1] % p) for i, c in enumerate(self.coeffs)][1:])


# module-level API ------------------------------------------------------------

def poly_add(f: Poly, g: Poly) -> Poly:
    return f + g


def poly_mul(f: Poly, g: Poly) -> Poly:
    return f * g


def poly_rem(f: Poly, g: Poly) -> Poly:
    return f % g


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd; ``gcd(0, 0)`` is the zero polynomial."""
    while not g.is_zero():
        f, g = g, f % g
    return f.monic()


def poly_powmod(base: Poly, e: int, mod: Poly) -> Poly:
    ctx = base.ctx
    m = mod.monic().coeffs
    result = [ctx.one]
    b = _divmod_lists(ctx, base.coeffs, m)[1]
    while e:
        if e & 1:
            result = _divmod_lists(ctx, _mul_lists(ctx, result, b), m)[1]
        e >>= 1
        if e:
            b = _divmod_lists(ctx, _mul_lists(ctx, b, b), m)[1]
    return Poly(tuple(result), ctx)


def pth_root(f: Poly) -> Poly:
    """g with g^p = f, for f whose only nonzero terms have exponents divisible by p."""
    ctx = f.ctx
    p = ctx.p
    # in F_{p^2} the p-th root of c is c^p, i.e. its Frobenius conjugate
    return Poly(tuple(ctx.frobenius(c) for c in f.coeffs[::p]), ctx)


def squarefree_decomposition(f: Poly) -> list[tuple[Poly, int]]:
    """Monic square-free factors with multiplicities, ``f = lc * prod(g^k)``.

    Yun's algorithm with the characteristic-p descent: whatever survives the
    gcd loop is a polynomial in X^p, whose p-th root is decomposed again with
    multiplicities scaled by p.
    """
    out: list[tuple[Poly, int]] = []
    stack = [(f.monic(), 1)]
    p = f.ctx.p
    while stack:
        g, scale = stack.pop()
        if g.degree < 1:
            continue
        dg = g.derivative()
        if dg.is_zero():
            stack.append((pth_root(g), scale * p))
            continue
        c = poly_gcd(g, dg)
        w = g // c
        i = 1
        while w.degree > 0:
            y = poly_gcd(w, c)
            z = w // y
            if z.degree > 0:
                out.append((z, i * scale))
            i += 1
            w = y
            c = c // y
        if c.degree > 0:
            stack.append((pth_root(c), scale * p))
    out.sort(key=lambda t: t[1])
    return out


def root_multiplicity(f: Poly, r: Fp2Element) -> int:
    """Exponent of (X - r) in f, by repeated synthetic division."""
    if f.is_zero():
        raise ValueError("every element is a root of the zero polynomial")
    ctx = f.ctx
    cs = list(f.coeffs)
    k = 0
    while len(cs) > 1:
        # Horner: quotient coefficients and remainder
        q = [None] * (len(cs) - 1)
        acc = cs[-1]
        for i in range(len(cs) - 2, -1, -1):
            q[i] = acc
            acc = ctx.add(ctx.mul(acc, r), cs[i])
        if acc != _ZERO:
            break
        cs = q
        k += 1
    return k


@dataclass(frozen=True)
class RootMultiset:
    """Distinct roots with multiplicities, sorted by element encoding."""

    entries: tuple

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, r) -> bool:
        return any(x == r for x, _ in self.entries)

    def roots(self) -> list[Fp2Element]:
        return [r for r, _ in self.entries]

    def mult(self, r) -> int:
        for x, m in self.entries:
            if x == r:
                return m
        return 0

    @property
    def total(self) -> int:
        return sum(m for _, m in self.entries)

    def as_dict(self) -> dict:
        return dict(self.entries)


def _split_linear(g: Poly, rng: random.Random) -> list[Fp2Element]:
    """Roots of a monic square-free g that splits into linear factors over F_{p^2}."""
    ctx = g.ctx
    if g.degree == 0:
        return []
    if g.degree == 1:
        return [ctx.neg(g.coeffs[0])]
    half = (ctx.order - 1) // 2
    one = Poly((ctx.one,), ctx)
    while True:
        shift = Poly((ctx.random(rng), ctx.one), ctx)
        h = poly_powmod(shift, half, g) - one
        d = poly_gcd(g, h)
        if 0 < d.degree < g.degree:
            return _split_linear(d, rng) + _split_linear(g // d, rng)


def roots_in_fp2(f: Poly, seed: int = DEFAULT_SEED) -> RootMultiset:
    """All roots of f in F_{p^2} with exact multiplicities.

    Square-free decomposition first, then ``gcd(g, X^{p^2} - X)`` keeps the
    linear part of each square-free factor, which is split by seeded
    equal-degree factorisation.
    """
    if f.is_zero():
        raise ValueError("root extraction of the zero polynomial")
    ctx = f.ctx
    rng = random.Random(seed)
    x = Poly.x(ctx)
    found: dict = {}
    for g, k in squarefree_decomposition(f):
        frob = poly_powmod(x, ctx.order, g)
        lin = poly_gcd(g, frob - x)
        for r in _split_linear(lin, rng):
            found[r] = found.get(r, 0) + k
    return RootMultiset(tuple(sorted(found.items())))
