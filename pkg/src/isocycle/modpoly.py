"""Classical modular polynomials Phi_N read from ``[i,j] c`` coefficient files.

File format: one entry per line, ``[i,j] c`` with exponents ``i >= j >= 0`` and
a signed decimal coefficient.  An entry with ``i > j`` stands for both
``X^i Y^j`` and ``X^j Y^i``; missing entries are zero; ``#`` starts a comment
line.  This is the layout of the public classical modular polynomial tables,
so those files can be used unchanged.
"""
from __future__ import annotations

import os
import random
import re
from functools import lru_cache
from pathlib import Path

from .errors import DegreeMismatch, MissingFile, ParseError
from .field import FieldContext, Fp2Element, is_prime, reduce_integer_string
from .poly import Poly

ENV_VAR = "ISOCYCLE_MODPOLY_DIR"
FILE_PATTERNS = ("phi_{n}.txt", "phi_j_{n}.txt")

_ENTRY_RE = re.compile(r"^\[\s*(\d+)\s*,\s*(\d+)\s*\]\s+([+-]?\d+)\s*$")

_BUNDLED = Path(__file__).resolve().parents[2] / "data" / "phi"


def resolve_data_dir(flag: str | os.PathLike | None = None) -> Path:
    """Explicit argument, then ``$ISOCYCLE_MODPOLY_DIR``, then ``./data/phi``.

    When none of these exist and the package runs from a source checkout, the
    checkout's ``data/phi`` is used.
    """
    if flag:
        return Path(flag)
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    local = Path("data") / "phi"
    if local.is_dir() or not _BUNDLED.is_dir():
        return local
    return _BUNDLED


def modpoly_path(level: int, data_dir: str | os.PathLike | None = None) -> Path:
    root = resolve_data_dir(data_dir)
    for pat in FILE_PATTERNS:
        cand = root / pat.format(n=level)
        if cand.is_file():
            return cand
    raise MissingFile(level, root / FILE_PATTERNS[0].format(n=level))


class ModularPolynomial:
    """Phi_N with integer coefficients kept as decimal strings.

    ``coeffs`` maps every ordered exponent pair (i, j) to its coefficient, so
    a loaded polynomial is explicitly symmetric; :meth:`with_coefficient` can
    break that for mutation tests.
    """

    def __init__(self, level: int, coeffs: dict, source: str | None = None):
        self.level = level
        self.coeffs = dict(coeffs)
        self.source = source
        self._reduced: dict[int, list[list[int]]] = {}

    @property
    def degree(self) -> int:
        return max(i for i, _ in self.coeffs) if self.coeffs else -1

    def coefficient(self, i: int, j: int) -> int:
        return int(self.coeffs.get((i, j), "0"))

    def with_coefficient(self, i: int, j: int, value: int) -> "ModularPolynomial":
        c = dict(self.coeffs)
        c[(i, j)] = str(value)
        return ModularPolynomial(self.level, c, self.source)

    def reduced(self, p: int) -> list[list[int]]:
        """Dense ``M[i][j]`` = coefficient of X^i Y^j mod p (cached per p)."""
        if p not in self._reduced:
            n = self.degree + 1
            m = [[0] * n for _ in range(n)]
            for (i, j), s in self.coeffs.items():
                m[i][j] = reduce_integer_string(s, p)
            self._reduced[p] = m
        return self._reduced[p]

    def __repr__(self) -> str:
        return f"ModularPolynomial(level={self.level}, entries={len(self.coeffs)})"


def parse_modpoly(text: str, level: int, source: str | None = None) -> ModularPolynomial:
    if not is_prime(level):
        raise ValueError(f"modular polynomial level must be prime, got {level}")
    coeffs: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        m = _ENTRY_RE.match(line)
        if m is None:
            col = 1 if not line.startswith("[") else line.find("]") + 2
            raise ParseError(f"expected '[i,j] c', got {line!r}", lineno, max(col, 1), source)
        i, j, c = int(m.group(1)), int(m.group(2)), m.group(3)
        c_norm = str(int(c))
        for key in {(i, j), (j, i)}:
            prev = coeffs.get(key)
            if prev is not None and prev != c_norm:
                raise ParseError(
                    f"entry [{i},{j}] = {c_norm} conflicts with earlier value {prev} (symmetry)",
                    lineno, raw.find(c) + 1, source,
                )
            coeffs[key] = c_norm
    coeffs = {k: v for k, v in coeffs.items() if v != "0"}
    mp = ModularPolynomial(level, coeffs, source)
    if mp.degree != level + 1:
        raise DegreeMismatch(f"Phi_{level}: maximal exponent {mp.degree}, expected {level + 1}")
    if coeffs.get((level + 1, 0)) != "1":
        raise DegreeMismatch(f"Phi_{level}: coefficient of X^{level + 1} must be 1")
    return mp


def load_modpoly(path: str | os.PathLike, level: int) -> ModularPolynomial:
    path = Path(path)
    if not path.is_file():
        raise MissingFile(level, path)
    return parse_modpoly(path.read_text(), level, str(path))


@lru_cache(maxsize=None)
def _load_cached(level: int, path: str) -> ModularPolynomial:
    return load_modpoly(path, level)


def get_modpoly(level: int, data_dir: str | os.PathLike | None = None) -> ModularPolynomial:
    """Load Phi_level from the resolved data directory, memoised per file."""
    return _load_cached(level, str(modpoly_path(level, data_dir).resolve()))


def _powers(ctx: FieldContext, x: Fp2Element, n: int) -> list[Fp2Element]:
    out = [ctx.one]
    for _ in range(n - 1):
        out.append(ctx.mul(out[-1], x))
    return out


def specialize(mp: ModularPolynomial, j0: Fp2Element, ctx: FieldContext) -> Poly:
    """Phi_N(X, j0) over F_{p^2}."""
    p = ctx.p
    m = mp.reduced(p)
    n = len(m)
    pw = _powers(ctx, j0, n)
    pw0 = [w[0] for w in pw]
    pw1 = [w[1] for w in pw]
    out = []
    for row in m:
        s0 = s1 = 0
        for j, c in enumerate(row):
            if c:
                s0 += c * pw0[j]
                s1 += c * pw1[j]
        out.append(Fp2Element(s0 % p, s1 % p))
    return Poly(tuple(out), ctx)


def evaluate(mp: ModularPolynomial, u: Fp2Element, v: Fp2Element, ctx: FieldContext) -> Fp2Element:
    """Phi_N(u, v)."""
    return specialize(mp, v, ctx)(u)


def symmetry_check(mp: ModularPolynomial, ctx: FieldContext, trials: int = 50, seed: int = 0) -> bool:
    """Compare Phi(u, v) with Phi(v, u) at random points of F_{p^2}."""
    rng = random.Random(seed)
    for _ in range(trials):
        u, v = ctx.random(rng), ctx.random(rng)
        if evaluate(mp, u, v, ctx) != evaluate(mp, v, u, ctx):
            return False
    return True


# Closed forms at the CM points 1728 and 0, as integer root lists / factors.
# Each entry: (level, j0, factor coefficient lists lowest-degree-first, exponent).
KNOWN_FACTORIZATIONS = {
    "Phi_2(X,1728) = (X-1728)(X-66^3)^2": (2, 1728, [([-1728, 1], 1), ([-(66**3), 1], 2)]),
    "Phi_3(X,1728) = (X^2-153542016X-1790957481984)^2": (3, 1728, [([-1790957481984, -153542016, 1], 2)]),
    "Phi_2(X,0) = (X-54000)^3": (2, 0, [([-54000, 1], 3)]),
    # the neighbour of 0 is j = -12288000, so the cubed factor is X + 12288000
    "Phi_3(X,0) = X(X+12288000)^3": (3, 0, [([0, 1], 1), ([12288000, 1], 3)]),
}


def factorization_holds(name: str, ctx: FieldContext, data_dir=None) -> bool:
    """Check one of :data:`KNOWN_FACTORIZATIONS` after reduction mod p."""
    level, j0, factors = KNOWN_FACTORIZATIONS[name]
    lhs = specialize(get_modpoly(level, data_dir), ctx(j0), ctx)
    rhs = Poly.of(ctx, [1])
    for cs, k in factors:
        f = Poly.of(ctx, cs)
        for _ in range(k):
            rhs = rhs * f
    return lhs == rhs
