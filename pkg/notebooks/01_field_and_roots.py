# %% [markdown]
# # Arithmetic in F_{p^2} and roots of polynomials
#
# Every supersingular j-invariant lives in F_{p^2}.  The field is built from a
# defining polynomial x^2 + c1 x + c0 that is irreducible mod p; elements print
# as `a1b+a0` with b the class of x.

# %%
import random

from isocycle.field import make_field
from isocycle.poly import Poly, roots_in_fp2

F = make_field(3461, (1, 1))  # b^2 + b + 1 = 0
b = F.gen
print(F.format(F.add(F.add(F.mul(b, b), b), F.one)))   # 0
print(F.format(F.frobenius(b)))                         # the other root of x^2 + x + 1
print(F.format(F.pow(F.parse("870b+2285"), F.order - 1)))  # 1, elements are plain (a0, a1) tuples

# %% [markdown]
# Roots come from a square-free decomposition followed by equal-degree
# splitting, so multiplicities are exact.

# %%
rng = random.Random(1)
r1, r2 = F.random(rng), F.random(rng)
f = Poly.from_roots(F, [r1, r1, r1, r2]) * Poly((F(5), F.zero, F.one), F)
roots = roots_in_fp2(f)
for x, k in roots.as_dict().items():
    print(F.format(x), "multiplicity", k)
