# %% [markdown]
# # Below and above the bound
#
# Below p = D ell^2 L, a 2-cycle among the neighbours can carry three
# L-isogenies instead of two.  Above it, every such pair carries exactly two.

# %%
from isocycle.quadorder import Kind
from isocycle.theorems import theorem5_check

for p in (827, 839):
    r = theorem5_check(p, 2, 13, 4, Kind.SQRT)
    print(p, "bound", r.bound, "count", r.count, r.verdict)

for p in (2309, 2341):
    # the defining polynomial b^2 + b + 1 only stays irreducible for p = 2 mod 3
    r = theorem5_check(p, 3, 37, 7, Kind.HALF, def_poly=(1, 1) if p % 3 == 2 else None)
    print(p, "bound", r.bound, "count", r.count, r.pair, r.verdict)
