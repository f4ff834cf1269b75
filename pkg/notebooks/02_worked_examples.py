# %% [markdown]
# # The worked examples
#
# Neighbours of a CM seed j0 under an ell-isogeny are the roots of
# Phi_ell(X, j0).  Restricting the L-isogeny graph to those neighbours shows
# the predicted loops and cycles.

# %%
from isocycle.field import make_field
from isocycle.ssgraph import induced_subgraph, neighbors, simple_cycles
from isocycle.quadorder import Kind
from isocycle.theorems import construct_cycles

F = make_field(3461, (1, 1))
nbrs = neighbors(F, 5, F(3185)).roots()
print([F.format(x) for x in nbrs])

# %% [markdown]
# At L = 11 the six neighbours fall into two triangles; at L = 23 into a
# single hexagon, traversed in both directions.

# %%
for L in (11, 23):
    g = induced_subgraph(nbrs, F, L)
    lengths = sorted(c.length for c in simple_cycles(g))
    print(L, "cycle lengths", lengths)

# %% [markdown]
# `construct_cycles` predicts m from the order and compares.

# %%
for L in (11, 23):
    r = construct_cycles(3461, 5, L, 7, Kind.SQRT, def_poly=(1, 1))
    print(L, "m =", r.m, r.verdict)

# %% [markdown]
# The second example seeds at 4825, a root of the class polynomial of
# discriminant -44, and looks at 47-isogenies between its 2-neighbours.

# %%
r = construct_cycles(12601, 2, 47, 11, Kind.SQRT, def_poly=(11, 0))
print(r.seed_j, "m =", r.m, "excluded", r.excluded, r.verdict)
for (u, v), k in sorted(r.graph.edges.items()):
    print(r.graph.ctx.format(u), "->", r.graph.ctx.format(v), "x", k)

# %% [markdown]
# All four examples are also available as checks.

# %%
from isocycle.golden import EXAMPLES

for n, fn in EXAMPLES.items():
    print(n, all(c.ok for c in fn()))
