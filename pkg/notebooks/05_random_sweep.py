# %% [markdown]
# # Random hypothesis tuples
#
# Sample (p, ell, L, d) satisfying the hypotheses, with p above the bound, and
# tally the verdicts.

# %%
import collections
import random

from isocycle.theorems import construct_cycles, random_hypothesis_tuple

levels = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]
rng = random.Random(2026)
tally = collections.Counter()
for _ in range(100):
    t = random_hypothesis_tuple(rng, 50000, [2, 3, 5, 7, 11, 13], levels)
    tally[construct_cycles(*t).verdict] += 1
print(dict(tally))
