# %% [markdown]
# # Cycle length m, two ways
#
# Write L = N(a + b tau).  m is the least k for which a unit multiple of
# (a + b tau)^k lies in Z[ell tau].  Independently, m is the order of the class
# of a prime form of norm L in Cl(Z[ell tau]).  The two computations share no
# code beyond the witness.

# %%
from isocycle.quadorder import QuadOrder, class_ratio, cornacchia, form_order_of_L, order_m
from isocycle.field import is_prime

order = QuadOrder(7)
ell = 5
print("h'/h =", class_ratio(order, ell))
for L in (11, 23, 53, 179):
    w = cornacchia(order, L)
    print(L, (w.a, w.b), order_m(w, order, ell), form_order_of_L(order.with_conductor(ell), L))

# %% [markdown]
# Every m divides the class number ratio.

# %%
ms = {order_m(w, order, ell) for L in range(2, 2000) if is_prime(L) and L != ell
      for w in [cornacchia(order, L)] if w}
print(sorted(ms), class_ratio(order, ell))
