# %% [markdown]
# # Cutting a derangement into prime cycles
#
# A type B derangement splits into cycles; `U` cuts each cycle into unimodal
# pieces and `V` cuts those into prime cycles. The excedance count survives
# both cuts, which is what turns the decomposition into a formula for `d_n^B`.

# %%
from collections import Counter

from bderange import decomp, typeb
from bderange.sigperm import enumerate_derangements_b, exc_b

pi = (3, -5, 4, 2, 9, -6, 8, 7, -1)
cycles = decomp.cycle_decompose(pi)
print("cycles:", cycles)
print("exc_B :", exc_b(pi))

# %% [markdown]
# Canonical order lists cycles by decreasing minimum in the integer order
# (so `-5` comes before `-6`). Taking the cycles in the order `(7 8), (-6), ...`
# instead gives the familiar barred listing.

# %%
listed = sorted(cycles.cycles, key=lambda c: abs(c.minimum), reverse=True)
u, p = decomp.decompose_sequence(listed)
print("U    :", decomp.barred(u))
print("V o U:", decomp.barred(p))
print("canonical:", decomp.p_decompose(pi))

# %% [markdown]
# Weights of all images reproduce `d_n^B(q)`; distinct derangements give
# distinct decompositions.

# %%
n = 5
images = [decomp.p_decompose(s) for s in enumerate_derangements_b(n)]
weights = Counter(p.weight_exponent for p in images)
print(dict(sorted(weights.items())))
print(typeb.derangement_b(n))
print("injective:", len({p.canonical_key() for p in images}) == len(images))
print("by compositions:", decomp.compositions_weight_sum(n))

# %% [markdown]
# Fixed points are removed by relabelling the rest in order.

# %%
r = decomp.reduce_fixed_points((4, 6, 3, -7, 5, 1, -2))
print(r.non_fixed, r.fixed, r.reduced, "->", decomp.expand(r))
