# %% [markdown]
# # Derangement polynomials of type B
#
# `d_n^B(q)` counts type B derangements by their type B excedance number.
# Here we build the first few members three independent ways and check they agree.

# %%
from math import factorial

from bderange import typeb
from bderange.sigperm import enumerate_derangements_b, exc_b, histogram

for n in range(1, 7):
    print(n, typeb.derangement_b(n))

# %% [markdown]
# The recurrence, the binomial sum and brute-force enumeration coincide.
# Enumeration uses the vectorised histogram; the plain generator is the slow
# reference and is only run for tiny sizes.

# %%
for n in range(0, 8):
    rec = typeb.derangement_b(n)
    assert rec == typeb.derangement_b_by_binomial(n) == typeb.derangement_b_by_enumeration(n)
print("three routes agree for n <= 7")

slow = sorted(exc_b(s) for s in enumerate_derangements_b(4))
print("n=4 by generator:", {k: slow.count(k) for k in set(slow)})
print("n=4 by histogram:", histogram(4, "exc_b", True).counts)

# %% [markdown]
# Coefficients grow quickly, so everything is exact Python integers.

# %%
big = typeb.derangement_b(60)
print(len(str(max(big.coeffs))), "digits in the largest coefficient of d_60^B")
print("B_n(1) = 2^n n! up to n = 50:", all(typeb.eulerian_b(n)(1) == 2**n * factorial(n) for n in range(51)))

# %% [markdown]
# The coefficient sequence is "spiral": `d_{n,n} < d_{n,1} < d_{n,n-1} < d_{n,2} < ...`.

# %%
rows = typeb.derangement_coeff_table(200)
print("spiral for 2 <= n <= 200:", all(typeb.spiral_check(n, rows[n]) for n in range(2, 201)))
print("chain order for n=7:", typeb.spiral_chain(7))
