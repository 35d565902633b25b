# %% [markdown]
# # Largest and second eigenvalues as brackets
#
# For two-part partitions the norm is exact (a top singular value).  With
# three or more parts, alternating maximization gives a lower bound and the
# A matrix spectrum gives an upper bound.

# %%
import numpy as np

from hyperquasi import GenSpec, Partition, complete_graph, gen_random, lambda1_pi, lambda2_pi, alignment_check

for n in (3, 10, 30):
    kn = complete_graph(n)
    print(f"K_{n}: lambda1 = {lambda1_pi(kn, Partition((1, 1))).lower:.6f}, "
          f"lambda2 = {lambda2_pi(kn, Partition((1, 1))).lower:.6f}")

# %%
h = gen_random(GenSpec(8, 3, 0.5, seed=4))
for pi in (Partition((2, 1)), Partition((1, 1, 1))):
    b1, b2 = lambda1_pi(h, pi), lambda2_pi(h, pi)
    print(pi, f"lambda1 in [{b1.lower:.4f}, {b1.upper:.4f}]", f"lambda2 in [{b2.lower:.4f}, {b2.upper:.4f}]")

# %% [markdown]
# A vector with a large quadratic form and a spectral gap sits close to the
# leading eigenvector.

# %%
rng = np.random.default_rng(0)
q, _ = np.linalg.qr(rng.standard_normal((6, 6)))
m = q @ np.diag([5.0, 0.05, -0.04, 0.03, 0.0, 0.01]) @ q.T
x = q[:, 0] + 0.05 * q[:, 1]
r = alignment_check(m, x / np.linalg.norm(x))
print(f"alignment {r.alignment:.4f} <= bound {r.bound:.4f}: {r.holds}")
