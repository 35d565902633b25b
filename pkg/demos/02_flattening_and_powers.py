# %% [markdown]
# # Flattening, product powers and the A matrix
#
# Grouping the k arguments of the adjacency map by an ordered partition gives
# a t-linear map.  Contracting two copies over the last mode squares every
# remaining mode; after t-1 rounds one mode is left and is read as a square
# symmetric matrix.

# %%
import numpy as np

from hyperquasi import OrderedPartition, complete_graph, flatten, gen_random, GenSpec, power, a_matrix
from hyperquasi.mlmap import unit_ones

k3 = complete_graph(3)
tau = flatten(k3, OrderedPartition((1, 1)))
print(tau.matrix())
print("A for a graph is the adjacency matrix squared:\n", a_matrix(tau))

# %%
h = gen_random(GenSpec(5, 3, 0.5, seed=2))
for parts in [(2, 1), (1, 2), (1, 1, 1)]:
    tau = flatten(h, OrderedPartition(parts))
    a = a_matrix(tau)
    print(parts, "mode dims", tau.mode_dims, "A shape", a.shape, "symmetric", np.array_equal(a, a.T))

# %% [markdown]
# On loop-free inputs the map at normalized all-ones vectors equals
# k! |E| / n^(k/2).

# %%
tau = flatten(h, OrderedPartition((2, 1)))
value = tau(*(unit_ones(d) for d in tau.mode_dims))
print(value, 6 * h.num_edges / 5**1.5)

# %%
phi = flatten(h, OrderedPartition((1, 1, 1)))
for s in range(3):
    print("level", s, "mode dims", power(phi, s).mode_dims)
