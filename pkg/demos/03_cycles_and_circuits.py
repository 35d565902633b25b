# %% [markdown]
# # Cycle gadgets and circuit counting
#
# Steps are built from binary codes; gluing steps end to end gives paths, and
# closing a path gives a 2-regular cycle.  The number of edge-preserving maps
# of a cycle into H is a trace of a power of the A matrix.

# %%
from hyperquasi import OrderedPartition, Partition, GenSpec, cycle, gen_random, path, step
from hyperquasi import circuit_count_trace, hom_count_bruteforce

g = step(OrderedPartition((1, 1, 1)))
for e in g.hypergraph.edges:
    print([g.labels[v] for v in e])

# %%
for parts, length in [((1, 1), 4), ((1, 1, 1), 4), ((2, 1), 4), ((2, 1, 1), 6)]:
    c = cycle(OrderedPartition(parts), length)
    print(parts, "length", length, "->", c.n, "vertices,", c.num_edges, "edges")

# %% [markdown]
# Trace against enumeration on a small host with loops.

# %%
host = gen_random(GenSpec(4, 3, 0.5, seed=3, allow_loops=True))
for parts in [(2, 1), (1, 2), (1, 1, 1)]:
    o = OrderedPartition(parts)
    print(parts, circuit_count_trace(host, o, 2), hom_count_bruteforce(cycle(o, 4), host))
