# %% [markdown]
# # Hypergraphs, loops and the text format
#
# A k-uniform hypergraph here is a set of k-element vertex multisets, so an
# edge may repeat a vertex.  Edges are stored sorted.

# %%
from hyperquasi import GenSpec, gen_planted_bias, gen_random, new_hypergraph, read_hypergraph, write_hypergraph

triangle = new_hypergraph(3, 2, [[0, 1], [1, 2], [2, 0]])
print(triangle, triangle.edges)

loop = new_hypergraph(2, 3, [[1, 0, 0]])
print(loop.edges, "has loops:", loop.has_loops())

# %% [markdown]
# The same GenSpec always yields the same hypergraph (PCG64, one uniform
# draw per candidate edge in lexicographic order).

# %%
spec = GenSpec(n=8, k=3, p=0.3, seed=11)
h = gen_random(spec)
assert h == gen_random(spec)
print(h, "density", round(h.density(), 3))

# %% [markdown]
# A planted two-block bias raises the density inside each half while keeping
# the expected overall density at p.

# %%
planted = gen_planted_bias(GenSpec(40, 2, 0.5, seed=1, bias=0.4))
inside = sum((a < 20) == (b < 20) for a, b in planted.edges)
print("edges", planted.num_edges, "inside halves", inside, "crossing", planted.num_edges - inside)

# %%
text = write_hypergraph(new_hypergraph(4, 3, [[0, 1, 2], [1, 3, 3]]))
print(text)
assert write_hypergraph(read_hypergraph(text)) == text
