"""Spectral and cycle-count tools for k-uniform hypergraphs with loops.

Partition flattenings of the adjacency map, their product powers and the
associated symmetric matrix, cycle gadgets, and exact circuit counting by
traces.
"""

__version__ = "0.1.0"

from .counting import (
    CountReport,
    circuit_count_trace,
    cycle_deviation,
    hom_count_bruteforce,
    labeled_copy_count_bruteforce,
)
from .gadgets import Gadget, cycle, path, step
from .hypercore import (
    GenSpec,
    Hypergraph,
    complete_graph,
    gen_planted_bias,
    gen_random,
    new_hypergraph,
    read_hypergraph,
    write_hypergraph,
)
from .indexing import (
    IndexCodec,
    OrderedPartition,
    Partition,
    gamma_apply,
    orderings,
    proper_partitions,
)
from .mlmap import (
    DeviationSpec,
    MultiMap,
    a_matrix,
    adjacency_eval,
    all_ones_map,
    deviation_map,
    flatten,
    j_eval,
    power,
    star_product,
)
from .spectral import (
    EigenDecomp,
    NormBracket,
    SymMatrix,
    alignment_check,
    eig,
    lambda1_pi,
    lambda2_pi,
    spectral_norm_bilinear,
    spectral_norm_hopm,
)
