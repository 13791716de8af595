"""
Positive and negative double tests at m = 5
===========================================

A double graph is a pair of edge-disjoint graphs on [m].  CLIQ2 asks for a
k-clique in *both* parts.  Positive tests are the smallest yes-instances
(two disjoint cliques); negative tests are pairs of colorings whose
coloring graphs miss every clique.
"""

from cliq2lab.doubletests import enum_neg2, enum_pos2, in_cliq2, in_nocliq2, pos2_count_formula
from cliq2lab.formats import format_double_graph
from cliq2lab.graphs import DoubleGraph, complete_graph, graph

m, k = 5, 3

pos2 = enum_pos2(m, k)
print("positive tests:", len(pos2), "closed form:", pos2_count_formula(m, k))
for d in pos2[:3]:
    print("  ", format_double_graph(d))

# At m = 4 there is no room for two disjoint triangles.
print("m=4:", len(enum_pos2(4, 3)), " m=6:", len(enum_pos2(6, 3)))

neg2 = enum_neg2(m, k)
print("negative test pairs:", len(neg2))
print("   first pair:", neg2[0].f, neg2[0].g)

# a yes-instance: triangle 123 on the positive side, triangle 345 on the negative side
d = DoubleGraph(complete_graph({1, 2, 3}), graph([(3, 4), (3, 5), (4, 5)]))
print(format_double_graph(d), "in CLIQ2:", in_cliq2(d, k))

# dropping one edge on the negative side lets a coloring graph cover it
e = DoubleGraph(d.pos, graph([(3, 4), (3, 5)]))
print(format_double_graph(e), "in CLIQ2:", in_cliq2(e, k), " in NOCLIQ2:", in_nocliq2(e, m, k))
