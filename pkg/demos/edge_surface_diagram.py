"""Build the C*-surface of one Markov edge and show how it degenerates.

By default this uses the edge between (2, 5, 29) and (5, 29, 433), which
share the pair (5, 29).  Its surface lives in P(25, 841, 433, 2), is cut out
by one trinomial, and flows to both toric endpoints.  Pass another pair on
the command line, e.g. ``python3 demos/edge_surface_diagram.py 13 194``.
"""

import sys

from markovsurf.markov import MarkovEdge
from markovsurf.markov_cstar import build_markov_surface, classify_plane_degeneration, diagram_text

k1, k2 = (int(a) for a in sys.argv[1:3]) if len(sys.argv) > 2 else (5, 29)
S = build_markov_surface(MarkovEdge.from_pair(k1, k2))

print("matrix P:")
for row in S.matrix.P.tolist():
    print("   ", row)
print("relation:", S.to_dict()["relationString"], "of degree", S.relation_degree)
print("K^2 =", S.k_squared, "  toric:", S.is_toric)
for s in S.singularities:
    print(f"elliptic point {s.name}: {s.type_label()}  (Gorenstein index {s.gorenstein_index})")
print()
print(diagram_text(S))
print()
v = classify_plane_degeneration(S.matrix)
print("classified back as", v.kind, "for the edge", v.edge.label())
