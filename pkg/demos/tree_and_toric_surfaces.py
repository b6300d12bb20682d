"""Walk the first levels of the Markov tree and print the toric surface of each triple.

Every triple (x, y, z) gives a fake weighted projective plane with weights
(x^2, y^2, z^2).  All of them have K^2 = 9 and a torsion-free class group,
and the singular fixed points are of type 1/k^2(1, pk - 1).
"""

from markovsurf.fwpp import toric_markov_surface
from markovsurf.markov import expand_tree

for level in expand_tree(5):
    for t in level.vertices:
        rep = toric_markov_surface(t)
        types = ", ".join(fp.type_label() for fp in rep.fixed_points if not fp.is_smooth) or "smooth"
        print(f"depth {level.depth}  {t.as_tuple()!s:<18} weights {rep.weights!s:<24} K^2 = {rep.k_squared}  {types}")
