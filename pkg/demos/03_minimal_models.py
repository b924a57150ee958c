# Minimal interval and circular-arc models, and powers of paths and cycles.
#
# Run from the repository root:  python3 demos/03_minimal_models.py

import os
import tempfile

from unitarc import format_rational, parse_model
from unitarc.minimal import (build_T, drawing_crossings, min_ell_uig, min_power, min_uca,
                             min_uig, mitas_ell, power_cycle_model)
from unitarc.oracle import random_pca_model, random_pig_model
from unitarc.render import render_canonical, render_realized


def show(xs):
    return [format_rational(x) for x in xs]


# an interval model; its minimal (1, 0) model has the shortest arcs and
# every begin as far left as possible
m = random_pig_model(8, 5)
print(m.text(), end="")
res = min_uig(m, 1, 0)
print("l* =", res.l_star, " begins", show(res.model.begins))

# the answer comes from longest paths in the acyclic digraph T
t = build_T(m)
print("T columns", show(t.columns[1:]), " crossings:", len(drawing_crossings(t)))

# reading l off distances from A_1 alone can overshoot the true minimum
for seed in range(300):
    x = random_pig_model(9, seed)
    if mitas_ell(x, 1, 0) != min_ell_uig(x, 1, 0):
        print(f"seed {seed}: distances from A_1 give {mitas_ell(x, 1, 0)},"
              f" the true minimum is {min_ell_uig(x, 1, 0)}")
        break

# minimal UCA models: smallest length first, then smallest circumference
for q, k in ((5, 1), (7, 2), (11, 4)):
    r = min_uca(power_cycle_model(q, k), 1, 0)
    print(f"C_{q}^{k}: (c*, l*) = ({r.c_star}, {r.l_star})")

x = random_pca_model(6, 2)
r = min_uca(x, 1, 0)
print(x.text().strip().replace("\n", ": "), "->", (r.c_star, r.l_star))

# the two proper orders of one graph can have different minima
for text in ("s1 s2 t7 s3 s4 t1 s5 t2 s6 t3 t4 s7 t5 t6",
             "s1 s2 t6 t7 s3 s4 t1 t2 s5 t3 s6 t4 s7 t5"):
    r = min_uca(parse_model("pca 7\n" + text), 1, 0)
    print(text, "->", (r.c_star, r.l_star))

# smallest power of a cycle (or path) containing the graph as induced subgraph
ext = min_power(x)
print("power of a cycle: k =", ext.k, " q =", ext.q, " begins", show(ext.model.begins))
ext = min_power(m)
print("power of a path:  k =", ext.k, " q =", ext.q, " begins", show(ext.model.begins))

out = tempfile.mkdtemp(prefix="unit-arc-")
with open(os.path.join(out, "c_11_4.svg"), "w") as fh:
    fh.write(render_realized(min_uca(power_cycle_model(11, 4)).model))
with open(os.path.join(out, "canonical.svg"), "w") as fh:
    fh.write(render_canonical(t))
print("drawings written to", out)
