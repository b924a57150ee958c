# Recognizing unit circular-arc models, with certificates either way.
#
# Run from the repository root:  python3 demos/01_recognition.py

import random

from unitarc import parse_model, rep_linear, verify_certificate
from unitarc.minimal import power_cycle_model
from unitarc.oracle import ratio_bruteforce, search_non_uca
from unitarc.recognition import hollow_ratio, nose_ratio, reduction

# The power of a cycle C_11^4: 11 arcs, each meeting the 4 next ones.
m = power_cycle_model(11, 4)
print(m.text(), end="")

# nose ratio r and hollow ratio R; the model is UCA exactly when r < R
r, nose_cycle = nose_ratio(m)
big_r, hollow_cycle = hollow_ratio(m)
print("r =", r, " R =", big_r)
print("brute force agrees:", ratio_bruteforce(m))

# the linear-time algorithm returns an integer model we can re-check
cert = rep_linear(m)
print("positive:", cert.positive, " c =", cert.c, " l =", cert.l)
print("begins:", cert.model.begins)
print("certificate ok:", verify_certificate(m, cert).ok)

# now a model that is proper but has no unit model; random search finds one
prefilter = lambda x: nose_ratio(x)[0].value >= hollow_ratio(x)[0].value
bad = search_non_uca(7, random.Random(3).getrandbits(32), prefilter=prefilter)
print()
print(bad.text(), end="")
print("r =", nose_ratio(bad)[0], " R =", hollow_ratio(bad)[0])
print("reduction acyclic:", reduction(bad).acyclic)

neg = rep_linear(bad)
# Tucker's violation: an (a,b)-independent and an (x,y)-circuit with a/b >= x/y
print("independent", neg.independent.arcs, "a/b =", neg.a, "/", neg.b)
print("circuit    ", neg.circuit.arcs, "x/y =", neg.x, "/", neg.y)
print("certificate ok:", verify_certificate(bad, neg).ok)

# models can also be typed in directly
tiny = parse_model("pca 3\ns1 t3 s2 t1 s3 t2")
print()
print(tiny.text().strip().replace("\n", ": "), "->", "UCA" if rep_linear(tiny).positive else "not UCA")
