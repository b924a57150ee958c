# Representations with prescribed circumference, length and separations.
#
# Run from the repository root:  python3 demos/02_bounded_solver.py

from unitarc import UcaDescriptor, format_rational, solve_u_rep, verify_realization
from unitarc.minimal import min_circ, power_cycle_model
from unitarc.oracle import oracle_feasible
from unitarc.solver import solve_bound_rep
from unitarc.synthetic import walk_sep

m = power_cycle_model(11, 4)

# a (22, 9)-CA model: circumference 22, arcs of length 9, extremes 1 apart
u = UcaDescriptor(22, 9, 1, 0)
res = solve_u_rep(m, u)
print("(22, 9):", "feasible" if res.feasible else "infeasible")
print("  begins", [format_rational(b) for b in res.model.begins])
print("  verified:", verify_realization(res.model, m, u).ok)

# with length 10 nothing works, for any circumference in the search window
for c in (22, 25, 60, 121):
    u = UcaDescriptor(c, 10, 1, 0)
    res = solve_u_rep(m, u)
    path = " -> ".join(f"A{e.frm}" for e in res.cycle)
    print(f"({c}, 10): infeasible, cycle {path} has weight {walk_sep(res.cycle, u)}")

# the oracle enumerates every simple cycle of the bounded graph and agrees
print("oracle (22, 9): ", oracle_feasible(m, UcaDescriptor(22, 9, 1, 0))[0])
print("oracle (60, 10):", oracle_feasible(m, UcaDescriptor(60, 10, 1, 0))[0])

# smallest circumference per length; note 10 is missing between 9 and 11
for l in (9, 10, 11, 12):
    best = min_circ(m, l)
    print(f"l = {l}: c* =", None if best is None else best.model.c)

# bounds pin arcs: A_1 must begin at least 2 after 0 and at least 4 before c
u = UcaDescriptor(22, 9, 1, 0, {1: 2}, {1: 4})
res = solve_u_rep(m, u)
print("with bounds on A1:", [format_rational(b) for b in res.model.begins])

# bounds that add up to more than the circle leave no room at all
u = UcaDescriptor(22, 9, 1, 0, {1: 12}, {1: 11})
res = solve_u_rep(m, u)
print("impossible bounds:", [(e.frm, e.to, e.kind) for e in res.cycle])

# leave d open and let the solver pick the largest workable value
res = solve_bound_rep(m, 22, 9)
print("BoundRep at (22, 9): d =", res.d_used)
