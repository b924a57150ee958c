"""Longest-path solvers for u-Rep, BoundRep and IntBoundRep.

Bellman-Ford runs over the bounded synthetic graph with labels rooted at
A_0.  Edges are relaxed in (from, kind, to) order and a label changes only
on strict improvement.  Edge weights are scaled to integers by the common
denominator of the descriptor, so the inner loop never builds Fractions.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .model import ModelError, RealizedModel, UcaDescriptor, verify_realization
from .rational import INF
from .synthetic import BOUND_IN, BOUND_OUT, build_bounded, sep_coefficients, walk_sep


class DistanceTuple(NamedTuple):
    """Symbolic label b + [c]c + [l]l + [d]d + [ds]ds."""

    b: Fraction
    coef_c: int
    coef_l: int
    coef_d: int
    coef_ds: int

    def value(self, u, d=None):
        d = u.d if d is None else d
        c_part = 0 if self.coef_c == 0 else self.coef_c * u.c
        return self.b + c_part + self.coef_l * u.l + self.coef_d * d + self.coef_ds * u.ds

    def norm(self, u):
        """The d-free part used when d is indeterminate."""
        return self.value(u, d=0)

    def extend(self, edge, u):
        bound, cc, cl, cd, cds = sep_coefficients(edge)
        b = self.b
        if bound == "dl":
            b += u.dl_of(edge.to)
        elif bound == "dr":
            b += u.dr_of(edge.frm)
        return DistanceTuple(b, self.coef_c + cc, self.coef_l + cl,
                             self.coef_d + cd, self.coef_ds + cds)


ZERO_TUPLE = DistanceTuple(Fraction(0), 0, 0, 0, 0)


@dataclass(frozen=True)
class Feasible:
    model: RealizedModel
    d_used: Fraction
    labels: tuple
    descriptor: UcaDescriptor

    feasible = True


@dataclass(frozen=True)
class Infeasible:
    cycle: tuple
    weight: object

    feasible = False


def _active_edges(g, u):
    """Edges that carry a finite weight under ``u`` in scan order."""
    if u.c is INF:
        return [e for e in g.edges if e.kind == BOUND_OUT or (e.internal and e.kind != BOUND_IN)]
    return list(g.edges)


def _scale(u):
    values = [u.l, u.d, u.ds, *u.dl.values(), *u.dr.values()]
    if u.c is not INF:
        values.append(u.c)
    scale = 1
    for v in values:
        scale = math.lcm(scale, Fraction(v).denominator)
    return scale


def _cycle_from(pred, start, num_vertices):
    x = start
    for _ in range(num_vertices):
        e = pred[x]
        if e is None:
            return None
        x = e.frm
    cycle = []
    y = x
    while True:
        e = pred[y]
        cycle.append(e)
        y = e.frm
        if y == x:
            break
        if len(cycle) > num_vertices:
            return None
    cycle.reverse()
    return tuple(cycle)


def _bellman_ford(num_vertices, edges, weights, zero, add):
    """Longest paths from vertex 0.

    Returns ``(labels, pred, None)`` or ``(None, None, cycle)`` when a cycle
    of positive weight is found.
    """
    label = [None] * num_vertices
    pred = [None] * num_vertices
    label[0] = zero
    triples = [(e.frm, e.to, w, e) for e, w in zip(edges, weights)]
    passes = 0
    limit = 4 * num_vertices + 8
    while True:
        passes += 1
        last = None
        for a, b, w, e in triples:
            la = label[a]
            if la is None:
                continue
            cand = add(la, w)
            lb = label[b]
            if lb is None or cand > lb:
                label[b] = cand
                pred[b] = e
                last = b
                if b == 0:
                    cycle = _cycle_from(pred, 0, num_vertices)
                    if cycle is not None:
                        return None, None, cycle
        if last is None:
            return label, pred, None
        if passes >= num_vertices:
            cycle = _cycle_from(pred, last, num_vertices)
            if cycle is not None:
                return None, None, cycle
            if passes > limit:
                raise AssertionError("positive cycle not isolated in the predecessor graph")


def _check_trivial(m):
    reason = m.trivial_reason()
    if reason is not None:
        raise ModelError("trivial", f"trivial model ({reason})")


def _tuples_from_tree(g, u, pred, edges):
    """Rebuild the symbolic labels along the final predecessor tree."""
    n = g.n
    children = [[] for _ in range(n + 1)]
    for v in range(1, n + 1):
        if pred[v] is not None:
            children[pred[v].frm].append(pred[v])
    out = [None] * (n + 1)
    out[0] = ZERO_TUPLE
    stack = [0]
    while stack:
        v = stack.pop()
        for e in children[v]:
            out[e.to] = out[v].extend(e, u)
            stack.append(e.to)
    for t in out:
        if t is None:
            continue
        assert -n <= t.coef_c <= n and -n <= t.coef_l <= n, t
        assert 0 <= t.coef_d <= n and 0 <= t.coef_ds <= n, t
    return tuple(out)


def _realize(u, values):
    begins = []
    for v in values[1:]:
        begins.append(v if u.c is INF else v % u.c)
    return RealizedModel(u.c, u.l, tuple(begins))


def solve_u_rep(m, u, graph=None):
    """Decide whether ``m`` has an equivalent u-CA model and build one."""
    _check_trivial(m)
    if u.d <= 0:
        raise ValueError("u-Rep requires d > 0")
    g = graph.bounded() if graph is not None else build_bounded(m)
    edges = _active_edges(g, u)
    scale = _scale(u)
    weights = [int(walk_sep((e,), u) * scale) for e in edges]
    label, pred, cycle = _bellman_ford(g.n + 1, edges, weights, 0, int.__add__)
    if cycle is not None:
        weight = walk_sep(cycle, u)
        assert weight > 0, "extracted cycle is not positive"
        return Infeasible(cycle, weight)
    values = [Fraction(x, scale) for x in label]
    tuples = _tuples_from_tree(g, u, pred, edges)
    for t, v in zip(tuples, values):
        assert t is None or t.value(u) == v
    model = _realize(u, values)
    return Feasible(model, u.d, tuples, u)


def solve_int_bound_rep(m, c, l, ds=0, dl=None, dr=None):
    """u-Rep with d = 1 over integer inputs; feasible outputs are integer."""
    u = UcaDescriptor(c, l, 1, ds, dl or {}, dr or {})
    if not u.is_integer:
        raise ValueError("IntBoundRep needs integer inputs")
    out = solve_u_rep(m, u)
    if out.feasible:
        assert all(b.denominator == 1 for b in out.model.begins)
    return out


def _pair_add(a, b):
    return (a[0] + b[0], a[1] + b[1])


def solve_bound_rep(m, c, l, ds=0, dl=None, dr=None):
    """BoundRep: find some d > 0 for which a model exists, d left open.

    Labels are pairs (d-free part, coefficient of d) compared
    lexicographically, i.e. d is treated as an infinitesimal.  On success
    the largest d keeping every edge constraint satisfied by these labels
    is returned together with the model evaluated at that d.
    """
    _check_trivial(m)
    u0 = UcaDescriptor(c, l, 0, ds, dl or {}, dr or {})
    g = build_bounded(m)
    edges = _active_edges(g, u0)
    scale = _scale(u0)
    weights = []
    for e in edges:
        cd = sep_coefficients(e)[3]
        weights.append((int(walk_sep((e,), u0) * scale), cd))
    label, pred, cycle = _bellman_ford(g.n + 1, edges, weights, (0, 0), _pair_add)
    if cycle is not None:
        return Infeasible(cycle, walk_sep(cycle, u0))
    d = None
    for e, (wn, wk) in zip(edges, weights):
        (na, ka), (nb, kb) = label[e.frm], label[e.to]
        slack = nb - na - wn
        k = ka + wk - kb
        assert slack >= 0
        if k > 0:
            cand = Fraction(slack, k * scale)
            if d is None or cand < d:
                d = cand
    if d is None:
        d = Fraction(1)
    if d <= 0:
        tight = _tight_cycle(g, edges, weights, label)
        return Infeasible(tight, Fraction(0))
    u = u0.replace(d=d)
    values = [Fraction(nv, scale) + kv * d for nv, kv in label]
    model = _realize(u, values)
    tuples = _tuples_from_tree(g, u, pred, edges)
    verdict = verify_realization(model, m, u)
    if not verdict.ok:
        raise AssertionError(f"BoundRep produced an invalid model: {verdict.violations}")
    return Feasible(model, d, tuples, u)


def _tight_cycle(g, edges, weights, label):
    """A cycle of edges with zero slack in the d-free part."""
    tight = {}
    for e, (wn, wk) in zip(edges, weights):
        if label[e.to][0] - label[e.frm][0] - wn == 0 and e.frm not in tight:
            tight[e.frm] = e
    for start in tight:
        seen = {}
        x, path = start, []
        while x in tight and x not in seen:
            seen[x] = len(path)
            path.append(tight[x])
            x = tight[x].to
        if x in seen:
            return tuple(path[seen[x]:])
    return ()


def cycle_weight(cycle, u):
    return walk_sep(cycle, u)
