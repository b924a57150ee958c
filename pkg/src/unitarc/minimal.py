"""Minimal UIG and UCA models and minimal power-of-path/cycle extensions.

For interval models the digraph T (S without 0-hollows, 1-steps and
external edges) is acyclic and every cycle of S is a T path closed by one
0-hollow or 1-step, so the minimum length is a longest-path maximum over
those back edges.  For circular models the length is scanned upwards and
the circumference is binary searched, steered by the sign of the
c-coefficient of each infeasibility cycle.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .model import ModelError, RealizedModel, UcaDescriptor, verify_realization
from .rational import INF, as_rational, format_rational, is_integer
from .recognition import rep_linear
from .solver import solve_u_rep
from .synthetic import HOLLOW, NOSE, STEP, build_synthetic, sep_coefficients

SCAN_CONSTANT = 4


class NotUnitError(ModelError):
    """The model has no equivalent unit model; ``certificate`` says why."""

    def __init__(self, certificate):
        super().__init__("not-uca", "model is not equivalent to any UCA model")
        self.certificate = certificate


# -- powers of paths and cycles --------------------------------------------

def power_cycle_realized(q, k):
    """C_q^k: a (2q, 2k+1)-CA model with begins 0, 2, ..., 2(q-1)."""
    return RealizedModel(2 * q, 2 * k + 1, tuple(range(0, 2 * q, 2)))


def power_path_realized(q, k):
    return RealizedModel(INF, 2 * k + 1, tuple(range(0, 2 * q, 2)))


def power_cycle_model(q, k):
    return power_cycle_realized(q, k).to_model()


def power_path_model(q, k):
    return power_path_realized(q, k).to_model()


def is_completable(r):
    """ext conditions: odd length, even (or infinite) circumference, even begins."""
    if r.l.denominator != 1 or r.l.numerator % 2 != 1:
        return False
    if r.c is not INF and (r.c.denominator != 1 or r.c.numerator % 2 != 0):
        return False
    return all(b.denominator == 1 and b.numerator % 2 == 0 for b in r.begins)


# -- the Mitas digraph T -----------------------------------------------------

def _is_back_edge(e):
    """0-hollows and 1-steps: the edges of S missing from T."""
    return (e.kind == HOLLOW and e.jump == 0) or (e.kind == STEP and e.jump == 1)


def _require_pig(m):
    if not m.linear:
        raise ModelError("not-pig", "operation needs an interval (pig) model")


@dataclass(frozen=True)
class MitasGraph:
    model: object
    graph: object
    edges: tuple
    back_edges: tuple
    topological: tuple
    columns: tuple
    acyclic: bool = True

    @property
    def n(self):
        return self.model.n

    def position(self, i):
        return (self.columns[i], self.graph.heights[i])


def _topological(n, edges):
    indeg = [0] * (n + 1)
    out = [[] for _ in range(n + 1)]
    for e in edges:
        indeg[e.to] += 1
        out[e.frm].append(e)
    order = [v for v in range(1, n + 1) if indeg[v] == 0]
    k = 0
    while k < len(order):
        for e in out[order[k]]:
            indeg[e.to] -= 1
            if indeg[e.to] == 0:
                order.append(e.to)
        k += 1
    return order


def build_T(m):
    _require_pig(m)
    reason = m.trivial_reason()
    if reason is not None:
        raise ModelError("trivial", f"trivial model ({reason})")
    g = build_synthetic(m)
    edges, back = [], []
    for e in g.edges:
        if not e.internal:
            continue
        (back if _is_back_edge(e) else edges).append(e)
    order = _topological(g.n, edges)
    assert len(order) == g.n, "T has a cycle"
    eps = Fraction(1, g.n + 1)
    columns = [Fraction(0)] * (g.n + 1)
    incoming = [[] for _ in range(g.n + 1)]
    for e in edges:
        incoming[e.to].append(e)
    for v in order:
        if v == 1:
            continue
        best = Fraction(0)
        for e in incoming[v]:
            cand = columns[e.frm] + (eps if e.kind == NOSE else 1)
            if cand > best:
                best = cand
        columns[v] = best
    return MitasGraph(m, g, tuple(edges), tuple(back), tuple(order), tuple(columns))


def _orient(a, b, c):
    v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (v > 0) - (v < 0)


def _on_segment(a, b, p):
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def segments_cross(p1, p2, q1, q2):
    """True when the closed segments meet anywhere but at a shared endpoint."""
    shared = {p1, p2} & {q1, q2}
    o1, o2 = _orient(p1, p2, q1), _orient(p1, p2, q2)
    o3, o4 = _orient(q1, q2, p1), _orient(q1, q2, p2)
    if o1 == o2 == o3 == o4 == 0:
        if not (_on_segment(p1, p2, q1) or _on_segment(p1, p2, q2)
                or _on_segment(q1, q2, p1) or _on_segment(q1, q2, p2)):
            return False
        # collinear: touching at one shared endpoint is fine, overlap is not
        if len(shared) == 1:
            s = next(iter(shared))
            a = p1 if p2 == s else p2
            b = q1 if q2 == s else q2
            return (a[0] - s[0]) * (b[0] - s[0]) + (a[1] - s[1]) * (b[1] - s[1]) > 0
        return True
    if shared:
        return False
    if o1 != o2 and o3 != o4:
        return True
    return ((o1 == 0 and _on_segment(p1, p2, q1)) or (o2 == 0 and _on_segment(p1, p2, q2))
            or (o3 == 0 and _on_segment(q1, q2, p1)) or (o4 == 0 and _on_segment(q1, q2, p2)))


def drawing_crossings(t):
    """Pairs of edges of T whose straight canonical drawings cross."""
    segs = [(e, t.position(e.frm), t.position(e.to)) for e in t.edges]
    out = []
    for i in range(len(segs)):
        e, a, b = segs[i]
        for f, c, d in segs[i + 1:]:
            if segments_cross(a, b, c, d):
                out.append((e, f))
    return out


# -- minimal UIG -------------------------------------------------------------

def _const_weight(e, d, ds):
    if e.kind == NOSE:
        return 0
    if e.kind == HOLLOW:
        return 2 * d
    return d + ds


def _longest_in_dag(n, edges, order, source, weight):
    out = [[] for _ in range(n + 1)]
    for e in edges:
        out[e.frm].append(e)
    dist = [None] * (n + 1)
    dist[source] = 0
    for v in order:
        if dist[v] is None:
            continue
        for e in out[v]:
            cand = dist[v] + weight(e)
            if dist[e.to] is None or cand > dist[e.to]:
                dist[e.to] = cand
    return dist


def _check_d(d, ds):
    d, ds = as_rational(d), as_rational(ds)
    if d is INF or ds is INF or d <= 0 or ds < 0:
        raise ValueError("need d > 0 and ds >= 0")
    return d, ds


def complete_minimal(n, d, ds):
    """Minimal model of a complete interval order: begins spaced by d + ds."""
    step = d + ds
    return RealizedModel(INF, (n - 1) * step + d, tuple(i * step for i in range(n)))


def min_ell_uig(m, d=1, ds=0):
    """Minimum l admitting an equivalent (l, d, ds)-IG model.

    Every cycle of S has len -1, so its separation is const - (l + d) and l*
    is the largest const over cycles minus d.  Each cycle is one back edge
    plus a T path, hence one longest-path pass in T per back-edge head.
    """
    _require_pig(m)
    d, ds = _check_d(d, ds)
    if m.is_complete_shortcut():
        return complete_minimal(m.n, d, ds).l
    t = build_T(m)
    best = None
    by_head = {}
    for e in t.back_edges:
        by_head.setdefault(e.to, []).append(e)
    for head, backs in sorted(by_head.items()):
        dist = _longest_in_dag(t.n, t.edges, t.topological, head,
                               lambda e: _const_weight(e, d, ds))
        for e in backs:
            if dist[e.frm] is None:
                continue
            value = dist[e.frm] + _const_weight(e, d, ds)
            if best is None or value > best:
                best = value
    assert best is not None, "non-trivial interval model without a cycle"
    return best - d


def mitas_ell(m, d=1, ds=0):
    """The unpatched rule: the least l for which T-distances from A_1 form a model.

    Begins are taken as longest T paths from A_1, which ignore the back
    edges, and l is raised until every back edge constraint holds too.  The
    result is feasible but can exceed :func:`min_ell_uig`.
    """
    _require_pig(m)
    d, ds = _check_d(d, ds)
    if m.is_complete_shortcut():
        return complete_minimal(m.n, d, ds).l
    t = build_T(m)
    h = t.graph.heights
    cdist = _longest_in_dag(t.n, t.edges, t.topological, 1, lambda e: _const_weight(e, d, ds))
    best = None
    for e in t.back_edges:
        # (l + d) * h(to) + C(to) >= (l + d) * h(frm) + C(frm) + sep(e), with sep(e)
        # = const(e) - (l + d) * [e is a 0-hollow]; both cases rearrange to
        # l + d >= C(frm) - C(to) + const(e)
        assert h[e.to] - h[e.frm] + (1 if e.kind == HOLLOW else 0) == 1
        value = cdist[e.frm] - cdist[e.to] + _const_weight(e, d, ds) - d
        if best is None or value > best:
            best = value
    return best


@dataclass(frozen=True)
class MinimalResult:
    l_star: object
    c_star: object
    model: RealizedModel
    trace: tuple = field(default=(), compare=False)

    def to_json(self):
        return {"l_star": _fmt(self.l_star), "c_star": _fmt(self.c_star),
                "model": self.model.to_json(),
                "trace": [{"probe": p, "value": _fmt(v), "feasible": ok} for p, v, ok in self.trace]}


def _fmt(v):
    return None if v is None else format_rational(v)


def min_uig(m, d=1, ds=0):
    """A (d, ds)-minimal interval model equivalent to ``m``."""
    _require_pig(m)
    d, ds = _check_d(d, ds)
    if m.is_complete_shortcut():
        r = complete_minimal(m.n, d, ds)
        return MinimalResult(r.l, None, r, (("l", r.l, True),))
    l_star = min_ell_uig(m, d, ds)
    res = solve_u_rep(m, UcaDescriptor(INF, l_star, d, ds))
    assert res.feasible, "minimum length is not feasible"
    return MinimalResult(l_star, None, res.model, (("l", l_star, True),))


# -- minimal UCA ------------------------------------------------------------

def cycle_c_coefficient(cycle):
    """Coefficient of c in the separation of a cycle of B (ext for cycles of S)."""
    return sum(sep_coefficients(e)[1] for e in cycle)


def min_circ(m, l, d=1, ds=0, parity=None, trace=None):
    """Least integer c with an equivalent (c, l, d, ds)-CA model, or ``None``.

    The window is [1, n(l+1)].  A feasible probe moves the search down; an
    infeasible one is steered by the sign of the c-coefficient of its cycle
    (non-negative: every larger c fails too).  ``parity=2`` restricts the
    search to even c.
    """
    m = m.as_circular()
    l = as_rational(l)
    d, ds = _check_d(d, ds)
    unit = parity or 1
    lo, hi = 1, (m.n * (l + 1)) // unit
    best = None
    while lo <= hi:
        mid = (lo + hi) // 2
        c = mid * unit
        res = solve_u_rep(m, UcaDescriptor(c, l, d, ds))
        if trace is not None:
            trace.append(("c", c, res.feasible))
        if res.feasible:
            best = res
            hi = mid - 1
        elif cycle_c_coefficient(res.cycle) >= 0:
            hi = mid - 1
        else:
            lo = mid + 1
    return best


def _scan_bound(n, d, ds):
    return (d + ds) * n * n * SCAN_CONSTANT


def min_uca(m, d=1, ds=0, parity_l=None, parity_c=None):
    """An (N, d, ds)-minimal UCA model equivalent to ``m``.

    Raises :class:`NotUnitError` carrying the recognition certificate when
    ``m`` has no equivalent UCA model.
    """
    m = m.as_circular()
    d, ds = _check_d(d, ds)
    if not (is_integer(d) and is_integer(ds)):
        raise ValueError("min_uca searches integer models and needs integer d, ds")
    cert = rep_linear(m)
    if not cert.positive:
        raise NotUnitError(cert)
    trace = []
    l = d + ds + 1
    if parity_l == 2 and l % 2 == 0:
        l += 1
    bound = _scan_bound(m.n, d, ds)
    while l <= bound:
        res = min_circ(m, l, d, ds, parity=parity_c, trace=trace)
        if res is not None:
            c = res.model.c
            assert verify_realization(res.model, m, res.descriptor).ok
            return MinimalResult(l, c, res.model, tuple(trace))
        l += parity_l or 1
    raise AssertionError(f"no feasible length up to {bound} although recognition "
                         f"returned a positive certificate ({cert.c}, {cert.l})")


# -- extensions ---------------------------------------------------------------

@dataclass(frozen=True)
class Extension:
    k: int
    q: int
    model: RealizedModel

    def to_json(self):
        return {"k": self.k, "q": self.q, "model": self.model.to_json()}


def min_power_cycle(m):
    """Minimal (k, q)-extension of a UCA model: the least C_q^k containing it.

    l is the least odd length and c the least even circumference of a
    (c, l, 1, 1)-CA model; the solver then returns even begins.
    """
    res = min_uca(m, 1, 1, parity_l=2, parity_c=2)
    assert is_completable(res.model), res.model
    return Extension(int(res.l_star - 1) // 2, int(res.c_star) // 2, res.model)


def min_power_path(m):
    """Minimal (k, q)-extension of a UIG model: the least P_q^k containing it."""
    res = min_uig(m, 1, 1)
    assert is_completable(res.model), res.model
    last = max(res.model.begins)
    return Extension(int(res.l_star - 1) // 2, int(last) // 2 + 1, res.model)


def min_power(m):
    return min_power_path(m) if m.linear else min_power_cycle(m)
