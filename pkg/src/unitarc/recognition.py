"""Recognition of UCA models with positive and negative certificates.

The pipeline: nose ratio r from the greedy functional graph, greedy
lexicographic (len, ext) distances from A_1, the reduction R obtained by
dropping redundant edges, and finally either an integer model read off the
acyclic R or a pair of forbidden cycles translated into an independent and
a circuit.
"""

from dataclasses import dataclass, field, replace
from functools import cached_property
from fractions import Fraction
from typing import NamedTuple

from .model import ModelError, RealizedModel, UcaDescriptor, equivalent, verify_realization
from .rational import INF
from .synthetic import (ETA_0, ETA_H, ETA_HM1, HOLLOW, NOSE, NU_1MH, NU_MH, SIGMA_1, SIGMA_MH,
                        STEP, build_synthetic, jump_profile)


class Ratio(NamedTuple):
    num: int
    den: int

    @property
    def value(self):
        return INF if self.den == 0 else Fraction(self.num, self.den)

    def __str__(self):
        return "inf" if self.den == 0 else str(self.value)


def _reduced(num, den):
    if den == 0:
        return Ratio(1, 0)
    f = Fraction(num, den)
    return Ratio(f.numerator, f.denominator)


def _graph(m, g):
    if g is not None:
        return g
    return build_synthetic(m)


def _functional_cycles(succ, n):
    """Cycles of the functional graph ``v -> succ[v]`` on 1..n."""
    state = [0] * (n + 1)
    cycles = []
    for start in range(1, n + 1):
        if state[start]:
            continue
        path = []
        v = start
        while state[v] == 0:
            state[v] = 1
            path.append(v)
            v = succ[v]
        if state[v] == 1:
            cycles.append(path[path.index(v):])
        for x in path:
            state[x] = 2
    return cycles


def greedy_nose_edges(g):
    """Out-edge of each vertex in S_N: its nose if any, otherwise its step."""
    return [None] + [g.nose(v) or g.step(v) for v in range(1, g.n + 1)]


def greedy_hollow_edges(g):
    return [None] + [g.hollow(v) or g.step(v) for v in range(1, g.n + 1)]


def _greedy_succ(g, targets):
    n = g.n
    return [0] + [targets[v] or v % n + 1 for v in range(1, n + 1)]


def _greedy_cycle(g, verts, pick):
    """Edges of a greedy cycle given by its vertices, rotated to the minimum."""
    return _rotate_to_min(tuple(pick(v) or g.step(v) for v in verts))


def nose_walk_ratio(cycle, h):
    p = jump_profile(cycle, h)
    return _reduced(p[NU_MH] - p[SIGMA_1], p[NU_1MH] + p[NU_MH] + p[SIGMA_MH])


def hollow_walk_ratio(cycle, h):
    p = jump_profile(cycle, h)
    return _reduced(p[ETA_0] + p[ETA_H] + p[SIGMA_1], p[ETA_H] + p[ETA_HM1] - p[SIGMA_MH])


def nose_ratio(m, g=None):
    """Maximum ratio over the greedy nose cycles, with a witness cycle."""
    g = _graph(m, g)
    best, witness = None, None
    for verts in _functional_cycles(_greedy_succ(g, g.nose_to), g.n):
        cycle = _greedy_cycle(g, verts, g.nose)
        ratio = nose_walk_ratio(cycle, g.height)
        assert ratio.den >= 1, "greedy nose cycle without a turn"
        if best is None or ratio.value > best.value:
            best, witness = ratio, cycle
    return best, witness


def hollow_ratio(m, g=None):
    """Minimum ratio over the greedy hollow cycles; ``inf`` if none qualifies."""
    g = _graph(m, g)
    best, witness = Ratio(1, 0), None
    for verts in _functional_cycles(_greedy_succ(g, g.hollow_to), g.n):
        cycle = _greedy_cycle(g, verts, g.hollow)
        p = jump_profile(cycle, g.height)
        den = p[ETA_H] + p[ETA_HM1] - p[SIGMA_MH]
        if den < 0:
            continue
        ratio = hollow_walk_ratio(cycle, g.height)
        if witness is None or ratio.value < best.value:
            best, witness = ratio, cycle
    return best, witness


def _rotate_to_min(cycle):
    k = min(range(len(cycle)), key=lambda i: cycle[i].frm)
    return tuple(cycle[k:]) + tuple(cycle[:k])


# Scaled factors: len is carried as r2 * len, an integer, so that the pair
# (len, ext) packs into one integer key  len * M + ext  with |ext| < M / 2.

def _edge_len_ext(e, h, r1, r2):
    """(r2 * len, ext) of a single edge of S."""
    kind, j = e.kind, e.jump
    if kind == NOSE:
        if e.internal:
            return 0, 0
        return (r2 - r1, -1) if j == -h else (-r1, -1)
    if kind == STEP:
        if e.internal:
            return (0, 0) if j == 0 else (-r2, 0)
        return -r1, -1
    if e.internal:
        return (0, 0) if j == -1 else (-r2, 0)
    return (r1 - r2, 1) if j == h else (r1, 1)


def _edge_keys(g, r1, r2, mult):
    """Packed keys of every nose, hollow and step, indexed by tail vertex.

    ``None`` marks a missing nose or hollow.  Equivalent to packing
    :func:`_edge_len_ext` edge by edge, without building the edges.
    """
    n, h, hs = g.n, g.height, g.heights
    nose_to, hollow_to = g.nose_to, g.hollow_to
    nose_ext_h = (r2 - r1) * mult - 1
    nose_ext = -r1 * mult - 1
    hollow_ext_h = (r1 - r2) * mult + 1
    hollow_ext = r1 * mult + 1
    flat = -r2 * mult
    nose_k = [None] * (n + 1)
    hollow_k = [None] * (n + 1)
    step_k = [None] * (n + 1)
    for v in range(1, n + 1):
        hv = hs[v]
        j = nose_to[v]
        if j:
            if v < j:
                nose_k[v] = 0
            else:
                nose_k[v] = nose_ext_h if hs[j] - hv == -h else nose_ext
        j = hollow_to[v]
        if j:
            if v > j:
                hollow_k[v] = 0 if hs[j] - hv == -1 else flat
            else:
                hollow_k[v] = hollow_ext_h if hs[j] - hv == h else hollow_ext
        if v < n:
            step_k[v] = 0 if hs[v + 1] == hv else flat
        else:
            step_k[v] = nose_ext
    return nose_k, hollow_k, step_k


class Distances(NamedTuple):
    """Per-arc (len, ext) of the lexicographically longest paths from A_1."""

    len_scaled: tuple
    ext: tuple
    r2: int

    def pair(self, i):
        return (Fraction(self.len_scaled[i], self.r2), self.ext[i])


def _greedy_sweep(n, targets, keys, step_k):
    """Two-phase distances along one greedy family (noses or hollows)."""
    p = {1: 0}
    x = 1
    while True:
        y = targets[x]
        if y:
            w = keys[x]
        else:
            y, w = x % n + 1, step_k[x]
        if y in p:
            break
        p[y] = p[x] + w
        x = y
    q = [0] * (n + 1)
    prev = 0
    for i in range(2, n + 1):
        cand = prev + step_k[i - 1]
        pi = p.get(i)
        if pi is not None and pi > cand:
            cand = pi
        q[i] = prev = cand
    return q


def _key_mult(n):
    return 4 * n + 8


def _unpack(key, mult):
    ext = (key + mult // 2) % mult - mult // 2
    return (key - ext) // mult, ext


def _ratio_parts(r):
    rv = r.value if isinstance(r, Ratio) else Fraction(r)
    return rv.numerator, rv.denominator


def _greedy_keys(g, r1, r2, mult, tables=None):
    nose_k, hollow_k, step_k = tables or _edge_keys(g, r1, r2, mult)
    qn = _greedy_sweep(g.n, g.nose_to, nose_k, step_k)
    qh = _greedy_sweep(g.n, g.hollow_to, hollow_k, step_k)
    return [a if a > b else b for a, b in zip(qn, qh)]


def _distances_from_keys(keys, mult, r2):
    pairs = [_unpack(k, mult) for k in keys]
    return Distances(tuple(p[0] for p in pairs), tuple(p[1] for p in pairs), r2)


def greedy_distances(m, r=None, g=None):
    """Lexicographic (IDist_len, IDist_ext o IDist_len) from A_1 to every arc."""
    g = _graph(m, g)
    if r is None:
        r = nose_ratio(m, g)[0]
    r1, r2 = _ratio_parts(r)
    mult = _key_mult(g.n)
    return _distances_from_keys(_greedy_keys(g, r1, r2, mult), mult, r2)


@dataclass(frozen=True)
class ReductionGraph:
    """R(M).  ``out[v]`` lists the surviving out-edges of v as (head, kind)."""

    graph: object
    out: list = field(repr=False)
    acyclic: bool
    topological: tuple
    witness: tuple
    distances: Distances

    @cached_property
    def kept(self):
        return tuple((v, kind, w) for v in range(1, self.graph.n + 1) for w, kind in self.out[v])

    @cached_property
    def edges(self):
        g = self.graph
        make = {NOSE: g.nose, HOLLOW: g.hollow, STEP: g.step}
        return tuple(make[kind](v) for v, kind, _ in self.kept)


def _kahn(n, out, indeg):
    indeg = list(indeg)
    order = [v for v in range(1, n + 1) if indeg[v] == 0]
    k = 0
    while k < len(order):
        v = order[k]
        k += 1
        for w, _ in out[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                order.append(w)
    return order, indeg


def _find_cycle(g, kept, indeg):
    incoming = [None] * (g.n + 1)
    for v, kind, w in kept:
        if indeg[w] > 0 and indeg[v] > 0 and incoming[w] is None:
            incoming[w] = (v, kind)
    start = next(v for v in range(1, g.n + 1) if indeg[v] > 0)
    make = {NOSE: g.nose, HOLLOW: g.hollow, STEP: g.step}
    seen = {}
    path = []
    v = start
    while v not in seen:
        seen[v] = len(path)
        u, kind = incoming[v]
        path.append(make[kind](u))
        v = u
    cycle = path[seen[v]:]
    cycle.reverse()
    return _rotate_to_min(tuple(cycle))


def reduction(m, g=None, r=None, dist=None):
    """The reduction R(M) and a verdict on its acyclicity."""
    g = _graph(m, g)
    if r is None:
        r = nose_ratio(m, g)[0]
    r1, r2 = _ratio_parts(r)
    n = g.n
    mult = _key_mult(n)
    tables = _edge_keys(g, r1, r2, mult)
    if dist is None:
        key = _greedy_keys(g, r1, r2, mult, tables)
        dist = _distances_from_keys(key, mult, r2)
    else:
        key = [a * mult + b for a, b in zip(dist.len_scaled, dist.ext)]
    nose_k, hollow_k, step_k = tables
    nose_to, hollow_to = g.nose_to, g.hollow_to
    out = [[] for _ in range(n + 1)]
    indeg = [0] * (n + 1)
    for v in range(1, n + 1):
        kv = key[v]
        ov = out[v]
        j = nose_to[v]
        if j and key[j] <= kv + nose_k[v]:
            ov.append((j, NOSE))
            indeg[j] += 1
        j = hollow_to[v]
        if j and key[j] <= kv + hollow_k[v]:
            ov.append((j, HOLLOW))
            indeg[j] += 1
        j = v % n + 1
        if key[j] <= kv + step_k[v]:
            ov.append((j, STEP))
            indeg[j] += 1
    order, indeg = _kahn(n, out, indeg)
    if len(order) == n:
        return ReductionGraph(g, out, True, tuple(order), (), dist)
    red = ReductionGraph(g, out, False, (), (), dist)
    return replace(red, witness=_find_cycle(g, red.kept, indeg))


@dataclass(frozen=True)
class Positive:
    model: RealizedModel
    c: int
    l: int

    positive = True

    @property
    def descriptor(self):
        return UcaDescriptor(self.c, self.l, 1, 0)


@dataclass(frozen=True)
class Independent:
    arcs: tuple
    a: int
    b: int


@dataclass(frozen=True)
class Circuit:
    arcs: tuple
    x: int
    y: int


@dataclass(frozen=True)
class Negative:
    nose_cycle: tuple
    hollow_cycle: tuple
    witness_cycle: tuple
    independent: Independent
    circuit: Circuit

    positive = False

    @property
    def a(self):
        return self.independent.a

    @property
    def b(self):
        return self.independent.b

    @property
    def x(self):
        return self.circuit.x

    @property
    def y(self):
        return self.circuit.y


def linear_parameters(n, height, r):
    """(c, l, e) with e = 4n, l + 1 = r2 e^2 and c = (l + 1)(h + r) + e."""
    rv = r.value
    e = 4 * n
    l1 = rv.denominator * e * e
    c = l1 * height + l1 // rv.denominator * rv.numerator + e
    return c, l1 - 1, e


def _longest_from_a1(red, c, l):
    """Longest sep distances from A_1 over R at (c, l, d=1, ds=0)."""
    n = red.graph.n
    dist = [None] * (n + 1)
    dist[1] = 0
    step_w, nose_w, hollow_w = 1, 1 + l, 1 - l
    for v in red.topological:
        dv = dist[v]
        if dv is None:
            continue
        for to, kind in red.out[v]:
            if kind == STEP:
                w = step_w if v < to else step_w - c
            elif kind == NOSE:
                w = nose_w if v < to else nose_w - c
            else:
                w = hollow_w if v > to else hollow_w + c
            cand = dv + w
            dt = dist[to]
            if dt is None or cand > dt:
                dist[to] = cand
    return dist


def rep_linear(m, g=None):
    """Positive integer (c, l)-model or a negative certificate.

    Interval models are read on the circle, which keeps them equivalent.
    """
    if m.linear:
        m, g = m.as_circular(), None
    reason = m.trivial_reason()
    if reason is not None:
        raise ModelError("trivial", f"trivial model ({reason})")
    g = _graph(m, g)
    r, nose_cycle = nose_ratio(m, g)
    red = reduction(m, g, r)
    if not red.acyclic:
        return _negative(m, g, r, nose_cycle, red)
    c, l, _ = linear_parameters(g.n, g.height, r)
    dist = _longest_from_a1(red, c, l)
    assert all(x is not None for x in dist[1:]), "arc unreachable from A_1 in R"
    model = RealizedModel(c, l, tuple(x % c for x in dist[1:]))
    return Positive(model, c, l)


def reach_counts(n, edges):
    """reach(A_j): number of vertices with a path to A_j, A_j included."""
    back = [[] for _ in range(n + 1)]
    for v, _, w in edges:
        back[w].append(v)
    counts = [0] * (n + 1)
    for j in range(1, n + 1):
        seen = {j}
        stack = [j]
        while stack:
            v = stack.pop()
            for w in back[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        counts[j] = len(seen)
    return counts


def reach_model(m, g=None):
    """Integer model whose begins are read from distances and reach counts."""
    g = _graph(m, g)
    r, _ = nose_ratio(m, g)
    red = reduction(m, g, r)
    if not red.acyclic:
        raise ValueError("reach_model needs an acyclic reduction")
    c, l, e = linear_parameters(g.n, g.height, r)
    reach = reach_counts(g.n, red.kept)
    dist = red.distances
    scale = (l + 1) // dist.r2
    begins = []
    for j in range(1, g.n + 1):
        s = (l + 1) * g.heights[j] + scale * dist.len_scaled[j] + e * dist.ext[j] + 2 * reach[j]
        begins.append(s % c)
    return RealizedModel(c, l, tuple(begins))


# -- rewriting closed walks towards nose or hollow cycles -------------------

def _find_nose_steps_hollow(walk):
    """Index range [i, k] of a nose, then only steps, then a hollow (cyclic)."""
    L = len(walk)
    for i in range(L):
        if walk[i].kind != NOSE:
            continue
        k = i + 1
        while k < i + L and walk[k % L].kind == STEP:
            k += 1
        if k < i + L and walk[k % L].kind == HOLLOW:
            return i, k
    return None


def _step_path(g, a, b):
    path = []
    while a != b:
        e = g.step(a)
        path.append(e)
        a = e.to
    return path


def to_nose_or_hollow_cycle(g, cycle, limit=None):
    """Rewrite a closed walk into one without noses or without hollows.

    A nose, steps, hollow block is replaced by the direct step path when it
    is a path, and otherwise the inner cycle it contains is cut out.  Neither
    move decreases len or ext.
    """
    walk = list(cycle)
    limit = limit or 10 * (len(walk) + g.n) ** 2
    for _ in range(limit):
        has_nose = any(e.kind == NOSE for e in walk)
        has_hollow = any(e.kind == HOLLOW for e in walk)
        if not (has_nose and has_hollow):
            return tuple(walk)
        i, k = _find_nose_steps_hollow(walk)
        walk = walk[i:] + walk[:i]
        k -= i
        block = walk[:k + 1]
        verts = [block[0].frm] + [e.to for e in block]
        first = {}
        cut = None
        for idx, v in enumerate(verts):
            if v in first:
                cut = (first[v], idx)
                break
            first[v] = idx
        if cut is None:
            walk = _step_path(g, verts[0], verts[-1]) + walk[k + 1:]
        else:
            a, b = cut
            if b - a == len(walk):
                raise AssertionError("inner cycle equals the whole walk")
            walk = walk[:a] + walk[b:]
    raise AssertionError("nose/hollow rewriting did not terminate")


# -- independents and circuits ---------------------------------------------

def _turns(arcs):
    k = len(arcs)
    return sum(1 for i in range(k) if arcs[(i + 1) % k] <= arcs[i])


def cycle_to_independent(m, cycle):
    """Standard independent read from the nose heads of a nose cycle."""
    heads = tuple(e.to for e in cycle if e.kind == NOSE)
    b = sum(1 for e in cycle if not e.internal)
    return Independent(heads, len(heads), b)


def _standardize_independent(m, arc):
    """Move to the arc whose begin is preceded by an end."""
    order, n2 = m.order, 2 * m.n
    for _ in range(m.n):
        prev = order[(m.pos_s[arc] - 1) % n2]
        if prev < 0:
            return arc
        arc = prev
    raise AssertionError("no begin is preceded by an end")


def independent_to_cycle(m, arcs, g=None):
    """The nose cycle W(A) of a (standardized) independent."""
    g = _graph(m, g)
    arcs = [_standardize_independent(m, a) for a in arcs]
    order, n2 = m.order, 2 * m.n
    cycle = []
    k = len(arcs)
    for i in range(k):
        nxt = arcs[(i + 1) % k]
        prev = order[(m.pos_s[nxt] - 1) % n2]
        assert prev < 0
        tail = -prev
        cycle.extend(_step_path(g, arcs[i], tail))
        nose = g.nose(tail)
        assert nose is not None and nose.to == nxt
        cycle.append(nose)
    return tuple(cycle)


def cycle_to_circuit(m, cycle):
    """Circuit read from a hollow cycle: its hollow tails in reverse order."""
    tails = [e.frm for e in cycle if e.kind == HOLLOW]
    arcs = tuple(reversed(tails))
    x = len(arcs)
    ext_h = sum(1 for e in cycle if e.kind == HOLLOW and not e.internal)
    ext_s = sum(1 for e in cycle if e.kind == STEP and not e.internal)
    return Circuit(arcs, x, ext_h - ext_s)


def _standardize_circuit(m, arc):
    order, n2 = m.order, 2 * m.n
    for _ in range(m.n):
        nxt = order[(m.pos_s[arc] + 1) % n2]
        if nxt < 0:
            return arc
        arc = nxt
    raise AssertionError("no begin is followed by an end")


def circuit_to_cycle(m, arcs, g=None):
    """The hollow cycle W(A) of a (standardized) circuit."""
    g = _graph(m, g)
    tails = [_standardize_circuit(m, a) for a in reversed(arcs)]
    k = len(tails)
    cycle = []
    for i in range(k):
        hollow = g.hollow(tails[i])
        assert hollow is not None
        cycle.append(hollow)
        cycle.extend(_step_path(g, hollow.to, tails[(i + 1) % k]))
    return tuple(cycle)


def check_independent(m, ind):
    arcs, k = ind.arcs, len(ind.arcs)
    if k == 0 or k != ind.a:
        return False
    for i in range(k):
        if m.contains_begin(arcs[i], arcs[(i + 1) % k]):
            return False
    return _turns(arcs) == ind.b


def check_circuit(m, cir):
    arcs, k = cir.arcs, len(cir.arcs)
    if k == 0 or k != cir.x:
        return False
    for i in range(k):
        if not m.contains_begin(arcs[i], arcs[(i + 1) % k]):
            return False
    return _turns(arcs) == cir.y


def _negative(m, g, r, nose_cycle, red):
    witness = to_nose_or_hollow_cycle(g, red.witness)
    _, hollow_cycle = hollow_ratio(m, g)
    independent = cycle_to_independent(m, nose_cycle)
    circuit = cycle_to_circuit(m, hollow_cycle)
    return Negative(nose_cycle, hollow_cycle, witness, independent, circuit)


class CertificateVerdict(NamedTuple):
    ok: bool
    report: tuple

    def __bool__(self):
        return self.ok


def verify_certificate(m, cert):
    """Re-check a certificate against the model from first principles."""
    m = m.as_circular()
    if isinstance(cert, Positive):
        u = UcaDescriptor(cert.model.c, cert.model.l, 1, 0)
        verdict = verify_realization(cert.model, m, u)
        if not verdict.ok:
            return CertificateVerdict(False, verdict.violations)
        if not equivalent(cert.model.to_model(), m):
            return CertificateVerdict(False, ("realized model is not equivalent",))
        return CertificateVerdict(True, ())
    problems = []
    ind, cir = cert.independent, cert.circuit
    if not check_independent(m, ind):
        problems.append("independent fails its definition or turn count")
    if not check_circuit(m, cir):
        problems.append("circuit fails its definition or turn count")
    if ind.b <= 0 or cir.y <= 0:
        problems.append("turn counts must be positive")
    elif ind.a * cir.y < cir.x * ind.b:
        problems.append("a/b < x/y, no violation of the ratio condition")
    return CertificateVerdict(not problems, tuple(problems))


def recognize(m):
    """Alias of rep_linear for readability at call sites."""
    return rep_linear(m)
