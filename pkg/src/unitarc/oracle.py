"""Brute-force verifiers and seeded instance generators.

Nothing here is fast; everything here is simple enough to trust.  The
fast paths elsewhere are tested against these functions.
"""

import os
import random
from fractions import Fraction

from .model import ModelError, RealizedModel, UcaDescriptor, build_model
from .rational import INF
from .synthetic import (BOUND_IN, BOUND_OUT, HOLLOW, NOSE, build_bounded, build_synthetic,
                        jump_profile, sep_weight, walk_factors, NU_1MH, NU_MH, SIGMA_1,
                        SIGMA_MH, ETA_0, ETA_H, ETA_HM1)

DEFAULT_CYCLE_CAP = 10 ** 6


class CycleCapExceeded(RuntimeError):
    pass


def cycle_cap():
    value = os.environ.get("UNIT_ARC_CYCLE_CAP")
    return int(value) if value else DEFAULT_CYCLE_CAP


def _adjacency(edges):
    adj = {}
    for e in edges:
        adj.setdefault(e.frm, []).append(e)
        adj.setdefault(e.to, [])
    return adj


def iter_simple_cycles(edges, cap=None):
    """Yield every simple directed cycle as an edge tuple.

    Parallel edges give distinct cycles.  Each cycle is reported once,
    starting at its smallest vertex, in deterministic DFS order.
    """
    cap = cycle_cap() if cap is None else cap
    adj = _adjacency(sorted(edges, key=lambda e: e.sort_key()))
    count = 0
    for start in sorted(adj):
        path = []
        on_path = {start}
        stack = [iter(adj[start])]
        while stack:
            e = next(stack[-1], None)
            if e is None:
                stack.pop()
                if path:
                    on_path.discard(path.pop().to)
                continue
            if e.to == start:
                count += 1
                if count > cap:
                    raise CycleCapExceeded(f"more than {cap} simple cycles")
                yield tuple(path) + (e,)
            elif e.to > start and e.to not in on_path:
                path.append(e)
                on_path.add(e.to)
                stack.append(iter(adj[e.to]))


def enumerate_simple_cycles(g, cap=None):
    """All simple cycles of a synthetic graph (the CycleSet)."""
    return list(iter_simple_cycles(g.edges, cap))


def active_edges(g, u):
    if u.c is INF:
        return [e for e in g.edges if e.kind == BOUND_OUT or (e.internal and e.kind != BOUND_IN)]
    return list(g.edges)


def oracle_feasible(m, u, cap=None):
    """True iff no simple cycle of B(m) has positive separation weight.

    Returns ``(verdict, violating_cycle_or_None)``.
    """
    g = build_bounded(m)
    edges = active_edges(g, u)
    weight = {e: sep_weight(e, u) for e in edges}
    for cycle in iter_simple_cycles(edges, cap):
        if sum(weight[e] for e in cycle) > 0:
            return False, cycle
    return True, None


def _profile_counts(cycle, h):
    return jump_profile(cycle, h)


def nose_cycle_ratio(cycle, h):
    p = jump_profile(cycle, h)
    den = p[NU_1MH] + p[NU_MH] + p[SIGMA_MH]
    return Fraction(p[NU_MH] - p[SIGMA_1], den)


def hollow_cycle_ratio(cycle, h):
    p = jump_profile(cycle, h)
    den = p[ETA_H] + p[ETA_HM1] - p[SIGMA_MH]
    num = p[ETA_0] + p[ETA_H] + p[SIGMA_1]
    if den == 0:
        return INF
    return Fraction(num, den)


def is_hollow_cycle(cycle, h):
    if any(e.kind == NOSE for e in cycle):
        return False
    p = jump_profile(cycle, h)
    return p[ETA_H] + p[ETA_HM1] >= p[SIGMA_MH]


def is_nose_cycle(cycle):
    return not any(e.kind == HOLLOW for e in cycle)


def ratio_bruteforce(m, cap=None):
    """(max nose ratio, min hollow ratio) over all simple cycles of S."""
    g = build_synthetic(m)
    r, big_r = None, INF
    for cycle in iter_simple_cycles(g.edges, cap):
        if is_nose_cycle(cycle):
            value = nose_cycle_ratio(cycle, g.height)
            if r is None or value > r:
                r = value
        if is_hollow_cycle(cycle, g.height):
            value = hollow_cycle_ratio(cycle, g.height)
            if value < big_r:
                big_r = value
    return r, big_r


def hollow_cycle_with_nonnegative_len(m, r, cap=None):
    """Some hollow cycle W of S with len(W) >= 0, or ``None``."""
    g = build_synthetic(m)
    for cycle in iter_simple_cycles(g.edges, cap):
        if is_hollow_cycle(cycle, g.height) and walk_factors(g, cycle, r).len >= 0:
            return cycle
    return None


def simple_paths_from(edges, source):
    """Every simple path from ``source`` (including the empty one)."""
    adj = _adjacency(sorted(edges, key=lambda e: e.sort_key()))
    out = [()]
    adj.setdefault(source, [])

    def dfs(v, path, seen):
        for e in adj[v]:
            if e.to not in seen:
                path.append(e)
                seen.add(e.to)
                out.append(tuple(path))
                dfs(e.to, path, seen)
                seen.discard(e.to)
                path.pop()

    dfs(source, [], {source})
    return out


def bruteforce_distances(m, r):
    """Lexicographic max of (len, ext) over simple paths of S from A_1."""
    g = build_synthetic(m)
    best = [None] * (m.n + 1)
    for path in simple_paths_from(g.edges, 1):
        end = path[-1].to if path else 1
        f = walk_factors(g, path, r)
        key = (f.len, f.ext)
        if best[end] is None or key > best[end]:
            best[end] = key
    return best


def bruteforce_sep_distances(m, u, source=1):
    """Max sep over simple paths of S from ``source`` using active edges."""
    g = build_synthetic(m)
    edges = [e for e in g.edges if u.c is not INF or e.internal]
    best = [None] * (m.n + 1)
    for path in simple_paths_from(edges, source):
        end = path[-1].to if path else source
        w = sum((sep_weight(e, u) for e in path), Fraction(0))
        if best[end] is None or w > best[end]:
            best[end] = w
    return best


def _draw(rng, n, linear, variable):
    span = 20 * n
    begins = sorted(2 * x for x in rng.sample(range(span // 2 if linear else span), n))
    if linear:
        width = begins[-1] - begins[0]
        lo = max(3, width // n)
        hi = max(lo + 2, width)
    else:
        circ = 2 * span
        lo = max(3, circ // n)
        hi = max(lo + 2, circ // 2 - 1)
    length = rng.randrange(lo, hi) | 1
    if variable:
        lengths = []
        spread = rng.choice((1, 2, 4)) * max(1, length // 4)
        for _ in range(n):
            lengths.append(max(1, length + 2 * rng.randint(-spread, spread)))
    else:
        lengths = [length] * n
    if linear:
        return RealizedModel(INF, length, tuple(begins)), lengths
    return RealizedModel(2 * span, length, tuple(begins)), lengths


def _order_from(begins, lengths, circ):
    events = []
    for i, (s, ln) in enumerate(zip(begins, lengths), start=1):
        t = s + ln
        if circ is not None:
            if ln >= circ // 2:
                return None
            t %= circ
        events.append((s, i))
        events.append((t, -i))
    events.sort()
    if len({p for p, _ in events}) != len(events):
        return None
    return [tok for _, tok in events]


def _random_model(n, seed, linear, variable):
    if n < 1:
        raise ValueError("n must be positive")
    if n < 3:
        raise ValueError("every model with fewer than 3 arcs is trivial")
    rng = random.Random(seed)
    while True:
        realized, lengths = _draw(rng, n, linear, variable)
        circ = None if linear else realized.c
        order = _order_from(realized.begins, lengths, circ)
        if order is None:
            continue
        try:
            return build_model(order, linear=linear)
        except ModelError:
            continue


def random_pca_model(n, seed):
    """A random non-trivial model read from a random UCA realization."""
    return _random_model(n, seed, linear=False, variable=False)


def random_pig_model(n, seed):
    """A random non-trivial model read from a random UIG realization."""
    return _random_model(n, seed, linear=True, variable=False)


def random_proper_model(n, seed):
    """A random PCA model from arcs of varying length; often not UCA."""
    return _random_model(n, seed, linear=False, variable=True)


def random_pca_order(n, seed, attempts=100000):
    """A random combinatorial PCA order.

    Unlike the realization-based generators this samples extreme orders
    directly (begins in index order, ends in cyclic index order), so it
    reaches models that are not UCA.
    """
    if n < 3:
        raise ValueError("every model with fewer than 3 arcs is trivial")
    rng = random.Random(seed)
    for _ in range(attempts):
        kinds = [1] * n + [-1] * n
        rng.shuffle(kinds)
        offset = rng.randrange(n)
        tokens, b, t = [], 0, 0
        for kind in kinds:
            if kind > 0:
                b += 1
                tokens.append(b)
            else:
                tokens.append(-((offset + t) % n + 1))
                t += 1
        try:
            return build_model(tokens)
        except ModelError:
            continue
    raise RuntimeError("no valid order found")


def search_non_uca(n, seed, tries=100000, prefilter=None):
    """Random search for a model with r >= R, i.e. with no equivalent UCA model.

    ``prefilter`` may cheaply reject candidates; the verdict itself always
    comes from the enumeration in :func:`ratio_bruteforce`.
    """
    rng = random.Random(seed)
    for _ in range(tries):
        m = random_pca_order(n, rng.getrandbits(64))
        if prefilter is not None and not prefilter(m):
            continue
        r, big_r = ratio_bruteforce(m)
        if big_r is not INF and r >= big_r:
            return m
    raise RuntimeError("no non-UCA model found")


def random_int_descriptor(m, seed, bounds=True):
    """A random integer descriptor sized so both verdicts are common."""
    rng = random.Random(seed)
    n = m.n
    d = rng.choice((1, 1, 2))
    ds = rng.choice((0, 0, 1))
    l = rng.randint(d + ds + 1, 4 * n)
    dl, dr = {}, {}
    if bounds and rng.random() < 0.3:
        for i in rng.sample(range(1, n + 1), rng.randint(1, n)):
            (dl if rng.random() < 0.5 else dr)[i] = rng.randint(0, 2 * l)
    if m.linear:
        return UcaDescriptor(INF, l, d, ds, dl, {})
    c = rng.randint(max(1, n * d), n * (l + 1))
    return UcaDescriptor(c, l, d, ds, dl, dr)
