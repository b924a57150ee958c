"""The synthetic digraph of a model and its weighings.

Vertices are arcs 1..n plus ``0`` for the anchor A_0 in the bounded
variant.  Every arc has one step, at most one nose (its end is followed by
a begin) and at most one hollow (its begin is followed by an end).
"""

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import NamedTuple

from .model import ModelError
from .rational import INF

NOSE, HOLLOW, STEP, BOUND_OUT, BOUND_IN = "nose", "hollow", "step", "bound_out", "bound_in"
KIND_RANK = {NOSE: 0, HOLLOW: 1, STEP: 2, BOUND_OUT: 3, BOUND_IN: 4}


class SynEdge(NamedTuple):
    frm: int
    to: int
    kind: str
    internal: bool
    jump: int

    def sort_key(self):
        return (self.frm, KIND_RANK[self.kind], self.to)


def heights(model):
    """Per-arc heights (index 0 unused) and the model height h(A_n).

    One sweep: ``last`` is the largest non-wrapping arc whose end has been
    passed, so h(A_i) = 1 + h(A_last) or 0 when no end was passed yet.
    """
    if model.trivial_reason() is not None:
        raise ModelError("trivial", f"trivial model ({model.trivial_reason()})")
    n = model.n
    h = [0] * (n + 1)
    ps = model.pos_s
    last = 0
    for tok in model.order:
        if tok > 0:
            h[tok] = 0 if last == 0 else h[last] + 1
        elif ps[-tok] < model.pos_t[-tok]:
            last = -tok
    return h, h[n]


@dataclass(frozen=True, eq=False)
class SyntheticGraph:
    """Synthetic graph S(M), or the bounded B(M) when ``has_a0`` is set."""

    model: object
    heights: tuple
    height: int
    nose_to: tuple
    hollow_to: tuple
    has_a0: bool = False

    @property
    def n(self):
        return self.model.n

    def nose_internal(self, i):
        return i < self.nose_to[i]

    def hollow_internal(self, i):
        return i > self.hollow_to[i]

    def _edge(self, i, j, kind, internal):
        return SynEdge(i, j, kind, internal, self.heights[j] - self.heights[i])

    def step(self, i):
        j = i % self.n + 1
        return self._edge(i, j, STEP, i < self.n)

    def nose(self, i):
        j = self.nose_to[i]
        return None if j == 0 else self._edge(i, j, NOSE, i < j)

    def hollow(self, i):
        j = self.hollow_to[i]
        return None if j == 0 else self._edge(i, j, HOLLOW, i > j)

    def out_edges(self, v):
        """Outgoing edges of ``v`` in (kind, to) scan order."""
        if v == 0:
            if not self.has_a0:
                return []
            return [SynEdge(0, i, BOUND_OUT, False, 0) for i in range(1, self.n + 1)]
        out = [e for e in (self.nose(v), self.hollow(v), self.step(v)) if e is not None]
        if self.has_a0:
            out.append(SynEdge(v, 0, BOUND_IN, False, 0))
        return sorted(out, key=SynEdge.sort_key)

    @cached_property
    def edges(self):
        """All edges sorted by (from, kind, to)."""
        out = []
        for v in range(0 if self.has_a0 else 1, self.n + 1):
            out.extend(self.out_edges(v))
        return tuple(out)

    def bounded(self):
        return SyntheticGraph(self.model, self.heights, self.height,
                              self.nose_to, self.hollow_to, True)

    def boundless(self):
        return SyntheticGraph(self.model, self.heights, self.height,
                              self.nose_to, self.hollow_to, False)

    def jump_class(self, edge):
        return jump_class(edge, self.height)


def build_synthetic(model):
    """Boundless synthetic graph on arcs 1..n."""
    h, height = heights(model)
    n, m = model.n, 2 * model.n
    order = model.order
    nose_to = [0] * (n + 1)
    hollow_to = [0] * (n + 1)
    for p, tok in enumerate(order):
        q = p + 1
        if q == m:
            if model.linear:
                break
            q = 0
        nxt = order[q]
        if tok < 0 and nxt > 0:
            nose_to[-tok] = nxt
        elif tok > 0 and nxt < 0:
            hollow_to[tok] = -nxt
    return SyntheticGraph(model, tuple(h), height, tuple(nose_to), tuple(hollow_to))


def build_bounded(model):
    """Bounded synthetic graph; the bound values live in the descriptor."""
    return build_synthetic(model).bounded()


def sep_weight(edge, u):
    """Separation weight of ``edge`` under descriptor ``u`` (exact)."""
    kind = edge.kind
    if kind == BOUND_OUT:
        return u.dl_of(edge.to)
    if kind == BOUND_IN:
        if u.c is INF:
            raise ValueError("bound A_i -> A_0 has weight -inf when c is inf")
        return u.dr_of(edge.frm) - u.c
    q = 0 if edge.internal else 1
    if q and u.c is INF:
        raise ValueError("external edge queried with c = inf")
    cq = u.c if q else 0
    if kind == STEP:
        return u.d + u.ds - cq
    if kind == NOSE:
        return u.d + u.l - cq
    return u.d + cq - u.l


def sep_coefficients(edge):
    """``(bound, [c], [l], [d], [ds])`` of the edge weight.

    ``bound`` is ``"dl"``/``"dr"`` for bound edges and ``None`` otherwise.
    """
    q = 0 if edge.internal else 1
    kind = edge.kind
    if kind == STEP:
        return (None, -q, 0, 1, 1)
    if kind == NOSE:
        return (None, -q, 1, 1, 0)
    if kind == HOLLOW:
        return (None, q, -1, 1, 0)
    if kind == BOUND_OUT:
        return ("dl", 0, 0, 0, 0)
    return ("dr", -1, 0, 0, 0)


def walk_sep(walk, u):
    return sum((sep_weight(e, u) for e in walk), Fraction(0))


# jump classes, named by kind and jump relative to the model height h
NU_1, NU_MH, NU_1MH = "nu_1", "nu_-h", "nu_1-h"
ETA_0, ETA_M1, ETA_H, ETA_HM1 = "eta_0", "eta_-1", "eta_h", "eta_h-1"
SIGMA_0, SIGMA_1, SIGMA_MH = "sigma_0", "sigma_1", "sigma_-h"
JUMP_CLASSES = (NU_1, NU_MH, NU_1MH, ETA_0, ETA_M1, ETA_H, ETA_HM1, SIGMA_0, SIGMA_1, SIGMA_MH)

_CLASS_JUMP = {NU_1: (1, 0), NU_MH: (0, -1), NU_1MH: (1, -1), ETA_0: (0, 0), ETA_M1: (-1, 0),
               ETA_H: (0, 1), ETA_HM1: (-1, 1), SIGMA_0: (0, 0), SIGMA_1: (1, 0),
               SIGMA_MH: (0, -1)}


def jump_class(edge, h):
    """Classify by kind, internal flag and jump; never by the jump alone."""
    kind, j = edge.kind, edge.jump
    if kind == NOSE:
        if edge.internal:
            name = NU_1 if j == 1 else None
        else:
            name = NU_MH if j == -h else NU_1MH if j == 1 - h else None
    elif kind == STEP:
        if edge.internal:
            name = SIGMA_0 if j == 0 else SIGMA_1 if j == 1 else None
        else:
            name = SIGMA_MH if j == -h else None
    elif kind == HOLLOW:
        if edge.internal:
            name = ETA_0 if j == 0 else ETA_M1 if j == -1 else None
        else:
            name = ETA_H if j == h else ETA_HM1 if j == h - 1 else None
    else:
        raise ValueError("bounds have no jump class")
    if name is None:
        raise AssertionError(f"edge {edge} has an impossible jump for height {h}")
    return name


def class_jump(name, h):
    a, b = _CLASS_JUMP[name]
    return a + b * h


class JumpProfile(NamedTuple):
    counts: dict

    def __getitem__(self, name):
        return self.counts.get(name, 0)

    def height_change(self, h):
        """Right-hand side of the jump identity for a walk."""
        g = self.__getitem__
        return (g(NU_1) + g(SIGMA_1) - g(ETA_M1) + h * (g(ETA_H) - g(NU_MH) - g(SIGMA_MH))
                + (h - 1) * (g(ETA_HM1) - g(NU_1MH)))

    @property
    def ext(self):
        g = self.__getitem__
        return g(ETA_H) + g(ETA_HM1) - g(NU_MH) - g(NU_1MH) - g(SIGMA_MH)


def jump_profile(walk, h):
    return JumpProfile(dict(Counter(jump_class(e, h) for e in walk)))


# (len constant part, len coefficient of r, ext, hollow const, step const)
EDGE_FACTORS = {
    NU_1: (0, 0, 0, 0, 0),
    NU_1MH: (0, -1, -1, 0, 0),
    NU_MH: (1, -1, -1, 0, 0),
    ETA_M1: (0, 0, 0, 1, 0),
    ETA_0: (-1, 0, 0, 1, 0),
    ETA_HM1: (0, 1, 1, 1, 0),
    ETA_H: (-1, 1, 1, 1, 0),
    SIGMA_0: (0, 0, 0, 0, 1),
    SIGMA_1: (-1, 0, 0, 0, 1),
    SIGMA_MH: (0, -1, -1, 0, 1),
}


class WalkFactors(NamedTuple):
    len: Fraction
    ext: int
    const_hollow: int
    const_step: int

    def const(self, d, ds):
        return 2 * d * self.const_hollow + (d + ds) * self.const_step


def _check_connected(walk):
    for a, b in zip(walk, walk[1:]):
        if a.to != b.frm:
            raise ValueError(f"disconnected walk at {a} -> {b}")


def walk_factors(g, walk, r):
    """Length, extra and constant factors of a walk in S for nose ratio ``r``."""
    _check_connected(walk)
    r = Fraction(r)
    len_c = len_r = ext = ch = cs = 0
    for e in walk:
        a, b, x, y, z = EDGE_FACTORS[jump_class(e, g.height)]
        len_c += a
        len_r += b
        ext += x
        ch += y
        cs += z
    return WalkFactors(len_c + r * len_r, ext, ch, cs)


def factors_sep(g, walk, f, u, e):
    """Evaluate (l+d)(dh + len) + e*ext + const for the given factors."""
    if walk:
        dh = g.heights[walk[-1].to] - g.heights[walk[0].frm]
    else:
        dh = 0
    return (u.l + u.d) * (dh + f.len) + e * f.ext + f.const(u.d, u.ds)


_KIND_GLYPH = {NOSE: "ν", HOLLOW: "η", STEP: "σ", BOUND_OUT: "β", BOUND_IN: "β"}


def to_dot(g):
    """Deterministic Graphviz rendering."""
    lines = ["digraph S {"]
    if g.has_a0:
        lines.append('  A0 [label="A0"];')
    for i in range(1, g.n + 1):
        lines.append(f'  A{i} [label="A{i} h={g.heights[i]}"];')
    for e in g.edges:
        label = _KIND_GLYPH[e.kind]
        if e.kind not in (BOUND_OUT, BOUND_IN):
            label += str(e.jump)
        style = "" if e.internal else ", style=dashed"
        lines.append(f'  A{e.frm} -> A{e.to} [label="{label}"{style}];')
    lines.append("}")
    return "\n".join(lines) + "\n"
