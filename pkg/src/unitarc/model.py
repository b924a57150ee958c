"""Proper circular-arc models, unit descriptors and realized coordinates.

A model is stored purely combinatorially: the circular order of its 2n
extremes, read clockwise from point 0.  A token is an int, ``+i`` for the
begin ``s_i`` and ``-i`` for the end ``t_i``; arcs are numbered so that the
begins appear in index order.  ``linear`` models (PIG) are read on a line
and no arc may wrap.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import NamedTuple

from .rational import INF, as_rational, format_rational, is_integer


class ModelError(ValueError):
    """Invalid model input.  ``kind`` names the failed check."""

    def __init__(self, kind, message):
        super().__init__(message)
        self.kind = kind


class ExtremeToken(NamedTuple):
    kind: str  # "begin" or "end"
    arc: int

    @classmethod
    def from_int(cls, token):
        return cls("begin" if token > 0 else "end", abs(token))

    def to_int(self):
        return self.arc if self.kind == "begin" else -self.arc

    def __str__(self):
        return f"{'s' if self.kind == 'begin' else 't'}{self.arc}"


def _token_text(token):
    return f"s{token}" if token > 0 else f"t{-token}"


@dataclass(frozen=True, eq=False)
class PcaModel:
    """A validated proper, normal circular-arc (or interval) model."""

    n: int
    order: tuple
    linear: bool = False
    relabeling: tuple = field(default=(), compare=False, repr=False)

    def __eq__(self, other):
        if not isinstance(other, PcaModel):
            return NotImplemented
        return (self.n, self.order, self.linear) == (other.n, other.order, other.linear)

    def __hash__(self):
        return hash((self.n, self.order, self.linear))

    @cached_property
    def pos_s(self):
        """``pos_s[i]`` is the sequence position of ``s_i`` (index 0 unused)."""
        pos = [0] * (self.n + 1)
        for p, tok in enumerate(self.order):
            if tok > 0:
                pos[tok] = p
        return pos

    @cached_property
    def pos_t(self):
        pos = [0] * (self.n + 1)
        for p, tok in enumerate(self.order):
            if tok < 0:
                pos[-tok] = p
        return pos

    @property
    def tokens(self):
        return [ExtremeToken.from_int(t) for t in self.order]

    def wraps(self, i):
        """True when arc ``i`` crosses point 0."""
        return self.pos_t[i] < self.pos_s[i]

    def contains_begin(self, i, j):
        """True when ``s_j`` lies strictly inside arc ``i``."""
        m = 2 * self.n
        span = (self.pos_t[i] - self.pos_s[i]) % m
        off = (self.pos_s[j] - self.pos_s[i]) % m
        return 0 < off < span

    def intersects(self, i, j):
        return i == j or self.contains_begin(i, j) or self.contains_begin(j, i)

    def as_circular(self):
        """The same order read on a circle; an interval model stays equivalent."""
        if not self.linear:
            return self
        return build_model(self.order, linear=False, allow_trivial=True)

    def is_complete_shortcut(self):
        """Triviality condition 1: every begin lies before the end of A_1."""
        return self.wraps(1) or self.pos_s[self.n] < self.pos_t[1]

    def trivial_reason(self):
        """Return ``None`` or a description of the triviality condition met."""
        if self.is_complete_shortcut():
            return "condition 1: s(A_n) < t(A_1), every pair of arcs intersects"
        m = 2 * self.n
        for i in range(1, self.n + 1):
            gap = self.pos_t[i] - self.pos_s[i]
            if gap == 1 or (not self.linear and gap % m == 1):
                return f"condition 2: s{i} and t{i} are consecutive"
        return None

    def text(self):
        head = "pig" if self.linear else "pca"
        return f"{head} {self.n}\n" + " ".join(_token_text(t) for t in self.order) + "\n"

    def __str__(self):
        return " ".join(_token_text(t) for t in self.order)


def _relabel(tokens):
    """Renumber arcs so that begins appear in index order."""
    mapping = {}
    for tok in tokens:
        if tok > 0 and tok not in mapping:
            mapping[tok] = len(mapping) + 1
    order = tuple(mapping[t] if t > 0 else -mapping[-t] for t in tokens)
    inverse = [0] * (len(mapping) + 1)
    for old, new in mapping.items():
        inverse[new] = old
    return order, tuple(inverse)


def _check_proper(model):
    n, m = model.n, 2 * model.n
    ends = [-t for t in model.order if t < 0]
    k = ends.index(1)
    rotated = ends[k:] + ends[:k]
    if rotated != list(range(1, n + 1)):
        return _find_containment(model) or (rotated[0], rotated[-1])
    # with ends in cyclic order, containment can only occur between
    # an arc and its successor, or when an arc spans every other arc
    ps, pt = model.pos_s, model.pos_t
    for i in range(1, n + 1):
        j = i % n + 1
        if j == i:
            continue
        span_i = (pt[i] - ps[i]) % m
        off = (ps[j] - ps[i]) % m
        if off < span_i and off + (pt[j] - ps[j]) % m < span_i:
            return (i, j)
        span_j = (pt[j] - ps[j]) % m
        off = (ps[i] - ps[j]) % m
        if off < span_j and off + span_i < span_j:
            return (j, i)
    return None


def _find_containment(model):
    m = 2 * model.n
    ps, pt = model.pos_s, model.pos_t
    for i in range(1, model.n + 1):
        span_i = (pt[i] - ps[i]) % m
        for j in range(1, model.n + 1):
            off = (ps[j] - ps[i]) % m
            if j != i and off < span_i and off + (pt[j] - ps[j]) % m < span_i:
                return (i, j)
    return None


def _check_normal(model):
    """Return a pair of arcs covering the circle, or ``None``."""
    if model.linear:
        return None
    n, m = model.n, 2 * model.n
    ps, pt = model.pos_s, model.pos_t
    # begins[p] counts begins at positions < p on the doubled sequence
    doubled = model.order + model.order
    prefix = [0] * (2 * m + 1)
    for p, tok in enumerate(doubled):
        prefix[p + 1] = prefix[p] + (tok > 0)
    for i in range(1, n + 1):
        start = ps[i]
        end = start + (pt[i] - ps[i]) % m
        k = prefix[end] - prefix[start + 1]
        if k == 0:
            continue
        j = (i - 1 + k) % n + 1
        if j != i and model.contains_begin(j, i):
            return (i, j)
    return None


def build_model(tokens, linear=False, allow_trivial=False):
    """Validate a token sequence (ints ``+i``/``-i``) and return a PcaModel."""
    tokens = list(tokens)
    if not tokens or len(tokens) % 2:
        raise ModelError("token", "a model needs an even, positive number of extremes")
    n = len(tokens) // 2
    seen_s, seen_t = set(), set()
    for tok in tokens:
        if not isinstance(tok, int) or tok == 0:
            raise ModelError("token", f"malformed token {tok!r}")
        bucket = seen_s if tok > 0 else seen_t
        if abs(tok) in bucket:
            raise ModelError("duplicate", f"duplicate extreme {_token_text(tok)}")
        bucket.add(abs(tok))
    if seen_s != seen_t:
        missing = sorted(seen_s ^ seen_t)
        raise ModelError("missing", f"arcs with a missing extreme: {missing}")
    if len(seen_s) != n:
        raise ModelError("missing", "number of arcs does not match the token count")
    order, inverse = _relabel(tokens)
    model = PcaModel(n, order, linear, inverse)
    if linear:
        for i in range(1, n + 1):
            if model.wraps(i):
                raise ModelError("wrap", f"arc {inverse[i]} wraps around in a pig model")
    pair = _check_proper(model)
    if pair is not None:
        a, b = pair
        raise ModelError("proper", f"properness violation: arc {inverse[b]} is contained in arc {inverse[a]}")
    pair = _check_normal(model)
    if pair is not None:
        a, b = pair
        raise ModelError("normal", f"normality violation: arcs {inverse[a]} and {inverse[b]} cover the circle")
    if not allow_trivial:
        reason = model.trivial_reason()
        if reason is not None:
            raise ModelError("trivial", f"trivial model ({reason})")
    return model


def _parse_token(text):
    if len(text) < 2 or text[0] not in "st" or not text[1:].isdigit():
        raise ModelError("token", f"malformed token {text!r}")
    arc = int(text[1:])
    if arc <= 0:
        raise ModelError("token", f"malformed token {text!r}")
    return arc if text[0] == "s" else -arc


def parse_model(text, allow_trivial=False):
    """Parse the ``pca <n>`` / ``pig <n>`` text format."""
    lines = [line.strip() for line in text.strip().splitlines() if line.strip()]
    if not lines:
        raise ModelError("token", "empty model file")
    head = lines[0].split()
    if len(head) != 2 or head[0] not in ("pca", "pig") or not head[1].isdigit():
        raise ModelError("token", f"bad header {lines[0]!r}; expected 'pca <n>' or 'pig <n>'")
    n = int(head[1])
    tokens = [_parse_token(tok) for line in lines[1:] for tok in line.split()]
    if len(tokens) != 2 * n:
        raise ModelError("missing", f"expected {2 * n} tokens, found {len(tokens)}")
    return build_model(tokens, linear=head[0] == "pig", allow_trivial=allow_trivial)


def serialize_model(model):
    return model.text()


def _signature(model):
    """Per-token code: kind plus clockwise offset to the partner extreme."""
    m = 2 * model.n
    ps, pt = model.pos_s, model.pos_t
    codes = []
    for p, tok in enumerate(model.order):
        if tok > 0:
            codes.append(f"s{(pt[tok] - p) % m}")
        else:
            codes.append(f"t{(ps[-tok] - p) % m}")
    return codes


def equivalent(m1, m2):
    """Same extreme order up to rotation (reversal is not an equivalence)."""
    if m1.n != m2.n:
        return False
    if m1.linear and m2.linear:
        return m1.order == m2.order
    a = "|" + "|".join(_signature(m1)) + "|"
    b = "|" + "|".join(_signature(m2)) + "|"
    return len(a) == len(b) and b in a + a[1:]


class IntersectionGraph(NamedTuple):
    n: int
    edges: frozenset

    def adjacent(self, i, j):
        return (min(i, j), max(i, j)) in self.edges


def graph_of(model):
    """Intersection graph; the arcs meeting A_i after s_i are i+1, ..., i+k."""
    n, m = model.n, 2 * model.n
    edges = set()
    for i in range(1, n + 1):
        p = model.pos_s[i]
        span = (model.pos_t[i] - p) % m
        for off in range(1, span):
            tok = model.order[(p + off) % m]
            if tok > 0:
                edges.add((min(i, tok), max(i, tok)))
    return IntersectionGraph(n, frozenset(edges))


@dataclass(frozen=True, eq=False)
class UcaDescriptor:
    """The tuple (c, l, d, ds, dl, dr); ``c`` may be ``INF``."""

    c: object
    l: object
    d: object = 1
    ds: object = 0
    dl: dict = field(default_factory=dict)
    dr: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "c", as_rational(self.c))
        object.__setattr__(self, "l", as_rational(self.l))
        object.__setattr__(self, "d", as_rational(self.d))
        object.__setattr__(self, "ds", as_rational(self.ds))
        object.__setattr__(self, "dl", {int(k): as_rational(v) for k, v in dict(self.dl).items()})
        object.__setattr__(self, "dr", {int(k): as_rational(v) for k, v in dict(self.dr).items()})
        if not (self.c is INF or self.c > 0):
            raise ValueError("circumference must be positive or inf")
        if self.l is INF or self.l <= 0:
            raise ValueError("arc length must be a positive rational")
        for name in ("d", "ds"):
            if getattr(self, name) is INF or getattr(self, name) < 0:
                raise ValueError(f"{name} must be a non-negative rational")
        for name in ("dl", "dr"):
            for v in getattr(self, name).values():
                if v is INF or v < 0:
                    raise ValueError(f"{name} values must be non-negative rationals")

    def __eq__(self, other):
        if not isinstance(other, UcaDescriptor):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def key(self):
        return (self.c, self.l, self.d, self.ds,
                tuple(sorted((k, v) for k, v in self.dl.items() if v)),
                tuple(sorted((k, v) for k, v in self.dr.items() if v)))

    def dl_of(self, i):
        return self.dl.get(i, Fraction(0))

    def dr_of(self, i):
        return self.dr.get(i, Fraction(0))

    @property
    def is_integer(self):
        values = [self.c, self.l, self.d, self.ds, *self.dl.values(), *self.dr.values()]
        return all(is_integer(v) for v in values)

    def replace(self, **changes):
        params = dict(c=self.c, l=self.l, d=self.d, ds=self.ds, dl=self.dl, dr=self.dr)
        params.update(changes)
        return UcaDescriptor(**params)

    def to_json(self):
        out = {"c": format_rational(self.c), "l": format_rational(self.l),
               "d": format_rational(self.d), "ds": format_rational(self.ds)}
        if any(self.dl.values()):
            out["dl"] = {str(k): format_rational(v) for k, v in sorted(self.dl.items()) if v}
        if any(self.dr.values()):
            out["dr"] = {str(k): format_rational(v) for k, v in sorted(self.dr.items()) if v}
        return out

    @classmethod
    def from_json(cls, data):
        return cls(c=data["c"], l=data["l"], d=data.get("d", 1), ds=data.get("ds", 0),
                   dl=data.get("dl", {}), dr=data.get("dr", {}))


@dataclass(frozen=True)
class RealizedModel:
    """Concrete coordinates: arc ``i`` is ``(begins[i-1], begins[i-1] + l)``."""

    c: object
    l: object
    begins: tuple

    def __post_init__(self):
        object.__setattr__(self, "c", as_rational(self.c))
        object.__setattr__(self, "l", as_rational(self.l))
        begins = self.begins
        if not all(type(b) is int for b in begins):
            begins = tuple(as_rational(b) for b in begins)
        object.__setattr__(self, "begins", tuple(begins))

    @property
    def n(self):
        return len(self.begins)

    @property
    def linear(self):
        return self.c is INF

    def end(self, i):
        t = self.begins[i - 1] + self.l
        return t if self.c is INF else t % self.c

    def events(self):
        """Sorted ``(position, token)`` pairs; an extreme at 0 is read first."""
        ev = []
        for i, s in enumerate(self.begins, start=1):
            ev.append((s, i))
            ev.append((self.end(i), -i))
        ev.sort()
        return ev

    def order(self):
        """Token order, or ``None`` when two extremes coincide."""
        ev = self.events()
        for (p, _), (q, _) in zip(ev, ev[1:]):
            if p == q:
                return None
        return tuple(tok for _, tok in ev)

    def to_model(self, allow_trivial=True):
        order = self.order()
        if order is None:
            raise ModelError("token", "coincident extremes in realized model")
        return build_model(order, linear=self.linear, allow_trivial=allow_trivial)

    def to_json(self):
        return {"c": format_rational(self.c), "l": format_rational(self.l),
                "begins": [format_rational(b) for b in self.begins]}

    @classmethod
    def from_json(cls, data):
        return cls(data["c"], data["l"], tuple(data["begins"]))


class Verdict(NamedTuple):
    ok: bool
    violations: tuple

    def __bool__(self):
        return self.ok


def _same_labeled_order(order, model, linear):
    if linear or order is None:
        return order == model.order
    if len(order) != len(model.order):
        return False
    a = list(order)
    b = list(model.order)
    i, j = a.index(1), b.index(1)
    return a[i:] + a[:i] == b[j:] + b[:j]


def verify_realization(r, m, u):
    """Check that ``r`` realizes ``m`` (arc labels kept) under descriptor ``u``.

    Returns a :class:`Verdict`, truthy iff every condition holds.
    """
    problems = []
    if r.n != m.n:
        return Verdict(False, (f"arc count {r.n} != {m.n}",))
    if r.c != u.c:
        problems.append(f"circumference {format_rational(r.c)} != {format_rational(u.c)}")
    if r.l != u.l:
        problems.append(f"length {format_rational(r.l)} != {format_rational(u.l)}")
    c, n = r.c, r.n
    if c is not INF:
        if r.l >= c:
            problems.append("arc length must be smaller than the circumference")
        for i, s in enumerate(r.begins, start=1):
            if not 0 <= s < c:
                problems.append(f"begin of arc {i} outside [0, c)")
    order = r.order()
    if order is None:
        problems.append("two extremes coincide")
    elif not _same_labeled_order(order, m, c is INF):
        problems.append("extreme order differs from the model")
    if problems:
        return Verdict(False, tuple(problems))
    ev = r.events()
    gaps = [(q - p, a, b) for (p, a), (q, b) in zip(ev, ev[1:])]
    if c is not INF:
        gaps.append((ev[0][0] + c - ev[-1][0], ev[-1][1], ev[0][1]))
    for gap, a, b in gaps:
        if gap < u.d:
            problems.append(f"extremes {_token_text(a)}, {_token_text(b)} closer than d")
    begins = sorted((s, i) for i, s in enumerate(r.begins, start=1))
    bgaps = [(q - p, a, b) for (p, a), (q, b) in zip(begins, begins[1:])]
    if c is not INF and n > 1:
        bgaps.append((begins[0][0] + c - begins[-1][0], begins[-1][1], begins[0][1]))
    for gap, a, b in bgaps:
        if gap < u.d + u.ds:
            problems.append(f"begins of arcs {a}, {b} closer than d+ds")
    for i, s in enumerate(r.begins, start=1):
        lo, hi = u.dl_of(i), u.dr_of(i)
        if c is INF:
            ok = s >= lo
        else:
            ok = lo <= s <= c - hi or (s == 0 and hi == 0 and lo <= c)
        if not ok:
            problems.append(f"begin of arc {i} violates its bounds")
    return Verdict(not problems, tuple(problems))


def complete_model(n):
    """The interval model with begins 1..n and length n+1 of a complete graph."""
    if n < 1:
        raise ValueError("complete_model needs n >= 1")
    return RealizedModel(INF, n + 1, tuple(range(1, n + 1)))


def realized_from_ints(c, l, begins):
    return RealizedModel(c, l, tuple(begins))
