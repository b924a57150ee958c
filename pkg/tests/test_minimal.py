import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from unitarc import INF, UcaDescriptor, build_model, equivalent, graph_of, verify_realization
from unitarc.minimal import (NotUnitError, build_T, complete_minimal, drawing_crossings,
                             is_completable, min_circ, min_ell_uig, min_power,
                             min_power_path, min_uca, min_uig, mitas_ell, power_cycle_model,
                             power_path_model, segments_cross)
from unitarc.model import ModelError
from unitarc.oracle import (bruteforce_sep_distances, oracle_feasible, random_pca_model,
                            random_pig_model, search_non_uca)
from unitarc.recognition import hollow_ratio, nose_ratio
from unitarc.solver import solve_u_rep
from unitarc.synthetic import NOSE, STEP

pigs = st.builds(random_pig_model, st.integers(3, 12), st.integers(0, 10 ** 6))


def test_columns_start_at_zero_and_follow_the_max_rule():
    for seed in range(30):
        m = random_pig_model(random.Random(seed).randint(3, 20), seed)
        t = build_T(m)
        assert t.columns[1] == 0
        eps = Fraction(1, m.n + 1)
        for v in range(2, m.n + 1):
            incoming = [t.columns[e.frm] + (eps if e.kind == NOSE else 1)
                        for e in t.edges if e.to == v]
            assert t.columns[v] == max(incoming, default=0)


def test_single_step_column():
    m = random_pig_model(6, 11)
    t = build_T(m)
    for v in range(2, m.n + 1):
        incoming = [e for e in t.edges if e.to == v]
        if len(incoming) == 1 and incoming[0].kind == STEP:
            assert t.columns[v] == t.columns[incoming[0].frm] + 1


def test_build_T_needs_interval_model():
    with pytest.raises(ModelError):
        build_T(power_cycle_model(5, 1))


def test_segments_cross():
    assert segments_cross((0, 0), (2, 2), (0, 2), (2, 0))
    assert not segments_cross((0, 0), (1, 0), (0, 1), (1, 1))
    assert not segments_cross((0, 0), (1, 1), (1, 1), (2, 0))  # shared endpoint
    assert segments_cross((0, 0), (2, 0), (1, 0), (3, 0))  # collinear overlap


@given(st.integers(3, 50), st.integers(0, 10 ** 6))
def test_plane_drawing(n, seed):
    t = build_T(random_pig_model(n, seed))
    assert t.acyclic and len(t.topological) == n
    assert drawing_crossings(t) == []


def test_single_arc():
    m = build_model([1, -1], linear=True, allow_trivial=True)
    assert min_ell_uig(m, 1, 0) == 1
    ext = min_power_path(m)
    assert (ext.k, ext.q) == (0, 1) and list(ext.model.begins) == [0] and ext.model.l == 1


@pytest.mark.parametrize("n", [2, 3, 6])
def test_complete_interval_model(n):
    m = complete_minimal(n, 1, 0).to_model()
    assert m.is_complete_shortcut()
    res = min_uig(m, 1, 0)
    assert res.l_star == n and list(res.model.begins) == list(range(n))
    assert verify_realization(res.model, m, UcaDescriptor(INF, n, 1, 0)).ok


@pytest.mark.parametrize("q,k", [(3, 1), (6, 2), (9, 3), (10, 4)])
def test_power_path_minimal(q, k):
    m = power_path_model(q, k)
    res = min_uig(m, 1, 1)
    assert res.l_star == 2 * k + 1
    assert list(res.model.begins) == list(range(0, 2 * q, 2))
    ext = min_power(m)
    assert (ext.k, ext.q) == (k, q)


@given(pigs, st.integers(1, 2), st.integers(0, 2))
def test_min_uig_minimality(m, d, ds):
    res = min_uig(m, d, ds)
    u = UcaDescriptor(INF, res.l_star, d, ds)
    assert verify_realization(res.model, m, u).ok
    assert not solve_u_rep(m, u.replace(l=res.l_star - 1)).feasible
    assert list(res.model.begins) == bruteforce_sep_distances(m, u)[1:]


@given(pigs)
def test_begins_are_locally_tight(m):
    res = min_uig(m, 1, 0)
    u = UcaDescriptor(INF, res.l_star, 1, 0)
    for i in range(2, m.n + 1):
        begins = list(res.model.begins)
        begins[i - 1] -= Fraction(1, 2)
        lowered = res.model.__class__(INF, res.l_star, tuple(begins))
        assert not verify_realization(lowered, m, u).ok


def test_unpatched_rule_can_overshoot():
    gaps = 0
    for seed in range(300):
        m = random_pig_model(random.Random(seed).randint(3, 12), seed)
        patched, unpatched = min_ell_uig(m, 1, 0), mitas_ell(m, 1, 0)
        assert unpatched >= patched
        assert solve_u_rep(m, UcaDescriptor(INF, unpatched, 1, 0)).feasible
        gaps += unpatched != patched
    assert gaps > 0


def test_c_11_4_lengths_are_not_an_interval():
    m = power_cycle_model(11, 4)
    assert min_circ(m, 9).model.c == 22
    assert min_circ(m, 10) is None
    c11 = min_circ(m, 11).model.c
    assert c11 == 27
    assert oracle_feasible(m, UcaDescriptor(c11, 11, 1, 0))[0]
    assert not oracle_feasible(m, UcaDescriptor(c11 - 1, 11, 1, 0))[0]


@pytest.mark.parametrize("q,k", [(5, 1), (11, 4)])
def test_min_uca_power_cycles(q, k):
    res = min_uca(power_cycle_model(q, k), 1, 0)
    assert (res.c_star, res.l_star) == (2 * q, 2 * k + 1)


@given(st.integers(3, 7), st.integers(0, 10 ** 6))
def test_min_uca_joint_minimality(n, seed):
    m = random_pca_model(n, seed)
    res = min_uca(m, 1, 0)
    c_star, l_star = res.c_star, res.l_star
    assert verify_realization(res.model, m, UcaDescriptor(c_star, l_star, 1, 0)).ok
    assert not solve_u_rep(m, UcaDescriptor(c_star - 1, l_star, 1, 0)).feasible
    for l in range(2, l_star):
        for c in range(1, n * (l + 1) + 1):
            assert not solve_u_rep(m, UcaDescriptor(c, l, 1, 0)).feasible
    for c in range(1, c_star):
        assert not solve_u_rep(m, UcaDescriptor(c, l_star, 1, 0)).feasible


def test_min_uca_grid_against_oracle():
    for seed in range(6):
        m = random_pca_model(4, seed)
        res = min_uca(m, 1, 0)
        for l in range(2, res.l_star + 1):
            for c in range(1, 4 * (l + 1) + 1):
                ok = oracle_feasible(m, UcaDescriptor(c, l, 1, 0))[0]
                if ok:
                    assert l == res.l_star and c >= res.c_star


def test_min_circ_on_interval_model():
    m = random_pig_model(5, 2)
    l = min_ell_uig(m, 1, 0)
    res = min_circ(m, l)
    assert res is not None
    for c in range(1, res.model.c):
        assert not oracle_feasible(m.as_circular(), UcaDescriptor(c, l, 1, 0))[0]


def test_not_uca_raises_with_certificate():
    pf = lambda m: nose_ratio(m)[0].value >= hollow_ratio(m)[0].value  # noqa: E731
    m = search_non_uca(7, 3, prefilter=pf)
    with pytest.raises(NotUnitError) as exc:
        min_uca(m)
    assert not exc.value.certificate.positive


def _power_adjacent(i, j, q, k, cyclic):
    gap = abs(i - j)
    if cyclic:
        gap = min(gap, q - gap)
    return 0 < gap <= k


def _check_embedding(m, ext, cyclic):
    assert is_completable(ext.model)
    assert equivalent(ext.model.to_model(), m)
    pos = [b // 2 for b in ext.model.begins]
    assert len(set(pos)) == m.n and all(0 <= p < ext.q for p in pos)
    edges = graph_of(m).edges
    for i in range(1, m.n + 1):
        for j in range(i + 1, m.n + 1):
            assert ((i, j) in edges) == _power_adjacent(pos[i - 1], pos[j - 1], ext.q,
                                                        ext.k, cyclic)


@given(pigs)
def test_path_extension_embeds(m):
    _check_embedding(m, min_power(m), cyclic=False)


@given(st.integers(3, 7), st.integers(0, 10 ** 6))
def test_cycle_extension_embeds(n, seed):
    m = random_pca_model(n, seed)
    _check_embedding(m, min_power(m), cyclic=True)


def test_c_11_4_is_its_own_completion():
    ext = min_power(power_cycle_model(11, 4))
    assert (ext.k, ext.q) == (4, 11)


@given(st.integers(3, 6), st.integers(0, 10 ** 6))
def test_cycle_extension_is_minimal(n, seed):
    m = random_pca_model(n, seed)
    ext = min_power(m)
    l_star, c_star = 2 * ext.k + 1, 2 * ext.q
    for l in range(3, l_star, 2):
        for c in range(2, n * (l + 1) + 1, 2):
            assert not solve_u_rep(m, UcaDescriptor(c, l, 1, 1)).feasible
    for c in range(2, c_star, 2):
        assert not solve_u_rep(m, UcaDescriptor(c, l_star, 1, 1)).feasible
