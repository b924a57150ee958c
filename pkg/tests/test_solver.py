import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from unitarc import INF, ModelError, UcaDescriptor, build_model, verify_realization
from unitarc.minimal import power_cycle_model
from unitarc.oracle import (oracle_feasible, random_int_descriptor, random_pca_model,
                            random_pca_order, random_pig_model)
from unitarc.solver import solve_bound_rep, solve_int_bound_rep, solve_u_rep
from unitarc.synthetic import BOUND_IN, BOUND_OUT, walk_sep

models = st.builds(lambda n, s, k: (random_pca_model, random_pca_order, random_pig_model)[k](n, s),
                   st.integers(3, 8), st.integers(0, 10 ** 6), st.integers(0, 2))


def test_bound_only_positive_cycle():
    # dl(A_1) + dr(A_1) - c = 5 + 6 - 10 = 1 > 0, whatever the other arcs do
    m = power_cycle_model(5, 1)
    u = UcaDescriptor(10, 3, 1, 0, {1: 5}, {1: 6})
    res = solve_u_rep(m, u)
    assert not res.feasible and res.weight > 0
    assert walk_sep(res.cycle, u) == res.weight
    out = solve_bound_rep(m, 10, 3, 0, {1: 5}, {1: 6})
    assert not out.feasible
    assert [(e.frm, e.to, e.kind) for e in out.cycle] == [(0, 1, BOUND_OUT), (1, 0, BOUND_IN)]


def test_trivial_and_bad_d_rejected():
    m = build_model([1, -1], allow_trivial=True)
    with pytest.raises(ModelError):
        solve_u_rep(m, UcaDescriptor(10, 3, 1, 0))
    with pytest.raises(ValueError):
        solve_u_rep(power_cycle_model(5, 1), UcaDescriptor(10, 3, 0, 0))


def test_c_11_4_split():
    m = power_cycle_model(11, 4)
    res = solve_u_rep(m, UcaDescriptor(22, 9, 1, 0))
    assert res.feasible and verify_realization(res.model, m, res.descriptor).ok
    for c in range(1, 122):
        res = solve_u_rep(m, UcaDescriptor(c, 10, 1, 0))
        assert not res.feasible and walk_sep(res.cycle, UcaDescriptor(c, 10, 1, 0)) > 0
    assert not solve_int_bound_rep(m, 121, 10).feasible


@pytest.mark.parametrize("q,k", [(5, 1), (7, 2), (9, 4)])
def test_power_cycle_int_bound_rep(q, k):
    res = solve_int_bound_rep(power_cycle_model(q, k), 2 * q, 2 * k + 1)
    assert res.feasible
    assert all(isinstance(b, int) or b.denominator == 1 for b in res.model.begins)
    if (q, k) == (5, 1):
        assert list(res.model.begins) == [0, 2, 4, 6, 8]


def test_int_bound_rep_rejects_fractions():
    with pytest.raises(ValueError):
        solve_int_bound_rep(power_cycle_model(5, 1), Fraction(21, 2), 3)


def test_bound_rep_single_family():
    m = power_cycle_model(5, 1)
    res = solve_bound_rep(m, 10, 3)
    assert res.feasible and res.d_used > 0
    assert verify_realization(res.model, m, res.descriptor).ok


@given(models, st.integers(0, 10 ** 6))
def test_oracle_agreement(m, seed):
    u = random_int_descriptor(m, seed)
    res = solve_u_rep(m, u)
    ok, witness = oracle_feasible(m, u)
    assert res.feasible == ok
    if ok:
        assert verify_realization(res.model, m, u).ok
        assert all(x.denominator == 1 for x in map(Fraction, res.model.begins))
        for t in res.labels:
            if t is not None:
                assert -m.n <= t.coef_c <= m.n and -m.n <= t.coef_l <= m.n
                assert 0 <= t.coef_d <= m.n and 0 <= t.coef_ds <= m.n
    else:
        assert walk_sep(res.cycle, u) > 0 and walk_sep(witness, u) > 0


@given(models, st.integers(0, 10 ** 6))
def test_bound_rep_agrees_with_oracle(m, seed):
    base = random_int_descriptor(m, seed)
    res = solve_bound_rep(m, base.c, base.l, base.ds, base.dl, base.dr)
    if res.feasible:
        u = res.descriptor
        assert verify_realization(res.model, m, u).ok
        assert oracle_feasible(m, u)[0]
    else:
        # no d works: neither a tiny d nor the rounded-down candidate
        rng = random.Random(seed)
        for d in (Fraction(1, 10 ** 6), Fraction(1, rng.randint(2, 50))):
            assert not oracle_feasible(m, base.replace(d=d))[0]


@given(models, st.integers(0, 10 ** 6))
def test_int_bound_rep_is_integral(m, seed):
    u = random_int_descriptor(m, seed)
    res = solve_int_bound_rep(m, u.c, u.l, u.ds, u.dl, u.dr)
    assert res.feasible == oracle_feasible(m, u.replace(d=1))[0]
    if res.feasible:
        assert all(Fraction(b).denominator == 1 for b in res.model.begins)


@given(st.integers(3, 10), st.integers(0, 10 ** 6))
def test_linear_descriptors(n, seed):
    m = random_pig_model(n, seed)
    u = UcaDescriptor(INF, 4 * n, 1, 0)
    res = solve_u_rep(m, u)
    assert res.feasible and res.model.c is INF
    assert verify_realization(res.model, m, u).ok


def test_bound_rep_d_is_near_the_boundary():
    flipped = 0
    for seed in range(40):
        m = random_pca_model(random.Random(seed).randint(3, 7), seed)
        u = random_int_descriptor(m, seed, bounds=False)
        res = solve_bound_rep(m, u.c, u.l, u.ds)
        if not res.feasible:
            continue
        bigger = res.descriptor.replace(d=res.d_used * (1 + Fraction(1, m.n)))
        flipped += not solve_u_rep(m, bigger).feasible
    assert flipped > 0
