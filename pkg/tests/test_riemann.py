import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from deltashock.errors import EpsilonTooLarge, RarefactionOverlap
from deltashock.fan import INF, ConstantState, Shock, VacuumRegion, WaveFan
from deltashock.riemann import (
    intermediate,
    sample,
    solve,
    solve_equal_u,
    solve_two_rarefaction,
    solve_two_shock,
    two_shock_intermediate,
    vacuum_edges,
    weak_form_residual,
)
from deltashock.states import RiemannData, State
from deltashock.wave_curves import lax_admissible, make_shock, rh_residuals, shock1_rho_of_u, shock2_rho_of_u
from deltashock.weakform import GaussBump, standard_bumps

from oracles import bisect, log_F_ref, two_shock_ref

# frozen from the nested-bisection oracle
REF_SYM_001 = (0.0, 3.5531733576271503)          # (1,1,-1,1), eps = 0.01
REF_ASYM_005 = (0.7046315916497283, 2.898577373505897)  # (2,1,0,2), eps = 0.05
REF_EQUAL_001 = (0.10766440378730763, 1.5586128812644051)  # (0,2,0,1), eps = 0.01


def data(*v):
    return RiemannData.from_values(*v)


def test_symmetric_two_shock_midpoint_exact():
    mid, fan = solve_two_shock(data(1, 1, -1, 1), 0.01)
    assert mid.u_star == 0.0
    assert mid.rho_star == pytest.approx(REF_SYM_001[1], rel=1e-14)
    # 1 = 2 eps (rho - 1)(p(rho) - 1)/(rho + 1) at the intermediate density
    assert abs(math.exp(log_F_ref(1.0, mid.rho_star, math.log(0.01))) - 1.0) <= 1e-12
    assert [type(s) for s in fan.segments] == [ConstantState, Shock, ConstantState, Shock, ConstantState]


def test_asymmetric_two_shock_against_oracle():
    mid, fan = solve_two_shock(data(2, 1, 0, 2), 0.05)
    assert 0.0 < mid.u_star < 2.0 and mid.rho_star > 2.0
    assert mid.u_star == pytest.approx(REF_ASYM_005[0], rel=1e-12)
    assert mid.rho_star == pytest.approx(REF_ASYM_005[1], rel=1e-12)
    assert all(lax_admissible(j, 0.05) for j in fan.shocks)
    assert max(abs(r) for r in mid.residuals(data(2, 1, 0, 2))) <= 1e-10
    s1, s2 = (j.speed for j in fan.shocks)
    assert s1 < s2


def test_oracle_agreement_on_random_cases():
    rng = np.random.default_rng(7)
    for _ in range(5):
        ul, ur = sorted(rng.uniform(-1, 1, 2))[::-1]
        rl, rr = rng.uniform(0.5, 3, 2)
        eps = 10 ** rng.uniform(-3, -1)
        try:
            mid = two_shock_intermediate(data(ul, rl, ur, rr), eps)
        except EpsilonTooLarge:
            continue
        u_ref, r_ref = two_shock_ref(ul, rl, ur, rr, eps)
        assert mid.u_star == pytest.approx(u_ref, abs=1e-12)
        assert mid.rho_star == pytest.approx(r_ref, rel=1e-11)


def test_epsilon_too_large():
    with pytest.raises(EpsilonTooLarge):
        solve_two_shock(data(1, 0.1, 0, 5), 10.0)
    with pytest.raises(EpsilonTooLarge):
        solve_two_shock(data(0, 5, -1, 0.1), 10.0)


def test_log_domain_fallback_is_automatic():
    mid, fan = solve_two_shock(data(5, 1, -5, 1), 1e-307)
    assert mid.log_domain and mid.rho_star > 700
    assert math.isfinite(mid.log_eps_p_rho_star)
    assert all(lax_admissible(j, 1e-307) for j in fan.shocks)


def test_unique_sign_change_on_grid():
    d = data(2, 1, 0, 2)
    eps = 0.05
    us = np.linspace(0.0, 2.0, 64)
    g = [shock1_rho_of_u(d.left, u, eps) - shock2_rho_of_u(d.right, u, eps) for u in us]
    assert np.sum(np.diff(np.sign(g)) != 0) == 1


def test_equal_u_trivial():
    mid, fan = solve_equal_u(data(0.3, 1.2, 0.3, 1.2), 0.1)
    assert mid is None
    assert len(fan.segments) == 1
    assert sample(fan, -3.0, 1.0) == State(0.3, 1.2)


def test_equal_u_rarefaction_then_shock():
    mid, fan = solve_equal_u(data(0, 2, 0, 1), 0.01)
    assert 1.0 < mid.rho_star < 2.0 and mid.u_star > 0.0
    assert mid.rho_star == pytest.approx(REF_EQUAL_001[1], rel=1e-12)
    assert mid.u_star == pytest.approx(REF_EQUAL_001[0], rel=1e-11)
    assert fan.interval_tags() == ["constant", "fan", "shock", "constant"]
    assert max(fan.continuity_defects()) < 1e-12
    assert lax_admissible(fan.shocks[0], 0.01)


def test_equal_u_shock_then_rarefaction_mirror():
    m1, _ = solve_equal_u(data(0, 2, 0, 1), 0.01)
    m2, fan = solve_equal_u(data(0, 1, 0, 2), 0.01)
    assert m2.u_star < 0.0
    assert m2.u_star == pytest.approx(-m1.u_star, rel=1e-13)
    assert m2.rho_star == pytest.approx(m1.rho_star, rel=1e-13)
    assert fan.interval_tags() == ["constant", "shock", "fan", "constant"]
    assert lax_admissible(fan.shocks[0], 0.01)


def test_equal_u_star_tends_to_u_l_monotonically():
    d = data(0.5, 2, 0.5, 1)
    eps = [10.0 ** -k for k in range(1, 9)]
    gaps = [solve_equal_u(d, e)[0].u_star - 0.5 for e in eps]
    assert all(g > 0 for g in gaps)
    assert all(b < a for a, b in zip(gaps[:-1], gaps[1:]))
    # once rho* settles the gap scales like sqrt(eps)
    assert gaps[-1] / math.sqrt(eps[-1]) == pytest.approx(gaps[-2] / math.sqrt(eps[-2]), rel=1e-8)
    assert gaps[-1] < 1e-3


def test_two_rarefaction_vacuum():
    eps = 1e-4
    fan = solve_two_rarefaction(data(-1, 1, 1, 1), eps)
    v1, v2 = vacuum_edges(data(-1, 1, 1, 1), eps)
    closed = 2.0 * math.sqrt(eps) * (math.exp(0.5) - 1.0)
    assert v1 == pytest.approx(-1.0 + closed, rel=1e-14)
    assert v2 == pytest.approx(1.0 - closed, rel=1e-14)
    slack = 2.0 * math.sqrt(eps) * math.exp(0.5)
    assert abs(v1 + 1.0) <= slack and abs(v2 - 1.0) <= slack
    assert isinstance(fan.segments[2], VacuumRegion)
    assert sample(fan, 0.0, 1.0) == State(0.0, 0.0)
    assert sample(fan, -5.0, 1.0) == State(-1.0, 1.0)
    u, rho, tag = fan.sample_xi(np.linspace(v1, v2, 11)[1:-1])
    assert np.all(rho == 0.0) and np.all(tag == "vacuum")
    assert max(fan.continuity_defects()) < 1e-12


def test_rarefaction_overlap():
    with pytest.raises(RarefactionOverlap):
        solve_two_rarefaction(data(-0.1, 1, 0.1, 1), 0.5)


def test_dispatch():
    assert len(solve(data(1, 1, -1, 1), 0.01).shocks) == 2
    assert len(solve(data(0, 1, 0, 1), 0.01).segments) == 1
    assert any(isinstance(s, VacuumRegion) for s in solve(data(-1, 1, 1, 1), 0.01).segments)
    assert intermediate(data(-1, 1, 1, 1), 0.01) is None


def test_sampling_conventions():
    d = data(1, 1, -1, 1)
    mid, fan = solve_two_shock(d, 0.01)
    s1, s2 = (j.speed for j in fan.shocks)
    t = 2.0
    assert sample(fan, (s1 - 0.01) * t, t) == d.left
    assert sample(fan, 0.0, t) == mid.state
    # right-continuous at discontinuities
    assert sample(fan, s1 * t, t) == mid.state
    assert sample(fan, s2 * t, t) == d.right
    with pytest.raises(ValueError):
        sample(fan, 0.0, 0.0)


def test_fan_invariants_rejected_when_broken():
    L, R = State(0, 1), State(0, 2)
    with pytest.raises(ValueError):
        WaveFan((ConstantState(L, -INF, 0.0), ConstantState(R, 0.1, INF)), 0.1)
    with pytest.raises(ValueError):
        WaveFan((ConstantState(L, -INF, 1.0),), 0.1)


def test_weak_form_residual_examples():
    bumps = standard_bumps()
    const = solve(data(0, 1, 0, 1), 0.1)
    assert max(weak_form_residual(const, 0.1, b) for b in bumps) < 1e-13
    d = data(1, 1, -1, 1)
    mid, fan = solve_two_shock(d, 0.05)
    g = GaussBump(0.0, 1.0, 0.2, 0.15)
    assert weak_form_residual(fan, 0.05, g) <= 1e-6
    # anti-test: wrong intermediate velocity
    bad = State(mid.u_star + 0.1, mid.rho_star)
    j1, j2 = make_shock(d.left, bad, 1), make_shock(bad, d.right, 2)
    wrong = WaveFan((ConstantState(d.left, -INF, j1.speed), Shock(j1), ConstantState(bad, j1.speed, j2.speed),
                     Shock(j2), ConstantState(d.right, j2.speed, INF)), 0.05)
    assert max(weak_form_residual(wrong, 0.05, b) for b in bumps) > 1e-3


@settings(max_examples=40, deadline=None)
@given(st.floats(-1, 1), st.floats(-1, 1), st.floats(0.5, 3), st.floats(0.5, 3), st.floats(1e-3, 0.1))
def test_two_shock_properties(ul, ur, rl, rr, eps):
    assume(ul - ur >= 0.1)
    d = data(ul, rl, ur, rr)
    try:
        mid, fan = solve_two_shock(d, eps)
    except EpsilonTooLarge:
        assume(False)
    assert ur < mid.u_star < ul
    assert mid.rho_star > max(rl, rr)
    assert max(abs(r) for r in mid.residuals(d)) <= 1e-10
    for j in fan.shocks:
        assert lax_admissible(j, eps)
        assert max(abs(r) for r in rh_residuals(j, eps)) <= 1e-10


@settings(max_examples=25, deadline=None)
@given(st.floats(-1, 1), st.floats(0.3, 3), st.floats(0.3, 3), st.floats(1e-3, 0.2))
def test_equal_u_properties(u, rl, rr, eps):
    assume(abs(rl - rr) > 1e-3)
    mid, fan = solve_equal_u(data(u, rl, u, rr), eps)
    assert min(rl, rr) < mid.rho_star < max(rl, rr)
    assert (mid.u_star > u) == (rr < rl)
    assert max(fan.continuity_defects()) < 1e-10
    assert lax_admissible(fan.shocks[0], eps)
    xi = np.sort(np.concatenate([fan.breakpoints(), np.linspace(-3, 3, 50)]))
    _, rho, _ = fan.sample_xi(xi)
    assert np.all(rho > 0)


def test_bisection_oracle_self_check():
    assert bisect(lambda x: x * x - 2.0, 0.0, 2.0) == pytest.approx(math.sqrt(2.0), rel=1e-15)
