import math

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from deltashock.alt import (
    alt_delta_descriptor,
    alt_lambda,
    alt_limit,
    alt_log_rho_star,
    alt_small_shock_rho_star,
    alt_solve,
    alt_solve_delta,
    alt_solve_rarefaction,
    alt_solve_small_shock,
    alt_weak_residual,
)
from deltashock.errors import DenominatorVanishing, DomainError, OutsideBVWindow
from deltashock.riemann import solve
from deltashock.states import RiemannData
from deltashock.weakform import standard_bumps


def data(*v):
    return RiemannData.from_values(*v)


def max_alt_residual(fan, eps):
    return max(alt_weak_residual(fan, eps, b) for b in standard_bumps())


def test_speeds():
    assert alt_lambda(0.3, 0.1) == (0.3, 0.4)


def test_rarefaction_closed_form():
    d = data(0, 1, 0.5, 2)
    eps = 0.2
    fan = alt_solve_rarefaction(d, eps)
    rho_star = 2.0 * math.exp(-0.5 / eps)
    assert fan.segments[2].state.rho == pytest.approx(rho_star, rel=1e-14)
    assert alt_log_rho_star(d, eps) == pytest.approx(math.log(rho_star), rel=1e-14)
    assert max(fan.continuity_defects()) < 1e-13
    # inside the fan u = x/t - eps and rho = rho_r exp((u - u_r)/eps)
    u, rho, tag = fan.sample_xi([0.45])
    assert u[0] == pytest.approx(0.25) and rho[0] == pytest.approx(2.0 * math.exp(-0.25 / eps), rel=1e-13)
    assert tag[0] == "fan"
    assert max_alt_residual(fan, eps) < 1e-12


def test_rarefaction_log_rho_does_not_underflow():
    assert alt_log_rho_star(data(0, 1, 1, 1), 1e-5) == pytest.approx(-1e5)


def test_small_shock():
    d = data(0.1, 1, 0.0, 1)
    eps = 0.2
    fan = alt_solve_small_shock(d, eps)
    assert alt_small_shock_rho_star(d, eps) == pytest.approx(0.25 / 0.15, rel=1e-14)
    assert fan.shocks[0].speed == pytest.approx(0.25)
    assert max_alt_residual(fan, eps) < 1e-12


def test_small_shock_equal_velocities_is_contact():
    fan = alt_solve_small_shock(data(0.2, 1, 0.2, 3), 0.1)
    assert fan.interval_tags() == ["constant", "constant"]
    assert max_alt_residual(fan, 0.1) < 1e-12


def test_window_and_pole():
    d = data(0.3, 1, 0.0, 1)
    eps = 0.2
    with pytest.raises(OutsideBVWindow):
        alt_solve_small_shock(d, eps)
    loose = alt_solve_small_shock(d, eps, strict_window=False)
    assert max_alt_residual(loose, eps) < 1e-12
    with pytest.raises(DenominatorVanishing):
        alt_solve_small_shock(data(0.4, 1, 0.0, 1), eps, strict_window=False)
    assert issubclass(DenominatorVanishing, OutsideBVWindow)


def test_delta_example():
    d = data(1, 2, -1, 1)
    eps = 0.1
    desc = alt_delta_descriptor(d, eps)
    assert desc.speed == pytest.approx(0.1, abs=1e-15)
    assert desc.weight_coefficient == pytest.approx(2.9, rel=1e-15)
    fan = alt_solve(d, eps)
    assert fan.deltas and max_alt_residual(fan, eps) < 1e-12
    with pytest.raises(DomainError):
        alt_solve_delta(data(0.05, 1, 0, 1), eps)


def test_dispatch_crossover_at_eps():
    eps = 0.25
    assert not alt_solve(data(0.25, 1, 0, 1), eps).deltas
    assert alt_solve(data(0.2500001, 1, 0, 1), eps).deltas


def test_limit_matches_base_model_limit():
    for v in ((1, 2, -1, 1), (0, 1, 1, 2), (0, 1, 0, 3)):
        a = alt_limit(data(*v))
        assert max_alt_residual(a.fan, 0.0) < 1e-12
    assert alt_limit(data(1, 2, -1, 1)).delta.weight_coefficient == 3.0


def test_model_mismatch_rejected():
    with pytest.raises(ValueError):
        alt_weak_residual(solve(data(0, 1, 0, 1), 0.1), 0.1, standard_bumps()[0])
    with pytest.raises(DomainError):
        alt_solve(data(0, 1, 0, 1), 0.0)


@settings(max_examples=30, deadline=None)
@given(st.floats(-1, 1), st.floats(-1, 1), st.floats(0.2, 3), st.floats(0.2, 3), st.floats(0.05, 0.5))
def test_random_alt_solutions_are_weak(ul, ur, rl, rr, eps):
    assume(abs(ul - ur) > 1e-6 and abs(ul - ur - eps) > 1e-6)
    try:
        fan = alt_solve(data(ul, rl, ur, rr), eps)
    except DomainError:
        assume(False)
    assert max_alt_residual(fan, eps) < 1e-10
