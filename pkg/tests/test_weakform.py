import math
from dataclasses import replace

import pytest

from deltashock.fan import INF, ConstantState, DeltaSegment, WaveFan
from deltashock.limit import predicted_limit
from deltashock.riemann import solve
from deltashock.states import RiemannData, State
from deltashock.weakform import (
    GaussBump,
    PolyBump,
    flux_u,
    max_weak_residual,
    rho_pairing,
    standard_bumps,
    weak_residual,
    weak_residual_components,
)

from oracles import adaptive_simpson, central_diff

POLY_MASS = 256.0 / 315.0  # int_{-1}^{1} (1 - s^2)^4 ds


def constant_fan(u, rho, eps=0.1):
    return WaveFan((ConstantState(State(u, rho), -INF, INF),), eps)


@pytest.mark.parametrize("phi", [PolyBump(0.1, 0.9, 0.7, 0.4), GaussBump(-0.2, 1.1, 0.15, 0.1)])
def test_bump_derivatives_against_finite_differences(phi):
    for x, t in ((0.05, 0.8), (-0.3, 1.0), (0.3, 1.2)):
        assert phi.dx(x, t) == pytest.approx(central_diff(lambda s: float(phi(s, t)), x, 1e-4), rel=1e-7, abs=1e-9)
        assert phi.dt(x, t) == pytest.approx(central_diff(lambda s: float(phi(x, s)), t, 1e-4), rel=1e-7, abs=1e-9)


def test_bumps_vanish_outside_support():
    for phi in standard_bumps():
        xa, xb, ta, tb = phi.support()
        assert float(phi(xb + 0.1, 0.5 * (ta + tb))) == 0.0
        assert float(phi(0.5 * (xa + xb), tb)) == pytest.approx(0.0, abs=1e-15)
        assert float(phi(xa, 0.5 * (ta + tb))) == pytest.approx(0.0, abs=1e-15)


def test_gauss_bump_continuous_at_truncation():
    g = GaussBump(0.0, 1.0, 0.2, 0.15)
    xa, xb, _, _ = g.support()
    assert float(g(xb - 1e-12, 1.0)) == pytest.approx(0.0, abs=1e-10)


def test_constant_pairing_equals_bump_mass():
    phi = PolyBump(0.3, 2.0, 0.5, 0.8)
    assert rho_pairing(constant_fan(0.0, 1.7), phi) == pytest.approx(1.7 * 0.5 * 0.8 * POLY_MASS**2, rel=1e-13)
    g = GaussBump(0.0, 2.0, 0.2, 0.1)
    prof = lambda s: float(g(g.x0 + g.hx * s, g.t0)) / float(g(g.x0, g.t0))  # noqa: E731
    mass_x = g.hx * adaptive_simpson(prof, -1.0, 1.0)
    mass_t = g.ht * adaptive_simpson(lambda s: float(g(g.x0, g.t0 + g.ht * s)) / float(g(g.x0, g.t0)), -1.0, 1.0)
    expected = float(g(g.x0, g.t0)) * mass_x * mass_t
    assert rho_pairing(constant_fan(0.0, 1.0), g) == pytest.approx(expected, rel=1e-10)


def test_constant_state_residual_includes_initial_term():
    # support straddles t = 0, so the initial-data integral must cancel the bulk term
    phi = PolyBump(0.0, 0.1, 1.0, 0.5)
    ru, rr = weak_residual_components(constant_fan(0.4, 2.0), phi)
    assert abs(ru) < 1e-14 and abs(rr) < 1e-14
    assert max_weak_residual(constant_fan(-0.3, 0.7)) < 1e-14


def test_flux_models():
    assert flux_u("limit", 2.0, 5.0, 0.3) == 2.0
    assert flux_u("alt", 1.0, 5.0, 0.5) == pytest.approx(1.125)
    assert flux_u("base", 0.0, 1.0, 0.5) == pytest.approx(0.5)
    with pytest.raises(ValueError):
        flux_u("other", 0.0, 1.0, 0.1)


def test_limit_delta_fan_weak_solution():
    lim = predicted_limit(RiemannData.from_values(2, 1, 0, 2))
    assert lim.kind == "delta_shock"
    assert max_weak_residual(lim.fan) < 1e-12
    # a wrong delta weight breaks the density equation
    segs = tuple(replace(s, weight_coefficient=0.5 * s.weight_coefficient) if isinstance(s, DeltaSegment) else s
                 for s in lim.fan.segments)
    bad = WaveFan(segs, lim.fan.eps, model="limit")
    assert max_weak_residual(bad) > 1e-3


def test_rho_pairing_counts_delta_mass():
    d = RiemannData.from_values(1, 1, -1, 1)
    lim = predicted_limit(d).fan
    phi = PolyBump(0.0, 1.0, 0.6, 0.5)
    w0 = lim.deltas[0].weight_coefficient
    line = w0 * adaptive_simpson(lambda t: t * float(phi(0.0, t)), 0.5, 1.5)
    # background density 1 everywhere off the delta line
    bulk = 0.6 * 0.5 * POLY_MASS**2
    assert rho_pairing(lim, phi) == pytest.approx(bulk + line, rel=1e-12)


def test_two_shock_residual_below_tolerance():
    fan = solve(RiemannData.from_values(2, 1, 0, 2), 0.05)
    assert max(weak_residual(fan, b) for b in standard_bumps()) < 1e-10
    assert math.isfinite(weak_residual(fan, GaussBump(0.5, 0.5, 0.2, 0.2)))
