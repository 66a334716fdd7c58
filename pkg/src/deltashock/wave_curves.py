"""Hugoniot loci, admissible shock branches and rarefaction curves.

Shock branches are parameterised by velocity and found as the root of the
increasing function ``F(rho) - (u - u_bar)**2`` with
``F(rho) = 2 eps (rho - rho_bar)/(rho + rho_bar) (p(rho) - p(rho_bar))``.
For vanishing epsilon the root leaves the range where ``e**rho`` is
representable; the ``log_domain`` variants solve ``log F = 2 log|u - u_bar|``
instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np
from scipy import optimize
from scipy.optimize import elementwise

from deltashock.errors import (
    DegenerateJumpError,
    DomainError,
    OverflowAtVanishingEpsilon,
)
from deltashock.pressure import (
    DEFAULT_LAW,
    PressureLaw,
    _check_eps,
    lambda1,
    lambda2,
    sound_speed,
)
from deltashock.states import State

_RTOL = 4.0 * np.finfo(float).eps
_XTOL = 1e-300

Family = Literal[1, 2]
Side = Literal["left", "right"]


@dataclass(frozen=True)
class ShockJump:
    """A discontinuity ``left -> right`` travelling at ``speed``."""

    left: State
    right: State
    speed: float
    family: int

    def reversed(self) -> "ShockJump":
        """The same speed with the two states swapped (an expansion shock)."""
        return ShockJump(self.right, self.left, self.speed, self.family)


def _positive(*states: State):
    for s in states:
        if s.rho <= 0.0:
            raise DomainError(f"state {s} must have positive density")


def hugoniot_residual(left: State, cand: State, eps: float, law: PressureLaw = DEFAULT_LAW) -> float:
    """``(u - u_bar)^2 (rho + rho_bar)/2 - eps (rho - rho_bar)(p(rho) - p(rho_bar))``.

    Zero exactly when ``cand`` lies on the Hugoniot locus through ``left``.
    """
    _positive(left, cand)
    eps = _check_eps(eps)
    du = cand.u - left.u
    dp = scaled_pressure_jump(left.rho, cand.rho, eps, law)
    return du * du * (cand.rho + left.rho) / 2.0 - (cand.rho - left.rho) * dp


def scaled_pressure_jump(rho_from: float, rho_to: float, eps: float, law: PressureLaw = DEFAULT_LAW,
                         log_eps: float | None = None) -> float:
    """``eps * (p(rho_to) - p(rho_from))`` computed in the log domain.

    ``log_eps`` overrides ``eps`` so that values below the double range can be used.
    """
    if rho_to == rho_from:
        return 0.0
    if log_eps is None:
        if eps == 0.0:
            return 0.0
        log_eps = math.log(eps)
    lo, hi = sorted((rho_from, rho_to))
    lp_hi = float(law.log_p(hi))
    lp_lo = float(law.log_p(lo))
    mag = math.exp(log_eps + lp_hi + math.log(-math.expm1(lp_lo - lp_hi)))
    return mag if rho_to > rho_from else -mag


def _log_dp(rho_bar: float, rho: float, law: PressureLaw) -> float:
    # log(p(rho) - p(rho_bar)) for rho > rho_bar
    lp = float(law.log_p(rho))
    diff = float(law.log_p(rho_bar)) - lp
    if diff >= 0.0:
        return -math.inf
    return lp + math.log(-math.expm1(diff))


def hugoniot_F(rho_bar: float, rho, eps: float, law: PressureLaw = DEFAULT_LAW):
    """``2 eps (rho - rho_bar)/(rho + rho_bar) (p(rho) - p(rho_bar))`` (direct evaluation)."""
    rho = np.asarray(rho, dtype=float)
    return 2.0 * eps * (rho - rho_bar) / (rho + rho_bar) * (law.p(rho) - law.p(rho_bar))


def _shock_branch_rho(rho_bar: float, du: float, eps: float, law: PressureLaw,
                      log_domain: bool, log_eps: float | None) -> float:
    """Unique ``rho >= rho_bar`` with ``F(rho) = du**2``."""
    if du == 0.0:
        return rho_bar
    target = du * du
    if not log_domain:
        if eps == 0.0:
            raise OverflowAtVanishingEpsilon("eps = 0: the shock branch is unbounded")

        def h(r):
            return float(hugoniot_F(rho_bar, r, eps, law)) - target

        rho_cap = law.rho_max
        if rho_bar >= rho_cap:
            raise OverflowAtVanishingEpsilon(f"anchor density {rho_bar} beyond {rho_cap}")
        step = 1.0
        hi = rho_bar + step
        while True:
            if hi >= rho_cap:
                hi = rho_cap
                if h(hi) < 0.0:
                    raise OverflowAtVanishingEpsilon(
                        f"shock root exceeds rho = {rho_cap:g} at eps = {eps:g}")
                break
            if h(hi) >= 0.0:
                break
            step *= 2.0
            hi = rho_bar + step
        return optimize.brentq(h, rho_bar, hi, xtol=_XTOL, rtol=_RTOL, maxiter=400)

    if log_eps is None:
        if eps <= 0.0:
            raise DomainError("log-domain branch needs eps > 0 or log_eps")
        log_eps = math.log(eps)
    log_target = math.log(target)

    def g(r):
        return (math.log(2.0) + log_eps + math.log(r - rho_bar) - math.log(r + rho_bar)
                + _log_dp(rho_bar, r, law) - log_target)

    step = 1.0
    lo = rho_bar + step
    for _ in range(2000):
        val = g(lo)
        if val < 0.0:
            break
        step *= 0.5
        lo = rho_bar + step
    hi_step = 1.0
    hi = rho_bar + hi_step
    while g(hi) < 0.0:
        hi_step *= 2.0
        hi = rho_bar + hi_step
        if not math.isfinite(hi):
            raise DomainError("log-domain shock bracket diverged")
    if lo >= hi:
        lo = rho_bar + (hi - rho_bar) * 0.5
        while g(lo) >= 0.0:
            lo = rho_bar + (lo - rho_bar) * 0.5
    return optimize.brentq(g, lo, hi, xtol=_XTOL, rtol=_RTOL, maxiter=400)


def shock1_rho_of_u(left: State, u: float, eps: float, law: PressureLaw = DEFAULT_LAW, *,
                    log_domain: bool = False, log_eps: float | None = None) -> float:
    """Density behind an admissible 1-shock from ``left`` reaching velocity ``u <= left.u``.

    Decreasing in ``u``.  Raises :class:`OverflowAtVanishingEpsilon` if the
    root is beyond ``law.rho_max`` and ``log_domain`` is off.
    """
    _positive(left)
    eps = _check_eps(eps)
    if u > left.u:
        raise DomainError(f"1-shock branch needs u <= {left.u}, got {u}")
    return _shock_branch_rho(left.rho, u - left.u, eps, law, log_domain, log_eps)


def shock2_rho_of_u(right: State, u: float, eps: float, law: PressureLaw = DEFAULT_LAW, *,
                    log_domain: bool = False, log_eps: float | None = None) -> float:
    """Density left of an admissible 2-shock ending at ``right``, for ``u >= right.u``.

    Increasing in ``u``.
    """
    _positive(right)
    eps = _check_eps(eps)
    if u < right.u:
        raise DomainError(f"2-shock branch needs u >= {right.u}, got {u}")
    return _shock_branch_rho(right.rho, u - right.u, eps, law, log_domain, log_eps)


def shock1_u_of_rho(left: State, rho, eps: float, law: PressureLaw = DEFAULT_LAW):
    """Velocity on the admissible 1-shock branch from ``left`` at density ``rho >= left.rho``."""
    rho = np.asarray(rho, dtype=float)
    if np.any(rho < left.rho):
        raise DomainError("1-shock branch needs rho >= left.rho")
    out = left.u - np.sqrt(hugoniot_F(left.rho, rho, eps, law))
    return float(out) if out.ndim == 0 else out


def shock2_u_of_rho(right: State, rho, eps: float, law: PressureLaw = DEFAULT_LAW):
    """Velocity on the backward admissible 2-shock branch through ``right`` (``rho >= right.rho``)."""
    rho = np.asarray(rho, dtype=float)
    if np.any(rho < right.rho):
        raise DomainError("2-shock branch needs rho >= right.rho")
    out = right.u + np.sqrt(hugoniot_F(right.rho, rho, eps, law))
    return float(out) if out.ndim == 0 else out


def shock_speed(left: State, right: State) -> float:
    """Speed from the mass equation ``(rho_r u_r - rho_l u_l)/(rho_r - rho_l)``."""
    if left.rho == right.rho:
        raise DegenerateJumpError(
            "equal densities: use shock_speed_u_equation for the speed")
    return (right.rho * right.u - left.rho * left.u) / (right.rho - left.rho)


def shock_speed_u_equation(left: State, right: State, eps: float, law: PressureLaw = DEFAULT_LAW) -> float:
    """Speed from the velocity equation ``(u_l + u_r)/2 + eps [p]/[u]``."""
    if left.u == right.u:
        raise DegenerateJumpError("equal velocities: the u-equation gives no speed")
    return 0.5 * (left.u + right.u) + scaled_pressure_jump(left.rho, right.rho, eps, law) / (right.u - left.u)


def rh_residuals(jump: ShockJump, eps: float, law: PressureLaw = DEFAULT_LAW) -> tuple[float, float]:
    """Residuals ``s [U] - [F(U)]`` of both conservation laws across ``jump``."""
    L, R, s = jump.left, jump.right, jump.speed
    r_u = s * (R.u - L.u) - (0.5 * (R.u * R.u - L.u * L.u) + scaled_pressure_jump(L.rho, R.rho, eps, law))
    r_rho = s * (R.rho - L.rho) - (R.rho * R.u - L.rho * L.u)
    return r_u, r_rho


def make_shock(left: State, right: State, family: int) -> ShockJump:
    return ShockJump(left, right, shock_speed(left, right), family)


def lax_admissible(jump: ShockJump, eps: float, law: PressureLaw = DEFAULT_LAW) -> bool:
    """Strict Lax inequalities for the declared family.

    1-shock: ``lambda1(R) < s < lambda1(L)`` and ``s < lambda2(R)``;
    2-shock: ``lambda2(R) < s < lambda2(L)`` and ``lambda1(L) < s``.
    """
    L, R, s = jump.left, jump.right, jump.speed
    _positive(L, R)
    if jump.family == 1:
        return bool(lambda1(R.u, R.rho, eps, law) < s < lambda1(L.u, L.rho, eps, law)
                    and s < lambda2(R.u, R.rho, eps, law))
    if jump.family == 2:
        return bool(lambda2(R.u, R.rho, eps, law) < s < lambda2(L.u, L.rho, eps, law)
                    and lambda1(L.u, L.rho, eps, law) < s)
    raise ValueError(f"family must be 1 or 2, got {jump.family}")


# --- rarefaction curves -------------------------------------------------------

def _check_branch(anchor: State, rho, family: int, side: str):
    rho = np.asarray(rho, dtype=float)
    if np.any(rho < 0.0):
        raise DomainError("rarefaction density must be non-negative")
    decreasing = (family == 1) == (side == "left")
    if decreasing and np.any(rho > anchor.rho):
        raise DomainError(f"family-{family} rarefaction ({side} anchor) needs rho <= {anchor.rho}")
    if not decreasing and np.any(rho < anchor.rho):
        raise DomainError(f"family-{family} rarefaction ({side} anchor) needs rho >= {anchor.rho}")
    return rho


def _sign(family: int) -> float:
    if family not in (1, 2):
        raise ValueError(f"family must be 1 or 2, got {family}")
    return -1.0 if family == 1 else 1.0


def _curve_u(anchor: State, rho, family: int, eps: float, law: PressureLaw):
    return anchor.u + _sign(family) * math.sqrt(eps) * law.rarefaction_integral(anchor.rho, rho)


def rarefaction1_u_of_rho(anchor: State, rho, eps: float, law: PressureLaw = DEFAULT_LAW,
                          anchor_side: Side = "left"):
    """``u = u_a - int_{rho_a}^{rho} sqrt(eps p'(s)/s) ds`` on the 1-rarefaction curve.

    With ``anchor_side="left"`` the anchor is the state ahead of the fan and
    ``0 <= rho <= anchor.rho``; ``"right"`` reverses the admissible range.
    """
    eps = _check_eps(eps)
    rho = _check_branch(anchor, rho, 1, anchor_side)
    out = _curve_u(anchor, rho, 1, eps, law)
    return float(out) if np.ndim(out) == 0 else out


def rarefaction2_u_of_rho(anchor: State, rho, eps: float, law: PressureLaw = DEFAULT_LAW,
                          anchor_side: Side = "left"):
    """``u = u_a + int_{rho_a}^{rho} sqrt(eps p'(s)/s) ds`` on the 2-rarefaction curve."""
    eps = _check_eps(eps)
    rho = _check_branch(anchor, rho, 2, anchor_side)
    out = _curve_u(anchor, rho, 2, eps, law)
    return float(out) if np.ndim(out) == 0 else out


def curve_speed(anchor: State, family: int, rho, eps: float, law: PressureLaw = DEFAULT_LAW):
    """Characteristic speed of ``family`` along its own rarefaction curve through ``anchor``.

    At ``rho = 0`` this is the vacuum-edge velocity.
    """
    rho = np.asarray(rho, dtype=float)
    u = _curve_u(anchor, rho, family, eps, law)
    return u + _sign(family) * sound_speed(rho, eps, law)


def _fan_bounds(anchor: State, family: int, anchor_side: str, rho_end):
    if rho_end is None:
        decreasing = (family == 1) == (anchor_side == "left")
        if not decreasing:
            raise ValueError("rho_end is required when the fan density grows away from the anchor")
        rho_end = 0.0
    lo, hi = sorted((anchor.rho, float(rho_end)))
    return lo, hi


def rarefaction_fan_state(anchor: State, family: int, xi: float, eps: float,
                          law: PressureLaw = DEFAULT_LAW, anchor_side: Side = "left",
                          rho_end: float | None = None) -> State:
    """State inside a rarefaction fan where ``lambda_family = xi``.

    The fan spans densities between ``anchor.rho`` and ``rho_end`` (default:
    vacuum when the fan thins out away from the anchor).
    """
    eps = _check_eps(eps)
    lo, hi = _fan_bounds(anchor, family, anchor_side, rho_end)

    s_lo = float(curve_speed(anchor, family, lo, eps, law))
    s_hi = float(curve_speed(anchor, family, hi, eps, law))
    a, b = min(s_lo, s_hi), max(s_lo, s_hi)
    tol = 1e-12 * (1.0 + abs(xi))
    if xi < a - tol or xi > b + tol:
        raise DomainError(f"xi = {xi} outside the fan [{a}, {b}]")
    xi = min(max(xi, a), b)
    if xi == s_lo:
        rho = lo
    elif xi == s_hi:
        rho = hi
    else:
        rho = optimize.brentq(lambda r: float(curve_speed(anchor, family, r, eps, law)) - xi,
                              lo, hi, xtol=_XTOL, rtol=_RTOL, maxiter=400)
    u = float(_curve_u(anchor, rho, family, eps, law))
    return State(u, rho)


def fan_densities(anchor: State, family: int, xi, eps: float, law: PressureLaw,
                  rho_lo: float, rho_hi: float) -> np.ndarray:
    """Vectorised inverse of :func:`curve_speed` on ``[rho_lo, rho_hi]`` (xi clipped to the fan)."""
    xi = np.asarray(xi, dtype=float)
    s_lo = float(curve_speed(anchor, family, rho_lo, eps, law))
    s_hi = float(curve_speed(anchor, family, rho_hi, eps, law))
    xi_c = np.clip(xi, min(s_lo, s_hi), max(s_lo, s_hi))
    if xi_c.size == 0:
        return xi_c.copy()

    def f(r, target):
        return curve_speed(anchor, family, r, eps, law) - target

    res = elementwise.find_root(f, (np.full_like(xi_c, rho_lo), np.full_like(xi_c, rho_hi)), args=(xi_c,))
    rho = np.asarray(res.x, dtype=float)
    # exact fan edges
    rho = np.where(xi_c == s_lo, rho_lo, rho)
    rho = np.where(xi_c == s_hi, rho_hi, rho)
    return rho
