"""Closed-form Riemann solutions for the flux-shifted perturbation

    u_t + ((u + eps)^2 / 2)_x = 0,    rho_t + (rho u)_x = 0.

The characteristic speeds are ``lambda1 = u`` (linearly degenerate, so
family-1 waves are contacts) and ``lambda2 = u + eps``.  Along 2-waves
``rho = rho_r exp((u - u_r)/eps)`` for rarefactions, while shocks move
with the shifted Burgers speed ``(u_l + u_r)/2 + eps``.
"""

from __future__ import annotations

import math

from deltashock.errors import DenominatorVanishing, DomainError, OutsideBVWindow
from deltashock.fan import INF, AltRarefactionFan, ConstantState, Contact, Shock, VacuumRegion, WaveFan
from deltashock.limit import DeltaShockDescriptor, LimitSolution
from deltashock.states import RiemannData, State
from deltashock.wave_curves import ShockJump
from deltashock.weakform import weak_residual


def _pos(eps: float) -> float:
    eps = float(eps)
    if not eps > 0.0:
        raise DomainError(f"epsilon must be positive, got {eps!r}")
    return eps


def alt_lambda(u: float, eps: float) -> tuple[float, float]:
    return u, u + eps


def alt_log_rho_star(data: RiemannData, eps: float) -> float:
    """``log rho* = log rho_r + (u_l - u_r)/eps`` for the rarefaction case (no underflow)."""
    return math.log(data.right.rho) + (data.left.u - data.right.u) / _pos(eps)


def alt_solve_rarefaction(data: RiemannData, eps: float) -> WaveFan:
    """Contact at ``u_l`` then a 2-rarefaction on ``u_l + eps < x/t < u_r + eps``.

    The intermediate density ``rho* = rho_r exp((u_l - u_r)/eps)`` may
    underflow to zero for tiny ``eps``; the log is available from
    :func:`alt_log_rho_star`.
    """
    eps = _pos(eps)
    L, R = data.left, data.right
    if not L.u < R.u:
        raise DomainError("alt rarefaction case needs u_l < u_r")
    m = State(L.u, math.exp(alt_log_rho_star(data, eps)))
    a, b = L.u + eps, R.u + eps
    return WaveFan((
        ConstantState(L, -INF, L.u),
        Contact(L.u, L, m),
        ConstantState(m, L.u, a),
        AltRarefactionFan(R, a, b, eps),
        ConstantState(R, b, INF),
    ), eps, "alt")


def alt_small_shock_rho_star(data: RiemannData, eps: float) -> float:
    """``rho_r ((u_l - u_r)/2 + eps) / (eps - (u_l - u_r)/2)`` from the density jump condition."""
    eps = _pos(eps)
    h = 0.5 * (data.left.u - data.right.u)
    den = eps - h
    if not den > 0.0:
        raise DenominatorVanishing(f"eps - (u_l - u_r)/2 = {den:g} <= 0: no bounded solution, use the delta shock")
    return data.right.rho * (h + eps) / den


def alt_solve_small_shock(data: RiemannData, eps: float, strict_window: bool = True) -> WaveFan:
    """Contact at ``u_l`` to ``(u_l, rho*)`` then a 2-shock at ``(u_l + u_r)/2 + eps``.

    Valid for ``0 <= u_l - u_r <= eps``.  With ``strict_window=False`` the
    bounded solution is returned up to the pole ``u_l - u_r < 2 eps``.

    Raises
    ------
    DenominatorVanishing
        If ``u_l - u_r >= 2 eps``.
    OutsideBVWindow
        If ``u_l - u_r > eps`` and ``strict_window`` is set.
    """
    eps = _pos(eps)
    L, R = data.left, data.right
    if L.u < R.u:
        raise DomainError("alt small-shock case needs u_l >= u_r")
    rho = alt_small_shock_rho_star(data, eps)
    if strict_window and L.u - R.u > eps:
        raise OutsideBVWindow(f"u_l - u_r = {L.u - R.u:g} > eps = {eps:g}: use the delta shock")
    if L.u == R.u:
        if L.rho == R.rho:
            return WaveFan((ConstantState(L, -INF, INF),), eps, "alt")
        return WaveFan((ConstantState(L, -INF, L.u), Contact(L.u, L, R), ConstantState(R, L.u, INF)),
                       eps, "alt")
    m = State(L.u, rho)
    s = 0.5 * (L.u + R.u) + eps
    return WaveFan((
        ConstantState(L, -INF, L.u),
        Contact(L.u, L, m),
        ConstantState(m, L.u, s),
        Shock(ShockJump(m, R, s, 2)),
        ConstantState(R, s, INF),
    ), eps, "alt")


def alt_delta_descriptor(data: RiemannData, eps: float) -> DeltaShockDescriptor:
    """Speed and carried velocity ``(u_l + u_r)/2 + eps``; ``w0 = (u_l - u_r)(rho_l + rho_r)/2 + eps (rho_r - rho_l)``."""
    ul, rl, ur, rr = data.as_tuple()
    c = 0.5 * (ul + ur) + eps
    return DeltaShockDescriptor(c, 0.5 * (ul - ur) * (rl + rr) + eps * (rr - rl), c)


def alt_solve_delta(data: RiemannData, eps: float, strict_window: bool = True) -> WaveFan:
    """Delta shock for ``u_l - u_r > eps``, weight ``w0 t``.

    ``strict_window=False`` allows any ``u_l > u_r`` with positive weight.
    """
    eps = _pos(eps)
    L, R = data.left, data.right
    if not L.u > R.u:
        raise DomainError("alt delta case needs u_l > u_r")
    if strict_window and not L.u - R.u > eps:
        raise DomainError(f"u_l - u_r = {L.u - R.u:g} <= eps = {eps:g}: bounded solution exists")
    d = alt_delta_descriptor(data, eps)
    if not d.weight_coefficient > 0.0:
        raise DomainError(f"non-positive delta weight {d.weight_coefficient:g}")
    return WaveFan((
        ConstantState(L, -INF, d.speed),
        d.as_segment(eps * (R.rho - L.rho)),
        ConstantState(R, d.speed, INF),
    ), eps, "alt")


def alt_solve(data: RiemannData, eps: float) -> WaveFan:
    """Dispatch: rarefaction (``u_l < u_r``), bounded shock (``u_l - u_r <= eps``), delta shock."""
    eps = _pos(eps)
    du = data.left.u - data.right.u
    if du < 0.0:
        return alt_solve_rarefaction(data, eps)
    if du <= eps:
        return alt_solve_small_shock(data, eps)
    return alt_solve_delta(data, eps)


def alt_limit(data: RiemannData) -> LimitSolution:
    """``eps -> 0`` limit of the flux-shifted solutions, built from the closed forms at ``eps = 0``."""
    L, R = data.left, data.right
    if L.u > R.u:
        d = alt_delta_descriptor(data, 0.0)
        fan = WaveFan((ConstantState(L, -INF, d.speed), d.as_segment(), ConstantState(R, d.speed, INF)),
                      0.0, "limit")
        return LimitSolution("delta_shock", fan, d)
    if L.u == R.u:
        if L.rho == R.rho:
            return LimitSolution("constant", WaveFan((ConstantState(L, -INF, INF),), 0.0, "limit"))
        fan = WaveFan((ConstantState(L, -INF, L.u), Contact(L.u, L, R), ConstantState(R, L.u, INF)),
                      0.0, "limit")
        return LimitSolution("contact", fan)
    # rho* -> 0 and the fan u_l + eps < xi < u_r + eps collapses onto u = x/t
    fan = WaveFan((ConstantState(L, -INF, L.u), VacuumRegion(L.u, R.u), ConstantState(R, R.u, INF)),
                  0.0, "limit")
    return LimitSolution("vacuum", fan)


def alt_weak_residual(fan: WaveFan, eps: float, phi, **kw) -> float:
    """Weak residual of both equations with flux ``((u + eps)^2/2, rho u)`` and delta terms."""
    if fan.model not in ("alt", "limit"):
        raise ValueError(f"expected an alt-model fan, got model {fan.model!r}")
    return weak_residual(fan, phi, eps=eps, **kw)
