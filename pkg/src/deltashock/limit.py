"""Vanishing-pressure limit: predicted limit objects, epsilon sweeps, pairings.

For ``u_l > u_r`` the two shocks merge into a delta shock on ``x = c t``
with ``c = (u_l + u_r)/2`` and mass ``w0 t``, ``w0 = (u_l - u_r)(rho_l + rho_r)/2``,
while ``eps p(rho*)`` tends to ``(u_l - u_r)^2/8``.  For ``u_l < u_r`` a vacuum
opens between ``u_l t`` and ``u_r t``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy import optimize

from deltashock.errors import DomainError, EpsilonTooLarge
from deltashock.fan import INF, ConstantState, Contact, DeltaSegment, VacuumRegion, WaveFan
from deltashock.pressure import DEFAULT_LAW, PressureLaw, lambda1, lambda2
from deltashock.riemann import (
    solve_equal_u,
    solve_two_rarefaction,
    solve_two_shock,
    vacuum_edges,
)
from deltashock.states import RiemannData
from deltashock.wave_curves import _RTOL, _XTOL, shock1_rho_of_u, shock2_rho_of_u
from deltashock.weakform import Bump, _gl, _nodes, _panels, rho_pairing


# --- limit objects ------------------------------------------------------------

@dataclass(frozen=True)
class DeltaShockDescriptor:
    """Dirac mass ``weight_coefficient * t`` on ``x = speed * t``."""

    speed: float
    weight_coefficient: float
    carried_u: float

    def weight(self, t):
        return self.weight_coefficient * np.asarray(t, dtype=float)

    def as_segment(self, eps_correction: float = 0.0) -> DeltaSegment:
        return DeltaSegment(self.speed, self.weight_coefficient, self.carried_u, eps_correction)


@dataclass(frozen=True)
class LimitSolution:
    """Limit object: ``kind`` is ``delta_shock``, ``contact``, ``constant`` or ``vacuum``."""

    kind: str
    fan: WaveFan
    delta: DeltaShockDescriptor | None = None


def delta_descriptor(data: RiemannData) -> DeltaShockDescriptor:
    ul, rl, ur, rr = data.as_tuple()
    c = 0.5 * (ul + ur)
    return DeltaShockDescriptor(c, 0.5 * (ul - ur) * (rl + rr), c)


def predicted_limit(data: RiemannData) -> LimitSolution:
    """Pointwise-plus-measure limit of the perturbed solutions as ``eps -> 0``."""
    L, R = data.left, data.right
    if L.u > R.u:
        d = delta_descriptor(data)
        fan = WaveFan((ConstantState(L, -INF, d.speed), d.as_segment(), ConstantState(R, d.speed, INF)),
                      0.0, "limit")
        return LimitSolution("delta_shock", fan, d)
    if L.u == R.u:
        if L.rho == R.rho:
            return LimitSolution("constant", WaveFan((ConstantState(L, -INF, INF),), 0.0, "limit"))
        fan = WaveFan((ConstantState(L, -INF, L.u), Contact(L.u, L, R), ConstantState(R, L.u, INF)),
                      0.0, "limit")
        return LimitSolution("contact", fan)
    fan = WaveFan((ConstantState(L, -INF, L.u), VacuumRegion(L.u, R.u), ConstantState(R, R.u, INF)),
                  0.0, "limit")
    return LimitSolution("vacuum", fan)


def limit_eps_p(data: RiemannData) -> float:
    """Limit of ``eps p(rho*)``: ``(u_l - u_r)^2 / 8``."""
    return (data.left.u - data.right.u) ** 2 / 8.0


# --- log-domain intermediate state -------------------------------------------

@dataclass(frozen=True)
class LogIntermediate:
    """Two-shock intermediate state for ``eps`` given through ``log_eps``."""

    u_star: float
    rho_star: float
    log_eps: float
    log_eps_p_rho_star: float

    @property
    def log_rho_star(self) -> float:
        return math.log(self.rho_star)

    @property
    def eps_p_rho_star(self) -> float:
        return math.exp(self.log_eps_p_rho_star)


def log_domain_rho_star(data: RiemannData, eps: float | None = None, *, log_eps: float | None = None,
                        law: PressureLaw = DEFAULT_LAW) -> LogIntermediate:
    """Two-shock intermediate state computed without evaluating ``p`` directly.

    Works for any ``log_eps`` (including values whose exponential underflows).
    ``log p`` uses the exact identity ``log p = rho + log(rho - 1 + e^-rho)``.
    """
    if log_eps is None:
        if eps is None or not eps > 0.0:
            raise DomainError("give eps > 0 or log_eps")
        log_eps = math.log(eps)
    L, R = data.left, data.right
    if not L.u > R.u:
        raise DomainError("log-domain intermediate state needs u_l > u_r")

    def r1(u):
        return shock1_rho_of_u(L, u, 1.0, law, log_domain=True, log_eps=log_eps)

    def r2(u):
        return shock2_rho_of_u(R, u, 1.0, law, log_domain=True, log_eps=log_eps)

    if not (r2(L.u) > L.rho and r1(R.u) > R.rho):
        raise EpsilonTooLarge(f"log eps = {log_eps:g} is above the two-shock threshold")
    if L.rho == R.rho:
        u = 0.5 * (L.u + R.u)
    else:
        u = optimize.brentq(lambda v: r1(v) - r2(v), R.u, L.u, xtol=_XTOL, rtol=_RTOL, maxiter=400)
    rho = r1(u)
    return LogIntermediate(u, rho, log_eps, log_eps + float(law.log_p(rho)))


# --- sweeps -------------------------------------------------------------------

@dataclass(frozen=True)
class SweepRecord:
    """One row of a two-shock epsilon sweep.

    ``d_coeff`` is ``rho* (s2 - s1)``: the mass between the shocks per unit time.
    Errors are measured against :func:`predicted_limit` and :func:`limit_eps_p`.
    """

    eps: float
    u_star: float
    rho_star: float
    log_rho_star: float
    eps_p_rho_star: float
    s1: float
    s2: float
    d_coeff: float
    err_u: float
    err_l: float
    err_w: float
    err_s: float
    log_domain: bool

    def row(self) -> tuple:
        return (self.eps, self.u_star, self.log_rho_star, self.eps_p_rho_star, self.s1, self.s2,
                self.d_coeff, self.err_u, self.err_l, self.err_w)


def _check_decreasing(eps_list: Sequence[float]) -> list[float]:
    eps_list = [float(e) for e in eps_list]
    if not eps_list:
        raise DomainError("empty epsilon list")
    if any(not e > 0.0 for e in eps_list):
        raise DomainError("epsilon values must be positive")
    if any(b >= a for a, b in zip(eps_list[:-1], eps_list[1:])):
        raise DomainError("epsilon list must be strictly decreasing")
    return eps_list


def sweep_record(data: RiemannData, eps: float, law: PressureLaw = DEFAULT_LAW) -> SweepRecord:
    mid, fan = solve_two_shock(data, eps, law)
    j1, j2 = fan.shocks
    lim = delta_descriptor(data)
    d = mid.rho_star * (j2.speed - j1.speed)
    return SweepRecord(
        eps=eps,
        u_star=mid.u_star,
        rho_star=mid.rho_star,
        log_rho_star=math.log(mid.rho_star),
        eps_p_rho_star=mid.eps_p_rho_star,
        s1=j1.speed,
        s2=j2.speed,
        d_coeff=d,
        err_u=abs(mid.u_star - lim.speed),
        err_l=abs(mid.eps_p_rho_star - limit_eps_p(data)),
        err_w=abs(d - lim.weight_coefficient),
        err_s=max(abs(j1.speed - lim.speed), abs(j2.speed - lim.speed)),
        log_domain=mid.log_domain,
    )


def epsilon_sweep(data: RiemannData, eps_list: Sequence[float], law: PressureLaw = DEFAULT_LAW) -> list[SweepRecord]:
    """Two-shock solutions along a strictly decreasing epsilon sequence."""
    if not data.left.u > data.right.u:
        raise DomainError("epsilon_sweep needs u_l > u_r")
    return [sweep_record(data, e, law) for e in _check_decreasing(eps_list)]


def smallest_feasible_sweep(data: RiemannData, exponents=(1, 2, 4, 8, 16, 32, 64, 128, 256, 300),
                            law: PressureLaw = DEFAULT_LAW) -> list[SweepRecord]:
    """Sweep over ``eps = 10**-k`` down to the smallest double-representable value."""
    return epsilon_sweep(data, [10.0 ** (-k) for k in exponents], law)


@dataclass(frozen=True)
class RarefactionRecord:
    eps: float
    fan_left: float
    fan_right: float
    vacuum_lo: float
    vacuum_hi: float


def rarefaction_sweep(data: RiemannData, eps_list: Sequence[float],
                      law: PressureLaw = DEFAULT_LAW) -> list[RarefactionRecord]:
    """Outer fan edges ``lambda_1(left)``, ``lambda_2(right)`` and vacuum edges per epsilon."""
    out = []
    for e in _check_decreasing(eps_list):
        solve_two_rarefaction(data, e, law)
        v1, v2 = vacuum_edges(data, e, law)
        out.append(RarefactionRecord(e, float(lambda1(data.left.u, data.left.rho, e, law)),
                                     float(lambda2(data.right.u, data.right.rho, e, law)), v1, v2))
    return out


def equal_u_sweep(data: RiemannData, eps_list: Sequence[float], law: PressureLaw = DEFAULT_LAW):
    """``(eps, u*, rho*)`` for the equal-velocity case."""
    out = []
    for e in _check_decreasing(eps_list):
        mid, _ = solve_equal_u(data, e, law)
        out.append((e, mid.u_star, mid.rho_star) if mid else (e, data.left.u, data.left.rho))
    return out


# --- pairings -----------------------------------------------------------------

def line_pairing(d: Callable, c: Callable, phi: Bump, n: int = 20, n_sub: int = 8) -> float:
    """``int d(t) phi(c(t), t) dt`` over the ``t > 0`` part of the support."""
    xa, xb, ta, tb = phi.support()
    ta = max(ta, 0.0)
    if not ta < tb:
        return 0.0
    tn, tw = _nodes(_panels(ta, tb, [], n_sub), n)
    return float(np.sum(tw * d(tn) * phi(c(tn), tn)))


def indicator_pairing(a: Callable, b: Callable, d: Callable, c: Callable, eps: float, phi: Bump,
                      n: int = 20, n_sub: int = 8) -> float:
    """``int int d_eps(t)/(a_eps + b_eps) chi_(c - a_eps, c + b_eps)(x) phi(x, t) dx dt``.

    ``a, b, d`` are callables of ``(eps, t)``; ``c`` of ``t``.
    """
    xa, xb, ta, tb = phi.support()
    ta = max(ta, 0.0)
    if not ta < tb:
        return 0.0
    tn, tw = _nodes(_panels(ta, tb, [], n_sub), n)
    z, w = _gl(n)
    total = 0.0
    for t, wt in zip(tn, tw):
        aa, bb, cc = float(a(eps, t)), float(b(eps, t)), float(c(t))
        width = aa + bb
        if not width > 0.0:
            raise DomainError(f"indicator width {width} <= 0 at t = {t}")
        lo, hi = max(cc - aa, xa), min(cc + bb, xb)
        if not lo < hi:
            continue
        xn, xw = _nodes(_panels(lo, hi, [], 2), n)
        total += wt * float(d(eps, t)) / width * float(np.sum(xw * phi(xn, t)))
    return total


def indicator_delta_pairing(a: Callable, b: Callable, d: Callable, c: Callable, phi: Bump,
                            eps_seq: Sequence[float], d_limit: Callable | None = None,
                            n: int = 20, n_sub: int = 8) -> list[float]:
    """Errors ``|<indicator_eps, phi> - int d(t) phi(c(t), t) dt|`` along ``eps_seq``.

    ``d_limit`` is the limit weight ``d(t)``; by default ``d(0, t)``.
    """
    if d_limit is None:
        d_limit = lambda t: d(0.0, t)  # noqa: E731
    target = line_pairing(d_limit, c, phi, n, n_sub)
    return [abs(indicator_pairing(a, b, d, c, e, phi, n, n_sub) - target) for e in eps_seq]


def middle_branch_functions(data: RiemannData, eps: float, law: PressureLaw = DEFAULT_LAW):
    """``(a, b, d, c)`` of the shocked region ``(s1 t, s2 t)`` around ``x = c t``.

    ``a(eps, t) = (c - s1) t``, ``b(eps, t) = (s2 - c) t``, ``d(eps, t) = rho* (s2 - s1) t``.
    """
    mid, fan = solve_two_shock(data, eps, law)
    s1, s2 = (j.speed for j in fan.shocks)
    c = delta_descriptor(data).speed
    coeff = mid.rho_star * (s2 - s1)
    return (lambda e, t: (c - s1) * t, lambda e, t: (s2 - c) * t,
            lambda e, t: coeff * t, lambda t: c * t)


def middle_branch_pairing_errors(data: RiemannData, eps_seq: Sequence[float], phi: Bump,
                                 law: PressureLaw = DEFAULT_LAW) -> list[float]:
    """Pairing error of the middle term alone against ``w0 t delta_{x = c t}``."""
    lim = delta_descriptor(data)
    target = line_pairing(lim.weight, lambda t: lim.speed * t, phi)
    out = []
    for e in eps_seq:
        a, b, d, c = middle_branch_functions(data, e, law)
        out.append(abs(indicator_pairing(a, b, d, c, e, phi) - target))
    return out


def limit_rho_pairing(data: RiemannData, phi: Bump) -> float:
    """``<rho_limit + w0 t delta, phi>``."""
    return rho_pairing(predicted_limit(data).fan, phi)


def weak_measure_error(data: RiemannData, eps: float, phi: Bump, law: PressureLaw = DEFAULT_LAW) -> float:
    """``|<rho^eps, phi> - <rho_limit + w0 t delta_{x=ct}, phi>|``; ``eps = 0`` compares the limit with itself."""
    if not data.left.u > data.right.u:
        raise DomainError("weak_measure_error needs u_l > u_r")
    lim = predicted_limit(data).fan
    fan = lim if eps == 0.0 else solve_two_shock(data, eps, law)[1]
    return abs(rho_pairing(fan, phi) - rho_pairing(lim, phi))
