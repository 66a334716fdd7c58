"""Entropy pair ``eta = u^2/2 + eps e^rho``, ``q = u^3/3 + eps rho u e^rho`` and shock production.

Across a discontinuity with speed ``s`` the entropy inequality reads
``-s [eta] + [q] <= 0``.  In the two-shock case the total production tends
to ``-(u_l - u_r)^3 / 12`` while the cross term ``eps e^rho* (s2 - s1)``
vanishes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from deltashock.errors import PressureOverflowError
from deltashock.fan import WaveFan
from deltashock.pressure import DEFAULT_LAW, PressureLaw, _check_eps, _check_rho
from deltashock.riemann import solve
from deltashock.states import RiemannData
from deltashock.wave_curves import ShockJump

_LOG_MAX = math.log(np.finfo(float).max)


def _eps_exp_rho(rho, eps: float):
    # eps * e^rho through the log domain; rho is a numpy array
    if eps == 0.0:
        return np.zeros_like(rho)
    lg = math.log(eps) + rho
    if np.any(lg > _LOG_MAX):
        raise PressureOverflowError(f"eps * e^rho overflows at rho = {np.max(rho):g}")
    return np.exp(lg)


def _ret(val, like):
    return float(val) if np.ndim(like) == 0 and np.ndim(val) == 0 else val


def eta(u, rho, eps: float):
    """Entropy ``u^2/2 + eps e^rho``."""
    eps = _check_eps(eps)
    r = _check_rho(rho)
    u_ = np.asarray(u, dtype=float)
    return _ret(0.5 * u_ * u_ + _eps_exp_rho(r, eps), np.broadcast(u_, r))


def q_flux(u, rho, eps: float):
    """Entropy flux ``u^3/3 + eps rho u e^rho``."""
    eps = _check_eps(eps)
    r = _check_rho(rho)
    u_ = np.asarray(u, dtype=float)
    return _ret(u_ ** 3 / 3.0 + r * u_ * _eps_exp_rho(r, eps), np.broadcast(u_, r))


def eta_hessian(u, rho, eps: float) -> np.ndarray:
    """``D^2 eta = diag(1, eps e^rho)``."""
    return np.diag([1.0, float(_eps_exp_rho(np.asarray(float(rho)), _check_eps(eps)))])


def compatibility_residual(u: float, rho: float, eps: float, law: PressureLaw = DEFAULT_LAW) -> float:
    """``max |D eta . Df - D q|`` from the analytic gradients.

    ``f = (u^2/2 + eps p(rho), rho u)``.  Identically zero for the
    default pressure law; other laws generally violate it.
    """
    eps = _check_eps(eps)
    e = float(_eps_exp_rho(np.asarray(float(rho)), eps))
    deta = np.array([u, e])
    df = np.array([[u, eps * float(law.p_prime(rho))], [rho, u]])
    dq = np.array([u * u + rho * e, u * (e + rho * e)])
    return float(np.max(np.abs(deta @ df - dq)))


@dataclass(frozen=True)
class EntropyPair:
    """Entropy/flux pair as plain callables of ``(u, rho, eps)``."""

    eta: Callable = eta
    q: Callable = q_flux

    def production(self, jump: ShockJump, eps: float) -> float:
        L, R, s = jump.left, jump.right, jump.speed
        return (-s * (self.eta(R.u, R.rho, eps) - self.eta(L.u, L.rho, eps))
                + self.q(R.u, R.rho, eps) - self.q(L.u, L.rho, eps))


DEFAULT_PAIR = EntropyPair()


def entropy_production_shock(jump: ShockJump, eps: float) -> float:
    """``-s (eta_R - eta_L) + (q_R - q_L)``; non-positive for admissible shocks."""
    return DEFAULT_PAIR.production(jump, eps)


def limit_production(u_l: float, u_r: float) -> float:
    """``(u_l + u_r)/4 (u_l^2 - u_r^2) + (u_r^3 - u_l^3)/3``, equal to ``-(u_l - u_r)^3/12``."""
    return 0.25 * (u_l + u_r) * (u_l * u_l - u_r * u_r) + (u_r ** 3 - u_l ** 3) / 3.0


def entropy_production_total_limit(data: RiemannData) -> float:
    """Limit of the summed shock production for ``u_l >= u_r``."""
    if data.left.u < data.right.u:
        raise ValueError("limit production is defined for u_l >= u_r")
    return limit_production(data.left.u, data.right.u)


def cross_term(fan: WaveFan) -> float:
    """``eps e^rho* (s2 - s1)`` of a two-shock fan, computed as ``exp(log eps + rho*) (s2 - s1)``."""
    j1, j2 = fan.shocks
    return math.exp(math.log(fan.eps) + j1.right.rho) * (j2.speed - j1.speed)


@dataclass(frozen=True)
class EntropyRecord:
    eps: float
    productions: tuple
    total: float
    cross: float
    limit: float

    @property
    def error(self) -> float:
        return abs(self.total - self.limit)


def entropy_limit_sweep(data: RiemannData, eps_list: Sequence[float],
                        law: PressureLaw = DEFAULT_LAW) -> list[EntropyRecord]:
    """Per-shock and total production along an epsilon sweep.

    ``cross`` is NaN unless the fan has two shocks; the limit total is zero
    when ``u_l <= u_r``.
    """
    lim = limit_production(data.left.u, data.right.u) if data.left.u > data.right.u else 0.0
    out = []
    for e in eps_list:
        fan = solve(data, e, law)
        prods = tuple(entropy_production_shock(j, e) for j in fan.shocks)
        cross = cross_term(fan) if len(fan.shocks) == 2 else math.nan
        out.append(EntropyRecord(float(e), prods, float(sum(prods)), cross, lim))
    return out
