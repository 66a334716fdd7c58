r"""Pressure laws and characteristic speeds.

The perturbed system is

.. math::

    u_t + (u^2/2 + \varepsilon p(\rho))_x = 0, \qquad \rho_t + (\rho u)_x = 0

with the default law :math:`p(\rho) = \int_0^\rho \xi e^\xi d\xi = (\rho - 1)e^\rho + 1`.
Any law with ``p`` and ``p'`` increasing can be plugged in through
:class:`PressureLaw`.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod

import numpy as np
from scipy import integrate

from deltashock.errors import DomainError, PressureOverflowError

# e**709.78 is the largest finite double
RHO_OVERFLOW = 700.0


def _check_rho(rho, rho_max: float = math.inf, strict: bool = False):
    arr = np.asarray(rho, dtype=float)
    if np.any(np.isnan(arr)):
        raise DomainError("density is NaN")
    if strict and np.any(arr <= 0.0):
        raise DomainError(f"density must be positive, got {rho!r}")
    if np.any(arr < 0.0):
        raise DomainError(f"density must be non-negative, got {rho!r}")
    if np.any(arr > rho_max):
        raise PressureOverflowError(
            f"density {np.max(arr):g} exceeds the direct-evaluation bound {rho_max:g}; "
            "use the log-domain helpers")
    return arr


def _check_eps(eps) -> float:
    eps = float(eps)
    if not eps >= 0.0:
        raise DomainError(f"epsilon must be non-negative, got {eps!r}")
    return eps


def _out(arr, like):
    return float(arr) if np.ndim(like) == 0 else arr


class PressureLaw(ABC):
    """A pressure function with increasing ``p`` and ``p'``.

    Subclasses provide vectorised ``p`` and ``p_prime``; the remaining
    methods have generic (slower) fallbacks.
    """

    name: str = "generic"
    rho_max: float = math.inf

    @abstractmethod
    def p(self, rho):
        ...

    @abstractmethod
    def p_prime(self, rho):
        ...

    def log_p(self, rho):
        with np.errstate(divide="ignore"):
            return np.log(self.p(rho))

    def log_p_prime(self, rho):
        with np.errstate(divide="ignore"):
            return np.log(self.p_prime(rho))

    def rarefaction_integral(self, a, b):
        r"""Return :math:`\int_a^b \sqrt{p'(\xi)/\xi}\, d\xi` (no epsilon factor)."""
        def one(lo, hi):
            if lo == hi:
                return 0.0
            val, _ = integrate.quad(lambda s: math.sqrt(self.p_prime(s) / s), min(lo, hi), max(lo, hi),
                                    epsabs=1e-13, epsrel=1e-12, limit=200)
            return val if hi > lo else -val
        return np.vectorize(one, otypes=[float])(a, b) if (np.ndim(a) or np.ndim(b)) else one(float(a), float(b))

    def __repr__(self):
        return f"{type(self).__name__}(name={self.name!r})"


class ExpPressureLaw(PressureLaw):
    """``p(rho) = (rho - 1) e^rho + 1``, i.e. ``q'(xi) = xi^2 e^xi``."""

    name = "exp"
    rho_max = RHO_OVERFLOW

    def p(self, rho):
        rho = np.asarray(rho, dtype=float)
        return (rho - 1.0) * np.exp(rho) + 1.0

    def p_prime(self, rho):
        rho = np.asarray(rho, dtype=float)
        return rho * np.exp(rho)

    def log_p(self, rho):
        # log((rho-1)e^rho + 1) = rho + log(rho - 1 + e^-rho), finite for any rho > 0
        rho = np.asarray(rho, dtype=float)
        big = rho >= 1.0
        r_big = np.where(big, rho, 1.0)
        r_small = np.where(big, 0.5, rho)
        with np.errstate(divide="ignore"):
            out_big = r_big + np.log(r_big + np.expm1(-r_big))
            out_small = np.log(self.p(r_small))
        return np.where(big, out_big, out_small)

    def log_p_prime(self, rho):
        rho = np.asarray(rho, dtype=float)
        with np.errstate(divide="ignore"):
            return np.log(rho) + rho

    def rarefaction_integral(self, a, b):
        # sqrt(p'(xi)/xi) = e^{xi/2}
        a = np.asarray(a, dtype=float)
        b = np.asarray(b, dtype=float)
        return 2.0 * (np.exp(0.5 * b) - np.exp(0.5 * a))


DEFAULT_LAW = ExpPressureLaw()


def p_eval(rho, law: PressureLaw = DEFAULT_LAW):
    """Pressure ``p(rho)``; negative density raises, ``rho > law.rho_max`` overflows."""
    arr = _check_rho(rho, law.rho_max)
    return _out(law.p(arr), rho)


def p_prime_eval(rho, law: PressureLaw = DEFAULT_LAW):
    arr = _check_rho(rho, law.rho_max)
    return _out(law.p_prime(arr), rho)


def log_p(rho, law: PressureLaw = DEFAULT_LAW):
    """``log p(rho)`` without overflow (``-inf`` at ``rho = 0``)."""
    arr = _check_rho(rho)
    return _out(law.log_p(arr), rho)


def scaled_pressure(rho, eps, law: PressureLaw = DEFAULT_LAW):
    """``eps * p(rho)`` evaluated as ``exp(log eps + log p)``."""
    eps = _check_eps(eps)
    arr = _check_rho(rho)
    if eps == 0.0:
        return _out(np.zeros_like(arr), rho)
    with np.errstate(over="raise"):
        return _out(np.exp(math.log(eps) + law.log_p(arr)), rho)


def sound_speed(rho, eps, law: PressureLaw = DEFAULT_LAW):
    """``sqrt(eps p'(rho) rho)``; zero at vacuum."""
    eps = _check_eps(eps)
    arr = np.asarray(rho, dtype=float)
    if eps == 0.0:
        return _out(np.zeros_like(arr), rho)
    safe = np.where(arr > 0.0, arr, 1.0)
    with np.errstate(over="raise"):
        c = np.exp(0.5 * (math.log(eps) + law.log_p_prime(safe) + np.log(safe)))
    return _out(np.where(arr > 0.0, c, 0.0), rho)


def lambda1(u, rho, eps, law: PressureLaw = DEFAULT_LAW):
    """Slow characteristic speed ``u - sqrt(eps p'(rho) rho)``."""
    _check_rho(rho, strict=True)
    return u - sound_speed(rho, eps, law)


def lambda2(u, rho, eps, law: PressureLaw = DEFAULT_LAW):
    """Fast characteristic speed ``u + sqrt(eps p'(rho) rho)``."""
    _check_rho(rho, strict=True)
    return u + sound_speed(rho, eps, law)
