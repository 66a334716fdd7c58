r"""Test functions and space-time quadrature for weak-form checks.

For a self-similar solution ``U`` with initial data ``U0`` the weak form of
``U_t + F(U)_x = 0`` against a compactly supported test function is

.. math::

    R(\varphi) = \int_0^\infty\!\!\int U\varphi_t + F(U)\varphi_x \,dx\,dt
                 + \int U_0(x)\varphi(x, 0)\,dx .

Integrals are taken with Gauss-Legendre panels over the support of the
test function.  The ``x`` integral is split at every wave line ``x = xi t``
and the ``t`` integral at the times where those lines cross the support
edges, so each panel sees a smooth integrand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from deltashock.fan import WaveFan
from deltashock.pressure import scaled_pressure

_GAUSS_CUT = 6.0
_GAUSS_FLOOR = math.exp(-0.5 * _GAUSS_CUT**2)


@lru_cache(maxsize=None)
def _gl(n: int) -> tuple[np.ndarray, np.ndarray]:
    return np.polynomial.legendre.leggauss(n)


# --- test functions ----------------------------------------------------------

@dataclass(frozen=True)
class Bump:
    """Tensor-product bump ``g((x-x0)/hx) g((t-t0)/ht)`` supported on ``|s|, |tau| <= 1``.

    Subclasses provide the 1-D profile ``g`` and its derivative on ``[-1, 1]``.
    """

    x0: float
    t0: float
    hx: float
    ht: float

    def _g(self, s):
        raise NotImplementedError

    def _dg(self, s):
        raise NotImplementedError

    def support(self) -> tuple[float, float, float, float]:
        """``(x_lo, x_hi, t_lo, t_hi)``."""
        return (self.x0 - self.hx, self.x0 + self.hx, self.t0 - self.ht, self.t0 + self.ht)

    def _st(self, x, t):
        s = (np.asarray(x, dtype=float) - self.x0) / self.hx
        tau = (np.asarray(t, dtype=float) - self.t0) / self.ht
        inside = (np.abs(s) < 1.0) & (np.abs(tau) < 1.0)
        return np.where(inside, s, 0.0), np.where(inside, tau, 0.0), inside

    def __call__(self, x, t):
        s, tau, inside = self._st(x, t)
        return np.where(inside, self._g(s) * self._g(tau), 0.0)

    def dx(self, x, t):
        s, tau, inside = self._st(x, t)
        return np.where(inside, self._dg(s) * self._g(tau) / self.hx, 0.0)

    def dt(self, x, t):
        s, tau, inside = self._st(x, t)
        return np.where(inside, self._g(s) * self._dg(tau) / self.ht, 0.0)


@dataclass(frozen=True)
class PolyBump(Bump):
    """``(1 - s^2)^4`` in each variable (C^3, vanishes with three derivatives at the edge)."""

    def _g(self, s):
        return (1.0 - s * s) ** 4

    def _dg(self, s):
        return -8.0 * s * (1.0 - s * s) ** 3


@dataclass(frozen=True)
class GaussBump(Bump):
    """Gaussian with standard deviations ``sx, st`` truncated at six of them.

    The profile is shifted down by ``exp(-18)`` so it vanishes on the
    truncation boundary, which keeps it Lipschitz and the weak form exact.
    """

    def __init__(self, x0: float, t0: float, sx: float, st: float):
        object.__setattr__(self, "x0", float(x0))
        object.__setattr__(self, "t0", float(t0))
        object.__setattr__(self, "hx", _GAUSS_CUT * float(sx))
        object.__setattr__(self, "ht", _GAUSS_CUT * float(st))

    @property
    def sx(self) -> float:
        return self.hx / _GAUSS_CUT

    @property
    def st(self) -> float:
        return self.ht / _GAUSS_CUT

    def _g(self, s):
        r = _GAUSS_CUT * s
        return np.exp(-0.5 * r * r) - _GAUSS_FLOOR

    def _dg(self, s):
        r = _GAUSS_CUT * s
        return -_GAUSS_CUT * r * np.exp(-0.5 * r * r)

    def __repr__(self):
        return f"GaussBump(x0={self.x0}, t0={self.t0}, sx={self.sx}, st={self.st})"


def standard_bumps() -> list[Bump]:
    """Fixed family used for weak-form checks.

    Three of the five supports reach below ``t = 0`` so the initial-data term
    is exercised; all are centred near the origin where Riemann fans live for
    ``t = O(1)``.
    """
    return [
        PolyBump(0.0, 0.5, 1.0, 0.6),
        PolyBump(0.2, 1.0, 0.8, 0.5),
        PolyBump(-0.6, 0.3, 1.2, 0.5),
        GaussBump(0.0, 1.0, 0.2, 0.15),
        GaussBump(0.15, 0.3, 0.25, 0.08),
    ]


# --- quadrature engine --------------------------------------------------------

def _panels(a: float, b: float, cuts, n_sub: int) -> list[tuple[float, float]]:
    pts = sorted({a, b, *[c for c in cuts if a < c < b]})
    out = []
    for lo, hi in zip(pts[:-1], pts[1:]):
        edges = np.linspace(lo, hi, n_sub + 1)
        out.extend(zip(edges[:-1], edges[1:]))
    return out


def _nodes(panels, n: int) -> tuple[np.ndarray, np.ndarray]:
    z, w = _gl(n)
    if not panels:
        return np.empty(0), np.empty(0)
    lo = np.array([p[0] for p in panels])[:, None]
    hi = np.array([p[1] for p in panels])[:, None]
    half = 0.5 * (hi - lo)
    x = (lo + half * (1.0 + z[None, :])).ravel()
    wt = (half * w[None, :]).ravel()
    return x, wt


def spacetime_nodes(speeds, box, n: int = 20, n_sub: int = 4):
    """Quadrature nodes ``(x, t, w)`` on ``box = (x_lo, x_hi, t_lo, t_hi)`` with ``t_lo >= 0``.

    ``speeds`` are the similarity speeds of wave lines ``x = xi t``.
    """
    xa, xb, ta, tb = box
    speeds = [float(s) for s in speeds if math.isfinite(s)]
    tcuts = []
    for s in speeds:
        if s != 0.0:
            tcuts += [xa / s, xb / s]
    xs, ts, ws = [], [], []
    t_nodes, t_w = _nodes(_panels(ta, tb, tcuts, n_sub), n)
    for t, wt in zip(t_nodes, t_w):
        x_nodes, x_w = _nodes(_panels(xa, xb, [s * t for s in speeds], n_sub), n)
        xs.append(x_nodes)
        ts.append(np.full_like(x_nodes, t))
        ws.append(x_w * wt)
    return np.concatenate(xs), np.concatenate(ts), np.concatenate(ws)


def line_nodes(speed: float, box, n: int = 20, n_sub: int = 4):
    """Nodes ``(t, w)`` along ``x = speed * t`` restricted to ``box``."""
    xa, xb, ta, tb = box
    if speed != 0.0:
        lo, hi = sorted((xa / speed, xb / speed))
        ta, tb = max(ta, lo), min(tb, hi)
    elif not xa < 0.0 < xb:
        return np.empty(0), np.empty(0)
    if not ta < tb:
        return np.empty(0), np.empty(0)
    return _nodes(_panels(ta, tb, [], n_sub), n)


def _clip_box(phi: Bump):
    xa, xb, ta, tb = phi.support()
    return (xa, xb, max(ta, 0.0), tb), ta < 0.0


def _fan_speeds(fan: WaveFan) -> list[float]:
    return fan.breakpoints()


def integrate(fan: WaveFan, phi: Bump, func: Callable, n: int = 20, n_sub: int = 4):
    """``sum w * func(x, t, u, rho)`` over the support of ``phi`` (``t > 0`` part)."""
    box, _ = _clip_box(phi)
    if not box[2] < box[3]:
        return 0.0
    x, t, w = spacetime_nodes(_fan_speeds(fan), box, n, n_sub)
    u, rho, _ = fan.sample_xi(x / t)
    return np.tensordot(np.asarray(func(x, t, u, rho)), w, axes=([-1], [0]))


# --- fluxes -------------------------------------------------------------------

def flux_u(model: str, u, rho, eps: float):
    """Flux of the first equation for ``model`` in ``{"base", "alt", "limit"}``."""
    if model == "base":
        return 0.5 * u * u + scaled_pressure(rho, eps)
    if model == "alt":
        return 0.5 * (u + eps) ** 2
    if model == "limit":
        return 0.5 * u * u
    raise ValueError(f"unknown model {model!r}")


def weak_residual_components(fan: WaveFan, phi: Bump, eps: float | None = None,
                             n: int = 20, n_sub: int = 4) -> tuple[float, float]:
    """Signed weak-form residuals ``(R_u, R_rho)`` of ``fan`` against ``phi``.

    Delta segments contribute ``int w0 t (phi_t + carried_u phi_x)(c t, t) dt``
    to the density equation.  ``eps`` defaults to ``fan.eps``.
    """
    eps = fan.eps if eps is None else float(eps)
    if fan.model == "base":
        law_flux = lambda u, rho: 0.5 * u * u + scaled_pressure(rho, eps, fan.law)  # noqa: E731
    else:
        law_flux = lambda u, rho: flux_u(fan.model, u, rho, eps)  # noqa: E731

    def body(x, t, u, rho):
        pt = phi.dt(x, t)
        px = phi.dx(x, t)
        return np.stack([u * pt + law_flux(u, rho) * px, rho * pt + rho * u * px])

    box, touches_initial = _clip_box(phi)
    r = np.zeros(2)
    if box[2] < box[3]:
        r += integrate(fan, phi, body, n, n_sub)

    if touches_initial:
        xa, xb = box[0], box[1]
        xn, xw = _nodes(_panels(xa, xb, [0.0], n_sub), n)
        p0 = phi(xn, 0.0)
        left = xn < 0.0
        L, R = fan.left, fan.right
        r[0] += np.sum(xw * p0 * np.where(left, L.u, R.u))
        r[1] += np.sum(xw * p0 * np.where(left, L.rho, R.rho))

    for d in fan.deltas:
        tn, tw = line_nodes(d.speed, box, n, n_sub)
        if tn.size:
            xn = d.speed * tn
            r[1] += np.sum(tw * d.weight(tn) * (phi.dt(xn, tn) + d.carried_u * phi.dx(xn, tn)))
    return float(r[0]), float(r[1])


def weak_residual(fan: WaveFan, phi: Bump, eps: float | None = None, n: int = 20, n_sub: int = 4) -> float:
    """``|R_u| + |R_rho|`` for a single test function."""
    ru, rr = weak_residual_components(fan, phi, eps, n, n_sub)
    return abs(ru) + abs(rr)


def max_weak_residual(fan: WaveFan, bumps=None, eps: float | None = None, **kw) -> float:
    """Largest :func:`weak_residual` over ``bumps`` (default :func:`standard_bumps`)."""
    bumps = standard_bumps() if bumps is None else bumps
    return max(weak_residual(fan, b, eps, **kw) for b in bumps)


def rho_pairing(fan: WaveFan, phi: Bump, n: int = 20, n_sub: int = 4) -> float:
    """``<rho, phi>`` over ``t > 0`` including delta masses ``int w0 t phi(c t, t) dt``."""
    val = float(integrate(fan, phi, lambda x, t, u, rho: rho * phi(x, t), n, n_sub))
    box, _ = _clip_box(phi)
    for d in fan.deltas:
        tn, tw = line_nodes(d.speed, box, n, n_sub)
        if tn.size:
            val += float(np.sum(tw * d.weight(tn) * phi(d.speed * tn, tn)))
    return val
