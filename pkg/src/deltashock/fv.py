"""First-order Lax-Friedrichs reference solver.

Conserved variables are ``(u, rho)`` with flux ``(u^2/2 + eps p(rho), rho u)``.
The scheme uses no information from the exact solver, so it can serve as
an independent check of the exact fans.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from deltashock.errors import BlowUpError, DomainError
from deltashock.fan import WaveFan
from deltashock.pressure import DEFAULT_LAW, PressureLaw, _check_eps
from deltashock.states import RiemannData

_GAUSS3 = (np.array([-math.sqrt(0.6), 0.0, math.sqrt(0.6)]), np.array([5.0, 8.0, 5.0]) / 9.0)


@dataclass(frozen=True)
class Grid1D:
    """Uniform grid on ``[x_min, x_max]`` run to ``t_end`` with Courant number ``cfl``."""

    x_min: float
    x_max: float
    n_cells: int
    cfl: float
    t_end: float

    def __post_init__(self):
        if not self.x_min < 0.0 < self.x_max:
            raise DomainError("grid needs x_min < 0 < x_max")
        if int(self.n_cells) != self.n_cells or self.n_cells < 16:
            raise DomainError("grid needs an integer n_cells >= 16")
        if not 0.0 < self.cfl < 1.0:
            raise DomainError("cfl must lie in (0, 1)")
        if not self.t_end > 0.0:
            raise DomainError("t_end must be positive")

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / self.n_cells

    @property
    def edges(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n_cells + 1)

    @property
    def centers(self) -> np.ndarray:
        e = self.edges
        return 0.5 * (e[:-1] + e[1:])


@dataclass(frozen=True)
class GridSolution:
    """Cell averages at ``t_end`` plus bookkeeping for the density budget.

    ``mass_defect`` is ``|m(t_end) - m(0) - boundary inflow|`` relative to ``m(0)``.
    """

    grid: Grid1D
    eps: float
    u: np.ndarray
    rho: np.ndarray
    times: np.ndarray = field(repr=False)
    mass0: float = 0.0
    mass_defect: float = 0.0
    boundary_drift: float = 0.0

    @property
    def t(self) -> float:
        return float(self.times[-1])

    @property
    def n_steps(self) -> int:
        return len(self.times) - 1

    @property
    def mass(self) -> float:
        return float(np.sum(self.rho) * self.grid.dx)


def initial_cell_averages(data: RiemannData, grid: Grid1D) -> tuple[np.ndarray, np.ndarray]:
    """Exact cell averages of the step data (the cell containing ``x = 0`` is mixed)."""
    e = grid.edges
    frac_left = np.clip((0.0 - e[:-1]) / (e[1:] - e[:-1]), 0.0, 1.0)
    u = frac_left * data.left.u + (1.0 - frac_left) * data.right.u
    rho = frac_left * data.left.rho + (1.0 - frac_left) * data.right.rho
    return u, rho


def _flux(u, rho, eps, law):
    r = np.maximum(rho, 0.0)
    return 0.5 * u * u + eps * law.p(r), r * u


def _max_speed(u, rho, eps, law) -> float:
    r = np.maximum(rho, 0.0)
    return float(np.max(np.abs(u) + np.sqrt(eps * law.p_prime(r) * r)))


def lax_friedrichs_run(data: RiemannData, eps: float, grid: Grid1D, law: PressureLaw = DEFAULT_LAW,
                       max_steps: int = 10_000_000) -> GridSolution:
    """March the Lax-Friedrichs scheme to ``grid.t_end``.

    Ghost cells copy the boundary values.  ``dt = cfl dx / max|lambda|``
    with the last step shortened to land on ``t_end``.

    Raises
    ------
    BlowUpError
        If a cell becomes non-finite (carries the step index).
    DomainError
        If ``t_end`` lets waves reach the boundary, judged from the
        characteristic speeds of the data with a factor-two margin.
    """
    eps = _check_eps(eps)
    u, rho = initial_cell_averages(data, grid)
    u0b = (u[0], rho[0], u[-1], rho[-1])
    s0 = _max_speed(u, rho, eps, law)
    if 2.0 * s0 * grid.t_end >= min(-grid.x_min, grid.x_max):
        raise DomainError(f"t_end = {grid.t_end} lets waves (speed ~{s0:.3g}) reach the boundary")
    dx = grid.dx
    mass0 = float(np.sum(rho) * dx)
    inflow = 0.0
    t = 0.0
    times = [0.0]
    for step in range(1, max_steps + 1):
        if t >= grid.t_end:
            break
        smax = _max_speed(u, rho, eps, law)
        dt = grid.cfl * dx / smax if smax > 0.0 else grid.t_end - t
        if t + dt >= grid.t_end:
            dt = grid.t_end - t
        ue = np.concatenate(([u[0]], u, [u[-1]]))
        re = np.concatenate(([rho[0]], rho, [rho[-1]]))
        fu, fr = _flux(ue, re, eps, law)
        lam = 0.5 * dx / dt
        Fu = 0.5 * (fu[:-1] + fu[1:]) - lam * (ue[1:] - ue[:-1])
        Fr = 0.5 * (fr[:-1] + fr[1:]) - lam * (re[1:] - re[:-1])
        u = u - dt / dx * (Fu[1:] - Fu[:-1])
        rho = rho - dt / dx * (Fr[1:] - Fr[:-1])
        inflow += dt * (Fr[0] - Fr[-1])
        t = grid.t_end if dt == grid.t_end - t else t + dt
        times.append(t)
        if not (np.all(np.isfinite(u)) and np.all(np.isfinite(rho))):
            raise BlowUpError(f"non-finite cell at step {step} (t = {t:g})", step)
    else:
        raise BlowUpError(f"max_steps = {max_steps} reached before t_end", max_steps)

    mass = float(np.sum(rho) * dx)
    defect = abs(mass - mass0 - inflow) / max(abs(mass0), 1e-300)
    drift = max(abs(u[0] - u0b[0]), abs(rho[0] - u0b[1]), abs(u[-1] - u0b[2]), abs(rho[-1] - u0b[3]))
    return GridSolution(grid, eps, u, rho, np.asarray(times), mass0, defect, drift)


def _cell_nodes(grid: Grid1D) -> tuple[np.ndarray, np.ndarray]:
    z, w = _GAUSS3
    c = grid.centers[:, None]
    h = 0.5 * grid.dx
    return c + h * z[None, :], h * np.broadcast_to(w, (grid.n_cells, 3))


def exact_on_grid(fan: WaveFan, grid: Grid1D, t: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Exact solution at the 3-point Gauss nodes of every cell: ``(u, rho, weights)``, shape ``(n, 3)``."""
    x, w = _cell_nodes(grid)
    u, rho, _ = fan.sample_xi((x / t).ravel())
    return u.reshape(x.shape), rho.reshape(x.shape), w


def compare_l1(exact: WaveFan, grid_sol: GridSolution, eps: float | None = None) -> tuple[float, float]:
    """``(||u_h - u||_1, ||rho_h - rho||_1)`` with 3-point Gauss per cell."""
    if eps is not None and not math.isclose(eps, grid_sol.eps, rel_tol=1e-15, abs_tol=0.0):
        raise DomainError("exact fan and grid solution use different epsilon")
    u, rho, w = exact_on_grid(exact, grid_sol.grid, grid_sol.t)
    eu = float(np.sum(w * np.abs(grid_sol.u[:, None] - u)))
    er = float(np.sum(w * np.abs(grid_sol.rho[:, None] - rho)))
    return eu, er


def relative_l1(exact: WaveFan, grid_sol: GridSolution) -> tuple[float, float]:
    """L1 errors divided by the L1 norm of the exact deviation from the data states.

    The reference is ``||U - U_data||_1`` with ``U_data`` the step initial
    data, i.e. the size of the wave pattern itself.  Plain ``||u||_1`` is
    meaningless when the data velocities vanish.
    """
    g = grid_sol.grid
    u, rho, w = exact_on_grid(exact, g, grid_sol.t)
    x, _ = _cell_nodes(g)
    left = x < 0.0
    u_data = np.where(left, exact.left.u, exact.right.u)
    r_data = np.where(left, exact.left.rho, exact.right.rho)
    nu = float(np.sum(w * np.abs(u - u_data)))
    nr = float(np.sum(w * np.abs(rho - r_data)))
    eu, er = compare_l1(exact, grid_sol)
    return (eu / nu if nu > 0 else (0.0 if eu == 0 else math.inf),
            er / nr if nr > 0 else (0.0 if er == 0 else math.inf))
