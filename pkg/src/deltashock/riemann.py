"""Exact Riemann solver for the pressure-perturbed system.

Three cases are distinguished by the velocities of the data:

* ``u_l > u_r``: 1-shock, intermediate constant state, 2-shock;
* ``u_l = u_r``: a rarefaction and a shock (or nothing if the densities agree);
* ``u_l < u_r``: two rarefactions separated by vacuum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy import optimize

from deltashock.errors import EpsilonTooLarge, OverflowAtVanishingEpsilon, RarefactionOverlap
from deltashock.fan import (
    INF,
    ConstantState,
    RarefactionFan,
    Shock,
    VacuumRegion,
    WaveFan,
)
from deltashock.pressure import DEFAULT_LAW, PressureLaw, _check_eps, lambda1, lambda2
from deltashock.states import RiemannData, State
from deltashock.wave_curves import (
    _RTOL,
    _XTOL,
    curve_speed,
    hugoniot_residual,
    make_shock,
    rarefaction1_u_of_rho,
    rarefaction2_u_of_rho,
    shock1_rho_of_u,
    shock1_u_of_rho,
    shock2_rho_of_u,
    shock2_u_of_rho,
)


@dataclass(frozen=True)
class IntermediateState:
    """Constant state between the two waves.

    ``log_domain`` records whether the overflow-free branch evaluation was
    needed; ``log_eps_p_rho_star`` is ``log(eps * p(rho_star))`` and is
    always finite.  ``within_threshold`` is the solver's validity flag: it is
    only ``True`` because construction succeeded (the threshold itself is
    found by attempting the bracket).
    """

    u_star: float
    rho_star: float
    epsilon: float
    log_domain: bool = False
    log_eps_p_rho_star: float = math.nan
    within_threshold: bool = True

    @property
    def state(self) -> State:
        return State(self.u_star, self.rho_star)

    @property
    def eps_p_rho_star(self) -> float:
        return math.exp(self.log_eps_p_rho_star)

    def residuals(self, data: RiemannData, law: PressureLaw = DEFAULT_LAW) -> tuple[float, float]:
        """Hugoniot residuals of the two jumps ``left -> star`` and ``right -> star``."""
        m = self.state
        return (hugoniot_residual(data.left, m, self.epsilon, law),
                hugoniot_residual(data.right, m, self.epsilon, law))


def _log_eps_p(rho: float, eps: float, law: PressureLaw) -> float:
    return math.log(eps) + float(law.log_p(rho)) if eps > 0.0 else -INF


def _pos_eps(eps) -> float:
    eps = _check_eps(eps)
    if eps == 0.0:
        raise OverflowAtVanishingEpsilon("eps = 0 has no perturbed solution; use the limit solver")
    return eps


# --- u_l > u_r ---------------------------------------------------------------

def _two_shock_root(data: RiemannData, eps: float, law: PressureLaw, log_domain: bool) -> tuple[float, float]:
    L, R = data.left, data.right

    def r1(u):
        return shock1_rho_of_u(L, u, eps, law, log_domain=log_domain)

    def r2(u):
        return shock2_rho_of_u(R, u, eps, law, log_domain=log_domain)

    # end-point signs; both branches are defined on the closed interval [u_r, u_l]
    if not r2(L.u) > L.rho:
        raise EpsilonTooLarge(f"eps = {eps:g}: 2-shock branch does not exceed rho_l at u_l")
    if not r1(R.u) > R.rho:
        raise EpsilonTooLarge(f"eps = {eps:g}: 1-shock branch does not exceed rho_r at u_r")
    if L.rho == R.rho:
        # reflection symmetry: the branches meet at the midpoint exactly
        u_star = 0.5 * (L.u + R.u)
    else:
        u_star = optimize.brentq(lambda u: r1(u) - r2(u), R.u, L.u, xtol=_XTOL, rtol=_RTOL, maxiter=400)
    return u_star, r1(u_star)


def two_shock_intermediate(data: RiemannData, eps: float, law: PressureLaw = DEFAULT_LAW,
                           log_domain: bool | None = None) -> IntermediateState:
    """Intermediate state of the two-shock case.

    ``log_domain=None`` tries direct evaluation first and switches to the
    log-domain branches when the pressure overflows.
    """
    eps = _pos_eps(eps)
    if not data.left.u > data.right.u:
        raise ValueError("two-shock case needs u_l > u_r")
    if log_domain is None:
        try:
            u, r = _two_shock_root(data, eps, law, False)
            used = False
        except OverflowAtVanishingEpsilon:
            u, r = _two_shock_root(data, eps, law, True)
            used = True
    else:
        u, r = _two_shock_root(data, eps, law, log_domain)
        used = log_domain
    return IntermediateState(u, r, eps, used, _log_eps_p(r, eps, law))


def _assemble_two_shock(data: RiemannData, m: State, eps: float, law: PressureLaw) -> WaveFan:
    j1 = make_shock(data.left, m, 1)
    j2 = make_shock(m, data.right, 2)
    if not j1.speed < j2.speed:
        raise EpsilonTooLarge(f"shock speeds not ordered: s1={j1.speed}, s2={j2.speed}")
    return WaveFan((
        ConstantState(data.left, -INF, j1.speed),
        Shock(j1),
        ConstantState(m, j1.speed, j2.speed),
        Shock(j2),
        ConstantState(data.right, j2.speed, INF),
    ), eps, "base", law)


def solve_two_shock(data: RiemannData, eps: float, law: PressureLaw = DEFAULT_LAW,
                    log_domain: bool | None = None) -> tuple[IntermediateState, WaveFan]:
    """1-shock / constant / 2-shock solution for ``u_l > u_r``.

    Raises
    ------
    EpsilonTooLarge
        If the branch end-point sign condition fails (epsilon above the
        validity threshold).
    OverflowAtVanishingEpsilon
        If ``log_domain=False`` and the density exceeds the direct range.
    """
    mid = two_shock_intermediate(data, eps, law, log_domain)
    return mid, _assemble_two_shock(data, mid.state, mid.epsilon, law)


# --- u_l == u_r --------------------------------------------------------------

def solve_equal_u(data: RiemannData, eps: float, law: PressureLaw = DEFAULT_LAW
                  ) -> tuple[IntermediateState | None, WaveFan]:
    """Rarefaction + shock for equal velocities.

    ``rho_r < rho_l``: 1-rarefaction then 2-shock; ``rho_l < rho_r``: 1-shock
    then 2-rarefaction; equal densities give the constant solution and
    ``None`` as intermediate state.
    """
    eps = _pos_eps(eps)
    L, R = data.left, data.right
    if L.u != R.u:
        raise ValueError("equal-velocity case needs u_l == u_r")
    if L.rho == R.rho:
        return None, WaveFan((ConstantState(L, -INF, INF),), eps, "base", law)

    if R.rho < L.rho:
        def h(r):
            return rarefaction1_u_of_rho(L, r, eps, law) - shock2_u_of_rho(R, r, eps, law)
        lo, hi = R.rho, L.rho
    else:
        def h(r):
            return shock1_u_of_rho(L, r, eps, law) - rarefaction2_u_of_rho(R, r, eps, law, anchor_side="right")
        lo, hi = L.rho, R.rho
    if max(L.rho, R.rho) > law.rho_max:
        raise OverflowAtVanishingEpsilon("density beyond the direct range")
    rho = optimize.brentq(h, lo, hi, xtol=_XTOL, rtol=_RTOL, maxiter=400)

    if R.rho < L.rho:
        u = rarefaction1_u_of_rho(L, rho, eps, law)
        m = State(u, rho)
        j2 = make_shock(m, R, 2)
        a = float(curve_speed(L, 1, L.rho, eps, law))
        b = float(curve_speed(L, 1, rho, eps, law))
        segs = (
            ConstantState(L, -INF, a),
            RarefactionFan(1, L, m, a, b, eps, "left", law),
            ConstantState(m, b, j2.speed),
            Shock(j2),
            ConstantState(R, j2.speed, INF),
        )
    else:
        u = rarefaction2_u_of_rho(R, rho, eps, law, anchor_side="right")
        m = State(u, rho)
        j1 = make_shock(L, m, 1)
        a = float(curve_speed(R, 2, rho, eps, law))
        b = float(curve_speed(R, 2, R.rho, eps, law))
        segs = (
            ConstantState(L, -INF, j1.speed),
            Shock(j1),
            ConstantState(m, j1.speed, a),
            RarefactionFan(2, R, m, a, b, eps, "right", law),
            ConstantState(R, b, INF),
        )
    mid = IntermediateState(u, rho, eps, False, _log_eps_p(rho, eps, law))
    return mid, WaveFan(segs, eps, "base", law)


# --- u_l < u_r ---------------------------------------------------------------

def vacuum_edges(data: RiemannData, eps: float, law: PressureLaw = DEFAULT_LAW) -> tuple[float, float]:
    """Velocities ``u_1(0)`` and ``u_2(0)`` where the rarefaction curves reach vacuum."""
    eps = _check_eps(eps)
    a = rarefaction1_u_of_rho(data.left, 0.0, eps, law)
    b = rarefaction2_u_of_rho(data.right, 0.0, eps, law, anchor_side="right")
    return float(a), float(b)


def solve_two_rarefaction(data: RiemannData, eps: float, law: PressureLaw = DEFAULT_LAW) -> WaveFan:
    """1-rarefaction, vacuum with ``u = x/t``, 2-rarefaction for ``u_l < u_r``.

    Raises
    ------
    RarefactionOverlap
        If ``u_1(0) >= u_2(0)``, i.e. epsilon is too large for a vacuum.
    """
    eps = _pos_eps(eps)
    L, R = data.left, data.right
    if not L.u < R.u:
        raise ValueError("two-rarefaction case needs u_l < u_r")
    v1, v2 = vacuum_edges(data, eps, law)
    if not v1 < v2:
        raise RarefactionOverlap(f"eps = {eps:g}: rarefaction curves meet before vacuum ({v1} >= {v2})")
    a = float(lambda1(L.u, L.rho, eps, law))
    b = float(lambda2(R.u, R.rho, eps, law))
    return WaveFan((
        ConstantState(L, -INF, a),
        RarefactionFan(1, L, State(v1, 0.0), a, v1, eps, "left", law),
        VacuumRegion(v1, v2),
        RarefactionFan(2, R, State(v2, 0.0), v2, b, eps, "right", law),
        ConstantState(R, b, INF),
    ), eps, "base", law)


# --- dispatch ----------------------------------------------------------------

def solve(data: RiemannData, eps: float, law: PressureLaw = DEFAULT_LAW) -> WaveFan:
    """Admissible self-similar solution for any Riemann data."""
    case = data.case
    if case == "shock":
        return solve_two_shock(data, eps, law)[1]
    if case == "equal":
        return solve_equal_u(data, eps, law)[1]
    return solve_two_rarefaction(data, eps, law)


def intermediate(data: RiemannData, eps: float, law: PressureLaw = DEFAULT_LAW) -> IntermediateState | None:
    """Intermediate state for the shock and equal-velocity cases (``None`` otherwise)."""
    case = data.case
    if case == "shock":
        return two_shock_intermediate(data, eps, law)
    if case == "equal":
        return solve_equal_u(data, eps, law)[0]
    return None


def sample(fan: WaveFan, x: float, t: float) -> State:
    """State at ``(x, t)``, right-continuous across discontinuities."""
    return fan.sample(x, t)


def weak_form_residual(fan: WaveFan, eps: float, phi, **kw) -> float:
    """Weak-form residual of ``fan`` against the bump ``phi`` (see :mod:`deltashock.weakform`)."""
    from deltashock.weakform import weak_residual
    return weak_residual(fan, phi, eps=eps, **kw)


__all__ = [
    "IntermediateState",
    "two_shock_intermediate",
    "solve_two_shock",
    "solve_equal_u",
    "solve_two_rarefaction",
    "vacuum_edges",
    "solve",
    "intermediate",
    "sample",
    "weak_form_residual",
]
