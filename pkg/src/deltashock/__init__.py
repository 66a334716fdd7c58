"""Riemann problems for the pressure-perturbed pressureless Euler system.

``u_t + (u^2/2 + eps p(rho))_x = 0``, ``rho_t + (rho u)_x = 0`` with
``p(rho) = (rho - 1) e^rho + 1``: exact wave fans, vanishing-pressure
limits (delta shocks, vacuum), entropy checks, the flux-shifted variant
and a Lax-Friedrichs reference solver.
"""

from deltashock.alt import alt_limit, alt_solve, alt_solve_delta, alt_solve_rarefaction, alt_solve_small_shock
from deltashock.entropy import entropy_limit_sweep, entropy_production_shock, entropy_production_total_limit, eta, q_flux
from deltashock.errors import (
    BlowUpError,
    DeltaShockError,
    DenominatorVanishing,
    DomainError,
    EpsilonTooLarge,
    OutsideBVWindow,
    OverflowAtVanishingEpsilon,
    PressureOverflowError,
    RarefactionOverlap,
)
from deltashock.fan import WaveFan
from deltashock.fv import Grid1D, compare_l1, lax_friedrichs_run
from deltashock.limit import epsilon_sweep, log_domain_rho_star, predicted_limit, weak_measure_error
from deltashock.pressure import DEFAULT_LAW, ExpPressureLaw, PressureLaw, lambda1, lambda2, p_eval, scaled_pressure
from deltashock.riemann import sample, solve, solve_equal_u, solve_two_rarefaction, solve_two_shock
from deltashock.states import RiemannData, State
from deltashock.weakform import GaussBump, PolyBump, standard_bumps, weak_residual

__version__ = "0.1.0"

__all__ = [
    "BlowUpError", "DEFAULT_LAW", "DeltaShockError", "DenominatorVanishing", "DomainError",
    "EpsilonTooLarge", "ExpPressureLaw", "GaussBump", "Grid1D", "OutsideBVWindow",
    "OverflowAtVanishingEpsilon", "PolyBump", "PressureLaw", "PressureOverflowError",
    "RarefactionOverlap", "RiemannData", "State", "WaveFan",
    "alt_limit", "alt_solve", "alt_solve_delta", "alt_solve_rarefaction", "alt_solve_small_shock",
    "compare_l1", "entropy_limit_sweep", "entropy_production_shock", "entropy_production_total_limit",
    "epsilon_sweep", "eta", "lambda1", "lambda2", "lax_friedrichs_run", "log_domain_rho_star",
    "p_eval", "predicted_limit", "q_flux", "sample", "scaled_pressure", "solve", "solve_equal_u",
    "solve_two_rarefaction", "solve_two_shock", "standard_bumps", "weak_measure_error", "weak_residual",
]
