"""Command-line front end.

Exit codes: 0 success, 2 usage/argument error (including data outside a
solver's domain), 3 I/O error, 4 numerical failure (for instance epsilon
above the two-shock threshold).
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field

import numpy as np

from deltashock.alt import alt_limit, alt_solve
from deltashock.entropy import entropy_limit_sweep
from deltashock.errors import DeltaShockError, DomainError
from deltashock.fv import Grid1D, compare_l1, exact_on_grid, lax_friedrichs_run, relative_l1
from deltashock.limit import epsilon_sweep, predicted_limit
from deltashock.riemann import intermediate, solve
from deltashock.serialize import emit_profile, emit_sweep, emit_table
from deltashock.states import RiemannData

COMMANDS = ("solve", "sample", "sweep", "limit", "entropy", "alt", "oracle")
EXIT_USAGE, EXIT_IO, EXIT_NUMERIC = 2, 3, 4

_HINTS = {
    "EpsilonTooLarge": "epsilon is above the two-shock validity threshold; try a smaller --eps",
    "RarefactionOverlap": "epsilon is too large for a vacuum to open between the rarefactions",
    "OutsideBVWindow": "u_l - u_r exceeds the bounded-solution window; the solution is a delta shock",
    "DenominatorVanishing": "u_l - u_r >= 2 eps: no bounded solution",
    "OverflowAtVanishingEpsilon": "the pressure overflows; the log-domain path covers eps >= 1e-308",
    "BlowUpError": "the finite-volume run became non-finite; reduce --cfl",
}


@dataclass
class RunConfig:
    command: str
    data: RiemannData
    eps: list[float] = field(default_factory=list)
    model: str = "base"
    t: float = 1.0
    x_min: float = -1.0
    x_max: float = 1.0
    n: int = 201
    cfl: float = 0.9
    out: str | None = None
    fmt: str = "csv"

    @property
    def x(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="deltashock",
                                description="Riemann solutions of the pressure-perturbed pressureless system")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--ul", type=float, required=True, help="left velocity")
    p.add_argument("--rhol", type=float, required=True, help="left density (> 0)")
    p.add_argument("--ur", type=float, required=True, help="right velocity")
    p.add_argument("--rhor", type=float, required=True, help="right density (> 0)")
    p.add_argument("--eps", type=float, action="append", default=[],
                   help="perturbation size; repeat for sweeps (strictly decreasing)")
    p.add_argument("--model", choices=("base", "alt"), default="base")
    p.add_argument("--t", type=float, default=1.0, help="sampling / final time")
    p.add_argument("--xmin", type=float, default=-1.0)
    p.add_argument("--xmax", type=float, default=1.0)
    p.add_argument("--n", type=int, default=201, help="sample points, or cells for 'oracle'")
    p.add_argument("--cfl", type=float, default=0.9)
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv", dest="fmt")
    return p


def parse_args(argv=None) -> RunConfig:
    """Parse and validate; usage errors exit with status 2."""
    parser = build_parser()
    a = parser.parse_args(argv)
    for flag in ("rhol", "rhor"):
        if not getattr(a, flag) > 0.0:
            parser.error(f"--{flag} must be positive (got {getattr(a, flag)})")
    for flag in ("ul", "ur", "t", "xmin", "xmax", "cfl"):
        if not np.isfinite(getattr(a, flag)):
            parser.error(f"--{flag} must be finite")
    if any(not e > 0.0 for e in a.eps):
        parser.error("--eps must be positive")
    if any(b >= a_ for a_, b in zip(a.eps[:-1], a.eps[1:])):
        parser.error("--eps values must be strictly decreasing")
    needs_eps = a.command in ("solve", "sample", "sweep", "entropy", "alt", "oracle")
    if needs_eps and not a.eps:
        parser.error(f"'{a.command}' requires --eps")
    if a.command in ("solve", "sample", "alt", "oracle") and len(a.eps) > 1:
        parser.error(f"'{a.command}' takes a single --eps")
    if not a.t > 0.0:
        parser.error("--t must be positive")
    if not a.xmin < a.xmax:
        parser.error("--xmin must be below --xmax")
    if a.n < 2:
        parser.error("--n must be at least 2")
    if a.command == "oracle":
        if not 0.0 < a.cfl < 1.0:
            parser.error("--cfl must lie in (0, 1)")
        if a.n < 16:
            parser.error("--n must be at least 16 cells for 'oracle'")
        if not a.xmin < 0.0 < a.xmax:
            parser.error("'oracle' needs --xmin < 0 < --xmax")
    if a.command == "sweep" and not a.ul > a.ur:
        parser.error("'sweep' needs --ul > --ur (two-shock data)")
    if a.command in ("sweep", "entropy", "oracle") and a.model != "base":
        parser.error(f"'{a.command}' supports --model base only")
    return RunConfig(a.command, RiemannData.from_values(a.ul, a.rhol, a.ur, a.rhor), list(a.eps), a.model,
                     a.t, a.xmin, a.xmax, a.n, a.cfl, a.out, a.fmt)


def _meta(cfg: RunConfig, **extra) -> dict:
    ul, rl, ur, rr = cfg.data.as_tuple()
    m = {"command": cfg.command, "model": cfg.model, "u_l": ul, "rho_l": rl, "u_r": ur, "rho_r": rr}
    if cfg.eps:
        m["eps"] = cfg.eps[0] if len(cfg.eps) == 1 else None
    m.update(extra)
    return m


def _solve_fan(cfg: RunConfig):
    eps = cfg.eps[0]
    return alt_solve(cfg.data, eps) if cfg.model == "alt" else solve(cfg.data, eps)


def run(cfg: RunConfig) -> int:
    c = cfg.command
    if c == "solve":
        fan = _solve_fan(cfg)
        extra = {}
        if cfg.model == "base":
            mid = intermediate(cfg.data, cfg.eps[0])
            if mid is not None:
                extra = {"u_star": mid.u_star, "rho_star": mid.rho_star,
                         "log_eps_p_rho_star": mid.log_eps_p_rho_star, "log_domain": mid.log_domain}
        waves = fan.describe()
        keys = sorted({k for w in waves for k in w}, key=lambda k: (k != "kind", k))
        emit_table(keys, [[w.get(k) for k in keys] for w in waves], cfg.out, cfg.fmt, _meta(cfg, **extra))
    elif c in ("sample", "alt"):
        if c == "alt":
            cfg.model = "alt"
        fan = _solve_fan(cfg)
        emit_profile(fan, cfg.x, cfg.t, cfg.out, cfg.fmt, _meta(cfg, t=cfg.t))
    elif c == "limit":
        lim = alt_limit(cfg.data) if cfg.model == "alt" else predicted_limit(cfg.data)
        emit_profile(lim.fan, cfg.x, cfg.t, cfg.out, cfg.fmt, _meta(cfg, kind=lim.kind, t=cfg.t))
    elif c == "sweep":
        emit_sweep(epsilon_sweep(cfg.data, cfg.eps), cfg.out, cfg.fmt, _meta(cfg))
    elif c == "entropy":
        recs = entropy_limit_sweep(cfg.data, cfg.eps)
        header = ("eps", "production_1", "production_2", "total", "cross_term", "limit_total", "error")
        rows = []
        for r in recs:
            p = list(r.productions) + [None] * (2 - len(r.productions))
            rows.append((r.eps, p[0], p[1], r.total, r.cross, r.limit, r.error))
        emit_table(header, rows, cfg.out, cfg.fmt, _meta(cfg))
    elif c == "oracle":
        eps = cfg.eps[0]
        grid = Grid1D(cfg.x_min, cfg.x_max, cfg.n, cfg.cfl, cfg.t)
        sol = lax_friedrichs_run(cfg.data, eps, grid)
        fan = solve(cfg.data, eps)
        eu, er = compare_l1(fan, sol, eps)
        ru, rr = relative_l1(fan, sol)
        ue, re, w = exact_on_grid(fan, grid, cfg.t)
        ue = (ue * w).sum(axis=1) / grid.dx
        re = (re * w).sum(axis=1) / grid.dx
        header = ("x", "t", "u_fv", "rho_fv", "u_exact", "rho_exact")
        rows = [(x, cfg.t, a, b, cc, d) for x, a, b, cc, d in zip(grid.centers, sol.u, sol.rho, ue, re)]
        emit_table(header, rows, cfg.out, cfg.fmt,
                   _meta(cfg, t=cfg.t, n_cells=cfg.n, steps=sol.n_steps, l1_u=eu, l1_rho=er,
                         rel_u=ru, rel_rho=rr, mass_defect=sol.mass_defect))
    else:  # pragma: no cover - argparse restricts the choices
        raise ValueError(c)
    return 0


def main(argv=None) -> int:
    cfg = parse_args(argv)
    try:
        return run(cfg)
    except OSError as exc:
        print(f"deltashock: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except DomainError as exc:
        print(f"deltashock: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DeltaShockError, ArithmeticError) as exc:
        hint = _HINTS.get(type(exc).__name__, "")
        print(f"deltashock: {type(exc).__name__}: {exc}" + (f" ({hint})" if hint else ""), file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
