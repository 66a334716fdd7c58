"""Self-similar wave fans and pointwise sampling.

A :class:`WaveFan` is an ordered tuple of segments in the similarity
variable ``xi = x/t``.  Interval segments (constants, rarefactions, vacuum)
own a half-open range ``[xi_lo, xi_hi)``; point segments (shocks, contacts,
deltas) sit on the boundary between two intervals.  Sampling on a
discontinuity returns the state on its right.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, Union

import numpy as np

from deltashock.pressure import DEFAULT_LAW, PressureLaw
from deltashock.states import State
from deltashock.wave_curves import ShockJump, _curve_u, fan_densities, rarefaction_fan_state

INF = math.inf


@dataclass(frozen=True)
class ConstantState:
    state: State
    xi_lo: float
    xi_hi: float
    tag: str = "constant"


@dataclass(frozen=True)
class Shock:
    jump: ShockJump
    tag: str = "shock"

    @property
    def speed(self) -> float:
        return self.jump.speed


@dataclass(frozen=True)
class Contact:
    speed: float
    left: State
    right: State
    tag: str = "contact"


@dataclass(frozen=True)
class DeltaSegment:
    """Dirac mass ``weight_coefficient * t`` on ``x = speed * t`` carrying velocity ``carried_u``."""

    speed: float
    weight_coefficient: float
    carried_u: float
    eps_correction: float = 0.0
    tag: str = "delta"

    def weight(self, t):
        return self.weight_coefficient * np.asarray(t, dtype=float)


@dataclass(frozen=True)
class RarefactionFan:
    """Centred fan of the base model along the ``family`` curve through ``anchor``."""

    family: int
    anchor: State
    end: State
    xi_lo: float
    xi_hi: float
    eps: float
    anchor_side: str = "left"
    law: PressureLaw = field(default=DEFAULT_LAW, compare=False)
    tag: str = "fan"

    def states(self, xi) -> tuple[np.ndarray, np.ndarray]:
        lo, hi = sorted((self.anchor.rho, self.end.rho))
        rho = fan_densities(self.anchor, self.family, xi, self.eps, self.law, lo, hi)
        u = np.asarray(_curve_u(self.anchor, rho, self.family, self.eps, self.law), dtype=float)
        return u, rho

    def state_at(self, xi: float) -> State:
        return rarefaction_fan_state(self.anchor, self.family, xi, self.eps, self.law,
                                     anchor_side=self.anchor_side, rho_end=self.end.rho)


@dataclass(frozen=True)
class AltRarefactionFan:
    """2-rarefaction of the flux-shifted model: ``u = xi - eps``, ``rho = rho_r exp((xi - u_r - eps)/eps)``."""

    right: State
    xi_lo: float
    xi_hi: float
    eps: float
    family: int = 2
    tag: str = "fan"

    def states(self, xi) -> tuple[np.ndarray, np.ndarray]:
        xi = np.clip(np.asarray(xi, dtype=float), self.xi_lo, self.xi_hi)
        u = xi - self.eps
        rho = self.right.rho * np.exp((xi - (self.right.u + self.eps)) / self.eps)
        return u, rho

    def state_at(self, xi: float) -> State:
        u, rho = self.states(xi)
        return State(float(u), float(rho))


@dataclass(frozen=True)
class VacuumRegion:
    """``rho = 0`` with the least-variation filling ``u = x/t``."""

    xi_lo: float
    xi_hi: float
    tag: str = "vacuum"

    def states(self, xi):
        xi = np.asarray(xi, dtype=float)
        return xi.copy(), np.zeros_like(xi)


Interval = Union[ConstantState, RarefactionFan, AltRarefactionFan, VacuumRegion]
Point = Union[Shock, Contact, DeltaSegment]
Segment = Union[Interval, Point]

_POINTS = (Shock, Contact, DeltaSegment)


def is_point(seg) -> bool:
    return isinstance(seg, _POINTS)


def point_speed(seg) -> float:
    return seg.speed


@dataclass(frozen=True)
class WaveFan:
    """Ordered, immutable self-similar solution.

    ``model`` is ``"base"`` (pressure-perturbed), ``"alt"`` (flux-shifted)
    or ``"limit"`` (vanishing-pressure limit object).
    """

    segments: tuple
    eps: float
    model: str = "base"
    law: PressureLaw = field(default=DEFAULT_LAW, compare=False)

    def __post_init__(self):
        segs = tuple(self.segments)
        object.__setattr__(self, "segments", segs)
        if not segs or is_point(segs[0]) or is_point(segs[-1]):
            raise ValueError("a fan starts and ends with an interval segment")
        if segs[0].xi_lo != -INF or segs[-1].xi_hi != INF:
            raise ValueError("outer segments must extend to +-infinity")
        prev_hi = -INF
        for i, seg in enumerate(segs):
            if is_point(seg):
                if is_point(segs[i - 1]) or is_point(segs[i + 1]):
                    raise ValueError("two point segments may not be adjacent")
                if not (segs[i - 1].xi_hi == seg.speed == segs[i + 1].xi_lo):
                    raise ValueError(f"discontinuity at {seg.speed} does not match its neighbours")
            else:
                if seg.xi_lo != prev_hi and not (i > 0 and is_point(segs[i - 1])):
                    raise ValueError(f"gap/overlap before segment {i}")
                if not seg.xi_lo < seg.xi_hi:
                    raise ValueError(f"empty interval in segment {i}: [{seg.xi_lo}, {seg.xi_hi})")
                if i > 0 and not is_point(segs[i - 1]) and segs[i - 1].xi_hi != seg.xi_lo:
                    raise ValueError(f"intervals {i - 1} and {i} are not contiguous")
                prev_hi = seg.xi_hi

    # -- structure ------------------------------------------------------------

    @property
    def left(self) -> State:
        return self.segments[0].state

    @property
    def right(self) -> State:
        return self.segments[-1].state

    def intervals(self) -> Iterator[Interval]:
        return (s for s in self.segments if not is_point(s))

    def points(self) -> Iterator[Point]:
        return (s for s in self.segments if is_point(s))

    @property
    def shocks(self) -> list[ShockJump]:
        return [s.jump for s in self.segments if isinstance(s, Shock)]

    @property
    def deltas(self) -> list[DeltaSegment]:
        return [s for s in self.segments if isinstance(s, DeltaSegment)]

    def breakpoints(self) -> list[float]:
        """Finite similarity speeds where the solution or its derivative jumps."""
        out = []
        for seg in self.intervals():
            for v in (seg.xi_lo, seg.xi_hi):
                if math.isfinite(v) and v not in out:
                    out.append(v)
        return sorted(out)

    def interval_tags(self) -> list[str]:
        """Region tag for every interval segment.

        Outer data states are ``constant``; an intermediate constant state
        bounded by a discontinuity is tagged ``shock`` (a shocked region).
        """
        tags = []
        segs = self.segments
        n = len(segs)
        for i, seg in enumerate(segs):
            if is_point(seg):
                continue
            tag = seg.tag
            if isinstance(seg, ConstantState) and 0 < i < n - 1:
                if is_point(segs[i - 1]) or is_point(segs[i + 1]):
                    tag = "shock"
            tags.append(tag)
        return tags

    # -- sampling -------------------------------------------------------------

    def sample_xi(self, xi) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Vectorised evaluation at similarity speeds ``xi`` (right-continuous)."""
        xi = np.atleast_1d(np.asarray(xi, dtype=float))
        u = np.empty_like(xi)
        rho = np.empty_like(xi)
        tag = np.empty(xi.shape, dtype=object)
        ivals = list(self.intervals())
        tags = self.interval_tags()
        for seg, tg in zip(ivals, tags):
            mask = (xi >= seg.xi_lo) & (xi < seg.xi_hi)
            if not np.any(mask):
                continue
            if isinstance(seg, ConstantState):
                u[mask] = seg.state.u
                rho[mask] = seg.state.rho
            else:
                uu, rr = seg.states(xi[mask])
                u[mask] = uu
                rho[mask] = rr
            tag[mask] = tg
        for seg in self.points():
            hit = xi == seg.speed
            if np.any(hit):
                tag[hit] = seg.tag
        return u, rho, tag

    def sample(self, x: float, t: float) -> State:
        """State at ``(x, t)``; ``t`` must be positive."""
        if not t > 0.0:
            raise ValueError("sampling needs t > 0")
        u, rho, _ = self.sample_xi(x / t)
        return State(float(u[0]), float(rho[0]))

    def continuity_defects(self) -> list[float]:
        """Mismatch between neighbouring intervals that meet without a discontinuity."""
        out = []
        segs = self.segments
        for a, b in zip(segs[:-1], segs[1:]):
            if is_point(a) or is_point(b):
                continue
            ua, ra, _ = self.sample_xi(np.nextafter(a.xi_hi, -INF))
            ub, rb, _ = self.sample_xi(b.xi_lo)
            out.append(max(abs(ua[0] - ub[0]), abs(ra[0] - rb[0])))
        return out

    def describe(self) -> list[dict]:
        """JSON-friendly description of every segment (infinite bounds as ``None``)."""
        def num(v):
            return None if not math.isfinite(v) else float(v)

        out = []
        tags = iter(self.interval_tags())
        for seg in self.segments:
            if isinstance(seg, ConstantState):
                out.append({"kind": "constant", "region_tag": next(tags), "xi_lo": num(seg.xi_lo),
                            "xi_hi": num(seg.xi_hi), "u": seg.state.u, "rho": seg.state.rho})
            elif isinstance(seg, (RarefactionFan, AltRarefactionFan)):
                next(tags)
                d = {"kind": "rarefaction", "family": seg.family, "xi_lo": num(seg.xi_lo),
                     "xi_hi": num(seg.xi_hi)}
                if isinstance(seg, RarefactionFan):
                    d.update(anchor_u=seg.anchor.u, anchor_rho=seg.anchor.rho, anchor_side=seg.anchor_side,
                             end_u=seg.end.u, end_rho=seg.end.rho)
                out.append(d)
            elif isinstance(seg, VacuumRegion):
                next(tags)
                out.append({"kind": "vacuum", "xi_lo": num(seg.xi_lo), "xi_hi": num(seg.xi_hi)})
            elif isinstance(seg, Shock):
                j = seg.jump
                out.append({"kind": "shock", "family": j.family, "speed": j.speed,
                            "u_left": j.left.u, "rho_left": j.left.rho,
                            "u_right": j.right.u, "rho_right": j.right.rho})
            elif isinstance(seg, Contact):
                out.append({"kind": "contact", "speed": seg.speed, "u_left": seg.left.u,
                            "rho_left": seg.left.rho, "u_right": seg.right.u, "rho_right": seg.right.rho})
            elif isinstance(seg, DeltaSegment):
                out.append({"kind": "delta", "speed": seg.speed, "w0": seg.weight_coefficient,
                            "carried_u": seg.carried_u, "eps_correction": seg.eps_correction})
        return out
