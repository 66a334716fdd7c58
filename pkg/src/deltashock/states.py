"""Plain state containers."""

from __future__ import annotations

import math
from dataclasses import dataclass

from deltashock.errors import DomainError


@dataclass(frozen=True)
class State:
    """Velocity/density pair. ``rho == 0`` only occurs inside vacuum regions."""

    u: float
    rho: float

    def __post_init__(self):
        if not (math.isfinite(self.u) and math.isfinite(self.rho)):
            raise DomainError(f"non-finite state ({self.u}, {self.rho})")
        if self.rho < 0.0:
            raise DomainError(f"negative density {self.rho}")

    def as_tuple(self) -> tuple[float, float]:
        return (self.u, self.rho)


@dataclass(frozen=True)
class RiemannData:
    """Left/right constant states of a Riemann problem (both densities positive)."""

    left: State
    right: State

    def __post_init__(self):
        if self.left.rho <= 0.0 or self.right.rho <= 0.0:
            raise DomainError("Riemann data needs positive densities on both sides")

    @classmethod
    def from_values(cls, u_l: float, rho_l: float, u_r: float, rho_r: float) -> "RiemannData":
        return cls(State(float(u_l), float(rho_l)), State(float(u_r), float(rho_r)))

    @property
    def case(self) -> str:
        """``"shock"`` (u_l > u_r), ``"equal"`` or ``"rarefaction"`` (u_l < u_r)."""
        if self.left.u > self.right.u:
            return "shock"
        if self.left.u == self.right.u:
            return "equal"
        return "rarefaction"

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.left.u, self.left.rho, self.right.u, self.right.rho)
