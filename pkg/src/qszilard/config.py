"""Reduced parameter, numerical controls and the SI units helper."""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

from .errors import DomainError

# CODATA 2018 (both exact or recommended values)
HBAR = 1.054571817e-34  # J s
K_B = 1.380649e-23  # J / K


def xi_from_physical(mass: float, length: float, temperature: float) -> float:
    """Reduced parameter pi^2 hbar^2 / (2 m L^2 k_B T) from SI inputs."""
    for name, value in (("mass", mass), ("length", length), ("temperature", temperature)):
        if not (math.isfinite(value) and value > 0):
            raise DomainError(f"{name} must be positive and finite, got {value!r}")
    return math.pi**2 * HBAR**2 / (2.0 * mass * length**2 * K_B * temperature)


def xi_sequence_from_physical(masses, lengths, temperatures) -> list[float]:
    """Map parallel (m, L, T) sequences onto reduced parameters.

    Sending L or T to infinity both drive xi to zero, so one xi-based API
    serves either limit.
    """
    return [xi_from_physical(m, L, T) for m, L, T in zip(masses, lengths, temperatures)]


@dataclass(frozen=True)
class Controls:
    """Numerical knobs shared by every series, root and quadrature routine."""

    series_tol: float = 1e-12
    max_terms: int = 5_000_000
    root_tol: float = 1e-12
    quad_steps: int = 1000

    def __post_init__(self):
        if not (0.0 < self.series_tol <= 1e-3):
            raise DomainError(f"series_tol must lie in (0, 1e-3], got {self.series_tol!r}")
        if self.max_terms < 16:
            raise DomainError(f"max_terms must be >= 16, got {self.max_terms!r}")
        if not (0.0 < self.root_tol <= 1e-6):
            raise DomainError(f"root_tol must lie in (0, 1e-6], got {self.root_tol!r}")
        if self.quad_steps < 2:
            raise DomainError(f"quad_steps must be >= 2, got {self.quad_steps!r}")


DEFAULT_CONTROLS = Controls()


@dataclass(frozen=True)
class ReducedConfig:
    """The single physical parameter ``xi`` plus numerical controls.

    Energies in this package are reported either in units of the ground
    level of the full well, E1(L) = pi^2 hbar^2 / (2 m L^2), or in units of
    k_B T; multiplying the former by ``xi`` gives the latter.
    """

    xi: float
    controls: Controls = field(default_factory=Controls)

    def __post_init__(self):
        if not (math.isfinite(self.xi) and self.xi > 0):
            raise DomainError(f"xi must be positive and finite, got {self.xi!r}")

    @classmethod
    def from_physical(cls, mass, length, temperature, controls=None):
        return cls(xi_from_physical(mass, length, temperature), controls or Controls())

    def with_xi(self, xi: float) -> "ReducedConfig":
        return replace(self, xi=xi)

    @property
    def series_tol(self):
        return self.controls.series_tol

    @property
    def max_terms(self):
        return self.controls.max_terms

    @property
    def root_tol(self):
        return self.controls.root_tol

    @property
    def quad_steps(self):
        return self.controls.quad_steps
