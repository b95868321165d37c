"""Thermal bookkeeping for one particle in a (possibly split) infinite well.

All Boltzmann exponents are written through ``alpha = xi / w**2`` where
``w`` is the width of the well as a fraction of the full width ``L``.
Energies returned by :func:`internal_energy` are in k_B T, entropies in k_B.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import kernels
from .config import DEFAULT_CONTROLS, Controls
from .errors import DomainError, SeriesRangeError

MIN_ALPHA = 1e-12
LN2 = math.log(2.0)


def _effective_alpha(xi, w):
    if not (math.isfinite(xi) and xi > 0):
        raise DomainError(f"xi must be positive and finite, got {xi!r}")
    if not (0.0 < w <= 1.0):
        raise DomainError(f"width fraction must lie in (0, 1], got {w!r}")
    alpha = xi / (w * w)
    if alpha < MIN_ALPHA:
        raise SeriesRangeError(
            f"xi/w^2 = {alpha:.3g} is below {MIN_ALPHA:g}; use the asymptotic forms in qszilard.limits"
        )
    return alpha


class PartitionSum(NamedTuple):
    value: float
    terms: int
    tail_bound: float  # bound on what the truncation dropped
    method: str  # "direct" or "theta-dual"


def partition_sum(xi: float, w: float = 1.0, controls: Controls = DEFAULT_CONTROLS) -> PartitionSum:
    """Z = sum_{n>=1} exp(-(xi/w^2) n^2) with a truncation certificate.

    For ``xi/w^2`` below the dual threshold the Poisson-resummed form
    ``(sqrt(pi/alpha) * theta - 1) / 2`` is used; a handful of dual terms
    then replaces thousands of direct ones.
    """
    alpha = _effective_alpha(xi, w)
    tol = controls.series_tol
    if alpha < kernels.DUAL_THRESHOLD:
        value = kernels.theta_dual_z(alpha, tol)
        _, _, _, terms = kernels.gauss_moments(alpha, tol, controls.max_terms)
        nxt = terms + 1
        tail = math.sqrt(math.pi / alpha) * math.exp(-math.pi**2 * nxt * nxt / alpha)
        return PartitionSum(value, terms, tail, "theta-dual")
    value, terms = kernels.direct_z(alpha, tol, controls.max_terms)
    tail = 0.5 * math.sqrt(math.pi / alpha) * math.erfc(terms * math.sqrt(alpha))
    return PartitionSum(value, terms, tail, "direct")


def partition_function(xi: float, w: float = 1.0, controls: Controls = DEFAULT_CONTROLS) -> float:
    return partition_sum(xi, w, controls).value


def truncation_index(alpha: float, tol: float) -> int:
    """Smallest K whose dropped tail is negligible for probabilities and energies.

    Chosen so that ``exp(-alpha K^2) (1 + alpha K^2)^2 < tol * exp(-alpha)``;
    the energy weight keeps internal energies, not only norms, within ``tol``.
    """
    x = alpha + math.log(1.0 / tol)
    for _ in range(30):
        x = alpha + math.log(1.0 / tol) + 2.0 * math.log1p(x)
    return max(2, math.ceil(math.sqrt(x / alpha)))


@dataclass(frozen=True, eq=False)
class ThermalState:
    """Diagonal state: occupation ``probs[k-1]`` of level ``k`` of a well of width ``w L``.

    ``energies_reduced`` are in units of E1(L). ``equilibrium`` is False for
    states that are not Boltzmann at the bath temperature (after insertion,
    or with occupations frozen during an adiabatic stroke).
    """

    width_fraction: float
    probs: np.ndarray
    energies_reduced: np.ndarray
    equilibrium: bool

    def __post_init__(self):
        if self.probs.shape != self.energies_reduced.shape:
            raise DomainError("probs and energies_reduced must have the same length")

    @property
    def size(self) -> int:
        return len(self.probs)

    def norm(self) -> float:
        return float(np.sum(self.probs))

    def at_width(self, w: float) -> "ThermalState":
        """Same occupations on the levels of a well of width ``w L``."""
        if not (0.0 < w <= 1.0):
            raise DomainError(f"width fraction must lie in (0, 1], got {w!r}")
        k = np.arange(1, self.size + 1, dtype=float)
        return ThermalState(w, self.probs, k * k / (w * w), False)

    def to_dict(self) -> dict:
        return {
            "width_fraction": self.width_fraction,
            "equilibrium": self.equilibrium,
            "probs": self.probs.tolist(),
            "energies_reduced": self.energies_reduced.tolist(),
            "units": {"energies_reduced": "E1"},
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ThermalState":
        return cls(
            float(d["width_fraction"]),
            np.asarray(d["probs"], dtype=float),
            np.asarray(d["energies_reduced"], dtype=float),
            bool(d["equilibrium"]),
        )


def equilibrium_state(xi: float, w: float = 1.0, controls: Controls = DEFAULT_CONTROLS) -> ThermalState:
    alpha = _effective_alpha(xi, w)
    lnZ = math.log(partition_function(xi, w, controls))
    K = truncation_index(alpha, controls.series_tol)
    if K > controls.max_terms:
        raise SeriesRangeError(f"{K} levels needed at xi/w^2={alpha:.3g}, cap is {controls.max_terms}")
    n = np.arange(1, K + 1, dtype=float)
    probs = np.exp(-alpha * n * n - lnZ)
    return ThermalState(w, probs, n * n / (w * w), True)


def post_insertion_state(xi: float, controls: Controls = DEFAULT_CONTROLS) -> ThermalState:
    """State of one half-well right after an adiabatic, impenetrable insertion.

    Half-well level k collects the occupation of full-well levels 2k-1 and
    2k and sits at the energy of level 2k.
    """
    full = equilibrium_state(xi, 1.0, controls)
    P = full.probs
    if len(P) % 2:
        P = np.append(P, 0.0)
    pairs = P[0::2] + P[1::2]
    k = np.arange(1, len(pairs) + 1, dtype=float)
    return ThermalState(0.5, pairs, 4.0 * k * k, False)


def internal_energy(state: ThermalState, xi: float) -> float:
    """Mean energy in k_B T."""
    return float(xi * np.sum(state.probs * state.energies_reduced))


def entropy(state: ThermalState) -> float:
    """von Neumann entropy of a diagonal state, in k_B; 0 ln 0 is 0."""
    p = state.probs[state.probs > 1e-300]
    return float(-np.sum(p * np.log(p)))


@dataclass(frozen=True)
class InfoSplit:
    """Entropies (k_B) created by the insertion.

    ``s_classical`` is the which-side entropy, ``h_p`` the entropy of the
    occupations inside one half, and ``delta_q`` the part of the initial
    entropy that the level merging removed.
    """

    s_classical: float
    h_p: float
    delta_q: float

    def to_dict(self) -> dict:
        return {
            "s_classical": self.s_classical,
            "h_p": self.h_p,
            "delta_q": self.delta_q,
            "units": "kB",
        }


def quantum_deficit(xi: float, controls: Controls = DEFAULT_CONTROLS) -> float:
    """``S0/k_B - h(p)`` from the pairwise-regrouped series (no subtraction)."""
    _effective_alpha(xi, 1.0)
    num = kernels.deficit_sum(xi, controls.series_tol, controls.max_terms)
    return num / partition_function(xi, 1.0, controls)


def info_split(xi: float, controls: Controls = DEFAULT_CONTROLS) -> InfoSplit:
    h = entropy(post_insertion_state(xi, controls))
    return InfoSplit(LN2, h, quantum_deficit(xi, controls))
