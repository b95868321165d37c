"""Levels of the infinite well with and without a central delta barrier.

Energies are in units of E1(L), the ground level of the full well. The
barrier strength enters in reduced form ``lam = m L lambda / (2 hbar^2)``
and the perturbed levels follow from ``-x cot x = lam`` with
``x = k L / 2``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from . import kernels
from .config import DEFAULT_CONTROLS, Controls
from .errors import DomainError

ODD = "odd"  # sine about the centre, node at L/2, index 2k
EVEN = "even"  # cosine about the centre, index 2k - 1
MERGED = "merged"  # impenetrable barrier, two-fold degenerate pair


def reduced_level(n: int, w: float = 1.0) -> float:
    """Level ``n`` of a well of width ``w * L``, in units of E1(L)."""
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise DomainError(f"level index must be a positive integer, got {n!r}")
    if not (0.0 < w <= 1.0):
        raise DomainError(f"width fraction must lie in (0, 1], got {w!r}")
    return n * n / (w * w)


def _check_count(count):
    if isinstance(count, bool) or not isinstance(count, int) or count < 1:
        raise DomainError(f"count must be a positive integer, got {count!r}")


def barrier_roots(lam: float, count: int, controls: Controls = DEFAULT_CONTROLS) -> list[float]:
    """Roots ``x_i`` of ``-x cot x = lam``, one in each ((i - 1/2) pi, i pi).

    ``lam = inf`` is rejected; the impenetrable limit is described by
    :func:`redistribution_map`.
    """
    _check_count(count)
    if not math.isfinite(lam):
        raise DomainError("barrier strength must be finite; use redistribution_map for lam = inf")
    if lam < 0:
        raise DomainError(f"barrier strength must be >= 0, got {lam!r}")
    return [kernels.barrier_root(float(lam), i, controls.root_tol) for i in range(1, count + 1)]


@dataclass(frozen=True)
class Level:
    n: int
    e_reduced: float
    parity: str


@dataclass(frozen=True)
class Spectrum:
    """Sorted levels of the well for one barrier strength."""

    levels: tuple[Level, ...]
    barrier_strength: float

    def energies(self) -> list[float]:
        return [lv.e_reduced for lv in self.levels]

    def to_dict(self) -> dict:
        lam = "infinite" if math.isinf(self.barrier_strength) else self.barrier_strength
        return {
            "lambda_reduced": lam,
            "levels": [{"n": lv.n, "e_reduced": lv.e_reduced, "parity": lv.parity} for lv in self.levels],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Spectrum":
        lam = data["lambda_reduced"]
        lam = math.inf if lam == "infinite" else float(lam)
        levels = tuple(Level(int(d["n"]), float(d["e_reduced"]), d["parity"]) for d in data["levels"])
        return cls(levels, lam)


@dataclass(frozen=True)
class LevelAssignment:
    """Where a full-well level ends up once the barrier is impenetrable."""

    k: int  # half-well level index
    shifted: bool  # True for the odd-index levels that move up
    multiplicity: int = 2


def redistribution_map(count: int) -> dict[int, LevelAssignment]:
    """Map full-well indices 1..2*count onto half-well levels 1..count.

    Level 2k sits on a node of the barrier and keeps its energy; level 2k-1
    is pushed up onto it. Each half-well level thus receives exactly the
    pair {2k-1, 2k}.
    """
    _check_count(count)
    out = {}
    for k in range(1, count + 1):
        out[2 * k - 1] = LevelAssignment(k, True)
        out[2 * k] = LevelAssignment(k, False)
    return out


def levels_needed(xi: float, controls: Controls = DEFAULT_CONTROLS) -> int:
    """Number of level pairs the thermal series uses at ``xi``."""
    # local import: thermo depends on this module
    from .thermo import truncation_index

    return (truncation_index(xi, controls.series_tol) + 1) // 2


def perturbed_spectrum(
    lam: float,
    count: int | None = None,
    *,
    xi: float | None = None,
    controls: Controls = DEFAULT_CONTROLS,
) -> Spectrum:
    """Spectrum with ``count`` level pairs at reduced barrier strength ``lam``.

    When ``count`` is omitted it is taken from the thermal truncation rule at
    ``xi``. ``lam = inf`` gives the merged, doubly degenerate half-well
    spectrum.
    """
    if count is None:
        if xi is None:
            raise DomainError("give either count or xi")
        count = levels_needed(xi, controls)
    _check_count(count)

    if math.isinf(lam) and lam > 0:
        levels = []
        for n, a in sorted(redistribution_map(count).items()):
            levels.append(Level(n, reduced_level(a.k, 0.5), MERGED))
        return Spectrum(tuple(levels), math.inf)

    roots = barrier_roots(lam, count, controls)
    levels = []
    for i, x in enumerate(roots, start=1):
        # without a barrier the root is (i - 1/2) pi; keep that level exact
        e = float((2 * i - 1) ** 2) if lam == 0 else (2.0 * x / math.pi) ** 2
        levels.append(Level(2 * i - 1, e, EVEN))
        levels.append(Level(2 * i, float((2 * i) ** 2), ODD))
    levels.sort(key=lambda lv: (lv.e_reduced, lv.n))
    return Spectrum(tuple(levels), float(lam))
