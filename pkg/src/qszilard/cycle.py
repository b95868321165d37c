"""Step-by-step ledger of the two engine cycles.

Every step is stored with the work done *by* the system, so the agent's
insertion work ``W1`` enters as ``-W1``. Energies are in k_B T, entropies
in k_B.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import asdict, dataclass, field

from . import kernels
from .config import DEFAULT_CONTROLS, Controls
from .errors import DomainError
from .thermo import (
    LN2,
    ThermalState,
    _effective_alpha,
    entropy,
    equilibrium_state,
    internal_energy,
    partition_function,
    post_insertion_state,
    quantum_deficit,
)

STEP_NAMES = (
    "insertion",
    "measurement",
    "hold_thermalize",
    "isothermal_expand",
    "adiabatic_expand",
    "post_expand_thermalize",
    "removal",
)
STRATEGIES = ("isothermal", "adiabatic")


@dataclass(frozen=True)
class StepRecord:
    name: str
    W_by_system: float
    Q_absorbed: float
    dU: float
    dS: float

    def __post_init__(self):
        if self.name not in STEP_NAMES:
            raise DomainError(f"unknown step name {self.name!r}")

    def first_law_residual(self) -> float:
        return abs(self.dU - (self.Q_absorbed - self.W_by_system))


def insertion_work(xi: float, controls: Controls = DEFAULT_CONTROLS) -> float:
    """Work the agent spends raising the barrier, in k_B T.

    Only the odd-index levels move; each is lifted onto its even neighbour,
    a shift of ``(2k)^2 - (2k-1)^2 = 4k - 1`` in units of E1(L).
    """
    _effective_alpha(xi, 1.0)
    return kernels.insertion_sum(xi, controls.series_tol, controls.max_terms) / partition_function(
        xi, 1.0, controls
    )


@dataclass(frozen=True)
class _Endpoints:
    # shared quantities of one cycle at one xi
    initial: ThermalState
    collapsed: ThermalState
    U0: float
    S0: float
    U1: float
    h: float
    delta_q: float
    W1: float


def _endpoints(xi, controls):
    initial = equilibrium_state(xi, 1.0, controls)
    collapsed = post_insertion_state(xi, controls)
    return _Endpoints(
        initial=initial,
        collapsed=collapsed,
        U0=internal_energy(initial, xi),
        S0=entropy(initial),
        U1=internal_energy(collapsed, xi),
        h=entropy(collapsed),
        delta_q=quantum_deficit(xi, controls),
        W1=insertion_work(xi, controls),
    )


def _insertion_and_measure(ep):
    ins = StepRecord("insertion", -ep.W1, 0.0, ep.U1 - ep.U0, LN2 - ep.delta_q)
    meas = StepRecord("measurement", 0.0, 0.0, 0.0, -LN2)
    return ins, meas


def run_insertion_and_measure(xi: float, controls: Controls = DEFAULT_CONTROLS, side: str = "left"):
    """Insertion and measurement records plus the collapsed one-sided state.

    The halves are mirror images, so ``side`` changes nothing numerically.
    """
    if side not in ("left", "right"):
        raise DomainError(f"side must be 'left' or 'right', got {side!r}")
    ep = _endpoints(xi, controls)
    ins, meas = _insertion_and_measure(ep)
    return ins, meas, ep.collapsed


def _isothermal_steps(xi, ep, controls):
    half = equilibrium_state(xi, 0.5, controls)
    U3 = internal_energy(half, xi)
    S3 = entropy(half)
    hold = StepRecord("hold_thermalize", 0.0, U3 - ep.U1, U3 - ep.U1, S3 - ep.h)
    W4 = math.log(partition_function(xi, 1.0, controls) / partition_function(xi, 0.5, controls))
    expand = StepRecord("isothermal_expand", W4, (ep.U0 - U3) + W4, ep.U0 - U3, ep.S0 - S3)
    return hold, expand


def isothermal_strategy(xi: float, controls: Controls = DEFAULT_CONTROLS):
    """Thermalize at half width, then expand quasi-statically in contact with the bath."""
    return _isothermal_steps(xi, _endpoints(xi, controls), controls)


def _adiabatic_steps(xi, ep):
    P = ep.collapsed.probs
    k2 = ep.collapsed.at_width(1.0).energies_reduced
    # occupations frozen while level k slides from (2k)^2 down to k^2
    W3 = float(xi * (P * (ep.collapsed.energies_reduced - k2)).sum())
    U3 = internal_energy(ep.collapsed.at_width(1.0), xi)
    expand = StepRecord("adiabatic_expand", W3, 0.0, U3 - ep.U1, 0.0)
    therm = StepRecord("post_expand_thermalize", 0.0, ep.U0 - U3, ep.U0 - U3, ep.S0 - ep.h)
    return expand, therm


def adiabatic_strategy(xi: float, controls: Controls = DEFAULT_CONTROLS):
    """Expand with frozen occupations, then let the bath re-thermalize the full well."""
    return _adiabatic_steps(xi, _endpoints(xi, controls))


def quasistatic_path(xi: float, from_w: float, to_w: float, quad_steps: int, controls: Controls = DEFAULT_CONTROLS):
    """Integrate ``dW = -sum P dE`` and ``dQ = sum E dP`` along equilibrium states.

    Composite trapezoid rule with ``quad_steps`` equal intervals in the
    width fraction. Returns ``(W, Q)`` in k_B T; the error is O(quad_steps^-2).
    """
    if not (0.0 < from_w < to_w <= 1.0):
        raise DomainError(f"need 0 < from_w < to_w <= 1, got ({from_w!r}, {to_w!r})")
    if isinstance(quad_steps, bool) or not isinstance(quad_steps, int) or quad_steps < 2:
        raise DomainError(f"quad_steps must be an integer >= 2, got {quad_steps!r}")
    _effective_alpha(xi, 1.0)
    _effective_alpha(xi, to_w)
    return kernels.path_integrals(xi, from_w, to_w, quad_steps, controls.series_tol, controls.max_terms)


@dataclass(frozen=True)
class CycleReport:
    strategy: str
    xi: float
    steps: tuple[StepRecord, ...]
    W_tot: float
    Q_tot: float
    W1: float
    delta_q: float
    residuals: dict = field(default_factory=dict)
    side: str = "left"

    def step(self, name: str) -> StepRecord:
        for s in self.steps:
            if s.name == name:
                return s
        raise KeyError(name)

    def max_residual(self) -> float:
        return max(self.residuals.values())

    def to_dict(self) -> dict:
        return {
            "strategy": self.strategy,
            "xi": self.xi,
            "side": self.side,
            "units": {"energy": "kT", "entropy": "kB"},
            "steps": [asdict(s) for s in self.steps],
            "W_tot": self.W_tot,
            "Q_tot": self.Q_tot,
            "W1": self.W1,
            "delta_q": self.delta_q,
            "residuals": dict(self.residuals),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CycleReport":
        return cls(
            strategy=d["strategy"],
            xi=d["xi"],
            steps=tuple(StepRecord(**s) for s in d["steps"]),
            W_tot=d["W_tot"],
            Q_tot=d["Q_tot"],
            W1=d["W1"],
            delta_q=d["delta_q"],
            residuals=dict(d["residuals"]),
            side=d.get("side", "left"),
        )

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["step", "W_kT", "Q_kT", "dU_kT", "dS_kB"])
        for s in self.steps:
            writer.writerow([s.name, repr(s.W_by_system), repr(s.Q_absorbed), repr(s.dU), repr(s.dS)])
        return buf.getvalue()


def run_cycle(
    xi: float,
    strategy: str = "isothermal",
    controls: Controls = DEFAULT_CONTROLS,
    side: str = "left",
) -> CycleReport:
    """Run insertion, measurement, one expansion strategy and removal at ``xi``."""
    if strategy not in STRATEGIES:
        raise DomainError(f"strategy must be one of {STRATEGIES}, got {strategy!r}")
    if side not in ("left", "right"):
        raise DomainError(f"side must be 'left' or 'right', got {side!r}")
    ep = _endpoints(xi, controls)
    ins, meas = _insertion_and_measure(ep)
    if strategy == "isothermal":
        middle = _isothermal_steps(xi, ep, controls)
    else:
        middle = _adiabatic_steps(xi, ep)
    removal = StepRecord("removal", 0.0, 0.0, 0.0, 0.0)
    steps = (ins, meas, *middle, removal)

    W_tot = math.fsum(s.W_by_system for s in steps)
    Q_tot = math.fsum(s.Q_absorbed for s in steps)
    W_exp = math.fsum(s.W_by_system for s in middle)
    Q_exp = math.fsum(s.Q_absorbed for s in middle)
    erased = math.fsum(s.dS for s in middle)
    residuals = {
        "first_law_total": abs(math.fsum(s.dU - s.Q_absorbed + s.W_by_system for s in steps)),
        "first_law_max_step": max(s.first_law_residual() for s in steps),
        "work_heat_balance": abs(W_tot - Q_tot),
        "exp_identity": abs(Q_exp + ep.W1 - W_exp),
        "erasure_balance": abs(ep.delta_q - erased),
        "state_closure": max(
            abs(math.fsum(s.dU for s in steps)),
            abs(math.fsum(s.dS for s in steps)),
        ),
    }
    return CycleReport(strategy, xi, steps, W_tot, Q_tot, ep.W1, ep.delta_q, residuals, side)
