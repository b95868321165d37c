"""Small-xi asymptotics and closed-form bounds.

Large well width and high temperature both send ``xi`` to zero, so one
xi-based API covers either limit; :func:`qszilard.config.xi_sequence_from_physical`
maps physical sweeps onto it.

The upper/lower bounds below hold only while ``(sqrt(pi)/2) xi^-1/2 > 1``
(``xi < pi/4``) or, for ``W1/U0``, while its own denominator is positive.
Outside that regime a bound is reported as invalid with an infinite value
instead of a sign-flipped number.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import NamedTuple

from .config import DEFAULT_CONTROLS, Controls
from .cycle import insertion_work, run_cycle
from .errors import DomainError
from .thermo import LN2, equilibrium_state, internal_energy, partition_function, quantum_deficit

SQRT_PI = math.sqrt(math.pi)
BOUND_THRESHOLD = math.pi / 4


def _check_xi(xi):
    if not (math.isfinite(xi) and xi > 0):
        raise DomainError(f"xi must be positive and finite, got {xi!r}")


class Bound(NamedTuple):
    value: float
    valid: bool


def asymptotic_Z(xi: float) -> float:
    """Leading small-xi form of the partition function, (sqrt(pi)/2) xi^-1/2."""
    _check_xi(xi)
    return 0.5 * SQRT_PI / math.sqrt(xi)


def w1_upper_bound(xi: float) -> Bound:
    """Upper bound on the insertion work W1 in k_B T: 2 / ((sqrt(pi)/2) xi^-1/2 - 1)."""
    _check_xi(xi)
    den = asymptotic_Z(xi) - 1.0
    if den <= 0:
        return Bound(math.inf, False)
    return Bound(2.0 / den, True)


def w1_over_u0_bound(xi: float) -> Bound:
    """Upper bound on W1/U0: 2 / ((sqrt(pi)/4) xi^-1/2 - xi/3)."""
    _check_xi(xi)
    den = 0.25 * SQRT_PI / math.sqrt(xi) - xi / 3.0
    if den <= 0:
        return Bound(math.inf, False)
    return Bound(2.0 / den, True)


class DeltaBounds(NamedTuple):
    lower: float
    upper: float
    valid: bool


def delta_bounds(xi: float) -> DeltaBounds:
    """Lower and upper bounds on the quantum deficit, in k_B."""
    _check_xi(xi)
    den = asymptotic_Z(xi) - 1.0
    if den <= 0:
        return DeltaBounds(-math.inf, math.inf, False)
    lower = LN2 - (0.5 * SQRT_PI * math.sqrt(xi) + 1.0) / den
    upper = LN2 + 1.0 / den
    return DeltaBounds(lower, upper, True)


QUANTITIES = ("W1", "W1_over_U0", "delta_q")


@dataclass(frozen=True)
class BoundReport:
    xi: float
    quantity: str
    value: float
    upper: float
    lower: float | None
    bound_valid: bool

    def holds(self) -> bool:
        """True when the value sits inside the valid bounds (vacuous if invalid)."""
        if not self.bound_valid:
            return True
        ok = self.value < self.upper
        if self.lower is not None:
            ok = ok and self.lower < self.value
        return ok


def bound_report(xi: float, quantity: str, controls: Controls = DEFAULT_CONTROLS) -> BoundReport:
    if quantity == "W1":
        b = w1_upper_bound(xi)
        return BoundReport(xi, quantity, insertion_work(xi, controls), b.value, None, b.valid)
    if quantity == "W1_over_U0":
        b = w1_over_u0_bound(xi)
        U0 = internal_energy(equilibrium_state(xi, 1.0, controls), xi)
        return BoundReport(xi, quantity, insertion_work(xi, controls) / U0, b.value, None, b.valid)
    if quantity == "delta_q":
        d = delta_bounds(xi)
        return BoundReport(xi, quantity, quantum_deficit(xi, controls), d.upper, d.lower, d.valid)
    raise DomainError(f"quantity must be one of {QUANTITIES}, got {quantity!r}")


def bound_reports_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["xi", "value", "lower", "upper", "valid"])
    for r in reports:
        lower = "" if r.lower is None else repr(r.lower)
        w.writerow([repr(r.xi), repr(r.value), lower, repr(r.upper), str(r.bound_valid).lower()])
    return buf.getvalue()


@dataclass(frozen=True)
class LimitRow:
    xi: float
    w_tot: float
    deviation: float
    bound: float
    bound_valid: bool

    @property
    def within_bound(self) -> bool:
        return self.bound_valid and self.deviation <= self.bound


@dataclass(frozen=True)
class LimitTable:
    rows: tuple[LimitRow, ...]

    @property
    def monotone(self) -> bool:
        """Deviations from ln 2 strictly decrease along the (decreasing) xi sequence."""
        d = [r.deviation for r in self.rows]
        return all(b < a for a, b in zip(d, d[1:]))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["xi", "w_tot_kT", "deviation", "bound", "bound_valid"])
        for r in self.rows:
            w.writerow([repr(r.xi), repr(r.w_tot), repr(r.deviation), repr(r.bound), str(r.bound_valid).lower()])
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "target_kT": LN2,
            "monotone": self.monotone,
            "rows": [
                {
                    "xi": r.xi,
                    "w_tot_kT": r.w_tot,
                    "deviation": r.deviation,
                    "bound": r.bound if math.isfinite(r.bound) else None,
                    "bound_valid": r.bound_valid,
                }
                for r in self.rows
            ],
        }


def classical_limit_check(xi_sequence, controls: Controls = DEFAULT_CONTROLS) -> LimitTable:
    """Isothermal cycle along a decreasing xi sequence, compared with k_B T ln 2.

    The bound on ``|W_tot - ln 2|`` is the W1 bound plus how far
    ``ln(Z(L)/Z(L/2))`` still sits from its asymptotic value ln 2.
    """
    xs = [float(x) for x in xi_sequence]
    if not xs:
        raise DomainError("xi sequence is empty")
    for x in xs:
        _check_xi(x)
    if any(b >= a for a, b in zip(xs, xs[1:])):
        raise DomainError("xi sequence must be strictly decreasing")
    rows = []
    for x in xs:
        rep = run_cycle(x, "isothermal", controls)
        b = w1_upper_bound(x)
        ratio_gap = abs(math.log(partition_function(x, 1.0, controls) / partition_function(x, 0.5, controls)) - LN2)
        bound = b.value + ratio_gap if b.valid else math.inf
        rows.append(LimitRow(x, rep.W_tot, abs(rep.W_tot - LN2), bound, b.valid))
    return LimitTable(tuple(rows))
