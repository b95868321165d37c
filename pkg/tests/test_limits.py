import csv
import io
import math

import numpy as np
import pytest

from qszilard import DomainError
from qszilard.cycle import insertion_work
from qszilard.limits import (
    BOUND_THRESHOLD,
    asymptotic_Z,
    bound_report,
    bound_reports_csv,
    classical_limit_check,
    delta_bounds,
    w1_over_u0_bound,
    w1_upper_bound,
)
from qszilard.thermo import LN2, partition_function, quantum_deficit


def test_asymptotic_z_values():
    assert asymptotic_Z(1e-8) == pytest.approx(8862.269254527580, rel=1e-14)
    assert asymptotic_Z(math.pi / 4) == pytest.approx(1.0, rel=1e-15)
    assert abs(asymptotic_Z(1e-6) / partition_function(1e-6) - 1) < 1e-2


def test_bound_values_at_1e_4():
    # hand evaluation: sqrt(pi)/2 * 100 = 88.6226925...
    assert w1_upper_bound(1e-4).value == pytest.approx(2 / 87.62269254527580, rel=1e-12)
    assert w1_upper_bound(1e-4).value == pytest.approx(0.02283, abs=5e-6)
    assert w1_over_u0_bound(1e-4).value == pytest.approx(0.04514, abs=5e-6)
    lo, hi, ok = delta_bounds(1e-4)
    assert ok
    assert lo == pytest.approx(0.68164, abs=1e-5)
    assert lo == pytest.approx(LN2 - (0.5 * math.sqrt(math.pi) * 0.01 + 1) / 87.62269254527580, rel=1e-13)
    assert hi == pytest.approx(0.70456, abs=5e-6)


def test_validity_threshold():
    assert BOUND_THRESHOLD == math.pi / 4
    assert w1_upper_bound(0.78).valid
    for xi in (0.79, 1.0, 10.0):
        b = w1_upper_bound(xi)
        assert not b.valid and b.value == math.inf
        d = delta_bounds(xi)
        assert not d.valid and d.lower == -math.inf and d.upper == math.inf
    # W1/U0 stays valid a little further out
    assert w1_over_u0_bound(0.3).valid
    assert not w1_over_u0_bound(2.0).valid


@pytest.mark.parametrize("fn", [asymptotic_Z, w1_upper_bound, w1_over_u0_bound, delta_bounds])
@pytest.mark.parametrize("xi", [0.0, -1.0, math.nan, math.inf])
def test_bounds_reject_bad_xi(fn, xi):
    with pytest.raises(DomainError):
        fn(xi)


@pytest.mark.parametrize("xi", np.geomspace(1e-6, 1e-1, 11).tolist())
def test_sandwiches(xi):
    for q in ("W1", "W1_over_U0", "delta_q"):
        rep = bound_report(xi, q)
        assert rep.bound_valid
        assert rep.holds(), (q, rep)


def test_bounds_shrink_to_zero_and_ln2():
    assert w1_upper_bound(1e-12).value < 1e-5
    assert w1_over_u0_bound(1e-12).value < 1e-5
    lo, hi, _ = delta_bounds(1e-12)
    assert abs(lo - LN2) < 1e-5 and abs(hi - LN2) < 1e-5


def test_squeeze_width_slope():
    xs = np.geomspace(1e-8, 1e-3, 30)
    widths = [delta_bounds(x).upper - delta_bounds(x).lower for x in xs]
    slope = np.polyfit(np.log(xs), np.log(widths), 1)[0]
    assert abs(slope - 0.5) < 0.05


def test_invalid_report_is_vacuous():
    rep = bound_report(2.0, "delta_q")
    assert not rep.bound_valid and rep.holds()
    assert rep.value == quantum_deficit(2.0)
    with pytest.raises(DomainError):
        bound_report(1e-3, "U0")


def test_bound_report_csv():
    reps = [bound_report(x, "delta_q") for x in (1e-4, 1.0)] + [bound_report(1e-4, "W1")]
    rows = list(csv.reader(io.StringIO(bound_reports_csv(reps))))
    assert rows[0] == ["xi", "value", "lower", "upper", "valid"]
    assert rows[1][4] == "true" and rows[2][4] == "false"
    assert rows[3][2] == ""
    assert float(rows[3][1]) == insertion_work(1e-4)


def test_classical_limit_table():
    table = classical_limit_check([1e-2, 1e-3, 1e-4, 1e-5])
    assert table.monotone
    for r in table.rows:
        assert r.within_bound
    last = table.rows[2]
    assert last.xi == 1e-4 and last.deviation < 0.03
    # brute-force W_tot from tests/oracle.py
    w_ref = [0.689509676537716285, 0.69279905389005145794, 0.69311286548125852718, 0.69314376481507587995]
    assert [r.w_tot for r in table.rows] == pytest.approx(w_ref, abs=1e-11)
    d = table.to_dict()
    assert d["target_kT"] == LN2 and len(d["rows"]) == 4
    header = table.to_csv().splitlines()[0]
    assert header == "xi,w_tot_kT,deviation,bound,bound_valid"


def test_classical_limit_requires_decreasing_sequence():
    with pytest.raises(DomainError):
        classical_limit_check([1e-4, 1e-3])
    with pytest.raises(DomainError):
        classical_limit_check([])
    with pytest.raises(DomainError):
        classical_limit_check([1e-3, -1.0])


def test_limit_beyond_bound_regime_is_flagged():
    table = classical_limit_check([2.0, 0.5])
    assert not table.rows[0].bound_valid and not table.rows[0].within_bound
    assert table.to_dict()["rows"][0]["bound"] is None
