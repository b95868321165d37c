"""Scalar kernels, pure-Python build.

This module is the reference twin of ``_ckernels.pyx``; both expose the
same functions with the same arguments and are checked against each other
in the test-suite. Keep the two in step.
"""
import math

from .errors import SeriesRangeError


# below this exponent the Gaussian sums switch to the Poisson-dual form
DUAL_THRESHOLD = 0.1

_PI = math.pi
_PI2 = math.pi * math.pi
_SQRT_PI = math.sqrt(math.pi)


def _tail(t, prev):
    # geometric bound on what follows t when the term ratio keeps shrinking
    if prev <= 0.0 or t >= prev:
        return math.inf
    r = t / prev
    return t * r / (1.0 - r)


def _theta_dual(alpha, tol):
    # theta(alpha) = 1 + 2 sum exp(-pi^2 n^2 / alpha) and two alpha-derivatives
    th, th1, th2 = 1.0, 0.0, 0.0
    n = 1
    while True:
        x = _PI2 * n * n / alpha
        e = math.exp(-x)
        if e * (1.0 + x * x) < 1e-3 * tol or e == 0.0:
            break
        g = x / alpha
        th += 2.0 * e
        th1 += 2.0 * g * e
        th2 += 2.0 * (g * g - 2.0 * g / alpha) * e
        n += 1
    return th, th1, th2, n - 1


def theta_dual_z(alpha, tol):
    """Z(alpha) = sum_{n>=1} exp(-alpha n^2) via the Poisson-dual theta series."""
    th, _, _, _ = _theta_dual(alpha, tol)
    return 0.5 * (math.sqrt(_PI / alpha) * th - 1.0)


def direct_z(alpha, tol, max_terms):
    """Direct partial sum of exp(-alpha n^2); returns (value, terms used)."""
    s = 0.0
    c = 0.0
    prev = 0.0
    n = 1
    while True:
        if n > max_terms:
            raise SeriesRangeError(f"direct sum needs more than {max_terms} terms at alpha={alpha!r}")
        t = math.exp(-alpha * n * n)
        y = s + t
        if abs(s) >= abs(t):
            c += (s - y) + t
        else:
            c += (t - y) + s
        s = y
        if t == 0.0 or (t < tol * (s + c) and _tail(t, prev) < 0.1 * tol * (s + c)):
            return s + c, n
        prev = t
        n += 1


def gauss_moments(alpha, tol, max_terms):
    """Sums of n^0, n^2, n^4 weighted by exp(-alpha n^2), n >= 1.

    Returns ``(m0, m1, m2, terms)``. Uses the dual theta form below
    ``DUAL_THRESHOLD`` and compensated direct summation above it.
    """
    if alpha < DUAL_THRESHOLD:
        th, th1, th2, terms = _theta_dual(alpha, tol)
        f = _SQRT_PI / math.sqrt(alpha)
        f1 = -0.5 * f / alpha
        f2 = 0.75 * f / (alpha * alpha)
        m0 = 0.5 * (f * th - 1.0)
        m1 = -0.5 * (f1 * th + f * th1)
        m2 = 0.5 * (f2 * th + 2.0 * f1 * th1 + f * th2)
        return m0, m1, m2, terms

    s0 = c0 = s1 = c1 = s2 = c2 = 0.0
    p0 = p2 = 0.0
    n = 1
    while True:
        if n > max_terms:
            raise SeriesRangeError(f"moment sum needs more than {max_terms} terms at alpha={alpha!r}")
        nn = float(n * n)
        e = math.exp(-alpha * nn)
        t0 = e
        t1 = e * nn
        t2 = t1 * nn
        y = s0 + t0
        c0 += ((s0 - y) + t0) if abs(s0) >= abs(t0) else ((t0 - y) + s0)
        s0 = y
        y = s1 + t1
        c1 += ((s1 - y) + t1) if abs(s1) >= abs(t1) else ((t1 - y) + s1)
        s1 = y
        y = s2 + t2
        c2 += ((s2 - y) + t2) if abs(s2) >= abs(t2) else ((t2 - y) + s2)
        s2 = y
        if e == 0.0 or (
            alpha * nn >= 2.0
            and _tail(t2, p2) < 0.1 * tol * (s2 + c2)
            and t0 < tol * (s0 + c0) and _tail(t0, p0) < 0.1 * tol * (s0 + c0)
        ):
            return s0 + c0, s1 + c1, s2 + c2, n
        p0, p2 = t0, t2
        n += 1


def insertion_sum(xi, tol, max_terms):
    """sum_k (4k - 1) xi exp(-xi (2k-1)^2): insertion work times Z, in k_B T."""
    s = 0.0
    c = 0.0
    prev = 0.0
    k = 1
    while True:
        if k > max_terms:
            raise SeriesRangeError(f"insertion sum needs more than {max_terms} terms at xi={xi!r}")
        m = 2 * k - 1
        x = xi * m * m
        t = (4 * k - 1) * xi * math.exp(-x)
        y = s + t
        c += ((s - y) + t) if abs(s) >= abs(t) else ((t - y) + s)
        s = y
        if t == 0.0 or (x >= 1.0 and t < tol * (s + c) and _tail(t, prev) < 0.1 * tol * (s + c)):
            return s + c
        prev = t
        k += 1


def deficit_sum(xi, tol, max_terms):
    """Pairwise-regrouped entropy deficit times Z.

    Each level pair (2k-1, 2k) contributes
    ``a ln(1 + b/a) + b ln(1 + a/b)`` with ``a, b`` the two Boltzmann weights,
    written with log1p so large ``xi`` keeps its digits.
    """
    s = 0.0
    c = 0.0
    prev = 0.0
    k = 1
    while True:
        if k > max_terms:
            raise SeriesRangeError(f"deficit sum needs more than {max_terms} terms at xi={xi!r}")
        m = 2 * k - 1
        x = xi * m * m
        b = math.exp(-x)
        a = math.exp(-xi * 4.0 * k * k)
        g = xi * (4 * k - 1)
        lg = math.log1p(math.exp(-g))
        t = a * (g + lg) + b * lg
        y = s + t
        c += ((s - y) + t) if abs(s) >= abs(t) else ((t - y) + s)
        s = y
        if b == 0.0 or (x >= 1.0 and t < tol * (s + c) and _tail(t, prev) < 0.1 * tol * (s + c)):
            return s + c
        prev = t
        k += 1


def _barrier_h(x, lam):
    # -x cot x - lam, multiplied through by sin x so it has no poles
    return -x * math.cos(x) - lam * math.sin(x)


def barrier_root(lam, i, tol):
    """Root of -x cot x = lam in ((i - 1/2) pi, i pi) by bisection."""
    lo = (i - 0.5) * _PI
    if lam == 0.0:
        return lo
    hi = i * _PI
    hlo = _barrier_h(lo, lam)
    hhi = _barrier_h(hi, lam)
    for _ in range(200):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        hm = _barrier_h(mid, lam)
        if hm == 0.0:
            return mid
        if (hm < 0.0) == (hlo < 0.0):
            lo, hlo = mid, hm
        else:
            hi, hhi = mid, hm
    # one secant step inside the final bracket
    if hhi != hlo:
        x = lo - hlo * (hi - lo) / (hhi - hlo)
        if lo <= x <= hi:
            return x
    return 0.5 * (lo + hi)


def path_integrals(xi, w0, w1, steps, tol, max_terms):
    """Trapezoid integrals of -sum P dE and sum E dP along equilibrium states.

    The well width runs from ``w0`` to ``w1`` (fractions of L) in ``steps``
    equal intervals. Returns ``(work_by_system, heat_absorbed)`` in k_B T.
    """
    h = (w1 - w0) / steps
    W = 0.0
    Q = 0.0
    for j in range(steps + 1):
        w = w0 + j * h
        alpha = xi / (w * w)
        m0, m1, m2, _ = gauss_moments(alpha, tol, max_terms)
        mean = m1 / m0
        var = m2 / m0 - mean * mean
        dW = 2.0 * alpha * mean / w
        dQ = 2.0 * alpha * alpha * var / w
        if j == 0 or j == steps:
            dW *= 0.5
            dQ *= 0.5
        W += dW
        Q += dQ
    return W * h, Q * h
