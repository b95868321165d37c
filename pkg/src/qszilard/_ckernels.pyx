# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Scalar kernels, compiled build.

Twin of ``_pykernels.py``: identical functions, identical arguments.
"""
from libc.math cimport exp, log1p, sqrt, cos, sin, fabs, M_PI, INFINITY

from .errors import SeriesRangeError

DUAL_THRESHOLD = 0.1

cdef double _DUAL = 0.1
cdef double _PI2 = M_PI * M_PI
cdef double _SQRT_PI = sqrt(M_PI)


cdef inline void _kahan(double *s, double *c, double t) nogil:
    cdef double y = s[0] + t
    if fabs(s[0]) >= fabs(t):
        c[0] += (s[0] - y) + t
    else:
        c[0] += (t - y) + s[0]
    s[0] = y


cdef inline double _tail(double t, double prev) nogil:
    # geometric bound on what follows t when the term ratio keeps shrinking
    cdef double r
    if prev <= 0.0 or t >= prev:
        return INFINITY
    r = t / prev
    return t * r / (1.0 - r)


cdef int _theta_dual(double alpha, double tol, double *th, double *th1, double *th2) nogil:
    cdef double x, e, g
    cdef int n = 1
    th[0] = 1.0
    th1[0] = 0.0
    th2[0] = 0.0
    while True:
        x = _PI2 * n * n / alpha
        e = exp(-x)
        if e * (1.0 + x * x) < 1e-3 * tol or e == 0.0:
            break
        g = x / alpha
        th[0] += 2.0 * e
        th1[0] += 2.0 * g * e
        th2[0] += 2.0 * (g * g - 2.0 * g / alpha) * e
        n += 1
    return n - 1


def theta_dual_z(double alpha, double tol):
    """Z(alpha) = sum_{n>=1} exp(-alpha n^2) via the Poisson-dual theta series."""
    cdef double th, th1, th2
    _theta_dual(alpha, tol, &th, &th1, &th2)
    return 0.5 * (sqrt(M_PI / alpha) * th - 1.0)


def direct_z(double alpha, double tol, long max_terms):
    """Direct partial sum of exp(-alpha n^2); returns (value, terms used)."""
    cdef double s = 0.0, c = 0.0, t, prev = 0.0
    cdef long n = 1
    while True:
        if n > max_terms:
            raise SeriesRangeError(f"direct sum needs more than {max_terms} terms at alpha={alpha!r}")
        t = exp(-alpha * <double>n * <double>n)
        _kahan(&s, &c, t)
        if t == 0.0 or (t < tol * (s + c) and _tail(t, prev) < 0.1 * tol * (s + c)):
            return s + c, n
        prev = t
        n += 1


cdef int _direct_moments(double alpha, double tol, long max_terms,
                         double *m0, double *m1, double *m2, long *terms) nogil:
    cdef double s0 = 0.0, c0 = 0.0, s1 = 0.0, c1 = 0.0, s2 = 0.0, c2 = 0.0
    cdef double nn, e, t0, t1, t2, p0 = 0.0, p2 = 0.0
    cdef long n = 1
    while True:
        if n > max_terms:
            return -1
        nn = <double>n * <double>n
        e = exp(-alpha * nn)
        t0 = e
        t1 = e * nn
        t2 = t1 * nn
        _kahan(&s0, &c0, t0)
        _kahan(&s1, &c1, t1)
        _kahan(&s2, &c2, t2)
        if e == 0.0 or (alpha * nn >= 2.0
                         and _tail(t2, p2) < 0.1 * tol * (s2 + c2)
                         and t0 < tol * (s0 + c0) and _tail(t0, p0) < 0.1 * tol * (s0 + c0)):
            m0[0] = s0 + c0
            m1[0] = s1 + c1
            m2[0] = s2 + c2
            terms[0] = n
            return 0
        p0 = t0
        p2 = t2
        n += 1


cdef int _moments(double alpha, double tol, long max_terms,
                  double *m0, double *m1, double *m2, long *terms) nogil:
    cdef double th, th1, th2, f, f1, f2
    if alpha < _DUAL:
        terms[0] = _theta_dual(alpha, tol, &th, &th1, &th2)
        f = _SQRT_PI / sqrt(alpha)
        f1 = -0.5 * f / alpha
        f2 = 0.75 * f / (alpha * alpha)
        m0[0] = 0.5 * (f * th - 1.0)
        m1[0] = -0.5 * (f1 * th + f * th1)
        m2[0] = 0.5 * (f2 * th + 2.0 * f1 * th1 + f * th2)
        return 0
    return _direct_moments(alpha, tol, max_terms, m0, m1, m2, terms)


def gauss_moments(double alpha, double tol, long max_terms):
    """Sums of n^0, n^2, n^4 weighted by exp(-alpha n^2), n >= 1."""
    cdef double m0, m1, m2
    cdef long terms
    if _moments(alpha, tol, max_terms, &m0, &m1, &m2, &terms) != 0:
        raise SeriesRangeError(f"moment sum needs more than {max_terms} terms at alpha={alpha!r}")
    return m0, m1, m2, terms


def insertion_sum(double xi, double tol, long max_terms):
    """sum_k (4k - 1) xi exp(-xi (2k-1)^2): insertion work times Z, in k_B T."""
    cdef double s = 0.0, c = 0.0, x, t, m, prev = 0.0
    cdef long k = 1
    while True:
        if k > max_terms:
            raise SeriesRangeError(f"insertion sum needs more than {max_terms} terms at xi={xi!r}")
        m = 2.0 * k - 1.0
        x = xi * m * m
        t = (4.0 * k - 1.0) * xi * exp(-x)
        _kahan(&s, &c, t)
        if t == 0.0 or (x >= 1.0 and t < tol * (s + c) and _tail(t, prev) < 0.1 * tol * (s + c)):
            return s + c
        prev = t
        k += 1


def deficit_sum(double xi, double tol, long max_terms):
    """Pairwise-regrouped entropy deficit times Z."""
    cdef double s = 0.0, c = 0.0, x, a, b, g, lg, t, m, prev = 0.0
    cdef long k = 1
    while True:
        if k > max_terms:
            raise SeriesRangeError(f"deficit sum needs more than {max_terms} terms at xi={xi!r}")
        m = 2.0 * k - 1.0
        x = xi * m * m
        b = exp(-x)
        a = exp(-xi * 4.0 * <double>k * <double>k)
        g = xi * (4.0 * k - 1.0)
        lg = log1p(exp(-g))
        t = a * (g + lg) + b * lg
        _kahan(&s, &c, t)
        if b == 0.0 or (x >= 1.0 and t < tol * (s + c) and _tail(t, prev) < 0.1 * tol * (s + c)):
            return s + c
        prev = t
        k += 1


cdef inline double _barrier_h(double x, double lam) nogil:
    return -x * cos(x) - lam * sin(x)


def barrier_root(double lam, long i, double tol):
    """Root of -x cot x = lam in ((i - 1/2) pi, i pi) by bisection."""
    cdef double lo = (i - 0.5) * M_PI
    cdef double hi, hlo, hhi, mid, hm, x
    cdef int it
    if lam == 0.0:
        return lo
    hi = i * M_PI
    hlo = _barrier_h(lo, lam)
    hhi = _barrier_h(hi, lam)
    for it in range(200):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        hm = _barrier_h(mid, lam)
        if hm == 0.0:
            return mid
        if (hm < 0.0) == (hlo < 0.0):
            lo = mid
            hlo = hm
        else:
            hi = mid
            hhi = hm
    if hhi != hlo:
        x = lo - hlo * (hi - lo) / (hhi - hlo)
        if lo <= x <= hi:
            return x
    return 0.5 * (lo + hi)


def path_integrals(double xi, double w0, double w1, long steps, double tol, long max_terms):
    """Trapezoid integrals of -sum P dE and sum E dP along equilibrium states."""
    cdef double h = (w1 - w0) / steps
    cdef double W = 0.0, Q = 0.0, w, alpha, m0, m1, m2, mean, var, dW, dQ
    cdef long j, terms
    for j in range(steps + 1):
        w = w0 + j * h
        alpha = xi / (w * w)
        if _moments(alpha, tol, max_terms, &m0, &m1, &m2, &terms) != 0:
            raise SeriesRangeError(f"moment sum needs more than {max_terms} terms at alpha={alpha!r}")
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
