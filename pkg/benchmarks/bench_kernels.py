"""Time the compiled kernels against the pure-Python twin.

    python benchmarks/bench_kernels.py [--repeat 5]

Prints one row per kernel: best-of-repeat wall time per call for each
backend and the speed-up.
"""
import argparse
import timeit

from qszilard import _pykernels

try:
    from qszilard import _ckernels
except ImportError:
    _ckernels = None

TOL = 1e-12
CAP = 5_000_000

CASES = [
    ("direct_z(alpha=1e-3)", lambda k: k.direct_z(1e-3, TOL, CAP)),
    ("theta_dual_z(alpha=1e-6)", lambda k: k.theta_dual_z(1e-6, TOL)),
    ("gauss_moments(alpha=0.5)", lambda k: k.gauss_moments(0.5, TOL, CAP)),
    ("insertion_sum(xi=1e-4)", lambda k: k.insertion_sum(1e-4, TOL, CAP)),
    ("deficit_sum(xi=1e-4)", lambda k: k.deficit_sum(1e-4, TOL, CAP)),
    ("barrier_root(lam=10, i=7)", lambda k: k.barrier_root(10.0, 7, TOL)),
    ("path_integrals(xi=1, n=1000)", lambda k: k.path_integrals(1.0, 0.5, 1.0, 1000, TOL, CAP)),
]


def best_time(fn, repeat):
    timer = timeit.Timer(fn)
    number, _ = timer.autorange()
    return min(timer.repeat(repeat=repeat, number=number)) / number


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    if _ckernels is None:
        print("compiled extension not built; only the Python timings are shown")
    print(f"{'kernel':32s} {'python':>12s} {'cython':>12s} {'speed-up':>9s}")
    for name, call in CASES:
        t_py = best_time(lambda: call(_pykernels), args.repeat)
        if _ckernels is None:
            print(f"{name:32s} {t_py * 1e6:10.2f}us {'-':>12s} {'-':>9s}")
            continue
        t_c = best_time(lambda: call(_ckernels), args.repeat)
        print(f"{name:32s} {t_py * 1e6:10.2f}us {t_c * 1e6:10.2f}us {t_py / t_c:8.1f}x")


if __name__ == "__main__":
    main()
