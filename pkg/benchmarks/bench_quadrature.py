"""Compare the compiled and pure-Python Gauss-Kronrod kernels.

    python benchmarks/bench_quadrature.py [--repeat N]

Both kernels run the same calls; the script checks the results agree
bit for bit before reporting timings.
"""

import argparse
import sys
import timeit

from conemom import _quadcore_py
from conemom.profile import profile

CASES = {
    "t, flat cone m=1": ((1, 4, 0, "cone"), 1.0, 0.0, False, 0.01, 10.0),
    "F, CSC cone m=2": ((2, 6, -1, "cone"), 0.0, 1.0, False, 0.01, 10.0),
    "G, bundle m=3": ((3, 2, 0, "bundle"), 50.0, -1.0, False, 0.01, 50.0),
    "s, bundle m=3": ((3, 2, 0, "bundle"), 1.0, 0.0, True, 1e-4, 1e4),
    "t, near b=3": ((1, 4, 2, "cone"), 1.0, 0.0, False, 0.1, 2.999),
}


def calls():
    for name, (args, w0, w1, half, a, b) in CASES.items():
        pr = profile(*args)
        yield name, (tuple(pr.numerator.float_coeffs), pr.m, w0, w1, half, a, b, 1e-12, 4000)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=200)
    args = ap.parse_args(argv)
    try:
        from conemom import _quadcore
    except ImportError:
        print("compiled kernel not built; run `pip install -e .` with Cython available")
        return 1

    print(f"{'case':<20}{'neval':>7}{'cython us':>12}{'python us':>12}{'speedup':>9}")
    for name, call in calls():
        fast, slow = _quadcore.gk_integrate(*call), _quadcore_py.gk_integrate(*call)
        if fast != slow:
            print(f"{name}: backends disagree: {fast} vs {slow}")
            return 2
        n_slow = max(1, args.repeat // 20)
        t_fast = timeit.timeit(lambda: _quadcore.gk_integrate(*call), number=args.repeat) / args.repeat
        t_slow = timeit.timeit(lambda: _quadcore_py.gk_integrate(*call), number=n_slow) / n_slow
        print(f"{name:<20}{fast[2]:>7}{t_fast * 1e6:>12.1f}{t_slow * 1e6:>12.1f}{t_slow / t_fast:>8.0f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
