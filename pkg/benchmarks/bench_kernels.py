"""Compare the compiled and pure-Python support-enumeration kernels.

    python benchmarks/bench_kernels.py [--repeat N]

Times raw ``support_sum`` calls on a few support sizes, then one
``oracle_moment`` call per backend, and checks both give identical results.
"""

import argparse
import math
import timeit
from fractions import Fraction

from multimoments import MultinomialParams, _kernels_py
from multimoments.oracle import oracle_moment

try:
    from multimoments import _kernels
except ImportError:
    _kernels = None

CASES = [(30, 2), (20, 3), (12, 4), (8, 6)]


def inputs(m, d):
    a = [2 + i for i in range(d)]
    tables = [[ai**k * (7 * k - m * ai) ** 3 for k in range(m + 1)] for ai in a]
    rest = [5**r for r in range(m + 1)]
    binom = [[math.comb(r, k) for k in range(r + 1)] for r in range(m + 1)]
    return m, tables, rest, binom


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    backends = {"python": _kernels_py.support_sum}
    if _kernels is not None:
        backends["cython"] = _kernels.support_sum
    else:
        print("compiled kernel not built; timing the fallback only")

    print(f"{'m':>4} {'d':>3} {'points':>9}" + "".join(f" {name + ' ms':>12}" for name in backends) + "  speedup")
    for m, d in CASES:
        args_ = inputs(m, d)
        results = {name: fn(*args_) for name, fn in backends.items()}
        assert len(set(results.values())) == 1, "backends disagree"
        times = {
            name: min(timeit.repeat(lambda fn=fn: fn(*args_), number=1, repeat=args.repeat)) * 1e3
            for name, fn in backends.items()
        }
        row = f"{m:>4} {d:>3} {math.comb(m + d, d):>9}" + "".join(f" {t:>12.2f}" for t in times.values())
        if "cython" in times:
            row += f"  {times['python'] / times['cython']:.2f}x"
        print(row)

    params = MultinomialParams(25, [Fraction(1, 7), Fraction(2, 9), Fraction(1, 5)])
    from multimoments import _core

    values = {}
    for name, fn in backends.items():
        _core.support_sum = fn
        t = min(timeit.repeat(lambda: oracle_moment(params, (3, 2, 2), "central"), number=1, repeat=args.repeat))
        values[name] = oracle_moment(params, (3, 2, 2), "central")
        print(f"oracle_moment m=25 d=3 central (3,2,2) [{name}]: {t * 1e3:.2f} ms")
    assert len(set(values.values())) == 1


if __name__ == "__main__":
    main()
