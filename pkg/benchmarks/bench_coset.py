"""Compare the compiled and pure-Python coset enumeration kernels.

    python3 benchmarks/bench_coset.py [--repeat N]
"""

import argparse
import time

import numpy as np

from crossedsq import coset

A, AI, B, BI = 0, 1, 2, 3


def _comm(x, y):
    return [x, y, x ^ 1, y ^ 1]


CASES = {
    "S3": (2, [[A, A], [B, B, B], [A, B] * 2]),
    "A5": (2, [[A, A], [B, B, B], [A, B] * 5]),
    "PSL(2,7)": (2, [[A, A], [B, B, B], [A, B] * 7, _comm(A, B) * 4]),
    "M12-sized": (2, [[A, A], [B, B, B], [A, B] * 11, _comm(A, B) * 6,
                      [A, B, A, B, A, BI] * 6]),
}


def _time(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if coset.BACKEND != "cython":
        print("compiled kernel unavailable; only the python backend will run")
    print(f"{'case':<12}{'order':>8}{'python s':>12}{'cython s':>12}{'speedup':>10}")
    for name, (ngens, rels) in CASES.items():
        tp, table_p = _time(lambda: coset.enumerate_cosets(ngens, rels, backend="python"),
                            1 if name == "M12-sized" else args.repeat)
        if coset.BACKEND == "cython":
            tc, table_c = _time(lambda: coset.enumerate_cosets(ngens, rels, backend="cython"),
                                args.repeat)
            assert np.array_equal(table_p, table_c), name
            print(f"{name:<12}{len(table_p):>8}{tp:>12.4f}{tc:>12.4f}{tp / tc:>10.1f}")
        else:
            print(f"{name:<12}{len(table_p):>8}{tp:>12.4f}{'-':>12}{'-':>10}")


if __name__ == "__main__":
    main()
