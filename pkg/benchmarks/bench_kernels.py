"""Compare the compiled and pure-Python kernels on the same inputs.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import random
import timeit
from fractions import Fraction

from nonassoc import _kernels_py
from nonassoc.cayley_dickson import builtin

try:
    from nonassoc import _kernels as _kernels_c
except ImportError:
    _kernels_c = None


def cases():
    rng = random.Random(0)
    oct_, sed = builtin("oct"), builtin("sed")
    a = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(16)]
    b = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(16)]
    return [
        ("mul_monomial sed", lambda k: k.mul_monomial(sed.sign, sed.idx, 16, a, b)),
        ("associator_tensor oct", lambda k: k.associator_tensor(oct_.sign, oct_.idx, 8)),
        ("associator_tensor sed", lambda k: k.associator_tensor(sed.sign, sed.idx, 16)),
        ("scan moufang oct", lambda k: k.scan_identity(oct_.sign, oct_.idx, 8, 4)),
        ("scan alternative sed", lambda k: k.scan_identity(sed.sign, sed.idx, 16, 2)),
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _kernels_c is None:
        print("compiled extension not built; only the Python backend is timed")
    print(f"{'case':<24}{'python ms':>12}{'cython ms':>12}{'speedup':>10}")
    for name, fn in cases():
        py = min(timeit.repeat(lambda: fn(_kernels_py), number=1, repeat=args.repeat)) * 1e3
        if _kernels_c is None:
            print(f"{name:<24}{py:>12.2f}{'-':>12}{'-':>10}")
            continue
        assert fn(_kernels_c) == fn(_kernels_py), name
        cy = min(timeit.repeat(lambda: fn(_kernels_c), number=1, repeat=args.repeat)) * 1e3
        print(f"{name:<24}{py:>12.2f}{cy:>12.2f}{py / cy:>9.1f}x")


if __name__ == "__main__":
    main()
