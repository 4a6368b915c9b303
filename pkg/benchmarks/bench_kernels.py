"""Compare the compiled and pure-Python kernel backends.

    python benchmarks/bench_kernels.py [--repeat 5] [--degree 60]

Each kernel runs on identical inputs in both backends; outputs are checked for
agreement before timings are reported.
"""
from __future__ import annotations

import argparse
import random
import sys
import timeit

from spanalex import kernels
from spanalex.roots import integer_coefficients
from spanalex.alexander import alex_pretzel_closed
from spanalex.tangle import PretzelSpec


def _inputs(degree: int, seed: int):
    rng = random.Random(seed)
    a = [rng.randint(-10**6, 10**6) for _ in range(degree + 1)]
    b = [rng.randint(-10**6, 10**6) for _ in range(degree + 1)]
    # an even pretzel polynomial of roughly the requested degree
    q = [2 * (degree // 4) or 2]
    while sum(q) < degree:
        q.append(rng.randrange(1, 16, 2))
    if len(q) % 2:
        q.append(1)
    poly = integer_coefficients(alex_pretzel_closed(PretzelSpec(tuple(q))).delta)
    return a, b, [float(c) for c in poly], str(PretzelSpec(tuple(q)))


def _time(fn, repeat: int) -> float:
    number = 1
    while timeit.timeit(fn, number=number) < 0.05:
        number *= 2
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--degree", type=int, default=60)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    found = kernels.backends()
    if "cython" not in found:
        print("compiled backend not built; only the Python kernels are available", file=sys.stderr)
    a, b, poly, label = _inputs(args.degree, args.seed)
    z = 0.3 + 0.9j
    start = found["python"].initial_guesses(poly)

    cases = {
        "conv": lambda m: m.conv(a, b),
        "horner": lambda m: m.horner(poly, z),
        "aberth": lambda m: m.aberth(poly, start, 1e-12, 200),
    }
    results = {name: {k: fn(m) for k, m in found.items()} for name, fn in cases.items()}
    if "cython" in found:
        assert results["conv"]["python"] == results["conv"]["cython"], "conv disagrees"
        assert abs(results["horner"]["python"] - results["horner"]["cython"]) <= 1e-9 * abs(results["horner"]["python"])
        rp = sorted(results["aberth"]["python"][0], key=lambda w: (w.real, w.imag))
        rc = sorted(results["aberth"]["cython"][0], key=lambda w: (w.real, w.imag))
        assert max(abs(x - y) for x, y in zip(rp, rc)) < 1e-6, "aberth roots disagree"

    print(f"degree {args.degree}; root-finding input {label} (degree {len(poly) - 1})")
    print(f"{'kernel':<8} {'python':>12} {'cython':>12} {'speedup':>9}")
    for name, fn in cases.items():
        tp = _time(lambda: fn(found["python"]), args.repeat)
        if "cython" in found:
            tc = _time(lambda: fn(found["cython"]), args.repeat)
            print(f"{name:<8} {tp * 1e6:>10.1f}us {tc * 1e6:>10.1f}us {tp / tc:>8.1f}x")
        else:
            print(f"{name:<8} {tp * 1e6:>10.1f}us {'-':>12} {'-':>9}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
