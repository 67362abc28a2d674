"""Benchmark: compiled kernels against the pure-Python fallback.

Times the two hot paths on representative workloads:

- the graded recursion behind a four-variable vertex expansion
  (the dominant cost of high-bound congruence checks), and
- the modular univariate congruence scan (the inner loop of the
  exhaustive classification sweep).

Run as ``python3 benchmarks/bench_kernels.py``.
"""

import itertools
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from gausscong import _kernels_py, kernels
from gausscong.cli import parse_rational
from gausscong.polytope import GradingForm
from gausscong.series import expand_at_vertex

try:
    from gausscong import _accel
except ImportError:
    _accel = None


def time_expand(bound: int):
    F = parse_rational("1", "(1-x1-x2)*(1-x3-x4)-x1*x2*x3*x4")
    results = {}
    captured = {}

    real = kernels.expand_packed

    def capture(*args):
        captured["args"] = args
        return real(*args)

    kernels.expand_packed = capture
    try:
        expand_at_vertex(F, (0, 0, 0, 0), bound, GradingForm((1, 1, 1, 1)))
    finally:
        kernels.expand_packed = real
    args = captured["args"]
    backends = {"python": _kernels_py.expand_packed}
    if _accel is not None:
        backends["cython"] = _accel.expand_packed
    baseline = None
    for name, fn in backends.items():
        t0 = time.perf_counter()
        out = fn(*args)
        dt = time.perf_counter() - t0
        results[name] = dt
        if baseline is None:
            baseline = out
        else:
            assert out == baseline, "backend results disagree"
    return len(args[0]), results


def time_scan(count: int):
    cases = []
    rng = itertools.cycle(range(-2, 3))
    for q0 in (1, -1):
        for q in itertools.product(range(-2, 3), repeat=3):
            for p in itertools.product(range(-2, 3), repeat=3):
                if any(p):
                    cases.append(([*p, next(rng)], [q0, *q]))
                if len(cases) >= count:
                    break
            if len(cases) >= count:
                break
        if len(cases) >= count:
            break
    primes = (11, 13, 17, 19, 23, 29, 31, 37)
    backends = {"python": _kernels_py.univariate_gauss_witness}
    if _accel is not None:
        backends["cython"] = _accel.univariate_gauss_witness
    results = {}
    baseline = None
    for name, fn in backends.items():
        t0 = time.perf_counter()
        out = []
        for pl, ql in cases:
            for prime in primes:
                r_max = 0
                while prime ** (r_max + 1) <= 150:
                    r_max += 1
                out.append(fn(pl, ql, 150, prime, r_max, 1))
        dt = time.perf_counter() - t0
        results[name] = dt
        if baseline is None:
            baseline = out
        else:
            assert out == baseline, "backend results disagree"
    return len(cases) * len(primes), results


def report(title, units, results):
    print(f"\n{title}")
    py = results.get("python")
    for name in ("python", "cython"):
        if name not in results:
            continue
        dt = results[name]
        speedup = f"  ({py / dt:4.1f}x vs python)" if name != "python" else ""
        print(f"  {name:7s} {dt * 1000:9.1f} ms   {units / dt:12.0f} units/s{speedup}")


def main():
    print(f"active backend: {kernels.BACKEND}")
    if _accel is None:
        print("compiled kernels unavailable; timing the fallback only")
    n, res = time_expand(bound=30)
    report(f"vertex expansion recursion ({n} coefficients)", n, res)
    n, res = time_scan(count=3000)
    report(f"univariate congruence scan ({n} prime-instances)", n, res)


if __name__ == "__main__":
    main()
