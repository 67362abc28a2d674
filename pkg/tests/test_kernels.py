"""Backend parity: the compiled kernels must match the pure-Python ones."""

import random

import pytest

from gausscong import _kernels_py, kernels
from gausscong.cli import parse_rational
from gausscong.series import expand_at_vertex

try:
    from gausscong import _accel
except ImportError:
    _accel = None

needs_accel = pytest.mark.skipif(_accel is None, reason="compiled kernels unavailable")


@needs_accel
def test_witness_parity_random():
    rng = random.Random(99)
    for _ in range(300):
        q = [rng.choice([1, -1, 3])] + [rng.randint(-2, 2) for _ in range(3)]
        p = [rng.randint(-2, 2) for _ in range(4)]
        if not any(p):
            continue
        prime = rng.choice([2, 3, 5, 7, 11, 13])
        if q[0] % prime == 0:
            continue
        rmax = 1
        while prime ** (rmax + 1) <= 80:
            rmax += 1
        a = _accel.univariate_gauss_witness(p, q, 80, prime, rmax, 1)
        b = _kernels_py.univariate_gauss_witness(p, q, 80, prime, rmax, 1)
        assert a == b


@needs_accel
def test_expand_parity():
    F = parse_rational("1", "1-x-y-x*y")
    s = expand_at_vertex(F, (0, 0), 15)
    # recompute through the pure kernel by monkey-selecting it
    kp = _kernels_py.expand_packed
    ka = _accel.expand_packed
    args = None

    def capture(*a):
        nonlocal args
        args = a
        return ka(*a)

    old = kernels.expand_packed
    kernels.expand_packed = capture
    try:
        s2 = expand_at_vertex(F, (0, 0), 15)
    finally:
        kernels.expand_packed = old
    assert args is not None
    assert kp(*args) == ka(*args)
    assert s.coeffs == s2.coeffs


def test_pure_backend_forced_by_environment():
    import os
    import subprocess
    import sys

    env = dict(os.environ, GAUSSCONG_PURE="1")
    out = subprocess.run(
        [sys.executable, "-c", "from gausscong.kernels import BACKEND; print(BACKEND)"],
        capture_output=True, text=True, env=env,
    )
    assert out.stdout.strip() == "python"


def test_overflow_falls_back():
    # strength * rmax too deep for 64-bit moduli: dispatcher must still answer
    p = [1]
    q = [1, -2]
    got = kernels.univariate_gauss_witness(p, q, 100, 13, 6, 3)
    pure = _kernels_py.univariate_gauss_witness(p, q, 100, 13, 6, 3)
    assert got == pure
