"""Backend selection for the hot kernels.

The compiled extension is preferred when it imported cleanly; setting
``GAUSSCONG_PURE=1`` in the environment forces the pure-Python fallback
(used by the benchmark and by backend-parity tests).  Both backends
implement the same two functions with identical semantics:

- ``expand_packed``: the graded recursion behind vertex expansions;
- ``univariate_gauss_witness``: modular Gauss-congruence scanning for
  univariate rational functions.
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("GAUSSCONG_PURE"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _accel as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

expand_packed = _impl.expand_packed
_witness_fast = _impl.univariate_gauss_witness
_witness_py = _kernels_py.univariate_gauss_witness


def univariate_gauss_witness(p_coeffs, q_coeffs, nmax, prime, rmax, strength=1):
    """Backend-dispatched scan; falls back to pure Python on kernel overflow."""
    try:
        return _witness_fast(p_coeffs, q_coeffs, nmax, prime, rmax, strength)
    except OverflowError:
        return _witness_py(p_coeffs, q_coeffs, nmax, prime, rmax, strength)
