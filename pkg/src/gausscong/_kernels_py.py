"""Pure-Python implementations of the two hot kernels.

These are the reference implementations; ``gausscong._accel`` provides
compiled twins with identical semantics, selected at import time by
:mod:`gausscong.kernels`.
"""

from __future__ import annotations

from fractions import Fraction


def expand_packed(keys, p_entries, shifts, q_coeffs, q_inv_num, q_inv_den, size):
    """Graded fixed-point recursion for a vertex Laurent expansion.

    ``keys`` are packed lattice points in grading order; ``p_entries``
    maps packed keys to numerator coefficients; ``shifts``/``q_coeffs``
    describe the nonconstant denominator terms as packed-key offsets and
    coefficients.  The vertex coefficient is ``q_inv_den / q_inv_num``
    (so dividing by it multiplies by ``q_inv_num / q_inv_den``); all
    coefficient arithmetic is exact.

    Returns the coefficient list aligned with ``keys``.
    """
    f = [0] * size
    out = []
    nterms = len(shifts)
    int_mode = q_inv_den == 1 or q_inv_den == -1
    get = p_entries.get
    for key in keys:
        acc = get(key, 0)
        for t in range(nterms):
            v = f[key - shifts[t]]
            if v:
                acc = acc - q_coeffs[t] * v
        if acc:
            if int_mode:
                acc = acc * q_inv_num if q_inv_den == 1 else -acc * q_inv_num
            else:
                acc = Fraction(acc * q_inv_num, q_inv_den)
        f[key] = acc
        out.append(acc)
    return out


def univariate_gauss_witness(p_coeffs, q_coeffs, nmax, prime, rmax, strength):
    """First failing Gauss congruence of the series of ``p/q``, or None.

    Coefficients of the series are computed modulo ``prime**(strength*rmax)``
    by the linear recurrence defined by ``q``; the constant coefficient
    of ``q`` must be a unit modulo ``prime``.  Checks
    ``f[m * prime**r] == f[m * prime**(r-1)]  (mod prime**(strength*r))``
    for every ``r <= rmax`` and every ``m >= 1`` with
    ``m * prime**r <= nmax``.  Returns ``(m, r, valuation)`` for the
    first failure in (r, m) order, or None when all congruences hold.
    """
    modulus = prime ** (strength * rmax)
    q0 = q_coeffs[0] % modulus
    inv = pow(q0, -1, modulus)
    dq = len(q_coeffs) - 1
    f = [0] * (nmax + 1)
    for n in range(nmax + 1):
        acc = p_coeffs[n] if n < len(p_coeffs) else 0
        for j in range(1, min(dq, n) + 1):
            acc -= q_coeffs[j] * f[n - j]
        f[n] = acc * inv % modulus
    pr = prime
    for r in range(1, rmax + 1):
        need = prime ** (strength * r)
        prev = pr // prime
        m = 1
        while m * pr <= nmax:
            diff = (f[m * pr] - f[m * prev]) % need
            if diff:
                val = 0
                while diff % prime == 0:
                    diff //= prime
                    val += 1
                return (m, r, val)
            m += 1
        pr *= prime
    return None
