# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the hot kernels in ``gausscong._kernels_py``.

``expand_packed`` keeps exact Python-object coefficient arithmetic but
strips the interpreter overhead from the graded recursion's inner loop;
``univariate_gauss_witness`` runs entirely in C integers (its moduli are
tiny by construction).
"""

from fractions import Fraction

from libc.stdlib cimport free, malloc


def expand_packed(keys, p_entries, shifts, q_coeffs, q_inv_num, q_inv_den, size):
    cdef Py_ssize_t npoints = len(keys)
    cdef Py_ssize_t nterms = len(shifts)
    cdef Py_ssize_t i, t
    cdef long long key
    cdef long long* ckeys = <long long*> malloc(npoints * sizeof(long long))
    cdef long long* cshifts = <long long*> malloc((nterms if nterms else 1) * sizeof(long long))
    if ckeys == NULL or cshifts == NULL:
        if ckeys != NULL:
            free(ckeys)
        if cshifts != NULL:
            free(cshifts)
        raise MemoryError()
    for i in range(npoints):
        ckeys[i] = keys[i]
    for t in range(nterms):
        cshifts[t] = shifts[t]
    cdef list f = [0] * size
    cdef list out = [0] * npoints
    cdef list qc = list(q_coeffs)
    cdef bint int_mode = q_inv_den == 1 or q_inv_den == -1
    cdef bint neg = q_inv_den == -1
    cdef object acc, v, zero = 0
    get = p_entries.get
    try:
        for i in range(npoints):
            key = ckeys[i]
            acc = get(key, zero)
            for t in range(nterms):
                v = f[key - cshifts[t]]
                if v:
                    acc = acc - qc[t] * v
            if acc:
                if int_mode:
                    acc = acc * q_inv_num
                    if neg:
                        acc = -acc
                else:
                    acc = Fraction(acc * q_inv_num, q_inv_den)
            f[key] = acc
            out[i] = acc
    finally:
        free(ckeys)
        free(cshifts)
    return out


def univariate_gauss_witness(p_coeffs, q_coeffs, nmax, prime, rmax, strength):
    cdef long long cmod = 1
    cdef long long cprime = prime
    cdef int crmax = rmax
    cdef int cstrength = strength
    cdef int r
    for r in range(cstrength * crmax):
        cmod *= cprime
    # moduli and intermediate products must fit well inside 64 bits
    if cmod > (<long long> 1) << 30:
        raise OverflowError("modulus too large for the compiled kernel")
    cdef Py_ssize_t cn = nmax
    cdef Py_ssize_t dq = len(q_coeffs) - 1
    cdef Py_ssize_t dp = len(p_coeffs) - 1
    cdef Py_ssize_t n, j, m
    cdef long long* f = <long long*> malloc((cn + 1) * sizeof(long long))
    cdef long long* qc = <long long*> malloc((dq + 1) * sizeof(long long))
    if f == NULL or qc == NULL:
        if f != NULL:
            free(f)
        if qc != NULL:
            free(qc)
        raise MemoryError()
    cdef long long acc, q0, inv, diff, pr, prev, need, val
    try:
        for j in range(dq + 1):
            qc[j] = q_coeffs[j] % cmod
        q0 = qc[0]
        inv = _modinv(q0, cmod)
        for n in range(cn + 1):
            acc = (p_coeffs[n] % cmod) if n <= dp else 0
            for j in range(1, (dq if dq < n else n) + 1):
                acc -= qc[j] * f[n - j] % cmod
            f[n] = (acc % cmod) * inv % cmod
            if f[n] < 0:
                f[n] += cmod
        pr = cprime
        for r in range(1, crmax + 1):
            need = 1
            for j in range(cstrength * r):
                need *= cprime
            prev = pr // cprime
            m = 1
            while m * pr <= cn:
                diff = (f[m * pr] - f[m * prev]) % need
                if diff < 0:
                    diff += need
                if diff != 0:
                    val = 0
                    while diff % cprime == 0:
                        diff //= cprime
                        val += 1
                    return (m, r, val)
                m += 1
            pr *= cprime
    finally:
        free(f)
        free(qc)
    return None


cdef long long _modinv(long long a, long long m):
    cdef long long g0 = a % m, g1 = m
    cdef long long x0 = 1, x1 = 0
    cdef long long q, t
    if g0 < 0:
        g0 += m
    while g1 != 0:
        q = g0 / g1
        t = g0 - q * g1
        g0 = g1
        g1 = t
        t = x0 - q * x1
        x0 = x1
        x1 = t
    if g0 != 1:
        raise ValueError("not invertible")
    x0 %= m
    if x0 < 0:
        x0 += m
    return x0
