"""Compiled inner loops for arithmetic over the field tower.

Elements are int64 encodings ``enc(a) = sum_i c_i q^i`` with base-q digits
``c_i`` in F_q, themselves base-p digit strings.  Every kernel takes a
:class:`Tables` tuple describing one field; see ``fieldtower.ExtField``.

Small fields (order up to ``LOG_TABLE_LIMIT``) multiply with log/antilog
tables indexed by encoding.  Larger fields must have characteristic 2.
Those of even degree over F_2 are kept, internally, as a quadratic
extension of their half-degree subfield: elements ``x0 + x1 w`` with log
tables for the subfield and a Karatsuba product.  A fixed F_2-linear basis
change (byte lookup tables) converts between that form and the tower
encoding.  The packed schoolbook product over the F_q digits is the
remaining fallback.
"""

from collections import namedtuple

import numpy as np
from numba import njit

#: Lookup tables live in one int64 buffer ``D``; the ``o_*`` fields are
#: offsets into it.  Keeping a single array in the tuple matters: numba
#: reference-counts every array member on each non-inlined call.
TABLE_NAMES = (
    "log",  # [order], discrete log (log representation only)
    "exp",  # [2 * (order - 1)]
    "mulq",  # [q * q]
    "addq",  # [q * q]
    "red",  # [m], y^m = sum red[i] y^i
    "frob",  # [m * m], enc(sigma^j(y^i)) at j * m + i
    "qpow",  # [m], q^j mod (order - 1)
    "alog",  # [2^hb], half-field log (quadratic representation only)
    "aexp",  # [2 * (2^hb - 1)]
    "toalt",  # [nchunk * 256], byte tables tower -> quadratic form
    "fromalt",  # [nchunk * 256]
)

Tables = namedtuple(
    "Tables",
    [
        "p",  # characteristic
        "e",  # [F_q : F_p]
        "m",  # [F_{q^m} : F_q]
        "q",
        "order",  # q^m
        "uselog",
        "char2",
        "alt",  # quadratic-over-half-field representation in use
        "hb",  # bits of the half field
        "alc",  # log of the constant term c of w^2 = t w + c
        "alt1",  # log of 1 + t, or -1 when 1 + t = 0
        "alogt",  # log of t, or -1 when t = 0
        "nchunk",
        "D",
    ]
    + ["o_" + n for n in TABLE_NAMES],
)


def pack_tables(scalars: dict, arrays: dict) -> Tables:
    offs = {}
    parts = []
    pos = 0
    for name in TABLE_NAMES:
        arr = np.ascontiguousarray(arrays.get(name, np.zeros(1)), dtype=np.int64).ravel()
        offs["o_" + name] = pos
        parts.append(arr)
        pos += arr.size
    D = np.concatenate(parts)
    kw = {k: scalars[k] for k in Tables._fields if k in scalars}
    return Tables(D=D, **kw, **offs)


def table(T: Tables, name: str) -> np.ndarray:
    """View of one packed table (for Python-side inspection)."""
    i = TABLE_NAMES.index(name)
    start = getattr(T, "o_" + name)
    stop = getattr(T, "o_" + TABLE_NAMES[i + 1]) if i + 1 < len(TABLE_NAMES) else T.D.size
    return T.D[start:stop]


# ---------------------------------------------------------------------------
# scalar arithmetic


@njit(cache=True, nogil=True)
def f_add(T, a, b):
    if T.char2:
        return a ^ b
    p = T.p
    r = 0
    w = 1
    while a > 0 or b > 0:
        s = a % p + b % p
        if s >= p:
            s -= p
        r += s * w
        w *= p
        a //= p
        b //= p
    return r


@njit(cache=True, nogil=True)
def f_sub(T, a, b):
    if T.char2:
        return a ^ b
    p = T.p
    r = 0
    w = 1
    while a > 0 or b > 0:
        s = a % p - b % p
        if s < 0:
            s += p
        r += s * w
        w *= p
        a //= p
        b //= p
    return r


@njit(cache=True, nogil=True)
def f_neg(T, a):
    if T.char2:
        return a
    return f_sub(T, 0, a)


@njit(cache=True, nogil=True)
def _tower_mul2(T, a, b):
    # packed F_q digits, characteristic 2; degrees >= m accumulate in hi
    e = T.e
    m = T.m
    q = T.q
    mask = q - 1
    lo = 0
    hi = 0
    for i in range(m):
        ai = (a >> (e * i)) & mask
        if ai == 0:
            continue
        row = ai * q
        for j in range(m):
            bj = (b >> (e * j)) & mask
            if bj == 0:
                continue
            pr = T.D[T.o_mulq + row + bj]
            d = i + j
            if d < m:
                lo ^= pr << (e * d)
            else:
                hi ^= pr << (e * (d - m))
    for d in range(2 * m - 2, m - 1, -1):
        c = (hi >> (e * (d - m))) & mask
        if c == 0:
            continue
        row = c * q
        for i in range(m):
            ri = T.D[T.o_red + i]
            if ri == 0:
                continue
            pr = T.D[T.o_mulq + row + ri]
            dd = d - m + i
            if dd < m:
                lo ^= pr << (e * dd)
            else:
                hi ^= pr << (e * (dd - m))
    return lo


@njit(cache=True, nogil=True)
def _tower_mul_generic(T, a, b):
    m = T.m
    q = T.q
    da = np.zeros(m, np.int64)
    db = np.zeros(m, np.int64)
    for i in range(m):
        da[i] = a % q
        a //= q
        db[i] = b % q
        b //= q
    pr = np.zeros(2 * m - 1, np.int64)
    for i in range(m):
        if da[i] == 0:
            continue
        for j in range(m):
            if db[j] == 0:
                continue
            d = i + j
            pr[d] = T.D[T.o_addq + pr[d] * q + T.D[T.o_mulq + da[i] * q + db[j]]]
    for d in range(2 * m - 2, m - 1, -1):
        c = pr[d]
        if c == 0:
            continue
        for i in range(m):
            dd = d - m + i
            pr[dd] = T.D[T.o_addq + pr[dd] * q + T.D[T.o_mulq + c * q + T.D[T.o_red + i]]]
    r = 0
    w = 1
    for i in range(m):
        r += pr[i] * w
        w *= q
    return r


@njit(cache=True, nogil=True)
def _lin(T, off, x):
    r = np.int64(0)
    for i in range(T.nchunk):
        r ^= T.D[off + i * 256 + ((x >> (8 * i)) & 255)]
    return r


@njit(cache=True, nogil=True)
def to_alt(T, x):
    return _lin(T, T.o_toalt, x)


@njit(cache=True, nogil=True)
def from_alt(T, x):
    return _lin(T, T.o_fromalt, x)


@njit(cache=True, nogil=True)
def _hmul(T, a, b):
    if a == 0 or b == 0:
        return np.int64(0)
    return np.int64(T.D[T.o_aexp + T.D[T.o_alog + a] + T.D[T.o_alog + b]])


@njit(cache=True, nogil=True)
def alt_mul(T, a, b):
    # (a0 + a1 w)(b0 + b1 w) with w^2 = t w + c
    if a == 0 or b == 0:
        return np.int64(0)
    h = T.hb
    mask = (np.int64(1) << h) - 1
    a0 = a & mask
    a1 = a >> h
    b0 = b & mask
    b1 = b >> h
    m0 = _hmul(T, a0, b0)
    m1 = _hmul(T, a0 ^ a1, b0 ^ b1)
    lo = m0
    hi = m1 ^ m0
    if a1 != 0 and b1 != 0:
        l2 = np.int64(T.D[T.o_alog + a1]) + T.D[T.o_alog + b1]
        lo ^= np.int64(T.D[T.o_aexp + l2 + T.alc])
        if T.alt1 >= 0:
            hi ^= np.int64(T.D[T.o_aexp + l2 + T.alt1])
    return lo | (hi << h)


@njit(cache=True, nogil=True)
def alt_inv(T, a):
    h = T.hb
    mask = (np.int64(1) << h) - 1
    x0 = a & mask
    x1 = a >> h
    n = _hmul(T, x0, x0)
    x1t = np.int64(0)
    if x1 != 0:
        period = (1 << T.hb) - 1
        lx1 = np.int64(T.D[T.o_alog + x1])
        n ^= np.int64(T.D[T.o_aexp + (2 * lx1 + T.alc) % period])
        if T.alogt >= 0:
            x1t = np.int64(T.D[T.o_aexp + (lx1 + T.alogt) % period])
            if x0 != 0:
                n ^= _hmul(T, x0, x1t)
    period = (1 << T.hb) - 1
    ln = np.int64(T.D[T.o_alog + n])
    lo = x0 ^ x1t
    r0 = np.int64(0)
    r1 = np.int64(0)
    if lo != 0:
        r0 = np.int64(T.D[T.o_aexp + (T.D[T.o_alog + lo] - ln + period) % period])
    if x1 != 0:
        r1 = np.int64(T.D[T.o_aexp + (T.D[T.o_alog + x1] - ln + period) % period])
    return r0 | (r1 << h)



@njit(cache=True, nogil=True)
def tower_mul(T, a, b):
    if a == 0 or b == 0:
        return 0
    if T.char2:
        return _tower_mul2(T, a, b)
    return _tower_mul_generic(T, a, b)


@njit(cache=True, nogil=True)
def f_mul(T, a, b):
    if a == 0 or b == 0:
        return 0
    if T.uselog:
        return np.int64(T.D[T.o_exp + T.D[T.o_log + a] + T.D[T.o_log + b]])
    if T.alt:
        return from_alt(T, alt_mul(T, to_alt(T, a), to_alt(T, b)))
    if T.char2:
        return _tower_mul2(T, a, b)
    return _tower_mul_generic(T, a, b)


@njit(cache=True, nogil=True)
def f_pow(T, a, n):
    # n >= 0, already reduced modulo order - 1 by the caller when a != 0
    if n == 0:
        return 1
    if a == 0:
        return 0
    if T.uselog:
        return np.int64(T.D[T.o_exp + (np.int64(T.D[T.o_log + a]) * n) % (T.order - 1)])
    r = 1
    b = a
    while n > 0:
        if n & 1:
            r = f_mul(T, r, b)
        b = f_mul(T, b, b)
        n >>= 1
    return r


@njit(cache=True, nogil=True)
def f_inv(T, a):
    if T.uselog:
        return np.int64(T.D[T.o_exp + T.order - 1 - T.D[T.o_log + a]])
    if T.alt:
        return from_alt(T, alt_inv(T, to_alt(T, a)))
    return f_pow(T, a, T.order - 2)


@njit(cache=True, nogil=True)
def f_frob(T, a, j):
    """sigma^j(a) = a^(q^j) for 0 <= j < m."""
    if j == 0 or a == 0:
        return a
    if T.uselog:
        return np.int64(T.D[T.o_exp + (np.int64(T.D[T.o_log + a]) * T.D[T.o_qpow + j]) % (T.order - 1)])
    m = T.m
    q = T.q
    r = 0
    base = j * m
    for i in range(m):
        c = a % q
        a //= q
        if c != 0:
            r = f_add(T, r, f_mul(T, c, T.D[T.o_frob + base + i]))
    return r


@njit(cache=True, nogil=True)
def f_theta(T, s, a, i):
    """theta^i(a) for theta = sigma^s; i may be negative."""
    m = T.m
    j = (i * s) % m
    if j < 0:
        j += m
    return f_frob(T, a, j)


@njit(cache=True, nogil=True)
def f_conj(T, s, a, c):
    # a^c = theta(c) a c^{-1}
    return f_mul(T, f_mul(T, f_theta(T, s, c, 1), a), f_inv(T, c))


# ---------------------------------------------------------------------------
# vector kernels (1-d)


@njit(cache=True, nogil=True)
def v_add(T, a, b):
    out = np.empty_like(a)
    for i in range(a.size):
        out[i] = f_add(T, a[i], b[i])
    return out


@njit(cache=True, nogil=True)
def v_sub(T, a, b):
    out = np.empty_like(a)
    for i in range(a.size):
        out[i] = f_sub(T, a[i], b[i])
    return out


@njit(cache=True, nogil=True)
def v_neg(T, a):
    out = np.empty_like(a)
    for i in range(a.size):
        out[i] = f_neg(T, a[i])
    return out


@njit(cache=True, nogil=True)
def v_mul(T, a, b):
    out = np.empty_like(a)
    for i in range(a.size):
        out[i] = f_mul(T, a[i], b[i])
    return out


@njit(cache=True, nogil=True)
def v_inv(T, a):
    out = np.empty_like(a)
    for i in range(a.size):
        out[i] = f_inv(T, a[i])
    return out


@njit(cache=True, nogil=True)
def v_pow(T, a, n):
    out = np.empty_like(a)
    for i in range(a.size):
        out[i] = f_pow(T, a[i], n)
    return out


@njit(cache=True, nogil=True)
def v_frob(T, a, j):
    out = np.empty_like(a)
    for i in range(a.size):
        out[i] = f_frob(T, a[i], j)
    return out


@njit(cache=True, nogil=True)
def v_conj(T, s, a, c):
    out = np.empty_like(a)
    for i in range(a.size):
        out[i] = f_conj(T, s, a[i], c[i])
    return out


@njit(cache=True, nogil=True)
def build_exp_table(T, g, out):
    x = np.int64(1)
    n = T.order - 1
    for i in range(n):
        out[i] = x
        out[i + n] = x
        x = tower_mul(T, x, g)
    return x


# ---------------------------------------------------------------------------
# row operations and dense elimination
#
# These kernels work in the "internal" representation: the quadratic form
# when ``T.alt`` is set, the plain encoding otherwise.  Public entry points
# convert on the way in and out.


@njit(cache=True, nogil=True)
def _xm(T, a, b):
    if T.alt:
        return alt_mul(T, a, b)
    return f_mul(T, a, b)


@njit(cache=True, nogil=True)
def _xi(T, a):
    if T.alt:
        return alt_inv(T, a)
    return f_inv(T, a)


@njit(cache=True, nogil=True)
def _to_internal(T, M):
    if T.alt:
        flat = M.ravel()
        for i in range(flat.size):
            flat[i] = to_alt(T, flat[i])


@njit(cache=True, nogil=True)
def _from_internal(T, M):
    if T.alt:
        flat = M.ravel()
        for i in range(flat.size):
            flat[i] = from_alt(T, flat[i])


@njit(cache=True, nogil=True)
def _axpy(T, dst, f, src, start):
    # dst[start:] -= f * src[start:]
    n = dst.size
    if T.uselog:
        lf = np.int64(T.D[T.o_log + f])
        for j in range(start, n):
            x = src[j]
            if x != 0:
                pr = np.int64(T.D[T.o_exp + lf + T.D[T.o_log + x]])
                if T.char2:
                    dst[j] ^= pr
                else:
                    dst[j] = f_sub(T, dst[j], pr)
    else:
        for j in range(start, n):
            x = src[j]
            if x != 0:
                dst[j] = f_sub(T, dst[j], _xm(T, f, x))


@njit(cache=True, nogil=True)
def _scale(T, row, f, start):
    for j in range(start, row.size):
        row[j] = _xm(T, row[j], f)


@njit(cache=True, nogil=True)
def _rref_internal(T, M, ncols):
    rows, cols = M.shape
    piv = np.empty(min(rows, ncols), np.int64)
    r = 0
    for c in range(ncols):
        if r == rows:
            break
        pr = -1
        for i in range(r, rows):
            if M[i, c] != 0:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            for j in range(c, cols):
                tmp = M[r, j]
                M[r, j] = M[pr, j]
                M[pr, j] = tmp
        inv = _xi(T, M[r, c])
        _scale(T, M[r], inv, c)
        for i in range(rows):
            if i != r:
                f = M[i, c]
                if f != 0:
                    _axpy(T, M[i], f, M[r], c)
        piv[r] = c
        r += 1
    return r, piv[:r]


@njit(cache=True, nogil=True)
def rref_inplace(T, M, ncols):
    """Reduced row echelon form over the first ``ncols`` pivot columns.

    Columns beyond ``ncols`` are carried along (augmented part).  Returns
    ``(rank, pivots)``.
    """
    _to_internal(T, M)
    res = _rref_internal(T, M, ncols)
    _from_internal(T, M)
    return res


@njit(cache=True, nogil=True)
def matmul(T, A, B):
    n, k = A.shape
    k2, m = B.shape
    A = A.copy()
    B = B.copy()
    _to_internal(T, A)
    _to_internal(T, B)
    C = np.zeros((n, m), np.int64)
    for i in range(n):
        for t in range(k):
            a = A[i, t]
            if a != 0:
                _axpy(T, C[i], f_neg(T, a), B[t], 0)
    _from_internal(T, C)
    return C


@njit(cache=True, nogil=True)
def square_rank(T, G, stop):
    """Rank of the span of all g_i * g_j (i <= j), stopping early at ``stop``.

    Maintains a fully reduced echelon basis; each new product row is
    reduced against it touching only the non-pivot columns.
    """
    if T.alt:
        return _square_rank_alt(T, G, stop)
    G = G.copy()
    _to_internal(T, G)
    k, n = G.shape
    B = np.zeros((n, n), np.int64)
    bpiv = np.empty(n, np.int64)
    ispiv = np.zeros(n, np.bool_)
    free = np.arange(n)
    nfree = n
    rank = 0
    v = np.empty(n, np.int64)
    for i in range(k):
        for j in range(i, k):
            for c in range(n):
                v[c] = _xm(T, G[i, c], G[j, c])
            for b in range(rank):
                f = v[bpiv[b]]
                if f == 0:
                    continue
                v[bpiv[b]] = 0
                if T.uselog:
                    lf = np.int64(T.D[T.o_log + f])
                    for t in range(nfree):
                        c = free[t]
                        x = B[b, c]
                        if x != 0:
                            pr = np.int64(T.D[T.o_exp + lf + T.D[T.o_log + x]])
                            if T.char2:
                                v[c] ^= pr
                            else:
                                v[c] = f_sub(T, v[c], pr)
                else:
                    for t in range(nfree):
                        c = free[t]
                        x = B[b, c]
                        if x != 0:
                            v[c] = f_sub(T, v[c], _xm(T, f, x))
            pc = -1
            for t in range(nfree):
                if v[free[t]] != 0:
                    pc = free[t]
                    break
            if pc < 0:
                continue
            inv = _xi(T, v[pc])
            for t in range(nfree):
                c = free[t]
                v[c] = _xm(T, v[c], inv)
            for b in range(rank):
                f = B[b, pc]
                if f == 0:
                    continue
                B[b, pc] = 0
                for t in range(nfree):
                    c = free[t]
                    if c != pc and v[c] != 0:
                        B[b, c] = f_sub(T, B[b, c], _xm(T, f, v[c]))
            for c in range(n):
                B[rank, c] = 0
            for t in range(nfree):
                c = free[t]
                B[rank, c] = v[c]
            bpiv[rank] = pc
            ispiv[pc] = True
            rank += 1
            nf = 0
            for c in range(n):
                if not ispiv[c]:
                    free[nf] = c
                    nf += 1
            nfree = nf
            if rank >= stop:
                return rank
    return rank


@njit(cache=True, nogil=True)
def _alt_logs(T, x, S):
    # half-field logs of (x0, x1, x0 + x1); S stands for log(0)
    h = T.hb
    mask = (np.int64(1) << h) - 1
    x0 = x & mask
    x1 = x >> h
    l0 = np.int64(T.D[T.o_alog + x0]) if x0 != 0 else S
    l1 = np.int64(T.D[T.o_alog + x1]) if x1 != 0 else S
    x01 = x0 ^ x1
    l01 = np.int64(T.D[T.o_alog + x01]) if x01 != 0 else S
    return l0, l1, l01


@njit(cache=True, nogil=True)
def _square_rank_alt(T, G, stop):
    """square_rank for the quadratic representation (char 2).

    Every basis entry keeps the logs of its two halves and of their sum, so
    a product f * x costs four lookups in an exp table padded with zeros
    that also absorbs log(0).
    """
    G = G.copy()
    _to_internal(T, G)
    k, n = G.shape
    h = T.hb
    size = (np.int64(1) << h) - 1
    S = 3 * size
    E = np.zeros(7 * size + 2, np.int64)
    for i in range(3 * size):
        E[i] = T.D[T.o_aexp + i]
    alc = np.int64(T.alc)
    alt1 = np.int64(T.alt1)
    B = np.zeros((n, n), np.int64)
    L0 = np.zeros((n, n), np.int64)
    L1 = np.zeros((n, n), np.int64)
    L01 = np.zeros((n, n), np.int64)
    bpiv = np.empty(n, np.int64)
    ispiv = np.zeros(n, np.bool_)
    free = np.arange(n)
    nfree = n
    rank = 0
    v = np.empty(n, np.int64)
    V0 = np.empty(n, np.int64)
    V1 = np.empty(n, np.int64)
    V01 = np.empty(n, np.int64)
    for i in range(k):
        for j in range(i, k):
            for c in range(n):
                v[c] = alt_mul(T, G[i, c], G[j, c])
            for b in range(rank):
                f = v[bpiv[b]]
                if f == 0:
                    continue
                v[bpiv[b]] = 0
                f0, f1, f01 = _alt_logs(T, f, S)
                for t in range(nfree):
                    c = free[t]
                    m0 = E[f0 + L0[b, c]]
                    m1 = E[f01 + L01[b, c]]
                    l2 = f1 + L1[b, c]
                    lo = m0 ^ E[l2 + alc]
                    hi = m1 ^ m0
                    if alt1 >= 0:
                        hi ^= E[l2 + alt1]
                    v[c] ^= lo | (hi << h)
            pc = -1
            for t in range(nfree):
                if v[free[t]] != 0:
                    pc = free[t]
                    break
            if pc < 0:
                continue
            inv = alt_inv(T, v[pc])
            for t in range(nfree):
                c = free[t]
                v[c] = alt_mul(T, v[c], inv)
                V0[c], V1[c], V01[c] = _alt_logs(T, v[c], S)
            for b in range(rank):
                f = B[b, pc]
                if f == 0:
                    continue
                B[b, pc] = 0
                L0[b, pc] = S
                L1[b, pc] = S
                L01[b, pc] = S
                f0, f1, f01 = _alt_logs(T, f, S)
                for t in range(nfree):
                    c = free[t]
                    if c != pc and v[c] != 0:
                        m0 = E[f0 + V0[c]]
                        m1 = E[f01 + V01[c]]
                        l2 = f1 + V1[c]
                        lo = m0 ^ E[l2 + alc]
                        hi = m1 ^ m0
                        if alt1 >= 0:
                            hi ^= E[l2 + alt1]
                        x = B[b, c] ^ (lo | (hi << h))
                        B[b, c] = x
                        L0[b, c], L1[b, c], L01[b, c] = _alt_logs(T, x, S)
            for c in range(n):
                B[rank, c] = 0
                L0[rank, c] = S
                L1[rank, c] = S
                L01[rank, c] = S
            for t in range(nfree):
                c = free[t]
                B[rank, c] = v[c]
                L0[rank, c] = V0[c]
                L1[rank, c] = V1[c]
                L01[rank, c] = V01[c]
            bpiv[rank] = pc
            ispiv[pc] = True
            rank += 1
            nf = 0
            for c in range(n):
                if not ispiv[c]:
                    free[nf] = c
                    nf += 1
            nfree = nf
            if rank >= stop:
                return rank
    return rank


# ---------------------------------------------------------------------------
# skew polynomial kernels; s selects theta = sigma^s


@njit(cache=True, nogil=True)
def skew_mul(T, s, f, g):
    nf = f.size
    ng = g.size
    out = np.zeros(nf + ng - 1, np.int64)
    for i in range(nf):
        fi = f[i]
        if fi == 0:
            continue
        for j in range(ng):
            gj = g[j]
            if gj != 0:
                out[i + j] = f_add(T, out[i + j], f_mul(T, fi, f_theta(T, s, gj, i)))
    return out


@njit(cache=True, nogil=True)
def skew_right_divmod(T, s, f, g):
    # f = q g + r ; g has nonzero leading coefficient
    r = f.copy()
    dg = g.size - 1
    df = r.size - 1
    if df < dg:
        return np.zeros(1, np.int64), r
    quo = np.zeros(df - dg + 1, np.int64)
    for d in range(df, dg - 1, -1):
        lead = r[d]
        if lead == 0:
            continue
        j = d - dg
        c = f_mul(T, lead, f_inv(T, f_theta(T, s, g[dg], j)))
        quo[j] = c
        # subtract (c x^j) g = sum_i c theta^j(g_i) x^{i+j}
        for i in range(dg + 1):
            gi = g[i]
            if gi != 0:
                r[i + j] = f_sub(T, r[i + j], f_mul(T, c, f_theta(T, s, gi, j)))
    return quo, r[: max(dg, 1)]


@njit(cache=True, nogil=True)
def skew_left_divmod(T, s, f, g):
    # f = g q + r
    r = f.copy()
    dg = g.size - 1
    df = r.size - 1
    if df < dg:
        return np.zeros(1, np.int64), r
    quo = np.zeros(df - dg + 1, np.int64)
    ginv = f_inv(T, g[dg])
    for d in range(df, dg - 1, -1):
        lead = r[d]
        if lead == 0:
            continue
        j = d - dg
        # g_dg theta^dg(c) = lead
        c = f_theta(T, s, f_mul(T, ginv, lead), -dg)
        quo[j] = c
        # subtract g (c x^j) = sum_i g_i theta^i(c) x^{i+j}
        for i in range(dg + 1):
            gi = g[i]
            if gi != 0:
                r[i + j] = f_sub(T, r[i + j], f_mul(T, gi, f_theta(T, s, c, i)))
    return quo, r[: max(dg, 1)]


@njit(cache=True, nogil=True)
def rem_eval(T, s, f, pts):
    # sum_i f_i a^[[i]] with a^[[i+1]] = a * theta(a^[[i]])
    out = np.zeros(pts.size, np.int64)
    for t in range(pts.size):
        a = pts[t]
        acc = 0
        pw = np.int64(1)
        for i in range(f.size):
            if f[i] != 0:
                acc = f_add(T, acc, f_mul(T, f[i], pw))
            pw = f_mul(T, a, f_theta(T, s, pw, 1))
        out[t] = acc
    return out


@njit(cache=True, nogil=True)
def op_eval(T, s, f, b, a):
    # sum_i f_i D_a^i(b) with D_a(x) = theta(x) a
    out = np.zeros(b.size, np.int64)
    for t in range(b.size):
        acc = 0
        d = b[t]
        at = a[t]
        for i in range(f.size):
            if f[i] != 0:
                acc = f_add(T, acc, f_mul(T, f[i], d))
            d = f_mul(T, f_theta(T, s, d, 1), at)
        out[t] = acc
    return out


@njit(cache=True, nogil=True)
def min_vanishing(T, s, pts):
    """Monic lclm of (x - a) over ``pts`` built incrementally.

    If L(a) = r != 0 then lclm(L, x - a) = (x - a^r) L by the product rule.
    """
    n = pts.size
    L = np.zeros(n + 1, np.int64)
    L[0] = 1
    deg = 0
    for t in range(n):
        a = pts[t]
        acc = 0
        pw = np.int64(1)
        for i in range(deg + 1):
            if L[i] != 0:
                acc = f_add(T, acc, f_mul(T, L[i], pw))
            pw = f_mul(T, a, f_theta(T, s, pw, 1))
        if acc == 0:
            continue
        c = f_conj(T, s, a, acc)
        # new = x L - c L
        new = np.zeros(n + 1, np.int64)
        for i in range(deg + 1):
            li = L[i]
            if li != 0:
                new[i + 1] = f_add(T, new[i + 1], f_theta(T, s, li, 1))
                new[i] = f_sub(T, new[i], f_mul(T, c, li))
        L = new
        deg += 1
    return L[: deg + 1]


@njit(cache=True, nogil=True)
def skew_vandermonde(T, s, pts, k):
    n = pts.size
    V = np.empty((k, n), np.int64)
    for c in range(n):
        x = np.int64(1)
        a = pts[c]
        for r in range(k):
            V[r, c] = x
            x = f_mul(T, a, f_theta(T, s, x, 1))
    return V


@njit(cache=True, nogil=True)
def moore(T, s, b, a, k):
    n = b.size
    V = np.empty((k, n), np.int64)
    for c in range(n):
        x = b[c]
        ac = a[c]
        for r in range(k):
            V[r, c] = x
            x = f_mul(T, f_theta(T, s, x, 1), ac)
    return V
