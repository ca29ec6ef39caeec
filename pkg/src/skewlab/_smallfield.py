"""Table-driven arithmetic for F_q and dense univariate polynomials over it.

Only used while setting up an :class:`~skewlab.fieldtower.ExtField`: finding
and checking moduli, and building the F_q lookup tables consumed by the
compiled kernels.  Polynomials are Python lists, lowest degree first.
"""

from __future__ import annotations

import numpy as np


class SmallField:
    """F_q = F_p[z]/(inner) with q*q lookup tables (elements are encodings)."""

    def __init__(self, p: int, inner: tuple[int, ...] | None):
        self.p = p
        if inner is None or len(inner) <= 2:
            e = 1
        else:
            e = len(inner) - 1
        self.e = e
        self.q = q = p**e
        digits = _digits(np.arange(q, dtype=np.int64), p, e)
        weights = p ** np.arange(e, dtype=np.int64)

        def encode(d):
            return (d % p) @ weights

        self.add = encode(digits[:, None, :] + digits[None, :, :])
        self.sub = encode(digits[:, None, :] - digits[None, :, :] + p)
        if e == 1:
            idx = np.arange(q, dtype=np.int64)
            self.mul = np.outer(idx, idx) % p
        else:
            low = -np.asarray(inner[:e], dtype=np.int64)
            shifted = [digits]
            cur = digits
            for _ in range(e - 1):
                top = cur[:, e - 1]
                nxt = np.zeros_like(cur)
                nxt[:, 1:] = cur[:, :-1]
                nxt = (nxt + top[:, None] * low[None, :]) % p
                shifted.append(nxt)
                cur = nxt
            acc = np.zeros((q, q, e), dtype=np.int64)
            for k in range(e):
                acc += digits[None, :, k, None] * shifted[k][:, None, :]
            self.mul = encode(acc)
        self.inv = np.zeros(q, dtype=np.int64)
        rows, cols = np.nonzero(self.mul == 1)
        self.inv[rows] = cols
        self.neg = self.sub[0].copy()

    # polynomial helpers --------------------------------------------------

    def trim(self, f):
        f = list(f)
        while len(f) > 1 and f[-1] == 0:
            f.pop()
        return f

    def pmul(self, f, g):
        out = [0] * (len(f) + len(g) - 1)
        for i, a in enumerate(f):
            if a == 0:
                continue
            row = self.mul[a]
            for j, b in enumerate(g):
                if b:
                    out[i + j] = int(self.add[out[i + j], row[b]])
        return self.trim(out)

    def pdivmod(self, f, g):
        f = self.trim(f)
        g = self.trim(g)
        dg = len(g) - 1
        if len(f) - 1 < dg:
            return [0], f
        r = list(f)
        quo = [0] * (len(f) - dg)
        li = int(self.inv[g[-1]])
        for d in range(len(f) - 1, dg - 1, -1):
            c = int(self.mul[r[d], li])
            if c == 0:
                continue
            quo[d - dg] = c
            for i, gi in enumerate(g):
                if gi:
                    r[d - dg + i] = int(self.sub[r[d - dg + i], self.mul[c, gi]])
        return self.trim(quo), self.trim(r[:dg] if dg > 0 else [0])

    def pmod(self, f, g):
        return self.pdivmod(f, g)[1]

    def psub(self, f, g):
        n = max(len(f), len(g))
        f = list(f) + [0] * (n - len(f))
        g = list(g) + [0] * (n - len(g))
        return self.trim([int(self.sub[a, b]) for a, b in zip(f, g)])

    def monic(self, f):
        f = self.trim(f)
        li = int(self.inv[f[-1]])
        return [int(self.mul[c, li]) for c in f]

    def pgcd(self, f, g):
        f, g = self.trim(f), self.trim(g)
        while g != [0]:
            f, g = g, self.pmod(f, g)
        return self.monic(f) if f != [0] else [0]

    def ppowmod(self, f, n, mod):
        result = [1]
        base = self.pmod(f, mod)
        while n:
            if n & 1:
                result = self.pmod(self.pmul(result, base), mod)
            base = self.pmod(self.pmul(base, base), mod)
            n >>= 1
        return result

    def find_factor(self, f):
        """Return ``None`` if monic ``f`` is irreducible, otherwise a factor.

        Distinct-degree test: gcd(x^(q^d) - x, f) for d <= deg f / 2.  Linear
        factors are reported as x - r for the smallest root r; otherwise the
        returned factor is the product of all degree-d irreducible factors
        for the smallest d that has any.
        """
        f = self.trim(f)
        n = len(f) - 1
        if n <= 0:
            return f
        if n == 1:
            return None
        for r in range(self.q):
            if self.peval(f, r) == 0:
                return [int(self.neg[r]), 1]
        h = [0, 1]
        for d in range(1, n // 2 + 1):
            h = self.ppowmod(h, self.q, f)
            if d == 1:
                continue
            g = self.pgcd(f, self.psub(h, [0, 1]))
            if len(g) > 1:
                return g
        return None

    def peval(self, f, x):
        acc = 0
        for c in reversed(f):
            acc = int(self.add[self.mul[acc, x], c])
        return acc


def _digits(values, base, count):
    out = np.empty(values.shape + (count,), dtype=np.int64)
    v = values.copy()
    for i in range(count):
        out[..., i] = v % base
        v //= base
    return out


def first_irreducible(F: SmallField, degree: int):
    """Monic irreducible of ``degree`` over ``F`` minimising sum c_i q^i.

    The search runs over the low coefficients (c_0, ..., c_{deg-1}) in
    increasing order of their base-q encoding.
    """
    q = F.q
    if degree == 1:
        return [0, 1]
    for code in range(1, q**degree):
        low = [(code // q**i) % q for i in range(degree)]
        f = low + [1]
        if F.find_factor(f) is None:
            return f
    raise ValueError("no irreducible polynomial found")
