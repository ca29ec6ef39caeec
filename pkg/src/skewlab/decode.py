"""Unique decoding of GSRS codes in the Hamming metric.

:func:`decode_gsrs` solves a skew Welch-Berlekamp interpolation system:
with y_i = r_i / lambda_i, find Q0 (degree <= k+t-1) and Q1 (degree <= t)
such that

    Q0(alpha_i) + D(Q1; y_i, alpha_i) = 0   for all i,

where Q0(alpha_i) is remainder evaluation and D(Q1; y, a) is generalized
operator evaluation.  At every error-free position the left side equals
(Q0 + Q1 f)(alpha_i) by the product rule, so Q0 = -Q1 f and the message is
the exact left quotient of -Q0 by Q1.

:func:`brute_force_decode` is an exhaustive nearest-codeword oracle for
small instances.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .evalcodes import GlrsSpec, GsrsSpec, glrs_to_gsrs, gsrs_generator
from .fieldtower import DomainError
from .matcodes import ENUMERATION_BUDGET, BudgetExceeded
from .skewpoly import SkewPolynomial, Side, divide


@dataclass(frozen=True, eq=False)
class DecodeResult:
    """Outcome of a decoding attempt.

    On success ``message`` holds f with deg f < k and ``codeword`` is its
    encoding; ``error`` is r - codeword.  On failure ``message`` is ``None``
    and ``reason`` explains why.
    """

    message: SkewPolynomial | None
    codeword: np.ndarray | None
    error: np.ndarray | None
    reason: str | None = None

    @property
    def ok(self) -> bool:
        return self.message is not None

    @classmethod
    def failure(cls, reason: str) -> "DecodeResult":
        return cls(None, None, None, reason)


def max_radius(spec: GsrsSpec) -> int:
    return (spec.n - spec.k) // 2


def _as_gsrs(spec) -> GsrsSpec:
    return glrs_to_gsrs(spec) if isinstance(spec, GlrsSpec) else spec


def _check_radius(spec: GsrsSpec, t: int | None) -> int:
    tmax = max_radius(spec)
    if t is None:
        return tmax
    if not 0 <= t <= tmax:
        raise DomainError(f"decoding radius must lie in [0, {tmax}], got {t}")
    return int(t)


def encode(spec: GsrsSpec, f) -> np.ndarray:
    """Codeword (f(alpha_i) lambda_i)_i of a message polynomial or coefficient vector."""
    coeffs = f.coeffs if isinstance(f, SkewPolynomial) else np.asarray(f, dtype=np.int64)
    if coeffs.size > spec.k and np.any(coeffs[spec.k:]):
        raise DomainError("message degree must be below k")
    F, th = spec.field, spec.theta
    vals = K.rem_eval(F.T, th.s, np.ascontiguousarray(coeffs, dtype=np.int64), spec.alpha)
    return F.mul(vals, spec.lam)


def _finish(spec: GsrsSpec, r: np.ndarray, f: SkewPolynomial, t: int) -> DecodeResult:
    c = encode(spec, f)
    e = spec.field.sub(r, c)
    if np.count_nonzero(e) > t:
        return DecodeResult.failure("re-encoded codeword is farther than t")
    return DecodeResult(f, c, e)


def interpolation_matrix(spec: GsrsSpec, r, t: int) -> np.ndarray:
    """n x (k + 2t + 1) system: columns for Q0 first, then for Q1."""
    F, th = spec.field, spec.theta
    y = F.mul(np.asarray(r, dtype=np.int64), F.inv(spec.lam))
    A0 = K.skew_vandermonde(F.T, th.s, spec.alpha, spec.k + t)
    A1 = K.moore(F.T, th.s, np.ascontiguousarray(y), spec.alpha, t + 1)
    return np.ascontiguousarray(np.vstack([A0, A1]).T)


def decode_gsrs(spec, r, t: int | None = None) -> DecodeResult:
    """Decode up to ``t`` Hamming errors (default floor((n-k)/2)).

    Any returned success satisfies ``weight(r - codeword) <= t``.
    """
    spec = _as_gsrs(spec)
    t = _check_radius(spec, t)
    F, th = spec.field, spec.theta
    k = spec.k
    r = np.asarray(r, dtype=np.int64).ravel()
    if r.size != spec.n:
        raise DomainError("received word has the wrong length")
    A = interpolation_matrix(spec, r, t)
    ncols = A.shape[1]
    rank, piv = K.rref_inplace(F.T, A, ncols)
    pset = set(int(p) for p in piv)
    free = [c for c in range(ncols) if c not in pset]
    if not free:
        return DecodeResult.failure("no solution")
    fcol = free[0]
    sol = np.zeros(ncols, dtype=np.int64)
    sol[fcol] = 1
    for row, p in enumerate(piv):
        sol[int(p)] = F.neg(int(A[row, fcol]))
    Q0 = SkewPolynomial(th, sol[: k + t])
    Q1 = SkewPolynomial(th, sol[k + t:])
    if Q1.is_zero():
        return DecodeResult.failure("interpolation solution has Q1 = 0")
    f, rem = divide(-Q0, Q1, Side.Left)
    if not rem.is_zero():
        return DecodeResult.failure("left division of -Q0 by Q1 is inexact")
    if f.degree >= k:
        return DecodeResult.failure("quotient degree is at least k")
    return _finish(spec, r, f, t)


def brute_force_decode(spec, r, t: int | None = None,
                       budget: int = ENUMERATION_BUDGET) -> DecodeResult:
    """Exhaustive search for the unique codeword within distance ``t``."""
    spec = _as_gsrs(spec)
    t = _check_radius(spec, t)
    F, th = spec.field, spec.theta
    k, n = spec.k, spec.n
    total = F.order**k
    if total > budget:
        raise BudgetExceeded(f"{total} messages exceed the budget of {budget}")
    r = np.asarray(r, dtype=np.int64).ravel()
    G = gsrs_generator(spec)
    chunk = max(1, min(total, 1 << 14))
    symbols = range(F.order)
    it = itertools.product(symbols, repeat=k)
    while True:
        block = list(itertools.islice(it, chunk))
        if not block:
            break
        U = np.array(block, dtype=np.int64)[:, ::-1]
        C = F.matmul(np.ascontiguousarray(U), G)
        dist = np.count_nonzero(C != r[None, :], axis=1)
        hit = np.flatnonzero(dist <= t)
        if hit.size:
            u = U[hit[0]]
            return _finish(spec, r, SkewPolynomial(th, u), t)
    return DecodeResult.failure("no codeword within distance t")
