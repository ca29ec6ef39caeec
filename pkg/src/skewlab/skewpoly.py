"""Skew polynomials in F_{q^m}[x; theta] with x a = theta(a) x.

Coefficients are stored lowest degree first as an int64 array of field
encodings, trimmed so the leading coefficient is nonzero.  The zero
polynomial has the single coefficient ``0`` and degree ``-inf``.

>>> from skewlab.fieldtower import make_field, Automorphism
>>> F = make_field(2, 1, 2)
>>> th = Automorphism(F, 1)
>>> x = SkewPolynomial.x(th)
>>> (x * SkewPolynomial.constant(th, 2)).coeffs.tolist()   # x * a = a^2 * x
[0, 3]
"""

from __future__ import annotations

import enum
import math

import numpy as np

from . import _kernels as K
from .fieldtower import Automorphism, DomainError, conjugacy_representation

NEG_INF = -math.inf


class Side(enum.Enum):
    """Side of the divisor in a division: Right means f = q g + r."""

    Left = "left"
    Right = "right"


def _trim(c: np.ndarray) -> np.ndarray:
    nz = np.flatnonzero(c)
    if nz.size == 0:
        return np.zeros(1, dtype=np.int64)
    return np.ascontiguousarray(c[: nz[-1] + 1], dtype=np.int64)


class SkewPolynomial:
    """Element of the skew polynomial ring over ``theta.field``."""

    __slots__ = ("theta", "coeffs")

    def __init__(self, theta: Automorphism, coeffs):
        self.theta = theta
        c = np.array(coeffs, dtype=np.int64).ravel()
        if c.size == 0:
            c = np.zeros(1, dtype=np.int64)
        if np.any(c < 0) or np.any(c >= theta.field.order):
            raise ValueError("coefficient encodings out of range")
        self.coeffs = _trim(c)

    # constructors -----------------------------------------------------------

    @classmethod
    def zero(cls, theta):
        return cls(theta, [0])

    @classmethod
    def one(cls, theta):
        return cls(theta, [1])

    @classmethod
    def constant(cls, theta, c):
        return cls(theta, [int(c)])

    @classmethod
    def x(cls, theta):
        return cls(theta, [0, 1])

    @classmethod
    def linear(cls, theta, a):
        """The monic linear polynomial x - a."""
        return cls(theta, [theta.field.neg(int(a)), 1])

    @classmethod
    def random(cls, theta, degree: int, rng: np.random.Generator, monic=False):
        F = theta.field
        c = F.random(rng, degree + 1)
        c[-1] = 1 if monic else F.random(rng, nonzero=True)
        return cls(theta, c)

    @classmethod
    def _raw(cls, theta, coeffs):
        obj = cls.__new__(cls)
        obj.theta = theta
        obj.coeffs = _trim(coeffs)
        return obj

    # basic properties ------------------------------------------------------

    @property
    def field(self):
        return self.theta.field

    @property
    def degree(self):
        """Degree, with ``-inf`` for the zero polynomial."""
        if self.is_zero():
            return NEG_INF
        return self.coeffs.size - 1

    def is_zero(self) -> bool:
        return self.coeffs.size == 1 and self.coeffs[0] == 0

    def leading(self) -> int:
        return int(self.coeffs[-1])

    def monic(self) -> "SkewPolynomial":
        if self.is_zero():
            raise DomainError("zero polynomial has no monic form")
        F = self.field
        return SkewPolynomial._raw(self.theta, F.mul(self.coeffs, F.inv(self.leading())))

    def __len__(self):
        return self.coeffs.size

    def __getitem__(self, i):
        return int(self.coeffs[i]) if 0 <= i < self.coeffs.size else 0

    # arithmetic --------------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, SkewPolynomial):
            other = SkewPolynomial.constant(self.theta, other)
        if other.theta != self.theta:
            raise DomainError("skew polynomials over different automorphisms")
        return other

    def _pad(self, other):
        n = max(self.coeffs.size, other.coeffs.size)
        a = np.zeros(n, dtype=np.int64)
        b = np.zeros(n, dtype=np.int64)
        a[: self.coeffs.size] = self.coeffs
        b[: other.coeffs.size] = other.coeffs
        return a, b

    def __add__(self, other):
        other = self._check(other)
        a, b = self._pad(other)
        return SkewPolynomial._raw(self.theta, self.field.add(a, b))

    def __sub__(self, other):
        other = self._check(other)
        a, b = self._pad(other)
        return SkewPolynomial._raw(self.theta, self.field.sub(a, b))

    def __neg__(self):
        return SkewPolynomial._raw(self.theta, self.field.neg(self.coeffs))

    def __mul__(self, other):
        other = self._check(other)
        return mul(self, other)

    def __rmul__(self, other):
        return self._check(other) * self

    def __eq__(self, other):
        if not isinstance(other, SkewPolynomial):
            return NotImplemented
        return self.theta == other.theta and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self):
        return hash((self.theta, self.coeffs.tobytes()))

    def __repr__(self):
        return f"SkewPolynomial({self.coeffs.tolist()}, s={self.theta.s})"

    # evaluation shortcuts -----------------------------------------------------

    def __call__(self, a):
        return rem_eval(self, a)

    # text form ------------------------------------------------------------------

    def to_text(self) -> str:
        body = " ".join(str(int(c)) for c in self.coeffs)
        return self.field.header(self.theta.s) + "\n" + body + "\n"

    @classmethod
    def from_text(cls, text: str) -> "SkewPolynomial":
        from .fieldtower import parse_header

        lines = [ln for ln in text.splitlines() if ln.strip()]
        F, s = parse_header(lines[:3])
        return cls(Automorphism(F, s), [int(v) for v in lines[3].split()])


# ---------------------------------------------------------------------------


def mul(f: SkewPolynomial, g: SkewPolynomial) -> SkewPolynomial:
    """Twisted product: coefficient k is sum_{i+j=k} f_i theta^i(g_j)."""
    if f.theta != g.theta:
        raise DomainError("skew polynomials over different automorphisms")
    th = f.theta
    out = K.skew_mul(th.field.T, th.s, f.coeffs, g.coeffs)
    return SkewPolynomial._raw(th, out)


def divide(f: SkewPolynomial, g: SkewPolynomial, side: Side = Side.Right):
    """Euclidean division.

    ``Side.Right`` returns ``(q, r)`` with ``f = q*g + r``; ``Side.Left``
    returns ``(q, r)`` with ``f = g*q + r``.  In both cases
    ``deg r < deg g``.
    """
    if f.theta != g.theta:
        raise DomainError("skew polynomials over different automorphisms")
    if g.is_zero():
        raise ZeroDivisionError("division by the zero skew polynomial")
    th = f.theta
    kern = K.skew_right_divmod if side is Side.Right else K.skew_left_divmod
    q, r = kern(th.field.T, th.s, f.coeffs, g.coeffs)
    return SkewPolynomial._raw(th, q), SkewPolynomial._raw(th, r)


def _euclid(f: SkewPolynomial, g: SkewPolynomial):
    """Extended right Euclid: returns (gcrd, u, v) with u f + v g = 0 at exit."""
    th = f.theta
    r0, r1 = f, g
    u0, u1 = SkewPolynomial.one(th), SkewPolynomial.zero(th)
    v0, v1 = SkewPolynomial.zero(th), SkewPolynomial.one(th)
    while not r1.is_zero():
        q, r = divide(r0, r1, Side.Right)
        r0, r1 = r1, r
        u0, u1 = u1, u0 - q * u1
        v0, v1 = v1, v0 - q * v1
    return r0, u1, v1


def gcrd(f: SkewPolynomial, g: SkewPolynomial) -> SkewPolynomial:
    """Monic greatest common right divisor."""
    if f.is_zero() and g.is_zero():
        raise DomainError("gcrd of two zero polynomials")
    if f.theta != g.theta:
        raise DomainError("skew polynomials over different automorphisms")
    return _euclid(f, g)[0].monic()


def lclm(f: SkewPolynomial, g: SkewPolynomial) -> SkewPolynomial:
    """Monic least common left multiple (computed by extended right Euclid)."""
    if f.is_zero() and g.is_zero():
        raise DomainError("lclm of two zero polynomials")
    if f.theta != g.theta:
        raise DomainError("skew polynomials over different automorphisms")
    if f.is_zero() or g.is_zero():
        return SkewPolynomial.zero(f.theta)
    _, u, _ = _euclid(f, g)
    return (u * f).monic()


# evaluation -------------------------------------------------------------------


def _pts(a):
    scalar = np.ndim(a) == 0
    return scalar, np.atleast_1d(np.asarray(a, dtype=np.int64)).ravel()


def rem_eval(f: SkewPolynomial, a):
    """Remainder evaluation f(a) = sum_i f_i a^[[i]] (scalar or vector a)."""
    th = f.theta
    scalar, pts = _pts(a)
    out = K.rem_eval(th.field.T, th.s, f.coeffs, pts)
    return int(out[0]) if scalar else out.reshape(np.shape(a))


def rem_eval_by_division(f: SkewPolynomial, a) -> int:
    """Remainder of right division of f by (x - a); slow reference path."""
    _, r = divide(f, SkewPolynomial.linear(f.theta, a), Side.Right)
    return r[0]


def op_eval(f: SkewPolynomial, b, a):
    """Generalized operator evaluation sum_i f_i theta^i(b) a^[[i]]."""
    th = f.theta
    sb, bb = _pts(b)
    sa, aa = _pts(a)
    bb, aa = np.broadcast_arrays(bb, aa)
    out = K.op_eval(th.field.T, th.s, f.coeffs, np.ascontiguousarray(bb), np.ascontiguousarray(aa))
    return int(out[0]) if (sa and sb) else out


def minimal_vanishing(theta: Automorphism, alpha) -> SkewPolynomial:
    """Monic lclm of the linear factors x - alpha_i.

    Points are folded in left to right.  When the running polynomial L does
    not vanish at the next point a, the update is (x - a^r) L with
    r = L(a) and a^r the theta-conjugate; this equals lclm(L, x - a) and
    avoids a Euclidean run per point.  :func:`minimal_vanishing_by_lclm`
    is the literal fold used as a cross-check.
    """
    alpha = np.ascontiguousarray(np.asarray(alpha, dtype=np.int64).ravel())
    c = K.min_vanishing(theta.field.T, theta.s, alpha)
    return SkewPolynomial._raw(theta, c)


def minimal_vanishing_by_lclm(theta: Automorphism, alpha) -> SkewPolynomial:
    L = SkewPolynomial.one(theta)
    for a in np.asarray(alpha, dtype=np.int64).ravel():
        L = lclm(L, SkewPolynomial.linear(theta, int(a)))
    return L


def is_p_independent(theta: Automorphism, alpha) -> bool:
    """True iff ``alpha`` has no zero entry and its lclm has degree n.

    A single zero entry does not by itself lower the lclm degree (x is
    coprime to every x - a with a != 0), but zero locators are excluded
    everywhere in this package, matching :func:`is_p_independent_blocks`.
    """
    alpha = np.asarray(alpha, dtype=np.int64).ravel()
    if np.any(alpha == 0):
        return False
    return minimal_vanishing(theta, alpha).degree == alpha.size


def independent_over_fixed_field(theta: Automorphism, b) -> bool:
    """Linear independence of ``b`` over the fixed field of theta.

    Uses the Moore-type matrix (theta^i(b_j)) with i < len(b), which is
    nonsingular exactly when the entries are independent over the fixed
    field of theta.
    """
    b = np.ascontiguousarray(np.asarray(b, dtype=np.int64).ravel())
    r = b.size
    if r == 0:
        return True
    if r > theta.order:
        return False
    F = theta.field
    M = np.empty((r, r), dtype=np.int64)
    cur = b
    for i in range(r):
        M[i] = cur
        cur = F.frobenius(cur, theta.s)
    rank, _ = K.rref_inplace(F.T, M, r)
    return rank == r


def is_p_independent_blocks(theta: Automorphism, alpha) -> bool:
    """Block criterion: no zero entries and each class block independent."""
    rep = conjugacy_representation(theta, alpha)
    if rep.zeros:
        return False
    start = 0
    for size in rep.partition:
        if not independent_over_fixed_field(theta, rep.b[start : start + size]):
            return False
        start += size
    return True
