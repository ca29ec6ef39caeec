"""Non-commutative arithmetic in GF(16)[x; sigma], where sigma(a) = a^4.

The script multiplies x by a scalar from both sides, divides one skew
polynomial by another on the right, evaluates through remainders, and lists
one conjugacy class.  Inside a class only m = 2 points can be P-independent,
so a third point leaves the degree of the minimal vanishing polynomial
unchanged.
"""

import numpy as np

from skewlab.fieldtower import Automorphism, conjugate, make_field, norm
from skewlab.skewpoly import SkewPolynomial, Side, divide, is_p_independent, minimal_vanishing, rem_eval

F = make_field(2, 2, 2)  # q = 4, m = 2, so elements are encoded 0..15
theta = Automorphism(F, 1)
a = 6

x = SkewPolynomial.x(theta)
c = SkewPolynomial.constant(theta, a)
print("x * a =", (x * c).coeffs.tolist(), " (coefficients, lowest degree first)")
print("a * x =", (c * x).coeffs.tolist())

rng = np.random.default_rng(1)
f = SkewPolynomial.random(theta, 5, rng)
g = SkewPolynomial.random(theta, 2, rng, monic=True)
quot, rem = divide(f, g, Side.Right)
print("f = quot * g + rem holds:", quot * g + rem == f)

# evaluating at a equals the remainder of right division by (x - a)
lin = SkewPolynomial.linear(theta, a)
print("f(a) via remainder:", rem_eval(f, [a])[0], "by division:", divide(f, lin, Side.Right)[1].coeffs.tolist())

# conjugates share a norm; a class holds at most m = 2 P-independent points
pts = sorted({conjugate(theta, a, cc) for cc in F.elements(nonzero=True)})
print("class of a:", pts, "norms:", {norm(theta, b) for b in pts})
for sub in (pts[:2], pts[:3]):
    print("points", sub, "P-independent:", is_p_independent(theta, sub),
          "deg of minimal vanishing:", minimal_vanishing(theta, sub).degree)
