"""Correcting t = (n - k) / 2 errors in a skew Reed-Solomon code over GF(256).

A random message polynomial is encoded, ten coordinates are corrupted, and
the decoder returns both the message and the error vector.  A word that is
too far from the code makes the decoder report failure instead of guessing.
"""

import numpy as np

from skewlab.decode import decode_gsrs, encode, max_radius
from skewlab.evalcodes import random_gsrs_spec
from skewlab.fieldtower import Automorphism, make_field
from skewlab.skewpoly import SkewPolynomial

rng = np.random.default_rng(3)
F = make_field(2, 4, 2)
theta = Automorphism(F, 1)
spec = random_gsrs_spec(theta, 30, 10, rng)
t = max_radius(spec)

f = SkewPolynomial(theta, F.random(rng, spec.k))
c = encode(spec, f)
e = np.zeros(spec.n, dtype=np.int64)
where = rng.choice(spec.n, t, replace=False)
e[where] = F.random(rng, t, nonzero=True)

res = decode_gsrs(spec, F.add(c, e))
print(f"n={spec.n} k={spec.k} t={t}")
print("recovered message:", res.ok and res.message == f)
print("error positions found:", sorted(np.flatnonzero(res.error).tolist()) == sorted(where.tolist()))

far = F.random(rng, spec.n)
print("random word:", decode_gsrs(spec, far).reason or "decoded")
