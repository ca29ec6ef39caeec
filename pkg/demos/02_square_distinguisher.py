"""Telling a disguised skew Reed-Solomon code apart from a random one.

Over GF(16^4) with n = 60, the Schur square of a GSRS code of dimension k
is much smaller than that of a random code while k stays in the naive range.
At the upper end of the range the two predictions meet, and shortening
is needed to push the test further.
"""

import numpy as np

from skewlab.distinguish import (
    expected_square_dims,
    field_for,
    naive_distinguish,
    naive_range,
    shortened_distinguish,
)
from skewlab.evalcodes import gsrs_generator, random_gsrs_spec
from skewlab.fieldtower import Automorphism, make_field
from skewlab.matcodes import random_code, random_monomial_disguise

rng = np.random.default_rng(2)
q, m, n = 16, 4, 60
F = field_for(q, m)
lo, hi = naive_range(n, m)
print(f"naive test works for {lo} < k < {hi:g}")

for k in (10, 13, 14):
    spec = random_gsrs_spec(Automorphism(F, 1), n, k, rng)
    G, _ = random_monomial_disguise(F, gsrs_generator(spec), rng)
    structured, rand = expected_square_dims(n, k, m)
    v = naive_distinguish(F, G, m)
    r = naive_distinguish(F, random_code(F, n, k, rng), m)
    print(f"k={k}: expected {structured} vs {rand}; disguised GSRS -> {v.decision.name} ({v.observed_dim}),"
          f" random -> {r.decision.name} ({r.observed_dim})")

# a rate-0.8 code over GF(32^2) sits outside the naive range; shortening recovers it
F = make_field(2, 5, 2)
spec = random_gsrs_spec(Automorphism(F, 1), 62, 50, rng)
G, _ = random_monomial_disguise(F, gsrs_generator(spec), rng)
print("naive on (62, 50):", naive_distinguish(F, G, 2).decision.name)
v = shortened_distinguish(F, G, 2)
print("shortened by", v.shortening_used, "->", v.line())
