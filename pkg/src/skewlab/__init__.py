"""Skew Reed-Solomon code toolkit."""

from .decode import DecodeResult, brute_force_decode, decode_gsrs
from .distinguish import (
    Decision,
    Verdict,
    expected_square_dims,
    experiment_row,
    frobenius_sum_dim,
    naive_distinguish,
    overbeck_stack,
    shortened_distinguish,
)
from .evalcodes import (
    GlrsSpec,
    GrsComponent,
    GsrsSpec,
    decompose,
    glrs_dual,
    glrs_generator,
    glrs_to_gsrs,
    gsrs_dual,
    gsrs_generator,
    gsrs_to_glrs,
    k_profile,
)
from .fieldtower import (
    Automorphism,
    ExtField,
    FieldElement,
    conjugacy_representation,
    conjugate,
    double_bracket,
    make_field,
    norm,
    theta_pow,
)
from .matcodes import BlockPartition, WeightSpec, dual_basis, rank, square_dim, weight
from .skewpoly import SkewPolynomial, is_p_independent, minimal_vanishing

__version__ = "0.1.0"
