import numpy as np
import pytest

from _common import field, field_id, max_length, thetas
from skewlab.evalcodes import (
    DualHypothesisFailed,
    GlrsSpec,
    GsrsSpec,
    InvalidCodeSpec,
    decompose,
    gabidulin_as_glrs,
    gabidulin_as_gsrs,
    gabidulin_generator,
    generator,
    glrs_dual,
    glrs_generator,
    glrs_to_gsrs,
    grs_as_glrs,
    grs_spec,
    gsrs_dual,
    gsrs_generator,
    gsrs_to_glrs,
    inverse_automorphism,
    k_profile,
    random_gabidulin_locators,
    random_glrs_spec,
    random_gsrs_spec,
    random_p_independent,
    spec_from_text,
    spec_to_text,
    stack_components,
)
from skewlab.fieldtower import Automorphism, DomainError, conjugate, make_field, norm
from skewlab.matcodes import (
    WeightSpec,
    in_row_space,
    min_distance_bruteforce,
    rank,
    same_row_space,
)
from skewlab.skewpoly import SkewPolynomial, is_p_independent, op_eval, rem_eval

#: fields for the 50-instance randomized checks (at least three)
CHECK_FIELDS = [(2, 2, 2), (2, 2, 3), (3, 1, 2), (2, 1, 4), (3, 2, 2)]


def _random_instance(F, rng, n_cap=14):
    ths = thetas(F)
    th = ths[int(rng.integers(len(ths)))]
    n = int(rng.integers(2, min(max_length(F), n_cap) + 1))
    k = int(rng.integers(1, n + 1))
    return th, n, k


def _stacked_rank(F, A, B):
    return rank(F, np.vstack([A, B]))


# -- spec validation ----------------------------------------------------------------


def test_gsrs_spec_rejects_bad_input():
    F = make_field(2, 2, 2)
    th = Automorphism(F, 1)
    with pytest.raises(InvalidCodeSpec):
        GsrsSpec(th, [3, 3], [1, 1], 1)  # repeated locator
    with pytest.raises(InvalidCodeSpec):
        GsrsSpec(th, [3, 5], [1, 0], 1)  # zero multiplier
    with pytest.raises(InvalidCodeSpec):
        GsrsSpec(th, [3, 5], [1, 1], 3)  # k > n
    with pytest.raises(InvalidCodeSpec):
        GsrsSpec(Automorphism(F, 0), [3, 5], [1, 1], 1)  # identity needs opt-in


def test_glrs_spec_rejects_bad_input(rng):
    F = make_field(2, 2, 2)
    th = Automorphism(F, 1)
    good = random_glrs_spec(th, 4, 2, rng)
    with pytest.raises(InvalidCodeSpec):
        GlrsSpec(th, good.partition, good.b, good.a[:1], good.lam, 2)
    same_class = np.full(len(good.partition), good.a[0])
    if same_class.size > 1:
        with pytest.raises(InvalidCodeSpec):
            GlrsSpec(th, good.partition, good.b, same_class, good.lam, 2)
    with pytest.raises(InvalidCodeSpec):
        GlrsSpec(th, (2,), [1, 1], [1], [1, 1], 1)  # dependent block


def test_inverse_automorphism():
    F = make_field(2, 1, 6)
    th = Automorphism(F, 5)
    assert inverse_automorphism(th).s == 1
    a = np.arange(64)
    assert np.array_equal(inverse_automorphism(th)(th(a)), a)


# -- generators -----------------------------------------------------------------------


def test_gsrs_k1_is_lambda_row(rng):
    F = make_field(2, 2, 3)
    spec = random_gsrs_spec(Automorphism(F, 1), 7, 1, rng)
    assert np.array_equal(gsrs_generator(spec), spec.lam[None, :])


def test_identity_gsrs_is_vandermonde(rng):
    F = make_field(2, 4, 1)
    alpha = rng.choice(np.arange(1, 16), 8, replace=False)
    lam = F.random(rng, 8, nonzero=True)
    G = gsrs_generator(grs_spec(F, alpha, lam, 4))
    for r in range(4):
        assert np.array_equal(G[r], F.mul(F.pow(alpha, r), lam))


@pytest.mark.parametrize("pem", CHECK_FIELDS, ids=field_id)
def test_gsrs_rows_match_remainder_evaluation(pem, rng):
    F = field(pem)
    th, n, k = _random_instance(F, rng)
    spec = random_gsrs_spec(th, n, k, rng)
    G = gsrs_generator(spec)
    assert rank(F, G) == k
    for r in range(k):
        xr = SkewPolynomial(th, [0] * r + [1])
        assert np.array_equal(G[r], F.mul(rem_eval(xr, spec.alpha), spec.lam))


@pytest.mark.parametrize("pem", CHECK_FIELDS, ids=field_id)
def test_glrs_rows_match_operator_evaluation(pem, rng):
    F = field(pem)
    th, n, k = _random_instance(F, rng)
    spec = random_glrs_spec(th, n, k, rng)
    G = glrs_generator(spec)
    assert rank(F, G) == k
    for r in range(k):
        xr = SkewPolynomial(th, [0] * r + [1])
        assert np.array_equal(G[r], F.mul(op_eval(xr, spec.b, spec.a_vector), spec.lam))


def test_glrs_k1_is_b_times_lambda(rng):
    F = make_field(2, 2, 2)
    spec = random_glrs_spec(Automorphism(F, 1), 5, 1, rng)
    assert np.array_equal(glrs_generator(spec)[0], F.mul(spec.b, spec.lam))


def test_gabidulin_embedding_is_moore_matrix(rng):
    F = make_field(2, 1, 8)
    b = random_gabidulin_locators(F, 6, rng)
    spec = gabidulin_as_glrs(F, b, 3)
    assert np.array_equal(glrs_generator(spec), gabidulin_generator(F, b, 3))
    for r in range(3):
        assert np.array_equal(gabidulin_generator(F, b, 3)[r], F.frobenius(b, r))


# -- transformations ------------------------------------------------------------------


def test_grs_glrs_to_gsrs_example(rng):
    F = make_field(2, 4, 1)
    b = rng.choice(np.arange(1, 16), 6, replace=False)
    lam = F.random(rng, 6, nonzero=True)
    out = glrs_to_gsrs(grs_as_glrs(F, b, lam, 3))
    assert np.array_equal(out.alpha, b) and np.array_equal(out.lam, lam)
    assert out.theta.is_identity


def test_gabidulin_glrs_to_gsrs_example(rng):
    F = make_field(2, 1, 8)
    b = random_gabidulin_locators(F, 5, rng)
    out = glrs_to_gsrs(gabidulin_as_glrs(F, b, 2))
    ref = gabidulin_as_gsrs(F, b, 2)
    assert np.array_equal(out.alpha, ref.alpha) and np.array_equal(out.lam, ref.lam)
    assert np.array_equal(ref.alpha, F.pow(b, F.q - 1))


@pytest.mark.parametrize("pem", CHECK_FIELDS, ids=field_id)
def test_glrs_to_gsrs_same_code_50(pem, rng):
    F = field(pem)
    for _ in range(50):
        th, n, k = _random_instance(F, rng)
        spec = random_glrs_spec(th, n, k, rng)
        G1, G2 = glrs_generator(spec), gsrs_generator(glrs_to_gsrs(spec))
        assert _stacked_rank(F, G1, G2) == k


@pytest.mark.parametrize("pem", CHECK_FIELDS, ids=field_id)
def test_gsrs_to_glrs_same_code_50(pem, rng):
    F = field(pem)
    for _ in range(50):
        th, n, k = _random_instance(F, rng)
        spec = random_gsrs_spec(th, n, k, rng)
        perm, glrs = gsrs_to_glrs(spec)
        G1 = gsrs_generator(spec)[:, perm]
        assert _stacked_rank(F, G1, glrs_generator(glrs)) == k
        # and back again
        G3 = gsrs_generator(glrs_to_gsrs(glrs))
        assert _stacked_rank(F, G1, G3) == k


def test_gsrs_to_glrs_grouped_input_keeps_order(rng):
    F = make_field(3, 1, 2)
    th = Automorphism(F, 1)
    spec = random_gsrs_spec(th, 4, 2, rng)
    perm, _ = gsrs_to_glrs(spec)
    grouped = GsrsSpec(th, spec.alpha[perm], spec.lam[perm], 2)
    perm2, _ = gsrs_to_glrs(grouped)
    assert perm2.tolist() == list(range(4))


def test_gsrs_to_glrs_grs_input(rng):
    F = make_field(2, 4, 1)
    alpha = rng.choice(np.arange(1, 16), 5, replace=False)
    perm, glrs = gsrs_to_glrs(grs_spec(F, alpha, np.ones(5, np.int64), 2))
    assert glrs.partition.lengths == (1,) * 5
    assert np.all(glrs.b == 1)


# -- duals ------------------------------------------------------------------------------


class DualCounter:
    def __init__(self):
        self.ok = 0
        self.failed = 0


@pytest.fixture(scope="module")
def gsrs_dual_counts():
    return DualCounter()


@pytest.mark.parametrize("pem", CHECK_FIELDS, ids=field_id)
def test_gsrs_dual_50(pem, rng, gsrs_dual_counts):
    F = field(pem)
    done = 0
    while done < 50:
        th, n, k = _random_instance(F, rng)
        if k == n:
            continue
        spec = random_gsrs_spec(th, n, k, rng)
        try:
            dual = gsrs_dual(spec)
        except DualHypothesisFailed:
            gsrs_dual_counts.failed += 1
            done += 1
            continue
        gsrs_dual_counts.ok += 1
        done += 1
        G, H = gsrs_generator(spec), gsrs_generator(dual)
        assert H.shape == (n - k, n) and rank(F, H) == n - k
        assert not F.matmul(G, H.T).any()
        assert np.all(dual.lam != 0) and dual.lam[0] == 1
        assert dual.theta == inverse_automorphism(th)


def test_gsrs_dual_failure_rate_reported(gsrs_dual_counts, record_property):
    total = gsrs_dual_counts.ok + gsrs_dual_counts.failed
    record_property("dual_hypothesis_failures", f"{gsrs_dual_counts.failed}/{total}")
    print(f"GSRS dual hypothesis failures: {gsrs_dual_counts.failed}/{total}")
    assert total == 50 * len(CHECK_FIELDS)


def test_gsrs_dual_identity_is_grs_dual(rng):
    F = make_field(2, 4, 1)
    alpha = rng.choice(np.arange(1, 16), 7, replace=False)
    spec = grs_spec(F, alpha, F.random(rng, 7, nonzero=True), 3)
    dual = gsrs_dual(spec)
    assert dual.theta.is_identity
    assert np.array_equal(dual.alpha, alpha)  # same locators for GRS duals
    assert not F.matmul(gsrs_generator(spec), gsrs_generator(dual).T).any()


def test_gsrs_dual_gf16_n8_k3(rng):
    F = make_field(2, 2, 2)
    spec = random_gsrs_spec(Automorphism(F, 1), 6, 3, rng)  # n <= m(q-1) = 6
    dual = gsrs_dual(spec)
    assert not F.matmul(gsrs_generator(spec), gsrs_generator(dual).T).any()
    F = make_field(2, 4, 2)
    spec = random_gsrs_spec(Automorphism(F, 1), 8, 3, rng)
    dual = gsrs_dual(spec)
    assert not F.matmul(gsrs_generator(spec), gsrs_generator(dual).T).any()


def test_dual_of_full_space(rng):
    F = make_field(2, 2, 2)
    spec = random_gsrs_spec(Automorphism(F, 1), 4, 4, rng)
    with pytest.raises(DomainError):
        gsrs_dual(spec)
    glrs = random_glrs_spec(Automorphism(F, 1), 4, 4, rng)
    with pytest.raises(DomainError):
        glrs_dual(glrs)


@pytest.mark.parametrize("pem", CHECK_FIELDS, ids=field_id)
@pytest.mark.parametrize("mode", ["base", "block", "ones"])
def test_glrs_dual_50(pem, mode, rng):
    F = field(pem)
    done = 0
    while done < 50:
        th, n, k = _random_instance(F, rng)
        if k == n:
            continue
        spec = random_glrs_spec(th, n, k, rng, multipliers=mode)
        dual = glrs_dual(spec)  # hypothesis holds for these multipliers
        done += 1
        G, H = glrs_generator(spec), glrs_generator(dual)
        assert rank(F, H) == n - k
        assert not F.matmul(G, H.T).any()


def test_glrs_dual_arbitrary_multipliers(rng):
    F = make_field(2, 2, 3)
    ok = failed = 0
    for _ in range(50):
        spec = random_glrs_spec(Automorphism(F, 1), 9, 4, rng, multipliers="any")
        try:
            dual = glrs_dual(spec)
        except DualHypothesisFailed:
            failed += 1
            continue
        ok += 1
        assert not F.matmul(glrs_generator(spec), glrs_generator(dual).T).any()
    assert ok + failed == 50 and ok > 0


def test_lrs_dual_is_lrs(rng):
    F = make_field(2, 2, 2)
    spec = random_glrs_spec(Automorphism(F, 1), 5, 2, rng, multipliers="ones")
    dual = glrs_dual(spec)
    assert np.all(dual.lam == 1)


def test_glrs_dual_k_n_minus_one(rng):
    """The dual of an (n, n-1) code is spanned by the vector v itself."""
    F = make_field(3, 1, 2)
    spec = random_glrs_spec(Automorphism(F, 1), 4, 3, rng, multipliers="base")
    dual = glrs_dual(spec)
    assert dual.k == 1
    H = glrs_generator(dual)
    assert not F.matmul(glrs_generator(spec), H.T).any()


# -- decomposition -----------------------------------------------------------------------


def test_k_profile_examples():
    assert k_profile(10, 4) == (3, 3, 2, 2)
    assert k_profile(4, 4) == (1, 1, 1, 1)
    assert k_profile(12, 4) == (3, 3, 3, 3)
    assert sum(k_profile(57, 6)) == 57


def test_decompose_gabidulin(rng):
    F = make_field(2, 1, 8)
    b = random_gabidulin_locators(F, 7, rng)
    comps = decompose(gabidulin_as_glrs(F, b, 3))
    assert [c.k for c in comps] == [1, 1, 1]
    for i, c in enumerate(comps):
        assert np.array_equal(c.multipliers, F.frobenius(b, i))
        assert c.repeated_locators


def test_decompose_grs_is_itself(rng):
    F = make_field(2, 4, 1)
    alpha = rng.choice(np.arange(1, 16), 8, replace=False)
    spec = grs_spec(F, alpha, F.random(rng, 8, nonzero=True), 4)
    (comp,) = decompose(spec)
    assert comp.k == 4
    assert np.array_equal(comp.generator(F), gsrs_generator(spec))


def test_decompose_gf256_m2_example(rng):
    F = make_field(2, 4, 2)
    spec = random_gsrs_spec(Automorphism(F, 1), 12, 5, rng)
    comps = decompose(spec)
    assert [c.k for c in comps] == [3, 2]
    assert rank(F, stack_components(F, comps)) == 5


def test_decompose_small_k_has_k_components(rng):
    F = make_field(2, 1, 6)
    spec = random_gsrs_spec(Automorphism(F, 1), 6, 4, rng)
    comps = decompose(spec)
    assert len(comps) == 4 and all(c.k == 1 for c in comps)


@pytest.mark.parametrize("pem", CHECK_FIELDS, ids=field_id)
@pytest.mark.parametrize("kind", ["gsrs", "glrs"])
def test_decomposition_direct_sum_50(pem, kind, rng):
    F = field(pem)
    for _ in range(50):
        th, n, k = _random_instance(F, rng)
        spec = random_gsrs_spec(th, n, k, rng) if kind == "gsrs" else random_glrs_spec(th, n, k, rng)
        comps = decompose(spec)
        prof = [x for x in k_profile(k, th.order) if x]
        assert [c.k for c in comps] == prof
        stacked = stack_components(F, comps)
        assert sum(rank(F, c.generator(F)) for c in comps) == rank(F, stacked) == k
        G = generator(spec)
        for row in stacked:
            assert in_row_space(F, G, row)


# -- distances -----------------------------------------------------------------------------


@pytest.mark.parametrize("pem", [(2, 2, 2), (3, 1, 2)], ids=field_id)
def test_tiny_gsrs_mds(pem, rng):
    F = field(pem)
    for _ in range(6):
        n = int(rng.integers(2, min(max_length(F), 8) + 1))
        k = int(rng.integers(1, min(3, n) + 1))
        spec = random_gsrs_spec(Automorphism(F, 1), n, k, rng)
        assert min_distance_bruteforce(F, gsrs_generator(spec)) == n - k + 1


@pytest.mark.parametrize("pem", [(2, 2, 2), (3, 1, 2), (2, 1, 4)], ids=field_id)
def test_tiny_gsrs_msd(pem, rng):
    """GSRS(alpha^lam, lam) is MSD in the skew metric defined by alpha."""
    F = field(pem)
    checked = skipped = 0
    while checked < 6:
        th = thetas(F)[0]
        n = int(rng.integers(2, min(max_length(F), 5) + 1))
        k = int(rng.integers(1, min(2, n) + 1))
        alpha = random_p_independent(th, n, rng)
        lam = F.random(rng, n, nonzero=True)
        shifted = conjugate(th, alpha, lam)
        if not is_p_independent(th, shifted):
            skipped += 1
            continue
        G = gsrs_generator(GsrsSpec(th, shifted, lam, k))
        d = min_distance_bruteforce(F, G, WeightSpec.skew(th, alpha))
        assert d == n - k + 1
        checked += 1


@pytest.mark.parametrize("mode", ["base", "block", "ones"])
def test_tiny_glrs_msrd(mode, rng):
    F = make_field(2, 2, 2)
    for _ in range(5):
        n = int(rng.integers(2, 6))
        k = int(rng.integers(1, 3))
        k = min(k, n)
        spec = random_glrs_spec(Automorphism(F, 1), n, k, rng, multipliers=mode)
        d = min_distance_bruteforce(F, glrs_generator(spec), WeightSpec.sum_rank(spec.partition))
        assert d == n - k + 1


# -- sampling and text ------------------------------------------------------------------------


@pytest.mark.parametrize("pem", CHECK_FIELDS, ids=field_id)
def test_random_p_independent_always_valid(pem, rng):
    F = field(pem)
    for th in thetas(F):
        for n in (1, max_length(F) // 2, max_length(F)):
            if n < 1:
                continue
            alpha = random_p_independent(th, n, rng)
            assert alpha.size == n and is_p_independent(th, alpha)


def test_random_p_independent_too_long(rng):
    F = make_field(2, 2, 2)
    with pytest.raises(InvalidCodeSpec):
        random_p_independent(Automorphism(F, 1), 7, rng)


def test_maximal_length_uses_every_class(rng):
    F = make_field(2, 2, 3)
    th = Automorphism(F, 1)
    alpha = random_p_independent(th, max_length(F), rng)
    counts = np.unique(norm(th, alpha), return_counts=True)[1]
    assert counts.tolist() == [F.m] * (F.q - 1)


@pytest.mark.parametrize("which", ["gsrs", "glrs", "grs", "gab"])
def test_spec_text_round_trip(which, rng):
    if which == "gsrs":
        spec = random_gsrs_spec(Automorphism(make_field(2, 4, 2), 1), 10, 4, rng)
    elif which == "glrs":
        spec = random_glrs_spec(Automorphism(make_field(3, 1, 2), 1), 4, 2, rng)
    elif which == "grs":
        F = make_field(2, 4, 1)
        spec = grs_spec(F, [1, 2, 3, 4], [5, 6, 7, 8], 2)
    else:
        F = make_field(2, 1, 8)
        spec = gabidulin_as_glrs(F, random_gabidulin_locators(F, 5, rng), 2)
    text = spec_to_text(spec)
    back = spec_from_text(text)
    assert back.kind == spec.kind
    assert same_row_space(spec.field, generator(back), generator(spec))
    assert spec_to_text(back) == text
