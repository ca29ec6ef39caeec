import numpy as np
import pytest

from _common import field, field_id, max_length, thetas
from skewlab.evalcodes import gsrs_generator, random_gsrs_spec
from skewlab.fieldtower import Automorphism, DomainError, make_field
from skewlab.matcodes import (
    BlockPartition,
    BudgetExceeded,
    Monomial,
    SystematicFormUnavailable,
    WeightSpec,
    dual_basis,
    identity,
    kernel,
    matrix_from_text,
    matrix_to_text,
    min_distance_bruteforce,
    puncture,
    random_code,
    random_monomial_disguise,
    rank,
    rref_rank,
    same_row_space,
    shorten,
    square_dim,
    square_dim_dense,
    square_matrix,
    systematic_right,
    weight,
)

GF9 = (3, 1, 2)
GF16 = (2, 2, 2)


# -- elimination ---------------------------------------------------------------------


def test_rref_identity_and_zero():
    F = field(GF16)
    R, r, piv = rref_rank(F, identity(5))
    assert r == 5 and np.array_equal(R, identity(5)) and piv == list(range(5))
    R, r, piv = rref_rank(F, np.zeros((3, 4), dtype=np.int64))
    assert r == 0 and not R.any() and piv == []


def test_rref_is_reduced(rng):
    F = field(GF9)
    M = F.random(rng, (4, 7))
    M[3] = F.add(M[0], F.mul(2, M[1]))
    R, r, piv = rref_rank(F, M)
    assert r == 3
    for i, p in enumerate(piv):
        col = R[:, p]
        assert col[i] == 1 and np.count_nonzero(col) == 1
        assert not R[i, :p].any()
    assert same_row_space(F, R[:r], M)


@pytest.mark.parametrize("pem", [GF9, GF16, (2, 2, 3), (2, 4, 4)], ids=field_id)
def test_skew_vandermonde_full_rank(pem, rng):
    F = field(pem)
    th = thetas(F)[0]
    n = min(max_length(F), 12)
    for k in (1, n // 2, n):
        G = gsrs_generator(random_gsrs_spec(th, n, k, rng))
        assert rank(F, G) == k


def test_kernel_basis(rng):
    F = field(GF16)
    A = F.random(rng, (3, 7))
    Kb = kernel(F, A)
    assert Kb.shape == (4, 7)
    assert not F.matmul(A, Kb.T).any()
    assert rank(F, Kb) == 4


# -- systematic form and dual ------------------------------------------------------------


def test_systematic_of_systematic(rng):
    F = field(GF9)
    A = F.random(rng, (3, 4))
    G = np.hstack([A, identity(3)])
    assert np.array_equal(systematic_right(F, G), A)


def test_systematic_row_space(rng):
    F = field((2, 4, 2))
    G = random_code(F, 12, 5, rng)
    U = systematic_right(F, G)
    assert same_row_space(F, np.hstack([U, identity(5)]), G)


@pytest.mark.parametrize("pem", [GF16, (2, 2, 3), (2, 4, 2), (3, 2, 2)], ids=field_id)
def test_systematic_succeeds_on_gsrs(pem, rng):
    F = field(pem)
    for _ in range(20):
        th = thetas(F)[int(rng.integers(len(thetas(F))))]
        n = int(rng.integers(2, min(max_length(F), 16) + 1))
        k = int(rng.integers(1, n + 1))
        G = gsrs_generator(random_gsrs_spec(th, n, k, rng))
        systematic_right(F, G)


def test_systematic_singular_block():
    F = field(GF9)
    G = np.array([[1, 0, 1, 1], [0, 1, 2, 2]])  # trailing columns equal
    with pytest.raises(SystematicFormUnavailable):
        systematic_right(F, G)


def test_dual_standard_form(rng):
    F = field(GF9)
    A = F.random(rng, (3, 4))
    G = np.hstack([identity(3), A])
    H = dual_basis(F, G)
    assert np.array_equal(H, np.hstack([F.neg(A.T), identity(4)]))


def test_dual_of_full_space_is_empty():
    F = field(GF9)
    assert dual_basis(F, identity(4)).shape == (0, 4)


def test_dual_rank_deficient():
    F = field(GF9)
    with pytest.raises(DomainError):
        dual_basis(F, np.array([[1, 2, 3], [1, 2, 3]]))


@pytest.mark.parametrize("pem", [GF9, GF16, (2, 4, 4)], ids=field_id)
def test_dual_orthogonal_and_involutive(pem, rng):
    F = field(pem)
    for _ in range(10):
        n = int(rng.integers(2, 10))
        k = int(rng.integers(1, n))
        G = random_code(F, n, k, rng)
        H = dual_basis(F, G)
        assert H.shape == (n - k, n) and rank(F, H) == n - k
        assert not F.matmul(G, H.T).any()
        assert same_row_space(F, dual_basis(F, H), G)


# -- puncture / shorten ----------------------------------------------------------------


def test_empty_index_set(rng):
    F = field(GF9)
    G = random_code(F, 6, 3, rng)
    assert same_row_space(F, puncture(F, G, []), G)
    assert same_row_space(F, shorten(F, G, []), G)


def test_index_out_of_range(rng):
    F = field(GF9)
    G = random_code(F, 6, 3, rng)
    with pytest.raises(DomainError):
        puncture(F, G, [6])
    with pytest.raises(DomainError):
        shorten(F, G, [-1])


def test_shorten_mds_code(rng):
    F = field(GF16)
    G = gsrs_generator(random_gsrs_spec(Automorphism(F, 1), 6, 3, rng))
    S = shorten(F, G, [2])
    assert S.shape == (2, 5)
    assert min_distance_bruteforce(F, S) == 4  # still MDS


def test_shorten_puncture_duality_gf9(rng):
    F = field(GF9)
    for _ in range(20):
        G = random_code(F, 8, 4, rng)
        idx = sorted(rng.choice(8, size=int(rng.integers(1, 4)), replace=False).tolist())
        lhs = dual_basis(F, shorten(F, G, idx))
        rhs = puncture(F, dual_basis(F, G), idx)
        assert same_row_space(F, lhs, rhs)


# -- square codes -------------------------------------------------------------------------


def test_square_of_one_dimensional_code(rng):
    F = field(GF16)
    assert square_dim(F, F.random(rng, (1, 9), nonzero=True)) == 1


def test_square_of_grs_code(rng):
    F = make_field(2, 4, 1)
    th = Automorphism(F, 0)
    from skewlab.evalcodes import grs_spec

    for k in (2, 3, 5):
        n = 12
        alpha = rng.choice(np.arange(1, 16), size=n, replace=False)
        G = gsrs_generator(grs_spec(F, alpha, F.random(rng, n, nonzero=True), k))
        assert square_dim(F, G) == 2 * k - 1


def test_square_random_60_14():
    F = make_field(2, 4, 4)
    rng = np.random.default_rng(14)
    assert square_dim(F, random_code(F, 60, 14, rng)) == 60


def test_square_random_60_10():
    F = make_field(2, 4, 4)
    rng = np.random.default_rng(10)
    assert square_dim(F, random_code(F, 60, 10, rng)) == 55


def test_square_random_126_43_binary_12():
    F = make_field(2, 6, 2)
    rng = np.random.default_rng(43)
    assert square_dim(F, random_code(F, 126, 43, rng)) == 126


@pytest.mark.parametrize("pem", [GF16, (2, 4, 2), (2, 6, 4), (2, 6, 6), (3, 2, 2)], ids=field_id)
def test_square_routes_agree(pem, rng):
    F = field(pem)
    for _ in range(4):
        n = int(rng.integers(5, 30))
        k = int(rng.integers(1, 8))
        k = min(k, n)
        G = random_code(F, n, k, rng)
        d = square_dim(F, G)
        assert d == square_dim_dense(F, G) == rank(F, square_matrix(F, G))
        assert d <= min(k * (k + 1) // 2, n)


def test_square_dimension_bound_on_structured_codes(rng):
    F = make_field(2, 4, 4)
    for k in (3, 10, 20):
        G = gsrs_generator(random_gsrs_spec(Automorphism(F, 1), 60, k, rng))
        assert square_dim(F, G) <= min(k * (k + 1) // 2, 60)


# -- weights ------------------------------------------------------------------------------


def test_weight_examples(rng):
    F = field(GF16)
    th = Automorphism(F, 1)
    from skewlab.evalcodes import random_p_independent

    alpha = random_p_independent(th, 5, rng)
    specs = [WeightSpec.hamming(), WeightSpec.rank(), WeightSpec.sum_rank([2, 3]), WeightSpec.skew(th, alpha)]
    for spec in specs:
        assert weight(F, np.zeros(5, dtype=np.int64), spec) == 0
    assert weight(F, np.ones(7, dtype=np.int64)) == 7


def test_sum_rank_singletons_is_hamming(rng):
    F = field((2, 2, 3))
    spec = WeightSpec.sum_rank(BlockPartition.singletons(9))
    for _ in range(100):
        v = F.random(rng, 9) * (rng.random(9) < 0.6)
        assert weight(F, v, spec) == weight(F, v)


def test_rank_weight_known_values():
    F = field(GF16)  # q = 4, m = 2
    assert weight(F, np.array([1, 2, 3]), WeightSpec.rank()) == 1  # all in F_4
    assert weight(F, np.array([1, 4]), WeightSpec.rank()) == 2


def test_inconsistent_weight_spec(rng):
    F = field(GF16)
    with pytest.raises(DomainError):
        weight(F, np.ones(4, dtype=np.int64), WeightSpec.sum_rank([2, 3]))
    th = Automorphism(F, 1)
    with pytest.raises(DomainError):
        WeightSpec.skew(th, [1, 1])


def test_metric_ordering(rng):
    """rank <= sum-rank <= Hamming; skew weight never exceeds Hamming."""
    F = field((2, 2, 3))
    th = Automorphism(F, 1)
    from skewlab.evalcodes import random_p_independent

    alpha = random_p_independent(th, 6, rng)
    sk = WeightSpec.skew(th, alpha)
    part = WeightSpec.sum_rank([3, 3])
    for _ in range(100):
        v = F.random(rng, 6) * (rng.random(6) < 0.7)
        r, s, h = weight(F, v, WeightSpec.rank()), weight(F, v, part), weight(F, v)
        assert r <= s <= h
        assert weight(F, v, sk) <= h


# -- brute-force distance --------------------------------------------------------------------


def test_full_space_distance():
    F = field(GF9)
    assert min_distance_bruteforce(F, identity(3)) == 1


def test_gsrs_is_mds_over_gf9(rng):
    # n = 6 needs q - 1 >= 3 per class, so use GF(9) as F_9 with theta = id
    F = make_field(3, 2, 1)
    from skewlab.evalcodes import grs_spec

    alpha = np.array([1, 2, 3, 4, 5, 6])
    G = gsrs_generator(grs_spec(F, alpha, F.random(rng, 6, nonzero=True), 2))
    assert min_distance_bruteforce(F, G) == 5


def test_gsrs_is_mds_nontrivial_theta(rng):
    F = field(GF16)
    for _ in range(5):
        G = gsrs_generator(random_gsrs_spec(Automorphism(F, 1), 6, 2, rng))
        assert min_distance_bruteforce(F, G) == 5


def test_budget_refusal(rng):
    F = field((2, 4, 2))
    with pytest.raises(BudgetExceeded):
        min_distance_bruteforce(F, random_code(F, 6, 3, rng))


# -- disguise and random codes -----------------------------------------------------------------


def test_trivial_monomial_is_identity(rng):
    F = field(GF9)
    G = random_code(F, 5, 2, rng)
    M = Monomial(np.ones(5, dtype=np.int64), np.arange(5))
    assert np.array_equal(M.apply(F, G), G)


def test_monomial_matrix_agrees_with_apply(rng):
    F = field(GF16)
    G = random_code(F, 6, 3, rng)
    GM, M = random_monomial_disguise(F, G, rng)
    assert np.array_equal(F.matmul(G, M.matrix(F)), GM)


def test_disguise_preserves_weights_and_square(rng):
    F = field((2, 4, 2))
    G = gsrs_generator(random_gsrs_spec(Automorphism(F, 1), 20, 6, rng))
    GM, M = random_monomial_disguise(F, G, rng)
    for _ in range(100):
        u = F.random(rng, 6)
        c = F.matmul(u, G)
        assert weight(F, M.apply_vector(F, c)) == weight(F, c)
    assert square_dim(F, GM) == square_dim(F, G)


def test_random_code_square_is_invertible(rng):
    F = field(GF9)
    G = random_code(F, 5, 5, rng)
    assert rank(F, G) == 5


def test_random_code_rejects_bad_dims(rng):
    with pytest.raises(DomainError):
        random_code(field(GF9), 3, 4, rng)


# -- text format ----------------------------------------------------------------------------------


def test_matrix_text_round_trip(rng):
    F = make_field(2, 4, 4)
    G = random_code(F, 7, 3, rng)
    text = matrix_to_text(F, G, 3)
    assert text.splitlines()[3] == "16^4 7 3"
    F2, s, G2 = matrix_from_text(text)
    assert F2 is F and s == 3 and np.array_equal(G2, G)


def test_matrix_text_rejects_bad_shape(rng):
    F = field(GF9)
    text = matrix_to_text(F, random_code(F, 4, 2, rng))
    bad = text.replace("3^2 4 2", "3^2 4 3")
    assert bad != text
    with pytest.raises(ValueError):
        matrix_from_text(bad)
