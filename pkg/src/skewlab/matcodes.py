"""Dense linear algebra over F_{q^m} and generic linear-code operations.

Matrices are ``numpy.int64`` arrays of element encodings; every function
takes the :class:`~skewlab.fieldtower.ExtField` explicitly.  A generator
matrix is read through its row space.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .fieldtower import Automorphism, DomainError, ExtField, conjugate, parse_header
from .skewpoly import is_p_independent, minimal_vanishing

#: Default number of codewords :func:`min_distance_bruteforce` may enumerate.
ENUMERATION_BUDGET = 1 << 20


class SystematicFormUnavailable(ValueError):
    """The trailing k x k block of a generator matrix is singular."""


class BudgetExceeded(RuntimeError):
    """Exhaustive enumeration would exceed the configured budget."""


def _mat(M) -> np.ndarray:
    M = np.array(M, dtype=np.int64)
    if M.ndim == 1:
        M = M[None, :]
    return M


# ---------------------------------------------------------------------------
# elimination


def rref_rank(F: ExtField, M):
    """Reduced row echelon form, rank and pivot columns.

    Pivots are chosen leftmost-first using the first row with a nonzero
    entry, so the result is deterministic.
    """
    R = _mat(M).copy(order="C")
    rank, piv = K.rref_inplace(F.T, R, R.shape[1])
    return R, int(rank), [int(p) for p in piv]


def rank(F: ExtField, M) -> int:
    M = _mat(M)
    if M.size == 0:
        return 0
    return rref_rank(F, M)[1]


def row_basis(F: ExtField, M) -> np.ndarray:
    """Nonzero rows of the RREF (a canonical basis of the row space)."""
    R, r, _ = rref_rank(F, M)
    return R[:r]


def same_row_space(F: ExtField, A, B) -> bool:
    A, B = _mat(A), _mat(B)
    if A.shape[1] != B.shape[1]:
        return False
    return np.array_equal(row_basis(F, A), row_basis(F, B))


def in_row_space(F: ExtField, G, v) -> bool:
    G = _mat(G)
    return rank(F, np.vstack([G, _mat(v)])) == rank(F, G)


def solve_left(F: ExtField, G, v):
    """Return u with u G = v, or ``None`` if v is not in the row space."""
    G = _mat(G)
    v = np.asarray(v, dtype=np.int64).ravel()
    k, n = G.shape
    # Solve G^T u^T = v^T via an augmented elimination.
    A = np.ascontiguousarray(np.hstack([G.T, v[:, None]]))
    r, piv = K.rref_inplace(F.T, A, k)
    if np.any(A[r:, k] != 0):
        return None
    u = np.zeros(k, dtype=np.int64)
    for i, p in enumerate(piv):
        u[p] = A[i, k]
    return u


def kernel(F: ExtField, A) -> np.ndarray:
    """Basis of {x : A x = 0}, one vector per row, from the RREF free columns."""
    R, r, piv = rref_rank(F, A)
    n = R.shape[1]
    pset = set(piv)
    free = [c for c in range(n) if c not in pset]
    out = np.zeros((len(free), n), dtype=np.int64)
    for i, f in enumerate(free):
        out[i, f] = 1
        for row, p in enumerate(piv):
            out[i, p] = F.neg(int(R[row, f]))
    return out


def inverse(F: ExtField, A) -> np.ndarray:
    A = _mat(A)
    n = A.shape[0]
    if A.shape != (n, n):
        raise DomainError("inverse of a non-square matrix")
    aug = np.ascontiguousarray(np.hstack([A, np.eye(n, dtype=np.int64)]))
    r, _ = K.rref_inplace(F.T, aug, n)
    if r < n:
        raise ZeroDivisionError("matrix is singular")
    return aug[:, n:].copy()


def matmul(F: ExtField, A, B) -> np.ndarray:
    return F.matmul(A, B)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


# ---------------------------------------------------------------------------
# code operations


def systematic_right(F: ExtField, G) -> np.ndarray:
    """U with row space of (U | I_k) equal to the row space of G.

    Raises
    ------
    SystematicFormUnavailable
        If the last k columns of G are singular.
    """
    G = _mat(G)
    k, n = G.shape
    aug = np.ascontiguousarray(np.hstack([G[:, n - k :], G[:, : n - k]]))
    r, _ = K.rref_inplace(F.T, aug, k)
    if r < k:
        raise SystematicFormUnavailable("trailing k x k block is singular")
    return aug[:, k:].copy()


def dual_basis(F: ExtField, G) -> np.ndarray:
    """Full-rank H with G H^T = 0 and n - k rows."""
    G = _mat(G)
    k, n = G.shape
    R, r, piv = rref_rank(F, G)
    if r < k:
        raise DomainError("generator matrix is not of full rank")
    free = [c for c in range(n) if c not in set(piv)]
    H = np.zeros((len(free), n), dtype=np.int64)
    for i, f in enumerate(free):
        H[i, f] = 1
        for row, p in enumerate(piv):
            H[i, p] = F.neg(int(R[row, f]))
    return H


def _check_indices(n: int, idx) -> list[int]:
    idx = sorted({int(i) for i in idx})
    if any(i < 0 or i >= n for i in idx):
        raise DomainError(f"coordinate index out of range [0, {n})")
    return idx


def puncture(F: ExtField, G, idx) -> np.ndarray:
    """Basis of the code with the coordinates in ``idx`` deleted."""
    G = _mat(G)
    idx = _check_indices(G.shape[1], idx)
    keep = [c for c in range(G.shape[1]) if c not in set(idx)]
    return row_basis(F, G[:, keep])


def shorten(F: ExtField, G, idx) -> np.ndarray:
    """Basis of the subcode vanishing on ``idx``, with those coordinates deleted."""
    G = _mat(G)
    n = G.shape[1]
    idx = _check_indices(n, idx)
    keep = [c for c in range(n) if c not in set(idx)]
    A = np.ascontiguousarray(G[:, idx + keep])
    r, piv = K.rref_inplace(F.T, A, n)
    s = len(idx)
    rows = [i for i in range(r) if piv[i] >= s]
    return A[rows][:, s:].copy()


def star(F: ExtField, u, v):
    """Coordinate-wise (Schur) product."""
    return F.mul(np.asarray(u, dtype=np.int64), np.asarray(v, dtype=np.int64))


def square_dim(F: ExtField, G) -> int:
    """Dimension of the square code spanned by all g_i * g_j, i <= j.

    Product rows are streamed into a reduced echelon basis; the run stops
    once the rank reaches min(k(k+1)/2, n).
    """
    G = np.ascontiguousarray(_mat(G))
    k, n = G.shape
    stop = min(k * (k + 1) // 2, n)
    return int(K.square_rank(F.T, G, stop))


def square_matrix(F: ExtField, G) -> np.ndarray:
    """All k(k+1)/2 products g_i * g_j (i <= j) stacked as rows."""
    G = _mat(G)
    k = G.shape[0]
    pairs = [(i, j) for i in range(k) for j in range(i, k)]
    return np.vstack([star(F, G[i], G[j]) for i, j in pairs])


def square_dim_dense(F: ExtField, G) -> int:
    """Reference: rank of the full product matrix."""
    return rank(F, square_matrix(F, G))


# ---------------------------------------------------------------------------
# weights


@dataclass(frozen=True)
class BlockPartition:
    """Lengths n_1, ..., n_l of consecutive coordinate blocks."""

    lengths: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "lengths", tuple(int(x) for x in self.lengths))
        if not self.lengths or any(x <= 0 for x in self.lengths):
            raise DomainError("block lengths must be positive")

    @property
    def n(self) -> int:
        return sum(self.lengths)

    def __len__(self):
        return len(self.lengths)

    def slices(self):
        start = 0
        for x in self.lengths:
            yield slice(start, start + x)
            start += x

    @classmethod
    def singletons(cls, n: int) -> "BlockPartition":
        return cls((1,) * n)


class Metric(enum.Enum):
    Hamming = "hamming"
    Rank = "rank"
    SumRank = "sum-rank"
    Skew = "skew"


@dataclass(frozen=True, eq=False)
class WeightSpec:
    """Which weight to measure, with the data the metric needs."""

    metric: Metric
    partition: BlockPartition | None = None
    theta: Automorphism | None = None
    alpha: np.ndarray | None = None

    @classmethod
    def hamming(cls):
        return cls(Metric.Hamming)

    @classmethod
    def rank(cls):
        return cls(Metric.Rank)

    @classmethod
    def sum_rank(cls, partition):
        if not isinstance(partition, BlockPartition):
            partition = BlockPartition(tuple(partition))
        return cls(Metric.SumRank, partition=partition)

    @classmethod
    def skew(cls, theta: Automorphism, alpha):
        alpha = np.asarray(alpha, dtype=np.int64).ravel()
        if not is_p_independent(theta, alpha):
            raise DomainError("skew weight needs P-independent evaluation points")
        return cls(Metric.Skew, theta=theta, alpha=alpha)

    def check_length(self, n: int):
        if self.metric is Metric.SumRank and self.partition.n != n:
            raise DomainError("partition does not match the vector length")
        if self.metric is Metric.Skew and self.alpha.size != n:
            raise DomainError("skew points do not match the vector length")


def _base_rank(F: ExtField, v) -> int:
    v = np.asarray(v, dtype=np.int64).ravel()
    if v.size == 0 or not np.any(v):
        return 0
    return rank(F, F.base_coords(v))


def weight(F: ExtField, v, spec: WeightSpec | None = None) -> int:
    """Weight of ``v`` in the chosen metric (Hamming by default)."""
    spec = spec or WeightSpec.hamming()
    v = np.asarray(v, dtype=np.int64).ravel()
    spec.check_length(v.size)
    if spec.metric is Metric.Hamming:
        return int(np.count_nonzero(v))
    if spec.metric is Metric.Rank:
        return _base_rank(F, v)
    if spec.metric is Metric.SumRank:
        return sum(_base_rank(F, v[sl]) for sl in spec.partition.slices())
    nz = np.flatnonzero(v)
    if nz.size == 0:
        return 0
    pts = conjugate(spec.theta, spec.alpha[nz], v[nz])
    return int(minimal_vanishing(spec.theta, pts).degree)


def min_distance_bruteforce(F: ExtField, G, spec: WeightSpec | None = None,
                            budget: int = ENUMERATION_BUDGET) -> int:
    """Exact minimum weight over all nonzero codewords.

    Only messages whose first nonzero entry is 1 are visited; every metric
    here is invariant under nonzero scalar multiples.
    """
    G = _mat(G)
    k, n = G.shape
    if F.order**k > budget:
        raise BudgetExceeded(f"{F.order}^{k} codewords exceed the budget of {budget}")
    best = None
    elems = range(F.order)
    for lead in range(k):
        for tail in itertools.product(elems, repeat=k - lead - 1):
            u = np.zeros(k, dtype=np.int64)
            u[lead] = 1
            u[lead + 1 :] = tail
            c = F.matmul(u, G)
            if not np.any(c):
                continue
            w = weight(F, c, spec)
            if best is None or w < best:
                best = w
    if best is None:
        raise DomainError("code has no nonzero codeword")
    return best


# ---------------------------------------------------------------------------
# random objects


@dataclass(frozen=True, eq=False)
class Monomial:
    """M = diag(d) P where P sends coordinate j to position perm[j]."""

    d: np.ndarray
    perm: np.ndarray

    def apply(self, F: ExtField, G) -> np.ndarray:
        G = _mat(G)
        out = np.empty_like(G)
        out[:, self.perm] = F.mul(G, self.d[None, :])
        return out

    def apply_vector(self, F: ExtField, v) -> np.ndarray:
        return self.apply(F, v)[0]

    def matrix(self, F: ExtField) -> np.ndarray:
        n = self.d.size
        M = np.zeros((n, n), dtype=np.int64)
        M[np.arange(n), self.perm] = self.d
        return M


def random_monomial_disguise(F: ExtField, G, rng: np.random.Generator):
    """Return ``(G M, M)`` for a uniform monomial matrix M."""
    G = _mat(G)
    n = G.shape[1]
    M = Monomial(F.random(rng, n, nonzero=True), rng.permutation(n).astype(np.int64))
    return M.apply(F, G), M


def random_code(F: ExtField, n: int, k: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform full-rank k x n generator matrix (rejection sampling)."""
    if not 0 < k <= n:
        raise DomainError("need 0 < k <= n")
    while True:
        G = F.random(rng, (k, n))
        if rank(F, G) == k:
            return G


# ---------------------------------------------------------------------------
# text format


def matrix_to_text(F: ExtField, G, s: int = 1) -> str:
    """Field header block, a ``q^m n k`` line, then one row per line."""
    G = _mat(G)
    k, n = G.shape
    lines = [F.header(s), f"{F.q}^{F.m} {n} {k}"]
    lines += [" ".join(str(int(x)) for x in row) for row in G]
    return "\n".join(lines) + "\n"


def matrix_from_text(text: str):
    """Parse :func:`matrix_to_text` output; returns ``(field, s, G)``."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if len(lines) < 4:
        raise ValueError("matrix file is truncated")
    F, s = parse_header(lines[:3])
    head = lines[3].split()
    if len(head) != 3 or "^" not in head[0]:
        raise ValueError("expected a 'q^m n k' line after the field header")
    qs, ms = head[0].split("^")
    if int(qs) != F.q or int(ms) != F.m:
        raise ValueError("matrix header disagrees with the field header")
    n, k = int(head[1]), int(head[2])
    rows = [[int(x) for x in ln.split()] for ln in lines[4 : 4 + k]]
    if len(rows) != k or any(len(r) != n for r in rows):
        raise ValueError(f"expected {k} rows of {n} entries")
    G = np.array(rows, dtype=np.int64)
    if np.any(G < 0) or np.any(G >= F.order):
        raise ValueError("matrix entry outside the field")
    return F, s, G
