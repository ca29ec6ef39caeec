"""Skew and linearized Reed-Solomon codes and their classical special cases.

A :class:`GsrsSpec` describes a generalized skew Reed-Solomon code (remainder
evaluation at P-independent locators, times column multipliers); a
:class:`GlrsSpec` describes a generalized linearized Reed-Solomon code
(generalized operator evaluation, blockwise evaluation parameters).  GRS
codes are GSRS codes over the identity and Gabidulin codes are GLRS codes
with a single block and parameter 1.

Generators, duals, the two transformations between the families, and the
decomposition into GRS subcodes are provided, together with samplers that
build P-independent locators directly from the conjugacy-class structure.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from . import _kernels as K
from .fieldtower import (
    Automorphism,
    DomainError,
    ExtField,
    class_representative,
    conjugacy_representation,
    conjugate,
    norm,
    parse_header,
    theta_pow,
)
from .matcodes import BlockPartition, WeightSpec, dual_basis, rank, weight
from .skewpoly import independent_over_fixed_field, is_p_independent


class DualHypothesisFailed(ValueError):
    """The locators derived for a dual code violate the independence hypothesis."""


class InvalidCodeSpec(ValueError):
    """A code parameter bundle violates the family's requirements."""


def inverse_automorphism(theta: Automorphism) -> Automorphism:
    return Automorphism(theta.field, -theta.s)


def _vec(x) -> np.ndarray:
    return np.ascontiguousarray(np.asarray(x, dtype=np.int64).ravel())


def _check_theta(theta: Automorphism, allow_identity: bool):
    if theta.is_identity:
        if not allow_identity:
            raise InvalidCodeSpec(
                "identity automorphism requested without allow_identity=True (GRS case)"
            )
    elif not theta.fixes_base_only:
        raise InvalidCodeSpec("automorphism must satisfy gcd(s, m) = 1")


# ---------------------------------------------------------------------------
# parameter bundles


@dataclass(frozen=True, eq=False)
class GsrsSpec:
    """GSRS(alpha, lam; n, k) over theta."""

    theta: Automorphism
    alpha: np.ndarray
    lam: np.ndarray
    k: int
    allow_identity: bool = False
    kind: str = dc_field(default="GSRS")

    def __post_init__(self):
        object.__setattr__(self, "alpha", _vec(self.alpha))
        object.__setattr__(self, "lam", _vec(self.lam))
        _check_theta(self.theta, self.allow_identity or self.kind == "GRS")
        n = self.alpha.size
        if self.lam.size != n:
            raise InvalidCodeSpec("alpha and lambda lengths differ")
        if not 1 <= self.k <= n:
            raise InvalidCodeSpec(f"need 1 <= k <= n, got k={self.k}, n={n}")
        if np.any(self.lam == 0):
            raise InvalidCodeSpec("column multipliers must be nonzero")
        if not is_p_independent(self.theta, self.alpha):
            raise InvalidCodeSpec("code locators are not P-independent")

    @property
    def field(self) -> ExtField:
        return self.theta.field

    @property
    def n(self) -> int:
        return self.alpha.size

    def with_k(self, k: int) -> "GsrsSpec":
        return GsrsSpec(self.theta, self.alpha, self.lam, k, self.allow_identity, self.kind)


@dataclass(frozen=True, eq=False)
class GlrsSpec:
    """GLRS(b, a, lam; n, k) over theta, ``a`` given by one value per block."""

    theta: Automorphism
    partition: BlockPartition
    b: np.ndarray
    a: np.ndarray
    lam: np.ndarray
    k: int
    allow_identity: bool = False
    kind: str = dc_field(default="GLRS")

    def __post_init__(self):
        if not isinstance(self.partition, BlockPartition):
            object.__setattr__(self, "partition", BlockPartition(tuple(self.partition)))
        object.__setattr__(self, "b", _vec(self.b))
        object.__setattr__(self, "a", _vec(self.a))
        object.__setattr__(self, "lam", _vec(self.lam))
        _check_theta(self.theta, self.allow_identity)
        n = self.partition.n
        if self.b.size != n or self.lam.size != n:
            raise InvalidCodeSpec("b, lambda and partition lengths differ")
        if self.a.size != len(self.partition):
            raise InvalidCodeSpec("need one evaluation parameter per block")
        if not 1 <= self.k <= n:
            raise InvalidCodeSpec(f"need 1 <= k <= n, got k={self.k}, n={n}")
        if np.any(self.lam == 0):
            raise InvalidCodeSpec("column multipliers must be nonzero")
        if np.any(self.a == 0):
            raise InvalidCodeSpec("evaluation parameters must be nonzero")
        norms = np.asarray(norm(self.theta, self.a))
        if np.unique(norms).size != norms.size:
            raise InvalidCodeSpec("evaluation parameters must lie in distinct classes")
        for sl in self.partition.slices():
            if not independent_over_fixed_field(self.theta, self.b[sl]):
                raise InvalidCodeSpec("locator blocks must have full sum-rank weight")

    @property
    def field(self) -> ExtField:
        return self.theta.field

    @property
    def n(self) -> int:
        return self.partition.n

    @property
    def a_vector(self) -> np.ndarray:
        """Evaluation parameters expanded to one entry per coordinate."""
        return np.repeat(self.a, self.partition.lengths)

    def with_k(self, k: int) -> "GlrsSpec":
        return GlrsSpec(self.theta, self.partition, self.b, self.a, self.lam, k,
                        self.allow_identity, self.kind)


@dataclass(frozen=True, eq=False)
class GrsComponent:
    """A GRS-type subcode: rows N^j * multipliers for j < k (locators may repeat)."""

    locators: np.ndarray
    multipliers: np.ndarray
    k: int

    @property
    def repeated_locators(self) -> bool:
        return np.unique(self.locators).size < self.locators.size

    def generator(self, F: ExtField) -> np.ndarray:
        rows = []
        cur = self.multipliers.copy()
        for _ in range(self.k):
            rows.append(cur)
            cur = F.mul(cur, self.locators)
        return np.vstack(rows)


# ---------------------------------------------------------------------------
# generators


def gsrs_generator(spec: GsrsSpec) -> np.ndarray:
    """V_k(alpha) diag(lambda): entry (r, j) is alpha_j^[[r]] lambda_j."""
    F, th = spec.field, spec.theta
    V = K.skew_vandermonde(F.T, th.s, spec.alpha, spec.k)
    return F.mul(V, spec.lam[None, :])


def glrs_generator(spec: GlrsSpec) -> np.ndarray:
    """Generalized Moore matrix times diag(lambda)."""
    F, th = spec.field, spec.theta
    M = K.moore(F.T, th.s, spec.b, np.ascontiguousarray(spec.a_vector), spec.k)
    return F.mul(M, spec.lam[None, :])


def generator(spec) -> np.ndarray:
    return gsrs_generator(spec) if isinstance(spec, GsrsSpec) else glrs_generator(spec)


# ---------------------------------------------------------------------------
# special cases


def grs_spec(F: ExtField, b, lam, k: int) -> GsrsSpec:
    """GRS(b, lam; n, k) as a GSRS code over the identity."""
    return GsrsSpec(Automorphism(F, 0), b, lam, k, allow_identity=True, kind="GRS")


def grs_as_glrs(F: ExtField, b, lam, k: int) -> GlrsSpec:
    """GRS(b, lam; n, k) = GLRS(1, b, lam; n, k) over the identity."""
    b = _vec(b)
    n = b.size
    return GlrsSpec(Automorphism(F, 0), BlockPartition.singletons(n), np.ones(n, np.int64),
                    b, lam, k, allow_identity=True)


def gabidulin_generator(F: ExtField, b, k: int) -> np.ndarray:
    """Moore matrix with rows sigma^r(b)."""
    b = _vec(b)
    return np.vstack([F.frobenius(b, r) for r in range(k)])


def gabidulin_as_glrs(F: ExtField, b, k: int) -> GlrsSpec:
    """Gab(b; n, k) = GLRS(b, (1), 1; n, k) over the Frobenius."""
    b = _vec(b)
    n = b.size
    return GlrsSpec(Automorphism(F, 1), BlockPartition((n,)), b, [1], np.ones(n, np.int64),
                    k, kind="GAB")


def gabidulin_as_gsrs(F: ExtField, b, k: int) -> GsrsSpec:
    """Gab(b; n, k) = GSRS(b^(q-1), b; n, k) over the Frobenius."""
    b = _vec(b)
    return GsrsSpec(Automorphism(F, 1), F.pow(b, F.q - 1), b, k)


# ---------------------------------------------------------------------------
# transformations


def glrs_to_gsrs(spec: GlrsSpec) -> GsrsSpec:
    """Same code as GSRS: locators a^b (conjugates), multipliers lambda * b."""
    F, th = spec.field, spec.theta
    alpha = conjugate(th, spec.a_vector, spec.b)
    kind = "GRS" if th.is_identity else "GSRS"
    return GsrsSpec(th, alpha, F.mul(spec.lam, spec.b), spec.k,
                    allow_identity=spec.allow_identity or th.is_identity, kind=kind)


def gsrs_to_glrs(spec: GsrsSpec):
    """Return ``(perm, glrs)`` where GLRS equals the code permuted by ``perm``.

    Coordinate j of the GLRS code is coordinate ``perm[j]`` of the GSRS code.
    Locators and parameters come from :func:`conjugacy_representation`; the
    multipliers are lambda[perm] * b^(-1).
    """
    F, th = spec.field, spec.theta
    rep = conjugacy_representation(th, spec.alpha)
    lam = F.mul(spec.lam[rep.perm], F.inv(rep.b))
    glrs = GlrsSpec(th, BlockPartition(rep.partition), rep.b, np.array(rep.reps, np.int64),
                    lam, spec.k, allow_identity=spec.allow_identity or th.is_identity)
    return rep.perm.copy(), glrs


# ---------------------------------------------------------------------------
# duals


def _dual_vector(F: ExtField, G_nm1: np.ndarray) -> np.ndarray:
    H = dual_basis(F, G_nm1)
    v = H[0]
    return F.mul(v, F.inv(int(v[0]))) if v[0] != 0 else v


def gsrs_dual(spec: GsrsSpec) -> GsrsSpec:
    """Dual code as a GSRS code of dimension n - k over theta^(-1).

    Raises
    ------
    DualHypothesisFailed
        When the derived locators are not P-independent for theta^(-1).
    """
    F, th = spec.field, spec.theta
    n, k = spec.n, spec.k
    if k == n:
        raise DomainError("the dual of the full space is the zero code")
    v = _dual_vector(F, gsrs_generator(spec.with_k(n - 1)))
    if np.any(v == 0):
        raise DualHypothesisFailed("dual vector has a zero entry")
    ti = inverse_automorphism(th)
    alpha = conjugate(ti, theta_pow(ti, spec.alpha, 1), F.mul(v, spec.lam))
    if not is_p_independent(ti, alpha):
        raise DualHypothesisFailed("derived dual locators are not P-independent")
    return GsrsSpec(ti, alpha, v, n - k, allow_identity=spec.allow_identity, kind=spec.kind)


def glrs_dual(spec: GlrsSpec) -> GlrsSpec:
    """Dual code as a GLRS code of dimension n - k over theta^(-1).

    Raises
    ------
    DualHypothesisFailed
        When v * lambda does not have full sum-rank weight.
    """
    F, th = spec.field, spec.theta
    n, k = spec.n, spec.k
    if k == n:
        raise DomainError("the dual of the full space is the zero code")
    v = _dual_vector(F, glrs_generator(spec.with_k(n - 1)))
    ti = inverse_automorphism(th)
    loc = F.mul(v, spec.lam)
    if weight(F, loc, WeightSpec.sum_rank(spec.partition)) != n:
        raise DualHypothesisFailed("v * lambda does not have full sum-rank weight")
    try:
        return GlrsSpec(ti, spec.partition, loc, theta_pow(ti, spec.a, 1), F.inv(spec.lam),
                        n - k, allow_identity=spec.allow_identity)
    except InvalidCodeSpec as exc:
        raise DualHypothesisFailed(str(exc)) from exc


# ---------------------------------------------------------------------------
# decomposition into GRS subcodes


def k_profile(k: int, m: int) -> tuple[int, ...]:
    """(k mod m) entries ceil(k/m) followed by floor(k/m) entries."""
    if k < 1 or m < 1:
        raise ValueError("k and m must be positive")
    q, r = divmod(k, m)
    return tuple([q + 1] * r + [q] * (m - r))


def decompose(spec) -> list[GrsComponent]:
    """Direct-sum decomposition of a GSRS or GLRS code into GRS subcodes.

    Rows whose degree agrees modulo the order mu of theta are grouped
    (mu = m under gcd(s, m) = 1); row i + mu j of component i is
    N^j times the component multipliers.  Components of dimension zero
    (present when k < mu) are omitted.
    """
    F, th = spec.field, spec.theta
    mu = th.order
    if isinstance(spec, GsrsSpec):
        loc = np.asarray(norm(th, spec.alpha), dtype=np.int64)
        base = spec.alpha
        extra = None
    else:
        a = spec.a_vector
        loc = np.asarray(norm(th, a), dtype=np.int64)
        base = a
        extra = spec.b
    comps = []
    power = np.ones(spec.n, dtype=np.int64)  # base^[[i]]
    for i, ki in enumerate(k_profile(spec.k, mu)):
        if ki > 0:
            mult = F.mul(power, spec.lam)
            if extra is not None:
                mult = F.mul(mult, theta_pow(th, extra, i))
            comps.append(GrsComponent(loc, mult, ki))
        power = F.mul(base, theta_pow(th, power, 1))
    return comps


def stack_components(F: ExtField, comps) -> np.ndarray:
    return np.vstack([c.generator(F) for c in comps])


# ---------------------------------------------------------------------------
# random sampling


def _independent_block(F: ExtField, theta: Automorphism, size: int, rng) -> np.ndarray:
    while True:
        b = F.random(rng, size, nonzero=True)
        if independent_over_fixed_field(theta, b):
            return b


def _class_counts(num_classes: int, capacity: int, n: int, rng) -> np.ndarray:
    if n > num_classes * capacity:
        raise InvalidCodeSpec(f"length {n} exceeds the maximum {num_classes * capacity}")
    slots = rng.choice(num_classes * capacity, size=n, replace=False)
    return np.bincount(slots // capacity, minlength=num_classes)


def _class_norms(theta: Automorphism) -> np.ndarray:
    # nonzero norms are exactly the nonzero elements of the fixed field F_q
    return np.arange(1, theta.field.q, dtype=np.int64)


def _random_member(theta: Automorphism, nrm: int, rng) -> int:
    F = theta.field
    rep = class_representative(theta, nrm)
    return int(conjugate(theta, rep, F.random(rng, nonzero=True)))


def random_p_independent(theta: Automorphism, n: int, rng: np.random.Generator) -> np.ndarray:
    """Uniformly shaped random P-independent vector of length n.

    Built in the class representation: a random n-subset of the
    (q-1) * m class slots fixes the block sizes, each block gets
    independent b_j, and the entries are the conjugates of the class
    representative by b_j, shuffled.  Under the identity the result is n
    distinct nonzero elements.
    """
    F = theta.field
    if theta.is_identity:
        if n > F.order - 1:
            raise InvalidCodeSpec("too many distinct nonzero locators requested")
        return rng.choice(np.arange(1, F.order, dtype=np.int64), size=n, replace=False)
    _check_theta(theta, False)
    norms = _class_norms(theta)
    counts = _class_counts(norms.size, F.m, n, rng)
    out = []
    for nrm, c in zip(norms.tolist(), counts.tolist()):
        if c == 0:
            continue
        rep = class_representative(theta, nrm)
        b = _independent_block(F, theta, c, rng)
        out.append(conjugate(theta, np.full(c, rep, np.int64), b))
    alpha = np.concatenate(out)
    return alpha[rng.permutation(n)]


def random_gsrs_spec(theta: Automorphism, n: int, k: int, rng: np.random.Generator) -> GsrsSpec:
    F = theta.field
    alpha = random_p_independent(theta, n, rng)
    lam = F.random(rng, n, nonzero=True)
    return GsrsSpec(theta, alpha, lam, k, allow_identity=theta.is_identity,
                    kind="GRS" if theta.is_identity else "GSRS")


def random_glrs_spec(theta: Automorphism, n: int, k: int, rng: np.random.Generator,
                     multipliers: str = "any", partition=None) -> GlrsSpec:
    """Random GLRS parameters.

    ``multipliers`` is ``"any"`` (nonzero F_{q^m}), ``"base"`` (nonzero F_q),
    ``"block"`` (one nonzero value per block) or ``"ones"`` (LRS code).
    """
    F = theta.field
    _check_theta(theta, False)
    norms = _class_norms(theta)
    if partition is None:
        counts = _class_counts(norms.size, F.m, n, rng)
        chosen = [int(x) for x in np.flatnonzero(counts)]
        lengths = [int(counts[i]) for i in chosen]
    else:
        lengths = list(BlockPartition(tuple(partition)).lengths)
        if len(lengths) > norms.size or max(lengths) > F.m:
            raise InvalidCodeSpec("partition incompatible with the field")
        chosen = sorted(rng.choice(norms.size, size=len(lengths), replace=False).tolist())
    a = np.array([_random_member(theta, int(norms[i]), rng) for i in chosen], np.int64)
    b = np.concatenate([_independent_block(F, theta, c, rng) for c in lengths])
    if multipliers == "any":
        lam = F.random(rng, n, nonzero=True)
    elif multipliers == "base":
        lam = F.random_base(rng, n, nonzero=True)
    elif multipliers == "block":
        lam = np.repeat(F.random(rng, len(lengths), nonzero=True), lengths)
    elif multipliers == "ones":
        lam = np.ones(n, np.int64)
    else:
        raise ValueError(f"unknown multiplier mode {multipliers!r}")
    return GlrsSpec(theta, BlockPartition(tuple(lengths)), b, a, lam, k)


def random_gabidulin_locators(F: ExtField, n: int, rng) -> np.ndarray:
    th = Automorphism(F, 1)
    if n > F.m:
        raise InvalidCodeSpec("Gabidulin length cannot exceed m")
    return _independent_block(F, th, n, rng)


# ---------------------------------------------------------------------------
# text format


def _line(label, values):
    return f"{label}: " + " ".join(str(int(v)) for v in values)


def spec_to_text(spec) -> str:
    F, th = spec.field, spec.theta
    kind = spec.kind
    lines = [F.header(th.s), f"{kind} {F.q}^{F.m} {spec.n} {spec.k}"]
    if kind == "GAB":
        lines.append(_line("b", spec.b))
    elif isinstance(spec, GsrsSpec):
        lines += [_line("alpha", spec.alpha), _line("lambda", spec.lam)]
    else:
        lines += [
            _line("partition", spec.partition.lengths),
            _line("b", spec.b),
            _line("a", spec.a),
            _line("lambda", spec.lam),
        ]
    return "\n".join(lines) + "\n"


def spec_from_text(text: str):
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    F, s = parse_header(lines[:3])
    head = lines[3].split()
    if len(head) != 4 or head[0] not in ("GSRS", "GLRS", "GRS", "GAB"):
        raise ValueError("expected 'GSRS|GLRS|GRS|GAB q^m n k'")
    kind, n, k = head[0], int(head[2]), int(head[3])
    params = {}
    for ln in lines[4:]:
        key, _, rest = ln.partition(":")
        params[key.strip()] = [int(x) for x in rest.split()]
    th = Automorphism(F, s)
    if kind == "GAB":
        spec = gabidulin_as_glrs(F, params["b"], k)
    elif kind in ("GSRS", "GRS"):
        spec = GsrsSpec(th, params["alpha"], params["lambda"], k,
                        allow_identity=kind == "GRS", kind=kind)
    else:
        spec = GlrsSpec(th, BlockPartition(tuple(params["partition"])), params["b"],
                        params["a"], params["lambda"], k, allow_identity=th.is_identity)
    if spec.n != n:
        raise ValueError("declared length disagrees with the parameters")
    return spec


def is_full_rank(F: ExtField, G) -> bool:
    G = np.asarray(G)
    return rank(F, G) == G.shape[0]
