"""ReSkew: a Niederreiter-type public-key encryption scheme from GSRS codes.

The secret key is a GSRS code (locators b, multipliers lambda) over
theta = sigma^s; the public key is the non-identity block T of the
systematic parity-check matrix H_pub = (I_{n-k} | T).  A message is a
weight-t vector m; its ciphertext is the syndrome m H_pub^T.  Decryption
pads the syndrome with k zeros and decodes.

Key material serializes to a compact binary format: a fixed header
followed by the field elements packed at ceil(log2 q^m) bits each.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass, field as dc_field

import numpy as np

from .decode import decode_gsrs
from .distinguish import field_for
from .evalcodes import GsrsSpec, gsrs_generator, random_p_independent
from .fieldtower import Automorphism, DomainError, ExtField, make_field, norm
from .matcodes import SystematicFormUnavailable, systematic_right

MAGIC = b"RSKW"
VERSION = 1
KIND_PK, KIND_SK, KIND_CT = 1, 2, 3
MAX_KEYGEN_ATTEMPTS = 16


class KeyGenerationError(RuntimeError):
    pass


class DecryptionError(ValueError):
    pass


class FormatError(ValueError):
    """Malformed serialized key material."""


class BadMagic(FormatError):
    pass


class UnsupportedVersion(FormatError):
    pass


class WrongKind(FormatError):
    pass


class TruncatedPayload(FormatError):
    pass


class ParameterMismatch(FormatError):
    pass


# ---------------------------------------------------------------------------
# parameters


@dataclass(frozen=True)
class ReskewParams:
    q: int
    m: int
    s: int
    n: int
    k: int
    t: int
    name: str = dc_field(default="", compare=False)

    def __post_init__(self):
        if self.m <= 1:
            raise DomainError("ReSkew needs m > 1")
        if not (0 < self.s < self.m and math.gcd(self.s, self.m) == 1):
            raise DomainError("need 0 < s < m with gcd(s, m) = 1")
        if self.n > self.m * (self.q - 1):
            raise DomainError("n exceeds m(q-1)")
        if not 0 < self.k < self.n:
            raise DomainError("need 0 < k < n")
        if self.t != (self.n - self.k) // 2:
            raise DomainError("t must equal floor((n-k)/2)")

    @property
    def field(self) -> ExtField:
        return field_for(self.q, self.m)

    @property
    def theta(self) -> Automorphism:
        return Automorphism(self.field, self.s)

    @property
    def element_bits(self) -> int:
        """ceil(log2 q^m)"""
        return (self.q**self.m - 1).bit_length()

    def tuple(self):
        return (self.q, self.m, self.s, self.n, self.k, self.t)


def _params(name, q, m, s, n, k, t):
    return ReskewParams(q, m, s, n, k, t, name=name)


PARAMETER_SETS: dict[str, ReskewParams] = {
    p.name: p
    for p in (
        _params("reskew-1", 233, 2, 1, 427, 325, 51),
        _params("reskew-1-bin", 256, 2, 1, 427, 325, 51),
        _params("reskew-3", 331, 2, 1, 627, 465, 81),
        _params("reskew-3-bin", 512, 2, 1, 626, 464, 81),
        _params("reskew-5", 457, 2, 1, 842, 624, 109),
        _params("reskew-5-bin", 512, 2, 1, 842, 624, 109),
        _params("toy-9", 9, 2, 1, 12, 8, 2),
        _params("toy-256", 16, 2, 1, 30, 20, 5),
    )
}

#: Named sets meant for real security levels (the rest are test sizes).
SECURITY_SETS = ("reskew-1", "reskew-1-bin", "reskew-3", "reskew-3-bin", "reskew-5", "reskew-5-bin")


def get_params(name: str) -> ReskewParams:
    try:
        return PARAMETER_SETS[name]
    except KeyError:
        raise DomainError(f"unknown parameter set {name!r}; known: {', '.join(PARAMETER_SETS)}")


# ---------------------------------------------------------------------------
# keys


@dataclass(frozen=True, eq=False)
class PublicKey:
    params: ReskewParams
    T: np.ndarray  # (n-k) x k

    def parity_check(self) -> np.ndarray:
        p = self.params
        return np.hstack([np.eye(p.n - p.k, dtype=np.int64), self.T])


@dataclass(frozen=True, eq=False)
class SecretKey:
    params: ReskewParams
    b: np.ndarray
    lam: np.ndarray
    attempts: int = 1

    def spec(self) -> GsrsSpec:
        return GsrsSpec(self.params.theta, self.b, self.lam, self.params.k)


@dataclass(frozen=True, eq=False)
class Ciphertext:
    params: ReskewParams
    c: np.ndarray


def _single_class(theta: Automorphism, alpha) -> bool:
    return np.unique(np.asarray(norm(theta, alpha))).size == 1


def keygen(params: ReskewParams, rng: np.random.Generator):
    """Sample (b, lambda), reduce V_k(b) diag(lambda) to (U | I_k), set T = -U^T."""
    F, th = params.field, params.theta
    for attempt in range(1, MAX_KEYGEN_ATTEMPTS + 1):
        b = random_p_independent(th, params.n, rng)
        lam = F.random(rng, params.n, nonzero=True)
        if __debug__:
            # a single conjugacy class would mean a Gabidulin-shaped code
            assert not _single_class(th, b), "sampled locators lie in one class"
        spec = GsrsSpec(th, b, lam, params.k)
        try:
            U = systematic_right(F, gsrs_generator(spec))
        except SystematicFormUnavailable:
            continue
        T = np.ascontiguousarray(F.neg(U.T))
        return PublicKey(params, T), SecretKey(params, b, lam, attempt)
    raise KeyGenerationError(f"no systematic form after {MAX_KEYGEN_ATTEMPTS} attempts")


def sample_message(params: ReskewParams, rng: np.random.Generator) -> np.ndarray:
    """Uniform support of size t with uniform nonzero values."""
    F = params.field
    msg = np.zeros(params.n, dtype=np.int64)
    if params.t:
        sup = rng.choice(params.n, size=params.t, replace=False)
        msg[sup] = F.random(rng, params.t, nonzero=True)
    return msg


def encrypt(pk: PublicKey, msg) -> Ciphertext:
    p = pk.params
    F = p.field
    msg = np.asarray(msg, dtype=np.int64).ravel()
    if msg.size != p.n:
        raise DomainError("message has the wrong length")
    if np.count_nonzero(msg) != p.t:
        raise DomainError(f"message must have Hamming weight exactly {p.t}")
    r = p.n - p.k
    c = F.add(msg[:r], F.matmul(msg[r:], np.ascontiguousarray(pk.T.T)))
    return Ciphertext(p, c)


def decrypt(sk: SecretKey, ct: Ciphertext) -> np.ndarray:
    p = sk.params
    if ct.params.tuple() != p.tuple():
        raise ParameterMismatch("ciphertext and secret key parameters differ")
    if ct.c.size != p.n - p.k:
        raise DecryptionError("ciphertext has the wrong length")
    F = p.field
    c0 = np.concatenate([ct.c, np.zeros(p.k, dtype=np.int64)])
    res = decode_gsrs(sk.spec(), c0, p.t)
    if not res.ok:
        raise DecryptionError(f"decoding failed: {res.reason}")
    return F.sub(c0, res.codeword)


# ---------------------------------------------------------------------------
# sizes and security estimate


def sizes(params: ReskewParams) -> tuple[int, int, int]:
    """Payload bytes of (public key, secret key, ciphertext)."""
    w = params.element_bits
    n, k = params.n, params.k

    def nbytes(count):
        return -(-count * w // 8)

    return nbytes(k * (n - k)), nbytes(2 * n), nbytes(n - k)


def prange_log2(n: int, k: int, t: int) -> float:
    """log2 of C(n, t) / C(n-k, t); infinite when t > n - k."""
    if t < 0 or k < 0 or k > n:
        raise DomainError("need 0 <= k <= n and t >= 0")
    if t > n - k:
        return math.inf
    num, den = math.comb(n, t), math.comb(n - k, t)
    return math.log2(num) - math.log2(den)


# ---------------------------------------------------------------------------
# serialization


_HEAD = struct.Struct(">4sBBHBBBHHH")


def pack_elements(values, bits: int) -> bytes:
    """Big-endian bit packing at ``bits`` per value, zero-padded to a byte."""
    v = np.asarray(values, dtype=np.uint64).ravel()
    if v.size == 0:
        return b""
    shifts = np.arange(bits - 1, -1, -1, dtype=np.uint64)
    bitmat = ((v[:, None] >> shifts[None, :]) & np.uint64(1)).astype(np.uint8)
    return np.packbits(bitmat.ravel()).tobytes()


def unpack_elements(data: bytes, count: int, bits: int) -> np.ndarray:
    need = -(-count * bits // 8)
    if len(data) < need:
        raise TruncatedPayload(f"payload has {len(data)} bytes, expected {need}")
    if len(data) > need:
        raise FormatError(f"payload has {len(data) - need} trailing bytes")
    if count == 0:
        return np.zeros(0, dtype=np.int64)
    bitv = np.unpackbits(np.frombuffer(data, dtype=np.uint8))[: count * bits]
    weights = (1 << np.arange(bits - 1, -1, -1)).astype(np.int64)
    return bitv.reshape(count, bits).astype(np.int64) @ weights


def _header(kind: int, params: ReskewParams) -> bytes:
    F = params.field
    head = _HEAD.pack(MAGIC, VERSION, kind, F.p, F.e, F.m, params.s, params.n, params.k, params.t)
    inner = F.inner_modulus
    if len(inner) != F.e + 1:
        inner = tuple(inner) + (0,) * (F.e + 1 - len(inner))
    return head + struct.pack(f">{F.e + 1}H", *inner) + struct.pack(f">{F.m + 1}H", *F.outer_modulus)


def _parse_header(data: bytes, expected_kind: int | None):
    if len(data) < _HEAD.size:
        raise TruncatedPayload("file shorter than the fixed header")
    magic, ver, kind, p, e, m, s, n, k, t = _HEAD.unpack_from(data)
    if magic != MAGIC:
        raise BadMagic(f"bad magic {magic!r}")
    if ver != VERSION:
        raise UnsupportedVersion(f"unsupported version {ver}")
    if kind not in (KIND_PK, KIND_SK, KIND_CT):
        raise WrongKind(f"unknown kind byte {kind}")
    if expected_kind is not None and kind != expected_kind:
        raise WrongKind(f"expected kind {expected_kind}, found {kind}")
    off = _HEAD.size
    need = off + 2 * (e + 1) + 2 * (m + 1)
    if len(data) < need:
        raise TruncatedPayload("file ends inside the modulus fields")
    inner = struct.unpack_from(f">{e + 1}H", data, off)
    outer = struct.unpack_from(f">{m + 1}H", data, off + 2 * (e + 1))
    try:
        F = make_field(p, e, m, tuple(inner), tuple(outer))
        params = ReskewParams(p**e, m, s, n, k, t)
    except (ValueError, DomainError) as exc:
        raise ParameterMismatch(f"inconsistent parameters in header: {exc}") from exc
    canon = params.field
    if (canon.inner_modulus, canon.outer_modulus) != (F.inner_modulus, F.outer_modulus):
        raise ParameterMismatch("moduli differ from the canonical field for these parameters")
    for nm, known in PARAMETER_SETS.items():
        if known.tuple() == params.tuple():
            params = known
            break
    return kind, params, data[need:]


def serialize(obj) -> bytes:
    """Binary encoding of a PublicKey, SecretKey or Ciphertext."""
    if isinstance(obj, PublicKey):
        kind, vals = KIND_PK, obj.T.ravel()
    elif isinstance(obj, SecretKey):
        kind, vals = KIND_SK, np.concatenate([obj.b, obj.lam])
    elif isinstance(obj, Ciphertext):
        kind, vals = KIND_CT, obj.c
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    p = obj.params
    return _header(kind, p) + pack_elements(vals, p.element_bits)


def deserialize(data: bytes, expected_kind: int | None = None):
    kind, p, payload = _parse_header(data, expected_kind)
    w = p.element_bits
    n, k = p.n, p.k
    if kind == KIND_PK:
        T = unpack_elements(payload, (n - k) * k, w).reshape(n - k, k)
        obj = PublicKey(p, T)
        vals = T
    elif kind == KIND_SK:
        v = unpack_elements(payload, 2 * n, w)
        obj = SecretKey(p, v[:n].copy(), v[n:].copy())
        vals = v
    else:
        vals = unpack_elements(payload, n - k, w)
        obj = Ciphertext(p, vals)
    if np.any(vals >= p.field.order):
        raise FormatError("element encoding out of range")
    return obj


def payload_size(data: bytes) -> int:
    """Bytes after the header."""
    return len(_parse_header(data, None)[2])
