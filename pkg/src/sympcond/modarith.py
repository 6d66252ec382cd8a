"""Exact square-matrix arithmetic over Z/nZ.

Single matrices are :class:`ModMatrix` values (immutable, hashable).  The
group engine works on stacks of matrices held as ``(N, d, d)`` int64 numpy
arrays; the ``batch_*`` helpers and :class:`KeyCodec` serve that path.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, prod
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import (
    DimensionMismatch,
    ModulusMismatch,
    NonCoprimeFactors,
    NonDivisorLevel,
    NotInvertible,
)

# -------------------- integers --------------------


@lru_cache(maxsize=None)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of ``n`` by trial division, primes increasing."""
    if n < 1:
        raise ValueError(f"modulus must be >= 1, got {n}")
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p = 3 if p == 2 else p + 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == ((n, 1),)


def valuation(n: int, p: int) -> int:
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def divisors(n: int) -> list[int]:
    ds = [1]
    for p, e in factorize(n):
        ds = [d * p**k for d in ds for k in range(e + 1)]
    return sorted(ds)


def prime_support_part(n: int, m: int) -> int:
    """Largest divisor of ``n`` whose primes all divide ``m``."""
    return prod(p**e for p, e in factorize(n) if m % p == 0)


def unit_group_generators(q: int) -> list[int]:
    """Generators of (Z/qZ)^x for a prime power ``q``."""
    ((p, e),) = factorize(q)
    if p == 2:
        if e == 1:
            return []
        if e == 2:
            return [3]
        return [q - 1, 5]
    phi = (p - 1) * p ** (e - 1)
    odd_factors = [r for r, _ in factorize(phi)]
    for c in range(2, q):
        if c % p and all(pow(c, phi // r, q) != 1 for r in odd_factors):
            return [c]
    raise AssertionError("no primitive root found")  # unreachable for prime powers


# -------------------- Modulus --------------------


@dataclass(frozen=True)
class Modulus:
    n: int
    factorization: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if prod(p**e for p, e in self.factorization) != self.n:
            raise ValueError("factorization does not multiply to n")
        primes = [p for p, _ in self.factorization]
        if primes != sorted(set(primes)) or any(e < 1 for _, e in self.factorization):
            raise ValueError("factorization must have increasing primes and positive exponents")

    @classmethod
    def of(cls, n: Union[int, "Modulus"]) -> "Modulus":
        if isinstance(n, Modulus):
            return n
        return _modulus(int(n))

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.factorization]

    @property
    def prime_powers(self) -> list[int]:
        return [p**e for p, e in self.factorization]

    def __int__(self) -> int:
        return self.n

    def __str__(self) -> str:
        return str(self.n)


@lru_cache(maxsize=None)
def _modulus(n: int) -> Modulus:
    return Modulus(n, factorize(n))


ModulusLike = Union[int, Modulus]


def _n(m: ModulusLike) -> int:
    return m.n if isinstance(m, Modulus) else int(m)


# -------------------- ModMatrix --------------------


def _byte_width(n: int) -> int:
    return max(1, ((n - 1).bit_length() + 7) // 8)


@dataclass(frozen=True)
class ModMatrix:
    """A ``dim x dim`` matrix over Z/nZ with entries stored row-major in [0, n)."""

    dim: int
    modulus: Modulus
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != self.dim * self.dim:
            raise DimensionMismatch(f"expected {self.dim ** 2} entries, got {len(self.entries)}")
        n = self.modulus.n
        if any(not 0 <= x < n for x in self.entries):
            raise ValueError("entries must be reduced into [0, n)")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], n: ModulusLike) -> "ModMatrix":
        mod = Modulus.of(n)
        dim = len(rows)
        if any(len(r) != dim for r in rows):
            raise DimensionMismatch("matrix must be square")
        return cls(dim, mod, tuple(int(x) % mod.n for r in rows for x in r))

    @classmethod
    def from_flat(cls, flat: Sequence[int], n: ModulusLike) -> "ModMatrix":
        dim = int(round(len(flat) ** 0.5))
        if dim * dim != len(flat):
            raise DimensionMismatch(f"{len(flat)} entries is not a square count")
        mod = Modulus.of(n)
        return cls(dim, mod, tuple(int(x) % mod.n for x in flat))

    @classmethod
    def from_array(cls, arr: np.ndarray, n: ModulusLike) -> "ModMatrix":
        mod = Modulus.of(n)
        a = np.asarray(arr, dtype=np.int64) % mod.n
        return cls(a.shape[0], mod, tuple(int(x) for x in a.ravel()))

    @classmethod
    def identity(cls, dim: int, n: ModulusLike) -> "ModMatrix":
        mod = Modulus.of(n)
        one = 1 % mod.n
        return cls(dim, mod, tuple(one if i == j else 0 for i in range(dim) for j in range(dim)))

    @classmethod
    def scalar(cls, dim: int, c: int, n: ModulusLike) -> "ModMatrix":
        mod = Modulus.of(n)
        c %= mod.n
        return cls(dim, mod, tuple(c if i == j else 0 for i in range(dim) for j in range(dim)))

    @property
    def n(self) -> int:
        return self.modulus.n

    @property
    def array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64).reshape(self.dim, self.dim)

    def rows(self) -> list[list[int]]:
        d = self.dim
        return [list(self.entries[i * d:(i + 1) * d]) for i in range(d)]

    def transpose(self) -> "ModMatrix":
        return ModMatrix.from_array(self.array.T, self.modulus)

    def scale(self, c: int) -> "ModMatrix":
        return ModMatrix(self.dim, self.modulus, tuple(c * x % self.n for x in self.entries))

    def encode(self) -> bytes:
        """Canonical byte encoding: dim, modulus, then entries (little-endian)."""
        n = self.n
        nw = max(1, (n.bit_length() + 7) // 8)
        w = _byte_width(n)
        out = bytearray([self.dim, nw])
        out += n.to_bytes(nw, "little")
        for x in self.entries:
            out += x.to_bytes(w, "little")
        return bytes(out)

    @classmethod
    def decode(cls, data: bytes) -> "ModMatrix":
        dim, nw = data[0], data[1]
        n = int.from_bytes(data[2:2 + nw], "little")
        w = _byte_width(n)
        body = data[2 + nw:]
        if len(body) != dim * dim * w:
            raise ValueError("truncated matrix encoding")
        entries = tuple(int.from_bytes(body[i:i + w], "little") for i in range(0, len(body), w))
        return cls(dim, Modulus.of(n), entries)

    def __matmul__(self, other: "ModMatrix") -> "ModMatrix":
        return mat_mul(self, other)

    def __repr__(self) -> str:
        return f"ModMatrix({self.rows()}, n={self.n})"


def _check_compatible(a: ModMatrix, b: ModMatrix) -> None:
    if a.dim != b.dim:
        raise DimensionMismatch(f"dimension mismatch: {a.dim} vs {b.dim}")
    if a.n != b.n:
        raise ModulusMismatch(f"modulus mismatch: {a.n} vs {b.n}")


def mat_mul(a: ModMatrix, b: ModMatrix) -> ModMatrix:
    _check_compatible(a, b)
    d, n = a.dim, a.n
    A, B = a.entries, b.entries
    out = tuple(
        sum(A[i * d + k] * B[k * d + j] for k in range(d)) % n
        for i in range(d)
        for j in range(d)
    )
    return ModMatrix(d, a.modulus, out)


def _int_det(rows: list[list[int]]) -> int:
    """Exact integer determinant (Bareiss fraction-free elimination)."""
    m = [list(r) for r in rows]
    size = len(m)
    if size == 0:
        return 1
    sign, prev = 1, 1
    for k in range(size - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, size) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[-1][-1]


def det(a: ModMatrix) -> int:
    return _int_det(a.rows()) % a.n


def mat_inverse(a: ModMatrix) -> ModMatrix:
    """Inverse via adjugate times the inverse of the determinant."""
    rows = a.rows()
    d, n = a.dim, a.n
    dt = _int_det(rows) % n
    if gcd(dt, n) != 1:
        raise NotInvertible(f"determinant {dt} is not a unit mod {n}")
    dinv = pow(dt, -1, n) if n > 1 else 0
    adj = [[0] * d for _ in range(d)]
    for i in range(d):
        for j in range(d):
            minor = [r[:j] + r[j + 1:] for k, r in enumerate(rows) if k != i]
            adj[j][i] = (-1) ** (i + j) * _int_det(minor)
    return ModMatrix.from_rows([[x * dinv for x in r] for r in adj], a.modulus)


def reduce_level(a: ModMatrix, m: ModulusLike) -> ModMatrix:
    mm = _n(m)
    if a.n % mm:
        raise NonDivisorLevel(f"{mm} does not divide {a.n}")
    return ModMatrix(a.dim, Modulus.of(mm), tuple(x % mm for x in a.entries))


def crt_split(a: ModMatrix, n1: int, n2: int) -> tuple[ModMatrix, ModMatrix]:
    if gcd(n1, n2) != 1:
        raise NonCoprimeFactors(f"{n1} and {n2} are not coprime")
    if n1 * n2 != a.n:
        raise NonCoprimeFactors(f"{n1}*{n2} != {a.n}")
    return reduce_level(a, n1), reduce_level(a, n2)


def crt_coefficients(n1: int, n2: int) -> tuple[int, int]:
    """(e1, e2) with e1 = 1 mod n1, 0 mod n2 and e2 = 0 mod n1, 1 mod n2."""
    if gcd(n1, n2) != 1:
        raise NonCoprimeFactors(f"{n1} and {n2} are not coprime")
    n = n1 * n2
    e1 = n2 * pow(n2, -1, n1) % n if n1 > 1 else 0
    e2 = n1 * pow(n1, -1, n2) % n if n2 > 1 else 0
    return e1, e2


def crt_join(a1: ModMatrix, a2: ModMatrix) -> ModMatrix:
    if a1.dim != a2.dim:
        raise DimensionMismatch("dimension mismatch")
    n1, n2 = a1.n, a2.n
    e1, e2 = crt_coefficients(n1, n2)
    n = n1 * n2
    return ModMatrix(
        a1.dim, Modulus.of(n), tuple((x * e1 + y * e2) % n for x, y in zip(a1.entries, a2.entries))
    )


# -------------------- batched (numpy) helpers --------------------


def as_stack(mats: Iterable[ModMatrix], dim: int) -> np.ndarray:
    mats = list(mats)
    if not mats:
        return np.zeros((0, dim, dim), dtype=np.int64)
    return np.stack([m.array for m in mats])


def batch_mul(x: np.ndarray, y: np.ndarray, n: int) -> np.ndarray:
    """Products ``x[i] @ y`` (or ``x[i] @ y[i]``) reduced mod n."""
    return np.matmul(x, y) % n


def batch_crt_join(x1: np.ndarray, n1: int, x2: np.ndarray, n2: int) -> np.ndarray:
    e1, e2 = crt_coefficients(n1, n2)
    return (x1 * e1 + x2 * e2) % (n1 * n2)


class KeyCodec:
    """Bijective per-matrix keys for stacks of matrices with fixed dim and n.

    Keys are int64 (base-n digits, row-major) when n**(dim*dim) fits, and
    fixed-width byte strings (numpy void) otherwise.  Both sort with numpy, so
    membership is a searchsorted over a sorted key array.
    """

    def __init__(self, dim: int, n: int):
        self.dim, self.n = dim, n
        self.fits_int = n ** (dim * dim) < 2**63
        if self.fits_int:
            self.powers = np.array([n**i for i in range(dim * dim)], dtype=np.int64)
        else:
            self.dtype = np.uint8 if n <= 256 else np.uint16 if n <= 65536 else np.uint32
            self.width = dim * dim * np.dtype(self.dtype).itemsize

    def keys(self, arr: np.ndarray) -> np.ndarray:
        flat = arr.reshape(len(arr), self.dim * self.dim)
        if self.fits_int:
            return flat @ self.powers
        raw = np.ascontiguousarray(flat.astype(self.dtype))
        return raw.view(f"V{self.width}").ravel()


def lookup(sorted_keys: np.ndarray, keys: np.ndarray) -> np.ndarray:
    """Indices of ``keys`` in ``sorted_keys``, or -1 where absent."""
    if len(sorted_keys) == 0:
        return np.full(len(keys), -1, dtype=np.int64)
    pos = np.searchsorted(sorted_keys, keys)
    pos_c = np.minimum(pos, len(sorted_keys) - 1)
    hit = sorted_keys[pos_c] == keys
    return np.where(hit, pos_c, -1)
