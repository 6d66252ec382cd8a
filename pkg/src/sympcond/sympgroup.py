"""General symplectic groups GSp_2g(Z/nZ): the form, multipliers, orders, generators."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd, prod
from typing import TYPE_CHECKING, Optional

import numpy as np

from .errors import CompositeModulus, NonDivisorLevel, UnsupportedRank
from .modarith import (
    KeyCodec,
    ModMatrix,
    Modulus,
    ModulusLike,
    crt_join,
    mat_inverse,
    factorize,
    is_prime,
    unit_group_generators,
    valuation,
)

if TYPE_CHECKING:
    from .subgroup import FiniteSubgroup

SUPPORTED_RANKS = (1, 2, 3)


def omega_array(g: int, n: int) -> np.ndarray:
    om = np.zeros((2 * g, 2 * g), dtype=np.int64)
    om[:g, g:] = np.eye(g, dtype=np.int64)
    om[g:, :g] = -np.eye(g, dtype=np.int64)
    return om % n


@dataclass(frozen=True)
class SymplecticContext:
    """The ambient group GSp_2g(Z/nZ) with its fixed form Omega."""

    g: int
    modulus: Modulus
    omega: ModMatrix = field(compare=False, repr=False)

    @classmethod
    def of(cls, g: int, n: ModulusLike) -> "SymplecticContext":
        return _context(g, Modulus.of(n).n)

    @property
    def n(self) -> int:
        return self.modulus.n

    @property
    def dim(self) -> int:
        return 2 * self.g

    @property
    def codec(self) -> KeyCodec:
        return _codec(self.dim, self.n)

    def identity(self) -> ModMatrix:
        return ModMatrix.identity(self.dim, self.modulus)

    def identity_array(self) -> np.ndarray:
        return np.eye(self.dim, dtype=np.int64) % self.n

    def at_level(self, m: ModulusLike) -> "SymplecticContext":
        return SymplecticContext.of(self.g, m)


@lru_cache(maxsize=None)
def _context(g: int, n: int) -> SymplecticContext:
    if g < 1:
        raise UnsupportedRank(f"g must be positive, got {g}")
    mod = Modulus.of(n)
    return SymplecticContext(g, mod, ModMatrix.from_array(omega_array(g, n), mod))


@lru_cache(maxsize=None)
def _codec(dim: int, n: int) -> KeyCodec:
    return KeyCodec(dim, n)


@dataclass(frozen=True)
class GroupConstant:
    """The rank threshold prime and the 2-adic lifting exponent."""

    g: int
    lg: int

    @staticmethod
    def alpha(ell: int) -> int:
        return 2 if ell == 2 else 1


def group_constant(g: int) -> GroupConstant:
    # g = 1 uses 5: SL_2 over F_2, F_3 is solvable, so the classification fails there
    if g == 1:
        return GroupConstant(1, 5)
    return GroupConstant(g, 3 if g == 2 else 2)


def alpha(ell: int) -> int:
    return GroupConstant.alpha(ell)


# -------------------- multiplier / membership --------------------


def batch_multiplier(arr: np.ndarray, ctx: SymplecticContext) -> np.ndarray:
    """Multipliers of a stack of matrices; -1 marks non-members of GSp."""
    n, g = ctx.n, ctx.g
    om = omega_array(g, n)
    form = np.matmul(np.matmul(arr.transpose(0, 2, 1), om), arr) % n
    mu = form[:, 0, g]
    ok = np.all(form == (mu[:, None, None] * om) % n, axis=(1, 2))
    ok &= np.gcd(mu, n) == 1
    return np.where(ok, mu, -1)


def multiplier(gamma: ModMatrix, ctx: SymplecticContext) -> Optional[int]:
    if gamma.dim != ctx.dim or gamma.n != ctx.n:
        raise ValueError("matrix does not belong to this context")
    mu = int(batch_multiplier(gamma.array[None], ctx)[0])
    return None if mu < 0 else mu


def is_gsp(gamma: ModMatrix, ctx: SymplecticContext) -> bool:
    return multiplier(gamma, ctx) is not None


def is_sp(gamma: ModMatrix, ctx: SymplecticContext) -> bool:
    return multiplier(gamma, ctx) == 1 % ctx.n


def batch_inverse(arr: np.ndarray, ctx: SymplecticContext, mult: Optional[np.ndarray] = None) -> np.ndarray:
    """Inverses of GSp elements: -mu^{-1} Omega gamma^T Omega."""
    n = ctx.n
    if mult is None:
        mult = batch_multiplier(arr, ctx)
    if np.any(mult < 0):
        raise ValueError("batch_inverse needs GSp elements")
    inv_mu = np.array([pow(int(u), -1, n) if n > 1 else 0 for u in mult], dtype=np.int64)
    om = omega_array(ctx.g, n)
    core = np.matmul(np.matmul(om, arr.transpose(0, 2, 1)), om) % n
    return (-inv_mu[:, None, None] * core) % n


# -------------------- orders --------------------


def sp_order(g: int, ell: int) -> int:
    if not is_prime(ell):
        raise CompositeModulus(f"{ell} is not prime")
    return ell ** (g * g) * prod(ell ** (2 * i) - 1 for i in range(1, g + 1))


def gsp_order(g: int, ell: int) -> int:
    return (ell - 1) * sp_order(g, ell)


def sp_order_pp(g: int, ell: int, k: int) -> int:
    if k < 1:
        raise ValueError("exponent must be >= 1")
    return sp_order(g, ell) * ell ** ((k - 1) * (2 * g * g + g))


def gsp_order_pp(g: int, ell: int, k: int) -> int:
    if k < 1:
        raise ValueError("exponent must be >= 1")
    return gsp_order(g, ell) * ell ** ((k - 1) * (2 * g * g + g + 1))


def gsp_order_n(g: int, n: ModulusLike) -> int:
    """|GSp_2g(Z/nZ)| as the CRT product of prime-power orders."""
    return prod(gsp_order_pp(g, p, e) for p, e in Modulus.of(n).factorization)


def sp_order_n(g: int, n: ModulusLike) -> int:
    return prod(sp_order_pp(g, p, e) for p, e in Modulus.of(n).factorization)


def kernel_order(g: int, n: int, m: int) -> int:
    if n % m:
        raise NonDivisorLevel(f"{m} does not divide {n}")
    return gsp_order_n(g, n) // gsp_order_n(g, m)


# -------------------- generators --------------------


def _symmetric_basis(g: int) -> list[np.ndarray]:
    basis = []
    for i in range(g):
        for j in range(i, g):
            s = np.zeros((g, g), dtype=np.int64)
            s[i, j] = s[j, i] = 1
            basis.append(s)
    return basis


def _block(a, b, c, d) -> np.ndarray:
    return np.block([[a, b], [c, d]])


def _unipotents(g: int, t: int) -> list[np.ndarray]:
    """(I, tS; 0, I) and (I, 0; tS, I) over the symmetric basis."""
    one, zero = np.eye(g, dtype=np.int64), np.zeros((g, g), dtype=np.int64)
    out = []
    for s in _symmetric_basis(g):
        out.append(_block(one, t * s, zero, one))
    for s in _symmetric_basis(g):
        out.append(_block(one, zero, t * s, one))
    return out


def _levi(u: np.ndarray, n: int) -> np.ndarray:
    g = len(u)
    zero = np.zeros((g, g), dtype=np.int64)
    w = mat_inverse(ModMatrix.from_array(u, n)).array.T
    return _block(u, zero, zero, w)


def _multiplier_diag(g: int, c: int) -> np.ndarray:
    return np.diag([c] * g + [1] * g).astype(np.int64)


def _check_rank(g: int) -> None:
    if g not in SUPPORTED_RANKS:
        raise UnsupportedRank(f"g = {g} outside supported range {SUPPORTED_RANKS}")


def embed_prime_power(x: ModMatrix, n: int) -> ModMatrix:
    """The element of GSp(Z/nZ) that is ``x`` mod q = x.n and the identity mod n/q."""
    q = x.n
    rest = n // q
    if rest == 1:
        return x
    return crt_join(x, ModMatrix.identity(x.dim, rest))


def sp_generators(g: int, n: int) -> list[ModMatrix]:
    """Elementary symplectic unipotents; they generate Sp_2g(Z/nZ)."""
    _check_rank(g)
    return [ModMatrix.from_array(u, n) for u in _unipotents(g, 1)]


def gsp_generators(g: int, n: int) -> list[ModMatrix]:
    """``sp_generators`` plus diag(c,..,c,1,..,1) for unit-group generators c of each prime-power factor."""
    gens = sp_generators(g, n)
    for q in Modulus.of(n).prime_powers:
        for c in unit_group_generators(q):
            gens.append(embed_prime_power(ModMatrix.from_array(_multiplier_diag(g, c), q), n))
    return gens


def _prime_power_kernel(g: int, ell: int, a: int, b: int) -> list[ModMatrix]:
    """Generators of ker(GSp(Z/ell^a) -> GSp(Z/ell^b)) for 1 <= b < a."""
    q = ell**a
    out = []
    for j in range(b, a):
        t = ell**j
        mats = _unipotents(g, t)
        for i in range(g):
            for k in range(g):
                u = np.eye(g, dtype=np.int64)
                u[i, k] += t
                mats.append(_levi(u % q, q))
        mats.append(_multiplier_diag(g, 1 + t))
        out.extend(ModMatrix.from_array(x, q) for x in mats)
    return out


def kernel_generators(g: int, n: int, m: int) -> list[ModMatrix]:
    """Matrices = I mod m generating ker(GSp_2g(Z/n) -> GSp_2g(Z/m))."""
    _check_rank(g)
    if n % m:
        raise NonDivisorLevel(f"{m} does not divide {n}")
    gens: list[ModMatrix] = []
    for ell, a in factorize(n):
        b = valuation(m, ell)
        if b == a:
            continue
        if b == 0:
            local = gsp_generators(g, ell**a)
        else:
            local = _prime_power_kernel(g, ell, a, b)
        gens.extend(embed_prime_power(x, n) for x in local)
    return gens


def scalar_subgroup(g: int, n: int) -> "FiniteSubgroup":
    from .subgroup import close

    ctx = SymplecticContext.of(g, n)
    units = [c for c in range(1, n) if gcd(c, n) == 1] if n > 1 else []
    return close(ctx, [ModMatrix.scalar(2 * g, c, n) for c in units])


def unit_scalars(n: int) -> np.ndarray:
    return np.array([c for c in range(n) if gcd(c, n) == 1] or [0], dtype=np.int64)


# -------------------- lifting --------------------


def _pair(u: np.ndarray, v: np.ndarray, om: np.ndarray, n: int) -> int:
    return int(u @ om @ v) % n


def lift_element(x: ModMatrix, n: int, g: Optional[int] = None) -> ModMatrix:
    """Some element of GSp_2g(Z/nZ) reducing to ``x`` mod x.n.

    Integer lifts of the columns are re-orthogonalised by symplectic
    Gram-Schmidt over the part of Z/nZ supported on the primes of x.n; all
    corrections vanish mod x.n.  Primes of n not dividing x.n get the
    identity.
    """
    m = x.n
    if n % m:
        raise NonDivisorLevel(f"{m} does not divide {n}")
    g = g if g is not None else x.dim // 2
    ctx_m = SymplecticContext.of(g, m)
    mu = multiplier(x, ctx_m)
    if mu is None:
        raise ValueError("cannot lift a non-GSp element")
    ns = prod(p**e for p, e in factorize(n) if m % p == 0)
    if ns == 1:
        return ModMatrix.identity(2 * g, n)
    om = omega_array(g, ns)
    cols = [x.array[:, i].copy() % ns for i in range(2 * g)]
    mu_inv = pow(mu, -1, ns)
    for i in range(g):
        e, f = cols[i], cols[g + i]
        f = f * (mu * pow(_pair(e, f, om, ns), -1, ns)) % ns
        cols[g + i] = f
        for j in list(range(i + 1, g)) + list(range(g + i + 1, 2 * g)):
            v = cols[j]
            b = _pair(e, v, om, ns) * mu_inv
            a = -_pair(f, v, om, ns) * mu_inv
            cols[j] = (v - a * e - b * f) % ns
    y = ModMatrix.from_array(np.stack(cols, axis=1), ns)
    if ns == n:
        return y
    return crt_join(y, ModMatrix.identity(2 * g, n // ns))
