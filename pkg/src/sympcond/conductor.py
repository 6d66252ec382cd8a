"""Open subgroups of GSp_2g(Zhat) presented at a finite level, and their conductors.

An :class:`OpenSubgroup` with level M and finite group h stands for the full
preimage of h under reduction mod M.  Everything below is computed from h by
reducing its elements to divisors of M.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from math import gcd, prod
from typing import Optional, Sequence

import numpy as np

from .errors import InvalidPrime, NonDivisorLevel, NonMultipleLevel
from .modarith import ModMatrix, Modulus, divisors, factorize, is_prime, prime_support_part, valuation
from .subgroup import DEFAULT_BUDGET, FiniteSubgroup, close
from .sympgroup import (
    SymplecticContext,
    alpha,
    gsp_order_n,
    kernel_generators,
    kernel_order,
    lift_element,
)


def rad(n: int) -> int:
    return prod(p for p, _ in factorize(n))


def rad_prime(n: int) -> int:
    """rad(n), doubled when 4 divides n."""
    return 2 * rad(n) if n % 4 == 0 else rad(n)


class OpenSubgroup:
    """G = preimage of ``h`` under GSp_2g(Zhat) -> GSp_2g(Z/level)."""

    def __init__(self, g: int, level: int | Modulus, h: FiniteSubgroup, recipe: Optional[dict] = None):
        self.g = g
        self.level = Modulus.of(level)
        if h.ctx.g != g or h.ctx.n != self.level.n:
            raise ValueError("h does not live at the stated level")
        self.h = h
        self.recipe = recipe
        self._images: dict[int, int] = {}

    @classmethod
    def from_generators(
        cls,
        g: int,
        level: int,
        generators: Sequence[ModMatrix],
        budget: int = DEFAULT_BUDGET,
        recipe: Optional[dict] = None,
    ) -> "OpenSubgroup":
        ctx = SymplecticContext.of(g, level)
        return cls(g, level, close(ctx, list(generators), budget=budget), recipe)

    @classmethod
    def full(cls, g: int, level: int) -> "OpenSubgroup":
        from .sympgroup import gsp_generators

        return cls.from_generators(g, level, gsp_generators(g, level) if level > 1 else [])

    @classmethod
    def from_json(cls, data: dict | str, budget: int = DEFAULT_BUDGET) -> "OpenSubgroup":
        if isinstance(data, str):
            data = json.loads(data)
        g, level = int(data["g"]), int(data["level"])
        if g < 1 or level < 1:
            raise ValueError("g and level must be positive")
        gens = []
        for flat in data["generators"]:
            if len(flat) != 4 * g * g:
                raise ValueError(f"generator has {len(flat)} entries, expected {4 * g * g}")
            if any(not 0 <= int(x) < level for x in flat) and level > 1:
                raise ValueError("generator entries must lie in [0, level)")
            gens.append(ModMatrix.from_flat([int(x) for x in flat], level))
        return cls.from_generators(g, level, gens, budget=budget, recipe=data.get("recipe"))

    def to_json(self) -> dict:
        out = {
            "g": self.g,
            "level": self.level.n,
            "generators": [list(x.entries) for x in self.h.generators],
        }
        if self.recipe is not None:
            out["recipe"] = self.recipe
        return out

    @property
    def ambient_order(self) -> int:
        return gsp_order_n(self.g, self.level)

    @property
    def adelic_index(self) -> int:
        return self.ambient_order // self.h.order

    def image_order(self, m: int) -> int:
        """|G(m)| for m dividing the level."""
        self._check_divisor(m)
        if m not in self._images:
            if m == self.level.n:
                self._images[m] = self.h.order
            else:
                codec = SymplecticContext.of(self.g, m).codec
                self._images[m] = len(np.unique(codec.keys(self.h.elements % m)))
        return self._images[m]

    def _check_divisor(self, m: int) -> None:
        if m < 1 or self.level.n % m:
            raise NonDivisorLevel(f"{m} does not divide the level {self.level.n}")

    def __repr__(self) -> str:
        return f"<OpenSubgroup g={self.g} level={self.level.n} |h|={self.h.order}>"


def level_raise(G: OpenSubgroup, n: int, budget: int = DEFAULT_BUDGET) -> OpenSubgroup:
    """The same adelic group presented at level ``n`` (a multiple of the level)."""
    M = G.level.n
    if n % M:
        raise NonMultipleLevel(f"{n} is not a multiple of the level {M}")
    if n == M:
        return G
    gens = [lift_element(x, n, G.g) for x in G.h.generators]
    gens += kernel_generators(G.g, n, M)
    return OpenSubgroup.from_generators(G.g, n, gens, budget=budget, recipe=G.recipe)


def kernel_contained(G: OpenSubgroup, m: int) -> bool:
    """Whether ker(GSp(Zhat) -> GSp(Z/m)) lies in G, for m dividing the level."""
    G._check_divisor(m)
    gens = kernel_generators(G.g, G.level.n, m)
    return G.h.contains_all(gens)


def _split_level(G: OpenSubgroup, m: int) -> tuple[int, int]:
    M = G.level.n
    m_part = prime_support_part(M, m)
    return m_part, M // m_part


def splits(G: OpenSubgroup, m: int) -> bool:
    G._check_divisor(m)
    m_part, rest = _split_level(G, m)
    full_rest = gsp_order_n(G.g, rest)
    return G.image_order(rest) == full_rest and G.h.order == G.image_order(m_part) * full_rest


def is_stable(G: OpenSubgroup, m: int) -> bool:
    G._check_divisor(m)
    m_part, _ = _split_level(G, m)
    return G.image_order(m_part) == G.image_order(m) * kernel_order(G.g, m_part, m)


@dataclass
class DivisorTrace:
    m: int
    kernel_contained: bool
    splits: bool
    stable: bool


@dataclass
class ConductorReport:
    g: int
    level: int
    conductor: int
    adelic_index: int
    trace: list[DivisorTrace] = field(default_factory=list)
    exponents: dict[int, int] = field(default_factory=dict)

    @property
    def exponent_product(self) -> int:
        return prod(p**e for p, e in self.exponents.items())

    @property
    def equivalence_holds(self) -> bool:
        return all(t.kernel_contained == (t.splits and t.stable) for t in self.trace)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["exponents"] = {str(p): e for p, e in self.exponents.items()}
        return d

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, d: dict) -> "ConductorReport":
        return cls(
            g=d["g"],
            level=d["level"],
            conductor=d["conductor"],
            adelic_index=d["adelic_index"],
            trace=[DivisorTrace(**t) for t in d["trace"]],
            exponents={int(p): e for p, e in d["exponents"].items()},
        )


def conductor_exponent(G: OpenSubgroup, ell: int) -> int:
    """The exponent of ``ell`` in the conductor, from kernel containment in the ell-pure part.

    The test at step k asks whether the image mod ell^(k+1) of
    h ∩ ker(mod M/ell^v) contains ker(mod ell^(k+1) -> mod ell^k).  Steps with
    k >= v hold automatically since G contains the kernel at level M.
    """
    M = G.level.n
    v = valuation(M, ell)
    if v == 0:
        return 0
    rest = M // ell**v
    elems = G.h.elements
    if rest > 1:
        ident = np.eye(2 * G.g, dtype=np.int64)
        pure = elems[np.all(elems % rest == ident, axis=(1, 2))]
    else:
        pure = elems
    cache: dict[int, bool] = {}

    def step(k: int) -> bool:
        if k >= v:
            return True
        if k not in cache:
            q = ell ** (k + 1)
            codec = SymplecticContext.of(G.g, q).codec
            image = np.unique(codec.keys(pure % q))
            wanted = kernel_generators(G.g, q, ell**k)
            keys = codec.keys(np.stack([x.array for x in wanted]))
            cache[k] = bool(np.all(np.isin(keys, image)))
        return cache[k]

    a = alpha(ell)
    for beta in range(v + 1):
        if all(step(k) for k in range(beta, max(beta, a) + 1)):
            return beta
    return v


def compute_conductor(G: OpenSubgroup, exponents: bool = True) -> ConductorReport:
    M = G.level.n
    trace = []
    conductor = None
    for m in divisors(M):
        kc = kernel_contained(G, m)
        trace.append(DivisorTrace(m, kc, splits(G, m), is_stable(G, m)))
        if kc and conductor is None:
            conductor = m
    exps = {p: conductor_exponent(G, p) for p, _ in factorize(M)} if exponents else {}
    return ConductorReport(G.g, M, conductor, G.adelic_index, trace, exps)


def conductor(G: OpenSubgroup) -> int:
    """Least divisor m of the level with ker(mod m) inside G."""
    for m in divisors(G.level.n):
        if kernel_contained(G, m):
            return m
    return G.level.n  # unreachable: m = level always qualifies


def relative_index(G: OpenSubgroup, big: int, small: int) -> int:
    """[pi_{big,small}^{-1}(G(small)) : G(big)] for small | big | level."""
    if big % small:
        raise NonDivisorLevel(f"{small} does not divide {big}")
    return kernel_order(G.g, big, small) * G.image_order(small) // G.image_order(big)


@dataclass
class StepCheck:
    d: int
    ell: int
    index: int
    divides: bool


@dataclass
class IndexDivisibilityReport:
    conductor: int
    rad_prime: int
    ratio: int
    index: int
    divides: bool
    steps: list[StepCheck] = field(default_factory=list)
    factorization_holds: bool = True
    adelic_index: int = 1

    @property
    def ok(self) -> bool:
        return self.divides and self.factorization_holds and all(s.divides for s in self.steps)


def check_index_divisibility(G: OpenSubgroup, m_G: Optional[int] = None) -> IndexDivisibilityReport:
    """Divisibility of the stacked index by m_G / rad'(m_G), the per-step divisibility, and the index split."""
    if m_G is None:
        m_G = conductor(G)
    r = rad_prime(m_G)
    ratio = m_G // r
    idx = relative_index(G, m_G, r)
    steps = []
    for ell, _ in factorize(m_G):
        for d in divisors(m_G):
            if d % r == 0 and m_G % (d * ell) == 0:
                s = relative_index(G, d * ell, d)
                steps.append(StepCheck(d, ell, s, s % ell == 0))
    top = gsp_order_n(G.g, m_G) // G.image_order(m_G)
    bottom = gsp_order_n(G.g, r) // G.image_order(r)
    fact_ok = top == bottom * idx and top == G.adelic_index
    return IndexDivisibilityReport(m_G, r, ratio, idx, idx % ratio == 0, steps, fact_ok, G.adelic_index)


def conductor_bound(
    g: int,
    adelic_index: int,
    ramified_primes: Sequence[int] = (),
    bad_reduction_primes: Sequence[int] = (),
) -> tuple[int, int]:
    """(B, 2 * B * index) with B the product of the flagged primes (and 2 when g = 2)."""
    if adelic_index < 1:
        raise ValueError("index must be a positive integer")
    flagged = set()
    for p in list(ramified_primes) + list(bad_reduction_primes):
        if not is_prime(int(p)):
            raise InvalidPrime(f"{p} is not prime")
        flagged.add(int(p))
    if g == 2:
        flagged.add(2)
    b = prod(flagged)
    return b, 2 * b * adelic_index


def gcd_candidate(G: OpenSubgroup, m: int) -> int:
    """The divisor of the level that decides kernel containment for an arbitrary m."""
    return gcd(m, G.level.n)
