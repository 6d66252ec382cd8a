"""Finite subgroups of GSp_2g(Z/nZ) by exhaustive enumeration.

Every materialized group keeps its elements as an ``(N, d, d)`` int64 stack
sorted by :class:`~sympcond.modarith.KeyCodec` key, so membership tests are
vectorized binary searches.  Groups flagged ``projective`` live in the
quotient by the unit scalars; their elements are the coset representatives
with the least key.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import (
    BudgetExceeded,
    NotASubgroup,
    NotHomomorphism,
    NotSurjective,
    ScalarsNotContained,
)
from .modarith import ModMatrix, batch_crt_join, lookup
from .sympgroup import (
    SymplecticContext,
    batch_inverse,
    batch_multiplier,
    unit_scalars,
)

DEFAULT_BUDGET = 5_000_000
_CHUNK = 250_000


class FiniteSubgroup:
    """A materialized subgroup of GSp_2g(Z/nZ) (or of its quotient by scalars)."""

    def __init__(
        self,
        ctx: SymplecticContext,
        generators: Sequence[ModMatrix],
        elements: np.ndarray,
        keys: np.ndarray,
        projective: bool = False,
    ):
        self.ctx = ctx
        self.generators = list(generators)
        self.elements = elements
        self.keys = keys
        self.projective = projective

    @property
    def order(self) -> int:
        return len(self.keys)

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        kind = "P" if self.projective else ""
        return f"<{kind}FiniteSubgroup g={self.ctx.g} n={self.ctx.n} order={self.order}>"

    @property
    def gen_array(self) -> np.ndarray:
        d = self.ctx.dim
        if not self.generators:
            return np.zeros((0, d, d), dtype=np.int64)
        return np.stack([x.array for x in self.generators])

    def element(self, i: int) -> ModMatrix:
        return ModMatrix.from_array(self.elements[i], self.ctx.modulus)

    def index_of(self, arr: np.ndarray) -> np.ndarray:
        """Positions of the given matrices in ``elements`` (-1 if absent)."""
        arr, keys = canonicalize(arr, self.ctx, self.projective)
        return lookup(self.keys, keys)

    def contains_array(self, arr: np.ndarray) -> np.ndarray:
        return self.index_of(arr) >= 0

    def __contains__(self, x: ModMatrix) -> bool:
        return bool(self.contains_array(x.array[None])[0])

    def contains_all(self, mats: Iterable[ModMatrix]) -> bool:
        mats = list(mats)
        if not mats:
            return True
        return bool(np.all(self.contains_array(np.stack([m.array for m in mats]))))

    def is_subgroup_of(self, other: "FiniteSubgroup") -> bool:
        return self.contains_all(self.generators) and other.contains_all(self.generators)

    def same_as(self, other: "FiniteSubgroup") -> bool:
        return self.order == other.order and np.array_equal(self.keys, other.keys)


# -------------------- closure --------------------


def canonicalize(arr: np.ndarray, ctx: SymplecticContext, projective: bool) -> tuple[np.ndarray, np.ndarray]:
    """Reduce ``arr`` to canonical representatives and return them with their keys."""
    codec = ctx.codec
    keys = codec.keys(arr)
    if not projective:
        return arr, keys
    if not codec.fits_int:
        raise NotImplementedError("projective groups need integer keys")
    n = ctx.n
    best, best_keys = arr, keys
    for c in unit_scalars(n)[1:]:
        cand = arr * c % n
        ck = codec.keys(cand)
        better = ck < best_keys
        if better.any():
            best = np.where(better[:, None, None], cand, best)
            best_keys = np.where(better, ck, best_keys)
    return best, best_keys


def _products(frontier: np.ndarray, gens: np.ndarray, n: int) -> np.ndarray:
    return np.concatenate([np.matmul(frontier, g) % n for g in gens])


def _bfs(
    ctx: SymplecticContext,
    base: np.ndarray,
    base_keys: np.ndarray,
    frontier: np.ndarray,
    gens: np.ndarray,
    projective: bool,
    budget: int,
) -> tuple[np.ndarray, np.ndarray]:
    """Grow the sorted set ``base`` by right multiplication until closed."""
    n = ctx.n
    visited = base_keys
    parts, part_keys = [base], [base_keys]
    total = len(base_keys)
    if len(gens) == 0:
        frontier = frontier[:0]
    while len(frontier):
        found, found_keys = [], []
        for start in range(0, len(frontier), _CHUNK):
            cand = _products(frontier[start:start + _CHUNK], gens, n)
            cand, ck = canonicalize(cand, ctx, projective)
            ck, idx = np.unique(ck, return_index=True)
            fresh = lookup(visited, ck) < 0
            found.append(cand[idx[fresh]])
            found_keys.append(ck[fresh])
        new_keys = np.concatenate(found_keys)
        new = np.concatenate(found)
        if len(found) > 1:
            new_keys, idx = np.unique(new_keys, return_index=True)
            new = new[idx]
        total += len(new_keys)
        if total > budget:
            raise BudgetExceeded(budget, total)
        if len(new_keys):
            visited = np.sort(np.concatenate([visited, new_keys]))
            parts.append(new)
            part_keys.append(new_keys)
        frontier = new
    elems = np.concatenate(parts)
    keys = np.concatenate(part_keys)
    order = np.argsort(keys, kind="stable")
    return elems[order], keys[order]


def _as_array(ctx: SymplecticContext, mats: Sequence[ModMatrix] | np.ndarray) -> np.ndarray:
    if isinstance(mats, np.ndarray):
        return mats.reshape(-1, ctx.dim, ctx.dim) % ctx.n
    if not len(mats):
        return np.zeros((0, ctx.dim, ctx.dim), dtype=np.int64)
    for m in mats:
        if m.dim != ctx.dim or m.n != ctx.n:
            raise ValueError(f"generator {m} does not lie in GSp_{ctx.dim}(Z/{ctx.n})")
    return np.stack([m.array for m in mats])


def _to_mats(ctx: SymplecticContext, arr: np.ndarray) -> list[ModMatrix]:
    return [ModMatrix.from_array(a, ctx.modulus) for a in arr]


def close(
    ctx: SymplecticContext,
    generators: Sequence[ModMatrix] | np.ndarray,
    budget: int = DEFAULT_BUDGET,
    projective: bool = False,
    check: bool = True,
) -> FiniteSubgroup:
    """Materialize the subgroup generated by ``generators``.

    Raises BudgetExceeded as soon as more than ``budget`` elements are found.
    """
    gens = _as_array(ctx, generators)
    if check and len(gens) and np.any(batch_multiplier(gens, ctx) < 0):
        raise ValueError("generators must lie in GSp")
    gens, _ = canonicalize(gens, ctx, projective)
    ident, ident_key = canonicalize(ctx.identity_array()[None], ctx, projective)
    elems, keys = _bfs(ctx, ident, ident_key, ident, gens, projective, budget)
    if isinstance(generators, np.ndarray) or projective:
        gen_list = _to_mats(ctx, gens)
    else:
        gen_list = list(generators)
    return FiniteSubgroup(ctx, gen_list, elems, keys, projective)


def extend(
    group: FiniteSubgroup,
    new_generators: Sequence[ModMatrix] | np.ndarray,
    budget: int = DEFAULT_BUDGET,
) -> FiniteSubgroup:
    """The subgroup generated by ``group`` and ``new_generators``."""
    ctx = group.ctx
    new = _as_array(ctx, new_generators)
    if len(new) == 0:
        return group
    new, _ = canonicalize(new, ctx, group.projective)
    new = new[~group.contains_array(new)]
    if len(new) == 0:
        return group
    first = _products(group.elements, new, ctx.n)
    first, fk = canonicalize(first, ctx, group.projective)
    fk, idx = np.unique(fk, return_index=True)
    fresh = lookup(group.keys, fk) < 0
    frontier = first[idx[fresh]]
    all_gens = np.concatenate([group.gen_array, new]) if group.generators else new
    base_elems = np.concatenate([group.elements, frontier])
    base_keys = np.concatenate([group.keys, fk[fresh]])
    if len(base_keys) > budget:
        raise BudgetExceeded(budget, len(base_keys))
    order = np.argsort(base_keys, kind="stable")
    elems, keys = _bfs(ctx, base_elems[order], base_keys[order], frontier, all_gens, group.projective, budget)
    return FiniteSubgroup(ctx, group.generators + _to_mats(ctx, new), elems, keys, group.projective)


def trivial_group(ctx: SymplecticContext, projective: bool = False) -> FiniteSubgroup:
    return close(ctx, [], projective=projective)


def from_elements(
    ctx: SymplecticContext,
    arr: np.ndarray,
    projective: bool = False,
    seed: int = 0,
) -> FiniteSubgroup:
    """Wrap a stack already known to be a subgroup, picking a small generating set."""
    arr, keys = canonicalize(arr, ctx, projective)
    keys, idx = np.unique(keys, return_index=True)
    arr = arr[idx]
    rng = np.random.default_rng(seed)
    group = trivial_group(ctx, projective)
    while group.order < len(keys):
        missing = np.flatnonzero(~group.contains_array(arr))
        pick = arr[missing[rng.integers(len(missing))]][None]
        group = extend(group, pick, budget=len(keys))
    return group


def project(group: FiniteSubgroup, m: int) -> FiniteSubgroup:
    """Image of ``group`` under reduction mod ``m``."""
    ctx = group.ctx
    if ctx.n % m:
        from .errors import NonDivisorLevel

        raise NonDivisorLevel(f"{m} does not divide {ctx.n}")
    sub = ctx.at_level(m)
    arr = group.elements % m
    keys = sub.codec.keys(arr)
    keys, idx = np.unique(keys, return_index=True)
    gens = [ModMatrix.from_array(x.array % m, m) for x in group.generators]
    return FiniteSubgroup(sub, gens, arr[idx], keys)


# -------------------- basic group operations --------------------


def inverses(group: FiniteSubgroup, arr: np.ndarray) -> np.ndarray:
    inv = batch_inverse(arr, group.ctx)
    return canonicalize(inv, group.ctx, group.projective)[0]


def index(big: FiniteSubgroup, small: FiniteSubgroup) -> int:
    if not big.contains_all(small.generators):
        raise NotASubgroup("second group is not contained in the first")
    return big.order // small.order


def conjugate_stack(group: FiniteSubgroup, arr: np.ndarray, g: np.ndarray) -> np.ndarray:
    """g^{-1} x g for every x in ``arr``."""
    n = group.ctx.n
    g_inv = batch_inverse(g[None], group.ctx)[0]
    out = np.matmul(np.matmul(g_inv, arr) % n, g) % n
    return canonicalize(out, group.ctx, group.projective)[0]


def normal_closure(
    group: FiniteSubgroup,
    subset: Sequence[ModMatrix] | np.ndarray,
    budget: int = DEFAULT_BUDGET,
) -> FiniteSubgroup:
    """Smallest normal subgroup of ``group`` containing ``subset``."""
    ctx = group.ctx
    pending = canonicalize(_as_array(ctx, subset), ctx, group.projective)[0]
    if len(pending) and not np.all(group.contains_array(pending)):
        raise NotASubgroup("subset is not contained in the group")
    result = close(ctx, pending, budget=budget, projective=group.projective, check=False)
    g_arr = group.gen_array
    while len(pending):
        conj = np.concatenate([conjugate_stack(group, pending, g) for g in g_arr]) if len(g_arr) else pending[:0]
        missing = conj[~result.contains_array(conj)] if len(conj) else conj
        if len(missing) == 0:
            break
        _, idx = np.unique(ctx.codec.keys(missing), return_index=True)
        missing = missing[idx]
        result = extend(result, missing, budget=budget)
        pending = missing
    return result


def commutator_subgroup(group: FiniteSubgroup, budget: int = DEFAULT_BUDGET) -> FiniteSubgroup:
    """Normal closure of the commutators of pairs of generators."""
    ctx, n = group.ctx, group.ctx.n
    g_arr = group.gen_array
    if len(g_arr) == 0:
        return trivial_group(ctx, group.projective)
    inv = batch_inverse(g_arr, ctx)
    comms = []
    for i in range(len(g_arr)):
        for j in range(len(g_arr)):
            if i < j:
                c = inv[i] @ inv[j] % n @ g_arr[i] % n @ g_arr[j] % n
                comms.append(c)
    if not comms:
        return trivial_group(ctx, group.projective)
    comm_arr, keys = canonicalize(np.stack(comms), ctx, group.projective)
    ident_key = canonicalize(ctx.identity_array()[None], ctx, group.projective)[1][0]
    comm_arr = comm_arr[keys != ident_key]
    return normal_closure(group, comm_arr, budget=budget)


def conjugation_permutations(group: FiniteSubgroup) -> list[np.ndarray]:
    """For each generator g, the permutation i -> index of g^{-1} x_i g."""
    perms = []
    for g in group.gen_array:
        conj = conjugate_stack(group, group.elements, g)
        perms.append(lookup(group.keys, canonicalize(conj, group.ctx, group.projective)[1]))
    return perms


def conjugacy_classes(group: FiniteSubgroup) -> np.ndarray:
    """Class label for every element (aligned with ``group.elements``).

    Labels are renumbered so that classes appear in order of their least key;
    the identity's class is therefore label 0 only when the identity has the
    least key.
    """
    size = group.order
    perms = conjugation_permutations(group)
    if not perms:
        return np.arange(size)
    rows = np.concatenate([np.arange(size)] * len(perms))
    cols = np.concatenate(perms)
    graph = coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(size, size))
    _, labels = connected_components(graph, directed=True, connection="weak")
    _, first = np.unique(labels, return_index=True)
    relabel = np.empty(len(first), dtype=np.int64)
    relabel[np.argsort(np.argsort(first))] = np.arange(len(first))
    return relabel[labels]


def class_list(group: FiniteSubgroup) -> list[np.ndarray]:
    labels = conjugacy_classes(group)
    order = np.argsort(labels, kind="stable")
    bounds = np.flatnonzero(np.diff(labels[order])) + 1
    return np.split(order, bounds)


def normal_core(group: FiniteSubgroup, sub: FiniteSubgroup) -> FiniteSubgroup:
    """Largest subgroup of ``sub`` normal in ``group``: the union of classes inside ``sub``."""
    if not group.contains_all(sub.generators):
        raise NotASubgroup("second group is not contained in the first")
    labels = conjugacy_classes(group)
    inside = sub.contains_array(group.elements)
    n_classes = labels.max() + 1
    bad = np.zeros(n_classes, dtype=bool)
    np.logical_or.at(bad, labels, ~inside)
    keep = ~bad[labels]
    return from_elements(group.ctx, group.elements[keep], group.projective)


def center(group: FiniteSubgroup) -> FiniteSubgroup:
    """Elements commuting with every generator (in the quotient, when projective)."""
    ctx, n = group.ctx, group.ctx.n
    elems = group.elements
    ok = np.ones(len(elems), dtype=bool)
    for g in group.gen_array:
        left = canonicalize(np.matmul(elems, g) % n, ctx, group.projective)[1]
        right = canonicalize(np.matmul(g, elems) % n, ctx, group.projective)[1]
        ok &= left == right
    return from_elements(ctx, elems[ok], group.projective)


def normal_subgroups(group: FiniteSubgroup, budget: int = DEFAULT_BUDGET) -> list[FiniteSubgroup]:
    """All normal subgroups, as joins of normal closures of single classes.

    Returned sorted by order.
    """
    ctx = group.ctx
    labels = conjugacy_classes(group)
    n_classes = int(labels.max()) + 1
    reps = np.zeros(n_classes, dtype=np.int64)
    reps[labels[::-1]] = np.arange(len(labels))[::-1]

    def signature(sub: FiniteSubgroup) -> frozenset:
        return frozenset(np.unique(labels[group.index_of(sub.elements)]).tolist())

    found: dict[frozenset, FiniteSubgroup] = {}
    triv = trivial_group(ctx, group.projective)
    found[signature(triv)] = triv
    ident_label = labels[group.index_of(ctx.identity_array()[None])[0]]
    for c in range(n_classes):
        if c == ident_label:
            continue
        sub = normal_closure(group, group.elements[reps[c]][None], budget=budget)
        found.setdefault(signature(sub), sub)
    changed = True
    while changed:
        changed = False
        sigs = list(found)
        for i, a in enumerate(sigs):
            for b in sigs[i + 1:]:
                if a <= b or b <= a:
                    continue
                join = extend(found[a], found[b].generators, budget=budget)
                sig = signature(join)
                if sig not in found:
                    found[sig] = join
                    changed = True
    return sorted(found.values(), key=lambda s: s.order)


def quotient_by_scalars(group: FiniteSubgroup) -> FiniteSubgroup:
    """The image of ``group`` in GSp / (unit scalars)."""
    if group.projective:
        return group
    ctx = group.ctx
    scal = unit_scalars(ctx.n)
    ident = ctx.identity_array()
    scalar_arr = np.stack([ident * c % ctx.n for c in scal])
    if not np.all(group.contains_array(scalar_arr)):
        raise ScalarsNotContained("the scalar subgroup is not contained in the group")
    arr, keys = canonicalize(group.elements, ctx, True)
    keys, idx = np.unique(keys, return_index=True)
    gens = canonicalize(group.gen_array, ctx, True)[0] if group.generators else group.gen_array
    return FiniteSubgroup(ctx, _to_mats(ctx, gens), arr[idx], keys, projective=True)


# -------------------- random subgroups --------------------


def random_elements(ambient: FiniteSubgroup, rng: np.random.Generator, k: int) -> np.ndarray:
    return ambient.elements[rng.integers(ambient.order, size=k)]


def random_subgroup(
    ambient: FiniteSubgroup,
    rng: np.random.Generator,
    k: Optional[int] = None,
    budget: int = DEFAULT_BUDGET,
) -> FiniteSubgroup:
    """Closure of k uniformly drawn ambient elements, k uniform in {1, 2, 3} if not given."""
    if k is None:
        k = int(rng.integers(1, 4))
    return close(ambient.ctx, random_elements(ambient, rng, k), budget=budget, projective=ambient.projective, check=False)


# -------------------- fiber products --------------------


def cyclic_table(q: int) -> np.ndarray:
    return (np.arange(q)[:, None] + np.arange(q)[None, :]) % q


@dataclass
class FiberSpec:
    """Two groups with surjections onto a common finite group Q.

    ``left_map`` / ``right_map`` give the Q-label of every element (aligned
    with ``elements``); Q is described by its Cayley table with identity 0.
    """

    left: FiniteSubgroup
    right: FiniteSubgroup
    left_map: np.ndarray
    right_map: np.ndarray
    q_table: np.ndarray = field(default_factory=lambda: cyclic_table(1))

    @classmethod
    def from_characters(
        cls,
        left: FiniteSubgroup,
        right: FiniteSubgroup,
        chi_left: Callable[[np.ndarray], np.ndarray],
        chi_right: Callable[[np.ndarray], np.ndarray],
        q: int,
    ) -> "FiberSpec":
        lmap = np.asarray(chi_left(left.elements)).astype(np.int64) % q
        rmap = np.asarray(chi_right(right.elements)).astype(np.int64) % q
        return cls(left, right, lmap, rmap, cyclic_table(q))

    @property
    def q_order(self) -> int:
        return len(self.q_table)

    @property
    def is_trivial(self) -> bool:
        return self.q_order == 1

    def validate(self) -> None:
        for group, labels in ((self.left, self.left_map), (self.right, self.right_map)):
            if len(labels) != group.order:
                raise ValueError("label table does not match the group")
            if len(np.unique(labels)) != self.q_order:
                raise NotSurjective("quotient map is not surjective")
            n = group.ctx.n
            for g in group.gen_array:
                img = group.index_of(np.matmul(group.elements, g) % n)
                g_label = labels[group.index_of(g[None])[0]]
                if not np.array_equal(labels[img], self.q_table[labels, g_label]):
                    raise NotHomomorphism("quotient map is not a homomorphism")


def fiber_product(spec: FiberSpec, budget: int = DEFAULT_BUDGET, validate: bool = True) -> FiniteSubgroup:
    """{(a, b) : psi_1(a) = psi_2(b)} inside GSp(Z/n1 n2) via CRT."""
    if validate:
        spec.validate()
    left, right = spec.left, spec.right
    n1, n2 = left.ctx.n, right.ctx.n
    if left.ctx.g != right.ctx.g:
        raise ValueError("fiber factors must have the same rank")
    expected = left.order * right.order // spec.q_order
    if expected > budget:
        raise BudgetExceeded(budget, expected, "fiber product")
    parts = []
    for t in range(spec.q_order):
        a = left.elements[spec.left_map == t]
        b = right.elements[spec.right_map == t]
        pa = np.repeat(a, len(b), axis=0)
        pb = np.tile(b, (len(a), 1, 1))
        parts.append(batch_crt_join(pa, n1, pb, n2))
    ctx = SymplecticContext.of(left.ctx.g, n1 * n2)
    return from_elements(ctx, np.concatenate(parts))
