"""Desk-scale verification suites and the seeded open-subgroup corpus.

Each ``verify_*`` function returns a :class:`VerificationReport`.  Reports
are deterministic given their recorded parameters (only ``elapsed`` varies),
and every failing report carries the generators needed to replay it.
"""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field
from math import factorial
from typing import Callable, Optional

import numpy as np

from .conductor import (
    OpenSubgroup,
    check_index_divisibility,
    compute_conductor,
    conductor,
    is_stable,
    level_raise,
    rad_prime,
)
from .errors import BudgetExceeded, InfeasibleParameters
from .modarith import ModMatrix, divisors, factorize, is_prime
from .subgroup import (
    DEFAULT_BUDGET,
    FiberSpec,
    FiniteSubgroup,
    center,
    close,
    commutator_subgroup,
    extend,
    fiber_product,
    index,
    normal_core,
    normal_subgroups,
    project,
    quotient_by_scalars,
    random_subgroup,
)
from .sympgroup import (
    SymplecticContext,
    batch_multiplier,
    group_constant,
    gsp_generators,
    gsp_order,
    gsp_order_n,
    kernel_generators,
    lift_element,
    scalar_subgroup,
    sp_generators,
    sp_order,
    sp_order_n,
)

PASS, FAIL, BUDGET = "pass", "fail", "budget-exceeded"

ORDER_SCAN_PARAMS = ((1, 2), (1, 3), (1, 5), (2, 2))

# (g, ell, lower level) -> which group is lifted
LIFTING_CONFIGS = {
    (2, 2, 2): "sp",
    (1, 3, 9): "gsp",
    (1, 2, 8): "gsp",
}


@dataclass
class VerificationReport:
    check_name: str
    parameters: dict
    result: str = PASS
    witnesses: list = field(default_factory=list)
    details: dict = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return self.result == PASS

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    def summary(self) -> str:
        params = ", ".join(f"{k}={v}" for k, v in self.parameters.items())
        return f"[{self.result.upper()}] {self.check_name}({params}) {self.elapsed:.2f}s"


def _timed(name: str, params: dict, body: Callable[[VerificationReport], None]) -> VerificationReport:
    report = VerificationReport(name, params)
    start = time.perf_counter()
    try:
        body(report)
    except BudgetExceeded as exc:
        report.result = BUDGET
        report.details["budget_error"] = str(exc)
    report.elapsed = time.perf_counter() - start
    return report


def _literal(mats) -> list[list[int]]:
    return [[int(x) for x in (m.entries if isinstance(m, ModMatrix) else np.ravel(m))] for m in mats]


def full_group(g: int, n: int, budget: int = DEFAULT_BUDGET) -> FiniteSubgroup:
    ctx = SymplecticContext.of(g, n)
    return close(ctx, gsp_generators(g, n) if n > 1 else [], budget=budget)


def full_sp(g: int, n: int, budget: int = DEFAULT_BUDGET) -> FiniteSubgroup:
    ctx = SymplecticContext.of(g, n)
    return close(ctx, sp_generators(g, n) if n > 1 else [], budget=budget)


# -------------------- order formula --------------------


def brute_force_counts(g: int, ell: int, chunk: int = 1 << 16) -> tuple[int, int]:
    """(#GSp, #Sp) over all 2g x 2g matrices mod ell."""
    ctx = SymplecticContext.of(g, ell)
    d2 = (2 * g) ** 2
    total = ell**d2
    powers = ell ** np.arange(d2, dtype=np.int64)
    n_gsp = n_sp = 0
    for start in range(0, total, chunk):
        codes = np.arange(start, min(total, start + chunk), dtype=np.int64)
        mats = ((codes[:, None] // powers) % ell).reshape(-1, 2 * g, 2 * g)
        mult = batch_multiplier(mats, ctx)
        n_gsp += int(np.count_nonzero(mult >= 0))
        n_sp += int(np.count_nonzero(mult == 1 % ell))
    return n_gsp, n_sp


def verify_order_formula(g: int, ell: int) -> VerificationReport:
    if (g, ell) not in ORDER_SCAN_PARAMS:
        raise InfeasibleParameters(f"brute-force scan only for {ORDER_SCAN_PARAMS}")

    def body(r: VerificationReport):
        n_gsp, n_sp = brute_force_counts(g, ell)
        r.details.update(gsp_count=n_gsp, sp_count=n_sp, gsp_formula=gsp_order(g, ell), sp_formula=sp_order(g, ell))
        if (n_gsp, n_sp) != (gsp_order(g, ell), sp_order(g, ell)):
            r.result = FAIL

    return _timed("order_formula", {"g": g, "ell": ell}, body)


# -------------------- normal subgroups, commutators, centers --------------------


def verify_normal_classification(g: int, ell: int, budget: int = DEFAULT_BUDGET) -> VerificationReport:
    """Every normal N of GSp_2g(F_ell) lies in the scalars or contains Sp.

    Below the threshold prime the violations are recorded as findings and do
    not fail the report.
    """
    lg = group_constant(g).lg
    contrast = ell < lg

    def body(r: VerificationReport):
        gsp = full_group(g, ell, budget)
        sp = full_sp(g, ell, budget)
        scalars = scalar_subgroup(g, ell)
        normals = normal_subgroups(gsp, budget=budget)
        r.details["normal_orders"] = [N.order for N in normals]
        r.details["mode"] = "contrast" if contrast else "assert"
        violations = []
        for N in normals:
            if scalars.contains_all(N.generators) or N.contains_all(sp.generators):
                continue
            violations.append({"order": N.order, "generators": _literal(N.generators)})
        if contrast:
            r.details["findings"] = violations
        elif violations:
            r.result = FAIL
            r.witnesses = violations

    return _timed("normal_classification", {"g": g, "ell": ell, "lg": lg}, body)


def verify_commutator_center_simplicity(g: int, ell: int, budget: int = DEFAULT_BUDGET) -> VerificationReport:
    lg = group_constant(g).lg
    if ell < lg or not is_prime(ell):
        raise InfeasibleParameters(f"needs a prime ell >= {lg}")

    def body(r: VerificationReport):
        gsp = full_group(g, ell, budget)
        sp = full_sp(g, ell, budget)
        d_gsp = commutator_subgroup(gsp, budget)
        d_sp = commutator_subgroup(sp, budget)
        pgsp = quotient_by_scalars(gsp)
        # PSp is the image of Sp modulo scalars, i.e. (Sp . scalars) / scalars
        psp = quotient_by_scalars(extend(sp, scalar_subgroup(g, ell).generators, budget))
        z = center(pgsp)
        d_pgsp = commutator_subgroup(pgsp, budget)
        psp_normals = normal_subgroups(psp, budget)
        checks = {
            "gsp_commutator_is_sp": d_gsp.order == sp.order and d_gsp.contains_all(sp.generators),
            "sp_perfect": d_sp.order == sp.order,
            "pgsp_center_trivial": z.order == 1,
            "pgsp_commutator_is_psp": d_pgsp.order == psp.order and d_pgsp.contains_all(psp.generators),
            "psp_simple": len(psp_normals) == 2,
        }
        r.details.update(
            gsp_commutator_order=d_gsp.order,
            sp_order=sp.order,
            pgsp_order=pgsp.order,
            pgsp_center_order=z.order,
            psp_order=psp.order,
            psp_normal_orders=[N.order for N in psp_normals],
            checks=checks,
        )
        if not all(checks.values()):
            r.result = FAIL
            r.witnesses = [name for name, ok in checks.items() if not ok]

    return _timed("commutator_center_simplicity", {"g": g, "ell": ell}, body)


# -------------------- index bound / normal core --------------------


def verify_index_bound(
    g: int, ell: int, samples: int = 1000, seed: int = 1, budget: int = DEFAULT_BUDGET
) -> VerificationReport:
    """Random subgroups H of GSp_2g(F_ell) not containing Sp have index >= ell."""

    def body(r: VerificationReport):
        gsp = full_group(g, ell, budget)
        sp = full_sp(g, ell, budget)
        rng = np.random.default_rng(seed)
        skipped = checked = 0
        min_index = None
        for _ in range(samples):
            k = int(rng.integers(1, 4))
            gens = gsp.elements[rng.integers(gsp.order, size=k)]
            H = close(gsp.ctx, gens, budget=budget, check=False)
            if H.contains_all(sp.generators):
                skipped += 1
                continue
            checked += 1
            idx = gsp.order // H.order
            min_index = idx if min_index is None else min(min_index, idx)
            if idx < ell:
                r.result = FAIL
                r.witnesses.append({"generators": _literal(gens), "index": idx})
        r.details.update(sampled=samples, skipped_contains_sp=skipped, checked=checked, min_index=min_index)

    return _timed("index_bound", {"g": g, "ell": ell, "samples": samples, "seed": seed}, body)


def verify_normal_core(
    g: int, ell: int, samples: int = 200, seed: int = 1, budget: int = DEFAULT_BUDGET
) -> VerificationReport:
    """[G : core(H)] divides [G : H]! for random H in G = GSp_2g(F_ell)."""

    def body(r: VerificationReport):
        gsp = full_group(g, ell, budget)
        rng = np.random.default_rng(seed)
        proper = 0
        for _ in range(samples):
            H = random_subgroup(gsp, rng, budget=budget)
            core = normal_core(gsp, H)
            idx_h = gsp.order // H.order
            idx_core = gsp.order // core.order
            proper += idx_h > 1
            if factorial(idx_h) % idx_core:
                r.result = FAIL
                r.witnesses.append({"generators": _literal(H.generators), "index": idx_h, "core_index": idx_core})
        r.details.update(sampled=samples, proper_subgroups=proper)

    return _timed("normal_core", {"g": g, "ell": ell, "samples": samples, "seed": seed}, body)


# -------------------- lifting --------------------


def _generating_set(group: FiniteSubgroup, rng: np.random.Generator, budget: int) -> np.ndarray:
    """A few random elements generating ``group``."""
    while True:
        picks = [group.elements[rng.integers(group.order)] for _ in range(2)]
        while True:
            H = close(group.ctx, np.stack(picks), budget=budget, check=False)
            if H.order == group.order:
                return np.stack(picks)
            if len(picks) >= 4:
                break
            picks.append(group.elements[rng.integers(group.order)])


def verify_lifting(
    g: int,
    ell: int,
    from_level: int,
    samples: int = 100,
    seed: int = 1,
    group: Optional[str] = None,
    budget: int = DEFAULT_BUDGET,
) -> VerificationReport:
    """Random lifts of generators of the full group mod ``from_level`` generate the full group mod ell*from_level."""
    group = group or LIFTING_CONFIGS.get((g, ell, from_level), "sp" if g >= 2 else "gsp")
    target = ell * from_level

    def body(r: VerificationReport):
        full = (full_sp if group == "sp" else full_group)(g, target, budget)
        expected = (sp_order_n if group == "sp" else gsp_order_n)(g, target)
        low = project(full, from_level)
        rng = np.random.default_rng(seed)
        low_gens = _generating_set(low, rng, budget)
        ident = np.eye(2 * g, dtype=np.int64) % from_level
        reduced = full.elements % from_level
        kernel = full.elements[np.all(reduced == ident, axis=(1, 2))]
        base_lifts = []
        for x in low_gens:
            hit = np.flatnonzero(np.all(reduced == x, axis=(1, 2)))[0]
            base_lifts.append(full.elements[hit])
        base_lifts = np.stack(base_lifts)
        proper = 0
        orders = set()
        for _ in range(samples):
            ks = kernel[rng.integers(len(kernel), size=len(base_lifts))]
            gens = np.matmul(base_lifts, ks) % target
            H = close(full.ctx, gens, budget=budget, check=False)
            orders.add(H.order)
            if H.order != full.order:
                proper += 1
                r.witnesses.append({"generators": _literal(gens), "order": H.order})
        r.details.update(
            group=group,
            target_level=target,
            full_order=full.order,
            formula_order=expected,
            lower_generators=len(low_gens),
            proper_closures=proper,
            closure_orders=sorted(orders),
        )
        if proper or full.order != expected:
            r.result = FAIL

    params = {"g": g, "ell": ell, "from_level": from_level, "samples": samples, "seed": seed}
    return _timed("lifting", params, body)


# -------------------- corpus --------------------

DEFAULT_LEVELS = {
    1: (2, 3, 4, 5, 6, 8, 9, 10, 12, 15, 16, 18, 20, 24, 36, 40, 45),
    2: (2, 3, 4, 6, 8, 12, 24),
}
DEFAULT_MIX = {"preimage": 0.4, "entangled": 0.3, "thickened": 0.3}


@dataclass
class CorpusParams:
    seed: int = 1
    g: int = 1
    levels: tuple = ()
    mix: dict = field(default_factory=lambda: dict(DEFAULT_MIX))
    size: int = 100
    max_order: int = 4000

    def __post_init__(self):
        if not self.levels:
            self.levels = DEFAULT_LEVELS.get(self.g, (2, 3, 4, 6))
        self.levels = tuple(int(x) for x in self.levels)

    def to_dict(self) -> dict:
        return {"seed": self.seed, "g": self.g, "levels": list(self.levels), "mix": dict(self.mix),
                "size": self.size, "max_order": self.max_order}


class _Sampler:
    """Random elements of GSp_2g(Z/n): uniform per prime power when small, else a random walk."""

    UNIFORM_LIMIT = 200_000

    def __init__(self, g: int, rng: np.random.Generator):
        self.g, self.rng = g, rng
        self._full: dict[int, FiniteSubgroup] = {}

    def _local(self, q: int) -> np.ndarray:
        g = self.g
        if gsp_order_n(g, q) <= self.UNIFORM_LIMIT:
            if q not in self._full:
                self._full[q] = full_group(g, q)
            full = self._full[q]
            return full.elements[self.rng.integers(full.order)]
        gens = np.stack([x.array for x in gsp_generators(g, q)])
        x = np.eye(2 * g, dtype=np.int64)
        for i in self.rng.integers(len(gens), size=60):
            x = x @ gens[i] % q
        return x

    def element(self, n: int) -> np.ndarray:
        from .modarith import batch_crt_join

        x = np.zeros((2 * self.g, 2 * self.g), dtype=np.int64)
        acc = 1
        for p, e in factorize(n):
            q = p**e
            y = self._local(q)
            x = batch_crt_join(x[None], acc, y[None], q)[0] if acc > 1 else y
            acc *= q
        return x % n if n > 1 else x * 0


def _mats(arrs, n: int) -> list[ModMatrix]:
    return [ModMatrix.from_array(a, n) for a in arrs]


def _characters(g: int, n: int) -> dict[str, Callable[[np.ndarray], np.ndarray]]:
    """Homomorphisms GSp_2g(Z/n) -> Z/2 used to glue fiber products."""
    ctx = SymplecticContext.of(g, n)
    ((p, e),) = factorize(n)
    chars: dict[str, Callable] = {}
    if p > 2:
        squares = {x * x % p for x in range(1, p)}

        def legendre(arr, ctx=ctx, p=p, squares=squares):
            mult = batch_multiplier(arr, ctx) % p
            return (~np.isin(mult, list(squares))).astype(np.int64)

        chars["mult_legendre"] = legendre
    else:
        base = full_group(g, 2)
        derived = commutator_subgroup(base)

        def sign(arr, derived=derived):
            return (~derived.contains_array(arr % 2)).astype(np.int64)

        if derived.order < base.order:
            chars["mod2_sign"] = sign
        if e >= 2:
            def mult4(arr, ctx=ctx):
                return ((batch_multiplier(arr, ctx) % 4) == 3).astype(np.int64)

            chars["mult_mod4"] = mult4
    return chars


def _coprime_splits(levels) -> list[tuple[int, int]]:
    out = []
    for M in levels:
        fac = factorize(M)
        if len(fac) < 2:
            continue
        q1 = fac[0][0] ** fac[0][1]
        out.append((q1, M // q1))
    return out


def _preimage_instance(g, M, rng, sampler, max_order, budget) -> Optional[OpenSubgroup]:
    m = int(rng.choice([d for d in divisors(M) if d > 1]))
    ker = gsp_order_n(g, M) // gsp_order_n(g, m)
    k = int(rng.integers(1, 3))
    base = np.stack([sampler.element(m) for _ in range(k)])
    H0 = close(SymplecticContext.of(g, m), base, budget=budget, check=False)
    if H0.order * ker > max_order:
        return None
    gens = [lift_element(x, M, g) for x in _mats(base, m)] + kernel_generators(g, M, m)
    recipe = {"kind": "preimage", "base_level": m, "base_generators": _literal(base)}
    return OpenSubgroup.from_generators(g, M, gens, budget=budget, recipe=recipe)


def _thickened_instance(g, M, rng, sampler, max_order, budget) -> Optional[OpenSubgroup]:
    divs = divisors(M)
    m = int(rng.choice(divs))
    mids = [d for d in divs if d % m == 0]
    m2 = int(rng.choice(mids))
    k = int(rng.integers(1, 3))
    base = [sampler.element(m) for _ in range(k)]
    lifts = []
    for x in base:
        y = lift_element(ModMatrix.from_array(x, m), M, g).array
        kz = sampler.element(M)
        kz_low = lift_element(ModMatrix.from_array(kz % m, m), M, g) if m > 1 else None
        # perturb the lift by an element of ker(mod m): kz * (lift of kz mod m)^{-1}
        if kz_low is not None:
            from .modarith import mat_inverse

            pert = kz @ mat_inverse(kz_low).array % M
        else:
            pert = kz
        lifts.append(y @ pert % M)
    gens = _mats(lifts, M) + kernel_generators(g, M, m2)
    try:
        G = OpenSubgroup.from_generators(g, M, gens, budget=max_order)
    except BudgetExceeded:
        return None
    G.recipe = {"kind": "thickened", "base_level": m, "thick_level": m2, "base_generators": _literal(base)}
    return G


def _entangled_instance(g, split, rng, sampler, max_order, budget) -> Optional[OpenSubgroup]:
    M1, M2 = split
    chars1, chars2 = _characters(g, M1), _characters(g, M2)
    if not chars1 or not chars2:
        return None
    name1 = str(rng.choice(sorted(chars1)))
    name2 = str(rng.choice(sorted(chars2)))
    sides = []
    for M_i, chi in ((M1, chars1[name1]), (M2, chars2[name2])):
        ctx = SymplecticContext.of(g, M_i)
        if rng.random() < 0.5 and gsp_order_n(g, M_i) <= max_order:
            G_i = full_group(g, M_i)
        else:
            gens = np.stack([sampler.element(M_i) for _ in range(int(rng.integers(1, 3)))])
            G_i = close(ctx, gens, budget=budget, check=False)
        if len(np.unique(chi(G_i.elements))) < 2:
            return None
        sides.append(G_i)
    if sides[0].order * sides[1].order // 2 > max_order:
        return None
    spec = FiberSpec.from_characters(sides[0], sides[1], chars1[name1], chars2[name2], 2)
    F = fiber_product(spec, budget=budget)
    recipe = {
        "kind": "entangled",
        "left_level": M1,
        "right_level": M2,
        "characters": [name1, name2],
        "left_generators": _literal(sides[0].generators),
        "right_generators": _literal(sides[1].generators),
    }
    return OpenSubgroup(g, M1 * M2, F, recipe)


def generate_corpus(params: CorpusParams, budget: int = DEFAULT_BUDGET) -> list[OpenSubgroup]:
    """Deterministic mix of preimage, entangled and kernel-thickened open subgroups."""
    rng = np.random.default_rng(params.seed)
    sampler = _Sampler(params.g, rng)
    kinds = sorted(params.mix)
    weights = np.array([params.mix[k] for k in kinds], dtype=float)
    weights /= weights.sum()
    splits = _coprime_splits(params.levels)
    out: list[OpenSubgroup] = []
    attempts = 0
    while len(out) < params.size:
        attempts += 1
        if attempts > 200 * max(params.size, 1):
            raise RuntimeError("corpus generation could not satisfy the size limits")
        kind = kinds[int(rng.choice(len(kinds), p=weights))]
        if kind == "entangled":
            if not splits:
                continue
            split = splits[int(rng.integers(len(splits)))]
            inst = _entangled_instance(params.g, split, rng, sampler, params.max_order, budget)
        else:
            M = int(rng.choice(params.levels))
            make = _preimage_instance if kind == "preimage" else _thickened_instance
            inst = make(params.g, M, rng, sampler, params.max_order, budget)
        if inst is not None:
            out.append(inst)
    return out


def corpus_to_json(params: CorpusParams, corpus: list[OpenSubgroup]) -> str:
    return json.dumps({"params": params.to_dict(), "instances": [G.to_json() for G in corpus]}, sort_keys=True)


def corpus_from_json(text: str, budget: int = DEFAULT_BUDGET) -> tuple[CorpusParams, list[OpenSubgroup]]:
    data = json.loads(text)
    p = data.get("params", {})
    params = CorpusParams(
        seed=p.get("seed", 1), g=p.get("g", 1), levels=tuple(p.get("levels", ())),
        mix=p.get("mix", dict(DEFAULT_MIX)), size=p.get("size", 0), max_order=p.get("max_order", 4000),
    )
    return params, [OpenSubgroup.from_json(d, budget=budget) for d in data["instances"]]


# -------------------- conductor suite --------------------


def check_instance(G: OpenSubgroup, budget: int = DEFAULT_BUDGET, raise_factors=(2, 3)) -> dict:
    """All conductor identities for one open subgroup; returns a dict of named booleans plus data."""
    rep = compute_conductor(G)
    m_G = rep.conductor
    full = G.h.order == G.ambient_order
    checks = {
        "eq_defs": rep.equivalence_holds,
        "exponent_product": rep.exponent_product == m_G,
        "trivial_iff_full": (m_G == 1) == full,
    }
    for f in raise_factors:
        raised = level_raise(G, f * G.level.n, budget=budget)
        checks[f"raise_{f}"] = conductor(raised) == m_G and raised.adelic_index == G.adelic_index
    p1 = check_index_divisibility(G, m_G)
    checks["index_divisibility"] = p1.divides
    checks["step_divisibility"] = all(s.divides for s in p1.steps)
    checks["index_factorization"] = p1.factorization_holds
    checks["bound_shape"] = m_G <= 2 * rad_prime(m_G) * G.adelic_index
    recipe = G.recipe or {}
    if recipe.get("kind") == "preimage":
        checks["preimage_stable"] = is_stable(G, recipe["base_level"])
    if recipe.get("kind") == "entangled":
        M1, M2 = recipe["left_level"], recipe["right_level"]
        c1 = conductor(OpenSubgroup(G.g, M1, project(G.h, M1)))
        c2 = conductor(OpenSubgroup(G.g, M2, project(G.h, M2)))
        checks["entangled_exceeds"] = m_G > c1 and m_G > c2
    return {
        "conductor": m_G,
        "level": G.level.n,
        "adelic_index": G.adelic_index,
        "squarefree_conductor": all(e == 1 for _, e in factorize(m_G)) if m_G > 1 else True,
        "ratio": p1.ratio,
        "stacked_index": p1.index,
        "steps": len(p1.steps),
        "checks": checks,
    }


def verify_conductor_suite(
    corpus: list[OpenSubgroup], budget: int = DEFAULT_BUDGET, name: str = "conductor_suite", params: Optional[dict] = None
) -> VerificationReport:
    def body(r: VerificationReport):
        rows = []
        for i, G in enumerate(corpus):
            row = check_instance(G, budget)
            rows.append(row)
            failed = [k for k, ok in row["checks"].items() if not ok]
            if failed:
                r.result = FAIL
                r.witnesses.append({"instance": i, "failed": failed, "subgroup": G.to_json()})
        r.details.update(
            instances=len(corpus),
            non_squarefree_conductors=sum(not row["squarefree_conductor"] for row in rows),
            conductors=[row["conductor"] for row in rows],
            kinds={k: sum((G.recipe or {}).get("kind") == k for G in corpus) for k in DEFAULT_MIX},
            step_checks=sum(row["steps"] for row in rows),
        )

    return _timed(name, params or {"instances": len(corpus)}, body)


def default_corpus(seed: int = 1, size: int = 100, g: int = 1) -> tuple[CorpusParams, list[OpenSubgroup]]:
    params = CorpusParams(seed=seed, g=g, size=size)
    return params, generate_corpus(params)


# -------------------- orchestration --------------------

SUITES = ("orders", "normal", "commutator", "index-bound", "normal-core", "lifting", "conductor-suite")


def run_suite(name: str, seed: int = 1, budget: int = DEFAULT_BUDGET, **kw) -> list[VerificationReport]:
    if name == "orders":
        return [verify_order_formula(g, ell) for g, ell in ORDER_SCAN_PARAMS]
    if name == "normal":
        return [verify_normal_classification(g, ell, budget) for g, ell in kw.get("params", ((2, 3), (1, 3), (1, 5)))]
    if name == "commutator":
        return [verify_commutator_center_simplicity(g, ell, budget) for g, ell in kw.get("params", ((2, 3), (1, 5), (1, 7)))]
    if name == "index-bound":
        samples = kw.get("samples", 1000)
        return [verify_index_bound(g, ell, samples, seed, budget) for g, ell in kw.get("params", ((2, 3), (1, 5)))]
    if name == "normal-core":
        samples = kw.get("samples", 200)
        return [verify_normal_core(g, ell, samples, seed, budget) for g, ell in kw.get("params", ((1, 3), (2, 2)))]
    if name == "lifting":
        samples = kw.get("samples", 100)
        return [verify_lifting(g, ell, m, samples, seed, budget=budget) for g, ell, m in LIFTING_CONFIGS]
    if name == "conductor-suite":
        params, corpus = default_corpus(seed, kw.get("size", 100), kw.get("g", 1))
        return [verify_conductor_suite(corpus, budget, params=params.to_dict())]
    if name == "all":
        out = []
        for s in SUITES:
            out.extend(run_suite(s, seed, budget, **kw))
        return out
    raise ValueError(f"unknown suite {name!r}; expected one of {SUITES + ('all',)}")
