"""The acceptance suites: one function per criterion, each returning a CriterionResult."""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from itertools import product
from math import lcm
from typing import Callable, Sequence

from .cohom import (
    alpha_n,
    commutator_product,
    full_decomposition,
    linkage_via_cohomology,
    linkage_via_extension,
    reduced_criterion_hypothesis,
    squeeze,
    symmetric_cocycle_basis,
)
from .cohom.h2 import h2_group
from .errors import ConsistencyError, FibrumError
from .fib import FiberedElement, FiberPair, covering_filter, decompose_standard, mackey_pairs, standard_basis
from .grp import CocycleTable, FinAb, GroupTable, SubgroupRef, build_group, center, section_with_cocycle, small_catalog
from .idem import (
    CentralPair,
    covering_algebra_report,
    covering_basis,
    delete_f_holds,
    e_element,
    ef_relation_failures,
    linked_bruteforce,
    mgg_pairs,
    ses_report,
)
from .lin import burnside_kernel_check
from .oracle import oracle_product
from .simp import (
    gamma_irreducibles,
    quadruple,
    quadruple_linkage,
    reduced_pairs_bruteforce,
    simple_evaluation,
)


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    details: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        return f"criterion {self.number:2d} [{'PASS' if self.passed else 'FAIL'}] {self.name}"

    def to_json(self) -> dict:
        return {
            "criterion": self.number,
            "name": self.name,
            "passed": self.passed,
            "details": self.details,
        }


def _groups(names: Sequence[str]) -> list[GroupTable]:
    return [build_group(n) for n in names]


def _central_pair_on(G: GroupTable, N: int, K: Sequence[int], faithful: bool = True) -> CentralPair:
    ks = tuple(sorted(K))
    for cp in mgg_pairs(G, N):
        if cp.k == ks and (cp.is_faithful or not faithful):
            return cp
    raise ConsistencyError(f"no central pair on {ks} in {G.name} at N={N}")


def _center_pair(G: GroupTable, N: int) -> CentralPair:
    return _central_pair_on(G, N, center(G).elems)


# -- 1 -------------------------------------------------------------------------------


def mackey_oracle(names: Sequence[str] = ("C1", "C2", "C3", "C4", "C2xC2", "S3"), moduli: Sequence[int] = (2, 3, 4, 6)) -> CriterionResult:
    gs = _groups(names)
    count, bad = 0, []
    for N in moduli:
        bases = {(G, H): standard_basis(G, H, N) for G in gs for H in gs}
        for G, H, K in product(gs, gs, gs):
            for p in bases[(G, H)]:
                for q in bases[(H, K)]:
                    fast = FiberedElement.from_terms(G, K, N, [(r, 1) for r in mackey_pairs(p, q)])
                    count += 1
                    if fast != oracle_product(p, q):
                        bad.append(f"{G.name},{H.name},{K.name},N={N},{p.key},{q.key}")
    return CriterionResult(1, "Mackey formula equals the explicit tensor product", not bad, {"products": count, "mismatches": bad[:20]})


# -- 2 -------------------------------------------------------------------------------


def idempotent_suite(names: Sequence[str] = ("C4", "C2xC2", "S3", "D8", "Q8"), moduli: Sequence[int] = (2, 4), samples: int = 50, seed: int = 0) -> CriterionResult:
    rng = random.Random(seed)
    rows, ok = [], True
    for G in _groups(names):
        for N in moduli:
            fails = ef_relation_failures(G, N)
            cov = list(covering_basis(G, N))
            picked = cov if len(cov) <= samples else rng.sample(cov, samples)
            del_bad = [p.key for p in picked if not delete_f_holds(p)]
            ok &= not fails and not del_bad
            rows.append({"group": G.name, "N": N, "relation_failures": fails[:10], "delete_f_checked": len(picked), "delete_f_failures": del_bad[:5]})
    return CriterionResult(2, "e/f relations, sum of f is 1, delete-f identity", ok, {"cases": rows})


# -- 3 -------------------------------------------------------------------------------


def covering_structure(names: Sequence[str] = ("C4", "C2xC2", "S3", "D8", "Q8"), moduli: Sequence[int] = (2, 4), block_groups: Sequence[str] = ("D8", "Q8"), block_n: int = 4) -> CriterionResult:
    rows, ok = [], True
    for G in _groups(names):
        for N in moduli:
            full = G.name in block_groups and N == block_n
            r = covering_algebra_report(G, N, full=full)
            formula = sum(b.dim_expected for b in r.blocks)
            ok &= r.dimension_identity and (r.block_checks is not False)
            if full:
                ok &= r.block_checks is True
            rows.append({"group": G.name, "N": N, "dim_Ec": r.basis_size, "formula": formula, "blocks_checked": r.block_checks})
    return CriterionResult(3, "dim E^c = sum |class|^2 |Gamma|; f E^c f = k Gamma", ok, {"cases": rows})


# -- 4 -------------------------------------------------------------------------------


def gamma_ses(names: Sequence[str] = ("C4", "C2xC2", "S3", "D8", "Q8"), moduli: Sequence[int] = (2, 4)) -> CriterionResult:
    """The literal order identity |Gamma| = |(G/K)^*| |im pi| with ker pi = im iota."""
    rows, ok = [], True
    literal_fail, corrected_ok = [], True
    for G in _groups(names):
        for N in moduli:
            for cp in mgg_pairs(G, N):
                if not cp.is_faithful:
                    continue
                r = ses_report(cp)
                good = r.exact and r.order_identity
                ok &= good
                corrected_ok &= r.exact and r.corrected_identity
                row = {
                    "group": G.name, "N": N, "k": list(cp.k), "kappa": list(cp.kappa),
                    "gamma": r.gamma_order, "dual": r.dual_order, "image_pi": r.image_order,
                    "twist": len(r.twist), "exact": r.exact, "order_identity": r.order_identity,
                    "corrected_identity": r.corrected_identity, "split": r.split,
                }
                rows.append(row)
                if not good:
                    literal_fail.append(row)
    Q8 = build_group("Q8")
    q = ses_report(_center_pair(Q8, 4))
    q8_ok = q.dual_order == 4 and q.exact and q.order_identity
    ok &= q8_ok
    details = {
        "pairs": len(rows),
        "literal_failures": literal_fail,
        "corrected_identity_all": corrected_ok,
        "q8_center_n4": {"gamma": q.gamma_order, "dual": q.dual_order, "image_pi": q.image_order, "twist": len(q.twist)},
    }
    return CriterionResult(4, "Gamma exact sequence orders", ok, details)


# -- 5 -------------------------------------------------------------------------------


def c4_example() -> CriterionResult:
    C4 = build_group("C4")
    C2 = [x for x in range(C4.order) if C4.element_orders[x] in (1, 2)]
    a = _central_pair_on(C4, 2, C2)
    b = _central_pair_on(C4, 4, C2)
    ra = reduced_pairs_bruteforce(C4, 2).flag(a)
    rb = reduced_pairs_bruteforce(C4, 4).flag(b)
    hyp = reduced_criterion_hypothesis(b)
    complete = reduced_pairs_bruteforce(C4, 2).catalog_complete and reduced_pairs_bruteforce(C4, 4).catalog_complete
    ok = ra.reduced and not rb.reduced and rb.witness is not None and hyp is False and complete
    return CriterionResult(
        5,
        "C4: (C2, kappa) reduced at N=2, not at N=4",
        ok,
        {"n2": ra.to_json(), "n4": rb.to_json(), "hypothesis_n4": hyp, "catalog_complete": complete},
    )


# -- 6 -------------------------------------------------------------------------------


def linkage_witness(a: CentralPair, b: CentralPair) -> FiberPair | None:
    """A covering pair over (G, H) with l0 = (K, kappa) and r0 = (L, lambda)."""
    for p in standard_basis(a.g, b.g, a.N, covering_filter(a.g, b.g)):
        if p.l0 == (a.k, a.kappa) and p.r0 == (b.k, b.kappa):
            return p
    return None


def q8_d8_linkage() -> CriterionResult:
    Q8, D8 = build_group("Q8"), build_group("D8")
    out, ok = {}, True
    for N, expect in ((4, True), (2, False)):
        a, b = _center_pair(Q8, N), _center_pair(D8, N)
        brute = linked_bruteforce(a, b)
        coh = linkage_via_cohomology(a, b)
        ext = linkage_via_extension(a, b)
        w = linkage_witness(a, b)
        ok &= brute == expect and coh.linked == expect and ext == expect and (w is not None) == expect
        out[f"N={N}"] = {
            "bruteforce": brute,
            "cohomology": coh.linked,
            "extension": ext,
            "witness": None if w is None else {"u": [list(x) for x in w.pairs], "phi": list(w.phi)},
        }
    return CriterionResult(6, "(Q8,Z) ~ (D8,Z) at N=4 only", ok, out)


# -- 7 -------------------------------------------------------------------------------


def squeeze_suite(max_order: int = 8) -> CriterionResult:
    rows, ok = [], True
    for G in small_catalog(max_order):
        Z = set(center(G).elems)
        for N in (G.order, 2 * G.order):
            for cp in mgg_pairs(G, N):
                if not (cp.is_faithful and set(cp.k) <= Z and any(G.element_orders[x] == len(cp.k) for x in cp.k)):
                    continue
                try:
                    r = squeeze(cp)
                    ins, dl = FiberedElement.basis(r.ins), FiberedElement.basis(r.delete)
                    e_ok = ins * dl == e_element(cp)
                    et_ok = dl * ins == e_element(r.cp_tilde)
                    err = None
                except ConsistencyError as exc:
                    e_ok = et_ok = False
                    err = str(exc)
                ok &= e_ok and et_ok
                rows.append({"group": G.name, "N": N, "k": list(cp.k), "ins_del": e_ok, "del_ins": et_ok, "error": err})
    return CriterionResult(7, "squeezing postconditions; Ins Del = e, Del Ins = e~", ok, {"pairs": len(rows), "failures": [r for r in rows if not (r["ins_del"] and r["del_ins"])]})


# -- 8 -------------------------------------------------------------------------------


def decomposition_suite(count: int = 100, max_order: int = 8, seed: int = 0) -> CriterionResult:
    rng = random.Random(seed)
    cat = list(small_catalog(max_order))
    done, bad = 0, []
    while done < count:
        G, H = rng.choice(cat), rng.choice(cat)
        N = lcm(G.order, H.order) * rng.choice((1, 2))
        if G.order * H.order > 64 or N > 16:
            continue
        p = rng.choice(standard_basis(G, H, N))
        done += 1
        try:
            d5 = decompose_standard(p)
            if d5.product() != FiberedElement.basis(p):
                bad.append({"g": G.name, "h": H.name, "N": N, "pair": list(p.u), "form": 5})
                continue
            full_decomposition(p)
        except ConsistencyError as exc:
            bad.append({"g": G.name, "h": H.name, "N": N, "pair": list(p.u), "form": 7, "error": str(exc)})
    return CriterionResult(8, "5- and 7-factor decompositions reassemble", not bad, {"pairs": done, "seed": seed, "failures": bad})


# -- 9 -------------------------------------------------------------------------------


def _alpha_a(G: GroupTable, K: Sequence[int], n_max: int, tuples: int, rng: random.Random) -> list[str]:
    sc = section_with_cocycle(G, SubgroupRef(G, tuple(sorted(K))))
    Q, sigma, alpha = sc.quotient, sc.section, sc.alpha
    bad = []
    for n in range(1, n_max + 1):
        for _ in range(tuples):
            s = [rng.randrange(Q.order) for _ in range(2 * n)]
            lhs = commutator_product(G, [sigma[x] for x in s])
            rhs = G.mul[sc.structure.from_vec[alpha_n(alpha, n, s)]][sigma[commutator_product(Q, s)]]
            if lhs != rhs:
                bad.append(f"{G.name} n={n} {s}")
    return bad


def _all_tuples(Q: GroupTable, n: int):
    return product(range(Q.order), repeat=2 * n)


def _alpha_b(Q: GroupTable, b: FinAb, n_max: int) -> list[str]:
    gens = [c for c, _ in h2_group(Q, b).z2_basis()] + [CocycleTable.from_function(Q, b, lambda x, y: (1,))]
    bad = []
    for a, c in product(gens, gens):
        s_ = a + c
        for n in range(1, n_max + 1):
            for t in _all_tuples(Q, n):
                if alpha_n(s_, n, t) != b.add(alpha_n(a, n, t), alpha_n(c, n, t)):
                    bad.append(f"(b) {Q.name} n={n} {t}")
                    break
    return bad


def _alpha_e(Q: GroupTable, b: FinAb, n_max: int) -> list[str]:
    gens = symmetric_cocycle_basis(Q, b) + [CocycleTable.from_function(Q, b, lambda x, y: (1,))]
    combos = [CocycleTable.zero(Q, b)]
    for g in gens:
        combos = combos + [c + g for c in combos]
    bad = []
    for a in combos:
        want = b.neg(a(0, 0))
        for n in range(1, n_max + 1):
            if any(alpha_n(a, n, t) != want for t in _all_tuples(Q, n)):
                bad.append(f"(e) {Q.name} n={n}")
    return bad


def _alpha_f(Q: GroupTable, b: FinAb, n_max: int) -> list[str]:
    bad = []
    for mu in product(b.elements(), repeat=Q.order):
        a = CocycleTable.coboundary(Q, b, mu)
        for n in range(1, n_max + 1):
            for t in _all_tuples(Q, n):
                if alpha_n(a, n, t) != b.neg(mu[commutator_product(Q, t)]):
                    bad.append(f"(f) {Q.name} n={n} mu={mu} {t}")
                    break
    return bad


def alpha_suite(tuples: int = 200, seed: int = 0) -> CriterionResult:
    rng = random.Random(seed)
    C4, Q8, D8 = build_group("C4"), build_group("Q8"), build_group("D8")
    a_bad = _alpha_a(C4, C4.closure([2]), 3, tuples, rng)
    for G in (Q8, D8):
        a_bad += _alpha_a(G, center(G).elems, 3, tuples, rng)
    Z2 = FinAb.cyclic(2)
    small = [(build_group("C2"), 3), (build_group("C3"), 2), (build_group("C2xC2"), 2), (build_group("S3"), 2)]
    b_bad, e_bad, f_bad = [], [], []
    for Q, n in small:
        b_bad += _alpha_b(Q, Z2, n)
        f_bad += _alpha_f(Q, Z2, n)
        if Q.is_abelian:
            e_bad += _alpha_e(Q, Z2, n)
    ok = not (a_bad or b_bad or e_bad or f_bad)
    return CriterionResult(
        9,
        "alpha_n: commutator identity and properties (b), (e), (f)",
        ok,
        {"a": a_bad[:10], "b": b_bad[:10], "e": e_bad[:10], "f": f_bad[:10], "tuples_per_n": tuples, "seed": seed},
    )


# -- 10 ------------------------------------------------------------------------------


def trivial_simple_functor(names: Sequence[str] = ("C2", "C3", "C4", "S3")) -> CriterionResult:
    rows, ok = [], True
    for G in _groups(names):
        N = G.order
        C1 = build_group("C1")
        q = quadruple(CentralPair(C1, (0,), (0,), N))
        d = simple_evaluation(q, G)
        ok &= d == len(G.conjugacy_classes)
        rows.append({"group": G.name, "N": N, "p": q.module.p, "dim": d, "classes": len(G.conjugacy_classes)})
    # below the minimal group: the Q8 quadruple at N=4 vanishes on every smaller group
    Q8 = build_group("Q8")
    q = quadruple(_center_pair(Q8, 4))
    below = {H.name: simple_evaluation(q, H) for H in small_catalog(7)}
    ok &= all(v == 0 for v in below.values())
    return CriterionResult(10, "S_(1,1,1,F_p)(G) has dimension #classes; zero below the minimal group", ok, {"trivial": rows, "q8_below": below})


# -- 11 ------------------------------------------------------------------------------


def quadruple_consistency(max_order: int = 8) -> CriterionResult:
    Q8, D8 = build_group("Q8"), build_group("D8")
    a, b = _center_pair(Q8, 4), _center_pair(D8, 4)
    qa0 = quadruple(a)
    p = qa0.module.p
    mods_a, _ = gamma_irreducibles(qa0.module.gamma, p)
    mods_b, _ = gamma_irreducibles(quadruple(b, p=p).module.gamma, p)
    cases, ok = [], True
    for ma in mods_a:
        qa = quadruple(a, ma, p)
        qb = next((quadruple(b, mb, p) for mb in mods_b if quadruple_linkage(qa, quadruple(b, mb, p))), None)
        if qb is None:
            ok = False
            cases.append({"module": ma.label, "linked_partner": None})
            continue
        dims = {H.name: (simple_evaluation(qa, H), simple_evaluation(qb, H)) for H in small_catalog(max_order)}
        agree = all(x == y for x, y in dims.values())
        ok &= agree
        cases.append({"module": ma.label, "partner": qb.module.label, "dims": {k: list(v) for k, v in dims.items()}, "agree": agree})
    return CriterionResult(11, "linked Q8/D8 quadruples have equal evaluations", ok, {"p": p, "cases": cases})


# -- 12 ------------------------------------------------------------------------------


def burnside_kernel() -> CriterionResult:
    checks = [burnside_kernel_check(p) for p in (2, 3)]
    return CriterionResult(12, "Burnside kernel element in B(C_p x C_p)", all(c.passes for c in checks), {f"p={c.p}": c.to_json() for c in checks})


CRITERIA: dict[int, tuple[str, Callable[[], CriterionResult]]] = {
    1: ("mackey", mackey_oracle),
    2: ("idempotents", idempotent_suite),
    3: ("covering", covering_structure),
    4: ("ses", gamma_ses),
    5: ("c4", c4_example),
    6: ("q8d8", q8_d8_linkage),
    7: ("squeeze", squeeze_suite),
    8: ("decomposition", decomposition_suite),
    9: ("alpha", alpha_suite),
    10: ("simple", trivial_simple_functor),
    11: ("quadruples", quadruple_consistency),
    12: ("burnside", burnside_kernel),
}


def run_criterion(number: int, **kwargs) -> CriterionResult:
    fn = CRITERIA[number][1]
    t = time.time()
    try:
        r = fn(**kwargs)
    except FibrumError as exc:
        r = CriterionResult(number, CRITERIA[number][0], False, {"error": exc.to_json()})
    r.seconds = time.time() - t
    return r
