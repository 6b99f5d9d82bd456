"""The acceptance battery. Each check returns a dict with ``ok``, its time
budget and measured time (whole milliseconds), and the numbers behind the
verdict."""

from __future__ import annotations

import itertools
import random
import time
from typing import Callable

from . import freeprod, groupring, perm, presentation, smallgroups, thompson, tower
from .presentation import (
    BS_GROUP, BS_PRESENTATION, BS_T, BS_X, BSElement, Dyadic, Presentation, bs_multiply, bs_project,
)

SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29)


def _timed(budget_s: float):
    def wrap(fn: Callable[..., dict]):
        def run(seed: int = 0) -> dict:
            start = time.perf_counter()
            out = fn(random.Random(seed))
            ms = int((time.perf_counter() - start) * 1000)
            out["ms"] = ms
            out["budget_ms"] = int(budget_s * 1000)
            out["ok"] = bool(out["ok"]) and ms <= budget_s * 1000
            return out

        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run

    return wrap


@_timed(60)
def normal_form_oracle(rng: random.Random, words: int = 1000) -> dict:
    """Words in G_(w,n) and their normal forms evaluate to the same element."""
    seqs = [s for n in (1, 2, 3) for s in itertools.combinations((2, 3, 5), n)]
    data = {s: tower.tower_semidirect_data(s) for s in seqs}
    mismatches = not_normal = 0
    for _ in range(words):
        s = rng.choice(seqs)
        w = tower.random_tower_word(rng, s, 30)
        nf = presentation.normal_form(w, data[s])
        not_normal += not presentation.is_normal(nf, data[s])
        not_normal += presentation.normal_form(nf, data[s]) != nf
        mismatches += tower.evaluate_word(w, s) != tower.evaluate_word(nf, s)
    return {"words": words, "mismatches": mismatches, "bad_normal_forms": not_normal,
            "ok": mismatches == 0 and not_normal == 0}


@_timed(10)
def torsion_orders(rng: random.Random) -> dict:
    """``element_of_order(p)`` has order p; the (2,3) tuple automorphism has order 6."""
    primes = thompson.first_primes(8)
    orders = {p: thompson.order(thompson.element_of_order(p), cap=64) for p in primes}
    witnesses = tower.default_witnesses((2, 3)) + [freeprod.random_tuple(rng, 2) for _ in range(100)]
    report = tower.action_order_report((2, 3), witnesses)
    ok = all(orders[p] == p for p in primes) and report["ok"] and report["order"] == 6
    return {"orders": {str(p): k for p, k in orders.items()}, "tuple_order": report["order"],
            "necessary": {str(p): v for p, v in report["necessary"].items()}, "ok": ok}


def prime_sequences(max_len: int = 4, primes=SMALL_PRIMES) -> list[tuple[int, ...]]:
    return [c for n in range(max_len + 1) for c in itertools.combinations(primes, n)]


@_timed(300)
def decision_oracle_agreement(rng: random.Random, samples: int = 20) -> dict:
    """Distinct prefixes: pro_distinct and exhausted ladder search. Equal
    prefixes: iso_decide and a verified map both ways."""
    seqs = prime_sequences()
    disagreements = 0
    pairs = 0
    for a in seqs:
        for b in seqs:
            if a == b:
                continue
            pairs += 1
            res = tower.pro_distinct(a, b, cross_check=False)
            ladder = tower.ladder_search(a, b)
            disagreements += not (res["distinct"] and not ladder["found"])
    equal_fail = 0
    for a in seqs:
        f = tower.build_epi(a, a, rng, samples=samples)
        g = tower.build_epi(a, a, rng, samples=samples)
        ladder = tower.ladder_search(a, a)
        equal_fail += not (tower.iso_decide(a, a) and f.verification["ok"] and g.verification["ok"]
                           and ladder["found"])
    return {"sequences": len(seqs), "distinct_pairs": pairs, "disagreements": disagreements,
            "equal_failures": equal_fail, "ok": disagreements == 0 and equal_fail == 0}


@_timed(120)
def epi_soundness(rng: random.Random, instances: int = 50, samples: int = 500, sections: int = 1000) -> dict:
    """Crush epimorphisms are homomorphisms; bonding undoes the section."""
    failures = 0
    for _ in range(instances):
        n = rng.randint(1, 4)
        a = tuple(sorted(rng.sample(SMALL_PRIMES, n)))
        b = tuple(p for p in a if rng.random() < 0.5)
        f = tower.build_epi(a, b, rng, samples=samples)
        failures += not f.verification["ok"]
    bad_sections = 0
    for _ in range(sections):
        n = rng.randint(0, 3)
        x = tower.random_tower_element(rng, n)
        bad_sections += tower.bonding_map(tower.section(x)) != x
    return {"instances": instances, "samples_each": samples, "failures": failures,
            "section_failures": bad_sections, "ok": failures == 0 and bad_sections == 0}


_GROUPS = None


def _split_groups():
    global _GROUPS
    if _GROUPS is None:
        _GROUPS = [groupring.cyclic_group(2), groupring.cyclic_group(3), groupring.symmetric3()]
    return _GROUPS


@_timed(120)
def kernel_splitting(rng: random.Random, instances: int = 100, lifts: int = 50) -> dict:
    """The explicit kernel isomorphism and the free equivariant kernel lift."""
    groups = _split_groups()
    split_fail = 0
    for i in range(instances):
        inst = groupring.random_split_instance(groups[i % 3], rng)
        split_fail += not groupring.kernel_split(inst.theta, inst.split)["ok"]
    lift_fail = 0
    for i in range(lifts):
        r, c = rng.randint(1, 3), rng.randint(1, 4)
        d = [[rng.randint(-2, 2) for _ in range(c)] for _ in range(r)]
        lift_fail += not groupring.equivariant_kernel_lift(d, groups[i % 3])["free"]
    return {"split_instances": instances, "split_failures": split_fail, "lift_instances": lifts,
            "lift_failures": lift_fail, "ok": split_fail == 0 and lift_fail == 0}


@_timed(60)
def chain_cochain(rng: random.Random, instances: int = 100) -> dict:
    """Complexes built from kernel splittings are acyclic with exact duals."""
    groups = _split_groups()
    failures = 0
    for i in range(instances):
        inst = groupring.random_split_instance(groups[i % 3], rng)
        split = groupring.kernel_split(inst.theta, inst.split)
        d1, d2 = groupring.split_complex(inst, split["alpha"])
        chain = groupring.chain_check([d1, d2])
        dual = groupring.cocompact_dual_check(d1, d2)
        failures += not (chain["acyclic"] and dual["ok"])
    return {"instances": instances, "failures": failures, "ok": failures == 0}


@_timed(120)
def finite_group_lemmas(rng: random.Random, composition_samples: int = 3) -> dict:
    """Derived series, hypo-Abelian test and the extension lemmas on every
    normal subgroup of every fixture group."""
    groups = smallgroups.fixture_groups()
    bad = []
    instances = 0
    compositions = 0
    for name, g in groups:
        series = perm.derived_series(g)
        orders = [h.order for h in series]
        if any(x <= y for x, y in zip(orders, orders[1:])):
            bad.append(f"{name}: derived series not strictly decreasing")
        normals = perm.normal_subgroups(g)
        # independent reading: no nontrivial perfect normal subgroup
        no_perfect_normal = not any(perm.is_perfect(n) and not n.is_trivial() for n in normals)
        if perm.is_hypo_abelian(g) != no_perfect_normal or perm.is_hypo_abelian(g) != series[-1].is_trivial():
            bad.append(f"{name}: hypo-Abelian test disagrees")
        for n in normals:
            instances += 1
            rep = perm.check_extension_lemmas(g, n)
            if not rep.ok:
                bad.append(f"{name}: {rep.failures}")
        chains = [(x, y) for x in normals for y in normals if x.elements <= y.elements]
        if g.order <= 60:
            for x, y in rng.sample(chains, min(composition_samples, len(chains))):
                compositions += 1
                if not perm.check_composition_lemma(g, x, y)["ok"]:
                    bad.append(f"{name}: composition lemma")
    return {"groups": len(groups), "normal_subgroup_instances": instances,
            "composition_checks": compositions, "failures": bad, "ok": not bad}


@_timed(5)
def baumslag_solitar(rng: random.Random, samples: int = 300) -> dict:
    """BS(1,2) relator, the projection onto Z and the tower epimorphisms r_j."""
    relator = presentation.verify_hom(BS_PRESENTATION, BS_GROUP, {"t": BS_T, "x": BS_X})["ok"]
    hom = onto = kernel = True
    for _ in range(samples):
        a = _random_bs(rng)
        b = _random_bs(rng)
        hom &= bs_project(bs_multiply(a, b)) == bs_project(a) + bs_project(b)
        n = rng.randint(-20, 20)
        onto &= bs_project(presentation.evaluate([("t", 1 if n > 0 else -1)] * abs(n), BS_GROUP, {"t": BS_T})) == n
        # the kernel is {k = 0}: there the product is addition, and every
        # dyadic m 2^e is reached as t^-e x^m t^e
        d = Dyadic(rng.randint(-50, 50), rng.randint(-6, 6))
        word = [("t", -1)] * max(d.e, 0) + [("t", 1)] * max(-d.e, 0) + [("x", 1 if d.m > 0 else -1)] * abs(d.m) \
            + [("t", 1)] * max(d.e, 0) + [("t", -1)] * max(-d.e, 0)
        k_elt = presentation.evaluate(word, BS_GROUP, {"t": BS_T, "x": BS_X})
        kernel &= k_elt == BSElement(0, d) and bs_project(k_elt) == 0
        kernel &= (bs_project(a) == 0) == (a.k == 0)
    epis = True
    for pres0, t0 in ((Presentation(("t0",)), "t0"),
                      (Presentation(("t0", "y"), (presentation.parse_word("t0^-1 y^-1 t0 y"),)), "t0")):
        for j in range(1, 6):
            epis &= presentation.check_tower_epi(pres0, t0, j)["ok"]
    ok = relator and hom and onto and kernel and epis
    return {"relator": relator, "projection_homomorphism": hom, "projection_onto": onto,
            "kernel_is_dyadic": kernel, "tower_epis": epis, "ok": ok}


def _random_bs(rng):
    return BSElement(rng.randint(-5, 5), Dyadic(rng.randint(-40, 40), rng.randint(-5, 5)))


@_timed(60)
def group_axioms(rng: random.Random, samples: int = 1000) -> dict:
    """Associativity and inverses in V and in S, reduction confluence, and
    the partial conjugation laws."""
    counts = dict.fromkeys(
        ["v_assoc", "v_inverse", "v_reduce", "s_assoc", "s_inverse", "phi_hom", "phi_inverse", "phi_fixes_p1"], 0)
    us = [thompson.element_of_order(p) for p in (2, 3, 5)] + [thompson.A, thompson.B]
    for _ in range(samples):
        a, b, c = (thompson.random_tree_pair(rng) for _ in range(3))
        counts["v_assoc"] += (a * b) * c != a * (b * c)
        counts["v_inverse"] += not (a * ~a).is_identity() or not (~a * a).is_identity()
        e = thompson.random_unreduced(rng)
        r1 = e.reduce(random.Random(rng.random()))
        r2 = e.reduce(random.Random(rng.random()))
        counts["v_reduce"] += (r1.domain, r1.range, r1.perm) != (r2.domain, r2.range, r2.perm) \
            or r1.reduce().key() != r1.key() or r1.cancellable() != []
        x, y, z = (freeprod.random_fp_element(rng) for _ in range(3))
        counts["s_assoc"] += (x * y) * z != x * (y * z)
        counts["s_inverse"] += not (x * ~x).is_identity()
        u = rng.choice(us)
        counts["phi_hom"] += freeprod.partial_conjugation(u, x * y) != \
            freeprod.partial_conjugation(u, x) * freeprod.partial_conjugation(u, y)
        counts["phi_inverse"] += freeprod.partial_conjugation(~u, freeprod.partial_conjugation(u, x)) != x
        p1 = freeprod.FPElement.letter(1, thompson.random_tree_pair(rng))
        counts["phi_fixes_p1"] += freeprod.partial_conjugation(u, p1) != p1
    return {"samples": samples, "failures": counts, "ok": not any(counts.values())}


CRITERIA = [
    ("normal-form oracle equivalence", normal_form_oracle),
    ("torsion orders", torsion_orders),
    ("decision procedures agree with ladder oracle", decision_oracle_agreement),
    ("epimorphism construction soundness", epi_soundness),
    ("kernel splitting and free kernel lift", kernel_splitting),
    ("chain and cochain checks", chain_cochain),
    ("finite group lemmas", finite_group_lemmas),
    ("BS(1,2) model and tower epimorphisms", baumslag_solitar),
    ("V and free product group axioms", group_axioms),
]


def run_all(seed: int = 0) -> dict:
    results = []
    for i, (name, fn) in enumerate(CRITERIA, 1):
        out = fn(seed)
        out["criterion"] = i
        out["name"] = name
        results.append(out)
    return {"criteria": results, "ok": all(r["ok"] for r in results)}
