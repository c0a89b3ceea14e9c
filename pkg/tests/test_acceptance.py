"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest -s tests/test_acceptance.py` to see the lines live.
Every check is exact (no tolerances) and runs at its stated bounds.
"""

import math
import random
import time
from itertools import combinations

import pytest

from _patgen import iso_patterns, patterns_two_labels
from ultradiv.arith import (
    NatSet,
    coprime_power,
    coprime_product,
    divisors,
    first_primes,
    level_of,
    primes_upto,
    quotient_set,
    up_closure,
)
from ultradiv.coloring import (
    check_thick_lemmas,
    coloring_from_set,
    find_monochromatic,
    verify_progr,
    verify_refinement,
)
from ultradiv.constructions import ec_enumerate, verify_g_disjoint
from ultradiv.filters import FinFilter, divides_down, divides_up, image_filter, product_member
from ultradiv.patterns import (
    generate_falpha,
    pattern_add,
    pattern_leq,
    pattern_of,
    shape_class,
    sigma,
    witness_set,
)


def report(name, ok, detail, t0, budget=None):
    elapsed = time.perf_counter() - t0
    stamp = f"{elapsed:.1f}s" + (f" / budget {budget:.0f}s" if budget else "")
    print(f"\nACCEPT-{name}: {'PASS' if ok else 'FAIL'} ({detail}; {stamp})")
    assert ok, f"ACCEPT-{name} failed: {detail}"
    if budget is not None:
        assert elapsed < budget, f"ACCEPT-{name} exceeded {budget}s ({elapsed:.1f}s)"


@pytest.mark.parametrize("k", [1, 2, 3])
def test_c01_ap_coloring_property(k):
    # every progression of length 2^k + 1 (start <= 1024, step <= 64)
    # must contain a pair colored k
    t0 = time.perf_counter()
    rep = verify_progr(k, 1024, 64)
    detail = f"k={k}, {rep.checked} APs, {len(rep.violations)} violations"
    report(f"01[k={k}]", rep.ok, detail, t0, budget=30)


def test_c02_partition_refinement():
    t0 = time.perf_counter()
    reps = [verify_refinement(n, 40) for n in (2, 3)]
    checked = sum(r.checked for r in reps)
    bad = sum(len(r.violations) for r in reps)
    report("02", bad == 0, f"arity 2,3 over 40 indices, {checked} tuples, {bad} violations",
           t0, budget=10)


def test_c03_principal_reduction():
    t0 = time.perf_counter()
    W = 2000
    filters = [FinFilter.principal(i, W) for i in range(1, W + 1)]
    bad = 0
    for m in range(1, W + 1):
        x = filters[m - 1]
        for n in range(1, W + 1):
            y = filters[n - 1]
            expect = n % m == 0
            if divides_up(x, y) != expect or divides_down(x, y) != expect:
                bad += 1
    report("03", bad == 0, f"all pairs up to {W}, {bad} mismatches", t0, budget=5)


def test_c04_product_formula_principal():
    t0 = time.perf_counter()
    W = 5000
    rng = random.Random(0)
    pairs = [(m, n) for m in range(1, W + 1) for n in range(1, W // m + 1)]
    # pair classes by magnitude of the product; 200 sampled sets per class
    battery = {}
    values = range(1, W + 1)
    for bl in range(1, W.bit_length() + 1):
        sets = []
        for _ in range(200):
            density = rng.choice((0.05, 0.2, 0.5, 0.8))
            sets.append(NatSet(rng.sample(values, int(W * density)), window=W))
        battery[bl] = sets
    filters = {}
    bad = checked = 0
    for m, n in pairs:
        x = filters.get(m) or filters.setdefault(m, FinFilter.principal(m, W))
        y = filters.get(n) or filters.setdefault(n, FinFilter.principal(n, W))
        mn = m * n
        for A in battery[mn.bit_length()]:
            checked += 1
            if product_member(A, x, y) != (mn in A):
                bad += 1
    report("04", bad == 0,
           f"{len(pairs)} pairs x 200 sets ({checked} checks), {bad} mismatches",
           t0, budget=30)


def test_c05_function_image_divisibility():
    t0 = time.perf_counter()
    rng = random.Random(1)
    W = 1000
    bad = 0
    for _ in range(10**4):
        core = frozenset(rng.sample(range(2, W + 1), rng.randrange(1, 7)))
        x = FinFilter(W, core)
        shrink = {a: rng.choice(divisors(a)) for a in core}
        if not divides_up(image_filter(shrink.__getitem__, x), x):
            bad += 1
        grow = {a: a * rng.randrange(1, W // a + 1) for a in core}
        if not divides_up(x, image_filter(grow.__getitem__, x)):
            bad += 1
    report("05", bad == 0, f"10^4 instances each direction, {bad} failures", t0)


def test_c06_domination_order_exhaustive():
    t0 = time.perf_counter()
    pats = patterns_two_labels(5)
    n = len(pats)
    leq = [[pattern_leq(a, b) for b in pats] for a in pats]
    problems = []
    for i in range(n):
        if not leq[i][i]:
            problems.append(("reflexivity", i))
    for i in range(n):
        for j in range(n):
            if i != j and leq[i][j] and leq[j][i]:
                problems.append(("antisymmetry", i, j))
            if leq[i][j] and sigma(pats[i]) > sigma(pats[j]):
                problems.append(("sigma-monotone", i, j))
    for i in range(n):
        li = leq[i]
        for j in range(n):
            if li[j]:
                lj = leq[j]
                for k in range(n):
                    if lj[k] and not li[k]:
                        problems.append(("transitivity", i, j, k))
    asg = {"p": (2, 3, 5, 7), "q": (11, 13, 17, 19)}
    certs = 0
    for i, a in enumerate(pats):
        for j, b in enumerate(pats):
            if i != j and not leq[i][j]:
                cert = witness_set(a, b, asg)
                certs += 1
                if not cert.ok:
                    problems.append(("witness", a.to_text(), b.to_text()))
    report("06", not problems,
           f"{n} patterns, {certs} witness certificates, {len(problems)} problems",
           t0, budget=60)


def test_c07_element_products_land_in_sum_pattern():
    t0 = time.perf_counter()
    alphas = iso_patterns(6, "a")
    betas = iso_patterns(6, "b")
    bank = first_primes(56)
    checked_pairs = checked_products = bad = 0
    for alpha in alphas:
        for beta in betas:
            if sigma(alpha) + sigma(beta) > 6:
                continue
            checked_pairs += 1
            labels = list(alpha.support) + list(beta.support)
            asg = {lab: tuple(bank[4 * i : 4 * i + 4]) for i, lab in enumerate(labels)}
            s_a = generate_falpha(alpha, asg, allow_insufficient=True)
            s_b = generate_falpha(beta, asg, allow_insufficient=True)
            s_sum = generate_falpha(pattern_add(alpha, beta), asg, allow_insufficient=True)
            for a in s_a:
                for b in s_b:
                    if math.gcd(a, b) == 1:
                        checked_products += 1
                        if a * b not in s_sum:
                            bad += 1
    report("07", bad == 0,
           f"{checked_pairs} disjoint-support pairs, {checked_products} products, {bad} escapes",
           t0)


def test_c08_set_identities():
    t0 = time.perf_counter()
    P15 = first_primes(15)
    W = P15[-2] * P15[-1]
    subsets = []
    for r in range(1, 6):
        subsets.extend(frozenset(c) for c in combinations(P15, r))

    bad = 0
    # squared coprime power: quotient by a member drops exactly that member
    for A in subsets:
        a2 = coprime_power(A, 2)
        for a in A:
            if quotient_set(a2, a) != A - {a}:
                bad += 1

    # windowed membership masks from the library's closures
    def mask_of(xs):
        m = 0
        for x in xs:
            m |= 1 << x
        return m

    up_mask = {A: mask_of(up_closure(A, W)) for A in subsets}
    prs = primes_upto(W // 2)
    p2 = set()
    for i, p in enumerate(prs):
        if p * p > W:
            break
        for q in prs[i + 1 :]:
            if p * q > W:
                break
            p2.add(p * q)
    p2_mask = mask_of(p2)

    pairs = quotients = 0
    for A in subsets:
        amin = min(A)
        rest = sorted(p for p in P15 if p not in A and p > amin)
        am = up_mask[A]
        for r in range(1, 6):
            for Bc in combinations(rest, r):
                B = frozenset(Bc)
                pairs += 1
                ab = coprime_product(A, B)
                if mask_of(ab) != am & up_mask[B] & p2_mask:
                    bad += 1
                for a in A:
                    quotients += 1
                    if quotient_set(ab, a) != B:
                        bad += 1
                for b in B:
                    quotients += 1
                    if quotient_set(ab, b) != A:
                        bad += 1
    report("08", bad == 0,
           f"{len(subsets)} sets, {pairs} disjoint pairs, {quotients} quotients, {bad} failures",
           t0)


def test_c09_thickness_lemma_harness():
    t0 = time.perf_counter()
    rep = check_thick_lemmas(samples=500, seed=0)
    detail = (
        f"500 instances/property, hits mono={rep.monotone_hits} "
        f"union={rep.union_hits} arity={rep.arity_hits}, {len(rep.failures)} failures"
    )
    report("09", rep.ok and min(rep.monotone_hits, rep.union_hits, rep.arity_hits) > 50,
           detail, t0)


def test_c10_g_map_disjointness():
    t0 = time.perf_counter()
    asg = ec_enumerate(500)
    collisions = 0
    pairs = 0
    for m in range(1, 5):
        for n in range(m + 1, 5):
            pairs += 1
            collisions += len(verify_g_disjoint(asg, m, n).collisions)
    report("10", collisions == 0,
           f"500 index primes, {pairs} stage pairs, {collisions} collisions",
           t0, budget=10)


def test_c11_classifier_consistency():
    t0 = time.perf_counter()
    level4 = {(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)}
    bad = seen4 = 0
    for n in range(1, 10**5 + 1):
        lvl = level_of(n)
        if sigma(pattern_of(n)) != lvl:
            bad += 1
        if lvl == 4:
            seen4 += 1
            if shape_class(n) not in level4:
                bad += 1
    report("11", bad == 0,
           f"10^5 numbers, {seen4} on level 4, {bad} inconsistencies", t0, budget=10)


def test_c12_ramsey_bridge():
    t0 = time.perf_counter()
    rng = random.Random(2)
    A = first_primes(8)
    prods = sorted(coprime_power(A, 2))
    failures = 0
    for _ in range(1000):
        S = frozenset(rng.sample(prods, rng.randrange(0, len(prods) + 1)))
        M = find_monochromatic(A, 2, coloring_from_set(S, A, 2), 3)
        if M is None:
            failures += 1
            continue
        mprod = coprime_power(M, 2)
        if not (mprod <= S or not (mprod & S)):
            failures += 1
    report("12", failures == 0, f"1000 random target sets, {failures} failures",
           t0, budget=10)
