"""Acceptance suite: one test per criterion (split where a criterion has
independent clauses). Each test prints a PASS-style summary line; run with
-s to see them. Four clauses assert published values that the computation
contradicts; they fail deliberately, and each failure message carries the
computed truth. See README and notes for the analysis.
"""

import math
import subprocess
import sys
from itertools import combinations

import numpy as np
import pytest

from ellnum.arith import loglog, omega, omega_table, primes_in_range, reciprocal_prime_sum
from ellnum.counting import count_bsgs, count_charsum, count_naive, count_points
from ellnum.curves import ReducedCurve
from ellnum.search import bk_count, dense_product_count, find_progressions, g1, gk_census, gk_solutions
from ellnum.stats import admissible_recip_sum, moments, standardized_distribution
from ellnum.table import build_table, save_table


def say(line):
    print(f"[acceptance] {line}")


def good_primes(model, lo, hi):
    return [p for p in primes_in_range(lo, hi) if model.disc % p != 0]


# --- criterion 1: chained product identities (exact integers) ---------------

@pytest.fixture(scope="module")
def np_values(curve_a):
    primes = (2, 3, 5, 13, 17, 19, 43, 61, 67, 73, 101, 107, 113, 127,
              167, 251, 1009, 1063, 1181, 1283, 1399, 1601)
    return {p: count_points(curve_a, p) for p in primes}


def test_c01a_products_3360(np_values):
    v = np_values
    left = v[2] * v[13] * v[43]
    right = v[3] * v[5] * v[67]
    say(f"criterion 1a: N2*N13*N43 = {left}, N3*N5*N67 = {right}")
    assert left == right == 3360


def test_c01b_products_25200(np_values):
    v = np_values
    left = v[5] * v[43] * v[73]
    right = v[17] * v[19] * v[61]
    say(f"criterion 1b: N5*N43*N73 = {left}, N17*N19*N61 = {right}")
    assert left == right == 25200


def test_c01c_products_3107520(np_values):
    v = np_values
    lf = (v[101], v[107], v[251])
    rf = (v[113], v[127], v[167])
    assert lf == (99, 120, 254)
    assert rf == (132, 127, 180)
    left, right = math.prod(lf), math.prod(rf)
    assert left == right
    say(f"criterion 1c: factor lists verify; common product is {left}")
    assert left == 3107520, (
        f"published product 3107520 is unattainable: the published factor lists "
        f"(99,120,254) and (132,127,180) both verify against the curve and both "
        f"multiply to {left}; 3107520 transposes two digits of {left}"
    )


def test_c01d_products_1988217000(np_values):
    v = np_values
    lf = (v[1009], v[1181], v[1601])
    rf = (v[1063], v[1283], v[1399])
    assert lf == (1057, 1125, 1648)
    assert rf == (1057, 1320, 1425)
    left, right = math.prod(lf), math.prod(rf)
    say(f"criterion 1d: factor lists verify; left product {left}, right product {right}")
    assert left == right == 1988217000, (
        f"published identity is unattainable: both factor lists verify against the "
        f"curve, but they multiply to {left} and {right}. Each product is attained "
        f"by at least two prime triples (G_3({left}) = 29 via (1009,1181,1601) and "
        f"(1063,1181,1601); G_3({right}) = 46 via (1009,1283,1399) and "
        f"(1063,1283,1399)), so the printed display mixes triples of two different "
        f"census entries"
    )


# --- criterion 2: G_1 exactness ---------------------------------------------

def test_c02_g1_1057(curve_a):
    rec = g1(curve_a, 1057)
    say(f"criterion 2: G_1(1057) primes = {rec.primes}")
    assert rec.primes == (1009, 1063)
    assert rec.multiplicity == 2


# --- criterion 3: first published table -------------------------------------

FIRST_TABLE = {
    624: (593, 619, 661),
    6495: (6337, 6389, 6449),
    7440: (7369, 7487, 7523),
    8568: (8423, 8527, 8563),
    11422: (11299, 11519, 11617),
    12312: (12161, 12391, 12421),
    12672: (12619, 12721, 12791),
    32022: (31699, 31873, 32213),
    34240: (34217, 34327, 34603),
    37464: (37517, 37571, 37693),
}


def test_c03_first_table_rows(curve_b, table_b):
    for n, primes in FIRST_TABLE.items():
        rec = g1(curve_b, n, table=table_b)
        assert rec.primes == primes, (
            f"row n={n}: computed {rec.primes}, published {primes}"
        )
        assert rec.multiplicity == 3
    say(f"criterion 3: all {len(FIRST_TABLE)} rows reproduce exactly")


# --- criterion 4: second published table ------------------------------------

SECOND_TABLE = {10262: 2, 10494: 2, 10630: 2, 10697: 2, 10704: 2, 11072: 2,
                11100: 2, 11168: 2, 11276: 2, 11422: 3, 11441: 2}


def test_c04_second_table_values_and_completeness_report(curve_b, table_b):
    recs = {r.n: r.multiplicity
            for r in find_progressions(curve_b, 10262, 11441, 2, table=table_b)}
    for n, mult in SECOND_TABLE.items():
        assert recs.get(n, 0) == mult, f"n={n}: computed {recs.get(n, 0)}, published {mult}"
    extras = sorted(set(recs) - set(SECOND_TABLE))
    say(f"criterion 4: all {len(SECOND_TABLE)} published values exact; "
        f"completeness report: {len(extras)} unlisted n with G_1 >= 2 in range "
        f"({extras if extras else 'none'})")


# --- criterion 5: census witness --------------------------------------------

def test_c05_census_witness_fast(curve_a, table_a):
    census = gk_census(curve_a, 3, 4_000_000, table=table_a)
    count = census.count(3107520)
    say(f"criterion 5: census(3, 4e6) count at 3107520 = {count} "
        f"(at 3017520: {census.count(3017520)})")
    assert count >= 2


@pytest.mark.extended
def test_c05_census_witness_extended(curve_a, cache_dir):
    census = gk_census(curve_a, 3, 2_000_000_000, budget=10**9,
                       cache_dir=cache_dir)
    count = census.count(1_988_217_000)
    say(f"criterion 5 (extended): census(3, 2e9) count at 1988217000 = {count}")
    assert count >= 2


# --- criterion 6: counting-method oracle equivalence ------------------------

def test_c06_method_equivalence(curve_a, curve_b):
    for model in (curve_a, curve_b):
        for p in good_primes(model, 5, 200):
            rc = ReducedCurve.reduce(model, p)
            assert count_naive(rc) == count_charsum(rc), f"p={p}"
        for p in good_primes(model, 1000, 10_000):
            rc = ReducedCurve.reduce(model, p)
            assert count_charsum(rc) == count_bsgs(rc), f"p={p}"
    say("criterion 6: naive == charsum (p <= 200) and charsum == bsgs "
        "(p in [1e3, 1e4]) on both curves")


# --- criterion 7: Hasse invariant sweep --------------------------------------

def test_c07_hasse_sweep(table_a, table_b):
    for table in (table_a, table_b):
        ps, nps = table.upto(100_000)
        d = nps - ps - 1
        assert bool((d * d <= 4 * ps).all())
        assert bool((100 * nps >= ps).all())
    say("criterion 7: (N - p - 1)^2 <= 4p and 100N >= p for every good p <= 1e5 "
        "on both curves")


# --- criterion 8: Mertens / admissibility ------------------------------------

def test_c08a_mertens_band_vs_ln4():
    s = reciprocal_prime_sum(10, 100)
    gap = abs(s - math.log(4))
    say(f"criterion 8a: sum 1/p over primes in [10, 100] = {s:.6f}; "
        f"|sum - ln 4| = {gap:.6f} (<= 0.25 required); |sum - ln 2| = {abs(s - math.log(2)):.6f}")
    assert gap <= 0.25, (
        f"the published comparison value ln 4 is unattainable: the sum over primes "
        f"in [x^(1/8), x^(1/4)] = [10, 100] at x = 1e8 is {s:.6f}, and Mertens gives "
        f"loglog(x^b) - loglog(x^a) = log(b/a) = log 2 = {math.log(2):.6f} for "
        f"a = 1/8, b = 1/4 (log(b/a) = log 4 would need b/a = 4). The sum is within "
        f"{abs(s - math.log(2)):.3f} of log 2"
    )


def test_c08b_admissible_partition_identity(table_a):
    rep = admissible_recip_sum(table_a, 10**8, 1 / 8, 1 / 4, 0.008)
    lhs = rep.total_sum - rep.admissible_sum
    say(f"criterion 8b: total {rep.total_sum:.12f} - admissible "
        f"{rep.admissible_sum:.12f} = {lhs:.12f}; inadmissible {rep.inadmissible_sum:.12f}")
    assert lhs == pytest.approx(rep.inadmissible_sum, rel=1e-12)


# --- criterion 9: statistics shape -------------------------------------------

def test_c09a_moment_shape(table_a):
    rep4 = moments(table_a, 10_000)
    rep5 = moments(table_a, 100_000)
    llx = loglog(100_000)
    say(f"criterion 9a: mean omega(N_p) at 1e5 = {rep5.mean_omega:.4f}, "
        f"loglog x = {llx:.4f}; m2 {rep4.m2:.1f} -> {rep5.m2:.1f}; "
        f"m4 {rep4.m4:.1f} -> {rep5.m4:.1f}")
    say(f"criterion 9a: ratios (reported, not asserted): ratio2 = {rep5.ratio2:.4f}, "
        f"ratio2_alt = {rep5.ratio2_alt:.4f}, ratio4 = {rep5.ratio4:.4f}")
    assert llx - 1.5 <= rep5.mean_omega <= llx + 1.5
    assert 0 < rep4.m2 < rep5.m2
    assert 0 < rep4.m4 < rep5.m4


def test_c09b_ks_statistic(table_a):
    rep = standardized_distribution(table_a, 100_000, 20)
    say(f"criterion 9b: KS statistic at x = 1e5 (20 bins) = {rep.ks_stat:.4f} "
        f"(<= 0.30 required)")
    assert rep.ks_stat <= 0.30, (
        f"the 0.30 ceiling is unattainable at x = 1e5: the KS statistic of "
        f"(omega(N_p) - loglog x)/sqrt(loglog x) against N(0,1) is {rep.ks_stat:.4f}. "
        f"The mean of omega(N_p) exceeds loglog x by {moments(table_a, 100_000).mean_omega - loglog(100_000):.3f} "
        f"(a real second-order effect, not an implementation artifact; an "
        f"independent factorization oracle reproduces the same moments), and the "
        f"integer-valued omega atoms keep the KS distance above 0.3 at this scale"
    )


# --- criterion 10: determinism -----------------------------------------------

def test_c10_determinism(curve_a, table_a, tmp_path):
    blobs = []
    for w in (1, 8):
        t = build_table(curve_a, 20_000, workers=w)
        path = tmp_path / f"workers{w}.ellnum"
        save_table(t, path)
        blobs.append(path.read_bytes())
    assert blobs[0] == blobs[1]

    runs = [gk_census(curve_a, 3, 4_000_000, table=table_a, seed=7) for _ in range(2)]
    assert runs[0].csv_lines() == runs[1].csv_lines()

    cmd = [sys.executable, "-m", "ellnum", "census", "--k", "2", "--x", "3000",
           "--seed", "7", "--format", "csv", "--cache", str(tmp_path)]
    outs = [subprocess.run(cmd, capture_output=True, text=True, timeout=600).stdout
            for _ in range(2)]
    assert outs[0] and outs[0] == outs[1]
    say("criterion 10: table files identical for workers 1 and 8; repeated census "
        "runs byte-identical at fixed seed")


# --- criterion 11: brute-force cross-oracles ----------------------------------

def test_c11a_census_matches_gk_solutions(curve_a, table_a5k):
    census = gk_census(curve_a, 2, 10_000, table=table_a5k)
    mismatches = [
        (n, count, gk_solutions(curve_a, 2, n, table=table_a5k).count)
        for n, count in census.items()
        if count != gk_solutions(curve_a, 2, n, table=table_a5k).count
    ]
    say(f"criterion 11a: census(2, 1e4) has {len(census)} attained n; "
        f"{len(mismatches)} disagreements with per-n gk_solutions")
    assert not mismatches


def test_c11b_bk_count_matches_double_loop(curve_a, table_a5k):
    rep = bk_count(curve_a, 2, 100, 0.008, table=table_a5k)
    threshold = (1 - 0.008) * loglog(100)
    ps, nps = table_a5k.upto(100)
    adm = [int(p) for p, v in zip(ps, nps) if omega(int(v)) >= threshold]
    brute = sum(1 for pair in combinations(adm, 2) if pair[0] * pair[1] <= 100)
    say(f"criterion 11b: bk_count(2, 100) = {rep.count}, double loop = {brute}")
    assert rep.count == brute


def test_c11c_dense_products_match_oracle():
    def oracle(x, k, epsilon):
        threshold = (1 - epsilon) * math.log(math.log(x))
        wtab = omega_table(x)
        okset = {m for m in range(1, x + 1) if wtab[m] > threshold}

        def splits(n, parts):
            if parts == 1:
                return n in okset
            return any(n % d == 0 and d in okset and splits(n // d, parts - 1)
                       for d in range(1, n + 1))

        return sum(1 for n in range(1, x + 1) if splits(n, k))

    for k in (2, 3):
        for x in (50, 128, 200):
            got = dense_product_count(x, k, 0.008)
            want = oracle(x, k, 0.008)
            assert got == want, (x, k, got, want)
    say("criterion 11c: dense_product_count matches the exhaustive oracle "
        "for x <= 200, k in {2, 3}")
