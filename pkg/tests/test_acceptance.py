"""Exit criteria for the artifact; exact arithmetic, so zero tolerance throughout."""

import io
import json
import time

from etacert.cli import main
from etacert.congruences import (PAPER_CASES, CongruenceClaim, check_binomial_lemma,
                                 oracle_check, verify_theorem)
from etacert.qseries import ExponentVector, pk_oracle_table, pk_series
from etacert.radu import (RaduTuple, delta_star_check, projective_line_size,
                          residue_orbit, series_bound, sl2_index)

CASE_ORDER = ["k7", "k8", "k17", "k4-a", "k4-b"]


def test_01_floor_v_reproduction(criterion):
    start = time.perf_counter()
    floors = [series_bound(PAPER_CASES[n].tuple, PAPER_CASES[n].rprime)[1] for n in CASE_ORDER]
    elapsed = time.perf_counter() - start
    assert floors == [28, 42, 84, 13, 11]
    assert elapsed < 1.0
    criterion(f"floor_v={floors} in {elapsed:.3f}s")


def test_02_orbit_reproduction(criterion):
    start = time.perf_counter()
    orbits = [residue_orbit(PAPER_CASES[n].tuple) for n in CASE_ORDER]
    elapsed = time.perf_counter() - start
    assert orbits == [[17], [16], [7], [11, 25, 32], [39]]
    assert elapsed < 1.0
    criterion(f"orbits={orbits} in {elapsed:.3f}s")


def test_03_end_to_end_proof(criterion):
    out = io.StringIO()
    start = time.perf_counter()
    status = main(["verify-paper", "--json"], out=out)
    elapsed = time.perf_counter() - start
    certs = json.loads(out.getvalue())
    assert status == 0
    assert len(certs) == 5 and all(c["verdict"] == "verified" for c in certs)
    largest = max(c["tuple"]["m"] * c["floor_v"] + max(c["orbit"]) for c in certs)
    assert largest == 25 * 84 + 7
    assert elapsed < 10.0
    criterion(f"5/5 verified, largest expansion {largest}, {elapsed:.3f}s")


def test_04_binomial_lemma(criterion):
    for p, alpha, trunc in [(3, 1, 500), (5, 1, 500), (7, 1, 500), (5, 2, 200)]:
        assert check_binomial_lemma(p, alpha, trunc) is None
    criterion("(3,1),(5,1),(7,1) to 500; (5,2) to 200")


def test_05_oracle_equivalence(criterion):
    comparisons = 0
    for k in range(21):
        series = pk_series(k, 200)
        oracle = pk_oracle_table(k, 200)
        for n in range(201):
            assert series[n] == oracle[n], (k, n)
            comparisons += 1
    assert comparisons == 21 * 201
    criterion(f"{comparisons} exact comparisons")


def test_06_theorem_claims_against_oracle(criterion):
    claims = [CongruenceClaim(7, 25, 17, 5), CongruenceClaim(8, 25, 16, 5),
              CongruenceClaim(17, 25, 7, 5)]
    claims += [CongruenceClaim(4, 49, t, 7) for t in (11, 25, 32, 39)]
    derived = [cl for which in ("thm-1.1", "thm-1.2")
               for _, _, cls in verify_theorem(which) for cl in cls]
    assert sorted(derived, key=str) == sorted(claims, key=str)
    for claim in claims:
        assert oracle_check(claim, 40) is None, claim
    criterion(f"{len(claims)} progressions, n <= 40")


def test_07_regression_congruences(criterion):
    claims = [CongruenceClaim(1, 25, 23, 5), CongruenceClaim(2, 3, 2, 3),
              CongruenceClaim(2, 25, 22, 5)]
    claims += [CongruenceClaim(2, 49, t, 7) for t in (15, 29, 36, 43)]
    claims += [CongruenceClaim(k, 25, 24 - k, 5) for k in (0, 1, 2, 3, 4, 5, 10, 15, 20)]
    for claim in claims:
        assert oracle_check(claim, 30) is None, claim
    criterion(f"{len(claims)} progressions, n <= 30")


def test_08_index_oracle(criterion):
    for N in range(1, 501):
        assert sl2_index(N) == projective_line_size(N), N
    assert [sl2_index(N) for N in (35, 40, 85, 28)] == [48, 72, 108, 48]
    criterion("N <= 500 agree; 48, 72, 108, 48")


def test_09_negative_controls(criterion):
    r7 = ExponentVector(35, {1: 4, 5: -1, 7: -1})
    assert delta_star_check(RaduTuple(25, 35, 7, 17, r7)) == "C1"
    assert delta_star_check(RaduTuple(25, 35, 5, 17, r7)) == "C2"
    assert delta_star_check(RaduTuple(25, 35, 35, 18, r7)) == "C5"
    assert delta_star_check(RaduTuple(4, 2, 2, 1, ExponentVector(2, {1: 1}))) \
        == "unsupported-even-m"
    # p_8(18) = 1 (mod 5), found by expansion
    assert oracle_check(CongruenceClaim(8, 25, 18, 5), 10) == 0
    assert pk_series(8, 18, 5)[18] == 1
    assert oracle_check(CongruenceClaim(8, 25, 16, 5), 10) is None
    criterion("C1, C2, C5, even-m rejected; p_8(25n+18) nonzero at n=0")
