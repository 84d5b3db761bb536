from collections import Counter
from math import factorial

import pytest

from hlpark.core import BivariatePolynomial, HLPair, InvalidInputError, Permutation, dumps
from hlpark.enumeration import (
    VERIFY_CHECKS,
    EnumerationJob,
    EnumerationTarget,
    compute_r_polynomial,
    enumerate_admissible_pairs,
    enumerate_hl_pairs,
    enumerate_parking_functions,
    enumerate_permutations,
    four_tail_s3s1s2_diagnostic,
    pf_statistics,
    plan_blocks,
    r_at_q1_from_parking_functions,
    r_polynomial_naive,
    verify_bijections,
)
from hlpark.hl_codec import hl_decode, hl_encode
import oracles

COUNTS = {1: 1, 2: 3, 3: 16, 4: 125, 5: 1296, 6: 16807}


@pytest.mark.parametrize("n", range(1, 7))
def test_counts_match_brute_force(n):
    pfs = [p.values for p in enumerate_parking_functions(n)]
    hls = [(p.sigma.values, p.k) for p in enumerate_hl_pairs(n)]
    adms = [(p.k, p.l) for p in enumerate_admissible_pairs(n)]
    assert sorted(pfs) == sorted(oracles.parking_functions_bruteforce(n))
    assert sorted(hls) == sorted(oracles.hl_pairs_bruteforce(n))
    assert sorted(adms) == sorted(oracles.admissible_pairs_bruteforce(n))
    assert len(pfs) == len(hls) == len(adms) == COUNTS[n]
    assert len(set(pfs)) == len(pfs)


def test_small_lists():
    assert [p.values for p in enumerate_parking_functions(2)] == [(0, 0), (0, 1), (1, 0)]
    assert list(enumerate_hl_pairs(2)) == [
        HLPair(Permutation((0, 1)), (0, 0)),
        HLPair(Permutation((0, 1)), (0, 1)),
        HLPair(Permutation((1, 0)), (0, 1)),
    ]
    assert list(enumerate_permutations(3))[:2] == [(0, 1, 2), (0, 2, 1)]


def test_enumerators_reject_bad_n():
    for gen in (enumerate_permutations, enumerate_hl_pairs, enumerate_parking_functions, enumerate_admissible_pairs):
        with pytest.raises(InvalidInputError):
            list(gen(0))


def test_r_small():
    assert compute_r_polynomial(1) == BivariatePolynomial({(0, 0): 1})
    assert compute_r_polynomial(2) == BivariatePolynomial({(0, 0): 1, (1, 0): 1, (0, 1): 1})


@pytest.mark.parametrize("n", range(1, 7))
def test_r_matches_brute_force(n):
    want = BivariatePolynomial(oracles.r_polynomial_bruteforce(n))
    assert compute_r_polynomial(n) == want
    if n <= 5:
        assert r_polynomial_naive(n) == want


@pytest.mark.parametrize("n", range(1, 9))
def test_r_at_one_one(n):
    assert compute_r_polynomial(n).evaluate(1, 1) == (n + 1) ** (n - 1)


@pytest.mark.parametrize("n", range(1, 7))
def test_r_at_q_one_is_a_parking_sum(n):
    assert compute_r_polynomial(n).substitute_q(1) == r_at_q1_from_parking_functions(n)


@pytest.mark.parametrize("n", range(2, 8))
def test_low_q_strata(n):
    r = compute_r_polynomial(n)
    top = n * (n - 1) // 2
    # q^0: identity with any k, so t-degree counts staircase sequences by sum
    assert r.coefficient(0, 0) == 1
    assert r.coefficient(0, top) == 1
    assert sum(c for a, _, c in r.items() if a == 0) == factorial(n)
    # q^1: sigma one-cycle-tail; u_{n-1} = s+1 leaves n-1-s choices of k_{n-1}
    ones = sum(c for a, _, c in r.items() if a == 1)
    per_k = factorial(n - 1)
    assert ones == per_k * sum(n - 1 - s for s in range(n - 1))


@pytest.mark.parametrize("n", range(1, 8))
def test_partitions_are_deterministic(n):
    texts = {dumps(compute_r_polynomial(n, partitions=p)) for p in (1, 4, 16)}
    assert len(texts) == 1


def test_process_pool_matches_serial():
    assert compute_r_polynomial(7, partitions=4, workers=2) == compute_r_polynomial(7)


@pytest.mark.parametrize("backend", ["python", "cython"])
def test_backends_agree(backend):
    from hlpark import _backend

    if backend == "cython" and _backend.compiled_kernels is None:
        pytest.skip("compiled kernels not built")
    assert compute_r_polynomial(7, partitions=5, backend=backend) == compute_r_polynomial(7, backend="python")


def test_plan_blocks_cover_the_gaps():
    assert plan_blocks(100, 1) == [(0, 100)]
    assert plan_blocks(1000, 4) == [(0, 250), (250, 500), (500, 750), (750, 1000)]
    assert plan_blocks(100, 16) == [(0, 64), (64, 100)]
    assert plan_blocks(1000, 4, [(250, 500)]) == [(0, 250), (500, 750), (750, 1000)]
    with pytest.raises(InvalidInputError):
        plan_blocks(10, 0)


def test_enumeration_job():
    assert EnumerationJob(4, "hl_pairs").run() == 125
    assert EnumerationJob(4, EnumerationTarget.ADMISSIBLE_PAIRS).run() == 125
    assert EnumerationJob(4, "parking_functions").run() == 125
    assert EnumerationJob(3, "r_polynomial", partitions=2).run() == compute_r_polynomial(3)
    with pytest.raises(ValueError):
        EnumerationJob(3, "bogus")
    with pytest.raises(InvalidInputError):
        EnumerationJob(0, "hl_pairs")


def test_pf_statistics():
    stats = pf_statistics((1, 0, 0))
    assert stats["sigma"] == [1, 2, 0]
    assert stats["k"] == [0, 0, 1]
    assert stats["maj"] == 1
    assert stats["t_degree"] == 2
    assert stats["shape"]["variant"] == "one-cycle-tail"


@pytest.mark.parametrize("n", range(1, 6))
def test_verify_passes(n):
    report = verify_bijections(n)
    assert report.passed, report.to_json()
    assert set(report.failures) == set(VERIFY_CHECKS)
    assert report.counts["hl_pairs"] == (n + 1) ** (n - 1)
    assert report.to_json()["status"] == "PASSED"


def test_verify_catches_a_broken_decoder():
    def bad_decode(q):
        pair = hl_decode(q)
        return pair if sum(q) else HLPair(Permutation.identity(len(q)), tuple(range(len(q))))

    report = verify_bijections(3, codecs={"hl_decode": bad_decode})
    assert not report.passed
    assert report.failures["hl_encode(hl_decode(q)) == q"] == 1
    assert report.first_counterexample["check"] == "hl_encode(hl_decode(q)) == q"
    assert any(line.startswith("  FAIL") for line in report.summary_lines())


def test_verify_catches_a_broken_f():
    from hlpark.bs_codec import bs_encode

    def collapsing_f(pair):
        # every pair with k_2 = 2 lands on (0,0,0)
        if pair.k[-1] == 2:
            return hl_encode(HLPair(Permutation.identity(3), (0, 0, 0)))
        return bs_encode(pair)

    report = verify_bijections(3, codecs={"bs_encode": collapsing_f})
    assert not report.passed
    assert report.failures["bs_encode injective"] > 0


@pytest.mark.parametrize("n", [5, 6])
def test_four_tail_s3s1s2_has_no_single_l(n):
    result = four_tail_s3s1s2_diagnostic(n)
    from hlpark.bs_codec import iter_shapes
    from hlpark.core import ShapeVariant

    assert result["examined"] == len(list(iter_shapes(n, ShapeVariant.FOUR_TAIL_S3S1S2))) > 0
    assert result["successes"] == []


def test_histogram_of_maj_matches_r():
    r = compute_r_polynomial(5)
    by_maj = Counter()
    for a, _, c in r.items():
        by_maj[a] += c
    hist = Counter(oracles.maj(p.sigma.values) for p in enumerate_hl_pairs(5))
    assert by_maj == hist
