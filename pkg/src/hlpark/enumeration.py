"""Exhaustive generation and the generating polynomial R_n(q, t).

``R_n(q, t)`` sums ``q^maj(sigma) t^(n(n-1)/2 - sum k)`` over HL-pairs.  For
fixed sigma the k-sum factorises into ``prod_i (1 + t + ... + t^(i - u_i))``,
so the work is one pass over ``n!`` permutations.  That pass is split into
contiguous lexicographic-rank blocks, each accumulated by a kernel and merged
by plain coefficient addition, so the result does not depend on the split.
"""

from __future__ import annotations

import enum
import logging
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations, product
from math import factorial
from typing import Iterator

from ._backend import get_kernels
from .bs_codec import (
    MAJ_OF_VARIANT,
    bs_decode,
    bs_encode,
    classify_shape,
    shape_from_l,
    shape_to_l,
    shape_to_permutation,
)
from .checkpoint import Checkpoint
from .core import (
    AdmissiblePair,
    BivariatePolynomial,
    CoefficientOverflowError,
    HLPair,
    InvalidInputError,
    ParkingFunction,
    ShapeVariant,
    UnsupportedShapeError,
    admissibility_violation,
    dumps,
    render,
    to_json,
)
from .hl_codec import hl_decode, hl_encode
from .stats import maj, u_vector

logger = logging.getLogger(__name__)

__all__ = [
    "MIN_BLOCK",
    "EnumerationTarget",
    "EnumerationJob",
    "VerificationReport",
    "enumerate_permutations",
    "enumerate_hl_pairs",
    "enumerate_parking_functions",
    "enumerate_admissible_pairs",
    "plan_blocks",
    "compute_r_polynomial",
    "r_polynomial_naive",
    "pf_statistics",
    "verify_bijections",
    "four_tail_s3s1s2_diagnostic",
    "r_at_q1_from_parking_functions",
]

MIN_BLOCK = 64


def enumerate_permutations(n: int) -> Iterator[tuple[int, ...]]:
    """All permutations of ``range(n)`` in lexicographic order."""
    if n < 1:
        raise InvalidInputError("n must be >= 1")
    return permutations(range(n))


def enumerate_hl_pairs(n: int) -> Iterator[HLPair]:
    """Every HL-pair: sigma in lex order, then k over ``[u_i, i]`` in lex order."""
    for sigma in enumerate_permutations(n):
        u = u_vector(sigma)
        for k in product(*(range(ui, i + 1) for i, ui in enumerate(u))):
            yield HLPair._trusted(sigma, k)


def enumerate_parking_functions(n: int) -> Iterator[ParkingFunction]:
    """Every parking function of length ``n`` in lex order.

    Backtracking with a feasibility cut: a prefix extends to a parking
    function iff for every ``v`` the entries ``<= v`` plus the unfilled
    positions number at least ``v + 1``.
    """
    if n < 1:
        raise InvalidInputError("n must be >= 1")
    prefix: list[int] = []
    # at_most[v] = number of prefix entries <= v
    at_most = [0] * n

    def feasible(remaining: int) -> bool:
        return all(at_most[v] + remaining >= v + 1 for v in range(n))

    def extend(i: int):
        if i == n:
            yield ParkingFunction._trusted(tuple(prefix))
            return
        for v in range(n):
            prefix.append(v)
            for w in range(v, n):
                at_most[w] += 1
            if feasible(n - i - 1):
                yield from extend(i + 1)
            for w in range(v, n):
                at_most[w] -= 1
            prefix.pop()

    yield from extend(0)


def enumerate_admissible_pairs(n: int) -> Iterator[AdmissiblePair]:
    """Every admissible pair: k in lex order, then l in lex order."""
    if n < 1:
        raise InvalidInputError("n must be >= 1")
    for k in product(*(range(i + 1) for i in range(n))):
        l: list[int] = []

        def extend(j: int):
            if j == n:
                yield AdmissiblePair._trusted(k, tuple(l))
                return
            kj = k[j]
            for lj in range(kj + 1):
                # condition 2 against every earlier position
                if any(l[i] > lj and kj < i + 1 for i in range(j)):
                    continue
                l.append(lj)
                yield from extend(j + 1)
                l.pop()

        yield from extend(0)


# --- R_n(q, t) -------------------------------------------------------------

def plan_blocks(total: int, partitions: int, done: list[tuple[int, int]] = ()) -> list[tuple[int, int]]:
    """Split ``[0, total)`` minus ``done`` into contiguous blocks.

    The target block length is ``ceil(total / partitions)`` but never below
    ``MIN_BLOCK`` (unless a gap is shorter).
    """
    if partitions < 1:
        raise InvalidInputError("partitions must be >= 1")
    size = max(MIN_BLOCK, -(-total // partitions))
    blocks = []
    cursor = 0
    for start, end in sorted(done) + [(total, total)]:
        for s in range(cursor, start, size):
            blocks.append((s, min(s + size, start)))
        cursor = max(cursor, end)
    return blocks


def _run_block(args) -> tuple[int, int, list[list[int]]]:
    n, start, end, backend = args
    try:
        matrix = get_kernels(backend).rpoly_block(n, start, end)
    except OverflowError as exc:
        raise CoefficientOverflowError(f"n={n}, ranks [{start}, {end}): {exc}") from None
    return start, end, matrix.tolist()


def compute_r_polynomial(
    n: int,
    partitions: int = 1,
    workers: int | None = None,
    checkpoint_path: str | os.PathLike | None = None,
    backend: str | None = None,
) -> BivariatePolynomial:
    """Exact ``R_n(q, t)``.

    ``partitions`` is the number of rank blocks; ``workers`` the number of
    processes (default ``min(partitions, cpu_count)``).  With a
    ``checkpoint_path`` each finished block is persisted and a rerun only
    computes the missing ones.
    """
    if n < 1:
        raise InvalidInputError("n must be >= 1")
    total = factorial(n)
    ckpt = Checkpoint(checkpoint_path, n) if checkpoint_path is not None else None

    result = BivariatePolynomial({})
    done: list[tuple[int, int]] = []
    if ckpt is not None:
        for start, end in ckpt.completed_ranges():
            # overlapping or out-of-range entries would double count
            if start < end <= total and all(end <= s or start >= e for s, e in done):
                done.append((start, end))
                result = result + ckpt.blocks[(start, end)][1]
        if done:
            logger.info("resuming n=%d with %d checkpointed blocks", n, len(done))

    blocks = plan_blocks(total, partitions, done)
    if workers is None:
        workers = min(partitions, os.cpu_count() or 1)
    jobs = [(n, s, e, backend) for s, e in blocks]

    def consume(results):
        nonlocal result
        for start, end, matrix in results:
            part = BivariatePolynomial.from_matrix(matrix)
            if ckpt is not None:
                ckpt.add(start, end, part)
            result = result + part

    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            consume(pool.map(_run_block, jobs))
    else:
        consume(map(_run_block, jobs))
    return result


def r_polynomial_naive(n: int) -> BivariatePolynomial:
    """``R_n`` by iterating every HL-pair (no factorisation)."""
    top = n * (n - 1) // 2
    counts: Counter = Counter()
    for pair in enumerate_hl_pairs(n):
        counts[(maj(pair.sigma.values), top - sum(pair.k))] += 1
    return BivariatePolynomial(dict(counts))


def r_at_q1_from_parking_functions(n: int) -> BivariatePolynomial:
    """``sum over parking functions of t^(n(n-1)/2 - sum p)``; equals ``R_n(1, t)``."""
    top = n * (n - 1) // 2
    counts = Counter((0, top - sum(p.values)) for p in enumerate_parking_functions(n))
    return BivariatePolynomial(dict(counts))


def pf_statistics(q) -> dict:
    """The statistics a parking function inherits through its HL-pair."""
    pair = hl_decode(q)
    n = pair.n
    return {
        "q": list(hl_encode(pair).values),
        "sigma": list(pair.sigma.values),
        "k": list(pair.k),
        "maj": maj(pair.sigma.values),
        "t_degree": n * (n - 1) // 2 - sum(pair.k),
        "shape": to_json(classify_shape(pair.sigma)),
    }


# --- jobs ------------------------------------------------------------------

class EnumerationTarget(str, enum.Enum):
    HL_PAIRS = "hl_pairs"
    PARKING_FUNCTIONS = "parking_functions"
    ADMISSIBLE_PAIRS = "admissible_pairs"
    R_POLYNOMIAL = "r_polynomial"


@dataclass(frozen=True)
class EnumerationJob:
    n: int
    target: EnumerationTarget
    partitions: int = 1
    checkpoint_path: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "target", EnumerationTarget(self.target))
        if self.n < 1 or self.partitions < 1:
            raise InvalidInputError("n and partitions must be >= 1")

    def run(self):
        """Return the polynomial for ``r_polynomial``, else the object count."""
        if self.target is EnumerationTarget.R_POLYNOMIAL:
            return compute_r_polynomial(self.n, self.partitions, checkpoint_path=self.checkpoint_path)
        stream = {
            EnumerationTarget.HL_PAIRS: enumerate_hl_pairs,
            EnumerationTarget.PARKING_FUNCTIONS: enumerate_parking_functions,
            EnumerationTarget.ADMISSIBLE_PAIRS: enumerate_admissible_pairs,
        }[self.target]
        return sum(1 for _ in stream(self.n))


# --- verification ----------------------------------------------------------

# families of l the shape table covers with an HL <-> admissible correspondence
_CORRESPONDING = [v for v, m in MAJ_OF_VARIANT.items() if m <= 3]


VERIFY_CHECKS = (
    "|parking_functions| == (n+1)^(n-1)",
    "|hl_pairs| == (n+1)^(n-1)",
    "|admissible_pairs| == (n+1)^(n-1)",
    "hl_encode lands in parking functions",
    "hl_encode(hl_decode(q)) == q",
    "hl_decode(hl_encode(x)) == x",
    "bs_encode injective",
    "bs_encode onto parking functions",
    "bs_encode(bs_decode(q)) == q",
    "(k, l(sigma)) admissible",
    "shape_from_l inverts shape_to_l",
    "(sigma(l), k) is an HL-pair",
    "(maj, sum k) histograms agree for maj <= 3",
)


@dataclass
class VerificationReport:
    n: int
    counts: dict = field(default_factory=dict)
    failures: dict = field(default_factory=dict)
    first_counterexample: dict | None = None
    informational: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not any(self.failures.values())

    def fail(self, check: str, example) -> None:
        self.failures[check] = self.failures.get(check, 0) + 1
        if self.first_counterexample is None:
            self.first_counterexample = {"check": check, "example": example}

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "status": "PASSED" if self.passed else "FAILED",
            "counts": self.counts,
            "failures": self.failures,
            "first_counterexample": self.first_counterexample,
            "informational": self.informational,
        }

    def summary_lines(self) -> list[str]:
        lines = [f"n={self.n}: {'PASS' if self.passed else 'FAIL'}"]
        for name, value in self.counts.items():
            lines.append(f"  count {name}: {value}")
        for name, value in self.failures.items():
            lines.append(f"  {'ok  ' if not value else 'FAIL'} {name}: {value} failures")
        for name, value in self.informational.items():
            lines.append(f"  info {name}: {value}")
        if self.first_counterexample:
            lines.append(f"  first counterexample: {self.first_counterexample}")
        return lines


def verify_bijections(n: int, bs_decode_max_n: int = 6, codecs: dict | None = None) -> VerificationReport:
    """Cross-check both encodings exhaustively at size ``n``.

    Gating checks: the three set sizes agree with ``(n+1)^(n-1)``; both
    round trips of the HL bijection; ``f`` is injective onto the parking
    functions (plus ``bs_decode`` round trips up to ``bs_decode_max_n``); and
    for every shape of major index at most 3, ``sigma -> l`` gives admissible
    pairs, is inverted by ``shape_from_l``, and yields the same
    ``(maj, sum k)`` histogram as the admissible pairs in the l-families.

    Informational: agreement count of ``f(k, l)`` with ``p(sigma, k)``,
    q/t symmetry of ``R_n``.

    ``codecs`` may override ``hl_encode``/``hl_decode``/``bs_encode``
    (fault injection in tests).
    """
    codecs = codecs or {}
    enc = codecs.get("hl_encode", hl_encode)
    dec = codecs.get("hl_decode", hl_decode)
    benc = codecs.get("bs_encode", bs_encode)
    report = VerificationReport(n, failures={name: 0 for name in VERIFY_CHECKS})
    formula = (n + 1) ** (n - 1)

    pfs = list(enumerate_parking_functions(n))
    pf_set = set(pfs)
    report.counts["parking_functions"] = len(pfs)
    for q in pfs:
        if enc(dec(q)) != q:
            report.fail("hl_encode(hl_decode(q)) == q", render(q))

    hl_count = 0
    hl_hist: Counter = Counter()
    agree = considered = 0
    for pair in enumerate_hl_pairs(n):
        hl_count += 1
        p = enc(pair)
        if p not in pf_set:
            report.fail("hl_encode lands in parking functions", dumps(pair))
        elif dec(p) != pair:
            report.fail("hl_decode(hl_encode(x)) == x", dumps(pair))
        shape = classify_shape(pair.sigma)
        if shape.variant in _CORRESPONDING:
            l = shape_to_l(shape, n)
            considered += 1
            if not _admissible(pair.k, l):
                report.fail("(k, l(sigma)) admissible", dumps(pair))
                continue
            if shape_from_l(l) != shape:
                report.fail("shape_from_l inverts shape_to_l", dumps(pair))
            hl_hist[(shape.maj_value, sum(pair.k))] += 1
            if benc(AdmissiblePair._trusted(pair.k, l)) == p:
                agree += 1
    report.counts["hl_pairs"] = hl_count

    adm_count = 0
    images = set()
    adm_hist: Counter = Counter()
    for pair in enumerate_admissible_pairs(n):
        adm_count += 1
        q = benc(pair)
        if q in images:
            report.fail("bs_encode injective", dumps(pair))
        images.add(q)
        try:
            shape = shape_from_l(pair.l)
        except UnsupportedShapeError:
            continue
        sigma = shape_to_permutation(shape, n)
        # the converse direction: (sigma(l), k) must be an HL-pair
        if not all(ui <= ki for ui, ki in zip(u_vector(sigma.values), pair.k)):
            report.fail("(sigma(l), k) is an HL-pair", dumps(pair))
        adm_hist[(shape.maj_value, sum(pair.k))] += 1
    report.counts["admissible_pairs"] = adm_count
    if images != pf_set:
        report.fail("bs_encode onto parking functions", sorted(map(render, pf_set ^ images))[:1])
    if n <= bs_decode_max_n:
        for q in pfs:
            if benc(bs_decode(q)) != q:
                report.fail("bs_encode(bs_decode(q)) == q", render(q))

    report.counts["formula (n+1)^(n-1)"] = formula
    for name in ("parking_functions", "hl_pairs", "admissible_pairs"):
        if report.counts[name] != formula:
            report.fail(f"|{name}| == (n+1)^(n-1)", report.counts[name])
    if hl_hist != adm_hist:
        diff = sorted(set(hl_hist.items()) ^ set(adm_hist.items()))
        report.fail("(maj, sum k) histograms agree for maj <= 3", diff[:1])
    r = compute_r_polynomial(n)
    report.informational["f(k,l) == p(sigma,k) agreements (maj <= 3)"] = f"{agree}/{considered}"
    report.informational["R_n q<->t symmetric"] = r == r.swap_variables()
    return report


def _admissible(k, l) -> bool:
    return admissibility_violation(k, l) is None


def four_tail_s3s1s2_diagnostic(n: int) -> dict:
    """Search, for each four-tail-s3s1s2 sigma, for one l serving every k.

    An l works for sigma if, for every k with ``(sigma, k)`` an HL-pair,
    ``(k, l)`` is admissible and ``f(k, l) = p(sigma, k)``.  Returns the
    number of permutations examined and those for which some l works.
    """
    examined = 0
    successes = []
    for sigma in enumerate_permutations(n):
        shape = classify_shape(sigma)
        if shape.variant is not ShapeVariant.FOUR_TAIL_S3S1S2:
            continue
        examined += 1
        if _working_l(sigma) is not None:
            successes.append(list(sigma))
    return {"n": n, "examined": examined, "successes": successes}


def _working_l(sigma: tuple[int, ...]) -> tuple[int, ...] | None:
    u = u_vector(sigma)
    ks = list(product(*(range(ui, i + 1) for i, ui in enumerate(u))))
    targets = [hl_encode(HLPair._trusted(sigma, k)) for k in ks]
    # condition 1 for every k forces l_i <= min k_i = u_i
    for l in product(*(range(ui + 1) for ui in u)):
        if all(
            _admissible(k, l) and bs_encode(AdmissiblePair._trusted(k, l)) == p
            for k, p in zip(ks, targets)
        ):
            return l
    return None
