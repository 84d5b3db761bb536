from collections import Counter
from itertools import permutations

import pytest

from hlpark.bs_codec import (
    MAJ_OF_VARIANT,
    bs_decode,
    bs_encode,
    classify_shape,
    is_admissible,
    iter_shapes,
    left_inversions,
    shape_from_l,
    shape_to_l,
    shape_to_permutation,
    sigma_from_inversions,
    sigma_from_kl,
)
from hlpark.core import (
    AdmissiblePair,
    HLPair,
    InvalidInputError,
    NoCorrespondenceError,
    Permutation,
    ShapeDescriptor,
    ShapeVariant as V,
    UnsupportedShapeError,
    UnsupportedSizeError,
)
from hlpark.enumeration import enumerate_admissible_pairs, enumerate_hl_pairs, enumerate_parking_functions
from hlpark.hl_codec import hl_encode
from hlpark.stats import maj, u_vector
import oracles


def test_admissible_examples():
    assert is_admissible((0, 1, 2), (0, 0, 0))
    assert is_admissible((0, 1), (0, 0))
    assert not is_admissible((0, 0), (0, 1))
    with pytest.raises(InvalidInputError):
        is_admissible((0, 1), (0,))


@pytest.mark.parametrize("n", range(1, 6))
def test_admissible_matches_definition(n):
    from itertools import product

    for k in product(*(range(i + 1) for i in range(n))):
        for l in product(*(range(i + 1) for i in range(n))):
            assert is_admissible(k, l) == oracles.admissible(k, l)


def test_sixteen_admissible_pairs_at_three():
    assert len(list(oracles.admissible_pairs_bruteforce(3))) == 16
    assert len(list(enumerate_admissible_pairs(3))) == 16


def test_sigma_from_inversions_extremes():
    assert sigma_from_inversions((0, 0, 0, 0)) == Permutation.identity(4)
    assert sigma_from_inversions((0, 1, 2, 3)).values == (3, 2, 1, 0)
    with pytest.raises(InvalidInputError):
        sigma_from_inversions((0, 2))


@pytest.mark.parametrize("n", range(1, 7))
def test_sigma_from_inversions_round_trip(n):
    for s in permutations(range(n)):
        c = oracles.left_inversions(s)
        assert left_inversions(s) == c
        assert sigma_from_inversions(c).values == s


@pytest.mark.parametrize("n", range(1, 5))
def test_sigma_from_kl_matches_search(n):
    for k, l in oracles.admissible_pairs_bruteforce(n):
        c = tuple(a - b for a, b in zip(k, l))
        assert sigma_from_kl(k, l).values == oracles.sigma_by_search(c)


def test_bs_encode_examples():
    assert bs_encode(AdmissiblePair((0, 1), (0, 0))).values == (1, 0)
    assert bs_encode(AdmissiblePair((0, 0), (0, 0))).values == (0, 0)
    with pytest.raises(InvalidInputError):
        bs_encode(((0, 1), (0, 0)))


@pytest.mark.parametrize("n", range(1, 7))
def test_bs_encode_is_a_bijection(n):
    images = Counter()
    for k, l in oracles.admissible_pairs_bruteforce(n):
        q = bs_encode(AdmissiblePair(k, l)).values
        if n <= 4:
            assert q == oracles.place(oracles.sigma_by_search(tuple(a - b for a, b in zip(k, l))), k)
        images[q] += 1
    assert set(images) == set(oracles.parking_functions_bruteforce(n))
    assert set(images.values()) == {1}


def test_bs_decode_examples():
    assert bs_decode((0, 0)) == AdmissiblePair((0, 0), (0, 0))
    assert bs_decode((1, 0)) == AdmissiblePair((0, 1), (0, 0))


@pytest.mark.parametrize("n", range(1, 7))
def test_bs_decode_round_trip(n):
    for q in enumerate_parking_functions(n):
        assert bs_encode(bs_decode(q)) == q


def test_bs_decode_bounds():
    with pytest.raises(UnsupportedSizeError):
        bs_decode(tuple(range(9)))
    with pytest.raises(UnsupportedSizeError):
        bs_decode((0, 0, 0), max_n=2)
    with pytest.raises(InvalidInputError):
        bs_decode((1, 1))


def test_classify_examples():
    assert classify_shape((0, 1, 2)) == ShapeDescriptor(0, V.IDENTITY, ())
    assert classify_shape((0, 2, 3, 1)) == ShapeDescriptor(1, V.ONE_CYCLE_TAIL, (1,))
    assert classify_shape((2, 0, 1)) == ShapeDescriptor(2, V.TWO_TAIL_INCREASING, (0, 1))
    assert classify_shape((0, 3, 2, 1)) == ShapeDescriptor(3, V.THREE_TAIL_2INV, (2, 1))
    assert classify_shape((3, 2, 1, 0)).variant is V.UNSUPPORTED


@pytest.mark.parametrize("n", range(1, 8))
def test_classification_is_exhaustive_for_small_maj(n):
    by_variant = Counter()
    for s in permutations(range(n)):
        shape = classify_shape(s)
        m = maj(s)
        assert shape.maj_value == m
        if m <= 3:
            assert shape.variant is not V.UNSUPPORTED, s
        if shape.variant is not V.UNSUPPORTED:
            assert MAJ_OF_VARIANT[shape.variant] == m
            assert shape_to_permutation(shape, n).values == s
            by_variant[shape.variant] += 1
    for variant in MAJ_OF_VARIANT:
        assert by_variant[variant] == len(list(iter_shapes(n, variant)))


@pytest.mark.parametrize("n", range(1, 8))
def test_maj_four_shapes_are_the_four_tail_forms(n):
    four = [s for s in permutations(range(n)) if maj(s) == 4]
    covered = [s for s in four if classify_shape(s).variant is not V.UNSUPPORTED]
    assert len(covered) == len(four)


def test_shape_to_l_examples():
    assert shape_to_l(ShapeDescriptor(0, V.IDENTITY, ()), 4) == (0, 0, 0, 0)
    assert shape_to_l(ShapeDescriptor(1, V.ONE_CYCLE_TAIL, (1,)), 4) == (0, 0, 0, 2)
    assert shape_to_l(ShapeDescriptor(3, V.THREE_TAIL_2INV, (2, 1)), 4) == (0, 0, 2, 1)
    assert shape_to_l(ShapeDescriptor(4, V.FOUR_TAIL_INCREASING, (0, 1, 2, 3)), 5) == (0, 1, 1, 1, 1)


def test_shape_to_l_errors():
    with pytest.raises(NoCorrespondenceError):
        shape_to_l(ShapeDescriptor(4, V.FOUR_TAIL_S3S1S2, (1, 2, 0)), 5)
    with pytest.raises(UnsupportedShapeError):
        shape_to_l(ShapeDescriptor(6, V.UNSUPPORTED, ()), 4)
    with pytest.raises(InvalidInputError):
        shape_to_l(ShapeDescriptor(1, V.ONE_CYCLE_TAIL, (3,)), 4)


def test_shape_from_l_examples():
    assert shape_from_l((0, 0, 0)) == ShapeDescriptor(0, V.IDENTITY, ())
    assert shape_from_l((0, 0, 0, 3)) == ShapeDescriptor(1, V.ONE_CYCLE_TAIL, (2,))
    assert shape_from_l((0, 0, 2, 1)) == ShapeDescriptor(3, V.THREE_TAIL_2INV, (2, 1))
    with pytest.raises(UnsupportedShapeError):
        shape_from_l((0, 1, 0, 0))
    with pytest.raises(UnsupportedShapeError):
        shape_from_l((0, 2))


SMALL_MAJ = [v for v, m in MAJ_OF_VARIANT.items() if m <= 3]


@pytest.mark.parametrize("n", range(1, 9))
def test_shape_from_l_inverts_shape_to_l(n):
    for variant in SMALL_MAJ:
        for shape in iter_shapes(n, variant):
            l = shape_to_l(shape, n)
            assert shape_from_l(l) == shape
            assert shape_to_l(shape_from_l(l), n) == l


@pytest.mark.parametrize("n", range(1, 7))
def test_correspondence_gives_admissible_pairs(n):
    for pair in enumerate_hl_pairs(n):
        shape = classify_shape(pair.sigma)
        if shape.variant in SMALL_MAJ or shape.variant is V.FOUR_TAIL_INCREASING:
            assert is_admissible(pair.k, shape_to_l(shape, n)), pair


@pytest.mark.parametrize("n", range(1, 7))
def test_converse_direction(n):
    # every admissible pair in an l-family pairs with an HL-pair on the family's sigma
    for pair in enumerate_admissible_pairs(n):
        try:
            shape = shape_from_l(pair.l)
        except UnsupportedShapeError:
            continue
        u = u_vector(shape_to_permutation(shape, n))
        assert all(ui <= ki for ui, ki in zip(u, pair.k))


@pytest.mark.parametrize("n", range(1, 7))
def test_statistic_histograms_agree(n):
    hl = Counter()
    for pair in enumerate_hl_pairs(n):
        m = maj(pair.sigma)
        if m <= 3:
            hl[(m, sum(pair.k))] += 1
    adm = Counter()
    for pair in enumerate_admissible_pairs(n):
        try:
            adm[(shape_from_l(pair.l).maj_value, sum(pair.k))] += 1
        except UnsupportedShapeError:
            pass
    assert hl == adm


def test_placement_under_f_differs_from_p_at_two():
    # sigma=(1,0), k=(0,1) is one-cycle-tail s=0, so l=(0,1); then
    # k-l=(0,0) gives sigma_{k,l}=identity and f places k unchanged
    pair = HLPair(Permutation((1, 0)), (0, 1))
    l = shape_to_l(classify_shape(pair.sigma), 2)
    assert l == (0, 1)
    assert bs_encode(AdmissiblePair(pair.k, l)).values == (0, 1)
    assert hl_encode(pair).values == (1, 0)


@pytest.mark.parametrize("n", range(4, 7))
def test_s1s3s2_admissibility_can_fail(n):
    # u_{n-2} = s2 - 1 < s2 = l_{n-2}, so k_{n-2} = u_{n-2} breaks l <= k
    shape = next(iter_shapes(n, V.FOUR_TAIL_S1S3S2))
    sigma = shape_to_permutation(shape, n)
    k = u_vector(sigma)
    assert not is_admissible(k, shape_to_l(shape, n))
