"""Admissible pairs, the map ``f(k, l)``, and the small-maj shape tables.

``sigma_{k,l}`` is the permutation whose left-inversion count at position
``i`` (earlier, larger entries) is ``k_i - l_i``; ``f(k, l)`` places ``k_i``
at position ``sigma_{k,l}(i)``.

Permutations with ``maj <= 4`` have one of these forms.  The prefix is the
complement of the tail values, in increasing order.

==========================  ==========  =======================  ===========
variant                     tail        constraints              l tail
==========================  ==========  =======================  ===========
identity                    --          --                       --
one-cycle-tail              s           s <= n-2                 s+1
two-tail-increasing         s1 s2       s1 < s2, s1 <= n-3       s1+1, s2
three-tail-increasing       s1 s2 s3    s1<s2<s3, s1 <= n-4      s1+1, s2, s3-1
three-tail-2inv             s1 s2       s2 < s1 <= n-2           s1, s2
four-tail-increasing        s1..s4      s1<..<s4, s1 <= n-5      s1+1, s2, s3-1, s4-2
four-tail-s1s3s2            s1 s2 s3    s1<s3<s2, s1 <= n-4      s1+1, s2, s3
four-tail-s3s1s2            s1 s2 s3    s3<s1<s2, s1 <= n-3      (none)
==========================  ==========  =======================  ===========

The upper bounds on ``s1`` are exactly the condition that the prefix has an
entry above the first tail value, i.e. that the tail starts with a descent.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations
from typing import Iterator, Sequence

from .core import (
    AdmissiblePair,
    InternalConsistencyError,
    InvalidInputError,
    NoCorrespondenceError,
    ParkingFunction,
    Permutation,
    ShapeDescriptor,
    ShapeVariant,
    UnsupportedShapeError,
    UnsupportedSizeError,
    admissibility_violation,
    validate_parking_function,
)
from .stats import descent_set, maj

__all__ = [
    "BS_DECODE_MAX_N",
    "is_admissible",
    "left_inversions",
    "sigma_from_inversions",
    "sigma_from_kl",
    "bs_encode",
    "bs_decode",
    "classify_shape",
    "shape_to_permutation",
    "shape_to_l",
    "shape_from_l",
    "iter_shapes",
    "MAJ_OF_VARIANT",
]

BS_DECODE_MAX_N = 8

V = ShapeVariant

MAJ_OF_VARIANT = {
    V.IDENTITY: 0,
    V.ONE_CYCLE_TAIL: 1,
    V.TWO_TAIL_INCREASING: 2,
    V.THREE_TAIL_INCREASING: 3,
    V.THREE_TAIL_2INV: 3,
    V.FOUR_TAIL_INCREASING: 4,
    V.FOUR_TAIL_S1S3S2: 4,
    V.FOUR_TAIL_S3S1S2: 4,
}


def is_admissible(k: Sequence[int], l: Sequence[int]) -> bool:
    if len(k) != len(l):
        raise InvalidInputError(f"length mismatch: k has {len(k)} entries, l has {len(l)}")
    return admissibility_violation(k, l) is None


def left_inversions(sigma: Sequence[int]) -> tuple[int, ...]:
    """``c_i = #{j < i : sigma(j) > sigma(i)}``."""
    return tuple(sum(1 for j in range(i) if sigma[j] > x) for i, x in enumerate(sigma))


def sigma_from_inversions(c: Sequence[int]) -> Permutation:
    """The unique permutation with left-inversion counts ``c``.

    Positions are inserted left to right into a list ordered by value; position
    ``i`` goes in at rank ``i - c_i`` from the bottom, leaving ``c_i`` earlier
    positions above it.
    """
    order: list[int] = []
    for i, ci in enumerate(c):
        if not 0 <= ci <= i:
            raise InvalidInputError(f"inversion count c_{i}={ci} outside [0, {i}]")
        order.insert(i - ci, i)
    sigma = [0] * len(order)
    for value, position in enumerate(order):
        sigma[position] = value
    return Permutation._trusted(tuple(sigma))


def sigma_from_kl(k: Sequence[int], l: Sequence[int]) -> Permutation:
    if len(k) != len(l):
        raise InvalidInputError(f"length mismatch: k has {len(k)} entries, l has {len(l)}")
    return sigma_from_inversions([a - b for a, b in zip(k, l)])


def bs_encode(pair: AdmissiblePair) -> ParkingFunction:
    """``f(k, l)``: the parking function ``q`` with ``q[sigma_{k,l}(i)] = k_i``."""
    if not isinstance(pair, AdmissiblePair):
        raise InvalidInputError(f"expected an AdmissiblePair, got {type(pair).__name__}")
    sigma = sigma_from_kl(pair.k, pair.l)
    q = [0] * pair.n
    for i, v in enumerate(sigma.values):
        q[v] = pair.k[i]
    return ParkingFunction._trusted(tuple(q))


def bs_decode(q, max_n: int = BS_DECODE_MAX_N) -> AdmissiblePair:
    """The unique admissible pair ``(k, l)`` with ``f(k, l) = q``.

    Search over ``sigma`` position by position: choosing ``sigma(i) = v``
    fixes ``k_i = q_v`` and, through the running inversion count, ``l_i``.
    Admissibility is checked as each position is filled.
    """
    values = q.values if isinstance(q, ParkingFunction) else tuple(q)
    if not isinstance(q, ParkingFunction) and not validate_parking_function(values):
        raise InvalidInputError(f"{list(values)} is not a parking function")
    if len(values) > max_n:
        raise UnsupportedSizeError(f"bs_decode is bounded to n <= {max_n}, got n = {len(values)}")
    return _bs_decode(values)


@lru_cache(maxsize=None)
def _bs_decode(q: tuple[int, ...]) -> AdmissiblePair:
    n = len(q)
    used = [False] * n
    sigma: list[int] = []
    k: list[int] = []
    l: list[int] = []
    found = []

    def extend(i: int) -> None:
        if i == n:
            found.append((tuple(k), tuple(l)))
            return
        for v in range(n):
            if used[v] or q[v] > i:
                continue
            ki = q[v]
            li = ki - sum(1 for w in sigma if w > v)
            if li < 0:
                continue
            if any(l[a] > li and ki < a + 1 for a in range(i)):
                continue
            used[v] = True
            sigma.append(v)
            k.append(ki)
            l.append(li)
            extend(i + 1)
            used[v] = False
            sigma.pop()
            k.pop()
            l.pop()

    extend(0)
    if len(found) != 1:
        raise InternalConsistencyError(f"{list(q)} has {len(found)} admissible preimages")
    return AdmissiblePair._trusted(*found[0])


# --- shapes ----------------------------------------------------------------

def _tail_len(variant: ShapeVariant) -> int:
    return {
        V.IDENTITY: 0,
        V.ONE_CYCLE_TAIL: 1,
        V.TWO_TAIL_INCREASING: 2,
        V.THREE_TAIL_INCREASING: 3,
        V.THREE_TAIL_2INV: 2,
        V.FOUR_TAIL_INCREASING: 4,
        V.FOUR_TAIL_S1S3S2: 3,
        V.FOUR_TAIL_S3S1S2: 3,
    }[variant]


def _params_ok(variant: ShapeVariant, s: tuple[int, ...], n: int) -> bool:
    if len(s) != _tail_len(variant) or any(not 0 <= x < n for x in s):
        return False
    if variant is V.IDENTITY:
        return True
    if variant is V.ONE_CYCLE_TAIL:
        return s[0] <= n - 2
    if variant is V.TWO_TAIL_INCREASING:
        return s[0] < s[1] and s[0] <= n - 3
    if variant is V.THREE_TAIL_INCREASING:
        return s[0] < s[1] < s[2] and s[0] <= n - 4
    if variant is V.THREE_TAIL_2INV:
        return s[1] < s[0] <= n - 2
    if variant is V.FOUR_TAIL_INCREASING:
        return s[0] < s[1] < s[2] < s[3] and s[0] <= n - 5
    if variant is V.FOUR_TAIL_S1S3S2:
        return s[0] < s[2] < s[1] and s[0] <= n - 4
    if variant is V.FOUR_TAIL_S3S1S2:
        return s[2] < s[0] < s[1] and s[0] <= n - 3
    return False


def classify_shape(sigma: Sequence[int]) -> ShapeDescriptor:
    """Match ``sigma`` against the tail forms of major index at most 4.

    The major index fixes the descent set among the forms: ``{n-m}`` for the
    increasing tails, ``{n-2, n-1}`` for three-tail-2inv and ``{n-3, n-1}``
    for the two descending four-tails.  Anything else is ``unsupported``.
    """
    s = sigma.values if isinstance(sigma, Permutation) else Permutation(tuple(sigma)).values
    n = len(s)
    m = maj(s)
    d = sorted(descent_set(s))
    variant = None
    if m == 0:
        variant = V.IDENTITY
    elif d == [n - 1]:
        variant = V.ONE_CYCLE_TAIL
    elif d == [n - 2]:
        variant = V.TWO_TAIL_INCREASING
    elif d == [n - 3]:
        variant = V.THREE_TAIL_INCREASING
    elif d == [n - 2, n - 1]:
        variant = V.THREE_TAIL_2INV
    elif d == [n - 4]:
        variant = V.FOUR_TAIL_INCREASING
    elif d == [n - 3, n - 1]:
        s1, s2, s3 = s[-3:]
        variant = V.FOUR_TAIL_S1S3S2 if s1 < s3 else V.FOUR_TAIL_S3S1S2
    if variant is None:
        return ShapeDescriptor(m, V.UNSUPPORTED, ())
    params = tuple(s[n - _tail_len(variant):]) if _tail_len(variant) else ()
    shape = ShapeDescriptor(m, variant, params)
    if not _params_ok(variant, params, n) or shape_to_permutation(shape, n).values != s:
        # the descent set pins the form, so this is a table error
        raise InternalConsistencyError(f"{list(s)} does not rebuild from {shape}")
    return shape


def shape_to_permutation(shape: ShapeDescriptor, n: int) -> Permutation:
    if shape.variant is V.UNSUPPORTED:
        raise UnsupportedShapeError("unsupported shape has no permutation")
    if not _params_ok(shape.variant, shape.params, n):
        raise InvalidInputError(f"parameters {shape.params} invalid for {shape.variant.value} at n={n}")
    tail = shape.params
    prefix = [v for v in range(n) if v not in tail]
    return Permutation._trusted(tuple(prefix) + tail)


def iter_shapes(n: int, variant: ShapeVariant) -> Iterator[ShapeDescriptor]:
    """All valid parameterisations of ``variant`` at size ``n``."""
    m = MAJ_OF_VARIANT[variant]
    size = _tail_len(variant)
    if size == 0:
        yield ShapeDescriptor(0, variant, ())
        return
    for values in permutations(range(n), size):
        if _params_ok(variant, values, n):
            yield ShapeDescriptor(m, variant, values)


def shape_to_l(shape: ShapeDescriptor, n: int) -> tuple[int, ...]:
    """The l-sequence attached to a shape (see the table in the module docstring)."""
    if shape.variant is V.FOUR_TAIL_S3S1S2:
        raise NoCorrespondenceError("four-tail-s3s1s2 shapes have no sigma -> l correspondence")
    if shape.variant is V.UNSUPPORTED:
        raise UnsupportedShapeError(f"no l-sequence for an unsupported shape (maj {shape.maj_value})")
    if not _params_ok(shape.variant, shape.params, n):
        raise InvalidInputError(f"parameters {shape.params} invalid for {shape.variant.value} at n={n}")
    s = shape.params
    tail = {
        V.IDENTITY: (),
        V.ONE_CYCLE_TAIL: lambda: (s[0] + 1,),
        V.TWO_TAIL_INCREASING: lambda: (s[0] + 1, s[1]),
        V.THREE_TAIL_INCREASING: lambda: (s[0] + 1, s[1], s[2] - 1),
        V.THREE_TAIL_2INV: lambda: (s[0], s[1]),
        V.FOUR_TAIL_INCREASING: lambda: (s[0] + 1, s[1], s[2] - 1, s[3] - 2),
        V.FOUR_TAIL_S1S3S2: lambda: (s[0] + 1, s[1], s[2]),
    }[shape.variant]
    tail = tail() if callable(tail) else tail
    return (0,) * (n - len(tail)) + tuple(tail)


def shape_from_l(l: Sequence[int]) -> ShapeDescriptor:
    """Invert :func:`shape_to_l` on the families for major index 0..3.

    Families (with ``0 <= l_i <= i`` throughout):

    * all zeros -> identity;
    * zeros, then ``l_{n-1} >= 1`` -> one-cycle-tail, ``s = l_{n-1} - 1``;
    * zeros, then ``1 <= l_{n-2} <= l_{n-1}`` -> two-tail-increasing;
    * zeros, then ``1 <= l_{n-3} <= l_{n-2} <= l_{n-1} <= n-2`` -> three-tail-increasing;
    * zeros, then ``l_{n-2} > l_{n-1} >= 0`` -> three-tail-2inv.
    """
    l = tuple(l)
    n = len(l)
    if n == 0 or any(not 0 <= x <= i for i, x in enumerate(l)):
        raise UnsupportedShapeError(f"{list(l)} is not bounded by 0 <= l_i <= i")
    nz = [i for i, x in enumerate(l) if x]
    if not nz:
        return ShapeDescriptor(0, V.IDENTITY, ())
    first = nz[0]
    if first == n - 1:
        return ShapeDescriptor(1, V.ONE_CYCLE_TAIL, (l[-1] - 1,))
    if first == n - 2:
        a, b = l[-2], l[-1]
        if a <= b:
            return ShapeDescriptor(2, V.TWO_TAIL_INCREASING, (a - 1, b))
        return ShapeDescriptor(3, V.THREE_TAIL_2INV, (a, b))
    if first == n - 3:
        a, b, c = l[-3:]
        if a <= b <= c <= n - 2:
            return ShapeDescriptor(3, V.THREE_TAIL_INCREASING, (a - 1, b, c + 1))
    raise UnsupportedShapeError(f"{list(l)} lies outside the maj <= 3 l-families")

