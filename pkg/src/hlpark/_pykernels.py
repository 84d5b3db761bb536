"""Pure-Python kernels; same API as the compiled ``_ckernels`` module."""

from __future__ import annotations

from functools import lru_cache
from itertools import islice, permutations
from math import factorial

import numpy as np

INT64_MAX = 2**63 - 1


def u_vector(sigma) -> tuple[int, ...]:
    """Minimal left endpoints ``u_i`` by one left-to-right scan.

    Keeps the last descent ``d <= i`` and the one before it ``d0``.  With no
    descent in ``1..i`` the segment from ``j = 0`` (virtual ``+inf`` on the
    left) qualifies.  Otherwise the smallest candidate is the first position
    ``p`` of the increasing run ``sigma[d0:d]`` with ``sigma[p] > sigma[i]``
    (giving ``j = p + 1``), else the descent-free segment ``j = d + 1``.
    """
    n = len(sigma)
    u = [0] * n
    last = prev = 0
    for i in range(n):
        x = sigma[i]
        if i and sigma[i - 1] > x:
            prev, last = last, i
        if last == 0:
            continue
        j = last + 1
        for p in range(prev, last):
            if sigma[p] > x:
                j = p + 1
                break
        u[i] = j
    return tuple(u)


def maj(sigma) -> int:
    n = len(sigma)
    return sum(n - t for t in range(1, n) if sigma[t - 1] > sigma[t])


@lru_cache(maxsize=None)
def _t_product(sizes: tuple[int, ...]) -> tuple[int, ...]:
    """Coefficients of prod_m (1 + t + ... + t^(m-1)) over ``sizes``."""
    if not sizes:
        return (1,)
    rest = _t_product(sizes[1:])
    m = sizes[0]
    if m == 1:
        return rest
    out = [0] * (len(rest) + m - 1)
    window = 0
    for d in range(len(out)):
        if d < len(rest):
            window += rest[d]
        if d - m >= 0:
            window -= rest[d - m]
        out[d] = window
    return tuple(out)


def _unrank(n: int, rank: int) -> tuple[int, ...]:
    pool = list(range(n))
    out = []
    for i in range(n, 0, -1):
        f = factorial(i - 1)
        q, rank = divmod(rank, f)
        out.append(pool.pop(q))
    return tuple(out)


def _perms_from(n: int, start: int, stop: int):
    # itertools.permutations is lexicographic but cannot start mid-sequence
    it = permutations(range(n)) if start == 0 else _lex_from(_unrank(n, start))
    return islice(it, stop - start)


def _lex_from(a: tuple[int, ...]):
    a = list(a)
    n = len(a)
    while True:
        yield tuple(a)
        i = n - 2
        while i >= 0 and a[i] > a[i + 1]:
            i -= 1
        if i < 0:
            return
        j = n - 1
        while a[j] < a[i]:
            j -= 1
        a[i], a[j] = a[j], a[i]
        a[i + 1:] = reversed(a[i + 1:])


def rpoly_block(n: int, start: int, stop: int) -> np.ndarray:
    """Coefficient matrix ``[maj][t-degree]`` summed over lex ranks ``[start, stop)``.

    For fixed sigma the k-sum factorises into prod_i (1 + t + ... + t^(i-u_i)).
    """
    top = n * (n - 1) // 2
    acc = [[0] * (top + 1) for _ in range(top + 1)]
    counts: dict[tuple[int, tuple[int, ...]], int] = {}
    for sigma in _perms_from(n, start, stop):
        u = u_vector(sigma)
        key = (maj(sigma), tuple(sorted(i - ui + 1 for i, ui in enumerate(u) if i > ui)))
        counts[key] = counts.get(key, 0) + 1
    for (m, sizes), mult in counts.items():
        row = acc[m]
        for b, c in enumerate(_t_product(sizes)):
            row[b] += mult * c
    if any(c > INT64_MAX for row in acc for c in row):
        raise OverflowError("coefficient exceeds signed 64-bit range")
    return np.array(acc, dtype=np.int64)
