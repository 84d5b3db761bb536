"""Permutation statistics: descent set, major index and the u-vector.

Descents are positions ``t`` in ``1..n-1`` with ``sigma[t-1] > sigma[t]``.
The virtual left value ``sigma(-1) = +inf`` takes part only in the u-vector
segment test; counting ``t = 0`` as a descent would give the identity a
nonzero major index, while every small-maj shape family starts from
``maj(identity) == 0``.
"""

from __future__ import annotations

from math import prod
from typing import Sequence

from ._backend import kernels, python_kernels
from .core import InvalidInputError, Permutation

__all__ = ["descent_set", "maj", "u_vector", "is_hl_pair", "hl_pair_count"]


def _values(sigma) -> tuple[int, ...]:
    if isinstance(sigma, Permutation):
        return sigma.values
    return Permutation(tuple(sigma)).values


def descent_set(sigma: Sequence[int]) -> frozenset[int]:
    s = _values(sigma)
    return frozenset(t for t in range(1, len(s)) if s[t - 1] > s[t])


def maj(sigma: Sequence[int]) -> int:
    """Sum of ``n - t`` over the descents ``t`` of ``sigma``."""
    s = _values(sigma)
    n = len(s)
    return sum(n - t for t in range(1, n) if s[t - 1] > s[t])


def u_vector(sigma: Sequence[int]) -> tuple[int, ...]:
    """The Haglund-Loehr vector ``u(sigma)``.

    ``u_i`` is the least ``j <= i`` such that ``sigma[j-1..i]`` (with
    ``sigma[-1] = +inf``) has no descent, or exactly one descent and
    ``sigma[j-1] > sigma[i]``.  The result is nondecreasing with
    ``0 <= u_i <= i``.
    """
    s = _values(sigma)
    # the compiled scan uses fixed-size buffers
    impl = kernels if len(s) <= 20 else python_kernels
    return impl.u_vector(s)


def is_hl_pair(sigma: Sequence[int], k: Sequence[int]) -> bool:
    """True iff ``u_i(sigma) <= k_i <= i`` for every ``i``."""
    s = _values(sigma)
    if len(k) != len(s):
        raise InvalidInputError(f"length mismatch: sigma has {len(s)} entries, k has {len(k)}")
    return all(ui <= ki <= i for i, (ui, ki) in enumerate(zip(u_vector(s), k)))


def hl_pair_count(sigma: Sequence[int]) -> int:
    """Number of ``k`` making ``(sigma, k)`` an HL-pair: ``prod_i (i - u_i + 1)``."""
    return prod(i - ui + 1 for i, ui in enumerate(u_vector(sigma)))
