"""Bijection between HL-pairs and parking functions.

Encoding places ``k_i`` at position ``sigma(i)``.

Decoding (``hl_decode``) builds sigma left to right.  ``u_i`` depends only on
``sigma(0..i)``, and on a simple local test: if position ``i`` lies in the
increasing run starting at ``s`` and the previous run starts at ``s0``, then
``u_i <= a <= i`` holds for ``a = q[sigma(i)]`` exactly when ``a <= i`` and
either ``i`` is in the first run, ``a > s``, or ``s0 < a <= s`` with
``sigma(a-1) > sigma(i)``.  A depth-first search over the unused values, with
a lookahead that rejects states where some unused value can no longer be
placed, finds the unique pair.

``hl_decode_with_strategy`` is the swap-replay construction: bubble-sort q
by adjacent swaps at descents, start from ``(identity, sorted q)`` and undo
the swaps one at a time.  Undoing the swap at ``t`` with
``i = sigma^-1(t-1)``, ``j = sigma^-1(t)``:

* ``j >= i + 2``: exchange the values ``t-1`` and ``t`` in sigma;
* ``j == i + 1`` and ``k_j <= i``: exchange ``k_i`` and ``k_{i+1}``;
* ``j == i + 1`` and ``k_j == i + 1``: exchange the values in sigma;
* ``j < i``: cannot happen.

The third rule can change ``u_a`` for ``a > i + 1``: from ``(identity,
(0,1,0))`` at ``t = 1`` it yields ``((1,0,2), (0,1,0))``, but
``u((1,0,2)) = (0,1,2)``.  The replay therefore raises
``InternalConsistencyError`` whenever its result is not an HL-pair, and
``hl_decode`` does not use it.
"""

from __future__ import annotations

import os
import random
from typing import Sequence

from .core import (
    HLPair,
    InternalConsistencyError,
    InvalidInputError,
    ParkingFunction,
    validate_parking_function,
)
from .stats import is_hl_pair

__all__ = ["STRATEGIES", "DEBUG", "hl_encode", "hl_decode", "hl_decode_with_strategy"]

STRATEGIES = ("leftmost", "rightmost", "random")

# per-step HL-pair checks during decode; also switchable per call
DEBUG = os.environ.get("HLPARK_DEBUG", "") not in ("", "0")


def hl_encode(pair: HLPair) -> ParkingFunction:
    """Return ``p`` with ``p[sigma(i)] = k_i``."""
    if not isinstance(pair, HLPair):
        raise InvalidInputError(f"expected an HLPair, got {type(pair).__name__}")
    return ParkingFunction._trusted(_encode(pair.sigma.values, pair.k))


def _encode(sigma: Sequence[int], k: Sequence[int]) -> tuple[int, ...]:
    p = [0] * len(sigma)
    for i, v in enumerate(sigma):
        p[v] = k[i]
    return tuple(p)


def _coerce_pf(q) -> tuple[int, ...]:
    if isinstance(q, ParkingFunction):
        return q.values
    values = tuple(q)
    if not validate_parking_function(values):
        raise InvalidInputError(f"{list(values)} is not a parking function")
    return values


def _sort_swaps(q: list[int], strategy: str, seed: int | None) -> list[int]:
    """Sort ``q`` in place by descent swaps; return the swap positions in order."""
    n = len(q)
    swaps = []
    if strategy == "leftmost":
        # a swap at the leftmost descent t can only create a new one at t-1
        t = 1
        while t < n:
            if q[t - 1] > q[t]:
                q[t - 1], q[t] = q[t], q[t - 1]
                swaps.append(t)
                t = max(t - 1, 1)
            else:
                t += 1
    elif strategy == "rightmost":
        t = n - 1
        while t >= 1:
            if q[t - 1] > q[t]:
                q[t - 1], q[t] = q[t], q[t - 1]
                swaps.append(t)
                t = min(t + 1, n - 1)
            else:
                t -= 1
    elif strategy == "random":
        rng = random.Random(seed)
        descents = [t for t in range(1, n) if q[t - 1] > q[t]]
        while descents:
            t = rng.choice(descents)
            q[t - 1], q[t] = q[t], q[t - 1]
            swaps.append(t)
            descents = [s for s in range(1, n) if q[s - 1] > q[s]]
    else:
        raise InvalidInputError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")
    return swaps


def hl_decode_with_strategy(
    q, strategy: str = "leftmost", seed: int | None = 0, check: bool | None = None
) -> HLPair:
    """Decode ``q`` by swap replay, choosing descents by ``strategy``.

    With ``check`` (default: ``HLPARK_DEBUG``) each intermediate pair is
    verified to be an HL-pair encoding the corresponding intermediate parking
    function; otherwise only the result is checked.  Either way a failure
    raises ``InternalConsistencyError`` (see the module docstring).
    """
    values = _coerce_pf(q)
    if check is None:
        check = DEBUG
    n = len(values)
    work = list(values)
    swaps = _sort_swaps(work, strategy, seed)

    sigma = list(range(n))
    pos = list(range(n))  # inverse of sigma
    k = work  # sorted q; (identity, sorted q) is the base pair
    current = list(work) if check else None

    for t in reversed(swaps):
        i, j = pos[t - 1], pos[t]
        if j >= i + 2 or (j == i + 1 and k[j] == i + 1):
            sigma[i], sigma[j] = t, t - 1
            pos[t - 1], pos[t] = j, i
        elif j == i + 1:
            k[i], k[j] = k[j], k[i]
        else:
            raise InternalConsistencyError(
                f"decoding {list(values)}: sigma^-1({t}) = {j} < sigma^-1({t - 1}) = {i}"
            )
        if check:
            current[t - 1], current[t] = current[t], current[t - 1]
            if not is_hl_pair(sigma, k) or list(_encode(sigma, k)) != current:
                raise InternalConsistencyError(
                    f"decoding {list(values)}: step at t={t} left ({sigma}, {k}) invalid"
                )

    result = HLPair._trusted(tuple(sigma), tuple(k))
    if not check and not is_hl_pair(result.sigma.values, result.k):
        raise InternalConsistencyError(
            f"swap replay of {list(values)} ({strategy}) ended at {list(sigma)}, {list(k)}, "
            "which is not an HL-pair"
        )
    return result


def _fits(q, sigma, x: int, i: int, s0: int, s: int) -> bool:
    """``u_i <= q[x] <= i`` for ``x`` at position ``i`` in the run starting at ``s``."""
    a = q[x]
    if a > i:
        return False
    if s == 0 or a > s:
        return True
    return a > s0 and sigma[a - 1] > x


def _viable(q, sigma, used, s0: int, s: int) -> bool:
    # an unused x with q[x] <= s can only go later in the current run
    if s == 0:
        return True
    last = sigma[-1]
    for x, a in enumerate(q):
        if not used[x] and a <= s and (x < last or a <= s0 or sigma[a - 1] < x):
            return False
    return True


def _search(q: tuple[int, ...], limit: int) -> list[tuple[int, ...]]:
    """Up to ``limit`` permutations sigma with ``(sigma, q o sigma)`` an HL-pair."""
    n = len(q)
    used = [False] * n
    sigma: list[int] = []
    bounds = [(0, 0)]  # (previous run start, current run start) per depth
    nxt = [0]  # next candidate value per depth
    found = []
    while nxt:
        i = len(sigma)
        if i == n:
            found.append(tuple(sigma))
            nxt.pop()
            used[sigma.pop()] = False
            bounds.pop()
            if len(found) >= limit:
                break
            continue
        s0, s = bounds[-1]
        x = nxt[-1]
        while x < n:
            if not used[x] and q[x] <= i:
                b = (s, i) if i and sigma[-1] > x else (s0, s)
                if _fits(q, sigma, x, i, *b):
                    sigma.append(x)
                    used[x] = True
                    if _viable(q, sigma, used, *b):
                        break
                    sigma.pop()
                    used[x] = False
            x += 1
        if x < n:
            nxt[-1] = x + 1
            nxt.append(0)
            bounds.append(b)
        else:
            nxt.pop()
            if sigma:
                used[sigma.pop()] = False
                bounds.pop()
    return found


def hl_decode(q, check: bool | None = None) -> HLPair:
    """Return the unique HL-pair encoding the parking function ``q``.

    With ``check`` (default: ``HLPARK_DEBUG``) the result is re-validated.
    """
    values = _coerce_pf(q)
    if check is None:
        check = DEBUG
    found = _search(values, 1)
    if not found:
        raise InternalConsistencyError(f"no HL-pair encodes {list(values)}")
    sigma = found[0]
    pair = HLPair._trusted(sigma, tuple(values[v] for v in sigma))
    if check and (not is_hl_pair(sigma, pair.k) or _encode(sigma, pair.k) != values):
        raise InternalConsistencyError(f"search for {list(values)} returned an invalid pair")
    return pair
