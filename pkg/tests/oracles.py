"""Brute-force oracles, written straight from the definitions.

Nothing here imports the package; tests compare the package against these.
"""

from itertools import permutations, product

INF = float("inf")


def is_pf_bruteforce(p):
    """Exists tau in S_n with p_i <= tau(i) for all i."""
    n = len(p)
    return any(all(x <= t for x, t in zip(p, tau)) for tau in permutations(range(n)))


def descents(s):
    return [t for t in range(1, len(s)) if s[t - 1] > s[t]]


def maj(s):
    n = len(s)
    return sum(n - t for t in descents(s))


def u_bruteforce(s):
    """u_i: least j <= i whose segment s(j-1..i), s(-1)=+inf, has no descent,
    or exactly one descent with s(j-1) > s(i)."""
    n = len(s)
    out = []
    for i in range(n):
        for j in range(i + 1):
            seg = [INF if j == 0 else s[j - 1]] + list(s[j:i + 1])
            d = sum(1 for a, b in zip(seg, seg[1:]) if a > b)
            if d == 0 or (d == 1 and seg[0] > s[i]):
                out.append(j)
                break
    return tuple(out)


def hl_pairs_bruteforce(n):
    """Filter every (sigma, k) with 0 <= k_i <= i by u_i <= k_i."""
    for s in permutations(range(n)):
        u = u_bruteforce(s)
        for k in product(*(range(i + 1) for i in range(n))):
            if all(ui <= ki for ui, ki in zip(u, k)):
                yield s, k


def admissible(k, l):
    n = len(k)
    if not all(0 <= l[i] <= k[i] <= i for i in range(n)):
        return False
    return all(not (l[i] > l[j] and k[j] < i + 1) for i in range(n) for j in range(i + 1, n))


def admissible_pairs_bruteforce(n):
    for k in product(*(range(i + 1) for i in range(n))):
        for l in product(*(range(x + 1) for x in k)):
            if admissible(k, l):
                yield k, l


def left_inversions(s):
    return tuple(sum(1 for j in range(i) if s[j] > s[i]) for i in range(len(s)))


def sigma_by_search(c):
    """The permutation with left-inversion counts c, by scanning S_n."""
    hits = [s for s in permutations(range(len(c))) if left_inversions(s) == tuple(c)]
    assert len(hits) == 1
    return hits[0]


def place(sigma, k):
    """q with q[sigma(i)] = k_i."""
    q = [0] * len(sigma)
    for i, v in enumerate(sigma):
        q[v] = k[i]
    return tuple(q)


def parking_functions_bruteforce(n):
    """Filter {0..n-1}^n by the sorted test s_i <= i."""
    return [p for p in product(range(n), repeat=n) if all(x <= i for i, x in enumerate(sorted(p)))]


def r_polynomial_bruteforce(n):
    top = n * (n - 1) // 2
    out = {}
    for s, k in hl_pairs_bruteforce(n):
        key = (maj(s), top - sum(k))
        out[key] = out.get(key, 0) + 1
    return out
