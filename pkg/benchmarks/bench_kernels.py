"""Compare the compiled and pure-Python kernels.

    python benchmarks/bench_kernels.py [--n 8] [--repeat 3]

Times ``rpoly_block`` over all of S_n and ``u_vector`` over a sample of
permutations, per backend, and checks that both backends agree.
"""

import argparse
import random
import timeit
from math import factorial

import numpy as np

from hlpark import _backend


def bench(n: int, repeat: int) -> None:
    backends = {"python": _backend.python_kernels}
    if _backend.compiled_kernels is not None:
        backends["cython"] = _backend.compiled_kernels
    else:
        print("compiled kernels not built; timing the fallback only")

    total = factorial(n)
    rng = random.Random(0)
    sample = [tuple(rng.sample(range(12), 12)) for _ in range(2000)]
    results = {}
    print(f"{'backend':<8} {'rpoly_block n=' + str(n):>18} {'u_vector x2000 (n=12)':>24}")
    for name, mod in backends.items():
        mod.rpoly_block(n, 0, total)  # warm caches
        t_block = min(timeit.repeat(lambda: mod.rpoly_block(n, 0, total), number=1, repeat=repeat))
        t_u = min(timeit.repeat(lambda: [mod.u_vector(s) for s in sample], number=1, repeat=repeat))
        results[name] = mod.rpoly_block(n, 0, total)
        print(f"{name:<8} {t_block:>17.4f}s {t_u:>23.4f}s")
    if len(results) == 2:
        same = np.array_equal(results["python"], results["cython"])
        print(f"backends agree: {same}")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=8)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    bench(args.n, args.repeat)


if __name__ == "__main__":
    main()
