"""Compare the compiled and pure-Python elimination kernels.

    python3 benchmarks/bench_kernels.py [--sizes 4 8 16] [--repeat 5]

Times Bareiss determinants and fraction-free RREF on random integer
matrices, then one end-to-end computation (dual basis of a rank 3 list)
under each backend in a fresh interpreter.
"""

import argparse
import os
import random
import subprocess
import sys
import timeit

from zonotopal import _pykernels

try:
    from zonotopal import _ckernels
except ImportError:
    _ckernels = None

END_TO_END = """
from zonotopal import VectorList, bcyr_basis, kernels
X = VectorList([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 2, 3), (2, -1, 5), (1, 1, -2), (3, 1, 1)])
bcyr_basis(X)
print(kernels.BACKEND)
"""


def matrices(n, count, seed):
    rng = random.Random(seed)
    return [[[rng.randint(-20, 20) for _ in range(n)] for _ in range(n)] for _ in range(count)]


def bench(fn, mats, repeat):
    return min(timeit.repeat(lambda: [fn(m) for m in mats], number=1, repeat=repeat)) / len(mats)


def end_to_end(pure):
    env = dict(os.environ)
    env.pop("ZONOTOPAL_PURE_PYTHON", None)
    if pure:
        env["ZONOTOPAL_PURE_PYTHON"] = "1"
    t = timeit.default_timer()
    out = subprocess.run([sys.executable, "-c", END_TO_END], env=env, capture_output=True, text=True,
                         check=True)
    return out.stdout.strip(), timeit.default_timer() - t


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[4, 8, 16, 32])
    ap.add_argument("--count", type=int, default=50)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--skip-end-to-end", action="store_true")
    ns = ap.parse_args()

    backends = [("python", _pykernels)] + ([("cython", _ckernels)] if _ckernels else [])
    if _ckernels is None:
        print("compiled kernels not built; only the fallback is timed")
    print(f"{'kernel':<8} {'n':>4} " + " ".join(f"{name:>12}" for name, _ in backends) + "   speedup")
    for n in ns.sizes:
        mats = matrices(n, ns.count, n)
        for label, attr, call in (("det", "bareiss_det", lambda f: f),
                                  ("rref", "ff_rref", lambda f: (lambda m: f(m, len(m[0]))))):
            times = [bench(call(getattr(mod, attr)), mats, ns.repeat) for _, mod in backends]
            speed = f"{times[0] / times[1]:8.1f}x" if len(times) > 1 else ""
            print(f"{label:<8} {n:>4} " + " ".join(f"{t * 1e6:10.1f}us" for t in times) + "  " + speed)

    if not ns.skip_end_to_end:
        print()
        for pure in (True, False):
            backend, secs = end_to_end(pure)
            print(f"end-to-end dual basis, backend {backend:<6}: {secs:.2f}s")


if __name__ == "__main__":
    main()
