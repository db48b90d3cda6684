"""Compare the numba and pure-numpy kernel backends.

    python3 benchmarks/bench_kernels.py [--repeat N]

Both backend modules are imported directly, so the ``ATIYAH_NO_NUMBA`` flag
does not matter here. The numba functions are called once before timing to
exclude compilation.
"""
import argparse
import time

import numpy as np

from atiyah_config.kernels import _numba, _numpy


def timed(fn, args, repeat):
    best = np.inf
    for _ in range(3):
        t0 = time.perf_counter()
        for a in args[:repeat]:
            fn(*a)
        best = min(best, time.perf_counter() - t0)
    return best / repeat


def cases(rng, repeat):
    def herm(n):
        a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        return a + a.conj().T

    cplx = lambda n: rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))  # noqa: E731
    out = []
    for n in (4, 8):
        out.append((f"det {n}x{n}", "det", [(cplx(n),) for _ in range(repeat)]))
        out.append((f"permanent {n}x{n}", "permanent", [(cplx(n),) for _ in range(repeat)]))
        out.append((f"jacobi {n}x{n}", "jacobi_eigh", [(herm(n), 1e-14, 100) for _ in range(repeat)]))
        out.append((f"config_matrices n={n}", "config_matrices", [(rng.normal(size=(n, 3)),) for _ in range(repeat)]))
    return out


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()
    rng = np.random.default_rng(args.seed)
    print(f"{'kernel':<24}{'numpy (us)':>12}{'numba (us)':>12}{'speedup':>10}")
    for label, name, inputs in cases(rng, args.repeat):
        getattr(_numba, name)(*inputs[0])  # compile
        t_np = timed(getattr(_numpy, name), inputs, args.repeat)
        t_nb = timed(getattr(_numba, name), inputs, args.repeat)
        print(f"{label:<24}{t_np * 1e6:>12.2f}{t_nb * 1e6:>12.2f}{t_np / t_nb:>9.1f}x")


if __name__ == "__main__":
    main()
