"""Compare the numba and numpy Hedge kernels.

    python benchmarks/bench_hedge.py [--n 40] [--steps 20000] [--repeat 5]

Both paths are timed on identical inputs after a warm-up call (which
absorbs numba compilation), and their outputs are checked to agree.
"""

import argparse
import time

import numpy as np

from symnash.hedge import _kernels


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=40)
    ap.add_argument("--steps", type=int, default=20000)
    ap.add_argument("--grid", type=int, default=4000, help="alphas per RE curve")
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    C = rng.integers(-5, 6, size=(args.n, args.n)).astype(np.float64)
    x0 = rng.dirichlet(np.ones(args.n))
    ref = np.full(args.n, 1.0 / args.n)
    grid = np.linspace(0.0, 8.0, args.grid)
    lx = np.log(x0)

    if _kernels.numba_kernels is None:
        print("numba not importable; only the numpy path is available")
        return
    rows = []
    for K in (_kernels.numpy_kernels, _kernels.numba_kernels):
        K.trajectory(C, lx, 0.1, 2, ref)  # warm-up / JIT compile
        K.re_curve(C, lx, ref, grid[:2])
        t_traj = best_of(lambda: K.trajectory(C, lx, 0.1, args.steps, ref), args.repeat)
        t_curve = best_of(lambda: K.re_curve(C, lx, ref, grid), args.repeat)
        rows.append((K.name, t_traj, t_curve))

    a = _kernels.numpy_kernels.trajectory(C, lx, 0.1, args.steps, ref)[1]
    b = _kernels.numba_kernels.trajectory(C, lx, 0.1, args.steps, ref)[1]
    print(f"n={args.n} steps={args.steps} grid={args.grid}; max |RE numpy - RE numba| = "
          f"{np.abs(a - b).max():.2e}")
    print(f"{'kernels':8s} {'trajectory [s]':>15s} {'RE curve [s]':>13s}")
    for name, t1, t2 in rows:
        print(f"{name:8s} {t1:15.4f} {t2:13.4f}")
    print(f"speedup  {rows[0][1] / rows[1][1]:15.1f}x {rows[0][2] / rows[1][2]:12.1f}x")


if __name__ == "__main__":
    main()
