"""Compare the numba and pure-numpy kernel backends.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--seed 0]

Each kernel is checked for agreement between the backends, warmed up once
(numba compiles on first call) and then timed as the best of ``--repeat``
runs.  Without numba only the numpy column is printed.
"""

import argparse
import timeit

import numpy as np

from paragrade import kernels
from paragrade.oscillator import get_assignment, single_particle_sign


def _cases(rng):
    n = 5000
    mats = [rng.standard_normal((n, 4, 4)) for _ in range(3)]
    signs = [rng.choice([-1.0, 1.0], size=n) for _ in range(3)]
    sign = single_particle_sign(get_assignment("paraboson"), 7)  # 28 single-particle states
    points = rng.integers(-1, 2, size=(200_000, 6)).astype(float)
    return {
        "jacobi_residuals (5000 triples)": lambda b: kernels.jacobi_residuals(*mats, *signs, backend=b),
        "pair_basis (28 states)": lambda b: kernels.pair_basis(sign, backend=b),
        "graded_swap (28 states)": lambda b: kernels.graded_swap(sign, backend=b),
        "lie_constraint_values (2e5 pts)": lambda b: kernels.lie_constraint_values(points, backend=b),
    }


def _same(x, y) -> bool:
    if isinstance(x, tuple):
        return all(_same(a, b) for a, b in zip(x, y))
    return np.allclose(x, y, rtol=1e-12, atol=1e-12)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    backends = ["numpy"] + (["numba"] if kernels.HAVE_NUMBA else [])
    print(f"seed {args.seed}; backends: {', '.join(backends)}")
    print(f"{'kernel':34s} " + " ".join(f"{b:>12s}" for b in backends) + "   speedup  agree")
    for name, fn in _cases(np.random.default_rng(args.seed)).items():
        outputs = {b: fn(b) for b in backends}  # warm-up and agreement check
        times = {b: min(timeit.repeat(lambda: fn(b), number=1, repeat=args.repeat)) for b in backends}
        row = f"{name:34s} " + " ".join(f"{times[b] * 1e3:10.3f}ms" for b in backends)
        if "numba" in times:
            agree = _same(outputs["numpy"], outputs["numba"])
            row += f"   {times['numpy'] / times['numba']:6.2f}x  {agree}"
        print(row)


if __name__ == "__main__":
    main()
