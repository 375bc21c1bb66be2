"""Time the compiled Bessel kernels against the pure-Python fallback.

Run from the repository root after building the extension::

    python benchmarks/bench_kernels.py --repeat 5
"""

import argparse
import timeit

import numpy as np

from spatialsec.montecarlo import build_geometry
from spatialsec.numerics import _kernels_py

try:
    from spatialsec.numerics import _kernels as _kernels_c
except ImportError:
    _kernels_c = None


def cases():
    x = np.linspace(0.0, 60.0, 20_000)
    yield "bessel_j_array m=0, 20k points", lambda mod: mod.bessel_j_array(0, x)
    yield "bessel_j_array m=50, 20k points", lambda mod: mod.bessel_j_array(50, x)
    for n in (50, 100, 200):
        pos = build_geometry("ula", n, 1.0).positions
        yield f"j0_kernel_matrix ULA n={n}", lambda mod, pos=pos: mod.j0_kernel_matrix(pos)


def best_time(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3, help="timing repeats per case (best is kept)")
    args = parser.parse_args(argv)

    if _kernels_c is None:
        print("compiled extension not built; only the Python backend is timed")
    print(f"{'case':<34} {'python [s]':>12} {'cython [s]':>12} {'speedup':>9}")
    for label, run in cases():
        t_py = best_time(lambda: run(_kernels_py), args.repeat)
        if _kernels_c is None:
            print(f"{label:<34} {t_py:12.4f} {'-':>12} {'-':>9}")
            continue
        t_c = best_time(lambda: run(_kernels_c), args.repeat)
        assert np.allclose(run(_kernels_c), run(_kernels_py), rtol=0, atol=1e-13)
        print(f"{label:<34} {t_py:12.4f} {t_c:12.4f} {t_py / t_c:8.1f}x")


if __name__ == "__main__":
    main()
