"""Compare the numba and numpy bracket-contraction kernels.

    python3 benchmarks/bench_bracket.py [--repeat 5]
"""

import argparse
import time

import numpy as np

from ktconway import _kernels
from ktconway.families import FamilySpec, generate

CASES = [
    FamilySpec.conway(2, -1),
    FamilySpec.kt(5, 3),
    FamilySpec.conway(-5, -3),
    FamilySpec.torus2(29),
    FamilySpec.pretzel4(7, -6, -7, 6),
]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not _kernels.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    # compile outside the timed region
    _kernels.contract([c.arcs for c in generate(CASES[0]).crossings], backend="numba")

    print(f"{'diagram':<22}{'crossings':>10}{'numpy ms':>12}{'numba ms':>12}{'speedup':>10}")
    for spec in CASES:
        quads = [c.arcs for c in generate(spec).crossings]
        t_np, (a, _) = best_of(lambda: _kernels.contract(quads, backend="numpy"), args.repeat)
        t_nb, (b, _) = best_of(lambda: _kernels.contract(quads, backend="numba"), args.repeat)
        assert np.array_equal(np.asarray(a, dtype=object), np.asarray(b, dtype=object))
        print(f"{spec.label():<22}{len(quads):>10}{t_np * 1e3:>12.2f}{t_nb * 1e3:>12.2f}{t_np / t_nb:>9.1f}x")


if __name__ == "__main__":
    main()
