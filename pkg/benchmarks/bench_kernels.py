"""Compiled vs pure-Python lattice kernels.

    python benchmarks/bench_kernels.py [--repeat N]

Times box_argmin and ray_shoot on the workloads the Delaunay oracle issues
and checks that both backends return identical results.
"""

import argparse
import timeit

from degenab import kernels

CASES = [
    ("A2, radius 3", [[2, -1], [-1, 2]], [1, 1], 3, [-3, -3], [3, 3], [0, 0], [1, 2]),
    ("A3, radius 3", [[2, -1, 0], [-1, 2, -1], [0, -1, 2]], [1, 1, 1], 4, [-3] * 3, [3] * 3, [0, 0, 0], [1, 0, 1]),
    ("rank 3, radius 5", [[4, -2, 1], [-2, 4, 0], [1, 0, 2]], [1, -2, 3], 6, [-5] * 3, [5] * 3, [0, 0, 0], [1, 1, -1]),
    ("D4, radius 3", [[2, -1, 0, 0], [-1, 2, -1, -1], [0, -1, 2, 0], [0, -1, 0, 2]], [1, 1, 1, 1], 2,
     [-3] * 4, [3] * 4, [0] * 4, [1, 0, 0, 1]),
]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=20)
    args = ap.parse_args()
    print(f"backend: {kernels.BACKEND}")
    print(f"{'case':<20}{'kernel':<12}{'python ms':>12}{'compiled ms':>14}{'speedup':>10}")
    for name, gram, p, D, lo, hi, r0, normal in CASES:
        for kname, fast, slow, call_args in (
            ("box_argmin", kernels.box_argmin, kernels.python_box_argmin, (gram, p, D, lo, hi)),
            ("ray_shoot", kernels.ray_shoot, kernels.python_ray_shoot, (gram, p, D, r0, normal, lo, hi)),
        ):
            a, b = fast(*call_args), slow(*call_args)
            if _canon(a) != _canon(b):
                raise SystemExit(f"backends disagree on {name} / {kname}")
            t_slow = timeit.timeit(lambda: slow(*call_args), number=args.repeat) / args.repeat * 1e3
            t_fast = timeit.timeit(lambda: fast(*call_args), number=args.repeat) / args.repeat * 1e3
            print(f"{name:<20}{kname:<12}{t_slow:>12.3f}{t_fast:>14.3f}{t_slow / t_fast:>10.1f}x")


def _canon(res):
    if res is None:
        return None
    *head, pts = res
    return tuple(head), sorted(tuple(x) for x in pts)


if __name__ == "__main__":
    main()
