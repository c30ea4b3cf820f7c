"""Pure-Python reference implementations of the lattice kernels."""

from __future__ import annotations

import itertools


def box_argmin(gram, p, D, lo, hi):
    """Minimum of (D x - p)^T G (D x - p) over the integer box, and all minimizers."""
    g = len(gram)
    best = None
    pts = []
    for x in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        y = [D * x[i] - p[i] for i in range(g)]
        v = 0
        for i in range(g):
            yi = y[i]
            if yi:
                row = gram[i]
                v += yi * sum(row[j] * y[j] for j in range(g))
        if best is None or v < best:
            best = v
            pts = [x]
        elif v == best:
            pts.append(x)
    return best, pts


def ray_shoot(gram, p, D, r0, normal, lo, hi):
    """First tie along an outward ray.

    For x in the box with b(x) = normal . (x - r0) > 0, minimizes the ratio
    gap(x) / (2 D b(x)) where gap(x) = D (x^T G x - r0^T G r0) - 2 p^T G (x - r0).
    Returns (numerator, denominator, minimizers) or None if no x qualifies.
    """
    g = len(gram)
    gp = [sum(gram[i][j] * p[j] for j in range(g)) for i in range(g)]
    q0 = sum(r0[i] * gram[i][j] * r0[j] for i in range(g) for j in range(g))
    l0 = sum(gp[i] * r0[i] for i in range(g))
    bn = bd = None
    pts = []
    for x in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        b = sum(normal[i] * (x[i] - r0[i]) for i in range(g))
        if b <= 0:
            continue
        qx = sum(x[i] * gram[i][j] * x[j] for i in range(g) for j in range(g))
        num = D * (qx - q0) - 2 * (sum(gp[i] * x[i] for i in range(g)) - l0)
        den = 2 * D * b
        if bn is None or num * bd < bn * den:
            bn, bd = num, den
            pts = [x]
        elif num * bd == bn * den:
            pts.append(x)
    if bn is None:
        return None
    return bn, bd, pts
