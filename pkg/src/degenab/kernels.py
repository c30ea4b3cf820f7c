"""Kernel selection: the compiled extension when importable, else pure Python.

Set ``DEGENAB_PURE=1`` to force the Python implementations.
"""

from __future__ import annotations

import os

from . import _kernels_py

_LIMIT = 2**62

try:
    if os.environ.get("DEGENAB_PURE") == "1":
        raise ImportError("pure mode requested")
    from . import _kernels as _compiled
except ImportError:
    _compiled = None

BACKEND = "compiled" if _compiled is not None else "python"


def _box_fits(gram, p, D, lo, hi) -> bool:
    g = len(gram)
    m = max([abs(v) for row in gram for v in row] + [1])
    span = max([abs(a) for a in lo] + [abs(b) for b in hi] + [1])
    y = abs(D) * span + max([abs(v) for v in p] + [1])
    return g <= 8 and g * g * m * y * y < _LIMIT


def _ray_fits(gram, p, D, r0, normal, lo, hi) -> bool:
    g = len(gram)
    m = max([abs(v) for row in gram for v in row] + [1])
    span = max([abs(a) for a in lo] + [abs(b) for b in hi] + [abs(v) for v in r0] + [1])
    pm = max([abs(v) for v in p] + [1])
    nm = max([abs(v) for v in normal] + [1])
    num = abs(D) * 2 * g * g * m * span * span + 4 * g * g * m * pm * span
    den = 4 * abs(D) * g * nm * span
    return g <= 8 and num * den < _LIMIT


def box_argmin(gram, p, D, lo, hi):
    """(minimum, minimizers) of (D x - p)^T G (D x - p) over lo <= x <= hi."""
    if _compiled is not None and _box_fits(gram, p, D, lo, hi):
        return _compiled.box_argmin(gram, p, D, lo, hi)
    return _kernels_py.box_argmin(gram, p, D, lo, hi)


def ray_shoot(gram, p, D, r0, normal, lo, hi):
    if _compiled is not None and _ray_fits(gram, p, D, r0, normal, lo, hi):
        return _compiled.ray_shoot(gram, p, D, r0, normal, lo, hi)
    return _kernels_py.ray_shoot(gram, p, D, r0, normal, lo, hi)


def python_box_argmin(gram, p, D, lo, hi):
    return _kernels_py.box_argmin(gram, p, D, lo, hi)


def python_ray_shoot(gram, p, D, r0, normal, lo, hi):
    return _kernels_py.ray_shoot(gram, p, D, r0, normal, lo, hi)
