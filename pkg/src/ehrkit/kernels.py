"""Backend selection for the hot loops.

The compiled extension ``ehrkit._ckernels`` is used when it imported
successfully and the inputs are small enough for int64 arithmetic;
otherwise the pure-Python mirror in ``ehrkit._pykernels`` runs. Setting
``EHRKIT_PURE_PYTHON=1`` before import disables the extension entirely.

Every function takes ``backend=None`` (automatic), ``"python"`` or
``"cython"``; the explicit choices exist for tests and benchmarks.
"""

from __future__ import annotations

import os
from math import isqrt

from . import _pykernels

try:
    if os.environ.get("EHRKIT_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure-Python backend requested")
    import numpy as np

    from . import _ckernels
except ImportError:
    _ckernels = None

BACKEND = "python" if _ckernels is None else "cython"

_LIMIT = 1 << 62
# the compiled reachability test keeps one byte per box cell
_BITMAP_LIMIT = 1 << 27


def _use_c(backend, safe):
    if backend == "python":
        return False
    if backend == "cython":
        if _ckernels is None:
            raise RuntimeError("compiled kernels are not available")
        if not safe:
            raise OverflowError("inputs exceed the int64-safe range")
        return True
    return _ckernels is not None and safe


def _facet_scan_safe(points, d):
    if len(points) > 64:
        return False
    maxabs = max((abs(x) for p in points for x in p), default=0)
    span = 2 * maxabs
    h = isqrt((span * span * max(d - 1, 1)) ** (d - 1)) + 1
    return 2 * h * h < _LIMIT and d * h * (maxabs + 1) < _LIMIT


def facet_scan(points, d, backend=None):
    """Primitive outward facet inequalities of conv(points) (see _pykernels)."""
    if _use_c(backend, _facet_scan_safe(points, d)):
        arr = np.asarray(points, dtype=np.int64).reshape(len(points), d)
        return _ckernels.facet_scan(np.ascontiguousarray(arr), d)
    return _pykernels.facet_scan(points, d)


def _scan_safe(normals, offsets, lo, hi, m):
    n = max((abs(x) for v in normals for x in v), default=0)
    o = max((abs(x) for x in offsets), default=0)
    x = max(max(abs(v) for v in lo), max(abs(v) for v in hi))
    return (m + 1) * o + len(lo) * n * x < _LIMIT


def scan_dilate(normals, offsets, lo, hi, m, strict=False, collect=False, backend=None):
    """Count or list the lattice points of a dilate inside a box.

    Listing returns lexicographically sorted tuples.
    """
    if _use_c(backend, _scan_safe(normals, offsets, lo, hi, m)):
        d = len(lo)
        res = _ckernels.scan_dilate(
            np.asarray(normals, dtype=np.int64).reshape(len(normals), d),
            np.asarray(offsets, dtype=np.int64),
            np.asarray(lo, dtype=np.int64),
            np.asarray(hi, dtype=np.int64),
            m, strict, collect,
        )
        if collect:
            return [tuple(p) for p in res.tolist()]
        return int(res)
    return _pykernels.scan_dilate(normals, offsets, lo, hi, m, strict, collect)


def first_unreached(prev, base, target, lo, hi, backend=None):
    """First index of ``target`` not expressible as prev[i] + base[j], or -1.

    The compiled path assumes every sum lies inside the box [lo, hi].
    """
    size = 1
    for a, b in zip(lo, hi):
        size *= b - a + 1
    if _use_c(backend, size <= _BITMAP_LIMIT):
        d = len(lo)

        def arr(pts):
            return np.asarray(pts, dtype=np.int64).reshape(len(pts), d)

        return _ckernels.first_unreached(
            arr(prev), arr(base), arr(target),
            np.asarray(lo, dtype=np.int64), np.asarray(hi, dtype=np.int64),
        )
    return _pykernels.first_unreached(prev, base, target, lo, hi)
