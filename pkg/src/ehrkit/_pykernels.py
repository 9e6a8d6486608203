"""Pure-Python implementations of the hot kernels.

Semantics match ``_ckernels`` exactly; these run whenever the compiled
extension is unavailable or when integer magnitudes could overflow int64.
"""

from __future__ import annotations

from itertools import combinations, product
from math import gcd

from ._linalg import cofactor_normal


def facet_scan(points, d):
    """Supporting hyperplanes spanned by d-subsets of ``points``.

    Returns a list of ``(normal, offset)`` with primitive outward normals,
    one entry per distinct facet, in discovery order.
    """
    n = len(points)
    found = []
    tight_masks = []
    for idx in combinations(range(n), d):
        mask = 0
        for i in idx:
            mask |= 1 << i
        if any(mask & t == mask for t in tight_masks):
            continue
        base = points[idx[0]]
        rows = [tuple(a - b for a, b in zip(points[i], base)) for i in idx[1:]]
        normal = cofactor_normal(rows)
        g = 0
        for x in normal:
            g = gcd(g, x)
        if g == 0:
            continue
        normal = tuple(x // g for x in normal)
        offset = sum(a * b for a, b in zip(normal, base))
        lo = hi = False
        tight = 0
        for j, p in enumerate(points):
            s = sum(a * b for a, b in zip(normal, p)) - offset
            if s > 0:
                hi = True
            elif s < 0:
                lo = True
            else:
                tight |= 1 << j
            if lo and hi:
                break
        if lo and hi:
            continue
        if hi:
            normal = tuple(-x for x in normal)
            offset = -offset
        tight_masks.append(tight)
        found.append((normal, offset))
    return found


def _last_interval(normals, rhs, last, lo, hi):
    """Integer interval for the last coordinate given per-facet slack ``rhs``."""
    for a, r in zip(last, rhs):
        if a > 0:
            hi = min(hi, r // a)
        elif a < 0:
            lo = max(lo, -(r // -a))
        elif r < 0:
            return 1, 0
        if lo > hi:
            return 1, 0
    return lo, hi


def scan_dilate(normals, offsets, lo, hi, m, strict, collect):
    """Count (or list, lexicographically) integer x in the box with
    ``normal . x <= m * offset`` for every facet (``<`` when ``strict``)."""
    d = len(lo)
    shift = 1 if strict else 0
    bounds = [m * off - shift for off in offsets]
    last = [nv[d - 1] for nv in normals]
    heads = [nv[: d - 1] for nv in normals]
    total = 0
    pts = [] if collect else None
    ranges = [range(lo[i], hi[i] + 1) for i in range(d - 1)]
    for prefix in product(*ranges):
        rhs = [b - sum(a * x for a, x in zip(h, prefix)) for b, h in zip(bounds, heads)]
        a, b = _last_interval(normals, rhs, last, lo[d - 1], hi[d - 1])
        if a > b:
            continue
        total += b - a + 1
        if collect:
            pts.extend(prefix + (x,) for x in range(a, b + 1))
    return pts if collect else total


def first_unreached(prev, base, target, lo, hi):
    """Index of the first point of ``target`` that is not ``p + q`` for
    p in ``prev`` and q in ``base``; -1 when every target point is reached."""
    reach = {tuple(a + b for a, b in zip(p, q)) for p in prev for q in base}
    for i, t in enumerate(target):
        if t not in reach:
            return i
    return -1
