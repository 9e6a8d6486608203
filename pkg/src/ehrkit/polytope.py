"""Lattice polytopes in exact integer arithmetic.

A :class:`LatticePolytope` stores its canonical (lexicographically sorted)
vertex list and its facet inequalities ``normal . x <= offset`` with
primitive integer normals. Use :func:`vertex_reduce` to build one from an
arbitrary point set.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from . import kernels
from ._linalg import dot, rank, sub
from .errors import BudgetExceeded, DimensionMismatch, InvalidInput, NotFullDimensional

DEFAULT_POINT_BUDGET = 10**8

LatticePoint = tuple[int, ...]


@dataclass(frozen=True, order=True)
class HalfSpace:
    """The inequality ``normal . x <= offset``."""

    normal: tuple[int, ...]
    offset: int

    def value(self, x) -> Fraction | int:
        return dot(self.normal, x)

    def contains(self, x, strict: bool = False) -> bool:
        v = dot(self.normal, x)
        return v < self.offset if strict else v <= self.offset


class LatticePolytope:
    """Full-dimensional lattice polytope.

    Instances are immutable. The facet list is computed once on first
    access (guarded by a lock) unless it was supplied at construction.
    """

    __slots__ = ("dim", "vertices", "_facets", "_lock")

    def __init__(self, dim: int, vertices: Iterable[Sequence[int]], facets=None):
        self.dim = dim
        self.vertices: tuple[LatticePoint, ...] = tuple(sorted(tuple(v) for v in vertices))
        self._facets = None if facets is None else tuple(sorted(facets))
        self._lock = threading.Lock()

    @property
    def facets(self) -> tuple[HalfSpace, ...]:
        if self._facets is None:
            with self._lock:
                if self._facets is None:
                    self._facets = tuple(_facet_list(self.vertices, self.dim))
        return self._facets

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    def bounding_box(self, m: int = 1) -> tuple[list[int], list[int]]:
        lo = [m * min(v[i] for v in self.vertices) for i in range(self.dim)]
        hi = [m * max(v[i] for v in self.vertices) for i in range(self.dim)]
        return lo, hi

    def __eq__(self, other):
        if not isinstance(other, LatticePolytope):
            return NotImplemented
        return self.dim == other.dim and self.vertices == other.vertices

    def __hash__(self):
        return hash((self.dim, self.vertices))

    def __repr__(self):
        return f"LatticePolytope(dim={self.dim}, vertices={list(self.vertices)})"

    def __getstate__(self):
        return {"dim": self.dim, "vertices": self.vertices, "facets": self._facets}

    def __setstate__(self, state):
        self.dim = state["dim"]
        self.vertices = state["vertices"]
        self._facets = state["facets"]
        self._lock = threading.Lock()

    def to_json(self) -> dict:
        return {"dim": self.dim, "vertices": [[encode_int(x) for x in v] for v in self.vertices]}


def _facet_list(points, dim) -> list[HalfSpace]:
    raw = kernels.facet_scan(list(points), dim)
    return sorted({HalfSpace(tuple(n), off) for n, off in raw})


def _check_points(points, dim) -> list[LatticePoint]:
    if dim < 1:
        raise InvalidInput(f"dimension must be positive, got {dim}")
    pts = []
    for p in points:
        p = tuple(p)
        if len(p) != dim:
            raise DimensionMismatch(f"point {p} has length {len(p)}, expected {dim}")
        for x in p:
            if isinstance(x, bool) or not isinstance(x, int):
                raise InvalidInput(f"coordinate {x!r} of {p} is not an integer")
        pts.append(p)
    if not pts:
        raise InvalidInput("point set is empty")
    return sorted(set(pts))


def vertex_reduce(points: Iterable[Sequence[int]], dim: int) -> LatticePolytope:
    """Canonical V-representation of conv(points).

    Drops duplicates and non-vertices, sorts the vertices, and caches the
    facet description computed along the way.
    """
    pts = _check_points(points, dim)
    base = pts[0]
    if rank([sub(p, base) for p in pts[1:]]) < dim:
        raise NotFullDimensional(f"points do not affinely span dimension {dim}")
    facets = _facet_list(pts, dim)
    verts = []
    for p in pts:
        tight = [f.normal for f in facets if dot(f.normal, p) == f.offset]
        if len(tight) >= dim and rank(tight) == dim:
            verts.append(p)
    return LatticePolytope(dim, verts, facets)


def facets(P: LatticePolytope) -> list[HalfSpace]:
    return list(P.facets)


def contains(P: LatticePolytope, x: Sequence, strict: bool = False) -> bool:
    """Membership of a rational point, by the facet inequalities."""
    if len(x) != P.dim:
        raise DimensionMismatch(f"point has length {len(x)}, polytope dimension is {P.dim}")
    return all(f.contains(x, strict) for f in P.facets)


def _scan_args(P: LatticePolytope, m: int, budget: int):
    lo, hi = P.bounding_box(m)
    size = 1
    for a, b in zip(lo, hi):
        size *= b - a + 1
    if size > budget:
        raise BudgetExceeded(
            f"bounding box of {m}P has {size} candidate points (budget {budget})"
        )
    fs = P.facets
    return [f.normal for f in fs], [f.offset for f in fs], lo, hi


def lattice_points(
    P: LatticePolytope, m: int = 1, strict: bool = False, budget: int = DEFAULT_POINT_BUDGET
) -> list[LatticePoint]:
    """Sorted integer points of the dilate mP (its interior when ``strict``)."""
    if m < 0:
        raise InvalidInput("dilation factor must be nonnegative")
    if m == 0:
        return [] if strict else [(0,) * P.dim]
    normals, offsets, lo, hi = _scan_args(P, m, budget)
    return kernels.scan_dilate(normals, offsets, lo, hi, m, strict, collect=True)


@lru_cache(maxsize=8192)
def _count(P: LatticePolytope, m: int, strict: bool, budget: int) -> int:
    normals, offsets, lo, hi = _scan_args(P, m, budget)
    return kernels.scan_dilate(normals, offsets, lo, hi, m, strict, collect=False)


def count_points(
    P: LatticePolytope, m: int, strict: bool = False, budget: int = DEFAULT_POINT_BUDGET
) -> int:
    """``len(lattice_points(P, m, strict))`` without materializing the points."""
    if m < 0:
        raise InvalidInput("dilation factor must be nonnegative")
    if m == 0:
        return 0 if strict else 1
    return _count(P, m, strict, budget)


# -- serialization ---------------------------------------------------------

_JSON_SAFE = 2**53


def encode_int(x: int):
    return x if -_JSON_SAFE <= x <= _JSON_SAFE else str(x)


def decode_int(x) -> int:
    if isinstance(x, bool):
        raise InvalidInput(f"expected an integer, got {x!r}")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x)
        except ValueError:
            pass
    raise InvalidInput(f"expected an integer, got {x!r}")


def polytope_from_json(obj) -> LatticePolytope:
    if not isinstance(obj, dict) or "dim" not in obj or "vertices" not in obj:
        raise InvalidInput('polytope JSON must be an object with "dim" and "vertices"')
    dim = decode_int(obj["dim"])
    verts = obj["vertices"]
    if not isinstance(verts, list) or not all(isinstance(v, list) for v in verts):
        raise InvalidInput('"vertices" must be a list of integer lists')
    return vertex_reduce([[decode_int(x) for x in v] for v in verts], dim)


def load_polytope(path) -> LatticePolytope:
    with open(path, encoding="utf-8") as fh:
        return polytope_from_json(json.load(fh))
