"""Integral closedness, unimodular simplices and smoothness."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import kernels
from ._linalg import det, dot, primitive, rank, sub
from .errors import InternalInconsistency, InvalidInput
from .polytope import DEFAULT_POINT_BUDGET, LatticePoint, LatticePolytope, lattice_points


@dataclass(frozen=True)
class ClosureReport:
    closed_up_to: int
    is_closed: bool
    witness: tuple[int, LatticePoint] | None = None

    def to_json(self) -> dict:
        w = None
        if self.witness is not None:
            w = {"c": self.witness[0], "z": list(self.witness[1])}
        return {"closed_up_to": self.closed_up_to, "is_closed": self.is_closed, "witness": w}


def default_c_max(d: int) -> int:
    return max(2, d - 1)


def is_sum_of(z: LatticePoint, c: int, base: list[LatticePoint]) -> bool:
    """Exhaustive search: is ``z`` a sum of exactly ``c`` points of ``base``?"""
    base = sorted(base)

    @lru_cache(maxsize=None)
    def search(target, k, start):
        if k == 0:
            return not any(target)
        for i in range(start, len(base)):
            if search(sub(target, base[i]), k - 1, i):
                return True
        return False

    return search(tuple(z), c, 0)


def is_integrally_closed(
    P: LatticePolytope, c_max: int | None = None, budget: int = DEFAULT_POINT_BUDGET
) -> ClosureReport:
    """Check that every lattice point of cP is a sum of c lattice points of P
    for c = 2..c_max (default ``max(2, d-1)``).

    The reachable set at level c is S_{c-1} + S_1; by convexity all of it
    lies in cP, so it suffices to look for target points it misses. The
    first missing point (lexicographically) is returned as the witness.
    """
    if c_max is None:
        c_max = default_c_max(P.dim)
    if c_max < 2:
        raise InvalidInput("c_max must be at least 2")
    base = lattice_points(P, 1, budget=budget)
    prev = base
    for c in range(2, c_max + 1):
        target = lattice_points(P, c, budget=budget)
        lo, hi = P.bounding_box(c)
        miss = kernels.first_unreached(prev, base, target, lo, hi)
        if miss >= 0:
            z = target[miss]
            if is_sum_of(z, c, base):
                raise InternalInconsistency(f"witness {z} at c={c} is a sum of {c} lattice points")
            return ClosureReport(c_max, False, (c, z))
        prev = target
    return ClosureReport(c_max, True, None)


def is_unimodular_simplex(P: LatticePolytope) -> bool:
    d = P.dim
    if P.n_vertices != d + 1:
        return False
    v0 = P.vertices[0]
    return abs(det([sub(v, v0) for v in P.vertices[1:]])) == 1


def edges(P: LatticePolytope) -> dict[LatticePoint, list[LatticePoint]]:
    """Vertex adjacency: v, w span an edge iff the facets tight at both
    have normals of rank d-1."""
    d = P.dim
    tight = {v: [f for f in P.facets if dot(f.normal, v) == f.offset] for v in P.vertices}
    nbrs: dict[LatticePoint, list[LatticePoint]] = {v: [] for v in P.vertices}
    for i, v in enumerate(P.vertices):
        for w in P.vertices[i + 1:]:
            common = [f.normal for f in tight[v] if f in tight[w]]
            if len(common) >= d - 1 and rank(common) == d - 1:
                nbrs[v].append(w)
                nbrs[w].append(v)
    return nbrs


def is_smooth(P: LatticePolytope) -> bool:
    d = P.dim
    for v, ws in edges(P).items():
        if len(ws) != d:
            return False
        if abs(det([primitive(sub(w, v)) for w in ws])) != 1:
            return False
    return True
