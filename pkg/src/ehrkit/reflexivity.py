"""Reflexivity and its equivalent characterizations."""

from __future__ import annotations

from dataclasses import dataclass

from .ehrhart import EhrhartData, ehrhart_data
from .errors import EquivalenceViolation, InvalidInput
from .osequence import is_palindromic
from .polytope import LatticePolytope, contains


def origin_interior(P: LatticePolytope) -> bool:
    return contains(P, (0,) * P.dim, strict=True)


def is_reflexive(P: LatticePolytope) -> bool:
    """Origin strictly inside and every primitive facet inequality has offset 1."""
    return all(f.offset == 1 for f in P.facets)


@dataclass(frozen=True)
class ReflexivityReport:
    is_reflexive: bool
    cond_ii: bool
    cond_iii: bool
    cond_iv: bool
    origin_interior: bool

    def to_json(self) -> dict:
        return {
            "reflexive": self.is_reflexive,
            "cond_ii": self.cond_ii,
            "cond_iii": self.cond_iii,
            "cond_iv": self.cond_iv,
            "origin_interior": self.origin_interior,
        }


def reflexivity_report(P: LatticePolytope, M: int | None = None,
                       data: EhrhartData | None = None) -> ReflexivityReport:
    """Evaluate the four characterizations independently.

    (ii) ``L(m) = L_boundary(m) + L(m-1)`` for m = 1..M; (iii) the top two
    Ehrhart coefficients satisfy ``d c_d = 2 c_{d-1}``; (iv) the delta-vector
    is palindromic. With the origin inside, all four must agree.
    """
    d = P.dim
    if M is None:
        M = d + 1 if data is None else len(data.counts) - 1
    if M < d + 1:
        raise InvalidInput(f"M must be at least d+1 = {d + 1}")
    if data is None or len(data.counts) < M + 1:
        data = ehrhart_data(P, M)
    counts, boundary = data.counts, data.boundary_counts
    cond_ii = all(counts[m] == boundary[m - 1] + counts[m - 1] for m in range(1, M + 1))
    cond_iii = d * data.coeffs[d] == 2 * data.coeffs[d - 1]
    cond_iv = is_palindromic(data.delta)
    interior = origin_interior(P)
    rep = ReflexivityReport(is_reflexive(P), cond_ii, cond_iii, cond_iv, interior)
    flags = {rep.is_reflexive, cond_ii, cond_iii, cond_iv}
    if interior and len(flags) != 1:
        raise EquivalenceViolation(f"reflexivity characterizations disagree: {rep}")
    return rep
