"""Executable checks of the volume bounds and delta-vector inequalities.

Each verifier returns a :class:`VerificationReport` that keeps hypotheses
(``applicable``) separate from conclusions (``holds``), so a census never
counts a vacuous pass as a verification. ``d! vol`` is always taken as the
sum of the delta-vector.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from math import comb

from .ehrhart import EhrhartData, boundary_count_sequence, count_sequence, ehrhart_data
from .errors import InvalidInput
from .normality import ClosureReport, is_integrally_closed, is_smooth, is_unimodular_simplex
from .osequence import (
    is_differentiable_O_sequence,
    is_unimodal,
    partial_sum_inequalities,
    truncate,
)
from .polytope import LatticePolytope, count_points, lattice_points, vertex_reduce
from .reflexivity import is_reflexive

THEOREM_IDS = (
    "volume_upper",
    "reflexive_upper",
    "partial_sums",
    "lower_bound",
    "hibi_lbt",
    "unimodality",
    "diff_o",
    "oda",
)


@dataclass(frozen=True)
class VerificationReport:
    theorem_id: str
    applicable: bool
    holds: bool
    lhs: int | None = None
    rhs: int | None = None
    equality: bool = False
    detail: dict = field(default_factory=dict)

    @property
    def violated(self) -> bool:
        return self.applicable and not self.holds

    def to_json(self) -> dict:
        return {
            "theorem_id": self.theorem_id,
            "applicable": self.applicable,
            "holds": self.holds,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "equality": self.equality,
            "detail": self.detail,
        }


def _not_applicable(theorem_id, reason, **detail) -> VerificationReport:
    return VerificationReport(theorem_id, False, False, detail={"reason": reason, **detail})


class ExtremalClass(enum.Enum):
    DIM_ONE = "dim_one"
    UNIMODULAR_SIMPLEX = "unimodular_simplex"
    STANDARD_REFLEXIVE_SIMPLEX = "standard_reflexive_simplex"
    NONE = "none"


def cyclic_facets(n: int, d: int) -> int:
    """Number of facets of the cyclic d-polytope with n vertices."""
    if d < 2 or n < d + 1:
        raise InvalidInput(f"cyclic polytope needs d >= 2 and n >= d+1, got n={n}, d={d}")
    return comb(n - (d + 1) // 2, n - d) + comb(n - (d + 2) // 2, n - d)


def schepers_classification(P: LatticePolytope, data: EhrhartData,
                            closure: ClosureReport) -> ExtremalClass:
    """Which of the extremal families (if any) an integrally closed P is in."""
    if not closure.is_closed:
        raise InvalidInput("extremal classification applies to integrally closed polytopes")
    d = P.dim
    if d == 1:
        return ExtremalClass.DIM_ONE
    if is_unimodular_simplex(P):
        return ExtremalClass.UNIMODULAR_SIMPLEX
    if (
        P.n_vertices == d + 1
        and data.n_points == d + 2
        and data.normalized_volume == d + 1
        and data.interior_counts[0] == 1
    ):
        vset = set(P.vertices)
        inner = next(p for p in lattice_points(P, 1) if p not in vset)
        shifted = vertex_reduce([tuple(a - b for a, b in zip(v, inner)) for v in P.vertices], d)
        if is_reflexive(shifted):
            return ExtremalClass.STANDARD_REFLEXIVE_SIMPLEX
    return ExtremalClass.NONE


def verify_volume_upper(P: LatticePolytope, data: EhrhartData,
                        closure: ClosureReport) -> VerificationReport:
    if not closure.is_closed:
        return _not_applicable("volume_upper", "not integrally closed")
    d, n = data.dim, data.n_points
    lhs, rhs = data.normalized_volume, comb(n - 1, d)
    cls = schepers_classification(P, data, closure)
    return VerificationReport(
        "volume_upper", True, lhs <= rhs, lhs, rhs, lhs == rhs,
        {"n": n, "equality_class": cls.value},
    )


def verify_reflexive_upper(data: EhrhartData, closure: ClosureReport,
                           reflexive: bool) -> VerificationReport:
    if not reflexive:
        return _not_applicable("reflexive_upper", "not reflexive")
    if not closure.is_closed:
        return _not_applicable("reflexive_upper", "not integrally closed")
    d, n = data.dim, data.n_points
    if d < 2:
        return _not_applicable("reflexive_upper", "cyclic polytopes need d >= 2")
    lhs, rhs = data.normalized_volume, cyclic_facets(n, d)
    return VerificationReport("reflexive_upper", True, lhs <= rhs, lhs, rhs, lhs == rhs, {"n": n})


def verify_partial_sums(delta, closed: bool = True) -> VerificationReport:
    if not closed:
        return _not_applicable("partial_sums", "not integrally closed")
    trunc = truncate(delta)
    bad = partial_sum_inequalities(trunc)
    return VerificationReport(
        "partial_sums", True, not bad,
        detail={"s": len(trunc) - 1, "truncated_from": len(delta),
                "violations": [list(p) for p in bad]},
    )


def verify_lower_bound(data: EhrhartData, closure: ClosureReport) -> VerificationReport:
    """``2 + (s-1) delta_1 <= d! vol`` with s the last nonzero index.

    The left side uses ``delta_1 = n - d - 1``; the value obtained with
    ``n - d + 1`` in its place is reported in ``detail`` for comparison.
    """
    if not closure.is_closed:
        return _not_applicable("lower_bound", "not integrally closed")
    trunc = truncate(data.delta)
    s = len(trunc) - 1
    if s < 1:
        return _not_applicable("lower_bound", "delta-vector has degree 0", s=s)
    d, n = data.dim, data.n_points
    delta1 = n - d - 1
    lhs, rhs = 2 + (s - 1) * delta1, data.normalized_volume
    pattern = (1,) + (delta1,) * (s - 1) + (1,)
    return VerificationReport(
        "lower_bound", True, lhs <= rhs, lhs, rhs, lhs == rhs,
        {
            "s": s,
            "truncated_from": len(data.delta),
            "delta1": delta1,
            "matches_equality_pattern": trunc == pattern,
            "lhs_with_n_minus_d_plus_1": 2 + (s - 1) * (n - d + 1),
        },
    )


def verify_hibi_lbt(data: EhrhartData) -> VerificationReport:
    if data.interior_counts[0] == 0:
        return _not_applicable("hibi_lbt", "no interior lattice point")
    d, delta = data.dim, data.delta
    bad = [i for i in range(2, d) if delta[1] > delta[i]]
    return VerificationReport(
        "hibi_lbt", True, not bad, delta[1], min(delta[2:d], default=None),
        detail={"violations": bad},
    )


def verify_unimodality_n_le_d4(data: EhrhartData, closure: ClosureReport,
                               reflexive: bool) -> VerificationReport:
    d, n = data.dim, data.n_points
    if not reflexive:
        return _not_applicable("unimodality", "not reflexive")
    if not closure.is_closed:
        return _not_applicable("unimodality", "not integrally closed")
    if n > d + 4:
        return _not_applicable("unimodality", "n > d + 4", n=n)
    return VerificationReport("unimodality", True, is_unimodal(data.delta), n, d + 4,
                              detail={"delta": list(data.delta)})


def verify_diff_o(P: LatticePolytope, M: int, closure: ClosureReport,
                  data: EhrhartData | None = None) -> VerificationReport:
    """Counts ``L(0..M)`` and ``(1, L_boundary(1..M))`` are differentiable O-sequences."""
    if not closure.is_closed:
        return _not_applicable("diff_o", "not integrally closed")
    if M < P.dim + 1:
        raise InvalidInput(f"M must be at least d+1 = {P.dim + 1}")
    if data is not None and len(data.counts) >= M + 1:
        counts = list(data.counts[: M + 1])
        boundary = [1] + list(data.boundary_counts[:M])
    else:
        counts = count_sequence(P, M)
        boundary = [1] + boundary_count_sequence(P, M)
    ok_counts = is_differentiable_O_sequence(counts)
    ok_boundary = is_differentiable_O_sequence(boundary)
    return VerificationReport(
        "diff_o", True, ok_counts and ok_boundary,
        detail={"M": M, "counts_ok": ok_counts, "boundary_ok": ok_boundary},
    )


def verify_oda(P: LatticePolytope, closure: ClosureReport | None = None,
               data: EhrhartData | None = None, smooth: bool | None = None) -> VerificationReport:
    """Smooth polytopes: integrally closed (up to c_max) and within the volume bound."""
    if smooth is None:
        smooth = is_smooth(P)
    if not smooth:
        return _not_applicable("oda", "not smooth")
    if closure is None:
        closure = is_integrally_closed(P)
    d = P.dim
    n = data.n_points if data is not None else count_points(P, 1)
    vol = data.normalized_volume if data is not None else sum(ehrhart_data(P).delta)
    rhs = comb(n - 1, d)
    return VerificationReport(
        "oda", True, closure.is_closed and vol <= rhs, vol, rhs, vol == rhs,
        {"integrally_closed": closure.is_closed, "closed_up_to": closure.closed_up_to},
    )
