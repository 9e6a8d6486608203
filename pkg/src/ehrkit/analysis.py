"""End-to-end analysis of one polytope, shared by the CLI and the census."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import bounds
from .bounds import VerificationReport
from .ehrhart import EhrhartData, ehrhart_data
from .errors import BudgetExceeded, UnknownTheorem
from .normality import ClosureReport, default_c_max, is_integrally_closed, is_smooth, is_unimodular_simplex
from .polytope import LatticePolytope, encode_int
from .reflexivity import is_reflexive


class StageError(BudgetExceeded):
    """A budget overflow, tagged with the pipeline stage that hit it."""

    def __init__(self, stage: str, cause: BudgetExceeded):
        super().__init__(f"{stage}: {cause}")
        self.stage = stage


@dataclass
class AnalysisRecord:
    polytope: LatticePolytope
    c_max: int
    M: int
    data: EhrhartData
    closure: ClosureReport
    reflexive: bool
    smooth: bool
    unimodular_simplex: bool
    extremal_class: str | None
    reports: list[VerificationReport] = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    @property
    def violations(self) -> list[VerificationReport]:
        return [r for r in self.reports if r.violated]

    def to_json(self) -> dict:
        P = self.polytope
        out = dict(self.extra)
        out.update({
            "polytope": P.to_json(),
            "n": self.data.n_points,
            "d": P.dim,
            "c_max": self.c_max,
            "M": self.M,
            "counts": [encode_int(x) for x in self.data.counts],
            "coeffs": self.data.to_json()["coeffs"],
            "delta": [encode_int(x) for x in self.data.delta],
            "interior": [encode_int(x) for x in self.data.interior_counts],
            "flags": {
                "integrally_closed": self.closure.is_closed,
                "closure": self.closure.to_json(),
                "reflexive": self.reflexive,
                "smooth": self.smooth,
                "unimodular_simplex": self.unimodular_simplex,
            },
            "extremal_class": self.extremal_class,
            "reports": [r.to_json() for r in self.reports],
        })
        return out


def _stage(name, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except StageError:
        raise
    except BudgetExceeded as exc:
        raise StageError(name, exc) from exc


def run_verifier(theorem_id: str, P: LatticePolytope, data: EhrhartData, closure: ClosureReport,
                 reflexive: bool, smooth: bool, M: int) -> VerificationReport:
    if theorem_id == "volume_upper":
        return bounds.verify_volume_upper(P, data, closure)
    if theorem_id == "reflexive_upper":
        return bounds.verify_reflexive_upper(data, closure, reflexive)
    if theorem_id == "partial_sums":
        return bounds.verify_partial_sums(data.delta, closure.is_closed)
    if theorem_id == "lower_bound":
        return bounds.verify_lower_bound(data, closure)
    if theorem_id == "hibi_lbt":
        return bounds.verify_hibi_lbt(data)
    if theorem_id == "unimodality":
        return bounds.verify_unimodality_n_le_d4(data, closure, reflexive)
    if theorem_id == "diff_o":
        return bounds.verify_diff_o(P, M, closure, data)
    if theorem_id == "oda":
        return bounds.verify_oda(P, closure, data, smooth)
    raise UnknownTheorem(f"unknown theorem id {theorem_id!r}; choose from {', '.join(bounds.THEOREM_IDS)}")


def analyze(P: LatticePolytope, c_max: int | None = None, M: int | None = None,
            theorems=bounds.THEOREM_IDS) -> AnalysisRecord:
    """facets -> counts -> polynomial -> delta -> closure -> reflexivity ->
    smoothness -> verifiers."""
    d = P.dim
    c_max = default_c_max(d) if c_max is None else c_max
    M = d + 2 if M is None else M
    _stage("facets", lambda: P.facets)
    data = _stage("ehrhart", ehrhart_data, P, M)
    closure = _stage("closure", is_integrally_closed, P, c_max)
    reflexive = is_reflexive(P)
    smooth = is_smooth(P)
    unimodular = is_unimodular_simplex(P)
    extremal = None
    if closure.is_closed:
        extremal = bounds.schepers_classification(P, data, closure).value
    reports = [
        _stage(tid, run_verifier, tid, P, data, closure, reflexive, smooth, M) for tid in theorems
    ]
    return AnalysisRecord(P, c_max, M, data, closure, reflexive, smooth, unimodular, extremal, reports)
