"""Ehrhart counting sequence, polynomial and delta-vector."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .errors import (
    InternalInconsistency,
    InterpolationMismatch,
    InvalidInput,
    NegativeDelta,
    ReciprocityViolation,
)
from .polytope import DEFAULT_POINT_BUDGET, LatticePolytope, count_points


def count_sequence(P: LatticePolytope, M: int, budget: int = DEFAULT_POINT_BUDGET) -> list[int]:
    """``[L_P(0), ..., L_P(M)]``."""
    if M < 0:
        raise InvalidInput("M must be nonnegative")
    return [count_points(P, m, budget=budget) for m in range(M + 1)]


def interpolate(values: list[int]) -> list[Fraction]:
    """Monomial coefficients of the polynomial of degree < len(values)
    through ``(m, values[m])``, via Newton forward differences."""
    diffs = []
    row = list(values)
    while row:
        diffs.append(row[0])
        row = [b - a for a, b in zip(row, row[1:])]
    coeffs = [Fraction(0)] * len(values)
    # binomial(m, k) = m (m-1) ... (m-k+1) / k!
    falling = [Fraction(1)]
    for k, dk in enumerate(diffs):
        for i, c in enumerate(falling):
            coeffs[i] += dk * c / factorial(k)
        nxt = [Fraction(0)] * (len(falling) + 1)
        for i, c in enumerate(falling):
            nxt[i + 1] += c
            nxt[i] -= k * c
        falling = nxt
    return coeffs


def evaluate(coeffs, m) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * m + c
    return acc


def ehrhart_polynomial(P: LatticePolytope, counts: list[int] | None = None) -> list[Fraction]:
    """Coefficients ``c_0 .. c_d``; the value at ``m = d+1`` is re-checked."""
    d = P.dim
    if counts is None or len(counts) < d + 2:
        counts = count_sequence(P, d + 1)
    coeffs = interpolate(counts[: d + 1])
    for m in range(d + 1, len(counts)):
        if evaluate(coeffs, m) != counts[m]:
            raise InterpolationMismatch(
                f"polynomial through L(0..{d}) predicts {evaluate(coeffs, m)} at m={m}, "
                f"enumeration found {counts[m]}"
            )
    return coeffs


def delta_from_counts(counts: list[int], d: int) -> list[int]:
    if len(counts) < d + 1:
        raise InvalidInput(f"need L(0..{d}) to compute the delta-vector")
    return [
        sum((-1) ** j * comb(d + 1, j) * counts[i - j] for j in range(i + 1))
        for i in range(d + 1)
    ]


def delta_vector(P: LatticePolytope, counts: list[int] | None = None) -> list[int]:
    d = P.dim
    if counts is None:
        counts = count_sequence(P, d)
    delta = delta_from_counts(counts, d)
    if any(x < 0 for x in delta):
        raise NegativeDelta(f"delta-vector {delta} has a negative entry")
    return delta


def interior_count(P: LatticePolytope, m: int, coeffs: list[Fraction] | None = None) -> int:
    """Interior lattice points of mP, cross-checked by reciprocity."""
    if m < 1:
        raise InvalidInput("m must be positive")
    strict = count_points(P, m, strict=True)
    if coeffs is None:
        coeffs = ehrhart_polynomial(P)
    recip = (-1) ** P.dim * evaluate(coeffs, -m)
    if recip != strict:
        raise ReciprocityViolation(
            f"strict count {strict} of {m}P disagrees with (-1)^d L(-{m}) = {recip}"
        )
    return strict


def boundary_count_sequence(P: LatticePolytope, M: int) -> list[int]:
    """``[L_P(m) - L_{P°}(m) for m = 1..M]``."""
    if M < 1:
        raise InvalidInput("M must be at least 1")
    coeffs = ehrhart_polynomial(P)
    return [count_points(P, m) - interior_count(P, m, coeffs) for m in range(1, M + 1)]


@dataclass(frozen=True)
class EhrhartData:
    dim: int
    counts: tuple[int, ...]
    coeffs: tuple[Fraction, ...]
    delta: tuple[int, ...]
    interior_counts: tuple[int, ...]

    @property
    def n_points(self) -> int:
        return self.counts[1]

    @property
    def normalized_volume(self) -> int:
        return sum(self.delta)

    @property
    def boundary_counts(self) -> tuple[int, ...]:
        return tuple(self.counts[m] - self.interior_counts[m - 1] for m in range(1, len(self.counts)))

    def to_json(self) -> dict:
        return {
            "counts": list(self.counts),
            "coeffs": [f"{c.numerator}/{c.denominator}" for c in self.coeffs],
            "delta": list(self.delta),
            "interior": list(self.interior_counts),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "EhrhartData":
        coeffs = tuple(Fraction(c) for c in obj["coeffs"])
        return cls(len(coeffs) - 1, tuple(obj["counts"]), coeffs, tuple(obj["delta"]),
                   tuple(obj["interior"]))


def _check_identities(data: EhrhartData) -> None:
    d = data.dim
    c_d = data.coeffs[d]
    problems = []
    if data.counts[0] != 1 or data.coeffs[0] != 1:
        problems.append("L(0) = c_0 = 1")
    if c_d <= 0 or (factorial(d) * c_d).denominator != 1:
        problems.append("d! c_d is a positive integer")
    if data.delta[0] != 1:
        problems.append("delta_0 = 1")
    if data.delta[1] != data.counts[1] - d - 1:
        problems.append("delta_1 = n - d - 1")
    if data.delta[d] != data.interior_counts[0]:
        problems.append("delta_d = interior point count")
    if sum(data.delta) != factorial(d) * c_d:
        problems.append("sum(delta) = d! c_d")
    if problems:
        raise InternalInconsistency(f"Ehrhart identities failed: {', '.join(problems)}")


def ehrhart_data(P: LatticePolytope, M: int | None = None) -> EhrhartData:
    """All Ehrhart invariants of P with counts up to ``M`` (default d+1)."""
    d = P.dim
    if M is None:
        M = d + 1
    if M < d + 1:
        raise InvalidInput(f"M must be at least d+1 = {d + 1}")
    counts = count_sequence(P, M)
    coeffs = ehrhart_polynomial(P, counts)
    delta = delta_vector(P, counts)
    interior = [interior_count(P, m, coeffs) for m in range(1, M + 1)]
    data = EhrhartData(d, tuple(counts), tuple(coeffs), tuple(delta), tuple(interior))
    _check_identities(data)
    return data
