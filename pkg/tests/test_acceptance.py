"""Acceptance suite: one PASS/FAIL line per criterion.

Lines are printed in the pytest terminal summary, also when this file is
run as a script (``python tests/test_acceptance.py``).
"""

import json
import os
import sys
import time
from itertools import product

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from conftest import ACCEPTANCE_LINES, CORPUS  # noqa: E402
from ehrkit import generators as G  # noqa: E402
from ehrkit.analysis import analyze  # noqa: E402
from ehrkit.bounds import (  # noqa: E402
    ExtremalClass,
    cyclic_facets,
    schepers_classification,
    verify_lower_bound,
    verify_partial_sums,
    verify_reflexive_upper,
    verify_volume_upper,
)
from ehrkit.cli import run_census  # noqa: E402
from ehrkit.ehrhart import delta_vector, ehrhart_data, evaluate  # noqa: E402
from ehrkit.normality import is_integrally_closed  # noqa: E402
from ehrkit.osequence import (  # noqa: E402
    binomial_expansion,
    is_differentiable_O_sequence,
    is_gorenstein_sequence_h1le3,
    is_O_sequence,
    is_unimodal,
    macaulay_bound_holds,
    macaulay_power,
    partial_sum_inequalities,
    truncate,
)
from ehrkit.polytope import count_points  # noqa: E402
from ehrkit.reflexivity import is_reflexive  # noqa: E402
from oracles import order_ideal_exists  # noqa: E402


class Criterion:
    def __init__(self, number, title, limit=None):
        self.number, self.title, self.limit = number, title, limit
        self.failures = []
        self.notes = []

    def check(self, ok, msg):
        if not ok:
            self.failures.append(msg)

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        if exc is not None:
            self.failures.append(f"{exc_type.__name__}: {exc}")
        if self.limit is not None and elapsed >= self.limit:
            self.failures.append(f"took {elapsed:.2f}s, limit {self.limit}s")
        status = "FAIL" if self.failures else "PASS"
        extra = "; ".join(self.notes + self.failures[:3])
        line = f"criterion {self.number}: {status} {self.title} ({elapsed:.2f}s{', ' + extra if extra else ''})"
        ACCEPTANCE_LINES.append(line)
        return False

    def finish(self):
        assert not self.failures, self.failures


_records = {}


def record(name):
    if name not in _records:
        P = CORPUS[name]
        _records[name] = analyze(P, M=P.dim + 2)
    return _records[name]


def closed_names():
    return [n for n in sorted(CORPUS) if record(n).closure.is_closed]


def test_criterion_01_golden_deltas():
    with Criterion(1, "golden delta-vectors", limit=1.0) as c:
        cases = [
            (G.cube(2, -1, 1), [1, 6, 1]),
            (G.standard_reflexive_simplex(2), [1, 1, 1]),
            (G.reeve_simplex(2), [1, 0, 1, 0]),
        ] + [(G.unimodular_simplex(d), [1] + [0] * d) for d in range(1, 5)]
        for P, want in cases:
            got = delta_vector(P)
            c.check(got == want, f"{P.vertices}: {got} != {want}")
    c.finish()


def test_criterion_02_reciprocity():
    with Criterion(2, "Ehrhart reciprocity on 120 random polytopes", limit=60.0) as c:
        n = 0
        for i in range(120):
            d = 2 + i % 2
            P = G.random_polytope(d, 1 + i % 3, d + 2 + i % 4, seed=5000 + i)
            coeffs = ehrhart_data(P).coeffs
            for m in range(1, 4):
                strict = count_points(P, m, strict=True)
                c.check(strict == (-1) ** d * evaluate(coeffs, -m), f"seed {5000 + i}, m={m}")
                n += 1
        c.notes.append(f"{n} checks")
    c.finish()


def test_criterion_03_delta_identities():
    with Criterion(3, "delta_0, delta_1, delta_d, sum identities on the corpus") as c:
        for name, P in sorted(CORPUS.items()):
            data = ehrhart_data(P)
            d, delta = P.dim, data.delta
            c.check(delta[0] == 1, f"{name}: delta_0")
            c.check(delta[1] == data.counts[1] - d - 1, f"{name}: delta_1")
            c.check(delta[d] == count_points(P, 1, strict=True), f"{name}: delta_d")
            fact = 1
            for k in range(2, d + 1):
                fact *= k
            c.check(sum(delta) == fact * data.coeffs[d], f"{name}: sum")
        c.notes.append(f"{len(CORPUS)} polytopes")
    c.finish()


def test_criterion_04_macaulay():
    with Criterion(4, "Macaulay expansion, h^<i>, O-sequence oracle", limit=120.0) as c:
        from math import comb
        for i in range(1, 7):
            c.check(macaulay_power(0, i) == 0, f"0^<{i}>")
            for h in range(1, 501):
                terms = binomial_expansion(h, i).terms
                ns = [t[0] for t in terms]
                ok = sum(comb(a, k) for a, k in terms) == h and ns == sorted(set(ns), reverse=True)
                ok = ok and 1 <= terms[-1][1] <= terms[-1][0]
                c.check(ok, f"expansion h={h} i={i}")
        n = 0
        for length in range(1, 5):
            for h in product(range(13), repeat=length):
                if sum(h) <= 12:
                    c.check(is_O_sequence(h) == order_ideal_exists(h), f"O-sequence {h}")
                    n += 1
        c.notes.append(f"{n} sequences vs oracle")
    c.finish()


def test_criterion_05_macaulay_bound_on_closed():
    with Criterion(5, "closed polytopes have O-sequence delta; Reeve fails both") as c:
        names = closed_names()
        for name in names:
            delta = record(name).data.delta
            c.check(macaulay_bound_holds(delta) and is_O_sequence(delta), name)
        reeve = delta_vector(G.reeve_simplex(2))
        c.check(not is_integrally_closed(G.reeve_simplex(2)).is_closed, "reeve closed")
        c.check(not macaulay_bound_holds(reeve) and not is_O_sequence(reeve), "reeve passes")
        c.notes.append(f"{len(names)} closed polytopes")
    c.finish()


EQUALITY_NAMES = ("segment", "unimodular_simplex", "std_reflexive_simplex")
# the k = 1 Reeve simplex has determinant 1, so it is a unimodular simplex
EQUALITY_EXTRA = {"reeve1"}


def test_criterion_06_volume_equality_cases():
    with Criterion(6, "volume bound equality exactly on the extremal classes") as c:
        hits = []
        for name in closed_names():
            rec = record(name)
            rep = verify_volume_upper(rec.polytope, rec.data, rec.closure)
            cls = schepers_classification(rec.polytope, rec.data, rec.closure)
            c.check(rep.holds, f"{name}: bound fails")
            c.check(rep.equality == (cls is not ExtremalClass.NONE), f"{name}: class mismatch")
            if name.startswith(EQUALITY_NAMES) or name in EQUALITY_EXTRA:
                c.check(rep.equality, f"{name}: expected equality")
            elif not name.startswith("random"):
                c.check(not rep.equality, f"{name}: unexpected equality")
            if rep.equality:
                hits.append(name)
        c.notes.append(f"{len(hits)} equality cases")
    c.finish()


def test_criterion_07_reflexive_upper():
    with Criterion(7, "reflexive volume bound and cyclic facet formula") as c:
        required = {"square[-1,1]", "cube[-1,1]^3", "std_reflexive_simplex2",
                    "std_reflexive_simplex3", "std_reflexive_simplex4"}
        seen = set()
        for name in closed_names():
            rec = record(name)
            if rec.reflexive:
                rep = verify_reflexive_upper(rec.data, rec.closure, True)
                c.check(rep.applicable and rep.holds, f"{name}: {rep.lhs} > {rep.rhs}")
                seen.add(name)
        c.check(required <= seen, f"missing {sorted(required - seen)}")
        for n, d in [(5, 3), (6, 3), (6, 4)]:
            got = len(G.cyclic_polytope(n, d).facets)
            c.check(got == cyclic_facets(n, d), f"C({n},{d}): {got} facets")
        c.notes.append(f"{len(seen)} reflexive closed polytopes")
    c.finish()


def test_criterion_08_partial_sums_and_lower_bound():
    with Criterion(8, "partial sums and lower bound with delta_1 = n-d-1") as c:
        for name in closed_names():
            rec = record(name)
            c.check(verify_partial_sums(rec.data.delta).holds, f"{name}: partial sums")
            lb = verify_lower_bound(rec.data, rec.closure)
            c.check(lb.holds or not lb.applicable, f"{name}: lower bound")
        for P in (G.cube(2, -1, 1), G.standard_reflexive_simplex(2), G.standard_reflexive_simplex(3)):
            lb = verify_lower_bound(ehrhart_data(P), is_integrally_closed(P))
            c.check(lb.equality and lb.detail["matches_equality_pattern"], f"{P.vertices}: pattern")
    c.finish()


def test_criterion_09_unimodality():
    with Criterion(9, "unimodal delta for reflexive closed n <= d+4; Gorenstein test") as c:
        n = 0
        for name in closed_names():
            rec = record(name)
            if rec.reflexive and rec.data.n_points <= rec.polytope.dim + 4:
                delta = rec.data.delta
                c.check(is_unimodal(delta), f"{name}: not unimodal")
                if delta[1] <= 3:
                    c.check(is_gorenstein_sequence_h1le3(delta), f"{name}: Gorenstein")
                n += 1
        c.check(n >= 3, "too few applicable polytopes")
        c.notes.append(f"{n} applicable")
    c.finish()


def test_criterion_10_differentiable():
    with Criterion(10, "L_P and boundary sequences are differentiable O-sequences, M = d+2") as c:
        for name in closed_names():
            rec = record(name)
            d = rec.polytope.dim
            counts = list(rec.data.counts[: d + 3])
            boundary = [1] + list(rec.data.boundary_counts[: d + 2])
            c.check(is_differentiable_O_sequence(counts), f"{name}: counts")
            c.check(is_differentiable_O_sequence(boundary), f"{name}: boundary")
    c.finish()


def test_criterion_11_order_polytopes():
    with Criterion(11, "order polytopes of all posets on <= 5 elements", limit=120.0) as c:
        catalog = G.poset_catalog(5)
        for Q in catalog:
            P = G.order_polytope(Q)
            delta = truncate(delta_vector(P))
            c.check(delta == truncate(G.descent_delta_oracle(Q)), f"{Q.covers}: descents")
            c.check(is_integrally_closed(P).is_closed, f"{Q.covers}: not closed")
            c.check(is_O_sequence(delta) and macaulay_bound_holds(delta), f"{Q.covers}: O-seq")
            c.check(not partial_sum_inequalities(delta), f"{Q.covers}: partial sums")
        c.notes.append(f"{len(catalog)} posets")
    c.finish()


def test_criterion_12_census(tmp_path):
    with Criterion(12, "census d=2,3 with 300 polytopes each", limit=600.0) as c:
        smooth = 0
        for dim in (2, 3):
            out = tmp_path / f"census{dim}.jsonl"
            summary = run_census(dim, 2, 300, 12, str(out))
            c.check(summary["generated"] == 300, f"d={dim}: generated {summary['generated']}")
            c.check(summary["violations"] == 0, f"d={dim}: {summary['violations']} violations")
            for line in out.read_text().splitlines():
                oda = next(r for r in json.loads(line)["reports"] if r["theorem_id"] == "oda")
                c.check(not oda["applicable"] or oda["holds"], "oda violated")
            smooth += summary["smooth"]
            c.notes.append(f"d={dim}: {summary['integrally_closed']} closed, {summary['smooth']} smooth")
        c.check(smooth > 0, "no smooth polytope sampled")
    c.finish()


def test_criterion_13_determinism(tmp_path):
    with Criterion(13, "byte-identical census output") as c:
        paths = [tmp_path / f"run{i}.jsonl" for i in range(3)]
        run_census(3, 2, 40, 99, str(paths[0]))
        run_census(3, 2, 40, 99, str(paths[1]))
        run_census(3, 2, 40, 99, str(paths[2]), jobs=2)
        data = [p.read_bytes() for p in paths]
        c.check(data[0] == data[1], "sequential runs differ")
        c.check(data[0] == data[2], "parallel run differs")
        c.check(len(data[0].splitlines()) == 40, "wrong record count")
    c.finish()


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
