"""Compare the compiled and pure-Python kernels on representative inputs.

    python benchmarks/bench_kernels.py [--repeat N] [--quick]

Each row reports the best wall time over N runs for both backends and the
speedup. Results of the two backends are also compared for equality.
"""

import argparse
import sys
import timeit

from ehrkit import generators as G
from ehrkit import kernels
from ehrkit.polytope import lattice_points


def cases(quick):
    cube = G.cube(4 if quick else 5)
    cube_pts = list(cube.vertices)
    yield f"facet_scan {cube.dim}-cube", lambda b: kernels.facet_scan(cube_pts, cube.dim, backend=b)

    rnd = G.random_polytope(4, 3, 12, seed=3)
    rnd_pts = list(rnd.vertices)
    yield "facet_scan random 4-polytope", lambda b: kernels.facet_scan(rnd_pts, 4, backend=b)

    P = G.cube(3, -2, 2) if quick else G.cube(4, -2, 2)
    normals = [f.normal for f in P.facets]
    offsets = [f.offset for f in P.facets]
    m = 3
    lo, hi = P.bounding_box(m)
    yield f"scan_dilate count {P.dim}-cube m={m}", \
        lambda b: kernels.scan_dilate(normals, offsets, lo, hi, m, backend=b)
    yield f"scan_dilate list {P.dim}-cube m={m}", \
        lambda b: kernels.scan_dilate(normals, offsets, lo, hi, m, collect=True, backend=b)

    S = G.dilate(G.standard_reflexive_simplex(3 if quick else 4), 2)
    base = lattice_points(S, 1)
    prev = lattice_points(S, 2)
    target = lattice_points(S, 3)
    slo, shi = S.bounding_box(3)
    yield f"first_unreached reflexive simplex d={S.dim}", \
        lambda b: kernels.first_unreached(prev, base, target, slo, shi, backend=b)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="smaller inputs")
    args = ap.parse_args(argv)
    if kernels.BACKEND != "cython":
        print("compiled extension not available; build with `pip install -e .`", file=sys.stderr)
        return 1
    print(f"{'kernel':44s} {'cython s':>10s} {'python s':>10s} {'speedup':>9s}")
    for name, fn in cases(args.quick):
        if fn("cython") != fn("python"):
            print(f"{name}: backends disagree", file=sys.stderr)
            return 1
        tc = min(timeit.repeat(lambda: fn("cython"), number=1, repeat=args.repeat))
        tp = min(timeit.repeat(lambda: fn("python"), number=1, repeat=args.repeat))
        print(f"{name:44s} {tc:10.4f} {tp:10.4f} {tp / tc:8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
