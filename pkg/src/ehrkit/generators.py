"""Named polytope families, posets, order polytopes and random polytopes."""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterator, Sequence

from ._linalg import det, rank, sub
from .errors import BudgetExceeded, GenerationFailed, InvalidInput
from .polytope import LatticePolytope, decode_int, vertex_reduce

MAX_IDEALS = 2**20
MAX_EXTENSION_POSET = 10


def _unit(d, i, scale=1):
    return tuple(scale if j == i else 0 for j in range(d))


def unimodular_simplex(d: int) -> LatticePolytope:
    """conv{0, e_1, ..., e_d}."""
    if d < 1:
        raise InvalidInput("d must be at least 1")
    return vertex_reduce([(0,) * d] + [_unit(d, i) for i in range(d)], d)


def cube(d: int, lo: int = 0, hi: int = 1) -> LatticePolytope:
    if d < 1 or lo >= hi:
        raise InvalidInput(f"cube needs d >= 1 and lo < hi, got d={d}, lo={lo}, hi={hi}")
    corners = [tuple(hi if (mask >> i) & 1 else lo for i in range(d)) for mask in range(2**d)]
    return vertex_reduce(corners, d)


def standard_reflexive_simplex(d: int) -> LatticePolytope:
    """conv{e_1, ..., e_d, -e_1 - ... - e_d}."""
    if d < 1:
        raise InvalidInput("d must be at least 1")
    return vertex_reduce([_unit(d, i) for i in range(d)] + [(-1,) * d], d)


def reeve_simplex(k: int) -> LatticePolytope:
    """conv{0, e_1, e_2, e_1 + e_2 + k e_3}."""
    if k < 1:
        raise InvalidInput("k must be at least 1")
    return vertex_reduce([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, k)], 3)


def dilate(P: LatticePolytope, k: int) -> LatticePolytope:
    if k < 1:
        raise InvalidInput("dilation factor must be at least 1")
    return vertex_reduce([tuple(k * x for x in v) for v in P.vertices], P.dim)


def translate(P: LatticePolytope, shift: Sequence[int]) -> LatticePolytope:
    return vertex_reduce([tuple(a + b for a, b in zip(v, shift)) for v in P.vertices], P.dim)


def apply_unimodular(P: LatticePolytope, U: Sequence[Sequence[int]]) -> LatticePolytope:
    """Image of P under x -> U x for an integer matrix with det ±1."""
    if abs(det(U)) != 1:
        raise InvalidInput("matrix is not unimodular")
    return vertex_reduce(
        [tuple(sum(r[j] * v[j] for j in range(P.dim)) for r in U) for v in P.vertices], P.dim
    )


def cyclic_polytope(n: int, d: int) -> LatticePolytope:
    """conv{(t, t^2, ..., t^d) : t = 1..n}."""
    if d < 2 or n < d + 1:
        raise InvalidInput(f"cyclic polytope needs d >= 2 and n >= d+1, got n={n}, d={d}")
    return vertex_reduce([tuple(t**k for k in range(1, d + 1)) for t in range(1, n + 1)], d)


# -- posets ----------------------------------------------------------------


@dataclass(frozen=True)
class Poset:
    """Finite poset on ``0..size-1`` given by its cover relations ``a < b``."""

    size: int
    covers: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.size < 0:
            raise InvalidInput("poset size must be nonnegative")
        covers = tuple(sorted({(int(a), int(b)) for a, b in self.covers}))
        for a, b in covers:
            if not (0 <= a < self.size and 0 <= b < self.size) or a == b:
                raise InvalidInput(f"invalid cover relation ({a}, {b})")
        object.__setattr__(self, "covers", covers)
        below = self.below_masks()  # raises on cycles
        for a, b in covers:
            # a < b is redundant if a lies below some other lower cover of b
            for c, b2 in covers:
                if b2 == b and c != a and (below[c] >> a) & 1:
                    raise InvalidInput(f"cover ({a}, {b}) is implied by transitivity")

    def below_masks(self) -> list[int]:
        """Bitmask of elements strictly below each element."""
        n = self.size
        lower = [[] for _ in range(n)]
        for a, b in self.covers:
            lower[b].append(a)
        below = [None] * n
        state = [0] * n

        def visit(x):
            if state[x] == 2:
                return below[x]
            if state[x] == 1:
                raise InvalidInput("cover relations contain a cycle")
            state[x] = 1
            m = 0
            for a in lower[x]:
                m |= (1 << a) | visit(a)
            below[x] = m
            state[x] = 2
            return m

        for x in range(n):
            visit(x)
        return below

    def leq(self, a: int, b: int) -> bool:
        return a == b or bool((self.below_masks()[b] >> a) & 1)

    @classmethod
    def from_relations(cls, size: int, relations) -> "Poset":
        """Build from any generating set of relations (transitively reduced here)."""
        below = [0] * size
        for a, b in relations:
            below[b] |= 1 << a
        changed = True
        while changed:
            changed = False
            for x in range(size):
                m = below[x]
                for a in range(size):
                    if (m >> a) & 1:
                        m |= below[a]
                if m != below[x]:
                    if (m >> x) & 1:
                        raise InvalidInput("relations contain a cycle")
                    below[x] = m
                    changed = True
        covers = []
        for b in range(size):
            for a in range(size):
                if (below[b] >> a) & 1:
                    if not any((below[b] >> c) & 1 and (below[c] >> a) & 1 for c in range(size)):
                        covers.append((a, b))
        return cls(size, tuple(covers))

    def to_json(self) -> dict:
        return {"size": self.size, "covers": [list(c) for c in self.covers]}

    @classmethod
    def from_json(cls, obj) -> "Poset":
        if not isinstance(obj, dict) or "size" not in obj or "covers" not in obj:
            raise InvalidInput('poset JSON must be an object with "size" and "covers"')
        covers = obj["covers"]
        if not isinstance(covers, list) or not all(isinstance(c, list) and len(c) == 2 for c in covers):
            raise InvalidInput('"covers" must be a list of [a, b] pairs')
        return cls(decode_int(obj["size"]), tuple((decode_int(a), decode_int(b)) for a, b in covers))


def load_poset(path) -> Poset:
    with open(path, encoding="utf-8") as fh:
        return Poset.from_json(json.load(fh))


def order_ideals(Q: Poset, limit: int = MAX_IDEALS) -> list[int]:
    """All down-sets of Q as bitmasks, grown one minimal element at a time."""
    below = Q.below_masks()
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for ideal in frontier:
            for x in range(Q.size):
                if not (ideal >> x) & 1 and below[x] & ~ideal == 0:
                    grown = ideal | (1 << x)
                    if grown not in seen:
                        seen.add(grown)
                        if len(seen) > limit:
                            raise BudgetExceeded(f"poset has more than {limit} order ideals")
                        nxt.append(grown)
        frontier = nxt
    return sorted(seen)


def order_polytope(Q: Poset) -> LatticePolytope:
    """Convex hull of the characteristic vectors of the order ideals of Q."""
    if Q.size < 1:
        raise InvalidInput("order polytope needs a nonempty poset")
    n = Q.size
    verts = [tuple((m >> i) & 1 for i in range(n)) for m in order_ideals(Q)]
    return vertex_reduce(verts, n)


def linear_extensions(Q: Poset) -> Iterator[tuple[int, ...]]:
    below = Q.below_masks()
    n = Q.size
    word: list[int] = []

    def extend(used):
        if len(word) == n:
            yield tuple(word)
            return
        for x in range(n):
            if not (used >> x) & 1 and below[x] & ~used == 0:
                word.append(x)
                yield from extend(used | (1 << x))
                word.pop()

    yield from extend(0)


def natural_labeling(Q: Poset) -> list[int]:
    """Position of each element in the lexicographically smallest linear extension."""
    first = next(linear_extensions(Q))
    label = [0] * Q.size
    for pos, x in enumerate(first):
        label[x] = pos
    return label


def descent_delta_oracle(Q: Poset) -> list[int]:
    """Descent counts of the linear extensions, read in the natural labeling.

    Entry i is the number of linear extensions whose labeled word has
    exactly i descents; padded to length ``|Q| + 1``.
    """
    if Q.size > MAX_EXTENSION_POSET:
        raise BudgetExceeded(f"descent enumeration is limited to {MAX_EXTENSION_POSET} elements")
    label = natural_labeling(Q)
    out = [0] * (Q.size + 1)
    for ext in linear_extensions(Q):
        w = [label[x] for x in ext]
        out[sum(1 for a, b in zip(w, w[1:]) if a > b)] += 1
    return out


def _canonical(n: int, rel: frozenset) -> tuple:
    return min(
        tuple(sorted((p[a], p[b]) for a, b in rel)) for p in permutations(range(n))
    )


def poset_catalog(max_size: int) -> list[Poset]:
    """One poset per isomorphism class on 1..max_size elements.

    Every poset has a natural labeling, so it suffices to enumerate the
    transitively closed subsets of {(i, j) : i < j} and deduplicate by a
    canonical form over all relabelings.
    """
    out = []
    for n in range(1, max_size + 1):
        pairs = list(combinations(range(n), 2))
        classes = {}
        for mask in range(2 ** len(pairs)):
            rel = frozenset(p for k, p in enumerate(pairs) if (mask >> k) & 1)
            if any((a, c) not in rel for a, b in rel for b2, c in rel if b == b2):
                continue
            key = _canonical(n, rel)
            if key not in classes:
                classes[key] = Poset.from_relations(n, key)
        out.extend(classes[k] for k in sorted(classes))
    return out


# -- random polytopes ------------------------------------------------------

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """SplitMix64 generator (Steele, Lea, Flood 2014), fixed for reproducibility.

    ``state += 0x9E3779B97F4A7C15``; output is the state mixed by
    ``z = (z ^ z >> 30) * 0xBF58476D1CE4E5B9``,
    ``z = (z ^ z >> 27) * 0x94D049BB133111EB``, ``z ^ z >> 31`` (mod 2^64).
    """

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound) by rejection sampling."""
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            x = self.next()
            if x < limit:
                return x % bound


def derive_seed(seed: int, index: int) -> int:
    """Independent per-item seed, so parallel work never shares a stream."""
    g = SplitMix64(seed)
    g.state = (g.state ^ ((index + 1) * 0xD1B54A32D192ED03)) & _MASK64
    return g.next()


RANDOM_RETRIES = 100


def random_polytope(d: int, coord_bound: int, n_points: int, seed: int) -> LatticePolytope:
    """Hull of ``n_points`` uniform points of [-coord_bound, coord_bound]^d.

    Redraws (from the same stream) until the sample is full-dimensional.
    """
    if not 2 <= d <= 4:
        raise InvalidInput("random polytopes support d in 2..4")
    if not 1 <= coord_bound <= 8:
        raise InvalidInput("coord_bound must be in 1..8")
    if n_points < d + 1:
        raise InvalidInput("need at least d+1 points")
    rng = SplitMix64(seed)
    width = 2 * coord_bound + 1
    for _ in range(RANDOM_RETRIES):
        pts = [tuple(rng.below(width) - coord_bound for _ in range(d)) for _ in range(n_points)]
        if rank([sub(p, pts[0]) for p in pts[1:]]) == d:
            return vertex_reduce(pts, d)
    raise GenerationFailed(f"no full-dimensional sample after {RANDOM_RETRIES} draws")
