"""Resolvable block designs used to seed approximate MUB constructions."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations

from .algebra import field_new

Block = tuple[int, ...]
ParallelClass = tuple[Block, ...]


@dataclass(frozen=True)
class ResolvableDesign:
    d: int
    classes: tuple[ParallelClass, ...]
    provenance: str = ""

    def __post_init__(self):
        classes = tuple(tuple(tuple(sorted(int(p) for p in blk)) for blk in cls) for cls in self.classes)
        object.__setattr__(self, "classes", classes)

    @property
    def r(self) -> int:
        return len(self.classes)

    def block_sizes(self) -> set[int]:
        return {len(b) for cls in self.classes for b in cls}

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "classes": [[list(b) for b in cls] for cls in self.classes],
            "provenance": self.provenance,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ResolvableDesign":
        return cls(int(data["d"]), data["classes"], data.get("provenance", ""))


@dataclass
class DesignReport:
    ok: bool
    failures: list[str] = field(default_factory=list)


@dataclass(frozen=True)
class IntersectionProfile:
    histogram: dict[int, int]
    mu: int


def validate_design(D: ResolvableDesign) -> DesignReport:
    failures = []
    points = set(range(D.d))
    if D.r == 0:
        failures.append("design has no parallel classes")
    for c, cls in enumerate(D.classes):
        seen: list[int] = [p for blk in cls for p in blk]
        if any(len(blk) == 0 for blk in cls):
            failures.append(f"class {c}: empty block")
        if len(seen) != len(set(seen)):
            dup = sorted(p for p, n in Counter(seen).items() if n > 1)
            failures.append(f"class {c}: points {dup} occur in more than one block")
        if set(seen) != points:
            missing = sorted(points - set(seen))
            extra = sorted(set(seen) - points)
            failures.append(f"class {c}: not a partition of 0..{D.d - 1} (missing {missing}, foreign {extra})")
    return DesignReport(not failures, failures)


def intersection_profile(D: ResolvableDesign) -> IntersectionProfile:
    """Histogram of |B & B'| over block pairs taken from distinct classes."""
    sets = [[frozenset(b) for b in cls] for cls in D.classes]
    hist: Counter = Counter()
    for a, b in combinations(range(D.r), 2):
        for x in sets[a]:
            for y in sets[b]:
                hist[len(x & y)] += 1
    hist_d = dict(sorted(hist.items()))
    mu = max((k for k, v in hist_d.items() if v), default=0)
    return IntersectionProfile(hist_d, mu)


def partner_counts(D: ResolvableDesign) -> Counter:
    """Multiset of per-(block, other class) intersection patterns.

    Each key lists, in decreasing order, the intersection sizes of one block
    with every block of one other class.
    """
    sets = [[frozenset(b) for b in cls] for cls in D.classes]
    out: Counter = Counter()
    for a in range(D.r):
        for b in range(D.r):
            if a == b:
                continue
            for x in sets[a]:
                out[tuple(sorted((len(x & y) for y in sets[b]), reverse=True))] += 1
    return out


def _checked(D: ResolvableDesign) -> ResolvableDesign:
    rep = validate_design(D)
    if not rep.ok:
        raise AssertionError(f"internal construction error: {rep.failures}")
    return D


def affine_resolvable_bibd(q: int) -> ResolvableDesign:
    """Affine plane AG(2, q); point (x, y) has index x*q + y.

    Classes 0..q-1 are the lines y = m x + c for slope m; class q holds the
    vertical lines x = c.
    """
    F = field_new(q)
    classes = []
    for m in range(q):
        cls = []
        for c in range(q):
            cls.append(tuple(x * q + int(F.add[F.mul[m, x], c]) for x in range(q)))
        classes.append(tuple(cls))
    classes.append(tuple(tuple(x * q + y for y in range(q)) for x in range(q)))
    return _checked(ResolvableDesign(q * q, tuple(classes), f"affine-plane({q})"))


def resolvable_transversal_design(k: int, s: int) -> ResolvableDesign:
    """Resolvable TD(k, s): k groups of size s, s classes of s blocks of size k.

    Point (g, y) with group g < k and y in GF(s) has index g*s + y.  Class a
    holds the blocks {(g, a*g + b)}, one per intercept b, so two blocks from
    different classes meet in at most one point.
    """
    if k > s:
        raise ValueError(f"need k <= s, got k={k}, s={s}")
    if k < 1:
        raise ValueError("k must be positive")
    F = field_new(s)
    classes = []
    for a in range(s):
        cls = []
        for b in range(s):
            cls.append(tuple(g * s + int(F.add[F.mul[a, g], b]) for g in range(k)))
        classes.append(tuple(cls))
    return _checked(ResolvableDesign(k * s, tuple(classes), f"rtd(k={k},s={s})"))


def q2_minus_1_design(q: int) -> ResolvableDesign:
    """RBD on q^2-1 points: q+1 classes of q-1 blocks of size q+1.

    Start from AG(2, q) and delete the point O with the largest index.  In
    each class the line through O loses O and becomes row i of a
    (q+1) x (q-1) array; its points are re-inserted into the other blocks
    of the same class, each block receiving one, steered by the points of
    row i+1 (rows wrap around).

    Row i is {O + t v_i : t != 0} for the class direction v_i.  The point
    O + t v_i joins the class-i block through O + c_i t v_{i+1} with
    c_i = 1 / det(v_{i+1}, v_i).  Two augmented blocks then share three
    points only if -det(v_i, v_m)^2 = 1, which has no solution when -1 is a
    non-square, i.e. q = 3 (mod 4): there every cross-class intersection is
    1 or 2.  Other q get the same recipe without that guarantee.
    """
    if q < 3:
        raise ValueError("q must be at least 3")
    F = field_new(q)
    add, mul, inv = F.add, F.mul, F.inv
    plane = affine_resolvable_bibd(q)
    origin = (q - 1, q - 1)  # index q^2 - 1
    dirs = [(1, m) for m in range(q)] + [(0, 1)]

    def det(u, v):
        return int(F.sub(mul[u[0], v[1]], mul[u[1], v[0]]))

    def point(t, v):
        return int(add[origin[0], mul[t, v[0]]]) * q + int(add[origin[1], mul[t, v[1]]])

    removed = origin[0] * q + origin[1]
    kept = [[list(blk) for blk in cls if removed not in blk] for cls in plane.classes]
    n = q + 1
    for i in range(n):
        v, w = dirs[i], dirs[(i + 1) % n]
        c = int(inv[det(w, v)])
        for t in range(1, q):
            steer = point(int(mul[c, t]), w)
            target = next(blk for blk in kept[i] if steer in blk)
            target.append(point(t, v))
    classes = tuple(tuple(tuple(sorted(b)) for b in cls) for cls in kept)
    return _checked(ResolvableDesign(q * q - 1, classes, f"q2-minus-1({q})"))


# One resolution of the Kirkman triple system on 15 points.
KTS15_CLASSES = (
    ((0, 1, 2), (3, 7, 11), (4, 9, 14), (5, 10, 12), (6, 8, 13)),
    ((0, 3, 4), (1, 7, 9), (2, 12, 13), (5, 8, 14), (6, 10, 11)),
    ((0, 5, 6), (1, 8, 10), (2, 11, 14), (3, 9, 13), (4, 7, 12)),
    ((0, 7, 8), (1, 11, 13), (2, 4, 5), (3, 10, 14), (6, 9, 12)),
    ((0, 9, 10), (1, 12, 14), (2, 3, 6), (4, 8, 11), (5, 7, 13)),
    ((0, 11, 12), (1, 3, 5), (2, 8, 9), (4, 10, 13), (6, 7, 14)),
    ((0, 13, 14), (1, 4, 6), (2, 7, 10), (3, 8, 12), (5, 9, 11)),
)


def kirkman_kts15() -> ResolvableDesign:
    return _checked(ResolvableDesign(15, KTS15_CLASSES, "kirkman-kts15"))
