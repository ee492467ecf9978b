"""Question-mark layer: the classical ?(x) from Farey and dyadic sets, the
vertex maps Phi_n between Farey and barycentric cells, and the limit
relation Phi with its point/segment verdicts.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .barycentric import BaryTriangle, bary_partition, bary_triangle, periodic_limit_bary, side_lengths, sqrt_upper
from .classes import class_of
from .errors import InconsistentVertexMap, NotDegenerate, OutOfRange
from .farey import AdditiveSeq, PermTriple, ProjTriangle, additive_sequence, farey_partition, farey_triangle, triple
from .lab import degenerate_detect
from .linalg import Point, cone_coordinates, format_rational

# largest level stored as arrays; deeper levels refine one bracketing interval
MATERIALIZE_MAX = 20


@lru_cache(maxsize=None)
def _farey_arrays(level: int) -> tuple:
    if level == 0:
        return np.array([0, 1], dtype=np.int64), np.array([1, 1], dtype=np.int64)
    num, den = _farey_arrays(level - 1)
    new_num = np.empty(2 * len(num) - 1, dtype=np.int64)
    new_den = np.empty_like(new_num)
    new_num[0::2], new_den[0::2] = num, den
    new_num[1::2] = num[:-1] + num[1:]
    new_den[1::2] = den[:-1] + den[1:]
    new_num.flags.writeable = False
    new_den.flags.writeable = False
    return new_num, new_den


@dataclass(frozen=True)
class FareySet:
    """Level n: level n-1 plus the mediants of neighbours, in increasing order."""

    level: int

    def __post_init__(self):
        if not 0 <= self.level <= MATERIALIZE_MAX:
            raise OutOfRange(f"Farey sets are materialised up to level {MATERIALIZE_MAX}")

    @property
    def arrays(self) -> tuple:
        return _farey_arrays(self.level)

    def __len__(self) -> int:
        return 2**self.level + 1

    def __getitem__(self, i: int) -> Fraction:
        num, den = self.arrays
        return Fraction(int(num[i]), int(den[i]))

    @property
    def elements(self) -> tuple:
        num, den = self.arrays
        return tuple(Fraction(int(a), int(b)) for a, b in zip(num, den))

    def locate(self, x: Fraction) -> int:
        """Largest i with element i <= x."""
        num, den = self.arrays
        p, q = x.numerator, x.denominator
        lo, hi = 0, len(self) - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if int(num[mid]) * q <= p * int(den[mid]):
                lo = mid
            else:
                hi = mid - 1
        return lo


@dataclass(frozen=True)
class DyadicSet:
    level: int

    def __len__(self) -> int:
        return 2**self.level + 1

    def __getitem__(self, i: int) -> Fraction:
        return Fraction(i, 2**self.level)

    @property
    def elements(self) -> tuple:
        return tuple(self[i] for i in range(len(self)))


def classical_qmark(x, level: int) -> Fraction:
    """The level-n interpolant of ?: Farey points go to dyadic points, linearly in between."""
    x = Fraction(x)
    if not 0 <= x <= 1:
        raise OutOfRange(f"?(x) needs 0 <= x <= 1, got {x}")
    if level < 0:
        raise OutOfRange("level must be non-negative")
    if level <= MATERIALIZE_MAX:
        fs = FareySet(level)
        i = fs.locate(x)
        if i == len(fs) - 1:
            return Fraction(1)
        left, right = fs[i], fs[i + 1]
        return (i + (x - left) / (right - left)) / 2**level
    return _qmark_descent(x, level)


def _qmark_descent(x: Fraction, level: int) -> Fraction:
    # walk down the mediant tree keeping the bracket [a/b, c/d] and its dyadic image
    a, b, c, d = 0, 1, 1, 1
    low = Fraction(0)
    for k in range(1, level + 1):
        m = Fraction(a + c, b + d)
        if x == m:
            return low + Fraction(1, 2**k)
        if x < m:
            c, d = a + c, b + d
        else:
            a, b = a + c, b + d
            low += Fraction(1, 2**k)
    left, right = Fraction(a, b), Fraction(c, d)
    return low + (x - left) / (right - left) / 2**level


def phi_n_vertex_map(t: PermTriple, depth: int) -> list:
    """Farey vertex -> barycentric vertex over all cells of the given depth."""
    t = triple(t)
    if depth < 0:
        raise ValueError("depth must be non-negative")
    images = {}
    for (w, fc), (_, bc) in zip(farey_partition(t, depth), bary_partition(t, depth)):
        for fv, bv in zip(fc.vertices, bc.vertices):
            seen = images.setdefault(fv, bv)
            if seen != bv:
                raise InconsistentVertexMap(f"{t}: vertex {fv} maps to both {seen} and {bv}")
    return sorted(images.items())


def affine_transport(p: Point, farey_cell: ProjTriangle, bary_cell: BaryTriangle) -> Point:
    """Image of p under the affine map sending farey vertex j to bary vertex j."""
    c = cone_coordinates(farey_cell.matrix, p)
    weights = [c[j] * farey_cell.matrix[0, j] for j in range(3)]
    total = sum(weights)
    x = sum(wj * v.x for wj, v in zip(weights, bary_cell.vertices)) / total
    y = sum(wj * v.y for wj, v in zip(weights, bary_cell.vertices)) / total
    return Point(Fraction(x), Fraction(y))


# the five convergence categories of the classes
ALWAYS, ZEROS, ONES, BOTH, NEVER = "always", "infinitely-many-0s", "infinitely-many-1s", "both", "never"
CONVERGENCE_CATEGORY = {
    "e,e,23": ALWAYS, "e,e,132": ALWAYS, "e,23,132": ALWAYS,
    "e,e,e": ZEROS, "e,e,12": ZEROS, "e,e,13": ZEROS, "e,23,e": ZEROS,
    "e,12,23": ONES, "e,12,132": ONES, "e,13,23": ONES, "e,13,132": ONES, "e,123,132": ONES,
    "e,12,12": BOTH, "e,13,e": BOTH,
    "e,12,e": NEVER,
}

POINT, SEGMENT, UNDETERMINED = "Point", "Segment", "Undetermined"

# tails are inspected over at most this many trailing bits
TAIL_WINDOW = 24
MIN_REPEATS = 3
# mixed periods checked exactly before trusting the class table for a triple
MIXED_CHECK_LENGTH = 6


def convergence_category(t: PermTriple) -> str:
    return CONVERGENCE_CATEGORY[str(class_of(t).representative)]


@lru_cache(maxsize=None)
def mixed_tail_verdict(t: PermTriple) -> str:
    """Verdict for tails with infinitely many 0s and 1s and no visible period.

    Taken from the class table, unless some short mixed period of this very
    triple contradicts the table, in which case it is Undetermined.
    """
    t = triple(t)
    expected = SEGMENT if convergence_category(t) == NEVER else POINT
    for n in range(2, MIXED_CHECK_LENGTH + 1):
        for w in itertools.product((0, 1), repeat=n):
            if 0 in w and 1 in w:
                got = POINT if periodic_limit_bary(t, w).is_point else SEGMENT
                if got != expected:
                    return UNDETERMINED
    return expected


def tail_period(bits: tuple, window: int = TAIL_WINDOW, repeats: int = MIN_REPEATS):
    """Shortest word u such that the last bits are u repeated at least ``repeats`` times."""
    tail = bits[-window:]
    n = len(tail)
    for p in range(1, n // repeats + 1):
        if all(tail[i] == tail[i - p] for i in range(p, n)):
            return tuple(tail[n - p:])
    return None


@dataclass(frozen=True)
class PhiApprox:
    triple: PermTriple
    depth: int
    sequence: AdditiveSeq
    farey_cell: ProjTriangle
    bary_cell: BaryTriangle
    diameter_sq: Fraction
    image: Point
    verdict: str
    tail_assumption: str

    @property
    def diameter(self) -> float:
        return float(self.diameter_sq) ** 0.5

    @property
    def diameter_upper(self) -> Fraction:
        return sqrt_upper(self.diameter_sq)

    def to_json(self) -> dict:
        return {
            "triple": str(self.triple),
            "depth": self.depth,
            "sequence": self.sequence.to_json(),
            "verdict": self.verdict,
            "tail_assumption": self.tail_assumption,
            "diameter_sq": format_rational(self.diameter_sq),
            "image": self.image.to_json(),
            "farey_cell": self.farey_cell.to_json(),
            "bary_cell": self.bary_cell.to_json(),
        }


def verdict_for(t: PermTriple, seq: AdditiveSeq) -> tuple:
    """(verdict, recorded assumption) for an observed finite itinerary."""
    if seq.boundary_flag:
        return UNDETERMINED, "boundary point: itinerary stops on a cell edge"
    bits = seq.bits
    if len(bits) < 2 * MIN_REPEATS:
        return UNDETERMINED, "itinerary too short to read a tail"
    u = tail_period(bits)
    if u is not None:
        limit = periodic_limit_bary(t, u)
        word = "".join(map(str, u))
        return (POINT if limit.is_point else SEGMENT), f"tail repeats {word} forever"
    verdict = mixed_tail_verdict(t)
    return verdict, "tail has infinitely many 0s and 1s without a short period"


def phi_eval(t: PermTriple, p: Point, depth: int) -> PhiApprox:
    t = triple(t)
    seq = additive_sequence(t, p, depth)
    fcell = farey_triangle(t, seq.bits)
    bcell = bary_triangle(t, seq.bits)
    verdict, assumption = verdict_for(t, seq)
    return PhiApprox(t, depth, seq, fcell, bcell, side_lengths(bcell).max_sq,
                     affine_transport(p, fcell, bcell), verdict, assumption)


def degenerate_phi(t: PermTriple, p: Point, level: int) -> Point:
    """Phi for a map that fixes a corner: ? on the opposite side, carried along the pencil.

    The point p splits its line through the fixed corner in some proportion;
    the image keeps that proportion on the line to the ?-image of the side point.
    """
    t = triple(t)
    fixed = degenerate_detect(t)
    if fixed is None:
        raise NotDegenerate(f"{t} does not fix a corner")
    x, y = Fraction(p.x), Fraction(p.y)
    if not (0 <= y <= x <= 1):
        raise OutOfRange(f"{p} is outside the closed triangle")
    if fixed == 0:
        # corner (0,0), opposite side x = 1 parametrised by y
        if x == 0:
            return Point(Fraction(0), Fraction(0))
        s, a = x, y / x
        q = classical_qmark(a, level)
        return Point(s, s * q)
    if fixed == 1:
        # corner (1,0), opposite side the diagonal y = x parametrised by x
        s = 1 - x + y
        if s == 0:
            return Point(Fraction(1), Fraction(0))
        q = classical_qmark(y / s, level)
        return Point(1 - s * (1 - q), s * q)
    # corner (1,1), opposite side y = 0 parametrised by x
    s = 1 - y
    if s == 0:
        return Point(Fraction(1), Fraction(1))
    q = classical_qmark((x - y) / s, level)
    return Point(1 - s * (1 - q), 1 - s)


__all__ = [
    "FareySet", "DyadicSet", "classical_qmark", "phi_n_vertex_map", "phi_eval", "PhiApprox",
    "degenerate_phi", "affine_transport", "verdict_for", "mixed_tail_verdict", "tail_period",
    "convergence_category", "CONVERGENCE_CATEGORY", "POINT", "SEGMENT", "UNDETERMINED",
]
