"""Barycentric side: half-weighted matrices G0, G1 and their cells.

Every G matrix is column-stochastic, so each cell has exactly half the
area of its parent and periodic itineraries have rational limits.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import _limits
from ._walk import Walker, end_point, start_vector
from .errors import DegenerateProjection
from .farey import F0, F1, AdditiveSeq, PermTriple, _bits, product, triple
from .linalg import (
    BASE, IDENTITY, Mat3, Point, format_rational, perm, shoelace_area, squared_distance, vertices,
)

HALF = Mat3(((1, 0, 0), (0, 1, 0), (0, 0, Fraction(1, 2))))
G0 = F0 @ HALF
G1 = F1 @ HALF

DEFAULT_K_LIMIT = 10**6
# finite-depth notion of "has shrunk to a point"
POINT_THRESHOLD_SQ = Fraction(1, 2**80)


@lru_cache(maxsize=None)
def bary_matrices(t: PermTriple) -> tuple:
    """(sigma G0 tau0, sigma G1 tau1)."""
    t = triple(t)
    s = perm(t.sigma).matrix
    return (s @ G0 @ perm(t.tau0).matrix, s @ G1 @ perm(t.tau1).matrix)


@dataclass(frozen=True)
class BaryTriangle:
    matrix: Mat3
    vertices: tuple = field(compare=False)
    depth: int = 0

    @classmethod
    def from_matrix(cls, m: Mat3, depth: int) -> "BaryTriangle":
        return cls(m, vertices(m), depth)

    @property
    def normalized_area(self) -> Fraction:
        return normalized_area(self)

    def to_json(self) -> dict:
        return {
            "matrix": self.matrix.to_json(),
            "vertices": [v.to_json() for v in self.vertices],
            "depth": self.depth,
            "normalized_area": format_rational(self.normalized_area),
        }


def bary_triangle(t: PermTriple, bits) -> BaryTriangle:
    bits = _bits(bits)
    return BaryTriangle.from_matrix(product(bary_matrices(triple(t)), bits), len(bits))


def bary_partition(t: PermTriple, depth: int) -> list:
    pair = bary_matrices(triple(t))
    cells = [((), BASE)]
    for _ in range(depth):
        cells = [(w + (i,), m @ pair[i]) for w, m in cells for i in (0, 1)]
    return [(w, BaryTriangle.from_matrix(m, depth)) for w, m in cells]


def normalized_area(tri) -> Fraction:
    """Twice the Euclidean area, so the base triangle has area one.

    Uses |det M| / (x y z) with x, y, z the first-row entries of the matrix.
    """
    m = tri.matrix if hasattr(tri, "matrix") else tri
    x, y, z = m.rows[0]
    if x == 0 or y == 0 or z == 0:
        raise DegenerateProjection("a column has zero first coordinate")
    return abs(Fraction(m.det())) / abs(Fraction(x) * y * z)


def shoelace_normalized_area(tri) -> Fraction:
    a, b, c = tri.vertices
    return 2 * shoelace_area(a, b, c)


@dataclass(frozen=True)
class SideLengths:
    """Squared side lengths: tau = |v1 v2|, rho = |v2 v3|, mu = |v1 v3|."""

    tau_sq: Fraction
    rho_sq: Fraction
    mu_sq: Fraction

    @property
    def tau_n(self) -> float:
        return math.sqrt(self.tau_sq)

    @property
    def rho_n(self) -> float:
        return math.sqrt(self.rho_sq)

    @property
    def mu_n(self) -> float:
        return math.sqrt(self.mu_sq)

    @property
    def max_sq(self) -> Fraction:
        return max(self.tau_sq, self.rho_sq, self.mu_sq)

    @property
    def min_sq(self) -> Fraction:
        return min(self.tau_sq, self.rho_sq, self.mu_sq)

    def to_json(self) -> dict:
        return {"tau_sq": format_rational(self.tau_sq), "rho_sq": format_rational(self.rho_sq),
                "mu_sq": format_rational(self.mu_sq)}


def side_lengths(tri) -> SideLengths:
    v1, v2, v3 = tri.vertices
    return SideLengths(squared_distance(v1, v2), squared_distance(v2, v3), squared_distance(v1, v3))


def sqrt_upper(value: Fraction, bits: int = 64) -> Fraction:
    """A rational upper bound on sqrt(value) within 2^-bits relative error."""
    value = Fraction(value)
    scale = 1 << (2 * bits)
    num = value.numerator * scale
    root = math.isqrt(num // value.denominator)
    while Fraction(root * root, scale) < value:
        root += 1
    return Fraction(root, 1 << bits)


@lru_cache(maxsize=None)
def _bary_walker(t: PermTriple) -> Walker:
    return Walker(bary_matrices(t))


def bary_sequence(t: PermTriple, p: Point, depth: int) -> AdditiveSeq:
    bits, hit = _bary_walker(triple(t)).additive(p, depth)
    return AdditiveSeq(tuple(bits), hit)


def tent_step(t: PermTriple, p: Point, k_limit: int = DEFAULT_K_LIMIT) -> tuple:
    """(k, T(p)) where p lies in the cylinder pi(BASE G1^k G0)."""
    k, w = _bary_walker(triple(t)).multiplicative_step(start_vector(p), k_limit)
    return k, end_point(w)


def tent_cylinder(t: PermTriple, k: int) -> BaryTriangle:
    g0, g1 = bary_matrices(triple(t))
    return BaryTriangle.from_matrix(BASE @ g1.power(k) @ g0, k + 1)


@dataclass(frozen=True)
class BaryLimit:
    """Limit of the Gamma cells along a repeated period: a point or a segment."""

    triple: PermTriple
    period: tuple
    matrix: Mat3
    kind: str  # "point" or "segment"
    points: tuple
    fixed_space_dim: int

    @property
    def is_point(self) -> bool:
        return self.kind == "point"

    @property
    def point(self) -> Point | None:
        return self.points[0] if self.is_point else None

    def to_json(self) -> dict:
        return {"triple": str(self.triple), "period": list(self.period), "kind": self.kind,
                "points": [q.to_json() for q in self.points], "fixed_space_dim": self.fixed_space_dim}


def fixed_space_dimension(m: Mat3) -> int:
    shifted = Mat3([[m[i, j] - (1 if i == j else 0) for j in range(3)] for i in range(3)])
    return 3 - _rank(shifted)


def _rank(m: Mat3) -> int:
    rows = [[Fraction(v) for v in row] for row in m.rows]
    rank = 0
    for col in range(3):
        pivot = next((r for r in range(rank, 3) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for r in range(3):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col] / rows[rank][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def periodic_limit_bary(t: PermTriple, period) -> BaryLimit:
    t = triple(t)
    bits = _bits(period)
    if not bits:
        raise ValueError("period must be nonempty")
    m = product(bary_matrices(t), bits, IDENTITY)
    limit = _limits.limit_set(m)
    if limit.kind == "triangle":  # pragma: no cover - excluded by the halving of areas
        raise AssertionError("barycentric cells cannot keep positive area")
    return BaryLimit(t, bits, m, limit.kind, limit.points, fixed_space_dimension(m))
