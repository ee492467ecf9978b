"""Integer cone walkers shared by the Farey and barycentric sides.

A point p of the base triangle is carried as an integer vector w with
BASE^-1 (1, x, y) proportional to w. Descending into child i multiplies
w by the inverse of the child matrix, which is an integer matrix for both
the F and G families. Only signs matter, so w is kept primitive.
"""
from __future__ import annotations

from math import gcd

from .errors import BoundaryPoint, NoCylinder, OutsideDomain
from .linalg import BASE, BASE_INVERSE, Mat3, Point, integer_cone_vector, mat_vec, project


def _primitive(w: tuple) -> tuple:
    g = gcd(*w)
    if g > 1:
        return tuple(c // g for c in w)
    return w


def _nonneg(w) -> bool:
    return w[0] >= 0 and w[1] >= 0 and w[2] >= 0


def _positive(w) -> bool:
    return w[0] > 0 and w[1] > 0 and w[2] > 0


def start_vector(p: Point) -> tuple:
    w = _primitive(integer_cone_vector(BASE_INVERSE, p))
    if not _nonneg(w):
        raise OutsideDomain(f"point {p} is outside the closed base triangle")
    return w


def end_point(w) -> Point:
    return project(mat_vec(BASE, w))


class Walker:
    """Descends through the nested cells generated by a pair of matrices."""

    def __init__(self, children: tuple):
        self.children = children
        inverses = tuple(m.inverse() for m in children)
        if not all(m.is_integral for m in inverses):
            raise ValueError("walker needs child matrices with integral inverses")
        self.inverses = inverses
        self._one_powers = [inverses[1]]  # inverses[1] ** (2**i)

    def additive(self, p: Point, depth: int) -> tuple:
        """Return (bits, boundary_hit) for the first ``depth`` levels."""
        w = start_vector(p)
        inv0, inv1 = self.inverses
        bits = []
        for _ in range(depth):
            a = mat_vec(inv0, w)
            in0 = _nonneg(a)
            if in0:
                b = mat_vec(inv1, w)
                if _nonneg(b):
                    # on the edge shared by both children
                    bits.append(0)
                    return bits, True
                bits.append(0)
                w = _primitive(a)
                continue
            b = mat_vec(inv1, w)
            if not _nonneg(b):
                raise OutsideDomain(f"point {p} left the subdivision")  # pragma: no cover
            bits.append(1)
            w = _primitive(b)
        return bits, False

    def _one_power(self, i: int) -> Mat3:
        powers = self._one_powers
        while len(powers) <= i:
            powers.append(powers[-1] @ powers[-1])
        return powers[i]

    def multiplicative_step(self, w: tuple, k_limit: int, index: int | None = None) -> tuple:
        """Largest k with w in cone(C1^k), then one C0 step.

        Membership in cone(C1^k) is monotone in k because those cones are
        nested, so the run length is found by galloping then bisecting.
        Returns (k, new_w).
        """
        k = 0
        cur = w
        i = 0
        while True:
            step = 1 << i
            if k + step > k_limit + 1:
                break
            nxt = mat_vec(self._one_power(i), cur)
            if not _nonneg(nxt):
                break
            cur, k = nxt, k + step
            i += 1
        for j in range(i - 1, -1, -1):
            step = 1 << j
            if k + step > k_limit + 1:
                continue
            nxt = mat_vec(self._one_power(j), cur)
            if _nonneg(nxt):
                cur, k = nxt, k + step
        if k > k_limit:
            raise NoCylinder(f"run of ones exceeds the k-limit {k_limit}", index)
        out = mat_vec(self.inverses[0], cur)
        if not _positive(out):
            raise BoundaryPoint(f"point lies on a cylinder boundary (k={k})", index)
        return k, _primitive(out)
