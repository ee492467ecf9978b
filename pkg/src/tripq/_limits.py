"""Exact polynomial helpers and limits of periodic matrix products.

Polynomials are lists of coefficients, constant term first. Everything is
rational; real roots are located by Sturm-sequence bisection.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import math
from math import lcm

from .linalg import BASE, IDENTITY, Mat3, Point, mat_vec, project


def trim(p: list) -> list:
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def degree(p: list) -> int:
    return len(trim(p)) - 1


def poly_eval(p: list, x) -> Fraction:
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_divmod(a: list, b: list) -> tuple:
    a = [Fraction(c) for c in trim(a)]
    b = trim(b)
    if b == [0]:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [Fraction(0)], a
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    lead = Fraction(b[-1])
    for i in range(len(a) - len(b), -1, -1):
        coef = a[i + len(b) - 1] / lead
        q[i] = coef
        for j, bj in enumerate(b):
            a[i + j] -= coef * bj
    return trim(q), trim(a[: len(b) - 1] or [Fraction(0)])


def poly_derivative(p: list) -> list:
    return trim([i * c for i, c in enumerate(p)][1:] or [0])


def poly_gcd(a: list, b: list) -> list:
    a, b = trim(a), trim(b)
    while b != [0]:
        _, r = poly_divmod(a, b)
        a, b = b, r
    lead = Fraction(a[-1])
    return [Fraction(c) / lead for c in a]


def squarefree(p: list) -> list:
    g = poly_gcd(p, poly_derivative(p))
    q, _ = poly_divmod(p, g)
    return q


def sturm_chain(p: list) -> list:
    chain = [trim(p), poly_derivative(p)]
    while degree(chain[-1]) > 0:
        _, r = poly_divmod(chain[-2], chain[-1])
        if r == [0]:
            break
        chain.append([-c for c in r])
    return chain


def _sign_changes(values) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def roots_above(chain: list, x) -> int:
    """Number of distinct real roots strictly greater than x (x not a root)."""
    at_x = _sign_changes(poly_eval(q, x) for q in chain)
    at_inf = _sign_changes(q[-1] for q in chain)
    return at_x - at_inf


def root_bound(p: list) -> Fraction:
    """Cauchy bound: every root has modulus below it."""
    p = trim(p)
    lead = Fraction(p[-1])
    return 1 + max(abs(Fraction(c) / lead) for c in p[:-1]) if len(p) > 1 else Fraction(1)


def isolate_real_roots(p: list) -> tuple:
    """(squarefree part, disjoint open intervals each holding exactly one real root)."""
    sf = squarefree(p)
    if degree(sf) < 1:
        return sf, []
    chain = sturm_chain(sf)
    bound = root_bound(sf)
    out = []

    def count(lo, hi):
        return roots_above(chain, lo) - roots_above(chain, hi)

    def split(lo, hi, n):
        # exactly n roots in (lo, hi); endpoints are never roots
        if n == 0:
            return
        if n == 1:
            out.append((lo, hi))
            return
        k = 1
        mid = (lo + hi) / 2
        while poly_eval(sf, mid) == 0:
            k += 1
            mid = lo + (hi - lo) * Fraction(k, 2 * k + 1)
        left = count(lo, mid)
        split(lo, mid, left)
        split(mid, hi, n - left)

    lo, hi = -bound - 1, bound + 1
    split(lo, hi, count(lo, hi))
    return sf, out


def refine_root(sf: list, interval: tuple, width: Fraction) -> tuple:
    """Shrink an isolating interval of a simple root by sign bisection."""
    lo, hi = interval
    s_lo = poly_eval(sf, lo) > 0
    while hi - lo > width:
        mid = (lo + hi) / 2
        v = poly_eval(sf, mid)
        if v == 0:
            eps = min(width, hi - lo) / 4
            return (mid - eps, mid + eps)
        if (v > 0) == s_lo:
            lo = mid
        else:
            hi = mid
    return (lo, hi)


def real_root_intervals(p: list, width: Fraction) -> list:
    """Isolating open intervals of width at most ``width`` around every distinct real root."""
    sf, intervals = isolate_real_roots(p)
    return [refine_root(sf, iv, width) for iv in intervals]


def largest_real_root(p: list, width: Fraction) -> tuple:
    sf, intervals = isolate_real_roots(p)
    if not intervals:
        raise ValueError("polynomial has no real root")
    return refine_root(sf, intervals[-1], width)


def rational_root_near(p: list, interval: tuple):
    """The integer root of a monic integer polynomial inside interval, if any."""
    lo, hi = interval
    for cand in range(math.floor(lo), math.ceil(hi) + 1):
        if lo < cand < hi and poly_eval(p, cand) == 0:
            return cand
    return None


def integer_roots(p: list) -> list:
    """Integer roots of an integer polynomial, found by rounding isolated real roots."""
    found = []
    for iv in real_root_intervals(p, Fraction(1, 4)):
        r = rational_root_near(p, iv)
        if r is not None:
            found.append(r)
    return sorted(found)


def multiplicity(p: list, r) -> tuple:
    """(m, p / (x - r)^m) for the exact root r."""
    m = 0
    q = trim(p)
    while degree(q) >= 1 and poly_eval(q, r) == 0:
        q, _ = poly_divmod(q, [-Fraction(r), 1])
        m += 1
    return m, q


def char_poly(m: Mat3) -> list:
    """det(x I - m), constant term first; integer when m is integral."""
    (a, b, c), (d, e, f), (g, h, i) = m.rows
    tr = a + e + i
    minors = (a * e - b * d) + (a * i - c * g) + (e * i - f * h)
    return [-m.det(), minors, -tr, 1]


def format_poly(p: list, var: str = "x") -> str:
    terms = []
    for k in range(len(p) - 1, -1, -1):
        c = Fraction(p[k])
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if k == 0:
            body = str(mag) if mag.denominator > 1 else str(mag.numerator)
        else:
            coef = "" if mag == 1 else (f"{mag}*" if mag.denominator > 1 else f"{mag.numerator}*")
            body = coef + (var if k == 1 else f"{var}^{k}")
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        text += f" {sign} {body}"
    return text


def poly_of_matrix(p: list, m: Mat3) -> Mat3:
    acc = Mat3(((0, 0, 0), (0, 0, 0), (0, 0, 0)))
    for c in reversed(p):
        acc = acc @ m
        acc = Mat3([[acc[i, j] + (c if i == j else 0) for j in range(3)] for i in range(3)])
    return acc


def _solve_in_span(vectors: list, target: tuple):
    """Exact coefficients c with sum c_k vectors[k] = target, or None."""
    n = len(vectors)
    rows = [[Fraction(vectors[k][r]) for k in range(n)] + [Fraction(target[r])] for r in range(3)]
    piv_cols = []
    row = 0
    for col in range(n):
        pivot = next((r for r in range(row, 3) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[row], rows[pivot] = rows[pivot], rows[row]
        pv = rows[row][col]
        rows[row] = [v / pv for v in rows[row]]
        for r in range(3):
            if r != row and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[row])]
        piv_cols.append(col)
        row += 1
    for r in range(row, 3):
        if rows[r][n] != 0:
            return None
    coeffs = [Fraction(0)] * n
    for r, col in enumerate(piv_cols):
        coeffs[col] = rows[r][n]
    return coeffs


def cyclic_min_poly(m: Mat3, v: tuple) -> list:
    """Monic polynomial of least degree with p(m) v = 0."""
    krylov = [tuple(v)]
    while True:
        nxt = mat_vec(m, krylov[-1])
        coeffs = _solve_in_span(krylov, nxt)
        if coeffs is not None:
            return [-c for c in coeffs] + [Fraction(1)]
        krylov.append(nxt)


@dataclass(frozen=True)
class ColumnLimit:
    """Limiting direction of column j of m^k as k grows."""

    rate_interval: tuple  # isolating interval of the dominant root of the scaled power
    rate: int | None  # that root when it is an integer, else None
    min_poly: tuple  # cyclic minimal polynomial of the scaled power on e_j
    direction: tuple  # exact when rate is an integer, approximate otherwise
    exact: bool


# after this power every peripheral eigenvalue of a nonnegative 3x3 matrix is positive real
PERIPHERAL_POWER = 6


def column_limits(m: Mat3, width: Fraction = Fraction(1, 2**80)) -> list:
    n = m.power(PERIPHERAL_POWER)
    den = lcm(*(Fraction(v).denominator for row in n.rows for v in row))
    n = n * den  # integral, same eigenvectors
    out = []
    for j in range(3):
        e = tuple(1 if i == j else 0 for i in range(3))
        p = [Fraction(c) for c in cyclic_min_poly(n, e)]
        sf, intervals = isolate_real_roots(p)
        coarse = refine_root(sf, intervals[-1], Fraction(1, 4))
        r = rational_root_near(p, coarse)
        if r is not None:
            lo, hi = coarse
            mult, s = multiplicity(p, r)
            shift = Mat3([[n[i, k] - (r if i == k else 0) for k in range(3)] for i in range(3)])
            d = mat_vec(poly_of_matrix(s, n), e)
            for _ in range(mult - 1):
                d = mat_vec(shift, d)
            exact = True
        else:
            lo, hi = refine_root(sf, coarse, width)
            approx = (lo + hi) / 2
            s, _ = poly_divmod(p, [-approx, 1])
            d = mat_vec(poly_of_matrix(s, n), e)
            exact = False
        if sum(d) < 0:
            d = tuple(-c for c in d)
        out.append(ColumnLimit((lo, hi), r, tuple(p), tuple(d), exact))
    return out


def _same_rate(a: ColumnLimit, b: ColumnLimit) -> bool:
    if a.exact != b.exact:
        return False
    if a.exact:
        return a.rate == b.rate
    lo, hi = max(a.rate_interval[0], b.rate_interval[0]), min(a.rate_interval[1], b.rate_interval[1])
    if lo >= hi:
        return False
    # equal algebraic numbers iff the common factor has a root in the overlap
    g = poly_gcd(list(a.min_poly), list(b.min_poly))
    if degree(g) < 1:
        return False
    chain = sturm_chain(squarefree(g))
    return roots_above(chain, lo) - roots_above(chain, hi) > 0


def _parallel(u, v) -> bool:
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]) == (0, 0, 0)


@dataclass(frozen=True)
class LimitSet:
    """Limit of the nested cells pi(BASE m^k): a point, a segment or a triangle."""

    kind: str  # "point" | "segment" | "triangle"
    points: tuple  # one, two or three Points
    exact: bool
    columns: tuple


def limit_set(m: Mat3) -> LimitSet:
    cols = column_limits(m)
    exact = all(c.exact for c in cols)
    if all(_same_rate(cols[0], c) for c in cols[1:]):
        if not cols[0].exact or all(_parallel(cols[0].direction, c.direction) for c in cols[1:]):
            p = project(mat_vec(BASE, cols[0].direction))
            return LimitSet("point", (p,), exact, tuple(cols))
    pts = []
    for c in cols:
        p = project(mat_vec(BASE, c.direction))
        if p not in pts:
            pts.append(p)
    if len(pts) == 1:
        return LimitSet("point", (pts[0],), exact, tuple(cols))
    if len(pts) == 2:
        return LimitSet("segment", tuple(pts), exact, tuple(cols))
    a, b, c = pts
    area2 = (b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y)
    if area2 != 0:
        return LimitSet("triangle", tuple(pts), exact, tuple(cols))
    # collinear: keep the two extreme points
    pairs = [(a, b), (a, c), (b, c)]
    far = max(pairs, key=lambda uv: (uv[0].x - uv[1].x) ** 2 + (uv[0].y - uv[1].y) ** 2)
    return LimitSet("segment", far, exact, tuple(cols))


__all__ = [
    "ColumnLimit", "LimitSet", "char_poly", "column_limits", "cyclic_min_poly", "format_poly",
    "integer_roots", "largest_real_root", "limit_set", "multiplicity", "poly_divmod", "poly_eval",
    "real_root_intervals", "squarefree", "IDENTITY",
]
