"""Farey side of the 216 triangle partition maps.

A map is named by a triple of permutations (sigma, tau0, tau1). Its two
subdivision matrices are sigma F0 tau0 and sigma F1 tau1, and the cells of
depth n are the projections of BASE times products of n of them.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from . import _limits
from ._walk import Walker, end_point, start_vector
from .errors import BoundaryPoint, NoCylinder, NonConvergent, ParseError
from .linalg import (
    BASE, IDENTITY, PERM_NAMES, Mat3, Point, format_rational, mat_vec, perm, project, vertices,
)

F0 = Mat3(((0, 0, 1), (1, 0, 0), (0, 1, 1)))
F1 = Mat3(((1, 0, 1), (0, 1, 0), (0, 0, 1)))

DEFAULT_K_LIMIT = 10**6


@dataclass(frozen=True, order=False)
class PermTriple:
    """(sigma, tau0, tau1), each one of e, 12, 13, 23, 123, 132."""

    sigma: str
    tau0: str
    tau1: str

    def __post_init__(self):
        for name in ("sigma", "tau0", "tau1"):
            object.__setattr__(self, name, perm(getattr(self, name)).name)

    @property
    def names(self) -> tuple:
        return (self.sigma, self.tau0, self.tau1)

    def sort_key(self) -> tuple:
        return tuple(PERM_NAMES.index(n) for n in self.names)

    def __lt__(self, other: "PermTriple") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        return ",".join(self.names)

    def __repr__(self) -> str:
        return f"PermTriple({self})"

    def label(self) -> str:
        return "(" + ",".join(self.names) + ")"


def triple(*args) -> PermTriple:
    """Build a triple from 'e,12,e', '(e,12,e)', a 3-sequence or three names."""
    if len(args) == 3:
        return PermTriple(*args)
    (arg,) = args
    if isinstance(arg, PermTriple):
        return arg
    if isinstance(arg, str):
        parts = [p.strip() for p in arg.strip().strip("()").split(",")]
    else:
        parts = list(arg)
    if len(parts) != 3:
        raise ParseError(f"a triple needs three permutation names: {arg!r}")
    return PermTriple(*parts)


def all_triples() -> list:
    return [PermTriple(*names) for names in itertools.product(PERM_NAMES, repeat=3)]


@lru_cache(maxsize=None)
def farey_matrices(t: PermTriple) -> tuple:
    """(sigma F0 tau0, sigma F1 tau1)."""
    t = triple(t)
    s = perm(t.sigma).matrix
    return (s @ F0 @ perm(t.tau0).matrix, s @ F1 @ perm(t.tau1).matrix)


@dataclass(frozen=True)
class ProjTriangle:
    """A cell: matrix whose columns are projective vertices, and their projections."""

    matrix: Mat3
    vertices: tuple = field(compare=False)

    @classmethod
    def from_matrix(cls, m: Mat3) -> "ProjTriangle":
        return cls(m, vertices(m))

    def to_json(self) -> dict:
        return {"matrix": self.matrix.to_json(), "vertices": [v.to_json() for v in self.vertices]}


@dataclass(frozen=True)
class AdditiveSeq:
    bits: tuple
    boundary_flag: bool = False

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        if any(b not in (0, 1) for b in bits):
            raise ValueError("additive sequences hold only 0 and 1")
        object.__setattr__(self, "bits", bits)

    def __len__(self) -> int:
        return len(self.bits)

    def __iter__(self):
        return iter(self.bits)

    def __str__(self) -> str:
        return "".join(map(str, self.bits))

    @classmethod
    def parse(cls, text: str) -> "AdditiveSeq":
        text = text.replace(",", "").replace(" ", "")
        if any(ch not in "01" for ch in text):
            raise ParseError(f"bit strings use only 0 and 1: {text!r}")
        return cls(tuple(int(ch) for ch in text))

    def to_json(self) -> dict:
        return {"bits": list(self.bits), "boundary_flag": self.boundary_flag}


@dataclass(frozen=True)
class MultiplicativeSeq:
    digits: tuple
    remainder: int = 0  # trailing ones not yet closed by a zero

    def __post_init__(self):
        digits = tuple(int(d) for d in self.digits)
        if any(d < 0 for d in digits):
            raise ValueError("digits are non-negative")
        object.__setattr__(self, "digits", digits)

    @property
    def partial_sums(self) -> tuple:
        return tuple(itertools.accumulate(self.digits))

    def __len__(self) -> int:
        return len(self.digits)

    def to_json(self) -> dict:
        return {"digits": list(self.digits), "partial_sums": list(self.partial_sums),
                "remainder": self.remainder}


def _bits(seq) -> tuple:
    if isinstance(seq, AdditiveSeq):
        return seq.bits
    if isinstance(seq, str):
        return AdditiveSeq.parse(seq).bits
    return tuple(seq)


def product(pair: tuple, bits: Iterable[int], start: Mat3 = BASE) -> Mat3:
    m = start
    for b in bits:
        m = m @ pair[b]
    return m


def farey_triangle(t: PermTriple, bits) -> ProjTriangle:
    """The cell pi(BASE F_{i1} ... F_{in})."""
    return ProjTriangle.from_matrix(product(farey_matrices(triple(t)), _bits(bits)))


def farey_partition(t: PermTriple, depth: int) -> list:
    """All 2^depth cells of the given depth as (bits, ProjTriangle), in lexicographic order."""
    pair = farey_matrices(triple(t))
    cells = [((), BASE)]
    for _ in range(depth):
        cells = [(w + (i,), m @ pair[i]) for w, m in cells for i in (0, 1)]
    return [(w, ProjTriangle.from_matrix(m)) for w, m in cells]


@lru_cache(maxsize=None)
def _farey_walker(t: PermTriple) -> Walker:
    return Walker(farey_matrices(t))


def additive_sequence(t: PermTriple, p: Point, depth: int) -> AdditiveSeq:
    """The first ``depth`` bits of the itinerary of p through the Farey cells."""
    bits, hit = _farey_walker(triple(t)).additive(p, depth)
    return AdditiveSeq(tuple(bits), hit)


def gauss_step(t: PermTriple, p: Point, k_limit: int = DEFAULT_K_LIMIT) -> tuple:
    """(k, T(p)) where p lies in the cylinder pi(BASE F1^k F0)."""
    k, w = _farey_walker(triple(t)).multiplicative_step(start_vector(p), k_limit)
    return k, end_point(w)


def multiplicative_sequence(t: PermTriple, p: Point, n: int,
                            k_limit: int = DEFAULT_K_LIMIT) -> MultiplicativeSeq:
    walker = _farey_walker(triple(t))
    w = start_vector(p)
    digits = []
    for index in range(n):
        try:
            k, w = walker.multiplicative_step(w, k_limit, index)
        except (BoundaryPoint, NoCylinder) as exc:
            exc.digits = tuple(digits)
            raise
        digits.append(k)
    return MultiplicativeSeq(tuple(digits))


def additive_from_multiplicative(m) -> AdditiveSeq:
    digits = m.digits if isinstance(m, MultiplicativeSeq) else tuple(m)
    bits = []
    for d in digits:
        bits.extend([1] * d)
        bits.append(0)
    if isinstance(m, MultiplicativeSeq):
        bits.extend([1] * m.remainder)
    return AdditiveSeq(tuple(bits))


def multiplicative_from_additive(a) -> MultiplicativeSeq:
    digits = []
    run = 0
    for b in _bits(a):
        if b:
            run += 1
        else:
            digits.append(run)
            run = 0
    return MultiplicativeSeq(tuple(digits), run)


@dataclass(frozen=True)
class FareyLimit:
    """Algebraic data of a periodic Farey itinerary."""

    triple: PermTriple
    period: tuple
    matrix: Mat3
    char_poly: tuple  # integer coefficients, constant term first
    perron_interval: tuple  # (lo, hi) with the Perron root strictly inside
    min_poly: tuple
    converges: bool
    point: Point | None  # limit point (exact when the Perron root is rational)
    point_exact: bool
    residual: Fraction | None  # max |M d - r d| / max |d| for the reported direction
    segment: tuple | None

    @property
    def min_poly_degree(self) -> int:
        return len(self.min_poly) - 1

    def char_poly_text(self, var: str = "x") -> str:
        return _limits.format_poly(list(self.char_poly), var)

    def to_json(self) -> dict:
        return {
            "triple": str(self.triple),
            "period": list(self.period),
            "matrix": self.matrix.to_json(),
            "char_poly": [str(c) for c in self.char_poly],
            "char_poly_text": self.char_poly_text(),
            "perron_interval": [format_rational(self.perron_interval[0]), format_rational(self.perron_interval[1])],
            "min_poly": [str(c) for c in self.min_poly],
            "min_poly_degree": self.min_poly_degree,
            "converges": self.converges,
            "point": self.point.to_json() if self.point else None,
            "point_exact": self.point_exact,
            "residual": format_rational(self.residual) if self.residual is not None else None,
            "segment": [q.to_json() for q in self.segment] if self.segment else None,
        }


def perron_min_poly(cp: list, interval: tuple) -> list:
    """Minimal polynomial of the root of cp inside interval (cp monic integer, degree 3)."""
    lo, hi = interval
    q = list(cp)
    for r in _limits.integer_roots(cp):
        if lo < r < hi:
            return [-r, 1]
        _, q = _limits.multiplicity(q, r)
    # no rational factor left, so what remains is irreducible over Q
    return [int(c) for c in q]


def periodic_limit_farey(t: PermTriple, period, width: Fraction = Fraction(1, 2**64),
                         raise_on_segment: bool = True) -> FareyLimit:
    """Limit of the cells along the infinitely repeated ``period``."""
    t = triple(t)
    bits = _bits(period)
    if not bits:
        raise ValueError("period must be nonempty")
    m = product(farey_matrices(t), bits, IDENTITY)
    cp = [int(c) for c in _limits.char_poly(m)]
    interval = _limits.largest_real_root(cp, width)
    mp = perron_min_poly(cp, interval)
    limit = _limits.limit_set(m)
    residual = None
    point = None
    segment = None
    if limit.kind == "point":
        point = limit.points[0]
        d = limit.columns[0].direction
        r = (interval[0] + interval[1]) / 2
        md = mat_vec(m, d)
        residual = max(abs(md[i] - r * d[i]) for i in range(3)) / max(abs(c) for c in d)
    else:
        segment = limit.points
    result = FareyLimit(t, bits, m, tuple(cp), interval, tuple(mp), limit.kind == "point",
                        point, limit.kind == "point" and limit.exact, residual, segment)
    if segment is not None and raise_on_segment:
        raise NonConvergent(f"cells along period {''.join(map(str, bits))} do not shrink to a point",
                            segment=segment, result=result)
    return result
