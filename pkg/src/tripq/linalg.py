"""Exact 3x3 rational linear algebra, S3 permutation matrices and the
projective map onto the plane.

Scalars are Python ints when integral and ``fractions.Fraction`` otherwise,
so products of integer matrices never leave exact integer arithmetic.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence, Union

from .errors import ParseError, SingularMatrix, ZeroFirstCoordinate

Scalar = Union[int, Fraction]
Vec3 = tuple  # (x, y, z) of Scalars


def rational(value) -> Scalar:
    """Normalise an int/Fraction/str to an exact scalar."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        value = parse_rational(value)
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, float):
        raise TypeError("floats are not accepted as exact rationals")
    f = Fraction(value)
    return f.numerator if f.denominator == 1 else f


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    try:
        if "/" in text:
            num, den = text.split("/")
            if not den.strip() or "." in text or "e" in text.lower():
                raise ValueError
            return Fraction(int(num), int(den))
        return Fraction(int(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not an exact rational: {text!r}") from exc


def format_rational(value: Scalar) -> str:
    """'p/q', or 'n' when the denominator is one."""
    f = Fraction(value)
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


class Point(NamedTuple):
    x: Fraction
    y: Fraction

    def to_json(self) -> list:
        return [format_rational(self.x), format_rational(self.y)]

    def __str__(self) -> str:
        return f"({format_rational(self.x)},{format_rational(self.y)})"


def point(x, y) -> Point:
    return Point(Fraction(x), Fraction(y))


def parse_point(text: str) -> Point:
    parts = text.strip().strip("()").split(",")
    if len(parts) != 2:
        raise ParseError(f"a point needs two coordinates: {text!r}")
    return Point(parse_rational(parts[0]), parse_rational(parts[1]))


class Mat3:
    """Immutable exact 3x3 matrix. Columns are projective vertices."""

    __slots__ = ("rows", "_hash")

    def __init__(self, rows: Iterable[Iterable]):
        rows = tuple(tuple(rational(v) for v in row) for row in rows)
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("Mat3 needs exactly 3x3 entries")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _raw(cls, rows: tuple) -> "Mat3":
        # trusted constructor for already-normalised entries
        m = object.__new__(cls)
        object.__setattr__(m, "rows", rows)
        object.__setattr__(m, "_hash", None)
        return m

    def __setattr__(self, name, value):
        raise AttributeError("Mat3 is immutable")

    @classmethod
    def identity(cls) -> "Mat3":
        return IDENTITY

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence]) -> "Mat3":
        return cls(zip(*cols))

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> Vec3:
        return (self.rows[0][j], self.rows[1][j], self.rows[2][j])

    @property
    def columns(self) -> tuple:
        return tuple(self.column(j) for j in range(3))

    @property
    def is_integral(self) -> bool:
        return all(isinstance(v, int) for row in self.rows for v in row)

    def __matmul__(self, other):
        if isinstance(other, Mat3):
            return mat_mul(self, other)
        return mat_vec(self, other)

    def __mul__(self, scalar):
        s = rational(scalar)
        return Mat3._raw(tuple(tuple(_norm(v * s) for v in row) for row in self.rows))

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, Mat3) and self.rows == other.rows

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(self.rows))
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(format_rational(v) for v in r) + "]" for r in self.rows)
        return f"Mat3([{body}])"

    def transpose(self) -> "Mat3":
        return Mat3._raw(tuple(zip(*self.rows)))

    def det(self) -> Scalar:
        return det(self)

    def inverse(self) -> "Mat3":
        d = det(self)
        if d == 0:
            raise SingularMatrix("matrix is singular")
        adj = adjugate(self)
        return Mat3._raw(tuple(tuple(_norm(Fraction(v) / d) for v in row) for row in adj.rows))

    def power(self, k: int) -> "Mat3":
        if k < 0:
            return self.inverse().power(-k)
        result, base = IDENTITY, self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def column_sums(self) -> tuple:
        return tuple(_norm(sum(self.rows[i][j] for i in range(3))) for j in range(3))

    def to_json(self) -> list:
        return [[format_rational(v) for v in row] for row in self.rows]


def _norm(v):
    if isinstance(v, Fraction) and v.denominator == 1:
        return v.numerator
    return v


def mat_mul(a: Mat3, b: Mat3) -> Mat3:
    """Exact matrix product a @ b."""
    ar, br = a.rows, b.rows
    return Mat3._raw(tuple(
        tuple(_norm(ar[i][0] * br[0][j] + ar[i][1] * br[1][j] + ar[i][2] * br[2][j]) for j in range(3))
        for i in range(3)
    ))


def mat_vec(m: Mat3, v: Sequence) -> Vec3:
    r = m.rows
    return tuple(_norm(r[i][0] * v[0] + r[i][1] * v[1] + r[i][2] * v[2]) for i in range(3))


def det(m: Mat3) -> Scalar:
    (a, b, c), (d, e, f), (g, h, i) = m.rows
    return _norm(a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g))


def adjugate(m: Mat3) -> Mat3:
    (a, b, c), (d, e, f), (g, h, i) = m.rows
    return Mat3._raw((
        (_norm(e * i - f * h), _norm(c * h - b * i), _norm(b * f - c * e)),
        (_norm(f * g - d * i), _norm(a * i - c * g), _norm(c * d - a * f)),
        (_norm(d * h - e * g), _norm(b * g - a * h), _norm(a * e - b * d)),
    ))


def project(v: Sequence) -> Point:
    """pi(x, y, z) = (y/x, z/x)."""
    x, y, z = v
    if x == 0:
        raise ZeroFirstCoordinate(f"first coordinate is zero: {tuple(v)}")
    return Point(Fraction(y) / x, Fraction(z) / x)


def lift(p: Point) -> Vec3:
    """Homogeneous coordinates (1, x, y) of a plane point."""
    return (1, rational(p.x), rational(p.y))


def cone_coordinates(m: Mat3, p: Point) -> Vec3:
    """Solve m c = (1, x, y) exactly. p is interior to pi(m) iff c > 0."""
    d = det(m)
    if d == 0:
        raise SingularMatrix("cone coordinates need a nonsingular matrix")
    adj = adjugate(m)
    u = mat_vec(adj, lift(p))
    return tuple(_norm(Fraction(ui) / d) for ui in u)


def integer_cone_vector(m_inverse: Mat3, p: Point) -> Vec3:
    """Positive multiple of m^-1 (1,x,y) with integer entries.

    Used by the walkers, which only ever look at signs and ratios.
    """
    q = Fraction(p.x).denominator * Fraction(p.y).denominator
    v = (q, int(p.x * q), int(p.y * q))
    w = mat_vec(m_inverse, v)
    den = 1
    for c in w:
        if isinstance(c, Fraction):
            den = den * c.denominator // _gcd(den, c.denominator)
    return tuple(int(c * den) for c in w)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def vertices(m: Mat3) -> tuple:
    return tuple(project(c) for c in m.columns)


def squared_distance(p: Point, q: Point) -> Fraction:
    return (p.x - q.x) ** 2 + (p.y - q.y) ** 2


def shoelace_area(a: Point, b: Point, c: Point) -> Fraction:
    """Euclidean area of the triangle abc."""
    return abs((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y)) / 2


IDENTITY = Mat3(((1, 0, 0), (0, 1, 0), (0, 0, 1)))
# columns are the corners (0,0), (1,0), (1,1) of the base triangle
BASE = Mat3(((1, 1, 1), (0, 1, 1), (0, 0, 1)))
BASE_INVERSE = BASE.inverse()


class Perm(NamedTuple):
    name: str
    matrix: Mat3

    def __str__(self) -> str:
        return self.name


_PERM_ROWS = {
    "e": ((1, 0, 0), (0, 1, 0), (0, 0, 1)),
    "12": ((0, 1, 0), (1, 0, 0), (0, 0, 1)),
    "13": ((0, 0, 1), (0, 1, 0), (1, 0, 0)),
    "23": ((1, 0, 0), (0, 0, 1), (0, 1, 0)),
    "123": ((0, 1, 0), (0, 0, 1), (1, 0, 0)),
    "132": ((0, 0, 1), (1, 0, 0), (0, 1, 0)),
}
PERM_NAMES = tuple(_PERM_ROWS)
PERMS = {name: Perm(name, Mat3(rows)) for name, rows in _PERM_ROWS.items()}
_BY_MATRIX = {p.matrix: p for p in PERMS.values()}


def perm(name) -> Perm:
    if isinstance(name, Perm):
        return name
    key = str(name).strip().strip("()")
    if key in ("", "1", "id"):
        key = "e"
    if key not in PERMS:
        raise ParseError(f"unknown permutation name: {name!r}")
    return PERMS[key]


def perm_from_matrix(m: Mat3) -> Perm:
    try:
        return _BY_MATRIX[m]
    except KeyError:
        raise ValueError(f"not a permutation matrix: {m!r}") from None


def compose(a, b) -> Perm:
    """Composition defined by the matrix product M(a) M(b)."""
    return perm_from_matrix(perm(a).matrix @ perm(b).matrix)


def perm_inverse(a) -> Perm:
    return perm_from_matrix(perm(a).matrix.transpose())
