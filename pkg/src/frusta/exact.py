"""
Exact scalar and linear-algebra substrate.

Every coordinate in the package is a :class:`fractions.Fraction`; nothing in
the geometric core ever touches a float.  Points and vectors share one
immutable type, :class:`Vec3`.  Rigid motions are restricted to rational
orthogonal matrices plus a rational translation.
"""
from __future__ import annotations

import re
from math import gcd, lcm
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence, Tuple, Union

from .errors import FrustaError, NotAnIsometry

Rational = Fraction
RationalLike = Union[Fraction, int, str]

_RATIONAL_RE = re.compile(r"^\s*([-+]?)\s*(\d+)\s*(?:/\s*(\d+))?\s*$")


def Q(value: RationalLike) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to a Fraction.  Floats are refused."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def parse_rational(text: str) -> Fraction:
    """Parse "p/q", "p", "-p/q" (ASCII hyphen or U+2212 minus)."""
    m = _RATIONAL_RE.match(text.replace("−", "-"))
    if m is None:
        raise FrustaError(f"malformed rational {text!r}")
    sign, num, den = m.groups()
    if den is not None and int(den) == 0:
        raise FrustaError(f"zero denominator in {text!r}")
    r = Fraction(int(num), int(den) if den else 1)
    return -r if sign == "-" else r


def render_rational(r: Fraction) -> str:
    if r.denominator == 1:
        return str(r.numerator)
    return f"{r.numerator}/{r.denominator}"


class Vec3(NamedTuple):
    """A point or a displacement.  Arithmetic is componentwise and exact."""

    x: Fraction
    y: Fraction
    z: Fraction

    def __add__(self, other):  # type: ignore[override]
        return Vec3(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other):
        return Vec3(self.x - other.x, self.y - other.y, self.z - other.z)

    def __neg__(self):
        return Vec3(-self.x, -self.y, -self.z)

    def scaled(self, k) -> "Vec3":
        return Vec3(self.x * k, self.y * k, self.z * k)

    def dot(self, other) -> Fraction:
        return self.x * other.x + self.y * other.y + self.z * other.z

    def cross(self, other) -> "Vec3":
        return Vec3(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )

    def norm2(self) -> Fraction:
        return self.dot(self)

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0 and self.z == 0

    def __repr__(self):
        return f"({render_rational(self.x)}, {render_rational(self.y)}, {render_rational(self.z)})"


Point3 = Vec3
Vector3 = Vec3
ZERO = Vec3(Fraction(0), Fraction(0), Fraction(0))


def vec(x: RationalLike, y: RationalLike, z: RationalLike) -> Vec3:
    return Vec3(Q(x), Q(y), Q(z))


def dist2(p: Vec3, q: Vec3) -> Fraction:
    return (p - q).norm2()


Matrix3 = Tuple[Vec3, Vec3, Vec3]


def matrix(rows: Iterable[Iterable[RationalLike]]) -> Matrix3:
    rs = tuple(Vec3(*(Q(v) for v in row)) for row in rows)
    if len(rs) != 3:
        raise FrustaError("a 3x3 matrix needs exactly three rows")
    return rs  # type: ignore[return-value]


IDENTITY3: Matrix3 = matrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]])


def det3(m: Sequence[Sequence[Fraction]]) -> Fraction:
    (a, b, c), (d, e, f), (g, h, i) = m
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def transpose3(m: Matrix3) -> Matrix3:
    return (
        Vec3(m[0][0], m[1][0], m[2][0]),
        Vec3(m[0][1], m[1][1], m[2][1]),
        Vec3(m[0][2], m[1][2], m[2][2]),
    )


def matmul3(a: Matrix3, b: Matrix3) -> Matrix3:
    bt = transpose3(b)
    return tuple(Vec3(*(row.dot(col) for col in bt)) for row in a)  # type: ignore[return-value]


def matvec3(m: Matrix3, v: Vec3) -> Vec3:
    return Vec3(m[0].dot(v), m[1].dot(v), m[2].dot(v))


def inverse3(m: Matrix3) -> Matrix3:
    """Exact inverse via the adjugate; raises on a singular matrix."""
    d = det3(m)
    if d == 0:
        raise FrustaError("singular matrix")
    (a, b, c), (e, f, g), (h, i, j) = m
    adj = (
        (f * j - g * i, c * i - b * j, b * g - c * f),
        (g * h - e * j, a * j - c * h, c * e - a * g),
        (e * i - f * h, b * h - a * i, a * f - b * e),
    )
    return tuple(Vec3(*(v / d for v in row)) for row in adj)  # type: ignore[return-value]


@dataclass(frozen=True)
class RigidMotion:
    """x -> matrix . x + translation.

    Construction does not check the isometry conditions, so that malformed
    motions read from files can be represented and rejected by
    :func:`validate_motion` instead of at parse time.
    """

    matrix: Matrix3 = IDENTITY3
    translation: Vec3 = ZERO
    orientation: int = 1

    @property
    def proper(self) -> bool:
        return self.orientation == 1


def validate_motion(m: RigidMotion) -> bool:
    if m.orientation not in (1, -1):
        return False
    mtm = matmul3(transpose3(m.matrix), m.matrix)
    if mtm != IDENTITY3:
        return False
    return det3(m.matrix) == m.orientation


def require_valid(m: RigidMotion) -> None:
    if not validate_motion(m):
        raise NotAnIsometry()


def apply_motion(m: RigidMotion, p: Vec3) -> Vec3:
    require_valid(m)
    return _apply(m, p)


def _apply(m: RigidMotion, p: Vec3) -> Vec3:
    return matvec3(m.matrix, p) + m.translation


def compose_motion(m1: RigidMotion, m2: RigidMotion) -> RigidMotion:
    """The motion that applies ``m2`` first, then ``m1``."""
    require_valid(m1)
    require_valid(m2)
    return RigidMotion(
        matmul3(m1.matrix, m2.matrix),
        matvec3(m1.matrix, m2.translation) + m1.translation,
        m1.orientation * m2.orientation,
    )


def compose(*motions: RigidMotion) -> RigidMotion:
    """compose(a, b, c) applies c, then b, then a."""
    out = IDENTITY
    for m in motions:
        out = compose_motion(out, m)
    return out


def invert_motion(m: RigidMotion) -> RigidMotion:
    require_valid(m)
    mt = transpose3(m.matrix)
    return RigidMotion(mt, -matvec3(mt, m.translation), m.orientation)


def motion_from_matrix(rows, translation=(0, 0, 0)) -> RigidMotion:
    """Build a motion and fill in the orientation from the determinant."""
    mat = matrix(rows)
    d = det3(mat)
    m = RigidMotion(mat, vec(*translation), 1 if d > 0 else -1)
    require_valid(m)
    return m


def translation(x: RationalLike, y: RationalLike, z: RationalLike) -> RigidMotion:
    return RigidMotion(IDENTITY3, vec(x, y, z), 1)


def rot_z(quarter_turns: int) -> RigidMotion:
    """Counter-clockwise rotation by 90 degrees * quarter_turns about the z axis."""
    c, s = [(1, 0), (0, 1), (-1, 0), (0, -1)][quarter_turns % 4]
    return motion_from_matrix([[c, -s, 0], [s, c, 0], [0, 0, 1]])


def axis_permutation(perm: Sequence[int], signs: Sequence[int] = (1, 1, 1)) -> RigidMotion:
    """Signed permutation: output coordinate i is signs[i] * input coordinate perm[i]."""
    rows = []
    for i in range(3):
        row = [0, 0, 0]
        row[perm[i]] = signs[i]
        rows.append(row)
    return motion_from_matrix(rows)


def cayley_rotation(a: RationalLike, b: RationalLike, c: RationalLike) -> RigidMotion:
    """Rotation (I - S)(I + S)^-1 for the skew matrix S of (a, b, c); rational and proper.

    Every rotation without a half-turn component arises this way, so random
    rational (a, b, c) give rotations about arbitrary axes.
    """
    a, b, c = Q(a), Q(b), Q(c)
    s = matrix([[0, -c, b], [c, 0, -a], [-b, a, 0]])
    i_minus = tuple(IDENTITY3[r] - s[r] for r in range(3))
    i_plus = tuple(IDENTITY3[r] + s[r] for r in range(3))
    m = RigidMotion(matmul3(i_minus, inverse3(i_plus)), ZERO, 1)  # type: ignore[arg-type]
    require_valid(m)
    return m


IDENTITY = RigidMotion()


@dataclass(frozen=True)
class HalfSpace:
    """The closed set {x : normal . x <= offset}."""

    normal: Vec3
    offset: Fraction

    def __post_init__(self):
        if self.normal.is_zero():
            raise FrustaError("half-space normal must be nonzero")

    def value(self, p: Vec3) -> Fraction:
        """Signed slack: negative inside, zero on the boundary plane."""
        return self.normal.dot(p) - self.offset

    def contains(self, p: Vec3) -> bool:
        return self.normal.dot(p) <= self.offset

    def complement(self) -> "HalfSpace":
        return HalfSpace(-self.normal, -self.offset)

    def primitive(self) -> "HalfSpace":
        """Same half-space with the normal scaled to a coprime integer vector."""
        n = self.normal
        den = lcm(n.x.denominator, n.y.denominator, n.z.denominator)
        ints = [int(c * den) for c in n]
        g = gcd(*ints)
        k = Fraction(den, g)
        return HalfSpace(n.scaled(k), self.offset * k)


def affine_rank(points: Sequence[Vec3]) -> int:
    """Affine rank (0..3) of a point set, computed exactly."""
    if not points:
        return -1
    base = points[0]
    basis: list = []
    for p in points[1:]:
        d = p - base
        if d.is_zero():
            continue
        if not basis:
            basis.append(d)
        elif len(basis) == 1:
            if not basis[0].cross(d).is_zero():
                basis.append(d)
        else:
            if basis[0].cross(basis[1]).dot(d) != 0:
                return 3
    return len(basis)
