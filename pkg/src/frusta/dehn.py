"""
Exact, deliberately limited Dehn invariants of rational-vertex polytopes.

A dihedral angle is identified by the sign of its cosine and the exact
rational cos^2, which pins the angle down inside (0, pi).  The angle is a
rational multiple of pi exactly when cos^2 lies in {0, 1/4, 1/2, 3/4, 1}
(cos 2t = 2cos^2 t - 1 is rational, and Niven's theorem leaves only
0, +-1/2, +-1).  Edge lengths are square roots of rationals, written as
rational multiples of sqrt(d) with d square-free.

The comparator never over-claims: it calls two solids different only when
the difference of their invariants is a single pure tensor.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple, Union

from .errors import CanonicalizationError
from .exact import dist2, render_rational
from .polytope import ConvexPolytope

FACTOR_BOUND = 10 ** 12
RATIONAL_PI_COS2 = frozenset(Fraction(n, 4) for n in range(5))


@dataclass(frozen=True, order=True)
class AngleClass:
    cos_sign: int  # -1, 0 or +1
    cos_squared: Fraction

    @property
    def rational_pi(self) -> bool:
        return self.cos_squared in RATIONAL_PI_COS2

    def __str__(self):
        sign = {1: "+", 0: "0", -1: "-"}[self.cos_sign]
        return f"({sign}, cos² = {render_rational(self.cos_squared)})"


# sqrt(d) -> rational coefficient, d square-free
Radical = Dict[int, Fraction]


def square_free_sqrt(r: Fraction) -> Tuple[Fraction, int]:
    """Write sqrt(r) as c * sqrt(d) with c rational and d square-free."""
    if r < 0:
        raise CanonicalizationError("square root of a negative number")
    if r == 0:
        return Fraction(0), 1
    n = r.numerator * r.denominator  # sqrt(p/q) = sqrt(p*q)/q
    if n > FACTOR_BOUND:
        raise CanonicalizationError("length too large to canonicalize")
    k, d = 1, 1
    m, f = n, 2
    while f * f <= m:
        e = 0
        while m % f == 0:
            m //= f
            e += 1
        k *= f ** (e // 2)
        if e % 2:
            d *= f
        f += 1 if f == 2 else 2
    d *= m
    return Fraction(k, r.denominator), d


@dataclass(frozen=True)
class DehnInvariant:
    terms: Tuple[Tuple[AngleClass, Tuple[Tuple[int, Fraction], ...]], ...] = ()

    @classmethod
    def from_dict(cls, raw: Dict[AngleClass, Radical]) -> "DehnInvariant":
        out = []
        for cls_, rad in sorted(raw.items()):
            if cls_.rational_pi:
                continue
            kept = tuple(sorted((d, c) for d, c in rad.items() if c != 0))
            if kept:
                out.append((cls_, kept))
        return cls(tuple(out))

    def as_dict(self) -> Dict[AngleClass, Radical]:
        return {a: dict(r) for a, r in self.terms}

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def classes(self) -> List[AngleClass]:
        return [a for a, _ in self.terms]

    def __add__(self, other: "DehnInvariant") -> "DehnInvariant":
        acc: Dict[AngleClass, Radical] = defaultdict(lambda: defaultdict(Fraction))
        for inv in (self, other):
            for a, rad in inv.terms:
                for d, c in rad:
                    acc[a][d] += c
        return DehnInvariant.from_dict(acc)

    def __neg__(self) -> "DehnInvariant":
        return DehnInvariant(tuple((a, tuple((d, -c) for d, c in r)) for a, r in self.terms))

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, k) -> "DehnInvariant":
        k = Fraction(k)
        return DehnInvariant.from_dict({a: {d: c * k for d, c in r} for a, r in self.terms})

    def render(self) -> str:
        if not self.terms:
            return "0"
        lines = []
        for a, rad in self.terms:
            parts = [f"({render_rational(c)})" + ("" if d == 1 else f"√{d}") for d, c in rad]
            lines.append(f"{a} : {' + '.join(parts)}")
        return "\n".join(lines)


def _angle_class(n1, n2) -> AngleClass:
    dot = n1.dot(n2)
    # interior angle: cos t = -(n1.n2)/(|n1||n2|) for outward normals
    sign = (dot < 0) - (dot > 0)
    return AngleClass(sign, dot * dot / (n1.norm2() * n2.norm2()))


def dihedral_edges(p: ConvexPolytope) -> List[Tuple[Fraction, AngleClass]]:
    """(squared length, dihedral angle class) for every edge."""
    owner: Dict[Tuple[int, int], int] = {}
    for fi, f in enumerate(p.faces):
        c = f.cycle
        for i in range(len(c)):
            owner[(c[i], c[(i + 1) % len(c)])] = fi
    out = []
    for u, w in p.edges:
        n1 = p.faces[owner[(u, w)]].plane.normal
        n2 = p.faces[owner[(w, u)]].plane.normal
        out.append((dist2(p.vertices[u], p.vertices[w]), _angle_class(n1, n2)))
    return out


def dehn_invariant(p: ConvexPolytope) -> DehnInvariant:
    acc: Dict[AngleClass, Radical] = defaultdict(lambda: defaultdict(Fraction))
    for l2, a in dihedral_edges(p):
        if a.rational_pi:
            continue
        c, d = square_free_sqrt(l2)
        acc[a][d] += c
    return DehnInvariant.from_dict(acc)


def collection_invariant(solids: Iterable[ConvexPolytope]) -> DehnInvariant:
    """Sum of the invariants of separate solids (no gluing is modelled)."""
    total = DehnInvariant()
    for s in solids:
        total = total + dehn_invariant(s)
    return total


class Comparison(str, Enum):
    EQUAL_INVARIANT = "EqualInvariant"
    SOUNDLY_DIFFERENT = "SoundlyDifferent"
    POSSIBLY_DIFFERENT = "PossiblyDifferent"


Solids = Union[ConvexPolytope, Sequence[ConvexPolytope]]


def _invariant(x: Solids) -> DehnInvariant:
    return dehn_invariant(x) if isinstance(x, ConvexPolytope) else collection_invariant(x)


def compare_invariants(p: Solids, q: Solids) -> Comparison:
    """Three-valued comparison; SoundlyDifferent only for a single-class difference."""
    diff = _invariant(p) - _invariant(q)
    if diff.is_zero:
        return Comparison.EQUAL_INVARIANT
    if len(diff.terms) == 1:
        return Comparison.SOUNDLY_DIFFERENT
    return Comparison.POSSIBLY_DIFFERENT
