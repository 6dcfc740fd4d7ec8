"""
Canonical solids and builders for the classical frustum and pyramid dissections.

Poses are fixed once and for all: symmetric solids are centred on the z axis
with their base in z = 0; blocks (box, yangma, qiandu) are anchored at the
origin.  Builders return :class:`~frusta.dissection.RearrangementCertificate`
objects whose pieces are stored in their canonical block pose and placed by
rigid motions.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .dissection import (
    AUX,
    PIECE,
    SOURCE,
    TARGET,
    ArithmeticClaim,
    CongruenceClaim,
    PlacedPiece,
    Placement,
    RearrangementCertificate,
    Ref,
    ScaleClaim,
    TilingClaim,
    VolumeClaim,
    VolumeExpr,
)
from .errors import InvalidParameters
from .exact import (
    HalfSpace,
    IDENTITY,
    RigidMotion,
    Q,
    axis_permutation,
    compose,
    motion_from_matrix,
    rot_z,
    translation,
    vec,
)
from .polytope import ConvexPolytope, clip, prismatoid, pyramid_over, tetrahedron, transform
from . import formulas

KINDS = {
    "box": 3,
    "symmetric_frustum": 3,
    "right_frustum": 3,
    "symmetric_pyramid": 2,
    "yangma": 3,
    "qiandu": 3,
    "juel": 1,
    "truncated_juel": 2,
    "regular_tetrahedron": 0,
}


@dataclass(frozen=True)
class SolidSpec:
    kind: str
    params: Tuple[Fraction, ...] = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidParameters(f"unknown solid kind {self.kind!r}")
        object.__setattr__(self, "params", tuple(Q(p) for p in self.params))
        if len(self.params) != KINDS[self.kind]:
            raise InvalidParameters(f"{self.kind} takes {KINDS[self.kind]} parameters, got {len(self.params)}")

    @classmethod
    def parse(cls, text: str) -> "SolidSpec":
        """Parse ``kind:p1,p2,...`` (``regular_tetrahedron`` needs no colon)."""
        kind, _, rest = text.partition(":")
        params = [s for s in rest.split(",") if s.strip()] if rest else []
        return cls(kind.strip(), tuple(Q(s.strip()) for s in params))

    def __str__(self):
        from .exact import render_rational

        return f"{self.kind}:{','.join(render_rational(p) for p in self.params)}"


def _positive(**named):
    for name, v in named.items():
        if v <= 0:
            raise InvalidParameters(f"invalid parameters: {name} must be positive")


def _a_exceeds_b(a, b):
    if a <= b:
        raise InvalidParameters("invalid parameters: a must exceed b")


def _square(half, z):
    return [vec(-half, -half, z), vec(half, -half, z), vec(half, half, z), vec(-half, half, z)]


def box(p, q, r) -> ConvexPolytope:
    p, q, r = Q(p), Q(q), Q(r)
    _positive(p=p, q=q, r=r)
    bottom = [vec(0, 0, 0), vec(p, 0, 0), vec(p, q, 0), vec(0, q, 0)]
    top = [vec(0, 0, r), vec(p, 0, r), vec(p, q, r), vec(0, q, r)]
    return prismatoid(bottom, top, f"box({p},{q},{r})")


def symmetric_frustum(a, b, h) -> ConvexPolytope:
    a, b, h = Q(a), Q(b), Q(h)
    _positive(b=b, h=h)
    _a_exceeds_b(a, b)
    return prismatoid(_square(a / 2, 0), _square(b / 2, h), f"symmetric_frustum({a},{b},{h})")


def right_frustum(a, b, h) -> ConvexPolytope:
    a, b, h = Q(a), Q(b), Q(h)
    _positive(b=b, h=h)
    _a_exceeds_b(a, b)
    bottom = [vec(0, 0, 0), vec(a, 0, 0), vec(a, a, 0), vec(0, a, 0)]
    top = [vec(0, 0, h), vec(b, 0, h), vec(b, b, h), vec(0, b, h)]
    return prismatoid(bottom, top, f"right_frustum({a},{b},{h})")


def symmetric_pyramid(a, h) -> ConvexPolytope:
    a, h = Q(a), Q(h)
    _positive(a=a, h=h)
    return pyramid_over(_square(a / 2, 0), vec(0, 0, h), f"symmetric_pyramid({a},{h})")


def yangma(p, q, r) -> ConvexPolytope:
    """Rectangular base [0,p] x [0,q], apex straight above the origin corner."""
    p, q, r = Q(p), Q(q), Q(r)
    _positive(p=p, q=q, r=r)
    base = [vec(0, 0, 0), vec(p, 0, 0), vec(p, q, 0), vec(0, q, 0)]
    return pyramid_over(base, vec(0, 0, r), f"yangma({p},{q},{r})")


def qiandu(p, q, r) -> ConvexPolytope:
    """Half of box(p,q,r) cut along the plane y/q + z/r = 1; its ridge runs along x at y=0, z=r."""
    p, q, r = Q(p), Q(q), Q(r)
    _positive(p=p, q=q, r=r)
    near = [vec(0, 0, 0), vec(0, q, 0), vec(0, 0, r)]
    far = [vec(p, 0, 0), vec(p, q, 0), vec(p, 0, r)]
    return prismatoid(near, far, f"qiandu({p},{q},{r})")


def juel(a) -> ConvexPolytope:
    a = Q(a)
    _positive(a=a)
    return pyramid_over(_square(a / 2, 0), vec(0, 0, a / 2), f"juel({a})")


def truncated_juel(a, b) -> ConvexPolytope:
    """juel(a) with everything above z = (a-b)/2 cut away."""
    a, b = Q(a), Q(b)
    _positive(b=b)
    _a_exceeds_b(a, b)
    cut = clip(juel(a), HalfSpace(vec(0, 0, 1), (a - b) / 2))
    return cut.with_label(f"truncated_juel({a},{b})")


def regular_tetrahedron() -> ConvexPolytope:
    return tetrahedron(vec(0, 0, 0), vec(1, 1, 0), vec(1, 0, 1), vec(0, 1, 1), "regular_tetrahedron")


_CONSTRUCTORS = {
    "box": box,
    "symmetric_frustum": symmetric_frustum,
    "right_frustum": right_frustum,
    "symmetric_pyramid": symmetric_pyramid,
    "yangma": yangma,
    "qiandu": qiandu,
    "juel": juel,
    "truncated_juel": truncated_juel,
    "regular_tetrahedron": regular_tetrahedron,
}


def make_solid(spec: SolidSpec) -> ConvexPolytope:
    return _CONSTRUCTORS[spec.kind](*spec.params)


def closed_form_volume(spec: SolidSpec) -> Fraction:
    k, ps = spec.kind, spec.params
    if k == "box":
        return ps[0] * ps[1] * ps[2]
    if k in ("symmetric_frustum", "right_frustum"):
        a, b, h = ps
        return h / 3 * (a * a + a * b + b * b)
    if k == "symmetric_pyramid":
        a, h = ps
        return h / 3 * a * a
    if k == "yangma":
        return ps[0] * ps[1] * ps[2] / 3
    if k == "qiandu":
        return ps[0] * ps[1] * ps[2] / 2
    if k == "juel":
        return ps[0] ** 3 / 6
    if k == "truncated_juel":
        a, b = ps
        return (a ** 3 - b ** 3) / 6
    return Fraction(1, 3)


# Motions used repeatedly below.

def _t(x, y, z) -> RigidMotion:
    return translation(x, y, z)


def _at(offset, *motions) -> RigidMotion:
    return compose(_t(*offset), *motions)


def _add(o, dx, dy, dz=0):
    return (o[0] + dx, o[1] + dy, o[2] + dz)


# 180 degree turn of a slab [0,w] x [0,len] x [0,h] about its long axis (y); swaps the two prism halves
def _flip_about_y(w, h) -> RigidMotion:
    return motion_from_matrix([[-1, 0, 0], [0, 1, 0], [0, 0, -1]], (w, 0, h))


# same, for a slab [0,len] x [0,w] x [0,h] whose long axis is x
def _flip_about_x(w, h) -> RigidMotion:
    return motion_from_matrix([[1, 0, 0], [0, -1, 0], [0, 0, -1]], (0, w, h))


# the 3-fold rotation about the main diagonal of a cube: (x, y, z) -> (y, z, x)
CYCLE = axis_permutation((1, 2, 0))


class _Builder:
    """Accumulates solids, pieces and claims while a certificate is assembled."""

    def __init__(self):
        self.sources: List[ConvexPolytope] = []
        self.targets: List[ConvexPolytope] = []
        self.aux: List[ConvexPolytope] = []
        self.pieces: List[PlacedPiece] = []
        self.claims: list = []
        self.metadata: Dict[str, str] = {}

    def source(self, poly) -> int:
        self.sources.append(poly)
        return len(self.sources) - 1

    def target(self, poly) -> int:
        self.targets.append(poly)
        return len(self.targets) - 1

    def add_aux(self, poly) -> int:
        self.aux.append(poly)
        return len(self.aux) - 1

    def piece(self, poly, source=None, target=None, label="") -> int:
        self.pieces.append(PlacedPiece(poly, source, target, label or poly.label))
        return len(self.pieces) - 1

    def route(self, i: int, target: Placement) -> None:
        pc = self.pieces[i]
        self.pieces[i] = PlacedPiece(pc.piece, pc.source, target, pc.label)

    def claim(self, c) -> Ref:
        self.claims.append(c)
        return Ref("claim", len(self.claims) - 1)

    def build(self) -> RearrangementCertificate:
        return RearrangementCertificate(
            tuple(self.sources), tuple(self.targets), tuple(self.pieces),
            tuple(self.claims), tuple(self.aux), tuple(sorted(self.metadata.items())),
        )


def _pieces(*idx) -> Tuple[Ref, ...]:
    return tuple(Ref(PIECE, i) for i in idx)


def _check_frustum(a, b, h):
    a, b, h = Q(a), Q(b), Q(h)
    _positive(b=b, h=h)
    _a_exceeds_b(a, b)
    return a, b, h


def _cut_frustum(bld: _Builder, a, b, h, offset=(0, 0, 0), tag="") -> Dict[str, List[int]]:
    """Add a symmetric frustum as a source and its nine parts as pieces.

    Returns piece indices grouped as central / prisms / yangma.  Prism k and
    yangma k sit on the side (corner) reached by k quarter turns from +y (+x+y).
    """
    s = (a - b) / 2
    si = bld.source(transform(symmetric_frustum(a, b, h), _t(*offset)).with_label(f"frustum {tag}".strip()))
    central = bld.piece(box(b, b, h), Placement(si, _at(offset, _t(-b / 2, -b / 2, 0))), label=f"{tag} central cuboid".strip())
    prisms = [
        bld.piece(qiandu(b, s, h), Placement(si, _at(offset, rot_z(k), _t(-b / 2, b / 2, 0))), label=f"{tag} prism {k}".strip())
        for k in range(4)
    ]
    corners = [
        bld.piece(yangma(s, s, h), Placement(si, _at(offset, rot_z(k), _t(b / 2, b / 2, 0))), label=f"{tag} yangma {k}".strip())
        for k in range(4)
    ]
    return {"source": si, "central": [central], "prisms": prisms, "yangma": corners}


def _slab_pair_along_y(bld, ti, origin, prisms, s, b, h, label) -> Ref:
    """Route two qiandu(b,s,h) into the slab origin + [0,s] x [0,b] x [0,h]."""
    lay = compose(_t(0, b, 0), rot_z(3))
    bld.route(prisms[0], Placement(ti, _at(origin, lay)))
    bld.route(prisms[1], Placement(ti, _at(origin, _flip_about_y(s, h), lay)))
    cell = transform(box(s, b, h), _t(*origin)).with_label(label)
    return bld.claim(TilingClaim(TARGET, _pieces(*prisms), cells=(cell,), label=label))


def _slab_pair_along_x(bld, ti, origin, prisms, s, b, h, label) -> Ref:
    """Route two qiandu(b,s,h) into the slab origin + [0,b] x [0,s] x [0,h]."""
    bld.route(prisms[0], Placement(ti, _at(origin)))
    bld.route(prisms[1], Placement(ti, _at(origin, _flip_about_x(s, h))))
    cell = transform(box(b, s, h), _t(*origin)).with_label(label)
    return bld.claim(TilingClaim(TARGET, _pieces(*prisms), cells=(cell,), label=label))


def _box_hab(bld, origin, central, prisms, a, b, h, label) -> Ref:
    """Central cuboid and four prisms into the box origin + [0,a] x [0,b] x [0,h]."""
    s = (a - b) / 2
    ti = bld.target(transform(box(a, b, h), _t(*origin)).with_label(label))
    bld.route(central, Placement(ti, _at(_add(origin, s, 0))))
    west = _slab_pair_along_y(bld, ti, origin, prisms[0:2], s, b, h, f"{label}: west slab")
    east = _slab_pair_along_y(bld, ti, _add(origin, s + b, 0), prisms[2:4], s, b, h, f"{label}: east slab")
    return bld.claim(TilingClaim(TARGET, (west, east, Ref(PIECE, central)), container=Ref(TARGET, ti), label=label))


def nine_part_frustum(a, b, h) -> RearrangementCertificate:
    """Frustum = central cuboid + four prisms + four corner yangma."""
    a, b, h = _check_frustum(a, b, h)
    bld = _Builder()
    parts = _cut_frustum(bld, a, b, h)
    every = parts["central"] + parts["prisms"] + parts["yangma"]
    bld.claim(TilingClaim(SOURCE, _pieces(*every), container=Ref(SOURCE, 0), label="nine parts"))
    bld.metadata.update(scenario="nine-part", a=str(a), b=str(b), h=str(h))
    return bld.build()


def liu_hui_three_copies(a, b, h) -> RearrangementCertificate:
    """Three frusta recomposed into boxes a*a*h, a*b*h and b*b*h.

    Copy 1 feeds the middle box, copy 2's cuboid and the prisms of copies 2
    and 3 form the central cross of the big box, copy 3's cuboid is the small
    box.  The twelve corner yangma fill the four corner cuboids of the big
    box: by an exact dissection when h = (a-b)/2, by volume only otherwise.
    """
    a, b, h = _check_frustum(a, b, h)
    s = (a - b) / 2
    bld = _Builder()
    copies = [_cut_frustum(bld, a, b, h, (2 * a * c, 0, 0), f"copy {c + 1}") for c in range(3)]
    for c, parts in enumerate(copies):
        every = parts["central"] + parts["prisms"] + parts["yangma"]
        bld.claim(TilingClaim(SOURCE, _pieces(*every), container=Ref(SOURCE, parts["source"]),
                              label=f"copy {c + 1}: nine parts"))

    big_o, mid_o, small_o = (0, -2 * a, 0), (2 * a, -2 * a, 0), (4 * a, -2 * a, 0)
    big = bld.target(transform(box(a, a, h), _t(*big_o)).with_label("big box a*a*h"))

    # (i) middle box from copy 1
    _box_hab(bld, mid_o, copies[0]["central"][0], copies[0]["prisms"], a, b, h, "(i) middle box a*b*h")

    # (ii) central cross of the big box
    c2 = copies[1]["central"][0]
    bld.route(c2, Placement(big, _at(_add(big_o, s, s))))
    p2, p3 = copies[1]["prisms"], copies[2]["prisms"]
    south = _slab_pair_along_x(bld, big, _add(big_o, s, 0), p2[0:2], s, b, h, "big box: south slab")
    north = _slab_pair_along_x(bld, big, _add(big_o, s, s + b), p2[2:4], s, b, h, "big box: north slab")
    west = _slab_pair_along_y(bld, big, _add(big_o, 0, s), p3[0:2], s, b, h, "big box: west slab")
    east = _slab_pair_along_y(bld, big, _add(big_o, s + b, s), p3[2:4], s, b, h, "big box: east slab")
    centre_cell = transform(box(b, b, h), _t(*_add(big_o, s, s)))
    cross_cells = (centre_cell,) + tuple(bld.claims[r.index].cells[0] for r in (south, north, west, east))
    bld.claim(TilingClaim(TARGET, (Ref(PIECE, c2), south, north, west, east), cells=cross_cells,
                          label="(ii) big-box central cross"))

    # (iii) small box from copy 3
    small = bld.target(transform(box(b, b, h), _t(*small_o)).with_label("small box b*b*h"))
    c3 = copies[2]["central"][0]
    bld.route(c3, Placement(small, _at(small_o)))
    bld.claim(TilingClaim(TARGET, (Ref(PIECE, c3),), container=Ref(TARGET, small), label="(iii) small box b*b*h"))

    # (iv) corner cuboids
    corner_origins = [_add(big_o, 0, 0), _add(big_o, s + b, 0), _add(big_o, 0, s + b), _add(big_o, s + b, s + b)]
    yangmas = [copies[c]["yangma"] for c in range(3)]
    if h == s:
        # the same three-pyramid cube dissection in every corner
        to_corner = compose(_t(s, s, 0), rot_z(2))
        corner_claims = []
        for j, o in enumerate(corner_origins):
            trio = [yangmas[c][j] for c in range(3)]
            for c, yi in enumerate(trio):
                turn = compose(*([CYCLE] * c)) if c else IDENTITY
                bld.route(yi, Placement(big, _at(o, turn, to_corner)))
            cell = transform(box(s, s, h), _t(*o))
            corner_claims.append(bld.claim(TilingClaim(TARGET, _pieces(*trio), cells=(cell,), label=f"corner {j}")))
        cells = tuple(bld.claims[r.index].cells[0] for r in corner_claims)
        bld.claim(TilingClaim(TARGET, tuple(corner_claims), cells=cells, label="(iv) corner cuboids"))
    else:
        slots = [bld.piece(box(s, s, h), None, Placement(big, _at(o)), label=f"corner cuboid {j}")
                 for j, o in enumerate(corner_origins)]
        every_yangma = [y for trio in yangmas for y in trio]
        bld.claim(VolumeClaim(
            _pieces(*every_yangma), _pieces(*slots),
            note="presupposes F_P: the 12 corner yangma fill the 4 corner cuboids by volume only",
            label="(iv) corner cuboids",
        ))
    bld.metadata.update(scenario="liu-hui", a=str(a), b=str(b), h=str(h))
    return bld.build()


def _four_yangma_into(bld, s, h, origin, pieces=None) -> int:
    """Assemble four yangma(s,s,h) into symmetric_pyramid(2s,h) at origin; returns target index."""
    ti = bld.target(transform(symmetric_pyramid(2 * s, h), _t(*origin)).with_label("assembled pyramid"))
    if pieces is None:
        pieces = [bld.piece(yangma(s, s, h), label=f"yangma {k}") for k in range(4)]
        # a piece needs at least one placement; fill in below
    for k, i in enumerate(pieces):
        bld.route(i, Placement(ti, _at(origin, rot_z(k))))
    return ti


def four_yangma_pyramid(s, h) -> RearrangementCertificate:
    """Four congruent corner pyramids make one symmetric pyramid on a base of side 2s."""
    s, h = Q(s), Q(h)
    _positive(s=s, h=h)
    bld = _Builder()
    ti = bld.target(symmetric_pyramid(2 * s, h).with_label("symmetric pyramid"))
    idx = [bld.piece(yangma(s, s, h), None, Placement(ti, rot_z(k)), label=f"yangma {k}") for k in range(4)]
    bld.claim(TilingClaim(TARGET, _pieces(*idx), container=Ref(TARGET, ti), label="four yangma tile the pyramid"))
    bld.claim(CongruenceClaim(tuple(Ref(PIECE, i, TARGET) for i in idx), allow_reflection=False,
                              label="the four placed yangma are congruent"))
    bld.metadata.update(scenario="four-yangma", s=str(s), h=str(h))
    return bld.build()


def right_frustum_parts(a, b, h) -> RearrangementCertificate:
    """Right frustum = cuboid + two prisms + one corner yangma; the prisms stack into a box."""
    a, b, h = _check_frustum(a, b, h)
    d = a - b
    bld = _Builder()
    si = bld.source(right_frustum(a, b, h))
    central = bld.piece(box(b, b, h), Placement(si, IDENTITY), label="central cuboid")
    pr1 = bld.piece(qiandu(b, d, h), Placement(si, _t(0, b, 0)), label="prism 1")
    pr2 = bld.piece(qiandu(b, d, h), Placement(si, compose(_t(b, b, 0), rot_z(3))), label="prism 2")
    corner = bld.piece(yangma(d, d, h), Placement(si, _t(b, b, 0)), label="corner yangma")
    bld.claim(TilingClaim(SOURCE, _pieces(central, pr1, pr2, corner), container=Ref(SOURCE, si),
                          label="right frustum parts"))

    box_o, corner_o = (2 * a, 0, 0), (4 * a, 0, 0)
    ti = bld.target(transform(box(b, a, h), _t(*box_o)).with_label("box a*b*h"))
    bld.route(central, Placement(ti, _t(*box_o)))
    slab_o = _add(box_o, 0, b)
    bld.route(pr1, Placement(ti, _at(slab_o)))
    bld.route(pr2, Placement(ti, _at(slab_o, _flip_about_x(d, h))))
    cell = transform(box(b, d, h), _t(*slab_o)).with_label("stacked prisms")
    stacked = bld.claim(TilingClaim(TARGET, _pieces(pr1, pr2), cells=(cell,), label="two prisms stack into a box"))
    bld.claim(TilingClaim(TARGET, (Ref(PIECE, central), stacked), container=Ref(TARGET, ti), label="box a*b*h"))
    tc = bld.target(transform(yangma(d, d, h), _t(*corner_o)).with_label("corner yangma"))
    bld.route(corner, Placement(tc, _t(*corner_o)))
    bld.metadata.update(scenario="right-frustum", a=str(a), b=str(b), h=str(h))
    return bld.build()


def four_right_frustums(a, b, h) -> RearrangementCertificate:
    """Four right frusta around the z axis form the symmetric frustum with base 2a."""
    a, b, h = _check_frustum(a, b, h)
    bld = _Builder()
    ti = bld.target(symmetric_frustum(2 * a, 2 * b, h))
    idx = [bld.piece(right_frustum(a, b, h), None, Placement(ti, rot_z(k)), label=f"right frustum {k}")
           for k in range(4)]
    bld.claim(TilingClaim(TARGET, _pieces(*idx), container=Ref(TARGET, ti), label="four right frusta"))
    bld.claim(CongruenceClaim(tuple(Ref(PIECE, i, TARGET) for i in idx), allow_reflection=False,
                              label="the four placed right frusta are congruent"))
    bld.metadata.update(scenario="four-right-frustums", a=str(a), b=str(b), h=str(h))
    return bld.build()


def box_three_pyramids(p, q, r) -> RearrangementCertificate:
    """Cut box(p,q,r) into three pyramids sharing the apex (p,q,r).

    Each pyramid stands on one of the three faces through the origin.  They
    are congruent exactly when p = q = r; the certificate states whichever
    holds, and the congruence claim is checked by exhaustive search.
    """
    p, q, r = Q(p), Q(q), Q(r)
    _positive(p=p, q=q, r=r)
    bld = _Builder()
    si = bld.source(box(p, q, r))
    on_z = bld.piece(yangma(p, q, r), Placement(si, compose(_t(p, q, 0), rot_z(2))), label="pyramid on z=0")
    on_x = bld.piece(yangma(q, r, p), Placement(si, motion_from_matrix([[0, 0, 1], [-1, 0, 0], [0, -1, 0]], (0, q, r))),
                     label="pyramid on x=0")
    on_y = bld.piece(yangma(r, p, q), Placement(si, motion_from_matrix([[0, -1, 0], [0, 0, 1], [-1, 0, 0]], (p, 0, r))),
                     label="pyramid on y=0")
    trio = (on_z, on_x, on_y)
    bld.claim(TilingClaim(SOURCE, _pieces(*trio), container=Ref(SOURCE, si), label="three corner pyramids"))
    congruent = p == q == r
    bld.claim(CongruenceClaim(tuple(Ref(PIECE, i, SOURCE) for i in trio), allow_reflection=True, congruent=congruent,
                              label="pairwise congruent" if congruent else "not pairwise congruent"))
    bld.metadata.update(scenario="box-three-pyramids", p=str(p), q=str(q), r=str(r))
    return bld.build()


CUBE_KINDS = ("three_yangma", "six_juel", "two_qiandu")


def cube_dissections(a, kind: str) -> RearrangementCertificate:
    a = Q(a)
    if kind not in CUBE_KINDS:
        raise InvalidParameters(f"unknown cube dissection {kind!r}; expected one of {', '.join(CUBE_KINDS)}")
    _positive(a=a)
    if kind == "three_yangma":
        bld = _Builder()
        si = bld.source(box(a, a, a).with_label("cube"))
        to_corner = compose(_t(a, a, 0), rot_z(2))
        idx = []
        for c in range(3):
            turn = compose(*([CYCLE] * c)) if c else IDENTITY
            idx.append(bld.piece(yangma(a, a, a), Placement(si, compose(turn, to_corner)), label=f"yangma {c}"))
        bld.claim(TilingClaim(SOURCE, _pieces(*idx), container=Ref(SOURCE, si), label="cube into three yangma"))
        bld.claim(CongruenceClaim(tuple(Ref(PIECE, i, SOURCE) for i in idx), allow_reflection=False,
                                  label="the three yangma are congruent"))
    elif kind == "six_juel":
        half = a / 2
        faces = [
            ([[1, 0, 0], [0, 1, 0], [0, 0, 1]], (half, half, 0)),
            ([[1, 0, 0], [0, -1, 0], [0, 0, -1]], (half, half, a)),
            ([[0, 0, 1], [1, 0, 0], [0, 1, 0]], (0, half, half)),
            ([[0, 0, -1], [0, 1, 0], [1, 0, 0]], (a, half, half)),
            ([[0, 1, 0], [0, 0, 1], [1, 0, 0]], (half, 0, half)),
            ([[1, 0, 0], [0, 0, -1], [0, 1, 0]], (half, a, half)),
        ]
        bld = _Builder()
        si = bld.source(box(a, a, a).with_label("cube"))
        idx = [bld.piece(juel(a), Placement(si, motion_from_matrix(rows, t)), label=f"juel {k}")
               for k, (rows, t) in enumerate(faces)]
        bld.claim(TilingClaim(SOURCE, _pieces(*idx), container=Ref(SOURCE, si), label="cube into six juel"))
        bld.claim(CongruenceClaim(tuple(Ref(PIECE, i, SOURCE) for i in idx), allow_reflection=False,
                                  label="the six juel are congruent"))
    else:
        bld = _Builder()
        si = bld.source(box(a, a, a).with_label("cube"))
        idx = [
            bld.piece(qiandu(a, a, a), Placement(si, IDENTITY), label="qiandu 0"),
            bld.piece(qiandu(a, a, a), Placement(si, _flip_about_x(a, a)), label="qiandu 1"),
        ]
        bld.claim(TilingClaim(SOURCE, _pieces(*idx), container=Ref(SOURCE, si), label="cube into two qiandu"))
        bld.claim(CongruenceClaim(tuple(Ref(PIECE, i, SOURCE) for i in idx), allow_reflection=False,
                                  label="the two qiandu are congruent"))
    bld.metadata.update(scenario=f"cube-{kind.replace('_', '-')}", a=str(a))
    return bld.build()


def qiandu_split(p, q, r) -> RearrangementCertificate:
    """qiandu(p,q,r) = yangma(p,q,r) (two thirds) + a tetrahedron (one third)."""
    p, q, r = Q(p), Q(q), Q(r)
    _positive(p=p, q=q, r=r)
    bld = _Builder()
    si = bld.source(qiandu(p, q, r))
    y = bld.piece(yangma(p, q, r), Placement(si, IDENTITY), label="yangma")
    rest = tetrahedron(vec(0, 0, r), vec(p, 0, r), vec(p, 0, 0), vec(p, q, 0), "remainder tetrahedron")
    t = bld.piece(rest, Placement(si, IDENTITY))
    bld.claim(TilingClaim(SOURCE, _pieces(y, t), container=Ref(SOURCE, si), label="qiandu split"))
    bld.metadata.update(scenario="qiandu-split", p=str(p), q=str(q), r=str(r))
    return bld.build()


def shutler_certificate(b, h) -> RearrangementCertificate:
    """The a = 2b argument for the pyramid rule.

    The four corner yangma of frustum(2b, b, h) assemble into a pyramid
    congruent with the top that was cut off the full pyramid(2b, 2h); the
    cuboid and prisms make a box of volume h*a*b; the full pyramid is the top
    scaled by 2.  Together: 6 * V(top) = h*a*b = 2*h*b^2.
    """
    b, h = Q(b), Q(h)
    _positive(b=b, h=h)
    a, s = 2 * b, b / 2
    bld = _Builder()
    parts = _cut_frustum(bld, a, b, h)
    si = parts["source"]
    every = parts["central"] + parts["prisms"] + parts["yangma"]
    bld.claim(TilingClaim(SOURCE, _pieces(*every), container=Ref(SOURCE, si), label="(1) nine parts"))

    full = bld.add_aux(symmetric_pyramid(a, 2 * h).with_label("full pyramid"))
    top = bld.add_aux(clip(bld.aux[full], HalfSpace(vec(0, 0, -1), -h)).with_label("removed top pyramid"))
    lower = bld.add_aux(clip(bld.aux[full], HalfSpace(vec(0, 0, 1), h)).with_label("full pyramid below h"))
    bld.claim(CongruenceClaim((Ref(SOURCE, si), Ref(AUX, lower)), allow_reflection=False,
                              label="frustum = full pyramid cut at height h"))

    asm_o = (-3 * a, 0, 0)
    ta = _four_yangma_into(bld, s, h, asm_o, parts["yangma"])
    bld.claim(TilingClaim(TARGET, _pieces(*parts["yangma"]), container=Ref(TARGET, ta), label="four yangma assemble"))
    bld.claim(CongruenceClaim((Ref(TARGET, ta), Ref(AUX, top)), allow_reflection=False,
                              label="(2) assembled pyramid congruent to removed top"))

    box_claim = _box_hab(bld, (3 * a, 0, 0), parts["central"][0], parts["prisms"], a, b, h, "(3) box h*a*b")
    tb = bld.claims[box_claim.index].container.index

    bld.claim(ScaleClaim(Ref(AUX, top), Fraction(2), Ref(AUX, full), label="(4) full pyramid = top scaled by 2"))
    one = Fraction(1)
    bld.claim(ArithmeticClaim(VolumeExpr(terms=((one, Ref(AUX, full)),)),
                              VolumeExpr(terms=((one, Ref(SOURCE, si)), (one, Ref(AUX, top)))),
                              label="full pyramid = frustum + top"))
    bld.claim(ArithmeticClaim(VolumeExpr(terms=((Fraction(6), Ref(AUX, top)),)),
                              VolumeExpr(terms=((one, Ref(TARGET, tb)),)),
                              label="6 V(top) = box h*a*b"))
    bld.claim(ArithmeticClaim(VolumeExpr(terms=((Fraction(6), Ref(AUX, top)),)),
                              VolumeExpr(constant=2 * h * b * b),
                              label="(5) 6 V(top) = 2 h b^2"))
    bld.metadata.update(scenario="shutler", b=str(b), h=str(h))
    return bld.build()


@dataclass(frozen=True)
class FormulaReport:
    name: str
    values: Tuple[Tuple[str, Fraction], ...] = field(default=())

    @property
    def ok(self) -> bool:
        vals = [v for _, v in self.values]
        return all(v == vals[0] for v in vals)

    def as_dict(self) -> Dict[str, Fraction]:
        return dict(self.values)


def truncated_juel_check(a, b) -> FormulaReport:
    """Truncated Juel pyramid: geometric volume, (a^3 - b^3)/6 and F_T at h = (a-b)/2 must agree."""
    a, b = Q(a), Q(b)
    _positive(b=b)
    _a_exceeds_b(a, b)
    h = (a - b) / 2
    return FormulaReport("truncated_juel", (
        ("geometric volume", truncated_juel(a, b).volume),
        ("(a^3 - b^3)/6", (a ** 3 - b ** 3) / 6),
        ("F_T(a, b, (a-b)/2)", formulas.evaluate_formula(formulas.FormulaId.F_T, a, b, h)),
    ))


def truncated_juel_certificate(a, b) -> RearrangementCertificate:
    """juel(a) cut at height (a-b)/2: the lower part is a frustum, the top is juel(b)."""
    a, b = Q(a), Q(b)
    _positive(b=b)
    _a_exceeds_b(a, b)
    h = (a - b) / 2
    bld = _Builder()
    whole = bld.add_aux(juel(a))
    lower = bld.add_aux(truncated_juel(a, b))
    top = bld.add_aux(clip(juel(a), HalfSpace(vec(0, 0, -1), -h)).with_label("removed top"))
    frustum = bld.add_aux(symmetric_frustum(a, b, h))
    small = bld.add_aux(juel(b))
    one = Fraction(1)
    bld.claim(CongruenceClaim((Ref(AUX, lower), Ref(AUX, frustum)), allow_reflection=False,
                              label="truncated juel is the frustum of height (a-b)/2"))
    bld.claim(CongruenceClaim((Ref(AUX, top), Ref(AUX, small)), allow_reflection=False,
                              label="removed top is juel(b)"))
    bld.claim(ArithmeticClaim(VolumeExpr(terms=((one, Ref(AUX, whole)),)),
                              VolumeExpr(terms=((one, Ref(AUX, lower)), (one, Ref(AUX, top)))),
                              label="juel(a) = truncated part + top"))
    bld.claim(ArithmeticClaim(VolumeExpr(terms=((Fraction(6), Ref(AUX, lower)),)),
                              VolumeExpr(constant=a ** 3 - b ** 3),
                              label="6 V = a^3 - b^3"))
    bld.claim(ArithmeticClaim(VolumeExpr(terms=((one, Ref(AUX, lower)),)),
                              VolumeExpr(constant=formulas.evaluate_formula(formulas.FormulaId.F_T, a, b, h)),
                              label="V = F_T(a, b, (a-b)/2)"))
    bld.metadata.update(scenario="truncated-juel", a=str(a), b=str(b))
    return bld.build()


SCENARIOS = {
    "nine-part": (nine_part_frustum, 3),
    "liu-hui": (liu_hui_three_copies, 3),
    "four-yangma": (four_yangma_pyramid, 2),
    "right-frustum": (right_frustum_parts, 3),
    "four-right-frustums": (four_right_frustums, 3),
    "cube-three-yangma": (lambda a: cube_dissections(a, "three_yangma"), 1),
    "cube-six-juel": (lambda a: cube_dissections(a, "six_juel"), 1),
    "cube-two-qiandu": (lambda a: cube_dissections(a, "two_qiandu"), 1),
    "qiandu-split": (qiandu_split, 3),
    "shutler": (shutler_certificate, 2),
    "truncated-juel": (truncated_juel_certificate, 2),
    "box-three-pyramids": (box_three_pyramids, 3),
}


def build_scenario(name: str, params: Sequence) -> RearrangementCertificate:
    if name not in SCENARIOS:
        raise InvalidParameters(f"unknown scenario {name!r}; expected one of {', '.join(sorted(SCENARIOS))}")
    fn, arity = SCENARIOS[name]
    if len(params) != arity:
        raise InvalidParameters(f"{name} takes {arity} parameters, got {len(params)}")
    return fn(*(Q(p) for p in params))
