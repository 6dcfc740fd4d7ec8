"""
Convex polytopes with exact rational vertices.

A polytope is stored as its vertex list plus oriented face cycles, each with
its supporting half-space.  Face cycles run counter-clockwise when seen from
outside, so the outward normal of a face is the cross product of its first
non-collinear edge pair.

``None`` is the empty result of :func:`clip` and :func:`intersect`; it is
also returned when an intersection degenerates to a face, edge or vertex
(affine rank below 3).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import FrustaError, PolytopeError
from .exact import (
    HalfSpace,
    RigidMotion,
    Vec3,
    _apply,
    affine_rank,
    det3,
    require_valid,
    Q,
)


@dataclass(frozen=True)
class Face:
    cycle: Tuple[int, ...]
    plane: HalfSpace


@dataclass(frozen=True)
class ConvexPolytope:
    vertices: Tuple[Vec3, ...]
    faces: Tuple[Face, ...]
    label: str = field(default="", compare=False)

    @cached_property
    def edges(self) -> Tuple[Tuple[int, int], ...]:
        """Undirected edges as sorted index pairs, in first-seen order."""
        seen: Dict[Tuple[int, int], None] = {}
        for f in self.faces:
            c = f.cycle
            for i in range(len(c)):
                u, w = c[i], c[(i + 1) % len(c)]
                seen.setdefault((u, w) if u < w else (w, u), None)
        return tuple(seen)

    @cached_property
    def volume(self) -> Fraction:
        return volume(self)

    @cached_property
    def bbox(self) -> Tuple[Vec3, Vec3]:
        xs = [v.x for v in self.vertices]
        ys = [v.y for v in self.vertices]
        zs = [v.z for v in self.vertices]
        return Vec3(min(xs), min(ys), min(zs)), Vec3(max(xs), max(ys), max(zs))

    @property
    def halfspaces(self) -> List[HalfSpace]:
        return [f.plane for f in self.faces]

    def with_label(self, label: str) -> "ConvexPolytope":
        return ConvexPolytope(self.vertices, self.faces, label)

    def contains_point(self, p: Vec3) -> bool:
        return all(f.plane.contains(p) for f in self.faces)

    def strictly_contains_point(self, p: Vec3) -> bool:
        return all(f.plane.value(p) < 0 for f in self.faces)

    def __repr__(self):
        name = self.label or "polytope"
        return f"<ConvexPolytope {name}: {len(self.vertices)}V {len(self.faces)}F>"


def _face_normal(pts: Sequence[Vec3]) -> Optional[Vec3]:
    v0, v1 = pts[0], pts[1]
    e1 = v1 - v0
    for vk in pts[2:]:
        n = e1.cross(vk - v0)
        if not n.is_zero():
            return n
    return None


def build_polytope(vertices: Iterable, faces: Iterable[Sequence[int]], label: str = "") -> ConvexPolytope:
    """Validate a vertex/face description and return the polytope.

    Face cycles may be given in either winding; each is reoriented so that
    its normal points away from the solid.  Raises :class:`PolytopeError`
    naming the first violated condition.
    """
    verts = tuple(v if isinstance(v, Vec3) else Vec3(*(Q(c) for c in v)) for v in vertices)
    cycles = [tuple(int(i) for i in f) for f in faces]
    n = len(verts)

    if len(set(verts)) != n:
        raise PolytopeError("degenerate (duplicate vertex)")
    for c in cycles:
        if len(c) < 3 or len(set(c)) != len(c):
            raise PolytopeError("bad topology (face needs at least 3 distinct vertices)")
        if any(i < 0 or i >= n for i in c):
            raise PolytopeError("bad topology (face index out of range)")
    if affine_rank(list(verts)) < 3:
        raise PolytopeError("degenerate (rank < 3)")

    planes = []
    for c in cycles:
        pts = [verts[i] for i in c]
        normal = _face_normal(pts)
        if normal is None:
            raise PolytopeError("degenerate (collinear face)")
        offset = normal.dot(pts[0])
        if any(normal.dot(p) != offset for p in pts):
            raise PolytopeError("non-planar face")
        planes.append((normal, offset))

    oriented = []
    for c, (normal, offset) in zip(cycles, planes):
        above = below = False
        for v in verts:
            d = normal.dot(v)
            if d > offset:
                above = True
            elif d < offset:
                below = True
        if above and below:
            raise PolytopeError("non-convex / vertex outside face plane")
        if above:
            normal, offset, c = -normal, -offset, tuple(reversed(c))
        pts = [verts[i] for i in c]
        k = len(pts)
        for i in range(k):
            a, b = pts[i], pts[(i + 1) % k]
            edge = b - a
            for j in range(k):
                if j == i or j == (i + 1) % k:
                    continue
                if edge.cross(pts[j] - a).dot(normal) <= 0:
                    raise PolytopeError("non-convex face")
        oriented.append(Face(c, HalfSpace(normal, offset).primitive()))

    directed = set()
    for f in oriented:
        c = f.cycle
        for i in range(len(c)):
            e = (c[i], c[(i + 1) % len(c)])
            if e in directed:
                raise PolytopeError("bad topology (edge shared inconsistently)")
            directed.add(e)
    for u, w in directed:
        if (w, u) not in directed:
            raise PolytopeError("bad topology (edge not shared by exactly 2 faces)")
    used = {i for f in oriented for i in f.cycle}
    if len(used) != n:
        raise PolytopeError("bad topology (unused vertex)")
    n_edges = len(directed) // 2
    if n - n_edges + len(oriented) != 2:
        raise PolytopeError("bad topology (Euler relation V - E + F != 2)")

    return ConvexPolytope(verts, tuple(oriented), label)


def volume(p: ConvexPolytope) -> Fraction:
    """Exact volume by the divergence theorem with a fan per face."""
    total = Fraction(0)
    vs = p.vertices
    for f in p.faces:
        c = f.cycle
        v0 = vs[c[0]]
        for i in range(1, len(c) - 1):
            total += det3((v0, vs[c[i]], vs[c[i + 1]]))
    return total / 6


def _drop_straight(cycle: Tuple[int, ...], verts: Sequence[Vec3]) -> Tuple[int, ...]:
    # a cut through an existing vertex can leave it in the middle of a straight edge
    out = list(cycle)
    changed = True
    while changed and len(out) > 3:
        changed = False
        for i in range(len(out)):
            a, b, c = verts[out[i - 1]], verts[out[i]], verts[out[(i + 1) % len(out)]]
            if (b - a).cross(c - b).is_zero():
                del out[i]
                changed = True
                break
    return tuple(out)


def clip(p: ConvexPolytope, hs: HalfSpace) -> Optional[ConvexPolytope]:
    """Exact intersection of ``p`` with ``hs``; ``None`` if it has no interior."""
    vals = [hs.value(v) for v in p.vertices]
    if all(s <= 0 for s in vals):
        return p
    if all(s >= 0 for s in vals):
        return None

    new_verts: List[Vec3] = []
    index: Dict[Vec3, int] = {}

    def idx(pt: Vec3) -> int:
        i = index.get(pt)
        if i is None:
            i = index[pt] = len(new_verts)
            new_verts.append(pt)
        return i

    vs = p.vertices
    kept: List[Tuple[Tuple[int, ...], HalfSpace]] = []
    for f in p.faces:
        c = f.cycle
        out: List[int] = []
        k = len(c)
        for i in range(k):
            a, b = c[i], c[(i + 1) % k]
            sa, sb = vals[a], vals[b]
            if sa <= 0:
                out.append(idx(vs[a]))
            if (sa < 0 < sb) or (sb < 0 < sa):
                t = sa / (sa - sb)
                out.append(idx(vs[a] + (vs[b] - vs[a]).scaled(t)))
        if len(out) >= 3:
            kept.append((tuple(out), f.plane))

    directed = set()
    for c, _ in kept:
        for i in range(len(c)):
            directed.add((c[i], c[(i + 1) % len(c)]))
    nxt: Dict[int, int] = {}
    for u, w in directed:
        if (w, u) not in directed:
            if w in nxt:
                raise FrustaError("clip produced a non-manifold cap")
            nxt[w] = u
    start = next(iter(nxt))
    cap = [start]
    cur = nxt[start]
    while cur != start:
        cap.append(cur)
        cur = nxt[cur]
        if len(cap) > len(nxt):
            raise FrustaError("clip produced a broken cap cycle")
    if len(cap) != len(nxt):
        raise FrustaError("clip produced a disconnected cap")
    kept.append((tuple(cap), hs.primitive()))
    kept = [(_drop_straight(c, new_verts), plane) for c, plane in kept]

    used = sorted({i for c, _ in kept for i in c})
    remap = {old: new for new, old in enumerate(used)}
    verts = tuple(new_verts[i] for i in used)
    faces = tuple(Face(tuple(remap[i] for i in c), plane) for c, plane in kept)
    return ConvexPolytope(verts, faces, p.label)


def _bbox_interiors_disjoint(p: ConvexPolytope, q: ConvexPolytope) -> bool:
    (plo, phi), (qlo, qhi) = p.bbox, q.bbox
    return any(phi[i] <= qlo[i] or qhi[i] <= plo[i] for i in range(3))


def intersect(p: ConvexPolytope, q: ConvexPolytope) -> Optional[ConvexPolytope]:
    """p clipped successively by every face half-space of q."""
    if _bbox_interiors_disjoint(p, q):
        return None
    r: Optional[ConvexPolytope] = p
    for f in q.faces:
        r = clip(r, f.plane)
        if r is None:
            return None
    return r


def _separated_by_face(p: ConvexPolytope, q: ConvexPolytope) -> bool:
    for f in p.faces:
        if all(f.plane.value(v) >= 0 for v in q.vertices):
            return True
    return False


def interiors_disjoint(p: ConvexPolytope, q: ConvexPolytope) -> bool:
    """True iff p and q share no interior point (touching is allowed)."""
    if _bbox_interiors_disjoint(p, q) or _separated_by_face(p, q) or _separated_by_face(q, p):
        return True
    return intersect(p, q) is None


def contains_polytope(outer: ConvexPolytope, inner: ConvexPolytope) -> bool:
    return all(f.plane.contains(v) for f in outer.faces for v in inner.vertices)


def transform(p: ConvexPolytope, m: RigidMotion) -> ConvexPolytope:
    """Image of p under m.  Face planes are re-derived from the mapped vertices."""
    require_valid(m)
    verts = [_apply(m, v) for v in p.vertices]
    cycles = [f.cycle if m.orientation == 1 else tuple(reversed(f.cycle)) for f in p.faces]
    return build_polytope(verts, cycles, p.label)


def translate(p: ConvexPolytope, offset: Vec3) -> ConvexPolytope:
    return transform(p, RigidMotion(translation=offset))


def scale(p: ConvexPolytope, k) -> ConvexPolytope:
    """Uniform scaling about the origin by k > 0."""
    k = Q(k)
    if k <= 0:
        raise FrustaError("scale factor must be positive")
    return build_polytope([v.scaled(k) for v in p.vertices], [f.cycle for f in p.faces], p.label)


def same_vertex_set(p: ConvexPolytope, q: ConvexPolytope) -> bool:
    return set(p.vertices) == set(q.vertices)


def centroid(p: ConvexPolytope) -> Vec3:
    n = len(p.vertices)
    s = Vec3(Fraction(0), Fraction(0), Fraction(0))
    for v in p.vertices:
        s = s + v
    return s.scaled(Fraction(1, n))


# Shape helpers used by the catalog and tests.

def prismatoid(bottom: Sequence, top: Sequence, label: str = "") -> ConvexPolytope:
    """Solid between two polygons given as matching vertex loops."""
    k = len(bottom)
    if len(top) != k:
        raise FrustaError("bottom and top loops must have equal length")
    faces = [tuple(range(k)), tuple(range(k, 2 * k))]
    for i in range(k):
        j = (i + 1) % k
        faces.append((i, j, k + j, k + i))
    return build_polytope(list(bottom) + list(top), faces, label)


def pyramid_over(base: Sequence, apex, label: str = "") -> ConvexPolytope:
    k = len(base)
    faces = [tuple(range(k))] + [(i, (i + 1) % k, k) for i in range(k)]
    return build_polytope(list(base) + [apex], faces, label)


def tetrahedron(a, b, c, d, label: str = "") -> ConvexPolytope:
    return build_polytope([a, b, c, d], [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)], label)
