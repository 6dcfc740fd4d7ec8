"""
Exact congruence of rational-vertex convex polytopes.

An isometry between two convex polytopes maps vertices to vertices, and is
pinned down by the images of four affinely independent vertices.  The search
therefore fixes an anchor quadruple in the first polytope, enumerates
distance-compatible image quadruples in the second, solves each affine map
exactly and keeps the first one that is a rigid motion carrying the vertex
set onto the vertex set.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .exact import (
    RigidMotion,
    Vec3,
    _apply,
    compose_motion,
    det3,
    dist2,
    invert_motion,
    inverse3,
    matmul3,
    matvec3,
    transpose3,
    validate_motion,
)
from .polytope import ConvexPolytope


@dataclass(frozen=True)
class CongruenceWitness:
    motion: RigidMotion
    vertex_bijection: Tuple[Tuple[int, int], ...]


EdgeFingerprint = Tuple[Fraction, ...]


def edge_fingerprint(p: ConvexPolytope) -> EdgeFingerprint:
    """Sorted multiset of squared edge lengths."""
    vs = p.vertices
    return tuple(sorted(dist2(vs[u], vs[w]) for u, w in p.edges))


def _anchor(vs: Sequence[Vec3]) -> Tuple[int, int, int, int]:
    for quad in combinations(range(len(vs)), 4):
        a, b, c, d = (vs[i] for i in quad)
        if det3((b - a, c - a, d - a)) != 0:
            return quad
    raise ValueError("vertex set is not full-dimensional")


def _solve_motion(src: Sequence[Vec3], dst: Sequence[Vec3]) -> Optional[RigidMotion]:
    """The unique affine map src[i] -> dst[i] (i < 4), if it is a rigid motion."""
    p0, q0 = src[0], dst[0]
    # columns of P and Q are the edge vectors from the first anchor point
    P = transpose3(tuple(s - p0 for s in src[1:4]))  # type: ignore[arg-type]
    Qm = transpose3(tuple(d - q0 for d in dst[1:4]))  # type: ignore[arg-type]
    M = matmul3(Qm, inverse3(P))
    d = det3(M)
    if d not in (1, -1):
        return None
    m = RigidMotion(M, q0 - matvec3(M, p0), int(d))
    return m if validate_motion(m) else None


def find_congruence(
    p: ConvexPolytope, q: ConvexPolytope, allow_reflection: bool = True
) -> Optional[CongruenceWitness]:
    """Return a witness that a rigid motion maps p onto q, or None."""
    pv, qv = p.vertices, q.vertices
    if len(pv) != len(qv):
        return None
    if p.volume != q.volume:
        return None
    if edge_fingerprint(p) != edge_fingerprint(q):
        return None

    anchor = _anchor(pv)
    src = [pv[i] for i in anchor]
    need = {(i, j): dist2(src[i], src[j]) for i in range(4) for j in range(i)}
    q_index: Dict[Vec3, int] = {v: i for i, v in enumerate(qv)}
    n = len(qv)

    def extend(chosen: List[int]):
        k = len(chosen)
        if k == 4:
            yield list(chosen)
            return
        for c in range(n):
            if c in chosen:
                continue
            if all(dist2(qv[c], qv[chosen[j]]) == need[(k, j)] for j in range(k)):
                chosen.append(c)
                yield from extend(chosen)
                chosen.pop()

    for image in extend([]):
        m = _solve_motion(src, [qv[i] for i in image])
        if m is None or (m.orientation == -1 and not allow_reflection):
            continue
        pairs = []
        hit = set()
        for i, v in enumerate(pv):
            j = q_index.get(_apply(m, v))
            if j is None or j in hit:
                break
            hit.add(j)
            pairs.append((i, j))
        else:
            return CongruenceWitness(m, tuple(pairs))
    return None


def verify_witness(p: ConvexPolytope, q: ConvexPolytope, w: CongruenceWitness) -> bool:
    """Re-check a witness without searching."""
    if not validate_motion(w.motion):
        return False
    n = len(p.vertices)
    if len(q.vertices) != n or len(w.vertex_bijection) != n:
        return False
    srcs = {i for i, _ in w.vertex_bijection}
    dsts = {j for _, j in w.vertex_bijection}
    if srcs != set(range(n)) or dsts != set(range(n)):
        return False
    return all(_apply(w.motion, p.vertices[i]) == q.vertices[j] for i, j in w.vertex_bijection)


def invert_witness(w: CongruenceWitness) -> CongruenceWitness:
    """Witness for q -> p given one for p -> q."""
    return CongruenceWitness(invert_motion(w.motion), tuple(sorted((j, i) for i, j in w.vertex_bijection)))


def chain_witnesses(w_pq: CongruenceWitness, w_qr: CongruenceWitness) -> CongruenceWitness:
    """Witness for p -> r from p -> q and q -> r."""
    qr = dict(w_qr.vertex_bijection)
    return CongruenceWitness(
        compose_motion(w_qr.motion, w_pq.motion),
        tuple((i, qr[j]) for i, j in w_pq.vertex_bijection),
    )


def fingerprint_counts(p: ConvexPolytope) -> Counter:
    return Counter(edge_fingerprint(p))
