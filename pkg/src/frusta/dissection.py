"""
Rearrangement certificates and their verification.

A certificate lists source solids (what gets cut), target solids (what gets
built), pieces with a placement into a source and/or a target, and typed
claims.  Claims come at two epistemic levels:

* tilings are checked geometrically and reach ``Exact``;
* volume claims only compare total volumes and reach ``VolumeEquality``.

A verdict never reports a level stronger than what was actually checked.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .congruence import find_congruence, verify_witness
from .errors import CertificateStructureError, NotAnIsometry
from .exact import RigidMotion, validate_motion
from .polytope import (
    ConvexPolytope,
    contains_polytope,
    interiors_disjoint,
    intersect,
    scale,
    transform,
)

SOURCE = "source"
TARGET = "target"
AUX = "aux"
PIECE = "piece"
CLAIM = "claim"


@dataclass(frozen=True)
class Placement:
    container: int
    motion: RigidMotion


@dataclass(frozen=True)
class PlacedPiece:
    """A piece in its own local frame with where it sits in a source and a target."""

    piece: ConvexPolytope
    source: Optional[Placement] = None
    target: Optional[Placement] = None
    label: str = ""


@dataclass(frozen=True)
class Ref:
    """Reference to a source, target, aux solid, piece or (for tilings) an earlier claim.

    A piece reference with ``side`` set means the piece as placed on that
    side, in world coordinates; without it, the piece in its own frame.
    """

    kind: str
    index: int
    side: Optional[str] = None

    def __str__(self):
        return f"{self.kind}:{self.index}" + (f"@{self.side}" if self.side else "")


@dataclass(frozen=True)
class TilingClaim:
    """The parts tile the container exactly.

    The container is either a solid (``container``) or an explicit union of
    interior-disjoint convex cells given in world coordinates (``cells``).
    Parts are pieces, placed with their ``side`` placement, or earlier
    tiling claims, which contribute their leaf pieces.
    """

    side: str
    parts: Tuple[Ref, ...]
    container: Optional[Ref] = None
    cells: Tuple[ConvexPolytope, ...] = ()
    label: str = ""


@dataclass(frozen=True)
class VolumeClaim:
    """Total volume on the left equals total volume on the right; no geometry implied."""

    left: Tuple[Ref, ...]
    right: Tuple[Ref, ...]
    note: str = ""
    label: str = ""


@dataclass(frozen=True)
class CongruenceClaim:
    """congruent=True: all listed solids are pairwise congruent.
    congruent=False: at least one pair is provably not congruent."""

    refs: Tuple[Ref, ...]
    allow_reflection: bool = True
    congruent: bool = True
    label: str = ""


@dataclass(frozen=True)
class ScaleClaim:
    """q is similar to p with linear factor k, hence volume(q) = k^3 volume(p)."""

    p: Ref
    k: Fraction
    q: Ref
    label: str = ""


@dataclass(frozen=True)
class VolumeExpr:
    """constant + sum(coefficient * volume(ref))."""

    constant: Fraction = Fraction(0)
    terms: Tuple[Tuple[Fraction, Ref], ...] = ()


@dataclass(frozen=True)
class ArithmeticClaim:
    left: VolumeExpr
    right: VolumeExpr
    label: str = ""


Claim = Union[TilingClaim, VolumeClaim, CongruenceClaim, ScaleClaim, ArithmeticClaim]


@dataclass(frozen=True)
class RearrangementCertificate:
    sources: Tuple[ConvexPolytope, ...] = ()
    targets: Tuple[ConvexPolytope, ...] = ()
    pieces: Tuple[PlacedPiece, ...] = ()
    claims: Tuple[Claim, ...] = ()
    aux: Tuple[ConvexPolytope, ...] = ()
    metadata: Tuple[Tuple[str, str], ...] = ()

    def meta(self) -> Dict[str, str]:
        return dict(self.metadata)


class Level(str, Enum):
    EXACT = "Exact"
    VOLUME_EQUALITY = "VolumeEquality"
    VERIFIED = "Verified"
    FAILED = "Failed"


@dataclass
class ClaimResult:
    name: str
    kind: str
    level: Level
    reason: str = ""
    data: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.level is not Level.FAILED


@dataclass
class Verdict:
    results: List[ClaimResult]
    notes: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.ok for r in self.results)

    @property
    def level(self) -> Level:
        """Weakest level any result reached: the certificate is only as strong as that."""
        if not self.passed:
            return Level.FAILED
        if any(r.level is Level.VOLUME_EQUALITY for r in self.results):
            return Level.VOLUME_EQUALITY
        return Level.EXACT

    def claim_results(self) -> List[ClaimResult]:
        return [r for r in self.results if r.kind != "conservation"]

    def failures(self) -> List[ClaimResult]:
        return [r for r in self.results if not r.ok]


def _fail(name, kind, reason, **data) -> ClaimResult:
    return ClaimResult(name, kind, Level.FAILED, reason, data)


def verify_tiling(
    container: Union[ConvexPolytope, Sequence[ConvexPolytope]],
    placed: Sequence[Tuple[ConvexPolytope, RigidMotion]],
) -> ClaimResult:
    """Exact iff every placed piece lies in the container, no two placed
    pieces share interior, and the volumes add up.

    For a multi-cell container each piece must lie inside a single cell and
    the cells themselves must be interior-disjoint.  Raises NotAnIsometry on
    an invalid placement motion.
    """
    world = [transform(poly, m) for poly, m in placed]
    return _tiling_world(container, world)


def _tiling_world(container, world: Sequence[ConvexPolytope]) -> ClaimResult:
    cells = [container] if isinstance(container, ConvexPolytope) else list(container)
    for i, j in combinations(range(len(cells)), 2):
        if not interiors_disjoint(cells[i], cells[j]):
            return _fail("tiling", "tiling", "container cells overlap", cells=(i, j))
    for i, w in enumerate(world):
        if not any(contains_polytope(c, w) for c in cells):
            return _fail("tiling", "tiling", f"piece {i} not contained in container", piece=i)
    total = sum((w.volume for w in world), Fraction(0))
    expected = sum((c.volume for c in cells), Fraction(0))
    if total != expected:
        return _fail(
            "tiling", "tiling", "volume mismatch", pieces_volume=total, container_volume=expected
        )
    for i, j in combinations(range(len(world)), 2):
        if not interiors_disjoint(world[i], world[j]):
            common = intersect(world[i], world[j])
            return _fail(
                "tiling", "tiling", f"overlap between pieces {i} and {j}",
                pair=(i, j), overlap_volume=common.volume if common else Fraction(0),
            )
    return ClaimResult("tiling", "tiling", Level.EXACT, "", {"volume": expected, "pieces": len(world)})


def volume_equality(left: Sequence[ConvexPolytope], right: Sequence[ConvexPolytope]) -> bool:
    return sum((p.volume for p in left), Fraction(0)) == sum((p.volume for p in right), Fraction(0))


def check_structure(cert: RearrangementCertificate) -> None:
    """Raise CertificateStructureError for dangling references."""
    sizes = {SOURCE: len(cert.sources), TARGET: len(cert.targets), AUX: len(cert.aux), PIECE: len(cert.pieces)}

    def check_ref(ref: Ref, where: str, kinds=(SOURCE, TARGET, AUX, PIECE)):
        if ref.kind not in kinds:
            raise CertificateStructureError(f"{where}: reference kind {ref.kind!r} not allowed here")
        if not 0 <= ref.index < sizes[ref.kind]:
            raise CertificateStructureError(f"{where}: {ref} does not exist")
        if ref.side is not None:
            if ref.kind != PIECE or ref.side not in (SOURCE, TARGET):
                raise CertificateStructureError(f"{where}: {ref}: only pieces take a source/target side")
            pc = cert.pieces[ref.index]
            if (pc.source if ref.side == SOURCE else pc.target) is None:
                raise CertificateStructureError(f"{where}: piece {ref.index} has no {ref.side} placement")

    for i, pc in enumerate(cert.pieces):
        if pc.source is None and pc.target is None:
            raise CertificateStructureError(f"piece {i}: has neither source nor target placement")
        if pc.source is not None and not 0 <= pc.source.container < len(cert.sources):
            raise CertificateStructureError(f"piece {i}: source {pc.source.container} does not exist")
        if pc.target is not None and not 0 <= pc.target.container < len(cert.targets):
            raise CertificateStructureError(f"piece {i}: target {pc.target.container} does not exist")

    for ci, claim in enumerate(cert.claims):
        where = f"claim {ci}"
        if isinstance(claim, TilingClaim):
            if claim.side not in (SOURCE, TARGET):
                raise CertificateStructureError(f"{where}: side must be source or target")
            if (claim.container is None) == (not claim.cells):
                raise CertificateStructureError(f"{where}: give exactly one of container or cells")
            if claim.container is not None:
                check_ref(claim.container, where, (SOURCE, TARGET, AUX))
            if not claim.parts:
                raise CertificateStructureError(f"{where}: tiling with no parts")
            for part in claim.parts:
                if part.kind == CLAIM:
                    if not 0 <= part.index < ci or not isinstance(cert.claims[part.index], TilingClaim):
                        raise CertificateStructureError(f"{where}: {part} must be an earlier tiling claim")
                    if cert.claims[part.index].side != claim.side:
                        raise CertificateStructureError(f"{where}: nested {part} uses the other side")
                else:
                    check_ref(part, where, (PIECE,))
                    pc = cert.pieces[part.index]
                    if (pc.source if claim.side == SOURCE else pc.target) is None:
                        raise CertificateStructureError(f"{where}: piece {part.index} has no {claim.side} placement")
        elif isinstance(claim, VolumeClaim):
            if not claim.left or not claim.right:
                raise CertificateStructureError(f"{where}: volume claim needs both sides")
            for r in claim.left + claim.right:
                check_ref(r, where)
        elif isinstance(claim, CongruenceClaim):
            if len(claim.refs) < 2:
                raise CertificateStructureError(f"{where}: congruence needs two or more solids")
            for r in claim.refs:
                check_ref(r, where)
        elif isinstance(claim, ScaleClaim):
            check_ref(claim.p, where)
            check_ref(claim.q, where)
            if claim.k <= 0:
                raise CertificateStructureError(f"{where}: scale factor must be positive")
        elif isinstance(claim, ArithmeticClaim):
            for expr in (claim.left, claim.right):
                for _, r in expr.terms:
                    check_ref(r, where)
        else:
            raise CertificateStructureError(f"{where}: unknown claim type {type(claim).__name__}")


class _Verifier:
    def __init__(self, cert: RearrangementCertificate):
        self.cert = cert
        self._world: Dict[Tuple[int, str], ConvexPolytope] = {}
        self._tilings: Dict[tuple, ClaimResult] = {}

    def solid(self, ref: Ref) -> ConvexPolytope:
        c = self.cert
        if ref.kind == SOURCE:
            return c.sources[ref.index]
        if ref.kind == TARGET:
            return c.targets[ref.index]
        if ref.kind == AUX:
            return c.aux[ref.index]
        if ref.side is not None:
            return self.world(ref.index, ref.side)
        return c.pieces[ref.index].piece

    def world(self, i: int, side: str) -> ConvexPolytope:
        key = (i, side)
        if key not in self._world:
            pc = self.cert.pieces[i]
            pl = pc.source if side == SOURCE else pc.target
            if not validate_motion(pl.motion):
                raise NotAnIsometry(f"piece {i} ({pc.label or 'unlabelled'}) {side} placement")
            self._world[key] = transform(pc.piece, pl.motion)
        return self._world[key]

    def leaves(self, claim: TilingClaim) -> List[int]:
        out: List[int] = []
        for part in claim.parts:
            if part.kind == CLAIM:
                out.extend(self.leaves(self.cert.claims[part.index]))
            else:
                out.append(part.index)
        return out

    def tiling(self, name, container_key, container, pieces: Sequence[int], side) -> ClaimResult:
        if len(set(pieces)) != len(pieces):
            return _fail(name, "tiling", "piece used twice")
        key = (container_key, tuple(sorted(pieces)), side)
        if key not in self._tilings:
            try:
                world = [self.world(i, side) for i in pieces]
            except NotAnIsometry as exc:
                self._tilings[key] = _fail(name, "tiling", f"invalid motion: {exc}")
            else:
                res = _tiling_world(container, world)
                # report certificate piece indices, not positions in this tiling
                if "piece" in res.data:
                    res.data["piece"] = pieces[res.data["piece"]]
                    res.reason = f"piece {res.data['piece']} not contained in container"
                if "pair" in res.data:
                    a, b = res.data["pair"]
                    res.data["pair"] = (pieces[a], pieces[b])
                    res.reason = f"overlap between pieces {pieces[a]} and {pieces[b]}"
                self._tilings[key] = res
        base = self._tilings[key]
        return ClaimResult(name, "tiling", base.level, base.reason, dict(base.data))

    def evaluate(self, ci: int, claim: Claim) -> ClaimResult:
        name = f"claim {ci}" + (f" ({claim.label})" if claim.label else "")
        if isinstance(claim, TilingClaim):
            if claim.container is not None:
                container, ckey = self.solid(claim.container), (claim.container.kind, claim.container.index)
            else:
                container, ckey = list(claim.cells), ("claim", ci)
            return self.tiling(name, ckey, container, self.leaves(claim), claim.side)
        if isinstance(claim, VolumeClaim):
            left = [self.solid(r) for r in claim.left]
            right = [self.solid(r) for r in claim.right]
            lv = sum((p.volume for p in left), Fraction(0))
            rv = sum((p.volume for p in right), Fraction(0))
            data = {"left": lv, "right": rv}
            if lv != rv:
                return ClaimResult(name, "volume", Level.FAILED, "volumes differ", data)
            return ClaimResult(name, "volume", Level.VOLUME_EQUALITY, claim.note, data)
        if isinstance(claim, CongruenceClaim):
            polys = [self.solid(r) for r in claim.refs]
            found, missing = 0, []
            for i, j in combinations(range(len(polys)), 2):
                w = find_congruence(polys[i], polys[j], claim.allow_reflection)
                if w is not None and verify_witness(polys[i], polys[j], w):
                    found += 1
                else:
                    missing.append((str(claim.refs[i]), str(claim.refs[j])))
            data = {"congruent_pairs": found, "non_congruent_pairs": missing}
            if claim.congruent and missing:
                return ClaimResult(name, "congruence", Level.FAILED, f"no motion for {missing[0]}", data)
            if not claim.congruent and not missing:
                return ClaimResult(name, "congruence", Level.FAILED, "all pairs are congruent", data)
            return ClaimResult(name, "congruence", Level.VERIFIED, "", data)
        if isinstance(claim, ScaleClaim):
            p, q = self.solid(claim.p), self.solid(claim.q)
            k3 = claim.k ** 3
            data = {"ratio": q.volume / p.volume, "k_cubed": k3}
            if q.volume != k3 * p.volume:
                return ClaimResult(name, "scale", Level.FAILED, "volume ratio differs from k^3", data)
            if find_congruence(scale(p, claim.k), q, True) is None:
                return ClaimResult(name, "scale", Level.FAILED, "q is not a scaled copy of p", data)
            return ClaimResult(name, "scale", Level.VERIFIED, "", data)
        if isinstance(claim, ArithmeticClaim):
            lv, rv = self.expr(claim.left), self.expr(claim.right)
            data = {"left": lv, "right": rv}
            if lv != rv:
                return ClaimResult(name, "arithmetic", Level.FAILED, "sides differ", data)
            return ClaimResult(name, "arithmetic", Level.VERIFIED, "", data)
        raise CertificateStructureError(f"unknown claim {claim!r}")

    def expr(self, e: VolumeExpr) -> Fraction:
        return e.constant + sum((coef * self.solid(r).volume for coef, r in e.terms), Fraction(0))

    def conservation(self) -> List[ClaimResult]:
        c = self.cert
        out = []
        for side, solids in ((SOURCE, c.sources), (TARGET, c.targets)):
            for si, solid in enumerate(solids):
                members = [
                    i for i, pc in enumerate(c.pieces)
                    if (pc.source if side == SOURCE else pc.target) is not None
                    and (pc.source if side == SOURCE else pc.target).container == si
                ]
                if not members:
                    continue
                name = f"conservation: {side} {si}" + (f" ({solid.label})" if solid.label else "")
                res = self.tiling(name, (side, si), solid, members, side)
                res.kind = "conservation"
                out.append(res)
        if c.sources and c.targets:
            left = {r.index for cl in c.claims if isinstance(cl, VolumeClaim) for r in cl.left if r.kind == PIECE}
            right = {r.index for cl in c.claims if isinstance(cl, VolumeClaim) for r in cl.right if r.kind == PIECE}
            unrouted = [i for i, pc in enumerate(c.pieces) if pc.target is None and i not in left]
            unsourced = [i for i, pc in enumerate(c.pieces) if pc.source is None and i not in right]
            if unrouted or unsourced:
                out.append(ClaimResult(
                    "conservation: coverage", "conservation", Level.FAILED,
                    "pieces without a placement must be listed in a volume claim",
                    {"unrouted": unrouted, "unsourced": unsourced},
                ))
        return out


def verify_certificate(cert: RearrangementCertificate) -> Verdict:
    """Evaluate every claim, then check that sources and targets are conserved.

    Malformed references raise CertificateStructureError; everything else
    (including invalid placement motions) is reported inside the verdict.
    """
    check_structure(cert)
    v = _Verifier(cert)
    results = []
    notes = []
    for ci, claim in enumerate(cert.claims):
        try:
            results.append(v.evaluate(ci, claim))
        except NotAnIsometry as exc:
            results.append(_fail(f"claim {ci}", "invalid", f"invalid motion: {exc}"))
        if isinstance(claim, VolumeClaim) and claim.note:
            notes.append(f"claim {ci}: {claim.note}")
    results.extend(v.conservation())
    return Verdict(results, notes)
