"""
JSON certificate files.

Layout (all rationals are strings such as "3/4"; plain JSON integers are
also accepted, floats never)::

    {
      "version": 1,
      "metadata": {"scenario": "liu-hui"},
      "solids": [
        {"id": "S0", "role": "source", "polytope": {...}, "label": "..."},
        {"id": "T0", "role": "target", "spec": "box:3,3,1", "pose": {...}}
      ],
      "pieces": [
        {"id": "P0", "polytope": {...},
         "source": {"solid": "S0", "motion": {...}},
         "target": {"solid": "T0", "motion": {...}}}
      ],
      "claims": [
        {"id": "C0", "type": "tiling", "side": "source", "container": "S0", "parts": ["P0", "C3"]},
        {"id": "C1", "type": "congruence", "refs": ["P0@source", "P1@source"]}
      ]
    }

A polytope literal is ``{"vertices": [[x, y, z], ...], "faces": [[i, j, k, ...], ...]}``
and a motion is ``{"matrix": [[..3..], [..3..], [..3..]], "translation": [..3..], "orientation": 1}``.
Unknown keys are rejected; every error names the JSON path where it occurred.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from .catalog import SolidSpec, make_solid
from .dissection import (
    AUX,
    CLAIM,
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
    check_structure,
)
from .errors import CertificateStructureError, FrustaError
from .exact import RigidMotion, Vec3, parse_rational, render_rational, require_valid
from .polytope import ConvexPolytope, build_polytope, transform

FORMAT_VERSION = 1
ROLES = {"source": SOURCE, "target": TARGET, "aux": AUX}
_PREFIX = {SOURCE: "S", TARGET: "T", AUX: "A"}


class CertificateFileError(FrustaError):
    """The file is not a well-formed certificate; the message carries the JSON path."""


# rendering

def _r(x: Fraction) -> str:
    return render_rational(x)


def polytope_literal(p: ConvexPolytope) -> dict:
    return {
        "vertices": [[_r(v.x), _r(v.y), _r(v.z)] for v in p.vertices],
        "faces": [list(f.cycle) for f in p.faces],
    }


def motion_literal(m: RigidMotion) -> dict:
    return {
        "matrix": [[_r(c) for c in row] for row in m.matrix],
        "translation": [_r(c) for c in m.translation],
        "orientation": m.orientation,
    }


def _expr_literal(e: VolumeExpr, ids) -> dict:
    return {"constant": _r(e.constant), "terms": [[_r(c), ids(r)] for c, r in e.terms]}


def to_json(cert: RearrangementCertificate) -> dict:
    def solid_id(kind, i):
        return f"{_PREFIX[kind]}{i}"

    def ref_id(ref: Ref) -> str:
        if ref.kind == PIECE:
            return f"P{ref.index}" + (f"@{ref.side}" if ref.side else "")
        if ref.kind == CLAIM:
            return f"C{ref.index}"
        return solid_id(ref.kind, ref.index)

    solids = []
    for kind, group in ((SOURCE, cert.sources), (TARGET, cert.targets), (AUX, cert.aux)):
        role = {v: k for k, v in ROLES.items()}[kind]
        for i, p in enumerate(group):
            entry = {"id": solid_id(kind, i), "role": role, "polytope": polytope_literal(p)}
            if p.label:
                entry["label"] = p.label
            solids.append(entry)

    pieces = []
    for i, pc in enumerate(cert.pieces):
        entry: Dict[str, Any] = {"id": f"P{i}"}
        if pc.label:
            entry["label"] = pc.label
        entry["polytope"] = polytope_literal(pc.piece)
        for side, pl in ((SOURCE, pc.source), (TARGET, pc.target)):
            if pl is not None:
                entry[side] = {"solid": solid_id(side, pl.container), "motion": motion_literal(pl.motion)}
        pieces.append(entry)

    claims = []
    for i, c in enumerate(cert.claims):
        entry = {"id": f"C{i}"}
        if isinstance(c, TilingClaim):
            entry.update(type="tiling", side=c.side, parts=[ref_id(r) for r in c.parts])
            if c.container is not None:
                entry["container"] = ref_id(c.container)
            else:
                entry["cells"] = [polytope_literal(p) for p in c.cells]
        elif isinstance(c, VolumeClaim):
            entry.update(type="volume", left=[ref_id(r) for r in c.left], right=[ref_id(r) for r in c.right])
            if c.note:
                entry["note"] = c.note
        elif isinstance(c, CongruenceClaim):
            entry.update(type="congruence", refs=[ref_id(r) for r in c.refs],
                         allow_reflection=c.allow_reflection, congruent=c.congruent)
        elif isinstance(c, ScaleClaim):
            entry.update(type="scale", p=ref_id(c.p), k=_r(c.k), q=ref_id(c.q))
        elif isinstance(c, ArithmeticClaim):
            entry.update(type="arithmetic", left=_expr_literal(c.left, ref_id), right=_expr_literal(c.right, ref_id))
        if c.label:
            entry["label"] = c.label
        claims.append(entry)

    return {
        "version": FORMAT_VERSION,
        "metadata": dict(cert.metadata),
        "solids": solids,
        "pieces": pieces,
        "claims": claims,
    }


def dumps(cert: RearrangementCertificate) -> str:
    return json.dumps(to_json(cert), indent=1, ensure_ascii=False) + "\n"


def dump(cert: RearrangementCertificate, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(cert))


# parsing

class _Reader:
    def __init__(self):
        self.solid_ids: Dict[str, Tuple[str, int]] = {}
        self.piece_ids: Dict[str, int] = {}
        self.claim_ids: Dict[str, int] = {}

    @staticmethod
    def fail(path: str, msg: str):
        raise CertificateFileError(f"{path}: {msg}")

    def obj(self, x, path, required=(), optional=()) -> dict:
        if not isinstance(x, dict):
            self.fail(path, "expected an object")
        missing = [k for k in required if k not in x]
        if missing:
            self.fail(path, f"missing field {missing[0]!r}")
        extra = sorted(set(x) - set(required) - set(optional))
        if extra:
            self.fail(path, f"unknown field {extra[0]!r}")
        return x

    def lst(self, x, path) -> list:
        if not isinstance(x, list):
            self.fail(path, "expected a list")
        return x

    def text(self, x, path) -> str:
        if not isinstance(x, str):
            self.fail(path, "expected a string")
        return x

    def rational(self, x, path) -> Fraction:
        if isinstance(x, bool) or isinstance(x, float):
            self.fail(path, "rationals must be integers or \"p/q\" strings, not floats")
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            try:
                return parse_rational(x)
            except FrustaError as exc:
                self.fail(path, str(exc))
        self.fail(path, "expected a rational")

    def triple(self, x, path) -> Vec3:
        xs = self.lst(x, path)
        if len(xs) != 3:
            self.fail(path, "expected three coordinates")
        return Vec3(*(self.rational(c, f"{path}[{i}]") for i, c in enumerate(xs)))

    def polytope(self, x, path, label="") -> ConvexPolytope:
        d = self.obj(x, path, ("vertices", "faces"))
        verts = [self.triple(v, f"{path}.vertices[{i}]") for i, v in enumerate(self.lst(d["vertices"], f"{path}.vertices"))]
        faces = []
        for i, f in enumerate(self.lst(d["faces"], f"{path}.faces")):
            fp = f"{path}.faces[{i}]"
            idx = self.lst(f, fp)
            if not all(isinstance(k, int) and not isinstance(k, bool) for k in idx):
                self.fail(fp, "face indices must be integers")
            faces.append(idx)
        try:
            return build_polytope(verts, faces, label)
        except FrustaError as exc:
            self.fail(path, f"invalid polytope: {exc}")

    def motion(self, x, path) -> RigidMotion:
        d = self.obj(x, path, ("matrix", "translation", "orientation"))
        rows = self.lst(d["matrix"], f"{path}.matrix")
        if len(rows) != 3:
            self.fail(f"{path}.matrix", "expected three rows")
        mat = tuple(self.triple(r, f"{path}.matrix[{i}]") for i, r in enumerate(rows))
        o = d["orientation"]
        if o not in (1, -1) or isinstance(o, bool):
            self.fail(f"{path}.orientation", "orientation must be 1 or -1")
        # isometry conditions are checked by the verifier, not here
        return RigidMotion(mat, self.triple(d["translation"], f"{path}.translation"), o)

    def shape(self, d, path, label) -> ConvexPolytope:
        if ("spec" in d) == ("polytope" in d):
            self.fail(path, "give exactly one of 'spec' or 'polytope'")
        if "polytope" in d:
            return self.polytope(d["polytope"], f"{path}.polytope", label)
        try:
            return make_solid(SolidSpec.parse(self.text(d["spec"], f"{path}.spec"))).with_label(label)
        except (FrustaError, TypeError) as exc:
            self.fail(f"{path}.spec", str(exc))

    def new_id(self, x, path) -> str:
        s = self.text(x, path)
        if s in self.solid_ids or s in self.piece_ids or s in self.claim_ids:
            self.fail(path, f"duplicate id {s!r}")
        if not s or "@" in s:
            self.fail(path, f"invalid id {s!r}")
        return s

    def ref(self, x, path, allow_claims=False) -> Ref:
        s = self.text(x, path)
        name, _, side = s.partition("@")
        if side:
            if name not in self.piece_ids or side not in (SOURCE, TARGET):
                self.fail(path, f"bad reference {s!r}")
            return Ref(PIECE, self.piece_ids[name], side)
        if name in self.solid_ids:
            kind, i = self.solid_ids[name]
            return Ref(kind, i)
        if name in self.piece_ids:
            return Ref(PIECE, self.piece_ids[name])
        if allow_claims and name in self.claim_ids:
            return Ref(CLAIM, self.claim_ids[name])
        self.fail(path, f"unknown reference {s!r}")

    def refs(self, x, path, allow_claims=False) -> Tuple[Ref, ...]:
        return tuple(self.ref(r, f"{path}[{i}]", allow_claims) for i, r in enumerate(self.lst(x, path)))

    def expr(self, x, path) -> VolumeExpr:
        d = self.obj(x, path, (), ("constant", "terms"))
        const = self.rational(d.get("constant", "0"), f"{path}.constant")
        terms = []
        for i, t in enumerate(self.lst(d.get("terms", []), f"{path}.terms")):
            tp = f"{path}.terms[{i}]"
            pair = self.lst(t, tp)
            if len(pair) != 2:
                self.fail(tp, "expected [coefficient, reference]")
            terms.append((self.rational(pair[0], f"{tp}[0]"), self.ref(pair[1], f"{tp}[1]")))
        return VolumeExpr(const, tuple(terms))


def from_json(doc: Any) -> RearrangementCertificate:
    rd = _Reader()
    top = rd.obj(doc, "$", ("version", "solids", "pieces", "claims"), ("metadata",))
    if top["version"] != FORMAT_VERSION or isinstance(top["version"], bool):
        rd.fail("$.version", f"unsupported version {top['version']!r} (expected {FORMAT_VERSION})")
    meta = rd.obj(top.get("metadata", {}), "$.metadata", (), tuple(top.get("metadata", {}) or ()))
    for k, v in meta.items():
        rd.text(v, f"$.metadata.{k}")

    groups: Dict[str, List[ConvexPolytope]] = {SOURCE: [], TARGET: [], AUX: []}
    for i, s in enumerate(rd.lst(top["solids"], "$.solids")):
        path = f"$.solids[{i}]"
        d = rd.obj(s, path, ("id", "role"), ("spec", "polytope", "pose", "label"))
        sid = rd.new_id(d["id"], f"{path}.id")
        role = ROLES.get(d["role"])
        if role is None:
            rd.fail(f"{path}.role", f"role must be one of {', '.join(ROLES)}")
        label = rd.text(d.get("label", ""), f"{path}.label")
        poly = rd.shape(d, path, label)
        if "pose" in d:
            pose = rd.motion(d["pose"], f"{path}.pose")
            require_valid(pose)  # a solid cannot be posed by a non-isometry
            poly = transform(poly, pose).with_label(label)
        rd.solid_ids[sid] = (role, len(groups[role]))
        groups[role].append(poly)

    pieces = []
    for i, p in enumerate(rd.lst(top["pieces"], "$.pieces")):
        path = f"$.pieces[{i}]"
        d = rd.obj(p, path, ("id",), ("spec", "polytope", "source", "target", "label"))
        pid = rd.new_id(d["id"], f"{path}.id")
        label = rd.text(d.get("label", ""), f"{path}.label")
        poly = rd.shape(d, path, label)
        placements: Dict[str, Optional[Placement]] = {SOURCE: None, TARGET: None}
        for side in (SOURCE, TARGET):
            if side in d:
                sp = f"{path}.{side}"
                pd = rd.obj(d[side], sp, ("solid", "motion"))
                ref = rd.ref(pd["solid"], f"{sp}.solid")
                if ref.kind != side:
                    rd.fail(f"{sp}.solid", f"{pd['solid']!r} is not a {side} solid")
                placements[side] = Placement(ref.index, rd.motion(pd["motion"], f"{sp}.motion"))
        rd.piece_ids[pid] = len(pieces)
        pieces.append(PlacedPiece(poly, placements[SOURCE], placements[TARGET], label))

    raw_claims = rd.lst(top["claims"], "$.claims")
    claims = []
    for i, c in enumerate(raw_claims):
        path = f"$.claims[{i}]"
        if not isinstance(c, dict) or "type" not in c:
            rd.fail(path, "expected an object with a 'type'")
        kind = c["type"]
        common = ("id", "type", "label")
        if kind == "tiling":
            d = rd.obj(c, path, common[:2] + ("side", "parts"), ("label", "container", "cells"))
            if d["side"] not in (SOURCE, TARGET):
                rd.fail(f"{path}.side", "side must be source or target")
            container = rd.ref(d["container"], f"{path}.container") if "container" in d else None
            cells = tuple(rd.polytope(x, f"{path}.cells[{j}]") for j, x in enumerate(rd.lst(d.get("cells", []), f"{path}.cells")))
            claim = TilingClaim(d["side"], rd.refs(d["parts"], f"{path}.parts", True), container, cells,
                                rd.text(d.get("label", ""), f"{path}.label"))
        elif kind == "volume":
            d = rd.obj(c, path, common[:2] + ("left", "right"), ("label", "note"))
            claim = VolumeClaim(rd.refs(d["left"], f"{path}.left"), rd.refs(d["right"], f"{path}.right"),
                                rd.text(d.get("note", ""), f"{path}.note"), rd.text(d.get("label", ""), f"{path}.label"))
        elif kind == "congruence":
            d = rd.obj(c, path, common[:2] + ("refs",), ("label", "allow_reflection", "congruent"))
            flags = {}
            for k in ("allow_reflection", "congruent"):
                v = d.get(k, True)
                if not isinstance(v, bool):
                    rd.fail(f"{path}.{k}", "expected true or false")
                flags[k] = v
            claim = CongruenceClaim(rd.refs(d["refs"], f"{path}.refs"), flags["allow_reflection"], flags["congruent"],
                                    rd.text(d.get("label", ""), f"{path}.label"))
        elif kind == "scale":
            d = rd.obj(c, path, common[:2] + ("p", "k", "q"), ("label",))
            claim = ScaleClaim(rd.ref(d["p"], f"{path}.p"), rd.rational(d["k"], f"{path}.k"),
                               rd.ref(d["q"], f"{path}.q"), rd.text(d.get("label", ""), f"{path}.label"))
        elif kind == "arithmetic":
            d = rd.obj(c, path, common[:2] + ("left", "right"), ("label",))
            claim = ArithmeticClaim(rd.expr(d["left"], f"{path}.left"), rd.expr(d["right"], f"{path}.right"),
                                    rd.text(d.get("label", ""), f"{path}.label"))
        else:
            rd.fail(f"{path}.type", f"unknown claim type {kind!r}")
        cid = rd.new_id(c["id"], f"{path}.id")
        rd.claim_ids[cid] = len(claims)
        claims.append(claim)

    cert = RearrangementCertificate(
        tuple(groups[SOURCE]), tuple(groups[TARGET]), tuple(pieces), tuple(claims), tuple(groups[AUX]),
        tuple(sorted(meta.items())),
    )
    try:
        check_structure(cert)
    except CertificateStructureError as exc:
        raise CertificateFileError(f"$: {exc}") from None
    return cert


def loads(text: str) -> RearrangementCertificate:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CertificateFileError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return from_json(doc)


def load(path) -> RearrangementCertificate:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())
