"""Wavefront OBJ output.  Decimals are for viewers; the exact coordinates ride along in comments."""
from __future__ import annotations

import re
from decimal import Context, Decimal
from fractions import Fraction
from typing import List, Sequence, Tuple

from .dissection import SOURCE, TARGET, RearrangementCertificate
from .exact import render_rational
from .polytope import ConvexPolytope, transform

DEFAULT_DIGITS = 12


def decimal_text(x: Fraction, digits: int = DEFAULT_DIGITS) -> str:
    """Integers exactly, everything else rounded to ``digits`` significant digits."""
    if x.denominator == 1:
        return str(x.numerator)
    ctx = Context(prec=digits)
    d = ctx.divide(Decimal(x.numerator), Decimal(x.denominator))
    text = format(d, "f")
    if "." in text:
        text = text.rstrip("0").rstrip(".")
    return text


def _name(label: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.,()*:-]+", "_", label).strip("_") or "object"


def to_obj(objects: Sequence[Tuple[str, ConvexPolytope]], digits: int = DEFAULT_DIGITS) -> str:
    lines: List[str] = ["# frusta OBJ export", f"# decimals: {digits} significant digits"]
    base = 1
    for name, poly in objects:
        lines.append(f"o {_name(name)}")
        for v in poly.vertices:
            lines.append("v " + " ".join(decimal_text(c, digits) for c in v))
            lines.append("# exact: " + " ".join(render_rational(c) for c in v))
        for f in poly.faces:
            c = f.cycle
            for i in range(1, len(c) - 1):
                lines.append(f"f {base + c[0]} {base + c[i]} {base + c[i + 1]}")
        base += len(poly.vertices)
    return "\n".join(lines) + "\n"


def certificate_objects(
    cert: RearrangementCertificate, side: str = "", with_solids: bool = False
) -> List[Tuple[str, ConvexPolytope]]:
    """Pieces in world pose (``side`` if given, else source when placed there, else target)."""
    out = []
    if with_solids:
        for prefix, group in (("S", cert.sources), ("T", cert.targets), ("A", cert.aux)):
            out.extend((f"{prefix}{i} {p.label}".strip(), p) for i, p in enumerate(group))
    for i, pc in enumerate(cert.pieces):
        order = [side] if side else [SOURCE, TARGET]
        for s in order:
            pl = pc.source if s == SOURCE else pc.target
            if pl is not None:
                out.append((f"P{i} {pc.label}".strip(), transform(pc.piece, pl.motion)))
                break
    return out
