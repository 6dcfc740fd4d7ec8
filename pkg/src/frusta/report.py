"""
Golden-value reproduction table.

Every historical number the package reproduces is pinned here, next to
the code that recomputes it.  Certificates are serialised and read back
before they are verified, so the table only vouches for what a file can
carry.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Union

from . import catalog, certfile, dehn, formulas
from .dissection import Level, verify_certificate
from .exact import render_rational

Value = Union[Fraction, str, tuple]


@dataclass
class Row:
    name: str
    expected: Value
    computed: Value

    @property
    def ok(self) -> bool:
        return self.expected == self.computed

    @staticmethod
    def show(v: Value) -> str:
        if isinstance(v, Fraction):
            return render_rational(v)
        if isinstance(v, tuple):
            return "[" + ", ".join(Row.show(x) for x in v) + "]"
        return str(v)

    def approx(self) -> str:
        v = self.computed
        if isinstance(v, Fraction) and v.denominator != 1:
            return f"≈ {float(v):.6f}"
        return ""

    def as_dict(self) -> dict:
        return {"name": self.name, "expected": self.show(self.expected), "computed": self.show(self.computed),
                "ok": self.ok}


def _reread(cert):
    return certfile.loads(certfile.dumps(cert))


def _level(cert) -> str:
    return verify_certificate(_reread(cert)).level.value


def _f(*xs) -> tuple:
    return tuple(Fraction(x) for x in xs)


def golden_rows() -> List[Row]:
    F = Fraction
    moscow = formulas.moscow_trace(4, 2, 6, unit="cubit")
    nine = formulas.nine_chapters_trace(*(formulas.zhang_to_chi(x) for x in (5, 4, 5)), unit="chi")
    liu = _reread(catalog.liu_hui_three_copies(3, 1, 1))
    liu_verdict = verify_certificate(liu)
    shutler = catalog.shutler_certificate(1, 1)
    tet = catalog.regular_tetrahedron()
    tet_inv = dehn.dehn_invariant(tet)
    refute = verify_certificate(_reread(catalog.box_three_pyramids(1, 1, 2)))
    cong = [r for r in refute.results if r.kind == "congruence"][0]

    rows = [
        Row("Moscow trace (4, 2, 6) step values", _f(16, 8, 4, 28, 2, 56), tuple(moscow.values)),
        Row("Moscow trace (4, 2, 6) volume", F(56), moscow.final),
        Row("frustum(4, 2, 6) geometric volume", F(56), catalog.symmetric_frustum(4, 2, 6).volume),
        Row("Moscow trace op counts (add, mul, div)", (2, 4, 1), moscow.op_counts),
        Row("Nine Chapters (5, 4, 5 zhang = 50, 40, 50 chi) volume", F(305000, 3), nine.final),
        Row("Nine Chapters volume, whole cubic chi", 101666, nine.final.numerator // nine.final.denominator),
        Row("Nine Chapters volume, fractional part", F(2, 3), nine.final - nine.final.numerator // nine.final.denominator),
        Row("nine parts of frustum(3, 1, 1): total", F(13, 3),
            sum((pc.piece.volume for pc in catalog.nine_part_frustum(3, 1, 1).pieces), F(0))),
        Row("three copies (3, 1, 1): target volumes", _f(9, 3, 1), tuple(t.volume for t in liu.targets)),
        Row("three copies (3, 1, 1): total", F(13), sum((t.volume for t in liu.targets), F(0))),
        Row("three copies (3, 1, 1): verdict", Level.EXACT.value, liu_verdict.level.value),
        Row("juel(2) is one sixth of the cube", F(8, 6), catalog.juel(2).volume),
        Row("truncated juel (2, 1) = (8 - 1)/6", F(7, 6), catalog.truncated_juel(2, 1).volume),
        Row("a = 2b argument (1, 1): 6 V_P = 2 h b^2", F(2), 6 * catalog.symmetric_pyramid(1, 1).volume),
        Row("a = 2b argument (1, 1): full/top volume ratio", F(8),
            catalog.symmetric_pyramid(2, 2).volume / catalog.symmetric_pyramid(1, 1).volume),
        Row("a = 2b argument (1, 1): verdict", Level.EXACT.value, _level(shutler)),
        Row("cube into three yangma: verdict", Level.EXACT.value, _level(catalog.cube_dissections(1, "three_yangma"))),
        Row("cube into six juel: verdict", Level.EXACT.value, _level(catalog.cube_dissections(2, "six_juel"))),
        Row("box(1, 1, 2) three corner pyramids: tiling", Level.EXACT.value,
            [r for r in refute.results if r.kind == "tiling"][0].level.value),
        Row("box(1, 1, 2) three corner pyramids: congruent pairs", 1, cong.data["congruent_pairs"]),
        Row("Dehn: cube invariant", "0", dehn.dehn_invariant(catalog.box(1, 1, 1)).render()),
        Row("Dehn: regular tetrahedron invariant", "(+, cos² = 1/9) : (6)√2", tet_inv.render()),
        Row("Dehn: cube vs regular tetrahedron", dehn.Comparison.SOUNDLY_DIFFERENT.value,
            dehn.compare_invariants(catalog.box(1, 1, 1), tet).value),
    ]
    return rows


def render_table(rows: List[Row]) -> str:
    width = max(len(r.name) for r in rows)
    out = []
    for r in rows:
        mark = "ok  " if r.ok else "FAIL"
        line = f"{mark} {r.name:<{width}}  expected {Row.show(r.expected)}  computed {Row.show(r.computed)}"
        extra = r.approx()
        out.append(f"{line}  {extra}" if extra else line)
    passed = sum(r.ok for r in rows)
    out.append(f"{passed}/{len(rows)} rows match")
    return "\n".join(out)
