"""
Acceptance checks, one test per criterion.  Each prints a single
``PASS criterion N: ...`` or ``FAIL criterion N: ...`` line, visible in
``pytest -v`` output and when the module is run as a script.
"""
import random
import sys
from fractions import Fraction

import pytest

from frusta import catalog, dehn
from frusta.certfile import dumps, loads
from frusta.congruence import find_congruence, verify_witness
from frusta.dissection import Level, verify_certificate, verify_tiling
from frusta.exact import HalfSpace, vec
from frusta.formulas import FormulaId, evaluate_formula, moscow_trace, nine_chapters_trace, zhang_to_chi
from frusta.polytope import centroid, clip, scale, transform

from strategies import rand_motion, rand_rational, rand_triple

F = Fraction
SEED = 20260


def _announce(n, text, ok, detail=""):
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {text}" + (f" [{detail}]" if detail else "")
    if _capsys is not None:
        with _capsys.disabled():
            print("\n" + line)
    else:
        print(line)
    assert ok, line


_capsys = None


@pytest.fixture(autouse=True)
def _expose(capsys):
    global _capsys
    _capsys = capsys
    yield
    _capsys = None


def _by_label(verdict, prefix):
    return [r for r in verdict.claim_results() if r.name.split(" (", 1)[1].startswith(prefix)]


def test_criterion_01_moscow():
    t = moscow_trace(4, 2, 6)
    vol = catalog.symmetric_frustum(4, 2, 6).volume
    ok = t.values == [16, 8, 4, 28, 2, 56] and vol == 56
    _announce(1, "Moscow trace (4,2,6) steps 16, 8, 4, 28, 2, 56; geometric volume 56", ok,
              f"steps {[str(v) for v in t.values]}, volume {vol}")


def test_criterion_02_nine_chapters():
    a, b, h = (zhang_to_chi(x) for x in (5, 4, 5))
    final = nine_chapters_trace(a, b, h).final
    whole = final.numerator // final.denominator
    ok = (a, b, h) == (50, 40, 50) and final == F(305000, 3) and (whole, final - whole) == (101666, F(2, 3))
    _announce(2, "Nine Chapters (50,40,50) = 305000/3 = 101666 + 2/3 cubic chi", ok, f"final {final}")


def test_criterion_03_liu_hui_standard_block():
    cert = catalog.liu_hui_three_copies(3, 1, 1)
    v = verify_certificate(cert)
    claims_exact = all(r.level is Level.EXACT for r in v.claim_results())
    vols = [t.volume for t in cert.targets]
    total = sum(vols, F(0))
    ok = v.level is Level.EXACT and claims_exact and vols == [9, 3, 1] and total == 13 == 3 * F(13, 3)
    ok = ok and catalog.symmetric_frustum(3, 1, 1).volume == F(13, 3)
    _announce(3, "Liu Hui (3,1,1) all claims Exact, targets 9, 3, 1, total 13 = 3 * 13/3", ok,
              f"level {v.level.value}, targets {[str(x) for x in vols]}")


def _liu_levels(a, b, h):
    v = verify_certificate(catalog.liu_hui_three_copies(a, b, h))
    levels = {k: [r.level for r in _by_label(v, k)] for k in ("(i)", "(ii)", "(iii)", "(iv)")}
    return v, levels


def _all_exact(levels):
    return bool(levels) and all(x is Level.EXACT for x in levels)


def test_criterion_04_general_liu_hui():
    rng = random.Random(SEED + 4)
    bad = []
    for _ in range(100):
        a, b, h = rand_triple(rng)
        v, lv = _liu_levels(a, b, h)
        corner = Level.EXACT if h == (a - b) / 2 else Level.VOLUME_EQUALITY
        if not (v.passed and all(_all_exact(lv[k]) for k in ("(i)", "(ii)", "(iii)")) and lv["(iv)"] == [corner]):
            bad.append((a, b, h))
    for _ in range(50):
        a = rand_rational(rng)
        b = rand_rational(rng)
        a, b = max(a, b) + (a == b), min(a, b)
        v, lv = _liu_levels(a, b, (a - b) / 2)
        if not (v.level is Level.EXACT and lv["(iv)"] == [Level.EXACT]):
            bad.append((a, b, (a - b) / 2))
    _announce(4, "general Liu Hui: (i)-(iii) Exact, corner VolumeEquality on 100 triples, Exact on 50 h = (a-b)/2",
              not bad, f"{len(bad)} failures" + (f", first {bad[0]}" if bad else ""))


def test_criterion_05_formula_equivalence():
    rng = random.Random(SEED + 5)
    bad = 0
    for _ in range(1000):
        a, b, h = rand_triple(rng)
        vals = {evaluate_formula(f, a, b, h) for f in (FormulaId.F_T, FormulaId.F_TA, FormulaId.GUNN_PEET_FACTORED)}
        if vals != {catalog.symmetric_frustum(a, b, h).volume}:
            bad += 1
    _announce(5, "F_T = F_TA = factored form = geometric volume on 1000 triples", bad == 0, f"{bad} mismatches")


def test_criterion_06_nine_part():
    rng = random.Random(SEED + 6)
    bad = 0
    for _ in range(100):
        a, b, h = rand_triple(rng)
        cert = catalog.nine_part_frustum(a, b, h)
        placed = [(pc.piece, pc.source.motion) for pc in cert.pieces]
        r = verify_tiling(cert.sources[0], placed)
        if r.level is not Level.EXACT or len(placed) != 9 or verify_certificate(cert).level is not Level.EXACT:
            bad += 1
    _announce(6, "nine-part dissection tiles the frustum exactly on 100 triples", bad == 0, f"{bad} failures")


def test_criterion_07_shutler():
    rng = random.Random(SEED + 7)
    bad = 0
    for _ in range(50):
        b, h = rand_rational(rng), rand_rational(rng)
        cert = catalog.shutler_certificate(b, h)
        v = verify_certificate(cert)
        assembled, top, full = cert.targets[0], cert.aux[1], cert.aux[0]
        w = find_congruence(assembled, top)
        scale_ok = [r for r in v.claim_results() if r.kind == "scale"]
        arith = _by_label(v, "(5)")
        ok = (
            w is not None and verify_witness(assembled, top, w)
            and all(r.level is Level.VERIFIED for r in _by_label(v, "(2)"))
            and full.volume / top.volume == 8
            and len(scale_ok) == 1 and scale_ok[0].level is Level.VERIFIED and scale_ok[0].data["ratio"] == 8
            and len(arith) == 1 and arith[0].level is Level.VERIFIED
            and 6 * top.volume == 2 * h * b * b
            and v.level is Level.EXACT
        )
        bad += not ok
    _announce(7, "Shutler bundle on 50 (b,h): congruence witness, ratio 8, 6 V_P = 2hb^2", bad == 0, f"{bad} failures")


def _congruent_pairs(v):
    return [r.data["congruent_pairs"] for r in v.claim_results() if r.kind == "congruence"]


def test_criterion_08_cube_dissections():
    yang = verify_certificate(catalog.cube_dissections(1, "three_yangma"))
    juel = verify_certificate(catalog.cube_dissections(2, "six_juel"))
    box = catalog.box_three_pyramids(1, 1, 2)
    boxv = verify_certificate(box)
    tiling = [r for r in boxv.claim_results() if r.kind == "tiling"]
    # every pair of the three box pieces tested directly, without the certificate
    ps = [pc.piece for pc in box.pieces]
    direct = [find_congruence(ps[i], ps[j]) is not None for i in range(3) for j in range(i + 1, 3)]
    ok = (
        yang.level is Level.EXACT and _congruent_pairs(yang) == [3]
        and juel.level is Level.EXACT and _congruent_pairs(juel) == [15]
        and tiling and tiling[0].level is Level.EXACT and not all(direct)
        and _congruent_pairs(boxv) == [1]
    )
    _announce(8, "cube -> 3 yangma and 6 juel Exact and congruent; box(1,1,2) tiles but is not pairwise congruent",
              ok, f"box congruent pairs {sum(direct)}/3")


def test_criterion_09_truncated_juel():
    rng = random.Random(SEED + 9)
    bad = 0
    for _ in range(50):
        a, b, _ = rand_triple(rng)
        vol = catalog.truncated_juel(a, b).volume
        if not (vol == (a ** 3 - b ** 3) / 6 == evaluate_formula(FormulaId.F_T, a, b, (a - b) / 2)):
            bad += 1
        elif not catalog.truncated_juel_check(a, b).ok:
            bad += 1
    _announce(9, "truncated juel volume = (a^3-b^3)/6 = F_T(a,b,(a-b)/2) on 50 pairs", bad == 0, f"{bad} failures")


def test_criterion_10_right_frusta():
    rng = random.Random(SEED + 10)
    bad = 0
    for _ in range(50):
        a, b, h = rand_triple(rng)
        cert = catalog.four_right_frustums(a, b, h)
        v = verify_certificate(cert)
        total = sum((pc.piece.volume for pc in cert.pieces), F(0))
        if v.level is not Level.EXACT or total != evaluate_formula(FormulaId.F_T, 2 * a, 2 * b, h):
            bad += 1
        parts = verify_certificate(catalog.right_frustum_parts(a, b, h))
        sub = [r for r in parts.claim_results() if "two prisms stack into a box" in r.name]
        if parts.level is not Level.EXACT or len(sub) != 1 or sub[0].level is not Level.EXACT:
            bad += 1
    _announce(10, "four right frusta Exact with total F_T(2a,2b,h); right-frustum parts with prism box on 50 triples",
              bad == 0, f"{bad} failures")


def _rand_solid(rng):
    kind = rng.randrange(6)
    p = lambda: rand_rational(rng, 12)  # noqa: E731
    if kind == 0:
        return catalog.regular_tetrahedron()
    if kind == 1:
        return catalog.yangma(p(), p(), p())
    if kind == 2:
        return catalog.symmetric_pyramid(p(), p())
    if kind == 3:
        return catalog.box(p(), p(), p())
    a, b, h = rand_triple(rng, 12)
    return catalog.symmetric_frustum(a, b, h) if kind == 4 else catalog.right_frustum(a, b, h)


def test_criterion_11_dehn():
    cube, tet = catalog.box(1, 1, 1), catalog.regular_tetrahedron()
    inv = dehn.dehn_invariant(tet)
    fixed = (
        dehn.dehn_invariant(cube).is_zero
        and inv.as_dict() == {dehn.AngleClass(1, F(1, 9)): {2: F(6)}}
        and dehn.compare_invariants(cube, tet) is dehn.Comparison.SOUNDLY_DIFFERENT
    )
    rng = random.Random(SEED + 11)
    bad = 0
    for _ in range(50):
        s, m, k = _rand_solid(rng), rand_motion(rng), rand_rational(rng, 9)
        d = dehn.dehn_invariant(s)
        if dehn.dehn_invariant(transform(s, m)) != d or dehn.dehn_invariant(scale(s, k)) != d.scaled(k):
            bad += 1
    _announce(11, "Dehn: cube 0, tetrahedron 6*sqrt2 at cos^2 = 1/9, SoundlyDifferent; invariance on 50 cases",
              fixed and bad == 0, f"{bad} invariance failures")


def test_criterion_12_properties():
    rng = random.Random(SEED + 12)
    n = 100
    fails = {"volume motion": 0, "k^3 scaling": 0, "clip complement": 0, "congruence": 0, "file round trip": 0}
    names = sorted(catalog.SCENARIOS)
    fast = [x for x in names if x not in ("liu-hui", "four-right-frustums", "shutler")]
    for i in range(n):
        s, m = _rand_solid(rng), rand_motion(rng)
        moved = transform(s, m)
        fails["volume motion"] += moved.volume != s.volume
        k = rand_rational(rng, 9)
        fails["k^3 scaling"] += scale(s, k).volume != k ** 3 * s.volume
        nv = vec(rng.randint(-5, 5), rng.randint(-5, 5), rng.randint(1, 5))
        hs = HalfSpace(nv, nv.dot(centroid(s)) + F(rng.randint(-3, 3), rng.randint(1, 4)))
        halves = [clip(s, hs), clip(s, hs.complement())]
        fails["clip complement"] += sum((x.volume for x in halves if x is not None), F(0)) != s.volume
        w = find_congruence(s, moved)
        fails["congruence"] += not (w is not None and verify_witness(s, moved, w))
        name = fast[i % len(fast)]
        a, b, h = rand_triple(rng, 20)
        params = {"cube-three-yangma": (a,), "cube-six-juel": (a,), "cube-two-qiandu": (a,), "four-yangma": (b, h),
                  "truncated-juel": (a, b)}.get(name, (a, b, h))
        cert = catalog.build_scenario(name, params)
        text = dumps(cert)
        back = loads(text)
        fails["file round trip"] += not (back == cert and dumps(back) == text)
    ok = not any(fails.values())
    _announce(12, f"property suite, {n} cases each: " + ", ".join(fails), ok,
              ", ".join(f"{k} {v}" for k, v in fails.items() if v) or "0 failures")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
