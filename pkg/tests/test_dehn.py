from fractions import Fraction

import pytest

from frusta.catalog import box, juel, qiandu, regular_tetrahedron, symmetric_frustum, yangma
from frusta.dehn import (
    AngleClass,
    Comparison,
    DehnInvariant,
    collection_invariant,
    compare_invariants,
    dehn_invariant,
    dihedral_edges,
    square_free_sqrt,
)
from frusta.errors import CanonicalizationError
from frusta.exact import translation
from frusta.polytope import transform

F = Fraction


def test_cube_and_boxes_are_zero():
    assert dehn_invariant(box(1, 1, 1)).is_zero
    assert dehn_invariant(box(1, 2, 3)).render() == "0"
    assert all(a == AngleClass(0, F(0)) for _, a in dihedral_edges(box(1, 2, 3)))


def test_regular_tetrahedron():
    inv = dehn_invariant(regular_tetrahedron())
    # cos of the dihedral is 1/3; six edges of length sqrt 2
    assert inv.as_dict() == {AngleClass(1, F(1, 9)): {2: F(6)}}
    assert inv.render() == "(+, cos² = 1/9) : (6)√2"


@pytest.mark.parametrize("solid", [qiandu(1, 1, 1), yangma(1, 1, 1), juel(2)])
def test_rational_pi_angles_only(solid):
    assert dehn_invariant(solid).is_zero


def test_yangma_hand_computed():
    # base (0..1)^2, apex above the origin at height 2; the slanted faces have
    # normals (2,0,1) and (0,2,1)
    inv = dehn_invariant(yangma(1, 1, 2))
    assert inv.as_dict() == {
        AngleClass(-1, F(1, 25)): {6: F(1)},   # ridge edge of length sqrt 6
        AngleClass(1, F(1, 5)): {1: F(2)},     # two unit base edges
    }


def test_edge_count_and_lengths():
    edges = dihedral_edges(symmetric_frustum(4, 2, 6))
    assert len(edges) == 12
    assert sorted(l2 for l2, _ in edges)[:8] == [4] * 4 + [16] * 4


@pytest.mark.parametrize("r,expected", [
    (F(0), (F(0), 1)),
    (F(4), (F(2), 1)),
    (F(12), (F(2), 3)),
    (F(1, 2), (F(1, 2), 2)),
    (F(8, 9), (F(2, 3), 2)),
    (F(360), (F(6), 10)),
    (F(97), (F(1), 97)),
])
def test_square_free_sqrt(r, expected):
    c, d = square_free_sqrt(r)
    assert (c, d) == expected
    assert c * c * d == r


def test_square_free_limits():
    with pytest.raises(CanonicalizationError, match="too large"):
        square_free_sqrt(F(10 ** 13))
    with pytest.raises(CanonicalizationError):
        square_free_sqrt(F(-1))


def test_algebra():
    t = dehn_invariant(regular_tetrahedron())
    assert (t - t).is_zero
    assert (t + t) == t.scaled(2)
    assert t.scaled(0).is_zero
    assert collection_invariant([regular_tetrahedron()] * 3) == t.scaled(3)
    assert DehnInvariant().render() == "0"


def test_comparator():
    cube, tet = box(1, 1, 1), regular_tetrahedron()
    assert compare_invariants(cube, tet) is Comparison.SOUNDLY_DIFFERENT
    assert compare_invariants(tet, transform(tet, translation(5, 0, 1))) is Comparison.EQUAL_INVARIANT
    assert compare_invariants([yangma(1, 1, 1)] * 3, cube) is Comparison.EQUAL_INVARIANT
    # two classes in the difference: no sound verdict either way
    assert compare_invariants([yangma(1, 1, 2)] * 3, box(1, 1, 2)) is Comparison.POSSIBLY_DIFFERENT
