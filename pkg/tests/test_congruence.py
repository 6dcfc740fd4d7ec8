from fractions import Fraction

import pytest

from frusta.catalog import box, juel, qiandu, regular_tetrahedron, symmetric_frustum, yangma
from frusta.congruence import (
    chain_witnesses,
    edge_fingerprint,
    find_congruence,
    invert_witness,
    verify_witness,
)
from frusta.exact import axis_permutation, cayley_rotation, compose, translation
from frusta.polytope import scale, transform

from oracles import signed_permutation_congruent


def test_identity_witness():
    p = symmetric_frustum(4, 2, 6)
    w = find_congruence(p, p)
    assert w is not None and verify_witness(p, p, w)


def test_rotated_copy_found():
    p = yangma(1, 2, 3)
    m = compose(translation(5, -1, "2/7"), cayley_rotation(1, "1/2", -2))
    q = transform(p, m)
    w = find_congruence(p, q, allow_reflection=False)
    assert w is not None and w.motion.orientation == 1
    assert verify_witness(p, q, w)


def test_mirror_needs_reflection():
    p = yangma(1, 2, 3)
    q = transform(p, axis_permutation((0, 1, 2), (-1, 1, 1)))
    assert find_congruence(p, q, allow_reflection=False) is None
    w = find_congruence(p, q, allow_reflection=True)
    assert w is not None and w.motion.orientation == -1


def test_symmetric_solid_mirror_is_also_a_rotation():
    p = juel(2)
    q = transform(p, axis_permutation((0, 1, 2), (-1, 1, 1)))
    assert find_congruence(p, q, allow_reflection=False) is not None


@pytest.mark.parametrize("p,q", [
    (box(1, 1, 2), box(1, 2, 2)),
    (yangma(1, 1, 2), yangma(1, 2, 1)),
    (qiandu(1, 2, 3), yangma(1, 2, 3)),
    (scale(regular_tetrahedron(), 2), regular_tetrahedron()),
])
def test_non_congruent(p, q):
    assert find_congruence(p, q) is None


def test_box_corner_pyramids_against_oracle():
    # the three corner pyramids of box(1,1,2) in their local frames
    a, b, c = yangma(1, 1, 2), yangma(1, 2, 1), yangma(2, 1, 1)
    for p, q in [(a, b), (a, c), (b, c)]:
        assert (find_congruence(p, q) is not None) == signed_permutation_congruent(p, q)


def test_witness_algebra():
    p = qiandu(1, 2, 3)
    m1 = compose(translation(1, 2, 3), cayley_rotation(1, 1, 0))
    m2 = compose(translation(-2, 0, 1), axis_permutation((1, 2, 0)))
    q, r = transform(p, m1), transform(transform(p, m1), m2)
    w_pq, w_qr = find_congruence(p, q), find_congruence(q, r)
    assert verify_witness(q, p, invert_witness(w_pq))
    assert verify_witness(p, r, chain_witnesses(w_pq, w_qr))


def test_tampered_witness_fails():
    p = box(1, 2, 3)
    w = find_congruence(p, p)
    bad = type(w)(w.motion, w.vertex_bijection[:-1])
    assert not verify_witness(p, p, bad)


def test_fingerprint():
    assert edge_fingerprint(box(1, 1, 1)) == tuple([Fraction(1)] * 12)
