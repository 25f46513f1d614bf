import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from convproc.errors import PreconditionError
from convproc.geometry import NNCPolyhedron, NNCSet, PolyhedralCone, ge, gt
from convproc.order import (OrderingCone, cone_flags, is_maximal, is_minimal, is_nondominated,
                            is_nondominated_point, is_pos_proper, is_weak_maximal, is_weak_minimal,
                            min_set, minimal_extreme_points, strictly_positive_functional)

from oracles import in_hull

Q = Fraction
QUAD = OrderingCone.orthant(2)


def test_cone_flags_examples():
    assert cone_flags(QUAD) == (True, True, True)
    half = PolyhedralCone.from_generators(2, [(0, 1)], [(1, 0)])
    assert cone_flags(half) == (False, True, True)
    assert cone_flags(PolyhedralCone.origin(2)) == (True, False, False)


def test_nondominated_example(example):
    v0 = example.V((0,))
    assert is_nondominated((0, 0), v0, QUAD)
    assert not is_nondominated((1, 0), v0, QUAD)
    assert is_nondominated((5, 5), NNCSet.empty(2), QUAD)


def test_minimal_and_weak_examples(example):
    assert is_minimal((0, 0), example.V((0,)), QUAD)
    box = NNCPolyhedron.box((0, 0), (1, 1))
    # (0,1) is dominated by (0,0) but nothing lies strictly below it
    assert is_weak_minimal((0, 1), box, QUAD) and not is_minimal((0, 1), box, QUAD)
    assert not is_weak_minimal((1, 1), box, QUAD)
    assert is_weak_minimal((0, 0), box, QUAD)
    assert is_maximal((1, 1), box, QUAD)
    assert is_weak_maximal((1, 0), box, QUAD) and not is_maximal((1, 0), box, QUAD)


def test_weak_notions_need_solid_cone():
    ray = OrderingCone.from_rays(2, [(1, 0)])
    box = NNCPolyhedron.box((0, 0), (1, 1))
    with pytest.raises(PreconditionError):
        is_weak_minimal((0, 0), box, ray)
    with pytest.raises(PreconditionError):
        is_weak_maximal((0, 0), box, ray)


def test_pos_proper_examples():
    ok, f = is_pos_proper((0, 0), NNCPolyhedron(2, [ge((1, 0)), ge((0, 1))]), QUAD)
    assert ok and all(v > 0 for v in f)
    assert not is_pos_proper((0, 0), NNCPolyhedron(2, [ge((0, 1))]), QUAD)[0]
    box = NNCPolyhedron.box((0, 0), (1, 1))
    assert not is_pos_proper((0, 1), box, QUAD)[0]


def test_nondominated_point_needs_closure_membership():
    upper = NNCPolyhedron(2, [gt((0, 1)), gt((1, 0))])
    assert is_nondominated_point((0, 0), upper, QUAD)
    assert not is_minimal((0, 0), upper, QUAD)
    assert not is_nondominated_point((-1, -1), upper, QUAD)


def test_non_pointed_ordering_uses_inclusion_form():
    half = OrderingCone.from_rays(2, [(0, 1)] + [(1, 0), (-1, 0)])
    line = NNCPolyhedron(2, [ge((0, 1))])
    # every point of the boundary line is nondominated for the half-plane order
    assert is_nondominated((3, 0), line, half)
    assert not is_nondominated((3, 1), line, half)


def test_strictly_positive_functional():
    k = OrderingCone.from_rays(2, [(1, 0), (1, 2)])
    f = strictly_positive_functional(k)
    assert all(sum(a * b for a, b in zip(f, r)) > 0 for r in k.rays)


def test_min_set_of_square_and_union():
    box = NNCPolyhedron.box((0, 0), (1, 1))
    assert min_set(box, QUAD).same_set(NNCPolyhedron.point((0, 0)))
    tri = NNCPolyhedron.from_generators(2, [(0, 1), (1, 0), (1, 1)])
    m = min_set(tri, QUAD)
    assert m.contains((Q(1, 2), Q(1, 2))) and not m.contains((1, 1))
    assert minimal_extreme_points(tri, QUAD) == [(0, 1), (1, 0)]


# -- brute-force agreement on random polygons ---------------------------------------
#
# For a = conv(P) in the plane and the quadrant order, the sets a ∩ (y0 - K)
# and a ∩ (y0 - int K) are polygons whose vertices lie among the points of P
# and the crossings of segments between points of P with the lines through y0
# (axis-parallel lines for K, the diagonal for the interior test).


def _crossings(pts, y0):
    out = list(pts)
    for p, q in combinations(pts, 2):
        d = (q[0] - p[0], q[1] - p[1])
        for axis in (0, 1):
            if d[axis] != 0:
                t = (y0[axis] - p[axis]) / d[axis]
                if 0 <= t <= 1:
                    out.append((p[0] + t * d[0], p[1] + t * d[1]))
        # diagonal through y0: p1 - y01 = p2 - y02
        den = d[0] - d[1]
        if den != 0:
            t = ((y0[0] - p[0]) - (y0[1] - p[1])) / den
            if 0 <= t <= 1:
                out.append((p[0] + t * d[0], p[1] + t * d[1]))
    return out


def oracle_nondominated(y0, pts):
    for c in _crossings(pts, y0):
        if c != tuple(y0) and c[0] <= y0[0] and c[1] <= y0[1] and in_hull(c, pts):
            return False
    return True


def oracle_weak_minimal(y0, pts):
    if not in_hull(y0, pts):
        return False
    return not any(c[0] < y0[0] and c[1] < y0[1] and in_hull(c, pts) for c in _crossings(pts, y0))


def _polygons(seed, count):
    rng = random.Random(seed)
    for _ in range(count):
        yield [(Q(rng.randint(-8, 8), 4), Q(rng.randint(-8, 8), 4)) for _ in range(rng.randint(1, 5))]


def test_predicates_against_brute_force_1000_points():
    mism = {"nondominated": 0, "minimal": 0, "weak": 0, "maximal": 0}
    total = 0
    for pts in _polygons(17, 25):
        a = NNCPolyhedron.from_generators(2, pts)
        neg_pts = [(-p[0], -p[1]) for p in pts]
        rng = random.Random(len(pts) * 31 + total)
        for _ in range(40):
            y0 = (Q(rng.randint(-16, 16), 8), Q(rng.randint(-16, 16), 8))
            if rng.random() < 0.3:
                y0 = rng.choice(pts)
            inside = in_hull(y0, pts)
            mism["nondominated"] += is_nondominated(y0, a, QUAD) != oracle_nondominated(y0, pts)
            mism["minimal"] += is_minimal(y0, a, QUAD) != (inside and oracle_nondominated(y0, pts))
            mism["weak"] += is_weak_minimal(y0, a, QUAD) != oracle_weak_minimal(y0, pts)
            neg = (-y0[0], -y0[1])
            mism["maximal"] += is_maximal(y0, a, QUAD) != (inside and oracle_nondominated(neg, neg_pts))
            total += 1
    assert total == 1000
    assert mism == {"nondominated": 0, "minimal": 0, "weak": 0, "maximal": 0}


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(-4, 4), st.integers(-4, 4)), min_size=1, max_size=5),
       st.integers(0, 4))
def test_pos_proper_implies_minimal(pts, k):
    a = NNCPolyhedron.from_generators(2, pts)
    y0 = a.generators.points[k % len(a.generators.points)]
    ok, f = is_pos_proper(y0, a, QUAD)
    if ok:
        assert is_minimal(y0, a, QUAD)
        assert all(v > 0 for v in f)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(-4, 4), st.integers(-4, 4)), min_size=1, max_size=5))
def test_minimal_iff_member_and_nondominated(pts):
    a = NNCPolyhedron.from_generators(2, pts)
    for y0 in set(pts) | {(0, 0)}:
        y0 = (Q(y0[0]), Q(y0[1]))
        assert is_minimal(y0, a, QUAD) == (a.contains(y0) and is_nondominated(y0, a, QUAD))


@settings(max_examples=30, deadline=None)
@given(st.lists(st.tuples(st.integers(-4, 4), st.integers(-4, 4)), min_size=1, max_size=5))
def test_min_set_matches_minimal_predicate(pts):
    a = NNCPolyhedron.from_generators(2, pts)
    m = min_set(a, QUAD)
    for p in pts:
        p = (Q(p[0]), Q(p[1]))
        assert m.contains(p) == is_minimal(p, a, QUAD)
    assert not m.is_empty()
