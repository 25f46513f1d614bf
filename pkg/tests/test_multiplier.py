from fractions import Fraction
from itertools import product

import pytest
from hypothesis import assume, given, settings, strategies as st

from convproc.corpus import random_corpus
from convproc.errors import InconsistentPairError, NoSeparatorError, PreconditionError, SlaterViolatedError
from convproc.geometry import NNCPolyhedron, NNCSet, PolyhedralCone, ge, gt
from convproc.multiplier import (SeparatorCone, build_multiplier, example_multiplier, intersection_property,
                                 minus_S_process, multiplier_certificate, pick_dual_pair, psi_set,
                                 separator_cone, verify_lagrange_multiplier)
from convproc.order import OrderingCone

from builders import c, make

Q = Fraction
UPPER_PLUS_ORIGIN = NNCSet(2, [NNCPolyhedron(2, [gt((0, 1))]), NNCPolyhedron.point((0, 0))])


def ray_cone(dim, rays):
    return PolyhedralCone.from_generators(dim, rays)


@pytest.mark.parametrize("y0", [(0, 0), (-1, 0), (-10, 0)])
def test_separator_example_is_vertical_ray(example, y0):
    s = separator_cone(example, y0)
    assert s.cone.same_cone(ray_cone(3, [(0, 0, 1)]))
    assert s.pairs() == [((0,), (0, 1))]


def test_separator_scalar(scalar):
    assert separator_cone(scalar, (1,)).cone.same_cone(ray_cone(2, [(1, 1)]))


def test_separator_requires_nondominated(example):
    with pytest.raises(PreconditionError):
        separator_cone(example, (1, 0))


def test_pick_dual_pair():
    s = SeparatorCone(ray_cone(2, [(1, 1), (0, 1)]), (0,), 1, 1, None)
    zs, ys = pick_dual_pair(s)
    assert (zs.coeffs, ys.coeffs) == ((1,), (2,))
    with pytest.raises(NoSeparatorError):
        pick_dual_pair(SeparatorCone(PolyhedralCone.origin(2), (0,), 1, 1, None))
    with pytest.raises(SlaterViolatedError):
        pick_dual_pair(SeparatorCone(ray_cone(2, [(1, 0)]), (0,), 1, 1, None))


def test_pick_dual_pair_example(example):
    zs, ys = pick_dual_pair(separator_cone(example, (0, 0)))
    assert zs.coeffs == (0,) and ys.coeffs == (0, 1)


def test_build_multiplier_example_values():
    b = build_multiplier(((0,), (0, 1)), OrderingCone.orthant(2))
    assert b.yplus_point == (1, 1) and b.t0 == 1 and b.delta == Q(1, 2)
    assert b.functional.coeffs == (0, 0, 1)
    # every vertex of the box (0,1,1) + [-1/2,1/2]^3 lies in the graph and has T > 0
    for s in product((-1, 1), repeat=3):
        v = (Q(s[0], 2), 1 + Q(s[1], 2), 1 + Q(s[2], 2))
        assert b.process.graph.contains(v) and v[2] >= Q(1, 2)
    assert all(b.functional(r) > 0 for r in b.process.graph.rays)
    assert b.process.pointed and b.process.domain_full


def test_build_multiplier_scalar_delta():
    b = build_multiplier(((1,), (1,)), OrderingCone.orthant(1))
    assert b.delta == Q(1, 4) and b.t0 == 1
    for s in product((-1, 1), repeat=2):
        assert b.functional((Q(s[0], 4), 1 + Q(s[1], 4))) > 0


def test_build_multiplier_errors():
    with pytest.raises(SlaterViolatedError):
        build_multiplier(((1,), (0, 0)), OrderingCone.orthant(2))
    with pytest.raises(InconsistentPairError):
        build_multiplier(((0,), (-1,)), OrderingCone.orthant(1))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=1, max_size=2), st.lists(st.integers(0, 3), min_size=1, max_size=2))
def test_built_multiplier_structure(zs, ys):
    assume(any(ys))
    b = build_multiplier((tuple(map(Q, zs)), tuple(map(Q, ys))), OrderingCone.orthant(len(ys)))
    p = b.process
    assert p.pointed and p.domain_full and p.closed and p.convex
    assert p.strictly_positive(b.functional)


def test_psi_example_multiplier(example):
    # the set is {y2 > 0} u {0}: the points (t, 0) with t != 0 are not reached
    psi = psi_set(example, example_multiplier())
    assert NNCSet.of(psi).same_set(UPPER_PLUS_ORIGIN)
    assert not psi.contains((5, 0))


def test_psi_built_multiplier_example(example):
    _, _, _, built = multiplier_certificate(example, (0, 0))
    assert NNCSet.of(psi_set(example, built.process)).same_set(UPPER_PLUS_ORIGIN)


def test_psi_scalar_hand_value(scalar):
    # Delta(w) = {y >= 3|w|} and Psi = union over x in [0,10] of x + 3 max(0, 1 - x) + R+ = [1, inf)
    _, _, _, built = multiplier_certificate(scalar, (1,))
    assert built.process.graph.same_cone(ray_cone(2, [(1, 3), (-1, 3)]))
    assert NNCSet.of(psi_set(scalar, built.process)).same_set(NNCPolyhedron(1, [ge((1,), 1)]))


def test_psi_infeasible_is_empty():
    inst = make([c([1], "<=", -1), c([-1], "<=", 0)], [c([-1, 1], "=", 0)], [c([1, 1], "=", -1)])
    delta = build_multiplier(((0,), (1,)), OrderingCone.orthant(1)).process
    assert NNCSet.of(psi_set(inst, delta)).is_empty()


def test_verify_example_multiplier(example):
    cert = verify_lagrange_multiplier(example, example_multiplier(), (0, 0))
    assert cert.passed
    assert cert.clause("intersection property pointed form").passed
    meet, holds, is_origin = intersection_property(example, example_multiplier(), (0, 0))
    assert holds and is_origin


def test_minus_S_is_not_a_multiplier(example):
    delta = minus_S_process((0,), (0, 1))
    assert not delta.pointed
    assert NNCSet.of(psi_set(example, delta)).same_set(NNCPolyhedron(2, [ge((0, 1))]))
    cert = verify_lagrange_multiplier(example, delta, (0, 0))
    assert cert.status == "fail"
    assert not cert.clause("nondominated").passed


def test_verify_dominated_point_is_precondition_failure(example):
    cert = verify_lagrange_multiplier(example, example_multiplier(), (1, 0))
    assert cert.status == "precondition-failed"


def test_nd_but_not_attained_skips_minimality_clauses(example):
    cert = verify_lagrange_multiplier(example, example_multiplier(), (-1, 0))
    assert cert.passed
    assert [cl.name for cl in cert.clauses] == ["y0 nondominated for P(0)", "closure", "nondominated"]


def test_built_multipliers_on_random_instances():
    for inst in random_corpus(101, 12):
        for y0 in inst.y0s:
            cert, s, pair, built = multiplier_certificate(inst, y0)
            assert cert.passed, inst.name
            assert verify_lagrange_multiplier(inst, built.process, y0).passed, inst.name
