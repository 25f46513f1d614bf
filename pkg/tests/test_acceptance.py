"""Acceptance criteria, one printed PASS/FAIL line per checked claim.

Two claims of the worked example are stated for sets that differ from the
exact ones on a boundary piece; they are kept verbatim as strict xfails and
the exact sets are checked next to them.
"""

import os
import time
from fractions import Fraction

import pytest

from convproc.corpus import DATA_DIR, corpus_run, random_corpus
from convproc.duality import phi_member, strong_duality_witness, weak_duality_check
from convproc.geometry import NNCPolyhedron, NNCSet, PolyhedralCone, ge, gt, le
from convproc.multiplier import (example_multiplier, intersection_property, minus_S_process, multiplier_certificate,
                                 psi_set, separator_cone, verify_lagrange_multiplier)
from convproc.order import is_minimal
from convproc.program import ProgramInstance
from convproc.sensitivity import (lagrange_process, marginal_derivative_oracle, scalar_recovery_check,
                                  verify_derivative_identity)

import test_geometry

Q = Fraction


def load(name):
    # fresh objects so that the timings include every cached computation
    return ProgramInstance.load(DATA_DIR / f"{name}.json")


# A = quadrant u {y1 < 0 < y2}
A = NNCSet(2, [NNCPolyhedron(2, [ge((1, 0)), ge((0, 1))]), NNCPolyhedron(2, [le((1, 0)), gt((0, 1))])])
UPPER_PLUS_ORIGIN = NNCSet(2, [NNCPolyhedron(2, [gt((0, 1))]), NNCPolyhedron.point((0, 0))])


def graph_over(zset, yset):
    """``zset x yset`` for a 1-d ``zset`` and a 2-d union ``yset``."""
    pieces = []
    for zp in NNCSet.of(zset).pieces:
        for yp in NNCSet.of(yset).pieces:
            rows = [c.__class__((c.coeffs[0], 0, 0), c.relation, c.rhs) for c in zp.constraints]
            rows += [c.__class__((0,) + tuple(c.coeffs), c.relation, c.rhs) for c in yp.constraints]
            pieces.append(NNCPolyhedron(3, rows))
    return NNCSet(3, pieces)


# -- criterion 1 ---------------------------------------------------------------


@pytest.fixture(scope="module")
def worked_example():
    start = time.perf_counter()
    inst = load("example3")
    out = {"inst": inst}
    out["S0"] = NNCSet.of(inst.feasible_set((0,)))
    out["graph"] = NNCSet.of(inst.value_maps.graph_V_plus)
    out["separator"] = separator_cone(inst, (0, 0)).cone
    delta = example_multiplier()
    out["psi"] = NNCSet.of(psi_set(inst, delta))
    out["verify"] = verify_lagrange_multiplier(inst, delta, (0, 0))
    bad = minus_S_process((0,), (0, 1))
    out["psi_minus_S"] = NNCSet.of(psi_set(inst, bad))
    out["verify_minus_S"] = verify_lagrange_multiplier(inst, bad, (0, 0))
    out["elapsed"] = time.perf_counter() - start
    return out


def test_c1_feasible_set(worked_example, verdict):
    expected = NNCSet(2, [NNCPolyhedron(2, [gt((0, 1)), le((0, 1), 1)]), NNCPolyhedron.point((0, 0))])
    assert verdict(1, worked_example["S0"].same_set(expected), "S(0) = {0 < x2 <= 1} u {(0,0)}")


@pytest.mark.xfail(strict=True, reason="at z = -1 the fibre is Y+ only; see the exact graph below")
def test_c1_value_graph_literal(worked_example, verdict):
    literal = graph_over(NNCPolyhedron(1, [ge((1,), -1)]), A)
    ok = worked_example["graph"].same_set(literal)
    verdict(1, ok, "Graph(V+Y+) = [-1,inf) x A (literal)")
    assert ok


def test_c1_value_graph_exact(worked_example, verdict):
    quadrant = NNCPolyhedron(2, [ge((1, 0)), ge((0, 1))])
    exact = graph_over(NNCPolyhedron(1, [gt((1,), -1)]), A).union(
        graph_over(NNCPolyhedron.point((-1,)), quadrant))
    g = worked_example["graph"]
    ok = g.same_set(exact) and g.closure().same_set(graph_over(NNCPolyhedron(1, [ge((1,), -1)]), A).closure())
    assert verdict(1, ok, "Graph(V+Y+) = (-1,inf) x A u {-1} x Y+, closure = [-1,inf) x cl A")


def test_c1_separator(worked_example, verdict):
    ok = worked_example["separator"].same_cone(PolyhedralCone.from_generators(3, [(0, 0, 1)]))
    assert verdict(1, ok, "S_Y+((0,0)) = ray (0,0,1)")


@pytest.mark.xfail(strict=True, reason="(t, 0) with t > 0 is not reached; see the exact set below")
def test_c1_psi_literal(worked_example, verdict):
    ok = worked_example["psi"].same_set(A)
    verdict(1, ok, "Psi(Delta) = A (literal)")
    assert ok


def test_c1_psi_exact_and_minimal(worked_example, verdict):
    psi = worked_example["psi"]
    ok = psi.same_set(UPPER_PLUS_ORIGIN) and psi.closure().same_set(A.closure())
    ok = ok and worked_example["verify"].passed and is_minimal((0, 0), psi, worked_example["inst"].yplus)
    assert verdict(1, ok, "Psi(Delta) = {y2 > 0} u {0}, cl Psi = cl A, (0,0) minimal for P[Delta]")


def test_c1_minus_S_not_multiplier(worked_example, verdict):
    ok = worked_example["psi_minus_S"].same_set(NNCPolyhedron(2, [ge((0, 1))]))
    ok = ok and worked_example["verify_minus_S"].status == "fail"
    assert verdict(1, ok, "Delta = -S: Psi = R x R+, not a multiplier")


def test_c1_time(worked_example, verdict):
    t = worked_example["elapsed"]
    assert verdict(1, t < 5, f"worked example in {t:.2f} s (< 5 s)")


# -- criterion 2 ---------------------------------------------------------------


def test_c2_duality_example(verdict):
    start = time.perf_counter()
    inst = load("example3")
    true_pts = [(0, 0), (-1, 0), (-10, 0)]
    false_pts = [(1, 0), (0, 1), (0, -1)]
    membership = all(inst.is_nd_point(y) for y in true_pts) and not any(inst.is_nd_point(y) for y in false_pts)
    verdict(2, membership, "ND(P(0)) membership for the six points")
    witnesses = {}
    strong = True
    for y0 in true_pts:
        _, _, _, built = multiplier_certificate(inst, y0)
        psi = psi_set(inst, built.process)
        delta, cert = strong_duality_witness(inst, y0, built, psi)
        strong = strong and cert.passed and phi_member(inst, delta, y0, psi)
        witnesses[y0] = (delta, psi)
    verdict(2, strong, "strong duality witness at (0,0), (-1,0), (-10,0)")
    weak = all(weak_duality_check(inst, y0, delta, y1, psi).passed
               for y0 in true_pts for y1, (delta, psi) in witnesses.items())
    verdict(2, weak, "weak duality on all 9 cross pairs")
    t = time.perf_counter() - start
    verdict(2, t < 5, f"duality example in {t:.2f} s (< 5 s)")
    assert membership and strong and weak and t < 5


# -- criterion 3 ---------------------------------------------------------------


@pytest.mark.parametrize("name, y0", [("example3", (0, 0)), ("scalar", (1,))])
def test_c3_derivative_identity(name, y0, verdict):
    inst = load(name)
    lp = lagrange_process(inst, y0)
    cert = verify_derivative_identity(inst, y0, [(-1,), (0,), (1,)])
    ok = lp.routes_agree and cert.passed and len(cert.clauses) == 6
    assert verdict(3, ok, f"{name}: graph level and z in {{-1,0,1}}, tangent route = adjoint route")


# -- criterion 4 ---------------------------------------------------------------


def test_c4_scalar_recovery(verdict):
    start = time.perf_counter()
    inst = load("scalar")
    cert, l0 = scalar_recovery_check(inst, (1,), ("-1", "1/2", "2"))
    verdict(4, l0 == 1, f"l0 = {l0}")
    oracle_ok = all(marginal_derivative_oracle(inst, (1,), (z,)).points == [(-z,)]
                    for z in (Q(-1), Q(1, 2), Q(2)))
    verdict(4, oracle_ok and cert.passed, "DM(0,1)(z) = {-z} = Min L(-z) for z in {-1, 1/2, 2}")
    cert0, l00 = scalar_recovery_check(load("scalar_inactive"))
    verdict(4, l00 == 0 and cert0.passed, f"inactive constraint: l0 = {l00}")
    t = time.perf_counter() - start
    verdict(4, t < 2, f"scalar recovery in {t:.2f} s (< 2 s)")
    assert l0 == 1 and oracle_ok and cert.passed and l00 == 0 and cert0.passed and t < 2


# -- criterion 5 ---------------------------------------------------------------


@pytest.fixture(scope="module")
def seeded_corpus():
    workers = int(os.environ.get("CONVPROC_WORKERS") or min(4, os.cpu_count() or 1))
    instances = random_corpus(42, 200)
    matrix, failures, errors = corpus_run(instances, workers=workers)
    return instances, matrix, failures, errors


def _holds(matrix, prop):
    ran = [res[prop][0] for res in matrix.values() if prop in res]
    return len(ran), all(ran)


def test_c5_random_corpus(seeded_corpus, verdict):
    instances, matrix, failures, errors = seeded_corpus
    valid = all(res["valid"][0] and res["slater"][0] for res in matrix.values())
    small = max(max(i.nx, i.ny, i.nz) for i in instances) <= 3
    corpus_ok = verdict(5, valid and small and not errors and len(instances) == 200,
                        "200 seeded valid instances, dims <= 3, no errors")
    n, ok_mult = _holds(matrix, "lagrange multiplier")
    verdict(5, ok_mult and n == 200, f"(i) built multiplier verified on {n} instances")
    pairs = sum(res["weak duality pairs"][1] for res in matrix.values())
    _, ok_weak = _holds(matrix, "weak duality")
    verdict(5, ok_weak and pairs >= 1000, f"(ii) weak duality: 0 violations over {pairs} pairs")
    n3, ok_struct = _holds(matrix, "multiplier structure")
    verdict(5, ok_struct and n3 == 200, f"(iii) pointed, full domain, strict containment on {n3} instances")
    assert corpus_ok and not failures
    assert ok_mult and n == 200 and ok_weak and pairs >= 1000 and ok_struct


@pytest.mark.parametrize("suite", ["test_bipolar_against_oracle", "test_dd_round_trip_against_oracle",
                                   "test_projection_against_grid_oracle"])
def test_c5_geometry_suites(suite, verdict):
    try:
        getattr(test_geometry, suite)()
        ok = True
    except AssertionError:
        ok = False
    assert verdict(5, ok, f"(iv) {suite.removeprefix('test_')}: 10^3 samples, 0 mismatches")


def test_c5_cone_of_ball(verdict):
    try:
        test_geometry.test_cone_of_ball_translate_closed_and_pointed()
        ok = True
    except AssertionError:
        ok = False
    assert verdict(5, ok, "(v) cone_of_ball_translate closed and pointed")


def test_c5_slab(verdict):
    try:
        test_geometry.test_slab_subspace_witness_in_closure_20_cases()
        ok = True
    except AssertionError:
        ok = False
    assert verdict(5, ok, "(vi) slab subspace witness in cl cone(x0 + W), 20 cases")


# -- criterion 6 ---------------------------------------------------------------


def test_c6_intersection_property(seeded_corpus, verdict):
    checked = 0
    ok = True
    for name, y0 in [("example3", (0, 0)), ("scalar", (1,)), ("scalar_inactive", (0,))]:
        inst = load(name)
        x0 = inst.achieving_point(y0)
        assert x0 is not None and inst.is_min_point(y0)
        _, _, _, built = multiplier_certificate(inst, y0)
        _, _, is_origin = intersection_property(inst, built.process, x0)
        ok = ok and is_origin
        checked += 1
    _, matrix, _, _ = seeded_corpus
    n, ok_corpus = _holds(matrix, "intersection property")
    assert verdict(6, ok and ok_corpus and n == 200,
                   f"Delta(G(x0)+Z+) ∩ -Y+ = {{0}} on {checked} bundled and {n} random instances")
