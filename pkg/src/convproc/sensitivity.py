"""Adjoint processes, the Lagrange process and first-order sensitivity.

The Lagrange process at ``y0`` is the adjoint of the separator cone read as a
process ``Y* => Z*``.  Its graph, with the sign of z flipped, must coincide
with the tangent cone of Graph(V + Y+) at ``(0, y0)``; both routes are
computed and compared.  The marginal map M is probed through difference
quotients ``(M(h z) - y0) / h`` for a halving sequence of ``h``.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .errors import MalformedInputError, PreconditionError
from .geometry import LinearConstraint, NNCPolyhedron, NNCSet, PolyhedralCone, cone_hull_closure
from .multiplier import PolyhedralProcess, _direct_separator, tangent_cone
from .order import is_pos_proper, min_set
from .rational import neg, scale, sub, vec, zero
from .reports import Certificate


# -- adjoints ---------------------------------------------------------------


def adjoint(p, direction="forward"):
    """Adjoint of a process given by a polyhedral graph.

    ``forward``: ``P : Z => Y`` (graph in Z x Y) gives ``P* : Y* => Z*`` with
    graph ``{(y*, z*) : <z*, z> <= <y*, y> on Graph P}``.
    ``reverse``: ``Q : Y* => Z*`` (graph in Y* x Z*) gives ``Q* : Z => Y`` with
    graph ``{(z, y) : <z*, z> <= <y*, y> on Graph Q}``.
    """
    a, b = p.nz, p.ny  # first and second block of the input graph
    rows = []
    for g in p.graph.all_directions():
        ga, gb = g[:a], g[a:]
        if direction == "forward":
            # output (u, v) = (y*, z*): <v, ga> - <u, gb> <= 0
            coeffs = neg(gb) + tuple(ga)
        elif direction == "reverse":
            # input (y*, z*); output (u, v) = (z, y): <gb, u> - <ga, v> <= 0
            coeffs = tuple(gb) + neg(ga)
        else:
            raise MalformedInputError(f"unknown adjoint direction {direction!r}")
        rows.append(LinearConstraint(coeffs, "<=", 0))
    return PolyhedralProcess(PolyhedralCone(a + b, rows), b, a, label=f"{p.label} adjoint")


def separator_process(cone, nz, ny):
    """The separator cone (pairs ``(z*, y*)``) read as a process ``Y* => Z*``."""
    order = list(range(nz, nz + ny)) + list(range(nz))
    return PolyhedralProcess(cone.permute(order), ny, nz, label="separator")


@dataclass
class LagrangeProcess:
    process: PolyhedralProcess
    anchor: tuple
    tangent: PolyhedralCone
    via_adjoint: PolyhedralProcess
    routes_agree: bool

    def value(self, z):
        """``L(z)`` as a polyhedron in Y."""
        return self.process.at(z)


def lagrange_process(inst, y0, check=True):
    y0 = vec(y0)
    if not inst.yplus.pointed:
        raise PreconditionError("the Lagrange process needs a pointed Y+")
    if not inst.is_nd_point(y0):
        raise PreconditionError("y0 is not a nondominated point of P(0)")
    tangent = tangent_cone(inst, y0)
    reflected = PolyhedralProcess(tangent.reflect(range(inst.nz)), inst.nz, inst.ny, label="Lagrange process")
    s = _direct_separator(inst, y0)
    via_adjoint = adjoint(separator_process(s, inst.nz, inst.ny), "reverse")
    agree = via_adjoint.graph.same_cone(reflected.graph)
    if check and not agree:
        raise AssertionError("Lagrange process: tangent route and adjoint route disagree")
    return LagrangeProcess(reflected, y0, tangent, via_adjoint, agree)


def contingent_derivative_slice(graph, base, z):
    """``{y : (z, y) in cl cone(graph - base)}`` for a convex ``graph``."""
    z = vec(z)
    base = vec(base)
    nz = len(z)
    cone = cone_hull_closure(graph, base)
    n = cone.dim
    rows = [LinearConstraint(tuple(int(i == j) for i in range(n)), "=", v) for j, v in enumerate(z)]
    return cone.with_constraints(rows).project(range(nz, n)).minimized()


# -- the identity between L(-z) and D(V + Y+)(0, y0)(z) ------------------------


def verify_derivative_identity(inst, y0, z_samples):
    y0 = vec(y0)
    cert = Certificate("derivative identity")
    ok, x1 = inst.slater()
    cert.add("Slater", "some x1 in Omega with G(x1) ∩ -int Z+ nonempty", ok, kind="precondition", x1=x1)
    if not cert.add("y0 minimal", "y0 in Min V(0)", inst.is_min_point(y0), kind="precondition", y0=y0):
        return cert
    if not ok:
        return cert
    lp = lagrange_process(inst, y0, check=False)
    cert.add("graph level", "Graph(L(-.)) = cl cone(Graph(V + Y+) - (0, y0))",
             lp.via_adjoint.graph.reflect(range(inst.nz)).same_cone(lp.tangent))
    base = zero(inst.nz) + y0
    for z in z_samples:
        z = vec(z)
        left = lp.via_adjoint.at(neg(z))
        right = contingent_derivative_slice(inst.value_maps.graph_V_plus, base, z)
        cert.add(f"z = {_pt(z)}", "L(-z) = D(V + Y+)(0, y0)(z)", NNCSet.of(left).same_set(right),
                 lagrange=left, derivative=right)
    return cert


# -- difference-quotient oracle ----------------------------------------------


@dataclass
class OracleResult:
    status: str  # "stable" | "inconclusive"
    points: list
    trace: list = field(default_factory=list)

    def to_plain(self):
        from .reports import to_plain
        return {"status": self.status, "points": to_plain(self.points),
                "trace": [{"h": to_plain(h), "quotients": to_plain(qs)} for h, qs in self.trace]}


def marginal_derivative_oracle(inst, y0, z, max_halvings=12, stable_runs=3):
    """Limit of ``(M(h z) - y0) / h`` over minimal extreme points, ``h = 1, 1/2, ...``."""
    y0, z = vec(y0), vec(z)
    trace = []
    h = Fraction(1)
    last, run = None, 0
    for _ in range(max_halvings + 1):
        pts = inst.marginal_min_points(scale(h, z))
        qs = sorted({tuple(x / h for x in sub(m, y0)) for m in pts})
        trace.append((h, qs))
        if qs == last:
            run += 1
        else:
            last, run = qs, 1
        if run >= stable_runs:
            return OracleResult("stable", qs, trace)
        h /= 2
    return OracleResult("inconclusive", last, trace)


# -- sensitivity report -------------------------------------------------------


def domination_grid(nz, radius=1, denominator=4):
    steps = [Fraction(k, denominator) for k in range(-radius * denominator, radius * denominator + 1)]
    return [tuple(p) for p in product(steps, repeat=nz)]


def dominated_at(inst, z):
    """``V(z) ⊆ Min V(z) + Y+`` decided exactly."""
    from .duality import upper_set
    v = inst.V(z)
    return v.issubset(upper_set(min_set(v, inst.yplus), inst.yplus))


def sensitivity_report(inst, y0, z_samples, grid=None):
    y0 = vec(y0)
    cert = Certificate("sensitivity")
    ok, x1 = inst.slater()
    cert.add("Slater", "some x1 in Omega with G(x1) ∩ -int Z+ nonempty", ok, kind="precondition", x1=x1)
    if not cert.add("y0 minimal", "y0 in Min V(0)", inst.is_min_point(y0), kind="precondition", y0=y0):
        return cert, None
    lp = lagrange_process(inst, y0)
    cert.add("compact base", "Y+ ∩ unit sphere is compact (finite dimension)", True, kind="info")
    grid = domination_grid(inst.nz) if grid is None else grid
    bad = [z for z in grid if not dominated_at(inst, z)]
    dominated = cert.add("domination (sampled)", "V(z) ⊆ M(z) + Y+ on a grid of z near 0",
                         not bad, kind="info", grid_size=len(grid), failures=bad[:5])
    conditions = {
        "a": lp.process.pointed,
        "b": inst.ny == 1 and inst.yplus.pointed and bool(inst.yplus.rays),
        "c": is_pos_proper(y0, inst.V(zero(inst.nz)), inst.yplus)[0],
        "d": False,
    }
    first = next((k for k in "abc" if conditions[k]), None)
    cert.add("condition", "one of (a) bounded base, (b) Y+ minus {0} open, (c) y0 in GHe V(0) "
             "via Pos; (d) is never certified", first is not None, kind="info",
             certified=first, results=conditions)
    certified = first is not None and dominated
    cert.add("hypotheses", "all hypotheses of the sensitivity theorem certified", certified, kind="info")
    rows = []
    for z in z_samples:
        z = vec(z)
        oracle = marginal_derivative_oracle(inst, y0, z)
        lmin = min_set(lp.value(neg(z)), inst.yplus)
        oracle_in = all(lmin.contains(p) for p in oracle.points)
        ext = sorted({p for piece in lmin.pieces for p in piece.generators.points})
        ext_in = all(p in oracle.points for p in ext)
        empty_match = lmin.is_empty() == (not oracle.points)
        agree = oracle.status == "stable" and oracle_in and ext_in and empty_match
        cert.add(f"z = {_pt(z)}", "Min DM(0, y0)(z) = Min L(-z)", agree,
                 kind="check" if certified else "info",
                 min_lagrange=lmin, oracle=oracle.points, oracle_status=oracle.status)
        rows.append({"z": z, "Min L(-z)": lmin, "oracle": oracle, "agree": agree})
    return cert, rows


# -- scalar programs ----------------------------------------------------------


def _single_valued(graph, nx):
    """At most one value per x: no (x, y1), (x, y2) in the graph with y1 != y2."""
    from .geometry import lift_product
    n = graph.dim
    ny = n - nx
    t = nx + 2 * ny
    X = list(range(nx))
    A = list(range(nx, nx + ny))
    B = list(range(nx + ny, t))
    for sign in (1, -1):
        row = [0] * t
        row[A[0]], row[B[0]] = sign, -sign
        lifted = lift_product([(graph, X + A), (graph, X + B)], t,
                              [LinearConstraint(tuple(row), "<", 0)])
        if not lifted.is_empty():
            return False
    return True


def scalar_multiplier(lp_graph):
    """``l0`` with ``Graph L = {(z, y) : y >= l0 z}``, or None for other shapes."""
    cs = lp_graph.constraints
    if len(cs) != 1 or cs[0].relation != "<=":
        return None
    az, ay = cs[0].coeffs
    if ay >= 0:
        return None
    return az / -ay


def scalar_recovery_check(inst, y0=None, z_samples=("-1", "1/2", "2")):
    if not (inst.ny == 1 and inst.nz == 1):
        raise PreconditionError("scalar recovery needs one-dimensional Y and Z")
    pos = (Fraction(1),)
    if not (inst.yplus.cone.same_cone(PolyhedralCone.from_generators(1, [pos]))
            and inst.zplus.cone.same_cone(PolyhedralCone.from_generators(1, [pos]))):
        raise PreconditionError("scalar recovery needs Y+ = Z+ = R+")
    if not (_single_valued(inst.graphF, inst.nx) and _single_valued(inst.graphG, inst.nx)):
        raise PreconditionError("F and G must be single-valued")
    if y0 is None:
        pts = inst.marginal_min_points(zero(1))
        if not pts:
            raise PreconditionError("P(0) has no minimal point")
        y0 = pts[0]
    y0 = vec(y0)
    cert = Certificate("scalar recovery")
    lp = lagrange_process(inst, y0)
    l0 = scalar_multiplier(lp.process.graph)
    if not cert.add("half-plane shape", "Graph(L) = {(z, y) : y >= l0 z}", l0 is not None, l0=l0):
        return cert, None
    for z in z_samples:
        z = vec([z])
        oracle = marginal_derivative_oracle(inst, y0, z)
        expect = [(-l0 * z[0],)]
        lmin = min_set(lp.value(neg(z)), inst.yplus)
        cert.add(f"z = {_pt(z)}", "DM(0, y0)(z) = {-l0 z} = Min L(-z)",
                 oracle.status == "stable" and oracle.points == expect
                 and lmin.same_set(NNCPolyhedron.point(expect[0])),
                 oracle=oracle.points, expected=expect)
    return cert, l0


def _pt(v):
    return ",".join(str(x) for x in v)
