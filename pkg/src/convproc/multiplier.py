"""Separator cones, multiplier processes and the multiplier verification.

The separator cone of ``P(0)`` at ``y0`` collects the dual pairs
``(z*, y*)`` with

    <z*, z'> + <y*, y'> <= <y*, y0> <= <z*, z> + <y*, y>

for ``(z', y')`` in ``(-Z+) x (y0 - Y+)`` and ``(z, y)`` in Graph(V + Y+).
It is computed twice: as the positive polar of the tangent cone of
Graph(V + Y+) at ``(0, y0)``, and row by row from the inequalities above.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .errors import (InconsistentPairError, MalformedInputError, NoSeparatorError,
                     PreconditionError, SlaterViolatedError)
from .geometry import (LinearConstraint, LinearFunctional, NNCPolyhedron, NNCSet, PolyhedralCone,
                       cone_hull_closure, cone_of_ball_translate, lift_product, polar_positive)
from .order import as_ordering, is_minimal, is_nondominated
from .program import _cone_rows
from .rational import add, is_zero, neg, norm1, sub, vec, zero
from .reports import Certificate


@dataclass(frozen=True)
class SeparatorCone:
    cone: PolyhedralCone
    anchor: tuple
    nz: int
    ny: int
    tangent: PolyhedralCone

    def pairs(self):
        """Extreme rays split into ``(z*, y*)``."""
        return [(r[:self.nz], r[self.nz:]) for r in self.cone.rays]


def tangent_cone(inst, y0):
    """``cl cone(Graph(V + Y+) - (0, y0))``."""
    return cone_hull_closure(inst.value_maps.graph_V_plus, zero(inst.nz) + vec(y0))


def _direct_separator(inst, y0):
    """Separator cone straight from its defining inequalities."""
    n = inst.nz + inst.ny
    apex = zero(inst.nz) + vec(y0)
    pts, rays, lines = inst.value_maps.graph_V_plus.closure_generators()
    rows = []
    # <(z*,y*), p - (0,y0)> >= 0 on the closure of the graph
    for p in pts:
        rows.append(LinearConstraint(neg(sub(p, apex)), "<=", 0))
    for r in rays:
        rows.append(LinearConstraint(neg(r), "<=", 0))
    for l in lines:
        rows.append(LinearConstraint(l, "=", 0))
    # z* >= 0 on Z+ and y* >= 0 on Y+ (the first family of inequalities)
    for k in inst.zplus.cone.all_directions():
        rows.append(LinearConstraint(neg(tuple(k) + zero(inst.ny)), "<=", 0))
    for k in inst.yplus.cone.all_directions():
        rows.append(LinearConstraint(neg(zero(inst.nz) + tuple(k)), "<=", 0))
    return PolyhedralCone(n, rows)


def separator_cone(inst, y0):
    y0 = vec(y0)
    if len(y0) != inst.ny:
        raise MalformedInputError("y0 has the wrong dimension")
    if not inst.is_nd_point(y0):
        raise PreconditionError(f"y0 = {list(map(str, y0))} is not a nondominated point of P(0)")
    tangent = tangent_cone(inst, y0)
    via_polar = polar_positive(tangent)
    direct = _direct_separator(inst, y0)
    if not via_polar.same_cone(direct):
        raise AssertionError("separator cone: polar route and direct route disagree")
    if not via_polar.rays and not via_polar.lines:
        raise NoSeparatorError("separator cone is {0}")
    return SeparatorCone(via_polar, y0, inst.nz, inst.ny, tangent)


def pick_dual_pair(s):
    """Sum of the extreme rays of the separator cone, split as ``(z*, y*)``."""
    cone = s.cone if isinstance(s, SeparatorCone) else s
    nz = s.nz if isinstance(s, SeparatorCone) else None
    if nz is None:
        raise MalformedInputError("pick_dual_pair needs a SeparatorCone")
    gens = list(cone.rays) or list(cone.lines[:1])
    if not gens:
        raise NoSeparatorError("separator cone is {0}")
    total = zero(cone.dim)
    for g in gens:
        total = add(total, g)
    if is_zero(total):
        total = gens[0]
    zs, ys = LinearFunctional(total[:nz]), LinearFunctional(total[nz:])
    if ys.is_zero():
        raise SlaterViolatedError("the selected separator has y* = 0")
    return zs, ys


class PolyhedralProcess:
    """A convex process ``Z => Y`` with a closed polyhedral cone as graph."""

    def __init__(self, graph, nz, ny, label="process"):
        if graph.dim != nz + ny:
            raise MalformedInputError("process graph has the wrong dimension")
        self.graph = graph
        self.nz = nz
        self.ny = ny
        self.label = label

    @classmethod
    def from_generators(cls, nz, ny, rays, lines=(), label="process"):
        return cls(PolyhedralCone.from_generators(nz + ny, rays, lines), nz, ny, label)

    closed = True
    convex = True

    @property
    def pointed(self):
        return self.graph.pointed

    @cached_property
    def domain_full(self):
        dom = self.graph.project(range(self.nz))
        return dom.same_set(NNCPolyhedron.universe(self.nz))

    def flags(self):
        return {"closed": self.closed, "convex": self.convex,
                "pointed": self.pointed, "domain_full": self.domain_full}

    def image(self, zset):
        """``Delta(zset)`` for an NNC set in Z."""
        zset = NNCSet.of(zset)
        n = self.nz + self.ny
        lifted = lift_product([(zset, list(range(self.nz)))], n, self.graph.constraints)
        return lifted.project(range(self.nz, n)).minimized()

    def at(self, z):
        return self.image(NNCPolyhedron.point(vec(z)))

    def strictly_positive(self, functional):
        """``T(g) > 0`` on every nonzero element of the graph."""
        if self.graph.lines:
            return False
        return all(functional(g) > 0 for g in self.graph.rays)

    def to_plain(self):
        return {"label": self.label, "nz": self.nz, "ny": self.ny,
                "rays": [list(map(_s, r)) for r in self.graph.rays],
                "lines": [list(map(_s, l)) for l in self.graph.lines],
                "flags": self.flags()}

    def __repr__(self):
        return f"PolyhedralProcess({self.label}, rays={len(self.graph.rays)}, lines={len(self.graph.lines)})"


def _s(x):
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass
class BuiltMultiplier:
    process: PolyhedralProcess
    yplus_point: tuple
    functional: LinearFunctional
    t0: Fraction
    delta: Fraction


def build_multiplier(pair, yplus, nz=None):
    """Pointed multiplier for the dual pair ``(z*, y*)``.

    The graph is the cone over the box ``(0, y+) + delta [-1, 1]^d`` with
    ``y+`` the sum of the extreme rays of Y+ and
    ``delta = t0 / (2 ||T||_1)``, ``T = (-z*, y*)``, ``t0 = T(0, y+)``.
    """
    zs, ys = pair
    zs = zs.coeffs if isinstance(zs, LinearFunctional) else vec(zs)
    ys = ys.coeffs if isinstance(ys, LinearFunctional) else vec(ys)
    yplus = as_ordering(yplus)
    if is_zero(ys):
        raise SlaterViolatedError("y* = 0: no multiplier can be built")
    if not yplus.solid:
        raise PreconditionError("Y+ must be solid")
    nz, ny = len(zs), len(ys)
    yp = yplus.interior_point()
    T = LinearFunctional(neg(zs) + ys)
    base = zero(nz) + yp
    t0 = T(base)
    if t0 <= 0:
        raise InconsistentPairError(f"T(0, y+) = {t0} is not positive")
    delta = t0 / (2 * norm1(T.coeffs))
    graph = cone_of_ball_translate(base, delta, T)
    proc = PolyhedralProcess(graph, nz, ny, label="built multiplier")
    assert proc.pointed
    assert proc.domain_full
    assert proc.strictly_positive(T)
    return BuiltMultiplier(proc, yp, T, t0, delta)


def minus_S_process(zs, ys):
    """The process with graph ``{(z, y) : <z*, z> <= <y*, y>}``."""
    zs, ys = vec(zs), vec(ys)
    row = LinearConstraint(zs + neg(ys), "<=", 0)
    return PolyhedralProcess(PolyhedralCone(len(zs) + len(ys), [row]), len(zs), len(ys), label="-S")


def example_multiplier():
    """Graph ``{(z, y1, y2) : y2 >= max(|z|, |y1|)}`` for the worked example."""
    rows = [LinearConstraint(c, "<=", 0) for c in ((1, 0, -1), (-1, 0, -1), (0, 1, -1), (0, -1, -1))]
    return PolyhedralProcess(PolyhedralCone(3, rows), 1, 2, label="example multiplier")


def psi_set(inst, delta):
    """``Psi(Delta) = union over x in Omega of F(x) + Delta(G(x) + Z+)``."""
    nx, ny, nz = inst.nx, inst.ny, inst.nz
    X = list(range(nx))
    G = list(range(nx, nx + nz))
    F = list(range(nx + nz, nx + nz + ny))
    Z = list(range(nx + nz + ny, nx + 2 * nz + ny))
    D = list(range(nx + 2 * nz + ny, nx + 2 * nz + 2 * ny))
    Y = list(range(nx + 2 * nz + 2 * ny, nx + 2 * nz + 3 * ny))
    t = nx + 2 * nz + 3 * ny
    rows = _cone_rows(inst.zplus.cone, Z, G, t)
    for f, d, y in zip(F, D, Y):
        c = [0] * t
        c[y], c[f], c[d] = 1, -1, -1
        rows.append(LinearConstraint(tuple(c), "=", 0))
    lifted = lift_product([(inst.omega, X), (inst.graphG, X + G), (inst.graphF, X + F),
                           (delta.graph, Z + D)], t, rows)
    return lifted.project(Y).minimized()


def intersection_property(inst, delta, x0):
    """``(Delta(G(x0) + Z+) ∩ -Y+, holds, is_origin)`` for the intersection property."""
    img = delta.image(inst.G_plus(x0))
    origin = zero(inst.ny)
    meet = img.intersect(inst.yplus.below(origin))
    lineality = inst.yplus.below(origin).intersect(inst.yplus.above(origin))
    holds = meet.issubset(lineality)
    is_origin = meet.same_set(NNCPolyhedron.point(origin))
    return meet, holds, is_origin


def verify_lagrange_multiplier(inst, delta, y0, title="Lagrange multiplier", psi=None):
    y0 = vec(y0)
    cert = Certificate(title)
    nd = inst.is_nd_point(y0)
    if not cert.add("y0 nondominated for P(0)", "y0 in cl V(0) and V(0) ∩ (y0 - Y+) ⊆ y0 + Y+",
                    nd, kind="precondition", y0=y0):
        return cert
    psi = psi_set(inst, delta) if psi is None else psi
    cert.add("closure", "y0 in cl Psi(Delta)", psi.closure_contains(y0))
    cert.add("nondominated", "Psi(Delta) ∩ (y0 - Y+) ⊆ y0 + Y+", is_nondominated(y0, psi, inst.yplus),
             psi=psi)
    x0 = inst.achieving_point(y0)
    if x0 is not None and inst.is_min_point(y0):
        cert.add("minimal in P[Delta]", "y0 in F(x0) + Delta(G(x0) + Z+) and y0 in Min Psi(Delta)",
                 psi.contains(y0) and is_minimal(y0, psi, inst.yplus), x0=x0)
        meet, holds, is_origin = intersection_property(inst, delta, x0)
        cert.add("intersection property", "Delta(G(x0) + Z+) ∩ (-Y+) ⊆ (-Y+) ∩ Y+", holds, x0=x0, intersection=meet)
        if inst.yplus.pointed:
            cert.add("intersection property pointed form", "Delta(G(x0) + Z+) ∩ (-Y+) = {0}", is_origin)
    return cert


def multiplier_certificate(inst, y0):
    """Separator, built multiplier and the structural checks on it."""
    cert = Certificate("multiplier construction")
    s = separator_cone(inst, y0)
    zs, ys = pick_dual_pair(s)
    built = build_multiplier((zs, ys), inst.yplus)
    p = built.process
    cert.add("pointed", "Graph(Delta) ∩ -Graph(Delta) = {0}", p.pointed)
    cert.add("closed convex", "Graph(Delta) is a closed convex cone", p.closed and p.convex)
    cert.add("full domain", "Dom(Delta) = Z", p.domain_full)
    cert.add("strict containment", "<-z*, g_z> + <y*, g_y> > 0 on nonzero generators",
             p.strictly_positive(built.functional), T=built.functional.coeffs, delta=built.delta)
    return cert, s, (zs, ys), built


def serialize_process(p):
    from .geometry import textio
    return textio.dumps(p.graph)
