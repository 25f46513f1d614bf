"""Closed polyhedral cones and the cone calculus built on them."""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import NamedTuple

from ..errors import MalformedInputError, PreconditionError
from ..rational import add, dot, is_zero, neg, norm_inf, nullspace, primitive, rank, scale, sub, vec, zero
from .dd import cone_generators
from .polyhedron import LinearConstraint, NNCPolyhedron, NNCSet, gt


@dataclass(frozen=True)
class LinearFunctional:
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", vec(self.coeffs))

    def __call__(self, x):
        return dot(self.coeffs, x)

    @property
    def dim(self):
        return len(self.coeffs)

    def is_zero(self):
        return is_zero(self.coeffs)


class PolyhedralCone(NNCPolyhedron):
    """A closed convex polyhedral cone ``{x : a.x <= 0, e.x = 0}``."""

    def __init__(self, dim, constraints=()):
        super().__init__(dim, constraints)
        for c in self.constraints:
            if c.rhs != 0 or c.relation == "<":
                raise MalformedInputError(f"{c} is not a closed homogeneous constraint")

    @classmethod
    def from_generators(cls, dim, rays=(), lines=()):
        rays = [vec(r) for r in rays if not is_zero(vec(r))]
        lines = [vec(l) for l in lines if not is_zero(vec(l))]
        ineqs, eqs = cone_generators(dim, ineqs=rays, eqs=lines)
        cs = [LinearConstraint(neg(a), "<=", 0) for a in ineqs]
        cs += [LinearConstraint(a, "=", 0) for a in eqs]
        return cls(dim, cs)

    @classmethod
    def full(cls, dim):
        return cls(dim, ())

    @classmethod
    def origin(cls, dim):
        return cls(dim, [LinearConstraint(tuple(Fraction(int(i == j)) for j in range(dim)), "=", 0)
                         for i in range(dim)])

    @cached_property
    def cone_generators(self):
        """``(extreme rays, lineality basis)``."""
        ineqs = [neg(c.coeffs) for c in self.constraints if c.relation == "<="]
        eqs = [c.coeffs for c in self.constraints if c.relation == "="]
        rays, lines = cone_generators(self.dim, ineqs, eqs)
        return tuple(sorted(rays)), tuple(lines)

    @property
    def rays(self):
        return self.cone_generators[0]

    @property
    def lines(self):
        return self.cone_generators[1]

    def all_directions(self):
        """Rays plus both orientations of every line."""
        return list(self.rays) + list(self.lines) + [neg(l) for l in self.lines]

    @property
    def pointed(self):
        return not self.lines

    @property
    def solid(self):
        gens = list(self.rays) + list(self.lines)
        return bool(gens) and rank(gens, self.dim) == self.dim

    @property
    def proper(self):
        nonzero = bool(self.rays or self.lines)
        return nonzero and bool(self.constraints)

    def flags(self):
        return self.pointed, self.solid, self.proper

    def contains_cone(self, other):
        return all(self.contains(g) for g in other.all_directions())

    def same_cone(self, other):
        return self.dim == other.dim and self.contains_cone(other) and other.contains_cone(self)

    def interior_contains(self, x):
        """Membership in the topological interior (empty unless solid)."""
        if not self.solid:
            return False
        return all(c.value(x) < 0 for c in self.constraints)

    def interior_constraints(self, shift=None, negate=False):
        """Strict rows describing ``shift + int(K)`` (or ``shift - int(K)``)."""
        shift = zero(self.dim) if shift is None else vec(shift)
        rows = []
        for c in self.constraints:
            a = neg(c.coeffs) if negate else c.coeffs
            rows.append(LinearConstraint(a, "<", dot(a, shift)))
        return rows

    def translate_constraints(self, shift=None, negate=False):
        """Closed rows describing ``shift + K`` (or ``shift - K``)."""
        shift = zero(self.dim) if shift is None else vec(shift)
        rows = []
        for c in self.constraints:
            a = neg(c.coeffs) if negate else c.coeffs
            rows.append(LinearConstraint(a, c.relation, dot(a, shift)))
        return rows

    def reflect(self, coords):
        """Cone with the sign of every coordinate in ``coords`` flipped."""
        flip = set(coords)
        cs = []
        for c in self.constraints:
            a = tuple(-v if j in flip else v for j, v in enumerate(c.coeffs))
            cs.append(LinearConstraint(a, c.relation, 0))
        return PolyhedralCone(self.dim, cs)

    def permute(self, order):
        """Cone in coordinates ``(x[order[0]], x[order[1]], ...)``."""
        cs = [LinearConstraint(tuple(c.coeffs[j] for j in order), c.relation, 0)
              for c in self.constraints]
        return PolyhedralCone(self.dim, cs)

    def __repr__(self):
        return f"PolyhedralCone({self.dim}, rays={list(map(list, self.rays))}, lines={list(map(list, self.lines))})"


def _closure_directions(c):
    """Generators of the closure of a cone given as polyhedron or union."""
    pts, rays, lines = NNCSet.of(c).closure_generators()
    return [p for p in pts if not is_zero(p)] + list(rays), list(lines)


def polar_positive(c):
    """``{phi : phi(x) >= 0 for x in c}``; non-closed input is closed first."""
    if isinstance(c, PolyhedralCone):
        rays, lines = list(c.rays), list(c.lines)
    else:
        rays, lines = _closure_directions(c)
    cs = [LinearConstraint(neg(r), "<=", 0) for r in rays]
    cs += [LinearConstraint(l, "=", 0) for l in lines]
    return PolyhedralCone(c.dim, cs)


def cone_hull_closure(p, apex):
    """``cl cone(p - apex)`` for a convex ``p`` with ``apex`` in ``cl(p)``."""
    apex = vec(apex)
    s = NNCSet.of(p)
    if len(apex) != s.dim:
        raise MalformedInputError("apex dimension mismatch")
    if not s.closure_contains(apex):
        raise PreconditionError("apex is not in the closure of the set; tangent cone undefined")
    return _closed_cone_hull(s, apex)


def _closed_cone_hull(s, apex):
    pts, rays, lines = s.closure_generators()
    dirs = [sub(x, apex) for x in pts] + list(rays)
    return PolyhedralCone.from_generators(s.dim, dirs, lines)


def box_vertices(center, delta):
    center = vec(center)
    delta = Fraction(delta)
    return [add(center, tuple(s * delta for s in signs))
            for signs in product((-1, 1), repeat=len(center))]


def cone_of_ball_translate(x0, delta, functional=None):
    """Cone generated by ``x0 + delta * [-1, 1]^d``.

    With ``functional`` given, it must be positive on the translated box and
    the returned cone then satisfies ``T(g) > 0`` on every nonzero generator.
    """
    x0 = vec(x0)
    delta = Fraction(delta)
    if delta <= 0:
        raise PreconditionError("delta must be positive")
    if norm_inf(x0) <= delta:
        raise PreconditionError("origin lies in the translated box; the cone is not pointed")
    verts = box_vertices(x0, delta)
    if functional is not None:
        if any(functional(v) <= 0 for v in verts):
            raise PreconditionError("functional is not positive on the translated box")
    cone = PolyhedralCone.from_generators(len(x0), verts)
    assert cone.pointed, "cone of a translated box missing the origin must be pointed"
    assert polar_positive(polar_positive(cone)).same_cone(cone)
    if functional is not None:
        assert all(functional(g) > 0 for g in cone.rays)
    return cone


class SlabResult(NamedTuple):
    closure: PolyhedralCone
    subspace_basis: list
    cone: NNCSet
    identity_holds: bool


def open_cone(p):
    """``cone(p) = {0} u {t*x : t > 0, x in p}`` as an NNC set (not closed)."""
    n = p.dim
    rows = []
    for c in p.constraints:
        rows.append(LinearConstraint(c.coeffs + (-c.rhs,), c.relation, 0))
    rows.append(gt(tuple(Fraction(int(j == n)) for j in range(n + 1)), 0))
    lifted = NNCPolyhedron(n + 1, rows)
    return NNCSet(n, [lifted.project(range(n)), NNCPolyhedron.point(zero(n))])


def slab_cone_closure(x0, functionals, eps, functional):
    """Closure of ``cone(x0 + W)`` for ``W = {x : T_i(x) <= eps}``.

    Requires ``{T <= 0}`` to miss ``x0 + W``.  Returns the closed cone, a basis
    of ``ker T  and  ker T_i`` (contained in the closure), the non-closed cone
    and whether ``cl cone(x0+W) = {T_i <= 0 for all i} u cone(x0+W)`` holds.
    """
    x0 = vec(x0)
    n = len(x0)
    eps = Fraction(eps)
    fs = [LinearFunctional(f) if not isinstance(f, LinearFunctional) else f for f in functionals]
    T = functional if isinstance(functional, LinearFunctional) else LinearFunctional(functional)
    if not fs:
        raise PreconditionError("W must be cut by at least one functional")
    if eps <= 0:
        raise PreconditionError("eps must be positive")
    translate = NNCPolyhedron(n, [LinearConstraint(f.coeffs, "<=", eps + f(x0)) for f in fs])
    if not translate.with_constraints([LinearConstraint(T.coeffs, "<=", 0)]).is_empty():
        raise PreconditionError("{T <= 0} meets x0 + W")
    closure = _closed_cone_hull(NNCSet.of(translate), zero(n))
    basis = nullspace([f.coeffs for f in fs] + [T.coeffs], n)
    for b in basis:
        assert closure.contains(b) and closure.contains(neg(b))
    cone = open_cone(translate)
    halfspaces = NNCPolyhedron(n, [LinearConstraint(f.coeffs, "<=", 0) for f in fs])
    identity = cone.union(halfspaces).same_set(closure)
    return SlabResult(closure, basis, cone, identity)


def subspace_in_cone(basis, cone):
    return all(cone.contains(b) and cone.contains(neg(b)) for b in basis)


def scaled(c, v):
    return scale(Fraction(c), vec(v))


def primitive_rays(rays):
    return sorted({primitive(r) for r in rays if not is_zero(r)})
