"""Ordering cones and efficiency notions (minimal, weak minimal, nondominated...).

Sets are NNC polyhedra or finite unions of them.  Every predicate is decided
exactly: set inclusions go through NNC differences, strict orders through
strict constraints.
"""

from dataclasses import dataclass
from functools import cached_property

from .errors import MalformedInputError, PreconditionError
from .geometry import LinearConstraint, NNCPolyhedron, NNCSet, PolyhedralCone, lift_product, polar_positive
from .geometry import lp
from .rational import dot, sub, vec


@dataclass(frozen=True)
class OrderingCone:
    cone: PolyhedralCone

    @classmethod
    def from_rays(cls, dim, rays):
        return cls(PolyhedralCone.from_generators(dim, rays))

    @classmethod
    def orthant(cls, dim):
        return cls.from_rays(dim, [tuple(int(i == j) for j in range(dim)) for i in range(dim)])

    @property
    def dim(self):
        return self.cone.dim

    @cached_property
    def pointed(self):
        return self.cone.pointed

    @cached_property
    def solid(self):
        return self.cone.solid

    @cached_property
    def proper(self):
        return self.cone.proper

    @property
    def rays(self):
        return self.cone.rays

    def interior_point(self):
        """Sum of the generating directions; interior when the cone is solid."""
        gens = list(self.cone.rays) + list(self.cone.lines) + [tuple(-x for x in l) for l in self.cone.lines]
        out = (0,) * self.dim
        for g in gens:
            out = tuple(a + b for a, b in zip(out, g))
        return vec(out)

    def leq(self, a, b):
        return self.cone.contains(sub(b, a))

    def lt(self, a, b):
        """``b - a`` in the interior of the cone."""
        return self.cone.interior_contains(sub(b, a))

    # shifted copies as NNC polyhedra
    def below(self, y0):
        """``y0 - K``."""
        return NNCPolyhedron(self.dim, self.cone.translate_constraints(y0, negate=True))

    def above(self, y0):
        """``y0 + K``."""
        return NNCPolyhedron(self.dim, self.cone.translate_constraints(y0))

    def strictly_below(self, y0):
        """``y0 - int K``."""
        self._need_solid()
        return NNCPolyhedron(self.dim, self.cone.interior_constraints(y0, negate=True))

    def strictly_above(self, y0):
        self._need_solid()
        return NNCPolyhedron(self.dim, self.cone.interior_constraints(y0))

    @cached_property
    def positive_functional(self):
        return strictly_positive_functional(self)

    def strictly_below_level(self, y0):
        """``(y0 - K) ∩ {f < f(y0)}``; for pointed K this is ``y0 - (K minus 0)``."""
        f = self.positive_functional
        return self.below(y0).with_constraints([LinearConstraint(f, "<", dot(f, y0))])

    def _need_solid(self):
        if not self.solid:
            raise PreconditionError("weak notions need a solid ordering cone")


def as_ordering(c):
    return c if isinstance(c, OrderingCone) else OrderingCone(c)


def cone_flags(c):
    """``(pointed, solid, proper)``."""
    c = as_ordering(c)
    return c.pointed, c.solid, c.proper


def _check(y0, a, yplus):
    y0 = vec(y0)
    a = NNCSet.of(a)
    yplus = as_ordering(yplus)
    if not (len(y0) == a.dim == yplus.dim):
        raise MalformedInputError("dimension mismatch between point, set and cone")
    return y0, a, yplus


def is_nondominated(y0, a, yplus):
    """``a ∩ (y0 - Y+) ⊆ y0 + Y+``."""
    y0, a, yplus = _check(y0, a, yplus)
    if yplus.pointed:
        # (y0 - K) ∩ (y0 + K) = {y0}, so domination means a point of a in y0 - (K minus 0)
        return a.intersect(yplus.strictly_below_level(y0)).is_empty()
    return a.intersect(yplus.below(y0)).issubset(yplus.above(y0))


def is_minimal(y0, a, yplus):
    y0, a, yplus = _check(y0, a, yplus)
    if not a.contains(y0):
        return False
    # for pointed Y+ this is the singleton form a ∩ (y0 - Y+) = {y0}
    return is_nondominated(y0, a, yplus)


def is_maximal(y0, a, yplus):
    y0, a, yplus = _check(y0, a, yplus)
    if not a.contains(y0):
        return False
    return a.intersect(yplus.above(y0)).issubset(yplus.below(y0))


def is_weak_minimal(y0, a, yplus):
    y0, a, yplus = _check(y0, a, yplus)
    yplus._need_solid()
    return a.contains(y0) and a.intersect(yplus.strictly_below(y0)).is_empty()


def is_weak_maximal(y0, a, yplus):
    y0, a, yplus = _check(y0, a, yplus)
    yplus._need_solid()
    return a.contains(y0) and a.intersect(yplus.strictly_above(y0)).is_empty()


def is_nondominated_point(y0, a, yplus):
    """``y0`` in the closure of ``a`` and nondominated by ``a``."""
    y0, a, yplus = _check(y0, a, yplus)
    return a.closure_contains(y0) and is_nondominated(y0, a, yplus)


def is_pos_proper(y0, a, yplus):
    """Positive proper efficiency, returning ``(flag, f)``.

    Looks for ``f`` with ``f(r) >= 1`` on the extreme rays of ``Y+`` (strict
    positivity, up to scaling) and ``f(y0) <= f(y)`` on ``a``, the latter
    written on the generators of the closure of ``a``.
    """
    y0, a, yplus = _check(y0, a, yplus)
    if not yplus.pointed:
        raise PreconditionError("positive proper efficiency needs a pointed ordering cone")
    if not a.contains(y0):
        return False, None
    n = a.dim
    pts, rays, lines = a.closure_generators()
    rows = []
    for r in yplus.rays:
        rows.append((tuple(-x for x in r), "<=", -1))
    for p in pts:
        d = sub(p, y0)
        rows.append((tuple(-x for x in d), "<=", 0))
    for r in rays:
        rows.append((tuple(-x for x in r), "<=", 0))
    for l in lines:
        rows.append((vec(l), "=", 0))
    rows = tuple((vec(c), rel, vec([b])[0]) for c, rel, b in rows)
    f = lp.find_point(n, rows)
    if f is None:
        return False, None
    assert all(dot(f, r) > 0 for r in yplus.rays)
    return True, f


def minimal_extreme_points(a, yplus):
    """Generator points of the pieces of ``a`` that are minimal in ``a``."""
    a = NNCSet.of(a)
    yplus = as_ordering(yplus)
    seen = []
    for piece in a.pieces:
        for p in piece.generators.points:
            if p not in seen and is_minimal(p, a, yplus):
                seen.append(p)
    return sorted(seen)


def strictly_positive_functional(yplus):
    """A functional positive on ``Y+ minus {0}`` (sum of the dual cone's rays)."""
    yplus = as_ordering(yplus)
    if not yplus.pointed:
        raise PreconditionError("only a pointed cone has a strictly positive functional")
    dual = polar_positive(yplus.cone)
    f = [0] * yplus.dim
    for r in dual.rays:
        f = [a + b for a, b in zip(f, r)]
    f = vec(f)
    assert all(dot(f, r) > 0 for r in yplus.rays)
    return f


def min_set(a, yplus):
    """``Min(a)`` as an NNC set: ``a`` minus ``a + (Y+ minus {0})`` (Y+ pointed)."""
    a = NNCSet.of(a)
    yplus = as_ordering(yplus)
    n = a.dim
    f = strictly_positive_functional(yplus)
    # variables (b, k, y) with y = b + k, k in Y+, f(k) > 0
    t = 3 * n
    rows = []
    for c in yplus.cone.constraints:
        rows.append(LinearConstraint(tuple([0] * n) + c.coeffs + tuple([0] * n), c.relation, 0))
    rows.append(LinearConstraint(tuple([0] * n) + tuple(-x for x in f) + tuple([0] * n), "<", 0))
    for i in range(n):
        row = [0] * t
        row[2 * n + i], row[i], row[n + i] = 1, -1, -1
        rows.append(LinearConstraint(tuple(row), "=", 0))
    dominated = lift_product([(a, list(range(n)))], t, rows).project(range(2 * n, t))
    return a.difference(dominated).minimized()
