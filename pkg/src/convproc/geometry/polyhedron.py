"""Not-necessarily-closed polyhedra and finite unions of them.

An :class:`NNCPolyhedron` is an intersection of finitely many closed or open
halfspaces and hyperplanes in Q^n.  Several convex sets that occur in
set-valued programs (a halfplane with one boundary point added, say) are not
of that form, so :class:`NNCSet` stores a finite union of pieces.  Every
operation is exact.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import NamedTuple

from ..errors import MalformedInputError
from ..rational import dot, fmt, fmt_vec, is_zero, primitive, q, rank, sub, vec, zero
from . import lp
from .dd import cone_generators

RELATIONS = ("<=", "<", "=")


@dataclass(frozen=True, order=True)
class LinearConstraint:
    """``coeffs . x  relation  rhs`` with relation in ``<=``, ``<``, ``=``."""

    coeffs: tuple
    relation: str
    rhs: Fraction

    def __post_init__(self):
        if self.relation not in RELATIONS:
            raise MalformedInputError(f"unknown relation {self.relation!r}")
        object.__setattr__(self, "coeffs", vec(self.coeffs))
        object.__setattr__(self, "rhs", q(self.rhs))

    @property
    def dim(self):
        return len(self.coeffs)

    def value(self, x):
        return dot(self.coeffs, x)

    def satisfied_by(self, x):
        v = dot(self.coeffs, x)
        if self.relation == "<=":
            return v <= self.rhs
        if self.relation == "<":
            return v < self.rhs
        return v == self.rhs

    def is_trivial(self):
        return is_zero(self.coeffs)

    def trivially_true(self):
        if self.relation == "<=":
            return self.rhs >= 0
        if self.relation == "<":
            return self.rhs > 0
        return self.rhs == 0

    def normalized(self):
        """Coprime integer coefficients; equalities get a positive leading entry."""
        if self.is_trivial():
            return self
        full = primitive(self.coeffs + (self.rhs,))
        if self.relation == "=":
            lead = next(x for x in full if x != 0)
            if lead < 0:
                full = tuple(-x for x in full)
        return LinearConstraint(full[:-1], self.relation, full[-1])

    def closure(self):
        if self.relation == "<":
            return LinearConstraint(self.coeffs, "<=", self.rhs)
        return self

    def negations(self):
        """Constraints whose union is the complement of this one."""
        a, b = self.coeffs, self.rhs
        na = tuple(-x for x in a)
        if self.relation == "<=":
            return [LinearConstraint(na, "<", -b)]
        if self.relation == "<":
            return [LinearConstraint(na, "<=", -b)]
        return [LinearConstraint(a, "<", b), LinearConstraint(na, "<", -b)]

    def embed(self, total_dim, coords):
        c = [Fraction(0)] * total_dim
        for v, j in zip(self.coeffs, coords):
            c[j] += v
        return LinearConstraint(tuple(c), self.relation, self.rhs)

    def as_row(self):
        return (self.coeffs, self.relation, self.rhs)

    def __str__(self):
        return f"{fmt_vec(self.coeffs)} {self.relation} {fmt(self.rhs)}"


def le(a, b=0):
    return LinearConstraint(vec(a), "<=", q(b))


def lt(a, b=0):
    return LinearConstraint(vec(a), "<", q(b))


def ge(a, b=0):
    return LinearConstraint(tuple(-x for x in vec(a)), "<=", -q(b))


def gt(a, b=0):
    return LinearConstraint(tuple(-x for x in vec(a)), "<", -q(b))


def eq(a, b=0):
    return LinearConstraint(vec(a), "=", q(b))


class Generators(NamedTuple):
    points: tuple
    closure_points: tuple
    rays: tuple
    lines: tuple


_FALSE = None  # sentinel used by _normalize_all


def _normalize_all(dim, constraints):
    out = set()
    for c in constraints:
        if not isinstance(c, LinearConstraint):
            c = LinearConstraint(*c)
        if c.dim != dim:
            raise MalformedInputError(
                f"constraint {c} has {c.dim} coefficients, expected {dim}")
        if c.is_trivial():
            if c.trivially_true():
                continue
            return _FALSE
        out.add(c.normalized())
    return tuple(sorted(out))


class NNCPolyhedron:
    """Intersection of finitely many (open or closed) halfspaces.

    Instances are immutable; derived data (emptiness, generators) is computed
    once on first use.
    """

    def __init__(self, dim, constraints=()):
        self.dim = int(dim)
        norm = _normalize_all(self.dim, constraints)
        if norm is _FALSE:
            self._empty_by_form = True
            self.constraints = (LinearConstraint(zero(self.dim), "<=", Fraction(-1)),)
        else:
            self._empty_by_form = False
            self.constraints = norm

    @classmethod
    def universe(cls, dim):
        return cls(dim, ())

    @classmethod
    def empty(cls, dim):
        return cls(dim, [LinearConstraint(zero(dim), "<=", Fraction(-1))])

    @classmethod
    def point(cls, x):
        x = vec(x)
        n = len(x)
        return cls(n, [eq(tuple(Fraction(int(i == j)) for j in range(n)), x[i]) for i in range(n)])

    @classmethod
    def box(cls, lo, hi):
        lo, hi = vec(lo), vec(hi)
        n = len(lo)
        cs = []
        for i in range(n):
            e = tuple(Fraction(int(i == j)) for j in range(n))
            cs.append(le(e, hi[i]))
            cs.append(ge(e, lo[i]))
        return cls(n, cs)

    @classmethod
    def from_generators(cls, dim, points=(), rays=(), lines=()):
        """Closed polyhedron ``conv(points) + cone(rays) + span(lines)``."""
        if not points:
            return cls.empty(dim)
        gens = [tuple(vec(p)) + (Fraction(1),) for p in points]
        gens += [tuple(vec(r)) + (Fraction(0),) for r in rays]
        ls = [tuple(vec(l)) + (Fraction(0),) for l in lines]
        ineqs, eqs = cone_generators(dim + 1, ineqs=gens, eqs=ls)
        cs = []
        for a in ineqs:
            # a.x + a_t >= 0  ->  -a.x <= a_t
            cs.append(LinearConstraint(tuple(-x for x in a[:-1]), "<=", a[-1]))
        for a in eqs:
            cs.append(LinearConstraint(a[:-1], "=", -a[-1]))
        return cls(dim, cs)

    @classmethod
    def from_nnc_generators(cls, dim, points=(), closure_points=(), rays=(), lines=()):
        """Set ``{sum l_i p_i + sum m_j c_j + cone(rays) + span(lines)}``.

        Weights are convex with ``sum l_i > 0``: closure points alone add
        only limit points.
        """
        if not points:
            return cls.empty(dim)
        one, nil = Fraction(1), Fraction(0)
        gens = [vec(p) + (one, one) for p in points]
        gens += [vec(c) + (one, nil) for c in closure_points]
        gens += [vec(r) + (nil, nil) for r in rays]
        ls = [vec(l) + (nil, nil) for l in lines]
        ineqs, eqs = cone_generators(dim + 2, ineqs=gens, eqs=ls)
        # a.x + a_t + a_e * e >= 0 with t = 1 and some e > 0
        rows = [LinearConstraint(tuple(-x for x in a[:dim]) + (-a[dim + 1],), "<=", a[dim])
                for a in ineqs]
        rows += [LinearConstraint(a[:dim] + (a[dim + 1],), "=", -a[dim]) for a in eqs]
        rows.append(LinearConstraint(zero(dim) + (Fraction(-1),), "<", 0))
        return cls(dim + 1, rows).project(range(dim))

    # -- basic predicates -------------------------------------------------

    def rows(self):
        return tuple(c.as_row() for c in self.constraints)

    @cached_property
    def witness(self):
        """Some point of the set, or None when empty."""
        if self._empty_by_form:
            return None
        if not self.constraints:
            return zero(self.dim)
        return lp.find_point(self.dim, self.rows())

    def is_empty(self):
        return self.witness is None

    def contains(self, x):
        x = vec(x)
        if len(x) != self.dim:
            raise MalformedInputError(f"point of dimension {len(x)} in a {self.dim}-dimensional set")
        if self._empty_by_form:
            return False
        return all(c.satisfied_by(x) for c in self.constraints)

    def closure(self):
        if self.is_empty():
            return NNCPolyhedron.empty(self.dim)
        return NNCPolyhedron(self.dim, [c.closure() for c in self.constraints])

    def closure_contains(self, x):
        return self.closure().contains(x)

    @cached_property
    def closed(self):
        """True iff no strict constraint is essential."""
        if self.is_empty():
            return True
        cl = self.closure()
        for c in self.constraints:
            if c.relation == "<":
                touch = NNCPolyhedron(self.dim, cl.constraints + (eq(c.coeffs, c.rhs),))
                if not touch.is_empty():
                    return False
        return True

    # -- constructions ----------------------------------------------------

    def intersect(self, other):
        if isinstance(other, NNCSet):
            return NNCSet(self.dim, [self]).intersect(other)
        if other.dim != self.dim:
            raise MalformedInputError("dimension mismatch in intersection")
        return NNCPolyhedron(self.dim, self.constraints + other.constraints)

    def with_constraints(self, constraints):
        return NNCPolyhedron(self.dim, self.constraints + tuple(constraints))

    def embed(self, total_dim, coords):
        """Cylinder in Q^total_dim whose coordinate ``coords[i]`` is our i-th."""
        return NNCPolyhedron(total_dim, [c.embed(total_dim, coords) for c in self.constraints])

    def minimized(self):
        """Same set, redundant constraints dropped, inessential strictness relaxed."""
        if self.is_empty():
            return NNCPolyhedron.empty(self.dim)
        kept = list(self.constraints)
        i = 0
        while i < len(kept):
            others = kept[:i] + kept[i + 1:]
            if all(NNCPolyhedron(self.dim, others + [n]).is_empty() for n in kept[i].negations()):
                kept = others
            else:
                i += 1
        cl = [c.closure() for c in kept]
        relaxed = []
        for c in kept:
            if c.relation == "<":
                touch = NNCPolyhedron(self.dim, cl + [eq(c.coeffs, c.rhs)])
                if touch.is_empty():
                    c = c.closure()
            relaxed.append(c)
        return NNCPolyhedron(self.dim, relaxed)

    def project(self, keep):
        from .fm import project
        return project(self, keep)

    @cached_property
    def generators(self):
        """Points, closure points, rays and lines (empty tuples when empty)."""
        n = self.dim
        if self.is_empty():
            return Generators((), (), (), ())
        ineqs, eqs = [], []
        for c in self.constraints:
            a = tuple(-x for x in c.coeffs)
            if c.relation == "<=":
                ineqs.append(a + (c.rhs, Fraction(0)))
            elif c.relation == "<":
                ineqs.append(a + (c.rhs, Fraction(-1)))
            else:
                eqs.append(a + (c.rhs, Fraction(0)))
        ineqs.append(zero(n) + (Fraction(1), Fraction(-1)))
        ineqs.append(zero(n) + (Fraction(0), Fraction(1)))
        rays, lines = cone_generators(n + 2, ineqs, eqs)
        points, cpoints, rs = [], [], []
        for r in rays:
            x, t, e = r[:n], r[n], r[n + 1]
            if t == 0:
                rs.append(primitive(x))
            elif e > 0:
                points.append(tuple(v / t for v in x))
            else:
                cpoints.append(tuple(v / t for v in x))
        pset = set(points)
        cpoints = [c for c in cpoints if c not in pset]
        return Generators(tuple(sorted(set(points))), tuple(sorted(set(cpoints))),
                          tuple(sorted(set(rs))), tuple(primitive(l[:n]) for l in lines))

    def closure_generators(self):
        """``(points, rays, lines)`` of the topological closure."""
        g = self.generators
        return g.points + g.closure_points, g.rays, g.lines

    @cached_property
    def affine_dimension(self):
        if self.is_empty():
            return -1
        pts, rays, lines = self.closure_generators()
        p0 = pts[0]
        dirs = [sub(p, p0) for p in pts[1:]] + list(rays) + list(lines)
        return rank(dirs, self.dim) if dirs else 0

    def is_bounded(self):
        g = self.generators
        return not g.rays and not g.lines

    # -- set relations ----------------------------------------------------

    def difference(self, other):
        """List of pieces whose union is ``self \\ other`` (other a polyhedron)."""
        if self.is_empty():
            return []
        if other.is_empty():
            return [self]
        out = []
        cur = self
        for c in other.constraints:
            for n in c.negations():
                piece = cur.with_constraints([n])
                if not piece.is_empty():
                    out.append(piece)
            cur = cur.with_constraints([c])
            if cur.is_empty():
                break
        return out

    def issubset(self, other):
        return NNCSet.of(self).issubset(other)

    def same_set(self, other):
        return NNCSet.of(self).same_set(other)

    def __repr__(self):
        body = "; ".join(str(c) for c in self.constraints)
        return f"NNCPolyhedron({self.dim}: {body})"

    def __eq__(self, other):
        return isinstance(other, NNCPolyhedron) and self.dim == other.dim and \
            self.constraints == other.constraints

    def __hash__(self):
        return hash((self.dim, self.constraints))


class NNCSet:
    """Finite union of NNC polyhedra of a common dimension.

    Empty pieces are dropped on construction.  Nothing here assumes the union
    is convex; callers that rely on convexity check it with
    :meth:`is_convex`.
    """

    def __init__(self, dim, pieces=()):
        self.dim = int(dim)
        kept = []
        seen = set()
        for p in pieces:
            if p.dim != self.dim:
                raise MalformedInputError("dimension mismatch among union pieces")
            if p.is_empty() or p in seen:
                continue
            seen.add(p)
            kept.append(p)
        self.pieces = tuple(kept)

    @classmethod
    def of(cls, obj):
        if isinstance(obj, NNCSet):
            return obj
        return cls(obj.dim, [obj])

    @classmethod
    def empty(cls, dim):
        return cls(dim, ())

    def is_empty(self):
        return not self.pieces

    @property
    def witness(self):
        return self.pieces[0].witness if self.pieces else None

    def contains(self, x):
        return any(p.contains(x) for p in self.pieces)

    def closure_contains(self, x):
        return any(p.closure_contains(x) for p in self.pieces)

    def closure(self):
        return NNCSet(self.dim, [p.closure() for p in self.pieces])

    def union(self, other):
        other = NNCSet.of(other)
        return NNCSet(self.dim, self.pieces + other.pieces)

    def intersect(self, other):
        other = NNCSet.of(other)
        if other.dim != self.dim:
            raise MalformedInputError("dimension mismatch in intersection")
        return NNCSet(self.dim, [a.intersect(b) for a, b in product(self.pieces, other.pieces)])

    def with_constraints(self, constraints):
        constraints = tuple(constraints)
        return NNCSet(self.dim, [p.with_constraints(constraints) for p in self.pieces])

    def embed(self, total_dim, coords):
        return NNCSet(total_dim, [p.embed(total_dim, coords) for p in self.pieces])

    def project(self, keep):
        from .fm import project
        keep = list(keep)
        return NNCSet(len(keep), [project(p, keep) for p in self.pieces])

    def minimized(self):
        return NNCSet(self.dim, [p.minimized() for p in self.pieces])

    def closure_generators(self):
        """Merged generators of the closures of all pieces."""
        pts, rays, lines = [], [], []
        for p in self.pieces:
            a, b, c = p.closure_generators()
            pts += a
            rays += b
            lines += c
        return tuple(dict.fromkeys(pts)), tuple(dict.fromkeys(rays)), tuple(dict.fromkeys(lines))

    def closed_hull(self):
        """Closed convex hull of the union, as one polyhedron."""
        pts, rays, lines = self.closure_generators()
        return NNCPolyhedron.from_generators(self.dim, pts, rays, lines)

    def difference(self, other):
        other = NNCSet.of(other)
        remaining = list(self.pieces)
        for q_ in other.pieces:
            nxt = []
            for r in remaining:
                nxt.extend(r.difference(q_))
            remaining = nxt
            if not remaining:
                break
        return NNCSet(self.dim, remaining)

    def issubset(self, other):
        other = NNCSet.of(other)
        if other.dim != self.dim:
            raise MalformedInputError("dimension mismatch in inclusion test")
        return self.difference(other).is_empty()

    def same_set(self, other):
        other = NNCSet.of(other)
        return self.issubset(other) and other.issubset(self)

    def is_closed(self):
        return self.closure().issubset(self)

    def is_convex(self):
        """Exact convexity test: every open segment between two pieces stays inside."""
        for i, a in enumerate(self.pieces):
            for b in self.pieces[i + 1:]:
                if not open_segments(a, b).issubset(self):
                    return False
        return True

    def __repr__(self):
        return f"NNCSet({self.dim}, {list(self.pieces)})"


def open_segments(a, b):
    """``{l*p + (1-l)*q : p in a, q in b, 0 < l < 1}`` as an NNC polyhedron."""
    n = a.dim
    # variables: x (n) | u (n) | v (n) | lam
    total = 3 * n + 1
    xs = list(range(n))
    us = list(range(n, 2 * n))
    vs = list(range(2 * n, 3 * n))
    lam = 3 * n
    cs = []
    for i in range(n):
        row = [Fraction(0)] * total
        row[xs[i]] = Fraction(1)
        row[us[i]] = Fraction(-1)
        row[vs[i]] = Fraction(-1)
        cs.append(LinearConstraint(tuple(row), "=", 0))
    for c in a.constraints:
        row = [Fraction(0)] * total
        for v, j in zip(c.coeffs, us):
            row[j] = v
        row[lam] = -c.rhs
        cs.append(LinearConstraint(tuple(row), c.relation, 0))
    for c in b.constraints:
        # c.coeffs . v  rel  c.rhs * (1 - lam)
        row = [Fraction(0)] * total
        for v, j in zip(c.coeffs, vs):
            row[j] = v
        row[lam] = c.rhs
        cs.append(LinearConstraint(tuple(row), c.relation, c.rhs))
    unit_lam = tuple(Fraction(int(j == lam)) for j in range(total))
    cs.append(gt(unit_lam, 0))
    cs.append(lt(unit_lam, 1))
    lifted = NNCPolyhedron(total, cs)
    return lifted.project(xs)


def lift_product(blocks, total_dim, extra=()):
    """Union over all piece choices of the intersection of embedded blocks.

    ``blocks`` is a list of ``(NNCSet or NNCPolyhedron, coords)``.
    """
    choices = [NNCSet.of(s).pieces for s, _ in blocks]
    out = []
    for combo in product(*choices):
        cs = list(extra)
        for piece, (_, coords) in zip(combo, blocks):
            cs.extend(piece.embed(total_dim, coords).constraints)
        out.append(NNCPolyhedron(total_dim, cs))
    return NNCSet(total_dim, out)
