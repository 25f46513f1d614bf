"""Double description method for polyhedral cones.

The cone is ``{y : m.y >= 0 for m in ineqs, e.y = 0 for e in eqs}``.  The
result is a pair ``(rays, lines)``: extreme rays modulo the lineality space,
and a basis of that space.  Adjacency uses the combinatorial test on zero
sets, which is valid because every intermediate ray list is irredundant.
"""

from fractions import Fraction

from ..rational import dot, primitive, unit, is_zero


def _combine(p, n, mp, mn):
    # mp > 0 > mn; the result vanishes on the current constraint
    return primitive(tuple(mp * b - mn * a for a, b in zip(p, n)))


def cone_generators(dim, ineqs=(), eqs=()):
    """Return ``(rays, lines)`` of the cone given in constraint form."""
    constraints = [tuple(m) for m in ineqs]
    for e in eqs:
        constraints.append(tuple(e))
        constraints.append(tuple(-x for x in e))
    lines = [unit(dim, i) for i in range(dim)]
    rays = []  # list of (vector, frozenset of zero indices)
    for k, m in enumerate(constraints):
        if is_zero(m):
            continue
        i0 = next((i for i, l in enumerate(lines) if dot(m, l) != 0), None)
        if i0 is not None:
            l0 = lines[i0]
            v0 = dot(m, l0)
            if v0 < 0:
                l0 = tuple(-x for x in l0)
                v0 = -v0
            new_lines = []
            for i, l in enumerate(lines):
                if i == i0:
                    continue
                c = dot(m, l)
                if c != 0:
                    l = tuple(a - (c / v0) * b for a, b in zip(l, l0))
                new_lines.append(primitive(l))
            lines = new_lines
            new_rays = []
            for r, z in rays:
                c = dot(m, r)
                if c != 0:
                    r = primitive(tuple(a - (c / v0) * b for a, b in zip(r, l0)))
                new_rays.append((r, z | {k}))
            # l0 is zero on all previous constraints but positive on this one
            prev = frozenset(range(k))
            new_rays.append((primitive(l0), prev))
            rays = new_rays
            continue
        pos, zer, negs = [], [], []
        for r, z in rays:
            c = dot(m, r)
            if c > 0:
                pos.append((r, z, c))
            elif c < 0:
                negs.append((r, z, c))
            else:
                zer.append((r, z | {k}))
        new_rays = [(r, z) for r, z, _ in pos] + zer
        if pos and negs:
            all_z = [z for _, z in rays]
            index = {r: i for i, (r, _) in enumerate(rays)}
            for p, zp, cp in pos:
                ip = index[p]
                for n, zn, cn in negs:
                    common = zp & zn
                    adjacent = True
                    inn = index[n]
                    for i, z in enumerate(all_z):
                        if i == ip or i == inn:
                            continue
                        if common <= z:
                            adjacent = False
                            break
                    if adjacent:
                        new_rays.append((_combine(p, n, cp, cn), common | {k}))
        rays = new_rays
    out = []
    seen = set()
    for r, _ in rays:
        if is_zero(r) or r in seen:
            continue
        seen.add(r)
        out.append(r)
    return out, lines


def dual_constraints(dim, rays=(), lines=()):
    """Constraint form of ``cone(rays) + span(lines)``.

    Returns ``(ineqs, eqs)`` with the cone equal to
    ``{y : a.y >= 0 for a in ineqs, e.y = 0 for e in eqs}``.
    """
    ineqs, eqs = cone_generators(dim, ineqs=rays, eqs=lines)
    return ineqs, eqs


def canonical_vectors(vectors):
    return sorted({primitive(v) for v in vectors if not is_zero(v)})


def as_fractions(v):
    return tuple(Fraction(x) for x in v)
