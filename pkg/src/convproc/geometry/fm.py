"""Fourier-Motzkin projection for NNC polyhedra.

Equalities are used for substitution first.  Inequalities are then eliminated
one variable at a time, choosing the variable with the fewest
positive/negative pairs; a combined row is strict when either parent is.
Rows are scaled to primitive integer directions and duplicates merged; exact
redundancy removal runs only once the row count grows past a threshold.
"""

from ..errors import MalformedInputError
from ..rational import primitive
from .polyhedron import LinearConstraint, NNCPolyhedron


def _substitute(c, e, k):
    """Eliminate variable ``k`` from ``c`` using equality ``e`` (e.coeffs[k] != 0)."""
    f = c.coeffs[k] / e.coeffs[k]
    if f == 0:
        return c
    coeffs = tuple(a - f * b for a, b in zip(c.coeffs, e.coeffs))
    return LinearConstraint(coeffs, c.relation, c.rhs - f * e.rhs)


def _combine(p, n, k):
    # p has positive, n negative coefficient on k
    fp = p.coeffs[k]
    fn = -n.coeffs[k]
    coeffs = tuple(fn * a + fp * b for a, b in zip(p.coeffs, n.coeffs))
    rel = "<" if "<" in (p.relation, n.relation) else "<="
    return LinearConstraint(coeffs, rel, fn * p.rhs + fp * n.rhs)


def _tighten(dim, rows):
    """Scale rows to primitive directions and keep the tightest per direction."""
    best = {}
    eqs = []
    for c in rows:
        if c.relation == "=":
            eqs.append(c)
            continue
        if c.is_trivial():
            if c.trivially_true():
                continue
            return [c]
        key = primitive(c.coeffs)
        i = next(j for j, x in enumerate(key) if x != 0)
        c = LinearConstraint(key, c.relation, c.rhs * key[i] / c.coeffs[i])
        old = best.get(key)
        if old is None or c.rhs < old.rhs or (c.rhs == old.rhs and c.relation == "<"):
            best[key] = c
    return eqs + list(best.values())


_MINIMIZE_AT = 8


def _minimized_on_support(poly):
    """``poly.minimized()`` computed on the coordinates some row actually uses."""
    sup = [j for j in range(poly.dim) if any(c.coeffs[j] != 0 for c in poly.constraints)]
    if len(sup) == poly.dim:
        return poly.minimized()
    small = NNCPolyhedron(len(sup), [LinearConstraint(tuple(c.coeffs[j] for j in sup), c.relation, c.rhs)
                                     for c in poly.constraints]).minimized()
    return NNCPolyhedron(poly.dim, [c.embed(poly.dim, sup) for c in small.constraints])


def eliminate(poly, variables):
    """Return a polyhedron in the same space with ``variables`` projected out.

    The result has zero coefficients on the eliminated variables.
    """
    dim = poly.dim
    if poly.is_empty():
        return NNCPolyhedron.empty(dim)
    todo = set(variables)
    rows = list(poly.constraints)
    # equalities first
    progress = True
    while progress:
        progress = False
        for e in rows:
            if e.relation != "=":
                continue
            k = next((k for k in sorted(todo) if e.coeffs[k] != 0), None)
            if k is None:
                continue
            rows = [_substitute(c, e, k) for c in rows if c is not e]
            todo.discard(k)
            progress = True
            break
    cur = NNCPolyhedron(dim, rows)
    if cur.is_empty():
        return NNCPolyhedron.empty(dim)
    rows = list(cur.constraints)
    while todo:
        live = [k for k in todo if any(c.coeffs[k] != 0 for c in rows)]
        for k in todo - set(live):
            todo.discard(k)
        if not live:
            break

        def cost(k):
            pos = sum(1 for c in rows if c.coeffs[k] > 0)
            neg = sum(1 for c in rows if c.coeffs[k] < 0)
            return (pos * neg - pos - neg, k)

        k = min(live, key=cost)
        pos = [c for c in rows if c.coeffs[k] > 0]
        neg = [c for c in rows if c.coeffs[k] < 0]
        rest = [c for c in rows if c.coeffs[k] == 0]
        new = rest + [_combine(p, n, k) for p in pos for n in neg]
        todo.discard(k)
        cur = NNCPolyhedron(dim, _tighten(dim, new))
        # LP-based redundancy removal only once the system starts to grow
        if len(cur.constraints) > max(_MINIMIZE_AT, len(rows)):
            if cur.is_empty():
                return NNCPolyhedron.empty(dim)
            cur = _minimized_on_support(cur)
        rows = list(cur.constraints)
    cur = NNCPolyhedron(dim, rows)
    return NNCPolyhedron.empty(dim) if cur.is_empty() else cur


def project(poly, keep):
    """Exact image of ``poly`` under the coordinate projection onto ``keep``."""
    keep = list(keep)
    if not keep:
        raise MalformedInputError("projection onto an empty coordinate set")
    if any(k < 0 or k >= poly.dim for k in keep) or len(set(keep)) != len(keep):
        raise MalformedInputError(f"bad coordinate set {keep} for dimension {poly.dim}")
    drop = [j for j in range(poly.dim) if j not in keep]
    if poly.is_empty():
        return NNCPolyhedron.empty(len(keep))
    reduced = eliminate(poly, drop)
    rows = []
    for c in reduced.constraints:
        rows.append(LinearConstraint(tuple(c.coeffs[j] for j in keep), c.relation, c.rhs))
    return NNCPolyhedron(len(keep), rows).minimized()
