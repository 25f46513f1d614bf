"""Exact two-phase simplex over the rationals.

Only what the polyhedral kernel needs: optimize a linear objective over
``{x free : A x <= b, E x = d}`` and decide feasibility of systems that mix
strict and non-strict inequalities.  Bland's rule keeps it finite.
"""

from fractions import Fraction
from functools import lru_cache

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_ZERO = Fraction(0)
_ONE = Fraction(1)


class LPResult:
    __slots__ = ("status", "x", "value")

    def __init__(self, status, x=None, value=None):
        self.status = status
        self.x = x
        self.value = value

    def __repr__(self):
        return f"LPResult({self.status!r}, x={self.x}, value={self.value})"


def _pivot(T, obj, basis, r, c):
    row = T[r]
    p = row[c]
    if p != _ONE:
        T[r] = row = [x / p if x else x for x in row]
    nz = [(j, b) for j, b in enumerate(row) if b]
    for other in T:
        if other is not row:
            f = other[c]
            if f:
                for j, b in nz:
                    other[j] -= f * b
    f = obj[c]
    if f:
        for j, b in nz:
            obj[j] -= f * b
    basis[r] = c


def _run(T, obj, basis, allowed):
    """Maximize; ``obj`` holds reduced costs (negative = improving)."""
    while True:
        col = next((j for j in allowed if obj[j] < _ZERO), None)
        if col is None:
            return OPTIMAL
        best = None
        for i, row in enumerate(T):
            a = row[col]
            if a > _ZERO:
                ratio = row[-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return UNBOUNDED
        _pivot(T, obj, basis, best[1], col)


def optimize(n, ineqs=(), eqs=(), objective=None):
    """Maximize ``objective . x`` subject to ``a.x <= b`` and ``e.x = d``.

    ``ineqs`` and ``eqs`` are sequences of ``(coeffs, rhs)`` pairs over ``n``
    free variables.  With ``objective=None`` only feasibility is decided.
    """
    rows = []
    for a, b in ineqs:
        rows.append((list(a), Fraction(b), True))
    for a, b in eqs:
        rows.append((list(a), Fraction(b), False))
    m = len(rows)
    n_slack = sum(1 for r in rows if r[2])
    # columns: u (n) | v (n) | slacks | artificials
    base = 2 * n + n_slack
    T = []
    basis = []
    art_rows = []
    s = 0
    for a, b, is_ineq in rows:
        line = [Fraction(x) for x in a] + [-Fraction(x) for x in a] + [_ZERO] * n_slack
        slack_col = None
        if is_ineq:
            line[2 * n + s] = _ONE
            slack_col = 2 * n + s
            s += 1
        if b < 0:
            line = [-x for x in line]
            b = -b
        if slack_col is not None and line[slack_col] == _ONE:
            basis.append(slack_col)
        else:
            basis.append(None)
            art_rows.append(len(T))
        T.append(line + [b])
    n_art = len(art_rows)
    ncols = base + n_art
    for k, i in enumerate(art_rows):
        row = T[i]
        T[i] = row[:-1] + [_ZERO] * n_art + [row[-1]]
        T[i][base + k] = _ONE
        basis[i] = base + k
    for i in range(m):
        if len(T[i]) != ncols + 1:
            T[i] = T[i][:-1] + [_ZERO] * n_art + [T[i][-1]]

    if n_art:
        # phase 1: maximize -sum(artificials)
        obj = [_ZERO] * (ncols + 1)
        for k in range(n_art):
            obj[base + k] = _ONE
        for i in art_rows:
            obj = [o - t for o, t in zip(obj, T[i])]
        _run(T, obj, basis, range(ncols))
        if obj[-1] != _ZERO:
            return LPResult(INFEASIBLE)
        # drive artificials out of the basis
        keep = []
        for i in range(len(T)):
            if basis[i] >= base:
                col = next((j for j in range(base) if T[i][j] != _ZERO), None)
                if col is None:
                    continue
                _pivot(T, obj, basis, i, col)
            keep.append(i)
        T = [T[i][:base] + [T[i][-1]] for i in keep]
        basis = [basis[i] for i in keep]
        ncols = base

    if objective is None:
        x = _extract(T, basis, n)
        return LPResult(OPTIMAL, x, _ZERO)

    c = [Fraction(v) for v in objective] + [-Fraction(v) for v in objective] + [_ZERO] * n_slack
    obj = [-v for v in c] + [_ZERO]
    for i, bcol in enumerate(basis):
        f = obj[bcol]
        if f != _ZERO:
            obj = [o - f * t for o, t in zip(obj, T[i])]
    status = _run(T, obj, basis, range(ncols))
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED)
    x = _extract(T, basis, n)
    return LPResult(OPTIMAL, x, obj[-1])


def _extract(T, basis, n):
    vals = {}
    for i, bcol in enumerate(basis):
        vals[bcol] = T[i][-1]
    return tuple(vals.get(j, _ZERO) - vals.get(n + j, _ZERO) for j in range(n))


@lru_cache(maxsize=200_000)
def find_point(n, rows):
    """Return a point satisfying every ``(coeffs, rel, rhs)`` row, or None.

    ``rel`` is one of "<=", "<", "=".  Strict rows are handled by
    maximizing a common slack ``t <= 1``.
    """
    ineqs = []
    eqs = []
    strict = []
    for a, rel, b in rows:
        if rel == "=":
            eqs.append((a, b))
        elif rel == "<=":
            ineqs.append((a, b))
        elif rel == "<":
            strict.append((a, b))
        else:
            raise ValueError(f"unknown relation {rel!r}")
    if not strict:
        res = optimize(n, ineqs, eqs)
        return res.x if res.status == OPTIMAL else None
    zero = (_ZERO,)
    ineqs2 = [(tuple(a) + zero, b) for a, b in ineqs]
    ineqs2 += [(tuple(a) + (_ONE,), b) for a, b in strict]
    ineqs2.append(((_ZERO,) * n + (_ONE,), _ONE))
    eqs2 = [(tuple(a) + zero, b) for a, b in eqs]
    obj = (_ZERO,) * n + (_ONE,)
    res = optimize(n + 1, ineqs2, eqs2, obj)
    if res.status != OPTIMAL or res.value <= 0:
        return None
    return res.x[:n]
