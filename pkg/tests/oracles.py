"""Brute-force oracles used by the tests.

Nothing here imports the package: membership is decided by enumerating
subsets of generators and solving small exact linear systems, so a shared
bug in the library's LP, double description or elimination cannot hide.
"""

from fractions import Fraction
from itertools import combinations


def F(x):
    return Fraction(x)


def solve(rows, rhs):
    """Unique solution of a square or overdetermined consistent system, else None."""
    m = [[F(a) for a in r] + [F(b)] for r, b in zip(rows, rhs)]
    n = len(rows[0]) if rows else 0
    piv = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        m[r] = [v / m[r][c] for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        piv.append(c)
        r += 1
    if any(all(v == 0 for v in row[:-1]) and row[-1] != 0 for row in m):
        return None
    if len(piv) < n:
        return None
    x = [F(0)] * n
    for i, c in enumerate(piv):
        x[c] = m[i][-1]
    return x


def in_cone(x, rays, lines=()):
    """``x`` in cone(rays) + span(lines), by Caratheodory over generator subsets."""
    x = [F(v) for v in x]
    n = len(x)
    gens = [list(map(F, r)) for r in rays]
    lns = [list(map(F, l)) for l in lines]
    if all(v == 0 for v in x):
        return True
    signed = [(g, True) for g in gens] + [(l, False) for l in lns] + [([-v for v in l], False) for l in lns]
    for k in range(1, min(n, len(signed)) + 1):
        for sub in combinations(signed, k):
            cols = [g for g, _ in sub]
            rows = [[cols[j][i] for j in range(k)] for i in range(n)]
            lam = solve(rows, x)
            if lam is not None and all(v >= 0 for v in lam):
                return True
    return False


def in_hull(x, points, rays=(), closure_points=()):
    """``x`` in conv(points) + cone(rays), or in the relative hull with closure points."""
    x = [F(v) for v in x]
    lifted = [list(map(F, p)) + [F(1)] for p in points] + [list(map(F, c)) + [F(1)] for c in closure_points]
    lifted += [list(map(F, r)) + [F(0)] for r in rays]
    return in_cone(x + [F(1)], lifted)


def satisfies(x, rows):
    """``rows`` are ``(coeffs, rel, rhs)`` with rel in '<=', '<', '='."""
    for a, rel, b in rows:
        v = sum(F(p) * F(q) for p, q in zip(a, x))
        if rel == "<=" and not v <= b:
            return False
        if rel == "<" and not v < b:
            return False
        if rel == "=" and v != b:
            return False
    return True


def last_coordinate_interval(rows, prefix):
    """Feasible values of the last coordinate once the others are fixed to ``prefix``.

    Returns ``(lo, lo_strict, hi, hi_strict)`` with None for unbounded, or
    None when empty.
    """
    lo = hi = None
    lo_s = hi_s = False
    for a, rel, b in rows:
        a = [F(v) for v in a]
        rest = F(b) - sum(p * F(q) for p, q in zip(a[:-1], prefix))
        c = a[-1]
        strict = rel == "<"
        if c == 0:
            if rel == "=" and rest != 0:
                return None
            if rel == "<=" and rest < 0:
                return None
            if rel == "<" and rest <= 0:
                return None
            continue
        bound = rest / c
        kinds = ["hi", "lo"] if rel == "=" else (["hi"] if c > 0 else ["lo"])
        for kind in kinds:
            if kind == "hi":
                if hi is None or bound < hi:
                    hi, hi_s = bound, strict
                elif bound == hi:
                    hi_s = hi_s or strict
            else:
                if lo is None or bound > lo:
                    lo, lo_s = bound, strict
                elif bound == lo:
                    lo_s = lo_s or strict
    if lo is not None and hi is not None:
        if lo > hi or (lo == hi and (lo_s or hi_s)):
            return None
    return lo, lo_s, hi, hi_s


def grid(dim, lo, hi, den):
    """All points with coordinates in ``{lo, lo + 1/den, ..., hi}``."""
    vals = [Fraction(k, den) for k in range(lo * den, hi * den + 1)]
    out = [[]]
    for _ in range(dim):
        out = [p + [v] for p in out for v in vals]
    return [tuple(p) for p in out]


def dominates(a, b, cone_rays):
    """``b - a`` in cone(rays) minus 0 (i.e. ``a`` strictly below ``b``)."""
    d = [F(p) - F(q) for p, q in zip(b, a)]
    return any(v != 0 for v in d) and in_cone(d, cone_rays)


def pareto_min(points, cone_rays):
    """Minimal elements of a finite point set."""
    pts = [tuple(map(F, p)) for p in points]
    return sorted({p for p in pts if not any(dominates(q, p, cone_rays) for q in pts)})
