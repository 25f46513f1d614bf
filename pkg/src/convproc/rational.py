"""Rational scalars and small exact vector helpers.

All arithmetic in the package goes through :class:`fractions.Fraction`;
vectors are plain tuples of fractions.
"""

from fractions import Fraction
from math import gcd

from .errors import MalformedInputError

Rational = Fraction


def q(value):
    """Coerce ``value`` (int, Fraction or "p/q" string) to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise MalformedInputError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise MalformedInputError(f"not a rational: {value!r}") from None
    if isinstance(value, float):
        # floats are only accepted when they are exact small dyadics
        raise MalformedInputError(f"floats are not accepted, got {value!r}")
    raise MalformedInputError(f"not a rational: {value!r}")


def vec(values):
    return tuple(q(v) for v in values)


def fmt(x):
    """Format a rational as "p" or "p/q"."""
    x = q(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def fmt_vec(v, sep=" "):
    return sep.join(fmt(x) for x in v)


def parse_point(text):
    """Parse "1/2,0,-3" (commas or whitespace) into a vector."""
    if isinstance(text, (list, tuple)):
        return vec(text)
    parts = [p for p in text.replace(",", " ").split() if p]
    if not parts:
        raise MalformedInputError(f"empty point: {text!r}")
    return vec(parts)


def dot(a, b):
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def scale(c, a):
    return tuple(c * x for x in a)


def neg(a):
    return tuple(-x for x in a)


def zero(n):
    return (Fraction(0),) * n


def is_zero(a):
    return all(x == 0 for x in a)


def unit(n, i):
    return tuple(Fraction(1 if j == i else 0) for j in range(n))


def norm1(a):
    return sum((abs(x) for x in a), Fraction(0))


def norm_inf(a):
    return max((abs(x) for x in a), default=Fraction(0))


def _lcm(a, b):
    return a * b // gcd(a, b)


def primitive(v):
    """Scale ``v`` by a positive factor to a coprime integer vector."""
    v = vec(v)
    if is_zero(v):
        return v
    den = 1
    for x in v:
        den = _lcm(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for k in ints:
        g = gcd(g, abs(k))
    return tuple(Fraction(k // g) for k in ints)


def rank(rows, n=None):
    """Exact rank of a list of vectors."""
    return len(_row_echelon([list(r) for r in rows], n)[0])


def _row_echelon(rows, n=None):
    if n is None:
        n = len(rows[0]) if rows else 0
    rows = [[q(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        rows[r] = [x / p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return pivots, rows[:r]


def nullspace(rows, n):
    """Basis of {x in Q^n : r.x = 0 for every r in rows}."""
    if not rows:
        return [unit(n, i) for i in range(n)]
    pivots, red = _row_echelon([list(r) for r in rows], n)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            x[pc] = -row[f]
        basis.append(primitive(x))
    return basis
