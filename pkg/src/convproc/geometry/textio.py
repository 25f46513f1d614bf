"""Plain-text format for polyhedra, unions and cones.

A document is a sequence of blocks::

    nnc 2
    0 -1 < 0
    1 1 <= 3
    point 2 1
    closure_point 3 0
    ray -1 0
    end

One constraint per line (coefficients, relation ``<=``, ``<`` or ``=``, right
hand side); rationals are written ``p`` or ``p/q``.  Generator lines start
with ``point``, ``closure_point`` or ``ray``; lines of the lineality space
are written as two opposite rays.  A ``cone`` block holds a closed
polyhedral cone.  Several ``nnc`` blocks form a union.  Constraints are
authoritative when both descriptions are present; a block with generators
only is converted.
"""

from ..errors import MalformedInputError
from ..rational import fmt_vec, neg, parse_point, q
from .cones import PolyhedralCone
from .polyhedron import RELATIONS, LinearConstraint, NNCPolyhedron, NNCSet

_GEN_KINDS = ("point", "closure_point", "ray")


def _generator_lines(p):
    out = []
    if isinstance(p, PolyhedralCone):
        out.append("point " + fmt_vec((0,) * p.dim))
        for r in p.all_directions():
            out.append("ray " + fmt_vec(r))
        return out
    g = p.generators
    for x in g.points:
        out.append("point " + fmt_vec(x))
    for x in g.closure_points:
        out.append("closure_point " + fmt_vec(x))
    for r in list(g.rays) + list(g.lines) + [neg(l) for l in g.lines]:
        out.append("ray " + fmt_vec(r))
    return out


def dumps_polyhedron(p, generators=True):
    kind = "cone" if isinstance(p, PolyhedralCone) else "nnc"
    lines = [f"{kind} {p.dim}"]
    lines += [str(c) for c in p.constraints]
    if generators:
        lines += _generator_lines(p)
    lines.append("end")
    return "\n".join(lines) + "\n"


def dumps(obj, generators=True):
    if isinstance(obj, NNCSet):
        if obj.is_empty():
            return dumps_polyhedron(NNCPolyhedron.empty(obj.dim), generators)
        return "".join(dumps_polyhedron(p, generators) for p in obj.pieces)
    return dumps_polyhedron(obj, generators)


def _parse_block(kind, dim, body, lineno):
    constraints = []
    gens = {k: [] for k in _GEN_KINDS}
    for n, line in body:
        tokens = line.split()
        if tokens[0] in _GEN_KINDS:
            v = parse_point(" ".join(tokens[1:]))
            if len(v) != dim:
                raise MalformedInputError(f"line {n}: generator has {len(v)} entries, expected {dim}")
            gens[tokens[0]].append(v)
            continue
        rel_at = [i for i, t in enumerate(tokens) if t in RELATIONS]
        if len(rel_at) != 1 or rel_at[0] != len(tokens) - 2:
            raise MalformedInputError(f"line {n}: cannot parse constraint {line!r}")
        coeffs = tuple(q(t) for t in tokens[:-2])
        if len(coeffs) != dim:
            raise MalformedInputError(f"line {n}: constraint has {len(coeffs)} coefficients, expected {dim}")
        constraints.append(LinearConstraint(coeffs, tokens[-2], q(tokens[-1])))
    if kind == "cone":
        if constraints:
            return PolyhedralCone(dim, constraints)
        return PolyhedralCone.from_generators(dim, gens["ray"])
    if constraints or not any(gens.values()):
        return NNCPolyhedron(dim, constraints)
    return NNCPolyhedron.from_nnc_generators(dim, gens["point"], gens["closure_point"], gens["ray"])


def loads(text):
    """Parse a document; one block gives a polyhedron or cone, several a union."""
    blocks = []
    header = None
    body = []
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if header is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] not in ("nnc", "cone"):
                raise MalformedInputError(f"line {n}: expected 'nnc <dim>' or 'cone <dim>'")
            try:
                header = (parts[0], int(parts[1]), n)
            except ValueError:
                raise MalformedInputError(f"line {n}: bad dimension {parts[1]!r}") from None
            body = []
        elif line == "end":
            blocks.append(_parse_block(header[0], header[1], body, header[2]))
            header = None
        else:
            body.append((n, line))
    if header is not None:
        raise MalformedInputError("unterminated block (missing 'end')")
    if not blocks:
        raise MalformedInputError("no polyhedron in document")
    if len(blocks) == 1:
        return blocks[0]
    dims = {b.dim for b in blocks}
    if len(dims) != 1:
        raise MalformedInputError("union pieces have different dimensions")
    return NNCSet(dims.pop(), blocks)
