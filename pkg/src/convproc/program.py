"""The parametric program ``P(z)``: min F(x) s.t. x in Omega, G(x) meets z - Z+.

F and G are given by their graphs, Omega by constraints; any of the three may
be a finite union of NNC polyhedra (convexity is checked, not assumed).
Coordinates: ``graphF`` lives in X x Y and ``graphG`` in X x Z, x first.

Instance files are JSON::

    {
      "name": "example",
      "dims": {"x": 2, "y": 2, "z": 1},
      "cones": {"yplus": [["1", "0"], ["0", "1"]], "zplus": [["1"]]},
      "omega": {"union": [[{"a": ["0", "-1"], "rel": "<", "b": "0"}], [...]]},
      "graphF": [{"a": [...], "rel": "=", "b": "0"}, ...],
      "graphG": [...],
      "y0": [["0", "0"]]
    }
"""

import json
from dataclasses import dataclass, field
from functools import cached_property

from .errors import MalformedInputError, PreconditionError
from .geometry import LinearConstraint, NNCPolyhedron, NNCSet, lift_product
from .order import OrderingCone, is_minimal, is_nondominated, minimal_extreme_points
from .rational import fmt, q, vec, zero

# A region is a tuple of pieces, each piece a tuple of LinearConstraint;
# a single piece is a plain constraint list in the file.


def _parse_constraint(obj, dim, where):
    if not isinstance(obj, dict) or set(obj) != {"a", "rel", "b"}:
        raise MalformedInputError(f"{where}: constraint must be an object with keys a, rel, b")
    a = obj["a"]
    if not isinstance(a, list) or len(a) != dim:
        raise MalformedInputError(f"{where}: expected {dim} coefficients, got {a!r}")
    return LinearConstraint(vec(a), obj["rel"], q(obj["b"]))


def _parse_region(obj, dim, where):
    if isinstance(obj, dict):
        if set(obj) != {"union"} or not isinstance(obj["union"], list) or not obj["union"]:
            raise MalformedInputError(f"{where}: expected a constraint list or {{'union': [...]}}")
        return tuple(tuple(_parse_constraint(c, dim, where) for c in piece) for piece in obj["union"])
    if not isinstance(obj, list):
        raise MalformedInputError(f"{where}: expected a constraint list")
    return (tuple(_parse_constraint(c, dim, where) for c in obj),)


def _dump_constraint(c):
    return {"a": [fmt(x) for x in c.coeffs], "rel": c.relation, "b": fmt(c.rhs)}


def _dump_region(region):
    if len(region) == 1:
        return [_dump_constraint(c) for c in region[0]]
    return {"union": [[_dump_constraint(c) for c in piece] for piece in region]}


def _region_set(dim, region):
    return NNCSet(dim, [NNCPolyhedron(dim, piece) for piece in region])


def _cone_rows(cone, var_coords, base_coords, total):
    """Rows saying ``x[var] - x[base]`` lies in ``cone`` (base may be None)."""
    rows = []
    for c in cone.constraints:
        coeffs = [0] * total
        for v, j in zip(c.coeffs, var_coords):
            coeffs[j] += v
        if base_coords is not None:
            for v, j in zip(c.coeffs, base_coords):
                coeffs[j] -= v
        rows.append(LinearConstraint(tuple(coeffs), c.relation, 0))
    return rows


@dataclass(frozen=True)
class ProgramInstance:
    nx: int
    ny: int
    nz: int
    yplus_rays: tuple
    zplus_rays: tuple
    omega_region: tuple
    graphF_region: tuple
    graphG_region: tuple
    name: str = "instance"
    y0s: tuple = field(default=())

    # -- construction -----------------------------------------------------

    @classmethod
    def from_dict(cls, data):
        if not isinstance(data, dict):
            raise MalformedInputError("instance must be a JSON object")
        try:
            dims = data["dims"]
            nx, ny, nz = int(dims["x"]), int(dims["y"]), int(dims["z"])
            cones = data["cones"]
            yrays = tuple(vec(r) for r in cones["yplus"])
            zrays = tuple(vec(r) for r in cones["zplus"])
            omega = _parse_region(data["omega"], nx, "omega")
            gf = _parse_region(data["graphF"], nx + ny, "graphF")
            gg = _parse_region(data["graphG"], nx + nz, "graphG")
        except KeyError as exc:
            raise MalformedInputError(f"missing field {exc}") from None
        except (TypeError, ValueError) as exc:
            if isinstance(exc, MalformedInputError):
                raise
            raise MalformedInputError(str(exc)) from None
        if min(nx, ny, nz) < 1:
            raise MalformedInputError("all dimensions must be positive")
        for r in yrays:
            if len(r) != ny:
                raise MalformedInputError(f"yplus ray {r} has wrong dimension")
        for r in zrays:
            if len(r) != nz:
                raise MalformedInputError(f"zplus ray {r} has wrong dimension")
        y0s = tuple(vec(p) for p in data.get("y0", ()))
        for p in y0s:
            if len(p) != ny:
                raise MalformedInputError(f"y0 {p} has wrong dimension")
        extra = set(data) - {"name", "dims", "cones", "omega", "graphF", "graphG", "y0"}
        if extra:
            raise MalformedInputError(f"unknown fields {sorted(extra)}")
        return cls(nx, ny, nz, yrays, zrays, omega, gf, gg, str(data.get("name", "instance")), y0s)

    def to_dict(self):
        out = {
            "name": self.name,
            "dims": {"x": self.nx, "y": self.ny, "z": self.nz},
            "cones": {
                "yplus": [[fmt(x) for x in r] for r in self.yplus_rays],
                "zplus": [[fmt(x) for x in r] for r in self.zplus_rays],
            },
            "omega": _dump_region(self.omega_region),
            "graphF": _dump_region(self.graphF_region),
            "graphG": _dump_region(self.graphG_region),
        }
        if self.y0s:
            out["y0"] = [[fmt(x) for x in p] for p in self.y0s]
        return out

    @classmethod
    def loads(cls, text):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MalformedInputError(f"invalid JSON: {exc}") from None
        return cls.from_dict(data)

    def dumps(self):
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def load(cls, path):
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
        try:
            return cls.loads(text)
        except MalformedInputError as exc:
            raise MalformedInputError(f"{path}: {exc}") from None

    def dump(self, path):
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.dumps())

    # -- basic objects ----------------------------------------------------

    @cached_property
    def yplus(self):
        return OrderingCone.from_rays(self.ny, self.yplus_rays)

    @cached_property
    def zplus(self):
        return OrderingCone.from_rays(self.nz, self.zplus_rays)

    @cached_property
    def omega(self):
        return _region_set(self.nx, self.omega_region)

    @cached_property
    def graphF(self):
        return _region_set(self.nx + self.ny, self.graphF_region)

    @cached_property
    def graphG(self):
        return _region_set(self.nx + self.nz, self.graphG_region)

    # coordinate blocks of the lifted space (x, g, f, z, y)
    @property
    def _X(self):
        return list(range(self.nx))

    @property
    def _G(self):
        return list(range(self.nx, self.nx + self.nz))

    @property
    def _F(self):
        s = self.nx + self.nz
        return list(range(s, s + self.ny))

    @property
    def _Z(self):
        s = self.nx + self.nz + self.ny
        return list(range(s, s + self.nz))

    @property
    def _Y(self):
        s = self.nx + 2 * self.nz + self.ny
        return list(range(s, s + self.ny))

    @property
    def _total(self):
        return self.nx + 2 * (self.nz + self.ny)

    def _lift(self, absorb_y=True, extra=()):
        """Union of polyhedra in (x, g, f, z, y) describing the value graph."""
        t = self._total
        rows = list(extra)
        rows += _cone_rows(self.zplus.cone, self._Z, self._G, t)
        if absorb_y:
            rows += _cone_rows(self.yplus.cone, self._Y, self._F, t)
        else:
            for a, b in zip(self._Y, self._F):
                c = [0] * t
                c[a], c[b] = 1, -1
                rows.append(LinearConstraint(tuple(c), "=", 0))
        return lift_product([(self.omega, self._X),
                             (self.graphG, self._X + self._G),
                             (self.graphF, self._X + self._F)], t, rows)

    # -- derived maps -----------------------------------------------------

    def feasible_set(self, z):
        """``S(z)`` as an NNC set in X."""
        z = self._z(z)
        n = self.nx + self.nz
        xs, gs = list(range(self.nx)), list(range(self.nx, n))
        rows = []
        for c in self.zplus.cone.constraints:
            # z - g in Z+  <=>  c.(z - g) rel 0
            coeffs = [0] * n
            for v, j in zip(c.coeffs, gs):
                coeffs[j] = -v
            rows.append(LinearConstraint(tuple(coeffs), c.relation, -sum(v * w for v, w in zip(c.coeffs, z))))
        lifted = lift_product([(self.omega, xs), (self.graphG, xs + gs)], n, rows)
        return lifted.project(xs).minimized()

    @cached_property
    def value_maps(self):
        return ValueMaps(self)

    def V(self, z):
        return self.value_maps.slice(self._z(z), plus=False)

    def V_plus(self, z):
        return self.value_maps.slice(self._z(z), plus=True)

    def _z(self, z):
        z = vec(z) if not isinstance(z, str) else vec(z.replace(",", " ").split())
        if len(z) != self.nz:
            raise MalformedInputError(f"parameter z has {len(z)} entries, expected {self.nz}")
        return z

    def slater(self):
        """``(flag, x1)``: some x1 in Omega with G(x1) meeting -int Z+."""
        if not self.zplus.solid:
            raise PreconditionError("Slater check needs a solid constraint cone")
        n = self.nx + self.nz
        xs, gs = list(range(self.nx)), list(range(self.nx, n))
        rows = []
        for c in self.zplus.cone.constraints:
            # g in -int Z+  <=>  -c.g < 0 for every facet row c.k <= 0
            coeffs = [0] * n
            for v, j in zip(c.coeffs, gs):
                coeffs[j] = -v
            rows.append(LinearConstraint(tuple(coeffs), "<", 0))
        lifted = lift_product([(self.omega, xs), (self.graphG, xs + gs)], n, rows)
        if lifted.is_empty():
            return False, None
        return True, lifted.witness[:self.nx]

    def marginal_min_points(self, z):
        """Minimal extreme points of V(z); general membership via :meth:`is_marginal`."""
        return minimal_extreme_points(self.V(z), self.yplus)

    def is_marginal(self, z, y):
        return is_minimal(y, self.V(z), self.yplus)

    def is_nd_point(self, y0, z=None):
        """``y0`` in ND(P(z)): in cl V(z) and nondominated by V(z)."""
        v = self.V(zero(self.nz) if z is None else z)
        y0 = vec(y0)
        return v.closure_contains(y0) and is_nondominated(y0, v, self.yplus)

    def is_min_point(self, y0):
        return is_minimal(vec(y0), self.V(zero(self.nz)), self.yplus)

    def achieving_point(self, y0):
        """A feasible x0 for P(0) with y0 in F(x0), or None."""
        y0 = vec(y0)
        t = self._total
        rows = []
        for j, v in zip(self._Z, zero(self.nz)):
            rows.append(LinearConstraint(tuple(int(i == j) for i in range(t)), "=", v))
        for j, v in zip(self._F, y0):
            rows.append(LinearConstraint(tuple(int(i == j) for i in range(t)), "=", v))
        lifted = self._lift(absorb_y=False, extra=rows)
        if lifted.is_empty():
            return None
        return lifted.witness[:self.nx]

    def G_plus(self, x):
        """``G(x) + Z+`` as an NNC set in Z."""
        x = vec(x)
        n = self.nx + 2 * self.nz
        xs = list(range(self.nx))
        gs = list(range(self.nx, self.nx + self.nz))
        zs = list(range(self.nx + self.nz, n))
        rows = _cone_rows(self.zplus.cone, zs, gs, n)
        for j, v in zip(xs, x):
            rows.append(LinearConstraint(tuple(int(i == j) for i in range(n)), "=", v))
        lifted = lift_product([(self.graphG, xs + gs)], n, rows)
        return lifted.project(zs).minimized()

    # -- validation -------------------------------------------------------

    def epigraph_F(self):
        return _epigraph(self.graphF, self.nx, self.ny, self.yplus)

    def epigraph_G(self):
        return _epigraph(self.graphG, self.nx, self.nz, self.zplus)

    def validate(self):
        """List of ``(check, passed, message)``; nothing raises."""
        out = []
        out.append(("omega convex", self.omega.is_convex(), "Omega must be convex"))
        out.append(("Epi F convex", self.epigraph_F().is_convex(), "F must be Y+-convex"))
        out.append(("Epi G convex", self.epigraph_G().is_convex(), "G must be Z+-convex"))
        for label, c in (("Y+", self.yplus), ("Z+", self.zplus)):
            out.append((f"{label} proper", c.proper, f"{label} must be proper"))
            out.append((f"{label} solid", c.solid, f"{label} must be solid"))
        out.append(("Y+ pointed", self.yplus.pointed,
                    "pointedness of Y+ is required for the sensitivity features"))
        return out

    def is_valid(self):
        return all(ok for _, ok, _ in self.validate())


def _epigraph(graph, nx, ny, cone):
    n = nx + 2 * ny
    xs = list(range(nx))
    fs = list(range(nx, nx + ny))
    ys = list(range(nx + ny, n))
    rows = _cone_rows(cone.cone, ys, fs, n)
    return lift_product([(graph, xs + fs)], n, rows).project(xs + ys).minimized()


class ValueMaps:
    """Graphs of V and V + Y+ in Z x Y, obtained by projecting the lifted set."""

    def __init__(self, inst):
        self.inst = inst
        self.nz, self.ny = inst.nz, inst.ny

    @cached_property
    def graph_V(self):
        i = self.inst
        return i._lift(absorb_y=False).project(i._Z + i._Y).minimized()

    @cached_property
    def graph_V_plus(self):
        i = self.inst
        return i._lift(absorb_y=True).project(i._Z + i._Y).minimized()

    def slice(self, z, plus=True):
        g = self.graph_V_plus if plus else self.graph_V
        n = self.nz + self.ny
        rows = [LinearConstraint(tuple(int(i == j) for i in range(n)), "=", v) for j, v in enumerate(z)]
        return g.with_constraints(rows).project(range(self.nz, n)).minimized()

