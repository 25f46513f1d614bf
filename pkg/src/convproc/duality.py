"""The dual program: Phi evaluation, weak duality checks and strong duality witnesses.

``Phi(Delta)`` is the set of points of cl Psi(Delta) that are nondominated by
Psi(Delta).  Only membership is decided; Phi is never enumerated.
"""

from .errors import SlaterViolatedError
from .geometry import LinearFunctional, NNCSet, lift_product
from .multiplier import intersection_property, multiplier_certificate, psi_set
from .order import is_minimal, is_nondominated
from .program import _cone_rows
from .rational import neg, sub, vec
from .reports import Certificate


def phi_member(inst, delta, y, psi=None):
    y = vec(y)
    psi = psi_set(inst, delta) if psi is None else psi
    return psi.closure_contains(y) and is_nondominated(y, psi, inst.yplus)


def upper_set(a, yplus):
    """``a + Y+`` for an NNC set ``a``."""
    a = NNCSet.of(a)
    n = a.dim
    rows = _cone_rows(yplus.cone, list(range(n, 2 * n)), list(range(n)), 2 * n)
    return lift_product([(a, list(range(n)))], 2 * n, rows).project(range(n, 2 * n)).minimized()


def on_upper_boundary(psi, y, yplus):
    """``y`` in bd(psi + Y+).

    For a set absorbing Y+ a point is interior iff something of ``psi`` lies
    in ``y - int Y+``, which keeps the test polyhedral.
    """
    y = vec(y)
    if not upper_set(psi, yplus).closure_contains(y):
        return False
    return NNCSet.of(psi).intersect(yplus.strictly_below(y)).is_empty()


def weak_duality_check(inst, y0, delta, y1, psi=None):
    y0, y1 = vec(y0), vec(y1)
    cert = Certificate("weak duality")
    if not cert.add("y0 in ND(P(0))", "y0 in cl V(0), nondominated by V(0)", inst.is_nd_point(y0),
                    kind="precondition", y0=y0):
        return cert
    if not cert.add("y1 in Phi(Delta)", "y1 in cl Psi(Delta), nondominated by Psi(Delta)",
                    phi_member(inst, delta, y1, psi), kind="precondition", y1=y1):
        return cert
    diff = sub(y1, y0)
    cert.add("no y1 > y0", "y1 - y0 not in int Y+", not inst.yplus.cone.interior_contains(diff),
             difference=diff)
    return cert


def strong_duality_witness(inst, y0, built=None, psi=None):
    """Build ``Delta0`` from the separator and certify ``y0`` in Phi(Delta0).

    A multiplier already built for ``y0`` (and its Psi) may be passed in.
    """
    y0 = vec(y0)
    ok, x1 = inst.slater()
    if not ok:
        raise SlaterViolatedError("no Slater point: strong duality witness unavailable")
    if built is None:
        cert, s, pair, built = multiplier_certificate(inst, y0)
    else:
        cert = Certificate("strong duality")
        t = built.functional.coeffs
        pair = (LinearFunctional(neg(t[:inst.nz])), LinearFunctional(t[inst.nz:]))
    cert.title = "strong duality"
    delta = built.process
    psi = psi_set(inst, delta) if psi is None else psi
    cert.add("Slater", "some x1 in Omega with G(x1) ∩ -int Z+ nonempty", True, kind="precondition", x1=x1)
    cert.add("y0 in Phi(Delta0)", "y0 in cl Psi(Delta0), nondominated by Psi(Delta0)",
             phi_member(inst, delta, y0, psi), z_star=pair[0].coeffs, y_star=pair[1].coeffs)
    x0 = inst.achieving_point(y0)
    if x0 is not None and inst.is_min_point(y0):
        cert.add("achieved at x0", "y0 in F(x0) + Delta0(G(x0) + Z+), minimal in Psi(Delta0)",
                 psi.contains(y0) and is_minimal(y0, psi, inst.yplus), x0=x0)
        meet, holds, _ = intersection_property(inst, delta, x0)
        cert.add("intersection", "Delta0(G(x0) + Z+) ∩ (-Y+) ⊆ Y+ ∩ (-Y+)", holds, intersection=meet)
    cert.add("weak maximality", "WMax(D(0)) membership is certified-consistent only "
             "(it quantifies over every process)", True, kind="info")
    return delta, cert
