"""Command-line front end.

Every command builds a :class:`RunReport`; the exit code is 0 when all its
certificates pass, 1 when one fails and 2 on a precondition or input error.
Instances are JSON files; bundled ones can be named without a path
(``example3``, ``example3.json``).
"""

import argparse
import sys
import time
from pathlib import Path

from . import corpus
from .errors import ConvprocError, MalformedInputError
from .geometry import NNCPolyhedron, NNCSet, PolyhedralCone, textio
from .program import ProgramInstance
from .rational import fmt_vec, parse_point
from .reports import Certificate, RunReport

COMMANDS = (
    "validate", "feasible", "value-graph", "nd-check", "s-cone", "build-multiplier",
    "verify-multiplier", "psi", "phi-member", "weak-dual", "strong-dual", "lagrange-process",
    "derivative-check", "sensitivity", "scalar-check", "corpus-run",
)


def resolve_instance(name):
    p = Path(name)
    if p.is_file():
        return ProgramInstance.load(p)
    for cand in (corpus.DATA_DIR / name, corpus.DATA_DIR / f"{name}.json", corpus.DATA_DIR / p.name):
        if cand.is_file():
            return ProgramInstance.load(cand)
    raise MalformedInputError(f"{name}: no such instance file or bundled instance")


def _point(text, dim, what):
    if text is None:
        raise MalformedInputError(f"--{what} is required")
    pt = parse_point(text)
    if len(pt) != dim:
        raise MalformedInputError(f"--{what} has dimension {len(pt)}, expected {dim}")
    return pt


def _y0(args, inst):
    if args.y0 is None and inst.y0s:
        return inst.y0s[0]
    return _point(args.y0, inst.ny, "y0")


def _z_list(args, inst, default=None):
    if not args.z:
        if default is None:
            raise MalformedInputError("--z is required")
        return default
    return [_point(z, inst.nz, "z") for z in args.z]


def _delta(args, inst, y0):
    """The process given by ``--delta`` (a ``cone`` block), or the one built for ``y0``."""
    from .multiplier import PolyhedralProcess, multiplier_certificate
    if args.delta is None:
        _, _, _, built = multiplier_certificate(inst, y0)
        return built.process
    path = Path(args.delta)
    try:
        obj = textio.loads(path.read_text())
    except OSError as exc:
        raise MalformedInputError(f"{path}: {exc.strerror}") from None
    except MalformedInputError as exc:
        raise MalformedInputError(f"{path}: {exc}") from None
    if isinstance(obj, (NNCPolyhedron, NNCSet)) and not isinstance(obj, PolyhedralCone):
        raise MalformedInputError(f"{path}: a process graph must be a 'cone' block")
    if obj.dim != inst.nz + inst.ny:
        raise MalformedInputError(f"{path}: graph dimension {obj.dim}, expected {inst.nz + inst.ny}")
    return PolyhedralProcess(obj, inst.nz, inst.ny, label=path.name)


def _set_text(s):
    s = NNCSet.of(s)
    return "empty" if s.is_empty() else textio.dumps(s, generators=True).rstrip("\n").split("\n")


# -- commands ------------------------------------------------------------------


def cmd_validate(args, inst, rep):
    cert = Certificate("instance validity")
    for name, ok, msg in inst.validate():
        cert.add(name, msg, ok)
    ok, x1 = inst.slater()
    cert.add("Slater", "some x1 in Omega with G(x1) ∩ -int Z+ nonempty", ok, kind="info", x1=x1)
    rep.certificates.append(cert)


def cmd_feasible(args, inst, rep):
    (z,) = _z_list(args, inst)
    rep.inputs["z"] = z
    rep.results["S(z)"] = _set_text(inst.feasible_set(z))
    rep.results["V(z)"] = _set_text(inst.V(z))


def cmd_value_graph(args, inst, rep):
    rep.results["Graph(V)"] = _set_text(inst.value_maps.graph_V)
    rep.results["Graph(V+Y+)"] = _set_text(inst.value_maps.graph_V_plus)


def cmd_nd_check(args, inst, rep):
    y0 = _y0(args, inst)
    rep.inputs["y0"] = y0
    nd = inst.is_nd_point(y0)
    rep.results["nondominated"] = nd
    rep.results["minimal"] = nd and inst.is_min_point(y0)
    cert = Certificate("nondominated point")
    cert.add("y0 in ND(P(0))", "y0 in cl V(0) and V(0) ∩ (y0 - Y+) ⊆ y0 + Y+", nd)
    rep.certificates.append(cert)


def cmd_s_cone(args, inst, rep):
    from .multiplier import separator_cone
    y0 = _y0(args, inst)
    rep.inputs["y0"] = y0
    s = separator_cone(inst, y0)
    rep.results["separator"] = textio.dumps(s.cone).rstrip("\n").split("\n")
    rep.results["rays"] = [fmt_vec(r) for r in s.cone.rays]
    rep.results["lines"] = [fmt_vec(l) for l in s.cone.lines]


def cmd_build_multiplier(args, inst, rep):
    from .multiplier import multiplier_certificate, serialize_process
    y0 = _y0(args, inst)
    rep.inputs["y0"] = y0
    cert, s, pair, built = multiplier_certificate(inst, y0)
    rep.results["z*"] = pair[0].coeffs
    rep.results["y*"] = pair[1].coeffs
    rep.results["delta"] = built.delta
    rep.results["Delta"] = serialize_process(built.process).rstrip("\n").split("\n")
    rep.certificates.append(cert)


def cmd_verify_multiplier(args, inst, rep):
    from .multiplier import verify_lagrange_multiplier
    y0 = _y0(args, inst)
    rep.inputs["y0"] = y0
    delta = _delta(args, inst, y0)
    rep.inputs["Delta"] = delta.label
    rep.certificates.append(verify_lagrange_multiplier(inst, delta, y0))


def cmd_psi(args, inst, rep):
    from .multiplier import psi_set
    y0 = _y0(args, inst)
    delta = _delta(args, inst, y0)
    rep.inputs["Delta"] = delta.label
    rep.results["Psi(Delta)"] = _set_text(psi_set(inst, delta))


def cmd_phi_member(args, inst, rep):
    from .duality import phi_member
    y0 = _y0(args, inst)
    y = _point(args.y1, inst.ny, "y1") if args.y1 is not None else y0
    delta = _delta(args, inst, y0)
    rep.inputs.update({"y": y, "Delta": delta.label})
    ok = phi_member(inst, delta, y)
    rep.results["in Phi(Delta)"] = ok
    cert = Certificate("dual objective membership")
    cert.add("y in Phi(Delta)", "y in cl Psi(Delta), nondominated by Psi(Delta)", ok)
    rep.certificates.append(cert)


def cmd_weak_dual(args, inst, rep):
    from .duality import weak_duality_check
    y0 = _y0(args, inst)
    y1 = _point(args.y1, inst.ny, "y1")
    delta = _delta(args, inst, y0)
    rep.inputs.update({"y0": y0, "y1": y1, "Delta": delta.label})
    rep.certificates.append(weak_duality_check(inst, y0, delta, y1))


def cmd_strong_dual(args, inst, rep):
    from .duality import strong_duality_witness
    from .multiplier import serialize_process
    y0 = _y0(args, inst)
    rep.inputs["y0"] = y0
    delta, cert = strong_duality_witness(inst, y0)
    rep.results["Delta0"] = serialize_process(delta).rstrip("\n").split("\n")
    rep.certificates.append(cert)


def cmd_lagrange_process(args, inst, rep):
    from .sensitivity import lagrange_process
    y0 = _y0(args, inst)
    rep.inputs["y0"] = y0
    lp = lagrange_process(inst, y0, check=False)
    rep.results["L graph"] = textio.dumps(lp.process.graph).rstrip("\n").split("\n")
    cert = Certificate("Lagrange process")
    cert.add("routes agree", "reflected tangent cone = reverse adjoint of the separator", lp.routes_agree)
    for z in _z_list(args, inst, default=[]):
        rep.results[f"L({fmt_vec(z)})"] = _set_text(lp.value(z))
    rep.certificates.append(cert)


def cmd_derivative_check(args, inst, rep):
    from .sensitivity import verify_derivative_identity
    y0 = _y0(args, inst)
    zs = _z_list(args, inst, default=[(-1,) * inst.nz, (0,) * inst.nz, (1,) * inst.nz])
    rep.inputs.update({"y0": y0, "z": zs})
    rep.certificates.append(verify_derivative_identity(inst, y0, zs))


def cmd_sensitivity(args, inst, rep):
    from .sensitivity import sensitivity_report
    y0 = _y0(args, inst)
    zs = _z_list(args, inst, default=[(-1,) * inst.nz, (1,) * inst.nz])
    rep.inputs.update({"y0": y0, "z": zs})
    cert, rows = sensitivity_report(inst, y0, zs)
    rep.results["comparison"] = rows
    rep.certificates.append(cert)


def cmd_scalar_check(args, inst, rep):
    from .sensitivity import scalar_recovery_check
    y0 = _point(args.y0, inst.ny, "y0") if args.y0 is not None else None
    kw = {"z_samples": [z for z in args.z]} if args.z else {}
    cert, l0 = scalar_recovery_check(inst, y0, **kw)
    rep.results["l0"] = l0
    rep.certificates.append(cert)


def run_corpus(args):
    """Corpus runner; returns ``(report, exit code)``."""
    instances = []
    if args.dir:
        instances += corpus.load_dir(args.dir)
    if args.seed is not None:
        instances += corpus.random_corpus(args.seed, args.count)
    if not args.dir and args.seed is None:
        instances = corpus.bundled_instances()
    matrix, failures, errors = corpus.corpus_run(instances, dump_dir=args.dump)
    rep = RunReport("corpus", "corpus-run", {"dir": args.dir, "seed": args.seed, "count": len(instances)})
    cert = Certificate("corpus invariants")
    props = sorted({k for res in matrix.values() for k in res if k not in ("weak duality pairs", "slater")})
    for prop in props:
        bad = sorted(n for n, res in matrix.items() if prop in res and not res[prop][0])
        ran = sum(1 for res in matrix.values() if prop in res)
        cert.add(prop, f"holds on every instance where it applies ({ran} instances)", not bad, failing=bad)
    for name, err in errors:
        cert.add(f"error {name}", "instance ran without error", False, error=err)
    rep.certificates.append(cert)
    rep.results["weak duality pairs"] = sum(res.get("weak duality pairs", [True, 0])[1] for res in matrix.values())
    rep.results["instances"] = sorted(matrix)
    if failures and args.dump:
        rep.results["counterexamples"] = str(args.dump)
    return rep


HANDLERS = {
    "validate": cmd_validate,
    "feasible": cmd_feasible,
    "value-graph": cmd_value_graph,
    "nd-check": cmd_nd_check,
    "s-cone": cmd_s_cone,
    "build-multiplier": cmd_build_multiplier,
    "verify-multiplier": cmd_verify_multiplier,
    "psi": cmd_psi,
    "phi-member": cmd_phi_member,
    "weak-dual": cmd_weak_dual,
    "strong-dual": cmd_strong_dual,
    "lagrange-process": cmd_lagrange_process,
    "derivative-check": cmd_derivative_check,
    "sensitivity": cmd_sensitivity,
    "scalar-check": cmd_scalar_check,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise MalformedInputError(message)


def build_parser():
    p = _Parser(prog="convproc", description="Exact Lagrangian duality and sensitivity for polyhedral programs.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--instance", help="instance JSON file or bundled instance name")
    p.add_argument("--y0", help='point of Y as "a,b" (defaults to the first y0 of the instance)')
    p.add_argument("--y1", help="second point of Y (weak-dual, phi-member)")
    p.add_argument("--z", action="append", help="point of Z; repeatable")
    p.add_argument("--delta", help="process graph file (a 'cone' block over Z x Y)")
    p.add_argument("--out", help="write the report here instead of standard output")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--timing", action="store_true", help="include wall-clock time in the report")
    p.add_argument("--dir", help="corpus-run: directory of instance files")
    p.add_argument("--seed", type=int, help="corpus-run: seed for random instances")
    p.add_argument("--count", type=int, default=200, help="corpus-run: number of random instances")
    p.add_argument("--dump", help="corpus-run: directory for counterexample instances")
    return p


_POINT_FLAGS = ("--y0", "--y1", "--z")


def _join_points(argv):
    """``--y0 -1,0`` -> ``--y0=-1,0`` so argparse does not read the point as a flag."""
    out = []
    it = iter(argv)
    for a in it:
        if a in _POINT_FLAGS:
            nxt = next(it, None)
            out.append(a if nxt is None else f"{a}={nxt}")
        else:
            out.append(a)
    return out


def dispatch(argv):
    """Run one command; returns ``(exit code, report or None)``."""
    start = time.perf_counter()
    try:
        args = build_parser().parse_args(_join_points(list(argv)))
        if args.command == "corpus-run":
            rep = run_corpus(args)
        else:
            if not args.instance:
                raise MalformedInputError("--instance is required")
            inst = resolve_instance(args.instance)
            rep = RunReport(inst.name, args.command)
            HANDLERS[args.command](args, inst, rep)
    except ConvprocError as exc:
        print(f"convproc: error: {exc}", file=sys.stderr)
        return 2, None
    if args.timing:
        rep.timing = time.perf_counter() - start
    text = rep.to_json() if args.format == "json" else rep.to_text()
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return rep.exit_code(), rep


def main(argv=None):
    code, _ = dispatch(sys.argv[1:] if argv is None else argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
