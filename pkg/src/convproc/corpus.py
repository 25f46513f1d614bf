"""Random valid instances and the batch runner over instance corpora.

Random instances are small (dimensions at most 3) and valid by construction:
Omega is a box cut by a few halfspaces through a margin around the origin,
F(x) = A x + b + [0, w]^ny, G(x) = C x - k with ``k`` interior to Z+, so the
origin is a Slater point.  Everything is drawn from ``random.Random(seed)``.
"""

import json
import os
import random
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from .errors import ConvprocError
from .program import ProgramInstance
from .rational import fmt

WORKERS_ENV = "CONVPROC_WORKERS"
DATA_DIR = Path(__file__).parent / "data"


def _c(a, rel, b):
    return {"a": [fmt(x) for x in a], "rel": rel, "b": fmt(b)}


def _simplicial_cone(rng, n):
    """Pointed solid cone: the orthant, or a random nonnegative basis."""
    if n == 1 or rng.random() < 0.5:
        return [[int(i == j) for j in range(n)] for i in range(n)]
    while True:
        rays = [[int(i == j) + rng.randint(0, 2) * (i != j) * (rng.random() < 0.4) for j in range(n)]
                for i in range(n)]
        if _det(rays) != 0:
            return rays


def _det(m):
    m = [[Fraction(x) for x in row] for row in m]
    n = len(m)
    d = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        d *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return d


def random_instance(seed, max_dim=3, name=None):
    rng = random.Random(seed)
    nx = rng.randint(1, min(max_dim, 2) if rng.random() < 0.8 else max_dim)
    ny = rng.randint(1, 2)
    nz = rng.randint(1, 2) if nx + ny <= 3 else 1
    r = rng.randint(1, 3)
    omega = []
    for i in range(nx):
        e = [int(i == j) for j in range(nx)]
        omega.append(_c(e, "<=", r))
        omega.append(_c([-x for x in e], "<=", r))
    for _ in range(rng.randint(0, 2)):
        a = [rng.randint(-2, 2) for _ in range(nx)]
        if any(a):
            omega.append(_c(a, "<=", Fraction(rng.randint(1, 4), 2)))
    yrays = _simplicial_cone(rng, ny)
    zrays = _simplicial_cone(rng, nz)
    # F(x) = A x + b + [0, w]^ny in coordinates (x, y)
    graphF = []
    for i in range(ny):
        a = [rng.randint(-2, 2) for _ in range(nx)]
        b = rng.randint(-2, 2)
        w = rng.choice([0, 0, 1, Fraction(1, 2)])
        row = [-x for x in a] + [int(i == j) for j in range(ny)]
        if w == 0:
            graphF.append(_c(row, "=", b))
        else:
            graphF.append(_c(row, "<=", b + w))
            graphF.append(_c([-x for x in row], "<=", -b))
    # G(x) = C x - k with k = sum of Z+ rays, so G(0) lies in -int Z+
    k = [sum(r[j] for r in zrays) for j in range(nz)]
    graphG = []
    for i in range(nz):
        c = [rng.randint(-2, 2) for _ in range(nx)]
        row = [-x for x in c] + [int(i == j) for j in range(nz)]
        graphG.append(_c(row, "=", -k[i]))
    data = {
        "name": name or f"random-{seed}",
        "dims": {"x": nx, "y": ny, "z": nz},
        "cones": {"yplus": [[fmt(x) for x in r] for r in yrays],
                  "zplus": [[fmt(x) for x in r] for r in zrays]},
        "omega": omega,
        "graphF": graphF,
        "graphG": graphG,
    }
    inst = ProgramInstance.from_dict(data)
    pts = inst.marginal_min_points([0] * nz)
    return ProgramInstance.from_dict(dict(data, y0=[[fmt(x) for x in p] for p in pts[:2]]))


def random_corpus(seed, count, max_dim=3):
    rng = random.Random(seed)
    return [random_instance(rng.getrandbits(32), max_dim, name=f"random-{seed}-{i:03d}") for i in range(count)]


def bundled_instances():
    return [ProgramInstance.load(p) for p in sorted(DATA_DIR.glob("*.json"))]


def load_dir(path):
    out = []
    for p in sorted(Path(path).glob("*.json")):
        out.append(ProgramInstance.load(p))
    return out


# -- per-instance invariant suite ---------------------------------------------


_BOX_FACTORS = (Fraction(1, 2), Fraction(1, 3), Fraction(1, 5), Fraction(1, 10))


def dual_candidates(inst, built, limit=5, cache=None):
    """Pairs ``(process, y1, psi)`` with ``y1`` a minimal point of Psi(process).

    Processes are the built multiplier and thinner boxes around the same
    axis; Psi is computed lazily and memoized in ``cache`` by graph.
    """
    from .geometry import cone_of_ball_translate
    from .multiplier import PolyhedralProcess, psi_set
    from .order import minimal_extreme_points
    cache = {} if cache is None else cache
    procs = [built.process]
    for factor in _BOX_FACTORS:
        g = cone_of_ball_translate((0,) * inst.nz + built.yplus_point, built.delta * factor, built.functional)
        procs.append(PolyhedralProcess(g, inst.nz, inst.ny, label=f"box x{factor}"))
    out = []
    for p in procs:
        key = p.graph.constraints
        if key not in cache:
            psi = psi_set(inst, p)
            cache[key] = (psi, minimal_extreme_points(psi, inst.yplus))
        psi, pts = cache[key]
        for y1 in pts:
            out.append((p, y1, psi))
            if len(out) >= limit:
                return out
    return out


def check_instance(inst, candidates=5):
    """Run every invariant on one instance; returns ``{property: [passed, detail]}``."""
    from .duality import phi_member, strong_duality_witness, weak_duality_check
    from .multiplier import multiplier_certificate, psi_set, separator_cone, verify_lagrange_multiplier
    from .order import minimal_extreme_points
    from .sensitivity import lagrange_process
    res = {}

    def put(key, ok, detail=""):
        prev = res.get(key)
        if prev is None:
            res[key] = [bool(ok), detail]
        else:
            prev[0] = prev[0] and bool(ok)
            if not ok:
                prev[1] = detail

    res["valid"] = [inst.is_valid(), ""]
    slater, _ = inst.slater()
    res["slater"] = [slater, ""]
    weak_pairs = 0
    cache = {}
    for y0 in inst.y0s:
        if not inst.is_nd_point(y0):
            put("y0 nondominated", False, f"y0={list(map(str, y0))}")
            continue
        put("y0 nondominated", True)
        try:
            separator_cone(inst, y0)
            put("separator routes agree", True)
        except AssertionError as exc:
            put("separator routes agree", False, str(exc))
            continue
        if not slater:
            continue
        cert, s, pair, built = multiplier_certificate(inst, y0)
        put("multiplier structure", cert.passed, f"y0={list(map(str, y0))}")
        key = built.process.graph.constraints
        if key not in cache:
            psi0 = psi_set(inst, built.process)
            cache[key] = (psi0, minimal_extreme_points(psi0, inst.yplus))
        psi0 = cache[key][0]
        v = verify_lagrange_multiplier(inst, built.process, y0, psi=psi0)
        put("lagrange multiplier", v.passed, f"y0={list(map(str, y0))}")
        if any(c.name == "intersection property pointed form" for c in v.clauses):
            put("intersection property", v.clause("intersection property pointed form").passed, f"y0={list(map(str, y0))}")
        delta0, sc = strong_duality_witness(inst, y0, built, psi0)
        put("strong duality", sc.passed and phi_member(inst, delta0, y0, psi0))
        for p, y1, psi in dual_candidates(inst, built, candidates, cache):
            w = weak_duality_check(inst, y0, p, y1, psi)
            weak_pairs += 1
            put("weak duality", w.passed, f"y0={list(map(str, y0))} y1={list(map(str, y1))} {w.status}")
        if inst.yplus.pointed:
            lpr = lagrange_process(inst, y0, check=False)
            put("lagrange routes agree", lpr.routes_agree)
    res["weak duality pairs"] = [True, weak_pairs]
    return res


def _still_fails(inst, props):
    try:
        res = check_instance(inst)
    except ConvprocError:
        return False
    return any(p in res and not res[p][0] for p in props)


def shrink_counterexample(inst, props):
    """Greedily drop y0s and constraints while some property in ``props`` still fails."""
    data = inst.to_dict()
    changed = True
    while changed:
        changed = False
        for field in ("y0", "omega", "graphF", "graphG"):
            items = data.get(field)
            if not isinstance(items, list) or len(items) <= 1:
                continue
            for i in range(len(items)):
                trial = dict(data, **{field: items[:i] + items[i + 1:]})
                try:
                    cand = ProgramInstance.from_dict(trial)
                except ConvprocError:
                    continue
                if cand.is_valid() and _still_fails(cand, props):
                    data, changed = trial, True
                    break
            if changed:
                break
    return ProgramInstance.from_dict(data)


def _run_one(text):
    inst = ProgramInstance.loads(text)
    try:
        return inst.name, check_instance(inst), None
    except ConvprocError as exc:
        return inst.name, {}, f"{type(exc).__name__}: {exc}"


def corpus_run(instances, workers=None, dump_dir=None):
    """Aggregate ``{instance: {property: [ok, detail]}}`` plus failures."""
    texts = [i.dumps() for i in instances]
    workers = workers if workers is not None else int(os.environ.get(WORKERS_ENV, "1") or 1)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_run_one, texts))
    else:
        results = [_run_one(t) for t in texts]
    results.sort(key=lambda r: r[0])
    matrix = {}
    failures = []
    errors = []
    for (name, res, err), text in zip(results, sorted(texts, key=lambda t: json.loads(t)["name"])):
        matrix[name] = res
        if err:
            errors.append((name, err))
        bad = [k for k, (ok, _) in res.items() if not ok and k not in ("slater",)]
        if bad:
            failures.append((name, bad))
            if dump_dir is not None:
                Path(dump_dir).mkdir(parents=True, exist_ok=True)
                small = shrink_counterexample(ProgramInstance.loads(text), bad)
                (Path(dump_dir) / f"{name}.json").write_text(small.dumps())
    return matrix, failures, errors
