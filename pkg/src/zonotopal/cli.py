"""Command line front end: one verb per invocation, JSON in and out.

Exit status is 0 on success, 1 when an operation is called outside its
precondition and 2 when an input file cannot be parsed.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from zonotopal.forward_exchange import (
    FAMILY_KINDS,
    FEM,
    fem_tutte,
    is_forward_exchange,
    standard_families,
)
from zonotopal.linalg import ContractError, format_rational, parse_rational
from zonotopal.matroid import (
    VectorList,
    activity_sets,
    bases,
    cocircuits,
    flats,
    tutte,
    zonotope_volume,
)
from zonotopal.polynomial import least_space
from zonotopal.spaces import (
    bcyr_basis,
    d_space_basis,
    delcon_dimension_check,
    gram_matrix,
    hilbert_tutte_check,
    p_space_basis,
    power_ideal_kernel,
)
from zonotopal.splines import arrangement_vertices, box_spline_eval, choose_generic_c, t_spline_eval


class InputError(Exception):
    pass


def _load(path: str, what: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"{what}: cannot read {path}: {exc.strerror}")
    except json.JSONDecodeError as exc:
        raise InputError(f"{what}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}")


def _rational(value, where: str) -> Fraction:
    try:
        return parse_rational(value)
    except ValueError as exc:
        raise InputError(f"{where}: {exc}")


def _vector(v, where: str) -> list[Fraction]:
    if not isinstance(v, list):
        raise InputError(f"{where}: expected a list of rationals")
    return [_rational(c, f"{where}[{j}]") for j, c in enumerate(v)]


def parse_vectors(data) -> VectorList:
    if not isinstance(data, dict) or "vectors" not in data:
        raise InputError('vectors file: expected an object with "r" and "vectors"')
    vecs = data["vectors"]
    if not isinstance(vecs, list) or not vecs:
        raise InputError("vectors: expected a nonempty list")
    rows = [_vector(v, f"vectors[{i}]") for i, v in enumerate(vecs)]
    r = data.get("r", len(rows[0]))
    if not isinstance(r, int) or isinstance(r, bool) or r < 0:
        raise InputError("r: expected a nonnegative integer")
    for i, v in enumerate(rows):
        if len(v) != r:
            raise InputError(f"vectors[{i}]: expected {r} entries, got {len(v)}")
    return VectorList(rows, r)


def parse_bases(data) -> list[tuple[int, ...]]:
    if isinstance(data, dict):
        data = data.get("bases")
    if not isinstance(data, list):
        raise InputError("bases: expected a list of index lists")
    out = []
    for i, B in enumerate(data):
        if not isinstance(B, list) or not all(isinstance(b, int) and not isinstance(b, bool) for b in B):
            raise InputError(f"bases[{i}]: expected a list of integers")
        out.append(tuple(B))
    return out


def parse_point(data) -> list[Fraction]:
    if isinstance(data, dict):
        data = data.get("point")
    return _vector(data, "point")


def parse_points(data) -> list[list[Fraction]]:
    if isinstance(data, dict):
        data = data.get("points")
    if not isinstance(data, list):
        raise InputError("points: expected a list of points")
    return [_vector(p, f"points[{i}]") for i, p in enumerate(data)]


def _q(x) -> str:
    return format_rational(x)


def _vectors_json(X: VectorList) -> dict:
    return {"r": X.r, "vectors": [[_q(c) for c in v] for v in X.vectors]}


def _family_args(X: VectorList, raw: dict) -> dict:
    args = {}
    if "B0" in raw:
        args["B0"] = [_vector(v, f"args.B0[{i}]") for i, v in enumerate(raw["B0"])]
    if "Y" in raw:
        args["Y"] = [_vector(v, f"args.Y[{i}]") for i, v in enumerate(raw["Y"])]
    if "J" in raw:
        args["J"] = [tuple(F) for F in raw["J"]]
    if "I0" in raw:
        args["I0"] = tuple(raw["I0"])
    if "kappa" in raw:
        args["kappa"] = {tuple(e["flat"]): e["value"] for e in raw["kappa"]}
    if "default" in raw:
        args["default"] = raw["default"]
    return args


# -- verbs -------------------------------------------------------------------

def _family(ns, X):
    return ns.bases_list if ns.bases_list is not None else list(bases(X))


def cmd_bases(ns, X):
    return {"bases": [list(B) for B in bases(X)]}


def _tutte_json(T):
    return {"tutte": str(T), "coefficients": [[i, j, c] for (i, j), c in T.items()]}


def cmd_tutte(ns, X):
    if ns.bases_list is None:
        return _tutte_json(tutte(X))
    return _tutte_json(fem_tutte(FEM.build(X, ns.bases_list)))


def cmd_activities(ns, X):
    out = []
    for B in _family(ns, X):
        I, E = activity_sets(X, tuple(B))
        out.append({"basis": list(B), "internal": sorted(I), "external": sorted(E)})
    return {"activities": out}


def cmd_flats(ns, X):
    return {"flats": [{"indices": sorted(F.indices), "rank": F.rank, "corank_one": F.corank_one}
                      for F in flats(X)]}


def cmd_cocircuits(ns, X):
    return {"cocircuits": [sorted(C) for C in cocircuits(X, _family(ns, X))]}


def cmd_fem_check(ns, X):
    res = is_forward_exchange(X, _family(ns, X))
    w = res.witness
    return {"forward_exchange": res.forward_exchange,
            "witness": None if w is None else {"basis": list(w.basis), "level": w.level, "element": w.element}}


def cmd_fem_family(ns, X):
    if ns.family is None:
        raise ContractError("--family is required")
    raw = {}
    if ns.args:
        try:
            raw = json.loads(ns.args)
        except json.JSONDecodeError as exc:
            raise InputError(f"--args: invalid JSON at column {exc.colno}: {exc.msg}")
        if not isinstance(raw, dict):
            raise InputError("--args: expected a JSON object")
    fam = standard_families(ns.family, X, **_family_args(X, raw))
    out = {"kind": fam.kind}
    out.update(_vectors_json(fam.X))
    out["bases"] = [list(B) for B in fam.bases]
    return out


def cmd_pspace(ns, X):
    return p_space_basis(X, _family(ns, X)).to_dict()


def cmd_dspace(ns, X):
    return d_space_basis(X, _family(ns, X), ns.max_degree).to_dict()


def cmd_bcyr(ns, X):
    return bcyr_basis(X, _family(ns, X), ns.seed).to_dict()


def cmd_gram(ns, X):
    fam = _family(ns, X)
    G = gram_matrix(p_space_basis(X, fam), bcyr_basis(X, fam, ns.seed))
    identity = all(G[i, j] == (i == j) for i in range(G.rows) for j in range(G.cols))
    return {"gram": [[_q(e) for e in G.row(i)] for i in range(G.rows)], "identity": identity}


def cmd_power_ideal(ns, X):
    res = power_ideal_kernel(X, _family(ns, X))
    spec = {"entries": [{"flat": list(e.flat), "normals": [[_q(c) for c in n] for n in e.normals],
                         "exponent": e.exponent} for e in res.spec.entries],
            "cap": res.spec.cap}
    return {"spec": spec, "kernel": res.kernel.to_dict(), "equal": res.equal}


def cmd_hilbert_check(ns, X):
    res = hilbert_tutte_check(X, _family(ns, X))
    return {"ok": res.ok, "p_hilbert": list(res.p_hilbert), "d_hilbert": list(res.d_hilbert),
            "tutte_series": list(res.tutte)}


def cmd_delcon_check(ns, X):
    res = delcon_dimension_check(X, _family(ns, X))
    names = ("full", "deletion", "contraction")
    return {"ok": res.ok, "element": res.element,
            "p": {k: list(h) for k, h in zip(names, res.p)},
            "d": {k: list(h) for k, h in zip(names, res.d)}}


def _need_point(ns):
    if ns.point is None:
        raise ContractError("-p is required")
    return ns.point


def cmd_spline_eval(ns, X):
    u = parse_point(_load(_need_point(ns), "point"))
    return {"value": _q(t_spline_eval(X, u, M=ns.seed, boundary=ns.boundary))}


def cmd_boxspline_eval(ns, X):
    u = parse_point(_load(_need_point(ns), "point"))
    return {"value": _q(box_spline_eval(X, u, M=ns.seed, boundary=ns.boundary))}


def cmd_least_space(ns, X):
    if ns.point is not None:
        pts = parse_points(_load(ns.point, "points"))
        degree = ns.max_degree if ns.max_degree is not None else 0
    else:
        if X is None:
            raise ContractError("least-space needs -p points or -i vectors")
        verts = arrangement_vertices(X, choose_generic_c(X, ns.seed))
        keep = set(_family(ns, X))
        pts = [v for B, v in verts.items() if B in keep]
        degree = ns.max_degree if ns.max_degree is not None else X.N - X.r
    res = least_space(pts, degree)
    return {"side": "T", "nvars": len(pts[0]),
            "polynomials": [str(p) for p in res.basis],
            "hilbert": list(res.hilbert), "truncation_degree": res.truncation_degree}


def cmd_volume(ns, X):
    return {"volume": _q(zonotope_volume(X))}


VERBS = {
    "bases": cmd_bases,
    "tutte": cmd_tutte,
    "activities": cmd_activities,
    "flats": cmd_flats,
    "cocircuits": cmd_cocircuits,
    "fem-check": cmd_fem_check,
    "fem-family": cmd_fem_family,
    "pspace": cmd_pspace,
    "dspace": cmd_dspace,
    "bcyr": cmd_bcyr,
    "gram": cmd_gram,
    "power-ideal": cmd_power_ideal,
    "hilbert-check": cmd_hilbert_check,
    "delcon-check": cmd_delcon_check,
    "spline-eval": cmd_spline_eval,
    "boxspline-eval": cmd_boxspline_eval,
    "least-space": cmd_least_space,
    "volume": cmd_volume,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="zonotopal", description="Exact zonotopal algebra computations.")
    p.add_argument("verb", choices=sorted(VERBS))
    p.add_argument("-i", dest="vectors", help="vectors JSON: {\"r\": 2, \"vectors\": [[\"1\",\"0\"], ...]}")
    p.add_argument("-b", dest="bases", help="bases JSON: list of 1-based index lists")
    p.add_argument("-p", dest="point", help="point JSON (a list of rationals), or points for least-space")
    p.add_argument("--family", choices=FAMILY_KINDS)
    p.add_argument("--args", help="family arguments as a JSON object")
    p.add_argument("--seed", type=int, default=2, help="seed M of the generic shift c_x = M^index")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--max-degree", type=int, default=None)
    p.add_argument("--boundary", choices=("error", "limit"), default="error",
                   help="behaviour of spline evaluation on cone walls")
    return p


def _text(obj, indent=0) -> list[str]:
    pad = " " * indent
    if isinstance(obj, dict):
        width = max((len(str(k)) for k in obj), default=0)
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and any(isinstance(e, (dict, list)) for e in
                                                          (v.values() if isinstance(v, dict) else v)):
                lines.append(f"{pad}{str(k).ljust(width)} :")
                lines.extend(_text(v, indent + 2))
            else:
                lines.append(f"{pad}{str(k).ljust(width)} : {_scalar(v)}")
        return lines
    if isinstance(obj, list):
        lines = []
        for v in obj:
            if isinstance(v, dict):
                lines.append(f"{pad}-")
                lines.extend(_text(v, indent + 2))
            else:
                lines.append(f"{pad}{_scalar(v)}")
        return lines
    return [pad + _scalar(obj)]


def _scalar(v) -> str:
    if isinstance(v, list):
        return " ".join(_scalar(e) for e in v)
    if isinstance(v, dict):
        return json.dumps(v)
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "-"
    return str(v)


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    ns = build_parser().parse_args(argv)
    try:
        X = parse_vectors(_load(ns.vectors, "vectors")) if ns.vectors else None
        ns.bases_list = parse_bases(_load(ns.bases, "bases")) if ns.bases else None
        if X is None and not (ns.verb == "least-space" and ns.point):
            raise ContractError("-i is required")
        result = VERBS[ns.verb](ns, X)
    except InputError as exc:
        print(f"zonotopal: parse error: {exc}", file=err)
        return 2
    except ContractError as exc:
        print(f"zonotopal: {exc}", file=err)
        return 1
    except KeyError as exc:
        print(f"zonotopal: missing argument {exc}", file=err)
        return 1
    if ns.format == "json":
        print(json.dumps(result), file=out)
    else:
        print("\n".join(_text(result)), file=out)
    return 0


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
