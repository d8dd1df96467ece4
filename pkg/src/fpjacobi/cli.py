"""Command-line front end.

Subcommands: ``jacobi`` (basis polynomial coefficients), ``gram`` (Gram
matrix diagnostics), ``expand`` (Jacobi coefficients of an expression),
``solve`` (inhomogeneous hypergeometric solver + residual report) and
``fp-beta`` (continued Beta values).

Machine-readable output: JSON by default (complex numbers as two-element
[re, im] arrays, every float printed with 17 significant digits), CSV via
``--format csv``.  Each JSON document embeds its canonical request;
``--replay FILE`` recomputes from that embedded request and must
regenerate the document byte-identically.

Exit codes: 0 success; 2 invalid parameters; 3 resonance detected;
4 expression parse/evaluation error; 5 degree cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys

import numpy as np

from .basis import (
    JacobiBasis,
    JacobiParams,
    jacobi_rodrigues,
    jacobi_via_recurrence,
)
from .errors import (
    DegreeCapExceeded,
    EvaluationFailure,
    InsufficientData,
    InvalidParameters,
    ParseError,
    PoleError,
    RecurrenceBreakdown,
    ResonantEigenvalue,
)
from .expansion import (
    chebyshev_fit,
    convergence_estimate,
    expansion_coefficients,
)
from .exprparse import parse_complex_literal, parse_expression
from .solver import HypergeomProblem, residual, solve
from .special import beta_fp

__all__ = ["main", "run_command"]

EXIT_OK = 0
EXIT_INVALID_PARAMS = 2
EXIT_RESONANCE = 3
EXIT_PARSE = 4
EXIT_DEGREE_CAP = 5


# ---------------------------------------------------------------------------
# canonical serialization


def _fmt_float(x: float) -> str:
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    if math.isnan(x):
        return '"nan"'
    return "%.17g" % x


def _jdump(obj) -> str:
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _fmt_float(obj)
    if isinstance(obj, dict):
        inner = ", ".join(f"{json.dumps(k)}: {_jdump(v)}" for k, v in obj.items())
        return "{" + inner + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_jdump(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj)!r}")


def _c2(z: complex) -> list[float]:
    # +0.0 normalizes negative zeros, which JSON cannot round-trip
    z = complex(z)
    return [z.real + 0.0, z.imag + 0.0]


def _csv_float(x: float) -> str:
    return "%.17g" % x


def _csv_coefficients(doc: dict) -> str:
    lines = ["index,c_re,c_im"]
    for k, (re, im) in enumerate(doc["coefficients"]):
        lines.append(f"{k},{_csv_float(re)},{_csv_float(im)}")
    return "\n".join(lines) + "\n"


def _csv_gram(doc: dict) -> str:
    lines = ["n,k,g_re,g_im"]
    for n, row in enumerate(doc["gram"]):
        for k, (re, im) in enumerate(row):
            lines.append(f"{n},{k},{_csv_float(re)},{_csv_float(im)}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# request handlers (pure: canonical request dict -> document dict)


def _params_from_request(req: dict) -> JacobiParams:
    mode = "strict" if req.get("strict_params") else "permissive"
    return JacobiParams(complex(*req["alpha"]), complex(*req["beta"]), mode=mode)


def _handle_jacobi(req: dict) -> dict:
    params = _params_from_request(req)
    n = req["n"]
    route = req.get("route", "rodrigues")
    if route == "recurrence":
        p = jacobi_via_recurrence(params, n)
    else:
        p = jacobi_rodrigues(params, n)
    return {
        "request": req,
        "params": {"alpha": _c2(params.alpha), "beta": _c2(params.beta)},
        "n": n,
        "coefficients": [_c2(c) for c in p.coeffs],
        "warnings": [],
    }


def _handle_gram(req: dict) -> dict:
    params = _params_from_request(req)
    basis = JacobiBasis(params, req["n_max"])
    g = basis.gram_matrix()
    m = req["n_max"] + 1
    off = 0.0
    diag_rel = 0.0
    for n in range(m):
        an = basis.norms[n]
        diag_rel = max(diag_rel, abs(g[n, n] - an) / abs(an))
        for k in range(m):
            if n != k:
                scale = math.sqrt(abs(basis.norms[n]) * abs(basis.norms[k]))
                off = max(off, abs(g[n, k]) / scale)
    return {
        "request": req,
        "params": {"alpha": _c2(params.alpha), "beta": _c2(params.beta)},
        "norms": [_c2(v) for v in basis.norms],
        "gram": [[_c2(g[n, k]) for k in range(m)] for n in range(m)],
        "offdiag_max_scaled": off,
        "diag_max_rel": diag_rel,
        "warnings": [],
    }


def _handle_expand(req: dict) -> dict:
    params = _params_from_request(req)
    n_max = req["n_max"]
    ast = parse_expression(req["expr"])
    M = req.get("sampling_degree") or 2 * n_max + 8
    model = chebyshev_fit(lambda x: ast.eval(complex(x)), M)
    basis = JacobiBasis(params, n_max)
    exp_ = expansion_coefficients(basis, model)
    try:
        rho = convergence_estimate(exp_)
    except InsufficientData:
        rho = None
    return {
        "request": req,
        "params": {"alpha": _c2(params.alpha), "beta": _c2(params.beta)},
        "coefficients": [_c2(c) for c in exp_.coeffs],
        "tail_estimate": exp_.tail_estimate,
        "model_decay_rate": model.decay_rate,
        "rho_hat": rho,
        "warnings": [],
    }


def _handle_solve(req: dict) -> dict:
    mode = "strict" if req.get("strict_params") else "permissive"
    ast = parse_expression(req["g"])
    n_max = req.get("n_max")
    M = req.get("sampling_degree") or 2 * (n_max if n_max else 25) + 8
    model = chebyshev_fit(lambda x: ast.eval(complex(x)), M)
    problem = HypergeomProblem(
        complex(*req["a"]), complex(*req["b"]), complex(*req["c"]),
        model, mode=mode,
    )
    tol = req.get("tolerance") or 1e-8
    import warnings as _w

    with _w.catch_warnings():
        _w.simplefilter("ignore")
        sol = solve(problem, N=n_max, resonance_tol=tol)
    grid = np.linspace(0.0, 1.0, req.get("grid_points") or 101)
    res = residual(problem, sol, grid)
    return {
        "request": req,
        "params": {
            "alpha": _c2(problem.a - 1),
            "beta": _c2(problem.b - 1),
        },
        "coefficients": [_c2(c) for c in sol.expansion.coeffs],
        "g_coefficients": [_c2(c) for c in sol.g_coeffs],
        "residual_max": res,
        "resonances": [],
        "resonance_margin": sol.resonance_margin,
        "warnings": list(sol.warnings),
    }


def _handle_fp_beta(req: dict) -> dict:
    a = complex(*req["a"])
    b = complex(*req["b"])
    v = beta_fp(a, b)
    return {
        "request": req,
        "a": _c2(a),
        "b": _c2(b),
        "coefficients": [_c2(v)],
        "value": _c2(v),
        "warnings": [],
    }


_HANDLERS = {
    "jacobi": _handle_jacobi,
    "gram": _handle_gram,
    "expand": _handle_expand,
    "solve": _handle_solve,
    "fp-beta": _handle_fp_beta,
}


def _render(doc: dict, fmt: str) -> str:
    if fmt == "csv":
        if "gram" in doc:
            return _csv_gram(doc)
        return _csv_coefficients(doc)
    return _jdump(doc) + "\n"


# ---------------------------------------------------------------------------
# argv parsing


# argparse only recognizes plain negative reals as values rather than
# options; widen its matcher so complex literals like -1.5+0.3i pass
# through (e.g. `--alpha -1.5+0.3i`)
_NEG_COMPLEX = re.compile(
    r"^-\d+\.?\d*([eE][-+]?\d+)?i?([+-]\d+\.?\d*([eE][-+]?\d+)?i)?$"
)


def _build_argparser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="fpjacobi",
        description="General-parameter Jacobi bases, finite-part "
                    "orthogonality, expansions and the hypergeometric solver",
    )
    ap._negative_number_matcher = _NEG_COMPLEX
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, params=True):
        p._negative_number_matcher = _NEG_COMPLEX
        if params:
            p.add_argument("--alpha", type=str, help="complex literal, e.g. 1.5-0.5i")
            p.add_argument("--beta", type=str)
        p.add_argument("--strict-params", action="store_true")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--replay", type=str, metavar="FILE",
                       help="recompute from the request embedded in FILE")

    pj = sub.add_parser("jacobi", help="emit p_n coefficients")
    common(pj)
    pj.add_argument("--n", type=int)
    pj.add_argument("--route", choices=("rodrigues", "recurrence"),
                    default="rodrigues")

    pg = sub.add_parser("gram", help="Gram matrix and norms")
    common(pg)
    pg.add_argument("--n-max", type=int)

    pe = sub.add_parser("expand", help="Jacobi coefficients of an expression")
    common(pe)
    pe.add_argument("--expr", type=str)
    pe.add_argument("--n-max", type=int)
    pe.add_argument("--sampling-degree", type=int)

    ps = sub.add_parser("solve", help="inhomogeneous hypergeometric solver")
    common(ps, params=False)
    ps.add_argument("--a", type=str)
    ps.add_argument("--b", type=str)
    ps.add_argument("--c", type=str)
    ps.add_argument("--g", type=str, help="inhomogeneity expression in x")
    ps.add_argument("--n-max", type=int)
    ps.add_argument("--sampling-degree", type=int)
    ps.add_argument("--grid-points", type=int, default=101)
    ps.add_argument("--tolerance", type=float, default=1e-8)

    pb = sub.add_parser("fp-beta", help="continued Beta value")
    common(pb, params=False)
    pb.add_argument("--a", type=str)
    pb.add_argument("--b", type=str)

    return ap


def _require(ns, *names):
    for name in names:
        if getattr(ns, name.replace("-", "_"), None) is None:
            raise InvalidParameters(f"missing required flag --{name}")


def _canonical_request(ns) -> dict:
    cmd = ns.command
    req: dict = {"command": cmd}
    if cmd in ("jacobi", "gram", "expand"):
        _require(ns, "alpha", "beta")
        req["alpha"] = _c2(parse_complex_literal(ns.alpha))
        req["beta"] = _c2(parse_complex_literal(ns.beta))
    if cmd == "jacobi":
        _require(ns, "n")
        req["n"] = ns.n
        req["route"] = ns.route
    elif cmd == "gram":
        _require(ns, "n-max")
        req["n_max"] = ns.n_max
    elif cmd == "expand":
        _require(ns, "expr", "n-max")
        req["expr"] = ns.expr
        req["n_max"] = ns.n_max
        if ns.sampling_degree is not None:
            req["sampling_degree"] = ns.sampling_degree
    elif cmd == "solve":
        _require(ns, "a", "b", "c", "g")
        req["a"] = _c2(parse_complex_literal(ns.a))
        req["b"] = _c2(parse_complex_literal(ns.b))
        req["c"] = _c2(parse_complex_literal(ns.c))
        req["g"] = ns.g
        if ns.n_max is not None:
            req["n_max"] = ns.n_max
        if ns.sampling_degree is not None:
            req["sampling_degree"] = ns.sampling_degree
        req["grid_points"] = ns.grid_points
        req["tolerance"] = ns.tolerance
    elif cmd == "fp-beta":
        _require(ns, "a", "b")
        req["a"] = _c2(parse_complex_literal(ns.a))
        req["b"] = _c2(parse_complex_literal(ns.b))
    if getattr(ns, "strict_params", False):
        req["strict_params"] = True
    req["format"] = ns.format
    return req


def run_command(argv, stdout=None) -> int:
    """Execute one CLI invocation; returns the exit code."""
    out = stdout if stdout is not None else sys.stdout
    ap = _build_argparser()
    try:
        ns = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID_PARAMS if exc.code not in (0, None) else 0

    try:
        if getattr(ns, "replay", None):
            with open(ns.replay, "r", encoding="utf-8") as fh:
                doc = json.load(fh)
            req = doc.get("request")
            if not isinstance(req, dict) or req.get("command") != ns.command:
                raise InvalidParameters(
                    f"replay file does not contain a {ns.command!r} request"
                )
        else:
            req = _canonical_request(ns)
        result = _HANDLERS[req["command"]](req)
        out.write(_render(result, req.get("format", "json")))
        return EXIT_OK
    except ResonantEigenvalue as exc:
        err = {
            "error": {"type": "ResonantEigenvalue", "message": str(exc)},
            "resonances": exc.indices,
        }
        out.write(_jdump(err) + "\n")
        return EXIT_RESONANCE
    except (ParseError, EvaluationFailure) as exc:
        payload = {"type": type(exc).__name__, "message": str(exc)}
        if isinstance(exc, ParseError):
            payload["offset"] = exc.offset
            payload["expected"] = sorted(exc.expected)
        out.write(_jdump({"error": payload}) + "\n")
        return EXIT_PARSE
    except DegreeCapExceeded as exc:
        out.write(_jdump({"error": {"type": "DegreeCapExceeded",
                                    "message": str(exc)}}) + "\n")
        return EXIT_DEGREE_CAP
    except (InvalidParameters, PoleError, RecurrenceBreakdown,
            ValueError, KeyError, TypeError, OSError) as exc:
        out.write(_jdump({"error": {"type": type(exc).__name__,
                                    "message": str(exc)}}) + "\n")
        return EXIT_INVALID_PARAMS


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
