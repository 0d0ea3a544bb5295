"""Command-line interface: analyze, scale, dual, generate.

Exit codes: 0 analyzed, 1 not scalable (cmd_scale only), 2 input error,
3 internal numeric failure.  The default tolerance comes from --tol or the
FRAMESCALE_TOL environment variable and is echoed in every report.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import __version__, numerics
from . import duals as duals_mod
from . import scalability as sca
from . import split_scaling as split
from .diagram import reduced_diagram_matrix
from .errors import (
    CorankMismatchError,
    FramescaleError,
    InternalNumericError,
    IterationLimitError,
    ParseError,
)
from .frame_core import apply_scaling, frame_operator, frame_potential, is_tight, make_frame
from .framedoc import (
    FrameDocument,
    document_from_frame,
    format_frame_document,
    format_number,
    frame_from_document,
    parse_frame_document,
)

DEFAULT_TOL = 1e-8


def _vec(a):
    return None if a is None else [float(v) for v in np.asarray(a).ravel()]


def _mat(a):
    return None if a is None else [[float(v) for v in row] for row in np.asarray(a)]


def _json_dumps(obj, indent=0):
    """Deterministic JSON with floats at 17 significant digits."""
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = ",\n".join(
            f'{pad}  "{k}": {_json_dumps(v, indent + 1)}' for k, v in obj.items()
        )
        return "{\n" + items + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = ", ".join(_json_dumps(v, indent) for v in obj)
        return "[" + items + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, float):
        return format_number(obj)
    if isinstance(obj, int):
        return str(obj)
    return '"' + str(obj).replace("\\", "\\\\").replace('"', '\\"') + '"'


def _verify_scaling_result(frame, result):
    """Re-check a reported weight vector before it is emitted."""
    if result.weights_c is None:
        return
    theta = reduced_diagram_matrix(frame).data
    if float(np.abs(theta @ result.weights_c).max()) > 1e-8:
        raise InternalNumericError("reported weights fail the kernel identity")


def build_report(doc: FrameDocument, tol: float) -> dict:
    frame = frame_from_document(doc)
    op = frame_operator(frame)
    tight = is_tight(frame, tol)

    verdict = sca.decide_scalable(frame, strict=True)
    _verify_scaling_result(frame, verdict)

    w_elem = split.find_W_element(frame)
    v_elem = split.find_V_element(frame)
    inter = split.intersection_scalability(frame)
    _verify_scaling_result(frame, inter)

    pair = duals_mod.canonical_dual(frame)
    dual_report = duals_mod.canonical_dual_scalable(frame)

    return {
        "tool": {"name": "framescale", "version": __version__},
        "tolerance": float(tol),
        "frame": {
            "name": doc.name,
            "n": frame.n,
            "m": frame.m,
            "lower_bound": op.lower_bound,
            "upper_bound": op.upper_bound,
            "tight": tight.tight,
            "tight_bound": tight.bound,
            "frame_potential": frame_potential(frame),
        },
        "scalability": {
            "verdict": verdict.verdict,
            "method": verdict.method,
            "weights_c": _vec(verdict.weights_c),
            "scalars_a": _vec(verdict.scalars_a),
            "certificate_y": _vec(verdict.certificate_y),
            "reject_row": verdict.reject_row,
            "near_zero": list(verdict.near_zero),
        },
        "split": {
            "w_nonempty": w_elem.member,
            "w_element": _vec(w_elem.a),
            "v_nontrivial": v_elem.member,
            "v_element": _vec(v_elem.a),
            "intersection_verdict": inter.verdict,
            "parseval_scalars": _vec(inter.scalars_a),
        },
        "dual": {
            "canonical_dual": _mat(pair.dual.synthesis.T),
            "dual_scalable": dual_report.feasible,
            "dual_weights_c": _vec(dual_report.weights_c),
            "dual_scalars_a": _vec(dual_report.scalars_a),
            "residual": dual_report.residual,
        },
    }


def _print_report_text(rep, out):
    f = rep["frame"]
    name = f["name"] or "(unnamed)"
    print(f"frame {name}: n={f['n']} m={f['m']}", file=out)
    print(f"  bounds: A={f['lower_bound']:.12g} B={f['upper_bound']:.12g}", file=out)
    tight = f"tight (bound {f['tight_bound']:.12g})" if f["tight"] else "not tight"
    print(f"  {tight}; frame potential {f['frame_potential']:.12g}", file=out)
    s = rep["scalability"]
    print(f"  scalability: {s['verdict']} (method {s['method']})", file=out)
    if s["scalars_a"]:
        print("  scalars a: " + " ".join("%.12g" % v for v in s["scalars_a"]), file=out)
    if s["certificate_y"]:
        print("  certificate y: " + " ".join("%.12g" % v for v in s["certificate_y"]), file=out)
    sp = rep["split"]
    print(
        f"  split: W {'nonempty' if sp['w_nonempty'] else 'empty'}, "
        f"V {'nontrivial' if sp['v_nontrivial'] else 'trivial'}, "
        f"intersection {sp['intersection_verdict']}",
        file=out,
    )
    d = rep["dual"]
    print(f"  canonical dual scalable: {d['dual_scalable']}", file=out)
    print(f"  tolerance: {rep['tolerance']:.3g}", file=out)


def _read_document(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}")
    return parse_frame_document(text, source=path)


def cmd_analyze(args, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    paths = []
    if args.batch:
        try:
            names = sorted(os.listdir(args.batch))
        except OSError as exc:
            print(f"error: {exc}", file=err)
            return 2
        paths = [os.path.join(args.batch, nm) for nm in names
                 if os.path.isfile(os.path.join(args.batch, nm))]
        if not paths:
            print(f"error: no files in {args.batch}", file=err)
            return 2
    elif args.path:
        paths = [args.path]
    else:
        print("error: provide a path or --batch", file=err)
        return 2
    for path in paths:
        doc = _read_document(path)
        rep = build_report(doc, args.tol)
        if args.json:
            print(_json_dumps(rep), file=out)
        else:
            _print_report_text(rep, out)
    return 0


def cmd_scale(args, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    doc = _read_document(args.path)
    frame = frame_from_document(doc)
    method = args.method
    if method == "auto":
        theta = reduced_diagram_matrix(frame).data
        corank = frame.m - numerics.rank(theta)
        method = {1: "cofactor", 2: "codim2"}.get(corank, "lp")
    if method == "lp":
        result = sca.decide_scalable(frame, strict=args.strict)
    elif method == "cofactor":
        _, result = sca.cofactor_scaling(frame)
    elif method == "codim2":
        result = sca.codim2_scaling(frame)
    else:  # split
        result = split.intersection_scalability(frame, strict=args.strict)
    _verify_scaling_result(frame, result)
    if not result.scalable:
        if result.certificate_y is not None:
            print("not scalable; certificate y: "
                  + " ".join("%.12g" % v for v in result.certificate_y), file=out)
        else:
            print(f"not scalable; one-signed row {result.reject_row}", file=out)
        return 1
    scaled = apply_scaling(frame, result.scalars_a)
    if not is_tight(scaled, args.tol).tight:
        raise InternalNumericError("reported scaling does not make the frame tight")
    if args.strict and result.verdict != sca.STRICTLY_SCALABLE:
        print("scalable, but not strictly", file=out)
    print(" ".join("%.12g" % v for v in result.scalars_a), file=out)
    return 0


def cmd_dual(args, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    doc = _read_document(args.path)
    frame = frame_from_document(doc)
    pair = duals_mod.canonical_dual(frame)
    name = (doc.name + "-canonical-dual") if doc.name else "canonical-dual"
    print(format_frame_document(document_from_frame(pair.dual, name=name)),
          file=out, end="")
    if args.check_scalable:
        rep = duals_mod.canonical_dual_scalable(frame)
        if rep.feasible:
            print("dual scalable; weights c: "
                  + " ".join("%.12g" % v for v in rep.weights_c), file=out)
        else:
            print("dual not scalable", file=out)
    return 0


def _generate_document(kind, n, m, seed, name) -> FrameDocument:
    from .errors import BadParamsError

    if kind == "mb":
        angles = [2.0 * np.pi * k / 3.0 for k in range(3)]
        vectors = [[np.cos(a), np.sin(a)] for a in angles]
        frame = make_frame(vectors)
    elif kind == "hadamard-doubled":
        H = duals_mod.sylvester_hadamard(n)
        H = H.copy()
        H[-1] *= 2.0
        frame = make_frame(H.T)
    elif kind == "p1":
        frame = duals_mod.p1_counterexample(n)
    elif kind == "random-unit":
        if m < n:
            raise BadParamsError(f"random-unit needs m >= n, got n={n}, m={m}")
        rng = np.random.default_rng(seed)
        for _ in range(100):
            V = rng.standard_normal((m, n))
            V /= np.linalg.norm(V, axis=1, keepdims=True)
            if numerics.rank(V.T) == n:
                break
        frame = make_frame(V)
    else:
        raise BadParamsError(f"unknown generator kind {kind!r}")
    return document_from_frame(frame, name=name or kind)


def cmd_generate(args, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    doc = _generate_document(args.kind, args.n, args.m, args.seed, args.name)
    print(format_frame_document(doc), file=out, end="")
    return 0


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="framescale",
        description="Scalability analysis of finite frames in R^n",
    )
    parser.add_argument("--version", action="version", version=__version__)
    env_tol = os.environ.get("FRAMESCALE_TOL")
    default_tol = float(env_tol) if env_tol else DEFAULT_TOL
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full report for a frame file")
    p.add_argument("path", nargs="?", help="frame document to analyze")
    p.add_argument("--batch", help="analyze every file in a directory")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--tol", type=float, default=default_tol)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("scale", help="compute scaling weights or a certificate")
    p.add_argument("path")
    p.add_argument("--strict", action="store_true", help="require strictly positive weights")
    p.add_argument("--method", choices=["auto", "lp", "cofactor", "codim2", "split"],
                   default="auto")
    p.add_argument("--tol", type=float, default=default_tol)
    p.set_defaults(func=cmd_scale)

    p = sub.add_parser("dual", help="emit the canonical dual frame")
    p.add_argument("path")
    p.add_argument("--check-scalable", action="store_true",
                   help="also test scalability of the canonical dual")
    p.add_argument("--tol", type=float, default=default_tol)
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("generate", help="emit a named frame construction")
    p.add_argument("kind", choices=["mb", "hadamard-doubled", "p1", "random-unit"])
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--m", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--name")
    p.set_defaults(func=cmd_generate)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (IterationLimitError, InternalNumericError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 3
    except CorankMismatchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FramescaleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
