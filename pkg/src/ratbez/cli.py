"""Command line front end.

    ratbez run INPUT --degree 10 [--method dual|huang|lu] [options]
    ratbez compare INPUT --degree 10 [--methods dual,huang,lu] [--csv PATH]
    ratbez example NAME

INPUT is a curve document path or ``fixture:NAME`` for a bundled curve.
Every option default can be overridden by an environment variable named
``RATBEZ_<OPTION>`` (e.g. ``RATBEZ_EPS=1e-13``, ``RATBEZ_LU_LAMBDA=2``).

Exit codes: 0 success, 2 parse error, 3 validation error, 4 numerical failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import os
import sys
import time
from dataclasses import dataclass, field

from ratbez.approximator import ApproximationRequest, approximate, split_segments
from ratbez.baselines import huang_approximation, lu_iterate
from ratbez.bezier import BezierCurve, CompositeCurve, RationalBezierCurve
from ratbez.curvedoc import (FIXTURES, CurveDocument, DocumentError, fmt, format_document,
                             load_fixture, parse_document, read_document)
from ratbez.dual import ConstraintSpec, JacobiWeight
from ratbez.errors import NumericalError, RatBezError, ValidationError
from ratbez.metrics import error_report
from ratbez import svg

EXIT_OK, EXIT_PARSE, EXIT_VALIDATION, EXIT_NUMERIC = 0, 2, 3, 4
METHODS = ("dual", "huang", "lu")


@dataclass
class RunConfig:
    method: str = "dual"
    degrees: list = field(default_factory=list)
    k: int = 1
    l: int = 1
    alpha: float = 0.0
    beta: float = 0.0
    eps: float = 1e-12
    subdivide: list = field(default_factory=list)
    lu_lambda: float = 1.0
    lu_iters: int = 100
    lu_nodes: str = "uniform"
    samples: int = 10_000

    @property
    def weight(self):
        return JacobiWeight(self.alpha, self.beta)

    @property
    def constraints(self):
        return ConstraintSpec(self.k, self.l)


@dataclass
class PieceOutcome:
    source: RationalBezierCurve
    curve: BezierCurve
    e_inf: float
    argmax_t: float
    e_2: float
    seconds: float
    extra: dict


def _as_rational(seg):
    return RationalBezierCurve.from_polynomial(seg) if isinstance(seg, BezierCurve) else seg


def pieces_of(doc: CurveDocument, cfg: RunConfig):
    composite = CompositeCurve(tuple(doc.segments), doc.continuity)
    splits = [cfg.subdivide] * len(composite) if cfg.subdivide else None
    return [_as_rational(p) for p in split_segments(composite, splits)]


def _degrees_for(pieces, cfg):
    if not cfg.degrees:
        raise ValidationError("a target degree is required (--degree)")
    if len(cfg.degrees) == 1:
        return cfg.degrees * len(pieces)
    if len(cfg.degrees) != len(pieces):
        raise ValidationError(f"got {len(cfg.degrees)} degrees for {len(pieces)} pieces")
    return list(cfg.degrees)


def approximate_piece(piece, m, cfg: RunConfig, method=None, lu_iters=None) -> PieceOutcome:
    method = method or cfg.method
    start = time.perf_counter()
    extra = {}
    if method == "dual":
        res = approximate(ApproximationRequest(piece, m, cfg.constraints, cfg.weight, cfg.eps))
        curve = res.approximant
        extra["chebyshev_M"] = res.chebyshev_order
        extra["residual_orthogonality"] = res.residual_orthogonality
    elif method == "huang":
        if m < piece.degree:
            raise ValidationError(f"elevation needs degree >= {piece.degree}, got {m}")
        curve = huang_approximation(piece, m - piece.degree)
        extra["elevation"] = m - piece.degree
    elif method == "lu":
        iters = cfg.lu_iters if lu_iters is None else lu_iters
        out = lu_iterate(piece, m, cfg.lu_nodes, cfg.lu_lambda, iters)
        curve = out.curve
        extra.update(lu_lambda=cfg.lu_lambda, lu_nodes=cfg.lu_nodes, lu_iters=iters,
                     interpolation_residual=float(out.residuals[-1]))
    else:
        raise ValidationError(f"unknown method {method!r}")
    seconds = time.perf_counter() - start
    rep = error_report(piece, curve, cfg.weight, cfg.samples, cfg.eps)
    return PieceOutcome(piece, curve, rep.e_inf, rep.argmax_t, rep.e_2, seconds, extra)


def _value(v):
    return fmt(v) if isinstance(v, float) else str(v)


def format_report(cfg: RunConfig, outcomes) -> str:
    lines = [f"method: {cfg.method}", f"alpha: {_value(cfg.alpha)}", f"beta: {_value(cfg.beta)}",
             f"samples: {cfg.samples}", f"eps: {_value(cfg.eps)}"]
    if cfg.method == "dual":
        lines += [f"k: {cfg.k}", f"l: {cfg.l}"]
    lines.append(f"pieces: {len(outcomes)}")
    for idx, o in enumerate(outcomes):
        lines += ["", f"piece: {idx}", f"source_degree: {o.source.degree}", f"degree: {o.curve.degree}",
                  f"e_inf: {_value(o.e_inf)}", f"argmax_t: {_value(o.argmax_t)}", f"e_2: {_value(o.e_2)}"]
        lines += [f"{key}: {_value(val)}" for key, val in o.extra.items()]
        lines.append(f"wall_time_s: {o.seconds:.6f}")
    return "\n".join(lines) + "\n"


@dataclass
class RunOutput:
    document: CurveDocument
    report: str
    svg: str | None
    outcomes: list


def run(cfg: RunConfig, doc: CurveDocument, with_svg: bool = False) -> RunOutput:
    """Approximate every piece of ``doc`` with the configured method."""
    if cfg.method not in METHODS:
        raise ValidationError(f"unknown method {cfg.method!r}")
    pieces = pieces_of(doc, cfg)
    outcomes = [approximate_piece(p, m, cfg) for p, m in zip(pieces, _degrees_for(pieces, cfg))]
    meta = dict(doc.meta)
    meta["method"] = cfg.method
    out_doc = CurveDocument([o.curve for o in outcomes], doc.continuity, meta)
    picture = None
    if with_svg:
        picture = svg.render([("input", list(doc.segments)), (cfg.method, [o.curve for o in outcomes])])
    return RunOutput(out_doc, format_report(cfg, outcomes), picture, outcomes)


COMPARE_FIELDS = ("method", "iter", "lu_lambda", "lu_nodes", "piece", "degree", "e_inf", "e_2", "time_s")


def compare(cfg: RunConfig, doc: CurveDocument, methods, lu_iters=()):
    """Rows of e_inf/e_2/time per method (and per Lu iteration count) and piece."""
    rows = []
    if not methods:
        return rows
    pieces = pieces_of(doc, cfg)
    if len(cfg.degrees) != 1:
        raise ValidationError("compare needs a single target degree")
    m = cfg.degrees[0]
    for method in methods:
        counts = (list(lu_iters) or [cfg.lu_iters]) if method == "lu" else [None]
        for iters in counts:
            for idx, piece in enumerate(pieces):
                o = approximate_piece(piece, m, cfg, method, iters)
                rows.append({
                    "method": method, "iter": "" if iters is None else iters,
                    "lu_lambda": _value(cfg.lu_lambda) if method == "lu" else "",
                    "lu_nodes": cfg.lu_nodes if method == "lu" else "",
                    "piece": idx, "degree": m, "e_inf": fmt(o.e_inf), "e_2": fmt(o.e_2),
                    "time_s": f"{o.seconds:.6f}"})
    return rows


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=COMPARE_FIELDS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def rows_to_table(rows) -> str:
    head = f"{'method':<8}{'iter':>6}{'piece':>6}{'degree':>7}{'e_inf':>12}{'e_2':>12}{'time[s]':>10}"
    lines = [head, "-" * len(head)]
    for r in rows:
        lines.append(f"{r['method']:<8}{str(r['iter']) or '--':>6}{r['piece']:>6}{r['degree']:>7}"
                     f"{float(r['e_inf']):>12.4g}{float(r['e_2']):>12.4g}{float(r['time_s']):>10.4f}")
    return "\n".join(lines) + "\n"


def _int_list(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _float_list(text):
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _str_list(text):
    return [x.strip() for x in text.split(",") if x.strip()]


def _add_common(p):
    p.add_argument("input", help="curve document path, or fixture:NAME")
    p.add_argument("--degree", type=_int_list, default=[], help="target degree(s), comma-separated per piece")
    p.add_argument("--k", type=int, default=1, help="derivatives matched at t=0")
    p.add_argument("--l", type=int, default=1, help="derivatives matched at t=1")
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--eps", type=float, default=1e-12, help="Chebyshev tail tolerance")
    p.add_argument("--subdivide", type=_float_list, default=[], metavar="T1[,T2...]",
                   help="split every segment at these parameters")
    p.add_argument("--lu-lambda", type=float, default=1.0)
    p.add_argument("--lu-iters", type=_int_list, default=[100])
    p.add_argument("--lu-nodes", choices=("uniform", "chebyshev"), default="uniform")
    p.add_argument("--samples", type=int, default=10_000, help="sample count for e_inf")


def _apply_env(parser, env):
    for action in parser._actions:
        if not action.option_strings or action.dest == "help":
            continue
        key = "RATBEZ_" + action.dest.upper()
        if key in env:
            val = env[key]
            parser.set_defaults(**{action.dest: action.type(val) if action.type else val})


def build_parser(env=None):
    env = os.environ if env is None else env
    parser = argparse.ArgumentParser(prog="ratbez", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="approximate a curve document")
    _add_common(p_run)
    p_run.add_argument("--method", choices=METHODS, default="dual")
    p_run.add_argument("--out", help="write the approximant document here")
    p_run.add_argument("--report", help="write the error report here instead of stdout")
    p_run.add_argument("--svg", help="write an SVG overlay here")

    p_cmp = sub.add_parser("compare", help="tabulate errors of several methods")
    _add_common(p_cmp)
    p_cmp.add_argument("--methods", type=_str_list, default=list(METHODS))
    p_cmp.add_argument("--csv", help="write CSV here ('-' for stdout)")

    p_ex = sub.add_parser("example", help="print a bundled curve document")
    p_ex.add_argument("name", choices=FIXTURES)

    for p in (p_run, p_cmp):
        _apply_env(p, env)
    return parser


def _load_input(spec):
    if spec.startswith("fixture:"):
        return load_fixture(spec.split(":", 1)[1])
    if spec == "-":
        return parse_document(sys.stdin.read())
    return read_document(spec)


def _config(args):
    cfg = RunConfig(method=getattr(args, "method", "dual"), degrees=args.degree, k=args.k, l=args.l,
                    alpha=args.alpha, beta=args.beta, eps=args.eps, subdivide=args.subdivide,
                    lu_lambda=args.lu_lambda, lu_iters=args.lu_iters[-1] if args.lu_iters else 100,
                    lu_nodes=args.lu_nodes, samples=args.samples)
    if cfg.samples < 2:
        raise ValidationError("--samples must be at least 2")
    return cfg


def main(argv=None, env=None):
    args = build_parser(env).parse_args(argv)
    try:
        if args.command == "example":
            sys.stdout.write(format_document(load_fixture(args.name)))
            return EXIT_OK
        doc = _load_input(args.input)
        cfg = _config(args)
        if args.command == "run":
            out = run(cfg, doc, with_svg=bool(args.svg))
            if args.out:
                with open(args.out, "w") as fh:
                    fh.write(format_document(out.document))
            if args.svg:
                with open(args.svg, "w") as fh:
                    fh.write(out.svg)
            if args.report:
                with open(args.report, "w") as fh:
                    fh.write(out.report)
            else:
                sys.stdout.write(out.report)
        else:
            rows = compare(cfg, doc, args.methods, args.lu_iters)
            if args.csv == "-":
                sys.stdout.write(rows_to_csv(rows))
            else:
                if args.csv:
                    with open(args.csv, "w") as fh:
                        fh.write(rows_to_csv(rows))
                sys.stdout.write(rows_to_table(rows))
    except DocumentError as exc:
        print(f"ratbez: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValidationError as exc:
        print(f"ratbez: invalid input: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except NumericalError as exc:
        print(f"ratbez: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except RatBezError as exc:
        print(f"ratbez: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
