"""Line-oriented text format for (composite) Bezier curves.

Example::

    # comments start with '#'
    name: closed8
    continuity: 0

    segment
    dimension: 2
    degree: 2
    weights: 1 2 1
    points:
    0 0
    1 1
    2 0

A document holds one or more ``segment`` blocks.  A segment without a
``weights`` line is a polynomial curve.  Numbers are written with 17
significant digits so a write/read cycle is bit-exact.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from ratbez.bezier import BezierCurve, CompositeCurve, RationalBezierCurve
from ratbez.errors import RatBezError, ValidationError


class DocumentError(RatBezError):
    """Malformed curve document; carries the 1-based line number."""

    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(eq=False)
class CurveDocument:
    segments: list
    continuity: int = 0
    meta: dict = field(default_factory=dict)

    def composite(self) -> CompositeCurve:
        return CompositeCurve(tuple(self.segments), self.continuity)


def fmt(x) -> str:
    return format(float(x), ".17g")


def _parse_numbers(text, lineno, what):
    try:
        return [float(tok) for tok in text.split()]
    except ValueError:
        raise DocumentError(f"could not parse {what} {text.strip()!r} as numbers", lineno) from None


def _parse_int(value, lineno, key):
    try:
        return int(value)
    except ValueError:
        raise DocumentError(f"{key} must be an integer, got {value!r}", lineno) from None


def _build_segment(seg, lineno):
    for key in ("dimension", "degree"):
        if key not in seg:
            raise DocumentError(f"segment is missing '{key}'", lineno)
    d, n = seg["dimension"], seg["degree"]
    rows = seg["rows"]
    if d < 1 or n < 0:
        raise DocumentError("dimension must be >= 1 and degree >= 0", lineno)
    if len(rows) != n + 1:
        raise DocumentError(f"expected {n + 1} point rows for degree {n}, got {len(rows)}", lineno)
    for row_line, row in rows:
        if len(row) != d:
            raise DocumentError(f"expected {d} coordinates, got {len(row)}", row_line)
    pts = np.array([r for _, r in rows], dtype=float).reshape(n + 1, d)
    try:
        if seg.get("weights") is None:
            return BezierCurve(pts)
        w = seg["weights"]
        if len(w) != n + 1:
            raise DocumentError(f"expected {n + 1} weights, got {len(w)}", seg["weights_line"])
        return RationalBezierCurve(pts, w)
    except ValidationError as exc:
        raise DocumentError(str(exc), lineno) from None


def parse_document(text: str) -> CurveDocument:
    doc = CurveDocument([])
    seg = None
    seg_line = None
    in_points = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line == "segment":
            if seg is not None:
                doc.segments.append(_build_segment(seg, seg_line))
            seg, seg_line, in_points = {"rows": []}, lineno, False
            continue
        if ":" in line:
            key, _, value = line.partition(":")
            key, value = key.strip().lower(), value.strip()
            if seg is None:
                if key == "continuity":
                    doc.continuity = _parse_int(value, lineno, key)
                else:
                    doc.meta[key] = value
                continue
            in_points = False
            if key in ("dimension", "degree"):
                seg[key] = _parse_int(value, lineno, key)
            elif key == "weights":
                seg["weights"] = _parse_numbers(value, lineno, "weights")
                seg["weights_line"] = lineno
            elif key == "points":
                in_points = True
                if value:
                    raise DocumentError("point rows go on the lines after 'points:'", lineno)
            else:
                raise DocumentError(f"unknown segment field {key!r}", lineno)
            continue
        if seg is None or not in_points:
            raise DocumentError(f"unexpected line {line!r}", lineno)
        seg["rows"].append((lineno, _parse_numbers(line, lineno, "point row")))
    if seg is not None:
        doc.segments.append(_build_segment(seg, seg_line))
    if not doc.segments:
        raise DocumentError("document contains no segments")
    if doc.continuity < 0:
        raise DocumentError("continuity must be non-negative")
    return doc


def format_document(doc: CurveDocument) -> str:
    lines = [f"{k}: {v}" for k, v in doc.meta.items()]
    if doc.continuity or len(doc.segments) > 1:
        lines.append(f"continuity: {doc.continuity}")
    for seg in doc.segments:
        lines += ["", "segment", f"dimension: {seg.dim}", f"degree: {seg.degree}"]
        if isinstance(seg, RationalBezierCurve):
            lines.append("weights: " + " ".join(fmt(x) for x in seg.weights))
        lines.append("points:")
        lines += [" ".join(fmt(x) for x in row) for row in seg.control_points]
    return "\n".join(lines) + "\n"


def read_document(path) -> CurveDocument:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc}") from None
    return parse_document(text)


def write_document(doc: CurveDocument, path):
    Path(path).write_text(format_document(doc))


FIXTURES = ("closed8", "open9", "sketch88")


def load_fixture(name: str) -> CurveDocument:
    """Bundled example curves: ``closed8``, ``open9`` and ``sketch88``."""
    if name not in FIXTURES:
        raise ValidationError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURES)}")
    text = resources.files("ratbez").joinpath("data", f"{name}.curve").read_text()
    return parse_document(text)
