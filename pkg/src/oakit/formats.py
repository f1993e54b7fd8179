"""The "moa v1" text format and the oakit-report-v1 JSON schema.

moa v1 (UTF-8, LF) lays out an array as::

    moa v1
    runs 24
    levels 3 2 2 2 2
    strength 2          <- optional, advisory only
    rows:
    0 0 0 0 0
    ...

`#`-prefixed comment lines may appear anywhere before ``rows:``.  Difference
schemes and Hadamard matrices use the same layout with an extra header line
directly after the version line: ``kind ds <d> <t>`` (with an optional
trailing group tag ``mod`` or ``gf``; absent means ``mod``) or
``kind hadamard``.  Serialization is bit-exact canonical: single spaces, no
trailing whitespace, LF endings.
"""

from __future__ import annotations

import json
from typing import TYPE_CHECKING

import numpy as np

from .arrays import (
    DistanceSpectrum,
    IrredundancyReport,
    MixedArray,
    StrengthReport,
)
from .errors import FormatError

if TYPE_CHECKING:  # pragma: no cover
    from .algebra import DifferenceScheme, HadamardMatrix01

__all__ = [
    "serialize_array",
    "parse_array",
    "serialize_scheme",
    "serialize_hadamard",
    "parse_any",
    "verification_report",
    "uniformity_report",
]

REPORT_SCHEMA = "oakit-report-v1"


def _matrix_lines(cells: np.ndarray) -> list[str]:
    return [" ".join(str(int(x)) for x in row) for row in cells]


def serialize_array(array: MixedArray, strength: int | None = None) -> str:
    lines = ["moa v1", f"runs {array.runs}", "levels " + " ".join(map(str, array.levels))]
    if strength is not None:
        lines.append(f"strength {strength}")
    lines.append("rows:")
    lines.extend(_matrix_lines(array.cells))
    return "\n".join(lines) + "\n"


def serialize_scheme(scheme: "DifferenceScheme") -> str:
    kind = f"kind ds {scheme.order} {scheme.strength}"
    if scheme.group.tag != "mod":
        kind += f" {scheme.group.tag}"
    lines = [
        "moa v1",
        kind,
        f"runs {scheme.rows}",
        "levels " + " ".join([str(scheme.order)] * scheme.cols),
        "rows:",
    ]
    lines.extend(_matrix_lines(scheme.cells))
    return "\n".join(lines) + "\n"


def serialize_hadamard(h: "HadamardMatrix01") -> str:
    lines = [
        "moa v1",
        "kind hadamard",
        f"runs {h.order}",
        "levels " + " ".join(["2"] * h.order),
        "rows:",
    ]
    lines.extend(_matrix_lines(h.cells))
    return "\n".join(lines) + "\n"


def _parse_header(text: str):
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    pos = 0
    header: dict[str, str] = {}
    order: list[str] = []
    seen_version = False
    while pos < len(lines):
        line = lines[pos]
        pos += 1
        if line.startswith("#"):
            continue
        if line.strip() == "":
            raise FormatError("blank line before rows:")
        if not seen_version:
            if line != "moa v1":
                raise FormatError(f"expected 'moa v1' header, got {line!r}")
            seen_version = True
            continue
        if line == "rows:":
            break
        try:
            key, value = line.split(" ", 1)
        except ValueError as exc:
            raise FormatError(f"malformed header line {line!r}") from exc
        header[key] = value
        order.append(key)
    else:
        raise FormatError("missing rows: marker")
    return header, lines[pos:]


def parse_any(text: str):
    """Parse a moa v1 document; returns the kind-appropriate object.

    Plain arrays come back as a MixedArray; ``kind ds``/``kind hadamard``
    documents come back as DifferenceScheme/HadamardMatrix01.
    """
    header, row_lines = _parse_header(text)
    if "runs" not in header or "levels" not in header:
        raise FormatError("missing runs or levels header")
    try:
        runs = int(header["runs"])
        levels = tuple(int(x) for x in header["levels"].split())
    except ValueError as exc:
        raise FormatError("runs/levels must be integers") from exc
    rows = []
    for line in row_lines:
        if line.startswith("#"):
            raise FormatError("comments are only allowed before rows:")
        parts = line.split(" ")
        if len(parts) != len(levels) or line != " ".join(parts):
            raise FormatError(f"malformed row {line!r}")
        try:
            rows.append([int(x) for x in parts])
        except ValueError as exc:
            raise FormatError(f"non-integer symbol in row {line!r}") from exc
    if len(rows) != runs:
        raise FormatError(f"declared {runs} rows, found {len(rows)}")
    cells = np.array(rows, dtype=np.int64)
    kind = header.get("kind")
    if kind is None:
        return MixedArray(levels, cells)
    from .algebra import DifferenceScheme, HadamardMatrix01, additive_group

    parts = kind.split()
    if parts[0] == "hadamard":
        return HadamardMatrix01(len(rows), cells)
    if parts[0] == "ds":
        if len(parts) not in (3, 4):
            raise FormatError(f"malformed kind line {kind!r}")
        d, t = int(parts[1]), int(parts[2])
        tag = parts[3] if len(parts) == 4 else "mod"
        if set(levels) != {d}:
            raise FormatError("difference scheme levels must all equal its order")
        return DifferenceScheme(cells, d, t, additive_group(d, tag), verify=True)
    raise FormatError(f"unknown kind {parts[0]!r}")


def parse_array(text: str) -> MixedArray:
    obj = parse_any(text)
    if not isinstance(obj, MixedArray):
        raise FormatError("document is not a plain array")
    return obj


def _witness_json(report: StrengthReport):
    w = report.witness
    if w is None:
        return None
    out: dict = {"columns": list(w.columns)}
    if w.symbols is None:
        out["reason"] = "run count not divisible by level product"
        out["expected"] = str(w.expected)
    else:
        out["tuple"] = list(w.symbols)
        out["count"] = w.count
        out["expected"] = int(w.expected)
    return out


def verification_report(
    strength: StrengthReport,
    spectrum: DistanceSpectrum,
    irredundant: IrredundancyReport | None,
) -> dict:
    report: dict = {
        "schema": REPORT_SCHEMA,
        "strength": {
            "k": strength.strength_checked,
            "holds": strength.holds,
            "lambda": strength.index,
        },
        "distance": {
            "min": spectrum.min_distance,
            "spectrum": list(spectrum.distances),
        },
        "irredundant": None
        if irredundant is None
        else {"k": irredundant.k, "holds": irredundant.holds},
    }
    witness = _witness_json(strength)
    if witness is not None:
        report["strength"]["witness"] = witness
    return report


def uniformity_report(uniformity, spectrum: DistanceSpectrum | None = None) -> dict:
    report: dict = {
        "schema": REPORT_SCHEMA,
        "uniformity": {
            "k": uniformity.k,
            "holds": uniformity.holds,
            "subsets_checked": uniformity.subsets_checked,
            "subsets_total": uniformity.subsets_total,
        },
    }
    if uniformity.witness_subset is not None:
        report["uniformity"]["witness"] = {"columns": list(uniformity.witness_subset)}
    if spectrum is not None:
        report["distance"] = {
            "min": spectrum.min_distance,
            "spectrum": list(spectrum.distances),
        }
    return report


def dump_json(obj: dict) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"
