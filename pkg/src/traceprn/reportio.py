"""Delimited and JSON report serialization.

CSV point files carry each coordinate twice: an exact `num/den` cell
(the normative value) and a 17-significant-digit float mirror for quick
plotting.  Readers only parse the exact columns.  All writers are
deterministic: fixed key order, fixed float formatting, no timestamps
in anything subject to byte-identity checks.
"""

from __future__ import annotations

import csv
import json
import re
from fractions import Fraction
from pathlib import Path

from .discrepancy import PointSet

_COORD_COL = re.compile(r"^(x|c)_(\d+)$")


def frac_str(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def float17(value: float) -> str:
    return format(value, ".17g")


def write_points_csv(path, points, index_rows, coord_prefix: str = "x", index_names=("n",)) -> None:
    """Write a point set: index columns, exact cells, float mirrors."""
    points = list(points)
    s = len(points[0].coords)
    header = (
        list(index_names)
        + [f"{coord_prefix}_{i}" for i in range(s)]
        + [f"{coord_prefix}f_{i}" for i in range(s)]
    )
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for idx, pt in zip(index_rows, points):
            row = list(idx)
            row += [frac_str(c) for c in pt.coords]
            row += [float17(float(c)) for c in pt.coords]
            writer.writerow(row)


def read_points_csv(path) -> PointSet:
    """Read a point set back from the gen/multigen CSV format.

    Coordinate columns are those named x_<i> or c_<i>; cells may be
    `num/den`, a decimal, or an integer - all parsed exactly.
    """
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: empty input") from None
        cols = sorted(
            ((int(m.group(2)), i) for i, name in enumerate(header) if (m := _COORD_COL.match(name))),
        )
        if not cols:
            raise ValueError(f"{path}: no coordinate columns (x_<i> or c_<i>) in header")
        rows = [tuple(Fraction(raw[i]) for _, i in cols) for raw in reader if raw]
    if not rows:
        raise ValueError(f"{path}: no data rows")
    return PointSet.from_coords(rows)


def write_json(path, payload: dict) -> None:
    """Canonical JSON: sorted keys, two-space indent, trailing newline."""
    text = json.dumps(payload, sort_keys=True, indent=2, allow_nan=False) + "\n"
    Path(path).write_text(text, encoding="utf-8")
