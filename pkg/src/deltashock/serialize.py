"""CSV/JSON writers for profiles, wave tables and sweep tables.

CSV numbers use 17 significant digits; JSON relies on Python's shortest
round-trip float repr, so both re-read bit-exactly.
"""

from __future__ import annotations

import csv
import io
import json
import math
import sys
from pathlib import Path
from typing import Iterable, Sequence, TextIO

import numpy as np

from deltashock.fan import WaveFan

PROFILE_HEADER = ("x", "t", "u", "rho", "region_tag")
DELTA_HEADER = ("speed", "w0", "carried_u", "eps_correction")
SWEEP_HEADER = ("eps", "u_star", "log_rho_star", "eps_p_rho_star", "s1", "s2", "d_coeff",
                "err_u", "err_l", "err_w")


def fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v)).lower()
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    return str(v)


def _json_num(v):
    if isinstance(v, (np.floating, float)):
        v = float(v)
        return v if math.isfinite(v) else None
    if isinstance(v, np.integer):
        return int(v)
    if isinstance(v, np.bool_):
        return bool(v)
    return v


def write_csv(stream: TextIO, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([fmt(v) for v in r])


def profile_rows(fan: WaveFan, x, t: float) -> list[tuple]:
    """``(x, t, u, rho, region_tag)`` at positions ``x`` and time ``t > 0``."""
    if not t > 0.0:
        raise ValueError("profile time must be positive")
    x = np.asarray(x, dtype=float)
    u, rho, tag = fan.sample_xi(x / t)
    return [(float(xi), float(t), float(ui), float(ri), str(tg)) for xi, ui, ri, tg in zip(x, u, rho, tag)]


def delta_rows(fan: WaveFan) -> list[tuple]:
    return [(d.speed, d.weight_coefficient, d.carried_u, d.eps_correction) for d in fan.deltas]


def _open(out: str | Path | None):
    if out is None or str(out) == "-":
        return sys.stdout, False
    return open(out, "w", newline="", encoding="utf-8"), True


def delta_sidecar(out: str | Path) -> Path:
    """``name.delta.csv`` next to ``name.csv``."""
    p = Path(out)
    return p.with_name(p.stem + ".delta.csv") if p.suffix else p.with_name(p.name + ".delta.csv")


def emit_profile(fan: WaveFan, x, t: float, out: str | Path | None = None, fmt_: str = "csv",
                 meta: dict | None = None) -> None:
    """Write a sampled profile.

    CSV goes to ``out`` (stdout if ``None``); delta segments go to a sibling
    ``*.delta.csv`` or, on stdout, follow the profile after a blank line.
    JSON holds ``{meta, profile, waves}`` in one document.
    """
    rows = profile_rows(fan, x, t)
    if fmt_ == "json":
        doc = {
            "meta": {k: _json_num(v) for k, v in (meta or {}).items()},
            "profile": [dict(zip(PROFILE_HEADER, (r[0], r[1], r[2], r[3], r[4]))) for r in rows],
            "waves": [{k: _json_num(v) for k, v in w.items()} for w in fan.describe()],
        }
        write_json(doc, out)
        return
    if fmt_ != "csv":
        raise ValueError(f"unknown format {fmt_!r}")
    drows = delta_rows(fan)
    stream, close = _open(out)
    try:
        write_csv(stream, PROFILE_HEADER, rows)
        if drows and not close:
            stream.write("\n")
            write_csv(stream, DELTA_HEADER, drows)
    finally:
        if close:
            stream.close()
    if drows and close:
        with open(delta_sidecar(out), "w", newline="", encoding="utf-8") as fh:
            write_csv(fh, DELTA_HEADER, drows)


def emit_table(header: Sequence[str], rows: Sequence[Sequence], out: str | Path | None = None,
               fmt_: str = "csv", meta: dict | None = None) -> None:
    """Generic table: CSV, or JSON ``{meta, rows}`` with one dict per row."""
    if fmt_ == "json":
        write_json({"meta": {k: _json_num(v) for k, v in (meta or {}).items()},
                    "rows": [{h: _json_num(v) for h, v in zip(header, r)} for r in rows]}, out)
        return
    if fmt_ != "csv":
        raise ValueError(f"unknown format {fmt_!r}")
    stream, close = _open(out)
    try:
        write_csv(stream, header, rows)
    finally:
        if close:
            stream.close()


def emit_sweep(records: Sequence, out: str | Path | None = None, fmt_: str = "csv", meta: dict | None = None) -> None:
    """One row per sweep record in input order, columns :data:`SWEEP_HEADER`."""
    if not records:
        raise ValueError("empty sweep")
    emit_table(SWEEP_HEADER, [r.row() for r in records], out, fmt_, meta)


def write_json(doc: dict, out: str | Path | None = None) -> None:
    text = json.dumps(doc, indent=1, allow_nan=False)
    stream, close = _open(out)
    try:
        stream.write(text + "\n")
    finally:
        if close:
            stream.close()


def read_csv(text_or_path) -> list[dict]:
    """Parse a CSV table written by this module (first block only)."""
    p = Path(text_or_path) if not isinstance(text_or_path, str) or "\n" not in text_or_path else None
    text = p.read_text(encoding="utf-8") if p is not None else text_or_path
    block = text.split("\n\n", 1)[0]
    return list(csv.DictReader(io.StringIO(block)))
