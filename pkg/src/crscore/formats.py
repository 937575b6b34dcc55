"""File formats.

Distribution and censoring files are JSON objects::

    {
      "name": "truth",
      "t_max": 2,
      "causes": 2,
      "mass": [
        [0.2, 0.3],
        [0.1, 0.2]
      ],
      "tail": 0.2
    }

``mass`` row ``j`` is cause ``j``, column ``t`` is time ``t`` (both 1-based).
Censoring files carry ``t_max``, ``mass`` (a flat list) and an optional
``name``. Unknown keys are rejected.

Observation files are CSV with header ``y,cause`` (cause 0 = censored) or the
indicator form ``y,delta_1,...,delta_M``.

Everything is written as UTF-8 with ``\\n`` line endings. Floats are written
with ``repr`` precision so parse -> write -> parse is exact.
"""
from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path

import numpy as np

from .core import (
    CensoringDistribution,
    CompetingRisksDistribution,
    Dataset,
    Observation,
    make_censoring,
    make_distribution,
)
from .errors import CauseOutOfRange, FormatError, GridMismatch

DISTRIBUTION_KEYS = ("name", "t_max", "causes", "mass", "tail")
CENSORING_KEYS = ("name", "t_max", "mass")


def _read_text(path) -> str:
    with open(path, encoding="utf-8-sig", newline="") as fh:
        text = fh.read()
    return text.replace("\r\n", "\n").replace("\r", "\n")


def _write_text(path, text: str):
    if str(path) == "-":
        import sys
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _load_json(text: str, source: str) -> dict:
    try:
        doc = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{source}: invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise FormatError(f"{source}: expected a JSON object")
    return doc


def _reject_constant(token):
    raise FormatError(f"non-finite number {token} not allowed")


def _check_keys(doc: dict, allowed, required, source):
    unknown = sorted(set(doc) - set(allowed))
    if unknown:
        raise FormatError(f"{source}: unknown field(s) {', '.join(unknown)}")
    missing = [k for k in required if k not in doc]
    if missing:
        raise FormatError(f"{source}: missing field(s) {', '.join(missing)}")
    if "name" in doc and not isinstance(doc["name"], str):
        raise FormatError(f"{source}: name must be a string")


def _integer(value, field, source) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise FormatError(f"{source}: {field} must be an integer")
    return value


def _number(value, field, source) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise FormatError(f"{source}: {field} must be a number")
    return float(value)


def _numbers(values, field, source) -> list[float]:
    if not isinstance(values, list):
        raise FormatError(f"{source}: {field} must be a list")
    return [_number(v, field, source) for v in values]


def is_distribution_doc(doc: dict) -> bool:
    return "causes" in doc or "tail" in doc


def distribution_from_doc(doc: dict, source: str = "<distribution>") -> CompetingRisksDistribution:
    _check_keys(doc, DISTRIBUTION_KEYS, ("t_max", "causes", "mass", "tail"), source)
    t_max = _integer(doc["t_max"], "t_max", source)
    causes = _integer(doc["causes"], "causes", source)
    if not isinstance(doc["mass"], list):
        raise FormatError(f"{source}: mass must be a list of rows")
    mass = [_numbers(row, "mass", source) for row in doc["mass"]]
    tail = _number(doc["tail"], "tail", source)
    return make_distribution(t_max, causes, mass, tail, name=doc.get("name"))


def censoring_from_doc(doc: dict, source: str = "<censoring>") -> CensoringDistribution:
    _check_keys(doc, CENSORING_KEYS, ("t_max", "mass"), source)
    t_max = _integer(doc["t_max"], "t_max", source)
    return make_censoring(t_max, _numbers(doc["mass"], "mass", source), name=doc.get("name"))


def read_distribution(path) -> CompetingRisksDistribution:
    return distribution_from_doc(_load_json(_read_text(path), str(path)), str(path))


def read_censoring(path) -> CensoringDistribution:
    return censoring_from_doc(_load_json(_read_text(path), str(path)), str(path))


def _num(x: float) -> str:
    return json.dumps(float(x))


def format_distribution(dist: CompetingRisksDistribution) -> str:
    lines = ["{"]
    if dist.name is not None:
        lines.append(f"  \"name\": {json.dumps(dist.name, ensure_ascii=False)},")
    lines.append(f"  \"t_max\": {dist.grid.t_max},")
    lines.append(f"  \"causes\": {dist.num_causes},")
    lines.append("  \"mass\": [")
    rows = ["    [" + ", ".join(_num(v) for v in row) + "]" for row in dist.mass.tolist()]
    lines.append(",\n".join(rows))
    lines.append("  ],")
    lines.append(f"  \"tail\": {_num(dist.tail)}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def format_censoring(cens: CensoringDistribution) -> str:
    lines = ["{"]
    if cens.name is not None:
        lines.append(f"  \"name\": {json.dumps(cens.name, ensure_ascii=False)},")
    lines.append(f"  \"t_max\": {cens.grid.t_max},")
    lines.append("  \"mass\": [" + ", ".join(_num(v) for v in cens.mass.tolist()) + "]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def write_distribution(path, dist: CompetingRisksDistribution):
    _write_text(path, format_distribution(dist))


def write_censoring(path, cens: CensoringDistribution):
    _write_text(path, format_censoring(cens))


# -- observations ---------------------------------------------------------

class RawObservations:
    """Parsed observation rows before they are bound to a grid.

    ``header_causes`` is M when the file used the indicator header, else None.
    """

    def __init__(self, y: np.ndarray, cause: np.ndarray, header_causes: int | None):
        self.y = y
        self.cause = cause
        self.header_causes = header_causes

    def __len__(self):
        return int(self.y.size)

    def bind(self, grid, num_causes: int) -> Dataset:
        if self.header_causes is not None and self.header_causes != num_causes:
            raise GridMismatch(
                f"observation file has {self.header_causes} indicator columns, model has {num_causes} causes")
        return Dataset(grid, num_causes, self.y, self.cause)


def _parse_int(token: str, source: str, line: int) -> int:
    token = token.strip()
    try:
        return int(token)
    except ValueError:
        raise FormatError(f"{source}:{line}: expected an integer, got {token!r}") from None


def parse_observations(text: str, source: str = "<observations>") -> RawObservations:
    text = text.replace("\r\n", "\n").replace("\r", "\n")
    if not text.strip():
        empty = np.zeros(0, dtype=np.int64)
        return RawObservations(empty, empty.copy(), None)
    rows = list(csv.reader(io.StringIO(text)))
    header = [h.strip() for h in rows[0]]
    if header == ["y", "cause"]:
        wide = None
    elif (len(header) >= 2 and header[0] == "y"
          and header[1:] == [f"delta_{j}" for j in range(1, len(header))]):
        wide = len(header) - 1
    else:
        raise FormatError(f"{source}: header must be 'y,cause' or 'y,delta_1,...,delta_M'")
    ys, causes = [], []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if len(row) != len(header):
            raise FormatError(f"{source}:{lineno}: expected {len(header)} fields, got {len(row)}")
        values = [_parse_int(tok, source, lineno) for tok in row]
        try:
            if wide is None:
                obs = Observation(values[0], values[1])
            else:
                obs = Observation.from_deltas(values[0], values[1:])
        except CauseOutOfRange as exc:
            raise CauseOutOfRange(f"{source}:{lineno}: {exc}") from None
        ys.append(obs.y)
        causes.append(obs.cause)
    return RawObservations(np.array(ys, dtype=np.int64), np.array(causes, dtype=np.int64), wide)


def read_observations(path) -> RawObservations:
    return parse_observations(_read_text(path), str(path))


def format_observations(data: Dataset, wide: bool = False) -> str:
    out = io.StringIO()
    M = data.num_causes
    if wide:
        out.write(",".join(["y"] + [f"delta_{j}" for j in range(1, M + 1)]) + "\n")
        for y, c in zip(data.y.tolist(), data.cause.tolist()):
            out.write(",".join([str(y)] + ["1" if c == j else "0" for j in range(1, M + 1)]) + "\n")
    else:
        out.write("y,cause\n")
        out.writelines(f"{y},{c}\n" for y, c in zip(data.y.tolist(), data.cause.tolist()))
    return out.getvalue()


def write_observations(path, data: Dataset, wide: bool = False):
    _write_text(path, format_observations(data, wide))


# -- reports --------------------------------------------------------------

def report_value(x):
    """Make a value JSON-safe, spelling infinity as the token ``"inf"``."""
    if isinstance(x, float) and math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if isinstance(x, dict):
        return {k: report_value(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [report_value(v) for v in x]
    if isinstance(x, np.generic):
        return report_value(x.item())
    return x


def format_report(doc: dict) -> str:
    return json.dumps(report_value(doc), indent=2, ensure_ascii=False, allow_nan=False) + "\n"


def parse_report_number(value) -> float:
    """Inverse of :func:`report_value` for numbers."""
    if value == "inf":
        return math.inf
    if value == "-inf":
        return -math.inf
    return float(value)


def file_kind(path) -> str:
    """Guess a file's kind: ``observations``, ``distribution`` or ``censoring``."""
    if Path(path).suffix.lower() in (".csv", ".txt"):
        return "observations"
    text = _read_text(path)
    if text.lstrip().startswith("{"):
        doc = _load_json(text, str(path))
        return "distribution" if is_distribution_doc(doc) else "censoring"
    return "observations"
