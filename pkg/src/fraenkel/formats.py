"""JSON and CSV file formats.

Region:    {"components": [[[x, y], ...], ...]}
Partition: {"domain": <Region>, "cells": [<Region>, ...]}
Generator: {"kind": ..., "target_cells": ..., "seed": ..., "params": {...}, "domain": <Region, optional>}

Geometry files store coordinates at full precision. Reports are written at
12 significant digits so repeated runs diff cleanly. Every loader reports
problems as :class:`FormatError` carrying the line of the offending value.
"""

from __future__ import annotations

import csv
import io
import json
import math
from importlib import resources
from pathlib import Path
from typing import Any, Sequence

from .generators import GeneratorSpec
from .geometry import GeometryError, Region, SimplePolygon
from .partition import FunctionalReport, Partition

DIGITS = 12
CSV_HEADER = ("cell_id", "area", "asymmetry", "deviation", "disk_cx", "disk_cy", "disk_r")


class FormatError(ValueError):
    """Malformed input file; ``line`` is 1-based."""

    def __init__(self, message: str, line: int | None = None, source: str = "<input>"):
        self.line = line
        self.source = source
        self.message = message
        where = f"{source}:{line}" if line is not None else source
        super().__init__(f"{where}: {message}")


class _Bad(Exception):
    def __init__(self, path: tuple, message: str):
        self.path = path
        self.message = message


# ----------------------------------------------------------------------------
# locating a JSON path in the source text


def _skip_ws(text: str, pos: int) -> int:
    while pos < len(text) and text[pos] in " \t\r\n":
        pos += 1
    return pos


def _locate(text: str, path: tuple) -> int:
    """Offset of the value at ``path`` (keys and indices); best effort."""
    dec = json.JSONDecoder()
    pos = _skip_ws(text, 0)
    try:
        for key in path:
            if text[pos] == "{":
                pos = _skip_ws(text, pos + 1)
                while text[pos] != "}":
                    k, pos = json.decoder.scanstring(text, pos + 1)
                    pos = _skip_ws(text, _skip_ws(text, pos) + 1)
                    if k == key:
                        break
                    _, pos = dec.raw_decode(text, pos)
                    pos = _skip_ws(text, pos)
                    if text[pos] == ",":
                        pos = _skip_ws(text, pos + 1)
                else:
                    return pos
            elif text[pos] == "[":
                pos = _skip_ws(text, pos + 1)
                for _ in range(int(key)):
                    _, pos = dec.raw_decode(text, pos)
                    pos = _skip_ws(text, pos)
                    if text[pos] == ",":
                        pos = _skip_ws(text, pos + 1)
            else:
                return pos
    except (IndexError, ValueError):
        pass
    return min(pos, len(text))


def _line_of(text: str, pos: int) -> int:
    return text.count("\n", 0, pos) + 1


def _parse(text: str, source: str, build):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(e.msg, e.lineno, source) from None
    try:
        return build(obj, ())
    except _Bad as e:
        raise FormatError(e.message, _line_of(text, _locate(text, e.path)), source) from None


# ----------------------------------------------------------------------------
# object <-> domain types


def _number(v, path) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise _Bad(path, f"expected a number, got {type(v).__name__}")
    x = float(v)
    if not math.isfinite(x):
        raise _Bad(path, "coordinate is not finite")
    return x


def _region_from(obj, path) -> Region:
    if not isinstance(obj, dict) or "components" not in obj:
        raise _Bad(path, 'a region must be an object with a "components" list')
    comps = obj["components"]
    cpath = path + ("components",)
    if not isinstance(comps, list) or not comps:
        raise _Bad(cpath, "components must be a non-empty list")
    polys = []
    for i, comp in enumerate(comps):
        p = cpath + (i,)
        if not isinstance(comp, list):
            raise _Bad(p, "a component must be a list of [x, y] pairs")
        pts = []
        for k, v in enumerate(comp):
            if not isinstance(v, list) or len(v) != 2:
                raise _Bad(p + (k,), "a vertex must be a pair [x, y]")
            pts.append((_number(v[0], p + (k, 0)), _number(v[1], p + (k, 1))))
        try:
            polys.append(SimplePolygon(pts))
        except GeometryError as e:
            raise _Bad(p, str(e)) from None
    return Region(tuple(polys))


def _partition_from(obj, path) -> Partition:
    if not isinstance(obj, dict):
        raise _Bad(path, "a partition must be an object")
    for key in ("domain", "cells"):
        if key not in obj:
            raise _Bad(path, f'missing "{key}"')
    cells = obj["cells"]
    if not isinstance(cells, list) or not cells:
        raise _Bad(path + ("cells",), "cells must be a non-empty list")
    domain = _region_from(obj["domain"], path + ("domain",))
    return Partition(domain, tuple(_region_from(c, path + ("cells", i)) for i, c in enumerate(cells)))


def _spec_from(obj, path) -> GeneratorSpec:
    if not isinstance(obj, dict):
        raise _Bad(path, "a generator spec must be an object")
    unknown = set(obj) - {"kind", "target_cells", "seed", "params", "domain"}
    if unknown:
        raise _Bad(path + (sorted(unknown)[0],), f"unknown field {sorted(unknown)[0]!r}")
    kw: dict[str, Any] = {}
    for key in ("kind", "target_cells"):
        if key not in obj:
            raise _Bad(path, f'missing "{key}"')
    if not isinstance(obj["target_cells"], int) or isinstance(obj["target_cells"], bool):
        raise _Bad(path + ("target_cells",), "target_cells must be an integer")
    if "seed" in obj and (not isinstance(obj["seed"], int) or isinstance(obj["seed"], bool)):
        raise _Bad(path + ("seed",), "seed must be an integer")
    if "params" in obj and not isinstance(obj["params"], dict):
        raise _Bad(path + ("params",), "params must be an object")
    if "domain" in obj:
        kw["domain"] = _region_from(obj["domain"], path + ("domain",))
    try:
        return GeneratorSpec(
            kind=obj["kind"], target_cells=obj["target_cells"], seed=obj.get("seed", 0), params=dict(obj.get("params", {})), **kw
        )
    except ValueError as e:
        raise _Bad(path, str(e)) from None


def region_to_obj(r: Region) -> dict:
    return {"components": [c.vertices.tolist() for c in r.components]}


def partition_to_obj(p: Partition) -> dict:
    return {"domain": region_to_obj(p.domain), "cells": [region_to_obj(c) for c in p.cells]}


def spec_to_obj(s: GeneratorSpec) -> dict:
    return {
        "kind": s.kind,
        "target_cells": s.target_cells,
        "seed": s.seed,
        "params": dict(s.params),
        "domain": region_to_obj(s.domain),
    }


def loads_region(text: str, source: str = "<input>") -> Region:
    return _parse(text, source, _region_from)


def loads_partition(text: str, source: str = "<input>") -> Partition:
    return _parse(text, source, _partition_from)


def loads_spec(text: str, source: str = "<input>") -> GeneratorSpec:
    return _parse(text, source, _spec_from)


def read_region(path) -> Region:
    return loads_region(Path(path).read_text(), str(path))


def read_partition(path) -> Partition:
    return loads_partition(Path(path).read_text(), str(path))


def read_spec(path) -> GeneratorSpec:
    return loads_spec(Path(path).read_text(), str(path))


def dumps_geometry(obj: dict) -> str:
    """Compact JSON with one component per line; floats at full precision."""
    return json.dumps(obj, separators=(",", ":")) + "\n"


def write_partition(p: Partition, path) -> None:
    Path(path).write_text(dumps_geometry(partition_to_obj(p)))


def write_region(r: Region, path) -> None:
    Path(path).write_text(dumps_geometry(region_to_obj(r)))


def bundled_fixture(name: str) -> Path:
    """Path of a fixture shipped with the package (``hexagon`` or ``four_squares``)."""
    res = resources.files("fraenkel") / "data" / f"{name}.json"
    if not res.is_file():
        raise FileNotFoundError(f"no bundled fixture named {name!r}")
    return Path(str(res))


# ----------------------------------------------------------------------------
# reports


def fmt(x: float) -> str:
    return format(x, f".{DIGITS}g")


def rounded(obj):
    """Recursively round floats to 12 significant digits."""
    if isinstance(obj, float):
        return float(fmt(obj)) if math.isfinite(obj) else obj
    if isinstance(obj, dict):
        return {k: rounded(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [rounded(v) for v in obj]
    return obj


def dumps_report(obj) -> str:
    return json.dumps(rounded(obj), indent=2, sort_keys=False) + "\n"


def aggregate_obj(report: FunctionalReport) -> dict:
    s = report.stats
    return {
        "n_cells": s.n_cells,
        "min_area": s.min_area,
        "eta0": s.eta0,
        "a_sum": s.a_sum,
        "d_sum": s.d_sum,
        "functional": s.functional,
        "total_area": s.total_area,
    }


def cell_rows(report: FunctionalReport) -> list[list]:
    return [
        [r.cell_id, r.area, r.asymmetry, r.deviation, r.disk.center.x, r.disk.center.y, r.disk.radius]
        for r in report.per_cell
    ]


def report_csv(report: FunctionalReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for row in cell_rows(report):
        w.writerow([row[0]] + [fmt(v) for v in row[1:]])
    return buf.getvalue()


def report_obj(report: FunctionalReport) -> dict:
    return {
        "aggregate": aggregate_obj(report),
        "cells": [dict(zip(CSV_HEADER, row)) for row in cell_rows(report)],
    }


def read_report_csv(text: str) -> list[dict]:
    """Parse a report CSV back into dicts of floats (cell_id as int)."""
    rows = list(csv.DictReader(io.StringIO(text)))
    out = []
    for r in rows:
        d = {k: float(v) for k, v in r.items()}
        d["cell_id"] = int(d["cell_id"])
        out.append(d)
    return out


def table(rows: Sequence[Sequence[str]]) -> str:
    """Left-aligned text table."""
    widths = [max(len(str(r[i])) for r in rows) for i in range(len(rows[0]))]
    return "".join("  ".join(str(c).ljust(w) for c, w in zip(r, widths)).rstrip() + "\n" for r in rows)
