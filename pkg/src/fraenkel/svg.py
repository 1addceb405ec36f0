"""Static SVG drawings of partitions."""

from __future__ import annotations

import xml.etree.ElementTree as ET
from typing import Optional, Sequence

from .geometry import Disk, Region
from .partition import Partition

SVG_NS = "http://www.w3.org/2000/svg"
MARGIN = 0.05
WIDTH_PX = 800


def _path_data(r: Region) -> str:
    # y is flipped so the drawing has the usual mathematical orientation
    parts = []
    for c in r.components:
        pts = " L ".join(f"{x:.9g} {-y:.9g}" for x, y in c.vertices)
        parts.append(f"M {pts} Z")
    return " ".join(parts)


def render_partition(p: Partition, disks: Optional[Sequence[Disk]] = None) -> str:
    """SVG text with one <path> per cell and one <circle> per disk.

    The view box is the domain bounding box grown by 5% on every side.
    """
    x0, y0, x1, y1 = p.domain.bbox
    w, h = x1 - x0, y1 - y0
    mx, my = MARGIN * w, MARGIN * h
    vb = (x0 - mx, -(y1 + my), w + 2 * mx, h + 2 * my)
    stroke = 0.002 * max(w, h)
    root = ET.Element(
        "svg",
        {
            "xmlns": SVG_NS,
            "viewBox": " ".join(f"{v:.9g}" for v in vb),
            "width": str(WIDTH_PX),
            "height": str(round(WIDTH_PX * vb[3] / vb[2])),
        },
    )
    ET.SubElement(root, "path", {"class": "domain", "d": _path_data(p.domain), "fill": "#f4f4f4", "stroke": "none"})
    cells = ET.SubElement(root, "g", {"class": "cells", "fill": "none", "stroke": "#222", "stroke-width": f"{stroke:.6g}"})
    for i, c in enumerate(p.cells):
        ET.SubElement(cells, "path", {"id": f"cell-{i}", "d": _path_data(c)})
    if disks:
        g = ET.SubElement(root, "g", {"class": "disks", "fill": "none", "stroke": "#c33", "stroke-width": f"{stroke:.6g}"})
        for i, d in enumerate(disks):
            ET.SubElement(
                g,
                "circle",
                {"id": f"disk-{i}", "cx": f"{d.center.x:.9g}", "cy": f"{-d.center.y:.9g}", "r": f"{d.radius:.9g}"},
            )
    return ET.tostring(root, encoding="unicode") + "\n"
