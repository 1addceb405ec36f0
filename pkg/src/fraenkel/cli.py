"""Command-line front end.

Exit status: 0 on success, 1 on invalid input or a failed validation,
2 when a file cannot be read or written.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import certificate, spectral
from .asymmetry import AsymmetryOptions, fraenkel_asymmetry
from .formats import (
    FormatError,
    bundled_fixture,
    dumps_geometry,
    dumps_report,
    fmt,
    loads_partition,
    loads_region,
    loads_spec,
    partition_to_obj,
    report_csv,
    report_obj,
    aggregate_obj,
    table,
)
from .generators import KINDS, GeneratorSpec, generate
from .geometry import GeometryError
from .partition import CELL_OPTIONS, PartitionError, evaluate_functional
from .svg import render_partition

EXIT_OK, EXIT_INVALID, EXIT_IO = 0, 1, 2
BUNDLED_PREFIX = "bundled:"

log = logging.getLogger("fraenkel")


class CliError(Exception):
    def __init__(self, message: str, status: int):
        super().__init__(message)
        self.status = status


@dataclass
class RunConfig:
    subcommand: str
    input_path: Optional[str] = None
    output_path: Optional[str] = None
    seed: int = 0
    format: str = "text"
    threads: int = 1
    samples: int = 20_000
    starts: Optional[int] = None
    extra: dict = field(default_factory=dict)


def _read_text(path: str) -> tuple[str, str]:
    if path.startswith(BUNDLED_PREFIX):
        try:
            p = bundled_fixture(path[len(BUNDLED_PREFIX):])
        except FileNotFoundError as e:
            raise CliError(str(e), EXIT_IO) from None
    else:
        p = Path(path)
    try:
        return p.read_text(), str(path)
    except OSError as e:
        raise CliError(f"cannot read {path}: {e.strerror or e}", EXIT_IO) from None


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text)
    except OSError as e:
        raise CliError(f"cannot write {out}: {e.strerror or e}", EXIT_IO) from None


def _options(cfg: RunConfig, base: AsymmetryOptions) -> AsymmetryOptions:
    if cfg.starts is None:
        return base
    if cfg.starts < 1:
        raise CliError("--starts must be positive", EXIT_INVALID)
    # starts = centroid + k*k grid
    k = max(1, math.isqrt(max(cfg.starts - 1, 1)))
    return AsymmetryOptions(**{**asdict(base), "grid": k, "max_starts": cfg.starts})


def _validated(p, cfg: RunConfig):
    rep = p.validate(samples=cfg.samples, seed=cfg.seed, raise_on_error=False)
    if not rep.ok:
        raise CliError(
            f"partition failed validation (max pair overlap {rep.max_pair_overlap:.3g}, "
            f"outside fraction {rep.outside_fraction:.3g}, coverage {rep.coverage:.6g})",
            EXIT_INVALID,
        )
    return p


# ----------------------------------------------------------------------------
# subcommands


def cmd_asym(cfg: RunConfig) -> str:
    text, src = _read_text(cfg.input_path)
    r = loads_region(text, src)
    res = fraenkel_asymmetry(r, _options(cfg, AsymmetryOptions()))
    obj = {
        "asymmetry": res.value,
        "center": list(res.center),
        "radius": res.radius,
        "area": r.area,
        "evaluations": res.evaluations,
        "converged": res.converged,
    }
    if cfg.format == "json":
        return dumps_report(obj)
    if cfg.format == "csv":
        return "asymmetry,center_x,center_y,radius,area,evaluations,converged\n" + ",".join(
            [fmt(res.value), fmt(res.center.x), fmt(res.center.y), fmt(res.radius), fmt(r.area), str(res.evaluations), str(res.converged).lower()]
        ) + "\n"
    return table(
        [
            ["asymmetry", fmt(res.value)],
            ["center", f"{fmt(res.center.x)} {fmt(res.center.y)}"],
            ["radius", fmt(res.radius)],
            ["area", fmt(r.area)],
            ["evaluations", str(res.evaluations)],
            ["converged", str(res.converged).lower()],
        ]
    )


def cmd_eval(cfg: RunConfig) -> str:
    text, src = _read_text(cfg.input_path)
    p = _validated(loads_partition(text, src), cfg)
    rep = evaluate_functional(
        p, _options(cfg, CELL_OPTIONS), interior_only=cfg.extra.get("interior", False), workers=cfg.threads
    )
    if cfg.format == "json":
        return dumps_report(report_obj(rep))
    # csv and text: per-cell CSV, then the JSON aggregate block
    return report_csv(rep) + "\n" + dumps_report(aggregate_obj(rep))


def _spec(cfg: RunConfig) -> GeneratorSpec:
    x = cfg.extra
    if x.get("spec"):
        text, src = _read_text(x["spec"])
        return loads_spec(text, src)
    if not x.get("kind") or not x.get("cells"):
        raise CliError("generate needs --spec FILE or both --kind and --cells", EXIT_INVALID)
    params = {}
    if x.get("ratio") is not None:
        params["ratio"] = x["ratio"]
    return GeneratorSpec(x["kind"], x["cells"], seed=cfg.seed, params=params)


def cmd_generate(cfg: RunConfig) -> str:
    p = _validated(generate(_spec(cfg)), cfg)
    return dumps_geometry(partition_to_obj(p))


def cmd_certify(cfg: RunConfig) -> str:
    x = cfg.extra
    c1, c2, c = x["c1"], x["c2"], x["c"]
    if c is None:
        c = certificate.PAPER_C
    if not c >= 0:
        raise CliError("--c must be nonnegative", EXIT_INVALID)
    rep = certificate.certificate_report(c1, c2, c)
    cert = certificate.certify_constant(c1, c2)
    obj = rep.to_dict()
    obj["c"] = c
    obj["c_max"] = cert.c_max
    if cfg.format == "json":
        return dumps_report(obj)
    rows = [["quantity", "value"]]
    for k, v in obj.items():
        if k == "params":
            rows += [[name, fmt(val)] for name, val in v.items()]
        else:
            rows.append([k, str(v).lower() if isinstance(v, bool) else fmt(v)])
    if cfg.format == "csv":
        return "".join(f"{a},{b}\n" for a, b in rows)
    return table(rows)


def _grid(spec) -> np.ndarray:
    lo, hi, n = spec
    return np.linspace(lo, hi, int(n))


def cmd_optimize(cfg: RunConfig) -> str:
    x = cfg.extra
    grid = None
    if x.get("c1_range") or x.get("c2_range"):
        d1, d2 = certificate.default_grid()
        grid = (
            _grid(x["c1_range"]) if x.get("c1_range") else d1,
            _grid(x["c2_range"]) if x.get("c2_range") else d2,
        )
    best = certificate.optimize_parameters(grid)
    paper = certificate.certify_constant(certificate.PAPER_C1, certificate.PAPER_C2).c_max
    obj = {"c1": best.c1, "c2": best.c2, "c": best.c, "reference_c": paper, "inverse_c": 1 / best.c if best.c else math.inf}
    if cfg.format == "json":
        return dumps_report(obj)
    rows = [["c1", "c2", "c", "1/c"], [fmt(best.c1), fmt(best.c2), fmt(best.c), fmt(obj["inverse_c"])]]
    if cfg.format == "csv":
        return "".join(",".join(r) + "\n" for r in rows)
    return table(rows)


def cmd_pleijel(cfg: RunConfig) -> str:
    x = cfg.extra
    j = spectral.bessel_zero()
    rows = [
        ["quantity", "value"],
        ["j", fmt(j)],
        ["(2/j)^2", fmt(spectral.pleijel_limit())],
        ["4pi/18.5762", fmt(spectral.hexagonal_obstruction())],
        ["pi/sqrt(12)", fmt(certificate.BLIND_DENSITY)],
        ["pi*j^2", fmt(math.pi * j * j)],
    ]
    if x.get("C") is not None:
        c = x["c"] if x.get("c") is not None else certificate.PAPER_C
        try:
            rows.append(["asymmetry_gain", fmt(spectral.asymmetry_branch_gain(c, x["C"]))])
            rows.append(["epsilon0", fmt(spectral.pleijel_epsilon(c, x["C"]))])
        except ValueError as e:
            raise CliError(str(e), EXIT_INVALID) from None
    if cfg.format == "json":
        return dumps_report({k: float(v) for k, v in rows[1:]})
    if cfg.format == "csv":
        return "".join(f"{a},{b}\n" for a, b in rows)
    return table(rows)


def cmd_render(cfg: RunConfig) -> str:
    text, src = _read_text(cfg.input_path)
    p = loads_partition(text, src)
    disks = None
    if cfg.extra.get("disks"):
        rep = evaluate_functional(p, _options(cfg, CELL_OPTIONS), workers=cfg.threads)
        disks = [r.disk for r in rep.per_cell]
    return render_partition(p, disks)


COMMANDS = {
    "asym": cmd_asym,
    "eval": cmd_eval,
    "generate": cmd_generate,
    "certify": cmd_certify,
    "optimize": cmd_optimize,
    "pleijel": cmd_pleijel,
    "render": cmd_render,
}


def run(cfg: RunConfig) -> int:
    """Execute one subcommand; returns the exit status."""
    try:
        out = COMMANDS[cfg.subcommand](cfg)
        _emit(out, cfg.output_path)
        return EXIT_OK
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.status
    except FormatError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    except (PartitionError, GeometryError, ValueError, ArithmeticError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID


# ----------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fraenkel", description="Fraenkel asymmetry and partition functional toolkit")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("json", "csv", "text"), default="text")
    common.add_argument("--out", help="output file (default: stdout)")
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    common.add_argument("--samples", type=int, default=20_000, help="Monte Carlo samples for partition validation")
    common.add_argument("--starts", type=int, help="optimizer start budget per region")
    sub = ap.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("asym", parents=[common], help="Fraenkel asymmetry of a region file")
    p.add_argument("input", help=f"region JSON file, or {BUNDLED_PREFIX}hexagon")

    p = sub.add_parser("eval", parents=[common], help="evaluate the functional on a partition file")
    p.add_argument("input", help=f"partition JSON file, or {BUNDLED_PREFIX}four_squares")
    p.add_argument("--interior", action="store_true", help="weight interior cells only")

    p = sub.add_parser("generate", parents=[common], help="write a generated partition")
    p.add_argument("--spec", help="generator spec JSON file")
    p.add_argument("--kind", choices=KINDS)
    p.add_argument("--cells", type=int)
    p.add_argument("--ratio", type=float, help="small/large radius ratio for two_scale")

    for name, helptext in (("certify", "evaluate the inequality chain"), ("pleijel", "print spectral constants")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--c", type=float)
        if name == "certify":
            p.add_argument("--c1", type=float, default=certificate.PAPER_C1)
            p.add_argument("--c2", type=float, default=certificate.PAPER_C2)
        else:
            p.add_argument("--C", type=float, help="Faber-Krahn stability constant (enables epsilon0)")

    p = sub.add_parser("optimize", parents=[common], help="search (c1, c2) for the largest certified constant")
    p.add_argument("--c1-range", nargs=3, type=float, metavar=("LO", "HI", "N"))
    p.add_argument("--c2-range", nargs=3, type=float, metavar=("LO", "HI", "N"))

    p = sub.add_parser("render", parents=[common], help="SVG drawing of a partition")
    p.add_argument("input")
    p.add_argument("--disks", action="store_true", help="overlay the optimal Fraenkel disks")
    return ap


_COMMON = ("subcommand", "input", "out", "seed", "format", "threads", "samples", "starts")


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    extra = {k: v for k, v in vars(ns).items() if k not in _COMMON}
    return RunConfig(
        subcommand=ns.subcommand,
        input_path=getattr(ns, "input", None),
        output_path=ns.out,
        seed=ns.seed,
        format=ns.format,
        threads=max(1, ns.threads),
        samples=ns.samples,
        starts=ns.starts,
        extra=extra,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    ns = build_parser().parse_args(argv)
    return run(config_from_args(ns))


if __name__ == "__main__":
    sys.exit(main())
