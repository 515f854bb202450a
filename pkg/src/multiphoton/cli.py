"""Command-line entry point.

Subcommands: ``sweep``, ``visibility``, ``fwhm``, ``evolve``, ``verify``.
Exit status is 0 on success, 1 when ``verify`` exceeds its tolerance and 2 on
invalid input.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import os
import re
import sys
import tempfile
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .analysis import (
    DEFAULT_POINTS,
    angle_grid,
    augmented_grid,
    estimate_fwhm,
    estimate_visibility,
    sweep,
    verify_routes,
)
from .correlations import fwhm_predicted, visibility_closed_form
from .errors import DegenerateStateError, EstimationError, InputDomainError
from .geometry import EmitterChain
from .quantum_state import conditional_state, heralded_w_state, overlap, w_state

EXIT_OK, EXIT_VERIFY_FAILED, EXIT_USAGE = 0, 1, 2

_PI_RE = re.compile(r"^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?|[+-])?\s*\*?\s*pi\s*(?:/\s*(\d+\.?\d*))?\s*$")


def parse_real(text: str) -> float:
    """Decimal, or a multiple of pi: ``pi``, ``2pi``, ``-0.5*pi``, ``pi/2``."""
    match = _PI_RE.match(text.lower())
    if match:
        coef, div = match.groups()
        if coef in ("+", "-"):
            coef += "1"
        value = float(coef or 1) * math.pi
        return value / float(div) if div else value
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number or multiple of pi: {text!r}") from None


def parse_angles(text: str) -> list[float]:
    text = text.strip()
    if not text:
        return []
    return [parse_real(t) for t in text.split(",")]


def fmt(x: float) -> str:
    return format(float(x), ".17g")


@dataclass
class RunConfig:
    command: str
    n: int = 2
    m: int | None = None
    kd: float = math.pi
    theta1: float = 0.0
    points: int = DEFAULT_POINTS
    route: str = "auto"
    output_format: str = "csv"
    output_path: str | None = None
    seed: int = 42
    detections: tuple[float, ...] = ()
    trials: int = 100
    workers: int | None = None

    def validate(self) -> None:
        if self.n < 1:
            raise InputDomainError(f"--n must be >= 1, got {self.n}")
        if self.m is None:
            self.m = self.n
        if self.command in ("sweep", "visibility") and not 1 <= self.m <= self.n:
            raise InputDomainError(f"--m must be in 1..{self.n}, got {self.m}")
        if self.command in ("visibility", "fwhm") and self.n < 2:
            raise InputDomainError("--n must be >= 2 for predictions")
        if not self.kd > 0 or not math.isfinite(self.kd):
            raise InputDomainError(f"--kd must be positive, got {self.kd}")
        if not -math.pi / 2 <= self.theta1 <= math.pi / 2:
            raise InputDomainError(f"--theta1 must lie in [-pi/2, pi/2], got {self.theta1}")
        if self.points < 3:
            raise InputDomainError(f"--points must be >= 3, got {self.points}")
        if self.command == "verify" and not 1 <= self.n <= 8:
            raise InputDomainError(f"--n-max must be in 1..8, got {self.n}")

    def meta(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "kd": self.kd,
            "theta1": self.theta1,
            "route": self.route,
            "points": self.points,
            "seed": self.seed,
            "tool_version": __version__,
        }


def write_atomic(path: str | Path, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def emit(text: str, path: str | None) -> None:
    if path:
        write_atomic(path, text)
    else:
        sys.stdout.write(text)


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _sweep_csv(result) -> str:
    buf = io.StringIO()
    buf.write("theta2,g_value,g_normalized\n")
    for t, v, g in zip(result.angles, result.values, result.normalized):
        buf.write(f"{fmt(t)},{fmt(v)},{fmt(g)}\n")
    return buf.getvalue()


def cmd_sweep(cfg: RunConfig) -> int:
    chain = EmitterChain(cfg.n, cfg.kd)
    result = sweep(chain, cfg.m, cfg.theta1, angle_grid(cfg.points), cfg.route, cfg.workers)
    meta = cfg.meta() | {"route": result.meta["route"]}
    if cfg.output_format == "json":
        emit(
            dump_json(
                {
                    "meta": meta,
                    "theta2": result.angles.tolist(),
                    "g_value": result.values.tolist(),
                    "g_normalized": result.normalized.tolist(),
                }
            ),
            cfg.output_path,
        )
        return EXIT_OK
    emit(_sweep_csv(result), cfg.output_path)
    if cfg.output_path:
        write_atomic(Path(cfg.output_path).with_suffix(".json"), dump_json(meta))
    return EXIT_OK


def _relative_error(predicted: float, measured: float) -> float:
    return abs(measured - predicted) / abs(predicted) if predicted else abs(measured)


def cmd_visibility(cfg: RunConfig) -> int:
    chain = EmitterChain(cfg.n, cfg.kd)
    grid = augmented_grid(cfg.points, cfg.n, cfg.kd, cfg.theta1)
    result = sweep(chain, cfg.m, cfg.theta1, grid, cfg.route, cfg.workers)
    predicted = visibility_closed_form(cfg.n, cfg.m)
    measured = estimate_visibility(result)
    out = {"predicted": predicted, "measured": measured, "relative_error": _relative_error(predicted, measured)}
    emit(dump_json(out | {"meta": cfg.meta()}), cfg.output_path)
    return EXIT_OK


def cmd_fwhm(cfg: RunConfig) -> int:
    chain = EmitterChain(cfg.n, cfg.kd)
    result = sweep(chain, cfg.m, cfg.theta1, angle_grid(cfg.points), cfg.route, cfg.workers)
    predicted = fwhm_predicted(cfg.n, cfg.kd)
    measured = estimate_fwhm(result)
    out = {"predicted": predicted, "measured": measured, "relative_error": _relative_error(predicted, measured)}
    emit(dump_json(out | {"meta": cfg.meta()}), cfg.output_path)
    return EXIT_OK


def cmd_evolve(cfg: RunConfig) -> int:
    chain = EmitterChain(cfg.n, cfg.kd)
    state = conditional_state(chain, cfg.detections)
    out = {
        "detections": list(cfg.detections),
        "state": state.to_json(),
        "meta": cfg.meta(),
    }
    if cfg.n >= 2:
        out["overlap_sq"] = abs(overlap(w_state(cfg.n), state)) ** 2
    if len(cfg.detections) == cfg.n - 1 and len(set(cfg.detections)) == 1:
        target = heralded_w_state(chain, cfg.detections[0])
        out["overlap_sq_heralded"] = abs(overlap(target, state)) ** 2
    emit(dump_json(out), cfg.output_path)
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    report = verify_routes(cfg.n, cfg.trials, cfg.seed)
    emit(dump_json(report.to_dict() | {"tool_version": __version__}), cfg.output_path)
    return EXIT_OK if report.passed else EXIT_VERIFY_FAILED


COMMANDS = {
    "sweep": cmd_sweep,
    "visibility": cmd_visibility,
    "fwhm": cmd_fwhm,
    "evolve": cmd_evolve,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="multiphoton", description="Multi-photon correlations of independent emitters."
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_m=True):
        p.add_argument("--n", type=int, required=True, help="number of emitters N")
        if with_m:
            p.add_argument("--m", type=int, default=None, help="correlation order (default N)")
        p.add_argument("--kd", type=parse_real, default=math.pi, help="spacing, e.g. 3.1, pi, 2pi")
        p.add_argument("-o", "--output", dest="output_path", default=None)

    def grid_opts(p):
        p.add_argument("--theta1", type=parse_real, default=0.0)
        p.add_argument("--points", type=int, default=DEFAULT_POINTS)
        p.add_argument("--route", choices=["auto", "paths", "operator", "closed_form"], default="auto")
        p.add_argument("--workers", type=int, default=None)

    p = sub.add_parser("sweep", help="G^(m)(theta1,...,theta1,theta2) over theta2")
    common(p)
    grid_opts(p)
    p.add_argument("--format", dest="output_format", choices=["csv", "json"], default="csv")

    p = sub.add_parser("visibility", help="predicted vs measured visibility")
    common(p)
    grid_opts(p)

    p = sub.add_parser("fwhm", help="predicted vs measured central peak width")
    common(p)
    grid_opts(p)

    p = sub.add_parser("evolve", help="heralded atomic state after detections")
    common(p, with_m=False)
    p.add_argument("--detections", type=parse_angles, required=True, help="comma-separated angles")

    p = sub.add_parser("verify", help="seeded cross-check of all computation routes")
    p.add_argument("--n-max", dest="n", type=int, default=8)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("-o", "--output", dest="output_path", default=None)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fields = {k: v for k, v in vars(args).items() if k in RunConfig.__dataclass_fields__}
    if "detections" in fields:
        fields["detections"] = tuple(fields["detections"])
    cfg = RunConfig(**fields)
    try:
        cfg.validate()
        return COMMANDS[cfg.command](cfg)
    except (InputDomainError, DegenerateStateError) as exc:
        print(f"multiphoton {cfg.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except EstimationError as exc:
        print(f"multiphoton {cfg.command}: estimation failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY_FAILED


if __name__ == "__main__":
    sys.exit(main())
