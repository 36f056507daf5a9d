"""Command-line front end.

Subcommands:
  bound   evaluate one bound at one parameter point, JSON on stdout
  sweep   evaluate bounds over a parameter grid, CSV to a file
  verify  run the named invariant suites and report pass/fail

Exit codes: 0 success, 1 argument error, 2 infeasible bound.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from importlib import resources

import numpy as np

from . import bounds as bnd
from . import channels as chn
from . import verify as vfy
from .errors import (
    BosonicBoundsError,
    ChannelKindError,
    DomainError,
    InfeasibleBoundError,
)

BOUND_KINDS = ("QL", "QU1", "QU2", "QU3", "QU4",
               "PU1", "PU2", "PU3", "PL", "PLOB", "RMG")
SWEEP_VARS = ("ns", "eta", "nb", "g", "nbar")
FIGURES = ("3a", "3b", "3c", "3d", "4a", "4b", "5a", "5b", "6a", "6b")
THREADS_ENV = "BOSON_BOUNDS_THREADS"


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags; 2 means "infeasible" here, so remap
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        sys.exit(1)


def _make_channel(args) -> chn.PhaseInsensitiveChannel:
    if args.channel == "thermal":
        if args.eta is None:
            raise DomainError("--eta is required for thermal channels")
        return chn.thermal(args.eta, args.nb or 0.0)
    if args.channel == "amplifier":
        if args.g is None:
            raise DomainError("--g is required for amplifier channels")
        return chn.amplifier(args.g, args.nb or 0.0)
    if args.channel == "additive":
        if args.nbar is None:
            raise DomainError("--nbar is required for additive channels")
        return chn.additive_noise(args.nbar)
    raise DomainError(f"unknown channel {args.channel!r}")


def evaluate_bound(kind: str, ch: chn.PhaseInsensitiveChannel, ns: float,
                   eps_prime: float = None) -> bnd.BoundResult:
    """Evaluate one named bound; raises on infeasible or mismatched kinds."""
    if kind == "QL":
        if ch.kind == "thermal":
            return bnd.q_lower_thermal(ch.params["eta"], ch.params["nb"], ns)
        if ch.kind == "amplifier":
            return bnd.q_lower_amp(ch.params["g"], ch.params["nb"], ns)
        raise ChannelKindError("QL supports thermal and amplifier channels")
    if kind == "QU1":
        return bnd.q_u1(ch, ns)
    if kind == "QU2":
        return bnd.q_u2(ch, ns, eps_prime)
    if kind == "QU3":
        return bnd.q_u3(ch, ns, eps_prime)
    if kind == "QU4":
        return bnd.q_u4(ch, ns)
    if kind in ("PU1", "PU2", "PU3"):
        return bnd.p_bounds(ch, ns, kind, eps_prime)
    if kind == "PL":
        if ch.kind != "thermal":
            raise ChannelKindError("PL is defined for thermal channels")
        return bnd.p_lower_displaced(ch.params["eta"], ch.params["nb"], ns)
    if kind == "PLOB":
        which = {"thermal": "PLOB_thermal", "amplifier": "PLOB_amp",
                 "additive": "PLOB_addnoise"}.get(ch.kind)
        if which is None:
            raise ChannelKindError(f"PLOB is not defined for {ch.kind!r} channels")
        v = bnd.comparison_bounds(ch, which)
        return bnd.BoundResult("PLOB", v, v, None,
                               {**ch.params, "channel": ch.kind, "ns": ns})
    if kind == "RMG":
        v = bnd.comparison_bounds(ch, "RMG")
        return bnd.BoundResult("RMG", v, v, None,
                               {**ch.params, "channel": ch.kind, "ns": ns})
    raise DomainError(f"unknown bound kind {kind!r}")


def cmd_bound(args) -> int:
    try:
        ch = _make_channel(args)
        result = evaluate_bound(args.bound, ch, args.ns, args.eps_prime)
    except InfeasibleBoundError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return 2
    except BosonicBoundsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(json.dumps(result.to_dict()))
    return 0


# ---------------------------------------------------------------------------
# Sweeps
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SweepSpec:
    """A parameter grid over one swept variable plus fixed channel params."""

    channel: str
    fixed: dict
    sweep: str
    start: float
    stop: float
    points: int
    scale: str
    bounds: tuple

    def __post_init__(self):
        if self.channel not in ("thermal", "amplifier", "additive"):
            raise ValueError(f"unknown channel {self.channel!r}")
        if self.sweep not in SWEEP_VARS:
            raise ValueError(f"sweep variable must be one of {SWEEP_VARS}")
        if self.points < 2:
            raise ValueError("points must be >= 2")
        if not self.start < self.stop:
            raise ValueError("start must be < stop")
        if self.scale not in ("linear", "log"):
            raise ValueError("scale must be linear or log")
        if self.scale == "log" and self.start <= 0:
            raise ValueError("log scale requires start > 0")
        bad = [b for b in self.bounds if b not in BOUND_KINDS]
        if bad:
            raise ValueError(f"unknown bounds {bad}")

    def grid(self) -> np.ndarray:
        if self.scale == "log":
            return np.geomspace(self.start, self.stop, self.points)
        return np.linspace(self.start, self.stop, self.points)


def parse_spec(text: str) -> SweepSpec:
    """Parse the key=value sweep format (see README for the keys)."""
    kv = {}
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"bad config line: {line!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        kv[key] = value
    fixed = {}
    for key in ("eta", "nb", "g", "nbar", "ns"):
        if key in kv:
            fixed[key] = float(kv.pop(key))
    return SweepSpec(
        channel=kv.pop("channel"),
        fixed=fixed,
        sweep=kv.pop("sweep"),
        start=float(kv.pop("start")),
        stop=float(kv.pop("stop")),
        points=int(kv.pop("points")),
        scale=kv.pop("scale", "linear"),
        bounds=tuple(b.strip() for b in kv.pop("bounds").split(",")),
    )


def load_figure_spec(fig: str) -> SweepSpec:
    if fig not in FIGURES:
        raise ValueError(f"unknown figure id {fig!r}; choose from {FIGURES}")
    text = resources.files("bosonic_bounds").joinpath(f"configs/fig{fig}.cfg").read_text()
    return parse_spec(text)


def _sweep_point(spec: SweepSpec, value: float):
    params = dict(spec.fixed)
    params[spec.sweep] = value
    ns = params.pop("ns", 0.0)
    cells = []
    for kind in spec.bounds:
        try:
            if spec.channel == "thermal":
                ch = chn.thermal(params["eta"], params.get("nb", 0.0))
            elif spec.channel == "amplifier":
                ch = chn.amplifier(params["g"], params.get("nb", 0.0))
            else:
                ch = chn.additive_noise(params["nbar"])
            cells.append(evaluate_bound(kind, ch, ns).value)
        except BosonicBoundsError:
            cells.append(None)  # infeasible cell -> empty CSV field
    return cells


def run_sweep(spec: SweepSpec) -> list:
    """Rows of the sweep as (value, [cells]); points run concurrently but are
    gathered in grid order, so output is deterministic."""
    grid = [float(v) for v in spec.grid()]
    workers = os.environ.get(THREADS_ENV)
    max_workers = max(1, int(workers)) if workers else (os.cpu_count() or 1)
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        results = list(pool.map(lambda v: _sweep_point(spec, v), grid))
    return list(zip(grid, results))


def format_csv(spec: SweepSpec, rows) -> str:
    def fmt(x):
        return "" if x is None else format(x, ".12g")

    lines = ["sweep_var," + ",".join(spec.bounds)]
    for value, cells in rows:
        lines.append(",".join([format(value, ".12g")] + [fmt(c) for c in cells]))
    return "\n".join(lines) + "\n"


def cmd_sweep(args) -> int:
    try:
        if args.fig:
            spec = load_figure_spec(args.fig)
        else:
            with open(args.spec, encoding="utf-8") as fh:
                spec = parse_spec(fh.read())
        rows = run_sweep(spec)
        csv_text = format_csv(spec, rows)
    except (OSError, ValueError, KeyError, BosonicBoundsError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(csv_text)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def cmd_verify(args) -> int:
    results = vfy.run_suite(args.suite)
    for r in results:
        print(r.format())
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return 0 if not failed else 1


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="boson-bounds",
                description="Capacity bounds for phase-insensitive bosonic Gaussian channels")
    sub = p.add_subparsers(dest="command", required=True)

    pb = sub.add_parser("bound", help="evaluate a single bound, JSON output")
    pb.add_argument("--channel", required=True, choices=("thermal", "amplifier", "additive"))
    pb.add_argument("--eta", type=float, help="thermal transmissivity")
    pb.add_argument("--g", type=float, help="amplifier gain")
    pb.add_argument("--nbar", type=float, help="additive noise photons")
    pb.add_argument("--nb", type=float, default=0.0, help="environment photons")
    pb.add_argument("--ns", type=float, default=0.0, help="input mean photon number")
    pb.add_argument("--bound", required=True, choices=BOUND_KINDS)
    pb.add_argument("--eps-prime", type=float, default=None,
                    help="fix eps' instead of optimizing it")
    pb.set_defaults(func=cmd_bound)

    ps = sub.add_parser("sweep", help="evaluate bounds over a grid, CSV output")
    group = ps.add_mutually_exclusive_group(required=True)
    group.add_argument("--spec", help="key=value sweep config file")
    group.add_argument("--fig", choices=FIGURES,
                       help="checked-in figure-reproduction config")
    ps.add_argument("--out", required=True, help="output CSV path")
    ps.set_defaults(func=cmd_sweep)

    pv = sub.add_parser("verify", help="run the invariant suites")
    pv.add_argument("--suite", default="all", choices=("core", "bounds", "all"))
    pv.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
