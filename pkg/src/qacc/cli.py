"""Command-line front end: ``qacc compute``, ``qacc sweep`` and ``qacc fuzz``.

Exit codes: 0 ok, 2 input error, 3 sandwich or property violation.
"""

from __future__ import annotations

import argparse
import dataclasses
import io
import json
import logging
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .accinfo import OptimizerConfig
from .bounds import BoundReport, build_report
from .ensembles import (
    BinaryEnsemble,
    ensemble_to_dict,
    figure3_ensemble,
    load_ensemble,
    pure_pair,
    random_ensemble,
)
from .errors import QaccError
from .properties import evaluate_properties

EXIT_OK, EXIT_INPUT, EXIT_VIOLATION = 0, 2, 3

CSV_COLUMNS = (
    "param", "chi", "h_p", "fidelity_b", "subentropy_q", "t1", "t2", "t_max",
    "lb1", "lb2", "i_fid", "i_helstrom", "i_pgm", "i_acc_est", "sandwich_ok",
)
CSV_HEADER = ",".join(CSV_COLUMNS)
CSV_NOTE = (
    "# i_helstrom: information of the minimum-error (Helstrom) basis; "
    "a stand-in for the Fuchs-Caves optimum, which it matches only in special cases"
)

# family -> (parameter name, default start, default end)
FAMILIES = {
    "figure1": ("p", 0.0, 1.0),
    "figure2": ("theta", 0.0, math.pi / 2),
    "figure3": ("p", 0.0, 1.0),
    "custom": ("p", 0.0, 1.0),
}
FIGURE1_THETA = math.pi / 3  # inner product 1/2


@dataclass(frozen=True)
class SweepSpec:
    family: str
    grid_start: float
    grid_end: float
    grid_steps: int
    optimizer: OptimizerConfig
    base: BinaryEnsemble | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise QaccError(f"unknown family {self.family!r}")
        if self.grid_steps < 2:
            raise QaccError("grid_steps must be at least 2")
        _, lo, hi = FAMILIES[self.family]
        for v in (self.grid_start, self.grid_end):
            if not lo - 1e-12 <= v <= hi + 1e-12:
                raise QaccError(f"grid value {v} outside [{lo}, {hi}]")
        if self.family == "custom" and self.base is None:
            raise QaccError("custom sweeps need an input ensemble")

    def grid(self) -> np.ndarray:
        _, lo, hi = FAMILIES[self.family]
        return np.clip(np.linspace(self.grid_start, self.grid_end, self.grid_steps), lo, hi)

    def ensemble_at(self, x: float) -> BinaryEnsemble:
        if self.family == "figure1":
            return pure_pair(FIGURE1_THETA, x)
        if self.family == "figure2":
            return pure_pair(x, 0.5)
        if self.family == "figure3":
            return figure3_ensemble(x)
        return self.base.with_prior(x)


@dataclass(frozen=True)
class FuzzSpec:
    count: int
    dim: int = 2
    rank_profile: str = "random"
    seed: int = 0
    identical: bool = False
    corrupt_chi: float = 0.0

    def __post_init__(self):
        if self.count < 1:
            raise QaccError("count must be at least 1")
        if not 2 <= self.dim <= 8:
            raise QaccError(f"dim must lie in [2, 8], got {self.dim}")
        if self.rank_profile not in ("random", "pure", "full", "mixed"):
            raise QaccError(f"unknown rank profile {self.rank_profile!r}")

    def case(self, i: int) -> BinaryEnsemble:
        rng = np.random.default_rng([self.seed, i])
        d = self.dim
        if self.rank_profile == "pure":
            ranks = (1, 1)
        elif self.rank_profile == "full":
            ranks = (d, d)
        elif self.rank_profile == "mixed":
            ranks = tuple(int(r) for r in rng.integers(2, d + 1, size=2))
        else:
            ranks = tuple(int(r) for r in rng.integers(1, d + 1, size=2))
        p = float(rng.uniform())
        e = random_ensemble(d, ranks, p, rng)
        if self.identical:
            e = BinaryEnsemble(p, e.rho0, e.rho0)
        return e


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    return format(float(v) + 0.0, ".12g")


def report_row(param: float, r: BoundReport) -> str:
    values = {**r.to_dict(), "param": param, "t_max": r.t_max}
    return ",".join(_fmt(values[c]) for c in CSV_COLUMNS)


def write_csv(rows: list[tuple[float, BoundReport]], out) -> None:
    out.write(CSV_NOTE + "\n")
    out.write(CSV_HEADER + "\n")
    for param, r in rows:
        out.write(report_row(param, r) + "\n")


def plot_script(csv_path: str, param: str) -> str:
    """Text of a standalone matplotlib script drawing the sweep curves."""
    return f'''"""Plot a qacc sweep: python3 this_script.py"""
import csv

import matplotlib.pyplot as plt

with open({csv_path!r}) as fh:
    rows = list(csv.DictReader(line for line in fh if not line.startswith("#")))
x = [float(r["param"]) for r in rows]
for col, label in [
    ("t_max", "T (max of chi-based bounds)"),
    ("subentropy_q", "Q (subentropy of average)"),
    ("i_pgm", "L (pretty good measurement)"),
    ("i_helstrom", "Helstrom basis"),
    ("i_acc_est", "accessible information estimate"),
]:
    plt.plot(x, [float(r[col]) for r in rows], label=label)
plt.xlabel({param!r})
plt.ylabel("bits")
plt.legend()
plt.show()
'''


def run_sweep(spec: SweepSpec) -> list[tuple[float, BoundReport]]:
    return [(float(x), build_report(spec.ensemble_at(float(x)), spec.optimizer)) for x in spec.grid()]


def run_fuzz(spec: FuzzSpec, cfg: OptimizerConfig):
    """Check every registered property on ``spec.count`` ensembles.

    Returns the summary dict and the worst failing case (or ``None``) as
    ``(ensemble, property, margin, case index)``.
    """
    stats: dict[str, dict] = {}
    worst = None
    for i in range(spec.count):
        e = spec.case(i)
        r = build_report(e, cfg)
        if spec.corrupt_chi:
            r = dataclasses.replace(r, chi=r.chi + spec.corrupt_chi)
        for name, margin in evaluate_properties(e, r).items():
            s = stats.setdefault(name, {"passed": 0, "failed": 0, "skipped": 0, "worst_margin": None})
            if margin is None:
                s["skipped"] += 1
                continue
            s["passed" if margin >= 0 else "failed"] += 1
            if s["worst_margin"] is None or margin < s["worst_margin"]:
                s["worst_margin"] = margin
            if margin < 0 and (worst is None or margin < worst[2]):
                worst = (e, name, margin, i)
    failures = sum(s["failed"] for s in stats.values())
    summary = {
        "count": spec.count,
        "dim": spec.dim,
        "rank_profile": spec.rank_profile,
        "seed": spec.seed,
        "ok": failures == 0,
        "failures": failures,
        "properties": stats,
    }
    return summary, worst


def _optimizer(args) -> OptimizerConfig:
    return OptimizerConfig(
        outcomes=args.outcomes,
        restarts=args.restarts,
        max_iterations=args.max_iterations,
        seed=args.seed,
    )


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_compute(args) -> int:
    e = load_ensemble(args.input)
    r = build_report(e, _optimizer(args))
    if args.format == "csv":
        buf = io.StringIO()
        write_csv([(e.p, r)], buf)
        _emit(buf.getvalue(), args.out)
    else:
        _emit(json.dumps(r.to_dict(), indent=1) + "\n", args.out)
    return EXIT_OK if r.sandwich_ok else EXIT_VIOLATION


def cmd_sweep(args) -> int:
    _, lo, hi = FAMILIES[args.family]
    spec = SweepSpec(
        family=args.family,
        grid_start=lo if args.start is None else args.start,
        grid_end=hi if args.end is None else args.end,
        grid_steps=args.steps,
        optimizer=_optimizer(args),
        base=load_ensemble(args.input) if args.input else None,
    )
    rows = run_sweep(spec)
    if args.format == "json":
        text = json.dumps([{"param": x, **r.to_dict()} for x, r in rows], indent=1) + "\n"
    else:
        buf = io.StringIO()
        write_csv(rows, buf)
        text = buf.getvalue()
    _emit(text, args.out)
    if args.plot_script:
        csv_name = args.out or "sweep.csv"
        Path(args.plot_script).write_text(plot_script(csv_name, FAMILIES[args.family][0]))
    return EXIT_OK if all(r.sandwich_ok for _, r in rows) else EXIT_VIOLATION


def cmd_fuzz(args) -> int:
    spec = FuzzSpec(
        count=args.count,
        dim=args.dim,
        rank_profile=args.ranks,
        seed=args.seed,
        identical=args.identical,
        corrupt_chi=args.corrupt_chi,
    )
    summary, worst = run_fuzz(spec, _optimizer(args))
    summary["counterexample"] = None
    if worst is not None:
        e, name, margin, i = worst
        dump = {**ensemble_to_dict(e), "property": name, "margin": margin, "case": i}
        Path(args.dump).write_text(json.dumps(dump, indent=1) + "\n")
        summary["counterexample"] = str(args.dump)
    _emit(json.dumps(summary, indent=1) + "\n", args.out)
    return EXIT_OK if summary["ok"] else EXIT_VIOLATION


def _add_optimizer_flags(p: argparse.ArgumentParser) -> None:
    d = OptimizerConfig()
    p.add_argument("--seed", type=int, default=d.seed)
    p.add_argument("--restarts", type=int, default=d.restarts)
    p.add_argument("--outcomes", type=int, default=d.outcomes, help="POVM outcomes (default d^2)")
    p.add_argument("--max-iterations", type=int, default=d.max_iterations)
    p.add_argument("--out", help="write output here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qacc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="bound report for one ensemble JSON file")
    p.add_argument("input")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    _add_optimizer_flags(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("sweep", help="bound reports along a one-parameter family")
    p.add_argument("family", choices=sorted(FAMILIES))
    p.add_argument("--steps", type=int, default=101)
    p.add_argument("--start", type=float)
    p.add_argument("--end", type=float)
    p.add_argument("--input", help="ensemble JSON for the custom family (prior is swept)")
    p.add_argument("--format", choices=("json", "csv"), default="csv")
    p.add_argument("--plot-script", help="also write a matplotlib script for the CSV")
    _add_optimizer_flags(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("fuzz", help="check all registered properties on random ensembles")
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--ranks", choices=("random", "pure", "full", "mixed"), default="random")
    p.add_argument("--dump", default="qacc-counterexample.json", help="where to write a failing ensemble")
    p.add_argument("--identical", action="store_true", help="use rho1 = rho0 in every case")
    p.add_argument("--corrupt-chi", type=float, default=0.0, help=argparse.SUPPRESS)
    _add_optimizer_flags(p)
    p.set_defaults(func=cmd_fuzz)
    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except QaccError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
