"""
Command-line tour
=================

Drive the three subcommands from Python: a single report, a short sweep with
a companion plot script, and a small fuzz run. Equivalent shell commands are
shown in the comments.
"""

import json
import tempfile
from pathlib import Path

from qacc import dump_ensemble, figure3_ensemble
from qacc.cli import main

tmp = Path(tempfile.mkdtemp())
light = ["--restarts", "2", "--max-iterations", "100"]

# qacc compute f3.json --restarts 2 --max-iterations 100
dump_ensemble(figure3_ensemble(0.3), tmp / "f3.json")
code = main(["compute", str(tmp / "f3.json"), *light, "--out", str(tmp / "report.json")])
print("compute exit", code, json.loads((tmp / "report.json").read_text())["sandwich_ok"])

# qacc sweep figure1 --steps 11 --out fig1.csv --plot-script fig1_plot.py
code = main(["sweep", "figure1", "--steps", "11", *light, "--out", str(tmp / "fig1.csv"),
             "--plot-script", str(tmp / "fig1_plot.py")])
print("sweep exit", code)
print((tmp / "fig1.csv").read_text().splitlines()[1])

# qacc fuzz --count 20 --dim 3
code = main(["fuzz", "--count", "20", "--dim", "3", *light, "--out", str(tmp / "fuzz.json"),
             "--dump", str(tmp / "cx.json")])
summary = json.loads((tmp / "fuzz.json").read_text())
print("fuzz exit", code, "failures", summary["failures"])
print("outputs in", tmp)
