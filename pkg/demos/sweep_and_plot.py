#!/usr/bin/env python3
"""Small end-to-end sweep: run an experiment grid, write CSV, draw the figure.

Produces sweep_scores.csv and sweep_scores.png in the working directory.
"""

import subprocess
import sys
from pathlib import Path

from liqdem import ExperimentConfig, run_experiment_to_csv


def main() -> None:
    config = ExperimentConfig(
        model="gnm",
        sweep_values=(11, 21, 31),
        m_per_n=4.0,
        prec=0.1,
        methods=("direct", "ls_gr", "greedy_cap", "emerging"),
        graphs=5,
        draws=4,
        seed=42,
        record_runtime=False,
    )
    csv_path = Path("sweep_scores.csv")
    records = run_experiment_to_csv(config, str(csv_path))
    print(f"wrote {len(records)} rows to {csv_path}")

    render = Path(__file__).resolve().parent.parent / "plots" / "render.py"
    out = Path("sweep_scores.png")
    subprocess.run(
        [sys.executable, str(render), "--csv", str(csv_path),
         "--y", "score", "--x", "n", "--out", str(out)],
        check=True,
    )
    print(f"rendered {out}")


if __name__ == "__main__":
    main()
