import time

import pytest

from liqdem import ExperimentConfig, run_experiment, write_csv

# desk-scale sweep shared by the acceptance checks and the plot tests:
# 50 replicates per point (10 graphs x 5 accuracy draws)
SWEEP_CONFIG = ExperimentConfig(
    model="gnm",
    sweep_param="n",
    sweep_values=(11, 21, 31, 41, 51),
    m_per_n=4.0,
    prec=0.1,
    methods=("direct", "ls_gr", "ls_vo", "greedy_cap", "emerging"),
    graphs=10,
    draws=5,
    seed=20260815,
    record_runtime=False,
)


@pytest.fixture(scope="session")
def sweep_run(tmp_path_factory):
    """(csv path, records, wall seconds) for the shared sweep, run once."""
    start = time.perf_counter()
    records = run_experiment(SWEEP_CONFIG)
    elapsed = time.perf_counter() - start
    path = tmp_path_factory.mktemp("sweep") / "results.csv"
    with open(path, "w", encoding="utf-8") as fh:
        write_csv(records, fh)
    return path, records, elapsed
