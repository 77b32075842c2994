import os
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from eedist.dataset import LabeledDataset, write_ucr  # noqa: E402

CRITERIA: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in CRITERIA:
            terminalreporter.write_line(line)


def cbf(rng, kind: int, n: int = 64) -> np.ndarray:
    """One cylinder / bell / funnel series (kind 0, 1, 2)."""
    a = int(rng.integers(n // 8, n // 4))
    b = a + int(rng.integers(n // 4, n // 2))
    t = np.arange(n)
    eta = rng.normal()
    box = ((t >= a) & (t <= b)).astype(float)
    if kind == 0:
        shape = box
    elif kind == 1:
        shape = box * (t - a) / (b - a)
    else:
        shape = box * (b - t) / (b - a)
    return (6 + eta) * shape + rng.normal(size=n)


def cbf_dataset(seed: int, per_class: int, name: str, role: str, n: int = 64) -> LabeledDataset:
    rng = np.random.default_rng(seed)
    X, y = [], []
    for kind in range(3):
        for _ in range(per_class):
            X.append(cbf(rng, kind, n))
            y.append(kind + 1)
    return LabeledDataset.from_arrays(np.round(np.array(X), 6), y, name, role)


@pytest.fixture(scope="session")
def cbf_pair():
    return cbf_dataset(1, 6, "CBF", "train"), cbf_dataset(2, 6, "CBF", "test")


@pytest.fixture
def ucr_dir(tmp_path, cbf_pair):
    """A dataset directory in the classic <name>/<name>_TRAIN layout."""
    train, test = cbf_pair
    d = tmp_path / "CBF"
    d.mkdir()
    write_ucr(train, d / "CBF_TRAIN")
    write_ucr(test, d / "CBF_TEST")
    return d


def ucr_archive_root():
    for candidate in (os.environ.get("EEDIST_UCR_DIR"), "data/ucr", "ucr"):
        if candidate and Path(candidate).is_dir():
            return Path(candidate)
    return None
