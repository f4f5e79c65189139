import numpy as np
import pytest

from nimetrics import ConfusionMatrix

# Reference six-model benchmark (balanced classes, 100 samples) with its
# 4-decimal index values; the NI column is independently frozen at
# full precision in FROZEN_NI below.
TABLE2 = {
    "M_1": ((25, 5, 45, 25), (0.7, 0.8333, 0.5, 0.1468)),
    "M_2": ((30, 10, 40, 20), (0.7, 0.75, 0.6, 0.1245)),
    "M_3": ((15, 5, 45, 35), (0.6, 0.75, 0.3, 0.0468)),
    "M_4": ((15, 45, 5, 35), (0.2, 0.25, 0.3, 0.2958)),
    "M_5": ((12, 26, 24, 38), (0.36, 0.3158, 0.24, 0.0611)),
    "M_6": ((26, 12, 38, 24), (0.64, 0.6842, 0.52, 0.0611)),
}

# High-precision NI values computed with a 50-digit independent evaluator
# of the entropy definitions (plug-in frequencies, log base 2).
FROZEN_NI = {
    "M_1": 0.14679310243605201,
    "M_2": 0.12451124978365315,
    "M_3": 0.046784848477375428,
    "M_4": 0.29580734804468172,
    "M_5": 0.061099114536437558,
    "M_6": 0.061099114536437558,
}


@pytest.fixture
def table2_matrices() -> dict[str, ConfusionMatrix]:
    return {name: ConfusionMatrix(*cells) for name, (cells, _) in TABLE2.items()}


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240811)


def random_positive_matrix(rng: np.random.Generator, high: int = 200) -> ConfusionMatrix:
    """A random matrix with every cell >= 1."""
    tp, fp, tn, fn = rng.integers(1, high, size=4)
    return ConfusionMatrix(int(tp), int(fp), int(tn), int(fn))
