import numpy as np
import pytest
from scipy import stats

from vqaa import qsim


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def random_state(n, rng):
    v = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return qsim.from_amplitudes(v / np.linalg.norm(v))


def chi2_pvalue(counts, probs):
    """Goodness of fit, pooling cells with expected count < 5."""
    counts = np.asarray(counts, dtype=float)
    expected = np.asarray(probs) * counts.sum()
    keep = expected >= 5
    obs = np.append(counts[keep], counts[~keep].sum())
    exp = np.append(expected[keep], expected[~keep].sum())
    if exp[-1] == 0:
        obs, exp = obs[:-1], exp[:-1]
    return stats.chisquare(obs, exp).pvalue
