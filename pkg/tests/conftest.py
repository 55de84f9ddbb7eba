import numpy as np
import pytest

from ewextremes import EwParams


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def random_params(rng, n=1, alpha_hi=2.0, k_lo=0.3, k_hi=4.0):
    out = [
        EwParams(
            float(rng.uniform(0.1, alpha_hi)),
            float(rng.uniform(0.2, 3.0)),
            float(rng.uniform(k_lo, k_hi)),
        )
        for _ in range(n)
    ]
    return out[0] if n == 1 else out
