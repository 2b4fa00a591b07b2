import math

import numpy as np
import pytest

from quadrisect.geometry import upsilon_contains


def sample_upsilon_interior(rng: np.random.Generator, n: int, margin: float = 1e-3):
    """Apex points uniformly over the interior of the triangle space, at least
    ``margin`` from both isosceles boundary circles (hence scalene)."""
    out = []
    while len(out) < n:
        h = rng.uniform(0.5, 2.0)
        ht = rng.uniform(margin, 1.0)
        if not upsilon_contains(h, ht):
            continue
        if math.hypot(h, ht) < 1.0 + margin:          # lower circle
            continue
        if math.hypot(h - 1.0, ht) > 1.0 - margin:    # upper circle
            continue
        out.append((h, ht))
    return out


@pytest.fixture
def upsilon_sampler():
    return sample_upsilon_interior


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
