import numpy as np
import pytest

import reachbot as rb
from reachbot.rng import substream


@pytest.fixture
def corridor():
    return rb.corridor(radius=15.0, length=100.0)


@pytest.fixture
def robot8():
    return rb.make_robot(8)


@pytest.fixture
def rng():
    return substream(1234, 0, "tests")


def random_stance(rng, n, radius=15.0, body_radius=0.5):
    """A generic stance: random mounts on the body sphere, anchors in a shell."""
    dirs = rng.normal(size=(n, 3))
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    shoulders = body_radius * dirs
    # anchors roughly along each mount axis, jittered within the cone
    jitter = rng.normal(scale=0.3, size=(n, 3))
    aims = dirs + jitter
    aims /= np.linalg.norm(aims, axis=1, keepdims=True)
    dist = rng.uniform(5.0, radius, size=n)
    anchors = shoulders + dist[:, None] * aims
    return rb.Stance.from_pairs(shoulders, anchors, np.zeros(3))
