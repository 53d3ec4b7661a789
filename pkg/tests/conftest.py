import random

import pytest

from qpotts.model import build_model

WEIGHTS = ("1", "2", "-1", "1/2")


def random_model(rng: random.Random, n: int, q: int = 2, p_edge: float = 0.5, weights=WEIGHTS):
    labels = [str(k + 1) for k in range(n)]
    edges, w = [], {}
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p_edge:
                e = (labels[i], labels[j])
                edges.append(e)
                w[e] = rng.choice(weights)
    return build_model(labels, edges, w, q)


def random_models(seed: int, count: int, n_min: int, n_max: int, q_choices=(2,)):
    rng = random.Random(seed)
    return [random_model(rng, rng.randint(n_min, n_max), rng.choice(q_choices)) for _ in range(count)]


@pytest.fixture
def rng():
    return random.Random(20240611)
