import random

import pytest

from containment import graphs


@pytest.fixture(scope="session")
def suite_graphs():
    """The named instances exercised by the cross-cutting property checks."""
    out = {
        "petersen": graphs.petersen(),
        "q3": graphs.hypercube_q3(),
        "ring3": graphs.ring_of_squares(3),
        "ring4": graphs.ring_of_squares(4),
    }
    for n in range(4, 11):
        out[f"cycle{n}"] = graphs.cycle(n)
    for n in range(3, 7):
        out[f"complete{n}"] = graphs.complete(n)
    for k in range(3, 8):
        out[f"ktrack{k}"] = graphs.k_track(k)
    return out


def random_connected_graph(rng: random.Random, max_n: int = 12) -> graphs.Graph:
    """Rejection-sample a connected Erdos-Renyi graph (test helper)."""
    while True:
        n = rng.randint(2, max_n)
        p = rng.uniform(0.2, 0.8)
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
        try:
            return graphs.from_edge_list(n, pairs)
        except graphs.DisconnectedError:
            continue
