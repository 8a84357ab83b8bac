import random

import pytest

from dispset.generate import NORMAL, TREE_CHILD, GenSpec, random_network
from dispset.network import network_from_named_arcs

NET_A_ARCS = [("rho", "u"), ("rho", "v"), ("u", "a"), ("u", "r"), ("v", "r"), ("v", "c"), ("r", "b")]
NET_B_ARCS = [("rho", "u"), ("rho", "x"), ("u", "w"), ("u", "v"), ("w", "a"), ("w", "v"), ("v", "b")]
NET_C_ARCS = [("rho", "x"), ("rho", "p"), ("p", "a"), ("p", "b")]


def names_of(arcs):
    ids = {}
    for u, v in arcs:
        ids.setdefault(u, len(ids))
        ids.setdefault(v, len(ids))
    return ids


def named(arcs):
    """Network plus the name -> vertex id map used to build it."""
    return network_from_named_arcs(arcs), names_of(arcs)


@pytest.fixture
def net_a():
    return network_from_named_arcs(NET_A_ARCS)


@pytest.fixture
def net_b():
    return network_from_named_arcs(NET_B_ARCS)


@pytest.fixture
def net_c():
    return network_from_named_arcs(NET_C_ARCS)


@pytest.fixture
def ids_a():
    return names_of(NET_A_ARCS)


@pytest.fixture
def ids_b():
    return names_of(NET_B_ARCS)


def small_normal(seed, max_leaves=8, max_ret=4):
    rng = random.Random(seed)
    n = rng.randint(2, max_leaves)
    r = rng.randint(0, max(0, min(max_ret, n - 2)))
    return random_network(GenSpec(n, r, seed, NORMAL))


def small_tree_child(seed, max_leaves=8, max_ret=4):
    rng = random.Random(seed)
    n = rng.randint(2, max_leaves)
    r = rng.randint(0, min(max_ret, n - 1))
    return random_network(GenSpec(n, r, seed, TREE_CHILD))


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
