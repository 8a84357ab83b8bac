"""Brute-force display sets.

Every tree displayed by a network arises from some *switching*: a choice
of one incoming arc per reticulation.  Keeping only the chosen arcs,
discarding parts that reach no leaf and contracting unary vertices gives
the tree.  Enumerating all ``2**r`` switchings therefore yields the whole
display set.  This module shares no code with the fast decision procedure
and serves as its reference.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from typing import Iterator, Mapping

from .errors import IncompleteSwitching, LeafSetMismatch, TooManyReticulations
from .network import Network

DEFAULT_MAX_RETICULATIONS = 20

Switching = Mapping[int, int]


@dataclass
class EnumerationStats:
    switchings: int = 0
    lost_leaves: int = 0


def _canonical_under(net: Network, keep: Mapping[int, int]) -> tuple[str, int] | None:
    """Canonical Newick of the tree left by switching ``keep``, and its leaf count.

    ``keep`` maps each reticulation to the parent whose arc survives.
    Returns ``None`` if nothing below the root survives.
    """
    # vertices reached from the root through kept arcs, in DFS preorder
    order = []
    seen = {net.root}
    stack = [net.root]
    while stack:
        v = stack.pop()
        order.append(v)
        for c in net.children(v):
            if c in keep and keep[c] != v:
                continue
            if c not in seen:
                seen.add(c)
                stack.append(c)
    # each kept vertex has exactly one kept parent, so preorder reversed is a valid postorder
    text: dict[int, str] = {}
    low: dict[int, str] = {}
    size: dict[int, int] = {}
    for v in reversed(order):
        kids = [c for c in net.children(v) if c in text and (c not in keep or keep[c] == v)]
        if not net.children(v):
            lab = net.label(v)
            text[v], low[v], size[v] = lab, lab, 1
        elif len(kids) == 1:
            (c,) = kids
            text[v], low[v], size[v] = text[c], low[c], size[c]
        elif len(kids) == 2:
            x, y = sorted(kids, key=low.__getitem__)
            text[v] = f"({text[x]},{text[y]})"
            low[v] = low[x]
            size[v] = size[x] + size[y]
    if net.root not in text:
        return None
    return text[net.root] + ";", size[net.root]


def canonical_tree(tree: Network) -> str:
    """Canonical Newick of a phylogenetic tree: children sorted by smallest label."""
    if tree.reticulations:
        raise ValueError("canonical_tree expects a network without reticulations")
    result = _canonical_under(tree, {})
    assert result is not None
    return result[0]


def iter_switchings(net: Network) -> Iterator[dict[int, int]]:
    """All switchings, as a binary counter over reticulations sorted by id."""
    rets = net.reticulations
    choices = [sorted(net.parents(r)) for r in rets]
    for picked in itertools.product(*choices):
        yield dict(zip(rets, picked))


def _switched(net: Network, s: Switching) -> str | None:
    result = _canonical_under(net, s)
    if result is None or result[1] != net.n_leaves:
        return None
    return result[0]


def apply_switching(net: Network, s: Switching) -> Network | None:
    """The tree obtained by keeping one in-arc per reticulation.

    Returns ``None`` when some leaf becomes unreachable from the root.
    """
    rets = net.reticulations
    missing = [r for r in rets if r not in s]
    if missing:
        raise IncompleteSwitching(f"no parent chosen for reticulations {missing}")
    bad = [r for r in rets if s[r] not in net.parents(r)]
    if bad:
        raise IncompleteSwitching(f"chosen vertex is not a parent of reticulations {bad}")
    text = _switched(net, s)
    if text is None:
        return None
    from .newick import parse_enewick

    return parse_enewick(text)


def max_reticulations_default() -> int:
    value = os.environ.get("DISPSET_MAX_RET")
    return int(value) if value else DEFAULT_MAX_RETICULATIONS


def enumerate_display_set(
    net: Network,
    max_reticulations: int | None = None,
    stats: EnumerationStats | None = None,
) -> frozenset[str]:
    """Set of canonical Newick strings of all trees displayed by ``net``."""
    bound = max_reticulations if max_reticulations is not None else DEFAULT_MAX_RETICULATIONS
    r = len(net.reticulations)
    if r > bound:
        raise TooManyReticulations(r, bound)
    found = set()
    for s in iter_switchings(net):
        text = _switched(net, s)
        if stats is not None:
            stats.switchings += 1
            stats.lost_leaves += text is None
        if text is not None:
            found.add(text)
    return frozenset(found)


def displays(net: Network, tree: Network, max_reticulations: int | None = None) -> bool:
    if net.leaf_labels != tree.leaf_labels:
        raise LeafSetMismatch("network and tree have different leaf sets")
    return canonical_tree(tree) in enumerate_display_set(net, max_reticulations)


def display_sets_equal_bruteforce(n1: Network, n2: Network, max_reticulations: int | None = None) -> bool:
    if n1.leaf_labels != n2.leaf_labels:
        raise LeafSetMismatch("networks have different leaf sets")
    return enumerate_display_set(n1, max_reticulations) == enumerate_display_set(n2, max_reticulations)


def tree_clusters(newick: str) -> set[frozenset[str]]:
    """Clusters of a tree given in (canonical) Newick."""
    from .analysis import cluster_sets
    from .newick import parse_enewick

    return set(cluster_sets(parse_enewick(newick)).values())
