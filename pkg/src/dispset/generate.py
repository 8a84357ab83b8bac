"""Seeded random normal and tree-child networks, and display-set-preserving edits."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .analysis import _descendant_masks, is_normal, is_tree_child
from .errors import GenerationExhausted, NoEligibleArc
from .network import Network

RETRIES_PER_RETICULATION = 10_000

NORMAL = "normal"
TREE_CHILD = "tree-child"


@dataclass(frozen=True)
class GenSpec:
    n_leaves: int
    n_reticulations: int = 0
    seed: int = 0
    network_class: str = NORMAL

    def __post_init__(self):
        if self.n_leaves < 2:
            raise ValueError("n_leaves must be at least 2")
        if self.n_reticulations < 0:
            raise ValueError("n_reticulations must be non-negative")
        if self.n_reticulations > self.n_leaves - 1:
            raise ValueError(
                f"a tree-child network on {self.n_leaves} leaves has at most "
                f"{self.n_leaves - 1} reticulations"
            )
        if self.network_class not in (NORMAL, TREE_CHILD):
            raise ValueError(f"unknown network class {self.network_class!r}")


def random_tree(n_leaves: int, rng: random.Random, prefix: str = "x") -> Network:
    """Random binary tree on ``x1..xn``, grown by attaching leaves to random arcs."""
    arcs = [(0, 1), (0, 2)]
    labels = {1: f"{prefix}1", 2: f"{prefix}2"}
    nxt = 3
    for i in range(3, n_leaves + 1):
        u, v = arcs.pop(rng.randrange(len(arcs)))
        w, leaf = nxt, nxt + 1
        nxt += 2
        arcs += [(u, w), (w, v), (w, leaf)]
        labels[leaf] = f"{prefix}{i}"
    return Network(arcs, labels, root=0)


def _reticulation_ok(net: Network, network_class: str) -> bool:
    if not is_tree_child(net):
        return False
    return network_class != NORMAL or is_normal(net)


def add_random_reticulation(net: Network, rng: random.Random, network_class: str = NORMAL) -> Network | None:
    """Try once to join two random arcs by a new reticulation arc.

    Returns ``None`` if the attempt would create a cycle or leave the class.
    """
    arcs = net.arcs
    i, j = rng.sample(range(len(arcs)), 2)
    (s1, t1), (s2, t2) = arcs[i], arcs[j]
    masks, bit = _descendant_masks(net)
    if masks[t2] & bit[s1]:
        return None
    work = net.copy()
    x = work._new_vertex()
    y = work._new_vertex()
    work._remove_arc(s1, t1)
    work._add_arc(s1, x)
    work._add_arc(x, t1)
    work._remove_arc(s2, t2)
    work._add_arc(s2, y)
    work._add_arc(y, t2)
    work._add_arc(x, y)
    return work if _reticulation_ok(work, network_class) else None


def random_network(spec: GenSpec) -> Network:
    """Random network of the requested class; identical output for identical specs."""
    rng = random.Random(spec.seed)
    net = random_tree(spec.n_leaves, rng)
    for _ in range(spec.n_reticulations):
        for _ in range(RETRIES_PER_RETICULATION):
            candidate = add_random_reticulation(net, rng, spec.network_class)
            if candidate is not None:
                net = candidate
                break
        else:
            raise GenerationExhausted(
                f"could not place reticulation after {RETRIES_PER_RETICULATION} attempts"
            )
    return net.compact()


def _shortcut_sites(net: Network) -> list[tuple[int, int]]:
    """Arcs ``(w, c)`` below which a trivial shortcut can be hung."""
    sites = []
    for w in net.vertices:
        kids = net.children(w)
        if len(kids) != 2 or net.is_reticulation(w):
            continue
        if kids[0] == kids[1] or not all(net.is_tree_or_leaf(k) for k in kids):
            continue
        sites.extend((w, c) for c in kids)
    return sorted(sites)


def insert_trivial_shortcut(net: Network, seed: int | random.Random = 0) -> Network:
    """Add a trivial shortcut without changing the display set.

    Picks a vertex ``w`` with two tree-vertex or leaf children and one child
    ``c``, puts a new tree vertex ``u`` above ``w`` (a new root if ``w`` was
    the root) and a new reticulation ``v`` on the arc ``(w, c)``, and adds
    the arc ``(u, v)``.
    """
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    sites = _shortcut_sites(net)
    if not sites:
        raise NoEligibleArc("no vertex has two tree-vertex or leaf children")
    w, c = sites[rng.randrange(len(sites))]
    work = net.copy()
    u = work._new_vertex()
    v = work._new_vertex()
    if w == work.root:
        work.root = u
    else:
        (x,) = work.parents(w)
        work._remove_arc(x, w)
        work._add_arc(x, u)
    work._add_arc(u, w)
    work._remove_arc(w, c)
    work._add_arc(w, v)
    work._add_arc(v, c)
    work._add_arc(u, v)
    return work.compact()


def swap_labels(net: Network, a: str, b: str) -> Network:
    return net.relabel({a: b, b: a}).compact()


def tree_parent_template_pair(
    base: Network, rng: random.Random, *, variant: str = "A", a_below: int = 1
) -> tuple[Network, Network]:
    """A normal and a tree-child network built around the same base network.

    A random tree vertex or leaf ``z`` of ``base`` (below arc ``(s, z)``) is
    replaced, in the first network, by

        s -> t, t -> p_a, t -> q, p_a -> a, p_a -> p_b, q -> p_b, q -> z, p_b -> b

    and, in the second, by the matching structure where ``b``'s parent is a
    tree vertex: ``u1 -> q'``, ``u1 -> v1``, ``q' -> p'_b``, ``q' -> v2``,
    ``p'_b -> b``, ``p'_b -> v1``.  With ``a_below == 1`` leaf ``a`` hangs
    under ``v1`` and ``z`` under ``v2``, otherwise the other way round.
    Variant ``"A"`` makes the vertex above ``z`` or ``a`` in the ``v2``
    position a plain child of ``q'``; variant ``"B"`` turns ``v2`` into a
    reticulation with a second parent ``u2`` placed above ``u1``.  The two
    networks display the same trees.  New leaves are labelled ``a`` and
    ``b`` with a suffix that avoids clashes.
    """
    candidates = sorted(v for v in base.vertices if v != base.root and base.is_tree_or_leaf(v))
    z = candidates[rng.randrange(len(candidates))]
    (s,) = base.parents(z)
    taken = base.leaf_labels
    k = 0
    while f"a{k}" in taken or f"b{k}" in taken:
        k += 1
    la, lb = f"a{k}", f"b{k}"

    left = base.copy()
    t, pa, q, pb, a, b = (left._new_vertex() for _ in range(6))
    left._remove_arc(s, z)
    for arc in [(s, t), (t, pa), (t, q), (pa, a), (pa, pb), (q, pb), (q, z), (pb, b)]:
        left._add_arc(*arc)
    left._labels.update({a: la, b: lb})
    left._leaf_ids.update({la: a, lb: b})

    right = base.copy()
    u1, q2, pb2, v1, a2, b2 = (right._new_vertex() for _ in range(6))
    right._remove_arc(s, z)
    right._labels.update({a2: la, b2: lb})
    right._leaf_ids.update({la: a2, lb: b2})
    if variant == "B":
        u2 = right._new_vertex()
        right._add_arc(s, u2)
        right._add_arc(u2, u1)
    else:
        right._add_arc(s, u1)
    for arc in [(u1, q2), (u1, v1), (q2, pb2), (pb2, b2), (pb2, v1)]:
        right._add_arc(*arc)
    under_v1, under_v2 = (a2, z) if a_below == 1 else (z, a2)
    right._add_arc(v1, under_v1)
    if variant == "B":
        v2 = right._new_vertex()
        right._add_arc(q2, v2)
        right._add_arc(u2, v2)
        right._add_arc(v2, under_v2)
    else:
        right._add_arc(q2, under_v2)
    return left.compact(), right.compact()
