"""Rooted, binary, leaf-labelled phylogenetic networks.

A :class:`Network` is a small directed multigraph with integer vertex ids,
a designated root and a labelling of its leaves.  Instances are treated as
values: every public operation returns a new network.  The underscore
methods mutate in place and are reserved for algorithms that own a private
working copy (see :mod:`dispset.ops` and :mod:`dispset.equivalence`).
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping


class VertexKind(enum.Enum):
    ROOT = "root"
    TREE = "tree"
    RETICULATION = "reticulation"
    LEAF = "leaf"
    INVALID = "invalid"


Arc = tuple[int, int]


class Network:
    """Leaf-labelled rooted DAG.

    Parameters
    ----------
    arcs:
        Directed pairs ``(tail, head)``.  Duplicates are kept so that
        :func:`validate` can report them.
    labels:
        Mapping from leaf vertex id to taxon label.
    root:
        Root vertex.  When omitted, the unique vertex of in-degree zero is
        used (``None`` if there is not exactly one).
    vertices:
        Extra vertex ids, needed only for vertices without incident arcs
        (the single-vertex network on one taxon).
    origin:
        Optional mapping ``vertex -> id in the network this one was derived
        from``; maintained by :meth:`compact`.
    """

    __slots__ = ("_children", "_parents", "_labels", "_leaf_ids", "root", "origin")

    def __init__(
        self,
        arcs: Iterable[Arc],
        labels: Mapping[int, str],
        *,
        root: int | None = None,
        vertices: Iterable[int] = (),
        origin: Mapping[int, int] | None = None,
    ):
        children: dict[int, list[int]] = {}
        parents: dict[int, list[int]] = {}
        for v in vertices:
            children.setdefault(v, [])
            parents.setdefault(v, [])
        for v in labels:
            children.setdefault(v, [])
            parents.setdefault(v, [])
        for u, v in sorted(arcs):
            children.setdefault(u, []).append(v)
            parents.setdefault(u, [])
            children.setdefault(v, [])
            parents.setdefault(v, []).append(u)
        self._children = children
        self._parents = parents
        self._labels = dict(labels)
        self._leaf_ids = {lab: v for v, lab in self._labels.items()}
        if root is None:
            roots = [v for v, ps in parents.items() if not ps]
            root = roots[0] if len(roots) == 1 else None
        self.root = root
        self.origin = dict(origin) if origin is not None else None

    # -- read-only views -------------------------------------------------

    @property
    def vertices(self) -> list[int]:
        return sorted(self._children)

    def __len__(self) -> int:
        return len(self._children)

    def __contains__(self, v) -> bool:
        return v in self._children

    @property
    def arcs(self) -> list[Arc]:
        return sorted((u, v) for u, cs in self._children.items() for v in cs)

    def children(self, v: int) -> list[int]:
        return self._children[v]

    def parents(self, v: int) -> list[int]:
        return self._parents[v]

    def has_arc(self, u: int, v: int) -> bool:
        return u in self._children and v in self._children[u]

    def indegree(self, v: int) -> int:
        return len(self._parents[v])

    def outdegree(self, v: int) -> int:
        return len(self._children[v])

    def kind(self, v: int) -> VertexKind:
        nin, nout = len(self._parents[v]), len(self._children[v])
        if nout == 0 and v in self._labels:
            # the one-taxon network's only vertex counts as a leaf
            return VertexKind.LEAF
        if v == self.root:
            return VertexKind.ROOT
        if nout == 0:
            return VertexKind.INVALID
        if nin == 1 and nout == 2:
            return VertexKind.TREE
        if nin == 2 and nout == 1:
            return VertexKind.RETICULATION
        return VertexKind.INVALID

    def is_reticulation(self, v: int) -> bool:
        return len(self._parents[v]) == 2 and len(self._children[v]) == 1

    def is_leaf(self, v: int) -> bool:
        return not self._children[v] and v in self._labels

    def is_tree_or_leaf(self, v: int) -> bool:
        # root excluded: a root is never the child the tree-child test looks for
        return len(self._parents[v]) == 1 and len(self._children[v]) in (0, 2)

    def label(self, v: int) -> str | None:
        return self._labels.get(v)

    @property
    def labels(self) -> dict[int, str]:
        return dict(self._labels)

    def leaf(self, label: str) -> int:
        from .errors import UnknownLeaf

        try:
            return self._leaf_ids[label]
        except KeyError:
            raise UnknownLeaf(f"no leaf labelled {label!r}") from None

    @property
    def leaf_labels(self) -> frozenset[str]:
        return frozenset(self._leaf_ids)

    @property
    def n_leaves(self) -> int:
        return len(self._labels)

    @property
    def leaves(self) -> list[int]:
        return sorted(self._labels)

    @property
    def reticulations(self) -> list[int]:
        return [v for v in self.vertices if self.is_reticulation(v)]

    def topological_order(self) -> list[int]:
        """Vertices in an order where every arc points forward.

        Raises ``ValueError`` if the graph has a directed cycle.
        """
        indeg = {v: len(ps) for v, ps in self._parents.items()}
        queue = deque(sorted(v for v, d in indeg.items() if d == 0))
        order = []
        while queue:
            v = queue.popleft()
            order.append(v)
            for c in self._children[v]:
                indeg[c] -= 1
                if indeg[c] == 0:
                    queue.append(c)
        if len(order) != len(indeg):
            raise ValueError("network contains a directed cycle")
        return order

    # -- value semantics -------------------------------------------------

    def _key(self):
        return (self.root, tuple(self.vertices), tuple(self.arcs), tuple(sorted(self._labels.items())))

    def __eq__(self, other):
        if not isinstance(other, Network):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return (
            f"Network(leaves={self.n_leaves}, vertices={len(self)}, "
            f"reticulations={len(self.reticulations)}, root={self.root})"
        )

    def copy(self) -> Network:
        new = Network.__new__(Network)
        new._children = {v: list(cs) for v, cs in self._children.items()}
        new._parents = {v: list(ps) for v, ps in self._parents.items()}
        new._labels = dict(self._labels)
        new._leaf_ids = dict(self._leaf_ids)
        new.root = self.root
        new.origin = dict(self.origin) if self.origin is not None else None
        return new

    def compact(self) -> Network:
        """Renumber vertices ``0..n-1`` in increasing order of current id.

        ``origin`` of the result maps each new id to the id it had in the
        first ancestor network that carried no origin table.
        """
        old_ids = self.vertices
        new_id = {old: i for i, old in enumerate(old_ids)}
        if self.origin is None:
            origin = {i: old for i, old in enumerate(old_ids)}
        else:
            origin = {i: self.origin.get(old, old) for i, old in enumerate(old_ids)}
        return Network(
            ((new_id[u], new_id[v]) for u, v in self.arcs),
            {new_id[v]: lab for v, lab in self._labels.items()},
            root=new_id[self.root] if self.root is not None else None,
            vertices=range(len(old_ids)),
            origin=origin,
        )

    def relabel(self, mapping: Mapping[str, str]) -> Network:
        """Return a copy with leaf labels renamed through ``mapping``."""
        new = self.copy()
        new._labels = {v: mapping.get(lab, lab) for v, lab in self._labels.items()}
        new._leaf_ids = {lab: v for v, lab in new._labels.items()}
        return new

    # -- in-place primitives (private working copies only) ----------------

    def _new_vertex(self) -> int:
        v = max(self._children, default=-1) + 1
        self._children[v] = []
        self._parents[v] = []
        return v

    def _add_arc(self, u: int, v: int) -> None:
        self._children[u].append(v)
        self._parents[v].append(u)

    def _remove_arc(self, u: int, v: int) -> None:
        self._children[u].remove(v)
        self._parents[v].remove(u)

    def _remove_vertex(self, v: int) -> None:
        for c in list(self._children[v]):
            self._parents[c].remove(v)
        for p in list(self._parents[v]):
            self._children[p].remove(v)
        del self._children[v]
        del self._parents[v]
        lab = self._labels.pop(v, None)
        if lab is not None:
            del self._leaf_ids[lab]

    def _suppress(self, v: int) -> None:
        """Replace the path ``p -> v -> c`` by the arc ``p -> c``.

        If ``p -> c`` already exists a parallel arc is created on purpose;
        :func:`validate` reports it.
        """
        (p,) = self._parents[v]
        (c,) = self._children[v]
        pc = self._children[p]
        pc[pc.index(v)] = c
        cp = self._parents[c]
        cp[cp.index(v)] = p
        del self._children[v]
        del self._parents[v]

    def _tidy(self, v: int) -> None:
        """Suppress ``v`` if it has in- and out-degree one; drop a root of out-degree one."""
        if v not in self._children:
            return
        if v == self.root:
            if len(self._children[v]) == 1 and v not in self._labels:
                (c,) = self._children[v]
                self._remove_vertex(v)
                self.root = c
        elif len(self._parents[v]) == 1 and len(self._children[v]) == 1:
            self._suppress(v)

    def _delete_arc(self, u: int, v: int) -> None:
        self._remove_arc(u, v)
        self._tidy(v)
        self._tidy(u)

    def _delete_leaf(self, label: str) -> None:
        b = self.leaf(label)
        (p,) = self._parents[b]
        self._remove_vertex(b)
        self._tidy(p)


@dataclass(frozen=True)
class Violation:
    rule: str
    where: object = None

    def __str__(self):
        return self.rule if self.where is None else f"{self.rule} at {self.where}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def rules(self) -> set[str]:
        return {v.rule for v in self.violations}


def validate(net: Network) -> ValidationReport:
    """Check every structural axiom of a binary phylogenetic network.

    Violations are returned as data; nothing is raised.
    """
    found: list[Violation] = []
    verts = net.vertices
    if not verts:
        return ValidationReport((Violation("empty"),))

    roots = [v for v in verts if net.indegree(v) == 0]
    if len(roots) != 1:
        found.append(Violation("root-count", tuple(roots)))
    elif net.root != roots[0]:
        found.append(Violation("root-mismatch", net.root))

    seen_arcs = set()
    for arc in net.arcs:
        if arc[0] == arc[1]:
            found.append(Violation("self-loop", arc))
        elif arc in seen_arcs:
            found.append(Violation("parallel-arcs", arc))
        seen_arcs.add(arc)

    try:
        net.topological_order()
    except ValueError:
        found.append(Violation("cycle"))

    labels = net.labels
    if len(set(labels.values())) != len(labels):
        found.append(Violation("duplicate-label"))

    single = len(verts) == 1 and verts[0] in labels
    for v in verts:
        nin, nout = net.indegree(v), net.outdegree(v)
        if nout == 0:
            if v not in labels:
                found.append(Violation("unlabeled-leaf", v))
            if nin != 1 and not single:
                found.append(Violation("leaf-indegree", v))
            continue
        if v in labels:
            found.append(Violation("labeled-internal", v))
        if v == net.root:
            if nout != 2:
                found.append(Violation("root-degree", v))
        elif (nin, nout) not in ((1, 2), (2, 1)):
            found.append(Violation("vertex-degree", v))
    return ValidationReport(tuple(found))


def network_from_named_arcs(arcs: Iterable[tuple[str, str]], leaves: Iterable[str] | None = None) -> Network:
    """Build a network from arcs between vertex names.

    Vertices of out-degree zero are labelled by their own name.  Ids are
    assigned in order of first appearance.  ``leaves`` can list names of
    isolated leaves (the one-taxon network).
    """
    ids: dict[str, int] = {}
    pairs = []
    for u, v in arcs:
        for name in (u, v):
            ids.setdefault(name, len(ids))
        pairs.append((ids[u], ids[v]))
    for name in leaves or ():
        ids.setdefault(name, len(ids))
    tails = {u for u, _ in pairs}
    labels = {i: name for name, i in ids.items() if i not in tails}
    return Network(pairs, labels, vertices=ids.values())
