"""Decide whether a normal and a tree-child network display the same trees.

The procedure repeatedly picks a cherry or reticulated cherry ``{a, b}`` of
the normal network ``N``, checks that the tree-child network ``N'`` has the
matching local structure around ``a`` and ``b``, and then deletes a leaf or
one or two reticulation arcs on each side so that the reduced pair has
equal display sets exactly when the original pair does.  A failed local
check means the display sets differ.  Once two leaves remain the answer is
yes.  Trivial shortcuts of ``N'`` are removed up front.

Vertex names used in the checks, with ``'`` marking ``N'``:

* reticulated cherry in ``N``: ``p_a -> a``, ``p_a -> p_b``, ``q -> p_b``,
  ``p_b -> b``;
* reticulation parent case in ``N'``: ``p'_b`` is a reticulation with
  parents ``p'_a`` (the parent of ``a``) and ``q'_2``;
* tree-vertex parent case in ``N'``: ``q' -> p'_b -> b``,
  ``p'_b -> v'_1`` (a reticulation whose other parent is ``u'_1``),
  ``q' -> v'_2``, ``u'_1 -> q'``, and when ``v'_2`` is a reticulation its
  other parent ``u'_2`` has ``u'_2 -> u'_1``.
"""

from __future__ import annotations

import enum
import random
from dataclasses import asdict, dataclass, field
from typing import Union

from .analysis import (
    Cherry,
    CherryShape,
    ReticulatedCherry,
    all_cherries,
    cluster_set,
    find_cherry,
    is_normal,
    is_shortcut,
    is_tree_child,
    visibility_set,
)
from .errors import InvalidNetwork, LeafSetMismatch, NotNormal, NotTreeChild
from .network import Arc, Network, validate
from .ops import _remove_trivial_shortcuts_inplace


class Mismatch(str, enum.Enum):
    """Why the local structure of ``N'`` (or ``N``) rules out equal display sets."""

    NOT_CHERRY = "{a,b} is not a cherry of the second network"
    NOT_RETICULATED_CHERRY = "parent of a is not a parent of the reticulation above b"
    RET_SHORTCUT = "an arc into the reticulation above b is a shortcut"
    RET_VISIBILITY = "visibility sets of q and q'_2 differ"
    RET_CLUSTER = "cluster sets of q and q'_2 differ"
    NO_COMMON_PARENT = "p_a and q have no common parent in the first network"
    V1_NOT_RETICULATION = "v'_1 is not a reticulation"
    Q_NOT_TREE_VERTEX = "q' is not a tree vertex"
    V2_IS_V1 = "v'_2 coincides with v'_1"
    U1_NOT_SHORTCUT = "(u'_1, v'_1) is not a shortcut"
    U1_NOT_PARENT_OF_Q = "(u'_1, q') is not an arc"
    VISIBILITY_PAIR = "{V(v'_1), V(v'_2)} differs from {{a}, V(q)}"
    CLUSTER_PAIR = "{C(v'_1), C(v'_2)} differs from {{a}, C(q) - b}"
    U2_NOT_SHORTCUT = "(u'_2, v'_2) is not a shortcut"
    U2_NOT_PARENT_OF_U1 = "(u'_2, u'_1) is not an arc"


@dataclass(frozen=True)
class CherryMatch:
    pass


@dataclass(frozen=True)
class RetCherryMatch:
    """``N'`` vertices ``p'_a``, ``p'_b`` and ``q'_2``."""

    p_a: int
    p_b: int
    q2: int


@dataclass(frozen=True)
class TreeParentMatch:
    """``N'`` vertices of the tree-vertex parent case; ``t`` is the ``N`` vertex above ``p_a`` and ``q``.

    ``a_below`` is 1 when ``C(v'_1) = {a}`` and 2 when ``C(v'_2) = {a}``.
    ``u2`` is ``None`` when ``v'_2`` is a tree vertex or a leaf.
    """

    t: int
    p_b: int
    q: int
    v1: int
    v2: int
    u1: int
    u2: int | None
    a_below: int

    @property
    def variant(self) -> str:
        return "A" if self.u2 is None else "B"


@dataclass(frozen=True)
class NoMatch:
    reason: Mismatch

    def __str__(self):
        return self.reason.value


MatchResult = Union[CherryMatch, RetCherryMatch, TreeParentMatch, NoMatch]


class Case(str, enum.Enum):
    CHERRY = "cherry"
    RETICULATION_PARENT = "reticulated-cherry/reticulation-parent"
    TREE_PARENT = "reticulated-cherry/tree-parent"


@dataclass
class IterationRecord:
    i: int
    cherry: CherryShape
    case: Case
    match: MatchResult
    deleted_left: list = field(default_factory=list)
    deleted_right: list = field(default_factory=list)
    sizes: tuple[int, int] = (0, 0)

    def describe(self) -> str:
        ch = self.cherry
        kind = "cherry" if isinstance(ch, Cherry) else "reticulated cherry"
        line = f"i={self.i} {kind} {{{ch.a},{ch.b}}} case={self.case.value} match={type(self.match).__name__}"
        if isinstance(self.match, NoMatch):
            line += f" reason={self.match.reason.name}"
        if self.deleted_left or self.deleted_right:
            line += f" deleted_left={self.deleted_left} deleted_right={self.deleted_right}"
        return line

    def to_dict(self) -> dict:
        match = asdict(self.match) if not isinstance(self.match, NoMatch) else {"reason": self.match.reason.name}
        return {
            "i": self.i,
            "cherry": {"type": type(self.cherry).__name__, **asdict(self.cherry)},
            "case": self.case.value,
            "match": {"type": type(self.match).__name__, **match},
            "deleted_left": [list(d) if isinstance(d, tuple) else d for d in self.deleted_left],
            "deleted_right": [list(d) if isinstance(d, tuple) else d for d in self.deleted_right],
            "sizes": list(self.sizes),
        }


@dataclass
class Decision:
    equivalent: bool
    trace: list[IterationRecord]
    removed_shortcuts: list[Arc] = field(default_factory=list)

    @property
    def reason(self) -> str:
        if self.equivalent:
            return "reduced to two leaves"
        last = self.trace[-1]
        return f"{last.case.value}: {last.match}"

    def __bool__(self):
        return self.equivalent


def match_cherry_case(n_i: Network, n2_i: Network, ch: Cherry) -> MatchResult:
    pa = n2_i.parents(n2_i.leaf(ch.a))
    pb = n2_i.parents(n2_i.leaf(ch.b))
    if pa == pb:
        return CherryMatch()
    return NoMatch(Mismatch.NOT_CHERRY)


def match_reticulation_parent_case(n_i: Network, n2_i: Network, rc: ReticulatedCherry) -> MatchResult:
    """Check the reticulation-parent template in ``N'``.

    ``{a, b}`` must be a reticulated cherry of ``N'`` whose reticulation arcs
    are not shortcuts, and the other parent ``q'_2`` must have the same
    visibility and cluster sets as ``q`` in ``N``.
    """
    (pb2,) = n2_i.parents(n2_i.leaf(rc.b))
    if not n2_i.is_reticulation(pb2):
        raise ValueError("parent of b in the second network is not a reticulation")
    (pa2,) = n2_i.parents(n2_i.leaf(rc.a))
    if pa2 not in n2_i.parents(pb2):
        return NoMatch(Mismatch.NOT_RETICULATED_CHERRY)
    (q2,) = [p for p in n2_i.parents(pb2) if p != pa2]
    if is_shortcut(n2_i, (pa2, pb2)) or is_shortcut(n2_i, (q2, pb2)):
        return NoMatch(Mismatch.RET_SHORTCUT)
    if visibility_set(n_i, rc.q) != visibility_set(n2_i, q2):
        return NoMatch(Mismatch.RET_VISIBILITY)
    if cluster_set(n_i, rc.q) != cluster_set(n2_i, q2):
        return NoMatch(Mismatch.RET_CLUSTER)
    return RetCherryMatch(pa2, pb2, q2)


def match_tree_parent_case(n_i: Network, n2_i: Network, rc: ReticulatedCherry) -> MatchResult:
    """Check the templates used when ``b``'s parent in ``N'`` is not a reticulation.

    In ``N``, ``p_a`` and ``q`` must share their parent.  In ``N'`` the
    checks run in the order listed in :class:`Mismatch`.
    """
    (pb2,) = n2_i.parents(n2_i.leaf(rc.b))
    if n2_i.is_reticulation(pb2):
        raise ValueError("parent of b in the second network is a reticulation")

    pa_parents = n_i.parents(rc.p_a)
    common = [t for t in pa_parents if t in n_i.parents(rc.q)]
    if not common:
        return NoMatch(Mismatch.NO_COMMON_PARENT)
    t = common[0]

    b2 = n2_i.leaf(rc.b)
    (v1,) = [c for c in n2_i.children(pb2) if c != b2] or [None]
    if v1 is None or not n2_i.is_reticulation(v1):
        return NoMatch(Mismatch.V1_NOT_RETICULATION)
    q2_parents = n2_i.parents(pb2)
    if len(q2_parents) != 1:
        return NoMatch(Mismatch.Q_NOT_TREE_VERTEX)
    (q2,) = q2_parents
    if not (n2_i.indegree(q2) == 1 and n2_i.outdegree(q2) == 2):
        return NoMatch(Mismatch.Q_NOT_TREE_VERTEX)
    (v2,) = [c for c in n2_i.children(q2) if c != pb2]
    if v2 == v1:
        return NoMatch(Mismatch.V2_IS_V1)
    (u1,) = [p for p in n2_i.parents(v1) if p != pb2]
    if not is_shortcut(n2_i, (u1, v1)):
        return NoMatch(Mismatch.U1_NOT_SHORTCUT)
    if q2 not in n2_i.children(u1):
        return NoMatch(Mismatch.U1_NOT_PARENT_OF_Q)

    only_a = frozenset((rc.a,))
    vq = visibility_set(n_i, rc.q)
    cq_b = cluster_set(n_i, rc.q) - {rc.b}
    vis1, vis2 = visibility_set(n2_i, v1), visibility_set(n2_i, v2)
    cl1, cl2 = cluster_set(n2_i, v1), cluster_set(n2_i, v2)
    if (vis1, vis2) == (only_a, vq) and (cl1, cl2) == (only_a, cq_b):
        a_below = 1
    elif (vis1, vis2) == (vq, only_a) and (cl1, cl2) == (cq_b, only_a):
        a_below = 2
    elif {vis1, vis2} != {only_a, vq}:
        return NoMatch(Mismatch.VISIBILITY_PAIR)
    else:
        return NoMatch(Mismatch.CLUSTER_PAIR)

    u2 = None
    if n2_i.is_reticulation(v2):
        (u2,) = [p for p in n2_i.parents(v2) if p != q2]
        if not is_shortcut(n2_i, (u2, v2)):
            return NoMatch(Mismatch.U2_NOT_SHORTCUT)
        if u1 not in n2_i.children(u2):
            return NoMatch(Mismatch.U2_NOT_PARENT_OF_U1)
    return TreeParentMatch(t, pb2, q2, v1, v2, u1, u2, a_below)


def _step_deletions(ch: CherryShape, match: MatchResult) -> tuple[list, list]:
    """Leaves (as labels) and arcs to delete on each side, in order."""
    if isinstance(match, CherryMatch):
        return [ch.b], [ch.b]
    left: list = [(ch.p_a, ch.p_b)]
    if isinstance(match, RetCherryMatch):
        return left, [(match.p_a, match.p_b)]
    if isinstance(match, TreeParentMatch):
        first = (match.p_b, match.v1) if match.a_below == 1 else (match.u1, match.v1)
        right = [first]
        if match.u2 is not None:
            right.append((match.u2, match.v2))
        return left, right
    raise ValueError(f"no reduction for {match!r}")


def _apply(net: Network, deletions: list) -> None:
    for d in deletions:
        if isinstance(d, str):
            net._delete_leaf(d)
        else:
            net._delete_arc(*d)


def recurse_step(n_i: Network, n2_i: Network, ch: CherryShape, match: MatchResult) -> tuple[Network, Network]:
    """Reduced pair after a successful match; inputs are left untouched."""
    left, right = _step_deletions(ch, match)
    a, b = n_i.copy(), n2_i.copy()
    _apply(a, left)
    _apply(b, right)
    return a.compact(), b.compact()


def match_step(n_i: Network, n2_i: Network, ch: CherryShape) -> tuple[Case, MatchResult]:
    """Dispatch to the right matcher for cherry ``ch`` of ``n_i``."""
    if isinstance(ch, Cherry):
        return Case.CHERRY, match_cherry_case(n_i, n2_i, ch)
    (pb2,) = n2_i.parents(n2_i.leaf(ch.b))
    if n2_i.is_reticulation(pb2):
        return Case.RETICULATION_PARENT, match_reticulation_parent_case(n_i, n2_i, ch)
    return Case.TREE_PARENT, match_tree_parent_case(n_i, n2_i, ch)


def check_inputs(n: Network, n2: Network) -> None:
    for net in (n, n2):
        report = validate(net)
        if not report.ok:
            raise InvalidNetwork(report)
    if n.leaf_labels != n2.leaf_labels:
        raise LeafSetMismatch("the two networks have different leaf sets")
    if not is_normal(n):
        raise NotNormal("first network is not normal")
    if not is_tree_child(n2):
        raise NotTreeChild("second network is not tree-child")


def same_display_set(n: Network, n2: Network, *, rng: random.Random | None = None) -> Decision:
    """Decide whether normal ``n`` and tree-child ``n2`` display the same trees.

    With ``rng`` given, the cherry reduced at each step is drawn at random
    among all cherries of the current first network instead of the one
    :func:`~dispset.analysis.find_cherry` returns.
    """
    check_inputs(n, n2)
    left, right = n.copy(), n2.copy()
    removed = _remove_trivial_shortcuts_inplace(right)
    trace: list[IterationRecord] = []
    i = 0
    while left.n_leaves > 2:
        ch = rng.choice(all_cherries(left)) if rng is not None else find_cherry(left)
        case, match = match_step(left, right, ch)
        record = IterationRecord(i, ch, case, match, sizes=(len(left), len(right)))
        trace.append(record)
        if isinstance(match, NoMatch):
            return Decision(False, trace, removed)
        record.deleted_left, record.deleted_right = _step_deletions(ch, match)
        _apply(left, record.deleted_left)
        _apply(right, record.deleted_right)
        i += 1
    return Decision(True, trace, removed)
