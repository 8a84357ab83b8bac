"""Extended Newick and arc-list formats.

Extended Newick marks a reticulation by a hybrid tag ``#H<k>`` that occurs
twice: once after the parenthesised body below the reticulation and once
as a bare reference at the other parent, e.g. ``((a,(b)#H1),(#H1,c));``.
Internal vertex names are accepted and ignored.  Branch lengths and
bracketed comments are rejected.

The arc-list format is one ``tail<TAB>head`` pair per line.  A vertex is
written as its name, optionally followed by ``label=<taxon>``; vertices of
out-degree zero without an explicit label use their name.  Blank lines and
lines starting with ``#`` are skipped.
"""

from __future__ import annotations

import hashlib
import re
from collections import Counter

from .errors import HybridArityError, InvalidNetwork, NewickSyntaxError
from .network import Network, validate

_NAME = re.compile(r"[^\s(),;:\[\]]+")
_TAG = re.compile(r"[A-Za-z]*\d+")


class _Node:
    __slots__ = ("name", "tag", "children", "pos")

    def __init__(self, pos):
        self.name = ""
        self.tag = None
        self.children = None
        self.pos = pos


def _skip_ws(text, i):
    while i < len(text) and text[i].isspace():
        i += 1
    return i


def _read_name(text, i, node):
    m = _NAME.match(text, i)
    if not m:
        return i
    raw = m.group()
    if "#" in raw:
        name, _, tag = raw.partition("#")
        if not _TAG.fullmatch(tag):
            raise NewickSyntaxError(f"malformed hybrid tag {'#' + tag!r}", i)
        node.tag = tag
        node.name = name
    else:
        node.name = raw
    return m.end()


def _check_unsupported(text, i):
    if i < len(text) and text[i] == ":":
        raise NewickSyntaxError("branch lengths are not supported", i)
    if i < len(text) and text[i] in "[]":
        raise NewickSyntaxError("bracketed comments are not supported", i)


def _tokenize_tree(text: str) -> tuple[_Node, list[_Node]]:
    nodes: list[_Node] = []
    stack: list[_Node] = []
    top = None
    i = _skip_ws(text, 0)
    expect_node = True
    while True:
        if i >= len(text):
            raise NewickSyntaxError("unexpected end of input, missing ';'", i)
        ch = text[i]
        if expect_node:
            if ch == "(":
                node = _Node(i)
                node.children = []
                nodes.append(node)
                if stack:
                    stack[-1].children.append(node)
                stack.append(node)
                i = _skip_ws(text, i + 1)
                continue
            node = _Node(i)
            j = _read_name(text, i, node)
            if j == i:
                _check_unsupported(text, i)
                raise NewickSyntaxError(f"expected a subtree, found {ch!r}", i)
            nodes.append(node)
            if stack:
                stack[-1].children.append(node)
            else:
                top = node
            i = _skip_ws(text, j)
            _check_unsupported(text, i)
            expect_node = False
            continue
        if ch == ",":
            if not stack:
                raise NewickSyntaxError("',' outside parentheses", i)
            i = _skip_ws(text, i + 1)
            expect_node = True
        elif ch == ")":
            if not stack:
                raise NewickSyntaxError("unbalanced ')'", i)
            node = stack.pop()
            i = _skip_ws(text, _read_name(text, _skip_ws(text, i + 1), node))
            _check_unsupported(text, i)
            if not stack:
                top = node
        elif ch == ";":
            if stack:
                raise NewickSyntaxError("unbalanced '(' before ';'", i)
            rest = text[i + 1 :]
            if rest.strip():
                raise NewickSyntaxError("trailing text after ';'", i + 1)
            return top, nodes
        else:
            _check_unsupported(text, i)
            raise NewickSyntaxError(f"unexpected character {ch!r}", i)


def parse_enewick(text: str) -> Network:
    """Parse one extended Newick network.

    Raises :class:`NewickSyntaxError`, :class:`HybridArityError` when a
    hybrid tag does not occur exactly twice, and :class:`InvalidNetwork`
    when the resulting graph is not a phylogenetic network.
    """
    top, nodes = _tokenize_tree(text)

    tag_count = Counter(n.tag for n in nodes if n.tag is not None)
    for tag, k in sorted(tag_count.items()):
        if k != 2:
            raise HybridArityError(f"hybrid tag #{tag} occurs {k} time(s), expected 2")
        bodies = [n for n in nodes if n.tag == tag and n.children is not None]
        if len(bodies) > 1:
            raise HybridArityError(f"hybrid tag #{tag} has two parenthesised bodies")

    # ids follow textual order; both occurrences of a hybrid tag share one id
    ids: dict[int, int] = {}
    hyb: dict[str, int] = {}
    next_id = 0
    for n in nodes:
        if n.tag is None:
            ids[id(n)] = next_id
            next_id += 1
        else:
            if n.tag not in hyb:
                hyb[n.tag] = next_id
                next_id += 1
            ids[id(n)] = hyb[n.tag]

    arcs = []
    labels = {}
    for n in nodes:
        v = ids[id(n)]
        if n.children:
            arcs.extend((v, ids[id(c)]) for c in n.children)
        elif n.children is None and n.tag is None:
            if not n.name:
                raise NewickSyntaxError("leaf without a label", n.pos)
            labels[v] = n.name
    net = Network(arcs, labels, root=ids[id(top)], vertices=range(next_id))
    report = validate(net)
    if not report.ok:
        raise InvalidNetwork(report)
    return net


def _structure(net: Network):
    """Smallest reachable label and a structural digest for every vertex."""
    minlab: dict[int, str] = {}
    digest: dict[int, bytes] = {}
    for v in reversed(net.topological_order()):
        kids = net.children(v)
        h = hashlib.blake2b(digest_size=12)
        if not kids:
            minlab[v] = net.label(v)
            h.update(b"L" + net.label(v).encode())
        else:
            minlab[v] = min(minlab[c] for c in kids)
            h.update(b"R" if net.is_reticulation(v) else b"T")
            for d in sorted(digest[c] for c in kids):
                h.update(d)
        digest[v] = h.digest()
    return minlab, digest


def serialize_enewick(net: Network) -> str:
    """Canonical extended Newick text of a valid network.

    Children are ordered by the smallest leaf label they reach (ties broken
    by structure).  A reticulation's body is written under the parent with
    the smaller such label; hybrid numbers follow first appearance.
    """
    minlab, digest = _structure(net)

    def key(v):
        return (minlab[v], digest[v], v)

    body_parent = {r: min(net.parents(r), key=key) for r in net.reticulations}
    hybrid_no: dict[int, int] = {}
    out: list[str] = []
    stack: list = [(net.root, None)]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            out.append(item)
            continue
        v, via = item
        kids = net.children(v)
        if not kids:
            out.append(net.label(v))
            continue
        suffix = ""
        if v in body_parent:
            if v not in hybrid_no:
                hybrid_no[v] = len(hybrid_no) + 1
            if via != body_parent[v]:
                out.append(f"#H{hybrid_no[v]}")
                continue
            suffix = f"#H{hybrid_no[v]}"
        ordered = sorted(kids, key=key)
        out.append("(")
        stack.append(")" + suffix)
        for j, c in enumerate(reversed(ordered)):
            if j:
                stack.append(",")
            stack.append((c, v))
    return "".join(out) + ";"


def parse_arclist(text: str) -> Network:
    names: dict[str, int] = {}
    labels: dict[int, str] = {}
    arcs = []

    def vertex(field: str, lineno: int) -> int:
        parts = field.split()
        if not parts or len(parts) > 2:
            raise NewickSyntaxError(f"line {lineno}: malformed vertex field {field!r}")
        name = parts[0]
        v = names.setdefault(name, len(names))
        if len(parts) == 2:
            if not parts[1].startswith("label=") or len(parts[1]) == len("label="):
                raise NewickSyntaxError(f"line {lineno}: expected 'label=<taxon>', got {parts[1]!r}")
            lab = parts[1][len("label=") :]
            if labels.get(v, lab) != lab:
                raise NewickSyntaxError(f"line {lineno}: vertex {name!r} labelled twice")
            labels[v] = lab
        return v

    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.rstrip("\r\n").split("\t")
        if len(fields) != 2:
            raise NewickSyntaxError(f"line {lineno}: expected 'tail<TAB>head'")
        arcs.append((vertex(fields[0], lineno), vertex(fields[1], lineno)))
    if not arcs:
        raise NewickSyntaxError("arc list is empty")

    tails = {u for u, _ in arcs}
    for name, v in names.items():
        if v not in tails and v not in labels:
            labels[v] = name
    net = Network(arcs, labels, vertices=range(len(names)))
    report = validate(net)
    if not report.ok:
        raise InvalidNetwork(report)
    return net


def serialize_arclist(net: Network) -> str:
    def name(v):
        lab = net.label(v)
        return f"v{v}" if lab is None else f"v{v} label={lab}"

    return "".join(f"{name(u)}\t{name(v)}\n" for u, v in net.arcs)
