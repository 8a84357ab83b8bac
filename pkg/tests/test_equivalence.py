import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import named, small_normal, small_tree_child
from dispset.analysis import Cherry, ReticulatedCherry, all_cherries, find_cherry, is_normal, is_tree_child
from dispset.equivalence import (
    Case,
    CherryMatch,
    Mismatch,
    NoMatch,
    RetCherryMatch,
    TreeParentMatch,
    match_cherry_case,
    match_reticulation_parent_case,
    match_step,
    match_tree_parent_case,
    recurse_step,
    same_display_set,
)
from dispset.errors import InvalidNetwork, LeafSetMismatch, NotNormal, NotTreeChild
from dispset.generate import swap_labels, tree_parent_template_pair
from dispset.network import Network, validate
from dispset.newick import parse_enewick, serialize_enewick
from dispset.ops import remove_trivial_shortcuts
from dispset.oracle import display_sets_equal_bruteforce, enumerate_display_set
from strategies import PROPERTY_SETTINGS, seeds

# N around a reticulated cherry {a, b} whose p_a and q share the parent t
LEFT = [("rho", "t"), ("rho", "y"), ("t", "pa"), ("t", "q"), ("pa", "a"), ("pa", "pb"),
        ("q", "pb"), ("q", "z"), ("pb", "b")]
# N' with b below a tree vertex and v'_2 a reticulation whose other parent sits above u'_1
RIGHT_B = [("rho", "u2"), ("rho", "y"), ("u2", "u1"), ("u2", "v2"), ("u1", "qq"), ("u1", "v1"),
           ("qq", "pbb"), ("qq", "v2"), ("pbb", "b"), ("pbb", "v1"), ("v1", "a"), ("v2", "z")]


def decide(n, n2):
    d = same_display_set(n, n2)
    assert d.equivalent == display_sets_equal_bruteforce(n, n2)
    return d


def the_reticulated_cherry(net, a="a", b="b"):
    (ch,) = [c for c in all_cherries(net) if isinstance(c, ReticulatedCherry) and (c.a, c.b) == (a, b)]
    return ch


# worked instances


def test_net_a_with_itself(net_a):
    d = decide(net_a, net_a)
    assert d.equivalent and bool(d)
    # one reticulated-cherry reduction, then a cherry reduction down to two leaves
    assert len(d.trace) == 2
    assert d.trace[1].case is Case.CHERRY
    assert d.trace[0].case is Case.RETICULATION_PARENT
    assert isinstance(d.trace[0].match, RetCherryMatch)
    assert d.reason == "reduced to two leaves"


def test_net_c_with_net_b(net_b, net_c):
    d = decide(net_c, net_b)
    assert d.equivalent
    assert len(d.removed_shortcuts) == 1


def test_net_a_with_tree(net_a):
    d = decide(net_a, parse_enewick("(a,(b,c));"))
    assert not d.equivalent
    assert d.trace[-1].case is Case.TREE_PARENT
    assert d.trace[-1].match == NoMatch(Mismatch.V1_NOT_RETICULATION)
    assert "v'_1 is not a reticulation" in d.reason


def test_two_leaves_is_immediately_yes():
    d = same_display_set(parse_enewick("(a,b);"), parse_enewick("(a,b);"))
    assert d.equivalent and d.trace == []


# input checks


def test_rejects_non_normal_first(net_a, net_b):
    with pytest.raises(NotNormal):
        same_display_set(net_b, net_b)


def test_rejects_non_tree_child_second():
    left = parse_enewick("((a,b),(c,d));")
    right, _ = named(
        [("rho", "s"), ("rho", "t"), ("s", "r1"), ("s", "r2"), ("t", "r1"), ("t", "y"),
         ("y", "r2"), ("y", "d"), ("r1", "a"), ("r2", "m"), ("m", "b"), ("m", "c")]
    )
    with pytest.raises(NotTreeChild):
        same_display_set(left, right)


def test_rejects_leaf_set_mismatch(net_a, net_c):
    with pytest.raises(LeafSetMismatch):
        same_display_set(net_a, net_c)


def test_rejects_invalid_network(net_a):
    with pytest.raises(InvalidNetwork):
        same_display_set(Network([(0, 1), (0, 2), (0, 3)], {1: "a", 2: "b", 3: "c"}), net_a)


# cherry case


def test_cherry_match():
    t = parse_enewick("(a,b);")
    assert match_cherry_case(t, t, Cherry("a", "b", t.root)) == CherryMatch()


def test_cherry_mismatch():
    left, right = parse_enewick("(a,(b,c));"), parse_enewick("((a,b),c);")
    ch = find_cherry(left)
    assert (ch.a, ch.b) == ("b", "c")
    assert match_cherry_case(left, right, ch) == NoMatch(Mismatch.NOT_CHERRY)
    assert not decide(left, right).equivalent


def test_cherry_against_reticulated_cherry():
    left = parse_enewick("((a,b),c);")
    right = parse_enewick("((a,(b)#H1),(#H1,c));")
    d = decide(left, right)
    assert not d.equivalent
    assert d.trace[-1].match == NoMatch(Mismatch.NOT_CHERRY)


# reticulation parent case


def test_reticulation_parent_match(net_a, ids_a):
    ch = find_cherry(net_a)
    m = match_reticulation_parent_case(net_a, net_a, ch)
    assert m == RetCherryMatch(ids_a["u"], ids_a["r"], ids_a["v"])


def test_reticulation_parent_visibility_mismatch():
    left, _ = named([("rho", "u"), ("rho", "v"), ("u", "a"), ("u", "r"), ("v", "r"), ("v", "w"),
                     ("w", "c"), ("w", "d"), ("r", "b")])
    right, _ = named([("rho", "u"), ("rho", "y"), ("u", "a"), ("u", "r"), ("y", "v"), ("y", "d"),
                      ("v", "r"), ("v", "c"), ("r", "b")])
    ch = the_reticulated_cherry(left)
    assert match_reticulation_parent_case(left, right, ch) == NoMatch(Mismatch.RET_VISIBILITY)
    assert not decide(left, right).equivalent


def test_reticulation_parent_shortcut():
    left, _ = named([("rho", "u"), ("rho", "v"), ("u", "a"), ("u", "r"), ("v", "r"), ("v", "w"),
                     ("w", "c"), ("w", "d"), ("r", "b")])
    right, _ = named([("rho", "q2"), ("rho", "c"), ("q2", "m"), ("q2", "r"), ("m", "u"), ("m", "d"),
                      ("u", "a"), ("u", "r"), ("r", "b")])
    assert not is_normal(right) and is_tree_child(right)
    ch = the_reticulated_cherry(left)
    assert match_reticulation_parent_case(left, right, ch) == NoMatch(Mismatch.RET_SHORTCUT)
    assert not decide(left, right).equivalent


def test_reticulation_parent_wrong_partner():
    # b's parent is a reticulation, but a hangs elsewhere
    left = parse_enewick("((a,(b)#H1),(#H1,(c,d)));")
    right = parse_enewick("((a,((b)#H1,c)),(#H1,d));")
    ch = find_cherry(left)
    assert match_reticulation_parent_case(left, right, ch) == NoMatch(Mismatch.NOT_RETICULATED_CHERRY)
    assert not decide(left, right).equivalent


# tree parent case


def test_tree_parent_variant_b_matches():
    left, _ = named(LEFT)
    right, ids = named(RIGHT_B)
    ch = the_reticulated_cherry(left)
    m = match_tree_parent_case(left, right, ch)
    assert isinstance(m, TreeParentMatch) and m.variant == "B" and m.a_below == 1
    assert (m.u1, m.u2, m.v1, m.v2) == (ids["u1"], ids["u2"], ids["v1"], ids["v2"])
    reduced_left, reduced_right = recurse_step(left, right, ch, m)
    # right side loses two arcs in one step
    assert len(right.reticulations) - len(reduced_right.reticulations) == 2
    assert enumerate_display_set(reduced_left) == enumerate_display_set(reduced_right)
    assert decide(left, right).equivalent


def test_tree_parent_variant_a_matches():
    left, _ = named(LEFT)
    right, _ = named([("rho", "u1"), ("rho", "y"), ("u1", "qq"), ("u1", "v1"), ("qq", "pbb"),
                      ("qq", "z"), ("pbb", "b"), ("pbb", "v1"), ("v1", "a")])
    ch = the_reticulated_cherry(left)
    m = match_tree_parent_case(left, right, ch)
    assert isinstance(m, TreeParentMatch) and m.variant == "A"
    assert decide(left, right).equivalent


def test_tree_parent_u2_not_shortcut():
    left, _ = named(LEFT)
    right, _ = named([("rho", "u1"), ("rho", "u2"), ("u1", "qq"), ("u1", "v1"), ("qq", "pbb"),
                      ("qq", "v2"), ("pbb", "b"), ("pbb", "v1"), ("v1", "a"), ("u2", "v2"),
                      ("u2", "y"), ("v2", "z")])
    assert is_tree_child(right)
    ch = the_reticulated_cherry(left)
    assert match_tree_parent_case(left, right, ch) == NoMatch(Mismatch.U2_NOT_SHORTCUT)
    assert not decide(left, right).equivalent


def test_tree_parent_u2_not_parent_of_u1():
    left, _ = named([("rho", "k"), ("rho", "y"), ("k", "t"), ("k", "w"), ("t", "pa"), ("t", "q"),
                     ("pa", "a"), ("pa", "pb"), ("q", "pb"), ("q", "z"), ("pb", "b")])
    right, _ = named([("rho", "u2"), ("rho", "y"), ("u2", "m"), ("u2", "v2"), ("m", "u1"), ("m", "w"),
                      ("u1", "qq"), ("u1", "v1"), ("qq", "pbb"), ("qq", "v2"), ("pbb", "b"),
                      ("pbb", "v1"), ("v1", "a"), ("v2", "z")])
    assert is_tree_child(right)
    ch = the_reticulated_cherry(left)
    assert match_tree_parent_case(left, right, ch) == NoMatch(Mismatch.U2_NOT_PARENT_OF_U1)
    assert not decide(left, right).equivalent


def test_tree_parent_no_common_parent():
    left = parse_enewick("((x1,(x4)#H1),(x2,(x3,#H1)));")
    right = parse_enewick("((x1,x4),(x2,x3));")
    d = decide(left, right)
    assert d.trace[-1].match == NoMatch(Mismatch.NO_COMMON_PARENT)


def test_tree_parent_q_not_tree_vertex():
    left = parse_enewick("(((x1)#H1,x2),(#H1,x3));")
    right = parse_enewick("((x1,(x2)#H1),(#H1,x3));")
    d = decide(left, right)
    assert d.trace[-1].match == NoMatch(Mismatch.Q_NOT_TREE_VERTEX)


def test_tree_parent_u1_not_shortcut():
    left = parse_enewick("(x1,((x2,(x3)#H1),(#H1,x4)));")
    right = parse_enewick("(x1,(((x2)#H1,x4),(#H1,x3)));")
    d = decide(left, right)
    assert d.trace[-1].match == NoMatch(Mismatch.U1_NOT_SHORTCUT)


def test_tree_parent_visibility_pair():
    left = parse_enewick("(((a0,(b0)#H1),(#H1,x1)),x2);")
    right = parse_enewick("((#H1,(((a0)#H1,b0),x2)),x1);")
    d = decide(left, right)
    assert d.trace[-1].match == NoMatch(Mismatch.VISIBILITY_PAIR)


# trace


def test_trace_records(net_a):
    d = same_display_set(net_a, net_a)
    rec = d.trace[0]
    assert rec.i == 0 and rec.sizes == (len(net_a), len(net_a))
    assert "reticulated cherry {a,b}" in rec.describe()
    payload = json.loads(json.dumps(rec.to_dict()))
    assert payload["case"] == Case.RETICULATION_PARENT.value
    assert payload["match"]["type"] == "RetCherryMatch"


def test_match_step_dispatch(net_a):
    ch = find_cherry(net_a)
    case, m = match_step(net_a, net_a, ch)
    assert case is Case.RETICULATION_PARENT and isinstance(m, RetCherryMatch)


# properties


def _random_pair(seed):
    rng = random.Random(seed)
    left = small_normal(seed)
    kind = seed % 3
    if kind == 0:
        right = small_tree_child(seed + 1)
    elif kind == 1:
        a, b = rng.sample(sorted(left.leaf_labels), 2) if left.n_leaves > 1 else ("x1", "x1")
        right = swap_labels(left, a, b)
    else:
        base = small_normal(seed, 6, 2)
        left, right = tree_parent_template_pair(base, rng, variant=rng.choice("AB"), a_below=rng.choice((1, 2)))
    return left, right


@PROPERTY_SETTINGS
@given(seeds)
def test_agrees_with_oracle(seed):
    left, right = _random_pair(seed)
    if left.leaf_labels != right.leaf_labels:
        return
    decide(left, right)


@PROPERTY_SETTINGS
@given(seeds)
def test_each_step_preserves_the_question(seed):
    left, right = _random_pair(seed)
    if left.leaf_labels != right.leaf_labels:
        return
    expected = display_sets_equal_bruteforce(left, right)
    n, n2 = left, remove_trivial_shortcuts(right)
    assert display_sets_equal_bruteforce(n, n2) == expected
    while n.n_leaves > 2:
        ch = find_cherry(n)
        _, m = match_step(n, n2, ch)
        if isinstance(m, NoMatch):
            assert not expected
            return
        smaller, smaller2 = recurse_step(n, n2, ch, m)
        assert len(smaller) + len(smaller2) < len(n) + len(n2)
        assert validate(smaller).ok and validate(smaller2).ok
        assert is_normal(smaller) and is_tree_child(smaller2)
        assert display_sets_equal_bruteforce(smaller, smaller2) == expected
        n, n2 = smaller, smaller2
    assert expected


@PROPERTY_SETTINGS
@given(seeds, st.integers(0, 2**16))
def test_cherry_order_does_not_matter(seed, pick):
    left, right = _random_pair(seed)
    if left.leaf_labels != right.leaf_labels:
        return
    fixed = same_display_set(left, right).equivalent
    assert same_display_set(left, right, rng=random.Random(pick)).equivalent == fixed


def test_template_pairs_are_equivalent():
    for seed in range(40):
        rng = random.Random(seed)
        base = small_normal(seed, 6, 2)
        for variant in "AB":
            for a_below in (1, 2):
                left, right = tree_parent_template_pair(base, rng, variant=variant, a_below=a_below)
                d = decide(left, right)
                assert d.equivalent, serialize_enewick(right)
                first = d.trace[0] if d.trace else None
                if first is not None and first.case is Case.TREE_PARENT:
                    assert first.match.variant == variant
