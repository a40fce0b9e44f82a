import random

import pytest

from latticework import (
    FiniteTree,
    GuardError,
    InputFormatError,
    PathWitness,
    RegularTree,
    all_members,
    format_node_string,
    has_infinite_path,
    is_well_founded,
    pad,
    parse_node_string,
    tree_from_json,
    truncate,
)
from latticework.verify import random_finite_tree, random_regular_tree

LOOP = RegularTree(1, "q0", [("q0", 0, "q0")])
CHAIN3 = RegularTree(2, "q0", [("q0", 0, "q1"), ("q1", 1, "q2")])


def test_node_string_round_trip():
    assert parse_node_string("01[12]3") == (0, 1, 12, 3)
    assert format_node_string((0, 1, 12, 3)) == "01[12]3"
    assert parse_node_string("") == ()
    with pytest.raises(InputFormatError):
        parse_node_string("0x")
    with pytest.raises(InputFormatError):
        parse_node_string("[12")


def test_finite_tree_validation():
    with pytest.raises(InputFormatError, match="prefix-closed"):
        FiniteTree(2, [(), (0, 1)])
    with pytest.raises(InputFormatError, match="bound"):
        FiniteTree(2, [(), (5,)])
    # the empty node set still denotes the one-node tree at the root
    assert len(FiniteTree(2, [])) == 1


def test_pad_empty_tree():
    t = FiniteTree(3, [()])
    assert pad(t).nodes == {(), (0,), (1,), (2,)}


def test_pad_idempotent():
    t = FiniteTree(2, [(), (0,), (0, 0)])
    assert pad(pad(t)) == pad(t)
    rt = pad(LOOP)
    assert pad(rt).edges == rt.edges


def test_pad_regular_preserves_infinite_paths():
    for rt in (LOOP, CHAIN3):
        assert is_well_founded(pad(rt)) == is_well_founded(rt)
    padded = pad(CHAIN3)
    assert padded.member((1,)) and not CHAIN3.member((1,))


def test_pad_adds_exactly_level_one():
    rng = random.Random(0)
    for _ in range(20):
        t = random_finite_tree(rng, 8, 3)
        p = pad(t)
        assert p.nodes == t.nodes | {(i,) for i in range(t.bound)}


def test_member_root_always():
    assert FiniteTree(2, [()]).member(())
    assert LOOP.member(())


def test_member_prefix_closure_random():
    rng = random.Random(1)
    for _ in range(20):
        t = random_finite_tree(rng, 10, 2)
        for node in t.nodes:
            for k in range(len(node) + 1):
                assert t.member(node[:k])


def test_children_on_self_loop():
    node = ()
    for _ in range(5):
        assert LOOP.children(node) == {0}
        node = node + (0,)


def test_children_finite():
    t = FiniteTree(2, [(), (0,), (1,), (0, 1)])
    assert t.children(()) == {0, 1}
    assert t.children((0,)) == {1}
    assert t.children((0, 1)) == frozenset()
    assert t.children((1, 1)) == frozenset()


def test_has_infinite_path_self_loop():
    w = has_infinite_path(LOOP)
    assert w == PathWitness((), (0,))
    assert w.holds_in(LOOP, repeats=10)


def test_has_infinite_path_acyclic_chain():
    assert has_infinite_path(CHAIN3) is None
    assert is_well_founded(CHAIN3)


def test_unreachable_cycle_is_ignored():
    rt = RegularTree(2, "q0", [("q0", 0, "q1"), ("q2", 1, "q2")])
    assert has_infinite_path(rt) is None


def test_deeper_cycle_witness_validates():
    rt = RegularTree(2, "q0", [("q0", 1, "q1"), ("q1", 0, "q2"), ("q2", 1, "q1")])
    w = has_infinite_path(rt)
    assert w is not None and w.holds_in(rt, repeats=10)
    assert w.stem == (1,) and w.loop == (0, 1)


def test_finite_tree_never_has_infinite_path():
    rng = random.Random(2)
    for _ in range(10):
        assert has_infinite_path(random_finite_tree(rng, 12, 2)) is None


def test_witness_requires_nonempty_loop():
    with pytest.raises(ValueError):
        PathWitness((0,), ())


def test_truncate_examples():
    assert truncate(LOOP, 2).nodes == {(), (0,), (0, 0)}
    assert truncate(LOOP, 0).nodes == {()}
    t = FiniteTree(2, [(), (0,), (0, 0)])
    assert truncate(t, 5) == t
    with pytest.raises(ValueError):
        truncate(t, -1)


def test_truncate_membership_equivalence():
    rng = random.Random(3)
    for _ in range(15):
        t = random_regular_tree(rng, 6, 2)
        d = rng.randint(0, 6)
        cut = truncate(t, d)
        probes = {tuple(rng.choices(range(2), k=rng.randint(0, 7))) for _ in range(30)}
        probes |= cut.nodes
        for node in probes:
            assert cut.member(node) == (t.member(node) and len(node) <= d)


def test_truncate_guard():
    big = RegularTree(2, "q0", [("q0", 0, "q0"), ("q0", 1, "q0")])
    with pytest.raises(GuardError):
        truncate(big, 30, max_nodes=1000)


def test_well_founded_iff_finite_member_set():
    rng = random.Random(4)
    seen_cyclic = seen_acyclic = 0
    for _ in range(60):
        t = random_regular_tree(rng, 6, 2)
        if is_well_founded(t):
            seen_acyclic += 1
            members = all_members(t)
            assert all(len(m) <= 6 for m in members)  # acyclic walks cannot repeat states
        else:
            seen_cyclic += 1
            with pytest.raises(GuardError):
                all_members(t)
    assert seen_cyclic and seen_acyclic


def test_regular_tree_determinism_enforced():
    with pytest.raises(InputFormatError, match="nondeterministic"):
        RegularTree(2, "q0", [("q0", 0, "q1"), ("q0", 0, "q2")])


def test_regular_tree_label_bound_enforced():
    with pytest.raises(InputFormatError, match="bound"):
        RegularTree(1, "q0", [("q0", 3, "q0")])


def test_tree_json_round_trips():
    t = FiniteTree(2, [(), (0,), (0, 1)])
    assert tree_from_json(t.to_json()) == t
    rt = RegularTree(2, "q0", [("q0", 0, "q1"), ("q1", 1, "q1")])
    assert tree_from_json(rt.to_json()) == rt
    with pytest.raises(InputFormatError):
        tree_from_json({"bound": 2})


def test_pad_fresh_state_names_avoid_collisions():
    rt = RegularTree(2, "q0", [("q0", 0, "pad1")])
    padded = pad(rt)
    assert padded.member((1,))
    assert len(padded.states) == 3
