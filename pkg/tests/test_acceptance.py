"""Acceptance suite: one test per criterion, each printing a pass line.

Run with `pytest tests/test_acceptance.py -s` to see the per-criterion lines.
"""

import json
import math
import random
import time

import pytest

from latticework import (
    DoubleTreeElement,
    EqRelation,
    FiniteTree,
    all_partitions,
    bf_compact_elements,
    chain_facts,
    congruence_lattice,
    congruences_by_closure,
    congruences_by_filter,
    designated_index,
    dt_join,
    dt_leq,
    dt_meet,
    dt_star,
    eq_join,
    eq_meet,
    full_eq_lattice,
    is_complete_sublattice,
    is_well_founded,
    minimal_generating_pairs,
    principal_congruence,
    reduction_verdicts,
)
from latticework.cli import main
from latticework.verify import (
    check_double_tree,
    check_sum,
    check_tna,
    iter_prefix_closed,
    random_algebra,
    random_finite_tree,
    random_regular_tree,
)

SECOND_TREE = FiniteTree(2, [(), (0,)])


@pytest.fixture(scope="module")
def sweep_trees():
    trees = list(iter_prefix_closed(7, bound=2))
    assert len(trees) == sum(math.comb(2 * m, m) // (m + 1) for m in range(1, 8))
    rng = random.Random(2026)
    trees += [random_finite_tree(rng, 12, rng.choice([2, 3])) for _ in range(200)]
    return trees


@pytest.fixture(scope="module")
def algebra_pool():
    rng = random.Random(2026)
    return [random_algebra(rng, max_carrier=4, max_ops=2, max_arity=2) for _ in range(500)]


def _passed(n, text):
    print(f"criterion {n}: PASS - {text}")


def test_criterion_1_closed_forms_match_materialized_oracle(sweep_trees):
    start = time.monotonic()
    for tree in sweep_trees:
        check_double_tree(tree)
        check_tna(tree)
        check_sum([tree])
        check_sum([tree, SECOND_TREE])
    elapsed = time.monotonic() - start
    assert elapsed < 60.0, f"sweep took {elapsed:.1f}s"
    _passed(1, f"{len(sweep_trees)} trees, all element pairs exact, {elapsed:.1f}s")


def _prefix(a, b):
    return len(a) <= len(b) and b[: len(a)] == a


def test_criterion_2_double_tree_formulas_verbatim(sweep_trees):
    pairs = 0
    for tree in sweep_trees:
        nodes = sorted(tree.nodes, key=lambda n: (len(n), n))
        for s in nodes:
            for t in nodes:
                lcp = s[: next(
                    (i for i in range(min(len(s), len(t))) if s[i] != t[i]),
                    min(len(s), len(t)),
                )]
                assert dt_meet(tree, DoubleTreeElement(s), DoubleTreeElement(t)) == \
                    DoubleTreeElement(lcp)
                if not (_prefix(s, t) or _prefix(t, s)):
                    assert dt_join(tree, DoubleTreeElement(s), DoubleTreeElement(t)) == \
                        DoubleTreeElement(lcp, True)
                # a plain node sits below a starred node iff they are comparable
                assert dt_leq(tree, DoubleTreeElement(s), DoubleTreeElement(t, True)) == \
                    (_prefix(s, t) or _prefix(t, s))
                pairs += 1
    _passed(2, f"meet/join/comparability formulas on {pairs} node pairs")


def test_criterion_3_self_duality(sweep_trees):
    checked = 0
    for tree in sweep_trees:
        elems = [
            DoubleTreeElement(n, s)
            for n in sorted(tree.nodes, key=lambda n: (len(n), n))
            for s in (False, True)
        ]
        for x in elems:
            assert dt_star(dt_star(x)) == x
            for y in elems:
                assert dt_leq(tree, x, y) == dt_leq(tree, dt_star(y), dt_star(x))
                checked += 1
    _passed(3, f"star involution and order reversal on {checked} pairs")


def test_criterion_4_reduction_verdicts():
    start = time.monotonic()
    rng = random.Random(42)
    cyclic = acyclic = 0
    for _ in range(100):
        family = [random_regular_tree(rng, 8, 2) for _ in range(rng.randint(1, 4))]
        rows = reduction_verdicts(family)
        for row in rows:
            assert row.consistent
            assert row.well_founded == is_well_founded(family[row.index])
            if row.well_founded:
                acyclic += 1
            else:
                cyclic += 1
                assert row.witness is not None
                assert row.witness.holds_in(family[row.index], repeats=10)
    elapsed = time.monotonic() - start
    assert elapsed < 10.0, f"verdicts took {elapsed:.1f}s"
    assert cyclic > 0 and acyclic > 0
    _passed(4, f"100 families ({acyclic} well-founded rows, {cyclic} with witnesses), {elapsed:.1f}s")


def test_criterion_5_congruence_engine(algebra_pool):
    start = time.monotonic()
    for alg in algebra_pool:
        filtered = congruences_by_filter(alg)
        closed = congruences_by_closure(alg)
        assert filtered == closed
        ok, witness = is_complete_sublattice(filtered, alg.n)
        assert ok, (alg.to_json(), witness)
        for a in range(alg.n):
            for b in range(a + 1, alg.n):
                containing = [e for e in filtered if e.relates(a, b)]
                minimum = containing[0]
                for e in containing[1:]:
                    minimum = eq_meet(minimum, e)
                assert principal_congruence(alg, a, b) == minimum
    elapsed = time.monotonic() - start
    assert elapsed < 120.0, f"engine checks took {elapsed:.1f}s"
    _passed(5, f"{len(algebra_pool)} algebras: methods agree, complete sublattice, "
               f"principal minimum, {elapsed:.1f}s")


def test_criterion_6_compact_iff_finitely_generated(algebra_pool):
    fg_checks = 0
    seen = set()
    for alg in algebra_pool:
        con = congruence_lattice(alg)
        for eq in con.congruences:
            pairs = minimal_generating_pairs(alg, eq)
            joined = EqRelation.identity(alg.n)
            for a, b in pairs:
                joined = eq_join(joined, principal_congruence(alg, a, b))
            assert joined == eq
            fg_checks += 1
        key = tuple(e.blocks for e in con.congruences)
        if key not in seen:
            seen.add(key)
            assert bf_compact_elements(con.lattice) == frozenset(range(con.size))
    _passed(6, f"{fg_checks} generating sets recover their congruence; "
               f"{len(seen)} distinct lattices fully compact under the subset sweep")


def test_criterion_7_partition_lattice():
    start = time.monotonic()
    for n, bell in [(1, 1), (2, 2), (3, 5), (4, 15), (5, 52)]:
        assert full_eq_lattice(n).size == bell
    universe = list(all_partitions(4))
    pairset = lambda e: frozenset(e.related_pairs())
    for n in (1, 2, 3, 4):
        for e1 in all_partitions(n):
            for e2 in all_partitions(n):
                j = eq_join(e1, e2)
                assert pairset(e1) <= pairset(j) and pairset(e2) <= pairset(j)
                for u in all_partitions(n):
                    if pairset(e1) | pairset(e2) <= pairset(u):
                        assert pairset(j) <= pairset(u)
    elapsed = time.monotonic() - start
    assert elapsed < 30.0, f"partition checks took {elapsed:.1f}s"
    _passed(7, f"Bell sizes 1,2,5,15,52 and joins are least upper bounds, {elapsed:.1f}s")


def test_criterion_8_symbolic_chain_facts():
    facts = chain_facts()
    assert facts["omega_chain_complete"] is True
    assert facts["compact_a"] is False
    assert facts["compact_omega"] is False
    assert facts["omega_chain_algebraic"] is True
    assert facts["augmented_chain_compactly_generated"] is False
    assert facts["compact_naturals"] is True
    _passed(8, "all six decided chain facts")


def test_criterion_9_designated_indexing():
    for n in range(1001):
        assert designated_index(n) == 2 * n
    _passed(9, "designated ids are 2n for n <= 1000")


def test_criterion_10_cli_contract(tmp_path):
    write = lambda name, obj: (
        (tmp_path / name).write_text(json.dumps(obj)),
        str(tmp_path / name),
    )[1]
    tree = write("tree.json", {"bound": 2, "nodes": ["", "0", "1"]})
    cyclic = write(
        "cyclic.json",
        {"bound": 2, "root": "q0", "edges": [["q0", 0, "q1"], ["q1", 0, "q1"]]},
    )
    alg = write("alg.json", {"n": 3, "ops": [{"arity": 1, "table": [1, 2, 2]}]})
    poset = write("poset.json", {"size": 3, "leq": [[0, 1], [1, 2], [0, 2]]})
    bad = tmp_path / "bad.json"
    bad.write_text("{oops")

    matrix = [
        (["build", "--input", tree, "--construction", "Ln"], 0),
        (["build", "--input", cyclic, "--construction", "Ln"], 2),
        (["build", "--input", cyclic, "--construction", "Ln", "--symbolic"], 0),
        (["decide", "--input", tree, "--construction", "Ln", "--property", "complete"], 0),
        (["decide", "--input", cyclic, "--construction", "Ln", "--property", "complete"], 1),
        (["decide", "--input", cyclic, "--construction", "SumL",
          "--property", "compact-a"], 1),
        (["decide", "--input", tree, "--construction", "TnA", "--property", "algebraic"], 0),
        (["decide", "--input", tree, "--construction", "Ln", "--property", "compact-a"], 3),
        (["decide", "--input", str(bad), "--construction", "Ln", "--property", "complete"], 2),
        (["decide", "--construction", "Ln", "--property", "complete"], 3),
        (["con", "--input", alg], 0),
        (["con", "--input", poset], 2),
        (["compact", "--input", alg], 0),
        (["check-poset", "--input", poset], 0),
        (["verify", "--sizes", "3"], 0),
        (["verify", "--sizes", "0"], 0),
        (["verify", "--sizes", "3", "--mutate", "dt_join"], 4),
        (["verify", "--mutate", "bogus"], 3),
        (["export", "--input", poset], 0),
        (["export", "--input", str(bad)], 2),
    ]
    for argv, expected in matrix:
        assert main(argv) == expected, argv
    _passed(10, f"{len(matrix)} invocations hit their exit codes; fault injection caught")
