"""Randomized and exhaustive cross-check suites behind the verify command.

Each suite compares a closed-form route against an independent one: the
construction formulas against materialized transitive-closure lattices, the
partition join against an upper-bound scan, the two congruence-lattice
methods against each other, and the principal-congruence closure against the
brute-force minimum.  A mutation hook swaps in deliberately broken operations
so the suites themselves can be shown to catch faults.
"""

from __future__ import annotations

import itertools
import json
import random
from contextlib import contextmanager

from . import algebras as A
from . import constructions as C
from . import partitions as P
from . import trees as T
from .errors import WorkbenchError
from .partitions import EqRelation

SMALL_SECOND_TREE_NODES = ((), (0,))


# ---------------------------------------------------------------------------
# Instance generators (shared with the test suite).


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


def iter_prefix_closed(max_nodes, bound=2):
    """Every prefix-closed node set with at most max_nodes nodes, smallest first."""
    memo = {}

    def exact(m):
        if m not in memo:
            if m == 1:
                memo[m] = [((),)]
            else:
                out = []
                for split in _compositions(m - 1, bound):
                    child_choices = [
                        [None] if c == 0 else exact(c) for c in split
                    ]
                    for choice in itertools.product(*child_choices):
                        nodes = [()]
                        for label, sub in enumerate(choice):
                            if sub is not None:
                                nodes.extend((label,) + x for x in sub)
                        out.append(tuple(nodes))
                memo[m] = out
        return memo[m]

    for m in range(1, max_nodes + 1):
        for nodes in exact(m):
            yield T.FiniteTree(bound, nodes)


def random_finite_tree(rng, max_nodes=10, bound=2):
    """Grow a random prefix-closed tree by repeatedly extending random nodes."""
    target = rng.randint(1, max_nodes)
    nodes = {()}
    while len(nodes) < target:
        base = rng.choice(sorted(nodes, key=lambda n: (len(n), n)))
        nodes.add(base + (rng.randrange(bound),))
    return T.FiniteTree(bound, nodes)


def random_regular_tree(rng, max_states=8, bound=2):
    """A random deterministic presentation; roughly half are forced acyclic."""
    n_states = rng.randint(1, max_states)
    acyclic = rng.random() < 0.5
    edges = []
    for s in range(n_states):
        for label in range(bound):
            if rng.random() >= 0.6:
                continue
            if acyclic:
                if s + 1 >= n_states:
                    continue
                target = rng.randrange(s + 1, n_states)
            else:
                target = rng.randrange(n_states)
            edges.append((f"q{s}", label, f"q{target}"))
    return T.RegularTree(bound, "q0", edges)


def random_algebra(rng, max_carrier=4, max_ops=2, max_arity=2):
    n = rng.randint(1, max_carrier)
    ops = []
    for _ in range(rng.randint(0, max_ops)):
        arity = rng.randint(1, max_arity)
        ops.append((arity, [rng.randrange(n) for _ in range(n ** arity)]))
    return A.FiniteAlgebra(n, ops)


# ---------------------------------------------------------------------------
# Deliberately broken operations for fault injection.


def _mut_dt_leq(tree, x, y):
    # kills the mixed-copy comparability rule
    if not x.starred and not y.starred:
        return C._is_prefix(x.node, y.node)
    if x.starred and y.starred:
        return C._is_prefix(y.node, x.node)
    return False


def _mut_dt_meet(tree, x, y):
    if C.dt_leq(tree, x, y):
        return x
    if C.dt_leq(tree, y, x):
        return y
    return x  # forgets the common prefix


def _mut_dt_join(tree, x, y):
    if C.dt_leq(tree, x, y):
        return y
    if C.dt_leq(tree, y, x):
        return x
    return C.DoubleTreeElement(C._common_prefix(x.node, y.node), False)  # drops the star


def _mut_sum_meet(family, x, y):
    if C.sum_leq(family, x, y):
        return x
    if C.sum_leq(family, y, x):
        return y
    return C.SUM_BOTTOM  # same-tree nodes lose their common prefix


def _mut_sum_join(family, x, y):
    if C.sum_leq(family, x, y):
        return y
    if C.sum_leq(family, y, x):
        return x
    return C.SUM_TOP  # same-tree incomparable nodes skip the designated cap


def _mut_tna_meet(tree, x, y):
    if C.tna_leq(tree, x, y):
        return x
    if C.tna_leq(tree, y, x):
        return y
    return C.TNA_ZERO  # nodes lose their common prefix


def _mut_tna_join(tree, x, y):
    if C.tna_leq(tree, x, y):
        return y
    if C.tna_leq(tree, y, x):
        return x
    if x.kind == "node" and y.kind == "node":
        return C.tna_node(C._common_prefix(x.node, y.node))  # not an upper bound
    return C.TNA_ONE


def _mut_eq_join(e1, e2):
    return P.eq_meet(e1, e2)


def _mut_principal_congruence(alg, a, b):
    return EqRelation.from_pairs(alg.n, [(a, b)])  # skips operation propagation


MUTANTS = {
    "dt_leq": [(C, "dt_leq", _mut_dt_leq)],
    "dt_meet": [(C, "dt_meet", _mut_dt_meet)],
    "dt_join": [(C, "dt_join", _mut_dt_join)],
    "sum_meet": [(C, "sum_meet", _mut_sum_meet)],
    "sum_join": [(C, "sum_join", _mut_sum_join)],
    "tna_meet": [(C, "tna_meet", _mut_tna_meet)],
    "tna_join": [(C, "tna_join", _mut_tna_join)],
    "eq_join": [(P, "eq_join", _mut_eq_join), (A, "eq_join", _mut_eq_join)],
    "principal_congruence": [(A, "principal_congruence", _mut_principal_congruence)],
}


@contextmanager
def _patched(targets):
    saved = [(mod, name, getattr(mod, name)) for mod, name, _ in targets]
    try:
        for mod, name, repl in targets:
            setattr(mod, name, repl)
        yield
    finally:
        for mod, name, original in saved:
            setattr(mod, name, original)


# ---------------------------------------------------------------------------
# Suites.


class SuiteFailure(Exception):
    def __init__(self, message, repro):
        super().__init__(message)
        self.repro = repro


def _check_against_oracle(kind, family_or_tree, elements, closed, oracle):
    """Compare closed-form leq/meet/join against a materialized lattice."""
    leq, meet, join = closed
    labels = oracle.labels
    index = {x: i for i, x in enumerate(labels)}
    lat = oracle.lattice
    for x in elements:
        for y in elements:
            i, j = index[x], index[y]
            if leq(family_or_tree, x, y) != lat.leq(i, j):
                raise SuiteFailure(
                    f"{kind} order mismatch at ({x}, {y})",
                    {"kind": kind, "x": str(x), "y": str(y)},
                )
            if index[meet(family_or_tree, x, y)] != lat.meet(i, j):
                raise SuiteFailure(
                    f"{kind} meet mismatch at ({x}, {y})",
                    {"kind": kind, "x": str(x), "y": str(y)},
                )
            if index[join(family_or_tree, x, y)] != lat.join(i, j):
                raise SuiteFailure(
                    f"{kind} join mismatch at ({x}, {y})",
                    {"kind": kind, "x": str(x), "y": str(y)},
                )


def check_double_tree(tree):
    oracle = C.materialize_double_tree(tree)
    _check_against_oracle(
        "double-tree", tree, oracle.labels, (C.dt_leq, C.dt_meet, C.dt_join), oracle
    )
    for x in oracle.labels:
        for y in oracle.labels:
            if C.dt_leq(tree, x, y) != C.dt_leq(tree, C.dt_star(y), C.dt_star(x)):
                raise SuiteFailure(
                    f"star duality broken at ({x}, {y})",
                    {"kind": "double-tree-star", "x": str(x), "y": str(y)},
                )


def check_tna(tree):
    oracle = C.materialize_tna(tree)
    _check_against_oracle(
        "capped-tree", tree, oracle.labels, (C.tna_leq, C.tna_meet, C.tna_join), oracle
    )


def check_sum(trees):
    oracle = C.materialize_sum(trees)
    _check_against_oracle(
        "tree-sum", trees, oracle.labels, (C.sum_leq, C.sum_meet, C.sum_join), oracle
    )


def _suite_closed_forms(rng, sizes):
    trees = list(iter_prefix_closed(5, bound=2))
    trees += [random_finite_tree(rng, 10, rng.choice([2, 3])) for _ in range(sizes)]
    second = T.FiniteTree(2, SMALL_SECOND_TREE_NODES)
    count = 0
    for tree in trees:
        try:
            check_double_tree(tree)
            check_tna(tree)
            check_sum([tree])
            check_sum([tree, second])
        except SuiteFailure as exc:
            exc.repro["tree"] = json.dumps(tree.to_json())
            raise
        count += 1
    return f"{count} trees, four constructions each"


def _pairset(eq):
    return frozenset(eq.related_pairs())


def _suite_partition_join(rng, sizes):
    carriers = [sorted(P.all_partitions(3), key=lambda e: e.blocks)]
    checks = 0
    for universe in carriers:
        for e1 in universe:
            for e2 in universe:
                _check_join_is_lub(universe, e1, e2)
                checks += 1
    universe4 = sorted(P.all_partitions(4), key=lambda e: e.blocks)
    for _ in range(sizes):
        e1, e2 = rng.choice(universe4), rng.choice(universe4)
        _check_join_is_lub(universe4, e1, e2)
        checks += 1
    return f"{checks} join pairs against the upper-bound scan"


def _check_join_is_lub(universe, e1, e2):
    j = P.eq_join(e1, e2)
    jp = _pairset(j)
    if not (_pairset(e1) <= jp and _pairset(e2) <= jp):
        raise SuiteFailure(
            "join does not contain both arguments",
            {"e1": str(e1), "e2": str(e2), "join": str(j)},
        )
    both = _pairset(e1) | _pairset(e2)
    for u in universe:
        up = _pairset(u)
        if both <= up and not jp <= up:
            raise SuiteFailure(
                "join is not least among upper bounds",
                {"e1": str(e1), "e2": str(e2), "join": str(j), "upper": str(u)},
            )


_FIXED_ALGEBRAS = (
    A.FiniteAlgebra(3, []),
    A.FiniteAlgebra(3, [(1, [1, 2, 2])]),
    A.FiniteAlgebra(2, [(1, [1, 0])]),
)


def _algebra_pool(rng, sizes):
    return list(_FIXED_ALGEBRAS) + [random_algebra(rng) for _ in range(sizes)]


def _suite_con_methods(rng, sizes):
    pool = _algebra_pool(rng, sizes)
    for alg in pool:
        filtered = A.congruences_by_filter(alg)
        closed = A.congruences_by_closure(alg)
        if filtered != closed:
            raise SuiteFailure(
                f"congruence methods disagree ({len(filtered)} vs {len(closed)})",
                {"algebra": json.dumps(alg.to_json())},
            )
    return f"{len(pool)} algebras, filter vs closure"


def _suite_con_sublattice(rng, sizes):
    pool = _algebra_pool(rng, sizes)
    for alg in pool:
        congs = A.congruences_by_filter(alg)
        ok, witness = P.is_complete_sublattice(congs, alg.n)
        if not ok:
            raise SuiteFailure(
                f"congruence set is not a complete sublattice: {witness[0]}",
                {"algebra": json.dumps(alg.to_json())},
            )
    return f"{len(pool)} congruence sets checked for sublattice closure"


def _suite_principal_minimal(rng, sizes):
    pool = _algebra_pool(rng, sizes)
    checks = 0
    for alg in pool:
        congs = A.congruences_by_filter(alg)
        for a in range(alg.n):
            for b in range(a + 1, alg.n):
                got = A.principal_congruence(alg, a, b)
                containing = [e for e in congs if e.relates(a, b)]
                expected = containing[0]
                for e in containing[1:]:
                    expected = P.eq_meet(expected, e)
                if got != expected:
                    raise SuiteFailure(
                        f"principal congruence of ({a}, {b}) is {got}, "
                        f"brute-force minimum is {expected}",
                        {"algebra": json.dumps(alg.to_json()), "pair": [a, b]},
                    )
                checks += 1
    return f"{checks} principal congruences against the brute-force minimum"


def _suite_reduction_rows(rng, sizes):
    families = []
    for _ in range(sizes):
        families.append([random_regular_tree(rng) for _ in range(rng.randint(1, 3))])
    for family in families:
        for row in C.reduction_verdicts(family):
            if not row.consistent:
                raise SuiteFailure(
                    f"verdict row {row.index} is not constant",
                    {"trees": [json.dumps(t.to_json()) for t in family]},
                )
            if not row.well_founded:
                if row.witness is None or not row.witness.holds_in(
                    family[row.index], repeats=10
                ):
                    raise SuiteFailure(
                        f"missing or invalid path witness at row {row.index}",
                        {"trees": [json.dumps(t.to_json()) for t in family]},
                    )
    return f"{len(families)} families of presentations"


SUITES = (
    ("closed-forms", _suite_closed_forms),
    ("partition-join", _suite_partition_join),
    ("con-methods", _suite_con_methods),
    ("con-sublattice", _suite_con_sublattice),
    ("principal-minimal", _suite_principal_minimal),
    ("reduction-rows", _suite_reduction_rows),
)


def run_verify(seed=0, sizes=25, mutate=None):
    """Run every cross-check suite; returns (ok, report lines).

    ``sizes`` scales the randomized instance count; 0 skips everything and
    passes vacuously with a warning.  ``mutate`` names a registered fault to
    inject, which the suites are expected to catch.
    """
    if mutate is not None and mutate not in MUTANTS:
        raise ValueError(f"unknown mutation {mutate!r}; known: {sorted(MUTANTS)}")
    if sizes < 0:
        raise ValueError("sizes must be nonnegative")
    if sizes == 0:
        return True, ["warning: sizes=0, all suites skipped (vacuous pass)"]
    lines = []
    targets = MUTANTS[mutate] if mutate else []
    with _patched(targets):
        for name, suite in SUITES:
            rng = random.Random(f"{seed}:{name}")
            try:
                summary = suite(rng, sizes)
            except SuiteFailure as exc:
                lines.append(f"FAIL {name}: {exc}")
                lines.append(f"  seed={seed} sizes={sizes}")
                for key, value in exc.repro.items():
                    lines.append(f"  {key}: {value}")
                return False, lines
            except WorkbenchError as exc:
                lines.append(f"FAIL {name}: {exc}")
                lines.append(f"  seed={seed} sizes={sizes}")
                return False, lines
            lines.append(f"ok {name}: {summary}")
    return True, lines
