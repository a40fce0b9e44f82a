"""Finite algebras, congruences, and congruence lattices.

A congruence is an equivalence relation compatible with every operation,
coordinate by coordinate.  The congruence lattice is computed two ways on
small carriers (filtering all partitions, and closing principal congruences
under join) and the results must coincide.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from .errors import GuardError, InputFormatError, WorkbenchError
from .order import FiniteLattice, FinitePoset, LabeledLattice
from .partitions import EqRelation, all_partitions, eq_join

CON_FILTER_MAX_N = 7


@dataclass(frozen=True)
class Operation:
    """A total operation on {0..n-1}: arity plus a flat mixed-radix table.

    The value at (a_0, .., a_{k-1}) sits at index a_0*n^(k-1) + .. + a_{k-1}.
    """

    arity: int
    table: tuple
    carrier: int

    def __post_init__(self):
        if self.arity < 1:
            raise InputFormatError("arity must be at least 1; model constants as arity-1 constant maps")
        object.__setattr__(self, "table", tuple(self.table))
        if len(self.table) != self.carrier ** self.arity:
            raise InputFormatError(
                f"table has {len(self.table)} entries, expected {self.carrier ** self.arity}"
            )
        for v in self.table:
            if not (0 <= v < self.carrier):
                raise InputFormatError(f"table value {v} outside carrier")

    def apply(self, args):
        idx = 0
        for a in args:
            idx = idx * self.carrier + a
        return self.table[idx]


def _nest(flat, n, arity):
    if arity == 1:
        return list(flat)
    step = len(flat) // n
    return [_nest(flat[i * step : (i + 1) * step], n, arity - 1) for i in range(n)]


def _flatten(nested, n, arity):
    if arity == 1:
        if not isinstance(nested, (list, tuple)) or len(nested) != n:
            raise InputFormatError("operation table rows must have carrier length")
        return [int(v) for v in nested]
    if not isinstance(nested, (list, tuple)) or len(nested) != n:
        raise InputFormatError("operation table nesting must match the arity")
    out = []
    for row in nested:
        out.extend(_flatten(row, n, arity - 1))
    return out


class FiniteAlgebra:
    """A carrier {0..n-1} with finitely many operations given by tables."""

    __slots__ = ("n", "operations")

    def __init__(self, n, operations=()):
        if n < 1:
            raise InputFormatError("carrier must have at least one element")
        ops = []
        for arity, table in operations:
            ops.append(Operation(int(arity), tuple(table), n))
        self.n = n
        self.operations = tuple(ops)

    @classmethod
    def from_json(cls, obj):
        """Read {"n": 3, "ops": [{"arity": 1, "table": [1, 2, 2]}, ...]};
        tables are nested one list level per arity."""
        if not isinstance(obj, dict) or "n" not in obj or "ops" not in obj:
            raise InputFormatError('algebra JSON needs "n" and "ops"')
        try:
            n = int(obj["n"])
        except (TypeError, ValueError):
            raise InputFormatError("bad carrier size") from None
        ops = []
        for op in obj["ops"]:
            if not isinstance(op, dict) or "arity" not in op or "table" not in op:
                raise InputFormatError('each op needs "arity" and "table"')
            arity = int(op["arity"])
            if arity < 1:
                raise InputFormatError("arity must be at least 1")
            ops.append((arity, _flatten(op["table"], n, arity)))
        return cls(n, ops)

    def to_json(self):
        return {
            "n": self.n,
            "ops": [
                {"arity": op.arity, "table": _nest(op.table, self.n, op.arity)}
                for op in self.operations
            ],
        }

    def __repr__(self):
        return f"FiniteAlgebra(n={self.n}, ops={len(self.operations)})"


def is_congruence(alg, eq):
    """Is the relation compatible with every operation?

    Checks one coordinate at a time with the others fixed, which suffices for
    equivalence relations.  Returns (True, None) or (False, witness) with
    witness = (op_index, args, args') differing in one coordinate.
    """
    if alg.n != eq.n:
        raise ValueError("carrier sizes differ")
    n = alg.n
    pairs = [(a, b) for a in range(n) for b in range(n) if a != b and eq.relates(a, b)]
    for op_index, op in enumerate(alg.operations):
        for pos in range(op.arity):
            for env in product(range(n), repeat=op.arity - 1):
                for a, b in pairs:
                    args_a = env[:pos] + (a,) + env[pos:]
                    args_b = env[:pos] + (b,) + env[pos:]
                    if not eq.relates(op.apply(args_a), op.apply(args_b)):
                        return False, (op_index, args_a, args_b)
    return True, None


def principal_congruence(alg, a, b):
    """Least congruence containing (a, b).

    Closure: merge a with b, then repeatedly push merged pairs through every
    operation one coordinate at a time until nothing new merges.  Verified
    against the brute-force minimum (meet of all congruences containing the
    pair) in the test suite.
    """
    n = alg.n
    if not (0 <= a < n and 0 <= b < n):
        raise ValueError(f"pair ({a}, {b}) out of range for carrier {n}")
    parent = list(range(n))

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx == ry:
            return False
        parent[ry] = rx
        return True

    union(a, b)
    changed = True
    while changed:
        changed = False
        merged = [(u, v) for u in range(n) for v in range(u + 1, n) if find(u) == find(v)]
        for op in alg.operations:
            for pos in range(op.arity):
                for env in product(range(n), repeat=op.arity - 1):
                    for u, v in merged:
                        x = op.apply(env[:pos] + (u,) + env[pos:])
                        y = op.apply(env[:pos] + (v,) + env[pos:])
                        if union(x, y):
                            changed = True
    classes = {}
    for x in range(n):
        classes.setdefault(find(x), []).append(x)
    return EqRelation(n, classes.values())


def congruences_by_filter(alg):
    """All congruences by filtering every partition of the carrier."""
    if alg.n > CON_FILTER_MAX_N:
        raise GuardError(
            f"carrier {alg.n} exceeds the partition-enumeration guard {CON_FILTER_MAX_N}"
        )
    return sorted(
        (eq for eq in all_partitions(alg.n) if is_congruence(alg, eq)[0]),
        key=lambda e: e.blocks,
    )


def congruences_by_closure(alg):
    """All congruences by closing the principal ones under join.

    Every congruence is the join of the principal congruences of its pairs,
    and joins of congruences are congruences, so the closure is exactly the
    congruence set.
    """
    n = alg.n
    found = {EqRelation.identity(n)}
    frontier = list(found)
    for a in range(n):
        for b in range(a + 1, n):
            e = principal_congruence(alg, a, b)
            if e not in found:
                found.add(e)
                frontier.append(e)
    while frontier:
        e = frontier.pop()
        for f in list(found):
            j = eq_join(e, f)
            if j not in found:
                found.add(j)
                frontier.append(j)
    return sorted(found, key=lambda e: e.blocks)


@dataclass(frozen=True)
class CongruenceLattice:
    """The congruence lattice of an algebra, with its partition labels."""

    algebra: FiniteAlgebra
    lattice: FiniteLattice
    congruences: tuple

    @property
    def size(self):
        return self.lattice.size

    def index_of(self, eq):
        return self.congruences.index(eq)

    def labeled(self):
        return LabeledLattice(self.lattice, self.congruences)


def congruence_lattice(alg):
    """The lattice of all congruences under refinement.

    On carriers within the enumeration guard the filter and closure methods
    are both run and must coincide; larger carriers use the closure method
    alone.
    """
    congs = congruences_by_closure(alg)
    if alg.n <= CON_FILTER_MAX_N:
        filtered = congruences_by_filter(alg)
        if filtered != congs:
            raise WorkbenchError(
                "congruence methods disagree: "
                f"filter found {len(filtered)}, closure found {len(congs)}"
            )
    index = {e: i for i, e in enumerate(congs)}
    pairs = []
    for i, e in enumerate(congs):
        for j, f in enumerate(congs):
            if i != j and e.refines(f):
                pairs.append((i, j))
    poset = FinitePoset(len(congs), pairs)
    return CongruenceLattice(alg, FiniteLattice(poset), tuple(congs))


def minimal_generating_pairs(alg, eq, max_pairs=None):
    """Smallest pair set whose principal congruences join to the congruence.

    Breadth-first by size over pairs related by the congruence, in canonical
    pair order, so the returned set is a true minimum and deterministic.  The
    identity congruence is the empty join.  Raises GuardError when no set of
    size <= max_pairs works.
    """
    ok, witness = is_congruence(alg, eq)
    if not ok:
        raise ValueError(f"not a congruence; witness {witness}")
    identity = EqRelation.identity(alg.n)
    if eq == identity:
        return ()
    candidates = sorted(eq.related_pairs())
    principal = {p: principal_congruence(alg, *p) for p in candidates}
    limit = len(candidates) if max_pairs is None else min(max_pairs, len(candidates))
    for size in range(1, limit + 1):
        for combo in combinations(candidates, size):
            joined = identity
            for p in combo:
                joined = eq_join(joined, principal[p])
            if joined == eq:
                return combo
    raise GuardError(
        f"no generating set of size <= {limit} found"
        + ("" if max_pairs is None else f" (max_pairs={max_pairs})")
    )


def compact_congruences(con):
    """Indices of congruences that are finitely generated in the lattice.

    On finite algebras every congruence is, and the result must agree with
    the brute-force compact-element sweep of the materialized lattice.
    """
    out = []
    for i, eq in enumerate(con.congruences):
        try:
            minimal_generating_pairs(con.algebra, eq)
        except GuardError:
            continue
        out.append(i)
    return frozenset(out)
