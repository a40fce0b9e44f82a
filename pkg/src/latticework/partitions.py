"""Equivalence relations on {0..n-1} and the partition lattice Eq(n).

Joins are taken by transitive closure of the union (implemented with a
union-find over the blocks), meets by pairwise block intersection.
"""

from __future__ import annotations

from .errors import GuardError, InputFormatError
from .order import FiniteLattice, FinitePoset, LabeledLattice

FULL_EQ_MAX_N = 6


def _find(parent, x):
    root = x
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        parent[x], x = root, parent[x]
    return root


class EqRelation:
    """An equivalence relation on {0..n-1}, kept as a canonical partition.

    Blocks are sorted by least element and sorted internally, which makes the
    representation unique per partition, hence hashable and comparable.
    """

    __slots__ = ("n", "blocks", "_block_of")

    def __init__(self, n, blocks):
        seen = [False] * n
        canon = []
        for block in blocks:
            block = sorted(set(block))
            if not block:
                continue
            for x in block:
                if not (0 <= x < n):
                    raise ValueError(f"element {x} out of range for carrier {n}")
                if seen[x]:
                    raise ValueError(f"element {x} appears in two blocks")
                seen[x] = True
            canon.append(tuple(block))
        if not all(seen):
            raise ValueError("blocks do not cover the carrier")
        canon.sort(key=lambda b: b[0])
        block_of = [0] * n
        for i, block in enumerate(canon):
            for x in block:
                block_of[x] = i
        self.n = n
        self.blocks = tuple(canon)
        self._block_of = tuple(block_of)

    @classmethod
    def identity(cls, n):
        return cls(n, [[x] for x in range(n)])

    @classmethod
    def all_pairs(cls, n):
        return cls(n, [range(n)])

    @classmethod
    def from_pairs(cls, n, pairs):
        """Smallest equivalence relation containing the given pairs."""
        parent = list(range(n))
        for a, b in pairs:
            ra, rb = _find(parent, a), _find(parent, b)
            if ra != rb:
                parent[rb] = ra
        classes = {}
        for x in range(n):
            classes.setdefault(_find(parent, x), []).append(x)
        return cls(n, classes.values())

    @classmethod
    def from_json(cls, obj):
        """Read {"n": 4, "blocks": [[0, 1], [2], [3]]}."""
        if not isinstance(obj, dict) or "n" not in obj or "blocks" not in obj:
            raise InputFormatError('equivalence JSON needs "n" and "blocks"')
        try:
            return cls(int(obj["n"]), [[int(x) for x in b] for b in obj["blocks"]])
        except (TypeError, ValueError) as exc:
            raise InputFormatError(f"bad equivalence JSON: {exc}") from None

    def to_json(self):
        return {"n": self.n, "blocks": [list(b) for b in self.blocks]}

    def relates(self, a, b):
        return self._block_of[a] == self._block_of[b]

    def block_of(self, a):
        return self.blocks[self._block_of[a]]

    def refines(self, other):
        """self <= other in Eq(n): every block of self sits inside a block of other."""
        if self.n != other.n:
            raise ValueError("carrier sizes differ")
        for block in self.blocks:
            target = other._block_of[block[0]]
            if any(other._block_of[x] != target for x in block):
                return False
        return True

    def related_pairs(self):
        """All related pairs (a, b) with a < b."""
        for block in self.blocks:
            for i, a in enumerate(block):
                for b in block[i + 1 :]:
                    yield (a, b)

    def meet(self, other):
        return eq_meet(self, other)

    def join(self, other):
        return eq_join(self, other)

    __and__ = meet
    __or__ = join

    def __eq__(self, other):
        return (
            isinstance(other, EqRelation)
            and self.n == other.n
            and self.blocks == other.blocks
        )

    def __hash__(self):
        return hash((self.n, self.blocks))

    def __str__(self):
        return "|".join(" ".join(map(str, b)) for b in self.blocks)

    def __repr__(self):
        return f"EqRelation({self.n}, {list(map(list, self.blocks))})"


def eq_meet(e1, e2):
    """Intersection: blocks are the nonempty pairwise block intersections."""
    if e1.n != e2.n:
        raise ValueError("carrier sizes differ")
    pieces = {}
    for x in range(e1.n):
        pieces.setdefault((e1._block_of[x], e2._block_of[x]), []).append(x)
    return EqRelation(e1.n, pieces.values())


def eq_join(e1, e2):
    """Smallest equivalence relation containing both, by transitive closure.

    Union-find over the blocks: elements sharing a block in either argument
    end up in one class.
    """
    if e1.n != e2.n:
        raise ValueError("carrier sizes differ")
    parent = list(range(e1.n))
    for block in e1.blocks + e2.blocks:
        ra = _find(parent, block[0])
        for x in block[1:]:
            rx = _find(parent, x)
            if rx != ra:
                parent[rx] = ra
    classes = {}
    for x in range(e1.n):
        classes.setdefault(_find(parent, x), []).append(x)
    return EqRelation(e1.n, classes.values())


def all_partitions(n):
    """Yield every EqRelation on {0..n-1} in a fixed deterministic order."""
    if n == 0:
        yield EqRelation(0, [])
        return
    blocks = []

    def rec(i):
        if i == n:
            yield EqRelation(n, [list(b) for b in blocks])
            return
        for b in blocks:
            b.append(i)
            yield from rec(i + 1)
            b.pop()
        blocks.append([i])
        yield from rec(i + 1)
        blocks.pop()

    yield from rec(0)


def full_eq_lattice(n):
    """The lattice of all partitions of {0..n-1}, ordered by refinement.

    Guarded at n <= 6: the carrier has Bell(n) elements.
    """
    if n < 1:
        raise ValueError("carrier must have at least one element")
    if n > FULL_EQ_MAX_N:
        raise GuardError(f"n={n} exceeds the partition-enumeration guard {FULL_EQ_MAX_N}")
    labels = sorted(all_partitions(n), key=lambda e: e.blocks)
    index = {e: i for i, e in enumerate(labels)}
    pairs = []
    for i, e in enumerate(labels):
        for j, f in enumerate(labels):
            if i != j and e.refines(f):
                pairs.append((i, j))
    poset = FinitePoset(len(labels), pairs)
    return LabeledLattice(FiniteLattice(poset), tuple(labels))


def is_complete_sublattice(family, n=None):
    """Is the family a complete sublattice of Eq(n)?

    Requires the identity relation (the empty sup), the all-pairs relation
    (the empty inf), and closure under binary join and meet; for a finite
    family that saturation makes sups and infs inside the family agree with
    those of Eq(n).  Returns (True, None) or (False, witness) where witness
    is ("missing-identity",), ("missing-all-pairs",) or (op, e1, e2, result).
    """
    family = list(family)
    if n is None:
        if not family:
            raise ValueError("cannot infer carrier size from an empty family")
        n = family[0].n
    if any(e.n != n for e in family):
        raise ValueError("carrier sizes differ within the family")
    if len(set(family)) != len(family):
        raise ValueError("family elements must be distinct")
    members = set(family)
    for i, e1 in enumerate(family):
        for e2 in family[i + 1 :]:
            j = eq_join(e1, e2)
            if j not in members:
                return False, ("join", e1, e2, j)
            m = eq_meet(e1, e2)
            if m not in members:
                return False, ("meet", e1, e2, m)
    if EqRelation.identity(n) not in members:
        return False, ("missing-identity",)
    if EqRelation.all_pairs(n) not in members:
        return False, ("missing-all-pairs",)
    return True, None
