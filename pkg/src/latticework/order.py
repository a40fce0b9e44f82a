"""Finite posets and lattices with brute-force order-theoretic checkers.

Elements are the integers 0..size-1.  The order is stored as one successor
bitmask per element, so order queries and the exhaustive subset sweeps
(completeness, compactness, algebraicity) are plain word operations.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import GuardError, InputFormatError, NotALatticeError, PosetError

DEFAULT_SUBSET_BOUND = 2 ** 16


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def transitive_closure(pairs, size=None):
    """Smallest transitive superset of a binary relation on {0..size-1}.

    ``size`` is inferred from the largest index when omitted.  The closure is
    returned as a frozenset of pairs; reflexive pairs appear only if forced.
    """
    pairs = [(int(a), int(b)) for a, b in pairs]
    if size is None:
        size = 1 + max((max(a, b) for a, b in pairs), default=-1)
    succ = [0] * size
    for a, b in pairs:
        if not (0 <= a < size and 0 <= b < size):
            raise ValueError(f"pair ({a}, {b}) out of range for size {size}")
        succ[a] |= 1 << b
    for k in range(size):
        bit = 1 << k
        for a in range(size):
            if succ[a] & bit:
                succ[a] |= succ[k]
    return frozenset((a, b) for a in range(size) for b in _bits(succ[a]))


class FinitePoset:
    """An explicit partial order on 0..size-1, validated at construction.

    ``up_masks[a]`` has bit b set iff a <= b; ``down_masks`` is the transpose.
    Reflexive pairs need not be listed; they are added.  Antisymmetry or
    transitivity failures raise PosetError naming the broken axiom.
    """

    __slots__ = ("size", "up_masks", "down_masks")

    def __init__(self, size, pairs=()):
        if size < 0:
            raise PosetError("size must be nonnegative")
        up = [1 << a for a in range(size)]
        for a, b in pairs:
            if not (0 <= a < size and 0 <= b < size):
                raise PosetError(f"pair ({a}, {b}) out of range for size {size}")
            up[a] |= 1 << b
        for a in range(size):
            for b in _bits(up[a]):
                if b != a and up[b] >> a & 1:
                    raise PosetError(f"antisymmetry fails: {a} <= {b} and {b} <= {a}")
        for a in range(size):
            for b in _bits(up[a]):
                missing = up[b] & ~up[a]
                if missing:
                    c = next(_bits(missing))
                    raise PosetError(
                        f"transitivity fails: {a} <= {b} <= {c} but not {a} <= {c}"
                    )
        down = [0] * size
        for a in range(size):
            for b in _bits(up[a]):
                down[b] |= 1 << a
        self.size = size
        self.up_masks = tuple(up)
        self.down_masks = tuple(down)

    @classmethod
    def from_leq_table(cls, table):
        """Build from a full boolean size x size table; reflexivity is checked."""
        size = len(table)
        for a, row in enumerate(table):
            if len(row) != size:
                raise PosetError(f"row {a} has length {len(row)}, expected {size}")
            if not row[a]:
                raise PosetError(f"reflexivity fails at {a}")
        pairs = [(a, b) for a in range(size) for b in range(size) if table[a][b]]
        return cls(size, pairs)

    @classmethod
    def from_json(cls, obj):
        """Read {"size": n, "leq": [[i, j], ...]}; reflexive pairs optional."""
        if not isinstance(obj, dict) or "size" not in obj or "leq" not in obj:
            raise InputFormatError('poset JSON needs "size" and "leq"')
        try:
            size = int(obj["size"])
            pairs = [(int(a), int(b)) for a, b in obj["leq"]]
        except (TypeError, ValueError) as exc:
            raise InputFormatError(f"bad poset JSON: {exc}") from None
        return cls(size, pairs)

    def to_json(self):
        return {"size": self.size, "leq": [list(p) for p in self.pairs()]}

    def _check(self, a):
        if not (0 <= a < self.size):
            raise IndexError(f"element {a} out of range for size {self.size}")

    def leq(self, a, b):
        self._check(a)
        self._check(b)
        return bool(self.up_masks[a] >> b & 1)

    def lt(self, a, b):
        return a != b and self.leq(a, b)

    def pairs(self, include_reflexive=False):
        """Sorted (a, b) pairs with a <= b; reflexive pairs omitted by default."""
        out = []
        for a in range(self.size):
            for b in _bits(self.up_masks[a]):
                if include_reflexive or a != b:
                    out.append((a, b))
        return sorted(out)

    def covers(self):
        """The Hasse diagram: pairs (a, b) with a < b and nothing strictly between."""
        out = []
        for a in range(self.size):
            for b in _bits(self.up_masks[a] & ~(1 << a)):
                between = self.up_masks[a] & self.down_masks[b]
                between &= ~(1 << a) & ~(1 << b)
                if not between:
                    out.append((a, b))
        return tuple(sorted(out))

    def dual(self):
        """The same carrier with the order reversed (an involution)."""
        d = FinitePoset.__new__(FinitePoset)
        d.size = self.size
        d.up_masks = self.down_masks
        d.down_masks = self.up_masks
        return d

    def bottom(self):
        full = (1 << self.size) - 1
        for a in range(self.size):
            if self.up_masks[a] == full:
                return a
        return None

    def top(self):
        full = (1 << self.size) - 1
        for a in range(self.size):
            if self.down_masks[a] == full:
                return a
        return None

    def least_upper_bound(self, a, b):
        self._check(a)
        self._check(b)
        return self._least_of(self.up_masks[a] & self.up_masks[b])

    def greatest_lower_bound(self, a, b):
        self._check(a)
        self._check(b)
        return self._greatest_of(self.down_masks[a] & self.down_masks[b])

    def _least_of(self, mask):
        # least element of the set coded by mask, or None
        for c in _bits(mask):
            if mask & ~self.up_masks[c] == 0:
                return c
        return None

    def _greatest_of(self, mask):
        for c in _bits(mask):
            if mask & ~self.down_masks[c] == 0:
                return c
        return None

    def __eq__(self, other):
        return (
            isinstance(other, FinitePoset)
            and self.size == other.size
            and self.up_masks == other.up_masks
        )

    def __hash__(self):
        return hash((self.size, self.up_masks))

    def __repr__(self):
        return f"FinitePoset(size={self.size}, pairs={self.pairs()})"


def _as_poset(p):
    return p.poset if isinstance(p, FiniteLattice) else p


def is_lattice(p):
    """Does every pair have a least upper and greatest lower bound?

    Returns (True, None), or (False, (a, b)) with a witnessing pair.
    """
    p = _as_poset(p)
    for a in range(p.size):
        for b in range(a + 1, p.size):
            if p.least_upper_bound(a, b) is None:
                return False, (a, b)
            if p.greatest_lower_bound(a, b) is None:
                return False, (a, b)
    return True, None


class FiniteLattice:
    """A finite lattice: a poset plus tabulated binary meets and joins."""

    __slots__ = ("poset", "meet_table", "join_table")

    def __init__(self, poset):
        n = poset.size
        meet = [[0] * n for _ in range(n)]
        join = [[0] * n for _ in range(n)]
        for a in range(n):
            for b in range(a, n):
                lo = poset.greatest_lower_bound(a, b)
                hi = poset.least_upper_bound(a, b)
                if lo is None or hi is None:
                    raise NotALatticeError(
                        f"pair ({a}, {b}) has no {'meet' if lo is None else 'join'}",
                        witness=(a, b),
                    )
                meet[a][b] = meet[b][a] = lo
                join[a][b] = join[b][a] = hi
        self.poset = poset
        self.meet_table = tuple(tuple(row) for row in meet)
        self.join_table = tuple(tuple(row) for row in join)

    @property
    def size(self):
        return self.poset.size

    def leq(self, a, b):
        return self.poset.leq(a, b)

    def meet(self, a, b):
        self.poset._check(a)
        self.poset._check(b)
        return self.meet_table[a][b]

    def join(self, a, b):
        self.poset._check(a)
        self.poset._check(b)
        return self.join_table[a][b]

    def bottom(self):
        return self.poset.bottom()

    def top(self):
        return self.poset.top()

    def __repr__(self):
        return f"FiniteLattice({self.poset!r})"


@dataclass(frozen=True)
class LabeledLattice:
    """A finite lattice together with one label object per element id."""

    lattice: FiniteLattice
    labels: tuple

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        if len(self.labels) != self.lattice.size:
            raise ValueError("label count must match lattice size")

    @property
    def size(self):
        return self.lattice.size

    def index_of(self, label):
        return self.labels.index(label)


def _check_subset_guard(size, subset_bound):
    if 2 ** size > subset_bound:
        raise GuardError(
            f"2^{size} subsets exceed the bound {subset_bound}; refusing to enumerate"
        )


def _subset_lubs(p, up_masks, least_of):
    """For every subset mask, the least upper bound element, or None."""
    n = p.size
    full = (1 << n) - 1
    ub = [full] * (1 << n)
    out = [None] * (1 << n)
    for mask in range(1, 1 << n):
        low = (mask & -mask).bit_length() - 1
        ub[mask] = ub[mask & (mask - 1)] & up_masks[low]
    for mask in range(1 << n):
        out[mask] = least_of(ub[mask])
    return out


def _subset_sups(p):
    return _subset_lubs(p, p.up_masks, p._least_of)


def _subset_infs(p):
    return _subset_lubs(p, p.down_masks, p._greatest_of)


def bf_is_complete(p, subset_bound=DEFAULT_SUBSET_BOUND):
    """Exhaustively check that every subset has a supremum and an infimum.

    Sup existence for a subset S is the first-order statement "some upper
    bound of S lies below every upper bound of S", evaluated by table scan.
    The empty set is included, so orders without a global bottom and top fail.
    """
    p = _as_poset(p)
    _check_subset_guard(p.size, subset_bound)
    if None in _subset_sups(p):
        return False
    return None not in _subset_infs(p)


def bf_compact_elements(p, subset_bound=DEFAULT_SUBSET_BOUND):
    """Elements a such that whenever a <= sup S, a finite S' of S has a <= sup S'.

    The sub-subset search stops at the first witness; every subset of a finite
    carrier is its own finite witness, so on complete carriers this returns
    the whole carrier after sweeping every subset.  Requires completeness.
    """
    p = _as_poset(p)
    _check_subset_guard(p.size, subset_bound)
    sups = _subset_sups(p)
    if None in sups or None in _subset_infs(p):
        raise ValueError("carrier is not a complete lattice")
    compact = []
    for a in range(p.size):
        row = p.up_masks[a]
        witnessed = True
        for mask in range(1 << p.size):
            if not row >> sups[mask] & 1:
                continue
            # a <= sup S: look for a finite S' of S with a <= sup S'
            found = False
            sub = mask
            while True:
                if row >> sups[sub] & 1:
                    found = True
                    break
                if sub == 0:
                    break
                sub = (sub - 1) & mask
            if not found:
                witnessed = False
                break
        if witnessed:
            compact.append(a)
    return frozenset(compact)


def bf_is_algebraic(p, subset_bound=DEFAULT_SUBSET_BOUND):
    """Complete and every element is the sup of its compact predecessors."""
    p = _as_poset(p)
    ok, witness = is_lattice(p)
    if not ok:
        raise NotALatticeError(f"pair {witness} has no bound", witness=witness)
    _check_subset_guard(p.size, subset_bound)
    if not bf_is_complete(p, subset_bound):
        return False
    compact_mask = 0
    for a in bf_compact_elements(p, subset_bound):
        compact_mask |= 1 << a
    for a in range(p.size):
        below = compact_mask & p.down_masks[a]
        if p._least_of(_upper_bounds_of_mask(p, below)) != a:
            return False
    return True


def _upper_bounds_of_mask(p, mask):
    out = (1 << p.size) - 1
    for x in _bits(mask):
        out &= p.up_masks[x]
    return out
