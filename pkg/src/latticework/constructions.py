"""Tree-based lattice constructions with closed-form order, meet, and join.

Four families over prefix-closed trees:

  * the double-tree lattice: a tree glued below a reversed copy of itself,
    complete exactly when the tree is well founded;
  * the tree-sum lattice: disjoint trees under shared bounds, each capped by
    a designated element that is compact exactly when its tree is well
    founded;
  * the capped tree: a tree plus bottom, top, and one side element, always
    complete and algebraic exactly when the tree is well founded;
  * the augmented chain: the naturals with a top, plus a side element above
    0 and below the top.

Every closed form is validated elsewhere against ``materialize``, which
rebuilds small instances from the generating relations by transitive closure.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import GuardError
from .order import FiniteLattice, FinitePoset, LabeledLattice, transitive_closure
from .trees import (
    FiniteTree,
    PathWitness,
    all_members,
    format_node_string,
    has_infinite_path,
    is_well_founded,
)

MATERIALIZE_MAX_SIZE = 4096

CONSTRUCTIONS = ("Ln", "SumL", "TnA", "ChainA")


def _is_prefix(a, b):
    return len(a) <= len(b) and b[: len(a)] == a


def _comparable(a, b):
    return _is_prefix(a, b) or _is_prefix(b, a)


def _common_prefix(a, b):
    i = 0
    while i < len(a) and i < len(b) and a[i] == b[i]:
        i += 1
    return a[:i]


def _node_str(node):
    return format_node_string(node) if node else "ε"


# ---------------------------------------------------------------------------
# Double-tree lattice: a tree below a reversed copy of itself.


@dataclass(frozen=True)
class DoubleTreeElement:
    """A tree node, in the plain copy or the starred (reversed) copy."""

    node: tuple
    starred: bool = False

    def __post_init__(self):
        object.__setattr__(self, "node", tuple(self.node))

    def __str__(self):
        return _node_str(self.node) + ("*" if self.starred else "")


def dt_star(x):
    """Swap copies: an order-reversing involution."""
    return DoubleTreeElement(x.node, not x.starred)


def _check_dt(tree, x):
    if not tree.member(x.node):
        raise ValueError(f"node {format_node_string(x.node)!r} not in tree")


def dt_leq(tree, x, y):
    """Order of the double-tree lattice.

    Plain nodes carry the prefix order, starred nodes the reverse prefix
    order, and a plain node sits below a starred node exactly when the two
    underlying nodes are comparable.  Starred never sits below plain.
    """
    _check_dt(tree, x)
    _check_dt(tree, y)
    if not x.starred and not y.starred:
        return _is_prefix(x.node, y.node)
    if x.starred and y.starred:
        return _is_prefix(y.node, x.node)
    if not x.starred:
        return _comparable(x.node, y.node)
    return False


def dt_meet(tree, x, y):
    """Closed-form meet: for incomparable pairs, the common prefix, plain."""
    if dt_leq(tree, x, y):
        return x
    if dt_leq(tree, y, x):
        return y
    return DoubleTreeElement(_common_prefix(x.node, y.node), False)


def dt_join(tree, x, y):
    """Closed-form join: for incomparable pairs, the common prefix, starred."""
    if dt_leq(tree, x, y):
        return y
    if dt_leq(tree, y, x):
        return x
    return DoubleTreeElement(_common_prefix(x.node, y.node), True)


def dt_is_complete(tree):
    """The double-tree lattice is complete iff the tree is well founded."""
    return is_well_founded(tree)


# ---------------------------------------------------------------------------
# Tree-sum lattice: disjoint trees under shared bounds with designated caps.


@dataclass(frozen=True)
class SumElement:
    """Bottom, top, a tree node, or the designated cap above one tree."""

    kind: str  # "bottom" | "top" | "node" | "a"
    tree: int | None = None
    node: tuple | None = None

    def __post_init__(self):
        if self.kind not in ("bottom", "top", "node", "a"):
            raise ValueError(f"bad kind {self.kind!r}")
        if self.kind in ("node", "a") and self.tree is None:
            raise ValueError(f"kind {self.kind!r} needs a tree index")
        if self.kind == "node":
            object.__setattr__(self, "node", tuple(self.node))

    def __str__(self):
        if self.kind == "bottom":
            return "0"
        if self.kind == "top":
            return "1"
        if self.kind == "a":
            return f"a{self.tree}"
        return f"t{self.tree}:{_node_str(self.node)}"


SUM_BOTTOM = SumElement("bottom")
SUM_TOP = SumElement("top")


def sum_node(tree_index, node):
    return SumElement("node", tree_index, tuple(node))


def sum_a(tree_index):
    return SumElement("a", tree_index)


def _check_sum(family, x):
    if x.kind in ("node", "a"):
        if not (0 <= x.tree < len(family)):
            raise ValueError(f"tree index {x.tree} out of range")
        if x.kind == "node" and not family[x.tree].member(x.node):
            raise ValueError(
                f"node {format_node_string(x.node)!r} not in tree {x.tree}"
            )


def sum_leq(family, x, y):
    """Order: bottom least, top greatest, prefix order inside each tree, and
    each node below its own tree's cap; caps of distinct trees incomparable."""
    _check_sum(family, x)
    _check_sum(family, y)
    if x == y or x.kind == "bottom" or y.kind == "top":
        return True
    if y.kind == "bottom" or x.kind == "top":
        return False
    if x.kind == "node" and y.kind == "node":
        return x.tree == y.tree and _is_prefix(x.node, y.node)
    if x.kind == "node" and y.kind == "a":
        return x.tree == y.tree
    return False


def sum_join(family, x, y):
    """Closed-form join: incomparable nodes of one tree join to that tree's
    cap; anything across two trees joins to the top."""
    if sum_leq(family, x, y):
        return y
    if sum_leq(family, y, x):
        return x
    if x.tree == y.tree:
        return sum_a(x.tree)
    return SUM_TOP


def sum_meet(family, x, y):
    """Closed-form meet: incomparable nodes of one tree meet at their common
    prefix; anything across two trees meets at the bottom."""
    if sum_leq(family, x, y):
        return x
    if sum_leq(family, y, x):
        return y
    if x.kind == "node" and y.kind == "node" and x.tree == y.tree:
        return sum_node(x.tree, _common_prefix(x.node, y.node))
    return SUM_BOTTOM


def sum_is_compact_a(family, n):
    """The designated cap over tree n is compact iff that tree is well founded."""
    if not (0 <= n < len(family)):
        raise ValueError(f"tree index {n} out of range")
    return is_well_founded(family[n])


def designated_index(n):
    """Carrier id of the n-th designated cap: even slots, 2n."""
    if n < 0:
        raise ValueError("index must be nonnegative")
    return 2 * n


# ---------------------------------------------------------------------------
# Capped tree: a tree plus bottom, top, and an incomparable side element.


@dataclass(frozen=True)
class TnAElement:
    """Zero, one, the side element, or a tree node."""

    kind: str  # "zero" | "one" | "a" | "node"
    node: tuple | None = None

    def __post_init__(self):
        if self.kind not in ("zero", "one", "a", "node"):
            raise ValueError(f"bad kind {self.kind!r}")
        if self.kind == "node":
            object.__setattr__(self, "node", tuple(self.node))

    def __str__(self):
        if self.kind == "zero":
            return "0"
        if self.kind == "one":
            return "1"
        if self.kind == "a":
            return "a"
        return _node_str(self.node)


TNA_ZERO = TnAElement("zero")
TNA_ONE = TnAElement("one")
TNA_A = TnAElement("a")


def tna_node(node):
    return TnAElement("node", tuple(node))


def _check_tna(tree, x):
    if x.kind == "node" and not tree.member(x.node):
        raise ValueError(f"node {format_node_string(x.node)!r} not in tree")


def tna_leq(tree, x, y):
    """Order: zero least, one greatest, prefix order on nodes, the side
    element comparable only with the bounds."""
    _check_tna(tree, x)
    _check_tna(tree, y)
    if x == y or x.kind == "zero" or y.kind == "one":
        return True
    if y.kind == "zero" or x.kind == "one":
        return False
    if x.kind == "node" and y.kind == "node":
        return _is_prefix(x.node, y.node)
    return False


def tna_join(tree, x, y):
    """Closed-form join: everything incomparable joins to the top, because
    the carrier minus the top is a tree."""
    if tna_leq(tree, x, y):
        return y
    if tna_leq(tree, y, x):
        return x
    return TNA_ONE


def tna_meet(tree, x, y):
    """Closed-form meet: incomparable nodes meet at their common prefix; the
    side element meets every node at zero."""
    if tna_leq(tree, x, y):
        return x
    if tna_leq(tree, y, x):
        return y
    if x.kind == "node" and y.kind == "node":
        return tna_node(_common_prefix(x.node, y.node))
    return TNA_ZERO


def tna_is_complete(tree):
    """Always true: any infinite subset already has the top as its sup."""
    return True


def tna_is_algebraic(tree):
    """Algebraic iff the tree is well founded."""
    return is_well_founded(tree)


# ---------------------------------------------------------------------------
# Augmented chain: naturals plus a top, with one side element.


@dataclass(frozen=True)
class ChainElement:
    """A natural number, the top of the chain, or the side element."""

    kind: str  # "nat" | "omega" | "a"
    k: int | None = None

    def __post_init__(self):
        if self.kind not in ("nat", "omega", "a"):
            raise ValueError(f"bad kind {self.kind!r}")
        if self.kind == "nat" and (self.k is None or self.k < 0):
            raise ValueError("nat elements need k >= 0")

    def __str__(self):
        if self.kind == "nat":
            return str(self.k)
        return "ω" if self.kind == "omega" else "a"


CHAIN_OMEGA = ChainElement("omega")
CHAIN_A = ChainElement("a")


def chain_nat(k):
    return ChainElement("nat", k)


def chain_leq(x, y):
    """Order: naturals in the usual order, the top above everything, the side
    element above 0 and below the top only."""
    if x == y or y.kind == "omega":
        return True
    if x.kind == "omega":
        return False
    if x.kind == "nat" and y.kind == "nat":
        return x.k <= y.k
    if x.kind == "nat" and y.kind == "a":
        return x.k == 0
    return False  # side element below a positive natural: never


def chain_join(x, y):
    if chain_leq(x, y):
        return y
    if chain_leq(y, x):
        return x
    return CHAIN_OMEGA


def chain_meet(x, y):
    if chain_leq(x, y):
        return x
    if chain_leq(y, x):
        return y
    return chain_nat(0)


def chain_is_compact(x):
    """Naturals are compact; the side element and the top are not."""
    return x.kind == "nat"


def chain_facts():
    """Decided facts about the plain chain-with-top and the augmented chain.

    The plain chain is complete and algebraic (its only non-compact element
    is the top, which is the sup of the naturals).  Attaching the side
    element breaks compact generation: the side element's only compact
    predecessor is 0.
    """
    return {
        "omega_chain_complete": True,
        "omega_chain_algebraic": True,
        "compact_naturals": True,
        "compact_a": False,
        "compact_omega": False,
        "augmented_chain_compactly_generated": False,
    }


# ---------------------------------------------------------------------------
# Materialized oracles: rebuild small instances from the generating relations.


def _require_finite(tree, max_size):
    if isinstance(tree, FiniteTree):
        return tree
    return FiniteTree(tree.bound, all_members(tree, max_nodes=max_size))


def _sorted_nodes(tree):
    return sorted(tree.nodes, key=lambda n: (len(n), n))


def _finish(pairs, labels, max_size):
    if len(labels) > max_size:
        raise GuardError(f"{len(labels)} elements exceed materialize bound {max_size}")
    closed = transitive_closure(pairs, len(labels))
    poset = FinitePoset(len(labels), closed)
    return LabeledLattice(FiniteLattice(poset), tuple(labels))


def materialize_double_tree(tree, max_size=MATERIALIZE_MAX_SIZE):
    """Explicit double-tree lattice over a finite tree, from the generating
    relations: prefix covers, reversed starred covers, node below its star."""
    tree = _require_finite(tree, max_size)
    nodes = _sorted_nodes(tree)
    labels = [DoubleTreeElement(n, False) for n in nodes]
    labels += [DoubleTreeElement(n, True) for n in nodes]
    index = {x: i for i, x in enumerate(labels)}
    pairs = []
    for n in nodes:
        pairs.append((index[DoubleTreeElement(n, False)], index[DoubleTreeElement(n, True)]))
        if n:
            parent = n[:-1]
            pairs.append((index[DoubleTreeElement(parent, False)], index[DoubleTreeElement(n, False)]))
            pairs.append((index[DoubleTreeElement(n, True)], index[DoubleTreeElement(parent, True)]))
    return _finish(pairs, labels, max_size)


def materialize_tna(tree, max_size=MATERIALIZE_MAX_SIZE):
    """Explicit capped tree over a finite tree."""
    tree = _require_finite(tree, max_size)
    nodes = _sorted_nodes(tree)
    labels = [TNA_ZERO] + [tna_node(n) for n in nodes] + [TNA_A, TNA_ONE]
    index = {x: i for i, x in enumerate(labels)}
    pairs = [(index[TNA_ZERO], index[TNA_A]), (index[TNA_A], index[TNA_ONE])]
    for n in nodes:
        pairs.append((index[TNA_ZERO], index[tna_node(n)]))
        pairs.append((index[tna_node(n)], index[TNA_ONE]))
        if n:
            pairs.append((index[tna_node(n[:-1])], index[tna_node(n)]))
    return _finish(pairs, labels, max_size)


def materialize_sum(trees, max_size=MATERIALIZE_MAX_SIZE):
    """Explicit tree-sum lattice over finite trees.

    Carrier ids follow the designated-cap convention: the cap of tree n gets
    id 2n, everything else fills the remaining ids in order (bottom, the
    nodes of each tree, top).
    """
    trees = [_require_finite(t, max_size) for t in trees]
    if not trees:
        raise ValueError("the tree-sum construction needs at least one tree")
    others = [SUM_BOTTOM]
    for m, tree in enumerate(trees):
        others.extend(sum_node(m, n) for n in _sorted_nodes(tree))
    others.append(SUM_TOP)
    size = len(others) + len(trees)
    if size > max_size:
        raise GuardError(f"{size} elements exceed materialize bound {max_size}")
    labels = [None] * size
    for m in range(len(trees)):
        labels[designated_index(m)] = sum_a(m)
    spare = iter(i for i in range(size) if labels[i] is None)
    for x in others:
        labels[next(spare)] = x
    index = {x: i for i, x in enumerate(labels)}
    pairs = []
    bottom, top = index[SUM_BOTTOM], index[SUM_TOP]
    for i in range(size):
        if i != bottom:
            pairs.append((bottom, i))
        if i != top:
            pairs.append((i, top))
    for m, tree in enumerate(trees):
        for n in _sorted_nodes(tree):
            pairs.append((index[sum_node(m, n)], index[sum_a(m)]))
            if n:
                pairs.append((index[sum_node(m, n[:-1])], index[sum_node(m, n)]))
    return _finish(pairs, labels, max_size)


def materialize_chain(height, max_size=MATERIALIZE_MAX_SIZE):
    """Finite stand-in for the augmented chain: naturals 0..height, the side
    element, and the top."""
    if height < 0:
        raise ValueError("height must be nonnegative")
    labels = [chain_nat(k) for k in range(height + 1)] + [CHAIN_A, CHAIN_OMEGA]
    index = {x: i for i, x in enumerate(labels)}
    pairs = [(index[chain_nat(k)], index[chain_nat(k + 1)]) for k in range(height)]
    pairs.append((index[chain_nat(0)], index[CHAIN_A]))
    pairs.append((index[CHAIN_A], index[CHAIN_OMEGA]))
    pairs.append((index[chain_nat(height)], index[CHAIN_OMEGA]))
    return _finish(pairs, labels, max_size)


def materialize(construction, trees=(), depth=None, max_size=MATERIALIZE_MAX_SIZE):
    """Materialize a construction descriptor into a labeled finite lattice.

    Regular trees are accepted when well founded (their member set is
    expanded); ``depth`` is the chain height for "ChainA".
    """
    if construction == "Ln":
        (tree,) = trees
        return materialize_double_tree(tree, max_size)
    if construction == "TnA":
        (tree,) = trees
        return materialize_tna(tree, max_size)
    if construction == "SumL":
        return materialize_sum(trees, max_size)
    if construction == "ChainA":
        if depth is None:
            raise ValueError('construction "ChainA" needs a depth (chain height)')
        return materialize_chain(depth, max_size)
    raise ValueError(f"unknown construction {construction!r}")


# ---------------------------------------------------------------------------
# Per-tree verdict table tying the three deciders to well-foundedness.


@dataclass(frozen=True)
class VerdictRow:
    """The three decided properties plus well-foundedness for one tree."""

    index: int
    complete: bool
    compact_a: bool
    algebraic: bool
    well_founded: bool
    witness: PathWitness | None

    @property
    def consistent(self):
        return self.complete == self.compact_a == self.algebraic == self.well_founded


def reduction_verdicts(family):
    """One VerdictRow per tree; all four booleans coincide by construction,
    and false rows carry the infinite-path witness."""
    rows = []
    for n, tree in enumerate(family):
        rows.append(
            VerdictRow(
                index=n,
                complete=dt_is_complete(tree),
                compact_a=sum_is_compact_a(family, n),
                algebraic=tna_is_algebraic(tree),
                well_founded=is_well_founded(tree),
                witness=has_infinite_path(tree),
            )
        )
    return tuple(rows)
