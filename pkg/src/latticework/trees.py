"""Prefix-closed string trees.

Two presentations: an explicit finite node set, and a deterministic rooted
labeled digraph whose path labels present a (possibly infinite) tree.  Nodes
are tuples of integer labels; the empty tuple is the root.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import GuardError, InputFormatError

DEFAULT_NODE_GUARD = 100_000


def parse_node_string(s):
    """Decode "01[12]" -> (0, 1, 12); single digits, brackets for labels >= 10."""
    out = []
    i = 0
    while i < len(s):
        c = s[i]
        if c == "[":
            j = s.find("]", i)
            if j < 0:
                raise InputFormatError(f"unclosed bracket in node string {s!r}")
            try:
                out.append(int(s[i + 1 : j]))
            except ValueError:
                raise InputFormatError(f"bad label in node string {s!r}") from None
            i = j + 1
        elif c.isdigit():
            out.append(int(c))
            i += 1
        else:
            raise InputFormatError(f"bad character {c!r} in node string {s!r}")
    return tuple(out)


def format_node_string(node):
    return "".join(str(x) if 0 <= x < 10 else f"[{x}]" for x in node)


@dataclass(frozen=True)
class PathWitness:
    """A pumpable path: stem . loop^k lies in the tree for every k >= 0."""

    stem: tuple
    loop: tuple

    def __post_init__(self):
        object.__setattr__(self, "stem", tuple(self.stem))
        object.__setattr__(self, "loop", tuple(self.loop))
        if not self.loop:
            raise ValueError("loop must be nonempty")

    def holds_in(self, tree, repeats=10):
        """Check stem . loop^k membership for every k <= repeats."""
        node = self.stem
        for _ in range(repeats + 1):
            if not tree.member(node):
                return False
            node = node + self.loop
        return True

    def __str__(self):
        return (
            f"stem={format_node_string(self.stem)!r} "
            f"loop={format_node_string(self.loop)!r}"
        )


class FiniteTree:
    """An explicit prefix-closed set of label strings below an alphabet bound."""

    __slots__ = ("bound", "nodes")

    def __init__(self, bound, nodes):
        if bound < 0:
            raise InputFormatError("alphabet bound must be nonnegative")
        node_set = {tuple(n) for n in nodes}
        node_set.add(())
        for node in node_set:
            for label in node:
                if not (0 <= label < bound):
                    raise InputFormatError(
                        f"label {label} outside alphabet bound {bound}"
                    )
            if node and node[:-1] not in node_set:
                raise InputFormatError(
                    f"not prefix-closed: {format_node_string(node)!r} present "
                    f"without {format_node_string(node[:-1])!r}"
                )
        self.bound = bound
        self.nodes = frozenset(node_set)

    @classmethod
    def from_json(cls, obj):
        """Read {"bound": 2, "nodes": ["", "0", "01"]}."""
        if not isinstance(obj, dict) or "bound" not in obj or "nodes" not in obj:
            raise InputFormatError('finite-tree JSON needs "bound" and "nodes"')
        return cls(int(obj["bound"]), [parse_node_string(s) for s in obj["nodes"]])

    def to_json(self):
        return {
            "bound": self.bound,
            "nodes": [format_node_string(n) for n in self.sorted_nodes()],
        }

    def member(self, node):
        return tuple(node) in self.nodes

    def children(self, node):
        node = tuple(node)
        return frozenset(i for i in range(self.bound) if node + (i,) in self.nodes)

    def sorted_nodes(self):
        return tuple(sorted(self.nodes, key=lambda n: (len(n), n)))

    def height(self):
        return max((len(n) for n in self.nodes), default=0)

    def __len__(self):
        return len(self.nodes)

    def __iter__(self):
        return iter(self.sorted_nodes())

    def __eq__(self, other):
        return (
            isinstance(other, FiniteTree)
            and self.bound == other.bound
            and self.nodes == other.nodes
        )

    def __hash__(self):
        return hash((self.bound, self.nodes))

    def __repr__(self):
        shown = [format_node_string(n) for n in self.sorted_nodes()]
        return f"FiniteTree(bound={self.bound}, nodes={shown})"


class RegularTree:
    """A deterministic rooted labeled digraph presenting a prefix-closed tree.

    The presented tree is the set of label strings of walks from the root; a
    cycle reachable from the root is exactly an infinite path of that tree.
    """

    __slots__ = ("bound", "root", "edges", "states")

    def __init__(self, bound, root, edges):
        if bound < 0:
            raise InputFormatError("alphabet bound must be nonnegative")
        table = {}
        states = {root}
        for src, label, dst in edges:
            label = int(label)
            if not (0 <= label < bound):
                raise InputFormatError(f"label {label} outside alphabet bound {bound}")
            key = (src, label)
            if table.get(key, dst) != dst:
                raise InputFormatError(
                    f"nondeterministic: state {src!r} has two edges on label {label}"
                )
            table[key] = dst
            states.add(src)
            states.add(dst)
        self.bound = bound
        self.root = root
        self.edges = table
        self.states = frozenset(states)

    @classmethod
    def from_json(cls, obj):
        """Read {"bound": 2, "root": "q0", "edges": [["q0", 0, "q1"], ...]}."""
        if not isinstance(obj, dict) or "root" not in obj or "edges" not in obj:
            raise InputFormatError('regular-tree JSON needs "bound", "root", "edges"')
        try:
            edges = [(str(s), int(l), str(t)) for s, l, t in obj["edges"]]
        except (TypeError, ValueError) as exc:
            raise InputFormatError(f"bad regular-tree JSON: {exc}") from None
        return cls(int(obj.get("bound", 0)), str(obj["root"]), edges)

    def to_json(self):
        edges = sorted([s, l, t] for (s, l), t in self.edges.items())
        return {"bound": self.bound, "root": self.root, "edges": edges}

    def step(self, state, label):
        return self.edges.get((state, label))

    def out_edges(self, state):
        """(label, target) pairs from a state, in label order."""
        return tuple(
            (label, self.edges[(state, label)])
            for label in range(self.bound)
            if (state, label) in self.edges
        )

    def state_of(self, node):
        state = self.root
        for label in node:
            state = self.edges.get((state, label))
            if state is None:
                return None
        return state

    def member(self, node):
        return self.state_of(node) is not None

    def children(self, node):
        state = self.state_of(node)
        if state is None:
            return frozenset()
        return frozenset(label for label, _ in self.out_edges(state))

    def reachable_states(self):
        seen = {self.root}
        stack = [self.root]
        while stack:
            state = stack.pop()
            for _, target in self.out_edges(state):
                if target not in seen:
                    seen.add(target)
                    stack.append(target)
        return frozenset(seen)

    def __eq__(self, other):
        return (
            isinstance(other, RegularTree)
            and (self.bound, self.root) == (other.bound, other.root)
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.bound, self.root, frozenset(self.edges.items())))

    def __repr__(self):
        return (
            f"RegularTree(bound={self.bound}, root={self.root!r}, "
            f"edges={sorted(self.edges.items())})"
        )


def pad(t):
    """Add the root and every length-1 string below the alphabet bound.

    The added nodes are leaves at level one, so infinite paths are unchanged.
    Idempotent.
    """
    if isinstance(t, FiniteTree):
        return FiniteTree(t.bound, set(t.nodes) | {(i,) for i in range(t.bound)})
    triples = [(s, l, d) for (s, l), d in t.edges.items()]
    present = {label for (state, label) in t.edges if state == t.root}
    for label in range(t.bound):
        if label in present:
            continue
        name = f"pad{label}"
        while name in t.states:
            name = "_" + name
        triples.append((t.root, label, name))
    return RegularTree(t.bound, t.root, triples)


def has_infinite_path(t):
    """Return a PathWitness iff a cycle is reachable from the root.

    Explicit finite trees never have one.  The DFS visits labels in
    increasing order, so the witness is deterministic.
    """
    if isinstance(t, FiniteTree):
        return None
    color = {t.root: 1}
    on_path = {t.root: 0}
    labels = []
    frames = [(t.root, iter(t.out_edges(t.root)))]
    while frames:
        state, it = frames[-1]
        advanced = False
        for label, target in it:
            if target in on_path:
                i = on_path[target]
                return PathWitness(tuple(labels[:i]), tuple(labels[i:] + [label]))
            if color.get(target) == 2:
                continue
            labels.append(label)
            color[target] = 1
            on_path[target] = len(labels)
            frames.append((target, iter(t.out_edges(target))))
            advanced = True
            break
        if not advanced:
            frames.pop()
            color[state] = 2
            on_path.pop(state)
            if labels:
                labels.pop()
    return None


def is_well_founded(t):
    """No infinite path: always true for finite trees, cycle-freeness otherwise."""
    return has_infinite_path(t) is None


def truncate(t, depth, max_nodes=DEFAULT_NODE_GUARD):
    """All members of length <= depth, as an explicit FiniteTree."""
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    if isinstance(t, FiniteTree):
        return FiniteTree(t.bound, {n for n in t.nodes if len(n) <= depth})
    nodes = {()}
    frontier = [((), t.root)]
    for _ in range(depth):
        nxt = []
        for node, state in frontier:
            for label, target in t.out_edges(state):
                child = node + (label,)
                nodes.add(child)
                if len(nodes) > max_nodes:
                    raise GuardError(f"truncation exceeds {max_nodes} nodes")
                nxt.append((child, target))
        frontier = nxt
    return FiniteTree(t.bound, nodes)


def all_members(t, max_nodes=DEFAULT_NODE_GUARD):
    """The full member set; refuses regular trees with an infinite path."""
    if isinstance(t, FiniteTree):
        return t.nodes
    if has_infinite_path(t) is not None:
        raise GuardError("tree has an infinite path; member set is infinite")
    nodes = set()
    stack = [((), t.root)]
    while stack:
        node, state = stack.pop()
        nodes.add(node)
        if len(nodes) > max_nodes:
            raise GuardError(f"member set exceeds {max_nodes} nodes")
        for label, target in t.out_edges(state):
            stack.append((node + (label,), target))
    return frozenset(nodes)


def tree_from_json(obj):
    """Dispatch on shape: "nodes" -> FiniteTree, "edges" -> RegularTree."""
    if isinstance(obj, dict) and "nodes" in obj:
        return FiniteTree.from_json(obj)
    if isinstance(obj, dict) and "edges" in obj:
        return RegularTree.from_json(obj)
    raise InputFormatError('tree JSON needs either "nodes" or "edges"')
