"""DOT text and matplotlib Hasse-diagram rendering for finite posets."""

from __future__ import annotations

from .order import _as_poset, _bits


def _label_texts(poset, labels):
    if labels is None:
        return [str(i) for i in range(poset.size)]
    return [str(x) for x in labels]


def to_dot(p, labels=None, name="lattice"):
    """DOT digraph of the covering relation, bottom-up.

    Nodes appear in carrier-id order and are named e0, e1, .. so the
    serialization convention stays visible in the output.
    """
    poset = _as_poset(p)
    texts = _label_texts(poset, labels)
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=box];"]
    for i in range(poset.size):
        lines.append(f'  e{i} [label="{texts[i]}"];')
    for a, b in poset.covers():
        lines.append(f"  e{a} -> e{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _levels(poset):
    # longest-chain height per element, in predecessor-count order
    order = sorted(range(poset.size), key=lambda a: bin(poset.down_masks[a]).count("1"))
    level = [0] * poset.size
    for b in order:
        preds = [a for a in _bits(poset.down_masks[b]) if a != b]
        level[b] = 1 + max((level[a] for a in preds), default=-1)
    return level


def hasse_figure(p, labels=None, path="hasse.png", title=None):
    """Render a layered Hasse diagram to an image file."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    poset = _as_poset(p)
    texts = _label_texts(poset, labels)
    level = _levels(poset)
    layers = {}
    for i in range(poset.size):
        layers.setdefault(level[i], []).append(i)
    pos = {}
    for lev, members in layers.items():
        width = len(members)
        for k, i in enumerate(members):
            pos[i] = (k - (width - 1) / 2.0, lev)
    widest = max((len(m) for m in layers.values()), default=1)
    fig, ax = plt.subplots(
        figsize=(max(3.0, 1.4 * widest), max(2.5, 1.1 * (len(layers) or 1)))
    )
    for a, b in poset.covers():
        (xa, ya), (xb, yb) = pos[a], pos[b]
        ax.plot([xa, xb], [ya, yb], color="0.55", lw=1.0, zorder=1)
    for i in range(poset.size):
        x, y = pos[i]
        ax.text(
            x,
            y,
            texts[i],
            ha="center",
            va="center",
            zorder=2,
            bbox=dict(boxstyle="round,pad=0.3", fc="white", ec="0.3"),
        )
    if title:
        ax.set_title(title)
    ax.set_axis_off()
    ax.margins(0.15)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
