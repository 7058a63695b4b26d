"""Figure for the lattice sweep (needs the optional matplotlib extra)."""

from __future__ import annotations


def plot_sweep(rows, path: str, title: str = "") -> str:
    """Vertex counts per weight; filled markers are lattice polytopes,
    red rings flag weights where observation and prediction differ."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    xs = list(range(len(rows)))
    labels = [",".join(str(v) for v in r.omega) for r in rows]
    fig, ax = plt.subplots(figsize=(max(6, 0.35 * len(rows)), 4))
    lattice = [k for k, r in enumerate(rows) if r.observed]
    other = [k for k, r in enumerate(rows) if not r.observed]
    ax.scatter(lattice, [rows[k].vertices for k in lattice], color="black", label="lattice", zorder=3)
    ax.scatter(other, [rows[k].vertices for k in other], facecolor="white", edgecolor="black",
               label="not lattice", zorder=3)
    bad = [k for k, r in enumerate(rows) if not r.agrees]
    if bad:
        ax.scatter(bad, [rows[k].vertices for k in bad], s=160, facecolor="none", edgecolor="red",
                   label="disagrees with prediction", zorder=4)
    ax.set_xticks(xs)
    ax.set_xticklabels(labels, rotation=90, fontsize=7)
    ax.set_xlabel("weight (omega coefficients)")
    ax.set_ylabel("vertices")
    ax.set_yscale("log")
    ax.set_title(title)
    ax.legend(fontsize=8, frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
