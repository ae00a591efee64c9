"""Matplotlib figures written next to the delimited reports.

Figures use the Agg backend and fixed metadata so that repeated runs give
identical files.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .directions import ZetaSeries  # noqa: E402
from .partition import GeneratorProfile, TransitionMatrix  # noqa: E402

plt.rcParams["svg.hashsalt"] = "solenoid"


def _save(fig, path: str | Path) -> Path:
    path = Path(path)
    fmt = path.suffix.lstrip(".") or "png"
    metadata = {"Date": None} if fmt in ("svg", "pdf") else {}
    if fmt == "png":
        metadata = {"Software": None}
    fig.savefig(path, format=fmt, metadata=metadata)
    plt.close(fig)
    return path


def generator_figure(profile: GeneratorProfile, path: str | Path) -> Path:
    """Per-coordinate widths against depth, on a log scale."""
    seq = [profile.baseline, *profile.reports]
    depths = [r.depth for r in seq]
    fig, ax = plt.subplots(figsize=(5, 3.5))
    for c, label in enumerate(("real diameter", "2-adic width", "3-adic width")):
        ax.plot(depths, [float(r.widths[c]) for r in seq], marker="o", label=label)
    ax.set_yscale("log")
    ax.set_xticks(depths)
    ax.set_xlabel("depth n")
    ax.set_ylabel("width")
    ax.set_title(f"({profile.a},{profile.b}): {profile.verdict}", fontsize=9)
    ax.legend(fontsize=8)
    fig.tight_layout()
    return _save(fig, path)


def zeta_figure(z: ZetaSeries, path: str | Path) -> Path:
    """Computed series coefficients against the closed and printed forms."""
    rows = z.comparison_rows()
    n = [r[0] for r in rows]
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.plot(n, [float(r[2]) for r in rows], marker="o", label="computed")
    if z.closed_form is not None:
        ax.plot(n, [float(r[3]) for r in rows], linestyle="--", label=str(z.closed_form))
    if z.printed_form is not None:
        ax.plot(n, [float(r[4]) for r in rows], linestyle=":", marker="x", label=f"printed {z.printed_form}")
    ax.plot(n, [float(r[5]) for r in rows], linestyle="-.", label="symbolic cover")
    ax.set_yscale("symlog")
    ax.set_xticks(n)
    ax.set_xlabel("n")
    ax.set_ylabel("coefficient of z^n")
    ax.set_title(f"zeta series for ({z.a},{z.b})", fontsize=9)
    ax.legend(fontsize=7)
    fig.tight_layout()
    return _save(fig, path)


def transition_figure(m: TransitionMatrix, path: str | Path, title: str = "") -> Path:
    fig, ax = plt.subplots(figsize=(4, 4))
    ax.imshow(m.as_array(), cmap="Blues", vmin=0, vmax=1, interpolation="nearest")
    ax.set_xlabel("target atom j")
    ax.set_ylabel("source atom i")
    ax.set_title(title or f"allowed transitions ({m.size} symbols)", fontsize=9)
    fig.tight_layout()
    return _save(fig, path)
