"""Figure rendering for the CLI report path.

Renders the error-trace comparison, the harmonic spectrum and the
Lissajous figure to image files next to the delimited output.  Uses the
non-interactive Agg backend; nothing here is required by the numerical
modules.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def plot_error_trace(path: Path, phi, exact, taylor1, taylor_k, k: int, units: str) -> None:
    fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(8, 6), sharex=True)
    ax1.plot(phi, exact, label="exact", lw=1.2)
    ax1.plot(phi, taylor1, label="series k=1", lw=0.9, ls="--")
    ax1.plot(phi, taylor_k, label=f"series k={k}", lw=0.9, ls=":")
    ax1.set_ylabel(f"electrical angular error [{units}]")
    ax1.legend(loc="upper right", fontsize=8)
    ax2.plot(phi, np.asarray(exact) - np.asarray(taylor1), label="residual k=1", lw=0.9)
    ax2.plot(phi, np.asarray(exact) - np.asarray(taylor_k), label=f"residual k={k}", lw=0.9)
    ax2.set_xlabel("mechanical angle [rad]")
    ax2.set_ylabel(f"residual [{units}]")
    ax2.legend(loc="upper right", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_spectrum(path: Path, orders, exact, taylor1, taylor_k, k: int, units: str) -> None:
    orders = np.asarray(orders)
    width = 0.27
    fig, ax = plt.subplots(figsize=(8, 4))
    ax.bar(orders - width, exact, width, label="exact (DFT)")
    ax.bar(orders, taylor1, width, label="series k=1")
    ax.bar(orders + width, taylor_k, width, label=f"series k={k}")
    ax.set_xlabel("harmonic order")
    ax.set_ylabel(f"amplitude [{units}]")
    ax.set_yscale("log")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_lissajous(path: Path, b, a, error, units: str) -> None:
    fig, (ax1, ax2) = plt.subplots(
        1, 2, figsize=(9, 4), gridspec_kw={"width_ratios": [1, 1.4]}
    )
    ax1.plot(b, a, lw=0.8)
    ax1.set_aspect("equal")
    ax1.set_xlabel("b (cosine channel)")
    ax1.set_ylabel("a (sine channel)")
    circle = plt.Circle((0, 0), 1.0, fill=False, ls="--", color="gray", lw=0.8)
    ax1.add_patch(circle)
    ax2.plot(np.linspace(0, 2 * np.pi, len(error), endpoint=False), error, lw=0.9)
    ax2.set_xlabel("mechanical angle [rad]")
    ax2.set_ylabel(f"angular error [{units}]")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
