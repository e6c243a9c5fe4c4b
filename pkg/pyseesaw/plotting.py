# -*- coding: utf-8 -*-

"""
Figures for the command line: the focus-step surface and the A-side / P-side displacement sweep.
The output format follows the file suffix (png, pdf, svg, ...).
"""

from __future__ import annotations

import logging
import math
import typing

import matplotlib as mpl

mpl.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .exceptions import PlotError  # noqa: E402
from .optics import AccuracySurface  # noqa: E402

logger = logging.getLogger(__name__)

GOLDEN_RATIO = (math.sqrt(5) - 1.0) / 2.0
DEFAULT_WIDTH_IN = 8.0
DEFAULT_DPI = 150


class DisplacementSeries:
    def __init__(self, label: str, active_mm: typing.Sequence[float], passive_um: typing.Sequence[float]):
        if len(active_mm) != len(passive_um):
            raise PlotError(f"Series {label!r} has {len(active_mm)} A values and {len(passive_um)} P values")

        self.label = label
        self.active_mm = np.asarray(active_mm, dtype=float)
        self.passive_um = np.asarray(passive_um, dtype=float)

    def __repr__(self):
        return f"DisplacementSeries({self.label!r}, points={len(self.active_mm)})"


def figure(width: float = DEFAULT_WIDTH_IN, height: typing.Optional[float] = None):
    """Figure and axes with readable font sizes; height defaults to width * golden ratio."""
    if not height:
        height = width * GOLDEN_RATIO

    fig, ax = plt.subplots(figsize=(width, height), facecolor="w")
    ax.tick_params(labelsize=width * 2)
    ax.xaxis.label.set_size(width * 2.5)
    ax.yaxis.label.set_size(width * 2.5)
    ax.title.set_size(width * 2.5)
    return fig, ax


def savefig(fig, path: str, dpi: int = DEFAULT_DPI) -> None:
    suffix = path.rsplit(".", 1)[-1].lower() if "." in path else ""
    supported = fig.canvas.get_supported_filetypes()
    if suffix not in supported:
        plt.close(fig)
        raise PlotError(f"Cannot infer an image format from {path!r}, expected one of {', '.join(sorted(supported))}")

    try:
        fig.savefig(path, dpi=dpi, format=suffix)
    finally:
        plt.close(fig)

    logger.debug("Figure saved to %s", path)


def plot_accuracy_surface(surface: AccuracySurface, path: str) -> None:
    fig, ax = figure()

    angles_deg = np.degrees(surface.angles)
    mesh = ax.pcolormesh(surface.pitches, angles_deg, surface.delta_z, shading="auto", cmap="viridis")
    contours = ax.contour(surface.pitches, angles_deg, surface.delta_z, colors="k", linewidths=0.6)
    ax.clabel(contours, fmt="%.3g", fontsize=DEFAULT_WIDTH_IN * 1.2)

    colorbar = fig.colorbar(mesh, ax=ax)
    colorbar.set_label("delta_z (um)")
    ax.set_xlabel("thread pitch (mm)")
    ax.set_ylabel("minimal rotation (deg)")
    ax.set_title(f"focus step, ratio {surface.ratio:.4g}")

    savefig(fig, path)


def plot_displacements(series: typing.Sequence[DisplacementSeries], path: str) -> None:
    if not series:
        raise PlotError("Nothing to plot")

    fig, ax = figure()
    for item in series:
        order = np.argsort(item.active_mm)
        ax.plot(item.active_mm[order], item.passive_um[order], "o-", label=item.label)

    ax.axhline(0.0, color="0.6", linewidth=0.5)
    ax.axvline(0.0, color="0.6", linewidth=0.5)
    ax.set_xlabel("A displacement (mm)")
    ax.set_ylabel("P displacement (um)")
    ax.legend(fontsize=DEFAULT_WIDTH_IN * 1.5)

    savefig(fig, path)
