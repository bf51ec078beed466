"""Render the three demo panels from spin-demo CSV files.

Inputs follow the fixed schemas written by ``lgbounds spin-demo``:
``fig1a.csv``/``fig1b.csv`` carry ``t2,t3,t4,value`` rows over a full 3D
grid, ``fig1c.csv`` carries ``L_norm,c13_norm,c24_norm``. Surface panels
show one t3 slice of the grid (nearest slice to the requested value; the
data is sliced, never aggregated). The sphere panel scatters every row
against a translucent unit hemisphere so containment is visible directly.
The renderer never writes to its inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = [
    "PanelSpec",
    "RenderResult",
    "SchemaError",
    "IoError",
    "SURFACE_SCHEMA",
    "SPHERE_SCHEMA",
    "DEFAULT_T3_SLICE",
    "render",
]


class SchemaError(Exception):
    """CSV header does not match the expected fixed schema."""


class IoError(Exception):
    """Reading an input or writing an image failed."""


SURFACE_SCHEMA = ("t2", "t3", "t4", "value")
SPHERE_SCHEMA = ("L_norm", "c13_norm", "c24_norm")
DEFAULT_T3_SLICE = math.pi / 2

PANEL_KINDS = ("d1_surface", "d2_surface", "sphere_scatter")

FIGSIZE = (6.0, 5.0)
DPI = 120


@dataclass(frozen=True)
class PanelSpec:
    """One panel to render: input CSV, panel kind, output image path."""

    input_csv: str
    kind: str
    output_image: str
    title: str = ""
    t3_slice: float = DEFAULT_T3_SLICE

    def __post_init__(self) -> None:
        if self.kind not in PANEL_KINDS:
            raise ValueError(f"unknown panel kind {self.kind!r}")


@dataclass(frozen=True)
class RenderResult:
    """What was drawn: the image path, row count, and for the sphere panel
    the largest point radius (None for surface panels)."""

    output_image: str
    rows: int
    max_radius: float | None


def _load_csv(path: str, schema: tuple[str, ...]) -> np.ndarray:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc
    lines = text.splitlines()
    if not lines:
        raise SchemaError(f"{path}: empty file, expected header {','.join(schema)}")
    header = tuple(name.strip() for name in lines[0].split(","))
    if header != schema:
        raise SchemaError(
            f"{path}: header {','.join(header)} does not match expected {','.join(schema)}"
        )
    if len(lines) == 1:
        return np.empty((0, len(schema)))
    try:
        data = np.array([[float(v) for v in line.split(",")] for line in lines[1:] if line])
    except ValueError as exc:
        raise SchemaError(f"{path}: non-numeric row: {exc}") from exc
    if data.shape[1] != len(schema):
        raise SchemaError(f"{path}: expected {len(schema)} columns, got {data.shape[1]}")
    return data


def _save(fig, path: str) -> None:
    try:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        fig.savefig(path, dpi=DPI)
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc
    finally:
        plt.close(fig)


def _render_surface(spec: PanelSpec) -> RenderResult:
    data = _load_csv(spec.input_csv, SURFACE_SCHEMA)
    fig, ax = plt.subplots(figsize=FIGSIZE)
    label = "D1" if spec.kind == "d1_surface" else "D2"
    if data.shape[0] == 0:
        ax.set_title(spec.title or f"{label} (no data)")
        ax.set_xlabel("t2")
        ax.set_ylabel("t4")
        _save(fig, spec.output_image)
        return RenderResult(spec.output_image, 0, None)

    t2, t3, t4, value = data.T
    slices = np.unique(t3)
    chosen = slices[np.argmin(np.abs(slices - spec.t3_slice))]
    mask = t3 == chosen
    x = np.unique(t2[mask])
    y = np.unique(t4[mask])
    grid = np.full((y.size, x.size), np.nan)
    xi = np.searchsorted(x, t2[mask])
    yi = np.searchsorted(y, t4[mask])
    grid[yi, xi] = value[mask]

    if x.size > 1 and y.size > 1:
        mesh = ax.pcolormesh(x, y, grid, shading="nearest", cmap="viridis")
        fig.colorbar(mesh, ax=ax, label=label)
    else:
        ax.scatter(t2[mask], t4[mask], c=value[mask], cmap="viridis")
    ax.set_xlabel("t2")
    ax.set_ylabel("t4")
    ax.set_title(spec.title or f"{label} at t3 = {chosen:.4f}")
    _save(fig, spec.output_image)
    return RenderResult(spec.output_image, int(mask.sum()), None)


def _render_sphere(spec: PanelSpec) -> RenderResult:
    data = _load_csv(spec.input_csv, SPHERE_SCHEMA)
    fig = plt.figure(figsize=FIGSIZE)
    ax = fig.add_subplot(projection="3d")
    ax.set_xlabel("c13 / 2√2")
    ax.set_ylabel("c24 / 2√2")
    ax.set_zlabel("L / 2√2")
    ax.set_title(spec.title or "normalized coordinates against the unit sphere")

    # upper unit hemisphere: the attainable region never leaves it
    phi = np.linspace(0.0, 2 * np.pi, 60)
    theta = np.linspace(0.0, np.pi / 2, 30)
    pp, tt = np.meshgrid(phi, theta)
    ax.plot_surface(
        np.cos(pp) * np.sin(tt),
        np.sin(pp) * np.sin(tt),
        np.cos(tt),
        color="0.7",
        alpha=0.25,
        linewidth=0,
    )

    max_radius = None
    if data.shape[0] > 0:
        l_norm, c13_norm, c24_norm = data.T
        radius = np.sqrt(l_norm**2 + c13_norm**2 + c24_norm**2)
        max_radius = float(radius.max())
        ax.scatter(c13_norm, c24_norm, l_norm, s=1.0, c="indigo", alpha=0.35, linewidths=0)
    ax.set_xlim(-1.05, 1.05)
    ax.set_ylim(-1.05, 1.05)
    ax.set_zlim(0.0, 1.05)
    _save(fig, spec.output_image)
    return RenderResult(spec.output_image, data.shape[0], max_radius)


def render(spec: PanelSpec) -> RenderResult:
    """Render one panel to its image file and report what was drawn."""
    if spec.kind == "sphere_scatter":
        return _render_sphere(spec)
    return _render_surface(spec)
