"""Uniform 1D grid, discrete flow state, and derivative stencils."""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .errors import NearDryError

__all__ = [
    "Grid",
    "FlowState",
    "ddx",
    "d2dx2",
    "depth",
    "check_wet",
    "save_state",
    "load_state",
]


@dataclass(frozen=True)
class Grid:
    """Uniform node grid; node i sits at x0 + i * dx."""

    x0: float
    dx: float
    n: int

    def __post_init__(self):
        if not self.dx > 0.0:
            raise ValueError("dx must be positive, got {}".format(self.dx))
        if self.n < 8:
            raise ValueError("need at least 8 nodes, got {}".format(self.n))

    @property
    def x(self) -> np.ndarray:
        return self.x0 + self.dx * np.arange(self.n)

    @property
    def x_last(self) -> float:
        return self.x0 + self.dx * (self.n - 1)


@dataclass
class FlowState:
    """Surface elevation and velocity sampled on a grid at time t."""

    t: float
    gamma_surface: np.ndarray
    velocity: np.ndarray

    def __post_init__(self):
        self.gamma_surface = np.asarray(self.gamma_surface, dtype=float)
        self.velocity = np.asarray(self.velocity, dtype=float)
        if self.gamma_surface.ndim != 1:
            raise ValueError("fields must be 1D")
        if self.gamma_surface.shape != self.velocity.shape:
            raise ValueError("surface and velocity must have the same length")

    def copy(self) -> "FlowState":
        return FlowState(self.t, self.gamma_surface.copy(), self.velocity.copy())


def _checked(field, grid: Grid) -> np.ndarray:
    f = np.asarray(field, dtype=float)
    if f.shape != (grid.n,):
        raise ValueError(
            "field length {} does not match grid n={}".format(f.shape, grid.n)
        )
    return f


def ddx(field, grid: Grid) -> np.ndarray:
    """First derivative: central in the interior, one-sided at both ends.

    All stencils are second order in dx.
    """
    f = _checked(field, grid)
    inv2 = 1.0 / (2.0 * grid.dx)
    out = np.empty_like(f)
    out[1:-1] = (f[2:] - f[:-2]) * inv2
    out[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) * inv2
    out[-1] = (3.0 * f[-1] - 4.0 * f[-2] + f[-3]) * inv2
    return out


def d2dx2(field, grid: Grid) -> np.ndarray:
    """Second derivative, second order everywhere (4-point stencil at ends)."""
    f = _checked(field, grid)
    inv = 1.0 / grid.dx**2
    out = np.empty_like(f)
    out[1:-1] = (f[2:] - 2.0 * f[1:-1] + f[:-2]) * inv
    out[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) * inv
    out[-1] = (2.0 * f[-1] - 5.0 * f[-2] + 4.0 * f[-3] - f[-4]) * inv
    return out


def depth(state: FlowState, bathy, grid: Grid) -> np.ndarray:
    """Water column thickness: surface minus bed at every node."""
    return _checked(state.gamma_surface, grid) - bathy.eval(grid.x)


def check_wet(state: FlowState, bathy, grid: Grid, h_min: float) -> None:
    """Raise NearDryError if any column is thinner than h_min."""
    w = depth(state, bathy, grid)
    i = int(np.argmin(w))
    if w[i] < h_min:
        raise NearDryError(
            "column {:.3e} below h_min={:.3e} at node {} (t={})".format(
                w[i], h_min, i, state.t
            ),
            node=i,
            t=state.t,
            depth=float(w[i]),
        )


def save_state(state: FlowState, bathy, grid: Grid, path) -> None:
    """Write a snapshot CSV with columns x, gamma_surface, u, b."""
    x = grid.x
    b = np.asarray(bathy.eval(x), dtype=float)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["x", "gamma_surface", "u", "b"])
        for i in range(grid.n):
            writer.writerow(
                [
                    "{:.17g}".format(x[i]),
                    "{:.17g}".format(state.gamma_surface[i]),
                    "{:.17g}".format(state.velocity[i]),
                    "{:.17g}".format(b[i]),
                ]
            )


def load_state(path, t: float = 0.0):
    """Read a snapshot CSV back as (grid, state, bed_elevations).

    The x column must be uniformly spaced since every operation in this
    package assumes a uniform grid.
    """
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or [c.strip() for c in rows[0]] != ["x", "gamma_surface", "u", "b"]:
        raise ValueError("expected header 'x,gamma_surface,u,b' in {}".format(path))
    try:
        data = np.array([[float(v) for v in row] for row in rows[1:] if row])
    except ValueError as exc:
        raise ValueError("malformed state row in {}: {}".format(path, exc))
    if data.ndim != 2 or data.shape[1] != 4 or data.shape[0] < 8:
        raise ValueError("state file {} needs >= 8 rows of 4 columns".format(path))
    x = data[:, 0]
    dx = x[1] - x[0]
    if dx <= 0 or not np.allclose(np.diff(x), dx, rtol=1e-9, atol=1e-12 * abs(dx)):
        raise ValueError("state file {} is not on a uniform grid".format(path))
    grid = Grid(float(x[0]), float(dx), int(x.size))
    state = FlowState(t, data[:, 1], data[:, 2])
    return grid, state, data[:, 3]
