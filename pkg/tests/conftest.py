"""Shared builders for synthetic states with analytically placed features."""

import numpy as np
import pytest

from shoalwave.bathymetry import Linear
from shoalwave.fields import FlowState, Grid


def build_crossing(
    u_x=-0.2,
    gamma0=0.05,
    u0=0.3,
    u_xx=-0.5,
    s_x=-0.3,
    b0=0.0,
    b1=0.05,
    n=120,
    dx=1e-3,
    u_scale=1.0,
):
    """State whose invariant gradient crosses zero exactly at x = 0.

    The surface is built so that the depth-excess slope (surface slope
    minus bed slope) equals s + s_x*xi with s = -u_x*gamma0*u_scale, which
    cancels the velocity gradient contribution at xi = 0. The velocity is
    the quadratic u_scale*(u0 + u_x*xi + u_xx*xi**2/2). Node xi = 0 falls
    midway between the two central nodes so the zero is a clean sign
    change, not a near-zero node.
    """
    grid = Grid(-(n / 2 - 0.5) * dx, dx, n)
    xi = (np.arange(n) - (n / 2 - 0.5)) * dx
    bathy = Linear(b0, b1)
    s = -u_x * gamma0 * u_scale
    depth_sq = gamma0**2 + s * xi + 0.5 * s_x * xi**2
    if np.min(depth_sq) <= 0.0:
        raise AssertionError("fixture parameters dried the column")
    surface = depth_sq + bathy.eval(grid.x)
    velocity = u_scale * (u0 + u_x * xi + 0.5 * u_xx * xi**2)
    return grid, FlowState(0.0, surface, velocity), bathy


@pytest.fixture
def crossing_state():
    return build_crossing


@pytest.fixture
def inland_setup():
    """Crossing with falling, concave velocity and a shrinking excess."""
    return build_crossing(u_x=-0.2, u_xx=-0.5, s_x=-0.3)


@pytest.fixture
def offshore_setup():
    """Crossing with rising, convex velocity and a strong excess growth."""
    return build_crossing(u_x=0.2, u_xx=0.5, s_x=0.5)


@pytest.fixture
def offshore_weak_setup():
    """Offshore-shaped crossing whose excess growth misses the gate."""
    return build_crossing(u_x=0.2, u_xx=0.5, s_x=0.015)
