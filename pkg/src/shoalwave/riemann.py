"""Wave invariants, their transport speeds, and consistency diagnostics.

For a wet column of thickness w = gamma_surface - b the invariants are

    p = u + 2 * sqrt(w)        (inland-running)
    q = u - 2 * sqrt(w)        (offshore-running)

Over a sloping bed their transport speeds pick up the correction
b_x / p_x (resp. b_x / q_x), which blows up wherever the invariant
gradient vanishes while the bed still slopes. Those entries are reported
as signed-infinity markers instead of being divided out; where both the
gradient and the bed slope sit below the threshold the correction is
treated as zero and the cruising speed is returned (the degenerate cases
are classified separately, see the detector module).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInvariantsError, NearDryError
from .fields import FlowState, Grid, ddx

__all__ = [
    "RiemannFields",
    "default_eps_px",
    "compute",
    "reconstruct",
    "characteristic_residual",
    "save_riemann_csv",
]

# Relative floor for |p_x| below which the bed-slope correction is singular.
EPS_PX_SCALE = 1e-8


@dataclass
class RiemannFields:
    """Invariants and transport speeds on the nodes of one state.

    speed_p and speed_q are finite where the gradient in the denominator is
    resolved, and +inf/-inf markers where it vanishes over a sloping bed.
    eps_px records the threshold actually used.
    """

    gamma: np.ndarray
    p: np.ndarray
    q: np.ndarray
    p_x: np.ndarray
    q_x: np.ndarray
    speed_p: np.ndarray
    speed_q: np.ndarray
    eps_px: float


def default_eps_px(p, dx: float) -> float:
    """Scale-aware gradient threshold: EPS_PX_SCALE * max|p| / dx."""
    return EPS_PX_SCALE * float(np.max(np.abs(p))) / dx


def _limit_sign(grad: np.ndarray, b_slope_i: float, i: int, eps: float) -> float:
    """Sign of the diverging correction b_x / grad at node i.

    Takes the sign of the nearest resolved gradient entry, scanning toward
    smaller x first (the side a +x-running wave came from), then larger x.
    """
    bs = 1.0 if b_slope_i > 0 else -1.0
    for j in range(i - 1, -1, -1):
        if abs(grad[j]) > eps:
            return bs * (1.0 if grad[j] > 0 else -1.0)
    for j in range(i + 1, grad.size):
        if abs(grad[j]) > eps:
            return bs * (1.0 if grad[j] > 0 else -1.0)
    return bs


def _correction(b_slope: np.ndarray, grad: np.ndarray, eps: float) -> np.ndarray:
    """Bed-slope speed correction b_x / grad with singular entries marked."""
    out = np.zeros_like(grad)
    resolved = np.abs(grad) > eps
    out[resolved] = b_slope[resolved] / grad[resolved]
    singular = ~resolved & (np.abs(b_slope) > eps)
    for i in np.nonzero(singular)[0]:
        out[i] = np.inf * _limit_sign(grad, float(b_slope[i]), int(i), eps)
    return out


def compute(state: FlowState, bathy, grid: Grid, eps_px: float | None = None) -> RiemannFields:
    """Invariants, their gradients, and transport speeds for one state."""
    x = grid.x
    w = state.gamma_surface - bathy.eval(x)
    if w.shape != (grid.n,):
        raise ValueError("state does not match grid")
    i = int(np.argmin(w))
    if w[i] <= 0.0:
        raise NearDryError(
            "dry column at node {} (t={})".format(i, state.t),
            node=i,
            t=state.t,
            depth=float(w[i]),
        )
    gamma = np.sqrt(w)
    u = state.velocity
    p = u + 2.0 * gamma
    q = u - 2.0 * gamma
    p_x = ddx(p, grid)
    q_x = ddx(q, grid)
    b_slope = np.asarray(bathy.slope(x), dtype=float)
    eps = default_eps_px(p, grid.dx) if eps_px is None else float(eps_px)
    speed_p = gamma + u + _correction(b_slope, p_x, eps)
    # The offshore family transports at -(gamma - u - b_x/q_x); the leading
    # minus sign is part of the stored value.
    speed_q = u - gamma + _correction(b_slope, q_x, eps)
    return RiemannFields(gamma, p, q, p_x, q_x, speed_p, speed_q, eps)


def reconstruct(p, q):
    """Invert the invariants: returns (u, gamma). Requires p > q everywhere."""
    pa = np.asarray(p, dtype=float)
    qa = np.asarray(q, dtype=float)
    if pa.shape != qa.shape:
        raise InvalidInvariantsError("p and q must have the same shape")
    if not np.all(pa > qa):
        raise InvalidInvariantsError("need p > q at every node (wet column)")
    u = 0.5 * (pa + qa)
    gamma = 0.25 * (pa - qa)
    return u, gamma


def characteristic_residual(state_a: FlowState, state_b: FlowState, bathy, grid: Grid):
    """Residuals of the characteristic transport laws between two states.

    Checks, at the midpoint time, how well the pair satisfies

        p_t + (gamma + u) p_x = -b_x
        q_t - (gamma - u) q_x = -b_x

    with the time derivative from the state difference and the gradients in
    chain form u_x +/- (surface_x - b_x)/gamma, so a lake at rest cancels to
    rounding. Returns (res_p, res_q) as node arrays.
    """
    ga = state_a.gamma_surface
    gb = state_b.gamma_surface
    if ga.shape != (grid.n,) or gb.shape != (grid.n,):
        raise ValueError("states do not match the grid")
    dt = state_b.t - state_a.t
    if not dt > 0.0:
        raise ValueError("states must be ordered in time, got dt={}".format(dt))
    x = grid.x
    b = np.asarray(bathy.eval(x), dtype=float)
    b_slope = np.asarray(bathy.slope(x), dtype=float)

    def invariants(st):
        w = st.gamma_surface - b
        i = int(np.argmin(w))
        if w[i] <= 0.0:
            raise NearDryError(
                "dry column at node {} (t={})".format(i, st.t),
                node=i,
                t=st.t,
                depth=float(w[i]),
            )
        root = np.sqrt(w)
        return st.velocity + 2.0 * root, st.velocity - 2.0 * root

    p_a, q_a = invariants(state_a)
    p_b, q_b = invariants(state_b)

    u_mid = 0.5 * (state_a.velocity + state_b.velocity)
    surf_mid = 0.5 * (ga + gb)
    w_mid = surf_mid - b
    if np.any(w_mid <= 0.0):
        i = int(np.argmin(w_mid))
        raise NearDryError("dry midpoint column at node {}".format(i), node=i)
    gamma_mid = np.sqrt(w_mid)
    u_x = ddx(u_mid, grid)
    excess = ddx(surf_mid, grid) - b_slope
    p_x = u_x + excess / gamma_mid
    q_x = u_x - excess / gamma_mid

    res_p = (p_b - p_a) / dt + (gamma_mid + u_mid) * p_x + b_slope
    res_q = (q_b - q_a) / dt - (gamma_mid - u_mid) * q_x + b_slope
    return res_p, res_q


def _fmt(v: float) -> str:
    if np.isposinf(v):
        return "+inf"
    if np.isneginf(v):
        return "-inf"
    return "{:.17g}".format(v)


def save_riemann_csv(fields: RiemannFields, grid: Grid, path) -> None:
    """Dump the invariant fields; singular speeds appear as +inf / -inf."""
    x = grid.x
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["x", "gamma", "p", "q", "p_x", "q_x", "speed_p", "speed_q"])
        for i in range(grid.n):
            writer.writerow(
                [
                    _fmt(x[i]),
                    _fmt(fields.gamma[i]),
                    _fmt(fields.p[i]),
                    _fmt(fields.q[i]),
                    _fmt(fields.p_x[i]),
                    _fmt(fields.q_x[i]),
                    _fmt(fields.speed_p[i]),
                    _fmt(fields.speed_q[i]),
                ]
            )
