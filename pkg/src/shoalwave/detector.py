"""Locating and classifying singular points of the invariant transport speed.

The inland transport speed carries the correction b_x / p_x, so it blows up
wherever the invariant gradient p_x crosses zero while the bed still slopes.
This module finds those points with sub-cell accuracy, sorts each one into an
inland rush, an offshore rush, or an indeterminate configuration from the
local wave shape, and handles the degenerate bed points where b_x vanishes
together with p_x.

Classification reads five local quantities at the crossing: u_x, u_xx, the
surface-minus-bed slope, its derivative, and the depth root gamma. The
crest side (u_x < 0 with the surface pulling away from the bed) promotes to
InlandRush when the velocity peak is concave and the slope excess is
falling; the trough side promotes to OffshoreRush when both curvatures
point the other way and the slope-excess growth clears the magnitude gate
0.5 * u_x**2. Everything else stays Indeterminate.

The surface-minus-bed slope used here is formed as 2 * gamma * ddx(gamma),
i.e. through the same stencil as p_x, which keeps the tangent-match
residual identity r = gamma * p_x exact to rounding.
"""

from __future__ import annotations

import enum
from dataclasses import asdict, dataclass

import numpy as np

from .errors import DomainError, NearDryError
from .fields import FlowState, Grid, d2dx2, ddx
from .riemann import RiemannFields

__all__ = [
    "Classification",
    "Side",
    "DepthRegime",
    "DegenerateRegime",
    "DegenerateSpec",
    "DetectorConfig",
    "EventDiagnostics",
    "CriticalEvent",
    "CriticalPoint",
    "find_critical_points",
    "classify",
    "classify_degenerate",
    "tangent_match_residual",
    "alert_nodes",
    "deep_sea_diagnostics",
    "DeepSeaDiagnostics",
]

# Minimum node count for a below-threshold stretch of p_x to count as a
# plateau rather than noise straddling the threshold.
PLATEAU_MIN_RUN = 3

# Depth-regime boundaries relative to the reference depth root.
SHALLOW_FRACTION = 0.1
DEEP_FRACTION = 0.7


class Classification(str, enum.Enum):
    INLAND_RUSH = "InlandRush"
    OFFSHORE_RUSH = "OffshoreRush"
    INDETERMINATE = "Indeterminate"
    DEGENERATE_PLATEAU = "DegeneratePlateau"


class Side(str, enum.Enum):
    CREST = "CrestSide"
    TROUGH = "TroughSide"
    UNKNOWN = "Unknown"


class DepthRegime(str, enum.Enum):
    SHALLOW = "Shallow"
    INTERMEDIATE = "Intermediate"
    DEEP = "Deep"


class DegenerateRegime(str, enum.Enum):
    ORDER_SQRT_DEPTH = "OrderSqrtDepth"
    VANISHING_CORRECTION = "VanishingCorrection"
    SIGNED_INFINITY = "SignedInfinity"


@dataclass(frozen=True)
class DetectorConfig:
    """Thresholds for detection and for the tangent-match alert."""

    eps_px: float | None = None
    alert_eps_r: float = 1e-3
    alert_eps_gamma: float = 0.1


@dataclass(frozen=True)
class CriticalPoint:
    """Sub-cell location where p_x vanishes; plateau marks a whole run."""

    x_star: float
    node_index: int
    plateau: bool = False


@dataclass(frozen=True)
class EventDiagnostics:
    """Local quantities interpolated at x_star."""

    u_x: float
    u_xx: float
    excess_slope: float
    excess_slope_x: float
    gamma: float
    b_x: float


@dataclass(frozen=True)
class CriticalEvent:
    t: float
    x_star: float
    classification: Classification
    side: Side
    diagnostics: EventDiagnostics
    depth_regime: DepthRegime

    def to_record(self, run_id: str | None = None) -> dict:
        """JSON-serializable form, one object per event-log line."""
        rec = {
            "t": self.t,
            "x_star": self.x_star,
            "classification": self.classification.value,
            "side": self.side.value,
            "depth_regime": self.depth_regime.value,
        }
        rec.update(asdict(self.diagnostics))
        if run_id is not None:
            rec["run_id"] = run_id
        return rec


@dataclass(frozen=True)
class DegenerateSpec:
    """Leading-order behavior at a degenerate bed point x*.

    The bed slope vanishes like B1 * (x - x*)**p_exp and the correction's
    denominator ingredients like C1 * (x - x*)**q_exp; gamma_local is the
    depth root at the point. B1 must be nonzero (a flat-at-all-orders bed
    point has no singular correction to classify).
    """

    p_exp: int
    q_exp: int
    B1: float
    C1: float
    gamma_local: float = 1.0

    def __post_init__(self):
        if self.p_exp < 1 or self.q_exp < 1:
            raise ValueError("orders must be >= 1 (both factors vanish at x*)")
        if self.B1 == 0.0:
            raise ValueError("B1 must be nonzero at a degenerate bed point")
        if not self.gamma_local > 0.0:
            raise ValueError("gamma_local must be positive")


def _surface_gradients(state: FlowState, bathy, grid: Grid):
    """(gamma, u_x, u_xx, excess_slope, excess_slope_x) node arrays."""
    w = state.gamma_surface - bathy.eval(grid.x)
    i = int(np.argmin(w))
    if w[i] <= 0.0:
        raise NearDryError(
            "dry column at node {} (t={})".format(i, state.t),
            node=i,
            t=state.t,
            depth=float(w[i]),
        )
    gamma = np.sqrt(w)
    u_x = ddx(state.velocity, grid)
    u_xx = d2dx2(state.velocity, grid)
    excess = 2.0 * gamma * ddx(gamma, grid)
    excess_x = ddx(excess, grid)
    return gamma, u_x, u_xx, excess, excess_x


def find_critical_points(
    fields: RiemannFields, bathy, grid: Grid, eps_px: float | None = None
) -> list[CriticalPoint]:
    """Locate vanishing-p_x points, sub-cell, in ascending x order.

    Sign changes between adjacent resolved nodes are interpolated linearly
    (placement error at most dx/2). Runs of PLATEAU_MIN_RUN or more nodes
    with |p_x| <= eps_px are reported once, at the run center. Points where
    the bed slope itself sits below the threshold are excluded; they belong
    to the degenerate analysis (classify_degenerate), not to the rush
    detector.
    """
    eps = fields.eps_px if eps_px is None else float(eps_px)
    px = fields.p_x
    x = grid.x
    small = np.abs(px) <= eps
    points: list[CriticalPoint] = []

    left = px[:-1]
    right = px[1:]
    crossing = (left * right < 0.0) & ~small[:-1] & ~small[1:]
    for i in np.nonzero(crossing)[0]:
        x_star = x[i] + grid.dx * px[i] / (px[i] - px[i + 1])
        if abs(float(bathy.slope(x_star))) <= eps:
            continue
        points.append(CriticalPoint(float(x_star), int(i), False))

    # Maximal runs of below-threshold nodes.
    padded = np.concatenate(([False], small, [False]))
    edges = np.diff(padded.astype(np.int8))
    starts = np.nonzero(edges == 1)[0]
    stops = np.nonzero(edges == -1)[0]
    for start, stop in zip(starts, stops):
        if stop - start < PLATEAU_MIN_RUN:
            continue
        center = (start + stop - 1) // 2
        x_star = float(x[center])
        if abs(float(bathy.slope(x_star))) <= eps:
            continue
        points.append(CriticalPoint(x_star, int(center), True))

    points.sort(key=lambda pt: pt.x_star)
    return points


def classify(
    x_star: float,
    fields: RiemannFields,
    state: FlowState,
    bathy,
    grid: Grid,
    *,
    gamma_ref: float | None = None,
    plateau: bool = False,
) -> CriticalEvent:
    """Classify the singular point at x_star from the local wave shape.

    gamma_ref anchors the depth regime (defaults to the largest depth root
    in the analyzed fields; a driver tracking a whole run should pass the
    initial maximum). plateau=True labels the point DegeneratePlateau,
    which never claims an infinite speed.
    """
    x = grid.x
    if not x[0] <= x_star <= x[-1]:
        raise DomainError("x_star={} outside grid [{}, {}]".format(x_star, x[0], x[-1]))
    gamma_arr, u_x_arr, u_xx_arr, excess_arr, excess_x_arr = _surface_gradients(
        state, bathy, grid
    )
    u_x = float(np.interp(x_star, x, u_x_arr))
    u_xx = float(np.interp(x_star, x, u_xx_arr))
    excess = float(np.interp(x_star, x, excess_arr))
    excess_x = float(np.interp(x_star, x, excess_x_arr))
    gamma = float(np.interp(x_star, x, gamma_arr))
    diagnostics = EventDiagnostics(
        u_x=u_x,
        u_xx=u_xx,
        excess_slope=excess,
        excess_slope_x=excess_x,
        gamma=gamma,
        b_x=float(bathy.slope(x_star)),
    )

    ref = float(np.max(fields.gamma)) if gamma_ref is None else float(gamma_ref)
    if gamma <= SHALLOW_FRACTION * ref:
        regime = DepthRegime.SHALLOW
    elif gamma >= DEEP_FRACTION * ref:
        regime = DepthRegime.DEEP
    else:
        regime = DepthRegime.INTERMEDIATE

    if plateau:
        return CriticalEvent(
            state.t, x_star, Classification.DEGENERATE_PLATEAU, Side.UNKNOWN,
            diagnostics, regime,
        )

    if u_x < 0.0 and excess > 0.0:
        side = Side.CREST
    elif u_x > 0.0 and excess < 0.0:
        side = Side.TROUGH
    else:
        side = Side.UNKNOWN

    classification = Classification.INDETERMINATE
    if side is Side.CREST and u_xx < 0.0 and excess_x < 0.0:
        classification = Classification.INLAND_RUSH
    elif side is Side.TROUGH and u_xx > 0.0 and excess_x > 0.5 * u_x**2:
        classification = Classification.OFFSHORE_RUSH

    return CriticalEvent(state.t, x_star, classification, side, diagnostics, regime)


def classify_degenerate(spec: DegenerateSpec) -> DegenerateRegime:
    """Resolve the 0/0 correction at a degenerate bed point.

    With the bed slope vanishing at order p_exp (coefficient B1) and the
    denominator ingredients at order q_exp (coefficient C1):

    - q_exp > p_exp: the correction scales like the depth root near the
      point (OrderSqrtDepth);
    - q_exp < p_exp: the correction vanishes (VanishingCorrection);
    - equal orders with C1 != B1: again OrderSqrtDepth;
    - equal orders with C1 == B1: the correction diverges with a definite
      sign from each side (SignedInfinity).
    """
    if spec.q_exp > spec.p_exp:
        return DegenerateRegime.ORDER_SQRT_DEPTH
    if spec.q_exp < spec.p_exp:
        return DegenerateRegime.VANISHING_CORRECTION
    if spec.C1 == spec.B1:
        return DegenerateRegime.SIGNED_INFINITY
    return DegenerateRegime.ORDER_SQRT_DEPTH


def tangent_match_residual(state: FlowState, bathy, grid: Grid) -> np.ndarray:
    """Node residual r = (surface_x - b_x) + u_x * gamma.

    Algebraically r equals gamma * p_x, so |r| -> 0 with small gamma is the
    configuration in which the surface slope tangentially matches the bed
    slope while the column is thin: the precursor the alert thresholds are
    aimed at.
    """
    gamma, u_x, _, excess, _ = _surface_gradients(state, bathy, grid)
    return excess + u_x * gamma


def alert_nodes(
    state: FlowState,
    bathy,
    grid: Grid,
    alert_eps_r: float = 1e-3,
    alert_eps_gamma: float = 0.1,
) -> np.ndarray:
    """Boolean mask of nodes in the dangerous small-r, small-gamma corner."""
    gamma, u_x, _, excess, _ = _surface_gradients(state, bathy, grid)
    r = excess + u_x * gamma
    return (np.abs(r) <= alert_eps_r) & (gamma <= alert_eps_gamma)


@dataclass(frozen=True)
class DeepSeaDiagnostics:
    """Per-node deep-water indicators plus their maxima."""

    sound_speed: np.ndarray
    amplitude_indicator: np.ndarray
    max_sound_speed: float
    max_amplitude_indicator: float


def deep_sea_diagnostics(
    state: FlowState, bathy, grid: Grid, mean_depth: float
) -> DeepSeaDiagnostics:
    """Signal speed sqrt(depth) and |surface - mean| / sqrt(depth) per node.

    mean_depth is the rest surface level; for a state at rest at that level
    the amplitude indicator is identically zero.
    """
    w = state.gamma_surface - bathy.eval(grid.x)
    if np.any(w <= 0.0):
        i = int(np.argmin(w))
        raise NearDryError("dry column at node {}".format(i), node=i, t=state.t)
    speed = np.sqrt(w)
    indicator = np.abs(state.gamma_surface - mean_depth) / speed
    return DeepSeaDiagnostics(
        sound_speed=speed,
        amplitude_indicator=indicator,
        max_sound_speed=float(np.max(speed)),
        max_amplitude_indicator=float(np.max(indicator)),
    )
