"""Variable-bottom long-wave runs and characteristic singularity analysis.

The package integrates the 1D nonlinear long-wave equations over a
prescribed bed profile, tracks the characteristic invariants of the flow,
and flags the points where the bed-slope correction to the transport
speeds stops being meaningful: sign crossings of the invariant gradient,
plateaus where it vanishes over a stretch, and degenerate bed points
where slope and gradient vanish together.

Modules:
  bathymetry  bed profiles (flat, linear, smoothed step, sampled)
  fields      grid, flow state, stencils, state file I/O
  riemann     invariants, corrected transport speeds, residual checks
  analytic    sloping-bottom closed-form solution family
  solver      finite-volume integrator and run driver
  detector    singular-point detection and classification
  nondim      dimensional scalings and shallowness checks
  cli         command-line front end
"""

from . import analytic, bathymetry, cli, detector, fields, nondim, riemann, solver
from .bathymetry import Flat, Linear, Sampled, TanhSafe
from .detector import (
    Classification,
    CriticalEvent,
    DegenerateRegime,
    DegenerateSpec,
    DepthRegime,
    DetectorConfig,
    Side,
    classify,
    classify_degenerate,
    find_critical_points,
)
from .errors import (
    ConfigError,
    DomainError,
    InvalidInvariantsError,
    NearDryError,
    NumericBlowUpError,
    ShoalwaveError,
)
from .fields import FlowState, Grid, load_state, save_state
from .solver import RunResult, SolverConfig, run, step

__version__ = "0.1.0"

__all__ = [
    "Classification",
    "ConfigError",
    "CriticalEvent",
    "DegenerateRegime",
    "DegenerateSpec",
    "DepthRegime",
    "DetectorConfig",
    "DomainError",
    "Flat",
    "FlowState",
    "Grid",
    "InvalidInvariantsError",
    "Linear",
    "NearDryError",
    "NumericBlowUpError",
    "RunResult",
    "Sampled",
    "ShoalwaveError",
    "Side",
    "SolverConfig",
    "TanhSafe",
    "analytic",
    "bathymetry",
    "classify",
    "classify_degenerate",
    "cli",
    "detector",
    "fields",
    "find_critical_points",
    "load_state",
    "nondim",
    "riemann",
    "run",
    "save_state",
    "solver",
    "step",
]
