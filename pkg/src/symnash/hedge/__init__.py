from ._kernels import HAVE_NUMBA, JIT_DISABLED
from .dynamics import (
    CarrierError,
    HedgeParams,
    hedge_step,
    log_step,
    re_alpha_derivative,
    relative_entropy,
    relative_entropy_after_step,
    trajectory,
    trajectory_csv,
)
from .probes import (
    PROBES,
    ProbeReport,
    probe_better_response,
    probe_convexity,
    probe_derivative,
    probe_instability,
    probe_stability,
)

__all__ = [
    "HAVE_NUMBA", "JIT_DISABLED", "CarrierError", "HedgeParams", "hedge_step", "log_step",
    "re_alpha_derivative", "relative_entropy", "relative_entropy_after_step", "trajectory",
    "trajectory_csv", "PROBES", "ProbeReport", "probe_better_response", "probe_convexity",
    "probe_derivative", "probe_instability", "probe_stability",
]
