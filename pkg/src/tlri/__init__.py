"""tlri: deterministic timing side-channel leakage simulator and
Timing-Leakage Risk Index scoring pipeline."""

__version__ = "0.1.0"

from .core import (  # noqa: F401
    Environment,
    LeakModel,
    MetricReport,
    Scenario,
    SchemeParams,
    TraceSet,
    partition,
)
from .scoring import TlriWeights  # noqa: F401
