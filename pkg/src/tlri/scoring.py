"""TLRI composite score: SNR proxy, MI scaling, weighted raw score, logistic map."""

from __future__ import annotations

import math
from dataclasses import dataclass

#: Degenerate-variance sentinel for the SNR proxy.
SNR_CAP = 1.0e6


@dataclass(frozen=True)
class TlriWeights:
    """Fusion constants. The defaults are fixed; override only for
    sensitivity studies (the values used are echoed into results files)."""

    w_snr: float = 0.9
    w_ks: float = 1.3
    w_cliff: float = 1.1
    w_sep: float = 1.2
    w_mi: float = 0.9
    mi_cap: float = 0.5
    logistic_shift: float = 1.5

    def __post_init__(self):
        for name in ("w_snr", "w_ks", "w_cliff", "w_sep", "w_mi"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")
        if not self.mi_cap > 0:
            raise ValueError("mi_cap must be > 0")

    def as_dict(self) -> dict:
        return {
            "w_snr": self.w_snr,
            "w_ks": self.w_ks,
            "w_cliff": self.w_cliff,
            "w_sep": self.w_sep,
            "w_mi": self.w_mi,
            "mi_cap": self.mi_cap,
            "logistic_shift": self.logistic_shift,
        }


def snr_proxy(mean_0: float, mean_1: float, pooled_std: float) -> tuple[float, bool]:
    """|mean gap| / pooled std, with a flagged sentinel when the pooled std
    is zero but the gap is not. Returns (snr, degenerate)."""
    gap = abs(mean_0 - mean_1)
    if pooled_std == 0.0:
        if gap == 0.0:
            return 0.0, False
        return SNR_CAP, True
    return gap / pooled_std, False


def mi_scaled(mi_bits: float, mi_cap: float = 0.5) -> float:
    """Bounded MI contribution min(1, mi / cap)."""
    if mi_bits < 0:
        raise ValueError(f"mi_bits must be >= 0, got {mi_bits}")
    return min(1.0, mi_bits / mi_cap)


def tlri_score(snr: float, ks_d: float, cliff_delta: float, overlap: float,
               mi_bits: float, weights: TlriWeights | None = None
               ) -> tuple[float, float]:
    """Weighted raw evidence score and its logistic mapping into (0, 1)."""
    w = weights or TlriWeights()
    raw = (
        w.w_snr * snr
        + w.w_ks * ks_d
        + w.w_cliff * abs(cliff_delta)
        + w.w_sep * (1.0 - overlap)
        + w.w_mi * mi_scaled(mi_bits, w.mi_cap)
    )
    tlri = 1.0 / (1.0 + math.exp(-(raw - w.logistic_shift)))
    return raw, tlri
