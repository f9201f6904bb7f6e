"""Downstream consumers of the PI bounds: variance tightening, correlation.

The unidentifiable term in the design-based variance of the
difference-in-means estimator is the variance of unit-level effects; its
second moment is bounded below by the squared-difference PI bound, which
tightens the classical conservative variance as the penalty grows.  The
correlation between potential outcomes is bracketed by the product-cost
bounds on the cross moment, normalized by group moments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cost_model import EtaGrid, product, sq_diff
from .errors import GroupTooSmall, NonScalarOutcome, ZeroVariance
from .pi_estimator import ObservedSample, estimate_bound, split_groups, sweep

__all__ = ["NeymanReport", "CorrelationReport", "neyman_bound", "correlation_bound"]

_MONOTONE_SLACK = 1e-9


def _scalar_groups(sample: ObservedSample, op: str) -> tuple[np.ndarray, np.ndarray]:
    if sample.y_dim != 1:
        raise NonScalarOutcome(
            f"{op} is defined for scalar outcomes, got dY={sample.y_dim}"
        )
    (y0, _), (y1, _) = split_groups(sample)
    if y0.shape[0] < 2 or y1.shape[0] < 2:
        raise GroupTooSmall(
            f"need at least 2 rows per group for sample variances, got "
            f"n={y0.shape[0]}, m={y1.shape[0]}"
        )
    return y0[:, 0], y1[:, 0]


@dataclass(frozen=True)
class NeymanReport:
    """Variance-bound tightening across a penalty grid.

    ``v_estimate`` plugs the per-eta lower bound on the effect's second
    moment into the design-based variance formula; division by the
    unpenalized value gives the relative sample size a tightened design
    would need.
    """

    etas: tuple[float, ...]
    s0_sq: float
    s1_sq: float
    tau_hat: float
    s_tau_lb: tuple[float, ...]
    v_estimate: tuple[float, ...]
    relative_sample_size: tuple[float, ...]

    def __post_init__(self) -> None:
        if self.s0_sq < 0 or self.s1_sq < 0 or any(v < 0 for v in self.s_tau_lb):
            raise ValueError("variance terms must be nonnegative")
        rel = self.relative_sample_size
        for eta, value in zip(self.etas, rel):
            if eta == 0 and value != 1.0:
                raise ValueError(f"relative sample size at eta=0 is {value}, not 1")
        if any(b > a + _MONOTONE_SLACK for a, b in zip(rel, rel[1:])):
            raise ValueError(f"relative sample size must be non-increasing: {rel}")

    def as_dict(self) -> dict:
        return {
            "s0_sq": self.s0_sq,
            "s1_sq": self.s1_sq,
            "tau_hat": self.tau_hat,
            "rows": [
                {
                    "eta": eta,
                    "s_tau_lb": lb,
                    "v_estimate": v,
                    "relative_sample_size": rel,
                }
                for eta, lb, v, rel in zip(
                    self.etas, self.s_tau_lb, self.v_estimate, self.relative_sample_size
                )
            ],
        }

    def format_table(self) -> str:
        header = f"{'eta':>10}  {'s_tau_lb':>12}  {'v_estimate':>12}  {'rel_size':>10}"
        lines = [header, "-" * len(header)]
        for eta, lb, v, rel in zip(
            self.etas, self.s_tau_lb, self.v_estimate, self.relative_sample_size
        ):
            lines.append(f"{eta:>10g}  {lb:>12.6g}  {v:>12.6g}  {rel:>10.6g}")
        return "\n".join(lines)


def neyman_bound(sample: ObservedSample, grid: EtaGrid) -> NeymanReport:
    """Tightened design-based variance bounds across a penalty grid.

    For each eta, the squared-difference cost gives a lower PI bound
    ``L(eta)`` on the second moment of the unit-level effect; subtracting
    the squared difference-in-means (clamped at zero) bounds the effect
    variance, which enters the variance formula with a minus sign.  The
    eta=0 baseline is always computed so the relative sizes are anchored
    even when the grid omits zero.
    """
    if not isinstance(grid, EtaGrid):
        grid = EtaGrid(tuple(float(v) for v in grid))
    y0, y1 = _scalar_groups(sample, "neyman_bound")
    n, m = y0.shape[0], y1.shape[0]
    total = n + m
    s0_sq = float(y0.var(ddof=1))
    s1_sq = float(y1.var(ddof=1))
    tau_hat = float(y1.mean() - y0.mean())
    conservative = s1_sq / m + s0_sq / n

    def v_at(eta: float) -> tuple[float, float]:
        lower = estimate_bound(sample, sq_diff(), eta, side="lower").value
        s_tau = max(0.0, lower - tau_hat * tau_hat)
        return s_tau, conservative - s_tau / total

    s_tau_base, v_base = v_at(0.0)
    if v_base <= 0:
        raise ZeroVariance(
            f"baseline variance bound {v_base} is not positive; cannot normalize"
        )
    s_tau_lbs, v_estimates, relatives = [], [], []
    for eta in grid:
        s_tau, v_eta = (s_tau_base, v_base) if eta == 0 else v_at(eta)
        s_tau_lbs.append(s_tau)
        v_estimates.append(v_eta)
        relatives.append(v_eta / v_base)
    return NeymanReport(
        etas=grid.values,
        s0_sq=s0_sq,
        s1_sq=s1_sq,
        tau_hat=tau_hat,
        s_tau_lb=tuple(s_tau_lbs),
        v_estimate=tuple(v_estimates),
        relative_sample_size=tuple(relatives),
    )


@dataclass(frozen=True)
class CorrelationReport:
    """PI intervals for the correlation between potential outcomes."""

    etas: tuple[float, ...]
    rho_lower: tuple[float, ...]
    rho_upper: tuple[float, ...]
    mean0: float
    mean1: float
    var0: float
    var1: float
    clamped: bool = False

    def __post_init__(self) -> None:
        for low, high in zip(self.rho_lower, self.rho_upper):
            if low > high + _MONOTONE_SLACK:
                raise ValueError(f"correlation interval inverted: [{low}, {high}]")
        lengths = [h - l for l, h in zip(self.rho_lower, self.rho_upper)]
        if any(b > a + _MONOTONE_SLACK for a, b in zip(lengths, lengths[1:])):
            raise ValueError(f"interval lengths must be non-increasing: {lengths}")

    def as_dict(self) -> dict:
        return {
            "mean0": self.mean0,
            "mean1": self.mean1,
            "var0": self.var0,
            "var1": self.var1,
            "clamped": self.clamped,
            "rows": [
                {"eta": eta, "rho_lower": low, "rho_upper": high}
                for eta, low, high in zip(self.etas, self.rho_lower, self.rho_upper)
            ],
        }

    def format_table(self) -> str:
        header = f"{'eta':>10}  {'rho_lower':>12}  {'rho_upper':>12}  {'length':>10}"
        lines = [header, "-" * len(header)]
        for eta, low, high in zip(self.etas, self.rho_lower, self.rho_upper):
            lines.append(f"{eta:>10g}  {low:>12.6g}  {high:>12.6g}  {high - low:>10.6g}")
        return "\n".join(lines)


def correlation_bound(
    sample: ObservedSample, grid: EtaGrid, clamp: bool = False
) -> CorrelationReport:
    """Bracket the potential-outcome correlation across a penalty grid.

    Both sides of the cross moment ``E[Y(0)Y(1)]`` come from the
    product-cost PI bounds; they are centered with the group means and
    scaled by the group standard deviations (denominator n-1).  Bounds
    are reported raw; ``clamp`` clips them into [-1, 1].
    """
    if not isinstance(grid, EtaGrid):
        grid = EtaGrid(tuple(float(v) for v in grid))
    y0, y1 = _scalar_groups(sample, "correlation_bound")
    mean0, mean1 = float(y0.mean()), float(y1.mean())
    var0 = float(y0.var(ddof=1))
    var1 = float(y1.var(ddof=1))
    if var0 <= 0 or var1 <= 0:
        raise ZeroVariance(
            f"correlation needs positive group variances, got {var0} and {var1}"
        )
    scale = math.sqrt(var0 * var1)
    bounds = sweep(sample, product(), grid)
    rho_low = [(b.lower - mean0 * mean1) / scale for b in bounds]
    rho_high = [(b.upper - mean0 * mean1) / scale for b in bounds]
    if clamp:
        rho_low = [min(max(v, -1.0), 1.0) for v in rho_low]
        rho_high = [min(max(v, -1.0), 1.0) for v in rho_high]
    return CorrelationReport(
        etas=grid.values,
        rho_lower=tuple(rho_low),
        rho_upper=tuple(rho_high),
        mean0=mean0,
        mean1=mean1,
        var0=var0,
        var1=var1,
        clamped=clamp,
    )
