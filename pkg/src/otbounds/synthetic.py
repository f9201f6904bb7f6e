"""Synthetic samples from location/scale models under randomized assignment.

Each unit gets a covariate draw, both potential outcomes, and a treatment
flag from a completely randomized permutation; the observed sample reveals
one outcome per unit.  All draws run through a counter-based generator
keyed by the config seed (covariates, then control noise, then treated
noise, then the assignment), so samples are bit-reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from ._seeding import make_generator
from .gaussian_oracle import GaussianLinearSpec, LocationScaleSpec, PolyMap, sqrt_spd
from .pi_estimator import ObservedSample

__all__ = ["SynthConfig", "generate", "preset", "PRESET_NAMES"]

PRESET_NAMES = ("linear-location", "quadratic-location", "scale")


def preset(name: str) -> LocationScaleSpec:
    """One of the three benchmark models, by name.

    ``linear-location`` adds unit noise to slopes 0.6 and 1.6;
    ``quadratic-location`` curves the covariate with weights 0.2 and 0.6;
    ``scale`` multiplies unit noise by affine maps 0.5z - 0.35 and
    1.1z + 0.35.  All use scalar standard normal covariates.
    """
    if name == "linear-location":
        return LocationScaleSpec(
            kind="location",
            f0=PolyMap([0.0], [[0.6]]),
            f1=PolyMap([0.0], [[1.6]]),
            sigma0=[[1.0]],
            sigma1=[[1.0]],
            z_dim=1,
        )
    if name == "quadratic-location":
        return LocationScaleSpec(
            kind="location",
            f0=PolyMap([0.0], [[0.0]], [[0.2]]),
            f1=PolyMap([0.0], [[0.0]], [[0.6]]),
            sigma0=[[1.0]],
            sigma1=[[1.0]],
            z_dim=1,
        )
    if name == "scale":
        return LocationScaleSpec(
            kind="scale",
            f0=PolyMap([-0.35], [[0.5]]),
            f1=PolyMap([0.35], [[1.1]]),
            sigma0=[[1.0]],
            sigma1=[[1.0]],
            z_dim=1,
        )
    raise ValueError(f"unknown preset {name!r}; choose from {PRESET_NAMES}")


@dataclass(frozen=True)
class SynthConfig:
    """A model plus group sizes and the seed that fixes every draw."""

    model: Union[LocationScaleSpec, GaussianLinearSpec]
    n: int
    m: int
    seed: int

    def __post_init__(self) -> None:
        if not isinstance(self.model, (LocationScaleSpec, GaussianLinearSpec)):
            raise TypeError(f"unsupported model type {type(self.model).__name__}")
        if self.n < 1 or self.m < 1:
            raise ValueError(f"group sizes must be at least 1, got n={self.n}, m={self.m}")


def _draw_potentials(
    model: LocationScaleSpec, count: int, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Covariates and both potential outcomes for ``count`` units."""
    z = model.draw_z(rng, count)
    # PSD square roots instead of Cholesky so singular noise is allowed
    noise0 = rng.standard_normal((count, model.y_dim)) @ sqrt_spd(model.sigma0, method="eigh")
    noise1 = rng.standard_normal((count, model.y_dim)) @ sqrt_spd(model.sigma1, method="eigh")
    loc0 = model.f0.evaluate(z)
    loc1 = model.f1.evaluate(z)
    if model.kind == "location":
        return z, loc0 + noise0, loc1 + noise1
    return z, loc0 * noise0, loc1 * noise1


def generate(config: SynthConfig) -> ObservedSample:
    """Draw an observed sample under complete randomization.

    All ``n + m`` units receive covariates and both potential outcomes;
    a uniform random subset of size ``m`` is treated and only the
    corresponding outcome is kept per unit.
    """
    model = config.model
    if isinstance(model, GaussianLinearSpec):
        model = model.as_location_spec()
    total = config.n + config.m
    rng = make_generator(config.seed)
    z, y0_pot, y1_pot = _draw_potentials(model, total, rng)
    w = np.zeros(total, dtype=np.int8)
    w[rng.permutation(total)[: config.m]] = 1
    y_obs = np.where(w[:, None] == 1, y1_pot, y0_pot)
    return ObservedSample(w=w, y=y_obs, z=z)
