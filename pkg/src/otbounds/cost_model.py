"""Outcome cost functions and the covariate-penalized cost matrix.

A cost spec is either a :class:`QuadraticCost` (block matrices A11, A12,
A22 encoding ``h(y0, y1) = y0'A11 y0 + 2 y0'A12 y1 + y1'A22 y1``) or an
opaque callable ``h(y0, y1) -> float``.  Quadratic specs vectorize to full
cost matrices; opaque ones are evaluated pairwise and are excluded from the
rate diagnostics, which need the block structure.

:func:`build_mirror_matrix` assembles ``H[j, k] = h(y0_j, y1_k) +
eta * ||z0_j - z1_k||^2``, the penalized cost that couples each group's
covariates to a mirror copy on the other side.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .errors import DimensionMismatch, NonFiniteInput

__all__ = [
    "QuadraticCost",
    "OpaqueCost",
    "CostSpec",
    "EtaGrid",
    "sq_sum",
    "sq_diff",
    "product",
    "eval_cost",
    "negate",
    "cost_matrix",
    "penalty_matrix",
    "build_mirror_matrix",
    "standardize_pooled",
]

_SYM_TOL = 1e-12


def _as_block(a, name: str, dim: int | None) -> np.ndarray:
    block = np.atleast_2d(np.asarray(a, dtype=np.float64))
    if block.ndim != 2 or block.shape[0] != block.shape[1]:
        raise DimensionMismatch(f"{name} must be square, got shape {block.shape}")
    if dim is not None and block.shape[0] != dim:
        raise DimensionMismatch(
            f"{name} has dimension {block.shape[0]}, expected {dim}"
        )
    return block


@dataclass(frozen=True)
class QuadraticCost:
    """Quadratic outcome cost ``[y0; y1]' A [y0; y1]`` in block form.

    ``a11`` and ``a22`` must be symmetric; ``a12`` is the off-diagonal
    block, entering the form with a factor of two.
    """

    a11: np.ndarray
    a12: np.ndarray
    a22: np.ndarray

    def __post_init__(self) -> None:
        a11 = _as_block(self.a11, "a11", None)
        dim = a11.shape[0]
        a12 = _as_block(self.a12, "a12", dim)
        a22 = _as_block(self.a22, "a22", dim)
        for name, block in (("a11", a11), ("a22", a22)):
            if np.abs(block - block.T).max() > _SYM_TOL:
                raise DimensionMismatch(f"{name} must be symmetric within {_SYM_TOL}")
        object.__setattr__(self, "a11", a11)
        object.__setattr__(self, "a12", a12)
        object.__setattr__(self, "a22", a22)

    @property
    def dim(self) -> int:
        return self.a11.shape[0]

    @classmethod
    def from_json(cls, path: str) -> "QuadraticCost":
        """Load blocks from ``{"a11": [[..]], "a12": [[..]], "a22": [[..]]}``."""
        with open(path, encoding="utf-8") as fh:
            payload = json.load(fh)
        missing = {"a11", "a12", "a22"} - payload.keys()
        if missing:
            raise DimensionMismatch(
                f"quadratic cost file {path} lacks blocks: {sorted(missing)}"
            )
        return cls(payload["a11"], payload["a12"], payload["a22"])


@dataclass(frozen=True)
class OpaqueCost:
    """Arbitrary user cost ``h(y0, y1) -> float``, evaluated pointwise."""

    fn: Callable[[np.ndarray, np.ndarray], float]


CostSpec = Union[QuadraticCost, OpaqueCost]


def sq_sum(dim: int = 1) -> QuadraticCost:
    """``h = ||y0 + y1||^2``: the second moment of a sum."""
    eye = np.eye(dim)
    return QuadraticCost(eye, eye, eye)


def sq_diff(dim: int = 1) -> QuadraticCost:
    """``h = ||y0 - y1||^2``: the second moment of a treatment effect."""
    eye = np.eye(dim)
    return QuadraticCost(eye, -eye, eye)


def product(dim: int = 1) -> QuadraticCost:
    """``h = y0 . y1``: the cross moment behind covariance bounds."""
    zero = np.zeros((dim, dim))
    return QuadraticCost(zero, np.eye(dim) / 2.0, zero)


def eval_cost(spec: CostSpec, y0, y1) -> float:
    """Evaluate ``h(y0, y1)`` for a single pair of outcome vectors."""
    y0 = np.atleast_1d(np.asarray(y0, dtype=np.float64))
    y1 = np.atleast_1d(np.asarray(y1, dtype=np.float64))
    if y0.shape != y1.shape or y0.ndim != 1:
        raise DimensionMismatch(
            f"outcomes must be equal-length vectors, got {y0.shape} and {y1.shape}"
        )
    if isinstance(spec, QuadraticCost):
        if y0.shape[0] != spec.dim:
            raise DimensionMismatch(
                f"outcome dimension {y0.shape[0]} does not match cost blocks "
                f"of dimension {spec.dim}"
            )
        return float(y0 @ spec.a11 @ y0 + 2.0 * (y0 @ spec.a12 @ y1) + y1 @ spec.a22 @ y1)
    if isinstance(spec, OpaqueCost):
        return float(spec.fn(y0, y1))
    raise TypeError(f"not a cost spec: {spec!r}")


def negate(spec: CostSpec) -> CostSpec:
    """The spec for ``-h``; applying twice returns an equivalent spec."""
    if isinstance(spec, QuadraticCost):
        return QuadraticCost(-spec.a11, -spec.a12, -spec.a22)
    if isinstance(spec, OpaqueCost):
        inner = spec.fn
        return OpaqueCost(lambda y0, y1: -inner(y0, y1))
    raise TypeError(f"not a cost spec: {spec!r}")


def _check_group(y: np.ndarray, z: np.ndarray, label: str) -> tuple[np.ndarray, np.ndarray]:
    y = np.atleast_2d(np.asarray(y, dtype=np.float64))
    z = np.atleast_2d(np.asarray(z, dtype=np.float64))
    if y.shape[0] != z.shape[0]:
        raise DimensionMismatch(
            f"{label}: {y.shape[0]} outcomes but {z.shape[0]} covariate rows"
        )
    if not (np.all(np.isfinite(y)) and np.all(np.isfinite(z))):
        raise NonFiniteInput(f"{label} contains NaN or infinite values")
    return y, z


def cost_matrix(spec: CostSpec, y0: np.ndarray, y1: np.ndarray) -> np.ndarray:
    """Dense ``h`` matrix between two outcome arrays of shape (n|m, dY)."""
    y0 = np.atleast_2d(np.asarray(y0, dtype=np.float64))
    y1 = np.atleast_2d(np.asarray(y1, dtype=np.float64))
    if y0.shape[1] != y1.shape[1]:
        raise DimensionMismatch(
            f"outcome dimensions differ: {y0.shape[1]} vs {y1.shape[1]}"
        )
    if not (np.all(np.isfinite(y0)) and np.all(np.isfinite(y1))):
        raise NonFiniteInput("outcome arrays contain NaN or infinite values")
    if isinstance(spec, QuadraticCost):
        if y0.shape[1] != spec.dim:
            raise DimensionMismatch(
                f"outcome dimension {y0.shape[1]} does not match cost blocks "
                f"of dimension {spec.dim}"
            )
        quad0 = np.einsum("id,de,ie->i", y0, spec.a11, y0)
        quad1 = np.einsum("kd,de,ke->k", y1, spec.a22, y1)
        cross = 2.0 * (y0 @ spec.a12 @ y1.T)
        return quad0[:, None] + cross + quad1[None, :]
    if isinstance(spec, OpaqueCost):
        n, m = y0.shape[0], y1.shape[0]
        out = np.empty((n, m))
        for j in range(n):
            for k in range(m):
                out[j, k] = spec.fn(y0[j], y1[k])
        return out
    raise TypeError(f"not a cost spec: {spec!r}")


def penalty_matrix(z0: np.ndarray, z1: np.ndarray) -> np.ndarray:
    """Squared covariate distances ``||z0_j - z1_k||^2``.

    Accumulated coordinate-wise from explicit differences so entries with
    identical covariates come out exactly zero, which downstream
    monotonicity-in-eta checks rely on.
    """
    z0 = np.atleast_2d(np.asarray(z0, dtype=np.float64))
    z1 = np.atleast_2d(np.asarray(z1, dtype=np.float64))
    if z0.shape[1] != z1.shape[1]:
        raise DimensionMismatch(
            f"covariate dimensions differ: {z0.shape[1]} vs {z1.shape[1]}"
        )
    out = np.zeros((z0.shape[0], z1.shape[0]))
    for d in range(z0.shape[1]):
        diff = z0[:, d, None] - z1[None, :, d]
        out += diff * diff
    return out


def build_mirror_matrix(
    spec: CostSpec,
    eta: float,
    group0: tuple[np.ndarray, np.ndarray],
    group1: tuple[np.ndarray, np.ndarray],
) -> np.ndarray:
    """Penalized cost ``H = h(y0, y1) + eta * ||z0 - z1||^2`` entrywise."""
    if eta < 0:
        raise ValueError(f"eta must be nonnegative, got {eta}")
    y0, z0 = _check_group(*group0, label="group0")
    y1, z1 = _check_group(*group1, label="group1")
    h_mat = cost_matrix(spec, y0, y1)
    if eta == 0:
        # still validate covariate shapes for a consistent error surface
        if z0.shape[1] != z1.shape[1]:
            raise DimensionMismatch(
                f"covariate dimensions differ: {z0.shape[1]} vs {z1.shape[1]}"
            )
        return h_mat
    return h_mat + eta * penalty_matrix(z0, z1)


@dataclass(frozen=True)
class EtaGrid:
    """A strictly increasing grid of nonnegative penalty weights."""

    values: tuple[float, ...]

    def __post_init__(self) -> None:
        values = tuple(float(v) for v in self.values)
        if not values:
            raise ValueError("eta grid must be non-empty")
        if any(v < 0 for v in values):
            raise ValueError(f"eta values must be nonnegative, got {values}")
        if any(b <= a for a, b in zip(values, values[1:])):
            raise ValueError(f"eta values must be strictly increasing, got {values}")
        object.__setattr__(self, "values", values)

    def __iter__(self):
        return iter(self.values)

    def __len__(self) -> int:
        return len(self.values)


def standardize_pooled(z0: np.ndarray, z1: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Center and unit-scale covariates using pooled moments.

    The mean and (population) variance are computed on the stacked groups
    per coordinate; coordinates with zero pooled variance are centered but
    left unscaled.
    """
    z0 = np.atleast_2d(np.asarray(z0, dtype=np.float64))
    z1 = np.atleast_2d(np.asarray(z1, dtype=np.float64))
    pooled = np.concatenate([z0, z1], axis=0)
    mean = pooled.mean(axis=0)
    std = pooled.std(axis=0)
    std = np.where(std > 0, std, 1.0)
    return (z0 - mean) / std, (z1 - mean) / std
