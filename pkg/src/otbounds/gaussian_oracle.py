"""Closed-form bound values for Gaussian models.

For the linear model ``Y(k) = beta_k Z + noise_k`` with standard normal
covariates, the unconditional bound, the conditional bound, and the whole
penalized interpolation curve ``v_ip(eta)`` have explicit expressions for
the squared-sum cost ``h = ||y0 + y1||^2``.  These are the ground truths
the discrete estimator is validated against.

The building blocks are symmetric PSD square roots, the Gaussian optimal
transport cross term ``S(A, B) = Tr(A + B - 2(A^{1/2} B A^{1/2})^{1/2})``,
and the linear transport map between centered Gaussians.  Location and
scale mixture models get their conditional bound by integrating the
per-covariate cross term over the covariate law by Monte Carlo.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from ._seeding import make_generator
from .errors import (
    DimensionMismatch,
    EtaNegative,
    IndefiniteInput,
    NonFiniteInput,
    NonScalarSpec,
    NotSymmetric,
    SingularSigma0,
)

__all__ = [
    "sqrt_spd",
    "bures_term",
    "gaussian_ot_map",
    "GaussianLinearSpec",
    "PolyMap",
    "LocationScaleSpec",
    "McEstimate",
    "v_u_closed",
    "v_c_closed",
    "v_ip_closed",
    "v_u_general",
    "v_ip_general",
    "v_c_location_scale",
    "location_vc_exact",
]

_SYM_TOL = 1e-10
_EIG_TOL = -1e-10
_SINGULAR_TOL = 1e-12


def _as_square(mat, name: str) -> np.ndarray:
    out = np.atleast_2d(np.asarray(mat, dtype=np.float64))
    if out.ndim != 2 or out.shape[0] != out.shape[1]:
        raise DimensionMismatch(f"{name} must be square, got shape {out.shape}")
    if not np.all(np.isfinite(out)):
        raise NonFiniteInput(f"{name} contains NaN or infinite values")
    return out


def _check_symmetric(mat: np.ndarray, name: str) -> np.ndarray:
    dev = np.abs(mat - mat.T).max() if mat.size else 0.0
    if dev > _SYM_TOL * max(1.0, np.abs(mat).max()):
        raise NotSymmetric(f"{name} deviates from symmetry by {dev:.3e}")
    return 0.5 * (mat + mat.T)


def _sqrt_2x2(b: np.ndarray) -> np.ndarray:
    # B^{1/2} = (B + sqrt(det B) I) / sqrt(Tr B + 2 sqrt(det B)) for PSD B
    tr = b[0, 0] + b[1, 1]
    det = b[0, 0] * b[1, 1] - b[0, 1] * b[1, 0]
    disc = max(tr * tr - 4.0 * det, 0.0)
    eig_min = 0.5 * (tr - math.sqrt(disc))
    if eig_min < _EIG_TOL:
        raise IndefiniteInput(f"2x2 input has eigenvalue {eig_min:.3e}")
    root_det = math.sqrt(max(det, 0.0))
    denom_sq = tr + 2.0 * root_det
    if denom_sq <= 0.0:
        return np.zeros((2, 2))
    return (b + root_det * np.eye(2)) / math.sqrt(denom_sq)


def _sqrt_eigh(b: np.ndarray, name: str) -> np.ndarray:
    eigvals, eigvecs = np.linalg.eigh(b)
    if eigvals.min() < _EIG_TOL:
        raise IndefiniteInput(
            f"{name} has eigenvalue {eigvals.min():.3e} below tolerance"
        )
    eigvals = np.clip(eigvals, 0.0, None)
    return (eigvecs * np.sqrt(eigvals)) @ eigvecs.T


def sqrt_spd(b, method: str = "auto") -> np.ndarray:
    """Symmetric PSD square root of a symmetric PSD matrix.

    Parameters
    ----------
    b : array_like
        Symmetric matrix (scalars are treated as 1x1) with eigenvalues
        above -1e-10; slightly negative eigenvalues are clamped to zero.
    method : {"auto", "closed2", "eigh"}
        "closed2" uses the rational 2x2 closed form, "eigh" a symmetric
        eigendecomposition; "auto" picks the closed form for 2x2 inputs.

    Returns
    -------
    numpy.ndarray
        Symmetric PSD ``S`` with ``S @ S`` equal to ``b`` up to clamping.
    """
    mat = _check_symmetric(_as_square(b, "input"), "input")
    dim = mat.shape[0]
    if method == "auto":
        method = "closed2" if dim == 2 else "eigh"
    if method == "closed2":
        if dim != 2:
            raise ValueError(f"closed2 requires a 2x2 matrix, got {dim}x{dim}")
        return _sqrt_2x2(mat)
    if method == "eigh":
        if dim == 1:
            val = mat[0, 0]
            if val < _EIG_TOL:
                raise IndefiniteInput(f"1x1 input is negative: {val:.3e}")
            return np.array([[math.sqrt(max(val, 0.0))]])
        return _sqrt_eigh(mat, "input")
    raise ValueError(f"unknown method {method!r}")


def bures_term(sigma0, sigma1) -> float:
    """Gaussian transport discrepancy ``Tr(A + B - 2 (A^{1/2} B A^{1/2})^{1/2})``.

    Equals the squared 2-Wasserstein distance between centered Gaussians
    with the given covariances.  Symmetric in its arguments and zero when
    they coincide.  Accepts PSD inputs (scalars treated as 1x1).
    """
    s0 = _check_symmetric(_as_square(sigma0, "sigma0"), "sigma0")
    s1 = _check_symmetric(_as_square(sigma1, "sigma1"), "sigma1")
    if s0.shape != s1.shape:
        raise DimensionMismatch(
            f"covariance shapes differ: {s0.shape} vs {s1.shape}"
        )
    root0 = sqrt_spd(s0, method="eigh")
    middle = root0 @ s1 @ root0
    cross = np.trace(sqrt_spd(0.5 * (middle + middle.T), method="eigh"))
    return float(np.trace(s0) + np.trace(s1) - 2.0 * cross)


def _sqrt_and_inv(mat: np.ndarray, name: str) -> tuple[np.ndarray, np.ndarray]:
    eigvals, eigvecs = np.linalg.eigh(mat)
    if eigvals.min() < _SINGULAR_TOL:
        raise SingularSigma0(
            f"{name} has smallest eigenvalue {eigvals.min():.3e}; "
            "need strictly positive definite input"
        )
    roots = np.sqrt(eigvals)
    return (eigvecs * roots) @ eigvecs.T, (eigvecs / roots) @ eigvecs.T


def gaussian_ot_map(sigma0, sigma1) -> np.ndarray:
    """Linear map ``A`` pushing ``N(0, sigma0)`` onto ``N(0, sigma1)``.

    ``A = sigma0^{-1/2} (sigma0^{1/2} sigma1 sigma0^{1/2})^{1/2}
    sigma0^{-1/2}``; it is symmetric PSD and satisfies
    ``A sigma0 A = sigma1``.
    """
    s0 = _check_symmetric(_as_square(sigma0, "sigma0"), "sigma0")
    s1 = _check_symmetric(_as_square(sigma1, "sigma1"), "sigma1")
    if s0.shape != s1.shape:
        raise DimensionMismatch(
            f"covariance shapes differ: {s0.shape} vs {s1.shape}"
        )
    root0, inv_root0 = _sqrt_and_inv(s0, "sigma0")
    middle = root0 @ s1 @ root0
    mid_root = sqrt_spd(0.5 * (middle + middle.T), method="eigh")
    out = inv_root0 @ mid_root @ inv_root0
    return 0.5 * (out + out.T)


def _as_beta(beta, name: str) -> np.ndarray:
    out = np.asarray(beta, dtype=np.float64)
    if out.ndim == 0:
        out = out.reshape(1, 1)
    elif out.ndim == 1:
        # 1-D coefficient vectors mean one outcome over len() covariates
        out = out.reshape(1, -1)
    if out.ndim != 2:
        raise DimensionMismatch(f"{name} must be at most 2-D, got {out.ndim}-D")
    if not np.all(np.isfinite(out)):
        raise NonFiniteInput(f"{name} contains NaN or infinite values")
    return out


def _check_spd(mat: np.ndarray, name: str, *, strict: bool) -> np.ndarray:
    mat = _check_symmetric(mat, name)
    eig_min = float(np.linalg.eigvalsh(mat).min())
    if strict and eig_min < _SINGULAR_TOL:
        raise IndefiniteInput(
            f"{name} must be positive definite; smallest eigenvalue {eig_min:.3e}"
        )
    if not strict and eig_min < _EIG_TOL:
        raise IndefiniteInput(
            f"{name} must be positive semidefinite; smallest eigenvalue {eig_min:.3e}"
        )
    return mat


@dataclass(frozen=True)
class GaussianLinearSpec:
    """Linear Gaussian model ``Y(k) = beta_k Z + eps_k``, ``Z ~ N(0, I)``.

    ``beta0`` and ``beta1`` are dY x dZ coefficient matrices (scalars and
    1-D vectors are promoted); ``sigma0`` and ``sigma1`` are the dY x dY
    noise covariances, so the scalar case stores noise variances.
    """

    beta0: np.ndarray
    beta1: np.ndarray
    sigma0: np.ndarray
    sigma1: np.ndarray

    def __post_init__(self) -> None:
        beta0 = _as_beta(self.beta0, "beta0")
        beta1 = _as_beta(self.beta1, "beta1")
        if beta0.shape != beta1.shape:
            raise DimensionMismatch(
                f"beta shapes differ: {beta0.shape} vs {beta1.shape}"
            )
        d_y = beta0.shape[0]
        sigma0 = _check_spd(_as_square(self.sigma0, "sigma0"), "sigma0", strict=True)
        sigma1 = _check_spd(_as_square(self.sigma1, "sigma1"), "sigma1", strict=True)
        for name, mat in (("sigma0", sigma0), ("sigma1", sigma1)):
            if mat.shape[0] != d_y:
                raise DimensionMismatch(
                    f"{name} is {mat.shape[0]}x{mat.shape[0]} but outcomes "
                    f"have dimension {d_y}"
                )
        object.__setattr__(self, "beta0", beta0)
        object.__setattr__(self, "beta1", beta1)
        object.__setattr__(self, "sigma0", sigma0)
        object.__setattr__(self, "sigma1", sigma1)

    @classmethod
    def from_scalar(
        cls, beta0: float, beta1: float, sd0: float = 1.0, sd1: float = 1.0
    ) -> "GaussianLinearSpec":
        """One-dimensional spec from slopes and noise standard deviations."""
        return cls(beta0, beta1, sd0 * sd0, sd1 * sd1)

    @classmethod
    def from_json(cls, path: str) -> "GaussianLinearSpec":
        """Load ``{"beta0": .., "beta1": .., "sigma0": .., "sigma1": ..}``."""
        with open(path, encoding="utf-8") as fh:
            payload = json.load(fh)
        missing = {"beta0", "beta1", "sigma0", "sigma1"} - payload.keys()
        if missing:
            raise ValueError(f"model file {path} lacks fields: {sorted(missing)}")
        return cls(payload["beta0"], payload["beta1"], payload["sigma0"], payload["sigma1"])

    @property
    def y_dim(self) -> int:
        return self.beta0.shape[0]

    @property
    def z_dim(self) -> int:
        return self.beta0.shape[1]

    @property
    def is_scalar(self) -> bool:
        return self.y_dim == 1 and self.z_dim == 1

    def marginal_cov(self, arm: int) -> np.ndarray:
        """Covariance of the arm's outcome: ``beta beta' + sigma``."""
        beta = self.beta1 if arm else self.beta0
        sigma = self.sigma1 if arm else self.sigma0
        return beta @ beta.T + sigma

    def as_location_spec(self) -> "LocationScaleSpec":
        """The same model viewed as an additive-noise location family."""
        d_y, d_z = self.beta0.shape
        return LocationScaleSpec(
            kind="location",
            f0=PolyMap(np.zeros(d_y), self.beta0),
            f1=PolyMap(np.zeros(d_y), self.beta1),
            sigma0=self.sigma0,
            sigma1=self.sigma1,
            z_dim=d_z,
        )


def _scalar_params(spec: GaussianLinearSpec, op: str) -> tuple[float, float, float, float]:
    if not spec.is_scalar:
        raise NonScalarSpec(
            f"{op} has a closed form only for scalar outcome and covariate; "
            f"got dY={spec.y_dim}, dZ={spec.z_dim}"
        )
    return (
        float(spec.beta0[0, 0]),
        float(spec.beta1[0, 0]),
        math.sqrt(float(spec.sigma0[0, 0])),
        math.sqrt(float(spec.sigma1[0, 0])),
    )


def v_u_closed(spec: GaussianLinearSpec) -> float:
    """Unconditional lower bound for the squared-sum cost, scalar model."""
    b0, b1, s0, s1 = _scalar_params(spec, "v_u_closed")
    return (math.sqrt(b0 * b0 + s0 * s0) - math.sqrt(b1 * b1 + s1 * s1)) ** 2


def v_c_closed(spec: GaussianLinearSpec) -> float:
    """Covariate-conditional lower bound, scalar model."""
    b0, b1, s0, s1 = _scalar_params(spec, "v_c_closed")
    return (b0 + b1) ** 2 + (s0 - s1) ** 2


def v_ip_closed(spec: GaussianLinearSpec, eta: float) -> float:
    """Penalized lower bound ``v_ip(eta)``, scalar model.

    Interpolates between the unconditional bound at ``eta=0`` and the
    conditional bound as ``eta`` grows; non-decreasing in ``eta``.
    """
    if eta < 0:
        raise EtaNegative(f"eta must be nonnegative, got {eta}")
    b0, b1, s0, s1 = _scalar_params(spec, "v_ip_closed")
    var0 = b0 * b0 + s0 * s0
    var1 = b1 * b1 + s1 * s1
    prod = var0 * var1
    cross = s0 * s1 - b0 * b1
    numer = 2.0 * (prod + eta * cross)
    denom = math.sqrt(prod + 2.0 * eta * cross + eta * eta)
    return var0 + var1 - numer / denom


def v_u_general(spec: GaussianLinearSpec) -> float:
    """Unconditional lower bound for any dY, dZ via the Gaussian cross term."""
    return bures_term(spec.marginal_cov(0), spec.marginal_cov(1))


def v_ip_general(spec: GaussianLinearSpec, eta: float) -> float:
    """Penalized lower bound for any dY, dZ.

    Lifts each arm to the joint covariance of ``(Y(k), sqrt(eta) Z)`` (with
    the sign of the treated outcome flipped, matching the squared-sum
    cost), computes the optimal Gaussian coupling of the lifted pair, and
    reads off the outcome-block expectation with the penalty stripped.
    """
    if eta < 0:
        raise EtaNegative(f"eta must be nonnegative, got {eta}")
    cov0 = spec.marginal_cov(0)
    cov1 = spec.marginal_cov(1)
    if eta == 0:
        # the lifted covariances are singular at eta=0; the penalty-free
        # problem is plain Gaussian OT between the outcome marginals
        return bures_term(cov0, cov1)
    d_y, d_z = spec.beta0.shape
    root_eta = math.sqrt(eta)
    eye_z = eta * np.eye(d_z)
    lifted0 = np.block([[cov0, root_eta * spec.beta0],
                        [root_eta * spec.beta0.T, eye_z]])
    lifted1 = np.block([[cov1, -root_eta * spec.beta1],
                        [-root_eta * spec.beta1.T, eye_z]])
    root0, inv_root0 = _sqrt_and_inv(0.5 * (lifted0 + lifted0.T), "lifted covariance")
    middle = root0 @ lifted1 @ root0
    mid_root = sqrt_spd(0.5 * (middle + middle.T), method="eigh")
    coupling = root0 @ mid_root @ inv_root0
    cross = float(np.trace(coupling[:d_y, :d_y]))
    return float(np.trace(cov0) + np.trace(cov1)) - 2.0 * cross


@dataclass(frozen=True)
class PolyMap:
    """Coordinate-wise quadratic covariate map ``a + L z + Q (z*z)``.

    ``intercept`` has shape (dY,), ``linear`` and ``quad`` shape (dY, dZ);
    ``quad`` acts on the elementwise square of ``z`` and defaults to zero.
    """

    intercept: np.ndarray
    linear: np.ndarray
    quad: Optional[np.ndarray] = None

    def __post_init__(self) -> None:
        intercept = np.atleast_1d(np.asarray(self.intercept, dtype=np.float64))
        linear = _as_beta(self.linear, "linear")
        if intercept.ndim != 1 or intercept.shape[0] != linear.shape[0]:
            raise DimensionMismatch(
                f"intercept shape {intercept.shape} does not match linear "
                f"block {linear.shape}"
            )
        quad = self.quad
        quad = np.zeros_like(linear) if quad is None else _as_beta(quad, "quad")
        if quad.shape != linear.shape:
            raise DimensionMismatch(
                f"quad shape {quad.shape} does not match linear block {linear.shape}"
            )
        if not np.all(np.isfinite(intercept)):
            raise NonFiniteInput("intercept contains NaN or infinite values")
        object.__setattr__(self, "intercept", intercept)
        object.__setattr__(self, "linear", linear)
        object.__setattr__(self, "quad", quad)

    @property
    def y_dim(self) -> int:
        return self.linear.shape[0]

    @property
    def z_dim(self) -> int:
        return self.linear.shape[1]

    @property
    def is_linear(self) -> bool:
        return not self.quad.any()

    def evaluate(self, z: np.ndarray) -> np.ndarray:
        """Map covariate rows (k, dZ) to outcome locations (k, dY)."""
        z = np.atleast_2d(np.asarray(z, dtype=np.float64))
        if z.shape[1] != self.z_dim:
            raise DimensionMismatch(
                f"covariates have dimension {z.shape[1]}, map expects {self.z_dim}"
            )
        return self.intercept[None, :] + z @ self.linear.T + (z * z) @ self.quad.T

    @classmethod
    def from_dict(cls, payload: dict) -> "PolyMap":
        if "linear" not in payload:
            raise ValueError("covariate map needs a 'linear' coefficient block")
        linear = _as_beta(payload["linear"], "linear")
        intercept = payload.get("intercept", np.zeros(linear.shape[0]))
        return cls(intercept, linear, payload.get("quad"))


@dataclass(frozen=True)
class LocationScaleSpec:
    """Additive or multiplicative Gaussian-noise model around covariate maps.

    ``kind="location"`` draws ``Y(k) = f_k(Z) + eps_k``; ``kind="scale"``
    draws ``Y(k) = f_k(Z) * eps_k`` elementwise.  Noise covariances may be
    singular.  ``Z`` is normal with covariance ``z_cov`` (identity when
    omitted).
    """

    kind: str
    f0: PolyMap
    f1: PolyMap
    sigma0: np.ndarray
    sigma1: np.ndarray
    z_dim: int
    z_cov: Optional[np.ndarray] = None

    def __post_init__(self) -> None:
        if self.kind not in ("location", "scale"):
            raise ValueError(f"kind must be 'location' or 'scale', got {self.kind!r}")
        if self.f0.linear.shape != self.f1.linear.shape:
            raise DimensionMismatch(
                f"map shapes differ: {self.f0.linear.shape} vs {self.f1.linear.shape}"
            )
        if self.f0.z_dim != self.z_dim:
            raise DimensionMismatch(
                f"maps expect dZ={self.f0.z_dim} but spec declares z_dim={self.z_dim}"
            )
        d_y = self.f0.y_dim
        sigma0 = _check_spd(_as_square(self.sigma0, "sigma0"), "sigma0", strict=False)
        sigma1 = _check_spd(_as_square(self.sigma1, "sigma1"), "sigma1", strict=False)
        for name, mat in (("sigma0", sigma0), ("sigma1", sigma1)):
            if mat.shape[0] != d_y:
                raise DimensionMismatch(
                    f"{name} is {mat.shape[0]}x{mat.shape[0]} but outcomes "
                    f"have dimension {d_y}"
                )
        z_cov = self.z_cov
        if z_cov is not None:
            z_cov = _check_spd(_as_square(z_cov, "z_cov"), "z_cov", strict=False)
            if z_cov.shape[0] != self.z_dim:
                raise DimensionMismatch(
                    f"z_cov is {z_cov.shape[0]}x{z_cov.shape[0]} but z_dim={self.z_dim}"
                )
        object.__setattr__(self, "sigma0", sigma0)
        object.__setattr__(self, "sigma1", sigma1)
        object.__setattr__(self, "z_cov", z_cov)

    @property
    def y_dim(self) -> int:
        return self.f0.y_dim

    @classmethod
    def from_json(cls, path: str) -> "LocationScaleSpec":
        """Load a spec from a JSON file.

        Schema: ``{"kind": "location"|"scale", "f0": {"intercept": [...],
        "linear": [[...]], "quad": [[...]]}, "f1": {...}, "sigma0": [[...]],
        "sigma1": [[...]], "z_dim": int (optional, inferred from the maps),
        "z_cov": [[...]] (optional)}``.
        """
        with open(path, encoding="utf-8") as fh:
            payload = json.load(fh)
        missing = {"kind", "f0", "f1", "sigma0", "sigma1"} - payload.keys()
        if missing:
            raise ValueError(f"model file {path} lacks fields: {sorted(missing)}")
        f0 = PolyMap.from_dict(payload["f0"])
        return cls(
            kind=payload["kind"],
            f0=f0,
            f1=PolyMap.from_dict(payload["f1"]),
            sigma0=payload["sigma0"],
            sigma1=payload["sigma1"],
            z_dim=int(payload.get("z_dim", f0.z_dim)),
            z_cov=payload.get("z_cov"),
        )

    def draw_z(self, rng: np.random.Generator, count: int) -> np.ndarray:
        """Sample covariate rows from the spec's normal law."""
        z = rng.standard_normal((count, self.z_dim))
        if self.z_cov is not None:
            z = z @ np.linalg.cholesky(self.z_cov).T
        return z


class McEstimate(NamedTuple):
    """A Monte Carlo value with its standard error and draw count."""

    value: float
    stderr: float
    draws: int


def v_c_location_scale(spec: LocationScaleSpec, mc_draws: int, seed: int) -> McEstimate:
    """Covariate-conditional lower bound for location/scale models.

    The per-covariate conditional problem is solved in closed form (the
    Gaussian cross term between the two conditional laws) and the outer
    covariate expectation is taken by Monte Carlo with ``mc_draws`` draws.

    Parameters
    ----------
    spec : LocationScaleSpec
        Model whose conditional bound is wanted (squared-sum cost).
    mc_draws : int
        Number of covariate draws; the estimate is deterministic in seed.
    seed : int
        64-bit stream key.

    Returns
    -------
    McEstimate
        Estimate, Monte Carlo standard error, and the draw count.
    """
    if mc_draws < 1:
        raise ValueError(f"mc_draws must be at least 1, got {mc_draws}")
    rng = make_generator(seed)
    z = spec.draw_z(rng, mc_draws)
    f0 = spec.f0.evaluate(z)
    f1 = spec.f1.evaluate(z)
    if spec.kind == "location":
        # conditional laws share covariances, so the cross term is constant
        per_draw = ((f0 + f1) ** 2).sum(axis=1)
        base = bures_term(spec.sigma0, spec.sigma1)
    else:
        if spec.y_dim == 1:
            sd0 = math.sqrt(float(spec.sigma0[0, 0]))
            sd1 = math.sqrt(float(spec.sigma1[0, 0]))
            # 1-D cross term in closed form: (|f0| sd0 - |f1| sd1)^2
            per_draw = (np.abs(f0[:, 0]) * sd0 - np.abs(f1[:, 0]) * sd1) ** 2
        else:
            per_draw = np.empty(mc_draws)
            for i in range(mc_draws):
                d0 = f0[i][:, None] * spec.sigma0 * f0[i][None, :]
                d1 = f1[i][:, None] * spec.sigma1 * f1[i][None, :]
                per_draw[i] = bures_term(d0, d1)
        base = 0.0
    value = float(per_draw.mean()) + base
    stderr = float(per_draw.std(ddof=1) / math.sqrt(mc_draws)) if mc_draws > 1 else 0.0
    return McEstimate(value, stderr, mc_draws)


def location_vc_exact(spec: LocationScaleSpec) -> float:
    """Exact conditional bound for linear location maps under normal Z.

    ``E||f0(Z) + f1(Z)||^2`` is a quadratic Gaussian expectation with a
    closed form when both maps are linear; quadratic terms need the Monte
    Carlo path.
    """
    if spec.kind != "location":
        raise ValueError("exact value available for location models only")
    if not (spec.f0.is_linear and spec.f1.is_linear):
        raise ValueError("exact value available for linear maps only")
    z_cov = np.eye(spec.z_dim) if spec.z_cov is None else spec.z_cov
    shift = spec.f0.intercept + spec.f1.intercept
    slope = spec.f0.linear + spec.f1.linear
    quad_mean = float(shift @ shift + np.trace(slope @ z_cov @ slope.T))
    return quad_mean + bures_term(spec.sigma0, spec.sigma1)
