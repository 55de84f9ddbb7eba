"""The extended Weibull distribution EW(alpha, lambda, k).

The family tilts a Weibull baseline G(x) = 1 - exp(-(x*lambda)^k) by an
extra parameter alpha:

    F(x) = (1 - exp(-(x*lambda)^k)) / (1 - (1-alpha) * exp(-(x*lambda)^k))

alpha = 1 recovers the Weibull baseline; alpha = k = 1 is exponential with
rate lambda.  All operations are pure, accept scalars or numpy arrays, and
are safe for concurrent use.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = [
    "EwParams",
    "cdf",
    "sf",
    "pdf",
    "hazard",
    "rev_hazard",
    "quantile",
]

# Beyond this value of (x*lambda)^k the survival underflows; tails are
# reported exactly as 0/1 rather than as denormal noise.
_Z_CUTOFF = 700.0


@dataclass(frozen=True)
class EwParams:
    """Tilt alpha, scale lam (1/time) and shape k of one EW marginal.

    alpha > 1 is a valid tilt and accepted everywhere; theorem checkers
    enforce alpha <= 1 separately where a result requires it.
    """

    alpha: float
    lam: float
    k: float

    def __post_init__(self):
        for name in ("alpha", "lam", "k"):
            v = getattr(self, name)
            if not np.isfinite(v) or v <= 0.0:
                raise DomainError(f"EwParams.{name} must be finite and > 0, got {v}")

    @property
    def alpha_bar(self) -> float:
        return 1.0 - self.alpha


def _as_array(x, name: str, minimum: float):
    arr = np.asarray(x, dtype=float)
    if np.any(arr < minimum) or np.any(np.isnan(arr)):
        raise DomainError(f"{name} must be >= {minimum} and not NaN")
    return arr


def _z(p: EwParams, x: np.ndarray) -> np.ndarray:
    """(x*lam)^k evaluated as exp(k*log(x*lam)), guarding x*lam = 0."""
    s = x * p.lam
    with np.errstate(divide="ignore", over="ignore"):
        z = np.where(s > 0.0, np.exp(p.k * np.log(np.where(s > 0.0, s, 1.0))), 0.0)
    return z


def cdf(p: EwParams, x) -> float | np.ndarray:
    """Distribution function; nondecreasing with limits 0 at 0 and 1 at infinity."""
    xa = _as_array(x, "x", 0.0)
    z = _z(p, xa)
    E = np.exp(-np.minimum(z, _Z_CUTOFF))
    out = np.where(z > _Z_CUTOFF, 1.0, -np.expm1(-z) / (1.0 - p.alpha_bar * E))
    return out if out.ndim else float(out)


def sf(p: EwParams, x) -> float | np.ndarray:
    """Survival function alpha*E / (1 - alpha_bar*E) with E = exp(-(x*lam)^k)."""
    xa = _as_array(x, "x", 0.0)
    z = _z(p, xa)
    E = np.exp(-np.minimum(z, _Z_CUTOFF))
    out = np.where(z > _Z_CUTOFF, 0.0, p.alpha * E / (1.0 - p.alpha_bar * E))
    return out if out.ndim else float(out)


def pdf(p: EwParams, x) -> float | np.ndarray:
    """Density alpha*k*lam*(x*lam)^(k-1)*E / (1 - alpha_bar*E)^2.

    At x = 0 the value is the (possibly infinite) limit: +inf for k < 1,
    lam/alpha for k = 1 and 0 for k > 1.  Never NaN.
    """
    xa = _as_array(x, "x", 0.0)
    z = _z(p, xa)
    E = np.exp(-np.minimum(z, _Z_CUTOFF))
    s = xa * p.lam
    with np.errstate(divide="ignore", over="ignore"):
        pow_km1 = np.where(s > 0.0, np.exp((p.k - 1.0) * np.log(np.where(s > 0.0, s, 1.0))), np.nan)
    body = p.alpha * p.k * p.lam * pow_km1 * E / (1.0 - p.alpha_bar * E) ** 2
    if p.k < 1.0:
        at0 = np.inf
    elif p.k == 1.0:
        at0 = p.lam / p.alpha
    else:
        at0 = 0.0
    out = np.where(s > 0.0, body, at0)
    return out if out.ndim else float(out)


def hazard(p: EwParams, x) -> float | np.ndarray:
    """Hazard rate pdf/sf = k*lam*(lam*x)^(k-1) / (1 - alpha_bar*exp(-(lam*x)^k))."""
    xa = _as_array(x, "x", 0.0)
    z = _z(p, xa)
    E = np.exp(-np.minimum(z, _Z_CUTOFF))
    s = xa * p.lam
    with np.errstate(divide="ignore", over="ignore"):
        pow_km1 = np.where(s > 0.0, np.exp((p.k - 1.0) * np.log(np.where(s > 0.0, s, 1.0))), np.nan)
    body = p.k * p.lam * pow_km1 / (1.0 - p.alpha_bar * E)
    if p.k < 1.0:
        at0 = np.inf
    elif p.k == 1.0:
        at0 = p.lam / p.alpha
    else:
        at0 = 0.0
    out = np.where(s > 0.0, body, at0)
    return out if out.ndim else float(out)


def rev_hazard(p: EwParams, x) -> float | np.ndarray:
    """Reversed hazard rate pdf/cdf; diverges as x -> 0+."""
    xa = _as_array(x, "x", 0.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(xa > 0.0, pdf(p, xa) / cdf(p, np.maximum(xa, 1e-320)), np.inf)
    return out if out.ndim else float(out)


def quantile(p: EwParams, u) -> float | np.ndarray:
    """Inverse of the cdf: (1/lam) * (-log((1-u)/(1-alpha_bar*u)))^(1/k).

    Defined for 0 <= u < 1; cdf(quantile(u)) = u to ~1e-12.
    """
    ua = np.asarray(u, dtype=float)
    if np.any(ua < 0.0) or np.any(ua >= 1.0) or np.any(np.isnan(ua)):
        raise DomainError("quantile requires 0 <= u < 1")
    E = (1.0 - ua) / (1.0 - p.alpha_bar * ua)
    with np.errstate(divide="ignore"):
        z = -np.log(E)
    out = np.where(ua > 0.0, np.exp(np.log(np.where(z > 0.0, z, 1.0)) / p.k) / p.lam, 0.0)
    return out if out.ndim else float(out)
