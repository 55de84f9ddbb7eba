"""Archimedean generator families, their calculus, and side-condition checkers.

Three families are implemented:

* ``INDEPENDENCE``:    psi(x) = exp(-x),            phi(t) = -log(t)
* ``GUMBEL_VARIANT``:  psi(x) = exp(1 - (1+x)^theta), phi(t) = (1-log t)^(1/theta) - 1
* ``EXP_RECIPROCAL``:  phi(t) = exp(theta/t) - exp(theta), psi(x) = theta/log(x + exp(theta))

The Gumbel variant collapses to independence at theta = 1 and is a valid
generator for theta >= 1; theta in (0, 1) is accepted for evaluation but the
generator is flagged, and condition checkers then return INCONCLUSIVE.

The exp-reciprocal family overflows brutally (phi(t) ~ exp(theta/t)), so the
n-variate compositions psi(sum phi(v_i)) and their chain-rule weights are
evaluated in log space; they stay accurate where naive composition hits the
float64 cliff around t < theta/709.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .grids import DEFAULT_CONDITION_GRID, GridSpec
from .verdicts import ConditionVerdict, Status, fails_at, holds, inconclusive

__all__ = [
    "Family",
    "Generator",
    "independence",
    "gumbel_variant",
    "exp_reciprocal",
    "check_superadditive",
    "check_log_concave_psi",
    "check_phi_condition",
    "check_psi_ratio",
    "check_star_condition_max",
    "check_star_condition_min",
]

_TOL = 1e-9
_PHI_CLIP = 1e-300  # lower clamp on phi arguments (cdf/sf underflow guard)
_BIG = 1e300


class Family(enum.Enum):
    INDEPENDENCE = "independence"
    GUMBEL_VARIANT = "gumbel_variant"
    EXP_RECIPROCAL = "exp_reciprocal"


@dataclass(frozen=True)
class Generator:
    """One Archimedean generator: psi, phi = psi^(-1) and their derivatives."""

    family: Family
    theta: float = float("nan")

    def __post_init__(self):
        if self.family is not Family.INDEPENDENCE:
            if not np.isfinite(self.theta) or self.theta <= 0.0:
                raise DomainError(f"{self.family.value} requires theta > 0, got {self.theta}")

    @property
    def valid_generator(self) -> bool:
        """False for parameter choices outside the family's validity range."""
        if self.family is Family.GUMBEL_VARIANT:
            return self.theta >= 1.0
        return True

    def label(self) -> str:
        if self.family is Family.INDEPENDENCE:
            return "independence"
        return f"{self.family.value}(theta={self.theta:g})"

    # -- pointwise generator calculus -------------------------------------

    def psi(self, x) -> float | np.ndarray:
        xa = np.asarray(x, dtype=float)
        if np.any(xa < 0.0):
            raise DomainError("psi requires x >= 0")
        with np.errstate(over="ignore"):
            if self.family is Family.INDEPENDENCE:
                out = np.exp(-xa)
            elif self.family is Family.GUMBEL_VARIANT:
                out = np.exp(1.0 - (1.0 + xa) ** self.theta)
            else:
                out = self.theta / np.log(xa + np.exp(self.theta))
        return out if out.ndim else float(out)

    def phi(self, t) -> float | np.ndarray:
        ta = np.asarray(t, dtype=float)
        if np.any(ta <= 0.0) or np.any(ta > 1.0):
            raise DomainError("phi requires 0 < t <= 1")
        with np.errstate(over="ignore"):
            if self.family is Family.INDEPENDENCE:
                out = -np.log(ta)
            elif self.family is Family.GUMBEL_VARIANT:
                out = (1.0 - np.log(ta)) ** (1.0 / self.theta) - 1.0
            else:
                out = np.exp(self.theta / ta) - np.exp(self.theta)
        return out if out.ndim else float(out)

    def psi_d1(self, x) -> float | np.ndarray:
        xa = np.asarray(x, dtype=float)
        if np.any(xa < 0.0):
            raise DomainError("psi_d1 requires x >= 0")
        with np.errstate(over="ignore"):
            if self.family is Family.INDEPENDENCE:
                out = -np.exp(-xa)
            elif self.family is Family.GUMBEL_VARIANT:
                th = self.theta
                out = -th * (1.0 + xa) ** (th - 1.0) * np.exp(1.0 - (1.0 + xa) ** th)
            else:
                M = np.exp(self.theta)
                L = np.log(xa + M)
                out = -self.theta / ((xa + M) * L * L)
        return out if out.ndim else float(out)

    def psi_d2(self, x) -> float | np.ndarray:
        xa = np.asarray(x, dtype=float)
        if np.any(xa < 0.0):
            raise DomainError("psi_d2 requires x >= 0")
        with np.errstate(over="ignore"):
            if self.family is Family.INDEPENDENCE:
                out = np.exp(-xa)
            elif self.family is Family.GUMBEL_VARIANT:
                th = self.theta
                u = 1.0 + xa
                out = (th * th * u ** (2.0 * th - 2.0) - th * (th - 1.0) * u ** (th - 2.0)) * np.exp(
                    1.0 - u**th
                )
            else:
                M = np.exp(self.theta)
                L = np.log(xa + M)
                out = self.theta * (L + 2.0) / ((xa + M) ** 2 * L**3)
        return out if out.ndim else float(out)

    def phi_d1(self, t) -> float | np.ndarray:
        ta = np.asarray(t, dtype=float)
        if np.any(ta <= 0.0) or np.any(ta > 1.0):
            raise DomainError("phi_d1 requires 0 < t <= 1")
        with np.errstate(over="ignore"):
            if self.family is Family.INDEPENDENCE:
                out = -1.0 / ta
            elif self.family is Family.GUMBEL_VARIANT:
                u = 1.0 - np.log(ta)
                out = -(u ** (1.0 / self.theta - 1.0)) / (self.theta * ta)
            else:
                out = -(self.theta / ta**2) * np.exp(self.theta / ta)
        return out if out.ndim else float(out)

    def phi_d2(self, t) -> float | np.ndarray:
        ta = np.asarray(t, dtype=float)
        if np.any(ta <= 0.0) or np.any(ta > 1.0):
            raise DomainError("phi_d2 requires 0 < t <= 1")
        with np.errstate(over="ignore"):
            if self.family is Family.INDEPENDENCE:
                out = 1.0 / ta**2
            elif self.family is Family.GUMBEL_VARIANT:
                th = self.theta
                u = 1.0 - np.log(ta)
                out = u ** (1.0 / th - 2.0) * ((1.0 / th - 1.0) + u) / (th * ta * ta)
            else:
                th = self.theta
                out = (th / ta**3) * (2.0 + th / ta) * np.exp(th / ta)
        return out if out.ndim else float(out)

    def phi_d2_over_d1(self, t) -> float | np.ndarray:
        """phi''/phi' in closed form; finite where the raw derivatives overflow."""
        ta = np.asarray(t, dtype=float)
        if np.any(ta <= 0.0) or np.any(ta > 1.0):
            raise DomainError("phi_d2_over_d1 requires 0 < t <= 1")
        if self.family is Family.INDEPENDENCE:
            out = -1.0 / ta
        elif self.family is Family.GUMBEL_VARIANT:
            u = 1.0 - np.log(ta)
            out = -((1.0 / self.theta - 1.0) + u) / (u * ta)
        else:
            out = -(2.0 * ta + self.theta) / ta**2
        return out if out.ndim else float(out)

    def log_psi_curvature(self, x) -> float | np.ndarray:
        """(log psi)'' in closed form (no psi underflow issues)."""
        xa = np.asarray(x, dtype=float)
        if np.any(xa < 0.0):
            raise DomainError("log_psi_curvature requires x >= 0")
        if self.family is Family.INDEPENDENCE:
            out = np.zeros_like(xa)
        elif self.family is Family.GUMBEL_VARIANT:
            th = self.theta
            out = -th * (th - 1.0) * (1.0 + xa) ** (th - 2.0)
        else:
            M = np.exp(self.theta)
            L = np.log(xa + M)
            out = (L + 1.0) / ((xa + M) * L) ** 2
        return out if out.ndim else float(out)

    def psi_over_psi_d1(self, x) -> float | np.ndarray:
        """psi/psi' in closed form (always <= 0)."""
        xa = np.asarray(x, dtype=float)
        if np.any(xa < 0.0):
            raise DomainError("psi_over_psi_d1 requires x >= 0")
        if self.family is Family.INDEPENDENCE:
            out = np.full_like(xa, -1.0)
        elif self.family is Family.GUMBEL_VARIANT:
            out = -1.0 / (self.theta * (1.0 + xa) ** (self.theta - 1.0))
        else:
            M = np.exp(self.theta)
            out = -(xa + M) * np.log(xa + M)
        return out if out.ndim else float(out)

    # -- n-variate diagonal composition ------------------------------------

    def coupled_value(self, values: np.ndarray) -> np.ndarray:
        """psi(sum_i phi(values[i])) along axis 0, evaluated stably.

        ``values`` has shape (n, ...) with entries in [0, 1]; they are
        clamped to [1e-300, 1] so underflown marginals yield the exact tail
        limit instead of NaN.
        """
        V = np.clip(np.asarray(values, dtype=float), _PHI_CLIP, 1.0)
        n = V.shape[0]
        with np.errstate(over="ignore"):
            if self.family is Family.EXP_RECIPROCAL:
                th = self.theta
                a = th / V
                A = np.maximum(a.max(axis=0), th)
                inner = np.exp(a - A).sum(axis=0) - (n - 1) * np.exp(th - A)
                return th / (A + np.log(inner))
            s = self.phi(V).sum(axis=0)
            return np.asarray(self.psi(s))

    def coupled_weights(self, values: np.ndarray) -> np.ndarray:
        """Chain-rule weights psi'(sum phi(v)) * phi'(v_i), shape like values.

        These are the nonnegative-product factors in the density of a coupled
        extreme: d/dx psi(sum phi(F_i(x))) = sum_i w_i * F_i'(x).
        """
        V = np.clip(np.asarray(values, dtype=float), _PHI_CLIP, 1.0)
        n = V.shape[0]
        with np.errstate(over="ignore", invalid="ignore"):
            if self.family is Family.EXP_RECIPROCAL:
                th = self.theta
                a = th / V
                A = np.maximum(a.max(axis=0), th)
                inner = np.exp(a - A).sum(axis=0) - (n - 1) * np.exp(th - A)
                L = A + np.log(inner)
                return th * th * np.exp(a - A) / (V**2 * L**2 * inner)
            if self.family is Family.INDEPENDENCE:
                logs = np.log(V)
                return np.exp(logs.sum(axis=0) - logs)
            th = self.theta
            s = self.phi(V).sum(axis=0)
            u = 1.0 - np.log(V)
            w = (1.0 + s) ** (th - 1.0) * np.exp(1.0 - (1.0 + s) ** th) * u ** (1.0 / th - 1.0) / V
            return np.where(np.isfinite(w), w, 0.0)


def independence() -> Generator:
    return Generator(Family.INDEPENDENCE)


def gumbel_variant(theta: float) -> Generator:
    return Generator(Family.GUMBEL_VARIANT, theta)


def exp_reciprocal(theta: float) -> Generator:
    return Generator(Family.EXP_RECIPROCAL, theta)


# ---------------------------------------------------------------------------
# Condition checkers (theorem side conditions)
# ---------------------------------------------------------------------------


def _flagged(*gens) -> bool:
    return any(not getattr(g, "valid_generator", True) for g in gens)


def check_superadditive(g1, g2, grid: GridSpec | None = None) -> ConditionVerdict:
    """Is f = phi2 o psi1 super-additive, i.e. f(x)+f(y) <= f(x+y)?

    Evaluated through the exactly equivalent copula comparison
    C_{psi1}(u, v) <= C_{psi2}(u, v) with u = psi1(x), v = psi1(y): applying
    the decreasing bijection psi2 to both sides of the super-additivity
    inequality yields the copula form, which stays on the probability scale.
    A direct float test of f(x)+f(y) <= f(x+y) misses violations whose gap
    sits below absolute tolerance at representable arguments (the
    exp-reciprocal family with large theta is the offender).

    The witness reports both the (u, v) pair and the corresponding
    (x, y) = (phi1(u), phi1(v)), clamped to 1e300.
    """
    if _flagged(g1, g2):
        return inconclusive("generator outside validity range")
    grid = grid or DEFAULT_CONDITION_GRID
    m = min(256, grid.points)
    u = GridSpec(points=m, lo_quantile=grid.lo_quantile, hi_quantile=grid.hi_quantile).unit_grid()
    U, V = np.meshgrid(u, u)
    W = np.stack([U.ravel(), V.ravel()])
    c1 = g1.coupled_value(W)
    c2 = g2.coupled_value(W)
    gap = c1 - c2  # super-additivity fails where C1 > C2
    i = int(np.argmax(gap))
    worst = float(gap[i])
    uu, vv = float(W[0, i]), float(W[1, i])
    xy = (float(min(g1.phi(uu), _BIG)), float(min(g1.phi(vv), _BIG)))
    note = f"copula-dominance form; worst at (u,v)=({uu:.6g},{vv:.6g})"
    if worst <= _TOL:
        return holds(witness=xy, margin=-worst, note=note)
    return fails_at(witness=xy, margin=-worst, note=note)


def check_log_concave_psi(g, grid: GridSpec | None = None) -> ConditionVerdict:
    """Is log(psi) concave, i.e. (log psi)'' <= 0 on the generator's domain?"""
    if _flagged(g):
        return inconclusive("generator outside validity range")
    grid = grid or DEFAULT_CONDITION_GRID
    x = grid.positive_grid(1e-6, 40.0)
    if hasattr(g, "log_psi_curvature"):
        val = np.asarray(g.log_psi_curvature(x))
    else:
        p, d1, d2 = (np.asarray(f(x)) for f in (g.psi, g.psi_d1, g.psi_d2))
        val = (d2 * p - d1 * d1) / np.maximum(p * p, 1e-300)
    i = int(np.argmax(val))
    worst = float(val[i])
    if worst <= _TOL:
        return holds(witness=float(x[i]), margin=-worst)
    return fails_at(witness=float(x[i]), margin=-worst)


def check_phi_condition(g, c: float, alpha: float, grid: GridSpec | None = None) -> ConditionVerdict:
    """Does alpha*t*phi''(t) + c*phi'(t) >= 0 hold on t in (0, 1)?

    The three theorem variants are (alpha, c) = (alpha, 1), (1, 1), (1, 2).
    Evaluated as phi'(t) * (alpha*t*(phi''/phi') + c) so the decision
    survives phi' overflow (the bracket is finite; phi' < 0 fixes the sign).
    """
    if _flagged(g):
        return inconclusive("generator outside validity range")
    grid = grid or DEFAULT_CONDITION_GRID
    t = grid.unit_grid()
    if hasattr(g, "phi_d2_over_d1"):
        ratio = np.asarray(g.phi_d2_over_d1(t))
    else:
        ratio = np.asarray(g.phi_d2(t)) / np.asarray(g.phi_d1(t))
    bracket = alpha * t * ratio + c
    with np.errstate(invalid="ignore", over="ignore"):
        d1 = np.asarray(g.phi_d1(t))
        val = d1 * bracket
        val = np.where(np.isnan(val), 0.0, val)  # (-inf * 0) edge
    i = int(np.argmin(val))
    worst = float(val[i])
    if worst >= -_TOL:
        return holds(witness=float(t[i]), margin=worst)
    return fails_at(witness=float(t[i]), margin=worst)


def check_psi_ratio(g, grid: GridSpec | None = None) -> ConditionVerdict:
    """Is psi/psi' decreasing and concave on x > 0 (dispersive-order hypothesis)?

    Uses a uniform grid: second differences on strongly non-uniform spacing
    amplify rounding noise beyond any usable tolerance.
    """
    if _flagged(g):
        return inconclusive("generator outside validity range")
    grid = grid or DEFAULT_CONDITION_GRID
    x = np.linspace(1e-6, 40.0, grid.points)
    if hasattr(g, "psi_over_psi_d1"):
        h = np.asarray(g.psi_over_psi_d1(x))
    else:
        h = np.asarray(g.psi(x)) / np.asarray(g.psi_d1(x))
    scale = max(1.0, float(np.abs(h).max()))
    step = x[1] - x[0]
    sl = np.diff(h) / step
    cv = (h[2:] - 2.0 * h[1:-1] + h[:-2]) / step**2
    worst_dec = float(sl.max())
    worst_conc = float(cv.max())
    # rounding-noise floor of a uniform-grid second difference
    tol_cv = max(_TOL * scale, 8.0 * np.finfo(float).eps * scale / step**2)
    if worst_dec <= _TOL * scale and worst_conc <= tol_cv:
        return holds(margin=-max(worst_dec, worst_conc) / scale)
    if worst_dec > _TOL * scale:
        i = int(np.argmax(sl))
        return fails_at(witness=float(x[i]), margin=-worst_dec / scale, note="not decreasing")
    i = int(np.argmax(cv))
    return fails_at(witness=float(x[i]), margin=-worst_conc / scale, note="not concave")


def _star_function(g, alpha: float, t: np.ndarray, which: str) -> np.ndarray:
    ab = 1.0 - alpha
    base = alpha + ab * t
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        lead = base * np.log(t / base)
        if which == "max":
            ratio = np.asarray(g.phi_d2_over_d1(1.0 - t))
            bracket = alpha + 2.0 * ab * t - base * t * ratio
        else:
            ratio = np.asarray(g.phi_d2_over_d1(t))
            bracket = (alpha + 2.0 * ab * t) + (alpha * t + ab * t * t) * ratio
        return lead * bracket


def _monotone_verdict(t, m, want_increasing: bool) -> ConditionVerdict:
    """Monotonicity by first differences of the grid values."""
    finite = np.isfinite(m)
    if finite.sum() < 0.8 * m.size:
        return inconclusive("star condition function mostly non-finite on grid")
    tf, mf = t[finite], m[finite]
    scale = max(1.0, float(np.abs(mf).max()))
    d = np.diff(mf)
    if want_increasing:
        worst = float(d.min())
        ok = worst >= -_TOL * scale
        i = int(np.argmin(d))
        margin = worst / scale
    else:
        worst = float(d.max())
        ok = worst <= _TOL * scale
        i = int(np.argmax(d))
        margin = -worst / scale
    witness = float(tf[i])
    if ok:
        return holds(witness=witness, margin=margin)
    return fails_at(witness=witness, margin=margin)


def check_star_condition_max(g, alpha: float, grid: GridSpec | None = None) -> ConditionVerdict:
    """Star-order condition for maxima: the t-function must be increasing on (0,1).

    The function is (a+ab*t) * log(t/(a+ab*t)) * [a + 2ab*t - (a+ab*t)*t*phi''(1-t)/phi'(1-t)]
    with ab = 1-a; endpoints are trimmed by the grid and non-finite values masked.
    """
    if _flagged(g):
        return inconclusive("generator outside validity range")
    grid = grid or DEFAULT_CONDITION_GRID
    t = grid.unit_grid()
    m = _star_function(g, alpha, t, "max")
    return _monotone_verdict(t, m, want_increasing=True)


def check_star_condition_min(g, alpha: float, grid: GridSpec | None = None) -> ConditionVerdict:
    """Star-order condition for minima: the t-function must be decreasing on (0,1)."""
    if _flagged(g):
        return inconclusive("generator outside validity range")
    grid = grid or DEFAULT_CONDITION_GRID
    t = grid.unit_grid()
    m = _star_function(g, alpha, t, "min")
    return _monotone_verdict(t, m, want_increasing=False)
