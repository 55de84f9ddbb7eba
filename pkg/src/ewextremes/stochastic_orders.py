"""Numerical verifiers for six stochastic orders between two lifetime laws.

Each checker receives two ``DistHandle`` bundles (cdf/sf/pdf/quantile plus
optional analytic hazards), decides the order's defining inequality on a
finite grid, and returns an ``OrderVerdict`` with the worst witness.  "For
all x" is decided at tolerance on the grid; crossings are refined by
bisection so a FAILS_AT verdict always carries a usable witness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .grids import GridSpec, Spacing
from .verdicts import OrderVerdict, Status

__all__ = [
    "DistHandle",
    "GridSpec",
    "OrderVerdict",
    "check_usual_st",
    "check_hazard_rate",
    "check_reversed_hazard",
    "check_dispersive",
    "check_star",
    "check_lorenz",
    "find_crossing",
    "lorenz_curve",
    "mean_of",
]

PROB_TOL = 1e-9       # absolute tolerance on probabilities
HAZ_TOL = 1e-8        # relative tolerance on hazard comparisons
CROSS_XTOL = 1e-10
_QUANTILE_RESIDUAL = 1e-11  # |cdf(quantile(u)) - u| guaranteed by handles


@dataclass(frozen=True)
class DistHandle:
    """Function bundle describing one univariate lifetime distribution."""

    cdf: Callable
    sf: Callable
    pdf: Callable
    quantile: Callable
    support_hint: tuple[float, float]
    hazard: Optional[Callable] = None
    rev_hazard: Optional[Callable] = None
    label: str = ""

    def hazard_values(self, x: np.ndarray) -> np.ndarray:
        if self.hazard is not None:
            return np.asarray(self.hazard(x), dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.asarray(self.pdf(x), dtype=float) / np.maximum(
                np.asarray(self.sf(x), dtype=float), 1e-300
            )

    def rev_hazard_values(self, x: np.ndarray) -> np.ndarray:
        if self.rev_hazard is not None:
            return np.asarray(self.rev_hazard(x), dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.asarray(self.pdf(x), dtype=float) / np.maximum(
                np.asarray(self.cdf(x), dtype=float), 1e-300
            )


def build_grid(a: DistHandle, b: DistHandle, spec: GridSpec) -> np.ndarray:
    """x-grid spanning the pooled quantile range of both distributions."""
    ends = np.array([spec.lo_quantile, spec.hi_quantile])
    qa = np.asarray(a.quantile(ends), dtype=float)
    qb = np.asarray(b.quantile(ends), dtype=float)
    lo = min(float(qa[0]), float(qb[0]))
    hi = max(float(qa[1]), float(qb[1]))
    lo = max(lo, 1e-280)
    if not hi > lo:
        hi = lo * (1.0 + 1e-6)
    if spec.spacing is Spacing.LINEAR:
        return np.linspace(lo, hi, spec.points)
    return np.geomspace(lo, hi, spec.points)


def _bisect_sign_change(g, xlo: float, xhi: float, xtol: float = CROSS_XTOL) -> float:
    glo = g(xlo)
    for _ in range(200):
        if xhi - xlo <= xtol:
            break
        mid = 0.5 * (xlo + xhi)
        gm = g(mid)
        if (gm > 0) == (glo > 0):
            xlo, glo = mid, gm
        else:
            xhi = mid
    return 0.5 * (xlo + xhi)


def _gap_verdict(
    x: np.ndarray,
    gap: np.ndarray,
    gap_fn,
    tol: float,
    grid: GridSpec,
    note: str = "",
) -> OrderVerdict:
    """Holds iff gap <= tol gridwise; otherwise witness at max gap, crossing refined."""
    i = int(np.argmax(gap))
    worst = float(gap[i])
    meta = grid.meta()
    if worst <= tol:
        return OrderVerdict(Status.HOLDS, witness_x=float(x[i]), gap=worst, grid=meta, note=note)
    crossing = None
    sign = gap > tol
    flips = np.nonzero(sign[1:] != sign[:-1])[0]
    if flips.size:
        j = int(flips[0])
        crossing = _bisect_sign_change(gap_fn, float(x[j]), float(x[j + 1]))
    return OrderVerdict(
        Status.FAILS_AT,
        witness_x=float(x[i]),
        gap=worst,
        crossing_x=crossing,
        grid=meta,
        note=note,
    )


def check_usual_st(a: DistHandle, b: DistHandle, grid: GridSpec | None = None) -> OrderVerdict:
    """a <=_st b: survival of a never exceeds survival of b (within tolerance)."""
    grid = grid or GridSpec()
    x = build_grid(a, b, grid)
    sa = np.asarray(a.sf(x), dtype=float)
    sb = np.asarray(b.sf(x), dtype=float)
    gap = sa - sb
    return _gap_verdict(x, gap, lambda t: float(a.sf(t) - b.sf(t)) - PROB_TOL, PROB_TOL, grid)


def check_hazard_rate(a: DistHandle, b: DistHandle, grid: GridSpec | None = None) -> OrderVerdict:
    """a <=_hr b: hazard of a dominates hazard of b pointwise.

    Cross-checked against monotonicity of sf_b/sf_a; if the two estimates
    disagree beyond tolerance the verdict is INCONCLUSIVE.
    """
    grid = grid or GridSpec()
    x = build_grid(a, b, grid)
    ra = a.hazard_values(x)
    rb = b.hazard_values(x)
    scale = np.maximum(np.maximum(np.abs(ra), np.abs(rb)), 1e-300)
    margin = (ra - rb) / scale
    ok = np.isfinite(margin)
    worst = float(np.min(margin[ok])) if ok.any() else np.nan
    i = int(np.nonzero(ok)[0][np.argmin(margin[ok])]) if ok.any() else 0
    primary_holds = worst >= -HAZ_TOL

    # secondary estimate: a <=_hr b iff log(sf_b/sf_a) is nondecreasing
    sa = np.asarray(a.sf(x), dtype=float)
    sb = np.asarray(b.sf(x), dtype=float)
    mask = (sa > 1e-12) & (sb > 1e-12)
    secondary_holds = True
    if mask.sum() >= 8:
        logr = np.log(sb[mask]) - np.log(sa[mask])
        d = np.diff(logr)
        secondary_holds = bool(d.min() >= -1e-6 * max(1.0, float(np.abs(logr).max())))
    if primary_holds != secondary_holds:
        return OrderVerdict(
            Status.INCONCLUSIVE,
            witness_x=float(x[i]),
            gap=-worst,
            grid=grid.meta(),
            note="analytic-hazard and survival-ratio estimates disagree",
        )
    if primary_holds:
        return OrderVerdict(Status.HOLDS, witness_x=float(x[i]), gap=-worst, grid=grid.meta())
    return OrderVerdict(Status.FAILS_AT, witness_x=float(x[i]), gap=-worst, grid=grid.meta())


def check_reversed_hazard(a: DistHandle, b: DistHandle, grid: GridSpec | None = None) -> OrderVerdict:
    """a <=_rh b: reversed hazard of a is dominated by that of b pointwise."""
    grid = grid or GridSpec()
    x = build_grid(a, b, grid)
    ta = a.rev_hazard_values(x)
    tb = b.rev_hazard_values(x)
    scale = np.maximum(np.maximum(np.abs(ta), np.abs(tb)), 1e-300)
    margin = (ta - tb) / scale  # violation where positive
    ok = np.isfinite(margin)
    if not ok.any():
        return OrderVerdict(Status.INCONCLUSIVE, grid=grid.meta(), note="no finite ratio points")
    worst = float(np.max(margin[ok]))
    i = int(np.nonzero(ok)[0][np.argmax(margin[ok])])
    if worst <= HAZ_TOL:
        return OrderVerdict(Status.HOLDS, witness_x=float(x[i]), gap=worst, grid=grid.meta())
    return OrderVerdict(Status.FAILS_AT, witness_x=float(x[i]), gap=worst, grid=grid.meta())


def _noise_floor(handle: DistHandle, q: np.ndarray) -> np.ndarray:
    """Quantile uncertainty propagated from the handle's cdf residual."""
    with np.errstate(divide="ignore", invalid="ignore"):
        dens = np.asarray(handle.pdf(q), dtype=float)
    dens = np.where(np.isfinite(dens) & (dens > 0), dens, np.inf)
    return _QUANTILE_RESIDUAL / dens


def check_dispersive(a: DistHandle, b: DistHandle, grid: GridSpec | None = None) -> OrderVerdict:
    """a <=_disp b: u -> quantile_b(u) - quantile_a(u) is nondecreasing."""
    grid = grid or GridSpec()
    u = grid.unit_grid()
    qa = np.asarray(a.quantile(u), dtype=float)
    qb = np.asarray(b.quantile(u), dtype=float)
    delta = qb - qa
    d = np.diff(delta)
    noise = _noise_floor(a, qa) + _noise_floor(b, qb)
    tol = PROB_TOL + noise[:-1] + noise[1:]
    margin = d + tol
    i = int(np.argmin(margin))
    worst = float(margin[i])
    if worst >= 0.0:
        return OrderVerdict(Status.HOLDS, witness_x=float(u[i]), gap=float(-d.min()), grid=grid.meta())
    return OrderVerdict(
        Status.FAILS_AT, witness_x=float(u[i]), gap=float(-d[i]), grid=grid.meta()
    )


def check_star(a: DistHandle, b: DistHandle, grid: GridSpec | None = None) -> OrderVerdict:
    """a <=_* b: x -> quantile_b(cdf_a(x)) / x is nondecreasing.

    Grid points whose cdf_a falls below 1e-6 are skipped (0/0 ratio region).
    """
    grid = grid or GridSpec()
    x = build_grid(a, b, grid)
    ua = np.asarray(a.cdf(x), dtype=float)
    keep = (ua >= max(grid.lo_quantile, 1e-6)) & (ua <= grid.hi_quantile)
    if keep.sum() < 8:
        return OrderVerdict(Status.INCONCLUSIVE, grid=grid.meta(), note="grid too small after trim")
    x = x[keep]
    ua = np.clip(ua[keep], 1e-12, 1.0 - 1e-12)
    qb = np.asarray(b.quantile(ua), dtype=float)
    ratio = qb / x
    scale = max(1.0, float(np.abs(ratio).max()))
    d = np.diff(ratio)
    noise = _noise_floor(b, qb) / x
    tol = 1e-8 * scale + noise[:-1] + noise[1:]
    margin = d + tol
    i = int(np.argmin(margin))
    if margin[i] >= 0.0:
        return OrderVerdict(Status.HOLDS, witness_x=float(x[i]), gap=float(-d.min() / scale), grid=grid.meta())
    return OrderVerdict(
        Status.FAILS_AT, witness_x=float(x[i]), gap=float(-d[i] / scale), grid=grid.meta()
    )


# -- Lorenz machinery --------------------------------------------------------

_GL_NODES = 8


def _gl_cache(n: int = _GL_NODES):
    nodes, weights = np.polynomial.legendre.leggauss(n)
    return nodes, weights


def _integrate_q_segments(handle: DistHandle, s_edges: np.ndarray) -> np.ndarray:
    """integral of quantile(p) dp over consecutive segments, p = 1 - exp(-s).

    The substitution regularizes the upper tail: EW-type quantiles grow like
    (-log(1-p))^(1/k), polynomial in s.
    """
    nodes, weights = _gl_cache()
    a = s_edges[:-1]
    b = s_edges[1:]
    mid = 0.5 * (a + b)[:, None]
    half = 0.5 * (b - a)[:, None]
    s = mid + half * nodes[None, :]
    p = -np.expm1(-s)
    q = np.asarray(handle.quantile(np.clip(p, 0.0, 1.0 - 1e-15)), dtype=float)
    vals = q * np.exp(-s)
    return (vals * weights[None, :]).sum(axis=1) * half[:, 0]


def mean_of(handle: DistHandle, eps: float = 1e-9, nodes: int = 256) -> float:
    """E[X] = integral of quantile(p) dp over (0, 1-eps), Gauss-Legendre in s-space."""
    gl_nodes, gl_weights = np.polynomial.legendre.leggauss(nodes)
    s_hi = -np.log(eps)
    s = 0.5 * s_hi * (gl_nodes + 1.0)
    p = -np.expm1(-s)
    q = np.asarray(handle.quantile(np.clip(p, 0.0, 1.0 - 1e-15)), dtype=float)
    return float((q * np.exp(-s) * gl_weights).sum() * 0.5 * s_hi)


def lorenz_curve(handle: DistHandle, u: np.ndarray, mean: float | None = None) -> np.ndarray:
    """Normalized Lorenz curve L(u) = (1/E) * integral_0^u quantile(p) dp."""
    if mean is None:
        mean = mean_of(handle)
    if not np.isfinite(mean) or mean <= 0.0:
        raise ValueError("mean must be finite and positive for a Lorenz curve")
    u = np.asarray(u, dtype=float)
    s_edges = np.concatenate([[0.0], -np.log1p(-u)])
    partial = np.cumsum(_integrate_q_segments(handle, s_edges))
    return partial / mean


def check_lorenz(a: DistHandle, b: DistHandle, grid: GridSpec | None = None) -> OrderVerdict:
    """a <=_Lorenz b: L_a(u) >= L_b(u) - tol for all grid u.

    The inequality direction follows the source definition (partial means of
    the smaller-ordered variable dominate).
    """
    grid = grid or GridSpec()
    u = grid.unit_grid()
    try:
        la = lorenz_curve(a, u)
        lb = lorenz_curve(b, u)
    except ValueError as exc:
        return OrderVerdict(Status.INCONCLUSIVE, grid=grid.meta(), note=str(exc))
    gap = lb - la  # violation where positive
    i = int(np.argmax(gap))
    worst = float(gap[i])
    if worst <= PROB_TOL * 10:
        return OrderVerdict(Status.HOLDS, witness_x=float(u[i]), gap=worst, grid=grid.meta())
    return OrderVerdict(Status.FAILS_AT, witness_x=float(u[i]), gap=worst, grid=grid.meta())


def find_crossing(
    a: DistHandle, b: DistHandle, grid: GridSpec | None = None
) -> Optional[tuple[float, float, float]]:
    """Locate a sign change of cdf_a - cdf_b.

    Returns (x_cross, gap_before, gap_after) where the gaps are the extreme
    signed values of cdf_a - cdf_b on each side of the crossing, or None if
    the difference is single-signed (beyond tolerance) on the grid.
    """
    grid = grid or GridSpec()
    x = build_grid(a, b, grid)
    gap = np.asarray(a.cdf(x), dtype=float) - np.asarray(b.cdf(x), dtype=float)
    pos = gap > PROB_TOL
    neg = gap < -PROB_TOL
    if not (pos.any() and neg.any()):
        return None
    sig = np.where(pos, 1, np.where(neg, -1, 0))
    nz = np.nonzero(sig)[0]
    flip = None
    for k in range(nz.size - 1):
        if sig[nz[k]] != sig[nz[k + 1]]:
            flip = (nz[k], nz[k + 1])
            break
    if flip is None:
        return None
    g = lambda t: float(a.cdf(t) - b.cdf(t))
    xc = _bisect_sign_change(g, float(x[flip[0]]), float(x[flip[1]]))
    before = gap[: flip[0] + 1]
    after = gap[flip[1] :]
    gap_before = float(before[np.argmax(np.abs(before))])
    gap_after = float(after[np.argmax(np.abs(after))])
    return xc, gap_before, gap_after
