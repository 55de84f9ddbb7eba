"""Distribution functions of extremes of copula-coupled EW lifetimes.

A ``CoupledSystem`` is n extended-Weibull marginals joined by one
Archimedean generator.  The coupling side decides which extreme has a
closed form:

* plain copula        -> cdf of the maximum:   psi(sum phi(F_i(x)))
* survival copula     -> sf  of the minimum:   psi(sum phi(Fbar_i(x)))

Random-sample-size mixtures use the first m marginals (in list order) when
the count takes value m.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import ew_marginal as ew
from .archimedean import Family, Generator
from .errors import ContractError, ConvergenceError, DomainError
from .ew_marginal import EwParams
from .stochastic_orders import DistHandle

__all__ = [
    "Coupling",
    "Statistic",
    "CoupledSystem",
    "CountDistribution",
    "max_cdf",
    "min_sf",
    "extreme_cdf",
    "extreme_sf",
    "extreme_pdf",
    "extreme_quantile",
    "min_hazard_independent",
    "mixture_max_cdf",
    "mixture_min_sf",
    "dist_handle",
    "marginal_handle",
    "mixture_handle",
]

_QTOL = 1e-11
_TINY_V = 1e-290  # below this the clamped composition is degenerate


class Coupling(enum.Enum):
    COPULA = "copula"
    SURVIVAL_COPULA = "survival"


class Statistic(enum.Enum):
    MIN = "min"
    MAX = "max"


@dataclass(frozen=True)
class CoupledSystem:
    """n EW marginals, one generator and the coupling side."""

    marginals: tuple[EwParams, ...]
    generator: Generator
    coupling: Coupling

    def __post_init__(self):
        if len(self.marginals) < 1:
            raise DomainError("a system needs at least one marginal")
        object.__setattr__(self, "marginals", tuple(self.marginals))

    @property
    def n(self) -> int:
        return len(self.marginals)

    def prefix(self, m: int) -> "CoupledSystem":
        if not (1 <= m <= self.n):
            raise ContractError(f"prefix size {m} outside 1..{self.n}")
        return CoupledSystem(self.marginals[:m], self.generator, self.coupling)


@dataclass(frozen=True)
class CountDistribution:
    """pmf of a positive integer sample size on finite support."""

    pmf: tuple[tuple[int, float], ...]

    def __post_init__(self):
        if not self.pmf:
            raise DomainError("empty count distribution")
        support = [m for m, _ in self.pmf]
        probs = [p for _, p in self.pmf]
        if any(m < 1 or int(m) != m for m in support):
            raise DomainError("support values must be integers >= 1")
        if any(s2 <= s1 for s1, s2 in zip(support, support[1:])):
            raise DomainError("support must be strictly ascending")
        if any(p < 0.0 or p > 1.0 for p in probs):
            raise DomainError("probabilities must lie in [0, 1]")
        if abs(sum(probs) - 1.0) > 1e-12:
            raise DomainError("probabilities must sum to 1 within 1e-12")
        object.__setattr__(self, "pmf", tuple((int(m), float(p)) for m, p in self.pmf))

    @property
    def max_support(self) -> int:
        return self.pmf[-1][0]

    def tail(self, t: int) -> float:
        """P(N > t)."""
        return sum(p for m, p in self.pmf if m > t)

    def st_leq(self, other: "CountDistribution", tol: float = 1e-12) -> bool:
        """self <=_st other, via pointwise tail comparison."""
        hi = max(self.max_support, other.max_support)
        return all(self.tail(t) <= other.tail(t) + tol for t in range(hi))


def _marginal_values(s: CoupledSystem, x, kind: str) -> np.ndarray:
    xa = np.asarray(x, dtype=float)
    fn = ew.cdf if kind == "cdf" else ew.sf
    return np.stack([np.asarray(fn(p, xa), dtype=float) for p in s.marginals])


def max_cdf(s: CoupledSystem, x) -> float | np.ndarray:
    """cdf of the maximum X_{n:n}; requires a plain copula coupling."""
    if s.coupling is not Coupling.COPULA:
        raise ContractError("max_cdf needs coupling=COPULA (maxima have no survival-copula form)")
    V = _marginal_values(s, x, "cdf")
    out = s.generator.coupled_value(V)
    out = np.where(V.min(axis=0) <= _TINY_V, 0.0, out)
    return out if out.ndim else float(out)


def min_sf(s: CoupledSystem, x) -> float | np.ndarray:
    """sf of the minimum X_{1:n}; requires a survival-copula coupling."""
    if s.coupling is not Coupling.SURVIVAL_COPULA:
        raise ContractError("min_sf needs coupling=SURVIVAL_COPULA")
    V = _marginal_values(s, x, "sf")
    out = s.generator.coupled_value(V)
    out = np.where(V.min(axis=0) <= _TINY_V, 0.0, out)
    return out if out.ndim else float(out)


def extreme_cdf(s: CoupledSystem, which: Statistic, x) -> float | np.ndarray:
    if which is Statistic.MAX:
        return max_cdf(s, x)
    out = 1.0 - np.asarray(min_sf(s, x))
    return out if out.ndim else float(out)


def extreme_sf(s: CoupledSystem, which: Statistic, x) -> float | np.ndarray:
    if which is Statistic.MIN:
        return min_sf(s, x)
    out = 1.0 - np.asarray(max_cdf(s, x))
    return out if out.ndim else float(out)


def extreme_pdf(s: CoupledSystem, which: Statistic, x) -> float | np.ndarray:
    """Density of the extreme via the chain rule on the coupled form."""
    if which is Statistic.MAX and s.coupling is not Coupling.COPULA:
        raise ContractError("extreme_pdf(MAX) needs coupling=COPULA")
    if which is Statistic.MIN and s.coupling is not Coupling.SURVIVAL_COPULA:
        raise ContractError("extreme_pdf(MIN) needs coupling=SURVIVAL_COPULA")
    xa = np.asarray(x, dtype=float)
    kind = "cdf" if which is Statistic.MAX else "sf"
    V = _marginal_values(s, xa, kind)
    W = s.generator.coupled_weights(V)
    dens = np.stack([np.asarray(ew.pdf(p, xa), dtype=float) for p in s.marginals])
    with np.errstate(invalid="ignore"):
        out = (W * dens).sum(axis=0)
    out = np.where(V.min(axis=0) <= _TINY_V, 0.0, out)
    return out if out.ndim else float(out)


def min_hazard_independent(params, x) -> float | np.ndarray:
    """Hazard rate of the minimum of independent marginals: sum of hazards."""
    params = list(params)
    if not params:
        raise ContractError("min_hazard_independent needs at least one marginal")
    xa = np.asarray(x, dtype=float)
    out = np.zeros_like(xa, dtype=float)
    for p in params:
        out = out + np.asarray(ew.hazard(p, xa), dtype=float)
    return out if out.ndim else float(out)


def _quantile_bracket(s: CoupledSystem, which: Statistic, u_lo: float, u_hi: float) -> tuple[float, float]:
    """Closed-form [lo, hi] containing the extreme's quantiles on [u_lo, u_hi].

    Union bounds valid for any dependence: the cdf of the maximum lies
    between max(sum F_i - (n-1), 0) and min_i F_i, that of the minimum
    between max_i F_i and min(sum F_i, 1).
    """
    n = s.n
    if which is Statistic.MAX:
        lo = max(float(ew.quantile(p, u_lo)) for p in s.marginals)
        hi = max(float(ew.quantile(p, 1.0 - (1.0 - u_hi) / n)) for p in s.marginals)
    else:
        hi = min(float(ew.quantile(p, u_hi)) for p in s.marginals)
        lo = min(float(ew.quantile(p, u_lo / n)) for p in s.marginals)
    return max(lo, 1e-290), max(hi, 2e-290)


def _invert_cdf(cdf_fn, pdf_fn, u, bracket: tuple[float, float]) -> np.ndarray:
    """Vectorized inverse of a monotone cdf: log-space bisection + Newton polish."""
    ua = np.atleast_1d(np.asarray(u, dtype=float))
    if np.any(ua <= 0.0) or np.any(ua >= 1.0):
        raise DomainError("extreme_quantile requires 0 < u < 1")
    lo, hi = bracket
    for _ in range(200):
        if float(cdf_fn(np.array([hi]))[0]) >= ua.max():
            break
        hi *= 2.0
    else:
        raise ConvergenceError("failed to bracket the quantile from above")
    for _ in range(200):
        if float(cdf_fn(np.array([lo]))[0]) <= ua.min() or lo < 1e-280:
            break
        lo *= 0.25
    tlo = np.full_like(ua, np.log(lo))
    thi = np.full_like(ua, np.log(hi))
    for _ in range(48):
        mid = 0.5 * (tlo + thi)
        v = np.asarray(cdf_fn(np.exp(mid)), dtype=float)
        less = v < ua
        tlo = np.where(less, mid, tlo)
        thi = np.where(less, thi, mid)
    q = np.exp(0.5 * (tlo + thi))
    # Newton polish; stay inside the bisection bracket
    qlo, qhi = np.exp(tlo), np.exp(thi)
    for _ in range(6):
        resid = np.asarray(cdf_fn(q), dtype=float) - ua
        if float(np.abs(resid).max()) <= 1e-13:
            break
        dens = np.asarray(pdf_fn(q), dtype=float)
        ok = np.isfinite(dens) & (dens > 0.0)
        step = np.where(ok, resid / np.where(ok, dens, 1.0), 0.0)
        q = np.clip(q - step, qlo, qhi)
    resid = np.abs(np.asarray(cdf_fn(q), dtype=float) - ua)
    if np.any(resid > _QTOL):
        worst = float(resid.max())
        raise ConvergenceError(f"quantile residual {worst:.3e} exceeds {_QTOL:.0e}")
    return q


def extreme_quantile(s: CoupledSystem, which: Statistic, u) -> float | np.ndarray:
    """Quantile of the extreme; |cdf(result) - u| <= 1e-11."""
    ua = np.atleast_1d(np.asarray(u, dtype=float))
    if ua.size == 0:
        return np.asarray(u, dtype=float)
    if np.any(ua <= 0.0) or np.any(ua >= 1.0):
        raise DomainError("extreme_quantile requires 0 < u < 1")
    bracket = _quantile_bracket(s, which, float(ua.min()), float(ua.max()))
    cdf_fn = lambda x: np.asarray(extreme_cdf(s, which, x))
    pdf_fn = lambda x: np.asarray(extreme_pdf(s, which, x))
    q = _invert_cdf(cdf_fn, pdf_fn, u, bracket)
    return q if np.ndim(u) else float(q[0])


def _check_mixture(s: CoupledSystem, counts: CountDistribution):
    if counts.max_support > s.n:
        raise ContractError(
            f"count support goes up to {counts.max_support} but the system has {s.n} marginals"
        )


def mixture_max_cdf(s: CoupledSystem, counts: CountDistribution, x) -> float | np.ndarray:
    """cdf of X_{N:N}: sum_m P(N=m) * max_cdf over the first m marginals."""
    _check_mixture(s, counts)
    xa = np.asarray(x, dtype=float)
    out = np.zeros_like(xa, dtype=float)
    for m, p in counts.pmf:
        out = out + p * np.asarray(max_cdf(s.prefix(m), xa))
    return out if out.ndim else float(out)


def mixture_min_sf(s: CoupledSystem, counts: CountDistribution, x) -> float | np.ndarray:
    """sf of X_{1:N}: sum_m P(N=m) * min_sf over the first m marginals."""
    _check_mixture(s, counts)
    xa = np.asarray(x, dtype=float)
    out = np.zeros_like(xa, dtype=float)
    for m, p in counts.pmf:
        out = out + p * np.asarray(min_sf(s.prefix(m), xa))
    return out if out.ndim else float(out)


# -- DistHandle builders ------------------------------------------------------


def marginal_handle(p: EwParams, label: str = "") -> DistHandle:
    """Handle for a single EW marginal with closed-form quantiles and hazards."""
    return DistHandle(
        cdf=lambda x: ew.cdf(p, x),
        sf=lambda x: ew.sf(p, x),
        pdf=lambda x: ew.pdf(p, x),
        quantile=lambda u: ew.quantile(p, u),
        support_hint=(float(ew.quantile(p, 1e-9)), float(ew.quantile(p, 1.0 - 1e-9))),
        hazard=lambda x: ew.hazard(p, x),
        rev_hazard=lambda x: ew.rev_hazard(p, x),
        label=label or f"EW(alpha={p.alpha:g}, lam={p.lam:g}, k={p.k:g})",
    )


def dist_handle(s: CoupledSystem, which: Statistic, label: str = "") -> DistHandle:
    """Handle for the chosen extreme of a coupled system.

    Under the independence generator the minimum additionally exposes the
    analytic hazard (sum of marginal hazards).
    """
    hazard = None
    if which is Statistic.MIN and s.generator.family is Family.INDEPENDENCE:
        hazard = lambda x: min_hazard_independent(s.marginals, x)
    lo, hi = _quantile_bracket(s, which, 1e-9, 1.0 - 1e-9)
    return DistHandle(
        cdf=lambda x: extreme_cdf(s, which, x),
        sf=lambda x: extreme_sf(s, which, x),
        pdf=lambda x: extreme_pdf(s, which, x),
        quantile=lambda u: extreme_quantile(s, which, u),
        support_hint=(lo, hi),
        hazard=hazard,
        label=label or f"{which.value} of {s.n} EW / {s.generator.label()}",
    )


def mixture_handle(
    s: CoupledSystem, counts: CountDistribution, which: Statistic, label: str = ""
) -> DistHandle:
    """Handle for the random-sample-size extreme X_{1:N} or X_{N:N}."""
    _check_mixture(s, counts)
    if which is Statistic.MAX:
        cdf_fn = lambda x: mixture_max_cdf(s, counts, x)
        sf_fn = lambda x: 1.0 - np.asarray(mixture_max_cdf(s, counts, x))
    else:
        sf_fn = lambda x: mixture_min_sf(s, counts, x)
        cdf_fn = lambda x: 1.0 - np.asarray(mixture_min_sf(s, counts, x))

    def pdf_fn(x):
        xa = np.asarray(x, dtype=float)
        out = np.zeros_like(xa, dtype=float)
        for m, p in counts.pmf:
            out = out + p * np.asarray(extreme_pdf(s.prefix(m), which, xa))
        return out

    brackets = [_quantile_bracket(s.prefix(m), which, 1e-9, 1.0 - 1e-9) for m, _ in counts.pmf]
    lo = min(b[0] for b in brackets)
    hi = max(b[1] for b in brackets)

    def quantile_fn(u):
        q = _invert_cdf(lambda x: np.asarray(cdf_fn(x)), pdf_fn, u, (lo, hi))
        return q if np.ndim(u) else float(q[0])

    return DistHandle(
        cdf=cdf_fn,
        sf=sf_fn,
        pdf=pdf_fn,
        quantile=quantile_fn,
        support_hint=(lo, hi),
        label=label or f"{which.value} with random N of {s.n} EW / {s.generator.label()}",
    )
