"""Worked-example registry and the end-to-end theorem harness.

Seven builtin scenarios pin down the source material's examples and
counterexamples: each stores two coupled systems, the order claim, the
claim's expected outcome (transcribed verbatim), and the named side
conditions of the theorem it illustrates.  ``run_scenario`` evaluates the
hypotheses (via the archimedean/majorization checkers) and the conclusion
(via the stochastic-order verifiers) and reports whether the run is
consistent: a run is inconsistent only when every hypothesis holds yet the
conclusion fails.

``fuzz_theorem`` drives randomized instances through the same machinery:
samples are drawn inside a theorem's hypothesis region, every hypothesis is
re-verified numerically, and the conclusion must then hold.  Where the
printed statement of a result is irreparably at odds with its own proof
(directions of a majorization, a sample-size ordering, or a star-order
conclusion), the harness follows the proof; the status of each such reading
is recorded in the repository notes.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import archimedean as arch
from . import majorization as maj
from . import stochastic_orders as so
from .archimedean import Generator, exp_reciprocal, gumbel_variant, independence
from .errors import ContractError
from .extremes import (
    CountDistribution,
    CoupledSystem,
    Coupling,
    Statistic,
    dist_handle,
    extreme_cdf,
    mixture_handle,
)
from .ew_marginal import EwParams
from .grids import GridSpec
from .verdicts import ConditionVerdict, OrderVerdict, Status

__all__ = [
    "Order",
    "Hypothesis",
    "Scenario",
    "TheoremCheck",
    "builtin_scenarios",
    "run_scenario",
    "run_random_n_scenario",
    "run_all",
    "THEOREMS",
    "fuzz_theorem",
    "hazard_summand_convexity",
    "min_cdf_of_log_scales",
    "max_cdf_of_scales",
]

CROSSING_GAP = 1e-6


class Order:
    ST = "st"
    HR = "hr"
    RH = "rh"
    DISP = "disp"
    STAR = "star"
    LORENZ = "lorenz"


@dataclass(frozen=True)
class Hypothesis:
    """One named side condition of a theorem, resolvable against a scenario."""

    id: str
    kind: str
    payload: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Scenario:
    name: str
    system_x: CoupledSystem
    system_y: CoupledSystem
    statistic: Statistic
    order: str
    expected: str  # "holds" | "crosses", verbatim from the source claim
    hypothesis_checks: tuple[Hypothesis, ...]
    counts: Optional[tuple[CountDistribution, CountDistribution]] = None
    note: str = ""


@dataclass(frozen=True)
class TheoremCheck:
    theorem_id: str
    hypothesis_results: tuple[dict, ...]
    conclusion_verdict: OrderVerdict
    consistent: bool
    crossing: Optional[tuple[float, float, float]] = None
    expected: str = ""
    expected_match: Optional[bool] = None

    def to_dict(self) -> dict:
        out = {
            "theorem_id": self.theorem_id,
            "hypotheses": list(self.hypothesis_results),
            "verdict": self.conclusion_verdict.to_dict(),
            "consistent": self.consistent,
        }
        if self.crossing is not None:
            out["crossing"] = {
                "x": self.crossing[0],
                "gap_before": self.crossing[1],
                "gap_after": self.crossing[2],
            }
        if self.expected:
            out["expected"] = self.expected
            out["expected_match"] = self.expected_match
        return out


# ---------------------------------------------------------------------------
# Builtin scenarios
# ---------------------------------------------------------------------------


def _system(tilts, scales, shapes, gen, coupling=Coupling.COPULA) -> CoupledSystem:
    margs = tuple(EwParams(a, l, k) for a, l, k in zip(tilts, scales, shapes))
    return CoupledSystem(margs, gen, coupling)


def _const(v, n):
    return (v,) * n


def builtin_scenarios() -> list[Scenario]:
    """The seven transcribed example/counterexample configurations."""
    out = []

    # scale-vector pair under Gumbel-variant generators, k < 1: claimed ordered
    lam = (0.46, 0.5)
    mu = (1.7, 0.43)
    for name, k, expected in (("ex1", 0.9, "holds"), ("cex1", 8.06, "crosses")):
        out.append(
            Scenario(
                name=name,
                system_x=_system(_const(0.6, 2), lam, _const(k, 2), gumbel_variant(8.9)),
                system_y=_system(_const(0.6, 2), mu, _const(k, 2), gumbel_variant(3.05)),
                statistic=Statistic.MAX,
                order=Order.ST,
                expected=expected,
                hypothesis_checks=(
                    Hypothesis("superadditive(phi2 o psi1)", "superadditive"),
                    Hypothesis("0<k<=1", "k_range", {"lo": 0.0, "hi": 1.0}),
                    Hypothesis("0<alpha<=1", "alpha_range", {"lo": 0.0, "hi": 1.0}),
                    Hypothesis(
                        "scales_x >=^w scales_y",
                        "majorization",
                        {"relation": "supw", "quantity": "scales", "big": "x"},
                    ),
                ),
            )
        )

    # three marginals, Gumbel-variant with theta2 below validity: claimed crossing
    out.append(
        Scenario(
            name="cex1_1",
            system_x=_system(_const(0.55, 3), (2.14, 1.4, 1.0), _const(1.63, 3), gumbel_variant(3.0)),
            system_y=_system(_const(0.55, 3), (0.77, 0.8, 0.8), _const(1.63, 3), gumbel_variant(0.6)),
            statistic=Statistic.MAX,
            order=Order.ST,
            expected="crosses",
            hypothesis_checks=(
                Hypothesis("superadditive(phi2 o psi1)", "superadditive"),
                Hypothesis("log-concave psi1", "log_concave"),
                Hypothesis("0<alpha<=1", "alpha_range", {"lo": 0.0, "hi": 1.0}),
                Hypothesis(
                    "log_scales_x >=_w log_scales_y",
                    "majorization",
                    {"relation": "subw", "quantity": "log_scales", "big": "x"},
                ),
            ),
            note="second generator is outside its validity range (flagged)",
        )
    )

    # shape-vector pair under exp-reciprocal generators
    for name, kx, ky, th1, th2, expected in (
        ("ex2", (3.0, 0.5, 1.0), (2.0, 1.5, 1.0), 2.2, 2.45, "holds"),
        ("cex2", (0.5, 1.0, 3.0), (1.0, 1.5, 2.0), 2.48, 2.24, "crosses"),
    ):
        out.append(
            Scenario(
                name=name,
                system_x=_system(_const(0.5, 3), _const(4.83, 3), kx, exp_reciprocal(th1)),
                system_y=_system(_const(0.5, 3), _const(4.83, 3), ky, exp_reciprocal(th2)),
                statistic=Statistic.MAX,
                order=Order.ST,
                expected=expected,
                hypothesis_checks=(
                    Hypothesis("superadditive(phi2 o psi1)", "superadditive"),
                    Hypothesis(
                        "alpha*t*phi1''+phi1'>=0",
                        "phi_condition",
                        {"c": 1.0, "alpha": 0.5},
                    ),
                    Hypothesis("0<alpha<=1", "alpha_range", {"lo": 0.0, "hi": 1.0}),
                    Hypothesis(
                        "shapes_y >=^m shapes_x",
                        "majorization",
                        {"relation": "m", "quantity": "shapes", "big": "y"},
                    ),
                ),
            )
        )

    # tilt-vector pair under exp-reciprocal generators
    for name, ax, ay, th1, th2, k, lam_c, expected in (
        ("ex3", (0.4, 0.9, 0.1), (0.5, 0.8, 0.1), 2.4, 3.7, 5.67, 5.37, "holds"),
        ("cex3", (0.82, 0.85, 0.95), (0.4, 0.84, 0.87), 22.6, 10.7, 3.16, 12.5, "crosses"),
    ):
        out.append(
            Scenario(
                name=name,
                system_x=_system(ax, _const(lam_c, 3), _const(k, 3), exp_reciprocal(th1)),
                system_y=_system(ay, _const(lam_c, 3), _const(k, 3), exp_reciprocal(th2)),
                statistic=Statistic.MAX,
                order=Order.ST,
                expected=expected,
                hypothesis_checks=(
                    Hypothesis("superadditive(phi2 o psi1)", "superadditive"),
                    Hypothesis(
                        "t*phi1''+2*phi1'>=0",
                        "phi_condition",
                        {"c": 2.0, "alpha": 1.0},
                    ),
                    Hypothesis(
                        "tilts_x >=_w tilts_y",
                        "majorization",
                        {"relation": "subw", "quantity": "tilts", "big": "x"},
                    ),
                ),
            )
        )

    order = ["ex1", "cex1", "cex1_1", "ex2", "cex2", "ex3", "cex3"]
    out.sort(key=lambda s: order.index(s.name))
    return out


# ---------------------------------------------------------------------------
# Hypothesis evaluation
# ---------------------------------------------------------------------------


def _vector_of(system: CoupledSystem, quantity: str) -> np.ndarray:
    if quantity == "scales":
        return np.array([p.lam for p in system.marginals])
    if quantity == "log_scales":
        return maj.log_vector([p.lam for p in system.marginals])
    if quantity == "tilts":
        return np.array([p.alpha for p in system.marginals])
    if quantity == "shapes":
        return np.array([p.k for p in system.marginals])
    raise ValueError(f"unknown quantity {quantity!r}")


_REL_FN = {
    "m": maj.majorizes,
    "subw": maj.weak_submajorizes,
    "supw": maj.weak_supermajorizes,
}


def _majorization_result(h: Hypothesis, s: Scenario) -> dict:
    big = s.system_x if h.payload["big"] == "x" else s.system_y
    small = s.system_y if h.payload["big"] == "x" else s.system_x
    rel = _REL_FN[h.payload["relation"]]
    d = _vector_of(big, h.payload["quantity"])
    c = _vector_of(small, h.payload["quantity"])
    asc = rel(d, c, convention="ascending")
    desc = rel(d, c, convention="descending")
    return {
        "id": h.id,
        "status": Status.HOLDS.value if asc else Status.FAILS_AT.value,
        "margin": None,
        "note": f"printed(ascending)={asc}; descending-convention={desc}",
    }


def _range_result(h: Hypothesis, values: np.ndarray) -> dict:
    lo, hi = h.payload["lo"], h.payload["hi"]
    ok = bool(np.all(values > lo) and np.all(values <= hi))
    margin = float(min(values.min() - lo, hi - values.max()))
    return {
        "id": h.id,
        "status": Status.HOLDS.value if ok else Status.FAILS_AT.value,
        "margin": margin,
        "note": "",
    }


def _condition_result(h: Hypothesis, verdict: ConditionVerdict) -> dict:
    out = {"id": h.id, "status": verdict.status.value, "margin": verdict.margin}
    if verdict.witness is not None:
        out["witness"] = verdict.witness
    if verdict.note:
        out["note"] = verdict.note
    return out


def evaluate_hypothesis(h: Hypothesis, s: Scenario, grid: GridSpec | None = None) -> dict:
    gx, gy = s.system_x.generator, s.system_y.generator
    if h.kind == "superadditive":
        return _condition_result(h, arch.check_superadditive(gx, gy, grid))
    if h.kind == "log_concave":
        return _condition_result(h, arch.check_log_concave_psi(gx, grid))
    if h.kind == "phi_condition":
        return _condition_result(
            h, arch.check_phi_condition(gx, h.payload["c"], h.payload["alpha"], grid)
        )
    if h.kind == "psi_ratio":
        return _condition_result(h, arch.check_psi_ratio(gx, grid))
    if h.kind == "star_condition_max":
        return _condition_result(h, arch.check_star_condition_max(gx, h.payload["alpha"], grid))
    if h.kind == "star_condition_min":
        return _condition_result(h, arch.check_star_condition_min(gx, h.payload["alpha"], grid))
    if h.kind == "k_range":
        vals = np.concatenate([_vector_of(s.system_x, "shapes"), _vector_of(s.system_y, "shapes")])
        return _range_result(h, vals)
    if h.kind == "alpha_range":
        vals = np.concatenate([_vector_of(s.system_x, "tilts"), _vector_of(s.system_y, "tilts")])
        return _range_result(h, vals)
    if h.kind == "majorization":
        return _majorization_result(h, s)
    raise ValueError(f"unknown hypothesis kind {h.kind!r}")


# ---------------------------------------------------------------------------
# Scenario execution
# ---------------------------------------------------------------------------

_ORDER_CHECK: dict[str, Callable] = {
    Order.ST: so.check_usual_st,
    Order.HR: so.check_hazard_rate,
    Order.RH: so.check_reversed_hazard,
    Order.DISP: so.check_dispersive,
    Order.STAR: so.check_star,
    Order.LORENZ: so.check_lorenz,
}


def _scenario_handles(s: Scenario):
    hx = dist_handle(s.system_x, s.statistic, label="F_X")
    hy = dist_handle(s.system_y, s.statistic, label="F_Y")
    return hx, hy


def run_scenario(s: Scenario, grid: GridSpec | None = None) -> TheoremCheck:
    """Evaluate one scenario's hypotheses and its claim that X dominates Y.

    The conclusion checker verifies "Y <=_order X"; ``expected='crosses'``
    scenarios additionally locate a crossing of the two cdfs.
    """
    grid = grid or GridSpec()
    hyp = tuple(evaluate_hypothesis(h, s) for h in s.hypothesis_checks)
    hx, hy = _scenario_handles(s)
    verdict = _ORDER_CHECK[s.order](hy, hx, grid)
    crossing = None
    if s.expected == "crosses" and s.order == Order.ST:
        crossing = so.find_crossing(hy, hx, grid)
    all_hold = all(r["status"] == Status.HOLDS.value for r in hyp)
    consistent = (not all_hold) or verdict.holds
    if s.expected == "holds":
        match = verdict.holds
    else:
        match = (not verdict.holds) and crossing is not None and (
            abs(crossing[1]) > CROSSING_GAP and abs(crossing[2]) > CROSSING_GAP
        )
    return TheoremCheck(
        theorem_id=s.name,
        hypothesis_results=hyp,
        conclusion_verdict=verdict,
        consistent=consistent,
        crossing=crossing,
        expected=s.expected,
        expected_match=match,
    )


def run_random_n_scenario(s: Scenario, grid: GridSpec | None = None) -> TheoremCheck:
    """Random-sample-size variant: requires counts with N1 <=_st N2.

    The claim compared is the printed one: for maxima X_{N1:N1} >=_st
    Y_{N2:N2}, for minima Y_{1:N2} >=_st X_{1:N1}.  The count ordering is
    recorded among the hypotheses; the run reports consistency rather than
    forcing the claim.
    """
    if s.counts is None:
        raise ContractError("scenario has no count distributions")
    n1, n2 = s.counts
    if not n1.st_leq(n2):
        raise ContractError("precondition N1 <=_st N2 violated")
    grid = grid or GridSpec()
    hyp = [evaluate_hypothesis(h, s) for h in s.hypothesis_checks]
    hyp.append(
        {
            "id": "N1 <=_st N2",
            "status": Status.HOLDS.value,
            "margin": None,
            "note": f"proof-direction N2 <=_st N1: {n2.st_leq(n1)}",
        }
    )
    hx = mixture_handle(s.system_x, n1, s.statistic, label="F_X_mix")
    hy = mixture_handle(s.system_y, n2, s.statistic, label="F_Y_mix")
    if s.statistic is Statistic.MAX:
        verdict = so.check_usual_st(hy, hx, grid)
    else:
        verdict = so.check_usual_st(hx, hy, grid)
    all_hold = all(r["status"] == Status.HOLDS.value for r in hyp)
    consistent = (not all_hold) or verdict.holds
    return TheoremCheck(
        theorem_id=f"{s.name}+random_n",
        hypothesis_results=tuple(hyp),
        conclusion_verdict=verdict,
        consistent=consistent,
    )


def _json_safe(obj):
    if isinstance(obj, dict):
        return {k: _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        if np.isnan(v):
            return None
        return max(min(v, 1e308), -1e308)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def scenario_curves(s: Scenario, grid: GridSpec | None = None) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(x, F_X, F_Y) curves over the pooled grid, for CSV export."""
    grid = grid or GridSpec()
    hx, hy = _scenario_handles(s)
    x = so.build_grid(hx, hy, grid)
    return x, np.asarray(hx.cdf(x)), np.asarray(hy.cdf(x))


def run_all(
    report_path=None,
    grid: GridSpec | None = None,
    csv_dir=None,
    scenarios: list[Scenario] | None = None,
) -> dict:
    """Run every builtin scenario; optionally write the JSON report and CSVs."""
    grid = grid or GridSpec()
    scenarios = scenarios if scenarios is not None else builtin_scenarios()
    t0 = time.perf_counter()
    blocks = []
    for s in scenarios:
        check = run_scenario(s, grid)
        block = {
            "name": s.name,
            "statistic": s.statistic.value,
            "order": s.order,
            "expected": s.expected,
            "verdict": check.conclusion_verdict.to_dict(),
            "hypotheses": list(check.hypothesis_results),
            "consistent": check.consistent,
            "expected_match": check.expected_match,
        }
        if check.crossing is not None:
            block["crossing"] = {
                "x": check.crossing[0],
                "gap_before": check.crossing[1],
                "gap_after": check.crossing[2],
            }
        if csv_dir is not None:
            import os

            x, fx, fy = scenario_curves(s, grid)
            path = os.path.join(str(csv_dir), f"{s.name}.csv")
            _write_curve_csv(path, x, {"F_X": fx, "F_Y": fy})
            block["curves_csv"] = path
        blocks.append(block)
    report = {
        "grid": grid.meta(),
        "elapsed_seconds": time.perf_counter() - t0,
        "scenarios": blocks,
        "all_consistent": all(b["consistent"] for b in blocks),
        "all_match_expected": all(b["expected_match"] for b in blocks),
    }
    report = _json_safe(report)
    if report_path is not None:
        with open(report_path, "w") as fh:
            json.dump(report, fh, indent=2)
            fh.write("\n")
    return report


def _write_curve_csv(path, x: np.ndarray, curves: dict[str, np.ndarray]):
    names = list(curves)
    with open(path, "w", newline="\n") as fh:
        fh.write(",".join(["x"] + names) + "\n")
        for i in range(x.size):
            row = [format(float(x[i]), ".9g")]
            row += [format(float(curves[nm][i]), ".9g") for nm in names]
            fh.write(",".join(row) + "\n")


# ---------------------------------------------------------------------------
# Proof-internal functions exposed for Schur scans
# ---------------------------------------------------------------------------


def min_cdf_of_log_scales(gen: Generator, alpha: float, k: float, x: float) -> Callable:
    """cdf of the minimum at fixed x as a function of the log-scale vector.

    Claimed Schur-convex (and increasing) in the log scales.
    """

    def f(v):
        lams = np.exp(np.asarray(v, dtype=float))
        margs = tuple(EwParams(alpha, l, k) for l in lams)
        system = CoupledSystem(margs, gen, Coupling.SURVIVAL_COPULA)
        return float(extreme_cdf(system, Statistic.MIN, x))

    return f


def max_cdf_of_scales(gen: Generator, alpha: float, k: float, x: float) -> Callable:
    """cdf of the maximum at fixed x as a function of the scale vector.

    Claimed Schur-concave (and increasing) in the scales.
    """

    def f(v):
        margs = tuple(EwParams(alpha, float(l), k) for l in np.asarray(v, dtype=float))
        system = CoupledSystem(margs, gen, Coupling.COPULA)
        return float(extreme_cdf(system, Statistic.MAX, x))

    return f


def hazard_summand_convexity(alpha: float, k: float, points: int = 1500) -> float:
    """Worst curvature of s^k / (1 - (1-alpha) * exp(-s^k)) on a uniform s-grid.

    This is the scale-free form of the per-component hazard of the
    independent-minimum; its convexity is exactly what the hazard-order
    result needs (Schur-convexity of a symmetric separable sum).  Returns
    the minimum second divided difference, normalized by the value scale;
    nonnegative means convex on the probed range.
    """
    s = np.linspace(1e-3, 12.0, points)
    with np.errstate(over="ignore"):
        g = s**k / (1.0 - (1.0 - alpha) * np.exp(-(s**k)))
    d2 = g[2:] - 2.0 * g[1:-1] + g[:-2]
    h2 = (s[1] - s[0]) ** 2
    return float((d2 / h2).min() / max(1.0, g.max()))


# ---------------------------------------------------------------------------
# Theorem fuzzing
# ---------------------------------------------------------------------------


@dataclass
class TheoremInstance:
    params: dict
    hypotheses: list[tuple[str, bool]]
    conclude: Callable[[GridSpec], OrderVerdict]
    context: dict = field(default_factory=dict)


@dataclass(frozen=True)
class TheoremDef:
    name: str
    sample: Callable[[np.random.Generator], Optional[TheoremInstance]]
    description: str = ""


def _spread_out(v: np.ndarray, rng) -> np.ndarray:
    """A vector that majorizes v: outward transfer, total preserved."""
    v = np.sort(v.astype(float))
    d = rng.uniform(0.0, min(v[0] * 0.8, 0.5))
    out = v.copy()
    out[0] -= d
    out[-1] += d
    return out


def _push_in(v: np.ndarray, rng) -> np.ndarray:
    """A vector majorized by v: inward transfer, total preserved."""
    v = np.sort(v.astype(float))
    d = rng.uniform(0.0, (v[-1] - v[0]) / 2.0)
    out = v.copy()
    out[0] += d
    out[-1] -= d
    return np.sort(out)


def _superadd_pair(rng, families=("indep", "gumbel", "exprec")) -> tuple[Generator, Generator]:
    fam = families[rng.integers(0, len(families))]
    if fam == "indep":
        return independence(), independence()
    if fam == "gumbel":
        t2 = rng.uniform(1.0, 3.0)
        t1 = t2 + rng.uniform(0.0, 3.0)
        return gumbel_variant(t1), gumbel_variant(t2)
    t1 = rng.uniform(0.5, 4.0)
    t2 = t1 + rng.uniform(0.0, 3.0)
    return exp_reciprocal(t1), exp_reciprocal(t2)


def _lifetime_grid_handles(sx, sy, stat):
    return dist_handle(sx, stat), dist_handle(sy, stat)


def _st_conclusion(smaller, bigger, stat):
    def conclude(grid: GridSpec) -> OrderVerdict:
        ha, hb = _lifetime_grid_handles(smaller, bigger, stat)
        return so.check_usual_st(ha, hb, grid)

    return conclude


def _count_pair(rng, n: int) -> tuple[CountDistribution, CountDistribution]:
    """(N_big, N_small) with N_small <=_st N_big, supports within 1..n."""
    w = rng.dirichlet(np.ones(n))
    w = np.clip(w / w.sum(), 0.0, 1.0)
    w[-1] = max(0.0, 1.0 - w[:-1].sum())
    small = CountDistribution(tuple((m + 1, float(w[m])) for m in range(n) if w[m] > 0))
    shift = np.zeros(n)
    for m, p in small.pmf:
        up = min(n, m + int(rng.integers(0, n)))
        shift[up - 1] += p
    shift = np.clip(shift, 0.0, 1.0)
    hi = int(np.nonzero(shift)[0][-1])
    shift[hi] = max(0.0, 1.0 - (shift.sum() - shift[hi]))
    big = CountDistribution(tuple((m + 1, float(shift[m])) for m in range(n) if shift[m] > 0))
    return big, small


def _sample_min_st_scales(rng) -> Optional[TheoremInstance]:
    g1, g2 = _superadd_pair(rng, families=("indep", "gumbel"))
    alpha = rng.uniform(0.05, 1.0)
    k = rng.uniform(0.15, 3.0)
    n = int(rng.integers(2, 4))
    lam = np.sort(rng.uniform(0.2, 3.0, n))
    mu = lam * np.exp(-rng.uniform(0.0, 0.8, n))
    sx = CoupledSystem(tuple(EwParams(alpha, l, k) for l in lam), g1, Coupling.SURVIVAL_COPULA)
    sy = CoupledSystem(tuple(EwParams(alpha, m, k) for m in mu), g2, Coupling.SURVIVAL_COPULA)
    hyps = [
        ("superadditive", arch.check_superadditive(g1, g2).holds),
        ("log_concave_psi1", arch.check_log_concave_psi(g1).holds),
        ("log_scales_submajorized", maj.weak_submajorizes(np.log(lam), np.log(mu))),
        ("0<alpha<=1", 0.0 < alpha <= 1.0),
    ]
    params = {"alpha": alpha, "k": k, "lam": lam.tolist(), "mu": mu.tolist(),
              "g1": g1.label(), "g2": g2.label()}
    return TheoremInstance(params, hyps, _st_conclusion(sx, sy, Statistic.MIN))


def _sample_max_st_scales(rng) -> Optional[TheoremInstance]:
    g1, g2 = _superadd_pair(rng)
    alpha = rng.uniform(0.05, 1.0)
    k = rng.uniform(0.15, 1.0)
    n = int(rng.integers(2, 4))
    lam = np.sort(rng.uniform(0.2, 3.0, n))
    mu = lam + rng.uniform(0.0, 1.5, n)
    sx = CoupledSystem(tuple(EwParams(alpha, l, k) for l in lam), g1, Coupling.COPULA)
    sy = CoupledSystem(tuple(EwParams(alpha, m, k) for m in mu), g2, Coupling.COPULA)
    hyps = [
        ("superadditive", arch.check_superadditive(g1, g2).holds),
        ("scales_supermajorized", maj.weak_supermajorizes(lam, mu)),
        ("0<k<=1", 0.0 < k <= 1.0),
        ("0<alpha<=1", 0.0 < alpha <= 1.0),
    ]
    params = {"alpha": alpha, "k": k, "lam": lam.tolist(), "mu": mu.tolist(),
              "g1": g1.label(), "g2": g2.label()}
    return TheoremInstance(params, hyps, _st_conclusion(sy, sx, Statistic.MAX))


def _shape_pair(rng, n):
    l_shapes = np.sort(rng.uniform(0.4, 2.5, n))
    k_shapes = _spread_out(l_shapes, rng)
    return k_shapes, l_shapes


def _sample_max_st_shapes(rng) -> Optional[TheoremInstance]:
    if rng.uniform() < 0.3:
        g1 = g2 = independence()
        alpha = 1.0
    else:
        t1 = rng.uniform(0.5, 4.0)
        g1, g2 = exp_reciprocal(t1), exp_reciprocal(t1 + rng.uniform(0.0, 3.0))
        alpha = rng.uniform(min(1.0, 1.0 / (2.0 + t1)) + 0.02, 1.0)
    lam = rng.uniform(0.3, 3.0)
    n = int(rng.integers(2, 4))
    k_shapes, l_shapes = _shape_pair(rng, n)
    cond = arch.check_phi_condition(g1, 1.0, alpha)
    sx = CoupledSystem(tuple(EwParams(alpha, lam, kk) for kk in k_shapes), g1, Coupling.COPULA)
    sy = CoupledSystem(tuple(EwParams(alpha, lam, ll) for ll in l_shapes), g2, Coupling.COPULA)
    hyps = [
        ("superadditive", arch.check_superadditive(g1, g2).holds),
        ("alpha*t*phi1''+phi1'>=0", cond.holds),
        ("shapes_x_majorize_shapes_y", maj.majorizes(k_shapes, l_shapes)),
        ("0<alpha<=1", 0.0 < alpha <= 1.0),
    ]
    params = {"alpha": alpha, "lam": lam, "k_shapes": k_shapes.tolist(),
              "l_shapes": l_shapes.tolist(), "g1": g1.label(), "g2": g2.label()}
    return TheoremInstance(params, hyps, _st_conclusion(sy, sx, Statistic.MAX))


def _sample_min_st_shapes(rng) -> Optional[TheoremInstance]:
    if rng.uniform() < 0.3:
        g1 = g2 = independence()
    else:
        t1 = rng.uniform(0.5, 4.0)
        g1, g2 = exp_reciprocal(t1), exp_reciprocal(t1 + rng.uniform(0.0, 3.0))
    alpha = rng.uniform(0.05, 1.0)
    lam = rng.uniform(0.3, 3.0)
    n = int(rng.integers(2, 4))
    k_shapes, l_shapes = _shape_pair(rng, n)
    cond = arch.check_phi_condition(g1, 1.0, 1.0)
    sx = CoupledSystem(tuple(EwParams(alpha, lam, kk) for kk in k_shapes), g1, Coupling.SURVIVAL_COPULA)
    sy = CoupledSystem(tuple(EwParams(alpha, lam, ll) for ll in l_shapes), g2, Coupling.SURVIVAL_COPULA)
    hyps = [
        ("superadditive", arch.check_superadditive(g1, g2).holds),
        ("t*phi1''+phi1'>=0", cond.holds),
        ("shapes_x_majorize_shapes_y", maj.majorizes(k_shapes, l_shapes)),
        ("0<alpha<=1", 0.0 < alpha <= 1.0),
    ]
    params = {"alpha": alpha, "lam": lam, "k_shapes": k_shapes.tolist(),
              "l_shapes": l_shapes.tolist(), "g1": g1.label(), "g2": g2.label()}
    return TheoremInstance(params, hyps, _st_conclusion(sx, sy, Statistic.MIN))


def _sample_max_st_tilts(rng) -> Optional[TheoremInstance]:
    t1 = rng.uniform(0.5, 4.0)
    g1, g2 = exp_reciprocal(t1), exp_reciprocal(t1 + rng.uniform(0.0, 3.0))
    lam = rng.uniform(0.3, 3.0)
    k = rng.uniform(0.2, 4.0)
    n = int(rng.integers(2, 4))
    beta = np.sort(rng.uniform(0.05, 1.6, n))
    alpha = beta + rng.uniform(0.0, 0.6, n)
    cond = arch.check_phi_condition(g1, 2.0, 1.0)
    sx = CoupledSystem(tuple(EwParams(a, lam, k) for a in alpha), g1, Coupling.COPULA)
    sy = CoupledSystem(tuple(EwParams(b, lam, k) for b in beta), g2, Coupling.COPULA)
    hyps = [
        ("superadditive", arch.check_superadditive(g1, g2).holds),
        ("t*phi1''+2*phi1'>=0", cond.holds),
        ("tilts_x_submajorize", maj.weak_submajorizes(alpha, beta)),
    ]
    params = {"alpha": alpha.tolist(), "beta": beta.tolist(), "lam": lam, "k": k,
              "g1": g1.label(), "g2": g2.label()}
    return TheoremInstance(params, hyps, _st_conclusion(sy, sx, Statistic.MAX))


def _sample_min_st_tilts(rng) -> Optional[TheoremInstance]:
    g1, g2 = _superadd_pair(rng)
    lam = rng.uniform(0.3, 3.0)
    k = rng.uniform(0.2, 4.0)
    n = int(rng.integers(2, 4))
    alpha = np.sort(rng.uniform(0.05, 1.6, n))
    beta = alpha + rng.uniform(0.0, 0.6, n)
    sx = CoupledSystem(tuple(EwParams(a, lam, k) for a in alpha), g1, Coupling.SURVIVAL_COPULA)
    sy = CoupledSystem(tuple(EwParams(b, lam, k) for b in beta), g2, Coupling.SURVIVAL_COPULA)
    hyps = [
        ("superadditive", arch.check_superadditive(g1, g2).holds),
        ("tilts_x_supermajorize", maj.weak_supermajorizes(alpha, beta)),
    ]
    params = {"alpha": alpha.tolist(), "beta": beta.tolist(), "lam": lam, "k": k,
              "g1": g1.label(), "g2": g2.label()}
    return TheoremInstance(params, hyps, _st_conclusion(sx, sy, Statistic.MIN))


def _hazard_conclusion(smaller, bigger):
    def conclude(grid: GridSpec) -> OrderVerdict:
        ha, hb = _lifetime_grid_handles(smaller, bigger, Statistic.MIN)
        return so.check_hazard_rate(ha, hb, grid)

    return conclude


def _sample_min_hr_scales(rng) -> Optional[TheoremInstance]:
    alpha = rng.uniform(0.05, 1.0)
    k = rng.uniform(1.0, 5.0)
    if hazard_summand_convexity(alpha, k) < -1e-8:
        return None  # outside the region where the separable sum is Schur-convex
    n = int(rng.integers(2, 4))
    lam = np.sort(rng.uniform(0.2, 3.0, n))
    mu = _push_in(lam, rng)
    g = independence()
    sx = CoupledSystem(tuple(EwParams(alpha, l, k) for l in lam), g, Coupling.SURVIVAL_COPULA)
    sy = CoupledSystem(tuple(EwParams(alpha, m, k) for m in mu), g, Coupling.SURVIVAL_COPULA)
    hyps = [
        ("scales_x_majorize_scales_y", maj.majorizes(lam, mu)),
        ("k>=1", k >= 1.0),
        ("0<alpha<=1", 0.0 < alpha <= 1.0),
        ("hazard_summand_convex", hazard_summand_convexity(alpha, k) >= -1e-8),
    ]
    params = {"alpha": alpha, "k": k, "lam": lam.tolist(), "mu": mu.tolist()}
    return TheoremInstance(params, hyps, _hazard_conclusion(sx, sy))


def _sample_min_hr_tilts(rng) -> Optional[TheoremInstance]:
    lam = rng.uniform(0.3, 3.0)
    k = rng.uniform(0.15, 5.0)
    n = int(rng.integers(2, 4))
    alpha = np.sort(rng.uniform(0.05, 1.6, n))
    beta = alpha + rng.uniform(0.0, 0.5, n)
    g = independence()
    sx = CoupledSystem(tuple(EwParams(a, lam, k) for a in alpha), g, Coupling.SURVIVAL_COPULA)
    sy = CoupledSystem(tuple(EwParams(b, lam, k) for b in beta), g, Coupling.SURVIVAL_COPULA)
    hyps = [("tilts_x_supermajorize", maj.weak_supermajorizes(alpha, beta))]
    params = {"alpha": alpha.tolist(), "beta": beta.tolist(), "lam": lam, "k": k}
    return TheoremInstance(params, hyps, _hazard_conclusion(sx, sy))


def _sample_max_rh_tilts(rng) -> Optional[TheoremInstance]:
    lam = rng.uniform(0.3, 3.0)
    k = rng.uniform(0.15, 5.0)
    n = int(rng.integers(2, 4))
    alpha = np.sort(rng.uniform(0.05, 1.6, n))
    beta = alpha + rng.uniform(0.0, 0.5, n)
    g = independence()
    sx = CoupledSystem(tuple(EwParams(a, lam, k) for a in alpha), g, Coupling.COPULA)
    sy = CoupledSystem(tuple(EwParams(b, lam, k) for b in beta), g, Coupling.COPULA)

    def conclude(grid: GridSpec) -> OrderVerdict:
        ha, hb = _lifetime_grid_handles(sx, sy, Statistic.MAX)
        return so.check_reversed_hazard(ha, hb, grid)

    hyps = [("tilts_x_supermajorize", maj.weak_supermajorizes(alpha, beta))]
    params = {"alpha": alpha.tolist(), "beta": beta.tolist(), "lam": lam, "k": k}
    return TheoremInstance(params, hyps, conclude)


def _two_group_scales(rng):
    l1 = rng.uniform(0.2, 2.0)
    ratio = rng.uniform(1.0, 4.0)
    m1 = rng.uniform(0.2, 2.0)
    ratio2 = rng.uniform(1.0, ratio)
    return l1, l1 * ratio, m1, m1 * ratio2


def _sample_star(rng, which: Statistic) -> Optional[TheoremInstance]:
    if which is Statistic.MAX:
        g = independence()
        alpha = rng.uniform(0.5, 1.0)
        cond = arch.check_star_condition_max(g, alpha)
        coupling = Coupling.COPULA
    else:
        if rng.uniform() < 0.5:
            g, alpha = independence(), 1.0
        else:
            g, alpha = exp_reciprocal(rng.uniform(0.5, 3.0)), rng.uniform(0.2, 1.0)
        cond = arch.check_star_condition_min(g, alpha)
        coupling = Coupling.SURVIVAL_COPULA
    if not cond.holds:
        return None
    k = rng.uniform(0.15, 1.0)
    l1, l2, m1, m2 = _two_group_scales(rng)
    p = int(rng.integers(1, 3))
    q = int(rng.integers(1, 3))
    margs_x = tuple(EwParams(alpha, l1, k) for _ in range(p)) + tuple(
        EwParams(alpha, l2, k) for _ in range(q)
    )
    margs_y = tuple(EwParams(alpha, m1, k) for _ in range(p)) + tuple(
        EwParams(alpha, m2, k) for _ in range(q)
    )
    sx = CoupledSystem(margs_x, g, coupling)
    sy = CoupledSystem(margs_y, g, coupling)

    def conclude(grid: GridSpec) -> OrderVerdict:
        hx, hy = _lifetime_grid_handles(sx, sy, which)
        if which is Statistic.MAX:
            return so.check_star(hy, hx, grid)  # Y <=_* X for maxima
        return so.check_star(hx, hy, grid)  # X <=_* Y for minima (proof direction)

    hyps = [
        ("star_condition", cond.holds),
        ("0<k<=1", 0.0 < k <= 1.0),
        ("same_ordering", (l1 - l2) * (m1 - m2) >= 0.0),
        ("ratio_dominance", l2 / l1 >= m2 / m1),
    ]
    params = {"alpha": alpha, "k": k, "scales_x": (l1, l2), "scales_y": (m1, m2),
              "p": p, "q": q, "g": g.label()}
    return TheoremInstance(params, hyps, conclude, context={"sx": sx, "sy": sy, "which": which})


def _sample_lorenz(rng, which: Statistic) -> Optional[TheoremInstance]:
    inst = _sample_star(rng, which)
    if inst is None:
        return None
    sx, sy = inst.context["sx"], inst.context["sy"]

    def conclude(grid: GridSpec) -> OrderVerdict:
        hx, hy = _lifetime_grid_handles(sx, sy, which)
        if which is Statistic.MAX:
            return so.check_lorenz(hy, hx, grid)  # Y <=_Lorenz X for maxima
        return so.check_lorenz(hx, hy, grid)  # X <=_Lorenz Y for minima

    return TheoremInstance(inst.params, inst.hypotheses, conclude, context=inst.context)


def _sample_min_disp(rng) -> Optional[TheoremInstance]:
    if rng.uniform() < 0.5:
        g = independence()
    else:
        g = exp_reciprocal(rng.uniform(0.5, 4.0))
    cond = arch.check_psi_ratio(g)
    if not cond.holds:
        return None
    alpha = rng.uniform(0.05, 1.0)
    k = rng.uniform(0.1, 1.0)
    n = int(rng.integers(2, 4))
    lams = rng.uniform(0.2, 3.0, n)
    lam_c = float(np.exp(np.log(lams).mean()) * rng.uniform(0.4, 1.0))
    sx = CoupledSystem(tuple(EwParams(alpha, l, k) for l in lams), g, Coupling.SURVIVAL_COPULA)
    sy = CoupledSystem(tuple(EwParams(alpha, lam_c, k) for _ in range(n)), g, Coupling.SURVIVAL_COPULA)

    def conclude(grid: GridSpec) -> OrderVerdict:
        hx, hy = _lifetime_grid_handles(sx, sy, Statistic.MIN)
        return so.check_dispersive(hx, hy, grid)  # X <=_disp Y

    hyps = [
        ("psi_ratio_decreasing_concave", cond.holds),
        ("0<k<=1", 0.0 < k <= 1.0),
        ("0<alpha<=1", 0.0 < alpha <= 1.0),
        ("common_scale<=geomean", lam_c <= float(np.exp(np.log(lams).mean())) + 1e-12),
    ]
    params = {"alpha": alpha, "k": k, "lams": lams.tolist(), "lam_common": lam_c, "g": g.label()}
    return TheoremInstance(params, hyps, conclude)


def _sample_random_n(rng, which: Statistic) -> Optional[TheoremInstance]:
    base = _sample_max_st_scales(rng) if which is Statistic.MAX else _sample_min_st_scales(rng)
    if base is None or not all(ok for _, ok in base.hypotheses):
        return None
    alpha, k = base.params["alpha"], base.params["k"]
    lam = np.asarray(base.params["lam"])
    mu = np.asarray(base.params["mu"])
    g1 = _generator_from_label(base.params["g1"])
    g2 = _generator_from_label(base.params["g2"])
    coupling = Coupling.COPULA if which is Statistic.MAX else Coupling.SURVIVAL_COPULA
    sx = CoupledSystem(tuple(EwParams(alpha, l, k) for l in lam), g1, coupling)
    sy = CoupledSystem(tuple(EwParams(alpha, m, k) for m in mu), g2, coupling)
    n_x, n_y = _count_pair(rng, sx.n)  # N_Y <=_st N_X: proof-valid ordering

    def conclude(grid: GridSpec) -> OrderVerdict:
        hx = mixture_handle(sx, n_x, which)
        hy = mixture_handle(sy, n_y, which)
        if which is Statistic.MAX:
            return so.check_usual_st(hy, hx, grid)  # X_{Nx:Nx} >=_st Y_{Ny:Ny}
        return so.check_usual_st(hx, hy, grid)  # Y_{1:Ny} >=_st X_{1:Nx}

    hyps = base.hypotheses + [("count_order_Ny<=st_Nx", n_y.st_leq(n_x))]
    params = dict(base.params, n_x=n_x.pmf, n_y=n_y.pmf)
    return TheoremInstance(params, hyps, conclude)


def _generator_from_label(label: str) -> Generator:
    if label == "independence":
        return independence()
    fam, _, rest = label.partition("(theta=")
    theta = float(rest.rstrip(")"))
    if fam == "gumbel_variant":
        return gumbel_variant(theta)
    if fam == "exp_reciprocal":
        return exp_reciprocal(theta)
    raise ValueError(f"bad generator label {label!r}")


THEOREMS: dict[str, TheoremDef] = {
    "min_st_scales": TheoremDef(
        "min_st_scales", _sample_min_st_scales,
        "series systems, log-scale submajorization -> usual stochastic order"),
    "max_st_scales": TheoremDef(
        "max_st_scales", _sample_max_st_scales,
        "parallel systems, scale supermajorization, k<=1 -> usual stochastic order"),
    "max_st_shapes": TheoremDef(
        "max_st_shapes", _sample_max_st_shapes,
        "parallel systems, shape majorization -> usual stochastic order"),
    "min_st_shapes": TheoremDef(
        "min_st_shapes", _sample_min_st_shapes,
        "series systems, shape majorization -> usual stochastic order"),
    "max_st_tilts": TheoremDef(
        "max_st_tilts", _sample_max_st_tilts,
        "parallel systems, tilt submajorization -> usual stochastic order"),
    "min_st_tilts": TheoremDef(
        "min_st_tilts", _sample_min_st_tilts,
        "series systems, tilt supermajorization -> usual stochastic order"),
    "min_hr_scales": TheoremDef(
        "min_hr_scales", _sample_min_hr_scales,
        "independent series systems, scale majorization -> hazard rate order"),
    "min_hr_tilts": TheoremDef(
        "min_hr_tilts", _sample_min_hr_tilts,
        "independent series systems, tilt supermajorization -> hazard rate order"),
    "max_rh_tilts": TheoremDef(
        "max_rh_tilts", _sample_max_rh_tilts,
        "independent parallel systems, tilt supermajorization -> reversed hazard order"),
    "star_max": TheoremDef(
        "star_max", lambda rng: _sample_star(rng, Statistic.MAX),
        "two-group parallel systems -> star order"),
    "star_min": TheoremDef(
        "star_min", lambda rng: _sample_star(rng, Statistic.MIN),
        "two-group series systems -> star order"),
    "lorenz_max": TheoremDef(
        "lorenz_max", lambda rng: _sample_lorenz(rng, Statistic.MAX),
        "two-group parallel systems -> Lorenz order (via star)"),
    "lorenz_min": TheoremDef(
        "lorenz_min", lambda rng: _sample_lorenz(rng, Statistic.MIN),
        "two-group series systems -> Lorenz order (via star)"),
    "min_disp": TheoremDef(
        "min_disp", _sample_min_disp,
        "series systems, common scale below geometric mean -> dispersive order"),
    "random_n_min_st": TheoremDef(
        "random_n_min_st", lambda rng: _sample_random_n(rng, Statistic.MIN),
        "random sample sizes, series systems -> usual stochastic order"),
    "random_n_max_st": TheoremDef(
        "random_n_max_st", lambda rng: _sample_random_n(rng, Statistic.MAX),
        "random sample sizes, parallel systems -> usual stochastic order"),
}


@dataclass
class FuzzReport:
    theorem: str
    accepted: int
    attempted: int
    failures: list

    @property
    def ok(self) -> bool:
        return not self.failures


def fuzz_theorem(
    name: str,
    n: int = 200,
    seed: int | None = None,
    grid: GridSpec | None = None,
    max_attempts_factor: int = 40,
) -> FuzzReport:
    """Run ``n`` random in-region instances of a theorem; conclusions must hold.

    Instances whose hypothesis re-checks do not all hold are rejected and
    resampled.  Every failure record carries the full instance parameters.
    """
    td = THEOREMS[name]
    if seed is None:
        seed = abs(hash(name)) % (2**31)
    rng = np.random.default_rng(seed)
    grid = grid or GridSpec(points=384)
    accepted = 0
    attempts = 0
    failures = []
    while accepted < n and attempts < max_attempts_factor * n:
        attempts += 1
        inst = td.sample(rng)
        if inst is None or not all(ok for _, ok in inst.hypotheses):
            continue
        accepted += 1
        verdict = inst.conclude(grid)
        if not verdict.holds:
            failures.append({"params": inst.params, "verdict": verdict.to_dict()})
    if accepted < n:
        raise ContractError(f"could not draw {n} in-region instances of {name}")
    return FuzzReport(name, accepted, attempts, failures)
