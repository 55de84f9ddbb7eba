import math

import numpy as np
import pytest

from ewextremes import DomainError
from ewextremes.archimedean import (
    Family,
    Generator,
    check_log_concave_psi,
    check_phi_condition,
    check_psi_ratio,
    check_star_condition_max,
    check_star_condition_min,
    check_superadditive,
    exp_reciprocal,
    gumbel_variant,
    independence,
)
from ewextremes.grids import GridSpec
from ewextremes.verdicts import Status

ALL_THETAS = [0.5, 0.8, 1.0, 1.3, 1.7, 2.0, 2.2, 2.45, 2.6, 3.0, 3.5, 4.0, 5.0, 6.0, 7.0,
              8.0, 8.9, 10.0, 15.0, 22.6]


def _families():
    gens = [independence()]
    gens += [gumbel_variant(t) for t in ALL_THETAS if t >= 1.0]
    gens += [exp_reciprocal(t) for t in ALL_THETAS]
    return gens


def test_psi_at_zero_and_monotone():
    x = np.linspace(0.0, 30.0, 500)
    for g in _families():
        v = g.psi(x)
        assert v[0] == pytest.approx(1.0, abs=1e-14)
        assert np.all(np.diff(v) <= 1e-15)
        assert g.psi(1e300) < 0.05  # the exp-reciprocal tail decays only like 1/log x


def test_phi_at_one_is_zero():
    for g in _families():
        assert g.phi(1.0) == pytest.approx(0.0, abs=1e-12)


def test_independence_closed_forms():
    g = independence()
    assert g.phi(math.exp(-1)) == pytest.approx(1.0, rel=1e-14)
    x = np.linspace(0.0, 5, 50)
    assert np.allclose(g.psi_d1(x), -np.exp(-x), rtol=1e-14)
    assert np.allclose(g.psi_d2(x), np.exp(-x), rtol=1e-14)


def test_gumbel_theta_one_is_independence():
    g1 = gumbel_variant(1.0)
    g0 = independence()
    x = np.linspace(0.0, 40.0, 300)
    assert np.max(np.abs(g1.psi(x) - g0.psi(x))) < 1e-14
    t = np.linspace(1e-6, 1.0, 300)
    assert np.max(np.abs(g1.phi(t) - g0.phi(t))) < 1e-12


def test_gumbel_phi_closed_form():
    g = gumbel_variant(3.0)
    expect = (1.0 - math.log(0.5)) ** (1.0 / 3.0) - 1.0
    assert g.phi(0.5) == pytest.approx(expect, rel=1e-14)
    assert g.psi(g.phi(0.5)) == pytest.approx(0.5, abs=1e-12)


def test_exp_reciprocal_roundtrip_value():
    g = exp_reciprocal(2.0)
    assert g.psi(g.phi(0.3)) == pytest.approx(0.3, abs=1e-10)


def test_exp_reciprocal_phi_d1_closed_form():
    g = exp_reciprocal(2.0)
    # -(theta/t^2) * exp(theta/t) at t = 0.5
    expect = -(2.0 / 0.25) * math.exp(4.0)
    assert g.phi_d1(0.5) == pytest.approx(expect, rel=1e-13)
    h = 1e-6
    fd = (g.phi(0.5 + h) - g.phi(0.5 - h)) / (2 * h)
    assert g.phi_d1(0.5) == pytest.approx(fd, rel=1e-8)


def test_phi_psi_inverse_roundtrips():
    for g in _families():
        # phi(psi(x)) = x, on x where psi is representable above underflow
        x_hi = 50.0
        if g.family is Family.GUMBEL_VARIANT:
            x_hi = min(x_hi, 0.9 * (690.0 ** (1.0 / g.theta) - 1.0))
        x = np.geomspace(1e-6, x_hi, 200)
        back = g.phi(np.clip(g.psi(x), 1e-300, 1.0))
        assert np.max(np.abs(back - x) / np.maximum(1.0, x)) < 1e-10
        # psi(phi(t)) = t restricted to t where phi(t) is representable
        lo = 1e-8
        if g.family is Family.EXP_RECIPROCAL:
            lo = max(lo, g.theta / 700.0)
        t = np.geomspace(lo, 1.0 - 1e-8, 200)
        back_t = g.psi(g.phi(t))
        assert np.max(np.abs(back_t - t)) < 1e-10


def test_derivatives_match_finite_differences():
    for g in _families():
        x = np.geomspace(1e-3, 20.0, 40)
        h = 1e-6 * np.maximum(1.0, x)
        fd1 = (g.psi(x + h) - g.psi(x - h)) / (2 * h)
        fd2 = (g.psi(x + h) - 2.0 * g.psi(x) + g.psi(x - h)) / h**2
        d1, d2 = g.psi_d1(x), g.psi_d2(x)
        scale1 = np.maximum(np.abs(d1), 1e-12)
        keep = np.abs(d1) > 1e-280
        assert np.max(np.abs((fd1 - d1) / scale1)[keep]) < 1e-5
        keep2 = np.abs(d2) > 1e-250
        scale2 = np.maximum(np.abs(d2), 1e-12)
        assert np.max(np.abs((fd2 - d2) / scale2)[keep2]) < 3e-4

        lo = 0.05 if g.family is Family.EXP_RECIPROCAL else 1e-3
        t = np.linspace(max(lo, g.theta / 600.0 if g.family is Family.EXP_RECIPROCAL else lo), 0.999, 40)
        ht = 1e-7
        fd1 = (g.phi(t + ht) - g.phi(t - ht)) / (2 * ht)
        d1 = g.phi_d1(t)
        assert np.max(np.abs((fd1 - d1) / np.maximum(np.abs(d1), 1e-12))) < 1e-5
        fd2 = (g.phi(t + ht) - 2.0 * g.phi(t) + g.phi(t - ht)) / ht**2
        d2 = g.phi_d2(t)
        assert np.max(np.abs((fd2 - d2) / np.maximum(np.abs(d2), 1e-12))) < 1e-3


def test_phi_ratio_consistent_with_derivatives():
    for g in _families():
        t = np.linspace(0.2, 0.99, 50)
        ratio = g.phi_d2_over_d1(t)
        direct = g.phi_d2(t) / g.phi_d1(t)
        assert np.allclose(ratio, direct, rtol=1e-11)


def test_coupled_value_matches_naive_composition():
    rng = np.random.default_rng(5)
    for g in [independence(), gumbel_variant(2.5), exp_reciprocal(2.0), exp_reciprocal(8.0)]:
        lo = 0.05 if g.family is Family.EXP_RECIPROCAL else 1e-4
        V = rng.uniform(lo, 1.0, size=(3, 40))
        naive = g.psi(g.phi(V).sum(axis=0))
        stable = g.coupled_value(V)
        assert np.max(np.abs(naive - stable)) < 1e-12


def test_coupled_value_boundary_exactness():
    # C(v, 1, ..., 1) = v for every Archimedean copula
    for g in _families():
        for v in (0.2, 0.7, 0.95):
            V = np.array([[v], [1.0], [1.0]])
            assert g.coupled_value(V)[0] == pytest.approx(v, abs=1e-12)


def test_superadditive_self_is_holds():
    for g in [independence(), gumbel_variant(2.0), exp_reciprocal(1.7)]:
        assert check_superadditive(g, g).holds


def test_superadditive_gumbel_direction():
    assert check_superadditive(gumbel_variant(3.0), gumbel_variant(1.5)).holds
    v = check_superadditive(gumbel_variant(1.5), gumbel_variant(3.0))
    assert v.status is Status.FAILS_AT
    assert v.witness is not None


def test_superadditive_exp_reciprocal_direction():
    assert check_superadditive(exp_reciprocal(2.2), exp_reciprocal(2.45)).holds
    assert check_superadditive(exp_reciprocal(2.4), exp_reciprocal(3.7)).holds
    assert check_superadditive(exp_reciprocal(2.48), exp_reciprocal(2.24)).status is Status.FAILS_AT
    # the large-theta violation sits far outside a naive [0, 40]^2 argument box
    assert check_superadditive(exp_reciprocal(22.6), exp_reciprocal(10.7)).status is Status.FAILS_AT


def test_superadditive_flagged_generator_inconclusive():
    v = check_superadditive(gumbel_variant(3.0), gumbel_variant(0.6))
    assert v.status is Status.INCONCLUSIVE


def test_log_concave_psi():
    assert check_log_concave_psi(independence()).holds
    assert check_log_concave_psi(gumbel_variant(3.0)).holds

    class StubRootExp:
        # psi(x) = exp(-sqrt(x)): log psi = -sqrt(x) is convex
        valid_generator = True

        def psi(self, x):
            return np.exp(-np.sqrt(np.asarray(x, dtype=float)))

        def psi_d1(self, x):
            x = np.asarray(x, dtype=float)
            return -0.5 / np.sqrt(x) * np.exp(-np.sqrt(x))

        def psi_d2(self, x):
            x = np.asarray(x, dtype=float)
            return (0.25 / x + 0.25 * x**-1.5) * np.exp(-np.sqrt(x))

    assert check_log_concave_psi(StubRootExp()).status is Status.FAILS_AT


def test_phi_condition_variants():
    assert check_phi_condition(exp_reciprocal(2.2), c=1.0, alpha=0.5).holds
    assert check_phi_condition(exp_reciprocal(2.4), c=2.0, alpha=1.0).holds
    v = check_phi_condition(independence(), c=2.0, alpha=1.0)
    assert v.status is Status.FAILS_AT
    # equality case: alpha*t/t^2 - 1/t = 0 for the independence generator
    assert check_phi_condition(independence(), c=1.0, alpha=1.0).holds


def test_psi_ratio_verdicts():
    assert check_psi_ratio(independence()).holds
    assert check_psi_ratio(exp_reciprocal(2.0)).holds
    # frozen from the numeric scan: the Gumbel-variant ratio increases
    v = check_psi_ratio(gumbel_variant(2.0))
    assert v.status is Status.FAILS_AT
    assert v.note == "not decreasing"

    class StubConvexRatio:
        # decreasing but convex psi/psi': e^-x - 2
        valid_generator = True

        def psi_over_psi_d1(self, x):
            return np.exp(-np.asarray(x, dtype=float)) - 2.0

    assert check_psi_ratio(StubConvexRatio()).status is Status.FAILS_AT


def test_star_conditions_alpha_one_simplification():
    # alpha = 1 collapses the leading factor to log(t); values stay finite inside
    for g in [independence(), exp_reciprocal(1.5)]:
        for check in (check_star_condition_max, check_star_condition_min):
            v = check(g, 1.0)
            assert v.status in (Status.HOLDS, Status.FAILS_AT)


def test_star_condition_scan_verdicts():
    # frozen from the grid oracle
    assert check_star_condition_max(independence(), 0.5).holds
    assert check_star_condition_max(independence(), 1.0).holds
    assert check_star_condition_max(independence(), 0.3).status is Status.FAILS_AT
    assert check_star_condition_min(independence(), 1.0).holds
    assert check_star_condition_min(independence(), 0.5).status is Status.FAILS_AT
    assert check_star_condition_min(exp_reciprocal(2.0), 0.5).holds
    assert check_star_condition_min(exp_reciprocal(1.0), 1.0).holds


def test_star_condition_refinement_stable():
    for pts in (512, 1024, 2048, 4096):
        grid = GridSpec(points=pts)
        assert check_star_condition_max(independence(), 0.6, grid).holds
        assert check_star_condition_min(exp_reciprocal(2.0), 0.7, grid).holds
        assert check_star_condition_max(independence(), 0.25, grid).status is Status.FAILS_AT


def test_flagged_generator_fields():
    assert not gumbel_variant(0.6).valid_generator
    assert gumbel_variant(1.0).valid_generator
    assert exp_reciprocal(0.3).valid_generator
    assert check_phi_condition(gumbel_variant(0.6), 1.0, 1.0).status is Status.INCONCLUSIVE


def test_generator_domain_errors():
    with pytest.raises(DomainError):
        gumbel_variant(0.0)
    with pytest.raises(DomainError):
        exp_reciprocal(-1.0)
    g = exp_reciprocal(2.0)
    with pytest.raises(DomainError):
        g.phi(0.0)
    with pytest.raises(DomainError):
        g.phi(1.5)
    with pytest.raises(DomainError):
        g.psi(-0.2)


def test_verdict_carries_margin_even_when_holds():
    v = check_superadditive(gumbel_variant(3.0), gumbel_variant(1.5))
    assert v.holds and np.isfinite(v.margin)
    assert v.witness is not None
