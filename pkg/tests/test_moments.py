import math

import numpy as np
import pytest

from beliefclt import (
    BeliefModel,
    DegenerateVariance,
    FocalElement,
    IntervalEvent,
    belief,
    moments_by_enumeration,
    moments_by_integration,
    rho_M_invariance,
)
from beliefclt.moments import _interval_belief_grid, _model_arrays

from _helpers import random_model

FIELDS = ("lower_mean", "upper_mean", "lower_sd", "upper_sd",
          "cross_moment", "rho_prime", "rho")


def _assert_close(m1, m2, tol):
    d1, d2 = m1.as_dict(), m2.as_dict()
    for f in FIELDS:
        a, b = d1[f], d2[f]
        if math.isnan(a) and math.isnan(b):
            continue
        assert abs(a - b) <= tol, (f, a, b)


class TestEnumeration:
    def test_bernoulli_values(self, bernoulli):
        m = moments_by_enumeration(bernoulli)
        assert m.lower_mean == pytest.approx(0.3, abs=1e-15)
        assert m.upper_mean == pytest.approx(0.7, abs=1e-15)
        assert m.lower_sd**2 == pytest.approx(0.21, abs=1e-15)
        assert m.upper_sd**2 == pytest.approx(0.21, abs=1e-15)
        assert m.cross_moment == pytest.approx(0.3, abs=1e-15)
        assert m.rho_prime == pytest.approx(0.3, abs=1e-14)
        assert m.rho == pytest.approx(3 / 7, abs=1e-14)

    def test_two_interval_values(self, two_interval):
        m = moments_by_enumeration(two_interval)
        assert m.lower_mean == 0.5
        assert m.upper_mean == 2.0
        assert m.lower_sd**2 == pytest.approx(0.25, abs=1e-15)
        assert m.upper_sd**2 == pytest.approx(1.0, abs=1e-15)
        assert m.cross_moment == pytest.approx(1.5, abs=1e-15)
        # the two (min, max) points are affinely dependent
        assert m.rho == pytest.approx(1.0, abs=1e-14)

    def test_additive_coin(self, coin):
        m = moments_by_enumeration(coin)
        assert m.lower_mean == m.upper_mean == 0.0
        assert m.lower_sd == m.upper_sd == 1.0
        assert m.rho == pytest.approx(1.0, abs=1e-15)

    def test_min_leq_max_orderings(self, rng):
        for _ in range(20):
            m = moments_by_enumeration(random_model(rng, max_focal=10))
            assert m.lower_mean <= m.upper_mean + 1e-12
            assert -1.0 - 1e-12 <= m.rho <= 1.0 + 1e-12


class TestDegenerate:
    def test_single_focal_raises(self):
        vac = BeliefModel.make([(FocalElement.make([(-2, 2)]), 1.0)], 2.0)
        with pytest.raises(DegenerateVariance) as exc:
            moments_by_enumeration(vac)
        partial = exc.value.partial
        assert partial is not None
        assert partial.lower_mean == -2.0 and partial.upper_mean == 2.0
        assert math.isnan(partial.rho)

    def test_allow_degenerate_returns_partial(self):
        vac = BeliefModel.make([(FocalElement.make([(-2, 2)]), 1.0)], 2.0)
        for route in (moments_by_enumeration, moments_by_integration):
            m = route(vac, allow_degenerate=True)
            assert m.lower_sd == 0.0 and m.upper_sd == 0.0
            assert math.isnan(m.rho)
            assert m.cross_moment == pytest.approx(-4.0, abs=1e-12)

    def test_one_sided_degeneracy(self):
        # all minima equal, maxima spread: only the lower side degenerates
        model = BeliefModel.make(
            [(FocalElement.make([(0, 1)]), 0.5),
             (FocalElement.make([(0, 2)]), 0.5)], 2.0)
        with pytest.raises(DegenerateVariance):
            moments_by_enumeration(model)
        m = moments_by_enumeration(model, allow_degenerate=True)
        assert m.lower_sd == 0.0 and m.upper_sd > 0.0


class TestRouteAgreement:
    def test_frozen_models(self, bernoulli, two_interval, coin):
        for model in (bernoulli, two_interval, coin):
            _assert_close(moments_by_enumeration(model),
                          moments_by_integration(model), 1e-12)

    def test_random_models(self, rng):
        for _ in range(40):
            model = random_model(rng)
            _assert_close(moments_by_enumeration(model, allow_degenerate=True),
                          moments_by_integration(model, allow_degenerate=True),
                          1e-10)

    def test_quadrature_route_matches(self, bernoulli, rng):
        _assert_close(moments_by_integration(bernoulli, method="piecewise"),
                      moments_by_integration(bernoulli, method="quadrature"),
                      1e-7)
        model = random_model(rng, max_focal=4)
        _assert_close(moments_by_integration(model, method="piecewise"),
                      moments_by_integration(model, method="quadrature"),
                      1e-7)

    def test_unknown_method_rejected(self, bernoulli):
        with pytest.raises(ValueError):
            moments_by_integration(bernoulli, method="simpson")


class TestTransforms:
    def test_translation(self, rng):
        model = random_model(rng, max_focal=8)
        base = moments_by_enumeration(model, allow_degenerate=True)
        shifted = moments_by_enumeration(model.shifted(1.75),
                                         allow_degenerate=True)
        assert shifted.lower_mean == pytest.approx(base.lower_mean + 1.75, abs=1e-12)
        assert shifted.upper_mean == pytest.approx(base.upper_mean + 1.75, abs=1e-12)
        assert shifted.lower_sd == pytest.approx(base.lower_sd, abs=1e-12)
        assert shifted.upper_sd == pytest.approx(base.upper_sd, abs=1e-12)
        assert shifted.rho == pytest.approx(base.rho, abs=1e-10)

    def test_positive_scaling(self, rng):
        model = random_model(rng, max_focal=8)
        base = moments_by_enumeration(model, allow_degenerate=True)
        scaled = moments_by_enumeration(model.scaled(2.5), allow_degenerate=True)
        assert scaled.lower_mean == pytest.approx(2.5 * base.lower_mean, abs=1e-12)
        assert scaled.lower_sd == pytest.approx(2.5 * base.lower_sd, abs=1e-12)
        assert scaled.upper_sd == pytest.approx(2.5 * base.upper_sd, abs=1e-12)
        assert scaled.rho == pytest.approx(base.rho, abs=1e-10)


class TestRhoPrime:
    def test_identity_links_cross_moment(self, rng):
        # cross = M^2 - M*upper_mean + M*lower_mean - rho_prime
        for _ in range(10):
            model = random_model(rng, max_focal=12)
            m = moments_by_integration(model, allow_degenerate=True)
            big_m = model.bound
            want = big_m**2 - big_m * m.upper_mean + big_m * m.lower_mean - m.rho_prime
            assert m.cross_moment == pytest.approx(want, abs=1e-10)

    def test_interval_belief_grid_matches_belief(self, rng):
        # the vectorized grid the double integral uses must agree with the
        # reference event computation
        model = random_model(rng, max_focal=10)
        mins, maxs, masses = _model_arrays(model)
        for _ in range(25):
            t1, t2 = np.sort(rng.uniform(-model.bound, model.bound, size=2))
            got = _interval_belief_grid(mins, maxs, masses,
                                        np.array([t1]), np.array([t2]))[0, 0]
            want = belief(model, IntervalEvent.closed(t1, t2))
            assert got == pytest.approx(want, abs=1e-12)

    def test_rho_prime_nonnegative(self, rng):
        # integrand is a probability, so the double integral cannot be negative
        for _ in range(10):
            m = moments_by_integration(random_model(rng, max_focal=6),
                                       allow_degenerate=True)
            assert m.rho_prime >= -1e-12


class TestMInvariance:
    def test_integration_route_rho_stable(self, bernoulli, two_interval, rng):
        for model in (bernoulli, two_interval, random_model(rng, max_focal=10)):
            r1, r2 = rho_M_invariance(model, model.bound + 1.0)
            assert r1 == pytest.approx(r2, abs=1e-10)

    def test_bad_bound_rejected(self, bernoulli):
        with pytest.raises(ValueError):
            rho_M_invariance(bernoulli, 0.5)
