import math

import pytest

import tailcert as tc


def test_xi_round_trip():
    y = tc.xi("xi1", 0.3)
    assert 0.0 < y < 1.0
    assert tc.xi_inverse("xi1", y) == pytest.approx(0.3, abs=1e-9)
    assert tc.xi_inverse_bound("xi1", y) >= 0.3 - 1e-12


def test_c0_window():
    value = tc.c0_constant(grid_points=500, refine_tol=1e-6)
    assert 1.0 < value < 2.0


def test_envelope_shapes():
    env = tc.orderstat_envelope(50, 3.0)
    assert len(env["top"]) == 50
    assert len(env["bottom"]) == 50
    # both arrays are upper envelopes; their pointwise min must stay in (0, 1]
    # and the second family stays strictly below 1
    assert all(0.0 < min(b, t) <= 1.0
               for b, t in zip(env["bottom"], env["top"]))
    assert all(b < 1.0 for b in env["bottom"])
    assert 0.0 < env["joint_failure_probability"] < 1.0


def test_dual_norm_matches_hand_value():
    # max over k of (sum of top k) / max(k, r k^{1/q}) for y = (3, 1)
    y = [1.0, 3.0]
    value = tc.dual_norm(y, r=2.0, q=2.0)
    hand = max(3.0 / 2.0, 4.0 / max(2.0, 2.0 * math.sqrt(2.0)))
    assert value == pytest.approx(hand, rel=1e-12)


def test_primal_methods_agree_on_sign_vectors():
    x = [1.0, -1.0, 0.0, 1.0]
    a = tc.primal_norm(x, r=1.5, q=2.0, method="sign")
    b = tc.primal_norm(x, r=1.5, q=2.0, method="lp")
    assert a == pytest.approx(b, rel=1e-9)


def test_bound_example():
    value = tc.bound("main", [0.5, 0.5, 0.5, 0.5], q=4.0, t=2.0)
    assert value == pytest.approx(4.7512, abs=5e-4)


def test_simulation_is_deterministic():
    first = tc.simulate_quantiles("standard_normal", 0.0, [1.0, 1.0],
                                  seed=7, replications=2000)
    second = tc.simulate_quantiles("standard_normal", 0.0, [1.0, 1.0],
                                   seed=7, replications=2000)
    assert first["digest"] == second["digest"]
    assert first["median"] == second["median"]
    assert abs(first["median"]) < 0.2


def test_domain_error_surfaces():
    with pytest.raises(tc.DomainError):
        tc.bound("main", [], q=4.0, t=2.0)
