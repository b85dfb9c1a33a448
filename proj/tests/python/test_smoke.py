"""Smoke tests for the python bindings."""

import math

import pytest

import dispest


def test_fock_wigner_values():
    w0 = dispest.fock_wigner(0)
    assert w0(0.0, 0.0) == pytest.approx(1.0 / math.pi, rel=1e-12)
    w1 = dispest.fock_wigner(1)
    assert w1(0.0, 0.0) == pytest.approx(-1.0 / math.pi, rel=1e-12)
    assert w1.integral() == pytest.approx(1.0, abs=1e-12)


def test_mixture_and_loss():
    mix = dispest.PhotonMixture({0: 0.25, 1: 0.73, 2: 0.02})
    assert dispest.mixture_wigner(mix)(0.0, 0.0) == pytest.approx(-0.46 / math.pi, rel=1e-12)
    lossy = dispest.apply_loss(dispest.PhotonMixture.fock(1), 0.5)
    assert lossy.weight(0) == pytest.approx(0.5)
    assert lossy.weight(1) == pytest.approx(0.5)
    with pytest.raises(ValueError):
        dispest.apply_loss(mix, 1.5)


def test_convolution_and_likelihood():
    vac = dispest.PhotonMixture.fock(0)
    k = dispest.build_likelihood(vac, vac)
    assert k.kernel.lam == pytest.approx(0.5)
    y = dispest.Outcome(0.0, 0.0)
    d = dispest.Displacement(0.0, 0.0)
    assert dispest.likelihood_density(k, y, d) == pytest.approx(1.0 / math.pi, rel=1e-12)


def test_posterior_and_classical_limit():
    vac = dispest.PhotonMixture.fock(0)
    k = dispest.build_likelihood(vac, vac)
    ps = dispest.posterior_mean(dispest.PriorModel(1.0), k, dispest.Outcome(1.0, 0.0))
    assert ps.mean_xi == pytest.approx(math.sqrt(2.0) / 3.0, rel=1e-9)
    assert ps.var_xi + ps.var_eta == pytest.approx(2.0 / 3.0, rel=1e-9)

    limit = dispest.classical_limit(0.34, 0.2)
    assert limit.v_prime_c == pytest.approx(0.2905982905982906, rel=1e-9)
    assert limit.v_prime_c == pytest.approx(dispest.classical_limit_closed_form(0.34), rel=1e-9)


def test_run_experiment_deterministic():
    mix = dispest.PhotonMixture({0: 0.25, 1: 0.73, 2: 0.02})
    cfg = dispest.RunConfig(v=0.34, r=0.3, probe=mix, ancilla=mix, n_events=2000, seed=42)
    events_a = dispest.run_experiment(cfg)
    events_b = dispest.run_experiment(cfg, n_threads=1)
    assert len(events_a) == 2000
    assert [e.y_x for e in events_a] == [e.y_x for e in events_b]

    stats = dispest.estimation_error(events_a)
    assert stats.n_selected > 0
    quad = dispest.expected_error_quadrature(dispest.PriorModel(0.34),
                                             dispest.build_likelihood(mix, mix), 0.3)
    assert abs(stats.v_prime - quad.v_prime) < 3.0 * stats.std_error


def test_event_csv_roundtrip(tmp_path):
    vac = dispest.PhotonMixture.fock(0)
    cfg = dispest.RunConfig(v=0.5, r=0.4, probe=vac, ancilla=vac, n_events=500, seed=3)
    events = dispest.run_experiment(cfg)
    path = tmp_path / "events.csv"
    dispest.write_events_csv(path, events)
    loaded = dispest.read_events_csv(path)
    assert len(loaded) == len(events)
    assert all(a.xi == b.xi for a, b in zip(events, loaded))
