import json
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.testing import assert_allclose

from amub.constructors import prime_mubs, rbd_to_bases, weak_mubs
from amub.designs import kirkman_kts15, resolvable_transversal_design
from amub.linalg import Basis, BasisSet, random_basis, random_state
from amub.measures import (
    asd_set,
    asd_set_all_pairs,
    bengtsson_pair,
    delta_spectrum,
    design_defect,
    dmax_set,
    frame_potential,
    gamma_squared_geometric,
    gamma_squared_pair,
    gram_log_volume,
    log_volume_ratio_approx,
    measure_report,
    power_sum_pair,
    set_t_coherence,
    sigma_pair,
    sigma_set,
    sparsity,
    sym_dim,
    tau_pair,
    tau_set,
    tomography_gram,
    traceless_dot,
)

seeds = st.integers(0, 2**32 - 1)


def random_pair(d, seed):
    rng = np.random.default_rng(seed)
    return random_basis(d, rng), random_basis(d, rng)


def weak_omega(p, q, t):
    a, b = p ** (2 - t), q ** (2 - t)
    return p * q * (a + b + a * b) / (p + q + p * q)


def test_mub_pair_values():
    S = prime_mubs(5)
    B1, B2 = S[0], S[3]
    assert power_sum_pair(B1, B2, 2) == pytest.approx(1.0)
    assert power_sum_pair(B1, B2, 3) == pytest.approx(1 / 5)
    assert tau_pair(B1, B2) < 1e-12
    assert sigma_pair(B1, B2) < 1e-12
    assert bengtsson_pair(B1, B2) == pytest.approx(1.0)


def test_identical_bases_have_zero_distance():
    B = prime_mubs(3)[2]
    assert bengtsson_pair(B, B) == pytest.approx(0.0, abs=1e-12)
    assert gamma_squared_pair(B, B) == pytest.approx(2.0)


def test_power_sum_rejects_nonpositive_exponent():
    B = Basis.canonical(2)
    with pytest.raises(ValueError):
        power_sum_pair(B, B, 0)


@pytest.mark.parametrize("p,q", [(2, 3), (3, 5), (2, 5)])
@pytest.mark.parametrize("t", [2, 3, 4])
def test_weak_mub_t_coherence_closed_form(p, q, t):
    assert set_t_coherence(weak_mubs(p, q), t) == pytest.approx(weak_omega(p, q, t), abs=1e-9)


def test_weak_d6_values():
    S = weak_mubs(2, 3)
    assert set_t_coherence(S, 2) == pytest.approx(18 / 11)
    assert set_t_coherence(S, 3) == pytest.approx(6 / 11)


def test_kts15_asd_and_sparsity():
    S = rbd_to_bases(kirkman_kts15()).basis_set
    assert asd_set(S) == pytest.approx(20 / 21, abs=1e-12)
    assert asd_set_all_pairs(S) == pytest.approx(20 / 21 * 6 / 7, abs=1e-12)
    assert sparsity(S) == pytest.approx(0.8)
    assert_allclose(delta_spectrum(S), [0, 1 / 3], atol=1e-12)


@pytest.mark.parametrize("k,s", [(3, 4), (4, 5), (5, 7)])
def test_apmub_sigma_tau(k, s):
    S = rbd_to_bases(resolvable_transversal_design(k, s)).basis_set
    d, beta = k * s, np.sqrt(s / k)
    assert sigma_set(S) ** 2 == pytest.approx(2 / d * (1 - 1 / beta), abs=1e-12)
    assert tau_set(S) == pytest.approx(1 / np.sqrt(d), abs=1e-12)
    assert dmax_set(S) == pytest.approx(1 - (beta**2 - 1) / (d - 1), abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 10), seeds, st.sampled_from([0.5, 1.0, 2.0]))
def test_power_sum_bounds(d, seed, delta):
    B1, B2 = random_pair(d, seed)
    ov = np.abs(B1.matrix.conj().T @ B2.matrix)
    up = np.sum(ov ** (2 + delta))
    lo = np.sum(ov ** (2 - delta))
    assert d ** (1 - delta / 2) - 1e-9 <= up <= d + 1e-9
    assert d - 1e-9 <= lo <= d ** (1 + delta / 2) + 1e-9


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 10), seeds)
def test_sigma_tau_and_sandwich(d, seed):
    B1, B2 = random_pair(d, seed)
    s, t, D2 = sigma_pair(B1, B2), tau_pair(B1, B2), bengtsson_pair(B1, B2)
    assert s <= t + 1e-12
    assert 1 - (d + np.sqrt(d)) ** 2 / (d - 1) * s**2 - 1e-9 <= D2 <= 1 - d / (d - 1) * s**2 + 1e-9
    assert s**2 <= 2 / d * (1 - 1 / d) + 1e-12


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 8), seeds)
def test_traceless_dot_matches_trace(d, seed):
    rng = np.random.default_rng(seed)
    u, v = random_state(d, rng), random_state(d, rng)
    Pu = np.outer(u, u.conj()) - np.eye(d) / d
    Pv = np.outer(v, v.conj()) - np.eye(d) / d
    assert traceless_dot(u, v) == pytest.approx(0.5 * np.trace(Pu @ Pv).real, abs=1e-12)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 7), seeds)
def test_gamma_squared_geometric(d, seed):
    B1, B2 = random_pair(d, seed)
    g = gamma_squared_pair(B1, B2)
    assert gamma_squared_geometric(B1, B2) == pytest.approx(g, abs=1e-12)
    assert bengtsson_pair(B1, B2) == pytest.approx(1 - g / (d - 1), abs=1e-12)


def test_sym_dim():
    assert sym_dim(2, 2) == 3
    assert sym_dim(5, 3) == comb(7, 3)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_complete_mubs_are_2_designs(p):
    S = prime_mubs(p)
    assert abs(design_defect(S, 1)) < 1e-9
    assert abs(design_defect(S, 2)) < 1e-9


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 8), seeds)
def test_single_basis_not_a_2_design(d, seed):
    B = random_basis(d, np.random.default_rng(seed))
    assert frame_potential(B, 2) == pytest.approx(1 / d)
    assert design_defect(B, 2) > 1e-3


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 6), st.integers(2, 5), seeds)
def test_frame_potential_welch_bound(d, r, seed):
    rng = np.random.default_rng(seed)
    S = BasisSet.of([random_basis(d, rng) for _ in range(r)])
    for t in (1, 2, 3):
        assert design_defect(S, t) >= -1e-12


@pytest.mark.parametrize("p", [2, 3, 5])
def test_mub_gram_block_diagonal(p):
    S = prime_mubs(p)
    G = tomography_gram(S)
    n = p - 1
    for a in range(p + 1):
        for b in range(p + 1):
            if a != b:
                assert np.max(np.abs(G[a * n : (a + 1) * n, b * n : (b + 1) * n])) < 1e-9
    assert log_volume_ratio_approx(S) == pytest.approx(0.0, abs=1e-12)
    assert np.isfinite(gram_log_volume(S))


def test_gram_log_volume_degenerate():
    B = Basis.canonical(3)
    assert gram_log_volume(BasisSet.of([B, B])) == float("-inf")


def test_measure_report_single_basis():
    rep = measure_report(BasisSet.of([Basis.canonical(3)]))
    assert rep.r == 1 and rep.asd is None and rep.pairs == []
    assert rep.sparsity == pytest.approx(2 / 3)


def test_measure_report_serializes():
    B = Basis.canonical(2)
    rep = measure_report(BasisSet.of([B, B]))
    doc = json.loads(json.dumps(rep.to_dict()))
    assert doc["set"]["gram_log_volume"] == "-inf"
    assert len(doc["pairs"]) == 1


def test_measure_report_mub():
    rep = measure_report(prime_mubs(3))
    assert rep.asd == pytest.approx(1.0)
    assert rep.omega_t[2.0] == pytest.approx(1.0)
    assert rep.classification.label == "MUB"
    assert len(rep.pairs) == 6
