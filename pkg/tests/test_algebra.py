import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.testing import assert_allclose, assert_array_equal

from amub.algebra import (
    IRREDUCIBLE,
    FlatMatrixUnavailable,
    UnsupportedOrder,
    are_orthogonal,
    field_new,
    flat_matrix_for,
    fourier_matrix,
    is_latin,
    is_prime,
    mols_from_field,
    paley_hadamard,
    prime_power,
    real_hadamard_available,
    sylvester_hadamard,
)

ORDERS = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27]


def test_prime_helpers():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert prime_power(27) == (3, 3)
    assert prime_power(12) is None
    assert prime_power(1) is None


@pytest.mark.parametrize("q", ORDERS + list(IRREDUCIBLE))
def test_field_axioms(q):
    F = field_new(q)
    x = np.arange(q)
    assert_array_equal(F.add, F.add.T)
    assert_array_equal(F.mul, F.mul.T)
    for a in range(1, q):
        assert F.mul[a, F.inv[a]] == 1
    # distributivity on all triples
    lhs = F.mul[x[:, None, None], F.add[x[None, :, None], x[None, None, :]]]
    rhs = F.add[F.mul[x[:, None, None], x[None, :, None]], F.mul[x[:, None, None], x[None, None, :]]]
    assert_array_equal(lhs, rhs)


def test_gf4_table():
    F = field_new(4)
    # X^2 = X + 1 with X encoded as 2
    assert F.mul[2, 2] == 3
    assert F.mul[2, 3] == 1


@pytest.mark.parametrize("q", [6, 10, 12, 64, 1])
def test_unsupported_orders(q):
    with pytest.raises(UnsupportedOrder):
        field_new(q)


@pytest.mark.parametrize("q", [3, 4, 5, 7, 8, 9])
def test_mols_are_mutually_orthogonal_latin(q):
    sq = mols_from_field(q)
    assert len(sq) == q - 1
    assert all(is_latin(L) for L in sq)
    assert all(are_orthogonal(a, b) for a, b in itertools.combinations(sq, 2))


def _is_hadamard(fm):
    n = fm.order
    h = fm.entries * np.sqrt(n)
    return np.allclose(np.abs(h), 1) and np.allclose(h @ h.conj().T, n * np.eye(n))


@pytest.mark.parametrize("k", range(0, 6))
def test_sylvester(k):
    H = sylvester_hadamard(k)
    assert H.order == 2**k and H.is_real and _is_hadamard(H)


@pytest.mark.parametrize("q,order", [(3, 4), (7, 8), (11, 12), (19, 20), (5, 12), (9, 20), (13, 28)])
def test_paley(q, order):
    H = paley_hadamard(q)
    assert H.order == order
    assert _is_hadamard(H)
    assert np.all(np.imag(H.entries) == 0)


def test_paley_rejects_even_q():
    with pytest.raises(ValueError):
        paley_hadamard(8)


def test_fourier_small_orders_exact():
    assert_array_equal(fourier_matrix(2).entries, sylvester_hadamard(1).entries)
    F4 = fourier_matrix(4).entries * 2
    assert set(np.round(F4.ravel(), 12)) <= {1, -1, 1j, -1j}


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 40))
def test_fourier_is_flat_unitary(n):
    assert _is_hadamard(fourier_matrix(n))


def test_real_hadamard_availability():
    assert real_hadamard_available(12)
    assert real_hadamard_available(24)
    assert not real_hadamard_available(6)
    assert not real_hadamard_available(3)


def test_flat_matrix_fallback_and_strict():
    assert flat_matrix_for(3).kind == "fourier"
    assert flat_matrix_for(8).is_real
    assert flat_matrix_for(8, prefer_real=False).kind == "fourier"
    with pytest.raises(FlatMatrixUnavailable, match="order 6"):
        flat_matrix_for(6, strict=True)


@pytest.mark.parametrize("n", [1, 2, 4, 8, 12, 16, 20, 24, 28, 32, 36, 40, 44, 48])
def test_flat_matrix_for_real_orders(n):
    H = flat_matrix_for(n, strict=True)
    assert H.is_real and _is_hadamard(H)
    assert_allclose(np.imag(H.entries), 0)
