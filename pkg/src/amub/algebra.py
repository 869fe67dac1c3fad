"""Finite fields, MOLS and flat (Hadamard / Fourier) matrices."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

# Monic irreducible polynomials, coefficients low degree first.
IRREDUCIBLE = {
    4: (2, (1, 1, 1)),
    8: (2, (1, 1, 0, 1)),
    16: (2, (1, 1, 0, 0, 1)),
    32: (2, (1, 0, 1, 0, 0, 1)),
    9: (3, (1, 0, 1)),
    27: (3, (1, 2, 0, 1)),
    25: (5, (2, 0, 1)),
    49: (7, (1, 0, 1)),
}

MAX_FLAT_ORDER = 4096


class UnsupportedOrder(ValueError):
    pass


class FlatMatrixUnavailable(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power(n: int) -> tuple[int, int] | None:
    """(p, m) with n = p**m, or None."""
    if n < 2:
        return None
    for p in range(2, n + 1):
        if n % p == 0:
            m = 0
            while n % p == 0:
                n //= p
                m += 1
            return (p, m) if n == 1 else None
    return None


def is_supported_field_order(q: int) -> bool:
    return is_prime(q) or q in IRREDUCIBLE


@dataclass(frozen=True, eq=False)
class FieldTable:
    """GF(q); element ``x`` encodes the polynomial sum_k c_k X^k as sum_k c_k p^k."""

    order: int
    characteristic: int
    add: np.ndarray
    mul: np.ndarray

    @property
    def neg(self) -> np.ndarray:
        return np.argmin(self.add, axis=1)

    @property
    def inv(self) -> np.ndarray:
        """inv[x] for x != 0; inv[0] = 0 by convention."""
        out = np.zeros(self.order, dtype=int)
        out[1:] = np.argmax(self.mul[1:] == 1, axis=1)
        return out

    def sub(self, a, b):
        return self.add[a, self.neg[b]]

    def squares(self) -> set[int]:
        return {int(self.mul[x, x]) for x in range(1, self.order)}

    def quadratic_character(self) -> np.ndarray:
        chi = -np.ones(self.order, dtype=int)
        chi[0] = 0
        for s in self.squares():
            chi[s] = 1
        return chi


def _poly_tables(p: int, poly: tuple[int, ...]) -> tuple[np.ndarray, np.ndarray]:
    m = len(poly) - 1
    q = p**m
    digits = np.array([[(x // p**k) % p for k in range(m)] for x in range(q)])
    weights = p ** np.arange(m)

    add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights

    def reduce(c):
        c = list(c)
        for deg in range(len(c) - 1, m - 1, -1):
            lead = c[deg] % p
            if lead:
                for k in range(m + 1):
                    c[deg - m + k] = (c[deg - m + k] - lead * poly[k]) % p
        return [x % p for x in c[:m]]

    mul = np.zeros((q, q), dtype=int)
    for a in range(q):
        for b in range(a, q):
            prod = np.convolve(digits[a], digits[b])
            v = int(np.dot(reduce(prod), weights))
            mul[a, b] = mul[b, a] = v
    return add.astype(int), mul


def _check_field(add: np.ndarray, mul: np.ndarray) -> None:
    q = add.shape[0]
    if not (np.all(add[0] == np.arange(q)) and np.all(mul[1] == np.arange(q))):
        raise ArithmeticError("0 or 1 is not an identity")
    for row in add:
        if sorted(row) != list(range(q)):
            raise ArithmeticError("addition table is not a Latin square")
    for x in range(1, q):
        if sorted(mul[x, 1:]) != list(range(1, q)):
            raise ArithmeticError(f"element {x} has no inverse / is a zero divisor")


@lru_cache(maxsize=None)
def field_new(q: int) -> FieldTable:
    if is_prime(q):
        r = np.arange(q)
        add = (r[:, None] + r[None, :]) % q
        mul = (r[:, None] * r[None, :]) % q
        p = q
    elif q in IRREDUCIBLE:
        p, poly = IRREDUCIBLE[q]
        add, mul = _poly_tables(p, poly)
    else:
        if prime_power(q) is None:
            raise UnsupportedOrder(f"{q} is not a prime power")
        raise UnsupportedOrder(
            f"prime power {q} is outside the built-in table {sorted(IRREDUCIBLE)}"
        )
    _check_field(add, mul)
    add.setflags(write=False)
    mul.setflags(write=False)
    return FieldTable(q, p, add, mul)


def mols_from_field(q: int) -> list[np.ndarray]:
    """The q-1 squares L_a(x, y) = a x + y, a ranging over GF(q)*."""
    F = field_new(q)
    x = np.arange(q)
    return [F.add[F.mul[a, x][:, None], x[None, :]] for a in range(1, q)]


def is_latin(square: np.ndarray) -> bool:
    n = square.shape[0]
    full = set(range(n))
    return all(set(row) == full for row in square) and all(set(col) == full for col in square.T)


def are_orthogonal(a: np.ndarray, b: np.ndarray) -> bool:
    n = a.shape[0]
    return len(set(zip(a.ravel().tolist(), b.ravel().tolist()))) == n * n


# -- flat matrices ------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FlatMatrix:
    order: int
    entries: np.ndarray
    kind: str  # "real-hadamard" | "fourier"
    source: str = ""

    def __post_init__(self):
        e = np.array(self.entries, dtype=complex)
        e.setflags(write=False)
        object.__setattr__(self, "entries", e)

    @property
    def is_real(self) -> bool:
        return self.kind == "real-hadamard"


def _scaled(h: np.ndarray, source: str) -> FlatMatrix:
    n = h.shape[0]
    return FlatMatrix(n, h / np.sqrt(n), "real-hadamard", source)


def _sylvester_int(k: int) -> np.ndarray:
    h = np.ones((1, 1), dtype=int)
    base = np.array([[1, 1], [1, -1]])
    for _ in range(k):
        h = np.kron(h, base)
    return h


def sylvester_hadamard(k: int) -> FlatMatrix:
    if k < 0:
        raise ValueError("exponent must be non-negative")
    if 2**k > MAX_FLAT_ORDER:
        raise ValueError(f"order 2^{k} exceeds MAX_FLAT_ORDER={MAX_FLAT_ORDER}")
    return _scaled(_sylvester_int(k), f"sylvester({k})")


def _jacobsthal(q: int) -> np.ndarray:
    F = field_new(q)
    chi = F.quadratic_character()
    x = np.arange(q)
    return chi[F.sub(x[:, None], x[None, :])]


def _paley_int(q: int) -> np.ndarray:
    if not is_supported_field_order(q):
        if prime_power(q) is None:
            raise UnsupportedOrder(f"{q} is not a prime power")
        raise UnsupportedOrder(f"prime power {q} is outside the built-in field table")
    Q = _jacobsthal(q)
    ones = np.ones(q, dtype=int)
    if q % 4 == 3:
        S = np.zeros((q + 1, q + 1), dtype=int)
        S[0, 1:] = ones
        S[1:, 0] = -ones
        S[1:, 1:] = Q
        return np.eye(q + 1, dtype=int) + S
    if q % 4 == 1:
        C = np.zeros((q + 1, q + 1), dtype=int)
        C[0, 1:] = ones
        C[1:, 0] = ones
        C[1:, 1:] = Q
        return np.kron(C, np.array([[1, 1], [1, -1]])) + np.kron(
            np.eye(q + 1, dtype=int), np.array([[1, -1], [-1, -1]])
        )
    raise ValueError(f"Paley construction needs q = 1 or 3 (mod 4), got q = {q}")


def paley_hadamard(q: int) -> FlatMatrix:
    """Type I (order q+1) for q = 3 mod 4, type II (order 2q+2) for q = 1 mod 4."""
    h = _paley_int(q)
    n = h.shape[0]
    if not np.array_equal(h @ h.T, n * np.eye(n, dtype=int)):
        raise ArithmeticError(f"Paley matrix for q={q} failed H H^T = nI")
    kind = "I" if q % 4 == 3 else "II"
    return _scaled(h, f"paley-{kind}({q})")


def fourier_matrix(n: int) -> FlatMatrix:
    if n < 1:
        raise ValueError("order must be >= 1")
    jk = np.outer(np.arange(n), np.arange(n)) % n
    phases = np.exp(2j * np.pi * jk / n)
    # exact at the quarter turns so small orders coincide with the real matrices
    quarter = (4 * jk) % n == 0
    phases[quarter] = np.round(phases[quarter])
    return FlatMatrix(n, phases / np.sqrt(n), "fourier", f"fourier({n})")


@lru_cache(maxsize=None)
def _real_hadamard_recipe(n: int) -> tuple | None:
    """Recipe tree for a real Hadamard of order n, or None."""
    if n == 1:
        return ("sylvester", 0)
    if n == 2:
        return ("sylvester", 1)
    if n % 4 or n > MAX_FLAT_ORDER:
        return None
    if n & (n - 1) == 0:
        return ("sylvester", n.bit_length() - 1)
    q = n - 1
    if q % 4 == 3 and is_supported_field_order(q):
        return ("paley", q)
    if n % 2 == 0:
        q = n // 2 - 1
        if q % 4 == 1 and is_supported_field_order(q):
            return ("paley", q)
    for a in range(2, int(np.sqrt(n)) + 1):
        if n % a == 0:
            ra, rb = _real_hadamard_recipe(a), _real_hadamard_recipe(n // a)
            if ra is not None and rb is not None:
                return ("kron", ra, rb)
    return None


def _build(recipe) -> tuple[np.ndarray, str]:
    if recipe[0] == "sylvester":
        return _sylvester_int(recipe[1]), f"sylvester({recipe[1]})"
    if recipe[0] == "paley":
        q = recipe[1]
        return _paley_int(q), f"paley-{'I' if q % 4 == 3 else 'II'}({q})"
    a, sa = _build(recipe[1])
    b, sb = _build(recipe[2])
    return np.kron(a, b), f"{sa}*{sb}"


def real_hadamard_available(n: int) -> bool:
    return _real_hadamard_recipe(n) is not None


def flat_matrix_for(n: int, prefer_real: bool = True, strict: bool = False) -> FlatMatrix:
    """Real Hadamard of order n when one is constructible, else Fourier.

    With ``strict=True`` a missing real Hadamard raises instead of falling back.
    """
    if n < 1:
        raise ValueError("order must be >= 1")
    if prefer_real:
        recipe = _real_hadamard_recipe(n)
        if recipe is not None:
            h, src = _build(recipe)
            return _scaled(h, src)
        if strict:
            raise FlatMatrixUnavailable(
                f"no real Hadamard of order {n} is constructible (Sylvester/Paley/Kronecker)"
            )
    return fourier_matrix(n)
