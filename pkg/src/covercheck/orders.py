"""Cyclotomic order bounds for finite-order rational matrices.

For ``d = r_1 * ... * r_k`` with pairwise coprime prime powers ``r_i``,
``alpha(d) = sum(phi(r_i))`` is the smallest ``m`` such that ``GL_m(Q)``
contains an element of order ``d``.  A block-diagonal matrix of companion
matrices of the cyclotomic polynomials ``Phi_{r_i}`` realizes it.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import NonPositive


def _check_positive(**kwargs) -> None:
    for name, value in kwargs.items():
        if not isinstance(value, int) or isinstance(value, bool) or value < 1:
            raise NonPositive(f"{name} must be a positive integer, got {value!r}")


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division, ``{p: exponent}`` ascending."""
    _check_positive(n=n)
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    return isinstance(n, int) and n >= 2 and factorize(n) == {n: 1}


@dataclass(frozen=True)
class CoprimeFactorization:
    d: int
    parts: tuple[int, ...]
    primes: tuple[int, ...]


def coprime_prime_power_parts(d: int) -> CoprimeFactorization:
    f = factorize(d)
    return CoprimeFactorization(d, tuple(p**e for p, e in f.items()), tuple(f))


def euler_phi(n: int) -> int:
    result = n
    for p in factorize(n):
        result = result // p * (p - 1)
    return result


def alpha(d: int) -> int:
    _check_positive(d=d)
    return sum(euler_phi(r) for r in coprime_prime_power_parts(d).parts)


@dataclass(frozen=True)
class OrderBoundReport:
    d: int
    alpha: int
    phi: int
    bound: int
    feasible: bool
    kind: str  # "gl" or "abelian"
    # True when an explicit witness of size <= bound is known to exist.
    witness_constructed: bool
    witness_size: int

    @property
    def necessary_condition_passes(self) -> bool:
        return self.alpha <= self.bound


def gl_order_feasible(m: int, d: int) -> OrderBoundReport:
    """Whether GL_m(Q) has an element of order exactly ``d``.

    The bound alpha(d) <= m is necessary; ``order_witness`` padded with an
    identity block shows it is also sufficient.
    """
    _check_positive(m=m, d=d)
    a = alpha(d)
    ok = a <= m
    return OrderBoundReport(d, a, euler_phi(d), m, ok, "gl", ok, a)


def abelian_order_feasible(g: int, d: int) -> OrderBoundReport:
    """Necessary condition for an order-``d`` automorphism of a ``g``-dimensional
    abelian variety fixing the origin: ``alpha(d) <= 2g``."""
    _check_positive(g=g, d=d)
    a = alpha(d)
    return OrderBoundReport(d, a, euler_phi(d), 2 * g, a <= 2 * g, "abelian", False, a)


# -- cyclotomic polynomials -------------------------------------------------

_PHI_CACHE: dict[int, tuple[int, ...]] = {1: (-1, 1)}
_PHI_LOCK = threading.Lock()


def _poly_divexact(num: list[int], den: tuple[int, ...]) -> list[int]:
    """Exact quotient of integer polynomials (coefficients low degree first);
    ``den`` must be monic."""
    num = list(num)
    dd = len(den) - 1
    q = [0] * (len(num) - dd)
    for i in range(len(q) - 1, -1, -1):
        c = num[i + dd]
        q[i] = c
        if c:
            for j, b in enumerate(den):
                num[i + j] -= c * b
    if any(num[:dd]):
        raise ArithmeticError("inexact polynomial division")
    return q


def cyclotomic(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first."""
    _check_positive(n=n)
    with _PHI_LOCK:
        cached = _PHI_CACHE.get(n)
    if cached is not None:
        return cached
    num = [-1] + [0] * (n - 1) + [1]
    for k in range(1, n):
        if n % k == 0:
            num = _poly_divexact(num, cyclotomic(k))
    result = tuple(num)
    with _PHI_LOCK:
        _PHI_CACHE[n] = result
    return result


def companion(poly: tuple[int, ...]) -> np.ndarray:
    """Companion matrix of a monic integer polynomial (low degree first)."""
    deg = len(poly) - 1
    m = np.zeros((deg, deg), dtype=np.int64)
    for i in range(1, deg):
        m[i, i - 1] = 1
    m[:, deg - 1] = [-c for c in poly[:deg]]
    return m


# -- exact matrix powers ----------------------------------------------------

_SAFE = 1 << 62


def _matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.dtype == object or b.dtype == object:
        return np.dot(a.astype(object), b.astype(object))
    ma = int(np.abs(a).max(initial=0))
    mb = int(np.abs(b).max(initial=0))
    if ma * mb * max(a.shape[1], 1) >= _SAFE:
        return np.dot(a.astype(object), b.astype(object))
    return a @ b


def matrix_power(m: np.ndarray, k: int) -> np.ndarray:
    """Exact nonnegative integer power by repeated squaring.

    int64 is used while products provably fit; otherwise Python integers.
    """
    n = m.shape[0]
    result = np.eye(n, dtype=np.int64)
    base = m
    while k:
        if k & 1:
            result = _matmul(result, base)
        k >>= 1
        if k:
            base = _matmul(base, base)
    return result


def is_identity(m: np.ndarray) -> bool:
    return bool((m == np.eye(m.shape[0], dtype=np.int64)).all())


def multiplicative_order_is(m: np.ndarray, d: int) -> bool:
    """True iff M^d = I and M^(d/p) != I for every prime p dividing d."""
    if not is_identity(matrix_power(m, d)):
        return False
    return all(not is_identity(matrix_power(m, d // p)) for p in factorize(d))


def block_diag(blocks: list[np.ndarray]) -> np.ndarray:
    size = sum(b.shape[0] for b in blocks)
    out = np.zeros((size, size), dtype=np.int64)
    at = 0
    for b in blocks:
        k = b.shape[0]
        out[at:at + k, at:at + k] = b
        at += k
    return out


def order_witness(d: int, size: Optional[int] = None) -> np.ndarray:
    """Integer matrix of multiplicative order exactly ``d`` and size alpha(d).

    With ``size`` given, the witness is padded by an identity block.
    """
    _check_positive(d=d)
    blocks = [companion(cyclotomic(r)) for r in coprime_prime_power_parts(d).parts]
    m = block_diag(blocks)
    if size is not None:
        if size < m.shape[0]:
            raise ValueError(f"no witness of order {d} fits in size {size}")
        m = block_diag([m, np.eye(size - m.shape[0], dtype=np.int64)])
    if not multiplicative_order_is(m, d):
        raise ArithmeticError(f"witness for order {d} failed its powering check")
    return m
