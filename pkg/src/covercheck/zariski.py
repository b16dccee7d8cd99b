"""Divisorial Zariski decomposition relative to a finite system of primes.

Given prime classes D_i with nonnegative mutual pairings and a class d,
``zariski_decompose`` finds the unique splitting d = P + N with
N = sum a_i D_i, a_i > 0 exactly on a support S whose Gram matrix is
negative definite, q(P, D_i) = 0 on S, and q(P, D_j) >= 0 for all j.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from fractions import Fraction
from typing import Sequence

from .errors import AmbientMismatch, NegativeCoefficient, NotContractible
from .lattice import DivisorClass, Lattice, gram_is_negative_definite


@dataclass(frozen=True)
class PrimeSystem:
    ambient: Lattice
    primes: tuple[DivisorClass, ...]
    names: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.names:
            object.__setattr__(self, "names", tuple(f"D{i}" for i in range(len(self.primes))))
        if len(self.names) != len(self.primes):
            raise ValueError("one name per prime required")
        for p in self.primes:
            if p.ambient != self.ambient:
                raise AmbientMismatch("prime is not over the ambient lattice")

    def gram(self, subset: Sequence[int]) -> list[list[Fraction]]:
        return [[self.primes[i].pair(self.primes[j]) for j in subset] for i in subset]


def validate_prime_system(s: PrimeSystem) -> list[str]:
    """Violations of the prime-system axioms; empty means valid."""
    problems = []
    seen: dict[tuple, int] = {}
    for i, p in enumerate(s.primes):
        if p.coeffs in seen:
            problems.append(f"duplicate prime ({seen[p.coeffs]},{i})")
        else:
            seen[p.coeffs] = i
    for i in range(len(s.primes)):
        for j in range(i + 1, len(s.primes)):
            if s.primes[i].pair(s.primes[j]) < 0:
                problems.append(f"negative cross pairing ({i},{j})")
    return problems


@dataclass(frozen=True)
class ZariskiDecomposition:
    positive: DivisorClass
    negative_coeffs: dict  # prime index -> Fraction > 0
    support: tuple[int, ...]

    def negative(self, s: PrimeSystem) -> DivisorClass:
        out = DivisorClass.of(s.ambient, [0] * s.ambient.rank)
        for i, a in self.negative_coeffs.items():
            out = out + s.primes[i].scale(a)
        return out


def solve_exact(a: list[list[Fraction]], b: list[Fraction]) -> list[Fraction]:
    """Solve a nonsingular square system by Gauss-Jordan over Q."""
    n = len(a)
    m = [list(map(Fraction, row)) + [Fraction(rhs)] for row, rhs in zip(a, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        m[col], m[piv] = m[piv], m[col]
        pv = m[col][col]
        m[col] = [x / pv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [m[r][n] for r in range(n)]


def _fit(s: PrimeSystem, d: DivisorClass, support: list[int]):
    """Negative part supported on ``support`` making P orthogonal to it."""
    rhs = [d.pair(s.primes[i]) for i in support]
    x = solve_exact(s.gram(support), rhs)
    neg = DivisorClass.of(s.ambient, [0] * s.ambient.rank)
    for i, xi in zip(support, x):
        neg = neg + s.primes[i].scale(xi)
    return x, d - neg


def zariski_decompose(s: PrimeSystem, d: DivisorClass) -> ZariskiDecomposition:
    if d.ambient != s.ambient:
        raise AmbientMismatch("class is not over the prime system's lattice")
    support = [i for i, p in enumerate(s.primes) if d.pair(p) < 0]
    positive = d
    x: list[Fraction] = []
    while support:
        if not gram_is_negative_definite(s.gram(support)):
            raise NotContractible(
                f"Gram matrix of primes {support} is not negative definite")
        x, positive = _fit(s, d, support)
        for i, xi in zip(support, x):
            if xi < 0:
                raise NegativeCoefficient(i, xi)
        bad = [j for j, p in enumerate(s.primes) if j not in support and positive.pair(p) < 0]
        if not bad:
            break
        support = sorted(support + [bad[0]])
    coeffs = {i: xi for i, xi in zip(support, x) if xi > 0}
    return ZariskiDecomposition(positive, coeffs, tuple(sorted(coeffs)))


def check_decomposition(s: PrimeSystem, d: DivisorClass, z: ZariskiDecomposition) -> dict[str, bool]:
    """Recompute every postcondition of a decomposition from its data."""
    p = z.positive
    supp = list(z.support)
    return {
        "orthogonal": all(p.pair(s.primes[i]) == 0 for i in supp),
        "nef_on_primes": all(p.pair(q) >= 0 for q in s.primes),
        "gram_negdef": gram_is_negative_definite(s.gram(supp)),
        "coefficients_positive": set(supp) == {i for i, a in z.negative_coeffs.items() if a > 0}
        and all(a > 0 for a in z.negative_coeffs.values()),
        "sums_to_input": p + z.negative(s) == d,
    }


def valid_supports(s: PrimeSystem, d: DivisorClass) -> list[tuple[tuple[int, ...], DivisorClass]]:
    """Every support satisfying all decomposition postconditions.

    Exhaustive over the 2^k subsets of primes; independent of the
    support-growing loop in :func:`zariski_decompose`.
    """
    found = []
    k = len(s.primes)
    for size in range(k + 1):
        for supp in combinations(range(k), size):
            supp = list(supp)
            if supp and not gram_is_negative_definite(s.gram(supp)):
                continue
            x, p = _fit(s, d, supp) if supp else ([], d)
            if any(xi <= 0 for xi in x):
                continue
            if all(p.pair(q) >= 0 for q in s.primes):
                found.append((tuple(supp), p))
    return found
