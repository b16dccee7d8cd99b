"""Symmetric groups and the abelian Galois-like obstruction.

The obstruction mirrors the argument for a cover whose monodromy is the
full symmetric group S_n: two primes p, q whose cyclotomic bound exceeds
2g cannot be realized by automorphisms fixing a point, and if order-p and
order-q cycles cannot commute in S_n they cannot both be translations
either.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from math import lcm
from typing import Optional

from .errors import DegreeTooSmall, Indeterminate, NonPositive, NotPrime, PExceedsN
from .orders import alpha, coprime_prime_power_parts, is_prime

BRUTE_FORCE_MAX_DEGREE = 8


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a permutation: {self.images}")

    @property
    def n(self) -> int:
        return len(self.images)

    @classmethod
    def from_cycles(cls, n: int, cycles) -> "Permutation":
        img = list(range(n))
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                img[a] = b
        return cls(tuple(img))

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition, ``(self * other)(i) = self(other(i))``."""
        return Permutation(tuple(self.images[j] for j in other.images))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = [False] * self.n
        out = []
        for start in range(self.n):
            if seen[start]:
                continue
            cyc = []
            i = start
            while not seen[i]:
                seen[i] = True
                cyc.append(i)
                i = self.images[i]
            out.append(tuple(cyc))
        return out

    def cycle_type(self) -> "CycleType":
        return CycleType(tuple(sorted((len(c) for c in self.cycles()), reverse=True)))


@dataclass(frozen=True, order=True)
class CycleType:
    parts: tuple[int, ...]  # nonincreasing

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def order(self) -> int:
        return lcm(*self.parts) if self.parts else 1

    def representative(self) -> Permutation:
        cycles, at = [], 0
        for k in self.parts:
            cycles.append(tuple(range(at, at + k)))
            at += k
        return Permutation.from_cycles(self.n, cycles)

    def __str__(self) -> str:
        return "{" + ",".join(str(p) for p in self.parts) + "}"


def order_of(p: Permutation) -> int:
    return p.cycle_type().order


def partitions(n: int, largest: Optional[int] = None):
    """Partitions of ``n`` as nonincreasing tuples."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def min_symmetric_degree(d: int) -> int:
    """Smallest n such that S_n has an element of order ``d``."""
    if not isinstance(d, int) or d < 1:
        raise NonPositive(f"d must be a positive integer, got {d!r}")
    return sum(coprime_prime_power_parts(d).parts)


def prime_order_shape(n: int, p: int) -> set[CycleType]:
    """Cycle types of the elements of order ``p`` (prime) in S_n."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p > n:
        raise PExceedsN(f"p = {p} exceeds n = {n}")
    return {CycleType((p,) * k + (1,) * (n - k * p)) for k in range(1, n // p + 1)}


# -- commuting orders -------------------------------------------------------


def _perm_order(img: tuple[int, ...]) -> int:
    return Permutation(img).cycle_type().order


@lru_cache(maxsize=None)
def _centralizer_orders(shape: CycleType) -> frozenset[int]:
    """Orders of the elements commuting with a fixed element of ``shape``."""
    x = shape.representative().images
    n = len(x)
    orders = set()
    for y in itertools.permutations(range(n)):
        if all(x[y[i]] == y[x[i]] for i in range(n)):
            orders.add(_perm_order(y))
    return frozenset(orders)


@lru_cache(maxsize=None)
def _brute_commuting_orders(n: int, d1: int, d2: int) -> bool:
    for parts in partitions(n):
        shape = CycleType(parts)
        if shape.order == d1 and d2 in _centralizer_orders(shape):
            return True
    return False


def commuting_orders_possible(n: int, d1: int, d2: int) -> bool:
    """Whether S_n has commuting elements of orders ``d1`` and ``d2``.

    Decided exactly in these regimes, in order:

    * one order is 1, or the orders agree (take y = identity or y = x);
    * ``min_symmetric_degree(d1) + min_symmetric_degree(d2) <= n``
      (disjoint supports realize both);
    * ``n <= BRUTE_FORCE_MAX_DEGREE`` by exhaustive centralizer search;
    * distinct primes with ``2*d1 > n`` and ``2*d2 > n``: both elements are
      single cycles, commuting single cycles have equal or disjoint
      supports, and equal supports would force equal lengths.

    Anything else raises :class:`Indeterminate`.
    """
    for name, d in (("d1", d1), ("d2", d2)):
        if not isinstance(d, int) or d < 1:
            raise NonPositive(f"{name} must be a positive integer, got {d!r}")
    m1, m2 = min_symmetric_degree(d1), min_symmetric_degree(d2)
    if max(m1, m2) > n:
        raise DegreeTooSmall(f"S_{n} has no element of order {d1 if m1 > n else d2}")
    if d1 == 1 or d2 == 1 or d1 == d2:
        return True
    if m1 + m2 <= n:
        return True
    if n <= BRUTE_FORCE_MAX_DEGREE:
        return _brute_commuting_orders(n, d1, d2)
    if is_prime(d1) and is_prime(d2) and 2 * d1 > n and 2 * d2 > n:
        return d1 + d2 <= n
    raise Indeterminate(f"commuting orders ({d1}, {d2}) in S_{n} not decided by any exact rule")


# -- obstruction ------------------------------------------------------------


@dataclass(frozen=True)
class ObstructionReport:
    group_degree: int
    abelian_dim: int
    witness_primes: Optional[tuple[int, int]]
    reasons: tuple[str, ...]
    obstructed: bool
    inconclusive_pairs: tuple[tuple[int, int], ...] = field(default=())


def _primes_upto(n: int) -> list[int]:
    return [p for p in range(2, n + 1) if is_prime(p)]


def _why_not_commuting(n: int, p: int, q: int) -> str:
    if 2 * p > n and 2 * q > n:
        return (f" (both are single cycles; commuting cycles have equal or disjoint supports, "
                f"equal is impossible for lengths {p} != {q}, disjoint needs {p} + {q} = {p + q} <= {n})")
    return f" (exhaustive search over S_{n})"


def galois_like_obstruction(n: int, g: int) -> ObstructionReport:
    """Look for a prime pair ruling out an abelian Galois-like cover.

    ``n`` is the degree of a cover with monodromy group S_n and ``g`` the
    dimension of the candidate abelian variety.  A negative answer only
    means this argument does not apply.
    """
    if not isinstance(n, int) or n < 2:
        raise DegreeTooSmall(f"degree must be >= 2, got {n!r}")
    if not isinstance(g, int) or g < 1:
        raise NonPositive(f"abelian dimension must be >= 1, got {g!r}")
    bound = 2 * g
    big = [p for p in _primes_upto(n) if alpha(p) > bound]
    reasons = [
        f"monodromy group is S_{n}; the Galois group of the composite cover surjects onto it",
        f"primes p <= {n} with alpha(p) = p - 1 > 2g = {bound}: {big or 'none'}",
    ]
    inconclusive = []
    for p, q in itertools.combinations(big, 2):
        try:
            commute = commuting_orders_possible(n, p, q)
        except Indeterminate:
            inconclusive.append((p, q))
            reasons.append(f"inconclusive: commuting orders ({p}, {q}) in S_{n} undecided")
            continue
        if commute:
            reasons.append(f"pair ({p}, {q}): commuting elements of these orders exist in S_{n}")
            continue
        reasons += [
            f"Cauchy: the preimage of an order-{p} (resp. {q}) cyclic subgroup of S_{n} contains "
            f"an element of order {p} (resp. {q}) mapping onto a generator (reconstructed step)",
            "each such element acts as x -> f0(x) + t with f0 an automorphism fixing 0",
            f"if f0 has order {p}: alpha({p}) = {p - 1} > {bound} = 2g, contradicting alpha(ord f0) <= 2g",
            f"if f0 has order {q}: alpha({q}) = {q - 1} > {bound} = 2g, contradicting alpha(ord f0) <= 2g",
            f"so both are translations and commute, but order-{p} and order-{q} elements "
            f"of S_{n} cannot commute" + _why_not_commuting(n, p, q),
            f"obstructed: witness primes ({p}, {q})",
        ]
        return ObstructionReport(n, g, (p, q), tuple(reasons), True, tuple(inconclusive))
    if len(big) < 2:
        reasons.append("fewer than two primes violate the order bound; no pair argument")
    reasons.append("not obstructed by this argument (no conclusion about existence)")
    return ObstructionReport(n, g, None, tuple(reasons), False, tuple(inconclusive))
