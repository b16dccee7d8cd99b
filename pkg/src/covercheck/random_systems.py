"""Seeded random instances for the Zariski property checks."""

from __future__ import annotations

import random
from fractions import Fraction

from .errors import NegativeCoefficient, NotContractible
from .lattice import DivisorClass, gram_is_negative_definite, gram_signature, lattice_from_gram
from .zariski import PrimeSystem, validate_prime_system, zariski_decompose


def negative_definite_system(rng: random.Random, max_rank: int = 4, bound: int = 10):
    """Primes forming a basis whose Gram matrix is negative definite, with
    nonnegative off-diagonal pairings and entries bounded by ``bound``."""
    while True:
        r = rng.randint(1, max_rank)
        g = [[0] * r for _ in range(r)]
        for i in range(r):
            g[i][i] = -rng.randint(1, bound)
            for j in range(i):
                g[i][j] = g[j][i] = rng.randint(0, bound // 2)
        if gram_is_negative_definite(g):
            lat = lattice_from_gram(g, [f"D{i}" for i in range(r)])
            primes = tuple(DivisorClass.of(lat, [int(i == j) for j in range(r)]) for i in range(r))
            return PrimeSystem(lat, primes)


def collapse_instance(rng: random.Random):
    """A negative-definite system and d = sum c_i D_i with c_i in (0, 5]."""
    s = negative_definite_system(rng)
    cs = [Fraction(rng.randint(1, 50), 10) for _ in s.primes]
    d = DivisorClass.of(s.ambient, [0] * s.ambient.rank)
    for c, p in zip(cs, s.primes):
        d = d + p.scale(c)
    return s, d


def hyperbolic_instance(rng: random.Random, max_primes: int = 4):
    """A signature-(1, 3) lattice, up to four primes, and
    d = a1*H1 + a2*H2 + sum c_i D_i where H1, H2 are positive classes
    nef against every prime.  At least one prime has negative square.  Returns None when sampling gives up."""
    while True:
        g = [[0] * 4 for _ in range(4)]
        for i in range(4):
            for j in range(i + 1):
                g[i][j] = g[j][i] = rng.randint(-4, 4)
        if gram_signature(g).as_tuple() == (1, 0, 3):
            break
    lat = lattice_from_gram(g, ["x0", "x1", "x2", "x3"])

    def vec():
        return DivisorClass.of(lat, [rng.randint(-2, 2) for _ in range(4)])

    for _ in range(200):
        primes = tuple(vec() for _ in range(rng.randint(1, max_primes)))
        if any(p.is_zero() for p in primes) or all(p.pair(p) >= 0 for p in primes):
            continue
        s = PrimeSystem(lat, primes)
        if validate_prime_system(s):
            continue
        nef = []
        for _ in range(200):
            h = vec()
            if h.pair(h) > 0 and all(h.pair(p) >= 0 for p in primes):
                nef.append(h)
                if len(nef) == 2:
                    break
        if len(nef) < 2:
            continue
        d = nef[0].scale(rng.randint(0, 2)) + nef[1].scale(rng.randint(0, 2))
        for p in primes:
            d = d + p.scale(Fraction(rng.randint(0, 10), 2))
        return s, d
    return None


def decomposable_hyperbolic_instances(seed: int, count: int):
    """``count`` hyperbolic instances on which the decomposition succeeds,
    plus the number of sampled instances rejected by the algorithm."""
    rng = random.Random(seed)
    out, rejected = [], 0
    while len(out) < count:
        inst = hyperbolic_instance(rng)
        if inst is None:
            continue
        try:
            z = zariski_decompose(*inst)
        except (NotContractible, NegativeCoefficient):
            rejected += 1
            continue
        out.append((inst[0], inst[1], z))
    return out, rejected
