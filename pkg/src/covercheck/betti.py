"""Betti-number bounds for Calabi-Yau covers of hyper-Kähler fourfolds.

If Y is a Calabi-Yau rational cover of a projective hyper-Kähler X, the
symmetric powers of the transcendental part of H^2(X) inject into H^*(Y),
so ``b_2k(Y) >= C(b2 - rho + k - 1, k)``.  The classifier applies this to
the four possible product shapes of a four-dimensional cover.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .errors import B2TooSmall, InvalidRho

K3_BETTI = (1, 0, 22, 0, 1)
# rank of T(S) for a projective K3 surface S is at most 22 - 1
K3_TRANSCENDENTAL_MAX = 21
STUDIED_B2 = 23


@dataclass(frozen=True)
class BettiVector:
    b: tuple[int, ...]

    def __post_init__(self):
        if not self.b or self.b[0] != 1:
            raise ValueError(f"b_0 must be 1: {self.b}")
        if len(self.b) % 2 != 1 or any(x < 0 for x in self.b):
            raise ValueError(f"not a Betti vector of an even-dimensional space: {self.b}")

    def is_poincare_symmetric(self) -> bool:
        return self.b == self.b[::-1]

    def __getitem__(self, i: int) -> int:
        return self.b[i] if 0 <= i < len(self.b) else 0


def kunneth_betti(factors) -> BettiVector:
    """Betti numbers of a product: convolution of the factors' vectors."""
    out = [1]
    for f in factors:
        nxt = [0] * (len(out) + len(f.b) - 1)
        for i, x in enumerate(out):
            for j, y in enumerate(f.b):
                nxt[i + j] += x * y
        out = nxt
    return BettiVector(tuple(out))


def abelian_betti(g: int) -> BettiVector:
    if g < 0:
        raise ValueError("dimension must be nonnegative")
    return BettiVector(tuple(comb(2 * g, i) for i in range(2 * g + 1)))


def k3_betti() -> BettiVector:
    return BettiVector(K3_BETTI)


def _check_rho(b2: int, rho: int) -> None:
    if rho < 0 or rho > b2:
        raise InvalidRho(f"rho = {rho} outside 0..{b2}")


def betti_lower_bound(b2: int, rho: int, k: int) -> int:
    """Dimension of the k-th symmetric power of a (b2 - rho)-dimensional space."""
    _check_rho(b2, rho)
    if k < 1:
        raise ValueError("k must be positive")
    return comb(b2 - rho + k - 1, k)


@dataclass(frozen=True)
class CoverCandidate:
    e: int
    ks: tuple[int, ...]
    name: str

    @property
    def label(self) -> tuple[int, int]:
        return (self.e, len(self.ks))

    @property
    def dimension(self) -> int:
        return self.e + 2 * sum(self.ks)

    def betti(self):
        """Betti vector of the product, or None when a factor's is not fixed."""
        factors = [abelian_betti(self.e)] if self.e else []
        for k in self.ks:
            if k != 1:
                return None
            factors.append(k3_betti())
        return kunneth_betti(factors)


CANDIDATES = (
    CoverCandidate(4, (), "abelian fourfold"),
    CoverCandidate(2, (1,), "abelian surface x K3"),
    CoverCandidate(0, (2,), "hyper-Kähler fourfold"),
    CoverCandidate(0, (1, 1), "K3 x K3"),
)


@dataclass(frozen=True)
class RuleOutcome:
    rule: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class ClassificationReport:
    b2: int
    rho: int
    feasible: tuple[CoverCandidate, ...]
    trace: dict = field(hash=False)  # (e, r) -> tuple[RuleOutcome, ...]
    notes: tuple[str, ...] = ()

    @property
    def feasible_labels(self) -> set[tuple[int, int]]:
        return {c.label for c in self.feasible}


def _rule_a(cand: CoverCandidate, b2: int, rho: int) -> list[RuleOutcome]:
    betti = cand.betti()
    if betti is None:
        return [RuleOutcome("A", True, "not applicable: Betti numbers of the cover are not fixed a priori")]
    t = b2 - rho
    out = []
    for k in (1, 2):
        need = betti_lower_bound(b2, rho, k)
        have = betti[2 * k]
        ok = have >= need
        rel = ">=" if ok else "<"
        out.append(RuleOutcome(
            "A", ok, f"b_{2 * k}(cover) = {have} {rel} {need} = C({t + k - 1}, {k})"))
    return out


def _rule_b(cand: CoverCandidate, b2: int, rho: int) -> list[RuleOutcome]:
    if cand.label != (0, 2):
        return []
    t = b2 - rho
    ok = t <= K3_TRANSCENDENTAL_MAX
    rel = "<=" if ok else ">"
    return [RuleOutcome(
        "B", ok,
        f"transcendental rank {t} {rel} {K3_TRANSCENDENTAL_MAX} = max rank of T(S) for one K3 factor "
        "(reconstructed reasoning: an irreducible Hodge structure injecting into a direct sum "
        "injects into one summand)")]


def classify_cover_types(b2: int, rho: int) -> ClassificationReport:
    """Cover types (e, r) of a four-dimensional CY rational cover not excluded
    by the Betti bound (rule A) or the transcendental rank bound (rule B)."""
    if b2 < 4:
        raise B2TooSmall(f"b2 = {b2} < 4")
    _check_rho(b2, rho)
    notes = ["rule 0: strict Calabi-Yau factors are excluded (the symplectic form forces them to a point)"]
    if b2 != STUDIED_B2:
        notes.append(f"beyond-paper: b2 = {b2} differs from {STUDIED_B2}")
    feasible = []
    trace = {}
    for cand in CANDIDATES:
        outcomes = _rule_a(cand, b2, rho) + _rule_b(cand, b2, rho)
        trace[cand.label] = tuple(outcomes)
        if all(o.passed for o in outcomes):
            feasible.append(cand)
    return ClassificationReport(b2, rho, tuple(feasible), trace, tuple(notes))
