"""The frozen list of numeric claims replayed by ``reproduce-paper``."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from importlib import resources

from . import betti, lattice, monodromy, orders, zariski
from .random_systems import collapse_instance, decomposable_hyperbolic_instances


@dataclass(frozen=True)
class CheckResult:
    id: str
    criterion: int
    anchor: str
    passed: bool
    observed: str


def load_manifest() -> dict:
    text = resources.files("covercheck").joinpath("data/paper_checks.json").read_text("utf-8")
    return json.loads(text)


def _alpha(args, expect):
    v = orders.alpha(args["d"])
    return v == expect, f"alpha({args['d']}) = {v}"


def _euler_phi(args, expect):
    v = orders.euler_phi(args["n"])
    return v == expect, f"phi({args['n']}) = {v}"


def _abelian_feasible(args, expect):
    r = orders.abelian_order_feasible(args["g"], args["d"])
    return r.feasible == expect, f"alpha = {r.alpha}, bound = {r.bound}, feasible = {r.feasible}"


def _abelian_counterexample(args, expect):
    r = orders.abelian_order_feasible(args["g"], args["d"])
    ok = r.feasible and r.phi > r.bound
    return ok == expect, f"alpha = {r.alpha} <= {r.bound} while phi = {r.phi} > {r.bound}"


def _commuting(args, expect):
    v = monodromy.commuting_orders_possible(args["n"], args["d1"], args["d2"])
    return v == expect, f"commuting orders possible = {v}"


def _obstruction(args, expect):
    r = monodromy.galois_like_obstruction(args["n"], args["g"])
    w = list(r.witness_primes) if r.witness_primes else None
    ok = r.obstructed == expect["obstructed"] and w == expect["witness"]
    return ok, f"obstructed = {r.obstructed}, witness = {w}"


def _cover_types(args, expect):
    r = betti.classify_cover_types(args["b2"], args["rho"])
    got = sorted(list(c.label) for c in r.feasible)
    details = [o.detail for outs in r.trace.values() for o in outs if not o.passed]
    ok = got == sorted(expect["feasible"]) and any(expect["trace"] in d for d in details)
    return ok, f"feasible = {got}; exclusions: {'; '.join(details)}"


def _branch_bound(args, expect):
    v = lattice.branch_component_bound(args["b2"])
    return v == expect, f"bound = {v}"


def _branch_bound_range(args, expect):
    ok = all(lattice.branch_component_bound(b) == b - 3 for b in range(args["lo"], args["hi"] + 1))
    return ok == expect, f"bound(b2) = b2 - 3 for b2 in {args['lo']}..{args['hi']}: {ok}"


def branch_embedding_check(b2: int) -> tuple[bool, str]:
    """Embed b2 - 3 negative-definite classes in diag(1,1,1,-1,...,-1)."""
    c = lattice.branch_component_bound(b2)
    diag = [1, 1, 1] + [-1] * c
    lat = lattice.lattice_from_gram(
        [[diag[i] if i == j else 0 for j in range(b2)] for i in range(b2)],
        [f"x{i}" for i in range(b2)])
    classes = [lattice.DivisorClass.of(lat, [int(j == i) for j in range(b2)]) for i in range(3, b2)]
    sig = lattice.signature(lat).as_tuple()
    exc = lattice.q_exceptional(lat, classes)
    # one more class cannot fit: adding a positive direction breaks definiteness
    extra = lattice.DivisorClass.of(lat, [int(j == 0) for j in range(b2)])
    tighter = not lattice.q_exceptional(lat, classes + [extra])
    return sig == (3, 0, c) and exc and tighter, f"signature {sig}, {c} classes exceptional = {exc}"


def _branch_embedding(args, expect):
    ok, msg = branch_embedding_check(args["b2"])
    return ok == expect, msg


def _zariski_minus2(args, expect):
    lat = lattice.lattice_from_gram([[-2]], ["E"])
    e = lattice.DivisorClass.of(lat, [1])
    s = zariski.PrimeSystem(lat, (e,))
    d = e.scale(args["c"])
    z = zariski.zariski_decompose(s, d)
    ok = z.positive.is_zero() and z.negative(s) == d
    return ok == expect, f"P = {z.positive}, N = {z.negative(s)}"


def collapse_random_check(seed: int, count: int) -> tuple[bool, str]:
    rng = random.Random(seed)
    failures = 0
    for _ in range(count):
        s, d = collapse_instance(rng)
        z = zariski.zariski_decompose(s, d)
        if not (z.positive.is_zero() and z.negative(s) == d and all(zariski.check_decomposition(s, d, z).values())):
            failures += 1
    return failures == 0, f"{count - failures}/{count} systems have P = 0 and N = d"


def _zariski_collapse_random(args, expect):
    ok, msg = collapse_random_check(args["seed"], args["count"])
    return ok == expect, msg


def oracle_equivalence_check(seed: int, count: int) -> tuple[bool, str]:
    insts, rejected = decomposable_hyperbolic_instances(seed, count)
    agree = 0
    for s, d, z in insts:
        found = zariski.valid_supports(s, d)
        if len(found) == 1 and found[0][0] == z.support and found[0][1] == z.positive:
            agree += 1
    return agree == count, f"{agree}/{count} match the unique valid support ({rejected} rejected samples)"


def _zariski_oracle(args, expect):
    ok, msg = oracle_equivalence_check(args["seed"], args["count"])
    return ok == expect, msg


RUNNERS = {
    "alpha": _alpha,
    "euler_phi": _euler_phi,
    "abelian_feasible": _abelian_feasible,
    "abelian_counterexample": _abelian_counterexample,
    "commuting": _commuting,
    "obstruction": _obstruction,
    "cover_types": _cover_types,
    "branch_bound": _branch_bound,
    "branch_bound_range": _branch_bound_range,
    "branch_embedding": _branch_embedding,
    "zariski_minus2": _zariski_minus2,
    "zariski_collapse_random": _zariski_collapse_random,
    "zariski_oracle": _zariski_oracle,
}


def run_check(entry: dict) -> CheckResult:
    passed, observed = RUNNERS[entry["kind"]](entry["args"], entry["expect"])
    return CheckResult(entry["id"], entry["criterion"], entry["anchor"], bool(passed), observed)


def run_all() -> list[CheckResult]:
    return [run_check(e) for e in load_manifest()["checks"]]
