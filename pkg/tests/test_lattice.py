import random
from fractions import Fraction
from itertools import combinations
from math import gcd

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from covercheck.errors import (
    AmbientMismatch,
    B2TooSmall,
    EmptyInput,
    IndexOutOfRange,
    InvalidParam,
    LabelMismatch,
    MissingParam,
    NonIntegral,
    NonSymmetric,
    UnknownName,
)
from covercheck.lattice import (
    DivisorClass,
    branch_component_bound,
    direct_sum,
    gram_signature,
    is_negative_definite,
    is_saturated,
    lattice_from_gram,
    primitive_orthogonal_complement,
    q_exceptional,
    signature,
    standard_lattice,
)
from oracles import eigen_signature, gcd_of_maximal_minors, rational_nullspace_dim, sylvester_signature

U = standard_lattice("U")


def diag(*entries):
    n = len(entries)
    return lattice_from_gram([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)],
                             [f"x{i}" for i in range(n)])


def unit(lat, i):
    return DivisorClass.of(lat, [int(j == i) for j in range(lat.rank)])


# -- construction -----------------------------------------------------------


def test_lattice_from_gram_pairs_basis_vectors():
    lat = lattice_from_gram([[0, 1], [1, 0]], ["e", "f"])
    assert lat.rank == 2
    assert lat.pair([1, 0], [0, 1]) == 1
    assert lat.pair([1, 0], [1, 0]) == 0
    assert lattice_from_gram([[-2]], ["E"]).gram == ((Fraction(-2),),)


def test_lattice_from_gram_errors():
    with pytest.raises(NonSymmetric):
        lattice_from_gram([[0, 1], [2, 0]], ["e", "f"])
    with pytest.raises(NonSymmetric):
        lattice_from_gram([[0, 1]], ["e"])
    with pytest.raises(LabelMismatch):
        lattice_from_gram([[0, 1], [1, 0]], ["e", "e"])
    with pytest.raises(LabelMismatch):
        lattice_from_gram([[1]], ["e", "f"])


def test_direct_sum_blocks_and_identity():
    s = direct_sum(U, lattice_from_gram([[-2]], ["E"]))
    assert s.rank == 3
    assert [[int(x) for x in r] for r in s.gram] == [[0, 1, 0], [1, 0, 0], [0, 0, -2]]
    empty = lattice_from_gram([], [])
    assert direct_sum(U, empty) == U
    assert direct_sum(empty, U) == U


def test_direct_sum_disambiguates_labels():
    s = direct_sum(U, U)
    assert len(set(s.labels)) == 4
    assert s.labels[:2] == ("e", "f")


def test_signature_of_three_hyperbolic_planes():
    uuu = direct_sum(direct_sum(U, U), U)
    assert signature(uuu).as_tuple() == (3, 0, 3) == eigen_signature(uuu.gram)


@pytest.mark.parametrize("gram,expected", [
    ([[0, 1], [1, 0]], (1, 0, 1)),
    ([[-2, 0], [0, -2]], (0, 0, 2)),
    ([[0] * 3] * 3, (0, 3, 0)),
    ([[0, 3, 0], [3, 0, 1], [0, 1, 0]], (1, 1, 1)),
    ([[0, 0, 1], [0, 0, 1], [1, 1, 0]], (1, 1, 1)),
    ([[1, 2], [2, 4]], (1, 1, 0)),
])
def test_signature_small(gram, expected):
    assert gram_signature(gram).as_tuple() == expected
    assert eigen_signature(gram) == expected


def test_catalog_signatures():
    cases = {
        ("U", None): (1, 0, 1),
        ("E8neg", None): (0, 0, 8),
        ("K3", None): (3, 0, 19),
        ("K3n", 2): (3, 0, 20),
        ("K3n", 5): (3, 0, 20),
        ("Kumn", 1): (3, 0, 4),
        ("Kumn", 3): (3, 0, 4),
    }
    for (name, param), expected in cases.items():
        lat = standard_lattice(name, param)
        assert signature(lat).as_tuple() == expected, name
        assert sylvester_signature(lat.gram) == expected, name


def test_catalog_shapes_and_errors():
    k3 = standard_lattice("K3")
    assert k3.rank == 22 and len(set(k3.labels)) == 22
    e8 = standard_lattice("E8neg")
    assert is_negative_definite(e8, range(8))
    assert all(e8.gram[i][i] == -2 for i in range(8))
    assert standard_lattice("rank1", -2).gram == ((Fraction(-2),),)
    assert standard_lattice("K3n", 3).rank == 23
    with pytest.raises(UnknownName):
        standard_lattice("E7")
    with pytest.raises(MissingParam):
        standard_lattice("rank1")
    with pytest.raises(InvalidParam):
        standard_lattice("rank1", 0)
    with pytest.raises(InvalidParam):
        standard_lattice("K3n", 1)


def test_e8_is_unimodular():
    assert sympy.Matrix(standard_lattice("E8neg").gram).det() == 1


def test_is_negative_definite():
    assert is_negative_definite(lattice_from_gram([[-2]], ["E"]), [0])
    assert not is_negative_definite(U, [0, 1])
    assert is_negative_definite(U, [])
    with pytest.raises(IndexOutOfRange):
        is_negative_definite(U, [2])
    with pytest.raises(IndexOutOfRange):
        is_negative_definite(U, [0, 0])


def test_q_exceptional_examples():
    lat = lattice_from_gram([[-2]], ["E"])
    e = unit(lat, 0)
    assert q_exceptional(lat, [e])
    assert not q_exceptional(lat, [e, e.scale(2)])
    assert not q_exceptional(U, [unit(U, 0), unit(U, 1)])
    with pytest.raises(EmptyInput):
        q_exceptional(U, [])
    with pytest.raises(AmbientMismatch):
        q_exceptional(U, [e])


# -- properties -------------------------------------------------------------


def random_unimodular(rng, n, bound=3, steps=40):
    t = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        op = rng.choice(("add", "sub", "swap", "neg"))
        new = [row[:] for row in t]
        if op == "add" and i != j:
            new[i] = [a + b for a, b in zip(new[i], new[j])]
        elif op == "sub" and i != j:
            new[i] = [a - b for a, b in zip(new[i], new[j])]
        elif op == "swap":
            new[i], new[j] = new[j], new[i]
        else:
            new[i] = [-a for a in new[i]]
        if max(abs(x) for row in new for x in row) <= bound:
            t = new
    return t


def congruent(gram, t):
    n = len(gram)
    return [[sum(t[k][i] * gram[k][l] * t[l][j] for k in range(n) for l in range(n))
             for j in range(n)] for i in range(n)]


SYLVESTER_LATTICES = [
    [[0, 1], [1, 0]],
    [[-2, 1, 0], [1, -2, 1], [0, 1, -2]],
    [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, -2, 1], [0, 0, 1, -2]],
    [[2, 1, 0, 0, 0], [1, 0, 3, 0, 0], [0, 3, -1, 0, 0], [0, 0, 0, 0, 0], [0, 0, 0, 0, 4]],
    [[0] * 6 for _ in range(6)],
    [[(i + j) % 3 - 1 for j in range(6)] for i in range(6)],
]


@pytest.mark.parametrize("gram", SYLVESTER_LATTICES)
def test_sylvester_stability(gram):
    rng = random.Random(len(gram))
    base = gram_signature(gram)
    assert base.as_tuple() == sylvester_signature(gram)
    for _ in range(20):
        t = random_unimodular(rng, len(gram))
        assert abs(int(sympy.Matrix(t).det())) == 1
        assert max(abs(x) for row in t for x in row) <= 3
        assert gram_signature(congruent(gram, t)) == base


@st.composite
def symmetric_matrices(draw, max_n=5):
    n = draw(st.integers(0, max_n))
    vals = draw(st.lists(st.integers(-4, 4), min_size=n * n, max_size=n * n))
    g = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1):
            g[i][j] = g[j][i] = vals[i * n + j]
    return g


@settings(max_examples=150, deadline=None)
@given(symmetric_matrices())
def test_signature_matches_exact_oracle(gram):
    sig = gram_signature(gram)
    assert sum(sig.as_tuple()) == len(gram)
    assert sig.as_tuple() == sylvester_signature(gram)


@settings(max_examples=60, deadline=None)
@given(symmetric_matrices(max_n=4), st.data())
def test_exceptional_subset_monotone(gram, data):
    n = len(gram)
    if n == 0:
        return
    lat = lattice_from_gram(gram, [f"x{i}" for i in range(n)])
    classes = [unit(lat, i) for i in range(n)]
    if not q_exceptional(lat, classes):
        return
    subset = data.draw(st.lists(st.sampled_from(range(n)), min_size=1, unique=True))
    assert q_exceptional(lat, [classes[i] for i in subset])


def test_exceptional_subset_monotone_exhaustive():
    rng = random.Random(5)
    checked = 0
    while checked < 30:
        n = rng.randint(1, 4)
        g = [[0] * n for _ in range(n)]
        for i in range(n):
            g[i][i] = -rng.randint(2, 8)
            for j in range(i):
                g[i][j] = g[j][i] = rng.randint(-2, 2)
        lat = lattice_from_gram(g, [f"x{i}" for i in range(n)])
        classes = [unit(lat, i) for i in range(n)]
        if not q_exceptional(lat, classes):
            continue
        checked += 1
        for k in range(1, n + 1):
            for sub in combinations(classes, k):
                assert q_exceptional(lat, list(sub))


# -- complements ------------------------------------------------------------


def test_complement_in_hyperbolic_plane():
    assert primitive_orthogonal_complement(U, [unit(U, 0)]) == [[1, 0]]


def test_complement_diagonal():
    lat = diag(2, -2)
    assert primitive_orthogonal_complement(lat, [unit(lat, 0)]) == [[0, 1]]


def test_complement_errors():
    half = lattice_from_gram([[Fraction(1, 2)]], ["x"])
    with pytest.raises(NonIntegral):
        primitive_orthogonal_complement(half, [unit(half, 0)])
    with pytest.raises(NonIntegral):
        primitive_orthogonal_complement(U, [DivisorClass.of(U, [Fraction(1, 2), 0])])
    with pytest.raises(AmbientMismatch):
        primitive_orthogonal_complement(U, [unit(diag(1, 1), 0)])


def test_complement_is_saturated_not_just_kernel():
    # v = (1, 1) pairs with diag(2, 2) as 2a + 2b; the kernel (1, -1) is primitive
    lat = diag(2, 2)
    assert primitive_orthogonal_complement(lat, [DivisorClass.of(lat, [1, 1])]) == [[1, -1]]
    # rows whose rational kernel is spanned by (2, 0, 1)/... saturate to gcd 1
    lat = diag(1, 4, 2)
    basis = primitive_orthogonal_complement(lat, [DivisorClass.of(lat, [2, 0, -2])])
    assert is_saturated(basis)
    assert gcd_of_maximal_minors(basis) == 1


def k3_sublattice_classes(rng, k3, rho):
    """rho random integer classes spanning a nondegenerate sublattice."""
    while True:
        classes = [DivisorClass.of(k3, [rng.randint(-2, 2) for _ in range(22)]) for _ in range(rho)]
        g = [[a.pair(b) for b in classes] for a in classes]
        if sylvester_signature(g)[1] == 0:
            return classes


@pytest.mark.parametrize("rho", [1, 2, 3])
def test_k3_complement_rank_orthogonality_primitivity(rho):
    k3 = standard_lattice("K3")
    rng = random.Random(100 + rho)
    for _ in range(3):
        classes = k3_sublattice_classes(rng, k3, rho)
        basis = primitive_orthogonal_complement(k3, classes)
        assert len(basis) == 22 - rho
        rows = [[int(k3.pair(c.coeffs, [int(i == j) for j in range(22)])) for i in range(22)]
                for c in classes]
        assert len(basis) == rational_nullspace_dim(rows, 22)
        for v in basis:
            assert all(k3.pair(v, c.coeffs) == 0 for c in classes)
            assert gcd(*v) == 1
        assert gcd_of_maximal_minors(basis) == 1


def test_k3_complement_of_hyperbolic_summand():
    k3 = standard_lattice("K3")
    basis = primitive_orthogonal_complement(k3, [unit(k3, 0), unit(k3, 1)])
    # complement of the first U is spanned by the other 20 basis vectors
    assert sorted(map(tuple, basis)) == sorted(tuple(int(j == i) for j in range(22)) for i in range(2, 22))


# -- branch bound -----------------------------------------------------------


@pytest.mark.parametrize("b2,expected", [(23, 20), (4, 1), (3, 0)])
def test_branch_component_bound(b2, expected):
    assert branch_component_bound(b2) == expected


def test_branch_component_bound_error():
    with pytest.raises(B2TooSmall):
        branch_component_bound(2)


def test_branch_bound_embedding_23():
    lat = diag(*([1, 1, 1] + [-1] * 20))
    assert signature(lat).as_tuple() == (3, 0, 20)
    assert q_exceptional(lat, [unit(lat, i) for i in range(3, 23)])
    # no 21 classes are negative definite in signature (3, 20): rank bound
    assert not q_exceptional(lat, [unit(lat, i) for i in range(2, 23)])
