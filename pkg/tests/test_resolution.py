import random
from fractions import Fraction
from math import comb

import pytest

from isoper.errors import ContractionUnavailable, NotAComplex, UnknownName
from isoper.groups import Free, catalog_model
from isoper.linalg import RationalMatrix
from isoper.psmod import seminorm
from isoper.resolution import (GroupRingElement, GroupRingMatrix, augment, builtin_resolution,
                               check_contraction, cohomology_dims, eta, free_resolution_section,
                               isoperimetric_sample, verify_section_bound)

from oracles import naive_reduce


def test_augment_examples():
    C5 = catalog_model("cyclic:5")
    t = GroupRingElement.group(C5, 1)
    one = GroupRingElement.scalar(C5, 1)
    N = sum((GroupRingElement.group(C5, k) for k in range(1, 5)), one)
    zero = GroupRingElement.zero(C5)
    M = augment(GroupRingMatrix(C5, [[t - one, N], [zero, zero]]))
    assert M == RationalMatrix([[0, 5], [0, 0]])


@pytest.mark.parametrize("name", ["z2", "heisenberg", "free2"])
def test_augmentation_is_multiplicative(name):
    G = catalog_model(name)
    rng = random.Random(1)
    def rand():
        out = GroupRingElement.zero(G)
        for _ in range(3):
            w = [rng.choice([1, -1, 2, -2]) for _ in range(rng.randint(0, 4))]
            out = out + GroupRingElement.group(G, G.evaluate_codes(w), rng.randint(-3, 3))
        return out
    for _ in range(30):
        u, v = rand(), rand()
        assert (u * v).augmentation() == u.augmentation() * v.augmentation()


@pytest.mark.parametrize("name,dims", [
    ("z", [1, 1]), ("z2", [1, 2, 1]), ("z3", [1, 3, 3, 1]),
    ("cyclic:2", [1, 0, 0]), ("cyclic:3", [1, 0, 0]), ("cyclic:5", [1, 0, 0]), ("free2", [1, 2]),
])
def test_cohomology_dims(name, dims):
    assert cohomology_dims(builtin_resolution(name)) == dims


@pytest.mark.parametrize("r", [1, 2, 3])
def test_koszul_binomial(r):
    assert cohomology_dims(builtin_resolution(f"z{r}")) == [comb(r, n) for n in range(r + 1)]


def test_z2_koszul_matrices():
    R = builtin_resolution("z2")
    G = R.model
    a, b = G.letter_image(1), G.letter_image(2)
    one = GroupRingElement.scalar(G, 1)
    A, B = GroupRingElement.group(G, a), GroupRingElement.group(G, b)
    assert R.d(1).rows == [[A - one], [B - one]]
    (row,) = R.d(2).rows
    assert row == [-(B - one), A - one]
    assert (R.d(2) @ R.d(1)).is_zero()


def test_corrupted_resolution_detected():
    R = builtin_resolution("z2")
    G = R.model
    R.differentials[1].rows[0][0] = GroupRingElement.group(G, G.letter_image(2))
    with pytest.raises(NotAComplex):
        cohomology_dims(R)


def test_unknown_resolution():
    with pytest.raises(UnknownName):
        builtin_resolution("heisenberg")


@pytest.mark.parametrize("name,radius", [("z", 6), ("z2", 4), ("free2", 3)])
def test_contractions(name, radius):
    assert check_contraction(builtin_resolution(name), radius) > 0


def test_no_contraction_for_cyclic():
    R = builtin_resolution("cyclic:3")
    with pytest.raises(ContractionUnavailable):
        isoperimetric_sample(R, 2)


def test_free_section_examples():
    F = Free(2)
    s = free_resolution_section(F, (1,))
    (b,) = s.terms
    assert b.g == () and b.s == "a" and s.coefficient(b) == 1
    s = free_resolution_section(F, (-1,))
    (b,) = s.terms
    assert b.g == (-1,) and b.s == "a" and s.coefficient(b) == -1
    assert not free_resolution_section(F, ())


def _eta_oracle(codes):
    # expand each term h*psi(x) into h x - h directly on reduced tuples
    out = {}
    prefix = ()
    for c in codes:
        if c > 0:
            h, x, sign = prefix, c, 1
        else:
            h, x, sign = naive_reduce(prefix + (c,)), -c, -1
        for elem, coeff in ((naive_reduce(h + (x,)), sign), (h, -sign)):
            out[elem] = out.get(elem, 0) + coeff
        prefix = naive_reduce(prefix + (c,))
    return {k: v for k, v in out.items() if v}


def test_telescoping_random_words():
    F = Free(2)
    rng = random.Random(0)
    for _ in range(200):
        n = rng.randint(0, 8)
        w = naive_reduce([rng.choice([1, -1, 2, -2]) for _ in range(n)])
        e = eta(F, free_resolution_section(F, w))
        expected = {w: 1, (): -1} if w else {}
        assert {k: v for k, v in e.terms.items()} == expected == _eta_oracle(w)


def test_section_norm_formula():
    F = Free(2)
    w = (1, 2, -1)
    s = free_resolution_section(F, w)
    # a -> [a] ; a b -> a[b] ; a b a^-1 -> -(a b a^-1)[a]
    assert seminorm(s) == (1 + 1) + (1 + 2) + (1 + 4)
    assert seminorm(s) <= (1 + 2 * 3) ** 2


def test_section_bound_small():
    rep = verify_section_bound(Free(2), 5)
    assert rep.ok and rep.identity_ok and rep.checked == 1 + 4 + 12 + 36 + 108 + 324


def test_section_bound_weighted():
    rep = verify_section_bound(Free(2, weights=(2, 1)), 6)
    assert rep.ok and rep.identity_ok


@pytest.mark.parametrize("name,radius", [("z", 8), ("z2", 4), ("free2", 4)])
def test_observed_degree(name, radius):
    table = isoperimetric_sample(builtin_resolution(name), radius, degrees=[0])
    assert table[0]["heuristic"]
    assert table[0]["observed_degree"] <= 2
    zero = builtin_resolution(name)
    vec = [GroupRingElement.zero(zero.model) for _ in zero.levels[0]]
    assert zero.norm(1, zero.apply_s(0, vec), lambda g: 0) == 0
