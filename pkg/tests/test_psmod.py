from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.optimize import linprog

from isoper.errors import BudgetExceeded
from isoper.psmod import (STAR, Certified, GrowthBound, ModuleElement, Violation, basis_element,
                          doubling_witness, quotient_seminorm, seminorm, suggest_growth, verify_growth_bound)


def z_basis(R):
    out = []
    for n in range(R + 1):
        for m in ((-n, n) if n else (0,)):
            out.append(basis_element(m, "e", abs(m), 1, order=(abs(m), m)))
    return out


def test_seminorm_examples():
    assert seminorm(ModuleElement({STAR: Fraction(-3, 2)})) == 3
    assert seminorm(ModuleElement()) == 0
    g = basis_element("g", "s", 2)
    h = basis_element("h", "s", 0)
    assert seminorm(ModuleElement({g: 3, h: -2})) == 16


coeffs = st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=6), min_size=3, max_size=3)
BASIS = [basis_element(i, "s", i) for i in range(3)]


@given(coeffs, coeffs, st.fractions(min_value=-4, max_value=4, max_denominator=5))
def test_seminorm_triangle_and_homogeneity(x, y, lam):
    X = ModuleElement(zip(BASIS, x))
    Y = ModuleElement(zip(BASIS, y))
    assert seminorm(X + Y) <= seminorm(X) + seminorm(Y)
    assert seminorm(X * lam) == abs(lam) * seminorm(X)


def test_quotient_without_relations():
    g = basis_element("g", "s", 3)
    q = quotient_seminorm(ModuleElement({g: 1}), [])
    assert q.value == 5 and q.exact


def test_quotient_two_point():
    g = basis_element("g", "s", 3)
    one = basis_element("1", "s", 0)
    rep = ModuleElement({g: 1})
    q = quotient_seminorm(rep, [ModuleElement({g: 1, one: -1})])
    assert q.value == seminorm(ModuleElement({one: 1})) == 2


def test_quotient_matches_integer_brute_force():
    # Z-translation relations e_n - e_{n+1} on a short stretch of Z
    basis = {n: basis_element(n, "e", abs(n), 1) for n in range(-3, 4)}
    rep = ModuleElement({basis[3]: 2, basis[-2]: -1})
    rel = ModuleElement({basis[1]: 1, basis[-1]: -1})
    best = min(seminorm(rep + rel * c) for c in range(-20, 21))
    assert quotient_seminorm(rep, [rel]).value == best


@pytest.mark.parametrize("seed", range(6))
def test_quotient_matches_linear_program(seed):
    rng = np.random.default_rng(seed)
    n, k = 6, 2
    basis = [basis_element(i, "s", int(rng.integers(0, 4))) for i in range(n)]
    b = rng.integers(-3, 4, n)
    R = rng.integers(-2, 3, (k, n))
    rep = ModuleElement(zip(basis, b.tolist()))
    rels = [ModuleElement(zip(basis, row.tolist())) for row in R]
    got = quotient_seminorm(rep, rels)
    # minimise sum w_i t_i with t >= +-(b + R^T c)
    w = np.array([1 + e.weight for e in basis], dtype=float)
    cost = np.concatenate([np.zeros(k), w])
    A = np.block([[R.T, -np.eye(n)], [-R.T, -np.eye(n)]]).astype(float)
    ub = np.concatenate([-b, b]).astype(float)
    lp = linprog(cost, A_ub=A, b_ub=ub, bounds=[(None, None)] * k + [(0, None)] * n)
    assert lp.status == 0
    assert abs(float(got.value) - lp.fun) < 1e-9
    assert seminorm(got.representative) == got.value


def test_quotient_budget():
    basis = [basis_element(i, "s", 0) for i in range(30)]
    rels = [ModuleElement({basis[2 * i]: 1, basis[2 * i + 1]: -1}) for i in range(15)]
    with pytest.raises(BudgetExceeded):
        quotient_seminorm(ModuleElement({basis[0]: 1}), rels, enumeration_bound=1000)


def test_identity_map_is_linear():
    res = verify_growth_bound(lambda a: ModuleElement({a: 1}), GrowthBound(1, 1), z_basis(10), 10)
    # weights are |n| + 1, so |n| <= 9 is checked
    assert isinstance(res, Certified) and res.checked == 19


def test_constant_map_is_bounded():
    c = ModuleElement({STAR: 3})
    res = verify_growth_bound(lambda a: c, GrowthBound(seminorm(c), 0), z_basis(10), 10)
    assert isinstance(res, Certified)


def test_least_witness():
    # n -> e_{n^2} is quadratic: first failure of (1, 1) is at the least weight
    sq = {a.g: basis_element(a.g**2, "e", a.g**2, 1) for a in z_basis(12)}
    res = verify_growth_bound(lambda a: ModuleElement({sq[a.g]: 1}), GrowthBound(1, 1), z_basis(12), 12)
    assert isinstance(res, Violation)
    # |e_{n^2}| = n^2 + 2 against 1 + |n| + 1: equality at n = -1, failure at n = -2
    assert res.witness.g == -2 and res.value == 6 and res.limit == 4
    assert verify_growth_bound(lambda a: ModuleElement({sq[a.g]: 1}), GrowthBound(1, 2), z_basis(12), 12).verdict == "certified"


@given(st.integers(1, 5), st.integers(0, 3), st.integers(0, 4), st.integers(0, 2))
def test_growth_check_monotone(C, k, dC, dk):
    f = lambda a: ModuleElement({basis_element(a.g * 3, "e", 3 * abs(a.g), 1): 1})
    small = verify_growth_bound(f, GrowthBound(C, k), z_basis(8), 8)
    big = verify_growth_bound(f, GrowthBound(C + dC, k + dk), z_basis(8), 8)
    if small.verdict == "certified":
        assert big.verdict == "certified"


def test_composition_law():
    basis = z_basis(6)
    f = lambda a: ModuleElement({basis_element(2 * a.g, "e", 2 * abs(a.g), 1): 1})
    g = lambda a: ModuleElement({basis_element(a.g**2, "e", a.g**2, 1): 1})
    fb, gb = GrowthBound(2, 1), GrowthBound(1, 2)
    assert verify_growth_bound(f, fb, basis, 6).verdict == "certified"
    assert verify_growth_bound(g, gb, z_basis(12), 12).verdict == "certified"
    composite = lambda a: g(next(iter(f(a).terms)))
    bound = GrowthBound(gb.C * (1 + fb.C) ** gb.k, fb.k * gb.k)
    assert verify_growth_bound(composite, bound, basis, 6).verdict == "certified"


def test_doubling_witness_for_log_length():
    hit = doubling_witness(lambda n: n, lambda n: n.bit_length(), GrowthBound(100, 3))
    # reference: first power of two beating 100 (2 + j)^3
    j = next(j for j in range(64) if 2**j > 100 * (2 + j) ** 3)
    assert hit[0] == 2**j == 2**21
    assert hit[1] == 2**21 and hit[2] == 100 * 23**3


def test_suggest_growth():
    ident = [(n, n) for n in range(20)]
    table = suggest_growth(ident)
    assert table["degrees"][1]["C"] <= 1 and table["heuristic"]
    expo = suggest_growth([(w, 2**w) for w in range(1, 61)], radii=[30, 40, 50, 60])
    for k in range(7):
        assert expo["degrees"][k]["increasing"]
    const = suggest_growth([(w, 7) for w in range(5)], k_max=0)
    assert list(const["degrees"]) == [0] and const["degrees"][0]["C"] == 7
    with pytest.raises(ValueError):
        suggest_growth([])
