import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dfdomains import MoebiusMap
from dfdomains.modular import (L, R, coset_enumerate, cycle_type, find_relabeling,
                               format_cycles, generated_oracle, hsu_test, level, lr_decompose,
                               parse_cycles, perm_group_order, perm_inv, perm_mul, perm_order,
                               perm_pow, principal_congruence_index, congruence_oracle)


def closure_size(perms):
    """Brute-force group order: breadth-first closure under right multiplication."""
    n = len(perms[0])
    start = tuple(range(n))
    seen, frontier = {start}, [start]
    while frontier:
        nxt = []
        for g in frontier:
            for p in perms:
                h = tuple(int(p[i]) for i in g)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return len(seen)


perms = st.integers(2, 7).flatmap(
    lambda n: st.lists(st.permutations(list(range(n))), min_size=1, max_size=3))


@settings(max_examples=60, deadline=None)
@given(perms)
def test_group_order_matches_closure(gens):
    arrays = [np.array(p, dtype=np.int64) for p in gens]
    assert perm_group_order(arrays) == closure_size(arrays)


def test_symmetric_group_order():
    n = 9
    swap = np.arange(n)
    swap[[0, 1]] = [1, 0]
    cyc = np.roll(np.arange(n), -1)
    assert perm_group_order([swap, cyc]) == math.factorial(n)


@given(st.permutations(list(range(8))), st.permutations(list(range(8))))
def test_perm_algebra(p, q):
    p, q = np.array(p), np.array(q)
    ident = np.arange(8)
    assert np.array_equal(perm_mul(p, perm_inv(p)), ident)
    assert np.array_equal(perm_pow(p, perm_order(p)), ident)
    # products act left to right
    assert all(perm_mul(p, q)[i] == q[p[i]] for i in range(8))
    assert np.array_equal(parse_cycles(format_cycles(p), 8), p)
    assert sum(cycle_type(p)) == 8


@pytest.mark.parametrize("g", [L, R, MoebiusMap(0, -1, 1, 0), MoebiusMap(10, 3, 33, 10),
                               MoebiusMap(-34, -11, 99, 32), MoebiusMap(2, 5, 7, 18)])
def test_lr_decompose(g):
    assert lr_decompose(g).evaluate() == g


def test_lr_rejects_non_integral():
    with pytest.raises(ValueError):
        lr_decompose(MoebiusMap(1, 0, 0, 1) * MoebiusMap(2, 0, 0, 1))


@pytest.mark.parametrize("n, index", [(2, 6), (3, 12), (5, 60), (7, 168), (11, 660)])
def test_principal_index(n, index):
    assert principal_congruence_index(n) == index


@pytest.mark.parametrize("n", [3, 5])
def test_principal_subgroups_are_congruence(n):
    action = coset_enumerate(congruence_oracle(n))
    assert action.index == principal_congruence_index(n)
    assert level(action) == n
    assert set(action.cusp_widths()) == {n}
    assert hsu_test(action).verdict == "congruence"
    # the coset action of a normal subgroup is regular
    assert perm_group_order([action.perm_L, action.perm_R]) == action.index


@pytest.mark.parametrize("n, index", [(5, 6), (7, 8), (11, 12), (9, 12)])
def test_gamma0(n, index):
    action = coset_enumerate(congruence_oracle(n, "gamma0"))
    assert action.index == index
    assert level(action) == n
    assert hsu_test(action).verdict == "congruence"


def test_even_level_untested():
    report = hsu_test(coset_enumerate(congruence_oracle(2)))
    assert report.verdict == "untested" and report.level == 2


def test_budget():
    with pytest.raises(ValueError, match="budget"):
        coset_enumerate(congruence_oracle(7), budget=20)


def test_generated_oracle_for_gamma0_5():
    gens = [L, MoebiusMap(1, 0, 5, 1), MoebiusMap(2, -1, 5, -2)]
    member = generated_oracle(gens)
    gamma0 = congruence_oracle(5, "gamma0")
    for g in (MoebiusMap(4, 1, 15, 4), MoebiusMap(1, 0, 10, 1), R, MoebiusMap(2, 1, 5, 3)):
        assert member(g) == gamma0(g)
    assert coset_enumerate(member).index == 6


def test_relabeling():
    rng = np.random.default_rng(3)
    action = coset_enumerate(congruence_oracle(5, "gamma0"))
    s = rng.permutation(action.index)
    sinv = perm_inv(s)
    conj = [perm_mul(perm_mul(sinv, p), s) for p in (action.perm_L, action.perm_R)]
    found = find_relabeling([action.perm_L, action.perm_R], conj)
    assert found is not None
    for p, q in zip((action.perm_L, action.perm_R), conj):
        assert all(found[p[i]] == q[found[i]] for i in range(action.index))
    bad = [np.roll(np.arange(action.index), 1), conj[1]]
    assert find_relabeling([action.perm_L, action.perm_R], bad) is None


@given(st.lists(st.tuples(st.sampled_from(["L", "R"]), st.integers(-4, 4)), max_size=8))
def test_lr_decompose_random_words(letters):
    g = MoebiusMap.identity()
    for name, e in letters:
        g = g * (L if name == "L" else R) ** e
    word = lr_decompose(g)
    assert word.evaluate() == g
    assert all(e != 0 for _, e in word.letters)
