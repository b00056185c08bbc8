import pytest
from hypothesis import given, settings, strategies as st

from plumgraph.l1 import (EXACT, UNRESOLVED, L1Problem, min_l1, prefix_min_l1,
                          unknotting_sequence, verify_subclaims, verify_unknotting_number)
from plumgraph.moves import move_set, normalize


def dp_oracle(gens, budget):
    """Least sum |phi| for every point of cost <= budget, one generator at a time."""
    best = {(0,) * len(gens[0]): 0}
    for g in gens:
        nxt = dict(best)
        for p, c in best.items():
            for k in range(1, budget - c + 1):
                for s in (k, -k):
                    q = tuple(a + s * b for a, b in zip(p, g))
                    if nxt.get(q, budget + 1) > c + k:
                        nxt[q] = c + k
        best = nxt
    return best


@pytest.mark.parametrize("n", [1, 2])
def test_min_l1_matches_dp_oracle(n):
    gens = move_set(n).vectors
    table = dp_oracle(gens, 6)
    for point, cost in sorted(table.items())[:: max(1, len(table) // 150)]:
        sol = min_l1(L1Problem(gens, point), max_cost=6)
        assert sol.status == EXACT and sol.cost == cost, point


@given(st.lists(st.tuples(st.integers(-2, 2), st.integers(-2, 2)), min_size=1, max_size=4),
       st.tuples(st.integers(-6, 6), st.integers(-6, 6)))
@settings(max_examples=60, deadline=None)
def test_min_l1_random_against_oracle(gens, target):
    gens = [g for g in gens if any(g)]
    if not gens:
        return
    table = dp_oracle(gens, 6)
    sol = min_l1(L1Problem(gens, target), max_cost=6)
    if target in table:
        assert sol.status == EXACT and sol.cost == table[target]
    else:
        assert sol.status == UNRESOLVED


def test_witness_reconstructs_target():
    gens = move_set(3).vectors
    sol = min_l1(L1Problem(gens, (7, 0, 0)))
    total = [0, 0, 0]
    for g, c in sol.phi.items():
        for i in range(3):
            total[i] += c * g[i]
    assert tuple(total) == (7, 0, 0) == sol.achieved
    assert sum(abs(c) for c in sol.phi.values()) == sol.cost == 6


def test_simple_cases():
    assert min_l1(L1Problem([(2,), (1,)], (3,))).cost == 2
    assert min_l1(L1Problem([(2,)], (0,))).cost == 0
    assert min_l1(L1Problem([(2,)], (3,)), max_cost=8).status == UNRESOLVED


def test_pinned_prefix():
    sol = min_l1(L1Problem([(1, 5), (1, -5)], (2, 0), pinned=1))
    assert sol.cost == 2


def test_state_budget_gives_unresolved():
    gens = move_set(4).vectors
    sol = min_l1(L1Problem(gens, (9, 0, 0, 0)), max_cost=8, max_states=50)
    assert sol.status == UNRESOLVED and sol.cost is None


def test_bad_problem():
    with pytest.raises(ValueError):
        L1Problem([(1, 2)], (1,))
    with pytest.raises(ValueError):
        L1Problem([(1,)], (1,), pinned=3)


@pytest.mark.parametrize("n", range(1, 5))
def test_lower_bound(n):
    r = verify_unknotting_number(n)
    assert r["lowerStatus"] == EXACT and r["lower"] == 2 * n
    assert r["upper"] == 2 * n and r["ok"]


@pytest.mark.parametrize("n", range(1, 13))
def test_explicit_sequence(n):
    seq = unknotting_sequence(n)
    assert len(seq) == 2 * n
    assert tuple(map(sum, zip(*seq))) == tuple([2 * n + 1] + [0] * (n - 1))
    assert seq[-1][-1] == (-1) ** (n - 1)
    B = set(move_set(n).vectors)
    assert all(normalize(t) in B for t in seq)


def test_upper_only_for_large_n():
    r = verify_unknotting_number(8)
    assert r["lowerStatus"] == "skipped" and r["upperOk"] and r["ok"]


@pytest.mark.parametrize("n", [2, 3, 4])
def test_subclaims(n):
    r = verify_subclaims(n)
    assert r["ok"]
    for row in r["rows"]:
        assert row["cost"] == n + row["k"]
        if row["k"] <= n - 2:
            allowed = {0, 1} if row["k"] == 1 else {-1, 0, 1}
            assert set(row["values"]) <= allowed


def test_prefix_bad_k():
    with pytest.raises(ValueError):
        prefix_min_l1(move_set(2).vectors, 2, 3)


def test_prefix_matches_pinned_min_l1():
    n = 3
    gens = move_set(n).vectors
    for k in range(1, n + 1):
        r = prefix_min_l1(gens, n, k)
        sol = min_l1(L1Problem(gens, (7, 0, 0), pinned=k))
        assert r.cost == sol.cost


def test_solution_dict():
    d = min_l1(L1Problem([(2,), (1,)], (3,))).to_dict()
    assert d["cost"] == 2 and d["status"] == EXACT
    assert sum(abs(c) for _, c in d["phi"]) == 2
