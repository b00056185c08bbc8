import random

import pytest
from hypothesis import given, settings, strategies as st

from plumgraph.diagram import (change_crossings, crossing_change, cube_knotted_projection,
                               mirror, random_finger_moves, resolutions,
                               restrict_to_cycles, standard_plum_diagram,
                               trivial_plum_diagram)
from plumgraph.graph import build_plum_graph, cube_graph
from plumgraph.invariants import (InvariantError, bareiss_det, bracket_determinant,
                                  bracket_polynomial, goeritz_matrix, invariants_report,
                                  knot_determinant, linking_number, linking_vector,
                                  nontriviality_certificate, pair_linking_numbers, writhe)

from conftest import closed_two_braid, kink_diagram


# ---- linking numbers ---------------------------------------------------------

def test_hopf_and_torus_links():
    assert abs(linking_number(closed_two_braid(2))) == 1
    assert linking_number(closed_two_braid(4)) == 2
    assert linking_number(mirror(closed_two_braid(4))) == -2
    assert abs(linking_number(closed_two_braid(6))) == 3


def test_linking_number_needs_two_components():
    with pytest.raises(InvariantError):
        linking_number(closed_two_braid(3))
    with pytest.raises(InvariantError):
        writhe(closed_two_braid(4))


def test_linking_number_invariant_under_crossing_change_of_self_crossings(rng):
    d = closed_two_braid(4)
    d2 = random_finger_moves(d, rng, 3)
    assert linking_number(d2) == linking_number(d)


# ---- writhe and kinks --------------------------------------------------------

@pytest.mark.parametrize("over_first,side", [(True, 1), (False, 1), (True, -1), (False, -1)])
def test_kink_writhe(over_first, side):
    d = kink_diagram(over_first, side)
    w = writhe(d)
    assert abs(w) == 1
    assert writhe(mirror(d)) == -w
    assert knot_determinant(d) == 1 == bracket_determinant(d)


def test_kink_sides_have_opposite_writhe():
    assert writhe(kink_diagram(True, 1)) == -writhe(kink_diagram(True, -1))


def test_kink_bracket_is_a_unit_monomial():
    poly = bracket_polynomial(kink_diagram())
    assert len(poly) == 1 and abs(next(iter(poly.values()))) == 1
    assert abs(next(iter(poly))) == 3


# ---- linking vector -----------------------------------------------------------

@pytest.mark.parametrize("n", range(1, 7))
def test_standard_linking_vector(n):
    L = linking_vector(standard_plum_diagram(n), build_plum_graph(n))
    assert tuple(L) == tuple([2 * n + 1] + [0] * (n - 1))


@pytest.mark.parametrize("n", range(1, 5))
def test_trivial_linking_vector_is_zero(n):
    assert tuple(linking_vector(trivial_plum_diagram(n), build_plum_graph(n))) == (0,) * n


@pytest.mark.parametrize("n", [1, 2, 3])
def test_mirror_antisymmetry(n):
    P = build_plum_graph(n)
    d = standard_plum_diagram(n)
    assert tuple(linking_vector(mirror(d), P)) == tuple(-x for x in linking_vector(d, P))


def test_pair_linking_numbers_only_cover_disjoint_pairs():
    P = build_plum_graph(2)
    lk = pair_linking_numbers(standard_plum_diagram(2), P)
    assert len(lk) == P.m * (P.m - 2)
    assert all(P.disjoint_NS(i, j) for i, j in lk)


def test_linking_vector_rejects_other_graph():
    with pytest.raises(InvariantError):
        linking_vector(standard_plum_diagram(1), build_plum_graph(2))


@given(st.integers(0, 10**6), st.sampled_from([1, 2, 3]))
@settings(max_examples=20, deadline=None)
def test_one_change_moves_at_most_four_pair_numbers(seed, n):
    rng = random.Random(seed)
    P = build_plum_graph(n)
    d = random_finger_moves(standard_plum_diagram(n), rng, 1)
    x = rng.choice(d.crossing_ids)
    a = pair_linking_numbers(d, P)
    b = pair_linking_numbers(crossing_change(d, x), P)
    changed = [k for k in a if a[k] != b[k]]
    assert len(changed) <= 4
    assert all(abs(a[k] - b[k]) == 1 for k in changed)


# ---- determinants ------------------------------------------------------------

def test_bareiss_matches_small_cases():
    assert bareiss_det([]) == 1
    assert bareiss_det([[3]]) == 3
    assert bareiss_det([[0, 1], [1, 0]]) == -1
    assert bareiss_det([[2, -1, 0], [-1, 2, -1], [0, -1, 2]]) == 4
    assert bareiss_det([[1, 2], [2, 4]]) == 0


@given(st.lists(st.integers(-5, 5), min_size=16, max_size=16))
@settings(max_examples=60, deadline=None)
def test_bareiss_against_fraction_elimination(entries):
    from fractions import Fraction
    M = [entries[i * 4:(i + 1) * 4] for i in range(4)]
    A = [[Fraction(x) for x in row] for row in M]
    det = Fraction(1)
    for k in range(4):
        p = next((r for r in range(k, 4) if A[r][k] != 0), None)
        if p is None:
            det = Fraction(0)
            break
        if p != k:
            A[k], A[p] = A[p], A[k]
            det = -det
        det *= A[k][k]
        for r in range(k + 1, 4):
            f = A[r][k] / A[k][k]
            A[r] = [a - f * b for a, b in zip(A[r], A[k])]
    assert bareiss_det(M) == det


@pytest.mark.parametrize("k,det", [(3, 3), (5, 5), (7, 7)])
def test_torus_knot_determinants(k, det):
    d = closed_two_braid(k)
    assert knot_determinant(d) == det == bracket_determinant(d)
    assert knot_determinant(mirror(d)) == det


@pytest.mark.parametrize("n", range(1, 6))
def test_equator_determinant(n):
    P = build_plum_graph(n)
    K = restrict_to_cycles(standard_plum_diagram(n), [P.equator])
    assert knot_determinant(K) == 2 * n + 1 == bracket_determinant(K)
    assert writhe(K) == 2 * n + 1


def test_goeritz_rows_sum_to_zero():
    G = goeritz_matrix(closed_two_braid(5))
    assert all(sum(row) == 0 for row in G)
    assert all(G[i][j] == G[j][i] for i in range(len(G)) for j in range(len(G)))


@given(st.integers(0, 10**6))
@settings(max_examples=25, deadline=None)
def test_determinant_agrees_with_bracket_on_random_diagrams(seed):
    rng = random.Random(seed)
    d = closed_two_braid(rng.choice([3, 5]))
    d = random_finger_moves(d, rng, rng.randint(0, 2))
    d = change_crossings(d, [x for x in d.crossing_ids if rng.random() < 0.4])
    assert knot_determinant(d) == bracket_determinant(d)
    assert knot_determinant(d) % 2 == 1


def test_numba_and_python_state_sums_agree():
    from plumgraph import _kernels
    from plumgraph.invariants import _bracket_tables
    if _kernels.state_loops_numba is None:
        pytest.skip("numba missing")
    tables = _bracket_tables(closed_two_braid(5))
    a = _kernels.state_loops_python(*tables)
    b = _kernels.state_loops_numba(*tables)
    assert (a == b).all()


# ---- certificates ------------------------------------------------------------

def test_cube_resolutions_hopf_counts():
    p = cube_knotted_projection()
    counts = []
    for d in resolutions(p):
        cert = nontriviality_certificate(d, p.graph)
        assert cert.verdict == "nontrivial"
        counts.append(cert.hopf_count)
    assert sorted(counts) == [1, 1, 1, 1, 1, 1, 3, 3]


def test_trivial_embedding_is_inconclusive_never_trivial():
    cert = nontriviality_certificate(trivial_plum_diagram(1))
    assert cert.verdict == "inconclusive" and cert.witnesses == ()


def test_certificate_is_deterministic():
    d = standard_plum_diagram(1)
    a = nontriviality_certificate(d).to_dict()
    b = nontriviality_certificate(load_copy(d)).to_dict()
    assert a == b


def load_copy(d):
    from plumgraph.diagram import load
    return load(d.to_json())


def test_report_contents():
    r = invariants_report(standard_plum_diagram(1), build_plum_graph(1))
    assert r["linkingVector"] == [3]
    assert r["verdict"] == "nontrivial" and r["hopfLinks"] == 3
    assert cube_graph() == standard_plum_diagram(1).graph
