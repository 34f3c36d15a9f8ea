import pytest

from cycletrace.errors import BudgetExceeded, NotIdentityOrdering, NotSimple
from cycletrace.formats import parse_graph
from cycletrace.graph import betti, connected_multigraphs, validate
from cycletrace.perm import EdgeOrdering, is_full_cyclic_ordering, is_identity_ordering, ordering
from cycletrace.rotation import Dart, face_count, orbit_face_bijection
from cycletrace.search import (
    build_fcp_construction,
    check_eden_conditions,
    check_trail_map,
    construct_fcp_ordering,
    decide_fcp,
    exhaustive_fcp_ordering,
    exhaustive_identity_ordering,
    find_identity_ordering,
    has_fcp_ordering,
    identity_ordering_feasible,
    is_upper_embeddable,
    max_genus_bruteforce,
    max_genus_xuong,
    survey_one_face_orderability,
    verify_eden12_fixture,
    xuong_deficiency,
)


@pytest.mark.parametrize(
    "name, gamma_max, faces",
    [("butterfly", 1, 1), ("dumbbell", 0, 3), ("k4", 1, 2), ("dipole", 0, 2), ("path3", 0, 1)],
)
def test_max_genus_of_fixtures(request, name, gamma_max, faces):
    g = request.getfixturevalue(name)
    best = max_genus_bruteforce(g)
    assert (best.gamma_max, best.face_count) == (gamma_max, faces)
    assert face_count(g, best.witness) == faces
    assert max_genus_xuong(g) == gamma_max


def test_max_genus_witness_does_not_depend_on_jobs(butterfly, dumbbell):
    for g in (butterfly, dumbbell):
        assert max_genus_bruteforce(g, jobs=2) == max_genus_bruteforce(g, jobs=1)


def test_max_genus_budget(k4):
    with pytest.raises(BudgetExceeded) as info:
        max_genus_bruteforce(k4, budget=15)
    assert info.value.needed == 16
    assert info.value.exit_code == 2
    assert max_genus_bruteforce(k4, budget=16).gamma_max == 1


def test_xuong_deficiency(butterfly, dumbbell, k4):
    assert xuong_deficiency(butterfly) == 0
    assert xuong_deficiency(dumbbell) == 2
    assert xuong_deficiency(k4) == 1


def test_upper_embeddable(butterfly, dumbbell, k4):
    found, tree = is_upper_embeddable(butterfly)
    assert found
    assert tree.sorted_edges() == ("e1", "e2", "e3", "e4")
    assert is_upper_embeddable(dumbbell) == (False, None)
    assert is_upper_embeddable(k4)[0]


def test_decide_fcp_reasons(butterfly, dumbbell, dipole):
    assert decide_fcp(dumbbell) == (False, "no_even_cotree_spanning_tree", None)
    assert decide_fcp(dipole) == (False, "odd_betti", None)
    found, reason, tree = decide_fcp(butterfly)
    assert (found, reason) == (True, "even_cotree_spanning_tree")
    assert len(tree.tree_edges) == butterfly.n - 1


def test_dumbbell_has_no_full_cyclic_ordering(dumbbell):
    assert not has_fcp_ordering(dumbbell)
    assert exhaustive_fcp_ordering(dumbbell) is None
    assert construct_fcp_ordering(dumbbell) is None


def test_exhaustive_oracle_budget(dumbbell):
    with pytest.raises(BudgetExceeded):
        exhaustive_fcp_ordering(dumbbell, budget=5039)


def test_construct_fcp_on_butterfly(butterfly):
    construction = build_fcp_construction(butterfly)
    assert is_full_cyclic_ordering(butterfly, construction.ordering)
    assert construction.subdivided.m == 2 * butterfly.m
    assert construction.orbit_counts == [1] * butterfly.m
    assert sorted(construction.ordering.sequence) == sorted(butterfly.edges)


@pytest.mark.parametrize(
    "text",
    [
        "edge e 1 2\nedge e.1 2 3\n",
        "edge a 1 2\nedge b 2 a.m\n",
        "vertex 1\nvertex 2\nvertex 3\nvertex e.m\nvertex 5\n"
        "edge e 1 2\nedge e.1 2 3\nedge e.2 3 1\nedge e.m 1 e.m\nedge x e.m 5\nedge e.1.1 5 1\n",
    ],
)
def test_construct_fcp_with_dotted_labels(text):
    g = parse_graph(text)
    assert has_fcp_ordering(g)
    construction = build_fcp_construction(g)
    assert is_full_cyclic_ordering(g, construction.ordering)
    assert sorted(construction.ordering.sequence) == sorted(g.edges)
    assert construction.subdivided.n == g.n + g.m
    assert not set(construction.subdivided.edges) & set(g.edges)


def test_construct_fcp_on_one_vertex():
    g = validate(["v"], [])
    assert construct_fcp_ordering(g) == EdgeOrdering(sequence=())


def test_ordering_face_and_tree_criteria_agree_on_small_graphs():
    for g in connected_multigraphs(6):
        by_orderings = exhaustive_fcp_ordering(g) is not None
        best = max_genus_bruteforce(g)
        by_faces = best.face_count == 1
        by_trees = has_fcp_ordering(g)
        assert by_orderings == by_faces == by_trees, g.endpoints
        assert max_genus_xuong(g) == best.gamma_max, g.endpoints
        assert is_upper_embeddable(g)[0] == (best.gamma_max == betti(g) // 2), g.endpoints


def test_construction_on_every_positive_small_graph():
    positives = 0
    for g in connected_multigraphs(6):
        if not has_fcp_ordering(g):
            continue
        construction = build_fcp_construction(g)
        assert is_full_cyclic_ordering(g, construction.ordering), g.endpoints
        assert all(ell == 1 for ell in construction.orbit_counts), g.endpoints
        positives += 1
    assert positives > 0


def test_k4_identity_trails(k4):
    omega = EdgeOrdering(sequence=k4.edges)
    report = check_eden_conditions(k4, omega)
    assert {v: set(edges) for v, edges in report.trail_map.items()} == {
        "1": {"e1", "e4", "e5"},
        "2": {"e1", "e3", "e6"},
        "3": {"e2", "e4", "e6"},
        "4": {"e2", "e3", "e5"},
    }
    assert report.m_even
    assert all(report.conditions.values())
    assert report.holds
    assert report.euler_feasible
    assert len(orbit_face_bijection(k4, omega)) == 4


def test_eden_conditions_preconditions(butterfly, dipole):
    with pytest.raises(NotIdentityOrdering):
        check_eden_conditions(butterfly, ordering("e1", "e2", "e3", "e4", "e5", "e6"))
    with pytest.raises(NotSimple):
        check_eden_conditions(dipole, ordering("e1", "e2"))


def test_check_trail_map_detects_missing_trail(k4):
    report = check_eden_conditions(k4, EdgeOrdering(sequence=k4.edges))
    trails = {}
    for v, edges in report.trail_map.items():
        walk, here = [], v
        for e in edges:
            there = k4.other_end(e, here)
            walk.append(Dart(e, here, there))
            here = there
        trails[v] = tuple(walk)
    assert check_trail_map(k4, trails).holds
    del trails["4"]
    broken = check_trail_map(k4, trails)
    assert not broken.conditions["bijective"]
    assert not broken.conditions["total_2m"]
    assert not broken.conditions["each_edge_twice"]


def test_identity_ordering_feasibility(k4, butterfly, eden12):
    assert identity_ordering_feasible(k4)
    assert not identity_ordering_feasible(butterfly)
    assert not identity_ordering_feasible(eden12)
    assert find_identity_ordering(butterfly) is None


def test_find_identity_ordering(k4):
    omega = find_identity_ordering(k4)
    assert omega is not None
    assert is_identity_ordering(k4, omega)
    with pytest.raises(BudgetExceeded):
        find_identity_ordering(k4, budget=1)


def test_find_identity_ordering_matches_exhaustive_search():
    for g in connected_multigraphs(5):
        found = find_identity_ordering(g)
        expected = exhaustive_identity_ordering(g)
        assert (found is None) == (expected is None), g.endpoints
        if found is not None:
            assert is_identity_ordering(g, found)


def test_verify_eden12_fixture():
    report = verify_eden12_fixture()
    assert report.passed
    assert report.trail_edge_total == 40
    assert (report.vertices, report.edges) == (12, 20)
    assert report.edges < 2 * report.vertices - 2
    assert report.implied_genus == -1
    assert not report.identity_ordering_exists


def test_survey_one_face_orderability():
    survey = survey_one_face_orderability(3)
    assert survey.graphs == 5
    assert survey.one_face_systems == 7
    assert survey.orderable == 7
