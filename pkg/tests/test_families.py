import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import two_block_chain
from cubicpm import (
    CountQuery,
    bridges,
    corners,
    count_matchings,
    from_edge_list,
    is_isomorphic,
    is_klee,
    klee,
    ladder,
    named,
    random_cubic_bridgeless,
    random_klee,
    random_twisted_net,
    recognize_ladder,
    recognize_twisted_net,
    semiblocks,
    twisted_net,
)
from cubicpm.errors import (
    BadDegrees,
    BadSize,
    Bridged,
    UnknownName,
    UnreachableParity,
)
from cubicpm.families import (
    BASE_4CYCLE,
    KleeRecipe,
    TwistedNetRecipe,
    ladder_pm_count,
)
from cubicpm.matchings import is_bipartite


def _girth(g):
    import itertools

    best = None
    # parallel pair = 2-cycle
    from collections import Counter

    if any(c > 1 for c in Counter(g.edges).values()):
        return 2
    for k in range(3, g.vertex_count + 1):
        for cyc in itertools.permutations(range(g.vertex_count), k):
            if cyc[0] != min(cyc):
                continue
            if all(g.multiplicity(cyc[i], cyc[(i + 1) % k]) for i in range(k)):
                return k
    return best


def test_named_catalog(named_graphs):
    p = named_graphs["petersen"]
    assert p.vertex_count == 10 and p.edge_count == 15 and _girth(p) == 5
    th = named_graphs["theta"]
    assert th.vertex_count == 2 and th.edge_count == 3
    assert named_graphs["moebius_kantor"].vertex_count == 16
    assert named_graphs["dodecahedron"].vertex_count == 20
    with pytest.raises(UnknownName):
        named("heptagon")


def test_exceptional6_structure(named_graphs):
    g = named_graphs["exceptional6"]
    assert g.vertex_count == 6 and g.edge_count == 7
    assert corners(g) == (0, 1, 2, 3)
    assert not is_bipartite(g)
    recipe = recognize_twisted_net(g)
    assert recipe is not None
    assert is_isomorphic(twisted_net(recipe), g)
    # near-perfect counts: one corner pair leaves two matchings, the rest one
    vals = sorted(
        count_matchings(g, CountQuery(missed_vertices=frozenset(p)))
        for p in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    )
    assert vals == [1, 1, 1, 1, 1, 2]


def test_corners(named_graphs):
    assert corners(BASE_4CYCLE) == (0, 1, 2, 3)
    assert corners(named_graphs["petersen"]) == ()
    with pytest.raises(BadDegrees):
        corners(from_edge_list(4, [(0, 1), (1, 2), (2, 3)]))


# --- ladders ------------------------------------------------------------------


def test_ladder_small():
    assert is_isomorphic(ladder(2), BASE_4CYCLE)
    assert count_matchings(ladder(2)) == 2
    assert count_matchings(ladder(3)) == 3
    assert count_matchings(ladder(10)) == 89


def test_ladder_recurrence():
    for k in range(3, 21):
        assert ladder_pm_count(k) == ladder_pm_count(k - 1) + ladder_pm_count(k - 2)
    assert ladder_pm_count(1) == 1 and ladder_pm_count(2) == 2


def test_ladder_recognizer():
    for k in (1, 2, 3, 5, 8):
        ends = recognize_ladder(ladder(k))
        assert ends is not None
        g = ladder(k)
        for e in set(ends):
            u, v = g.endpoints(e)
            assert g.degree(u) == g.degree(v) <= 2
    assert recognize_ladder(named("cube")) is None
    assert recognize_ladder(named("petersen")) is None
    with pytest.raises(BadSize):
        ladder(0)


# --- Klee graphs ------------------------------------------------------------------


def test_klee_base_cases(named_graphs):
    assert klee(KleeRecipe()) == named_graphs["k4"]
    six = klee(KleeRecipe((0,)))
    assert six.vertex_count == 6
    assert is_isomorphic(six, named_graphs["prism"])


def test_the_six_vertex_klee_graph_is_the_prism(named_graphs):
    # K4 with one vertex replaced by a triangle is exactly the triangular prism
    assert is_klee(named_graphs["prism"])


def test_klee_recognizer_rejects(named_graphs):
    assert not is_klee(named_graphs["petersen"])
    assert not is_klee(named_graphs["k33"])
    assert not is_klee(named_graphs["cube"])
    assert not is_klee(named_graphs["theta"])


def test_random_klee_sizes_and_recognition():
    for seed in range(100):
        n = 4 + 2 * (seed % 6)
        g = random_klee(seed, n)
        assert g.vertex_count == n and g.is_cubic
        assert is_klee(g)
    with pytest.raises(BadSize):
        random_klee(0, 7)


def test_klee_needs_backtracking():
    # greedy triangle contraction can pick a triangle that strands the search;
    # these graphs have several candidate triangles at once
    g = random_klee(17, 14)
    assert is_klee(g)


# --- twisted nets ---------------------------------------------------------------------


def test_twisted_net_base_and_increment():
    assert twisted_net(TwistedNetRecipe()) == BASE_4CYCLE
    g, recipe = random_twisted_net(0, 6)
    assert g.vertex_count == 6 and len(corners(g)) == 4


def test_twisted_recipe_round_trip():
    for seed in range(60):
        n = 4 + 2 * (seed % 10)
        g, recipe = random_twisted_net(seed, n)
        assert g.vertex_count == n
        assert g.vertex_count % 2 == 0
        assert len(corners(g)) == 4
        assert twisted_net(recipe) == g


def test_twisted_recipe_json_round_trip():
    g, recipe = random_twisted_net(12, 16)
    assert TwistedNetRecipe.from_json(recipe.to_json()) == recipe


def test_twisted_recognizer_on_generated():
    for seed in range(25):
        n = 4 + 2 * (seed % 7)
        g, _ = random_twisted_net(seed, n)
        recipe = recognize_twisted_net(g)
        assert recipe is not None
        assert is_isomorphic(twisted_net(recipe), g, exact_limit=16)


def test_twisted_recognizer_rejects(named_graphs):
    assert recognize_twisted_net(named_graphs["cube"]) is None
    assert recognize_twisted_net(named_graphs["k4"]) is None
    assert recognize_twisted_net(ladder(3)) is not None  # the 2x3 grid qualifies


def test_twisted_bipartite_steering():
    g, _ = random_twisted_net(3, 12, want_bipartite=True)
    assert is_bipartite(g)
    g, _ = random_twisted_net(3, 12, want_bipartite=False)
    assert not is_bipartite(g)
    with pytest.raises(UnreachableParity):
        random_twisted_net(3, 4, want_bipartite=False)
    with pytest.raises(BadSize):
        random_twisted_net(3, 7)


# --- semiblocks ------------------------------------------------------------------------


def test_semiblocks_three_edge_connected(named_graphs):
    sides, s = semiblocks(named_graphs["petersen"])
    assert s == 1 and sides == (frozenset(range(10)),)


def test_semiblocks_two_block_chain():
    g = two_block_chain()
    sides, s = semiblocks(g)
    assert s == 2
    assert all(len(side) == 4 for side in sides)
    assert not (sides[0] & sides[1])
    # every edge avoided by at least s+1 matchings
    for e in range(g.edge_count):
        avoid = count_matchings(g, CountQuery(forbidden=frozenset({e})))
        assert avoid >= s + 1


def test_semiblocks_disjoint_on_random_two_cut_instances():
    rng = random.Random(1)
    found = 0
    for seed in range(200):
        g = random_cubic_bridgeless(seed, 10)
        from cubicpm import enumerate_cuts

        if not any(c.size == 2 for c in enumerate_cuts(g, 2, cyclic_only=False)):
            continue
        sides, s = semiblocks(g)  # raises internally if sides overlap
        found += 1
        if found >= 10:
            break
    assert found >= 5


def test_semiblocks_reject_bridged():
    from conftest import bridged_cubic

    with pytest.raises(Bridged):
        semiblocks(bridged_cubic())


# --- random cubic bridgeless sampler ---------------------------------------------------


def test_sampler_postconditions():
    for seed in range(100):
        g = random_cubic_bridgeless(seed, 10)
        assert g.is_cubic and g.is_connected() and not bridges(g)


def test_sampler_deterministic():
    assert random_cubic_bridgeless(7, 12) == random_cubic_bridgeless(7, 12)


def test_sampler_distribution_sanity(named_graphs):
    hits = {"k33": 0, "prism": 0, "multi": 0}
    for seed in range(2000):
        g = random_cubic_bridgeless(seed, 6)
        if len(set(g.edges)) != g.edge_count:
            hits["multi"] += 1
        elif is_isomorphic(g, named_graphs["k33"]):
            hits["k33"] += 1
        elif is_isomorphic(g, named_graphs["prism"]):
            hits["prism"] += 1
    assert all(v > 0 for v in hits.values())


def test_sampler_simple_flag():
    for seed in range(30):
        g = random_cubic_bridgeless(seed, 8, simple=True)
        assert len(set(g.edges)) == g.edge_count


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_sampler_bad_size(seed):
    with pytest.raises(BadSize):
        random_cubic_bridgeless(seed, 7)
