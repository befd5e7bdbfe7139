"""Tests for sampling, graph construction, components, crossings, and the
structural checks in :mod:`knnlab.sim`.
"""

from __future__ import annotations

import math

import numpy as np
import pytest

from knnlab import sim
from knnlab.bounds import model_constants
from knnlab.sim import (
    PointSet,
    SampleWindow,
    brute_force_graph,
    build_graph,
    check_farapart,
    check_goodness,
    check_half_disk_lemma,
    check_intersect_union_lemma,
    components,
    estimate_connectivity,
    figure_one_pointset,
    find_component_setup,
    find_crossing_pairs,
    sample_intersect_union_quadruples,
    sample_poisson,
    wilson_interval,
)


# ---------------------------------------------------------------------------
# sampling and serialization
# ---------------------------------------------------------------------------


def test_sample_window_side_and_containment():
    w = SampleWindow(100.0)
    assert w.side == 10.0
    assert w.contains(np.array([[0.0, 0.0], [10.0, 10.0]]))
    assert not w.contains(np.array([[10.1, 0.0]]))
    with pytest.raises(ValueError):
        SampleWindow(0.0)


def test_sample_poisson_is_deterministic_per_seed():
    a = sample_poisson(300.0, seed=5)
    b = sample_poisson(300.0, seed=5)
    c = sample_poisson(300.0, seed=6)
    assert np.array_equal(a.points, b.points)
    assert not np.array_equal(a.points, c.points)
    assert a.window.contains(a.points)


def test_sample_poisson_count_is_poisson_scale():
    counts = [len(sample_poisson(400.0, seed=s)) for s in range(30)]
    assert 300 < np.mean(counts) < 500


def test_pointset_validation():
    w = SampleWindow(4.0)
    with pytest.raises(ValueError):
        PointSet(points=np.zeros((3, 3)), seed=0, window=w)
    with pytest.raises(ValueError):
        PointSet(points=np.array([[5.0, 0.0]]), seed=0, window=w)
    with pytest.raises(ValueError):
        PointSet(points=np.array([[np.nan, 0.0]]), seed=0, window=w)


def test_binary_roundtrip_and_guards():
    ps = sample_poisson(150.0, seed=9)
    blob = ps.to_binary()
    back = PointSet.from_binary(blob)
    assert np.array_equal(ps.points, back.points)
    assert back.seed == ps.seed and back.window.n == ps.window.n
    with pytest.raises(ValueError):
        PointSet.from_binary(b"NOTMAGIC" + blob[8:])
    with pytest.raises(ValueError):
        PointSet.from_binary(blob[:-8])


def test_csv_roundtrip_and_header_guard():
    ps = sample_poisson(80.0, seed=1)
    text = ps.to_csv()
    assert text.splitlines()[0] == "x,y"
    back = PointSet.from_csv(text, ps.seed, ps.window)
    assert np.array_equal(ps.points, back.points)
    with pytest.raises(ValueError):
        PointSet.from_csv("a,b\n1,2\n", 0, ps.window)


# ---------------------------------------------------------------------------
# graph construction
# ---------------------------------------------------------------------------


def _line_pointset(xs):
    pts = np.array([[x, 0.0] for x in xs])
    window = SampleWindow(max(100.0, (pts.max() + 1.0) ** 2))
    return PointSet(points=pts, seed=0, window=window)


def test_mutual_versus_either_on_a_line():
    # 0 -- 1 ---- 2: point 1 is nearest to both ends, but point 2's
    # nearest is 1 while 1's nearest is 0.
    ps = _line_pointset([0.0, 1.0, 2.4])
    mutual = build_graph(ps, k=1, model="mutual").edges()
    either = build_graph(ps, k=1, model="either").edges()
    directed = build_graph(ps, k=1, model="directed").edges()
    assert mutual.tolist() == [[0, 1]]
    assert either.tolist() == [[0, 1], [1, 2]]
    assert directed.tolist() == either.tolist()


def test_gilbert_model_radius_rule():
    ps = _line_pointset([0.0, 1.0, 2.4])
    g = build_graph(ps, k=1, model="gilbert", radius=1.5)
    assert g.edges().tolist() == [[0, 1], [1, 2]]
    with pytest.raises(ValueError):
        build_graph(ps, k=1, model="gilbert")
    with pytest.raises(ValueError):
        build_graph(ps, k=1, model="mutual", radius=1.0)


def test_distance_ties_break_by_lower_index():
    pts = np.array([[0.0, 0.0], [1.0, 0.0], [-1.0, 0.0]]) + 5.0
    ps = PointSet(points=pts, seed=0, window=SampleWindow(100.0))
    g = build_graph(ps, k=1, model="directed")
    assert g.out_neighbors[0].tolist() == [1]


def test_neighbourhood_radius_is_kth_distance():
    ps = _line_pointset([0.0, 1.0, 3.0])
    g = build_graph(ps, k=2, model="mutual")
    assert g.neighbourhood_radius(0) == 3.0
    assert g.neighbourhood_radius(1) == 2.0
    gilbert = build_graph(ps, k=2, model="gilbert", radius=1.5)
    with pytest.raises(ValueError):
        gilbert.neighbourhood_radius(0)


def test_build_graph_matches_brute_force():
    rng = np.random.default_rng(42)
    for trial in range(15):
        n = float(rng.integers(3, 600))
        ps = sample_poisson(n, int(rng.integers(1 << 31)))
        if len(ps) < 2:
            continue
        k = int(rng.integers(1, 40))
        model = sim.MODELS[trial % 4]
        radius = float(rng.uniform(0.5, 2.0)) if model == "gilbert" else None
        g = build_graph(ps, k, model=model, radius=radius)
        ref = brute_force_graph(ps, k, model=model, radius=radius)
        assert np.array_equal(g.edges(), ref.edges())
        for a, b in zip(g.out_neighbors, ref.out_neighbors):
            assert np.array_equal(a, b)
        for a, b in zip(g.out_dists, ref.out_dists):
            assert np.array_equal(a, b)


def test_build_graph_handles_degenerate_sizes():
    w = SampleWindow(9.0)
    empty = PointSet(points=np.empty((0, 2)), seed=0, window=w)
    single = PointSet(points=np.array([[1.0, 1.0]]), seed=0, window=w)
    assert build_graph(empty, k=3).edges().shape == (0, 2)
    g = build_graph(single, k=3)
    assert g.edges().shape == (0, 2)
    assert g.neighbourhood_radius(0) == 0.0
    with pytest.raises(ValueError):
        build_graph(single, k=-1)
    with pytest.raises(ValueError):
        build_graph(single, k=1, model="voronoi")


def test_has_edge_and_degree_histogram():
    ps = _line_pointset([0.0, 1.0, 2.4])
    g = build_graph(ps, k=1, model="either")
    assert g.has_edge(0, 1) and g.has_edge(1, 0)
    assert not g.has_edge(0, 2) and not g.has_edge(1, 1)
    assert g.degree_histogram() == {1: 2, 2: 1}


# ---------------------------------------------------------------------------
# components
# ---------------------------------------------------------------------------


def test_components_labels_and_diameters():
    ps = _line_pointset([0.0, 1.0, 2.4, 50.0, 51.0])
    comps = components(build_graph(ps, k=1, model="mutual"))
    assert comps.labels.tolist() == [0, 0, 2, 3, 3]
    assert comps.sizes == {0: 2, 2: 1, 3: 2}
    assert comps.diameters[0] == 1.0
    assert comps.diameters[2] == 0.0
    assert comps.diameters[3] == 1.0
    assert comps.num_components == 3
    assert comps.largest_two_diameters() == (1.0, 1.0)
    assert comps.members(3).tolist() == [3, 4]


def test_component_partition_stable_under_relabelling():
    ps = sample_poisson(400.0, seed=17)
    g = build_graph(ps, k=3, model="mutual")
    comps = components(g)
    perm = np.random.default_rng(3).permutation(len(ps))
    ps2 = PointSet(points=ps.points[perm], seed=ps.seed, window=ps.window)
    comps2 = components(build_graph(ps2, k=3, model="mutual"))
    # Map the permuted partition back to original indices and compare.
    parts1 = {frozenset(np.flatnonzero(comps.labels == c).tolist())
              for c in comps.sizes}
    parts2 = {frozenset(perm[np.flatnonzero(comps2.labels == c)].tolist())
              for c in comps2.sizes}
    assert parts1 == parts2


def test_component_diameter_matches_brute_force_on_random_sets():
    rng = np.random.default_rng(11)
    pts = rng.uniform(0.0, 10.0, size=(200, 2))
    ps = PointSet(points=pts, seed=0, window=SampleWindow(100.0))
    g = build_graph(ps, k=199, model="mutual")  # complete graph
    comps = components(g)
    assert comps.num_components == 1
    diff = pts[:, None, :] - pts[None, :, :]
    expected = math.sqrt(((diff ** 2).sum(-1)).max())
    assert comps.diameters[0] == pytest.approx(expected, rel=1e-12)


# ---------------------------------------------------------------------------
# crossings
# ---------------------------------------------------------------------------


def test_fixture_has_exactly_one_cross_component_crossing():
    ps, roles = figure_one_pointset()
    g = build_graph(ps, roles["k"], model="mutual")
    comps = components(g)
    assert comps.num_components >= 2
    report = find_crossing_pairs(g, comps)
    assert report.num_crossings == 1
    a1, a2, b1, b2 = report.quadruples[0]
    assert {a1, a2} == {roles["a1"], roles["a2"]}
    assert {b1, b2} == {roles["b1"], roles["b2"]}
    assert report.frames[0] is not None
    assert report.maps[0] is not None


def test_crossing_roles_satisfy_ordering_conventions():
    ps, roles = figure_one_pointset()
    g = build_graph(ps, roles["k"], model="mutual")
    report = find_crossing_pairs(g)
    a1, a2, b1, b2 = report.quadruples[0]
    pts = ps.points
    len_a = math.hypot(*(pts[a2] - pts[a1]))
    len_b = math.hypot(*(pts[b2] - pts[b1]))
    assert len_a <= len_b
    assert (math.hypot(*(pts[b1] - pts[a1]))
            <= math.hypot(*(pts[b2] - pts[a1])))


def test_connected_graph_has_no_crossings():
    ps = sample_poisson(500.0, seed=3)
    g = build_graph(ps, k=10, model="mutual")
    comps = components(g)
    if comps.num_components == 1:
        assert find_crossing_pairs(g, comps).num_crossings == 0


def test_crossing_search_reports_planted_crossing():
    # Two crossing segments cannot both be mutual nearest-neighbour pairs,
    # so plant the adjacency lists directly: a long horizontal edge and a
    # shorter vertical edge through it, in different components.
    pts = np.array([
        [1.0, 1.0], [3.0, 1.0],     # horizontal edge, length 2
        [2.0, 0.5], [2.0, 1.5],     # vertical edge, length 1, crossing it
    ])
    ps = PointSet(points=pts, seed=0, window=SampleWindow(100.0))
    g = build_graph(ps, k=1, model="mutual")
    g.out_neighbors = [np.array([1]), np.array([0]),
                       np.array([3]), np.array([2])]
    g.out_dists = [np.array([2.0]), np.array([2.0]),
                   np.array([1.0]), np.array([1.0])]
    g._edges = None
    g._edge_keys = None
    comps = components(g)
    assert comps.num_components == 2
    report = find_crossing_pairs(g, comps)
    assert report.num_crossings == 1
    quad = report.quadruples[0]
    assert {quad[0], quad[1]} == {2, 3}  # shorter edge takes the a role
    assert {quad[2], quad[3]} == {0, 1}


# ---------------------------------------------------------------------------
# structural checks
# ---------------------------------------------------------------------------


def test_half_disk_check_clean_on_mutual_graphs():
    for seed in (0, 1, 2):
        g = build_graph(sample_poisson(600.0, seed), k=6, model="mutual")
        assert check_half_disk_lemma(g) == []


def test_half_disk_check_requires_mutual_model():
    g = build_graph(sample_poisson(100.0, 0), k=3, model="either")
    with pytest.raises(ValueError):
        check_half_disk_lemma(g)


def test_half_disk_check_detects_removed_edge():
    g = build_graph(sample_poisson(600.0, seed=4), k=8, model="mutual")
    pts = g.points
    planted = None
    for lo, hi in g.edges():
        length = math.hypot(*(pts[hi] - pts[lo]))
        for z in range(len(pts)):
            if z in (lo, hi):
                continue
            if (math.hypot(*(pts[z] - pts[lo])) < length / 2.0
                    and g.has_edge(int(lo), z)):
                planted = (int(lo), int(hi), z)
                break
        if planted:
            break
    assert planted is not None, "no half-disk witness available to corrupt"
    x, y, z = planted
    for a, b in ((x, z), (z, x)):
        keep = g.out_neighbors[a] != b
        g.out_neighbors[a] = g.out_neighbors[a][keep]
        g.out_dists[a] = g.out_dists[a][keep]
    g._edges = None
    g._edge_keys = None
    violations = check_half_disk_lemma(g)
    assert (x, y, z) in violations


def test_intersect_union_degenerate_pairs_are_true():
    g = build_graph(sample_poisson(200.0, 8), k=4, model="mutual")
    e = g.edges()[0]
    assert check_intersect_union_lemma(g, (e[0], e[1], e[1], e[0])) is True
    assert check_intersect_union_lemma(g, (e[0], e[1], e[0], e[1])) is True


def test_intersect_union_sampling_finds_no_counterexamples():
    qualified_total = 0
    for seed in (0, 1, 2, 3):
        g = build_graph(sample_poisson(800.0, seed), k=9, model="mutual")
        results, tested = sample_intersect_union_quadruples(g, 300, seed)
        assert tested == 300
        qualified_total += len(results)
        assert all(verdict for _, verdict in results)
    assert qualified_total > 0


def test_farapart_clean_on_mutual_graphs():
    for seed in (0, 1):
        g = build_graph(sample_poisson(900.0, seed), k=3, model="mutual")
        assert check_farapart(g) == []


def test_farapart_detects_planted_foreign_point():
    # A foreign point this close to an edge cannot occur in a real mutual
    # graph (that is the content of the check), so plant the adjacency
    # lists: edge (0, 1) of length 1 with an isolated point 2 only 0.05
    # above its midpoint, well inside rho / (4 sqrt(6)) ~ 0.102.
    pts = np.array([
        [1.0, 1.0], [2.0, 1.0],
        [1.5, 1.05],
    ])
    ps = PointSet(points=pts, seed=0, window=SampleWindow(100.0))
    g = build_graph(ps, k=1, model="mutual")
    g.out_neighbors = [np.array([1]), np.array([0]),
                       np.array([], dtype=np.int64)]
    g.out_dists = [np.array([1.0]), np.array([1.0]),
                   np.array([], dtype=float)]
    g._edges = None
    g._edge_keys = None
    violations = check_farapart(g)
    assert len(violations) == 1
    cand, b1, b2, dist, rho = violations[0]
    assert cand == 2 and {b1, b2} == {0, 1}
    assert dist == pytest.approx(0.05)
    assert rho == 1.0


def test_goodness_all_conditions_pass_on_dense_graph():
    n, c = 2000.0, 1.2
    g = build_graph(sample_poisson(n, 0), k=math.ceil(c * math.log(n)),
                    model="mutual")
    report = check_goodness(g, model_constants(c, n=n))
    assert report.good
    assert report.witnesses == {}


def test_goodness_flags_sparse_two_cluster_configuration():
    rng = np.random.default_rng(5)
    cluster_a = rng.uniform(0.0, 0.1, size=(20, 2)) + [2.0, 2.0]
    cluster_b = rng.uniform(0.0, 0.1, size=(20, 2)) + [8.0, 8.0]
    pts = np.vstack([cluster_a, cluster_b])
    ps = PointSet(points=pts, seed=0, window=SampleWindow(100.0))
    g = build_graph(ps, k=3, model="mutual")
    report = check_goodness(g, model_constants(1.0, n=100.0))
    # Non-edges exist inside the clusters at tiny separation (condition 2)
    # and both small components sit within 2 D of a corner (condition 5).
    assert report.bad[1]
    assert report.bad[4]
    assert not report.bad[0]
    assert not report.bad[3]
    assert not report.bad[5]
    assert not report.good


def test_goodness_detects_empty_half_disk():
    # Two lonely points near the top of a side-100 window: the half-disk
    # of radius D ~ 32 pointing straight down from either point is empty
    # and fits inside the window.
    pts = np.array([[50.0, 80.0], [50.0, 80.5]])
    ps = PointSet(points=pts, seed=0, window=SampleWindow(10000.0))
    g = build_graph(ps, k=1, model="mutual")
    report = check_goodness(g, model_constants(1.0, n=10000.0))
    assert report.bad[2]
    idx, direction = report.witnesses[3]
    assert idx in (0, 1)
    assert 0.0 <= direction < 2.0 * math.pi


def test_component_setup_on_split_graph():
    rng = np.random.default_rng(5)
    cluster_a = rng.uniform(0.0, 0.1, size=(12, 2)) + [2.0, 2.0]
    cluster_b = rng.uniform(0.0, 0.1, size=(12, 2)) + [8.0, 8.0]
    pts = np.vstack([cluster_a, cluster_b])
    ps = PointSet(points=pts, seed=0, window=SampleWindow(100.0))
    g = build_graph(ps, k=3, model="mutual")
    comps = components(g)
    setups = find_component_setup(g, comps, model_constants(1.0, n=100.0))
    assert len(setups) >= 2
    assert {s.component for s in setups} == set(comps.component_ids)
    for setup in setups:
        members = comps.members(setup.component)
        assert setup.a in members
        assert setup.b not in members
        assert setup.x_l in members and setup.x_r in members
        assert ps.points[setup.x_l, 0] == ps.points[members, 0].min()
        assert ps.points[setup.x_r, 0] == ps.points[members, 0].max()
        assert setup.rho == pytest.approx(
            min(math.hypot(*(ps.points[i] - ps.points[j]))
                for i in members for j in range(len(ps)) if j not in members),
            rel=1e-12)
        assert setup.close
        assert setup.is_setup == (setup.close and setup.moat_empty
                                  and setup.dense)


def test_component_setup_empty_for_connected_graph():
    g = build_graph(sample_poisson(500.0, 1), k=12, model="mutual")
    comps = components(g)
    if comps.num_components == 1:
        assert find_component_setup(g, comps,
                                    model_constants(1.0, n=500.0)) == []


# ---------------------------------------------------------------------------
# connectivity experiments
# ---------------------------------------------------------------------------


def test_wilson_interval_basic_properties():
    lo, hi = wilson_interval(8, 10)
    assert 0.0 <= lo < 0.8 < hi <= 1.0
    assert wilson_interval(0, 0) == (0.0, 1.0)
    assert wilson_interval(0, 20)[0] == 0.0
    assert wilson_interval(20, 20)[1] == 1.0


def test_estimate_connectivity_is_reproducible():
    kwargs = dict(n=300.0, c_values=[0.2, 2.0], trials=5, master_seed=77)
    a = estimate_connectivity(**kwargs)
    b = estimate_connectivity(**kwargs)
    assert a == b
    assert a[0].k == math.ceil(0.2 * math.log(300.0))
    assert a[1].connected_frac >= a[0].connected_frac
    for est in a:
        assert est.trials == 5
        assert 0.0 <= est.wilson_lo <= est.connected_frac <= est.wilson_hi <= 1.0
        assert len(est.results) == 5
        for r in est.results:
            assert r.connected == (r.num_components <= 1)


def test_trial_results_vary_with_trial_index():
    est = estimate_connectivity(200.0, [1.0], trials=4, master_seed=0)[0]
    seeds = {r.seed for r in est.results}
    assert len(seeds) == 4


def test_figure_one_pointset_deterministic():
    a, _ = figure_one_pointset()
    b, _ = figure_one_pointset()
    assert np.array_equal(a.points, b.points)
