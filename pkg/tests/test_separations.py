"""Separations, disjoint-path search, row blockers, and tangle axioms."""
import pytest

from gridroots import (
    Graph,
    MalformedInput,
    Pseudomodel,
    Separation,
    Subgraph,
    Tangle,
    blocking_separation,
    check_tangle_axioms,
    find_row_blocking_separation,
    grid_graph,
    grid_tangle_member,
    identity_grid_model,
    menger,
    null_subgraph,
    row_vertices,
    separation_order,
    whole_subgraph,
)


def p3():
    return Graph([1, 2, 3], [(1, 1, 2), (2, 2, 3)])


def test_separation_constructor_checks():
    g = p3()
    a = Subgraph(g, {1, 2}, {1})
    b = Subgraph(g, {2, 3}, {2})
    s = Separation(a, b)
    assert s.order == 1
    assert s.separator == frozenset({2})
    assert separation_order(s) == 1
    assert s.flipped() == Separation(b, a)
    assert s.flipped().flipped() == s
    assert hash(s) == hash(Separation(a, b))

    with pytest.raises(ValueError):
        Separation(a, Subgraph(g, {2}, set()))  # does not cover vertex 3
    with pytest.raises(ValueError):
        Separation(whole_subgraph(g), whole_subgraph(g))  # shares edges
    other = grid_graph(2)
    with pytest.raises(ValueError):
        Separation(a, whole_subgraph(other))
    with pytest.raises(AttributeError):
        s.a = b


def test_menger_rejects_bad_queries():
    g = p3()
    for kwargs in (
        dict(sources=[], targets=[3], k=1),
        dict(sources=[1], targets=[], k=1),
        dict(sources=[1], targets=[3], k=0),
        dict(sources=[1], targets=[3], k=1, forbidden=[1]),
        dict(sources=[9], targets=[3], k=1),
    ):
        with pytest.raises(MalformedInput) as exc:
            menger(g, **kwargs)
        assert exc.value.problems


def test_menger_finds_disjoint_paths():
    g = grid_graph(3)
    res = menger(g, {1, 3}, {7, 9}, 2)
    assert res.found_paths
    assert res.paths == ((1, 4, 7), (3, 6, 9))
    seen = set()
    for path in res.paths:
        assert path[0] in {1, 3} and path[-1] in {7, 9}
        assert not (set(path) & seen)
        seen |= set(path)
        for u, v in zip(path, path[1:]):
            assert v in g.neighbors(u)


def test_menger_trims_to_single_vertex_when_source_is_target():
    g = grid_graph(3)
    res = menger(g, {1}, {1, 9}, 1)
    assert res.paths == ((1,),)


def test_menger_respects_vertex_capacities_of_endpoints():
    # a single source vertex can carry at most one path
    g = grid_graph(3)
    res = menger(g, {1}, {9}, 2)
    assert not res.found_paths
    assert res.cut == frozenset({9})


def test_menger_cut_and_separation():
    g = p3()
    res = menger(g, {1}, {3}, 2)
    assert not res.found_paths
    assert len(res.cut) == 1
    s = res.separation
    assert s.order == 1
    assert s.separator == res.cut
    assert 1 in s.a.vertices
    assert 3 in s.b.vertices

    g3 = grid_graph(3)
    res3 = menger(g3, {1, 3}, {7, 9}, 3)
    assert res3.cut == frozenset({7, 9})
    assert res3.separation.a.vertices == g3.vertices


def test_menger_forbidden_vertices_are_avoided():
    g = grid_graph(3)
    res = menger(g, {1, 3}, {7, 9}, 2, forbidden={5})
    assert res.found_paths
    assert all(5 not in path for path in res.paths)
    # forbidding the middle column chokes the corner-to-corner routes
    res2 = menger(g, {1, 3}, {7, 9}, 2, forbidden={4, 5, 6})
    assert not res2.found_paths
    assert res2.cut == frozenset()


def test_blocking_separation_sends_neutral_components_to_a():
    g = Graph([1, 2, 3, 4], [(1, 1, 2), (2, 2, 3), (3, 2, 4)])
    s = blocking_separation(g, frozenset({2}), frozenset({1}), frozenset({3}))
    assert s.a.vertices == frozenset({1, 2, 4})  # source and neutral sides
    assert s.a.edge_ids == frozenset({1, 3})
    assert s.b.vertices == frozenset({2, 3})
    assert s.b.edge_ids == frozenset({2})


def test_row_scan_reports_reducible_block():
    g3 = grid_graph(3)
    ident = identity_grid_model(3)
    host = Graph(list(range(1, 11)), list(g3.edges()) + [(13, 1, 10)])
    model = Pseudomodel(
        host,
        ident.pattern,
        {v: Subgraph(host, {v}) for v in range(1, 10)},
        dict(ident.edge_images),
    )
    rows = [row_vertices(3, i) for i in (1, 2, 3)]
    rb = find_row_blocking_separation(host, [10], model, rows, 1)
    assert rb.kind == "reducible"
    assert rb.row == (1, 2, 3)
    assert rb.separation.separator == frozenset({1})
    assert 10 in rb.separation.a.vertices
    assert rb.separation.b.vertices == frozenset(range(1, 10))


def test_row_scan_reports_strict_block():
    g3 = grid_graph(3)
    ident = identity_grid_model(3)
    host = Graph(list(range(1, 11)), list(g3.edges()))  # root 10 isolated
    model = Pseudomodel(
        host,
        ident.pattern,
        {v: Subgraph(host, {v}) for v in range(1, 10)},
        dict(ident.edge_images),
    )
    rows = [row_vertices(3, i) for i in (1, 2, 3)]
    rb = find_row_blocking_separation(host, [10], model, rows, 1)
    assert rb.kind == "strict"
    assert rb.separation.order == 0
    assert rb.separation.a.vertices == frozenset({10})


def test_row_scan_passes_well_connected_root():
    g3 = grid_graph(3)
    ident = identity_grid_model(3)
    rows = [row_vertices(3, i) for i in (1, 2, 3)]
    assert find_row_blocking_separation(g3, [1], ident, rows, 1) is None


def two_point_separations():
    """All four order-0 orientations of the 2-vertex edgeless graph."""
    g = Graph([1, 2], [])
    sg = lambda vs: Subgraph(g, vs)
    return g, [
        Separation(sg(set()), sg({1, 2})),
        Separation(sg({1, 2}), sg(set())),
        Separation(sg({1}), sg({2})),
        Separation(sg({2}), sg({1})),
    ]


def test_tangle_axioms_accept_valid_tangle():
    g, seps = two_point_separations()
    t = Tangle(host=g, order=1, members=(seps[0], seps[2]))
    assert check_tangle_axioms(t, seps).ok


def test_tangle_axioms_reject_violations():
    g, seps = two_point_separations()

    full = Tangle(host=g, order=1, members=(seps[1], seps[2]))
    assert "tangle-avoid-full" in check_tangle_axioms(full, seps).codes()

    missing = Tangle(host=g, order=1, members=(seps[0],))
    assert "tangle-completeness" in check_tangle_axioms(missing, seps).codes()

    covering = Tangle(host=g, order=1, members=(seps[0], seps[2], seps[3]))
    assert "tangle-cover" in check_tangle_axioms(covering, seps).codes()

    other = grid_graph(2)
    alien = Separation(whole_subgraph(other), null_subgraph(other))
    bad_host = Tangle(host=g, order=1, members=(alien,))
    assert "tangle-member-host" in check_tangle_axioms(bad_host, seps).codes()

    s1 = Separation(Subgraph(g, {1, 2}), Subgraph(g, {2}))  # separator {2}
    high = Tangle(host=g, order=1, members=(s1,))
    assert "tangle-member-order" in check_tangle_axioms(high, seps).codes()

    with pytest.raises(ValueError):
        Tangle(host=g, order=0, members=())


def test_grid_tangle_member_orients_by_rows():
    g3 = grid_graph(3)
    m = identity_grid_model(3)
    res = menger(g3, {1, 3}, {7, 9}, 3)
    s = res.separation  # order 2, A holds everything, B just the cut
    member = grid_tangle_member(m, s)
    assert member in (s, s.flipped())
    rows = [set(row_vertices(3, i)) for i in (1, 2, 3)]
    assert not any(r <= member.a.vertices for r in rows)
    assert any(r <= member.b.vertices for r in rows)


def test_grid_tangle_member_rejections():
    m = identity_grid_model(3)
    g3 = m.host
    s_small = Separation(
        Subgraph(g3, {1, 2}, {1}),
        Subgraph(g3, g3.vertices, g3.edge_ids - {1}),
    )
    assert s_small.order == 2
    member = grid_tangle_member(m, s_small)
    assert member.a.vertices == frozenset({1, 2})

    # order not below the grid side
    big = menger(g3, {1, 3, 7}, {2, 6, 8}, 4).separation
    if big.order >= 3:
        with pytest.raises(ValueError):
            grid_tangle_member(m, big)

    # pattern is not a square grid
    pat = Graph([1, 2], [(1, 1, 2)])
    notgrid = Pseudomodel(g3, pat, {1: Subgraph(g3, {1}), 2: Subgraph(g3, {2})}, {1: 1})
    with pytest.raises(ValueError):
        grid_tangle_member(notgrid, s_small)

    # overlapping branches make both orientations rowless: ambiguous
    g2 = grid_graph(2)
    degenerate = Pseudomodel(
        g2, g2, {v: Subgraph(g2, {1}) for v in g2.vertices}, {e: e for e in g2.edge_ids}
    )
    amb = Separation(Subgraph(g2, {1}), whole_subgraph(g2))
    with pytest.raises(ValueError):
        grid_tangle_member(degenerate, amb)
