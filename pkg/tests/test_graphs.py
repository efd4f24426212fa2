import random
from itertools import combinations

import networkx as nx
import pytest

from containment import graphs
from containment.graphs import (
    DisconnectedError,
    DuplicateEdgeError,
    Graph6Error,
    LoopEdgeError,
    VertexRangeError,
)

from conftest import random_connected_graph


# ---------------------------------------------------------------------------
# Construction and validation


def test_smallest_connected_graph():
    g = graphs.from_edge_list(2, [(0, 1)])
    assert g.m == 1 and g.edges == ((0, 1),)


def test_cycle4_degrees():
    g = graphs.from_edge_list(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert all(g.degree(v) == 2 for v in range(4))


@pytest.mark.parametrize(
    "n,pairs,err",
    [
        (4, [(0, 1), (2, 3)], DisconnectedError),
        (3, [(0, 0)], LoopEdgeError),
        (3, [(0, 1), (1, 0), (1, 2)], DuplicateEdgeError),
        (3, [(0, 5)], VertexRangeError),
        (0, [], VertexRangeError),
    ],
)
def test_rejections(n, pairs, err):
    with pytest.raises(err):
        graphs.from_edge_list(n, pairs)


def test_edge_indexing_is_input_order_independent():
    a = graphs.from_edge_list(4, [(3, 0), (2, 1), (1, 0), (3, 2)])
    b = graphs.from_edge_list(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    assert a.edges == b.edges


def test_incidence_maps_agree_with_edge_list():
    rng = random.Random(3)
    for _ in range(25):
        g = random_connected_graph(rng)
        incident = [[] for _ in range(g.n)]
        adjacency = [[] for _ in range(g.n)]
        for i, (u, v) in enumerate(g.edges):
            incident[u].append(i)
            incident[v].append(i)
            adjacency[u].append(v)
            adjacency[v].append(u)
        assert tuple(tuple(x) for x in incident) == g.incident_edges
        assert tuple(tuple(sorted(x)) for x in adjacency) == g.adjacency
        for i, (u, v) in enumerate(g.edges):
            expect = sorted((set(incident[u]) | set(incident[v])) - {i})
            assert list(g.edge_neighbors[i]) == expect


# ---------------------------------------------------------------------------
# Families


def test_ktrack_shape():
    for k in range(3, 8):
        g = graphs.k_track(k)
        assert g.n == 2 * k and g.m == 3 * k
        assert graphs.min_degree(g) == graphs.max_degree(g) == 3


def test_ktrack4_is_q3():
    assert graphs.is_isomorphic(graphs.k_track(4), graphs.hypercube_q3())


def test_ktrack3_not_cycle6():
    assert not graphs.is_isomorphic(graphs.cycle(6), graphs.k_track(3))


def test_ring_of_squares_shape():
    for k in range(3, 7):
        g = graphs.ring_of_squares(k)
        assert g.n == 4 * k and g.m == 6 * k
        assert graphs.min_degree(g) == graphs.max_degree(g) == 3


def test_ring4_sixteen_vertices():
    g = graphs.ring_of_squares(4)
    assert (g.n, g.m) == (16, 24)


def test_cycle5():
    g = graphs.cycle(5)
    assert (g.n, g.m, graphs.girth(g)) == (5, 5, 5)


def test_family_parameter_ranges():
    for bad in ["cycle:2", "ktrack:2", "ring:2", "star:0"]:
        with pytest.raises(graphs.GraphError):
            graphs.parse_family(bad)
    with pytest.raises(graphs.GraphError):
        graphs.parse_family("nosuch:3")


def test_parse_family_grammar():
    assert graphs.parse_family("cycle:9").n == 9
    assert graphs.parse_family("petersen").n == 10
    assert graphs.parse_family("bipartite:2,3").m == 6
    assert graphs.parse_family("tree-path:4").m == 3
    assert graphs.parse_family("prufer:0,0").n == 4  # star with center 0


def test_mcgee_is_the_girth7_cage():
    g = graphs.mcgee()
    assert (g.n, g.m) == (24, 36)
    assert graphs.min_degree(g) == graphs.max_degree(g) == 3
    assert graphs.girth(g) == 7
    # cross-check against the standard LCF construction
    H = nx.LCF_graph(24, [12, 7, -7], 8)
    assert nx.is_isomorphic(nx.Graph(list(g.edges)), H)


def test_petersen_invariants():
    g = graphs.petersen()
    assert (g.n, g.m, graphs.girth(g)) == (10, 15, 5)
    assert graphs.min_degree(g) == graphs.max_degree(g) == 3


# ---------------------------------------------------------------------------
# Invariants


def test_degrees():
    assert (graphs.min_degree(graphs.petersen()), graphs.max_degree(graphs.petersen())) == (3, 3)
    assert (graphs.min_degree(graphs.star(5)), graphs.max_degree(graphs.star(5))) == (1, 5)
    assert (graphs.min_degree(graphs.complete(6)), graphs.max_degree(graphs.complete(6))) == (5, 5)


def _girth_by_edge_removal(g):
    """Oracle: shortest cycle through each edge via BFS in G - e."""
    import collections

    best = None
    for i, (u, v) in enumerate(g.edges):
        dist = {u: 0}
        queue = collections.deque([u])
        while queue:
            x = queue.popleft()
            for e in g.incident_edges[x]:
                if e == i:
                    continue
                a, b = g.edges[e]
                y = b if a == x else a
                if y not in dist:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        if v in dist:
            length = dist[v] + 1
            if best is None or length < best:
                best = length
    return best


def test_girth_matches_oracle_on_random_graphs():
    rng = random.Random(11)
    for _ in range(40):
        g = random_connected_graph(rng, max_n=10)
        assert graphs.girth(g) == _girth_by_edge_removal(g)


@pytest.mark.parametrize("n", range(3, 13))
def test_girth_of_cycles(n):
    assert graphs.girth(graphs.cycle(n)) == n


def test_girth_examples():
    assert graphs.girth(graphs.cycle(7)) == 7
    assert graphs.girth(graphs.petersen()) == 5
    assert graphs.girth(graphs.k_track(6)) == 4
    assert graphs.girth(graphs.path(6)) is None


def _domination_brute(g, max_size=None):
    limit = max_size or g.n
    for size in range(1, limit + 1):
        for cand in combinations(range(g.n), size):
            covered = set(cand)
            for v in cand:
                covered.update(g.adjacency[v])
            if len(covered) == g.n:
                return size, cand
    raise AssertionError("no dominating set found")


def test_domination_examples():
    assert graphs.domination_number(graphs.complete(7))[0] == 1
    assert graphs.domination_number(graphs.cycle(9))[0] == 3
    assert graphs.domination_number(graphs.path(2))[0] == 1


@pytest.mark.parametrize("n", range(3, 13))
def test_domination_of_cycles_matches_formula(n):
    size, witness = graphs.domination_number(graphs.cycle(n))
    assert size == -(-n // 3)  # ceil(n/3)
    covered = set(witness)
    for v in witness:
        covered.update(graphs.cycle(n).adjacency[v])
    assert len(covered) == n


def test_domination_matches_brute_force_on_random_graphs():
    rng = random.Random(23)
    for _ in range(20):
        g = random_connected_graph(rng, max_n=9)
        size, witness = graphs.domination_number(g)
        assert size == _domination_brute(g)[0]
        covered = set(witness)
        for v in witness:
            covered.update(g.adjacency[v])
        assert len(covered) == g.n


def test_domination_cap():
    with pytest.raises(graphs.GraphError):
        graphs.domination_number(graphs.cycle(10), cap=5)


def test_isomorphism_basics():
    g = graphs.petersen()
    assert graphs.is_isomorphic(g, g)
    relabeled = graphs.from_edge_list(10, [(9 - u, 9 - v) for u, v in g.edges])
    assert graphs.is_isomorphic(g, relabeled)
    assert not graphs.is_isomorphic(graphs.cycle(6), graphs.path(6))
    with pytest.raises(graphs.GraphError):
        graphs.is_isomorphic(graphs.cycle(13), graphs.cycle(13))


# ---------------------------------------------------------------------------
# graph6


def test_graph6_roundtrip_random_graphs():
    rng = random.Random(5)
    for _ in range(1000):
        g = random_connected_graph(rng)
        line = graphs.to_graph6(g)
        back = graphs.parse_graph6(line)
        assert back.edges == g.edges and back.n == g.n
        assert graphs.to_graph6(back) == line


def test_graph6_matches_networkx():
    rng = random.Random(17)
    for _ in range(200):
        g = random_connected_graph(rng)
        H = nx.Graph()
        H.add_nodes_from(range(g.n))  # keep vertex numbering, not insertion order
        H.add_edges_from(g.edges)
        ours = graphs.to_graph6(g)
        theirs = nx.to_graph6_bytes(H, header=False).decode().strip()
        assert ours == theirs
        parsed = graphs.parse_graph6(theirs)
        assert parsed.edges == g.edges


def test_graph6_petersen_roundtrip():
    g = graphs.petersen()
    assert graphs.is_isomorphic(graphs.parse_graph6(graphs.to_graph6(g)), g)


def test_graph6_bad_byte():
    with pytest.raises(Graph6Error) as exc:
        graphs.parse_graph6("D" + chr(200))
    assert exc.value.code == "bad-byte"


def test_graph6_trailing_garbage():
    line = graphs.to_graph6(graphs.cycle(5))
    with pytest.raises(Graph6Error) as exc:
        graphs.parse_graph6(line + "??")
    assert exc.value.code == "trailing-garbage"


def test_graph6_truncated_and_empty():
    line = graphs.to_graph6(graphs.complete(7))
    with pytest.raises(Graph6Error):
        graphs.parse_graph6(line[:-1])
    with pytest.raises(Graph6Error):
        graphs.parse_graph6("")


def test_graph6_disconnected_rejected():
    # two disjoint edges on 4 vertices
    line = nx.to_graph6_bytes(nx.Graph([(0, 1), (2, 3)]), header=False).decode().strip()
    with pytest.raises(DisconnectedError):
        graphs.parse_graph6(line)


def test_graph6_header_strip():
    g = graphs.cycle(6)
    assert graphs.parse_graph6(">>graph6<<" + graphs.to_graph6(g)).edges == g.edges


# ---------------------------------------------------------------------------
# Trees


def test_prufer_bijection_count():
    # n^(n-2) labeled trees on n vertices
    for n in (3, 4, 5):
        seen = {tuple(graphs.tree_from_prufer(s).edges) for s in graphs.prufer_sequences(n)}
        assert len(seen) == n ** (n - 2)


def test_tree_certificate_separates_unlabeled_trees():
    # Distinct unlabeled trees on n vertices: 1, 1, 1, 2, 3, 6, 11 for n=1..7.
    expected = {2: 1, 3: 1, 4: 2, 5: 3, 6: 6, 7: 11}
    for n, count in expected.items():
        certs = {
            graphs.tree_certificate(graphs.tree_from_prufer(s))
            for s in graphs.prufer_sequences(n)
        }
        assert len(certs) == count


def test_tree_certificate_is_isomorphism_invariant():
    rng = random.Random(31)
    for _ in range(50):
        n = rng.randint(2, 8)
        seq = tuple(rng.randrange(n) for _ in range(n - 2))
        t = graphs.tree_from_prufer(seq)
        perm = list(range(n))
        rng.shuffle(perm)
        relabeled = graphs.from_edge_list(n, [(perm[u], perm[v]) for u, v in t.edges])
        assert graphs.tree_certificate(t) == graphs.tree_certificate(relabeled)


# ---------------------------------------------------------------------------
# Short-cycle membership


def test_on_short_cycle():
    c3 = graphs.cycle(3)
    assert all(graphs.on_short_cycle(c3, v) for v in range(3))
    c5 = graphs.cycle(5)
    assert not any(graphs.on_short_cycle(c5, v) for v in range(5))
    kt = graphs.k_track(5)
    assert all(graphs.on_short_cycle(kt, v) for v in range(kt.n))
    p = graphs.path(4)
    assert not any(graphs.on_short_cycle(p, v) for v in range(4))


def test_on_short_cycle_matches_brute_force():
    def brute(g, v):
        # enumerate all cycles of length 3 and 4 through v
        for a in g.adjacency[v]:
            for b in g.adjacency[a]:
                if b != v and g.has_edge(b, v):
                    return True
                for c in g.adjacency[b]:
                    if len({v, a, b, c}) == 4 and g.has_edge(c, v):
                        return True
        return False

    rng = random.Random(41)
    for _ in range(30):
        g = random_connected_graph(rng, max_n=9)
        for v in range(g.n):
            assert graphs.on_short_cycle(g, v) == brute(g, v)
