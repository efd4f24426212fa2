"""Immutable simple connected graphs, named families, invariants, graph6.

Vertices are 0..n-1.  Edges are stored as (u, v) pairs with u < v, sorted
lexicographically; the position of a pair in that list is its edge index,
so identical inputs always produce identical indexing.  Constructors reject
anything that is not a simple connected graph.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from typing import Callable, Iterable, Iterator, Sequence


class GraphError(ValueError):
    """Invalid graph input. ``code`` identifies the rejection reason."""

    code = "invalid"


class LoopEdgeError(GraphError):
    code = "loop"


class DuplicateEdgeError(GraphError):
    code = "duplicate-edge"


class VertexRangeError(GraphError):
    code = "vertex-range"


class DisconnectedError(GraphError):
    code = "disconnected"


class Graph6Error(ValueError):
    """Malformed graph6 input. ``code`` identifies the defect."""

    def __init__(self, message: str, code: str):
        super().__init__(message)
        self.code = code


@dataclass(frozen=True)
class Graph:
    """Simple connected graph with canonical edge indexing.

    Do not call directly; use from_edge_list or a family generator.
    All derived maps are precomputed; instances are immutable and safe to
    share across threads.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[int, ...], ...] = field(repr=False)
    incident_edges: tuple[tuple[int, ...], ...] = field(repr=False)
    edge_neighbors: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def edge_index(self, u: int, v: int) -> int:
        """Index of edge {u, v}; raises KeyError if absent."""
        return _edge_lookup(self)[(u, v) if u < v else (v, u)]

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in _edge_lookup(self)

    def __str__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@lru_cache(maxsize=256)
def _edge_lookup_cached(edges: tuple[tuple[int, int], ...]) -> dict[tuple[int, int], int]:
    return {e: i for i, e in enumerate(edges)}


def _edge_lookup(g: Graph) -> dict[tuple[int, int], int]:
    return _edge_lookup_cached(g.edges)


def from_edge_list(n: int, pairs: Iterable[Sequence[int]]) -> Graph:
    """Build a Graph from a vertex count and unordered vertex pairs.

    Rejects loops, duplicate edges, out-of-range endpoints and disconnected
    graphs, each with a distinct error type.
    """
    if n < 1:
        raise VertexRangeError("graph must have at least one vertex")
    seen: set[tuple[int, int]] = set()
    for pair in pairs:
        u, v = pair
        if not (0 <= u < n and 0 <= v < n):
            raise VertexRangeError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise LoopEdgeError(f"loop at vertex {u}")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise DuplicateEdgeError(f"duplicate edge {key}")
        seen.add(key)
    edges = tuple(sorted(seen))

    adjacency = [[] for _ in range(n)]
    incident = [[] for _ in range(n)]
    for i, (u, v) in enumerate(edges):
        adjacency[u].append(v)
        adjacency[v].append(u)
        incident[u].append(i)
        incident[v].append(i)

    if n > 1:
        reached = {0}
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for y in adjacency[x]:
                if y not in reached:
                    reached.add(y)
                    queue.append(y)
        if len(reached) != n:
            raise DisconnectedError(
                f"graph is disconnected ({len(reached)} of {n} vertices reachable from 0)"
            )

    edge_nbrs = []
    for i, (u, v) in enumerate(edges):
        nbrs = sorted((set(incident[u]) | set(incident[v])) - {i})
        edge_nbrs.append(tuple(nbrs))

    return Graph(
        n=n,
        edges=edges,
        adjacency=tuple(tuple(sorted(a)) for a in adjacency),
        incident_edges=tuple(tuple(a) for a in incident),
        edge_neighbors=tuple(edge_nbrs),
    )


# ---------------------------------------------------------------------------
# Named families


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs n >= 3")
    return from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    if n < 1:
        raise GraphError("path needs n >= 1")
    return from_edge_list(n, [(i, i + 1) for i in range(n - 1)])


def complete(n: int) -> Graph:
    if n < 1:
        raise GraphError("complete graph needs n >= 1")
    return from_edge_list(n, combinations(range(n), 2))


def star(leaves: int) -> Graph:
    """Center vertex 0 joined to ``leaves`` leaf vertices."""
    if leaves < 1:
        raise GraphError("star needs at least one leaf")
    return from_edge_list(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise GraphError("complete bipartite graph needs both sides nonempty")
    return from_edge_list(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def hypercube_q3() -> Graph:
    return from_edge_list(
        8,
        [(x, x ^ bit) for x in range(8) for bit in (1, 2, 4) if x < (x ^ bit)],
    )


def k_track(k: int) -> Graph:
    """Two k-cycles a_0..a_{k-1} and b_0..b_{k-1} joined by the matching a_i-b_i."""
    if k < 3:
        raise GraphError("k-track needs k >= 3")
    edges = []
    for i in range(k):
        edges.append((i, (i + 1) % k))            # outer cycle
        edges.append((k + i, k + (i + 1) % k))    # inner cycle
        edges.append((i, k + i))                  # matching rung
    return from_edge_list(2 * k, edges)


def ring_of_squares(k: int) -> Graph:
    """k four-cycles in a ring; antipodal pairs of neighboring squares bridged.

    Square i uses vertices 4i..4i+3 in cyclic order.  Bridges join
    v_{i,1}-v_{i+1,0} and v_{i,3}-v_{i+1,2}, the unique cubic convention with
    two bridges per neighboring pair.
    """
    if k < 3:
        raise GraphError("ring of squares needs k >= 3")
    edges = []
    for i in range(k):
        base = 4 * i
        edges += [(base, base + 1), (base + 1, base + 2), (base + 2, base + 3), (base, base + 3)]
        nxt = 4 * ((i + 1) % k)
        edges += [(base + 1, nxt), (base + 3, nxt + 2)]
    return from_edge_list(4 * k, edges)


def petersen() -> Graph:
    edges = []
    for i in range(5):
        edges.append((i, (i + 1) % 5))            # outer pentagon
        edges.append((5 + i, 5 + (i + 2) % 5))    # inner pentagram
        edges.append((i, 5 + i))                  # spokes
    return from_edge_list(10, edges)


def mcgee() -> Graph:
    """The unique cubic girth-7 cage: 24 vertices, 36 edges.

    Built as a 24-cycle with four diameters at 0,3,6,9 and eight +/-7 chords;
    regularity and girth are asserted by the test suite.
    """
    edges = [(i, (i + 1) % 24) for i in range(24)]
    for i in range(0, 12, 3):
        edges.append((i, i + 12))
    for i in range(0, 24, 3):
        edges.append((i + 1, (i + 8) % 24))
    return from_edge_list(24, edges)


def tree_from_prufer(seq: Sequence[int]) -> Graph:
    """Labeled tree on len(seq)+2 vertices decoded from a Pruefer sequence."""
    n = len(seq) + 2
    if n < 2:
        raise GraphError("pruefer sequence decodes to a tree on >= 2 vertices")
    if any(not 0 <= s < n for s in seq):
        raise VertexRangeError("pruefer sequence values must lie in 0..n-1")
    degree = [1] * n
    for s in seq:
        degree[s] += 1
    edges = []
    # Min-leaf scan; n is tiny here so the quadratic scan is fine.
    seq = list(seq)
    used = [False] * n
    for s in seq:
        leaf = min(v for v in range(n) if degree[v] == 1 and not used[v])
        edges.append((leaf, s))
        used[leaf] = True
        degree[leaf] -= 1
        degree[s] -= 1
    last = [v for v in range(n) if degree[v] == 1 and not used[v]]
    edges.append((last[0], last[1]))
    return from_edge_list(n, edges)


def prufer_sequences(n: int) -> Iterator[tuple[int, ...]]:
    """All Pruefer sequences for labeled trees on n vertices (n >= 2)."""
    if n < 2:
        raise GraphError("trees need n >= 2")
    if n == 2:
        yield ()
        return
    yield from product(range(n), repeat=n - 2)


FamilyGenerator = Callable[..., Graph]

FAMILIES: dict[str, tuple[FamilyGenerator, int]] = {
    # name: (generator, number of integer parameters; -1 = variadic)
    "cycle": (cycle, 1),
    "path": (path, 1),
    "tree-path": (path, 1),
    "complete": (complete, 1),
    "star": (star, 1),
    "bipartite": (complete_bipartite, 2),
    "q3": (hypercube_q3, 0),
    "ktrack": (k_track, 1),
    "ring": (ring_of_squares, 1),
    "petersen": (petersen, 0),
    "mcgee": (mcgee, 0),
    "prufer": (tree_from_prufer, -1),
}


def generate(family: str, *params: int) -> Graph:
    """Instantiate a named family; parameter ranges are enforced by the generators."""
    try:
        gen, arity = FAMILIES[family]
    except KeyError:
        raise GraphError(f"unknown family {family!r}; known: {', '.join(sorted(FAMILIES))}")
    if arity == -1:
        return gen(params)
    if len(params) != arity:
        raise GraphError(f"family {family!r} takes {arity} parameter(s), got {len(params)}")
    return gen(*params)


def parse_family(spec: str) -> Graph:
    """Parse ``name[:p1[,p2,...]]`` (e.g. ``cycle:9``, ``ring:4``, ``petersen``)."""
    name, _, rest = spec.partition(":")
    name = name.strip().lower()
    if not rest:
        return generate(name)
    try:
        params = tuple(int(p) for p in rest.split(","))
    except ValueError:
        raise GraphError(f"non-integer parameter in family spec {spec!r}")
    return generate(name, *params)


def family_catalog() -> list[dict]:
    """Machine-readable listing of the family grammar, for the CLI and service."""
    descriptions = {
        "cycle": "cycle on n vertices (n >= 3)",
        "path": "path on n vertices",
        "tree-path": "alias of path",
        "complete": "complete graph on n vertices",
        "star": "star with n leaves",
        "bipartite": "complete bipartite graph K_{a,b}",
        "q3": "3-dimensional hypercube",
        "ktrack": "two k-cycles joined by a perfect matching (k >= 3)",
        "ring": "k four-cycles in a ring with antipodal bridges (k >= 3)",
        "petersen": "Petersen graph",
        "mcgee": "cubic girth-7 cage on 24 vertices",
        "prufer": "labeled tree decoded from a Pruefer sequence",
    }
    out = []
    for name, (_, arity) in sorted(FAMILIES.items()):
        out.append({"name": name, "params": arity, "description": descriptions[name]})
    return out


# ---------------------------------------------------------------------------
# graph6 interchange format


def to_graph6(g: Graph) -> str:
    """Serialize to canonical graph6 (single-byte header; n <= 62)."""
    if g.n > 62:
        raise Graph6Error(f"graph6 writer supports n <= 62, got {g.n}", code="too-large")
    bits = []
    for v in range(1, g.n):
        for u in range(v):
            bits.append(1 if g.has_edge(u, v) else 0)
    while len(bits) % 6:
        bits.append(0)
    out = [chr(g.n + 63)]
    for i in range(0, len(bits), 6):
        group = 0
        for b in bits[i : i + 6]:
            group = (group << 1) | b
        out.append(chr(group + 63))
    return "".join(out)


def parse_graph6(text: str) -> Graph:
    """Parse one graph6 line into a Graph (connectivity enforced)."""
    line = text.rstrip("\n")
    if line.startswith(">>graph6<<"):
        line = line[len(">>graph6<<"):]
    if not line:
        raise Graph6Error("empty graph6 string", code="bad-header")
    for ch in line:
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(
                f"byte value {ord(ch)} outside graph6 range 63..126", code="bad-byte"
            )
    raw = line.encode("ascii")
    if raw[0] == 126:
        raise Graph6Error("multi-byte vertex counts (n > 62) not supported", code="bad-header")
    n = raw[0] - 63
    need_bits = n * (n - 1) // 2
    need_bytes = (need_bits + 5) // 6
    body = raw[1:]
    if len(body) < need_bytes:
        raise Graph6Error(
            f"truncated body: need {need_bytes} bytes for n={n}, got {len(body)}",
            code="bad-header",
        )
    if len(body) > need_bytes:
        raise Graph6Error(f"{len(body) - need_bytes} trailing byte(s)", code="trailing-garbage")
    bits = []
    for byte in body:
        value = byte - 63
        for shift in (5, 4, 3, 2, 1, 0):
            bits.append((value >> shift) & 1)
    pairs = []
    idx = 0
    for v in range(1, n):
        for u in range(v):
            if bits[idx]:
                pairs.append((u, v))
            idx += 1
    if any(bits[need_bits:]):
        raise Graph6Error("nonzero padding bits", code="trailing-garbage")
    return from_edge_list(n, pairs)


# ---------------------------------------------------------------------------
# Invariants


def min_degree(g: Graph) -> int:
    return min(g.degree(v) for v in range(g.n))


def max_degree(g: Graph) -> int:
    return max(g.degree(v) for v in range(g.n))


def girth(g: Graph) -> int | None:
    """Length of the shortest cycle, or None for trees.

    Per-vertex BFS: the shortest cycle through the BFS root is bounded by
    dist[u] + dist[w] + 1 over non-tree edges (u, w); the minimum over all
    roots is exact.
    """
    best: int | None = None
    for root in range(g.n):
        dist = [-1] * g.n
        parent = [-1] * g.n
        dist[root] = 0
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y in g.adjacency[x]:
                if dist[y] == -1:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    queue.append(y)
        for u, w in g.edges:
            if parent[u] == w or parent[w] == u:
                continue
            length = dist[u] + dist[w] + 1
            if best is None or length < best:
                best = length
    return best


def domination_number(g: Graph, cap: int = 64) -> tuple[int, tuple[int, ...]]:
    """Minimum dominating set size with a witness set.

    Branch and bound on undominated vertices, seeded with a greedy upper
    bound.  Exact; guarded by a vertex-count cap because the problem is
    NP-hard in general.
    """
    if g.n > cap:
        raise GraphError(f"domination solver capped at {cap} vertices, got {g.n}")

    closed = [frozenset(g.adjacency[v]) | {v} for v in range(g.n)]

    # Greedy cover for the initial upper bound.
    undominated = set(range(g.n))
    greedy: list[int] = []
    while undominated:
        v = max(range(g.n), key=lambda x: (len(closed[x] & undominated), -x))
        greedy.append(v)
        undominated -= closed[v]
    best_size = len(greedy)
    best_set = tuple(sorted(greedy))

    order = sorted(range(g.n), key=lambda v: -len(closed[v]))

    def descend(chosen: list[int], dominated: frozenset[int]) -> None:
        nonlocal best_size, best_set
        if len(dominated) == g.n:
            if len(chosen) < best_size:
                best_size = len(chosen)
                best_set = tuple(sorted(chosen))
            return
        if len(chosen) + 1 >= best_size:
            return
        # Branch on the first undominated vertex: some member of its closed
        # neighborhood must join the set.
        pivot = next(v for v in order if v not in dominated)
        for w in sorted(closed[pivot], key=lambda x: -len(closed[x] - dominated)):
            descend(chosen + [w], dominated | closed[w])

    descend([], frozenset())
    assert _dominates(g, best_set)
    return best_size, best_set


def _dominates(g: Graph, vertices: Iterable[int]) -> bool:
    covered = set()
    for v in vertices:
        covered.add(v)
        covered.update(g.adjacency[v])
    return len(covered) == g.n


def is_isomorphic(g1: Graph, g2: Graph, cap: int = 12) -> bool:
    """Exact isomorphism test via degree-refined backtracking (n <= cap)."""
    if g1.n > cap or g2.n > cap:
        raise GraphError(f"isomorphism test capped at {cap} vertices")
    if g1.n != g2.n or g1.m != g2.m:
        return False
    if sorted(g1.degree(v) for v in range(g1.n)) != sorted(g2.degree(v) for v in range(g2.n)):
        return False

    # Map vertices of g1 in order of scarcity of their degree class.
    degree_count: dict[int, int] = {}
    for v in range(g1.n):
        degree_count[g1.degree(v)] = degree_count.get(g1.degree(v), 0) + 1
    order = sorted(range(g1.n), key=lambda v: (degree_count[g1.degree(v)], -g1.degree(v)))

    mapping = [-1] * g1.n
    used = [False] * g2.n

    def extend(pos: int) -> bool:
        if pos == g1.n:
            return True
        v = order[pos]
        for w in range(g2.n):
            if used[w] or g2.degree(w) != g1.degree(v):
                continue
            ok = True
            for x in order[:pos]:
                if g1.has_edge(v, x) != g2.has_edge(w, mapping[x]):
                    ok = False
                    break
            if ok:
                mapping[v] = w
                used[w] = True
                if extend(pos + 1):
                    return True
                used[w] = False
                mapping[v] = -1
        return False

    return extend(0)


def tree_certificate(g: Graph) -> str:
    """Canonical string for a tree (center-rooted AHU encoding).

    Isomorphic trees yield equal certificates, so Pruefer enumerations can be
    deduplicated before solving.
    """
    if g.m != g.n - 1:
        raise GraphError("tree certificate requires a tree")
    if g.n == 1:
        return "()"

    # Peel leaves to find the center(s).
    degree = [g.degree(v) for v in range(g.n)]
    layer = [v for v in range(g.n) if degree[v] == 1]
    removed = [False] * g.n
    remaining = g.n
    while remaining > 2:
        nxt = []
        for v in layer:
            removed[v] = True
            remaining -= 1
            for w in g.adjacency[v]:
                if not removed[w]:
                    degree[w] -= 1
                    if degree[w] == 1:
                        nxt.append(w)
        layer = nxt
    centers = [v for v in range(g.n) if not removed[v]]

    def encode(v: int, parent: int) -> str:
        children = sorted(encode(w, v) for w in g.adjacency[v] if w != parent)
        return "(" + "".join(children) + ")"

    if len(centers) == 1:
        return encode(centers[0], -1)
    a, b = centers
    return "".join(sorted((encode(a, b), encode(b, a))))


def on_short_cycle(g: Graph, v: int) -> bool:
    """Whether v lies on a 3-cycle or a 4-cycle."""
    nbrs = g.adjacency[v]
    for i, u in enumerate(nbrs):
        for w in nbrs[i + 1 :]:
            if g.has_edge(u, w):
                return True  # triangle v-u-w
            common = set(g.adjacency[u]) & set(g.adjacency[w])
            if common - {v}:
                return True  # square v-u-z-w
    return False
