"""Labeled simple graphs, tree classification by degree sequence, enumeration."""

from __future__ import annotations

import heapq
import itertools
import json
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator

import networkx as nx

Edge = tuple[int, int]


class GraphError(ValueError):
    pass


class GraphParseError(GraphError):
    pass


class NotATree(GraphError):
    pass


class EdgePresent(GraphError):
    pass


class NotFreeVertex(GraphError):
    pass


class NotClassified(GraphError):
    pass


def _norm(e: Iterable[int]) -> Edge:
    i, j = e
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class Graph:
    """Simple graph on vertices 1..n."""

    n: int
    edges: frozenset[Edge] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 0:
            raise GraphError("negative vertex count")
        norm = set()
        for e in self.edges:
            i, j = _norm(e)
            if i == j:
                raise GraphError(f"loop at vertex {i}")
            if not (1 <= i and j <= self.n):
                raise GraphError(f"edge {{{i},{j}}} has an endpoint outside 1..{self.n}")
            norm.add((i, j))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, edges: Iterable[Iterable[int]], n: int | None = None) -> "Graph":
        edges = [_norm(e) for e in edges]
        if n is None:
            n = max((j for _, j in edges), default=0)
        return cls(n, frozenset(edges))

    # -- basic structure ----------------------------------------------------
    @property
    def m(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def vertices(self) -> range:
        return range(1, self.n + 1)

    def adjacency(self) -> dict[int, set[int]]:
        adj = {v: set() for v in self.vertices()}
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        return adj

    def neighbors(self, v: int) -> set[int]:
        return {j if i == v else i for i, j in self.edges if v in (i, j)}

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def degrees(self) -> dict[int, int]:
        d = {v: 0 for v in self.vertices()}
        for i, j in self.edges:
            d[i] += 1
            d[j] += 1
        return d

    def has_edge(self, i: int, j: int) -> bool:
        return _norm((i, j)) in self.edges

    def components(self) -> list[set[int]]:
        adj = self.adjacency()
        seen: set[int] = set()
        comps = []
        for v in self.vertices():
            if v in seen:
                continue
            comp = {v}
            queue = deque([v])
            seen.add(v)
            while queue:
                u = queue.popleft()
                for w in adj[u]:
                    if w not in seen:
                        seen.add(w)
                        comp.add(w)
                        queue.append(w)
            comps.append(comp)
        return comps

    def component_count(self) -> int:
        return len(self.components())

    def is_tree(self) -> bool:
        return self.n >= 1 and self.m == self.n - 1 and self.component_count() == 1

    def is_forest(self) -> bool:
        return self.m == self.n - self.component_count()

    def add_edges(self, edges: Iterable[Iterable[int]]) -> "Graph":
        return Graph(self.n, self.edges | {_norm(e) for e in edges})

    def remove_edge(self, e: Iterable[int]) -> "Graph":
        e = _norm(e)
        if e not in self.edges:
            raise GraphError(f"edge {e} not present")
        return Graph(self.n, self.edges - {e})

    def relabel(self, mapping: dict[int, int]) -> "Graph":
        return Graph(self.n, frozenset(_norm((mapping[i], mapping[j])) for i, j in self.edges))

    def subgraph_edges(self, edges: Iterable[Edge]) -> "Graph":
        """Same vertex set, only the given edges."""
        return Graph(self.n, frozenset(_norm(e) for e in edges))

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.vertices())
        g.add_edges_from(self.edges)
        return g

    # -- JSON -----------------------------------------------------------------
    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.sorted_edges()]}

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, data: dict) -> "Graph":
        try:
            n = data["n"]
            raw = data["edges"]
        except (KeyError, TypeError):
            raise GraphParseError('graph JSON needs keys "n" and "edges"') from None
        if not isinstance(n, int) or isinstance(n, bool) or n < 0:
            raise GraphParseError(f"bad vertex count {n!r}")
        if not isinstance(raw, list):
            raise GraphParseError('"edges" must be a list of [i, j] pairs')
        seen: set[Edge] = set()
        for pair in raw:
            if (
                not isinstance(pair, list)
                or len(pair) != 2
                or not all(isinstance(v, int) and not isinstance(v, bool) for v in pair)
            ):
                raise GraphParseError(f"bad edge entry {pair!r}")
            i, j = pair
            if i == j:
                raise GraphParseError(f"loop edge [{i}, {j}]")
            if not (1 <= min(i, j) and max(i, j) <= n):
                raise GraphParseError(f"edge [{i}, {j}] has an endpoint outside 1..{n}")
            e = _norm(pair)
            if e in seen:
                raise GraphParseError(f"duplicate edge [{i}, {j}]")
            seen.add(e)
        return cls(n, frozenset(seen))

    @classmethod
    def loads(cls, text: str) -> "Graph":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GraphParseError(f"invalid JSON: {exc}") from None
        return cls.from_json(data)


# ---------------------------------------------------------------------------
# Named families
# ---------------------------------------------------------------------------


def path(n: int) -> Graph:
    return Graph.from_edges(((i, i + 1) for i in range(1, n)), n)


def star(m: int) -> Graph:
    """K_{1,m} with center 1."""
    return Graph.from_edges(((1, i) for i in range(2, m + 2)), m + 1)


def complete(n: int) -> Graph:
    return Graph.from_edges(itertools.combinations(range(1, n + 1), 2), n)


def build_cnm(n: int, m: int) -> Graph:
    """K_n on v_0..v_{n-1} (labels 1..n, v_0 = 1) plus pendants {v_0, k_i} (labels n+i)."""
    if n < 3 or m < 1:
        raise GraphError(f"C_(n,m) needs n >= 3 and m >= 1, got n={n}, m={m}")
    edges = list(itertools.combinations(range(1, n + 1), 2)) + [(1, n + i) for i in range(1, m + 1)]
    return Graph.from_edges(edges, n + m)


def spider(legs: Iterable[int]) -> Graph:
    """Subdivided star: center 1 and one path of the given length per leg."""
    edges = []
    nxt = 2
    for length in legs:
        prev = 1
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Graph.from_edges(edges, nxt - 1)


# ---------------------------------------------------------------------------
# Degree data and classification
# ---------------------------------------------------------------------------


def degree_sequence(g: Graph) -> tuple[int, ...]:
    return tuple(sorted(g.degrees().values(), reverse=True))


def maximal_cliques(g: Graph) -> list[frozenset[int]]:
    """All maximal cliques (Bron-Kerbosch with pivoting, via networkx)."""
    cliques = [frozenset(c) for c in nx.find_cliques(g.to_networkx())]
    return sorted(cliques, key=lambda c: (-len(c), sorted(c)))


def free_vertices(g: Graph) -> set[int]:
    count = {v: 0 for v in g.vertices()}
    for c in maximal_cliques(g):
        for v in c:
            count[v] += 1
    return {v for v, k in count.items() if k == 1}


def is_free_vertex(g: Graph, v: int) -> bool:
    return sum(1 for c in maximal_cliques(g) if v in c) == 1


def internal_vertex_count(g: Graph, tree: bool = True) -> int:
    """i(G).  In tree mode a vertex is internal iff its degree is >= 2;
    otherwise it is internal iff it lies in more than one maximal clique."""
    if tree:
        if not g.is_tree():
            raise NotATree("internal_vertex_count in tree mode needs a tree")
        return sum(1 for d in g.degrees().values() if d >= 2)
    return g.n - len(free_vertices(g))


@dataclass(frozen=True)
class Classification:
    """Which d-sequence family a tree belongs to.

    variant: "P2", "Tm", "Hm" or "NoDSeqEdgeBinomials".  For Tm the branches
    hang off ``center``; for Hm the first m-1 branches hang off ``center``
    and the last two off ``second_center``.  Each branch lists its vertices
    starting next to the center; ``s`` holds the branch lengths minus one.
    """

    variant: str
    m: int | None = None
    center: int | None = None
    second_center: int | None = None
    s: tuple[int, ...] = ()
    branches: tuple[tuple[int, ...], ...] = ()
    degree_sequence: tuple[int, ...] = ()

    @property
    def has_dsequence(self) -> bool:
        return self.variant in ("P2", "Tm", "Hm")

    @property
    def internal_vertices(self) -> int | None:
        if self.variant == "Tm":
            return sum(self.s) + 1
        if self.variant == "Hm":
            return sum(self.s) + 2
        if self.variant == "P2":
            return 0
        return None

    def to_json(self) -> dict:
        return {
            "variant": self.variant,
            "m": self.m,
            "center": self.center,
            "second_center": self.second_center,
            "s": list(self.s),
            "branches": [list(b) for b in self.branches],
            "degree_sequence": list(self.degree_sequence),
            "internal_vertices": self.internal_vertices,
        }


def _branch(adj: dict[int, set[int]], root: int, first: int) -> tuple[int, ...]:
    out = [first]
    prev, cur = root, first
    while True:
        nxt = [w for w in adj[cur] if w != prev]
        if len(nxt) != 1:
            return tuple(out)
        prev, cur = cur, nxt[0]
        out.append(cur)


def classify_tree(g: Graph) -> Classification:
    if not g.is_tree():
        raise NotATree("classify_tree needs a tree")
    if g.n < 2:
        raise NotATree("classify_tree needs a tree with at least 2 vertices")
    n = g.n
    deg = g.degrees()
    ds = degree_sequence(g)
    if ds == (1, 1):
        return Classification("P2", degree_sequence=ds)
    adj = g.adjacency()
    m = ds[0]
    if 2 <= m < n and all(d <= 2 for d in ds[1:]):
        k0 = min(v for v in g.vertices() if deg[v] == m)
        branches = tuple(_branch(adj, k0, p) for p in sorted(adj[k0]))
        return Classification(
            "Tm", m=m, center=k0, s=tuple(len(b) - 1 for b in branches), branches=branches, degree_sequence=ds
        )
    if 3 <= m < n and ds[1] == 3 and all(d <= 2 for d in ds[2:]):
        for k0 in sorted(v for v in g.vertices() if deg[v] == m):
            k1s = sorted(w for w in adj[k0] if deg[w] == 3)
            if not k1s:
                continue
            k1 = k1s[0]
            own = tuple(_branch(adj, k0, p) for p in sorted(adj[k0] - {k1}))
            other = tuple(_branch(adj, k1, p) for p in sorted(adj[k1] - {k0}))
            branches = own + other
            return Classification(
                "Hm",
                m=m,
                center=k0,
                second_center=k1,
                s=tuple(len(b) - 1 for b in branches),
                branches=branches,
                degree_sequence=ds,
            )
    return Classification("NoDSeqEdgeBinomials", degree_sequence=ds)


def canonical_dseq_order(c: Classification, g: Graph) -> list[Edge]:
    """Edges away from the center first (lexicographic), then the center edges
    in branch order, with the {k0, k1} edge last for Hm."""
    if not c.has_dsequence:
        raise NotClassified("no d-sequence ordering for this classification")
    if c.variant == "P2":
        return g.sorted_edges()
    k0 = c.center
    away = sorted(e for e in g.edges if k0 not in e)
    if c.variant == "Tm":
        spokes = [_norm((k0, b[0])) for b in c.branches]
        return away + spokes
    spokes = [_norm((k0, b[0])) for b in c.branches[: c.m - 1]]
    return away + spokes + [_norm((k0, c.second_center))]


# ---------------------------------------------------------------------------
# Graph deformations
# ---------------------------------------------------------------------------


def ge_closure(g: Graph, e: Iterable[int]) -> Graph:
    """G_e: add every pair inside N_G(i) and every pair inside N_G(j)."""
    i, j = _norm(e)
    if g.has_edge(i, j):
        raise EdgePresent(f"edge {{{i},{j}}} already in the graph")
    new = []
    for v in (i, j):
        new.extend(itertools.combinations(sorted(g.neighbors(v)), 2))
    return g.add_edges(new)


def is_bridge_extension(g: Graph, e: Iterable[int]) -> bool:
    """e is not an edge of g and is a bridge of g ∪ e (endpoints in different components)."""
    i, j = _norm(e)
    if g.has_edge(i, j):
        return False
    for comp in g.components():
        if i in comp:
            return j not in comp
    return False


def glue(g1: Graph, v1: int, g2: Graph, v2: int) -> Graph:
    """Disjoint union with v2 identified to v1; g2's other vertices follow g1's."""
    if not is_free_vertex(g1, v1):
        raise NotFreeVertex(f"vertex {v1} is not free in the first graph")
    if not is_free_vertex(g2, v2):
        raise NotFreeVertex(f"vertex {v2} is not free in the second graph")
    mapping = {}
    nxt = g1.n + 1
    for v in g2.vertices():
        if v == v2:
            mapping[v] = v1
        else:
            mapping[v] = nxt
            nxt += 1
    edges = set(g1.edges) | {_norm((mapping[a], mapping[b])) for a, b in g2.edges}
    return Graph(g1.n + g2.n - 1, frozenset(edges))


# ---------------------------------------------------------------------------
# Canonical forms and enumeration
# ---------------------------------------------------------------------------


def _rooted_code(adj: dict[int, set[int]], root: int, parent: int | None = None) -> str:
    # iterative AHU: the code of a vertex is "(" + sorted child codes + ")"
    order = []
    stack = [(root, parent)]
    parents = {root: parent}
    while stack:
        v, par = stack.pop()
        order.append(v)
        for w in adj[v]:
            if w != par:
                parents[w] = v
                stack.append((w, v))
    code: dict[int, str] = {}
    for v in reversed(order):
        kids = sorted(code[w] for w in adj[v] if w != parents[v])
        code[v] = "(" + "".join(kids) + ")"
    return code[root]


def centroids(g: Graph) -> list[int]:
    if not g.is_tree():
        raise NotATree("centroids need a tree")
    adj = g.adjacency()
    n = g.n
    best, out = n + 1, []
    for v in g.vertices():
        # largest component after deleting v
        worst = 0
        for w in adj[v]:
            size = _subtree_size(adj, w, v)
            worst = max(worst, size)
        if worst < best:
            best, out = worst, [v]
        elif worst == best:
            out.append(v)
    return out


def _subtree_size(adj: dict[int, set[int]], root: int, parent: int) -> int:
    count = 0
    stack = [(root, parent)]
    while stack:
        v, par = stack.pop()
        count += 1
        stack.extend((w, v) for w in adj[v] if w != par)
    return count


def canonical_code(g: Graph) -> str:
    """Isomorphism invariant of a tree: minimal AHU code over its centroids."""
    adj = g.adjacency()
    return min(_rooted_code(adj, c) for c in centroids(g))


def _canonical_labeling(g: Graph) -> Graph:
    adj = g.adjacency()
    root = min(centroids(g), key=lambda c: _rooted_code(adj, c))
    # BFS with children visited in code order
    codes: dict[tuple[int, int | None], str] = {}

    def code(v, par):
        key = (v, par)
        if key not in codes:
            codes[key] = _rooted_code(adj, v, par)
        return codes[key]

    label = {root: 1}
    queue = deque([(root, None)])
    while queue:
        v, par = queue.popleft()
        for w in sorted((w for w in adj[v] if w != par), key=lambda w: code(w, v)):
            label[w] = len(label) + 1
            queue.append((w, v))
    return g.relabel(label)


def prufer_decode(seq: Iterable[int], n: int) -> Graph:
    seq = list(seq)
    if n == 1:
        return Graph(1)
    if n == 2:
        return Graph.from_edges([(1, 2)], 2)
    degree = [1] * (n + 1)
    for v in seq:
        degree[v] += 1
    edges = []

    leaves = [v for v in range(1, n + 1) if degree[v] == 1]
    heapq.heapify(leaves)
    for v in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, v))
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(leaves, v)
    u, w = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((u, w))
    return Graph.from_edges(edges, n)


def enumerate_trees(n: int, labeled: bool = False) -> Iterator[Graph]:
    """Labeled: all n^(n-2) trees from Pruefer sequences.  Unlabeled: one
    canonically labeled representative per isomorphism class, grown leaf by
    leaf from the classes on n-1 vertices and deduplicated by AHU code."""
    if not 1 <= n <= 12:
        raise ValueError("enumerate_trees supports 1 <= n <= 12")
    if labeled:
        if n <= 2:
            yield prufer_decode([], n)
            return
        for seq in itertools.product(range(1, n + 1), repeat=n - 2):
            yield prufer_decode(seq, n)
        return
    yield from unlabeled_trees(n)


def unlabeled_trees(n: int) -> list[Graph]:
    level = [Graph(1)]
    for size in range(2, n + 1):
        seen: dict[str, Graph] = {}
        for t in level:
            for v in t.vertices():
                grown = Graph(size, t.edges | {(v, size)})
                code = canonical_code(grown)
                if code not in seen:
                    seen[code] = grown
        level = [_canonical_labeling(t) for _, t in sorted(seen.items())]
    return level


def edge_orbits(g: Graph) -> list[list[Edge]]:
    """Orbits of Aut(g) on the edges of a tree.

    Two edges are equivalent iff the trees subdivided at them, rooted at the
    subdivision vertex, have the same AHU code.
    """
    if not g.is_tree():
        raise NotATree("edge orbits are computed for trees")
    adj = g.adjacency()
    groups: dict[str, list[Edge]] = {}
    for i, j in g.sorted_edges():
        code = "".join(sorted((_rooted_code(adj, i, j), _rooted_code(adj, j, i))))
        groups.setdefault(code, []).append((i, j))
    return list(groups.values())


def random_tree(n: int, rng: random.Random) -> Graph:
    if n <= 2:
        return prufer_decode([], n)
    return prufer_decode([rng.randint(1, n) for _ in range(n - 2)], n)
