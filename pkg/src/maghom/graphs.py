"""Finite directed graphs, their metric structure, and standard constructions.

Undirected graphs are handled as symmetric digraphs: an undirected edge
{x, y} is stored as the two directed edges (x, y) and (y, x).  The
``symmetric`` flag records that a graph arose this way, so operations that
only make sense for undirected graphs (girth, subgraph networks, ...) can
insist on it.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import lru_cache

from .errors import GraphError, ParseError

INF = float("inf")


@dataclass(frozen=True)
class DirectedGraph:
    """Loop-free simple digraph on vertex set {0, ..., n-1}."""

    n: int
    edges: frozenset
    symmetric: bool = False

    def __post_init__(self):
        if self.n < 0:
            raise GraphError("vertex count must be non-negative")
        for e in self.edges:
            u, v = e
            if not (isinstance(u, int) and isinstance(v, int)):
                raise GraphError(f"non-integer vertex in edge {e!r}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge {e!r} out of range for n={self.n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
        if self.symmetric:
            for u, v in self.edges:
                if (v, u) not in self.edges:
                    raise GraphError(
                        f"symmetric graph is missing the reverse of ({u}, {v})"
                    )

    @property
    def m(self):
        """Number of directed edges."""
        return len(self.edges)

    def has_edge(self, u, v):
        return (u, v) in self.edges

    def undirected_pairs(self):
        """Edge set as unordered pairs.  Only meaningful when symmetric."""
        if not self.symmetric:
            raise GraphError("undirected edge set requested for a digraph")
        return {frozenset(e) for e in self.edges}

    def __repr__(self):
        tag = "undirected" if self.symmetric else "directed"
        return f"DirectedGraph(n={self.n}, m={self.m}, {tag})"


def digraph(n, edges):
    return DirectedGraph(n, frozenset((int(u), int(v)) for u, v in edges))


def rho(n, pairs):
    """Symmetric digraph with both orientations of every undirected pair."""
    es = set()
    for u, v in pairs:
        u, v = int(u), int(v)
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        if (u, v) in es:
            raise GraphError(f"duplicate undirected edge {{{u}, {v}}}")
        es.add((u, v))
        es.add((v, u))
    return DirectedGraph(n, frozenset(es), symmetric=True)


undirected_graph = rho


@lru_cache(maxsize=None)
def adjacency(G):
    """Sorted successor lists, one tuple per vertex."""
    out = [[] for _ in range(G.n)]
    for u, v in G.edges:
        out[u].append(v)
    return tuple(tuple(sorted(vs)) for vs in out)


@lru_cache(maxsize=None)
def distance_matrix(G):
    """All-pairs directed path-length distances; unreachable pairs get INF.

    Returned as a tuple of row tuples; finite entries are ints.
    """
    adj = adjacency(G)
    rows = []
    for s in range(G.n):
        dist = [INF] * G.n
        dist[s] = 0
        q = deque([s])
        while q:
            u = q.popleft()
            du = dist[u]
            for v in adj[u]:
                if dist[v] is INF:
                    dist[v] = du + 1
                    q.append(v)
        rows.append(tuple(dist))
    return tuple(rows)


def eccentricity_bound(G):
    """Largest finite distance occurring in G (0 for edgeless graphs)."""
    best = 0
    for row in distance_matrix(G):
        for d in row:
            if d is not INF and d > best:
                best = d
    return best


# ---------------------------------------------------------------------------
# parsing


def parse_graph(text):
    g, _labels = parse_graph_labeled(text)
    return g


def parse_graph_labeled(text):
    """Parse the edge-list exchange format.

    First meaningful line is ``# directed`` or ``# undirected``.  An optional
    ``# vertices N`` line follows; with it, labels must be integers in
    [0, N).  Without it, labels are arbitrary tokens numbered in order of
    first appearance.  ``%`` starts a comment, blank lines are skipped.
    """
    header = None
    declared_n = None
    directed = None
    edges = []
    labels = {}
    label_order = []

    def vertex_id(tok, lineno):
        if declared_n is not None:
            try:
                v = int(tok)
            except ValueError:
                raise ParseError(f"non-integer vertex label {tok!r}", lineno)
            if not 0 <= v < declared_n:
                raise ParseError(
                    f"vertex {v} out of range [0, {declared_n})", lineno
                )
            return v
        if tok not in labels:
            labels[tok] = len(labels)
            label_order.append(tok)
        return labels[tok]

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("%", 1)[0].strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip().lower()
            if header is None:
                if body == "directed":
                    directed = True
                elif body == "undirected":
                    directed = False
                else:
                    raise ParseError(
                        "expected '# directed' or '# undirected' header", lineno
                    )
                header = lineno
                continue
            if body.startswith("vertices"):
                parts = body.split()
                if len(parts) != 2 or not parts[1].isdigit():
                    raise ParseError("expected '# vertices N'", lineno)
                if edges:
                    raise ParseError("'# vertices' must precede edges", lineno)
                declared_n = int(parts[1])
                continue
            raise ParseError(f"unrecognized directive {line!r}", lineno)
        if header is None:
            raise ParseError(
                "expected '# directed' or '# undirected' header", lineno
            )
        toks = line.split()
        if len(toks) != 2:
            raise ParseError(f"expected 'u v', got {line!r}", lineno)
        u = vertex_id(toks[0], lineno)
        v = vertex_id(toks[1], lineno)
        if u == v:
            raise ParseError(f"self-loop at vertex {toks[0]!r}", lineno)
        if directed:
            if (u, v) in edges:
                raise ParseError(f"duplicate edge {line!r}", lineno)
            edges.append((u, v))
        else:
            if (u, v) in edges or (v, u) in edges:
                raise ParseError(f"duplicate undirected edge {line!r}", lineno)
            edges.append((u, v))

    if header is None:
        raise ParseError("empty input: missing orientation header")
    n = declared_n if declared_n is not None else len(labels)
    if directed:
        g = digraph(n, edges)
    else:
        g = rho(n, edges)
    if declared_n is not None:
        label_list = [str(i) for i in range(n)]
    else:
        label_list = label_order
    return g, label_list


# ---------------------------------------------------------------------------
# standard families


def family(name, n):
    """Named graph families.

    complete/cycle/linear are undirected (cycle needs n >= 3); dir_linear
    and dir_cycle are the one-way path and cycle; tournament gives the
    transitive tournament T_n on n+1 vertices; bicomplete is the symmetric
    closure of K_n.
    """
    if name == "tournament":
        return transitive_tournament(n)
    if n < 1:
        raise GraphError(f"family {name!r} needs n >= 1, got {n}")
    if name == "complete":
        return rho(n, itertools.combinations(range(n), 2))
    if name == "bicomplete":
        return rho(n, itertools.combinations(range(n), 2))
    if name == "cycle":
        if n < 3:
            raise GraphError("cycle needs n >= 3 to stay a simple graph")
        return rho(n, [(i, (i + 1) % n) for i in range(n)])
    if name == "dir_cycle":
        if n < 2:
            raise GraphError("directed cycle needs n >= 2")
        return digraph(n, [(i, (i + 1) % n) for i in range(n)])
    if name == "linear":
        return rho(n, [(i, i + 1) for i in range(n - 1)])
    if name == "dir_linear":
        return digraph(n, [(i, i + 1) for i in range(n - 1)])
    raise GraphError(f"unknown family {name!r}")


def transitive_tournament(n):
    """T_n: vertices 0..n with an edge i -> j whenever i < j."""
    if n < 0:
        raise GraphError("tournament index must be non-negative")
    return digraph(n + 1, [(i, j) for i in range(n + 1) for j in range(i + 1, n + 1)])


def point():
    return DirectedGraph(1, frozenset())


# ---------------------------------------------------------------------------
# constructions


def cone(G):
    """Add a new vertex with an edge from every old vertex into it."""
    star = G.n
    edges = set(G.edges)
    edges.update((x, star) for x in range(G.n))
    return DirectedGraph(G.n + 1, frozenset(edges))


def join(G, H):
    """Directed join: disjoint union plus every edge from V(G) to V(H)."""
    shift = G.n
    edges = set(G.edges)
    edges.update((u + shift, v + shift) for u, v in H.edges)
    edges.update((x, y + shift) for x in range(G.n) for y in range(H.n))
    return DirectedGraph(G.n + H.n, frozenset(edges))


def cartesian(G, H):
    """Box product; vertex (i, j) becomes i * H.n + j."""
    if G.n == 0 or H.n == 0:
        raise GraphError("cartesian product needs non-empty factors")
    edges = set()
    for i in range(G.n):
        for u, v in H.edges:
            edges.add((i * H.n + u, i * H.n + v))
    for j in range(H.n):
        for u, v in G.edges:
            edges.add((u * H.n + j, v * H.n + j))
    return DirectedGraph(
        G.n * H.n, frozenset(edges), symmetric=G.symmetric and H.symmetric
    )


def opposite(G):
    """Reverse every edge."""
    return DirectedGraph(
        G.n, frozenset((v, u) for u, v in G.edges), symmetric=G.symmetric
    )


def alternating(G, part0):
    """Orient a bipartite undirected graph so every edge leaves part0.

    part0 is one side of a bipartition of V(G); the result has every vertex
    as a source or a sink.
    """
    if not G.symmetric:
        raise GraphError("alternating orientation needs an undirected graph")
    side0 = set(part0)
    if not side0 <= set(range(G.n)):
        raise GraphError("bipartition contains unknown vertices")
    edges = set()
    for u, v in G.edges:
        if u in side0 and v in side0:
            raise GraphError(f"edge ({u}, {v}) stays inside the given part")
        if u in side0:
            edges.add((u, v))
        elif v not in side0:
            raise GraphError(f"edge ({u}, {v}) misses the given part")
    return DirectedGraph(G.n, frozenset(edges))


# ---------------------------------------------------------------------------
# structural queries


def girth(G):
    """Length of a shortest cycle of an undirected graph; INF for forests."""
    if not G.symmetric:
        raise GraphError("girth is defined here for undirected graphs only")
    adj = adjacency(G)
    best = INF
    for s in range(G.n):
        dist = {s: 0}
        parent = {s: -1}
        q = deque([s])
        while q:
            u = q.popleft()
            for v in adj[u]:
                if v not in dist:
                    dist[v] = dist[u] + 1
                    parent[v] = u
                    q.append(v)
                elif parent[u] != v:
                    # cross or back edge closes a cycle through s
                    best = min(best, dist[u] + dist[v] + 1)
        # the BFS bound is exact once every start vertex has been tried
    return best


def reachability_preorder(G):
    """Digraph with an edge (u, v) whenever v is reachable from u, u != v."""
    dist = distance_matrix(G)
    edges = {
        (u, v)
        for u in range(G.n)
        for v in range(G.n)
        if u != v and dist[u][v] is not INF
    }
    sym = all((v, u) in edges for u, v in edges)
    return DirectedGraph(G.n, frozenset(edges), symmetric=sym)


def is_weakly_connected(G):
    if G.n <= 1:
        return True
    adj = [set() for _ in range(G.n)]
    for u, v in G.edges:
        adj[u].add(v)
        adj[v].add(u)
    seen = {0}
    q = deque([0])
    while q:
        u = q.popleft()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                q.append(v)
    return len(seen) == G.n


def is_strongly_connected(G):
    if G.n <= 1:
        return True
    dist = distance_matrix(G)
    return all(
        dist[u][v] is not INF for u in range(G.n) for v in range(G.n) if u != v
    )


# ---------------------------------------------------------------------------
# morphisms and isomorphism


@dataclass(frozen=True)
class MorphismVerdict:
    regular: bool
    reason: str = ""

    def __bool__(self):
        return self.regular


def morphism_verdict(f, G, H):
    """Check that the vertex map f induces chain maps: it must be injective
    (no vertex collisions) and send every edge of G to an edge of H."""
    f = tuple(f)
    if len(f) != G.n:
        return MorphismVerdict(False, f"map has {len(f)} entries, expected {G.n}")
    for x in f:
        if not (0 <= x < H.n):
            return MorphismVerdict(False, f"image vertex {x} out of range")
    if len(set(f)) != G.n:
        return MorphismVerdict(False, "not injective")
    for u, v in G.edges:
        if (f[u], f[v]) not in H.edges:
            return MorphismVerdict(
                False, f"edge ({u}, {v}) has no image edge ({f[u]}, {f[v]})"
            )
    return MorphismVerdict(True)


def _degree_profile(G):
    indeg = [0] * G.n
    outdeg = [0] * G.n
    for u, v in G.edges:
        outdeg[u] += 1
        indeg[v] += 1
    return indeg, outdeg


def are_isomorphic(G, H):
    """Exact digraph isomorphism by backtracking with degree pruning."""
    if G.n != H.n or G.m != H.m or G.symmetric != H.symmetric:
        return False
    gi, go = _degree_profile(G)
    hi, ho = _degree_profile(H)
    if sorted(zip(gi, go)) != sorted(zip(hi, ho)):
        return False
    # candidate images per vertex, filtered by degree pair
    cands = [
        [w for w in range(H.n) if (hi[w], ho[w]) == (gi[v], go[v])]
        for v in range(G.n)
    ]
    order = sorted(range(G.n), key=lambda v: len(cands[v]))
    img = [-1] * G.n
    used = [False] * H.n
    gadj = {(u, v) for u, v in G.edges}

    def place(i):
        if i == G.n:
            return True
        v = order[i]
        for w in cands[v]:
            if used[w]:
                continue
            ok = True
            for j in range(i):
                u = order[j]
                if ((u, v) in gadj) != ((img[u], w) in H.edges):
                    ok = False
                    break
                if ((v, u) in gadj) != ((w, img[u]) in H.edges):
                    ok = False
                    break
            if ok:
                img[v] = w
                used[w] = True
                if place(i + 1):
                    return True
                used[w] = False
                img[v] = -1
        return False

    return place(0)


def canonical_form(n, pairs):
    """Canonical labelling of an undirected graph given as unordered pairs.

    Returns a sorted tuple of sorted pairs, minimal over all vertex
    permutations compatible with an iterated degree refinement.
    """
    pairs = [tuple(sorted(p)) for p in pairs]
    adj = [set() for _ in range(n)]
    for u, v in pairs:
        adj[u].add(v)
        adj[v].add(u)
    # refine colors by neighbor color multisets until stable
    color = [len(adj[v]) for v in range(n)]
    while True:
        key = [
            (color[v], tuple(sorted(color[w] for w in adj[v]))) for v in range(n)
        ]
        ranks = {k: i for i, k in enumerate(sorted(set(key)))}
        new = [ranks[key[v]] for v in range(n)]
        if new == color:
            break
        color = new
    cells = {}
    for v in range(n):
        cells.setdefault(color[v], []).append(v)
    groups = [cells[c] for c in sorted(cells)]

    best = None
    perm = [-1] * n
    slots = [list(g) for g in groups]

    def assign(gi, offset):
        nonlocal best
        if gi == len(groups):
            relabeled = tuple(
                sorted(tuple(sorted((perm[u], perm[v]))) for u, v in pairs)
            )
            if best is None or relabeled < best:
                best = relabeled
            return
        for p in itertools.permutations(slots[gi]):
            for i, v in enumerate(p):
                perm[v] = offset + i
            assign(gi + 1, offset + len(p))

    assign(0, 0)
    return best


def canonical_undirected(G):
    if not G.symmetric:
        raise GraphError("canonical form implemented for undirected graphs")
    return canonical_form(G.n, G.undirected_pairs())


# ---------------------------------------------------------------------------
# exhaustive enumeration of small undirected graphs


def connected_undirected_graphs(n, min_girth=None):
    """Yield edge tuples of all labeled connected graphs on n vertices.

    With min_girth set, graphs containing a shorter cycle are skipped
    (forests count as girth INF and always pass).
    """
    if n < 1:
        raise GraphError("need n >= 1")
    all_pairs = list(itertools.combinations(range(n), 2))
    for bits in range(1 << len(all_pairs)):
        chosen = [all_pairs[i] for i in range(len(all_pairs)) if bits >> i & 1]
        if len(chosen) < n - 1:
            continue
        adj = [0] * n
        for u, v in chosen:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        # connectivity over bitmasks
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            v = 0
            f = frontier
            while f:
                if f & 1:
                    nxt |= adj[v]
                f >>= 1
                v += 1
            frontier = nxt & ~seen
            seen |= frontier
        if seen != (1 << n) - 1:
            continue
        if min_girth is not None and min_girth > 3:
            g = girth(rho(n, chosen))
            if g is not INF and g < min_girth:
                continue
        yield tuple(chosen)


def connected_graph_classes(n, min_girth=None):
    """Canonical representatives of connected graphs on n vertices."""
    seen = set()
    out = []
    for chosen in connected_undirected_graphs(n, min_girth=min_girth):
        canon = canonical_form(n, chosen)
        if canon not in seen:
            seen.add(canon)
            out.append(canon)
    return out
