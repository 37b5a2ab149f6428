"""Chordality testing with certificates, maximal cliques, clique trees.

LexBFS visits vertices with lexicographic label priority; reversing the
visit order gives a perfect elimination ordering exactly when the graph is
chordal.  A failed elimination check hands back a vertex with two
non-adjacent later neighbors, from which a chordless cycle is extracted by
a shortest path that avoids the closed neighborhood of the witness vertex.
"""

from __future__ import annotations

from collections import deque


class GraphFormatError(ValueError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class Graph:
    """Simple undirected graph; adjacency kept as sorted lists."""

    __slots__ = ("n", "adj")

    def __init__(self, n, edges=()):
        self.n = n
        adj = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if v in adj[u]:
                raise ValueError(f"duplicate edge ({u},{v})")
            adj[u].add(v)
            adj[v].add(u)
        self.adj = [sorted(s) for s in adj]

    def adj_set(self, v):
        return set(self.adj[v])

    def edges(self):
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def has_edge(self, u, v):
        a = self.adj[u]
        lo, hi = 0, len(a)
        while lo < hi:
            mid = (lo + hi) // 2
            if a[mid] < v:
                lo = mid + 1
            else:
                hi = mid
        return lo < len(a) and a[lo] == v

    def induced(self, vertices):
        vs = sorted(set(vertices))
        idx = {v: i for i, v in enumerate(vs)}
        edges = [
            (idx[u], idx[v])
            for u in vs
            for v in self.adj[u]
            if u < v and v in idx
        ]
        return Graph(len(vs), edges), vs

    def to_text(self):
        es = self.edges()
        lines = [f"{self.n} {len(es)}"] + [f"{u} {v}" for u, v in es]
        return "\n".join(lines) + "\n"

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __repr__(self):
        return f"Graph(n={self.n}, m={sum(len(a) for a in self.adj) // 2})"


def parse_graph(text):
    """Graph file: ``n m`` then m lines ``u v``; duplicate edges rejected."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    lines = text.splitlines()
    if not lines:
        raise GraphFormatError("empty input", line=1)
    header = lines[0].split()
    if len(header) != 2:
        raise GraphFormatError("header must be 'n m'", line=1)
    try:
        n, m_edges = int(header[0]), int(header[1])
    except ValueError:
        raise GraphFormatError("header must hold two integers", line=1) from None
    if n < 0 or m_edges < 0:
        raise GraphFormatError("negative dimensions", line=1)
    edges = []
    seen = set()
    for i in range(m_edges):
        lineno = i + 2
        if i + 1 >= len(lines):
            raise GraphFormatError("missing edge line", line=lineno)
        parts = lines[i + 1].split()
        if len(parts) != 2:
            raise GraphFormatError("edge line must be 'u v'", line=lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError("non-integer endpoint", line=lineno) from None
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError("endpoint out of range", line=lineno)
        if u == v:
            raise GraphFormatError("self-loop", line=lineno)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphFormatError("duplicate edge", line=lineno)
        seen.add(key)
        edges.append((u, v))
    trailing = [ln for ln in lines[m_edges + 1 :] if ln.strip()]
    if trailing:
        raise GraphFormatError("trailing content", line=m_edges + 2)
    return Graph(n, edges)


def lex_bfs(g):
    """LexBFS visit order, ties broken by lowest vertex id.

    Partition refinement: the first class is split by each visited vertex's
    neighborhood, keeping neighbors in front.
    """
    n = g.n
    order = []
    classes = [list(range(n))] if n else []
    while classes:
        v = classes[0].pop(0)
        if not classes[0]:
            classes.pop(0)
        order.append(v)
        nb = set(g.adj[v])
        refined = []
        for cls in classes:
            inn = [w for w in cls if w in nb]
            out = [w for w in cls if w not in nb]
            if inn:
                refined.append(inn)
            if out:
                refined.append(out)
        classes = refined
    return order


class FailTriple:
    """Vertex v with later neighbors u, w not adjacent to each other."""

    __slots__ = ("v", "u", "w")

    def __init__(self, v, u, w):
        self.v = v
        self.u = u
        self.w = w

    def __repr__(self):
        return f"FailTriple(v={self.v}, u={self.u}, w={self.w})"


def chordality(g):
    """LexBFS order verified as a PEO; returns the order or a FailTriple.

    The elimination order is the reverse of the LexBFS visit order; each
    vertex's later neighbors must form a clique, checked by the standard
    parent trick (later neighbors minus the parent must be adjacent to the
    parent).
    """
    visit = lex_bfs(g)
    n = g.n
    peo = list(reversed(visit))
    rank = {v: i for i, v in enumerate(peo)}
    adjsets = [set(a) for a in g.adj]
    for i, v in enumerate(peo):
        later = [w for w in g.adj[v] if rank[w] > i]
        if len(later) <= 1:
            continue
        parent = min(later, key=lambda w: rank[w])
        for w in later:
            if w != parent and w not in adjsets[parent]:
                return FailTriple(v, parent, w)
    return peo


def is_peo(g, peo):
    rank = {v: i for i, v in enumerate(peo)}
    adjsets = [set(a) for a in g.adj]
    for i, v in enumerate(peo):
        later = [w for w in g.adj[v] if rank[w] > i]
        if not later:
            continue
        parent = min(later, key=lambda w: rank[w])
        for w in later:
            if w != parent and w not in adjsets[parent]:
                return False
    return True


def extract_chordless_cycle(g, triple):
    """A chordless cycle of length >= 4 through the failed triple's vertex.

    Closes v through a shortest u-w path in the graph minus N[v] (keeping
    u, w); shortest paths are induced, and v sees only u and w there.
    """
    v, u, w = triple.v, triple.u, triple.w
    banned = set(g.adj[v]) | {v}
    banned.discard(u)
    banned.discard(w)
    parent = {u: None}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        if x == w:
            break
        for y in g.adj[x]:
            if y in banned or y in parent:
                continue
            parent[y] = x
            queue.append(y)
    if w not in parent:
        raise AssertionError("no u-w path avoiding N[v]; not a LexBFS failure?")
    path = [w]
    while path[-1] != u:
        path.append(parent[path[-1]])
    path.reverse()
    cycle = [v] + path
    _assert_chordless_cycle(g, cycle)
    return cycle


def _assert_chordless_cycle(g, cycle):
    k = len(cycle)
    if k < 4:
        raise AssertionError("cycle shorter than 4")
    where = {v: i for i, v in enumerate(cycle)}
    if len(where) != k:
        raise AssertionError("repeated vertex in cycle")
    adjsets = [set(a) for a in g.adj]
    for i, x in enumerate(cycle):
        for y in g.adj[x]:
            if y not in where:
                continue
            d = abs(where[y] - i)
            if d not in (1, k - 1) and d != 0:
                raise AssertionError("chord inside extracted cycle")
    for i in range(k):
        if cycle[(i + 1) % k] not in adjsets[cycle[i]]:
            raise AssertionError("missing cycle edge")


class CliqueModel:
    """Maximal cliques of a chordal graph plus the vertex/clique matrix."""

    __slots__ = ("cliques", "incidence")

    def __init__(self, cliques, incidence):
        self.cliques = cliques
        self.incidence = incidence


def maximal_cliques(g, peo):
    """Maximal cliques via the elimination order (chordal graphs only).

    Candidate cliques {v} + later-neighbors(v); a candidate is dominated
    exactly when some child u has RN(u) = {v} + RN(v).
    """
    from .matrix import BinaryMatrix

    n = g.n
    rank = {v: i for i, v in enumerate(peo)}
    later = []
    parent = [None] * n
    for i, v in enumerate(peo):
        lv = [w for w in g.adj[v] if rank[w] > i]
        later.append(lv)
        if lv:
            parent[v] = min(lv, key=lambda w: rank[w])
    later_by_vertex = {}
    for i, v in enumerate(peo):
        later_by_vertex[v] = later[i]
    dominated = set()
    for v in peo:
        p = parent[v]
        if p is not None and len(later_by_vertex[v]) == len(later_by_vertex[p]) + 1:
            dominated.add(p)
    cliques = []
    for v in peo:
        if v not in dominated:
            cliques.append(sorted([v] + later_by_vertex[v]))
    rows = [[] for _ in range(n)]
    for j, K in enumerate(cliques):
        for v in K:
            rows[v].append(j)
    incidence = BinaryMatrix(n, len(cliques), rows)
    return CliqueModel(cliques, incidence)


class CliqueTree:
    __slots__ = ("n_cliques", "edges")

    def __init__(self, n_cliques, edges):
        self.n_cliques = n_cliques
        self.edges = edges


def clique_tree(model):
    """Maximum-weight spanning tree on clique intersection sizes."""
    cliques = [set(K) for K in model.cliques]
    k = len(cliques)
    if k == 0:
        return CliqueTree(0, [])
    in_tree = [False] * k
    best = [(-1, -1)] * k  # (weight, -partner)
    in_tree[0] = True
    for j in range(1, k):
        best[j] = (len(cliques[0] & cliques[j]), 0)
    edges = []
    for _ in range(k - 1):
        pick = -1
        for j in range(k):
            if not in_tree[j] and (pick < 0 or best[j][0] > best[pick][0]):
                pick = j
        in_tree[pick] = True
        edges.append((min(pick, best[pick][1]), max(pick, best[pick][1])))
        for j in range(k):
            if not in_tree[j]:
                w = len(cliques[pick] & cliques[j])
                if w > best[j][0]:
                    best[j] = (w, pick)
    return CliqueTree(k, edges)


def assert_clique_tree(g, model, tree):
    """Every vertex's cliques must induce a connected subtree."""
    adj = [[] for _ in range(tree.n_cliques)]
    for a, b in tree.edges:
        adj[a].append(b)
        adj[b].append(a)
    for v in range(g.n):
        mine = [j for j, K in enumerate(model.cliques) if v in set(K)]
        if not mine:
            raise AssertionError(f"vertex {v} in no clique")
        seen = {mine[0]}
        stack = [mine[0]]
        members = set(mine)
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y in members and y not in seen:
                    seen.add(y)
                    stack.append(y)
        if seen != members:
            raise AssertionError(f"cliques of vertex {v} not connected in tree")


def shrink_leaf(g, model, tree, leaf):
    """Delete the leaf clique's simplicial vertices; return smaller pieces.

    A vertex of a chordal graph is simplicial iff it lies in exactly one
    maximal clique, so the deleted set is the leaf clique minus all others.
    Returns (graph, vertex_map, model, tree) for the shrunken graph.
    """
    deg = [0] * tree.n_cliques
    for a, b in tree.edges:
        deg[a] += 1
        deg[b] += 1
    if tree.n_cliques > 1 and deg[leaf] != 1:
        raise ValueError(f"clique {leaf} is not a leaf of the tree")
    others = set()
    for j, K in enumerate(model.cliques):
        if j != leaf:
            others.update(K)
    simplicial = [v for v in model.cliques[leaf] if v not in others]
    if not simplicial:
        raise AssertionError("leaf clique holds no simplicial vertex")
    keep = [v for v in range(g.n) if v not in set(simplicial)]
    sub, vmap = g.induced(keep)
    res = chordality(sub)
    if isinstance(res, FailTriple):
        raise AssertionError("shrunken graph not chordal")
    model2 = maximal_cliques(sub, res)
    tree2 = clique_tree(model2)
    assert_clique_tree(sub, model2, tree2)
    return sub, vmap, model2, tree2
