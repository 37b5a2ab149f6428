"""Independent certificate checkers and instance generation.

Checkers look only at the input object, the claimed certificate, and the
catalogs; they never consult pipeline internals, so a checker pass is
evidence independent of the producing code path.
"""

from __future__ import annotations

import random

from .graphs import Graph
from .lb import lb_catalog
from .matrix import BinaryMatrix, is_c1p_ordered, restrict
from .oracles import TooLarge, c1p_order_bruteforce, has_c1p
from .tucker import canonical_tucker

MIN_NONINTERVAL_ORACLE_MAX_VERTICES = 12


class CheckReport:
    __slots__ = ("ok", "violations")

    def __init__(self, violations):
        self.violations = list(violations)
        self.ok = not self.violations

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return f"CheckReport(ok={self.ok}, violations={self.violations})"


def check_c1p_order(m, order):
    """ok iff ``order`` is a permutation making every row contiguous."""
    violations = []
    if sorted(order) != list(range(m.n_cols)):
        return CheckReport(["order is not a permutation of the columns"])
    pos = [0] * m.n_cols
    for p, c in enumerate(order):
        pos[c] = p
    for i, row in enumerate(m.rows):
        if not row:
            continue
        ps = [pos[c] for c in row]
        if max(ps) - min(ps) + 1 != len(ps):
            violations.append(f"row {i} is not contiguous under the order")
    return CheckReport(violations)


def check_tucker_certificate(m, cert):
    """ok iff the certified submatrix is entrywise the canonical entry."""
    violations = []
    try:
        canon = canonical_tucker(cert.family, cert.k)
    except ValueError as exc:
        return CheckReport([str(exc)])
    if len(set(cert.row_ids)) != len(cert.row_ids):
        violations.append("duplicate row ids")
    if len(set(cert.col_ids)) != len(cert.col_ids):
        violations.append("duplicate column ids")
    if any(not 0 <= r < m.n_rows for r in cert.row_ids):
        violations.append("row id out of range")
    if any(not 0 <= c < m.n_cols for c in cert.col_ids):
        violations.append("column id out of range")
    if violations:
        return CheckReport(violations)
    if len(cert.row_ids) != canon.n_rows or len(cert.col_ids) != canon.n_cols:
        return CheckReport(
            [
                f"submatrix is {len(cert.row_ids)}x{len(cert.col_ids)}, "
                f"M_{cert.family}({cert.k}) is {canon.n_rows}x{canon.n_cols}"
            ]
        )
    if sorted(cert.row_perm) != list(range(canon.n_rows)):
        return CheckReport(["row_perm is not a permutation"])
    if sorted(cert.col_perm) != list(range(canon.n_cols)):
        return CheckReport(["col_perm is not a permutation"])
    sub, _, _ = restrict(m, cert.row_ids, cert.col_ids)
    sd = sub.dense()
    cd = canon.dense()
    for i in range(canon.n_rows):
        for j in range(canon.n_cols):
            if cd[i][j] != sd[cert.row_perm[i]][cert.col_perm[j]]:
                violations.append(
                    f"entry mismatch at canonical ({i},{j})"
                )
    return CheckReport(violations)


def check_lb_certificate(g, cert):
    """ok iff cert.iso maps the induced subgraph onto the catalog graph."""
    violations = []
    try:
        catalog = lb_catalog(cert.family, cert.k)
    except ValueError as exc:
        return CheckReport([str(exc)])
    vs = cert.vertices
    if len(set(vs)) != len(vs):
        violations.append("duplicate vertices")
    if any(not 0 <= v < g.n for v in vs):
        violations.append("vertex out of range")
    if violations:
        return CheckReport(violations)
    if len(vs) != catalog.n:
        return CheckReport(
            [f"{len(vs)} vertices, catalog graph has {catalog.n}"]
        )
    if sorted(cert.iso) != list(range(catalog.n)):
        return CheckReport(["iso is not a bijection onto the catalog graph"])
    cat_adj = [set(a) for a in catalog.adj]
    for i in range(len(vs)):
        for j in range(i + 1, len(vs)):
            has = g.has_edge(vs[i], vs[j])
            want = cert.iso[j] in cat_adj[cert.iso[i]]
            if has != want:
                violations.append(
                    f"pair ({vs[i]},{vs[j]}) breaks the isomorphism"
                )
    return CheckReport(violations)


def check_interval_model(g, model):
    """ok iff adjacency equals interval intersection (endpoint sweep)."""
    iv = model.intervals
    if len(iv) != g.n:
        return CheckReport([f"{len(iv)} intervals for {g.n} vertices"])
    violations = []
    for v, (l, r) in enumerate(iv):
        if l > r:
            violations.append(f"vertex {v} has an empty interval")
    if violations:
        return CheckReport(violations)
    # sweep over starts; maintain the active set
    order = sorted(range(g.n), key=lambda v: (iv[v][0], iv[v][1], v))
    active = []
    seen_pairs = set()
    for v in order:
        l, r = iv[v]
        active = [u for u in active if iv[u][1] >= l]
        for u in active:
            seen_pairs.add((min(u, v), max(u, v)))
        active.append(v)
    edges = {(u, v) for u in range(g.n) for v in g.adj[u] if u < v}
    for u, v in sorted(edges - seen_pairs):
        violations.append(f"adjacent pair ({u},{v}) has disjoint intervals")
    for u, v in sorted(seen_pairs - edges):
        violations.append(f"non-adjacent pair ({u},{v}) has meeting intervals")
    return CheckReport(violations)


def oracle_c1p(m):
    from .oracles import oracle_c1p as _oc

    return _oc(m)


def _all_max_cliques(g):
    """Bron-Kerbosch with pivoting; fine for the guarded oracle sizes."""
    adj = [set(a) for a in g.adj]
    out = []

    def bk(r, p, x):
        if not p and not x:
            out.append(sorted(r))
            return
        pivot = max(p | x, key=lambda u: len(adj[u] & p))
        for v in sorted(p - adj[pivot]):
            bk(r | {v}, p & adj[v], x & adj[v])
            p = p - {v}
            x = x | {v}

    bk(set(), set(range(g.n)), set())
    return out


def is_interval_bruteforce(g):
    """Clique-matrix C1P via the pruned-permutation oracle."""
    if g.n == 0:
        return True
    cliques = _all_max_cliques(g)
    rows = [[] for _ in range(g.n)]
    for j, K in enumerate(cliques):
        for v in K:
            rows[v].append(j)
    return has_c1p(BinaryMatrix(g.n, len(cliques), rows))


def oracle_minimal_noninterval(g):
    """True iff g is non-interval and every one-vertex deletion is interval."""
    if g.n > MIN_NONINTERVAL_ORACLE_MAX_VERTICES:
        raise TooLarge(
            f"{g.n} vertices exceeds the oracle guard of "
            f"{MIN_NONINTERVAL_ORACLE_MAX_VERTICES}"
        )
    if is_interval_bruteforce(g):
        return False
    for v in range(g.n):
        sub, _ = g.induced([u for u in range(g.n) if u != v])
        if not is_interval_bruteforce(sub):
            return False
    return True


def gen_instance(seed, size_class, n_rows=None, n_cols=None, n=None):
    """Deterministic pseudo-random instances for tests and benchmarks.

    size_class:
      "c1p"              random interval rows over a shuffled column line
      "tucker(F,K)"      c1p base with M_F(K) embedded on fresh columns
      "interval"         random interval graph on n vertices
      "lb(F,K)"          interval base with the catalog graph attached on
                         fresh vertices
    Matrix classes use n_rows/n_cols, graph classes use n.  The same seed
    and parameters always produce the same instance.
    """
    rng = random.Random(f"{seed}|{size_class}|{n_rows}|{n_cols}|{n}")
    name, args = _parse_class(size_class)
    if name in ("c1p", "tucker"):
        n_rows = 20 if n_rows is None else n_rows
        n_cols = 20 if n_cols is None else n_cols
        if name == "tucker":
            family, k = args
            pattern = canonical_tucker(family, k)
            if pattern.n_rows > n_rows or pattern.n_cols > n_cols:
                raise ValueError("pattern larger than requested size")
        else:
            pattern = None
        rows = []
        base_rows = n_rows - (pattern.n_rows if pattern else 0)
        base_cols = n_cols - (pattern.n_cols if pattern else 0)
        for _ in range(base_rows):
            if base_cols == 0:
                rows.append([])
                continue
            length = min(base_cols, 1 + min(rng.randrange(1, 9), rng.randrange(1, 9)))
            start = rng.randrange(base_cols - length + 1)
            rows.append(list(range(start, start + length)))
        col_map = list(range(n_cols))
        rng.shuffle(col_map)
        # base rows use columns 0..base_cols-1, pattern gets the rest
        out_rows = [sorted(col_map[c] for c in r) for r in rows]
        if pattern is not None:
            pat_cols = [col_map[base_cols + j] for j in range(pattern.n_cols)]
            for r in pattern.rows:
                out_rows.append(sorted(pat_cols[c] for c in r))
        rng.shuffle(out_rows)
        return BinaryMatrix(n_rows, n_cols, out_rows)
    if name in ("interval", "lb"):
        n = 20 if n is None else n
        if name == "lb":
            family, k = args
            attach = lb_catalog(family, k)
            if attach.n > n:
                raise ValueError("catalog graph larger than requested size")
        else:
            attach = None
        base_n = n - (attach.n if attach else 0)
        line = max(1, 2 * base_n)
        ivs = []
        for _ in range(base_n):
            a = rng.randrange(line)
            b = min(line - 1, a + rng.randrange(1, 8))
            ivs.append((a, b))
        edges = [
            (i, j)
            for i in range(base_n)
            for j in range(i + 1, base_n)
            if not (ivs[i][1] < ivs[j][0] or ivs[j][1] < ivs[i][0])
        ]
        vmap = list(range(n))
        rng.shuffle(vmap)
        out_edges = [(vmap[u], vmap[v]) for u, v in edges]
        if attach is not None:
            for u, v in attach.edges():
                out_edges.append((vmap[base_n + u], vmap[base_n + v]))
        return Graph(n, sorted(set((min(u, v), max(u, v)) for u, v in out_edges)))
    raise ValueError(f"unknown size class {size_class!r}")


def _parse_class(size_class):
    s = size_class.strip()
    if s in ("c1p", "interval"):
        return s, None
    for prefix in ("tucker", "lb"):
        if s.startswith(prefix + "(") and s.endswith(")"):
            inner = s[len(prefix) + 1 : -1]
            parts = [p.strip() for p in inner.split(",")]
            if len(parts) == 1:
                return prefix, (parts[0], None)
            if len(parts) == 2:
                return prefix, (parts[0], int(parts[1]))
    raise ValueError(f"unknown size class {size_class!r}")
