"""Interval-graph recognition with minimal certificates either way.

Positive outputs are interval models read off a consecutive-ones ordering
of the clique matrix.  Negative outputs are induced subgraphs from the
minimal non-interval catalog: chordless cycles (family III) when the graph
is not chordal, otherwise a Tucker submatrix of the clique matrix extended
by one private row per special column.
"""

from __future__ import annotations

import itertools

from .graphs import (
    FailTriple,
    Graph,
    chordality,
    extract_chordless_cycle,
    maximal_cliques,
)
from .pqtree import reduce_max_prefix
from .tucker import canonical_tucker, find_tucker, InputHasC1P


class NoPrivateRow(AssertionError):
    """Contradicts the private-row lemma on chordal input."""


class UnexpectedCycleFamily(AssertionError):
    """A cycle-family Tucker certificate on chordal input is impossible."""


class LBCertificate:
    """Vertices inducing a minimal non-interval subgraph, with isomorphism.

    iso[i] is the catalog vertex that vertices[i] plays in
    lb_catalog(family, k).
    """

    __slots__ = ("family", "k", "vertices", "iso")

    def __init__(self, family, k, vertices, iso):
        self.family = family
        self.k = k
        self.vertices = list(vertices)
        self.iso = list(iso)

    def __repr__(self):
        return f"LBCertificate(G_{self.family}({self.k}), vertices={self.vertices})"


class IntervalModel:
    """Integer interval [l, r] per vertex over clique positions."""

    __slots__ = ("intervals",)

    def __init__(self, intervals):
        self.intervals = [tuple(iv) for iv in intervals]

    def __repr__(self):
        return f"IntervalModel({self.intervals})"


class RecognitionResult:
    """Either model or certificate is set; stats records the path taken."""

    __slots__ = ("model", "certificate", "stats")

    def __init__(self, model=None, certificate=None, stats=None):
        self.model = model
        self.certificate = certificate
        self.stats = stats or {}

    @property
    def is_interval(self):
        return self.model is not None


def special_columns(cert, sub):
    """Columns of the certified submatrix that private rows must cover.

    Families II-V (and III at every k): the columns of the canonical entry
    contained in another of its columns; family I on three rows: all three
    columns; family I on more rows: none.  Returns restricted column
    indices of ``sub``.
    """
    if cert.family == "I":
        if cert.k == 3:
            return [0, 1, 2] if sub is None else list(range(3))
        return []
    canon = canonical_tucker(cert.family, cert.k)
    colsets = []
    for c in range(canon.n_cols):
        colsets.append(frozenset(i for i in range(canon.n_rows) if c in canon.rows[i]))
    special_canon = [
        c
        for c in range(canon.n_cols)
        if any(d != c and colsets[c] <= colsets[d] for d in range(canon.n_cols))
    ]
    # map canonical columns back through col_perm to restricted indices
    return sorted(cert.col_perm[c] for c in special_canon)


def private_row(model, cert, col):
    """A vertex in clique ``col`` (restricted index) and no other cert clique.

    ``col`` indexes cert.col_ids; existence is guaranteed on chordal input.
    """
    clique_id = cert.col_ids[col]
    cert_rows = set(cert.row_ids)
    cert_cliques = set(cert.col_ids)
    for v in model.cliques[clique_id]:
        if v in cert_rows:
            continue
        hits = [c for c in model.incidence.rows[v] if c in cert_cliques]
        if hits == [clique_id]:
            return v
    raise NoPrivateRow(f"no private row for clique {clique_id}")


def _unit_rows_graph(base, special):
    """Intersection graph of base's rows plus one unit row per special column."""
    rows = [set(r) for r in base.rows] + [{c} for c in special]
    n = len(rows)
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if rows[i] & rows[j]:
                edges.append((i, j))
    return Graph(n, edges)


def lb_catalog(family, k=None):
    """The minimal non-interval graph for (family, k).

    Family III with k >= 4 is the chordless cycle C_k.  Every other entry
    is the row intersection graph of the catalog Tucker matrix extended by
    one unit row per special column; its first canonical_tucker(family,
    k).n_rows vertices correspond to the matrix rows in order, the rest to
    the special columns in ascending column order.
    """
    if family == "III" and (k is not None and k >= 4):
        return Graph(k, [(i, (i + 1) % k) for i in range(k)])
    base = canonical_tucker(family, k)
    if family == "I":
        if base.n_rows == 3:
            special = [0, 1, 2]
        else:
            return Graph(base.n_rows, [(i, (i + 1) % base.n_rows) for i in range(base.n_rows)])
    else:
        colsets = [
            frozenset(i for i in range(base.n_rows) if c in base.rows[i])
            for c in range(base.n_cols)
        ]
        special = [
            c
            for c in range(base.n_cols)
            if any(d != c and colsets[c] <= colsets[d] for d in range(base.n_cols))
        ]
    return _unit_rows_graph(base, special)


def _is_isomorphism(g, vertices, catalog, mapping):
    """mapping[i] = catalog vertex of vertices[i]; verify edge-for-edge."""
    n = len(vertices)
    if sorted(mapping) != list(range(catalog.n)):
        return False
    pos = {v: i for i, v in enumerate(vertices)}
    cat_adj = [set(a) for a in catalog.adj]
    for i in range(n):
        for j in range(i + 1, n):
            has = g.has_edge(vertices[i], vertices[j])
            want = mapping[j] in cat_adj[mapping[i]]
            if has != want:
                return False
    return True


def _find_isomorphism(g, vertices, catalog):
    """Backtracking isomorphism search for the small catalog graphs."""
    n = len(vertices)
    if n != catalog.n:
        return None
    sub, vmap = g.induced(vertices)
    where = {v: i for i, v in enumerate(vmap)}
    local = [where[v] for v in vertices]
    deg_sub = [len(sub.adj[local[i]]) for i in range(n)]
    deg_cat = [len(catalog.adj[v]) for v in range(n)]
    if sorted(deg_sub) != sorted(deg_cat):
        return None
    sub_adj = [set(a) for a in sub.adj]
    cat_adj = [set(a) for a in catalog.adj]
    mapping = [None] * n
    used = [False] * n

    def bt(i):
        if i == n:
            return True
        for t in range(n):
            if used[t] or deg_cat[t] != deg_sub[i]:
                continue
            ok = True
            for j in range(i):
                has = local[j] in sub_adj[local[i]]
                want = mapping[j] in cat_adj[t]
                if has != want:
                    ok = False
                    break
            if ok:
                mapping[i] = t
                used[t] = True
                if bt(i + 1):
                    return True
                used[t] = False
                mapping[i] = None
        return False

    return list(mapping) if bt(0) else None


def lb_from_tucker(g, model, cert):
    """Extend a Tucker certificate of the clique matrix to an LB subgraph.

    The vertex set is the certificate's rows plus one private row per
    special column; on chordal input it induces the catalog graph for the
    same family.
    """
    if cert.family == "I" and cert.k >= 4:
        raise UnexpectedCycleFamily(
            "M_I with k >= 4 cannot appear in a chordal clique matrix"
        )
    specials = special_columns(cert, None)
    privates = [private_row(model, cert, c) for c in specials]
    vertices = list(cert.row_ids) + privates
    if len(set(vertices)) != len(vertices):
        raise NoPrivateRow("private rows collide with certificate rows")
    catalog = lb_catalog(cert.family, cert.k)
    # natural role map: restricted row i of the submatrix is catalog vertex i,
    # private of the j-th special column is catalog vertex n_rows + j; the
    # certificate's rows are sorted, canonical order comes from row_perm.
    k = cert.k
    mapping = [None] * len(vertices)
    for canon_i in range(k):
        mapping[cert.row_perm[canon_i]] = canon_i
    # catalog's unit rows follow ascending special canonical columns; ours
    # follow ascending restricted indices, which map back via col_perm, so
    # align by canonical column order.
    canon_special = []
    if cert.family == "I" and k == 3:
        canon_special = [0, 1, 2]
    else:
        canon = canonical_tucker(cert.family, k)
        colsets = [
            frozenset(i for i in range(canon.n_rows) if c in canon.rows[i])
            for c in range(canon.n_cols)
        ]
        canon_special = [
            c
            for c in range(canon.n_cols)
            if any(d != c and colsets[c] <= colsets[d] for d in range(canon.n_cols))
        ]
    order_of_special = {
        cert.col_perm[cc]: pos for pos, cc in enumerate(canon_special)
    }
    for j, c in enumerate(specials):
        mapping[k + j] = k + order_of_special[c]
    if not _is_isomorphism(g, vertices, catalog, mapping):
        mapping = _find_isomorphism(g, vertices, catalog)
        if mapping is None:
            raise NoPrivateRow("extended vertex set does not induce the catalog graph")
    return LBCertificate(cert.family, cert.k, vertices, mapping)


def recognize_interval(g):
    """Interval model, or a minimal non-interval induced subgraph.

    Chordality failure short-circuits to a family III (chordless cycle)
    certificate without building the clique matrix; otherwise the clique
    matrix goes through the consecutive-ones pipeline.
    """
    stats = {"built_clique_matrix": False}
    res = chordality(g)
    if isinstance(res, FailTriple):
        cycle = extract_chordless_cycle(g, res)
        k = len(cycle)
        iso = list(range(k))  # cycle order is the catalog order
        cert = LBCertificate("III", k, cycle, iso)
        return RecognitionResult(certificate=cert, stats=stats)
    peo = res
    stats["built_clique_matrix"] = True
    model = maximal_cliques(g, peo)
    trace = reduce_max_prefix(model.incidence, list(range(g.n)))
    if trace.z_index is None:
        order = trace.frontier_order()
        pos = [0] * len(order)
        for p, c in enumerate(order):
            pos[c] = p
        intervals = []
        for v in range(g.n):
            ps = [pos[c] for c in model.incidence.rows[v]]
            intervals.append((min(ps), max(ps)))
        return RecognitionResult(model=IntervalModel(intervals), stats=stats)
    tcert = find_tucker(model.incidence)
    cert = lb_from_tucker(g, model, tcert)
    return RecognitionResult(certificate=cert, stats=stats)
