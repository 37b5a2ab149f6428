"""Booth-Lueker PQ trees over column sets.

A PQ tree represents every column order in which each processed row's 1s
are consecutive: children of P nodes permute freely, children of Q nodes
are fixed up to reversal.  reduce() applies the classic template set
(L1, P1-P6, Q1-Q3) bottom-up over the pertinent subtree.

Children live in doubly-linked sibling lists with parent pointers on every
child; splices touch only moved children, which keeps reductions
near-linear on the workloads the scaling benchmark guards.  Reduction is
destructive, so on a failed row the caller rebuilds the surviving prefix
(see reduce_max_prefix).
"""

from __future__ import annotations

from collections import deque

LEAF = 0
PNODE = 1
QNODE = 2

EMPTY = 0
FULL = 1
PARTIAL = 2


class Node:
    __slots__ = (
        "kind", "nid", "leaf_col", "parent", "first_child", "last_child",
        "prev_sib", "next_sib", "child_count",
        "label", "gen", "pert_child_count", "pert_leaf_count",
        "processed_children", "pert_children",
    )

    def __init__(self, kind, nid, leaf_col=-1):
        self.kind = kind
        self.nid = nid
        self.leaf_col = leaf_col
        self.parent = None
        self.first_child = None
        self.last_child = None
        self.prev_sib = None
        self.next_sib = None
        self.child_count = 0
        self.label = EMPTY
        self.gen = -1
        self.pert_child_count = 0
        self.pert_leaf_count = 0
        self.processed_children = 0
        self.pert_children = None

    # -- sibling list surgery -------------------------------------------

    def append_child(self, c):
        c.parent = self
        c.prev_sib = self.last_child
        c.next_sib = None
        if self.last_child is not None:
            self.last_child.next_sib = c
        else:
            self.first_child = c
        self.last_child = c
        self.child_count += 1

    def prepend_child(self, c):
        c.parent = self
        c.next_sib = self.first_child
        c.prev_sib = None
        if self.first_child is not None:
            self.first_child.prev_sib = c
        else:
            self.last_child = c
        self.first_child = c
        self.child_count += 1

    def insert_after(self, after, c):
        c.parent = self
        c.prev_sib = after
        c.next_sib = after.next_sib
        if after.next_sib is not None:
            after.next_sib.prev_sib = c
        else:
            self.last_child = c
        after.next_sib = c
        self.child_count += 1

    def remove_child(self, c):
        p, n = c.prev_sib, c.next_sib
        if p is not None:
            p.next_sib = n
        else:
            self.first_child = n
        if n is not None:
            n.prev_sib = p
        else:
            self.last_child = p
        c.parent = None
        c.prev_sib = None
        c.next_sib = None
        self.child_count -= 1

    def replace_child(self, old, new):
        new.parent = self
        new.prev_sib = old.prev_sib
        new.next_sib = old.next_sib
        if old.prev_sib is not None:
            old.prev_sib.next_sib = new
        else:
            self.first_child = new
        if old.next_sib is not None:
            old.next_sib.prev_sib = new
        else:
            self.last_child = new
        old.parent = None
        old.prev_sib = None
        old.next_sib = None

    def children(self):
        c = self.first_child
        while c is not None:
            yield c
            c = c.next_sib

    def reverse_children(self):
        c = self.first_child
        while c is not None:
            c.prev_sib, c.next_sib = c.next_sib, c.prev_sib
            c = c.prev_sib  # formerly next
        self.first_child, self.last_child = self.last_child, self.first_child


class ReductionFailed(Exception):
    """The row cannot be made consecutive in any frontier of the tree."""


class PQTree:
    """PQ tree over columns 0..n_cols-1, starting from one universal P node."""

    def __init__(self, n_cols):
        self.n_cols = n_cols
        self._next_id = 0
        self._gen = 0
        self.leaves = [self._new(LEAF, leaf_col=c) for c in range(n_cols)]
        if n_cols == 1:
            self.root = self.leaves[0]
        else:
            self.root = self._new(PNODE)
            for leaf in self.leaves:
                self.root.append_child(leaf)

    def _new(self, kind, leaf_col=-1):
        n = Node(kind, self._next_id, leaf_col)
        self._next_id += 1
        return n

    # -- queries ----------------------------------------------------------

    def frontier(self):
        """Left-to-right leaf columns under the current child orders."""
        out = []
        stack = [self.root]
        while stack:
            node = stack.pop()
            if node.kind == LEAF:
                out.append(node.leaf_col)
                continue
            stack.extend(reversed(list(node.children())))
        return out

    def nodes(self):
        stack = [self.root]
        while stack:
            node = stack.pop()
            yield node
            if node.kind != LEAF:
                stack.extend(node.children())

    def normalize(self):
        """Relabel leftover 2-child pseudo Q nodes as P nodes.

        Both encode exactly the two block orders, so the represented
        frontier set is unchanged; the relabeling restores the one-to-one
        match between Q nodes and overlap components (used downstream).
        """
        for node in self.nodes():
            if node.kind == QNODE and node.child_count <= 2:
                node.kind = PNODE

    # -- reduction ----------------------------------------------------------

    def _label(self, node):
        return node.label if node.gen == self._gen else EMPTY

    def reduce(self, cols):
        """Constrain the tree so ``cols`` must appear consecutively."""
        if len(cols) <= 1:
            return
        self._gen += 1
        total = len(cols)
        self._bubble(cols)
        queue = deque(self.leaves[c] for c in cols)
        while queue:
            node = queue.popleft()
            if node.pert_leaf_count >= total:
                self._template(node, is_root=True)
                return
            par = node.parent
            replacement = self._template(node, is_root=False)
            par.pert_children.append(replacement if replacement is not None else node)
            par.processed_children += 1
            par.pert_leaf_count += node.pert_leaf_count
            if par.processed_children == par.pert_child_count:
                queue.append(par)
        raise AssertionError("pertinent root never reached")

    def _bubble(self, cols):
        gen = self._gen
        leaves = self.leaves
        for c in cols:
            node = leaves[c]
            if node.gen == gen:
                continue
            node.gen = gen
            node.label = EMPTY
            node.pert_leaf_count = 1
            par = node.parent
            while par is not None:
                if par.gen == gen:
                    par.pert_child_count += 1
                    break
                par.gen = gen
                par.label = EMPTY
                par.pert_child_count = 1
                par.processed_children = 0
                par.pert_leaf_count = 0
                if par.pert_children is None:
                    par.pert_children = []
                else:
                    par.pert_children.clear()
                par = par.parent

    # -- templates -----------------------------------------------------------

    def _template(self, node, is_root):
        """Apply the matching template; may return a replacement node.

        Only the pertinent children (collected while the reduction works
        upward) and the moved nodes are touched; empty children are never
        iterated, which is what keeps reductions near-linear.
        """
        if node.kind == LEAF:
            node.label = FULL  # L1
            return None
        if node.kind == PNODE:
            return self._template_p(node, is_root)
        return self._template_q(node, is_root)

    def _group(self, nodes, label):
        """Pack several nodes under a fresh P node (or return the single one)."""
        if len(nodes) == 1:
            return nodes[0]
        p = self._new(PNODE)
        p.gen = self._gen
        p.label = label
        for x in nodes:
            p.append_child(x)
        return p

    def _make_partial_q(self, empty_part, full_part):
        """Pseudo Q node [empty-group, full-group], labeled PARTIAL."""
        q = self._new(QNODE)
        q.gen = self._gen
        q.label = PARTIAL
        q.append_child(self._group(empty_part, EMPTY))
        q.append_child(self._group(full_part, FULL))
        return q

    def _orient_partial(self, q):
        """Reverse ``q`` if needed so its full side ends at last_child."""
        if self._label(q.last_child) == FULL:
            return
        if self._label(q.first_child) == FULL:
            q.reverse_children()
            return
        # one end must be decisively empty; face the full side away from it
        if self._label(q.first_child) == EMPTY and self._label(q.last_child) != EMPTY:
            return
        if self._label(q.last_child) == EMPTY and self._label(q.first_child) != EMPTY:
            q.reverse_children()
            return
        raise ReductionFailed("partial child with ambiguous orientation")

    def _contract_unary(self, node):
        if node.kind == LEAF or node.child_count != 1:
            return
        child = node.first_child
        node.remove_child(child)
        par = node.parent
        if par is None:
            self.root = child
            child.parent = None
        else:
            par.replace_child(node, child)

    def _carry_bookkeeping(self, old, new):
        new.gen = old.gen
        new.pert_leaf_count = old.pert_leaf_count
        new.pert_child_count = old.pert_child_count
        new.processed_children = old.processed_children

    def _template_p(self, node, is_root):
        full, partial = [], []
        for c in node.pert_children:
            if c.label == FULL:
                full.append(c)
            elif c.label == PARTIAL:
                partial.append(c)
            else:
                raise AssertionError("pertinent child with empty label")
        nf, np_ = len(full), len(partial)
        n_empty = node.child_count - nf - np_

        if np_ == 0 and n_empty == 0:
            node.label = FULL  # P1
            return None
        if np_ == 0:
            if is_root:
                # P2: group the full children; empties stay put
                if nf >= 2:
                    for c in full:
                        node.remove_child(c)
                    node.append_child(self._group(full, FULL))
                return None
            # P3: node itself becomes the empty group of a partial pseudo Q
            par = node.parent
            for c in full:
                node.remove_child(c)
            q = self._new(QNODE)
            q.gen = self._gen
            q.label = PARTIAL
            self._carry_bookkeeping(node, q)
            par.replace_child(node, q)
            egrp = node
            if node.child_count == 1:
                egrp = node.first_child
                node.remove_child(egrp)
            else:
                node.label = EMPTY
            q.append_child(egrp)
            q.append_child(self._group(full, FULL))
            return q
        if np_ == 1:
            q = partial[0]
            self._orient_partial(q)
            if is_root:
                # P4: fulls move to the partial child's full end
                if nf >= 1:
                    for c in full:
                        node.remove_child(c)
                    q.append_child(self._group(full, FULL))
                self._contract_unary(node)
                return None
            # P5: node becomes the partial child extended on both sides
            par = node.parent
            node.remove_child(q)
            for c in full:
                node.remove_child(c)
            par.replace_child(node, q)
            self._carry_bookkeeping(node, q)
            if node.child_count:
                egrp = node
                if node.child_count == 1:
                    egrp = node.first_child
                    node.remove_child(egrp)
                else:
                    node.label = EMPTY
                q.prepend_child(egrp)
            if full:
                q.append_child(self._group(full, FULL))
            return q
        if np_ == 2 and is_root:
            # P6: q1 ... fulls ... reversed q2, all under q1; empties stay
            q1, q2 = partial
            self._orient_partial(q1)
            self._orient_partial(q2)
            node.remove_child(q2)
            if nf >= 1:
                for c in full:
                    node.remove_child(c)
                q1.append_child(self._group(full, FULL))
            moved = list(q2.children())
            for c in reversed(moved):
                q2.remove_child(c)
                q1.append_child(c)
            self._contract_unary(node)
            return None
        raise ReductionFailed("P node: too many partial children")

    def _template_q(self, node, is_root):
        pert = node.pert_children
        pert_ids = set(map(id, pert))
        left = right = pert[0]
        while left.prev_sib is not None and id(left.prev_sib) in pert_ids:
            left = left.prev_sib
        while right.next_sib is not None and id(right.next_sib) in pert_ids:
            right = right.next_sib
        run = []
        x = left
        while True:
            run.append(x)
            if x is right:
                break
            x = x.next_sib
            if x is None or id(x) not in pert_ids:
                raise ReductionFailed("Q node: pertinent children not consecutive")
        if len(run) != len(pert):
            raise ReductionFailed("Q node: pertinent children not consecutive")
        for c in run[1:-1]:
            if c.label != FULL:
                raise ReductionFailed("Q node: interior pertinent child not full")
        flush_left = left.prev_sib is None
        flush_right = right.next_sib is None
        all_full = all(c.label == FULL for c in run)

        if all_full and flush_left and flush_right:
            node.label = FULL  # Q1
            return None

        if is_root:
            # Q3: boundary partials absorb with their full side inward
            if left.label == PARTIAL:
                self._absorb_partial(
                    node, left, full_side_right=True if len(run) > 1 else True
                )
            if len(run) > 1 and right.label == PARTIAL:
                self._absorb_partial(node, right, full_side_right=False)
            return None

        # Q2: one partial at most, next to the empties; block flush to an end
        n_partial = (left.label == PARTIAL) + (
            right.label == PARTIAL if len(run) > 1 else 0
        )
        if n_partial > 1:
            raise ReductionFailed("Q2: two partial children")
        if not (flush_left or flush_right):
            raise ReductionFailed("Q2: pertinent block is interior")
        if n_partial:
            pc = left if left.label == PARTIAL else right
            if flush_left and not flush_right:
                if pc is not right:
                    raise ReductionFailed("Q2: partial not at the inner boundary")
                self._absorb_partial(node, pc, full_side_right=False)
            elif flush_right and not flush_left:
                if pc is not left:
                    raise ReductionFailed("Q2: partial not at the inner boundary")
                self._absorb_partial(node, pc, full_side_right=True)
            else:
                self._absorb_partial(node, pc, full_side_right=pc is left)
        node.label = PARTIAL
        return None

    def _absorb_partial(self, node, qc, full_side_right):
        """Inline a partial child's children in place of it.

        ``full_side_right`` orients the absorbed run so its full part faces
        the right (next_sib) direction.
        """
        self._orient_partial(qc)  # now qc runs empty .. full
        inner = list(qc.children())
        for c in inner:
            qc.remove_child(c)
        if not full_side_right:
            inner.reverse()
        prev = qc.prev_sib
        node.remove_child(qc)
        if prev is None:
            for c in reversed(inner):
                node.prepend_child(c)
        else:
            for c in inner:
                node.insert_after(prev, c)
                prev = c


class ReductionTrace:
    """Outcome of reducing a maximal C1P prefix of a row order.

    prefix: row ids whose reduction succeeded, in insertion order.
    z_index: first failing row id, or None when every row fit.
    tree: normalized PQ tree spanning exactly the prefix rows.
    """

    __slots__ = ("prefix", "z_index", "matrix", "_tree", "_frontier")

    def __init__(self, prefix, z_index, matrix, tree=None):
        self.prefix = prefix
        self.z_index = z_index
        self.matrix = matrix
        self._tree = tree
        self._frontier = None

    @property
    def tree(self):
        # rebuilt on demand: the failed reduction left the eager tree
        # dismantled, and most traces are never inspected again
        if self._tree is None:
            t = PQTree(self.matrix.n_cols)
            for r in self.prefix:
                t.reduce(self.matrix.rows[r])
            t.normalize()
            self._tree = t
        return self._tree

    def frontier_order(self):
        if self._frontier is None:
            self._frontier = self.tree.frontier()
        return list(self._frontier)


def reduce_max_prefix(m, start_order):
    """Reduce rows in ``start_order`` until the first row that fails C1P.

    Templates are destructive, so when a row fails the returned trace
    rebuilds its prefix tree lazily on first access (at most doubling the
    work, and only for traces that are actually inspected).
    """
    if len(set(start_order)) != len(start_order):
        raise ValueError("start_order repeats a row")
    tree = PQTree(m.n_cols)
    prefix = []
    z_index = None
    for r in start_order:
        try:
            tree.reduce(m.rows[r])
        except ReductionFailed:
            z_index = r
            break
        prefix.append(r)
    if z_index is not None:
        return ReductionTrace(prefix, z_index, m)
    tree.normalize()
    return ReductionTrace(prefix, None, m, tree)


def frontier(tree):
    """A C1P column order for the rows reduced into ``tree``."""
    return tree.frontier()


class InternalInconsistency(AssertionError):
    """A structural guarantee failed; signals an implementation bug."""


class QComponent:
    """An overlap component of >= 2 prefix rows and its Q node.

    children are the Q node's child column sets in Q order; child_spans are
    the matching frontier position ranges.
    """

    __slots__ = ("q_node", "member_rows", "children", "child_spans", "span")

    def __init__(self, q_node, member_rows, children, child_spans, span):
        self.q_node = q_node
        self.member_rows = member_rows
        self.children = children
        self.child_spans = child_spans
        self.span = span


def _node_spans(tree, pos):
    """Frontier-position range (lo, hi) of every node's leaf set."""
    spans = {}
    stack = [(tree.root, False)]
    while stack:
        node, done = stack.pop()
        if node.kind == LEAF:
            p = pos[node.leaf_col]
            spans[id(node)] = (p, p)
            continue
        if not done:
            stack.append((node, True))
            for c in node.children():
                stack.append((c, False))
        else:
            lo = min(spans[id(c)][0] for c in node.children())
            hi = max(spans[id(c)][1] for c in node.children())
            spans[id(node)] = (lo, hi)
    return spans


def q_components(trace, m=None):
    """Overlap components (>= 2 rows) of the prefix with their Q nodes.

    By the Q-node/overlap-component correspondence, the union of each such
    component is exactly the leaf span of one Q node, and the Q node's
    children are the component's Venn classes in Q order.
    """
    from .matrix import endpoint_index
    from .overlap import components as overlap_components

    m = trace.matrix if m is None else m
    order = trace.frontier_order()
    idx = endpoint_index(m, order, rows=trace.prefix)
    comps = overlap_components(idx)
    spans = _node_spans(trace.tree, idx.pos)
    q_by_span = {}
    for node in trace.tree.nodes():
        if node.kind == QNODE:
            q_by_span[spans[id(node)]] = node
    out = []
    for comp in comps:
        if len(comp) < 2:
            continue
        lo = min(idx.left[r] for r in comp)
        hi = max(idx.right[r] for r in comp)
        node = q_by_span.get((lo, hi))
        if node is None:
            raise InternalInconsistency(
                f"component union spans {(lo, hi)} but no Q node does"
            )
        child_spans = [spans[id(c)] for c in node.children()]
        children = [
            [order[p] for p in range(s[0], s[1] + 1)] for s in child_spans
        ]
        out.append(QComponent(node, comp, children, child_spans, (lo, hi)))
    out.sort(key=lambda qc: qc.q_node.nid)
    return out


class ABWitness:
    """Rows A and B flanking a 1-0-1 of Z inside one Q component."""

    __slots__ = ("q_node", "x_h", "x_i", "x_j", "a_row", "b_row", "component")

    def __init__(self, q_node, x_h, x_i, x_j, a_row, b_row, component):
        self.q_node = q_node
        self.x_h = x_h
        self.x_i = x_i
        self.x_j = x_j
        self.a_row = a_row
        self.b_row = b_row
        self.component = component


def _label_tree(tree, z_cols):
    """full/partial/empty per node id with respect to the column set z."""
    z = set(z_cols)
    lab = {}
    stack = [(tree.root, False)]
    while stack:
        node, done = stack.pop()
        if node.kind == LEAF:
            lab[id(node)] = FULL if node.leaf_col in z else EMPTY
            continue
        if not done:
            stack.append((node, True))
            for c in node.children():
                stack.append((c, False))
        else:
            kids = [lab[id(c)] for c in node.children()]
            if all(k == FULL for k in kids):
                lab[id(node)] = FULL
            elif all(k == EMPTY for k in kids):
                lab[id(node)] = EMPTY
            else:
                lab[id(node)] = PARTIAL
    return lab


def find_ab(trace, z_row, comps):
    """Select rows A and B per the corral lemma, or None.

    Labels every Q child full/partial/empty with respect to the failing row,
    then, per component, takes A' = the qualifying row (one containing a
    child with a 1 of Z) whose right endpoint is leftmost and B' = the one
    whose left endpoint is rightmost; a witness exists iff some child
    strictly between them holds a 0 of Z.  Components are scanned in Q-node
    id order, so output is deterministic.
    """
    from .matrix import endpoint_index

    m = trace.matrix
    labels = _label_tree(trace.tree, z_row)
    order = trace.frontier_order()
    pos = [0] * len(order)
    for p, c in enumerate(order):
        pos[c] = p
    z_set = set(z_row)

    for qc in comps:
        kid_labels = [labels[id(c)] for c in qc.q_node.children()]
        spans = qc.child_spans
        lo = qc.span[0]
        # child index of each frontier position inside the Q span
        width = qc.span[1] - qc.span[0] + 1
        child_of = [0] * width
        for ci, (a, b) in enumerate(spans):
            for p in range(a, b + 1):
                child_of[p - lo] = ci
        best_a = best_b = None
        row_spans = {}
        for r in qc.member_rows:
            row = m.rows[r]
            pmin = min(pos[c] for c in row)
            pmax = max(pos[c] for c in row)
            ci_l, ci_r = child_of[pmin - lo], child_of[pmax - lo]
            row_spans[r] = (ci_l, ci_r)
            if not any(kid_labels[ci] != EMPTY for ci in range(ci_l, ci_r + 1)):
                continue
            if best_a is None or (ci_r, r) < (row_spans[best_a][1], best_a):
                best_a = r
            if best_b is None or (-ci_l, r) < (-row_spans[best_b][0], best_b):
                best_b = r
        if best_a is None:
            continue
        a_l, a_r = row_spans[best_a]
        b_l, b_r = row_spans[best_b]
        x_i = None
        for ci in range(a_r + 1, b_l):
            if kid_labels[ci] != FULL:
                x_i = ci
                break
        if x_i is None:
            continue
        x_h = next(
            ci for ci in range(a_l, a_r + 1) if kid_labels[ci] != EMPTY
        )
        x_j = next(
            ci for ci in range(b_l, b_r + 1) if kid_labels[ci] != EMPTY
        )
        w = ABWitness(qc.q_node, x_h, x_i, x_j, best_a, best_b, qc)
        _assert_ab(w, qc, m, z_set)
        return w
    return None


def _assert_ab(w, qc, m, z_set):
    ch = qc.children
    if not (w.x_h < w.x_i < w.x_j):
        raise InternalInconsistency("witness children out of order")
    if not (set(ch[w.x_h]) & z_set) or not (set(ch[w.x_j]) & z_set):
        raise InternalInconsistency("outer witness children lack a 1 of Z")
    if not (set(ch[w.x_i]) - z_set):
        raise InternalInconsistency("inner witness child lacks a 0 of Z")
    a = set(m.rows[w.a_row])
    b = set(m.rows[w.b_row])
    if not set(ch[w.x_h]) <= a or a & set(ch[w.x_i]) or a & set(ch[w.x_j]):
        raise InternalInconsistency("row A fails its containment pattern")
    if not set(ch[w.x_j]) <= b or b & set(ch[w.x_h]) or b & set(ch[w.x_i]):
        raise InternalInconsistency("row B fails its containment pattern")
