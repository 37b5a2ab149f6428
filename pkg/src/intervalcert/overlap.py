"""Linear-time BFS on the overlap graph of a consecutive-ones-ordered row set.

Two rows overlap when they intersect and neither contains the other.  Under
a C1P order every row is an interval of positions, so the rows overlapping
a dequeued interval [j..k] are exactly the prefixes of the per-position
endpoint lists: rows starting inside (j..k] that end past k, and rows
ending inside [j..k) that start before j.  Rows starting at j itself that
end past k are supersets, not overlaps, so the start position is skipped
on the R side (and the end position on the L side).

Each enqueued row is unlinked from both endpoint lists in O(1), so the
whole search costs O(size of the matrix).
"""

from __future__ import annotations

from collections import deque


class NotConnected(Exception):
    pass


class OverlapBFS:
    """BFS tree of one overlap component: parents, distances, visit order."""

    __slots__ = ("source", "parent", "dist", "visit_order", "enqueue_count")

    def __init__(self, source, parent, dist, visit_order, enqueue_count):
        self.source = source
        self.parent = parent
        self.dist = dist
        self.visit_order = visit_order
        self.enqueue_count = enqueue_count


class _SearchState:
    """Mutable doubly-linked copies of the index's R/L endpoint lists."""

    def __init__(self, idx):
        n_rows = idx.n_rows
        self.idx = idx
        self.r_next = [-1] * n_rows
        self.r_prev = [-1] * n_rows
        self.l_next = [-1] * n_rows
        self.l_prev = [-1] * n_rows
        self.r_head = [-1] * idx.n_cols
        self.l_head = [-1] * idx.n_cols
        self.in_lists = [False] * n_rows
        for p in range(idx.n_cols):
            prev = -1
            for r in idx.r_lists[p]:
                self.in_lists[r] = True
                if prev < 0:
                    self.r_head[p] = r
                else:
                    self.r_next[prev] = r
                self.r_prev[r] = prev
                prev = r
            if prev >= 0:
                self.r_next[prev] = -1
            prev = -1
            for r in idx.l_lists[p]:
                if prev < 0:
                    self.l_head[p] = r
                else:
                    self.l_next[prev] = r
                self.l_prev[r] = prev
                prev = r
            if prev >= 0:
                self.l_next[prev] = -1

    def unlink(self, r):
        """Remove row r from both endpoint lists."""
        if not self.in_lists[r]:
            return
        self.in_lists[r] = False
        idx = self.idx
        p, n = self.r_prev[r], self.r_next[r]
        if p >= 0:
            self.r_next[p] = n
        else:
            self.r_head[idx.left[r]] = n
        if n >= 0:
            self.r_prev[n] = p
        p, n = self.l_prev[r], self.l_next[r]
        if p >= 0:
            self.l_next[p] = n
        else:
            self.l_head[idx.right[r]] = n
        if n >= 0:
            self.l_prev[n] = p

    def bfs_from(self, source):
        """Consume the component of ``source``; returns an OverlapBFS."""
        idx = self.idx
        if idx.left[source] < 0:
            # empty row: no overlaps ever
            self.unlink(source)
            return OverlapBFS(source, {source: None}, {source: 0}, [source], 1)
        parent = {source: None}
        dist = {source: 0}
        order = []
        enq = 1
        self.unlink(source)
        queue = deque([source])
        while queue:
            r = queue.popleft()
            order.append(r)
            j, k = idx.left[r], idx.right[r]
            d = dist[r] + 1
            # rows with left endpoint strictly inside (j, k] ending past k
            for h in range(j + 1, k + 1):
                while True:
                    s = self.r_head[h]
                    if s < 0 or idx.right[s] <= k:
                        break
                    self.unlink(s)
                    parent[s] = r
                    dist[s] = d
                    enq += 1
                    queue.append(s)
            # rows with right endpoint inside [j, k) starting before j
            for h in range(j, k):
                while True:
                    s = self.l_head[h]
                    if s < 0 or idx.left[s] >= j:
                        break
                    self.unlink(s)
                    parent[s] = r
                    dist[s] = d
                    enq += 1
                    queue.append(s)
        return OverlapBFS(source, parent, dist, order, enq)


def bfs(idx, source):
    """BFS of the overlap component of ``source`` (private index copy)."""
    return _SearchState(idx).bfs_from(source)


def components(idx):
    """All overlap components among the indexed rows, first-seen order.

    One shared mutable state serves every search, so the sweep is linear
    overall.
    """
    state = _SearchState(idx)
    out = []
    done = set()
    for r in idx.indexed_rows():
        if r in done:
            continue
        comp = state.bfs_from(r).visit_order
        out.append(comp)
        done.update(comp)
    return out


def shortest_path(idx, a, b):
    """A shortest (hence chordless) a-to-b path in the overlap graph."""
    res = bfs(idx, a)
    if b not in res.parent:
        raise NotConnected(f"rows {a} and {b} are not overlap-connected")
    path = [b]
    while path[-1] != a:
        path.append(res.parent[path[-1]])
    path.reverse()
    return path
