"""Sparse 0-1 matrices as lists of column-index rows, plus endpoint indexing.

Rows are sets of column ids, stored as strictly increasing lists.  size(M)
counts rows + columns + ones and is the budget every linear-time routine is
measured against.
"""

from __future__ import annotations


class MatrixFormatError(ValueError):
    """Raised on malformed matrix files; carries a 1-based line number."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class BinaryMatrix:
    """Sparse 0-1 matrix; ``rows[i]`` is the ascending list of 1-columns."""

    __slots__ = ("n_rows", "n_cols", "rows")

    def __init__(self, n_rows, n_cols, rows):
        if len(rows) != n_rows:
            raise ValueError(f"expected {n_rows} rows, got {len(rows)}")
        for i, row in enumerate(rows):
            prev = -1
            for c in row:
                if not 0 <= c < n_cols:
                    raise ValueError(f"row {i}: column {c} out of range [0,{n_cols})")
                if c <= prev:
                    raise ValueError(f"row {i}: column list not strictly increasing")
                prev = c
        self.n_rows = n_rows
        self.n_cols = n_cols
        self.rows = [list(r) for r in rows]

    def size(self):
        """rows + columns + number of 1s, in one pass."""
        return self.n_rows + self.n_cols + sum(len(r) for r in self.rows)

    def row_set(self, i):
        return set(self.rows[i])

    def columns(self):
        """Column -> ascending list of row ids containing it."""
        cols = [[] for _ in range(self.n_cols)]
        for i, row in enumerate(self.rows):
            for c in row:
                cols[c].append(i)
        return cols

    def dense(self):
        out = [[0] * self.n_cols for _ in range(self.n_rows)]
        for i, row in enumerate(self.rows):
            for c in row:
                out[i][c] = 1
        return out

    def __eq__(self, other):
        return (
            isinstance(other, BinaryMatrix)
            and self.n_rows == other.n_rows
            and self.n_cols == other.n_cols
            and self.rows == other.rows
        )

    def __repr__(self):
        return f"BinaryMatrix({self.n_rows}x{self.n_cols}, ones={sum(len(r) for r in self.rows)})"

    def to_text(self):
        lines = [f"{self.n_rows} {self.n_cols}"]
        for row in self.rows:
            lines.append(" ".join([str(len(row))] + [str(c) for c in row]))
        return "\n".join(lines) + "\n"


def parse_matrix(text):
    """Parse the matrix file format: ``R C`` then R rows ``d c1 ... cd``."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    lines = text.splitlines()
    if not lines:
        raise MatrixFormatError("empty input", line=1)
    header = lines[0].split()
    if len(header) != 2:
        raise MatrixFormatError("header must be 'R C'", line=1)
    try:
        n_rows, n_cols = int(header[0]), int(header[1])
    except ValueError:
        raise MatrixFormatError("header must hold two integers", line=1) from None
    if n_rows < 0 or n_cols < 0:
        raise MatrixFormatError("negative dimensions", line=1)
    rows = []
    for i in range(n_rows):
        lineno = i + 2
        if i + 1 >= len(lines):
            raise MatrixFormatError(f"missing row {i}", line=lineno)
        parts = lines[i + 1].split()
        if not parts:
            raise MatrixFormatError("blank row line", line=lineno)
        try:
            vals = [int(p) for p in parts]
        except ValueError:
            raise MatrixFormatError("non-integer entry", line=lineno) from None
        d, cols = vals[0], vals[1:]
        if d < 0 or len(cols) != d:
            raise MatrixFormatError(f"row declares {d} entries but has {len(cols)}", line=lineno)
        prev = -1
        for c in cols:
            if not 0 <= c < n_cols:
                raise MatrixFormatError(f"column {c} out of range", line=lineno)
            if c <= prev:
                raise MatrixFormatError("non-increasing row list", line=lineno)
            prev = c
        rows.append(cols)
    trailing = [ln for ln in lines[n_rows + 1 :] if ln.strip()]
    if trailing:
        raise MatrixFormatError("trailing content after last row", line=n_rows + 2)
    return BinaryMatrix(n_rows, n_cols, rows)


class EndpointIndex:
    """Per-row endpoints under a column order, plus per-position R/L lists.

    ``r_lists[i]`` holds rows whose left endpoint is at position i, sorted
    descending by right endpoint; ``l_lists[i]`` holds rows ending at i,
    ascending by left endpoint.  Both are built with radix (two-pass
    counting) sorts so construction is O(size(m)).  Rows with no 1s carry
    endpoint (-1, -1) and join no list.
    """

    __slots__ = (
        "n_rows", "n_cols", "order", "pos", "left", "right", "r_lists", "l_lists",
        "rows_indexed",
    )

    def __init__(self, m, order, rows=None):
        n = m.n_cols
        if sorted(order) != list(range(n)):
            raise ValueError("order is not a permutation of the columns")
        pos = [0] * n
        for p, c in enumerate(order):
            pos[c] = p
        row_ids = range(m.n_rows) if rows is None else rows
        left = [-1] * m.n_rows
        right = [-1] * m.n_rows
        indexed = []
        for i in row_ids:
            indexed.append(i)
            row = m.rows[i]
            if not row:
                continue
            lo = hi = pos[row[0]]
            for c in row:
                p = pos[c]
                if p < lo:
                    lo = p
                if p > hi:
                    hi = p
            left[i] = lo
            right[i] = hi

        nonempty = [i for i in indexed if left[i] >= 0]
        # Radix sort for R lists: secondary key right endpoint (descending),
        # then stable primary pass on left endpoint.
        buckets = [[] for _ in range(n)]
        for i in nonempty:
            buckets[right[i]].append(i)
        by_right_desc = []
        for p in range(n - 1, -1, -1):
            by_right_desc.extend(buckets[p])
        r_lists = [[] for _ in range(n)]
        for i in by_right_desc:
            r_lists[left[i]].append(i)
        # L lists: secondary key left endpoint (ascending), primary right.
        buckets = [[] for _ in range(n)]
        for i in nonempty:
            buckets[left[i]].append(i)
        by_left_asc = []
        for p in range(n):
            by_left_asc.extend(buckets[p])
        l_lists = [[] for _ in range(n)]
        for i in by_left_asc:
            l_lists[right[i]].append(i)

        self.n_rows = m.n_rows
        self.n_cols = n
        self.order = list(order)
        self.pos = pos
        self.left = left
        self.right = right
        self.r_lists = r_lists
        self.l_lists = l_lists
        self.rows_indexed = indexed

    def indexed_rows(self):
        return self.rows_indexed


def endpoint_index(m, order, rows=None):
    """Build the left/right endpoint index of ``m`` under ``order``.

    ``rows`` restricts indexing (and any later overlap search) to a subset
    of row ids; other rows join no endpoint list.
    """
    return EndpointIndex(m, order, rows)


def restrict(m, row_ids, col_ids):
    """Submatrix on the given rows/columns, renumbered ascending.

    Returns (submatrix, row_map, col_map) where the maps list original ids
    in the order they were assigned new indices.
    """
    row_map = sorted(set(row_ids))
    col_map = sorted(set(col_ids))
    for r in row_map:
        if not 0 <= r < m.n_rows:
            raise ValueError(f"row id {r} out of range")
    for c in col_map:
        if not 0 <= c < m.n_cols:
            raise ValueError(f"column id {c} out of range")
    col_new = {c: j for j, c in enumerate(col_map)}
    rows = []
    for r in row_map:
        rows.append([col_new[c] for c in m.rows[r] if c in col_new])
    sub = BinaryMatrix(len(row_map), len(col_map), rows)
    return sub, row_map, col_map


def is_c1p_ordered(m, order):
    """True iff every row occupies a contiguous block of positions under order."""
    pos = [0] * m.n_cols
    if sorted(order) != list(range(m.n_cols)):
        raise ValueError("order is not a permutation of the columns")
    for p, c in enumerate(order):
        pos[c] = p
    for row in m.rows:
        if not row:
            continue
        ps = [pos[c] for c in row]
        if max(ps) - min(ps) + 1 != len(ps):
            return False
    return True
