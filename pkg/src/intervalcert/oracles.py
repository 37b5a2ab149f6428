"""Brute-force oracles: the trust anchor for everything else.

These deliberately avoid the production data structures.  oracle_c1p does a
pruned left-to-right search over column placements, which visits the same
search space as trying all column permutations but skips dead branches.
Size guards are hard errors.
"""

from __future__ import annotations

from .matrix import BinaryMatrix

C1P_ORACLE_MAX_COLS = 9
_INTERNAL_MAX_COLS = 40


class TooLarge(ValueError):
    pass


def _c1p_search(col_rowsets, keep):
    """Backtracking placement of the deduplicated columns in ``keep``.

    Returns an ordering of ``keep`` realizing C1P, or None.  State per row:
    number of its placed columns and whether the row has been 'closed'
    (a non-member column was placed after one of its members).
    """
    m = len(keep)
    n_rows = max((max(col_rowsets[c], default=-1) for c in keep), default=-1) + 1
    remaining = {}
    for c in keep:
        for r in col_rowsets[c]:
            remaining[r] = remaining.get(r, 0) + 1
    placed = [0] * n_rows
    closed = [False] * n_rows
    used = [False] * m
    out = []

    def bt():
        if len(out) == m:
            return True
        for idx in range(m):
            if used[idx]:
                continue
            c = keep[idx]
            ok = True
            for r in col_rowsets[c]:
                if closed[r]:
                    ok = False
                    break
            if not ok:
                continue
            newly_closed = []
            for r, cnt in remaining.items():
                if placed[r] and not closed[r] and placed[r] < cnt and r not in col_rowsets[c]:
                    closed[r] = True
                    newly_closed.append(r)
            for r in col_rowsets[c]:
                placed[r] += 1
            used[idx] = True
            out.append(c)
            if bt():
                return True
            out.pop()
            used[idx] = False
            for r in col_rowsets[c]:
                placed[r] -= 1
            for r in newly_closed:
                closed[r] = False
        return False

    return list(out) if bt() else None


def c1p_order_bruteforce(m, max_cols=_INTERNAL_MAX_COLS):
    """A column order realizing C1P, or None.  Internal entry point."""
    if m.n_cols > max_cols:
        raise TooLarge(f"{m.n_cols} columns exceeds oracle guard {max_cols}")
    col_rowsets = [frozenset() for _ in range(m.n_cols)]
    cols = [set() for _ in range(m.n_cols)]
    for i, row in enumerate(m.rows):
        for c in row:
            cols[c].add(i)
    col_rowsets = [frozenset(s) for s in cols]
    seen = {}
    keep = []
    dups = []  # (col, representative)
    zeros = []
    for c in range(m.n_cols):
        if not col_rowsets[c]:
            zeros.append(c)
        elif col_rowsets[c] in seen:
            dups.append((c, seen[col_rowsets[c]]))
        else:
            seen[col_rowsets[c]] = c
            keep.append(c)
    core = _c1p_search(col_rowsets, keep)
    if core is None:
        return None
    # re-insert duplicates next to their representative, zero columns at the end
    order = []
    extras = {}
    for c, rep in dups:
        extras.setdefault(rep, []).append(c)
    for c in core:
        order.append(c)
        order.extend(extras.get(c, []))
    order.extend(zeros)
    return order


def oracle_c1p(m):
    """Witness column order for C1P, or None.  Guarded brute force."""
    if m.n_cols > C1P_ORACLE_MAX_COLS:
        raise TooLarge(
            f"{m.n_cols} columns exceeds the oracle guard of {C1P_ORACLE_MAX_COLS}"
        )
    return c1p_order_bruteforce(m, max_cols=C1P_ORACLE_MAX_COLS)


def has_c1p(m, max_cols=_INTERNAL_MAX_COLS):
    return c1p_order_bruteforce(m, max_cols=max_cols) is not None


def is_minimal_non_c1p(m, max_cols=_INTERNAL_MAX_COLS):
    """Non-C1P, and deleting any one row or column restores C1P."""
    if has_c1p(m, max_cols):
        return False
    for i in range(m.n_rows):
        rows = [m.rows[j] for j in range(m.n_rows) if j != i]
        if not has_c1p(BinaryMatrix(m.n_rows - 1, m.n_cols, rows), max_cols):
            return False
    for c in range(m.n_cols):
        rows = [[x - (x > c) for x in r if x != c] for r in m.rows]
        if not has_c1p(BinaryMatrix(m.n_rows, m.n_cols - 1, rows), max_cols):
            return False
    return True
