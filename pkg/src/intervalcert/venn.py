"""Ordered constrained Venn classes against a fixed row Z.

As rows are inserted in an order whose prefixes have connected overlap
graphs, the sequence of constrained classes is the (unique up to reversal)
Q-node child order: boundary classes split, new columns join at an end.
Each class carries its cardinality c(X) and its count n(X) of Z's columns,
so full/partial/empty labels are implicit.

The violation test keeps four counters that are together equivalent to
scanning all class triples for 1-0-1 / 0-1-0 configurations:

  ones_runs   maximal runs of classes containing a 1 of Z
  zero_runs   maximal runs of classes containing a 0 of Z
  mid_zero    classes holding a 0 whose both neighbors hold a 1
  mid_one     classes holding a 1 whose both neighbors hold a 0

A 1-0-1 exists iff ones_runs >= 2 or mid_zero >= 1; a 0-1-0 exists iff
zero_runs >= 2 or mid_one >= 1 (violating only when Z also has a column
outside the inserted union).  Every edit touches O(1) classes, so the
counters admit O(1) updates per moved element.
"""

from __future__ import annotations


class NoOverlap(Exception):
    pass


class VennClass:
    __slots__ = ("c", "n", "prev", "next", "head", "tail", "cnt_start", "cnt_end")

    def __init__(self):
        self.c = 0
        self.n = 0
        self.prev = None
        self.next = None
        self.head = None
        self.tail = None
        self.cnt_start = 0
        self.cnt_end = 0

    def label(self):
        if self.n == 0:
            return "E"
        if self.n == self.c:
            return "F"
        return "P"

    def has1(self):
        return self.n > 0

    def has0(self):
        return self.c > self.n


class ViolationVerdict:
    """kind is None, "1-0-1" or "0-1-0"; witness holds three column ids."""

    __slots__ = ("kind", "witness")

    def __init__(self, kind, witness=None):
        self.kind = kind
        self.witness = witness

    def __bool__(self):
        return self.kind is not None

    def __repr__(self):
        return f"ViolationVerdict({self.kind!r}, {self.witness!r})"


class VennSequence:
    def __init__(self, z_cols, universe, first_row_cols):
        self.universe = universe
        self.z = frozenset(z_cols)
        for c in self.z:
            if not 0 <= c < universe:
                raise ValueError("z column out of universe")
        self.col_class = {}
        self.col_prev = {}
        self.col_next = {}
        self.first_class = None
        self.last_class = None
        self.pool_size = universe
        self.n_pool = len(self.z)
        self.ones_runs = 0
        self.zero_runs = 0
        self.mid_zero = 0
        self.mid_one = 0
        self.total_moves = 0
        self.track_runs = False
        first = VennClass()
        self.first_class = first
        self.last_class = first
        self._edit([first], lambda: self._fill_class(first, list(first_row_cols)))

    # -- column DLL helpers -------------------------------------------------

    def _fill_class(self, X, cols):
        prev = X.tail
        for c in cols:
            if c in self.col_class:
                raise ValueError(f"column {c} already constrained")
            self.col_class[c] = X
            self.col_prev[c] = prev
            if prev is None:
                X.head = c
            else:
                self.col_next[prev] = c
            prev = c
            X.c += 1
            if c in self.z:
                X.n += 1
                self.n_pool -= 1
            self.pool_size -= 1
            self.total_moves += 1
        if prev is not None:
            self.col_next[prev] = None
        X.tail = prev

    def _unlink_col(self, c):
        X = self.col_class.pop(c)
        p, n = self.col_prev.pop(c), self.col_next.pop(c)
        if p is not None:
            self.col_next[p] = n
        else:
            X.head = n
        if n is not None:
            self.col_prev[n] = p
        else:
            X.tail = p
        X.c -= 1
        if c in self.z:
            X.n -= 1
        return p, n

    def _relink_col(self, c, X, p, n):
        self.col_class[c] = X
        self.col_prev[c] = p
        self.col_next[c] = n
        if p is not None:
            self.col_next[p] = c
        else:
            X.head = c
        if n is not None:
            self.col_prev[n] = c
        else:
            X.tail = c
        X.c += 1
        if c in self.z:
            X.n += 1

    def class_cols(self, X):
        out = []
        c = X.head
        while c is not None:
            out.append(c)
            c = self.col_next[c]
        return out

    # -- violation counters ----------------------------------------------------

    def _contrib(self, X, sign):
        p, n = X.prev, X.next
        if X.has1() and (p is None or not p.has1()):
            self.ones_runs += sign
        if X.has0() and (p is None or not p.has0()):
            self.zero_runs += sign
        if p is not None and n is not None:
            if X.has0() and p.has1() and n.has1():
                self.mid_zero += sign
            if X.has1() and p.has0() and n.has0():
                self.mid_one += sign

    def _window(self, classes):
        out = []
        seen = set()
        for X in classes:
            if X is None:
                continue
            for Y in (X.prev, X, X.next):
                if Y is not None and id(Y) not in seen:
                    seen.add(id(Y))
                    out.append(Y)
        return out

    def _in_sequence(self, X):
        return X is self.first_class or X.prev is not None or X.next is not None

    def _edit(self, touched_before, fn, touched_after=None):
        """Run fn() subtracting/re-adding counter contributions around it.

        touched_before lists live classes whose values or neighborhoods the
        edit may change; touched_after additionally lists classes that exist
        only after the edit.  A class whose own has0/has1 values change must
        itself be in touched_before so its neighbors enter the window.
        """
        before = self._window(touched_before)
        for X in before:
            self._contrib(X, -1)
        fn()
        after = self._window(
            touched_before if touched_after is None else touched_after
        )
        done = set()
        for X in before + after:
            if id(X) in done:
                continue
            done.add(id(X))
            if self._in_sequence(X):
                self._contrib(X, +1)

    # -- sequence DLL helpers ---------------------------------------------------

    def _insert_after(self, A, X):
        X.prev = A
        X.next = A.next
        if A.next is not None:
            A.next.prev = X
        else:
            self.last_class = X
        A.next = X

    def _insert_before(self, B, X):
        X.next = B
        X.prev = B.prev
        if B.prev is not None:
            B.prev.next = X
        else:
            self.first_class = X
        B.prev = X

    def _unlink_class(self, X):
        p, n = X.prev, X.next
        if p is not None:
            p.next = n
        else:
            self.first_class = n
        if n is not None:
            n.prev = p
        else:
            self.last_class = p
        X.prev = None
        X.next = None

    def classes(self):
        X = self.first_class
        while X is not None:
            yield X
            X = X.next

    # -- public state ---------------------------------------------------------

    def class_sets(self):
        return [sorted(self.class_cols(X)) for X in self.classes()]

    def labels(self):
        return [X.label() for X in self.classes()]

    def pool_label(self):
        if self.n_pool == 0:
            return "E"
        if self.n_pool == self.pool_size:
            return "F"
        return "P"

    def display_state(self):
        """(class_sets, labels) oriented so the lowest-id end comes first."""
        sets = self.class_sets()
        labels = self.labels()
        if sets and sets[0] and sets[-1] and min(sets[0]) > min(sets[-1]):
            sets.reverse()
            labels.reverse()
        return sets, labels

    # -- insertion ----------------------------------------------------------------

    def insert_row(self, cols):
        cols = list(cols)
        touched = {}
        new_cols = []
        for c in cols:
            if not 0 <= c < self.universe:
                raise ValueError(f"column {c} out of universe")
            X = self.col_class.get(c)
            if X is None:
                new_cols.append(c)
            else:
                touched.setdefault(id(X), (X, []))[1].append(c)
        if not touched:
            raise NoOverlap("row shares no column with the inserted union")

        any_class = next(iter(touched.values()))[0]
        left = any_class
        while left.prev is not None and id(left.prev) in touched:
            left = left.prev
        right = any_class
        while right.next is not None and id(right.next) in touched:
            right = right.next
        run = []
        X = left
        while True:
            run.append(X)
            if X is right:
                break
            X = X.next
        if len(run) != len(touched):
            raise NoOverlap("row does not cover a contiguous class run")
        for X in run[1:-1]:
            if len(touched[id(X)][1]) != X.c:
                raise NoOverlap("interior class only partially covered")

        left_partial = len(touched[id(left)][1]) != left.c
        right_partial = left is not right and len(touched[id(right)][1]) != right.c

        side = None
        if new_cols:
            if left is right:
                can_right = right is self.last_class
                can_left = left is self.first_class
            else:
                can_right = right is self.last_class and not right_partial
                can_left = left is self.first_class and not left_partial
            if can_right:
                side = "right"
            elif can_left:
                side = "left"
            else:
                raise NoOverlap("new columns cannot attach at either end")

        if left is right:
            if left_partial:
                self._split(left, touched[id(left)][1], covered_right=side != "left")
        else:
            if left_partial:
                self._split(left, touched[id(left)][1], covered_right=True)
            if right_partial:
                self._split(right, touched[id(right)][1], covered_right=False)

        if new_cols:
            newc = VennClass()
            anchor = self.last_class if side == "right" else self.first_class

            def attach():
                if side == "right":
                    self._insert_after(anchor, newc)
                else:
                    self._insert_before(anchor, newc)
                self._fill_class(newc, new_cols)

            self._edit([anchor], attach, [newc])

    def _split(self, X, covered_cols, covered_right):
        """Move the covered columns of X into a fresh adjacent class."""
        newc = VennClass()

        def do_move():
            for c in covered_cols:
                self._unlink_col(c)
            prev = None
            for c in covered_cols:
                self.col_class[c] = newc
                self.col_prev[c] = prev
                if prev is None:
                    newc.head = c
                else:
                    self.col_next[prev] = c
                prev = c
                newc.c += 1
                if c in self.z:
                    newc.n += 1
                self.total_moves += 1
            self.col_next[prev] = None
            newc.tail = prev
            if covered_right:
                self._insert_after(X, newc)
                if self.track_runs:
                    newc.cnt_end = X.cnt_end
                    X.cnt_end = 0
            else:
                self._insert_before(X, newc)
                if self.track_runs:
                    newc.cnt_start = X.cnt_start
                    X.cnt_start = 0

        self._edit([X], do_move, [X, newc])

    # -- run tracking for merges during column minimization -------------------------

    def attach_runs(self, rows):
        """Record per class how many of ``rows`` start/end their class runs there.

        Enables merging equal-membership neighbors when a class dies during
        column deletion; call once after all insertions.
        """
        pos = {}
        seq = []
        for i, X in enumerate(self.classes()):
            pos[id(X)] = i
            seq.append(X)
        for row in rows:
            lo = hi = None
            for c in row:
                X = self.col_class.get(c)
                if X is None:
                    continue
                p = pos[id(X)]
                if lo is None or p < lo:
                    lo = p
                if hi is None or p > hi:
                    hi = p
            if lo is not None:
                seq[lo].cnt_start += 1
                seq[hi].cnt_end += 1
        self.track_runs = True

    # -- verdict ---------------------------------------------------------------------

    def verdict_kind(self):
        if self.ones_runs >= 2 or self.mid_zero >= 1:
            return "1-0-1"
        if (self.zero_runs >= 2 or self.mid_one >= 1) and self.n_pool > 0:
            return "0-1-0"
        return None

    def violation(self):
        kind = self.verdict_kind()
        if kind is None:
            return ViolationVerdict(None)
        seq = list(self.classes())
        if kind == "1-0-1":
            ones = [i for i, X in enumerate(seq) if X.has1()]
            lo, hi = ones[0], ones[-1]
            mid = next(i for i in range(lo + 1, hi) if seq[i].has0())
            witness = (
                self._pick_col(seq[lo], one=True),
                self._pick_col(seq[mid], one=False),
                self._pick_col(seq[hi], one=True),
            )
        else:
            zeros = [i for i, X in enumerate(seq) if X.has0()]
            lo, hi = zeros[0], zeros[-1]
            mid = next(i for i in range(lo + 1, hi) if seq[i].has1())
            witness = (
                self._pick_col(seq[lo], one=False),
                self._pick_col(seq[mid], one=True),
                self._pick_col(seq[hi], one=False),
            )
        return ViolationVerdict(kind, witness)

    def _pick_col(self, X, one):
        c = X.head
        while c is not None:
            if (c in self.z) == one:
                return c
            c = self.col_next[c]
        raise AssertionError("class lacks a column of the requested kind")

    # -- column removal with undo -------------------------------------------------

    def remove_column(self, c):
        """Remove column c, returning a token that undo_remove accepts."""
        if not 0 <= c < self.universe:
            raise ValueError("column out of universe")
        X = self.col_class.get(c)
        if X is None:
            if c in self.z:
                self.n_pool -= 1
            self.pool_size -= 1
            return ("pool", c)
        dies = X.c == 1
        state = {"died": dies, "merge": None}
        touched = [X.prev, X, X.next] if dies else [X]

        def do_remove():
            p, n = self._unlink_col(c)
            state["pn"] = (p, n)
            if not dies:
                return
            A, B = X.prev, X.next
            state["neighbors"] = (A, B)
            self._unlink_class(X)
            if self.track_runs:
                if B is not None:
                    B.cnt_start += X.cnt_start
                if A is not None:
                    A.cnt_end += X.cnt_end
                if (
                    A is not None
                    and B is not None
                    and A.cnt_end == 0
                    and B.cnt_start == 0
                ):
                    state["merge"] = self._merge_raw(A, B)

        self._edit(touched, do_remove)
        return ("col", c, X, state)

    def undo_remove(self, token):
        if token[0] == "pool":
            c = token[1]
            if c in self.z:
                self.n_pool += 1
            self.pool_size += 1
            return
        _, c, X, state = token
        if not state["died"]:
            p, n = state["pn"]
            self._edit([X], lambda: self._relink_col(c, X, p, n))
            return
        A, B = state["neighbors"]

        def do_undo():
            if state["merge"] is not None:
                self._unmerge_raw(state["merge"])
            if self.track_runs:
                if B is not None:
                    B.cnt_start -= X.cnt_start
                if A is not None:
                    A.cnt_end -= X.cnt_end
            if A is not None:
                self._insert_after(A, X)
            elif B is not None:
                self._insert_before(B, X)
            else:
                self.first_class = X
                self.last_class = X
            p, n = state["pn"]
            self._relink_col(c, X, p, n)

        live = [Y for Y in (A, B) if Y is not None and self._in_sequence(Y)]
        if state["merge"] is not None:
            live = [state["merge"]["into"]]
        self._edit(live, do_undo, [Y for Y in (A, X, B) if Y is not None])

    def _merge_raw(self, A, B):
        """Splice adjacent equal-membership class B into A (raw, no _edit)."""
        info = {
            "into": A,
            "absorbed": B,
            "a_tail": A.tail,
            "moved_cols": self.class_cols(B),
        }
        for col in info["moved_cols"]:
            self.col_class[col] = A
        if A.tail is not None and B.head is not None:
            self.col_next[A.tail] = B.head
            self.col_prev[B.head] = A.tail
        if B.head is not None:
            if A.tail is None:
                A.head = B.head
            A.tail = B.tail
        A.c += B.c
        A.n += B.n
        A.cnt_start += B.cnt_start
        A.cnt_end += B.cnt_end
        self._unlink_class(B)
        return info

    def _unmerge_raw(self, info):
        A = info["into"]
        B = info["absorbed"]
        a_tail = info["a_tail"]
        for col in info["moved_cols"]:
            self.col_class[col] = B
        if a_tail is not None:
            self.col_next[a_tail] = None
        if B.head is not None:
            self.col_prev[B.head] = None
        B.tail = A.tail
        A.tail = a_tail
        if a_tail is None:
            A.head = None
        A.c -= B.c
        A.n -= B.n
        A.cnt_start -= B.cnt_start
        A.cnt_end -= B.cnt_end
        self._insert_after(A, B)


def new_sequence(z_cols, universe, first_row_cols):
    return VennSequence(z_cols, universe, first_row_cols)
