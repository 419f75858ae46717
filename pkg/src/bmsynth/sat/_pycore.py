"""Pure-Python CDCL kernel.

Two-literal watching, first-UIP learning, VSIDS with phase saving, Luby
restarts and LBD-guided clause-database reduction.  The compiled kernel in
``_core.pyx`` implements the same procedure on C arrays; this module is the
fallback selected when the extension is unavailable.

Literals are internal: variable v (0-based) gives literals 2v (positive)
and 2v+1 (negated).  ``solve`` returns 10 (SAT), 20 (UNSAT) or 0 (budget
exhausted before an answer).
"""

from __future__ import annotations

import time

SAT = 10
UNSAT = 20
UNKNOWN = 0

_RESCALE = 1e100
_INV_DECAY = 1.0 / 0.95
_LUBY_UNIT = 100


def luby(i: int) -> int:
    """i-th element (1-based) of the Luby restart sequence."""
    k = 1
    while (1 << (k + 1)) <= i + 1:
        k += 1
    while (1 << k) - 1 != i:
        if (1 << k) <= i + 1:
            i -= (1 << k) - 1
            k = 1
            while (1 << (k + 1)) <= i + 1:
                k += 1
        else:
            k -= 1
    return 1 << k


class PyKernel:
    def __init__(self):
        self.nvars = 0
        self.ok = True
        # per-variable state
        self.assigns: list[int] = []  # -1 unassigned / 0 false / 1 true
        self.level: list[int] = []
        self.reason: list[int] = []  # clause index or -1
        self.activity: list[float] = []
        self.phase: list[int] = []  # saved polarity, 1 = positive
        self.seen: bytearray = bytearray()
        self.heap: list[int] = []  # max-heap of vars by activity
        self.heap_pos: list[int] = []  # -1 when not in heap
        # clause database
        self.clauses: list[list[int]] = []
        self.learnt: list[int] = []  # 0 original / 1 learnt
        self.lbd: list[int] = []
        self.n_original = 0
        self.watches: list[list[int]] = []
        # trail
        self.trail: list[int] = []
        self.trail_lim: list[int] = []
        self.qhead = 0
        self.var_inc = 1.0
        # stats
        self.conflicts = 0
        self.decisions = 0
        self.propagations = 0
        self._model: list[int] = []
        self._reduce_cap = 4000

    # -- variables ------------------------------------------------------

    def ensure_vars(self, n: int) -> None:
        while self.nvars < n:
            v = self.nvars
            self.nvars += 1
            self.assigns.append(-1)
            self.level.append(0)
            self.reason.append(-1)
            self.activity.append(0.0)
            self.phase.append(0)
            self.seen.append(0)
            self.heap_pos.append(-1)
            self.watches.append([])
            self.watches.append([])
            self._heap_insert(v)

    def value(self, lit: int) -> int:
        a = self.assigns[lit >> 1]
        return a if a < 0 else a ^ (lit & 1)

    # -- activity heap ----------------------------------------------------

    def _heap_less(self, a: int, b: int) -> bool:
        # b orders above a: higher activity wins, ties to the smaller index
        aa, ab = self.activity[a], self.activity[b]
        return aa < ab or (aa == ab and a > b)

    def _heap_up(self, i: int) -> None:
        h, pos = self.heap, self.heap_pos
        v = h[i]
        while i > 0:
            p = (i - 1) >> 1
            if self._heap_less(h[p], v):
                h[i] = h[p]
                pos[h[p]] = i
                i = p
            else:
                break
        h[i] = v
        pos[v] = i

    def _heap_down(self, i: int) -> None:
        h, pos = self.heap, self.heap_pos
        v = h[i]
        n = len(h)
        while True:
            l = 2 * i + 1
            if l >= n:
                break
            r = l + 1
            c = r if r < n and self._heap_less(h[l], h[r]) else l
            if self._heap_less(v, h[c]):
                h[i] = h[c]
                pos[h[c]] = i
                i = c
            else:
                break
        h[i] = v
        pos[v] = i

    def _heap_insert(self, v: int) -> None:
        if self.heap_pos[v] >= 0:
            return
        self.heap.append(v)
        self.heap_pos[v] = len(self.heap) - 1
        self._heap_up(len(self.heap) - 1)

    def _heap_pop(self) -> int:
        h, pos = self.heap, self.heap_pos
        top = h[0]
        pos[top] = -1
        last = h.pop()
        if h:
            h[0] = last
            pos[last] = 0
            self._heap_down(0)
        return top

    def _bump(self, v: int) -> None:
        self.activity[v] += self.var_inc
        if self.activity[v] > _RESCALE:
            inv = 1.0 / _RESCALE
            for i in range(self.nvars):
                self.activity[i] *= inv
            self.var_inc *= inv
        if self.heap_pos[v] >= 0:
            self._heap_up(self.heap_pos[v])

    # -- clauses ----------------------------------------------------------

    def add_clause(self, ext_lits: list[int]) -> bool:
        """Add a clause (external signed literals) at decision level 0."""
        if self.trail_lim:
            self.cancel_until(0)
        if not self.ok:
            return False
        lits: list[int] = []
        seen: set[int] = set()
        for el in ext_lits:
            v = abs(el) - 1
            self.ensure_vars(v + 1)
            lit = 2 * v + (1 if el < 0 else 0)
            if lit ^ 1 in seen:
                return True  # tautology
            if lit in seen:
                continue
            val = self.value(lit)
            if val == 1:
                return True  # already satisfied at root
            if val == 0:
                continue  # root-level false literal
            seen.add(lit)
            lits.append(lit)
        if not lits:
            self.ok = False
            return False
        if len(lits) == 1:
            self._enqueue(lits[0], -1)
            if self._propagate() != -1:
                self.ok = False
                return False
            return True
        self._attach(lits, 0, 0)
        return True

    def _attach(self, lits: list[int], is_learnt: int, lbd: int) -> int:
        ci = len(self.clauses)
        self.clauses.append(lits)
        self.learnt.append(is_learnt)
        self.lbd.append(lbd)
        if not is_learnt:
            self.n_original += 1
        self.watches[lits[0]].append(ci)
        self.watches[lits[1]].append(ci)
        return ci

    # -- trail ------------------------------------------------------------

    def _enqueue(self, lit: int, reason: int) -> None:
        v = lit >> 1
        self.assigns[v] = (lit & 1) ^ 1
        self.level[v] = len(self.trail_lim)
        self.reason[v] = reason
        self.trail.append(lit)

    def cancel_until(self, lvl: int) -> None:
        if len(self.trail_lim) <= lvl:
            return
        bound = self.trail_lim[lvl]
        for i in range(len(self.trail) - 1, bound - 1, -1):
            lit = self.trail[i]
            v = lit >> 1
            self.phase[v] = self.assigns[v]
            self.assigns[v] = -1
            self.reason[v] = -1
            self._heap_insert(v)
        del self.trail[bound:]
        del self.trail_lim[lvl:]
        self.qhead = bound

    # -- propagation --------------------------------------------------------

    def _propagate(self) -> int:
        """Unit propagation; returns a conflicting clause index or -1."""
        clauses = self.clauses
        while self.qhead < len(self.trail):
            p = self.trail[self.qhead]
            self.qhead += 1
            self.propagations += 1
            false_lit = p ^ 1
            ws = self.watches[false_lit]
            i = j = 0
            n = len(ws)
            while i < n:
                ci = ws[i]
                i += 1
                c = clauses[ci]
                if c[0] == false_lit:
                    c[0] = c[1]
                    c[1] = false_lit
                first = c[0]
                if self.value(first) == 1:
                    ws[j] = ci
                    j += 1
                    continue
                moved = False
                for k in range(2, len(c)):
                    if self.value(c[k]) != 0:
                        c[1] = c[k]
                        c[k] = false_lit
                        self.watches[c[1]].append(ci)
                        moved = True
                        break
                if moved:
                    continue
                ws[j] = ci
                j += 1
                if self.value(first) == 0:
                    while i < n:
                        ws[j] = ws[i]
                        j += 1
                        i += 1
                    del ws[j:]
                    self.qhead = len(self.trail)
                    return ci
                self._enqueue(first, ci)
            del ws[j:]
        return -1

    # -- conflict analysis ---------------------------------------------------

    def _analyze(self, confl: int) -> tuple[list[int], int, int]:
        """First-UIP learning: returns (learnt clause, backjump level, LBD)."""
        learnt = [0]
        seen = self.seen
        cur_level = len(self.trail_lim)
        counter = 0
        p = -1
        idx = len(self.trail) - 1
        while True:
            c = self.clauses[confl]
            start = 0 if p == -1 else 1
            for k in range(start, len(c)):
                q = c[k]
                v = q >> 1
                if not seen[v] and self.level[v] > 0:
                    seen[v] = 1
                    self._bump(v)
                    if self.level[v] >= cur_level:
                        counter += 1
                    else:
                        learnt.append(q)
            while not seen[self.trail[idx] >> 1]:
                idx -= 1
            p = self.trail[idx]
            idx -= 1
            v = p >> 1
            seen[v] = 0
            counter -= 1
            if counter == 0:
                break
            confl = self.reason[v]
        learnt[0] = p ^ 1
        # backjump to the second-highest level; move a witness to slot 1
        bt = 0
        if len(learnt) > 1:
            mi = 1
            for k in range(2, len(learnt)):
                if self.level[learnt[k] >> 1] > self.level[learnt[mi] >> 1]:
                    mi = k
            learnt[1], learnt[mi] = learnt[mi], learnt[1]
            bt = self.level[learnt[1] >> 1]
        levels = set()
        for q in learnt:
            seen[q >> 1] = 0
            levels.add(self.level[q >> 1])
        return learnt, bt, len(levels)

    # -- clause database reduction ---------------------------------------------

    def _locked(self, ci: int) -> bool:
        c = self.clauses[ci]
        v = c[0] >> 1
        return self.reason[v] == ci and self.assigns[v] != -1

    def _reduce_db(self) -> None:
        keep = [False] * len(self.clauses)
        removable = []
        for ci in range(len(self.clauses)):
            if not self.learnt[ci] or self.lbd[ci] <= 2 or self._locked(ci):
                keep[ci] = True
            else:
                removable.append(ci)
        removable.sort(key=lambda ci: (self.lbd[ci], len(self.clauses[ci]), -ci))
        for ci in removable[: len(removable) // 2]:
            keep[ci] = True
        remap = [-1] * len(self.clauses)
        clauses, learnt, lbd = [], [], []
        for ci in range(len(self.clauses)):
            if keep[ci]:
                remap[ci] = len(clauses)
                clauses.append(self.clauses[ci])
                learnt.append(self.learnt[ci])
                lbd.append(self.lbd[ci])
        self.clauses, self.learnt, self.lbd = clauses, learnt, lbd
        for v in range(self.nvars):
            if self.reason[v] >= 0:
                self.reason[v] = remap[self.reason[v]]
        for lit in range(2 * self.nvars):
            self.watches[lit].clear()
        for ci, c in enumerate(clauses):
            self.watches[c[0]].append(ci)
            self.watches[c[1]].append(ci)
        self._reduce_cap += 500

    # -- main search -------------------------------------------------------------

    def _pick_branch(self) -> int:
        while self.heap:
            v = self.heap[0]
            if self.assigns[v] == -1:
                return self._heap_pop()
            self._heap_pop()
        return -1

    def solve(self, assumptions: list[int] = (), max_conflicts: int = -1,
              deadline: float = -1.0) -> int:
        self.cancel_until(0)
        if not self.ok:
            return UNSAT
        if self._propagate() != -1:
            self.ok = False
            return UNSAT
        assume = []
        for el in assumptions:
            v = abs(el) - 1
            self.ensure_vars(v + 1)
            assume.append(2 * v + (1 if el < 0 else 0))
        start_conflicts = self.conflicts
        restart_num = 0
        restart_budget = luby(restart_num) * _LUBY_UNIT
        conflicts_here = 0
        while True:
            confl = self._propagate()
            if confl != -1:
                self.conflicts += 1
                conflicts_here += 1
                if not self.trail_lim:
                    self.ok = False
                    return UNSAT
                learnt, bt, lbd = self._analyze(confl)
                self.cancel_until(bt)
                if len(learnt) == 1:
                    self._enqueue(learnt[0], -1)
                else:
                    ci = self._attach(learnt, 1, lbd)
                    self._enqueue(learnt[0], ci)
                self.var_inc *= _INV_DECAY
                if max_conflicts >= 0 and self.conflicts - start_conflicts >= max_conflicts:
                    self.cancel_until(0)
                    return UNKNOWN
                if deadline >= 0 and self.conflicts % 256 == 0 and time.monotonic() > deadline:
                    self.cancel_until(0)
                    return UNKNOWN
                continue
            if conflicts_here >= restart_budget:
                restart_num += 1
                restart_budget = luby(restart_num) * _LUBY_UNIT
                conflicts_here = 0
                self.cancel_until(0)
                continue
            if len(self.clauses) - self.n_original >= self._reduce_cap:
                self._reduce_db()
            lvl = len(self.trail_lim)
            if lvl < len(assume):
                p = assume[lvl]
                val = self.value(p)
                if val == 0:
                    return UNSAT
                self.trail_lim.append(len(self.trail))
                if val == -1:
                    self._enqueue(p, -1)
                continue
            v = self._pick_branch()
            if v == -1:
                self._model = list(self.assigns)
                return SAT
            self.decisions += 1
            self.trail_lim.append(len(self.trail))
            self._enqueue(2 * v + ((self.phase[v]) ^ 1), -1)

    def model(self) -> list[int]:
        return self._model
