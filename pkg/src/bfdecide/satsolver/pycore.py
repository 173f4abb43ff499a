"""Pure-Python CDCL core.

Two-watched-literal propagation, first-UIP learning, VSIDS branching with
decay 0.95, phase saving (initial phase false), Luby restarts (base 64),
and LBD-based deletion once the learned database exceeds 4x the original
clause count.  No preprocessing beyond unit propagation at level 0.

Literals are encoded internally as 2*var (positive) / 2*var + 1 (negative),
vars 0-based.  The compiled core in ``_ccore`` implements the identical
algorithm; this module is the fallback selected at import time.
"""

from __future__ import annotations

import time

UNDEF = -1

VAR_DECAY = 0.95
RESTART_BASE = 64
LEARNED_FACTOR = 4.0


def luby(i: int) -> int:
    """i-th term (1-based) of the Luby sequence 1,1,2,1,1,2,4,..."""
    while True:
        k = i.bit_length()
        if i == (1 << k) - 1:
            return 1 << (k - 1)
        i -= (1 << (k - 1)) - 1


class _Solver:
    def __init__(self, num_vars, clauses):
        v = num_vars
        self.nvars = v
        self.clauses = []  # list of lists, watched lits in slots 0/1
        self.learned_from = None  # index where learned clauses start
        self.watches = [[] for _ in range(2 * v)]
        self.val = [UNDEF] * v
        self.level = [0] * v
        self.reason = [-1] * v
        self.trail = []
        self.trail_lim = []
        self.qhead = 0
        self.activity = [0.0] * v
        self.var_inc = 1.0
        self.polarity = [False] * v
        self.heap = []  # lazy max-heap of (-activity, var)
        self.lbd = {}  # clause index -> LBD, learned only
        self.conflicts = 0
        self.decisions = 0
        self.propagations = 0
        self.ok = True
        for cl in clauses:
            if not self._add_clause(cl):
                self.ok = False
                break
        self.n_original = len(self.clauses)

    # --- clause plumbing ---

    def _add_clause(self, ext_lits):
        lits = []
        seen = set()
        for e in ext_lits:
            l = 2 * (e - 1) if e > 0 else 2 * (-e - 1) + 1
            if l ^ 1 in seen:
                return True  # tautology
            if l not in seen:
                seen.add(l)
                lits.append(l)
        if len(lits) == 1:
            return self._enqueue(lits[0], -1)
        ci = len(self.clauses)
        self.clauses.append(lits)
        self.watches[lits[0]].append(ci)
        self.watches[lits[1]].append(ci)
        return True

    def _lit_value(self, l):
        v = self.val[l >> 1]
        return UNDEF if v == UNDEF else v ^ (l & 1)

    def _enqueue(self, l, reason):
        cur = self._lit_value(l)
        if cur == 0:
            return False  # literal already false: conflict
        if cur == 1:
            return True
        self.val[l >> 1] = (l & 1) ^ 1
        self.level[l >> 1] = len(self.trail_lim)
        self.reason[l >> 1] = reason
        self.trail.append(l)
        return True

    # --- propagation ---

    def _propagate(self):
        while self.qhead < len(self.trail):
            p = self.trail[self.qhead]
            self.qhead += 1
            self.propagations += 1
            falsified = p ^ 1
            ws = self.watches[falsified]
            keep = []
            conflict = -1
            i = 0
            while i < len(ws):
                ci = ws[i]
                i += 1
                lits = self.clauses[ci]
                if lits[0] == falsified:
                    lits[0], lits[1] = lits[1], lits[0]
                if self._lit_value(lits[0]) == 1:
                    keep.append(ci)
                    continue
                moved = False
                for k in range(2, len(lits)):
                    if self._lit_value(lits[k]) != 0:
                        lits[1], lits[k] = lits[k], lits[1]
                        self.watches[lits[1]].append(ci)
                        moved = True
                        break
                if moved:
                    continue
                keep.append(ci)
                if not self._enqueue(lits[0], ci):
                    conflict = ci
                    keep.extend(ws[i:])
                    break
            del ws[:]
            ws.extend(keep)
            if conflict >= 0:
                return conflict
        return -1

    # --- VSIDS ---

    def _bump(self, v):
        self.activity[v] += self.var_inc
        if self.activity[v] > 1e100:
            for u in range(self.nvars):
                self.activity[u] *= 1e-100
            self.var_inc *= 1e-100
        import heapq

        heapq.heappush(self.heap, (-self.activity[v], v))

    def _decay(self):
        self.var_inc /= VAR_DECAY

    def _pick_branch_var(self):
        import heapq

        while self.heap:
            act, v = heapq.heappop(self.heap)
            if self.val[v] == UNDEF and -act == self.activity[v]:
                return v
        for v in range(self.nvars):
            if self.val[v] == UNDEF:
                return v
        return -1

    # --- conflict analysis (first UIP) ---

    def _analyze(self, confl):
        learnt = []
        seen = [False] * self.nvars
        counter = 0
        p = -1
        index = len(self.trail) - 1
        cur_level = len(self.trail_lim)
        while True:
            lits = self.clauses[confl]
            for k in range(0 if p == -1 else 1, len(lits)):
                q = lits[k]
                v = q >> 1
                if not seen[v] and self.level[v] > 0:
                    seen[v] = True
                    self._bump(v)
                    if self.level[v] >= cur_level:
                        counter += 1
                    else:
                        learnt.append(q)
            while not seen[self.trail[index] >> 1]:
                index -= 1
            p = self.trail[index]
            v = p >> 1
            confl = self.reason[v]
            seen[v] = False
            counter -= 1
            index -= 1
            if counter == 0:
                break
        learnt.insert(0, p ^ 1)
        if len(learnt) == 1:
            back_level = 0
        else:
            # second-highest level goes to slot 1 for watching
            best = 1
            for k in range(2, len(learnt)):
                if self.level[learnt[k] >> 1] > self.level[learnt[best] >> 1]:
                    best = k
            learnt[1], learnt[best] = learnt[best], learnt[1]
            back_level = self.level[learnt[1] >> 1]
        levels = {self.level[l >> 1] for l in learnt}
        return learnt, back_level, len(levels)

    def _backtrack(self, blevel):
        while len(self.trail_lim) > blevel:
            mark = self.trail_lim.pop()
            for l in reversed(self.trail[mark:]):
                v = l >> 1
                self.polarity[v] = bool(self.val[v])
                self.val[v] = UNDEF
                self.reason[v] = -1
                self._bump_reinsert(v)
            del self.trail[mark:]
        self.qhead = len(self.trail)

    def _bump_reinsert(self, v):
        import heapq

        heapq.heappush(self.heap, (-self.activity[v], v))

    # --- learned clause DB reduction ---

    def _reduce_db(self):
        start = self.n_original
        learned = [
            ci
            for ci in range(start, len(self.clauses))
            if self.clauses[ci] is not None
        ]
        learned.sort(key=lambda ci: self.lbd.get(ci, 0))
        locked = {self.reason[l >> 1] for l in self.trail}
        drop = set()
        for ci in learned[len(learned) // 2 :]:
            if ci in locked or self.lbd.get(ci, 9) <= 2 or len(self.clauses[ci]) <= 2:
                continue
            drop.add(ci)
        if not drop:
            return
        for ci in drop:
            self.clauses[ci] = None
            self.lbd.pop(ci, None)
        for ws in self.watches:
            ws[:] = [ci for ci in ws if self.clauses[ci] is not None]

    def _live_learned(self):
        return sum(
            1 for ci in range(self.n_original, len(self.clauses)) if self.clauses[ci]
        )

    # --- main loop ---

    def solve(self, budget_s):
        start_time = time.perf_counter()
        if not self.ok:
            return "unsat", None
        if self._propagate() >= 0:
            return "unsat", None
        restart_run = 1
        conflicts_this_run = 0
        while True:
            confl = self._propagate()
            if confl >= 0:
                self.conflicts += 1
                conflicts_this_run += 1
                if len(self.trail_lim) == 0:
                    return "unsat", None
                learnt, blevel, lbd = self._analyze(confl)
                self._backtrack(blevel)
                if len(learnt) == 1:
                    self._enqueue(learnt[0], -1)
                else:
                    ci = len(self.clauses)
                    self.clauses.append(learnt)
                    self.watches[learnt[0]].append(ci)
                    self.watches[learnt[1]].append(ci)
                    self.lbd[ci] = lbd
                    self._enqueue(learnt[0], ci)
                self._decay()
                if self._live_learned() > LEARNED_FACTOR * max(self.n_original, 100):
                    self._reduce_db()
                continue
            if budget_s is not None and time.perf_counter() - start_time > budget_s:
                return "timeout", None
            if conflicts_this_run >= RESTART_BASE * luby(restart_run):
                restart_run += 1
                conflicts_this_run = 0
                self._backtrack(0)
                continue
            v = self._pick_branch_var()
            if v < 0:
                model = [bool(x) for x in self.val]
                return "sat", model
            self.decisions += 1
            self.trail_lim.append(len(self.trail))
            self._enqueue(2 * v + (0 if self.polarity[v] else 1), -1)


def solve_cnf(num_vars, clauses, budget_s=None, seed=0):
    """Returns (status, model, stats); model is a bool list indexed var-1.

    Fully deterministic; the seed is accepted for interface parity and
    recorded in the stats.
    """
    t0 = time.perf_counter()
    solver = _Solver(num_vars, clauses)
    status, model = solver.solve(budget_s)
    stats = {
        "conflicts": solver.conflicts,
        "decisions": solver.decisions,
        "propagations": solver.propagations,
        "wall_s": time.perf_counter() - t0,
        "seed": seed,
        "core": "python",
    }
    return status, model, stats
