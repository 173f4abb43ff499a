# distutils: language = c++
# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled CDCL core: same algorithm as pycore, hot loops in C.

Two-watched-literal propagation, first-UIP learning, VSIDS (decay 0.95)
on an indexed max-heap, phase saving (initial false), Luby restarts
(base 64), LBD-based deletion at 4x the original clause count.
"""

import time

from libcpp.vector cimport vector

cdef int UNDEF = -1
cdef double VAR_DECAY = 0.95
cdef int RESTART_BASE = 64
cdef double LEARNED_FACTOR = 4.0


cdef long long luby(long long i):
    cdef long long k, t
    while True:
        k = 0
        t = i
        while t:
            t >>= 1
            k += 1
        if i == (1 << k) - 1:
            return 1 << (k - 1)
        i -= (1 << (k - 1)) - 1


cdef class CSolver:
    cdef int nvars
    cdef vector[int] arena
    cdef vector[int] cstart
    cdef vector[int] csize
    cdef vector[signed char] cdead
    cdef vector[int] clbd
    cdef int n_original
    cdef vector[vector[int]] watches
    cdef vector[signed char] val
    cdef vector[int] level
    cdef vector[int] reason
    cdef vector[int] trail
    cdef vector[int] trail_lim
    cdef int qhead
    cdef vector[double] activity
    cdef double var_inc
    cdef vector[signed char] polarity
    cdef vector[signed char] seen
    cdef vector[int] heap
    cdef vector[int] heap_pos
    cdef public long long conflicts
    cdef public long long decisions
    cdef public long long propagations
    cdef public int ok
    cdef int live_learned

    def __init__(self, int num_vars, clauses):
        cdef int v, i
        self.nvars = num_vars
        self.watches.resize(2 * num_vars)
        self.val.assign(num_vars, UNDEF)
        self.level.assign(num_vars, 0)
        self.reason.assign(num_vars, -1)
        self.activity.assign(num_vars, 0.0)
        self.polarity.assign(num_vars, 0)
        self.seen.assign(num_vars, 0)
        self.heap_pos.assign(num_vars, -1)
        self.var_inc = 1.0
        self.qhead = 0
        self.conflicts = 0
        self.decisions = 0
        self.propagations = 0
        self.live_learned = 0
        self.ok = 1
        for v in range(num_vars):
            self.heap_insert(v)
        for cl in clauses:
            if not self.add_clause(cl):
                self.ok = 0
                break
        self.n_original = <int>self.cstart.size()

    # --- heap (max by activity, ties to lower var) ---

    cdef bint heap_less(self, int a, int b):
        if self.activity[a] != self.activity[b]:
            return self.activity[a] > self.activity[b]
        return a < b

    cdef void heap_up(self, int i):
        cdef int v = self.heap[i], p
        while i > 0:
            p = (i - 1) >> 1
            if self.heap_less(v, self.heap[p]):
                self.heap[i] = self.heap[p]
                self.heap_pos[self.heap[i]] = i
                i = p
            else:
                break
        self.heap[i] = v
        self.heap_pos[v] = i

    cdef void heap_down(self, int i):
        cdef int v = self.heap[i], n = <int>self.heap.size(), c
        while True:
            c = 2 * i + 1
            if c >= n:
                break
            if c + 1 < n and self.heap_less(self.heap[c + 1], self.heap[c]):
                c += 1
            if self.heap_less(self.heap[c], v):
                self.heap[i] = self.heap[c]
                self.heap_pos[self.heap[i]] = i
                i = c
            else:
                break
        self.heap[i] = v
        self.heap_pos[v] = i

    cdef void heap_insert(self, int v):
        if self.heap_pos[v] >= 0:
            return
        self.heap.push_back(v)
        self.heap_up(<int>self.heap.size() - 1)

    cdef int heap_pop(self):
        cdef int top = self.heap[0], last
        self.heap_pos[top] = -1
        last = self.heap[self.heap.size() - 1]
        self.heap.pop_back()
        if self.heap.size() > 0:
            self.heap[0] = last
            self.heap_pos[last] = 0
            self.heap_down(0)
        return top

    # --- clauses ---

    cdef bint add_clause(self, cl):
        cdef int l, ci
        lits = []
        seen = set()
        for e in cl:
            l = 2 * (e - 1) if e > 0 else 2 * (-e - 1) + 1
            if (l ^ 1) in seen:
                return True
            if l not in seen:
                seen.add(l)
                lits.append(l)
        if len(lits) == 1:
            return self.enqueue(lits[0], -1)
        ci = <int>self.cstart.size()
        self.cstart.push_back(<int>self.arena.size())
        self.csize.push_back(<int>len(lits))
        self.cdead.push_back(0)
        self.clbd.push_back(0)
        for l in lits:
            self.arena.push_back(l)
        self.watches[lits[0]].push_back(ci)
        self.watches[lits[1]].push_back(ci)
        return True

    cdef int lit_value(self, int l):
        cdef signed char v = self.val[l >> 1]
        if v == UNDEF:
            return UNDEF
        return v ^ (l & 1)

    cdef bint enqueue(self, int l, int reason):
        cdef int cur = self.lit_value(l)
        if cur == 0:
            return False
        if cur == 1:
            return True
        self.val[l >> 1] = <signed char>((l & 1) ^ 1)
        self.level[l >> 1] = <int>self.trail_lim.size()
        self.reason[l >> 1] = reason
        self.trail.push_back(l)
        return True

    cdef int propagate(self):
        cdef int p, falsified, i, j, ci, k, start, size, other, l
        cdef bint moved
        cdef vector[int]* ws
        while self.qhead < <int>self.trail.size():
            p = self.trail[self.qhead]
            self.qhead += 1
            self.propagations += 1
            falsified = p ^ 1
            ws = &self.watches[falsified]
            i = 0
            j = 0
            while i < <int>ws[0].size():
                ci = ws[0][i]
                i += 1
                start = self.cstart[ci]
                size = self.csize[ci]
                if self.arena[start] == falsified:
                    self.arena[start] = self.arena[start + 1]
                    self.arena[start + 1] = falsified
                other = self.arena[start]
                if self.lit_value(other) == 1:
                    ws[0][j] = ci
                    j += 1
                    continue
                moved = False
                for k in range(2, size):
                    l = self.arena[start + k]
                    if self.lit_value(l) != 0:
                        self.arena[start + 1] = l
                        self.arena[start + k] = falsified
                        self.watches[l].push_back(ci)
                        moved = True
                        break
                if moved:
                    continue
                ws[0][j] = ci
                j += 1
                if not self.enqueue(other, ci):
                    while i < <int>ws[0].size():
                        ws[0][j] = ws[0][i]
                        j += 1
                        i += 1
                    ws[0].resize(j)
                    return ci
            ws[0].resize(j)
        return -1

    cdef void bump(self, int v):
        cdef int u
        self.activity[v] += self.var_inc
        if self.activity[v] > 1e100:
            for u in range(self.nvars):
                self.activity[u] *= 1e-100
            self.var_inc *= 1e-100
        if self.heap_pos[v] >= 0:
            self.heap_up(self.heap_pos[v])

    cdef tuple analyze(self, int confl):
        cdef int counter = 0, p = -1, index, cur_level, k, q, v, start, size
        cdef int best, tmp, blevel
        learnt = []
        index = <int>self.trail.size() - 1
        cur_level = <int>self.trail_lim.size()
        while True:
            start = self.cstart[confl]
            size = self.csize[confl]
            for k in range(0 if p == -1 else 1, size):
                q = self.arena[start + k]
                v = q >> 1
                if not self.seen[v] and self.level[v] > 0:
                    self.seen[v] = 1
                    self.bump(v)
                    if self.level[v] >= cur_level:
                        counter += 1
                    else:
                        learnt.append(q)
            while not self.seen[self.trail[index] >> 1]:
                index -= 1
            p = self.trail[index]
            v = p >> 1
            confl = self.reason[v]
            self.seen[v] = 0
            counter -= 1
            index -= 1
            if counter == 0:
                break
        learnt.insert(0, p ^ 1)
        for q in learnt[1:]:
            self.seen[q >> 1] = 0
        if len(learnt) == 1:
            blevel = 0
        else:
            best = 1
            for k in range(2, len(learnt)):
                if self.level[learnt[k] >> 1] > self.level[learnt[best] >> 1]:
                    best = k
            tmp = learnt[1]
            learnt[1] = learnt[best]
            learnt[best] = tmp
            blevel = self.level[learnt[1] >> 1]
        levels = set()
        for q in learnt:
            levels.add(self.level[q >> 1])
        return learnt, blevel, len(levels)

    cdef void backtrack(self, int blevel):
        cdef int mark, l, v, i
        while <int>self.trail_lim.size() > blevel:
            mark = self.trail_lim[self.trail_lim.size() - 1]
            self.trail_lim.pop_back()
            i = <int>self.trail.size() - 1
            while i >= mark:
                l = self.trail[i]
                v = l >> 1
                self.polarity[v] = self.val[v]
                self.val[v] = UNDEF
                self.reason[v] = -1
                self.heap_insert(v)
                i -= 1
            self.trail.resize(mark)
        self.qhead = <int>self.trail.size()

    cdef void reduce_db(self):
        cdef int ci, l, i
        locked = set()
        for i in range(<int>self.trail.size()):
            l = self.trail[i]
            if self.reason[l >> 1] >= 0:
                locked.add(self.reason[l >> 1])
        learned = [
            ci
            for ci in range(self.n_original, <int>self.cstart.size())
            if not self.cdead[ci]
        ]
        learned.sort(key=lambda c: self.clbd[c])
        drop = []
        for ci in learned[len(learned) // 2 :]:
            if ci in locked or self.clbd[ci] <= 2 or self.csize[ci] <= 2:
                continue
            drop.append(ci)
        if not drop:
            return
        for ci in drop:
            self.cdead[ci] = 1
            self.live_learned -= 1
        cdef vector[int]* ws
        cdef int j, w
        for w in range(2 * self.nvars):
            ws = &self.watches[w]
            j = 0
            for i in range(<int>ws[0].size()):
                if not self.cdead[ws[0][i]]:
                    ws[0][j] = ws[0][i]
                    j += 1
            ws[0].resize(j)

    def run(self, budget_s):
        cdef int confl, v, ci, blevel, lbd
        cdef long long restart_run = 1, conflicts_this_run = 0, checked = 0
        cdef double t_start = time.perf_counter(), budget
        cdef bint has_budget = budget_s is not None
        budget = budget_s if has_budget else 0.0
        if not self.ok:
            return "unsat", None
        if self.propagate() >= 0:
            return "unsat", None
        while True:
            confl = self.propagate()
            if confl >= 0:
                self.conflicts += 1
                conflicts_this_run += 1
                if self.trail_lim.size() == 0:
                    return "unsat", None
                learnt, blevel, lbd = self.analyze(confl)
                self.backtrack(blevel)
                if len(learnt) == 1:
                    self.enqueue(learnt[0], -1)
                else:
                    ci = <int>self.cstart.size()
                    self.cstart.push_back(<int>self.arena.size())
                    self.csize.push_back(<int>len(learnt))
                    self.cdead.push_back(0)
                    self.clbd.push_back(lbd)
                    for l in learnt:
                        self.arena.push_back(l)
                    self.watches[learnt[0]].push_back(ci)
                    self.watches[learnt[1]].push_back(ci)
                    self.live_learned += 1
                    self.enqueue(learnt[0], ci)
                self.var_inc /= VAR_DECAY
                if self.live_learned > LEARNED_FACTOR * max(self.n_original, 100):
                    self.reduce_db()
                if has_budget and (self.conflicts & 255) == 0:
                    if time.perf_counter() - t_start > budget:
                        return "timeout", None
                continue
            if conflicts_this_run >= RESTART_BASE * luby(restart_run):
                restart_run += 1
                conflicts_this_run = 0
                self.backtrack(0)
                continue
            checked += 1
            if has_budget and (checked & 1023) == 0:
                if time.perf_counter() - t_start > budget:
                    return "timeout", None
            v = -1
            while self.heap.size() > 0:
                v = self.heap_pop()
                if self.val[v] == UNDEF:
                    break
                v = -1
            if v < 0:
                model = [bool(self.val[u]) for u in range(self.nvars)]
                return "sat", model
            self.decisions += 1
            self.trail_lim.push_back(<int>self.trail.size())
            self.enqueue(2 * v + (0 if self.polarity[v] else 1), -1)


def solve_cnf(num_vars, clauses, budget_s=None, seed=0):
    t0 = time.perf_counter()
    solver = CSolver(num_vars, clauses)
    status, model = solver.run(budget_s)
    stats = {
        "conflicts": solver.conflicts,
        "decisions": solver.decisions,
        "propagations": solver.propagations,
        "wall_s": time.perf_counter() - t0,
        "seed": seed,
        "core": "compiled",
    }
    return status, model, stats
