# cython: boundscheck=False, wraparound=False, language_level=3
"""Compiled kernels mirroring poscat._kernels.pure for relations of <= 64 elements."""

from libc.stdlib cimport free, malloc

ctypedef unsigned long long u64


cdef inline int _popcount(u64 x):
    cdef int c = 0
    while x:
        x &= x - 1
        c += 1
    return c


cdef inline int _lowest_bit(u64 x):
    cdef int i = 0
    while not (x & 1):
        x >>= 1
        i += 1
    return i


def transitive_closure(rows):
    cdef int n = len(rows)
    cdef int i, k
    cdef u64 bit, row_k
    cdef u64 *out = <u64 *> malloc(n * sizeof(u64))
    if out == NULL:
        raise MemoryError()
    try:
        for i in range(n):
            out[i] = <u64> rows[i] | (<u64> 1 << i)
        for k in range(n):
            bit = <u64> 1 << k
            row_k = out[k]
            for i in range(n):
                if out[i] & bit:
                    out[i] |= row_k
        return [out[i] for i in range(n)]
    finally:
        free(out)


cdef struct Cons:
    int other
    int code


cdef inline u64 _mask(int code, int w, u64 *up, u64 *down):
    if code == 0:
        return down[w]
    if code == 1:
        return up[w]
    if code == 2:
        return <u64> 1 << w
    if code == 3:
        return down[w] & ~(<u64> 1 << w)
    return up[w] & ~(<u64> 1 << w)


cdef class _Problem:
    cdef int n_slots, n_tgt
    cdef u64 full
    cdef u64 *up
    cdef u64 *down
    cdef u64 *base
    cdef Cons **nbrs
    cdef int *deg
    cdef int *values
    cdef bint infeasible

    def __cinit__(self, int n_slots, int n_tgt, up_rows, pairs, bint directed):
        cdef int i, j, kind, s
        cdef u64 diag = 0
        self.n_slots = n_slots
        self.n_tgt = n_tgt
        self.full = ((<u64> 1 << (n_tgt - 1)) << 1) - 1 if n_tgt else 0
        self.infeasible = False
        self.up = <u64 *> malloc(n_tgt * sizeof(u64))
        self.down = <u64 *> malloc(n_tgt * sizeof(u64))
        self.base = <u64 *> malloc((n_slots or 1) * sizeof(u64))
        self.deg = <int *> malloc((n_slots or 1) * sizeof(int))
        self.values = <int *> malloc((n_slots or 1) * sizeof(int))
        self.nbrs = <Cons **> malloc((n_slots or 1) * sizeof(Cons *))
        if (self.up == NULL or self.down == NULL or self.base == NULL
                or self.deg == NULL or self.values == NULL or self.nbrs == NULL):
            raise MemoryError()
        for s in range(n_slots):
            self.nbrs[s] = NULL
        for i in range(n_tgt):
            self.up[i] = <u64> up_rows[i]
            self.down[i] = 0
        for i in range(n_tgt):
            if self.up[i] & (<u64> 1 << i):
                diag |= <u64> 1 << i
            for j in range(n_tgt):
                if self.up[i] & (<u64> 1 << j):
                    self.down[j] |= <u64> 1 << i
        for s in range(n_slots):
            self.deg[s] = 0
            self.values[s] = -1
            self.base[s] = self.full
        # count then fill adjacency; `directed` keeps only earlier-slot links
        for i, j, kind in pairs:
            if i == j:
                if kind == 2:
                    self.infeasible = True
                elif kind == 0:
                    self.base[i] &= diag
                continue
            if directed:
                self.deg[max(i, j)] += 1
            else:
                self.deg[i] += 1
                self.deg[j] += 1
        for s in range(n_slots):
            self.nbrs[s] = <Cons *> malloc((self.deg[s] or 1) * sizeof(Cons))
            if self.nbrs[s] == NULL:
                raise MemoryError()
            self.deg[s] = 0
        for i, j, kind in pairs:
            if i == j:
                continue
            if directed:
                self._add_back(i, j, kind)
            else:
                self._add(i, j, kind)

    cdef void _push(self, int s, int other, int code):
        self.nbrs[s][self.deg[s]].other = other
        self.nbrs[s][self.deg[s]].code = code
        self.deg[s] += 1

    cdef void _add(self, int i, int j, int kind):
        if kind == 1:
            self._push(i, j, 2)
            self._push(j, i, 2)
        elif kind == 0:
            self._push(i, j, 0)
            self._push(j, i, 1)
        else:
            self._push(i, j, 3)
            self._push(j, i, 4)

    cdef void _add_back(self, int i, int j, int kind):
        cdef int lo = i if i < j else j
        cdef int hi = j if i < j else i
        if kind == 1:
            self._push(hi, lo, 2)
        elif kind == 0:
            self._push(hi, lo, 1 if hi == j else 0)
        else:
            self._push(hi, lo, 4 if hi == j else 3)

    def __dealloc__(self):
        cdef int s
        if self.nbrs != NULL:
            for s in range(self.n_slots):
                if self.nbrs[s] != NULL:
                    free(self.nbrs[s])
            free(self.nbrs)
        free(self.up)
        free(self.down)
        free(self.base)
        free(self.deg)
        free(self.values)

    cdef u64 _allowed(self, int s):
        cdef u64 mask = self.base[s]
        cdef int t, w
        for t in range(self.deg[s]):
            w = self.values[self.nbrs[s][t].other]
            if w >= 0:
                mask &= _mask(self.nbrs[s][t].code, w, self.up, self.down)
                if not mask:
                    break
        return mask


def count_maps(int n_slots, int n_tgt, up_rows, pairs):
    if n_slots == 0:
        return 1
    if n_tgt == 0:
        return 0
    prob = _Problem(n_slots, n_tgt, up_rows, pairs, False)
    if prob.infeasible:
        return 0
    todo = set(range(n_slots))
    return _count(prob, todo)


cdef object _count(_Problem p, set todo):
    cdef int s, t, c, v
    cdef u64 mask, bit
    cdef bint progress, ready
    if not todo:
        return 1
    prod = 1
    closed = []
    progress = True
    while progress:
        progress = False
        for s in sorted(todo):
            ready = True
            for t in range(p.deg[s]):
                if p.values[p.nbrs[s][t].other] < 0:
                    ready = False
                    break
            if ready:
                c = _popcount(p._allowed(s))
                if c == 0:
                    todo.update(closed)
                    return 0
                prod *= c
                todo.discard(s)
                closed.append(s)
                progress = True
    if not todo:
        todo.update(closed)
        return prod
    cdef int best = -1, best_k = -1, k
    for s in sorted(todo):
        k = 0
        for t in range(p.deg[s]):
            if p.values[p.nbrs[s][t].other] >= 0:
                k += 1
        if k > best_k:
            best_k = k
            best = s
    s = best
    todo.discard(s)
    total = 0
    mask = p._allowed(s)
    while mask:
        bit = mask & (~mask + 1)
        p.values[s] = _lowest_bit(bit)
        total += _count(p, todo)
        mask ^= bit
    p.values[s] = -1
    todo.add(s)
    todo.update(closed)
    return prod * total


def list_maps(int n_slots, int n_tgt, up_rows, pairs):
    if n_tgt == 0:
        return [()] if n_slots == 0 else []
    prob = _Problem(n_slots, n_tgt, up_rows, pairs, True)
    if prob.infeasible:
        return []
    out = []
    _enumerate(prob, 0, out)
    return out


cdef void _enumerate(_Problem p, int s, list out):
    cdef u64 mask, bit
    cdef int i
    if s == p.n_slots:
        out.append(tuple([p.values[i] for i in range(p.n_slots)]))
        return
    mask = p._allowed(s)
    while mask:
        bit = mask & (~mask + 1)
        p.values[s] = _lowest_bit(bit)
        _enumerate(p, s + 1, out)
        mask ^= bit
