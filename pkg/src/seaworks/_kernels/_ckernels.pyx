# cython: language_level=3
"""Compiled kernels; mirrors ``_pykernels`` exactly."""
from libc.math cimport sqrt, fabs
from libc.stdlib cimport malloc, free
from libc.string cimport memcpy

import numpy as np
cimport numpy as cnp

ctypedef unsigned long long u64

cdef extern from *:
    int __builtin_ctzll(u64)
    int __builtin_popcountll(u64)
    int __builtin_clzll(u64)

RULES = ("S1", "S2", "S3", "S4", "S5")

cdef enum:
    ST_NODES = 0
    ST_PRUNES = 1
    ST_SOLUTIONS = 2
    ST_S1 = 3
    ST_S2 = 4
    ST_S3 = 5
    ST_S4 = 6
    ST_S5 = 7
    ST_LEN = 8


cdef inline int _top(u64 m):
    return 63 - __builtin_clzll(m)


cdef struct Ctx:
    int n
    int zero
    int one
    int *sums
    int *comp
    int *triples
    int ntriples
    int *prio
    long stats[ST_LEN]
    int limit
    int *value
    char *comm
    int *ks


cdef inline u64 _img(Ctx *c, int x, u64 mask):
    cdef u64 out = 0
    cdef int y, s
    cdef int n = c.n
    while mask:
        y = __builtin_ctzll(mask)
        mask &= mask - 1
        s = c.sums[x * n + y]
        if s >= 0:
            out |= (<u64>1) << s
    return out


cdef inline int _unify(Ctx *c, u64 *dom, int i, int j, int rule):
    cdef u64 x = dom[i]
    cdef u64 y = dom[j]
    cdef u64 m = x & y
    if m == x and m == y:
        return 0
    if m == 0:
        return -1
    dom[i] = m
    dom[j] = m
    c.stats[rule] += 1
    return 1


cdef bint _propagate(Ctx *c, u64 *dom):
    cdef int n = c.n
    cdef int a, b, cc, d, t, base, x, y, s, e, i, r, k, nk, ai, bi
    cdef u64 db, dc, dd, nb, nc, nd, reach, im, m, ab, ba, nba
    cdef u64 zbit = (<u64>1) << c.zero
    cdef bint changed, row_changed
    while True:
        changed = False
        for a in range(n):
            base = a * n
            row_changed = True
            while row_changed:
                row_changed = False
                for t in range(c.ntriples):
                    b = c.triples[3 * t]
                    cc = c.triples[3 * t + 1]
                    d = c.triples[3 * t + 2]
                    db = dom[base + b]
                    dd = dom[base + d]
                    if b == cc:
                        nb = 0
                        reach = 0
                        m = db
                        while m:
                            x = __builtin_ctzll(m)
                            m &= m - 1
                            s = c.sums[x * n + x]
                            if s >= 0 and (dd >> s) & 1:
                                nb |= (<u64>1) << x
                                reach |= (<u64>1) << s
                        nd = dd & reach
                        if nb != db or nd != dd:
                            if nb == 0 or nd == 0:
                                return False
                            dom[base + b] = nb
                            dom[base + d] = nd
                            c.stats[ST_S1] += 1
                            row_changed = True
                        continue
                    dc = dom[base + cc]
                    nb = 0
                    reach = 0
                    m = db
                    while m:
                        x = __builtin_ctzll(m)
                        m &= m - 1
                        im = _img(c, x, dc)
                        if im & dd:
                            nb |= (<u64>1) << x
                            reach |= im
                    nd = dd & reach
                    nc = 0
                    m = dc
                    while m:
                        y = __builtin_ctzll(m)
                        m &= m - 1
                        if _img(c, y, nb) & nd:
                            nc |= (<u64>1) << y
                    if nb != db or nc != dc or nd != dd:
                        if nb == 0 or nc == 0 or nd == 0:
                            return False
                        dom[base + b] = nb
                        dom[base + cc] = nc
                        dom[base + d] = nd
                        c.stats[ST_S1] += 1
                        row_changed = True
        for a in range(n):
            for b in range(n):
                ab = dom[a * n + b]
                ba = dom[b * n + a]
                nba = ba
                if ab == zbit:
                    nba &= zbit
                if not (ab & zbit):
                    nba &= ~zbit
                if nba != ba:
                    if nba == 0:
                        return False
                    dom[b * n + a] = nba
                    c.stats[ST_S3] += 1
                    changed = True
        for i in range(n * n):
            m = dom[i]
            if m and not (m & (m - 1)):
                c.value[i] = _top(m)
            else:
                c.value[i] = -1
        for a in range(n):
            for b in range(a, n):
                r = c.value[a * n + b]
                if r >= 0 and r == c.value[b * n + a]:
                    c.comm[a * n + b] = 1
                    c.comm[b * n + a] = 1
                else:
                    c.comm[a * n + b] = 0
                    c.comm[b * n + a] = 0
        for a in range(n):
            for b in range(n):
                if not c.comm[a * n + b]:
                    continue
                x = c.comp[b]
                r = _unify(c, dom, a * n + x, x * n + a, ST_S4)
                if r < 0:
                    return False
                if r:
                    changed = True
                e = c.value[a * n + b]
                for cc in range(n):
                    d = c.value[b * n + cc]
                    if d < 0:
                        continue
                    r = _unify(c, dom, a * n + d, e * n + cc, ST_S4)
                    if r < 0:
                        return False
                    if r:
                        changed = True
        for cc in range(n):
            nk = 0
            for a in range(n):
                if c.comm[cc * n + a]:
                    c.ks[nk] = a
                    nk += 1
            for ai in range(nk):
                a = c.ks[ai]
                for bi in range(nk):
                    b = c.ks[bi]
                    d = c.value[a * n + b]
                    if d >= 0:
                        r = _unify(c, dom, cc * n + d, d * n + cc, ST_S5)
                        if r < 0:
                            return False
                        if r:
                            changed = True
                    s = c.sums[a * n + b]
                    if s >= 0:
                        r = _unify(c, dom, cc * n + s, s * n + cc, ST_S5)
                        if r < 0:
                            return False
                        if r:
                            changed = True
        if not changed:
            return True


cdef bint _recurse(Ctx *c, u64 *dom, list solutions) except -1:
    cdef int n = c.n
    cdef int nn = n * n
    cdef int i, best, pc, best_pc, best_prio, v
    cdef u64 m
    cdef u64 *child
    c.stats[ST_NODES] += 1
    if not _propagate(c, dom):
        c.stats[ST_PRUNES] += 1
        return False
    best = -1
    best_pc = 0
    best_prio = 0
    for i in range(nn):
        m = dom[i]
        if m & (m - 1):
            pc = __builtin_popcountll(m)
            if best < 0 or pc < best_pc or (pc == best_pc and c.prio[i] < best_prio):
                best = i
                best_pc = pc
                best_prio = c.prio[i]
    if best < 0:
        solutions.append(tuple([_top(dom[i]) for i in range(nn)]))
        c.stats[ST_SOLUTIONS] += 1
        return len(solutions) >= c.limit
    child = <u64 *> malloc(nn * sizeof(u64))
    if child == NULL:
        raise MemoryError()
    try:
        m = dom[best]
        while m:
            v = __builtin_ctzll(m)
            m &= m - 1
            memcpy(child, dom, nn * sizeof(u64))
            child[best] = (<u64>1) << v
            if _recurse(c, child, solutions):
                return True
    finally:
        free(child)
    return False


def search_products(int n, sums, le, comp, int zero, int one, cell_order, int limit):
    """Compiled twin of ``_pykernels.search_products``."""
    if n > 64:
        raise ValueError("carrier larger than 64 elements")
    cdef Ctx c
    cdef int i, a, b, d, nt
    cdef u64 *dom
    cdef list solutions = []
    c.n = n
    c.zero = zero
    c.one = one
    c.limit = limit
    for i in range(ST_LEN):
        c.stats[i] = 0
    c.sums = <int *> malloc(n * n * sizeof(int))
    c.comp = <int *> malloc(n * sizeof(int))
    c.triples = <int *> malloc(3 * n * n * sizeof(int))
    c.prio = <int *> malloc(n * n * sizeof(int))
    c.value = <int *> malloc(n * n * sizeof(int))
    c.comm = <char *> malloc(n * n * sizeof(char))
    c.ks = <int *> malloc(n * sizeof(int))
    dom = <u64 *> malloc(n * n * sizeof(u64))
    try:
        for a in range(n):
            c.comp[a] = comp[a]
            for b in range(n):
                c.sums[a * n + b] = sums[a][b]
        nt = 0
        for b in range(n):
            for i in range(b, n):
                d = sums[b][i]
                if d >= 0 and b != zero and i != zero:
                    c.triples[3 * nt] = b
                    c.triples[3 * nt + 1] = i
                    c.triples[3 * nt + 2] = d
                    nt += 1
        c.ntriples = nt
        for i, cell in enumerate(cell_order):
            c.prio[cell] = i
        for a in range(n):
            for b in range(n):
                dom[a * n + b] = <u64> le[a]
        for b in range(n):
            dom[one * n + b] &= (<u64>1) << b
            dom[b * n + one] &= (<u64>1) << b
            dom[b * n + zero] &= (<u64>1) << zero
            dom[zero * n + b] &= (<u64>1) << zero
        c.stats[ST_S2] += 1
        if limit > 0:
            _recurse(&c, dom, solutions)
        stats = {
            "nodes": c.stats[ST_NODES],
            "prunes": c.stats[ST_PRUNES],
            "solutions": c.stats[ST_SOLUTIONS],
            "S1": c.stats[ST_S1],
            "S2": c.stats[ST_S2],
            "S3": c.stats[ST_S3],
            "S4": c.stats[ST_S4],
            "S5": c.stats[ST_S5],
        }
        return solutions, stats
    finally:
        free(c.sums)
        free(c.comp)
        free(c.triples)
        free(c.prio)
        free(c.value)
        free(c.comm)
        free(c.ks)
        free(dom)


def jacobi_eigh(a, double tol=1e-15, int max_sweeps=100):
    """Compiled twin of ``_pykernels.jacobi_eigh``."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] A = np.array(a, dtype=np.complex128, copy=True)
    cdef int n = A.shape[0]
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] V = np.eye(n, dtype=np.complex128)
    cdef int p, q, k, sweep
    cdef double fro = 0.0, off, mag, theta, t, cs, sn
    cdef double complex apq, ph, pc, akp, akq, apk, aqk, vkp, vkq
    cdef double tiny = 1e-300
    for p in range(n):
        for q in range(n):
            fro += A[p, q].real * A[p, q].real + A[p, q].imag * A[p, q].imag
    fro = sqrt(fro)
    if fro == 0.0:
        return np.zeros(n), V
    for sweep in range(max_sweeps):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off += A[p, q].real * A[p, q].real + A[p, q].imag * A[p, q].imag
        if sqrt(2.0 * off) <= tol * fro:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                mag = sqrt(apq.real * apq.real + apq.imag * apq.imag)
                if mag <= tiny:
                    continue
                ph = apq / mag
                theta = (A[q, q].real - A[p, p].real) / (2.0 * mag)
                t = 1.0 / (fabs(theta) + sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                cs = 1.0 / sqrt(t * t + 1.0)
                sn = t * cs
                pc = ph.conjugate()
                # columns: [A_p, A_q] <- [A_p, A_q] J, J = [[c, s], [-s pc, c pc]]
                for k in range(n):
                    akp = A[k, p]
                    akq = A[k, q]
                    A[k, p] = cs * akp - sn * pc * akq
                    A[k, q] = sn * akp + cs * pc * akq
                    vkp = V[k, p]
                    vkq = V[k, q]
                    V[k, p] = cs * vkp - sn * pc * vkq
                    V[k, q] = sn * vkp + cs * pc * vkq
                # rows: [A_p; A_q] <- J^H [A_p; A_q]
                for k in range(n):
                    apk = A[p, k]
                    aqk = A[q, k]
                    A[p, k] = cs * apk - sn * ph * aqk
                    A[q, k] = sn * apk + cs * ph * aqk
                A[p, q] = 0.0
                A[q, p] = 0.0
                A[p, p] = A[p, p].real
                A[q, q] = A[q, q].real
    w = np.real(np.diag(A)).copy()
    order = np.argsort(w, kind="stable")
    return w[order], V[:, order]
