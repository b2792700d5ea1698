"""Pure-Python kernels.

These are the reference implementations; ``_ckernels.pyx`` mirrors them
line for line and must return identical results.
"""
import math

import numpy as np

RULES = ("S1", "S2", "S3", "S4", "S5")


def _bits(mask):
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def _popcount(mask):
    return bin(mask).count("1")


class _Tables:
    """Precomputed lookups for one carrier."""

    def __init__(self, n, sums):
        self.n = n
        self.sums = sums
        nchunks = (n + 7) // 8
        self.nchunks = nchunks
        # image[x][k][byte]: mask of x(+)y for y in chunk k selected by byte
        image = []
        for x in range(n):
            per_chunk = []
            for k in range(nchunks):
                table = [0] * 256
                for byte in range(1, 256):
                    low = byte & -byte
                    j = low.bit_length() - 1
                    y = 8 * k + j
                    m = table[byte ^ low]
                    if y < n and sums[x][y] >= 0:
                        m |= 1 << sums[x][y]
                    table[byte] = m
                per_chunk.append(table)
            image.append(per_chunk)
        self.image = image
        self.double = [sums[x][x] for x in range(n)]

    def img(self, x, mask):
        out = 0
        tabs = self.image[x]
        k = 0
        while mask:
            out |= tabs[k][mask & 0xFF]
            mask >>= 8
            k += 1
        return out


def search_products(n, sums, le, comp, zero, one, cell_order, limit):
    """Enumerate every sequential product table on a finite effect algebra.

    ``sums`` is an n x n list of lists of element indices (-1 = undefined),
    ``le[a]`` the bitmask of elements below ``a``, ``cell_order`` a static
    priority over the n*n cells used to break ties between equally
    constrained cells. Stops after ``limit`` solutions.

    Returns ``(solutions, stats)`` where each solution is a flat tuple of
    length n*n in row-major order.
    """
    tabs = _Tables(n, sums)
    triples = []
    for b in range(n):
        for c in range(b, n):
            d = sums[b][c]
            if d >= 0 and b != zero and c != zero:
                triples.append((b, c, d))
    prio = [0] * (n * n)
    for rank, cell in enumerate(cell_order):
        prio[cell] = rank
    stats = {"nodes": 0, "prunes": 0, "solutions": 0}
    for r in RULES:
        stats[r] = 0

    dom = [0] * (n * n)
    for a in range(n):
        for b in range(n):
            dom[a * n + b] = le[a]
    for b in range(n):
        dom[one * n + b] &= 1 << b
        dom[b * n + one] &= 1 << b
        dom[b * n + zero] &= 1 << zero
        dom[zero * n + b] &= 1 << zero
    stats["S2"] += 1

    solutions = []

    def propagate(dom):
        while True:
            changed = False
            # S1: rows are additive maps
            for a in range(n):
                base = a * n
                row_changed = True
                while row_changed:
                    row_changed = False
                    for b, c, d in triples:
                        db = dom[base + b]
                        dd = dom[base + d]
                        if b == c:
                            nb = 0
                            reach = 0
                            for x in _bits(db):
                                s = tabs.double[x]
                                if s >= 0 and (dd >> s) & 1:
                                    nb |= 1 << x
                                    reach |= 1 << s
                            nd = dd & reach
                            if nb != db or nd != dd:
                                if not nb or not nd:
                                    return False
                                dom[base + b] = nb
                                dom[base + d] = nd
                                stats["S1"] += 1
                                row_changed = True
                            continue
                        dc = dom[base + c]
                        nb = 0
                        reach = 0
                        for x in _bits(db):
                            im = tabs.img(x, dc)
                            if im & dd:
                                nb |= 1 << x
                                reach |= im
                        nd = dd & reach
                        nc = 0
                        for y in _bits(dc):
                            if tabs.img(y, nb) & nd:
                                nc |= 1 << y
                        if nb != db or nc != dc or nd != dd:
                            if not nb or not nc or not nd:
                                return False
                            dom[base + b] = nb
                            dom[base + c] = nc
                            dom[base + d] = nd
                            stats["S1"] += 1
                            row_changed = True
            # S3: a.b = 0 forces b.a = 0; b.a != 0 forces a.b != 0
            zbit = 1 << zero
            for a in range(n):
                for b in range(n):
                    ab = dom[a * n + b]
                    ba = dom[b * n + a]
                    nba = ba
                    if ab == zbit:
                        nba &= zbit
                    if not ab & zbit:
                        nba &= ~zbit
                    if nba != ba:
                        if not nba:
                            return False
                        dom[b * n + a] = nba
                        stats["S3"] += 1
                        changed = True
            # commutation-driven closures (S4, S5) on decided cells
            value = [-1] * (n * n)
            for i in range(n * n):
                m = dom[i]
                if m and not m & (m - 1):
                    value[i] = m.bit_length() - 1
            comm = [[False] * n for _ in range(n)]
            for a in range(n):
                for b in range(a, n):
                    v = value[a * n + b]
                    if v >= 0 and v == value[b * n + a]:
                        comm[a][b] = comm[b][a] = True

            def unify(i, j, rule):
                x = dom[i]
                y = dom[j]
                m = x & y
                if m == x and m == y:
                    return 0
                if not m:
                    return -1
                dom[i] = m
                dom[j] = m
                stats[rule] += 1
                return 1

            for a in range(n):
                for b in range(n):
                    if not comm[a][b]:
                        continue
                    bc = comp[b]
                    r = unify(a * n + bc, bc * n + a, "S4")
                    if r < 0:
                        return False
                    if r:
                        changed = True
                    e = value[a * n + b]
                    for c in range(n):
                        d = value[b * n + c]
                        if d < 0:
                            continue
                        r = unify(a * n + d, e * n + c, "S4")
                        if r < 0:
                            return False
                        if r:
                            changed = True
            for c in range(n):
                ks = [a for a in range(n) if comm[c][a]]
                for a in ks:
                    for b in ks:
                        d = value[a * n + b]
                        if d >= 0:
                            r = unify(c * n + d, d * n + c, "S5")
                            if r < 0:
                                return False
                            if r:
                                changed = True
                        s = sums[a][b]
                        if s >= 0:
                            r = unify(c * n + s, s * n + c, "S5")
                            if r < 0:
                                return False
                            if r:
                                changed = True
            if not changed:
                return True

    def recurse(dom):
        stats["nodes"] += 1
        if not propagate(dom):
            stats["prunes"] += 1
            return False
        best = -1
        best_key = None
        for i in range(n * n):
            m = dom[i]
            if m & (m - 1):
                key = (_popcount(m), prio[i])
                if best_key is None or key < best_key:
                    best_key = key
                    best = i
        if best < 0:
            solutions.append(tuple(dom[i].bit_length() - 1 for i in range(n * n)))
            stats["solutions"] += 1
            return len(solutions) >= limit
        for v in _bits(dom[best]):
            child = list(dom)
            child[best] = 1 << v
            if recurse(child):
                return True
        return False

    if limit > 0:
        recurse(dom)
    return solutions, stats


def jacobi_eigh(a, tol=1e-15, max_sweeps=100):
    """Cyclic Jacobi eigendecomposition of a Hermitian matrix.

    Returns ascending real eigenvalues and the unitary matrix whose columns
    are the matching eigenvectors.
    """
    A = np.array(a, dtype=np.complex128, copy=True)
    n = A.shape[0]
    V = np.eye(n, dtype=np.complex128)
    fro = math.sqrt(float(np.sum(np.abs(A) ** 2)))
    if fro == 0.0:
        return np.zeros(n), V
    tiny = 1e-300
    for _ in range(max_sweeps):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off += abs(A[p, q]) ** 2
        if math.sqrt(2.0 * off) <= tol * fro:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                mag = abs(apq)
                if mag <= tiny:
                    continue
                ph = apq / mag
                theta = (A[q, q].real - A[p, p].real) / (2.0 * mag)
                t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                pc = ph.conjugate()
                J = np.array([[c, s], [-s * pc, c * pc]], dtype=np.complex128)
                idx = [p, q]
                A[:, idx] = A[:, idx] @ J
                A[idx, :] = J.conj().T @ A[idx, :]
                V[:, idx] = V[:, idx] @ J
                A[p, q] = 0.0
                A[q, p] = 0.0
                A[p, p] = A[p, p].real
                A[q, q] = A[q, q].real
    w = np.real(np.diag(A)).copy()
    order = np.argsort(w, kind="stable")
    return w[order], V[:, order]
