# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled lattice kernels (64-bit integer arithmetic).

Callers must guarantee that all intermediate values fit in a signed 64-bit
integer; ``degenab.kernels`` checks this and falls back to Python otherwise.
"""

DEF MAXG = 8


def box_argmin(gram, p, D, lo, hi):
    cdef int g = len(gram)
    cdef long long G[MAXG][MAXG]
    cdef long long P[MAXG]
    cdef long long L[MAXG]
    cdef long long Hh[MAXG]
    cdef long long X[MAXG]
    cdef long long Y[MAXG]
    cdef long long d = D
    cdef long long v, s, best = 0
    cdef int i, j, k
    cdef bint have = False
    if g > MAXG:
        raise ValueError("rank too large for compiled kernel")
    for i in range(g):
        P[i] = p[i]
        L[i] = lo[i]
        Hh[i] = hi[i]
        X[i] = L[i]
        if L[i] > Hh[i]:
            return None, []
        for j in range(g):
            G[i][j] = gram[i][j]
    pts = []
    while True:
        for i in range(g):
            Y[i] = d * X[i] - P[i]
        v = 0
        for i in range(g):
            if Y[i] != 0:
                s = 0
                for j in range(g):
                    s += G[i][j] * Y[j]
                v += Y[i] * s
        if not have or v < best:
            best = v
            have = True
            pts = [tuple([X[k] for k in range(g)])]
        elif v == best:
            pts.append(tuple([X[k] for k in range(g)]))
        # odometer step
        k = g - 1
        while k >= 0:
            X[k] += 1
            if X[k] <= Hh[k]:
                break
            X[k] = L[k]
            k -= 1
        if k < 0:
            break
    return best, pts


def ray_shoot(gram, p, D, r0, normal, lo, hi):
    cdef int g = len(gram)
    cdef long long G[MAXG][MAXG]
    cdef long long GP[MAXG]
    cdef long long R[MAXG]
    cdef long long NV[MAXG]
    cdef long long L[MAXG]
    cdef long long Hh[MAXG]
    cdef long long X[MAXG]
    cdef long long d = D
    cdef long long q0 = 0, l0 = 0, b, qx, lx, num, den, bn = 0, bd = 1
    cdef int i, j, k
    cdef bint have = False
    if g > MAXG:
        raise ValueError("rank too large for compiled kernel")
    for i in range(g):
        R[i] = r0[i]
        NV[i] = normal[i]
        L[i] = lo[i]
        Hh[i] = hi[i]
        X[i] = L[i]
        if L[i] > Hh[i]:
            return None
        for j in range(g):
            G[i][j] = gram[i][j]
    for i in range(g):
        GP[i] = 0
        for j in range(g):
            GP[i] += G[i][j] * <long long>p[j]
    for i in range(g):
        l0 += GP[i] * R[i]
        for j in range(g):
            q0 += R[i] * G[i][j] * R[j]
    pts = []
    while True:
        b = 0
        for i in range(g):
            b += NV[i] * (X[i] - R[i])
        if b > 0:
            qx = 0
            lx = 0
            for i in range(g):
                lx += GP[i] * X[i]
                for j in range(g):
                    qx += X[i] * G[i][j] * X[j]
            num = d * (qx - q0) - 2 * (lx - l0)
            den = 2 * d * b
            if not have or num * bd < bn * den:
                bn = num
                bd = den
                have = True
                pts = [tuple([X[k] for k in range(g)])]
            elif num * bd == bn * den:
                pts.append(tuple([X[k] for k in range(g)]))
        k = g - 1
        while k >= 0:
            X[k] += 1
            if X[k] <= Hh[k]:
                break
            X[k] = L[k]
            k -= 1
        if k < 0:
            break
    if not have:
        return None
    return bn, bd, pts
