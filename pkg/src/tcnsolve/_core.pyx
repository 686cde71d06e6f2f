# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled propagation kernel.

Twin of tcnsolve._core_py: same `revise` / `run_fixpoint` interface and
bit-for-bit identical results (tests enforce the parity).  See that module
for the semantics; this one only adds static types and a flat queue.
"""

from libc.stdlib cimport free, malloc

BACKEND = "compiled"

cdef long long INF = <long long>1 << 62
cdef long long NINF = -(<long long>1 << 62)


cdef inline long long _max(long long a, long long b) nogil:
    return a if a > b else b


cdef inline long long _min(long long a, long long b) nogil:
    return a if a < b else b


cdef inline long long _sadd(long long a, long long b) nogil:
    if a <= NINF or b <= NINF:
        return NINF
    if a >= INF or b >= INF:
        return INF
    return a + b


cdef inline long long _ssub(long long a, long long b) nogil:
    if a <= NINF or b >= INF:
        return NINF
    if a >= INF or b <= NINF:
        return INF
    return a - b


cdef inline long long _smul(long long a, long long b) nogil:
    cdef bint neg
    cdef long long aa, bb
    if a == 0 or b == 0:
        return 0
    neg = (a < 0) != (b < 0)
    aa = -a if a < 0 else a
    bb = -b if b < 0 else b
    if aa >= INF or bb >= INF or aa > (INF - 1) // bb:
        return NINF if neg else INF
    return -aa * bb if neg else aa * bb


cdef inline long long _tdiv_corner(long long y, long long z) nogil:
    cdef long long q
    if z >= INF or z <= NINF:
        return 0
    if y >= INF:
        return INF if z > 0 else NINF
    if y <= NINF:
        return NINF if z > 0 else INF
    q = y / z  # C division truncates
    return q


cdef inline long long _cdiv_corner(long long p, long long q) nogil:
    cdef long long v
    if q >= INF or q <= NINF:
        return 0
    if p >= INF:
        return INF if q > 0 else NINF
    if p <= NINF:
        return NINF if q > 0 else INF
    v = p / q
    if v * q != p and ((p < 0) == (q < 0)):
        v += 1
    return v


cdef inline long long _fdiv_corner(long long p, long long q) nogil:
    cdef long long v
    if q >= INF or q <= NINF:
        return 0
    if p >= INF:
        return INF if q > 0 else NINF
    if p <= NINF:
        return NINF if q > 0 else INF
    v = p / q
    if v * q != p and ((p < 0) != (q < 0)):
        v -= 1
    return v


cdef void _mul_project(long long xl, long long xh,
                       long long al, long long ah,
                       long long bl, long long bh,
                       long long *out) nogil:
    cdef long long lo = INF
    cdef long long hi = NINF
    cdef long long parts[4]
    cdef int nparts = 0
    cdef int i, j, k
    cdef long long xx, zz, c, f, rl, rh
    if bl <= 0 <= bh and xl <= 0 <= xh:
        out[0] = al
        out[1] = ah
        return
    if bl <= -1:
        parts[nparts] = bl
        parts[nparts + 1] = bh if bh <= -1 else -1
        nparts += 2
    if bh >= 1:
        parts[nparts] = bl if bl >= 1 else 1
        parts[nparts + 1] = bh
        nparts += 2
    for i in range(0, nparts, 2):
        for j in range(2):
            xx = xl if j == 0 else xh
            for k in range(2):
                zz = parts[i + k]
                c = _cdiv_corner(xx, zz)
                if c < lo:
                    lo = c
                f = _fdiv_corner(xx, zz)
                if f > hi:
                    hi = f
    rl = _max(al, lo)
    rh = _min(ah, hi)
    if not (xl <= 0 <= xh):
        if rl == 0:
            rl = 1
        if rh == 0:
            rh = -1
    out[0] = rl
    out[1] = rh


cdef int _revise_c(int op, long long *b) nogil:
    """Revise the six bounds in b in place; returns 0, or -1 on a bad op."""
    cdef long long xl = b[0], xh = b[1], yl = b[2], yh = b[3], zl = b[4], zh = b[5]
    cdef long long c1, c2, c3, c4, lo, hi, wlo, whi
    cdef long long nxl, nxh, nyl, nyh, nzl, nzh
    cdef long long za, zb, m, v, center, w, a1, b1
    cdef long long parts[4]
    cdef long long proj[2]
    cdef int nparts, i, j, k
    cdef long long yy, zz, xx

    if xl > xh or yl > yh or zl > zh:
        return 0

    if op == 0:  # add
        b[0] = _max(xl, _sadd(yl, zl))
        b[1] = _min(xh, _sadd(yh, zh))
        b[2] = _max(yl, _ssub(xl, zh))
        b[3] = _min(yh, _ssub(xh, zl))
        b[4] = _max(zl, _ssub(xl, yh))
        b[5] = _min(zh, _ssub(xh, yl))
        return 0

    if op == 4:  # min
        nyl = _max(yl, xl)
        nyh = yh
        if zl > xh:
            nyh = _min(yh, xh)
        nzl = _max(zl, xl)
        nzh = zh
        if yl > xh:
            nzh = _min(zh, xh)
        b[0] = _max(xl, _min(yl, zl))
        b[1] = _min(xh, _min(yh, zh))
        b[2] = nyl
        b[3] = nyh
        b[4] = nzl
        b[5] = nzh
        return 0

    if op == 5:  # max
        nyl = yl
        nyh = _min(yh, xh)
        if zh < xl:
            nyl = _max(yl, xl)
        nzl = zl
        nzh = _min(zh, xh)
        if yh < xl:
            nzl = _max(zl, xl)
        b[0] = _max(xl, _max(yl, zl))
        b[1] = _min(xh, _max(yh, zh))
        b[2] = nyl
        b[3] = nyh
        b[4] = nzl
        b[5] = nzh
        return 0

    if op == 1:  # mul
        c1 = _smul(yl, zl)
        c2 = _smul(yl, zh)
        c3 = _smul(yh, zl)
        c4 = _smul(yh, zh)
        lo = _min(_min(c1, c2), _min(c3, c4))
        hi = _max(_max(c1, c2), _max(c3, c4))
        _mul_project(xl, xh, yl, yh, zl, zh, proj)
        b[2] = proj[0]
        b[3] = proj[1]
        _mul_project(xl, xh, zl, zh, yl, yh, proj)
        b[4] = proj[0]
        b[5] = proj[1]
        b[0] = _max(xl, lo)
        b[1] = _min(xh, hi)
        return 0

    if op == 2:  # div (truncated)
        nzl = zl
        nzh = zh
        if nzl == 0:
            nzl = 1
        if nzh == 0:
            nzh = -1
        if nzl > nzh:
            b[4] = 1
            b[5] = 0
            return 0
        lo = INF
        hi = NINF
        wlo = INF
        whi = NINF
        nparts = 0
        if nzl <= -1:
            parts[nparts] = nzl
            parts[nparts + 1] = nzh if nzh <= -1 else -1
            nparts += 2
        if nzh >= 1:
            parts[nparts] = nzl if nzl >= 1 else 1
            parts[nparts + 1] = nzh
            nparts += 2
        for i in range(0, nparts, 2):
            for j in range(2):
                yy = yl if j == 0 else yh
                for k in range(2):
                    zz = parts[i + k]
                    v = _tdiv_corner(yy, zz)
                    if v < lo:
                        lo = v
                    if v > hi:
                        hi = v
            for j in range(2):
                xx = xl if j == 0 else xh
                for k in range(2):
                    zz = parts[i + k]
                    center = _smul(xx, zz)
                    w = (-zz if zz < 0 else zz) - 1
                    a1 = _ssub(center, w)
                    b1 = _sadd(center, w)
                    if a1 < wlo:
                        wlo = a1
                    if b1 > whi:
                        whi = b1
        b[0] = _max(xl, lo)
        b[1] = _min(xh, hi)
        b[2] = _max(yl, wlo)
        b[3] = _min(yh, whi)
        b[4] = nzl
        b[5] = nzh
        return 0

    if op == 3:  # mod (Euclidean)
        nzl = zl
        nzh = zh
        if nzl == 0:
            nzl = 1
        if nzh == 0:
            nzh = -1
        if nzl > nzh:
            b[4] = 1
            b[5] = 0
            return 0
        za = -nzl if nzl < 0 else nzl
        zb = -nzh if nzh < 0 else nzh
        m = za if za > zb else zb
        nxl = _max(xl, 0)
        nxh = _min(xh, _ssub(m, 1))
        if yl == yh and nzl == nzh and NINF < yl < INF:
            v = yl % (nzl if nzl > 0 else -nzl)
            if v < 0:
                v += (nzl if nzl > 0 else -nzl)
            nxl = _max(nxl, v)
            nxh = _min(nxh, v)
        b[0] = nxl
        b[1] = nxh
        b[4] = nzl
        b[5] = nzh
        return 0

    if op == 6:  # eq (reified)
        nxl = _max(xl, 0)
        nxh = _min(xh, 1)
        if _max(yl, zl) > _min(yh, zh):
            nxh = _min(nxh, 0)
        if yl == yh == zl and zl == zh:
            nxl = _max(nxl, 1)
        nyl = yl
        nyh = yh
        nzl = zl
        nzh = zh
        if nxl <= nxh:
            if nxl == 1:
                lo = _max(yl, zl)
                hi = _min(yh, zh)
                nyl = lo
                nyh = hi
                nzl = lo
                nzh = hi
            elif nxh == 0:
                if zl == zh:
                    if yl == zl:
                        nyl = yl + 1
                    if yh == zl:
                        nyh = yh - 1
                if yl == yh:
                    if zl == yl:
                        nzl = zl + 1
                    if zh == yl:
                        nzh = zh - 1
        b[0] = nxl
        b[1] = nxh
        b[2] = nyl
        b[3] = nyh
        b[4] = nzl
        b[5] = nzh
        return 0

    if op == 7:  # le (reified)
        nxl = _max(xl, 0)
        nxh = _min(xh, 1)
        if yh <= zl:
            nxl = _max(nxl, 1)
        if yl > zh:
            nxh = _min(nxh, 0)
        nyl = yl
        nyh = yh
        nzl = zl
        nzh = zh
        if nxl <= nxh:
            if nxl == 1:
                nyh = _min(yh, zh)
                nzl = _max(zl, yl)
            elif nxh == 0:
                nyl = _max(yl, _sadd(zl, 1))
                nzh = _min(zh, _ssub(yh, 1))
        b[0] = nxl
        b[1] = nxh
        b[2] = nyl
        b[3] = nyh
        b[4] = nzl
        b[5] = nzh
        return 0

    return -1


def revise(int op, long long xl, long long xh, long long yl, long long yh,
           long long zl, long long zh):
    """One bounds-consistency pass of x = y op z; returns six new bounds."""
    cdef long long b[6]
    b[0] = xl
    b[1] = xh
    b[2] = yl
    b[3] = yh
    b[4] = zl
    b[5] = zh
    if _revise_c(op, b) != 0:
        raise ValueError(f"unknown operator code {op}")
    return b[0], b[1], b[2], b[3], b[4], b[5]


def run_fixpoint(int[:] ops, int[:] xs, int[:] ys, int[:] zs,
                 int[:] wstart, int[:] wlist,
                 long long[:] lo, long long[:] hi,
                 long long max_revisions=0):
    """FIFO worklist to the greatest fixpoint; mutates lo/hi in place.

    Returns 0 at a fixpoint, 1 when a domain became empty, 2 when the
    revision budget ran out.
    """
    cdef int n = ops.shape[0]
    cdef int m = lo.shape[0]
    cdef int ci, vi, cj, k, s, head, tail, qcap
    cdef long long revs = 0
    cdef long long nl, nh
    cdef bint changed
    cdef long long b[6]
    cdef int tri[3]
    cdef int *queue
    cdef char *inq
    cdef int rc = 0

    for vi in range(m):
        if lo[vi] > hi[vi]:
            return 1
    if n == 0:
        return 0

    qcap = n
    queue = <int *>malloc(qcap * sizeof(int))
    inq = <char *>malloc(n * sizeof(char))
    if queue == NULL or inq == NULL:
        free(queue)
        free(inq)
        raise MemoryError()
    # circular FIFO holding at most n distinct constraints
    head = 0
    tail = 0
    for ci in range(n):
        queue[ci] = ci
        inq[ci] = 1
    tail = n % qcap  # full queue: head == tail with count tracked via inq
    cdef int count = n

    try:
        with nogil:
            while count > 0:
                if max_revisions and revs >= max_revisions:
                    rc = 2
                    break
                ci = queue[head]
                head = (head + 1) % qcap
                count -= 1
                inq[ci] = 0
                revs += 1
                tri[0] = xs[ci]
                tri[1] = ys[ci]
                tri[2] = zs[ci]
                b[0] = lo[tri[0]]
                b[1] = hi[tri[0]]
                b[2] = lo[tri[1]]
                b[3] = hi[tri[1]]
                b[4] = lo[tri[2]]
                b[5] = hi[tri[2]]
                _revise_c(ops[ci], b)
                for k in range(3):
                    vi = tri[k]
                    nl = b[2 * k]
                    nh = b[2 * k + 1]
                    changed = False
                    if nl > lo[vi]:
                        lo[vi] = nl
                        changed = True
                    if nh < hi[vi]:
                        hi[vi] = nh
                        changed = True
                    if not changed:
                        continue
                    if lo[vi] > hi[vi]:
                        rc = 1
                        break
                    for s in range(wstart[vi], wstart[vi + 1]):
                        cj = wlist[s]
                        if not inq[cj]:
                            inq[cj] = 1
                            queue[tail] = cj
                            tail = (tail + 1) % qcap
                            count += 1
                if rc == 1:
                    break
    finally:
        free(queue)
        free(inq)
    return rc
