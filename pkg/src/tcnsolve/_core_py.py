"""Pure-Python propagation kernel.

Interval revision for the eight ternary operators plus a FIFO worklist
fixpoint over a flattened network.  tcnsolve._core is the compiled twin of
this module; both expose the same `revise` / `run_fixpoint` interface and
must stay bit-for-bit interchangeable (tests enforce it).

Bounds are 64-bit-ish ints saturating at +-2**62 (the infinity sentinels).
Operator codes match decompose.TcnOp: 0 add, 1 mul, 2 div, 3 mod, 4 min,
5 max, 6 eq, 7 le.  A constraint reads x = y op z.
"""

from collections import deque

BACKEND = "python"

INF = 1 << 62
NINF = -INF


def _sadd(a, b):
    if a <= NINF or b <= NINF:
        return NINF
    if a >= INF or b >= INF:
        return INF
    return a + b


def _ssub(a, b):
    if a <= NINF or b >= INF:
        return NINF
    if a >= INF or b <= NINF:
        return INF
    return a - b


def _smul(a, b):
    if a == 0 or b == 0:
        return 0
    neg = (a < 0) != (b < 0)
    aa = -a if a < 0 else a
    bb = -b if b < 0 else b
    if aa >= INF or bb >= INF or aa > (INF - 1) // bb:
        return NINF if neg else INF
    return -aa * bb if neg else aa * bb


def _tdiv_corner(y, z):
    # truncated y / z for a corner; |z| >= INF collapses to 0
    if z >= INF or z <= NINF:
        return 0
    if y >= INF:
        return INF if z > 0 else NINF
    if y <= NINF:
        return NINF if z > 0 else INF
    q = y // z
    if q < 0 and q * z != y:
        q += 1
    return q


def _cdiv_corner(p, q):
    # ceil of the rational corner p / q
    if q >= INF or q <= NINF:
        return 0
    if p >= INF:
        return INF if q > 0 else NINF
    if p <= NINF:
        return NINF if q > 0 else INF
    return -((-p) // q)


def _fdiv_corner(p, q):
    # floor of the rational corner p / q
    if q >= INF or q <= NINF:
        return 0
    if p >= INF:
        return INF if q > 0 else NINF
    if p <= NINF:
        return NINF if q > 0 else INF
    return p // q


def _sign_parts(lo, hi):
    parts = []
    if lo <= -1:
        parts.append((lo, hi if hi <= -1 else -1))
    if hi >= 1:
        parts.append((lo if lo >= 1 else 1, hi))
    return parts


def _mul_project(xl, xh, al, ah, bl, bh):
    """Prune operand [al,ah] of a product in [xl,xh] with co-operand [bl,bh]."""
    if bl <= 0 <= bh and xl <= 0 <= xh:
        return al, ah
    lo, hi = INF, NINF
    for p, q in _sign_parts(bl, bh):
        for xx in (xl, xh):
            for zz in (p, q):
                c = _cdiv_corner(xx, zz)
                if c < lo:
                    lo = c
                f = _fdiv_corner(xx, zz)
                if f > hi:
                    hi = f
    rl, rh = max(al, lo), min(ah, hi)
    if not (xl <= 0 <= xh):
        # the operand cannot be 0; bump endpoints resting on it
        if rl == 0:
            rl = 1
        if rh == 0:
            rh = -1
    return rl, rh


def revise(op, xl, xh, yl, yh, zl, zh):
    """One bounds-consistency pass of x = y op z; returns six new bounds.

    Any returned lo > hi marks that variable's interval empty.  Inputs with
    an already-empty interval are returned unchanged.
    """
    if xl > xh or yl > yh or zl > zh:
        return xl, xh, yl, yh, zl, zh

    if op == 0:  # add
        return (
            max(xl, _sadd(yl, zl)),
            min(xh, _sadd(yh, zh)),
            max(yl, _ssub(xl, zh)),
            min(yh, _ssub(xh, zl)),
            max(zl, _ssub(xl, yh)),
            min(zh, _ssub(xh, yl)),
        )

    if op == 4:  # min
        nyl, nyh = max(yl, xl), yh
        if zl > xh:
            nyh = min(yh, xh)
        nzl, nzh = max(zl, xl), zh
        if yl > xh:
            nzh = min(zh, xh)
        return (
            max(xl, yl if yl < zl else zl),
            min(xh, yh if yh < zh else zh),
            nyl,
            nyh,
            nzl,
            nzh,
        )

    if op == 5:  # max
        nyl, nyh = yl, min(yh, xh)
        if zh < xl:
            nyl = max(yl, xl)
        nzl, nzh = zl, min(zh, xh)
        if yh < xl:
            nzl = max(zl, xl)
        return (
            max(xl, yl if yl > zl else zl),
            min(xh, yh if yh > zh else zh),
            nyl,
            nyh,
            nzl,
            nzh,
        )

    if op == 1:  # mul
        c1 = _smul(yl, zl)
        c2 = _smul(yl, zh)
        c3 = _smul(yh, zl)
        c4 = _smul(yh, zh)
        lo = min(c1, c2, c3, c4)
        hi = max(c1, c2, c3, c4)
        nyl, nyh = _mul_project(xl, xh, yl, yh, zl, zh)
        nzl, nzh = _mul_project(xl, xh, zl, zh, yl, yh)
        return max(xl, lo), min(xh, hi), nyl, nyh, nzl, nzh

    if op == 2:  # div (truncated)
        nzl, nzh = zl, zh
        if nzl == 0:
            nzl = 1
        if nzh == 0:
            nzh = -1
        if nzl > nzh:
            return xl, xh, yl, yh, 1, 0
        lo, hi = INF, NINF
        wlo, whi = INF, NINF
        for p, q in _sign_parts(nzl, nzh):
            for yy in (yl, yh):
                for zz in (p, q):
                    v = _tdiv_corner(yy, zz)
                    if v < lo:
                        lo = v
                    if v > hi:
                        hi = v
            for xx in (xl, xh):
                for zz in (p, q):
                    center = _smul(xx, zz)
                    w = (-zz if zz < 0 else zz) - 1
                    a = _ssub(center, w)
                    b = _sadd(center, w)
                    if a < wlo:
                        wlo = a
                    if b > whi:
                        whi = b
        return max(xl, lo), min(xh, hi), max(yl, wlo), min(yh, whi), nzl, nzh

    if op == 3:  # mod (Euclidean)
        nzl, nzh = zl, zh
        if nzl == 0:
            nzl = 1
        if nzh == 0:
            nzh = -1
        if nzl > nzh:
            return xl, xh, yl, yh, 1, 0
        za = -nzl if nzl < 0 else nzl
        zb = -nzh if nzh < 0 else nzh
        m = za if za > zb else zb
        nxl, nxh = max(xl, 0), min(xh, _ssub(m, 1))
        if yl == yh and nzl == nzh and NINF < yl < INF:
            v = yl % (nzl if nzl > 0 else -nzl)
            nxl, nxh = max(nxl, v), min(nxh, v)
        return nxl, nxh, yl, yh, nzl, nzh

    if op == 6:  # eq (reified)
        nxl, nxh = max(xl, 0), min(xh, 1)
        if max(yl, zl) > min(yh, zh):
            nxh = min(nxh, 0)
        if yl == yh == zl == zh:
            nxl = max(nxl, 1)
        nyl, nyh, nzl, nzh = yl, yh, zl, zh
        if nxl <= nxh:
            if nxl == 1:
                lo, hi = max(yl, zl), min(yh, zh)
                nyl, nyh, nzl, nzh = lo, hi, lo, hi
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
        return nxl, nxh, nyl, nyh, nzl, nzh

    if op == 7:  # le (reified)
        nxl, nxh = max(xl, 0), min(xh, 1)
        if yh <= zl:
            nxl = max(nxl, 1)
        if yl > zh:
            nxh = min(nxh, 0)
        nyl, nyh, nzl, nzh = yl, yh, zl, zh
        if nxl <= nxh:
            if nxl == 1:
                nyh = min(yh, zh)
                nzl = max(zl, yl)
            elif nxh == 0:
                nyl = max(yl, _sadd(zl, 1))
                nzh = min(zh, _ssub(yh, 1))
        return nxl, nxh, nyl, nyh, nzl, nzh

    raise ValueError(f"unknown operator code {op}")


def run_fixpoint(ops, xs, ys, zs, wstart, wlist, lo, hi, max_revisions=0):
    """FIFO worklist to the greatest fixpoint over flat arrays.

    `wstart`/`wlist` is the CSR variable -> watching-constraints index.
    `lo`/`hi` are mutated in place.  Returns 0 at a fixpoint, 1 when some
    domain became empty, 2 when the revision budget ran out.
    """
    n = len(ops)
    m = len(lo)
    llo = [int(v) for v in lo]
    lhi = [int(v) for v in hi]

    def writeback():
        for j in range(m):
            lo[j] = llo[j]
            hi[j] = lhi[j]

    for vi in range(m):
        if llo[vi] > lhi[vi]:
            return 1
    inq = [True] * n
    queue = deque(range(n))
    revs = 0
    while queue:
        if max_revisions and revs >= max_revisions:
            writeback()
            return 2
        ci = queue.popleft()
        inq[ci] = False
        revs += 1
        xi, yi, zi = xs[ci], ys[ci], zs[ci]
        res = revise(
            ops[ci], llo[xi], lhi[xi], llo[yi], lhi[yi], llo[zi], lhi[zi]
        )
        k = 0
        for vi in (xi, yi, zi):
            nl, nh = res[k], res[k + 1]
            k += 2
            changed = False
            # slots may alias one variable; fold by intersection
            if nl > llo[vi]:
                llo[vi] = nl
                changed = True
            if nh < lhi[vi]:
                lhi[vi] = nh
                changed = True
            if not changed:
                continue
            if llo[vi] > lhi[vi]:
                writeback()
                return 1
            for w in range(wstart[vi], wstart[vi + 1]):
                cj = wlist[w]
                if not inq[cj]:
                    inq[cj] = True
                    queue.append(cj)
    writeback()
    return 0
