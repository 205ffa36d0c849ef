"""numba versions of the hot loops.

Every function takes raw int64 field tables (exp, log, inv) so that the
compiled code never touches Python objects.  Semantics match _numpy.py
exactly; the test suite compares the two.
"""
import numpy as np
from numba import njit


@njit(cache=True)
def _mul(exp, log, a, b):
    return exp[log[a] + log[b]]


@njit(cache=True)
def perm_closure(gens, cap, rnd):
    """BFS closure with an open-addressing hash table.

    Returns (elements, count); count is -1 when the group exceeds cap.
    """
    g, n = gens.shape
    buf = np.empty((cap + 1, n), np.uint8)
    size = 16
    while size < 2 * (cap + 1):
        size *= 2
    mask = np.uint64(size - 1)
    table = np.full(size, -1, np.int64)
    tmp = np.empty(n, np.uint8)

    for i in range(n):
        buf[0, i] = i
    h = np.uint64(0)
    for i in range(n):
        h += np.uint64(buf[0, i]) * rnd[i]
    table[np.int64((h ^ (h >> np.uint64(31))) & mask)] = 0
    count = 1
    head = 0
    while head < count:
        for s in range(g):
            h = np.uint64(0)
            for i in range(n):
                tmp[i] = buf[head, gens[s, i]]
                h += np.uint64(tmp[i]) * rnd[i]
            slot = np.int64((h ^ (h >> np.uint64(31))) & mask)
            while True:
                idx = table[slot]
                if idx == -1:
                    if count == cap:
                        return buf[:count], -1
                    for i in range(n):
                        buf[count, i] = tmp[i]
                    table[slot] = count
                    count += 1
                    break
                same = True
                for i in range(n):
                    if buf[idx, i] != tmp[i]:
                        same = False
                        break
                if same:
                    break
                slot = (slot + 1) & np.int64(size - 1)
        head += 1
    return buf[:count], count


@njit(cache=True)
def _deg(p):
    for d in range(2, -1, -1):
        if p[d] != 0:
            return d
    return -1


@njit(cache=True)
def _polymod(a, b, exp, log, inv):
    db = _deg(b)
    lb = inv[b[db]]
    while True:
        da = _deg(a)
        if da < db:
            return
        f = _mul(exp, log, a[da], lb)
        s = da - db
        for i in range(db + 1):
            a[i + s] ^= _mul(exp, log, f, b[i])


@njit(cache=True)
def _has_common_root(c, exp, log, inv):
    """True when the four quadratics c[p] = (c0, c1, c2) share a root or all vanish."""
    g = np.zeros(3, np.int64)
    h = np.zeros(3, np.int64)
    r = np.zeros(3, np.int64)
    for i in range(3):
        g[i] = c[0, i]
    for p in range(1, 4):
        for i in range(3):
            h[i] = c[p, i]
        # Euclid on (g, h)
        while _deg(h) >= 0:
            for i in range(3):
                r[i] = g[i]
            _polymod(r, h, exp, log, inv)
            for i in range(3):
                g[i] = h[i]
                h[i] = r[i]
        if _deg(g) == 0:
            return False
    return _deg(g) != 0


@njit(cache=True)
def _pw(exp, log, q1, a, e):
    if e == 0:
        return 1
    if a == 0:
        return 0
    return exp[(log[a] * e) % q1]


@njit(cache=True)
def _quad_in_x(qcoef, qexp, y, z, t, exp, log, q1, out):
    for p in range(4):
        for a in range(3):
            out[p, a] = 0
        for m in range(qexp.shape[0]):
            cf = qcoef[p, m]
            if cf == 0:
                continue
            v = _mul(exp, log, cf, _pw(exp, log, q1, y, qexp[m, 1]))
            v = _mul(exp, log, v, _pw(exp, log, q1, z, qexp[m, 2]))
            v = _mul(exp, log, v, _pw(exp, log, q1, t, qexp[m, 3]))
            out[p, qexp[m, 0]] ^= v


@njit(cache=True)
def singular_scan(qcoef, qexp, exp, log, inv, order):
    """Search P^3(GF(order)) for a common zero of four quadrics.

    Points are visited as [1:0:0:0], then [x:1:0:0], [x:y:1:0], [x:y:z:1]
    with x eliminated through a gcd, so a shared root of the x-polynomials
    in any extension also counts.  Returns True on the first hit.
    """
    q1 = order - 1
    c = np.zeros((4, 3), np.int64)
    # [1:0:0:0]: only the x^2 coefficient survives
    _quad_in_x(qcoef, qexp, 0, 0, 0, exp, log, q1, c)
    allzero = True
    for p in range(4):
        if c[p, 2] != 0:
            allzero = False
    if allzero:
        return True
    # the y/z/t exponents pick which of the remaining coordinates equals 1
    _quad_in_x(qcoef, qexp, 1, 0, 0, exp, log, q1, c)
    if _has_common_root(c, exp, log, inv):
        return True
    for y in range(order):
        _quad_in_x(qcoef, qexp, y, 1, 0, exp, log, q1, c)
        if _has_common_root(c, exp, log, inv):
            return True
    # [x:y:z:1]: for fixed z each x-coefficient is a quadratic in y
    Cz = np.zeros((4, 3, 3), np.int64)
    y2 = np.zeros(order, np.int64)
    for y in range(order):
        y2[y] = _mul(exp, log, y, y)
    for z in range(order):
        for p in range(4):
            for a in range(3):
                for b in range(3):
                    Cz[p, a, b] = 0
            for m in range(qexp.shape[0]):
                cf = qcoef[p, m]
                if cf != 0:
                    Cz[p, qexp[m, 0], qexp[m, 1]] ^= _mul(exp, log, cf, _pw(exp, log, q1, z, qexp[m, 2]))
        for y in range(order):
            for p in range(4):
                for a in range(3):
                    c[p, a] = (Cz[p, a, 0] ^ _mul(exp, log, Cz[p, a, 1], y)
                               ^ _mul(exp, log, Cz[p, a, 2], y2[y]))
            if _has_common_root(c, exp, log, inv):
                return True
    return False


@njit(cache=True)
def substitute_cubic(coef, factors, idx3, T, exp, log):
    """Coefficients of F(T x) for a batch of 4x4 matrices T."""
    N = T.shape[0]
    out = np.zeros((N, 20), np.int64)
    for n in range(N):
        for m in range(20):
            cf = coef[m]
            if cf == 0:
                continue
            a = factors[m, 0]
            b = factors[m, 1]
            cc = factors[m, 2]
            for d in range(4):
                v1 = _mul(exp, log, cf, T[n, a, d])
                if v1 == 0:
                    continue
                for e in range(4):
                    v2 = _mul(exp, log, v1, T[n, b, e])
                    if v2 == 0:
                        continue
                    for f in range(4):
                        out[n, idx3[d, e, f]] ^= _mul(exp, log, v2, T[n, cc, f])
    return out


@njit(cache=True)
def frame_solve(P, exp, log, inv):
    """For frames P (N,5,4) return B (N,4,4) with B e_i ~ P_i, B 1 ~ P_4.

    ok[n] is False when the five points are not in general position.
    """
    N = P.shape[0]
    B = np.zeros((N, 4, 4), np.int64)
    ok = np.zeros(N, np.bool_)
    A = np.zeros((4, 5), np.int64)
    for n in range(N):
        for i in range(4):
            for j in range(4):
                A[i, j] = P[n, j, i]
            A[i, 4] = P[n, 4, i]
        good = True
        for c in range(4):
            p = -1
            for r in range(c, 4):
                if A[r, c] != 0:
                    p = r
                    break
            if p < 0:
                good = False
                break
            if p != c:
                for j in range(5):
                    tmp = A[c, j]
                    A[c, j] = A[p, j]
                    A[p, j] = tmp
            iv = inv[A[c, c]]
            for j in range(5):
                A[c, j] = _mul(exp, log, A[c, j], iv)
            for r in range(4):
                if r != c and A[r, c] != 0:
                    f = A[r, c]
                    for j in range(5):
                        A[r, j] ^= _mul(exp, log, f, A[c, j])
        if not good:
            continue
        for i in range(4):
            if A[i, 4] == 0:
                good = False
        if not good:
            continue
        ok[n] = True
        for i in range(4):
            for j in range(4):
                B[n, i, j] = _mul(exp, log, P[n, j, i], A[j, 4])
    return B, ok
