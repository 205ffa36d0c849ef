"""Pure-numpy versions of the hot loops (same signatures as _numba.py)."""
import numpy as np

CHUNK = 1 << 15


def _hash(rows, rnd):
    return (rows.astype(np.uint64) * rnd).sum(axis=1, dtype=np.uint64)


def perm_closure(gens, cap, rnd):
    n = gens.shape[1]
    ident = np.arange(n, dtype=np.uint8)[None, :]
    known = ident
    known_h = _hash(ident, rnd)
    frontier = ident
    while len(frontier):
        cand = np.concatenate([frontier[:, g] for g in gens])
        h = _hash(cand, rnd)
        h, first = np.unique(h, return_index=True)
        cand = cand[first]
        order = np.argsort(known_h)
        sk = known_h[order]
        pos = np.minimum(np.searchsorted(sk, h), len(sk) - 1)
        seen = sk[pos] == h
        if np.any(seen) and not np.array_equal(known[order[pos[seen]]], cand[seen]):
            raise RuntimeError("hash collision in closure")
        frontier = cand[~seen]
        if len(known) + len(frontier) > cap:
            return known, -1
        known = np.concatenate([known, frontier])
        known_h = np.concatenate([known_h, h[~seen]])
    return known, len(known)


def _deg(P):
    nz = P != 0
    return np.where(nz.any(axis=-1), 2 - np.argmax(nz[..., ::-1], axis=-1), -1)


def _polymod(a, b, exp, log, inv):
    """Row-wise a mod b for (N,3) polynomial arrays; rows with b == 0 keep a."""
    a = a.copy()
    db = _deg(b)
    rows = np.arange(len(a))
    lb = inv[b[rows, np.maximum(db, 0)]]
    for _ in range(3):
        da = _deg(a)
        act = (db >= 0) & (da >= db)
        if not act.any():
            break
        f = exp[log[a[rows, np.maximum(da, 0)]] + log[lb]]
        s = da - db
        for i in range(3):
            src = i - s
            valid = act & (src >= 0) & (src <= 2)
            bi = b[rows, np.clip(src, 0, 2)]
            a[:, i] ^= np.where(valid, exp[log[f] + log[bi]], 0)
    return a


def _has_common_root(C, exp, log, inv):
    """C has shape (N,4,3); vectorized gcd of the four quadratics."""
    g = C[:, 0].copy()
    for p in range(1, 4):
        h = C[:, p].copy()
        for _ in range(4):
            live = _deg(h) >= 0
            if not live.any():
                break
            r = _polymod(g, h, exp, log, inv)
            g = np.where(live[:, None], h, g)
            h = np.where(live[:, None], r, 0)
    return _deg(g) != 0


def _pw(exp, log, q1, a, e):
    a = np.asarray(a)
    if e == 0:
        return np.ones_like(a)
    return np.where(a == 0, 0, exp[(log[a] * e) % q1])


def _quad_in_x(qcoef, qexp, y, z, t, exp, log, q1):
    y, z, t = np.broadcast_arrays(np.asarray(y), np.asarray(z), np.asarray(t))
    out = np.zeros(y.shape + (4, 3), np.int64)
    for m in range(qexp.shape[0]):
        mono = exp[log[_pw(exp, log, q1, y, qexp[m, 1])] + log[_pw(exp, log, q1, z, qexp[m, 2])]]
        mono = exp[log[mono] + log[_pw(exp, log, q1, t, qexp[m, 3])]]
        for p in range(4):
            if qcoef[p, m]:
                out[..., p, qexp[m, 0]] ^= exp[log[mono] + log[qcoef[p, m]]]
    return out


def singular_scan(qcoef, qexp, exp, log, inv, order):
    q1 = order - 1
    c = _quad_in_x(qcoef, qexp, 0, 0, 0, exp, log, q1)
    if not np.any(c[:, 2]):
        return True
    c = _quad_in_x(qcoef, qexp, [1], 0, 0, exp, log, q1)
    if _has_common_root(c, exp, log, inv).any():
        return True
    ys = np.arange(order)
    if _has_common_root(_quad_in_x(qcoef, qexp, ys, 1, 0, exp, log, q1), exp, log, inv).any():
        return True
    yy, zz = (a.ravel() for a in np.meshgrid(ys, ys, indexing="xy"))
    for s in range(0, len(yy), CHUNK):
        c = _quad_in_x(qcoef, qexp, yy[s:s + CHUNK], zz[s:s + CHUNK], 1, exp, log, q1)
        if _has_common_root(c, exp, log, inv).any():
            return True
    return False


def substitute_cubic(coef, factors, idx3, T, exp, log):
    N = T.shape[0]
    out = np.zeros((N, 20), np.int64)
    flat = idx3.ravel()
    for s in range(0, N, 4096):
        Tc = T[s:s + 4096]
        acc = np.zeros((len(Tc), 20), np.int64)
        for m in np.flatnonzero(coef):
            a, b, c = factors[m]
            ra = exp[log[Tc[:, a, :]] + log[coef[m]]]
            prod = exp[log[ra[:, :, None]] + log[Tc[:, b, None, :]]]
            prod = exp[log[prod[:, :, :, None]] + log[Tc[:, c, None, None, :]]]
            prod = prod.reshape(len(Tc), 64)
            for j in range(20):
                sel = flat == j
                acc[:, j] ^= np.bitwise_xor.reduce(prod[:, sel], axis=1)
        out[s:s + 4096] = acc
    return out


def frame_solve(P, exp, log, inv):
    N = P.shape[0]
    A = np.concatenate([np.swapaxes(P[:, :4, :], 1, 2), P[:, 4, :, None]], axis=2).copy()
    ok = np.ones(N, bool)
    rows = np.arange(N)
    for c in range(4):
        sub = A[:, c:, c] != 0
        has = sub.any(axis=1)
        ok &= has
        p = c + np.argmax(sub, axis=1)
        rc, rp = A[rows, c].copy(), A[rows, p].copy()
        A[rows, p] = rc
        A[rows, c] = rp
        piv = np.where(A[:, c, c] == 0, 1, A[:, c, c])
        A[:, c] = exp[log[A[:, c]] + log[inv[piv]][:, None]]
        for r in range(4):
            if r == c:
                continue
            f = A[:, r, c]
            A[:, r] ^= exp[log[f][:, None] + log[A[:, c]]]
    lam = A[:, :, 4]
    ok &= np.all(lam != 0, axis=1)
    B = exp[log[np.swapaxes(P[:, :4, :], 1, 2)] + log[lam][:, None, :]]
    B[~ok] = 0
    return B, ok
