"""Hot integer kernels, JIT-compiled with numba when available.

Every function here works on int64 scalars and arrays only, with all field
arithmetic routed through the q x q tables built by :mod:`ffcubic.algebra`.
The pure-Python definitions below are the reference semantics; numba merely
compiles the same source, so results are bit-identical either way.

Polynomials are little-endian int64 coefficient buffers.  The cubic residue
symbol is computed by the reciprocity-accelerated Euclidean recursion, which
is the resultant algorithm specialised to exponent arithmetic mod 3:
reduce a mod F, split off the leading constant c via chi3(c)^(deg F), make
the remainder monic, swap the arguments, and recurse.  This is valid for any
monic F over F_q with q = 1 mod 6 (the exponent it returns is that of
chi3(Res(F, a)), and cubic reciprocity for monic coprime pairs has no sign).
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - exercised only without numba
    NUMBA_AVAILABLE = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(f):
            return f

        return wrap


@njit(cache=True)
def symbol_in_place(a, da, F, dF, MUL, SUB, INV, CHI3):
    """Exponent of the cubic symbol (a/F)_3; -1 encodes the absorbed zero.

    Destroys the contents of both buffers.  F must be monic of degree dF;
    the buffers must be long enough for max(da, dF) + 1 entries.
    """
    e = 0
    while True:
        if dF == 0:
            return e % 3
        for i in range(da, dF - 1, -1):
            c = a[i]
            if c != 0:
                a[i] = 0
                off = i - dF
                for j in range(dF):
                    fj = F[j]
                    if fj != 0:
                        a[off + j] = SUB[a[off + j], MUL[c, fj]]
        d = dF - 1
        while d >= 0 and a[d] == 0:
            d -= 1
        if d < 0:
            return -1
        c = a[d]
        if c != 1:
            e += CHI3[c] * dF
            ic = INV[c]
            for j in range(d):
                a[j] = MUL[a[j], ic]
            a[d] = 1
        t = a
        a = F
        F = t
        da = dF
        dF = d


@njit(cache=True)
def count_monic_symbols(F, dF, n, q, MUL, SUB, INV, CHI3):
    """Counts (c0, c1, c2) of chi_F(f) exponent classes over all monic f of degree n."""
    counts = np.zeros(3, dtype=np.int64)
    w = max(dF, n) + 2
    abuf = np.zeros(w, dtype=np.int64)
    fbuf = np.zeros(w, dtype=np.int64)
    total = np.int64(1)
    for _ in range(n):
        total *= q
    for rank in range(total):
        r = rank
        for i in range(n):
            abuf[i] = r % q
            r //= q
        for i in range(n, w):
            abuf[i] = 0
        abuf[n] = 1
        for i in range(dF + 1):
            fbuf[i] = F[i]
        for i in range(dF + 1, w):
            fbuf[i] = 0
        s = symbol_in_place(abuf, n, fbuf, dF, MUL, SUB, INV, CHI3)
        if s >= 0:
            counts[s] += 1
    return counts


@njit(cache=True)
def eval_symbols_many_a(As, dAs, F, dF, MUL, SUB, INV, CHI3, out):
    """out[i] = exponent of (As[i] / F)_3, with -1 for the zero value."""
    m = As.shape[0]
    wa = As.shape[1]
    w = max(wa, dF + 1) + 1
    abuf = np.zeros(w, dtype=np.int64)
    fbuf = np.zeros(w, dtype=np.int64)
    for i in range(m):
        for j in range(wa):
            abuf[j] = As[i, j]
        for j in range(wa, w):
            abuf[j] = 0
        for j in range(dF + 1):
            fbuf[j] = F[j]
        for j in range(dF + 1, w):
            fbuf[j] = 0
        out[i] = symbol_in_place(abuf, dAs[i], fbuf, dF, MUL, SUB, INV, CHI3)


@njit(cache=True)
def eval_symbols_many_F(a, da, Fs, dF, MUL, SUB, INV, CHI3, out):
    """out[i] = exponent of (a / Fs[i])_3 for conductors of equal degree dF."""
    m = Fs.shape[0]
    w = max(da, dF) + 2
    abuf = np.zeros(w, dtype=np.int64)
    fbuf = np.zeros(w, dtype=np.int64)
    for i in range(m):
        for j in range(da + 1):
            abuf[j] = a[j]
        for j in range(da + 1, w):
            abuf[j] = 0
        for j in range(dF + 1):
            fbuf[j] = Fs[i, j]
        for j in range(dF + 1, w):
            fbuf[j] = 0
        out[i] = symbol_in_place(abuf, da, fbuf, dF, MUL, SUB, INV, CHI3)


@njit(cache=True)
def gauss_residue_counts(V, dV, F, dF, fac, fdeg, fexp, nfac, q, MUL, ADD, SUB, INV, CHI3):
    """Histogram of (chi_F(a) exponent, top coefficient of a*V mod F) over a mod F.

    chi_F is evaluated through the factorisation of F (rows of ``fac`` hold
    the prime factors, with multiplicities in ``fexp``), which realises the
    multiplicative extension of the symbol to non-square-free moduli.
    Returns a (3, q) int64 table; the complex Gauss sum is assembled from it
    exactly once outside the loop.
    """
    counts = np.zeros((3, q), dtype=np.int64)
    w = dF + dV + 3
    abuf = np.zeros(w, dtype=np.int64)
    pbuf = np.zeros(w, dtype=np.int64)
    wbuf = np.zeros(w, dtype=np.int64)
    adig = np.zeros(dF + 1, dtype=np.int64)
    total = np.int64(1)
    for _ in range(dF):
        total *= q
    for rank in range(total):
        r = rank
        for i in range(dF):
            adig[i] = r % q
            r //= q
        da = dF - 1
        while da >= 0 and adig[da] == 0:
            da -= 1
        # chi_F(a): zero residue or shared factor absorbs to zero
        if da < 0:
            continue
        e = np.int64(0)
        ok = True
        for t in range(nfac):
            dp = fdeg[t]
            for j in range(da + 1):
                abuf[j] = adig[j]
            for j in range(da + 1, w):
                abuf[j] = 0
            for j in range(dp + 1):
                pbuf[j] = fac[t, j]
            for j in range(dp + 1, w):
                pbuf[j] = 0
            s = symbol_in_place(abuf, da, pbuf, dp, MUL, SUB, INV, CHI3)
            if s < 0:
                ok = False
                break
            e += fexp[t] * s
        if not ok:
            continue
        # w = a*V mod F, then the 1/T Laurent coefficient of w/F is w[dF-1]
        for j in range(w):
            wbuf[j] = 0
        for i in range(da + 1):
            ai = adig[i]
            if ai != 0:
                for j in range(dV + 1):
                    vj = V[j]
                    if vj != 0:
                        wbuf[i + j] = ADD[wbuf[i + j], MUL[ai, vj]]
        for i in range(da + dV, dF - 1, -1):
            c = wbuf[i]
            if c != 0:
                wbuf[i] = 0
                off = i - dF
                for j in range(dF):
                    fj = F[j]
                    if fj != 0:
                        wbuf[off + j] = SUB[wbuf[off + j], MUL[c, fj]]
        counts[e % 3, wbuf[dF - 1]] += 1
    return counts


@njit(cache=True)
def mark_composites(mask, pviews, pdegs, nprimes, n, q, MUL, ADD):
    """Mark ranks of reducible monics of degree n given all primes of degree <= n//2."""
    w = n + 1
    mbuf = np.zeros(w, dtype=np.int64)
    prod = np.zeros(w, dtype=np.int64)
    for t in range(nprimes):
        dp = pdegs[t]
        dm = n - dp
        mtotal = np.int64(1)
        for _ in range(dm):
            mtotal *= q
        for mrank in range(mtotal):
            r = mrank
            for i in range(dm):
                mbuf[i] = r % q
                r //= q
            mbuf[dm] = 1
            for i in range(w):
                prod[i] = 0
            for i in range(dm + 1):
                mi = mbuf[i]
                if mi != 0:
                    for j in range(dp + 1):
                        pj = pviews[t, j]
                        if pj != 0:
                            prod[i + j] = ADD[prod[i + j], MUL[mi, pj]]
            rank = np.int64(0)
            for i in range(n - 1, -1, -1):
                rank = rank * q + prod[i]
            mask[rank] = 1
