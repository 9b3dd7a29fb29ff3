# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled enumeration kernels; semantics mirror _pykernels.py exactly."""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free, calloc
from libc.string cimport memset

ctypedef cnp.int32_t i32
ctypedef cnp.int64_t i64


cdef Py_ssize_t ipow(Py_ssize_t b, int e) noexcept nogil:
    cdef Py_ssize_t r = 1
    while e > 0:
        r *= b
        e -= 1
    return r


cdef inline void _step(const i32[:, ::1] addt, const i32[:, ::1] mult, const i32[::1] negt,
                       int* digits, int* cur, const i32[:, ::1] red, int n, int q, int e) noexcept nogil:
    # advance the digit counter by one and update the running residue
    cdef int i = 0, k, old, new
    while i < n:
        old = digits[i]
        new = old + 1
        if new == q:
            new = 0
        for k in range(e):
            cur[k] = addt[addt[cur[k], negt[mult[old, red[i, k]]]], mult[new, red[i, k]]]
        digits[i] = new
        if new != 0:
            return
        i += 1


def residue_histogram(const i32[:, ::1] addt, const i32[:, ::1] mult, const i32[::1] negt,
                      int q, int n, const i32[:, ::1] red):
    cdef int e = red.shape[1]
    cdef Py_ssize_t nbins = ipow(q, e), total = ipow(q, n), idx, code, w
    hist = np.zeros(nbins, dtype=np.int64)
    cdef i64[::1] h = hist
    cdef int* digits = <int*>calloc(n + 1, sizeof(int))
    cdef int* cur = <int*>calloc(e + 1, sizeof(int))
    cdef int k
    for k in range(e):
        cur[k] = red[n, k]
    with nogil:
        for idx in range(total):
            code = 0
            w = 1
            for k in range(e):
                code += cur[k] * w
                w *= q
            h[code] += 1
            _step(addt, mult, negt, digits, cur, red, n, q, e)
    free(digits)
    free(cur)
    return hist


def monic_power_sums(const i32[:, ::1] addt, const i32[:, ::1] mult, const i32[::1] negt,
                     int q, int n, int J, redP):
    cdef int width = n * J + 1
    out = np.zeros((J + 1, width), dtype=np.int64)
    cdef i64[:, ::1] o = out
    cdef const i32[:, ::1] rp
    cdef int d = 0
    cdef bint filt = redP is not None
    if filt:
        rp = redP
        d = rp.shape[1]
    else:
        rp = np.zeros((n + 1, 1), dtype=np.int32)
    cdef Py_ssize_t total = ipow(q, n), idx
    cdef int* digits = <int*>calloc(n + 1, sizeof(int))
    cdef int* curP = <int*>calloc(d + 1, sizeof(int))
    cdef int* a = <int*>calloc(n + 1, sizeof(int))
    cdef int* pw = <int*>calloc(width, sizeof(int))
    cdef int* nw = <int*>calloc(width, sizeof(int))
    cdef int j, i, k, L, count = 0
    cdef bint zero
    for k in range(d):
        curP[k] = rp[n, k]
    p = next(x for x in range(2, q + 1) if q % x == 0)
    with nogil:
        for idx in range(total):
            zero = filt
            for k in range(d):
                if curP[k] != 0:
                    zero = False
            if not zero:
                count += 1
                for i in range(n):
                    a[i] = digits[i]
                a[n] = 1
                memset(pw, 0, width * sizeof(int))
                pw[0] = 1
                for j in range(1, J + 1):
                    L = (j - 1) * n + 1
                    memset(nw, 0, width * sizeof(int))
                    for k in range(L):
                        if pw[k]:
                            for i in range(n + 1):
                                if a[i]:
                                    nw[k + i] = addt[nw[k + i], mult[pw[k], a[i]]]
                    for k in range(L + n):
                        pw[k] = nw[k]
                        if nw[k]:
                            o[j, k] = addt[o[j, k], nw[k]]
            if filt:
                _step(addt, mult, negt, digits, curP, rp, n, q, d)
            else:
                i = 0
                while i < n:
                    digits[i] += 1
                    if digits[i] < q:
                        break
                    digits[i] = 0
                    i += 1
    out[0, 0] = count % p
    free(digits); free(curP); free(a); free(pw); free(nw)
    return out


cdef inline void _mulmod_tab(const i32[:, ::1] addt, const i32[:, ::1] mult, const i32[::1] negt,
                             const int* a, const int* b, int* out, int* prod,
                             const i32[::1] modulus, int e) noexcept nogil:
    cdef int i, j, k, c
    for k in range(2 * e - 1):
        prod[k] = 0
    for i in range(e):
        if a[i]:
            for j in range(e):
                if b[j]:
                    prod[i + j] = addt[prod[i + j], mult[a[i], b[j]]]
    for k in range(2 * e - 2, e - 1, -1):
        c = prod[k]
        if c:
            for i in range(e):
                if modulus[i]:
                    prod[k - e + i] = addt[prod[k - e + i], negt[mult[c, modulus[i]]]]
    for k in range(e):
        out[k] = prod[k]


cdef inline void _mulmod_prime(const int* a, const int* b, int* out, i64* prod,
                               const i32[::1] modulus, int e, int p) noexcept nogil:
    cdef int i, j, k
    cdef i64 c
    for k in range(2 * e - 1):
        prod[k] = 0
    for i in range(e):
        if a[i]:
            for j in range(e):
                prod[i + j] += a[i] * b[j]
    for k in range(2 * e - 2, e - 1, -1):
        c = prod[k] % p
        if c:
            for i in range(e):
                prod[k - e + i] -= c * modulus[i]
    for k in range(e):
        c = prod[k] % p
        if c < 0:
            c += p
        out[k] = <int>c


def unit_power_table(const i32[:, ::1] addt, const i32[:, ::1] mult, const i32[::1] negt,
                     int q, int n, const i32[:, ::1] red, const i32[:, ::1] redP,
                     const i32[::1] modulus, const i32[:, ::1] teich_inv, int E):
    cdef int e = red.shape[1], d = redP.shape[1]
    cdef Py_ssize_t nclass = ipow(q, d), total = ipow(q, n), idx, cls, w
    out = np.zeros((nclass, E, e), dtype=np.int64)
    cdef i64[:, :, ::1] o = out
    p = next(x for x in range(2, q + 1) if q % x == 0)
    cdef int pp = p
    cdef bint prime = (p == q)
    cdef int* digits = <int*>calloc(n + 1, sizeof(int))
    cdef int* digits2 = <int*>calloc(n + 1, sizeof(int))
    cdef int* cur = <int*>calloc(e + 1, sizeof(int))
    cdef int* curP = <int*>calloc(d + 1, sizeof(int))
    cdef int* ti = <int*>calloc(e + 1, sizeof(int))
    cdef int* u = <int*>calloc(e + 1, sizeof(int))
    cdef int* pw = <int*>calloc(e + 1, sizeof(int))
    cdef int* prod = <int*>calloc(2 * e, sizeof(int))
    cdef i64* lprod = <i64*>calloc(2 * e, sizeof(i64))
    cdef int k, kk
    for k in range(e):
        cur[k] = red[n, k]
    for k in range(d):
        curP[k] = redP[n, k]
    with nogil:
        for idx in range(total):
            cls = 0
            w = 1
            for k in range(d):
                cls += curP[k] * w
                w *= q
            if cls != 0:
                for k in range(e):
                    ti[k] = teich_inv[cls, k]
                if prime:
                    _mulmod_prime(cur, ti, u, lprod, modulus, e, pp)
                else:
                    _mulmod_tab(addt, mult, negt, cur, ti, u, prod, modulus, e)
                for k in range(e):
                    pw[k] = 0
                pw[0] = 1
                for kk in range(E):
                    for k in range(e):
                        if pw[k]:
                            o[cls, kk, k] = addt[o[cls, kk, k], pw[k]]
                    if kk + 1 < E:
                        if prime:
                            _mulmod_prime(pw, u, pw, lprod, modulus, e, pp)
                        else:
                            _mulmod_tab(addt, mult, negt, pw, u, pw, prod, modulus, e)
            _step(addt, mult, negt, digits, cur, red, n, q, e)
            _step(addt, mult, negt, digits2, curP, redP, n, q, d)
    free(digits); free(digits2); free(cur); free(curP); free(ti); free(u); free(pw)
    free(prod); free(lprod)
    return out


def reducible_mask(const i32[:, ::1] addt, const i32[:, ::1] mult, int q, int n):
    mask = np.zeros(ipow(q, n), dtype=np.uint8)
    cdef cnp.uint8_t[::1] m = mask
    cdef int k, i, j
    cdef Py_ssize_t fc, gc, nf, ng, code, w
    cdef int* f = <int*>calloc(n + 1, sizeof(int))
    cdef int* g = <int*>calloc(n + 1, sizeof(int))
    cdef int* prod = <int*>calloc(n + 1, sizeof(int))
    with nogil:
        for k in range(1, n // 2 + 1):
            nf = 1
            for i in range(k):
                nf *= q
            ng = 1
            for i in range(n - k):
                ng *= q
            for fc in range(nf):
                code = fc
                for i in range(k):
                    f[i] = code % q
                    code //= q
                f[k] = 1
                for gc in range(ng):
                    code = gc
                    for i in range(n - k):
                        g[i] = code % q
                        code //= q
                    g[n - k] = 1
                    for i in range(n + 1):
                        prod[i] = 0
                    for i in range(k + 1):
                        if f[i]:
                            for j in range(n - k + 1):
                                if g[j]:
                                    prod[i + j] = addt[prod[i + j], mult[f[i], g[j]]]
                    code = 0
                    w = 1
                    for i in range(n):
                        code += prod[i] * w
                        w *= q
                    m[code] = 1
    free(f); free(g); free(prod)
    return mask


def count_sparse_roots(const i32[::1] zech, Py_ssize_t qm1, const i64[:, ::1] coeff_logs,
                       const i64[::1] exps, const cnp.uint8_t[::1] skip):
    cdef Py_ssize_t Q = coeff_logs.shape[0], T = coeff_logs.shape[1]
    cdef Py_ssize_t t0, lx, i, total = 0
    cdef i64 acc, term, c, z
    with nogil:
        for t0 in range(Q):
            if skip[t0]:
                continue
            for lx in range(qm1):
                acc = -1
                for i in range(T):
                    c = coeff_logs[t0, i]
                    if c < 0:
                        continue
                    term = (c + exps[i] * lx) % qm1
                    if acc < 0:
                        acc = term
                    else:
                        z = zech[(term - acc + qm1) % qm1]
                        if z < 0:
                            acc = -1
                        else:
                            acc = (acc + z) % qm1
                if acc < 0:
                    total += 1
    return total
