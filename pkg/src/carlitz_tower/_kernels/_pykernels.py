"""Reference (numpy) implementations of the enumeration kernels.

Every function here has a twin in ``_ckernels.pyx`` with the same
signature and the same result.  Field elements are integer codes and
field arithmetic goes through the dense tables of ``FieldSpec``.

Monic polynomials of degree n are visited in code order: the integer
``b`` stands for ``t^n + sum_i b_i t^i`` with ``b_i = (b // q^i) % q``.
Residues are coefficient vectors (low degree first) modulo some M, and
``red[i]`` holds ``t^i mod M``.
"""

import numpy as np

CHUNK = 1 << 16


def _digits(codes, q, n):
    return np.stack([(codes // q**i) % q for i in range(n)], axis=1) if n else np.zeros((len(codes), 0), np.int64)


def _residues(addt, mult, q, n, red, codes):
    """Residues mod M of the monics with the given codes, shape (len, e)."""
    res = np.broadcast_to(red[n], (len(codes), red.shape[1])).copy()
    for i in range(n):
        digit = (codes // q**i) % q
        res = addt[res, mult[digit[:, None], red[i][None, :]]]
    return res


def _field_sum(arr, q, axis=0):
    """Sum of field codes along an axis (digitwise over the prime field)."""
    p = _char(q)
    r = round(np.log(q) / np.log(p))
    out = np.zeros(np.delete(arr.shape, axis), dtype=np.int64)
    for i in range(r):
        digit = (arr // p**i) % p
        out += (digit.sum(axis=axis, dtype=np.int64) % p) * p**i
    return out


def _char(q):
    return next(d for d in range(2, q + 1) if q % d == 0)


def _mulmod(addt, mult, negt, a, b, modulus):
    """Row-wise product of residue vectors a, b modulo the monic modulus."""
    rows, e = a.shape
    prod = np.zeros((rows, 2 * e - 1), dtype=a.dtype)
    for i in range(e):
        prod[:, i:i + e] = addt[prod[:, i:i + e], mult[a[:, i:i + 1], b]]
    for k in range(2 * e - 2, e - 1, -1):
        c = prod[:, k:k + 1]
        prod[:, k - e:k] = addt[prod[:, k - e:k], negt[mult[c, modulus[None, :e]]]]
    return prod[:, :e]


def residue_histogram(addt, mult, negt, q, n, red):
    e = red.shape[1]
    total = q**n
    weights = q ** np.arange(e, dtype=np.int64)
    hist = np.zeros(q**e, dtype=np.int64)
    for start in range(0, total, CHUNK):
        codes = np.arange(start, min(total, start + CHUNK), dtype=np.int64)
        res = _residues(addt, mult, q, n, red, codes)
        hist += np.bincount(res.astype(np.int64) @ weights, minlength=q**e)
    return hist


def monic_power_sums(addt, mult, negt, q, n, J, redP):
    """Codes of sum a^j over monic a of degree n (optionally a != 0 mod P), j = 0..J."""
    codes = np.arange(q**n, dtype=np.int64)
    if redP is not None:
        resP = _residues(addt, mult, q, n, redP, codes)
        codes = codes[resP.any(axis=1)]
    A = np.concatenate([_digits(codes, q, n), np.ones((len(codes), 1), np.int64)], axis=1)
    width = n * J + 1
    out = np.zeros((J + 1, width), dtype=np.int64)
    out[0, 0] = len(codes) % _char(q)
    pw = np.zeros((len(codes), width), dtype=np.int64)
    pw[:, 0] = 1
    for j in range(1, J + 1):
        L = (j - 1) * n + 1
        new = np.zeros_like(pw)
        for i in range(n + 1):
            new[:, i:i + L] = addt[new[:, i:i + L], mult[pw[:, :L], A[:, i:i + 1]]]
        pw = new
        out[j] = _field_sum(pw, q, axis=0)
    return out


def unit_power_table(addt, mult, negt, q, n, red, redP, modulus, teich_inv, E):
    """T[c, k] = sum over monic a of degree n with a = c mod P of (a * teich_inv[c])^k mod M."""
    e, d = red.shape[1], redP.shape[1]
    wP = q ** np.arange(d, dtype=np.int64)
    out = np.zeros((q**d, E, e), dtype=np.int64)
    total = q**n
    for start in range(0, total, CHUNK):
        codes = np.arange(start, min(total, start + CHUNK), dtype=np.int64)
        res = _residues(addt, mult, q, n, red, codes)
        cls = _residues(addt, mult, q, n, redP, codes).astype(np.int64) @ wP
        keep = cls != 0
        res, cls = res[keep], cls[keep]
        u = _mulmod(addt, mult, negt, res, teich_inv[cls], modulus)
        pw = np.zeros_like(u)
        pw[:, 0] = 1
        for k in range(E):
            for c in np.unique(cls):
                sel = pw[cls == c]
                out[c, k] = addt[out[c, k], _field_sum(sel, q, axis=0)]
            if k + 1 < E:
                pw = _mulmod(addt, mult, negt, pw, u, modulus)
    return out


def reducible_mask(addt, mult, q, n):
    """mask[b] = 1 iff the monic of degree n with code b is reducible."""
    mask = np.zeros(q**n, dtype=np.uint8)
    w = q ** np.arange(n, dtype=np.int64)
    for k in range(1, n // 2 + 1):
        G = np.concatenate([_digits(np.arange(q ** (n - k), dtype=np.int64), q, n - k),
                            np.ones((q ** (n - k), 1), np.int64)], axis=1)
        for fcode in range(q**k):
            f = [(fcode // q**i) % q for i in range(k)] + [1]
            prod = np.zeros((len(G), n + 1), dtype=np.int64)
            for i, c in enumerate(f):
                if c:
                    prod[:, i:i + n - k + 1] = addt[prod[:, i:i + n - k + 1], mult[c, G]]
            mask[prod[:, :n] @ w] = 1
    return mask


def _zech_add(zech, qm1, a, b):
    """Add field elements given by discrete logs (-1 encodes zero)."""
    out = np.where(a < 0, b, a)
    both = (a >= 0) & (b >= 0)
    z = zech[(b - a) % qm1]
    out = np.where(both, np.where(z < 0, -1, (a + z) % qm1), out)
    return out


def count_sparse_roots(zech, qm1, coeff_logs, exps, skip):
    """#{(t0, x0): x0 != 0, sum_i c_i(t0) x0^exps[i] = 0, skip[t0] == 0} over F_Q, Q = qm1 + 1."""
    lx = np.arange(qm1, dtype=np.int64)
    total = 0
    for t0 in range(coeff_logs.shape[0]):
        if skip[t0]:
            continue
        acc = np.full(qm1, -1, dtype=np.int64)
        for i, ex in enumerate(exps):
            c = int(coeff_logs[t0, i])
            if c >= 0:
                acc = _zech_add(zech, qm1, acc, (c + int(ex) * lx) % qm1)
        total += int(np.count_nonzero(acc < 0))
    return total
