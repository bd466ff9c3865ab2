"""Pure-numpy versions of the kernels in ``_numba``; same results bit for bit."""
import numpy as np

KARATSUBA_THRESHOLD = 64

_U1 = np.uint64(1)
_U4 = np.uint64(4)


def _shift_left(words, s):
    # multiword shift by 0 < s < 64 bits, length preserved
    out = words << np.uint64(s)
    out[1:] |= words[:-1] >> np.uint64(64 - s)
    return out


def _comb_mul(a, b):
    n = a.shape[0]
    table = np.zeros((16, n + 1), dtype=np.uint64)
    table[1, :n] = b
    for v in range(2, 16):
        if v & 1:
            table[v] = table[v - 1] ^ table[1]
        else:
            table[v] = _shift_left(table[v >> 1], 1)
    width = 2 * n + 1
    rows = np.arange(n)[:, None]
    cols = rows + np.arange(n + 1)[None, :]
    acc = np.zeros(width, dtype=np.uint64)
    scratch = np.zeros((n, width), dtype=np.uint64)
    for k in range(15, -1, -1):
        nib = (a >> np.uint64(4 * k)) & np.uint64(15)
        scratch[rows, cols] = table[nib]
        acc ^= np.bitwise_xor.reduce(scratch, axis=0)
        if k:
            acc = _shift_left(acc, 4)
    return acc[: 2 * n]


def _karatsuba(a, b, threshold):
    n = a.shape[0]
    if n <= threshold:
        return _comb_mul(a, b)
    h = (n + 1) // 2
    a0, b0 = a[:h], b[:h]
    a1 = np.zeros(h, dtype=np.uint64)
    b1 = np.zeros(h, dtype=np.uint64)
    a1[: n - h] = a[h:]
    b1[: n - h] = b[h:]
    z0 = _karatsuba(a0, b0, threshold)
    z2 = _karatsuba(a1, b1, threshold)
    z1 = _karatsuba(a0 ^ a1, b0 ^ b1, threshold) ^ z0 ^ z2
    out = np.zeros(2 * n, dtype=np.uint64)
    out[: 2 * h] ^= z0
    out[2 * h :] ^= z2[: 2 * n - 2 * h]
    out[h : 3 * h] ^= z1
    return out


def gf2_mul_words(a, b, threshold=KARATSUBA_THRESHOLD):
    """Full carry-less product of two little-endian packed bit polynomials."""
    na, nb = a.shape[0], b.shape[0]
    if na == 0 or nb == 0:
        return np.zeros(na + nb, dtype=np.uint64)
    n = max(na, nb)
    pa = np.zeros(n, dtype=np.uint64)
    pb = np.zeros(n, dtype=np.uint64)
    pa[:na] = a
    pb[:nb] = b
    return _karatsuba(pa, pb, max(threshold, 1))[: na + nb].copy()


def regular_parity(t, nmax):
    """b_t(0..nmax) mod 2 by the coin recurrence; t == 0 means unrestricted."""
    c = np.zeros(nmax + 1, dtype=np.uint8)
    c[0] = 1
    for k in range(1, nmax + 1):
        if t and k % t == 0:
            continue
        # c[n] ^= c[n-k] in increasing n, one stride-k block at a time
        for start in range(k, nmax + 1, k):
            stop = min(start + k, nmax + 1)
            c[start:stop] ^= c[start - k : stop - k]
    return c
