"""Numba-compiled GF(2) and partition-parity kernels."""
import numpy as np
from numba import njit

KARATSUBA_THRESHOLD = 64


@njit(cache=True, nogil=True)
def _comb_mul(a, b, out):
    # 4-bit windowed comb; len(a) == len(b) == n, len(out) >= 2n, out zeroed.
    n = a.shape[0]
    table = np.zeros((16, n + 1), dtype=np.uint64)
    for j in range(n):
        table[1, j] = b[j]
    for v in range(2, 16):
        if v & 1:
            for j in range(n + 1):
                table[v, j] = table[v - 1, j] ^ table[1, j]
        else:
            h = v >> 1
            carry = np.uint64(0)
            for j in range(n + 1):
                w = table[h, j]
                table[v, j] = (w << np.uint64(1)) | carry
                carry = w >> np.uint64(63)
    acc = np.zeros(2 * n + 1, dtype=np.uint64)
    for k in range(15, -1, -1):
        sh = np.uint64(4 * k)
        for i in range(n):
            v = (a[i] >> sh) & np.uint64(15)
            if v:
                row = table[v]
                for j in range(n + 1):
                    acc[i + j] ^= row[j]
        if k:
            carry = np.uint64(0)
            for j in range(2 * n + 1):
                w = acc[j]
                acc[j] = (w << np.uint64(4)) | carry
                carry = w >> np.uint64(60)
    for j in range(2 * n):
        out[j] ^= acc[j]


@njit(cache=True, nogil=True)
def _karatsuba(a, b, out, threshold):
    n = a.shape[0]
    if n <= threshold:
        _comb_mul(a, b, out)
        return
    h = (n + 1) // 2
    a0 = a[:h]
    b0 = b[:h]
    a1 = np.zeros(h, dtype=np.uint64)
    b1 = np.zeros(h, dtype=np.uint64)
    a1[: n - h] = a[h:]
    b1[: n - h] = b[h:]
    z0 = np.zeros(2 * h, dtype=np.uint64)
    z2 = np.zeros(2 * h, dtype=np.uint64)
    z1 = np.zeros(2 * h, dtype=np.uint64)
    _karatsuba(a0, b0, z0, threshold)
    _karatsuba(a1, b1, z2, threshold)
    _karatsuba(a0 ^ a1, b0 ^ b1, z1, threshold)
    for j in range(2 * h):
        z1[j] ^= z0[j] ^ z2[j]
        out[j] ^= z0[j]
    for j in range(2 * n - 2 * h):
        out[2 * h + j] ^= z2[j]
    for j in range(2 * h):
        out[h + j] ^= z1[j]


@njit(cache=True, nogil=True)
def gf2_mul_words(a, b, threshold=KARATSUBA_THRESHOLD):
    """Full carry-less product of two little-endian packed bit polynomials."""
    na = a.shape[0]
    nb = b.shape[0]
    n = max(na, nb)
    if na == 0 or nb == 0:
        return np.zeros(na + nb, dtype=np.uint64)
    pa = np.zeros(n, dtype=np.uint64)
    pb = np.zeros(n, dtype=np.uint64)
    pa[:na] = a
    pb[:nb] = b
    out = np.zeros(2 * n, dtype=np.uint64)
    _karatsuba(pa, pb, out, max(threshold, 1))
    return out[: na + nb].copy()


@njit(cache=True, nogil=True)
def regular_parity(t, nmax):
    """b_t(0..nmax) mod 2 by the coin recurrence; t == 0 means unrestricted."""
    c = np.zeros(nmax + 1, dtype=np.uint8)
    c[0] = 1
    for k in range(1, nmax + 1):
        if t and k % t == 0:
            continue
        # stride-k blocks never alias their source, so the inner loop vectorizes
        for start in range(k, nmax + 1, k):
            stop = min(start + k, nmax + 1)
            src = c[start - k : stop - k]
            dst = c[start:stop]
            for i in range(stop - start):
                dst[i] ^= src[i]
    return c
