"""Brute-force partition counts, kept independent of the series machinery.

Exact counts come from the coin-counting recurrence over the allowed parts.
Nothing there goes through an Euler product, so these counts can serve as
ground truth for the q-series side. Parity tables past ``DP_PARITY_LIMIT``
switch to f_t / f_1 over GF(2), since the recurrence is quadratic in n.
"""
from __future__ import annotations

import os
import threading
from dataclasses import dataclass

import numpy as np

from . import kernels
from .series import Ring, Series, euler_product, inverse, mul

__all__ = [
    "OracleRangeError",
    "ParityOracle",
    "RegularCountTable",
    "count_partitions",
    "count_regular",
    "oracle_series",
    "parity_oracle",
]

DEFAULT_MAX_ORACLE_N = 10**6
DP_PARITY_LIMIT = 2**17


class OracleRangeError(RuntimeError):
    """A partition argument exceeded the configured oracle cap."""


@dataclass(frozen=True)
class RegularCountTable:
    """b_t(0..nmax), exact; t == 0 means unrestricted partitions p(n)."""

    t: int
    nmax: int
    counts: tuple[int, ...]

    def __getitem__(self, n: int) -> int:
        return self.counts[n]

    def __len__(self) -> int:
        return len(self.counts)


def _coin_dp(t: int, nmax: int) -> tuple[int, ...]:
    c = [0] * (nmax + 1)
    c[0] = 1
    for k in range(1, nmax + 1):
        if t and k % t == 0:
            continue
        for n in range(k, nmax + 1):
            c[n] += c[n - k]
    return tuple(c)


def count_regular(t: int, nmax: int) -> RegularCountTable:
    """Number of partitions of n with no part divisible by t, for n <= nmax."""
    if t < 2:
        raise ValueError(f"regularity parameter must be >= 2, got {t}")
    if nmax < 0:
        raise ValueError("nmax must be nonnegative")
    return RegularCountTable(t, nmax, _coin_dp(t, nmax))


def count_partitions(nmax: int) -> RegularCountTable:
    if nmax < 0:
        raise ValueError("nmax must be nonnegative")
    return RegularCountTable(0, nmax, _coin_dp(0, nmax))


def oracle_series(t: int, precision: int) -> Series:
    """sum b_t(n) q^n as an integer series, filled from the DP table."""
    return Series(count_regular(t, precision - 1).counts, precision)


def _parity_table(t: int, nmax: int) -> np.ndarray:
    if nmax <= DP_PARITY_LIMIT:
        return kernels.regular_parity(t, nmax)
    P = nmax + 1
    gf = inverse(euler_product(1, P, Ring.GF2))
    if t:
        gf = mul(euler_product(t, P, Ring.GF2), gf)
    return gf.bits()


class ParityOracle:
    """Memoized tables of b_t(n) mod 2, one per t, grown on demand.

    The congruence checks need b_t at arguments up to millions, where the
    exact big-integer table is too slow. Up to ``DP_PARITY_LIMIT`` the
    recurrence runs mod 2 in a compiled kernel, beyond it the table is the
    GF(2) product f_t / f_1. Requests above ``max_n`` raise
    :class:`OracleRangeError` instead of silently truncating.
    """

    def __init__(self, max_n: int | None = None):
        if max_n is None:
            max_n = int(os.environ.get("ETAQ_MAX_ORACLE_N", DEFAULT_MAX_ORACLE_N))
        self.max_n = max_n
        self._tables: dict[int, np.ndarray] = {}
        self._lock = threading.Lock()

    def table(self, t: int, nmax: int) -> np.ndarray:
        if t == 1 or t < 0:
            raise ValueError(f"regularity parameter must be 0 or >= 2, got {t}")
        if nmax > self.max_n:
            raise OracleRangeError(f"b_{t}({nmax}) exceeds oracle cap {self.max_n}")
        with self._lock:
            tab = self._tables.get(t)
            if tab is None or tab.shape[0] <= nmax:
                size = min(max(nmax, 2 * (tab.shape[0] if tab is not None else 0), 1024), self.max_n)
                tab = _parity_table(t, size)
                tab.setflags(write=False)
                self._tables[t] = tab
        return tab

    def __call__(self, t: int, n: int) -> int:
        """b_t(n) mod 2; zero for negative n."""
        if n < 0:
            return 0
        return int(self.table(t, n)[n])


_default_oracle: ParityOracle | None = None


def parity_oracle() -> ParityOracle:
    """Process-wide shared oracle (honours ``ETAQ_MAX_ORACLE_N``)."""
    global _default_oracle
    if _default_oracle is None:
        _default_oracle = ParityOracle()
    return _default_oracle
