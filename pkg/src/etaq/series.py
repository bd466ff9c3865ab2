"""Truncated formal power series in one variable q, over Z or GF(2).

A :class:`Series` holds the coefficients of q^0 .. q^(P-1), where P is its
precision. Integer coefficients are exact Python ints. GF(2) coefficients are
bit-packed into little-endian uint64 words (coefficient n is bit n % 64 of
word n // 64), and multiplied with a carry-less Karatsuba kernel.

Every binary operation truncates to the smaller precision of its operands;
nothing ever extends precision on its own.
"""
from __future__ import annotations

import enum
from pathlib import Path
from typing import Iterable, Sequence, Union

import numpy as np

from . import kernels

__all__ = [
    "Ring",
    "RingMismatchError",
    "Series",
    "dissect",
    "euler_product",
    "inflate",
    "inverse",
    "load_series",
    "mul",
    "power",
    "save_series",
    "to_gf2",
]


class Ring(str, enum.Enum):
    INT = "int"
    GF2 = "gf2"


class RingMismatchError(ValueError):
    """Operands live over different coefficient rings."""


def _nwords(precision: int) -> int:
    return (precision + 63) // 64


def _mask_tail(words: np.ndarray, precision: int) -> np.ndarray:
    rem = precision % 64
    if rem and words.shape[0]:
        words[-1] &= np.uint64((1 << rem) - 1)
    return words


def _pack_bits(bits: np.ndarray, precision: int) -> np.ndarray:
    nw = _nwords(precision)
    padded = np.zeros(nw * 64, dtype=np.uint8)
    n = min(bits.shape[0], precision)
    padded[:n] = bits[:n] & 1
    return np.packbits(padded, bitorder="little").view("<u8").astype(np.uint64)


def _unpack_bits(words: np.ndarray, precision: int) -> np.ndarray:
    raw = np.ascontiguousarray(words, dtype="<u8").view(np.uint8)
    return np.unpackbits(raw, bitorder="little")[:precision]


class Series:
    """Immutable truncated power series.

    ``Series([1, -1, 0, 1], precision=6)`` is 1 - q + q^3 + O(q^6). Missing
    coefficients are zero; extra ones beyond the precision are dropped.
    """

    __slots__ = ("ring", "precision", "_data")

    def __init__(
        self,
        coeffs: Iterable[int] = (),
        precision: int | None = None,
        ring: Union[Ring, str] = Ring.INT,
    ):
        ring = Ring(ring)
        values = [int(c) for c in coeffs]
        if precision is None:
            precision = len(values)
        if precision < 1:
            raise ValueError("precision must be positive")
        values = values[:precision]
        values.extend([0] * (precision - len(values)))
        self.ring = ring
        self.precision = precision
        if ring is Ring.INT:
            self._data = tuple(values)
        else:
            bits = np.fromiter((v & 1 for v in values), dtype=np.uint8, count=precision)
            self._data = _freeze(_pack_bits(bits, precision))

    @classmethod
    def _make(cls, ring: Ring, precision: int, data) -> "Series":
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.precision = precision
        if ring is Ring.INT:
            obj._data = tuple(data)
        else:
            obj._data = _freeze(_mask_tail(np.array(data, dtype=np.uint64), precision))
        return obj

    @classmethod
    def from_words(cls, words: np.ndarray, precision: int) -> "Series":
        """GF(2) series from packed little-endian words (extra bits ignored)."""
        if precision < 1:
            raise ValueError("precision must be positive")
        w = np.zeros(_nwords(precision), dtype=np.uint64)
        n = min(w.shape[0], len(words))
        w[:n] = np.asarray(words, dtype=np.uint64)[:n]
        return cls._make(Ring.GF2, precision, w)

    @classmethod
    def from_bits(cls, bits: Sequence[int] | np.ndarray, precision: int | None = None) -> "Series":
        arr = np.asarray(bits, dtype=np.uint8) & 1
        if precision is None:
            precision = arr.shape[0]
        return cls._make(Ring.GF2, precision, _pack_bits(arr, precision))

    @classmethod
    def zero(cls, precision: int, ring: Union[Ring, str] = Ring.INT) -> "Series":
        return cls((), precision, ring)

    @classmethod
    def one(cls, precision: int, ring: Union[Ring, str] = Ring.INT) -> "Series":
        return cls((1,), precision, ring)

    @classmethod
    def monomial(cls, exponent: int, precision: int, ring: Union[Ring, str] = Ring.INT, coeff: int = 1):
        if exponent < 0:
            raise ValueError("negative exponent")
        coeffs = [0] * min(exponent, precision) + [coeff]
        return cls(coeffs, precision, ring)

    # -- access ---------------------------------------------------------

    @property
    def coeffs(self) -> list[int]:
        if self.ring is Ring.INT:
            return list(self._data)
        return _unpack_bits(self._data, self.precision).astype(int).tolist()

    @property
    def words(self) -> np.ndarray:
        """Packed words of a GF(2) series (read-only view)."""
        self._require(Ring.GF2)
        return self._data

    def bits(self) -> np.ndarray:
        """Coefficients of a GF(2) series as a uint8 array."""
        self._require(Ring.GF2)
        return _unpack_bits(self._data, self.precision)

    @property
    def valuation(self) -> int:
        if self.ring is Ring.INT:
            for i, c in enumerate(self._data):
                if c:
                    return i
            return self.precision
        nz = np.flatnonzero(self._data)
        if nz.size == 0:
            return self.precision
        w = int(nz[0])
        word = int(self._data[w])
        return 64 * w + (word & -word).bit_length() - 1

    def is_zero(self) -> bool:
        return self.valuation == self.precision

    def nonzero_indices(self) -> list[int]:
        if self.ring is Ring.INT:
            return [i for i, c in enumerate(self._data) if c]
        return np.flatnonzero(self.bits()).tolist()

    def __getitem__(self, n: int) -> int:
        if not 0 <= n < self.precision:
            raise IndexError(f"coefficient {n} outside precision {self.precision}")
        if self.ring is Ring.INT:
            return self._data[n]
        return int(self._data[n >> 6] >> np.uint64(n & 63)) & 1

    def __len__(self) -> int:
        return self.precision

    def _require(self, ring: Ring) -> None:
        if self.ring is not ring:
            raise RingMismatchError(f"operation needs a {ring.value} series, got {self.ring.value}")

    def _check(self, other: "Series") -> int:
        if not isinstance(other, Series):
            raise TypeError(f"expected Series, got {type(other).__name__}")
        if self.ring is not other.ring:
            raise RingMismatchError(f"{self.ring.value} vs {other.ring.value}")
        return min(self.precision, other.precision)

    # -- arithmetic -----------------------------------------------------

    def truncate(self, precision: int) -> "Series":
        if precision < 1:
            raise ValueError("precision must be positive")
        if precision > self.precision:
            raise ValueError(f"cannot extend precision {self.precision} to {precision}")
        if precision == self.precision:
            return self
        if self.ring is Ring.INT:
            return Series._make(Ring.INT, precision, self._data[:precision])
        return Series._make(Ring.GF2, precision, self._data[: _nwords(precision)])

    def shift(self, v: int) -> "Series":
        """Multiply by q^v (v >= 0), keeping the precision."""
        if v < 0:
            raise ValueError("negative shift; factor the series as q^v times a unit instead")
        if v == 0:
            return self
        P = self.precision
        if self.ring is Ring.INT:
            data = (0,) * min(v, P) + self._data[: max(P - v, 0)]
            return Series._make(Ring.INT, P, data)
        bits = np.zeros(P, dtype=np.uint8)
        if v < P:
            bits[v:] = self.bits()[: P - v]
        return Series._make(Ring.GF2, P, _pack_bits(bits, P))

    def __add__(self, other: "Series") -> "Series":
        P = self._check(other)
        if self.ring is Ring.INT:
            return Series._make(Ring.INT, P, [x + y for x, y in zip(self._data, other._data)])
        nw = _nwords(P)
        return Series._make(Ring.GF2, P, self._data[:nw] ^ other._data[:nw])

    def __neg__(self) -> "Series":
        if self.ring is Ring.GF2:
            return self
        return Series._make(Ring.INT, self.precision, [-x for x in self._data])

    def __sub__(self, other: "Series") -> "Series":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Series):
            return mul(self, other)
        if isinstance(other, (int, np.integer)):
            c = int(other)
            if self.ring is Ring.INT:
                return Series._make(Ring.INT, self.precision, [c * x for x in self._data])
            return self if c & 1 else Series.zero(self.precision, Ring.GF2)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other: "Series") -> "Series":
        return mul(self, inverse(other))

    def __pow__(self, e: int) -> "Series":
        return power(self, e)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        if self.ring is not other.ring or self.precision != other.precision:
            return False
        if self.ring is Ring.INT:
            return self._data == other._data
        return bool(np.array_equal(self._data, other._data))

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        terms = []
        shown = 0
        for n, c in enumerate(self.coeffs):
            if not c:
                continue
            if shown == 12:
                terms.append("...")
                break
            mono = "1" if n == 0 else ("q" if n == 1 else f"q^{n}")
            if n == 0:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append(f"-{mono}")
            else:
                terms.append(f"{c}*{mono}")
            shown += 1
        body = " + ".join(terms).replace("+ -", "- ") if terms else "0"
        return f"Series<{self.ring.value}>({body} + O(q^{self.precision}))"


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


# -- integer multiplication by Kronecker substitution -----------------------


def _int_mul(x: Sequence[int], y: Sequence[int], n: int) -> list[int]:
    """First n coefficients of x*y, exact.

    Both operands are packed into one big integer each (fixed-width slots wide
    enough that no slot can overflow), multiplied once, and unpacked.
    """
    x = list(x[:n])
    y = list(y[:n])
    mx = max((abs(c) for c in x), default=0)
    my = max((abs(c) for c in y), default=0)
    if mx == 0 or my == 0:
        return [0] * n
    slot_bits = mx.bit_length() + my.bit_length() + min(len(x), len(y)).bit_length() + 1
    nbytes = (slot_bits + 8) // 8
    X = _kron_pack(x, nbytes)
    Y = _kron_pack(y, nbytes)
    width = 8 * nbytes
    half = 1 << (width - 1)
    offset = int.from_bytes((b"\x00" * (nbytes - 1) + b"\x80") * n, "little")
    Z = (X * Y + offset) & ((1 << (width * n)) - 1)
    raw = Z.to_bytes(nbytes * n, "little")
    return [int.from_bytes(raw[i * nbytes : (i + 1) * nbytes], "little") - half for i in range(n)]


def _kron_pack(c: list[int], nbytes: int) -> int:
    pos = b"".join((v if v > 0 else 0).to_bytes(nbytes, "little") for v in c)
    neg = b"".join((-v if v < 0 else 0).to_bytes(nbytes, "little") for v in c)
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def _gf2_mul_words(a: np.ndarray, b: np.ndarray, precision: int) -> np.ndarray:
    nw = _nwords(precision)
    prod = kernels.gf2_mul_words(np.ascontiguousarray(a[:nw]), np.ascontiguousarray(b[:nw]))
    out = np.zeros(nw, dtype=np.uint64)
    m = min(nw, prod.shape[0])
    out[:m] = prod[:m]
    return out


# -- operations -------------------------------------------------------------


def euler_product(k: int, precision: int, ring: Union[Ring, str] = Ring.INT) -> Series:
    """(q^k; q^k)_inf = prod_{j>=1} (1 - q^(jk)) to ``precision`` terms.

    Uses Euler's pentagonal number theorem, so only the O(sqrt(P/k)) nonzero
    terms sum_j (-1)^j q^(k j (3j-1)/2) are ever touched.
    """
    if k < 1:
        raise ValueError(f"k must be a positive integer, got {k}")
    if precision < 1:
        raise ValueError("precision must be positive")
    ring = Ring(ring)
    exps: list[int] = [0]
    signs: list[int] = [1]
    j = 1
    while True:
        e1 = k * j * (3 * j - 1) // 2
        if e1 >= precision:
            break
        sign = -1 if j & 1 else 1
        exps.append(e1)
        signs.append(sign)
        e2 = k * j * (3 * j + 1) // 2
        if e2 < precision:
            exps.append(e2)
            signs.append(sign)
        j += 1
    if ring is Ring.INT:
        data = [0] * precision
        for e, s in zip(exps, signs):
            data[e] = s
        return Series._make(Ring.INT, precision, data)
    bits = np.zeros(precision, dtype=np.uint8)
    bits[exps] = 1
    return Series._make(Ring.GF2, precision, _pack_bits(bits, precision))


def mul(a: Series, b: Series) -> Series:
    """Truncated Cauchy product."""
    P = a._check(b)
    if a.ring is Ring.INT:
        return Series._make(Ring.INT, P, _int_mul(a._data, b._data, P))
    return Series._make(Ring.GF2, P, _gf2_mul_words(a._data, b._data, P))


def inverse(a: Series) -> Series:
    """Multiplicative inverse by Newton iteration (correct prefix doubles each step).

    The constant term must be a unit: +-1 over Z, 1 over GF(2).
    """
    P = a.precision
    c0 = a[0]
    if a.ring is Ring.INT:
        if c0 not in (1, -1):
            raise ValueError(f"constant term {c0} is not a unit in Z")
        coeffs = a._data
        b = [c0]
        n = 1
        while n < P:
            n = min(2 * n, P)
            e = _int_mul(coeffs, b, n)
            d = [-v for v in e]
            d[0] += 1
            corr = _int_mul(b, d, n)
            b = [(b[i] if i < len(b) else 0) + corr[i] for i in range(n)]
        return Series._make(Ring.INT, P, b)
    if c0 != 1:
        raise ValueError("constant term 0 is not a unit in GF(2)")
    # char 2: b <- b(2 - ab) = a b^2, and b^2 is just b(q^2)
    b = Series.one(1, Ring.GF2)
    n = 1
    while n < P:
        n = min(2 * n, P)
        b = mul(a.truncate(n), inflate(Series._make(Ring.GF2, n, _pad_words(b._data, n)), 2))
    return b


def _pad_words(words: np.ndarray, precision: int) -> np.ndarray:
    out = np.zeros(_nwords(precision), dtype=np.uint64)
    m = min(out.shape[0], words.shape[0])
    out[:m] = words[:m]
    return out


def power(a: Series, e: int) -> Series:
    """a**e by binary exponentiation; negative e goes through :func:`inverse`."""
    if e < 0:
        return power(inverse(a), -e)
    result = Series.one(a.precision, a.ring)
    base = a
    while e:
        if e & 1:
            result = mul(result, base)
        e >>= 1
        if e:
            base = inflate(base, 2) if a.ring is Ring.GF2 else mul(base, base)
    return result


def dissect(a: Series, m: int, r: int) -> Series:
    """sum_n a(mn + r) q^n, precision ceil((P - r) / m)."""
    if m < 1:
        raise ValueError("modulus must be positive")
    if not 0 <= r < m:
        raise ValueError(f"residue {r} not in [0, {m})")
    P = -(-(a.precision - r) // m)
    if P < 1:
        raise ValueError(f"residue {r} leaves no coefficients at precision {a.precision}")
    if a.ring is Ring.INT:
        return Series._make(Ring.INT, P, a._data[r::m])
    return Series._make(Ring.GF2, P, _pack_bits(a.bits()[r::m], P))


def inflate(a: Series, m: int) -> Series:
    """Substitute q -> q^m, keeping precision P."""
    if m < 1:
        raise ValueError("inflation factor must be positive")
    if m == 1:
        return a
    P = a.precision
    src = -(-P // m)
    if a.ring is Ring.INT:
        data = [0] * P
        data[::m] = a._data[:src]
        return Series._make(Ring.INT, P, data)
    bits = np.zeros(P, dtype=np.uint8)
    bits[::m] = a.bits()[:src]
    return Series._make(Ring.GF2, P, _pack_bits(bits, P))


def to_gf2(a: Series) -> Series:
    """Reduce integer coefficients mod 2."""
    a._require(Ring.INT)
    bits = np.fromiter((c & 1 for c in a._data), dtype=np.uint8, count=a.precision)
    return Series._make(Ring.GF2, a.precision, _pack_bits(bits, a.precision))


# -- coefficient cache files --------------------------------------------------

_HEADER = "qseries v1"


def save_series(series: Series, path: Union[str, Path]) -> None:
    """Write ``series`` in the plain-text cache format.

    Header ``qseries v1 ring=<int|gf2> precision=<P>``, then one decimal
    coefficient per line (int) or one 16-digit hex word per line (gf2; bit i
    of word w is the coefficient of q^(64w + i)).
    """
    lines = [f"{_HEADER} ring={series.ring.value} precision={series.precision}"]
    if series.ring is Ring.INT:
        lines.extend(str(c) for c in series._data)
    else:
        lines.extend(f"{int(w):016x}" for w in series._data)
    Path(path).write_text("\n".join(lines) + "\n")


def load_series(path: Union[str, Path]) -> Series:
    lines = Path(path).read_text().splitlines()
    if not lines or not lines[0].startswith(_HEADER):
        raise ValueError(f"{path}: not a qseries v1 file")
    fields = dict(tok.split("=", 1) for tok in lines[0][len(_HEADER) :].split())
    ring = Ring(fields["ring"])
    precision = int(fields["precision"])
    body = [ln.strip() for ln in lines[1:] if ln.strip()]
    if ring is Ring.INT:
        if len(body) != precision:
            raise ValueError(f"{path}: expected {precision} coefficients, found {len(body)}")
        return Series._make(Ring.INT, precision, [int(x) for x in body])
    if len(body) != _nwords(precision):
        raise ValueError(f"{path}: expected {_nwords(precision)} words, found {len(body)}")
    return Series.from_words(np.array([int(x, 16) for x in body], dtype=np.uint64), precision)
