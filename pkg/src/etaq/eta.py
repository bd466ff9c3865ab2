"""Eta-quotients prod eta(delta z)^r_delta: modularity tests and q-expansions.

The classification is the standard finite check for eta-quotients on
Gamma_0(N): the weight is half the sum of the exponents, two sums must be
divisible by 24, the Nebentypus is a Kronecker symbol, and holomorphy or
vanishing at the cusps reduces to the sign of one rational number per divisor
d of N.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Mapping, Sequence, Union

from .arith import divisors, kronecker, squarefree_part
from .series import Ring, Series, euler_product, inflate, mul, power

__all__ = [
    "Classification",
    "EtaQuotient",
    "Verdict",
    "character",
    "character_kernel",
    "classify",
    "classify_sum",
    "cusp_order",
    "expand_sum",
    "format_eta",
    "kronecker",
    "parse_eta",
    "q_expansion",
    "weight_and_conditions",
]


@dataclass(frozen=True)
class EtaQuotient:
    """prod_{delta | level} eta(delta z)^exponents[delta].

    ``exponents`` may be given as a mapping; it is normalized to a sorted
    tuple of (delta, r) pairs with zero exponents dropped.
    """

    level: int
    exponents: tuple[tuple[int, int], ...] = field(default=())

    def __init__(self, level: int, exponents: Union[Mapping[int, int], Iterable[tuple[int, int]]]):
        items = exponents.items() if isinstance(exponents, Mapping) else exponents
        merged: dict[int, int] = {}
        for d, r in items:
            merged[int(d)] = merged.get(int(d), 0) + int(r)
        if level < 1:
            raise ValueError(f"level must be positive, got {level}")
        for d in merged:
            if d < 1 or level % d:
                raise ValueError(f"{d} does not divide level {level}")
        norm = tuple(sorted((d, r) for d, r in merged.items() if r))
        if not norm:
            raise ValueError("eta-quotient needs at least one nonzero exponent")
        object.__setattr__(self, "level", int(level))
        object.__setattr__(self, "exponents", norm)

    def r(self, delta: int) -> int:
        return dict(self.exponents).get(delta, 0)

    @property
    def s(self) -> Fraction:
        """prod delta^r_delta."""
        out = Fraction(1)
        for d, r in self.exponents:
            out *= Fraction(d) ** r
        return out

    @property
    def weight(self) -> Fraction:
        return Fraction(sum(r for _, r in self.exponents), 2)

    @property
    def delta_sum(self) -> int:
        return sum(d * r for d, r in self.exponents)

    @property
    def codelta_sum(self) -> int:
        return sum((self.level // d) * r for d, r in self.exponents)

    def __str__(self) -> str:
        return format_eta(self)


class Verdict(str, enum.Enum):
    CUSP_FORM = "CUSP_FORM"
    MODULAR_FORM = "MODULAR_FORM"
    HOLOMORPHIC_FAILURE = "HOLOMORPHIC_FAILURE"
    CONDITION_FAILURE = "CONDITION_FAILURE"


_RANK = {
    Verdict.CUSP_FORM: 0,
    Verdict.MODULAR_FORM: 1,
    Verdict.HOLOMORPHIC_FAILURE: 2,
    Verdict.CONDITION_FAILURE: 3,
}


@dataclass(frozen=True)
class Classification:
    level: int
    weight: Fraction
    cond24_delta: bool
    cond24_codelta: bool
    character_kernel: int | None
    character_kernel_reduced: int | None
    cusp_orders: tuple[tuple[int, Fraction], ...]
    verdict: Verdict

    def order_at(self, d: int) -> Fraction:
        return dict(self.cusp_orders)[d]

    def to_dict(self) -> dict:
        return {
            "level": self.level,
            "weight": _frac_json(self.weight),
            "cond24_delta": self.cond24_delta,
            "cond24_codelta": self.cond24_codelta,
            "character_kernel": self.character_kernel,
            "character_kernel_reduced": self.character_kernel_reduced,
            "cusp_orders": [[d, _frac_json(o)] for d, o in self.cusp_orders],
            "verdict": self.verdict.value,
        }


def _frac_json(x: Fraction) -> Union[int, str]:
    return x.numerator if x.denominator == 1 else str(x)


def weight_and_conditions(eq: EtaQuotient) -> tuple[Fraction, bool, bool]:
    return eq.weight, eq.delta_sum % 24 == 0, eq.codelta_sum % 24 == 0


def character_kernel(eq: EtaQuotient) -> int:
    """(-1)^weight * s with the denominator of s cleared by a square factor.

    s = a/b and a*b = s*b^2 give the same Kronecker symbol on integers
    coprime to b, which covers every d coprime to 2N.
    """
    w = eq.weight
    if w.denominator != 1:
        raise ValueError(f"weight {w} is not integral; no quadratic character")
    s = eq.s
    return (-1) ** (w.numerator % 2) * s.numerator * s.denominator


def character(eq: EtaQuotient, d: int) -> int:
    """chi(d) = ((-1)^weight s / d) for d coprime to 2N."""
    w, c1, c2 = weight_and_conditions(eq)
    if not (c1 and c2):
        raise ValueError(f"{eq}: 24-divisibility conditions fail; no character")
    if gcd(d, 2 * eq.level) != 1:
        raise ValueError(f"d={d} is not coprime to 2N={2 * eq.level}")
    return kronecker(character_kernel(eq), d)


def cusp_order(eq: EtaQuotient, d: int) -> Fraction:
    """Order of vanishing at any cusp c/d (it does not depend on c)."""
    N = eq.level
    if d < 1 or N % d:
        raise ValueError(f"{d} does not divide level {N}")
    total = Fraction(0)
    for delta, r in eq.exponents:
        total += Fraction(gcd(d, delta) ** 2 * r, gcd(d, N // d) * d * delta)
    return Fraction(N, 24) * total


def classify(eq: EtaQuotient) -> Classification:
    w, c1, c2 = weight_and_conditions(eq)
    orders = tuple((d, cusp_order(eq, d)) for d in divisors(eq.level))
    if w.denominator == 1:
        kernel = character_kernel(eq)
        reduced = squarefree_part(kernel)
    else:
        kernel = reduced = None
    return Classification(
        level=eq.level,
        weight=w,
        cond24_delta=c1,
        cond24_codelta=c2,
        character_kernel=kernel,
        character_kernel_reduced=reduced,
        cusp_orders=orders,
        verdict=_verdict(w, c1, c2, [o for _, o in orders]),
    )


def _verdict(w: Fraction, c1: bool, c2: bool, orders: Sequence[Fraction]) -> Verdict:
    # half-integral weight is deliberately not handled
    if not (c1 and c2) or w.denominator != 1 or w <= 0:
        return Verdict.CONDITION_FAILURE
    if any(o < 0 for o in orders):
        return Verdict.HOLOMORPHIC_FAILURE
    if all(o > 0 for o in orders):
        return Verdict.CUSP_FORM
    return Verdict.MODULAR_FORM


def classify_sum(eqs: Sequence[EtaQuotient]) -> Classification:
    """Classify a sum of eta-quotients.

    Summands must share level, weight and (reduced) character; otherwise the
    sum is a CONDITION_FAILURE. The verdict is the worst summand verdict and
    each recorded cusp order is the minimum over summands, a lower bound for
    the order of the sum.
    """
    eqs = list(eqs)
    if not eqs:
        raise ValueError("empty sum")
    parts = [classify(e) for e in eqs]
    if len(parts) == 1:
        return parts[0]
    first = parts[0]
    compatible = all(
        p.level == first.level
        and p.weight == first.weight
        and p.character_kernel_reduced == first.character_kernel_reduced
        for p in parts
    )
    verdict = max((p.verdict for p in parts), key=_RANK.__getitem__)
    if not compatible:
        verdict = Verdict.CONDITION_FAILURE
    orders = tuple(
        (d, min(p.order_at(d) for p in parts)) for d, _ in first.cusp_orders
    ) if all(p.level == first.level for p in parts) else first.cusp_orders
    return Classification(
        level=first.level,
        weight=first.weight,
        cond24_delta=all(p.cond24_delta for p in parts),
        cond24_codelta=all(p.cond24_codelta for p in parts),
        character_kernel=first.character_kernel,
        character_kernel_reduced=first.character_kernel_reduced if compatible else None,
        cusp_orders=orders,
        verdict=verdict,
    )


# -- q-expansions -------------------------------------------------------------


def q_expansion(eq: EtaQuotient, precision: int, ring: Union[Ring, str] = Ring.INT) -> Series:
    """q^(sum delta r / 24) * prod f_delta^r_delta to ``precision`` terms.

    Over GF(2) even exponents are folded with the Frobenius identity
    f_m^2 = f_2m and the common inflation factor is pulled out, so the actual
    products run at a fraction of the requested precision.
    """
    ring = Ring(ring)
    if eq.delta_sum % 24:
        raise ValueError(f"{eq}: leading exponent {eq.delta_sum}/24 is not an integer")
    v = eq.delta_sum // 24
    if v < 0:
        raise ValueError(f"{eq}: negative leading exponent {v}")
    body_prec = precision - v
    if body_prec < 1:
        return Series.zero(precision, ring)
    if ring is Ring.INT:
        body = Series.one(body_prec)
        for d, r in eq.exponents:
            body = mul(body, power(euler_product(d, body_prec), r))
        return Series(body.coeffs, precision).shift(v)
    body = _gf2_body(eq.exponents, body_prec)
    return Series.from_words(body.words, precision).shift(v)


def _gf2_body(exponents: Iterable[tuple[int, int]], precision: int) -> Series:
    bases: dict[int, int] = {}
    pending = list(exponents)
    while pending:
        d, r = pending.pop()
        while r % 2 == 0:
            d, r = 2 * d, r // 2
        total = bases.pop(d, 0) + r
        if total:
            if total % 2:
                bases[d] = total
            else:
                pending.append((d, total))
    if not bases:
        return Series.one(precision, Ring.GF2)
    g = reduce(gcd, bases)
    inner = -(-precision // g)
    body = Series.one(inner, Ring.GF2)
    for d, r in sorted(bases.items()):
        body = mul(body, power(euler_product(d // g, inner, Ring.GF2), r))
    if g == 1:
        return body
    # padding is harmless: inflate only reads the first ceil(precision/g) terms
    return inflate(Series.from_words(body.words, precision), g)


def expand_sum(eqs: Sequence[EtaQuotient], precision: int, ring: Union[Ring, str] = Ring.INT) -> Series:
    total = q_expansion(eqs[0], precision, ring)
    for e in eqs[1:]:
        total = total + q_expansion(e, precision, ring)
    return total.truncate(precision) if total.precision > precision else total


# -- text grammar ---------------------------------------------------------------

_FACTOR = re.compile(r"^\s*(\d+)\s*(?:\^\s*([+-]?\d+))?\s*$")


def _parse_product(level: int, text: str) -> EtaQuotient:
    exps: list[tuple[int, int]] = []
    for tok in text.split("*"):
        m = _FACTOR.match(tok)
        if not m:
            raise ValueError(f"bad eta factor {tok!r}")
        exps.append((int(m.group(1)), int(m.group(2) or 1)))
    return EtaQuotient(level, exps)


def parse_eta(text: str) -> list[EtaQuotient]:
    """Parse ``N : d1^r1 * d2^r2 * ...``, possibly several joined by ``+``.

    ``3456:24^6*48^-1*72^-1`` is one quotient. In a sum, each summand may
    carry its own ``N:`` prefix or inherit the previous one:
    ``100:2^2*10^2 + 2*10^2*50``.
    """
    out: list[EtaQuotient] = []
    level: int | None = None
    for chunk in re.split(r"(?<!\^)\+", text):
        chunk = chunk.strip()
        if not chunk:
            raise ValueError(f"empty summand in {text!r}")
        if ":" in chunk:
            head, body = chunk.split(":", 1)
            try:
                level = int(head)
            except ValueError:
                raise ValueError(f"bad level {head!r}") from None
        else:
            body = chunk
        if level is None:
            raise ValueError(f"missing level in {text!r}")
        out.append(_parse_product(level, body))
    return out


def format_eta(eq: EtaQuotient) -> str:
    return f"{eq.level}:" + "*".join(f"{d}^{r}" for d, r in eq.exponents)
