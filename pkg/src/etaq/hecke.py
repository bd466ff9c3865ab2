"""Hecke operators T_p on q-expansions and Sturm-certified mod-2 annihilation."""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Sequence

from .arith import factorize, is_prime, primes_up_to
from .eta import EtaQuotient, Verdict, character, classify_sum, expand_sum
from .series import Ring, Series, dissect, inflate

__all__ = [
    "DEFAULT_MAX_PRECISION",
    "HeckeReport",
    "ResourceCapError",
    "annihilation_test",
    "hecke_tp",
    "max_precision",
    "prime_search",
    "sturm_bound",
]

DEFAULT_MAX_PRECISION = 10**6


class ResourceCapError(RuntimeError):
    """The requested computation would exceed a configured size cap."""


def max_precision() -> int:
    return int(os.environ.get("ETAQ_MAX_PRECISION", DEFAULT_MAX_PRECISION))


@dataclass(frozen=True)
class HeckeReport:
    """Outcome of one T_p test mod 2.

    ``annihilated_mod2`` is None when the prime was skipped; ``error`` then
    says why.
    """

    p: int
    weight: int
    level: int
    chi_p: int | None
    sturm_bound: int
    terms_checked: int
    annihilated_mod2: bool | None
    first_nonzero_index: int | None = None
    error: str | None = None

    def to_dict(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None}


def hecke_tp(f: Series, p: int, weight: int, chi_p: int) -> Series:
    """f | T_p, i.e. coefficient n is a(pn) + chi(p) p^(weight-1) a(n/p).

    a(n/p) is 0 unless p | n. The result has precision floor(P/p).
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    out_prec = f.precision // p
    if out_prec < 1:
        raise ValueError(f"precision {f.precision} too small for T_{p}")
    head = dissect(f, p, 0).truncate(out_prec)
    tail = inflate(f.truncate(out_prec), p)
    if f.ring is Ring.GF2:
        # chi(p) p^(weight-1) is 1 mod 2 for odd p coprime to the level
        return head + tail if (chi_p * p ** (weight - 1)) & 1 else head
    return head + tail * (chi_p * p ** (weight - 1))


def sturm_bound(level: int, weight: int) -> int:
    """floor(weight * [SL2(Z) : Gamma_0(level)] / 12)."""
    if level < 1 or weight < 1:
        raise ValueError("level and weight must be positive")
    index = Fraction(level)
    for q in factorize(level) if level > 1 else ():
        index *= Fraction(q + 1, q)
    return int(weight * index // 12)


def annihilation_test(
    eqs: Sequence[EtaQuotient] | EtaQuotient,
    p: int,
    precision_cap: int | None = None,
) -> HeckeReport:
    """Check f | T_p == 0 mod 2 through the Sturm bound.

    f is the (sum of) eta-quotient(s), which must classify as a cusp form of
    integral weight. A True verdict is a proof that f | T_p vanishes mod 2
    identically, not just on the checked range.
    """
    if isinstance(eqs, EtaQuotient):
        eqs = [eqs]
    cls = classify_sum(eqs)
    if cls.verdict is not Verdict.CUSP_FORM:
        raise ValueError(f"not a cusp form: {cls.verdict.value}")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    N = cls.level
    weight = int(cls.weight)
    if (2 * N) % p == 0:
        raise ValueError(f"p={p} divides 2N={2 * N}")
    bound = sturm_bound(N, weight)
    needed = p * (bound + 1) + 1
    cap = max_precision() if precision_cap is None else precision_cap
    if needed > cap:
        raise ResourceCapError(f"T_{p} needs {needed} coefficients, cap is {cap}")
    f = expand_sum(eqs, needed, Ring.GF2)
    chi_p = character(eqs[0], p)
    g = hecke_tp(f, p, weight, chi_p)
    v = g.valuation
    annihilated = v == g.precision
    return HeckeReport(
        p=p,
        weight=weight,
        level=N,
        chi_p=chi_p,
        sturm_bound=bound,
        terms_checked=g.precision,
        annihilated_mod2=annihilated,
        first_nonzero_index=None if annihilated else v,
    )


def _search_one(eqs, p, cap) -> HeckeReport:
    try:
        return annihilation_test(eqs, p, cap)
    except (ResourceCapError, ValueError) as exc:
        cls = classify_sum(eqs)
        w = int(cls.weight) if cls.weight.denominator == 1 else 0
        return HeckeReport(
            p=p,
            weight=w,
            level=cls.level,
            chi_p=None,
            sturm_bound=sturm_bound(cls.level, w) if w > 0 else 0,
            terms_checked=0,
            annihilated_mod2=None,
            error=f"{type(exc).__name__}: {exc}",
        )


def prime_search(
    eqs: Sequence[EtaQuotient] | EtaQuotient,
    residue: int,
    modulus: int,
    p_max: int,
    precision_cap: int | None = None,
    workers: int = 1,
) -> list[HeckeReport]:
    """Run :func:`annihilation_test` for every prime p <= p_max, p = residue mod modulus.

    Primes that cannot be tested (p | 2N, size cap) get a report with
    ``annihilated_mod2=None`` and the search goes on. Reports come back in
    ascending order of p whatever ``workers`` is.
    """
    if modulus < 1:
        raise ValueError("modulus must be positive")
    if isinstance(eqs, EtaQuotient):
        eqs = [eqs]
    eqs = list(eqs)
    cap = max_precision() if precision_cap is None else precision_cap
    residue %= modulus
    primes = [p for p in primes_up_to(p_max) if p % modulus == residue]
    if workers > 1 and len(primes) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_search_one, [eqs] * len(primes), primes, [cap] * len(primes)))
    else:
        reports = [_search_one(eqs, p, cap) for p in primes]
    return sorted(reports, key=lambda r: r.p)
