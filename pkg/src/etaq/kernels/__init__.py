"""Hot loops, compiled with numba unless ``ETAQ_DISABLE_NUMBA=1``.

Both backends expose ``gf2_mul_words`` and ``regular_parity`` with identical
results; the pure-numpy one exists for environments without numba and as a
cross-check.
"""
import os

from . import _numpy

BACKEND = "numpy"

if os.environ.get("ETAQ_DISABLE_NUMBA", "").strip().lower() not in ("1", "true", "yes"):
    try:
        from . import _numba as _impl

        BACKEND = "numba"
    except ImportError:  # pragma: no cover - numba missing
        _impl = _numpy
else:
    _impl = _numpy

gf2_mul_words = _impl.gf2_mul_words
regular_parity = _impl.regular_parity
KARATSUBA_THRESHOLD = _impl.KARATSUBA_THRESHOLD

__all__ = ["BACKEND", "KARATSUBA_THRESHOLD", "gf2_mul_words", "regular_parity"]
