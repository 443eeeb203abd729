"""Backend selection for the hot loops.

The compiled Cython module is used when it imports; otherwise, or when
``CANNONBALL_PURE=1`` is set, the numpy fallback is used. ``BACKEND`` names
the active one.
"""
import os

from . import _fallback

fallback = _fallback

if os.environ.get("CANNONBALL_PURE", "") not in ("", "0"):
    native = None
else:
    try:
        from . import _kernels as native
    except ImportError:
        native = None

_impl = native if native is not None else _fallback
BACKEND = "cython" if native is not None else "numpy"

NATIVE_MAX_N = _impl.NATIVE_MAX_N
sequence_block = _impl.sequence_block
divisor_sieve = _impl.divisor_sieve
exp_sums = _impl.exp_sums
chi_weighted_sum = _impl.chi_weighted_sum
power_sum = _impl.power_sum
