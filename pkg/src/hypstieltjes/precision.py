"""Arbitrary-precision plumbing.

The library's ``Real`` is an mpmath ``mpf`` evaluated under an explicit
working precision in bits.  Every public operation takes a ``bits``
parameter (default 256) and runs inside :func:`workprec`, which also
serializes access to mpmath's process-global context so concurrent
callers cannot observe each other's precision changes.
"""

from __future__ import annotations

import threading
from contextlib import contextmanager

import mpmath as mp

Real = mp.mpf

DEFAULT_BITS = 256
MIN_BITS = 64

_PREC_LOCK = threading.RLock()


@contextmanager
def workprec(bits):
    """Run a block at ``bits`` of binary precision (re-entrant, thread-safe)."""
    bits = int(bits)
    if bits < MIN_BITS:
        raise ValueError(f"precision_bits must be >= {MIN_BITS}, got {bits}")
    with _PREC_LOCK:
        old = mp.mp.prec
        mp.mp.prec = bits
        try:
            yield mp.mp
        finally:
            mp.mp.prec = old


def mpr(x, bits=None):
    """Convert ``x`` to mpf, honoring decimal strings at the target precision."""
    if bits is None:
        return mp.mpf(x)
    with workprec(bits):
        return mp.mpf(x)


def eps_for(bits):
    """Unit roundoff scale 2^(8 - bits) used by the guard-digit contract."""
    return mp.mpf(2) ** (8 - int(bits))


def tree_sum(values):
    """Sum with a fixed pairwise-tree reduction shape.

    The shape depends only on len(values), so results are bit-reproducible
    at a given precision no matter how term evaluation was scheduled.
    """
    vals = list(values)
    if not vals:
        return mp.mpf(0)
    while len(vals) > 1:
        nxt = []
        for i in range(0, len(vals) - 1, 2):
            nxt.append(vals[i] + vals[i + 1])
        if len(vals) % 2:
            nxt.append(vals[-1])
        vals = nxt
    return vals[0]


def shortest_roundtrip_str(value, bits):
    """Shortest decimal string that reparses to the identical mpf at ``bits``."""
    with workprec(bits):
        v = mp.mpf(value)
        if mp.isnan(v) or mp.isinf(v):
            return str(v)
        max_dps = int(bits * 0.30103) + 3
        for d in range(2, max_dps + 1):
            s = mp.nstr(v, d, strip_zeros=True, min_fixed=1, max_fixed=0)
            if mp.mpf(s) == v:
                return s
        return mp.nstr(v, max_dps, strip_zeros=True, min_fixed=1, max_fixed=0)
