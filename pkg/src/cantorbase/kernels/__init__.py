"""Hot loops over integer transition tables.

The compiled extension ``_core`` is used when it was built and
``CANTORBASE_PURE_PYTHON`` is not set to ``1``; otherwise the identical
pure-Python implementations in ``_fallback`` are used.
"""

import os

import numpy as np

from . import _fallback

BACKEND = "python"
_impl = _fallback

if os.environ.get("CANTORBASE_PURE_PYTHON", "") != "1":
    try:
        from . import _core as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = _fallback


def as_table(a):
    return np.ascontiguousarray(a, dtype=np.int64)


def feed(nxt, out, start, letters):
    return _impl.feed(as_table(nxt), as_table(out), int(start), as_table(letters))


def feed_states(nxt, start, letters):
    return _impl.feed_states(as_table(nxt), int(start), as_table(letters))


def product_reach(nxt, start, ph_letter, ph_next, ph_deg):
    return _impl.product_reach(as_table(nxt), int(start), as_table(ph_letter),
                               as_table(ph_next), as_table(ph_deg))


def pair_distances(nxt, out, anchor):
    return _impl.pair_distances(as_table(nxt), as_table(out), int(anchor))


def scc(nxt):
    return _impl.scc(as_table(nxt))


__all__ = ["BACKEND", "feed", "feed_states", "pair_distances", "product_reach", "scc"]
