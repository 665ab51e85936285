"""Bit-twiddling enumeration kernels for the parity-assignment search.

An assignment over ``n`` sorted settings is an integer in ``[0, 2^n)``:
sorted setting ``j`` owns bit ``n - 1 - j`` (counting upward therefore
flips the *last* setting fastest, odometer style), and a set bit means
the assignment value is -1.  A constraint is a bitmask plus a parity
target; assignment ``a`` satisfies it iff
``popcount(a & mask) % 2 == parity``.

The hot loop is compiled with numba unless the environment variable
``TWOTIME_DISABLE_NUMBA`` is set (or numba is not importable), in which
case a chunked vectorized numpy twin runs instead.  Both backends return
the identical (first satisfier, exact count) pair.
"""

from __future__ import annotations

import os

import numpy as np

ENV_FLAG = "TWOTIME_DISABLE_NUMBA"

_CHUNK = 1 << 16

_numba_kernel = None
_numba_available: bool | None = None


def _numba_disabled() -> bool:
    return os.environ.get(ENV_FLAG, "").strip().lower() in {"1", "true", "yes", "on"}


def _parity_search_loop(n_settings, masks, parities):
    # Source for the numba kernel; kept numba-compatible (uint32 folds only).
    total = np.int64(1) << np.int64(n_settings)
    first = np.int64(-1)
    count = np.int64(0)
    for a in range(total):
        ok = True
        for c in range(masks.shape[0]):
            x = np.uint32(a) & masks[c]
            x ^= x >> np.uint32(16)
            x ^= x >> np.uint32(8)
            x ^= x >> np.uint32(4)
            x ^= x >> np.uint32(2)
            x ^= x >> np.uint32(1)
            if (x & np.uint32(1)) != parities[c]:
                ok = False
                break
        if ok:
            count += 1
            if first < 0:
                first = a
    return first, count


def _get_numba_kernel():
    global _numba_kernel
    if _numba_kernel is None:
        from numba import njit

        _numba_kernel = njit(cache=True)(_parity_search_loop)
    return _numba_kernel


def numba_available() -> bool:
    global _numba_available
    if _numba_available is None:
        try:
            import numba  # noqa: F401

            _numba_available = True
        except ImportError:
            _numba_available = False
    return _numba_available


def active_backend() -> str:
    """Backend the default dispatch would use right now."""
    if _numba_disabled() or not numba_available():
        return "numpy"
    return "numba"


def search_parity_numpy(
    n_settings: int, masks: np.ndarray, parities: np.ndarray
) -> tuple[int, int]:
    """Pure-numpy twin of the compiled kernel (chunked vectorized scan)."""
    total = 1 << int(n_settings)
    first = -1
    count = 0
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, total), dtype=np.uint32)
        ok = np.ones(idx.shape[0], dtype=bool)
        for mask, parity in zip(masks, parities):
            x = idx & mask
            x = x ^ (x >> np.uint32(16))
            x = x ^ (x >> np.uint32(8))
            x = x ^ (x >> np.uint32(4))
            x = x ^ (x >> np.uint32(2))
            x = x ^ (x >> np.uint32(1))
            ok &= (x & np.uint32(1)).astype(np.uint8) == parity
        hits = int(ok.sum())
        if hits and first < 0:
            first = int(idx[np.argmax(ok)])
        count += hits
    return first, count


def search_parity(
    n_settings: int,
    masks: np.ndarray,
    parities: np.ndarray,
    backend: str | None = None,
) -> tuple[int, int]:
    """Scan all ``2^n_settings`` assignments.

    Returns ``(first, count)`` where ``first`` is the lowest satisfying
    assignment integer (or -1) and ``count`` the exact number of
    satisfiers.  ``backend`` may force ``"numba"`` or ``"numpy"``;
    ``None`` picks :func:`active_backend`.
    """
    if backend is None:
        backend = active_backend()
    if backend == "numba":
        kernel = _get_numba_kernel()
        first, count = kernel(
            np.int64(n_settings),
            np.ascontiguousarray(masks, dtype=np.uint32),
            np.ascontiguousarray(parities, dtype=np.uint8),
        )
        return int(first), int(count)
    if backend == "numpy":
        return search_parity_numpy(
            n_settings,
            np.ascontiguousarray(masks, dtype=np.uint32),
            np.ascontiguousarray(parities, dtype=np.uint8),
        )
    raise ValueError(f"unknown backend {backend!r}; expected 'numba' or 'numpy'")
