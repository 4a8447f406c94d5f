"""Compiled search loops.

Every kernel has the signature ``(data, n, pat, ..., out) -> (count, shifts,
final_s)``: matches are written to ``out[:count]``, ``final_s`` is the window
start at loop exit, and ``shifts`` counts applied shifts when the kernel was
built with ``track=True`` (it is ``0`` otherwise, so untracked kernels carry
no per-iteration bookkeeping).

Kernels are generated per configuration so the window count, unrolling and
tracking are compile-time constants.
"""

from __future__ import annotations

from functools import lru_cache

import numba
import numpy as np


@lru_cache(maxsize=None)
def sf_kernel():
    @numba.njit(cache=True, nogil=True)
    def sf(data, n, pat, out):
        m = pat.shape[0]
        count = 0
        for s in range(n - m + 1):
            j = 0
            while j < m and data[s + j] == pat[j]:
                j += 1
            if j == m:
                out[count] = s
                count += 1
        steps = max(n - m + 1, 0)
        return count, steps, steps

    return sf


@lru_cache(maxsize=None)
def bmh_kernel(track: bool = False):
    @numba.njit(cache=True, nogil=True)
    def bmh(data, n, pat, d, out):
        m = pat.shape[0]
        m1 = m - 1
        last = n - m
        s = 0
        count = 0
        shifts = 0
        while s <= last:
            j = m1
            while j >= 0 and data[s + j] == pat[j]:
                j -= 1
            if j < 0:
                out[count] = s
                count += 1
            s += d[data[s + m1]]
            if track:
                shifts += 1
        return count, shifts, s

    return bmh


@lru_cache(maxsize=None)
def qs_kernel(track: bool = False):
    @numba.njit(cache=True, nogil=True)
    def qs(data, n, pat, d, out):
        # data[s + m] may be the first sentinel byte; the buffer always has one
        m = pat.shape[0]
        last = n - m
        s = 0
        count = 0
        shifts = 0
        while s <= last:
            j = 0
            while j < m and data[s + j] == pat[j]:
                j += 1
            if j == m:
                out[count] = s
                count += 1
            s += d[data[s + m]]
            if track:
                shifts += 1
        return count, shifts, s

    return qs


@lru_cache(maxsize=None)
def multi_window_kernel(windows: int, unrolled: bool = False, track: bool = False, sigma: int = 0):
    """N-window loop; a non-zero ``sigma`` fixes the alphabet size at compile
    time so index flattening uses constant strides (the ``sigma`` argument is
    then ignored)."""
    N = windows
    SIGMA = sigma

    @numba.njit(cache=True, nogil=True)
    def mw(data, n, pat, dn, d, sigma, out):
        if SIGMA:
            sigma = SIGMA
        m = pat.shape[0]
        m1 = m - 1
        last = n - m
        s = 0
        count = 0
        shifts = 0
        while unrolled or s < n:
            idx = 0
            pos = s + m1
            for _ in range(N):
                idx = idx * sigma + data[pos]
                pos += m
            r = dn[idx]
            if r == 0:
                if unrolled and s > last:
                    break
                j = 0
                while j < m and data[s + j] == pat[j]:
                    j += 1
                if j == m and s <= last:
                    out[count] = s
                    count += 1
                s += d[data[s + m1]]
            else:
                s += r
            if track:
                shifts += 1
        return count, shifts, s

    return mw


def out_buffer(n: int) -> np.ndarray:
    return np.empty(max(n, 0) + 1, dtype=np.int64)
