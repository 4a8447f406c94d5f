"""Bad-character shift tables: the 1-D Horspool and Quick-Search tables and
the N-dimensional multi-window table.

For the multi-window table, index ``(i_1, ..., i_N)`` stands for the last
characters of N adjacent windows ``T[s+k*m-1] = i_k``. Its value is the
smallest safe advance of the window start given those characters, where only
the nearest probe that occurs in the pattern is taken into account:

    k* = min{k : i_k in P},  value = k* * m - q(i_k*) - 1,  or N*m if no k*

with ``q(c)`` the rightmost position of ``c`` in the whole pattern. A zero
entry therefore means ``i_1 == P[m-1]``: the first window is a candidate.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

import numpy as np

from .errors import TableTooLarge
from .model import Alphabet, Pattern

DEFAULT_TABLE_CAP = 64 * 1024 * 1024

DUMP_MAGIC = b"MWDN"
DUMP_VERSION = 1
# magic, version, sigma, N, m, entry_width (bits)
_DUMP_HEADER = struct.Struct("<4sBHBIB")


class TableKind(str, Enum):
    BMH_FALLBACK = "bmh_fallback"
    QUICK_SEARCH = "quick_search"


@dataclass(frozen=True)
class ShiftTable1D:
    kind: TableKind
    entries: np.ndarray
    m: int

    def __getitem__(self, c: int) -> int:
        return int(self.entries[c])


@dataclass(frozen=True)
class MultiShiftTable:
    windows: int
    sigma: int
    m: int
    entries: np.ndarray
    strides: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        self.entries.setflags(write=False)
        # strides[k-1] = sigma**(N-k): i_1 carries the highest weight
        object.__setattr__(
            self,
            "strides",
            tuple(self.sigma ** (self.windows - k) for k in range(1, self.windows + 1)),
        )

    @property
    def N(self) -> int:
        return self.windows

    @property
    def entry_width(self) -> int:
        return self.entries.dtype.itemsize * 8

    @property
    def nbytes(self) -> int:
        return int(self.entries.nbytes)

    def flatten(self, probes: Sequence[int]) -> int:
        return sum(int(i) * b for i, b in zip(probes, self.strides))

    def as_ndarray(self) -> np.ndarray:
        """Read-only N-dimensional view, ``view[i_1, ..., i_N]``."""
        return self.entries.reshape((self.sigma,) * self.windows)


def entry_dtype(max_value: int) -> np.dtype:
    if max_value <= 0xFF:
        return np.dtype(np.uint8)
    if max_value <= 0xFFFF:
        return np.dtype(np.uint16)
    return np.dtype(np.uint32)


def table_bytes(sigma: int, windows: int, m: int) -> int:
    """Memory needed by the ``windows``-dimensional table, in bytes."""
    return sigma**windows * entry_dtype(windows * m).itemsize


def _check_cap(sigma: int, windows: int, m: int, max_bytes: int | None) -> None:
    cap = DEFAULT_TABLE_CAP if max_bytes is None else max_bytes
    required = table_bytes(sigma, windows, m)
    if required > cap:
        raise TableTooLarge(required, cap)


def build_bmh_table(pattern: Pattern, alphabet: Alphabet | None = None) -> ShiftTable1D:
    """Classic Horspool shifts: the last pattern position is excluded, so
    every entry lies in ``1 .. m``."""
    alphabet = alphabet or pattern.alphabet
    m = pattern.m
    entries = np.full(alphabet.sigma, m, dtype=np.intp)
    for c, q in pattern.rightmost(m - 1).items():
        entries[c] = m - 1 - q
    entries.setflags(write=False)
    return ShiftTable1D(TableKind.BMH_FALLBACK, entries, m)


def build_qs_table(pattern: Pattern, alphabet: Alphabet | None = None) -> ShiftTable1D:
    """Sunday's shifts indexed by the symbol just past the window, ``1 .. m+1``."""
    alphabet = alphabet or pattern.alphabet
    m = pattern.m
    entries = np.full(alphabet.sigma, m + 1, dtype=np.intp)
    for c, q in pattern.rightmost().items():
        entries[c] = m - q
    entries.setflags(write=False)
    return ShiftTable1D(TableKind.QUICK_SEARCH, entries, m)


def build_multi_table_naive(
    pattern: Pattern,
    alphabet: Alphabet | None = None,
    windows: int = 2,
    max_bytes: int | None = None,
    *,
    touch_counter: list[int] | None = None,
) -> MultiShiftTable:
    """Fill the table dimension by dimension.

    Every entry starts at ``N*m``. Then, for ``k = N`` down to ``1``, each
    entry whose ``k``-th index ``c`` occurs in the pattern is overwritten with
    ``k*m - q(c) - 1``; later (nearer) dimensions win.

    If ``touch_counter`` is given, the number of entry writes is appended to
    it.
    """
    alphabet = alphabet or pattern.alphabet
    if windows < 1:
        raise ValueError("windows must be >= 1")
    sigma, m = alphabet.sigma, pattern.m
    _check_cap(sigma, windows, m, max_bytes)

    dtype = entry_dtype(windows * m)
    table = np.full((sigma,) * windows, windows * m, dtype=dtype)
    touched = table.size
    plane = sigma ** (windows - 1)
    occurrences = pattern.rightmost()
    for k in range(windows, 0, -1):
        for c, q in occurrences.items():
            index = (slice(None),) * (k - 1) + (c,)
            table[index] = k * m - q - 1
            touched += plane
    if touch_counter is not None:
        touch_counter.append(touched)
    return MultiShiftTable(windows, sigma, m, table.reshape(-1))


def build_multi_table_blockfill(
    pattern: Pattern,
    alphabet: Alphabet | None = None,
    windows: int = 2,
    max_bytes: int | None = None,
) -> MultiShiftTable:
    """Same table as :func:`build_multi_table_naive`, built by block copies.

    Work from the innermost dimension outwards. The innermost row depends only
    on the last index. For dimension ``k``, any block whose leading index
    occurs in the pattern is a constant fill; every other block is a copy of
    the already-built block for dimensions ``k+1 .. N``.
    """
    alphabet = alphabet or pattern.alphabet
    if windows < 1:
        raise ValueError("windows must be >= 1")
    sigma, m = alphabet.sigma, pattern.m
    _check_cap(sigma, windows, m, max_bytes)

    dtype = entry_dtype(windows * m)
    occurrences = pattern.rightmost()
    absent = np.ones(sigma, dtype=bool)
    absent[list(occurrences)] = False
    absent_idx = np.flatnonzero(absent)

    out = np.empty(sigma**windows, dtype=dtype)
    # The block for dims k..N lives in the tail of `out`, so each level grows
    # leftwards and the final level occupies the whole array.
    block = sigma
    tail = out[-block:]
    tail[:] = windows * m
    for c, q in occurrences.items():
        tail[c] = windows * m - q - 1
    for k in range(windows - 1, 0, -1):
        inner = out[-block:]
        start = out.size - block * sigma
        level = out[start:]
        # copy the inner block into absent slots first; the slot that
        # currently holds it (the last one) is left for last
        for c in absent_idx:
            if c != sigma - 1:
                level[c * block:(c + 1) * block] = inner
        for c, q in occurrences.items():
            if c != sigma - 1:
                level[c * block:(c + 1) * block] = k * m - q - 1
        if sigma - 1 in occurrences:
            level[(sigma - 1) * block:] = k * m - occurrences[sigma - 1] - 1
        block *= sigma
    return MultiShiftTable(windows, sigma, m, out)


def lookup_shift(table: MultiShiftTable, probes: Sequence[int]) -> int:
    return int(table.entries[table.flatten(probes)])


def closed_form_entry(pattern: Pattern, windows: int, probes: Sequence[int]) -> int:
    """Entry value from its definition rather than from a fill procedure."""
    occurrences = pattern.rightmost()
    for k, c in enumerate(probes, start=1):
        if c in occurrences:
            return k * pattern.m - occurrences[c] - 1
    return windows * pattern.m


def dump_table(table: MultiShiftTable) -> bytes:
    """Binary dump: fixed little-endian header, then the flat entries."""
    header = _DUMP_HEADER.pack(
        DUMP_MAGIC, DUMP_VERSION, table.sigma, table.windows, table.m, table.entry_width
    )
    return header + table.entries.astype(table.entries.dtype.newbyteorder("<")).tobytes()


def load_table_dump(blob: bytes) -> MultiShiftTable:
    magic, version, sigma, windows, m, width = _DUMP_HEADER.unpack_from(blob)
    if magic != DUMP_MAGIC or version != DUMP_VERSION:
        raise ValueError("not a shift table dump")
    dtype = np.dtype(f"<u{width // 8}")
    entries = np.frombuffer(blob, dtype=dtype, offset=_DUMP_HEADER.size)
    if entries.size != sigma**windows:
        raise ValueError("truncated shift table dump")
    native = entries.astype(dtype.newbyteorder("="))
    return MultiShiftTable(windows, sigma, m, native)
