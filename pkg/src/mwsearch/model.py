"""Alphabet, pattern, padded text buffer and match-set types.

All offsets are *window starts*: a window at ``s`` covers ``text[s:s+m]``.
The classical pseudocode for these algorithms anchors on the window's last
character instead (``pos = s + m - 1``); every engine in this package works
in window-start coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Union

import numpy as np

from .errors import InvalidAlphabet, InvalidPattern, SymbolOutOfAlphabet

BytesLike = Union[bytes, bytearray, memoryview, np.ndarray]

DEFAULT_MAX_WINDOWS = 4


def as_bytes(data: BytesLike | Iterable[int]) -> bytes:
    if isinstance(data, bytes):
        return data
    if isinstance(data, np.ndarray):
        if data.dtype != np.uint8:
            if data.size and (data.min() < 0 or data.max() > 255):
                raise ValueError("array values must fit in a byte")
            data = data.astype(np.uint8)
        return data.tobytes()
    return bytes(data)


@dataclass(frozen=True)
class Alphabet:
    """Symbols are the byte values ``0 .. sigma-1``."""

    sigma: int

    def __post_init__(self):
        if not isinstance(self.sigma, (int, np.integer)) or not 2 <= self.sigma <= 256:
            raise InvalidAlphabet(f"sigma must be an integer in [2, 256], got {self.sigma!r}")
        object.__setattr__(self, "sigma", int(self.sigma))


def validate_text(text: BytesLike, alphabet: Alphabet) -> None:
    """Raise :class:`SymbolOutOfAlphabet` for the first byte ``>= sigma``."""
    arr = np.frombuffer(as_bytes(text), dtype=np.uint8)
    if arr.size == 0 or alphabet.sigma == 256:
        return
    bad = arr >= alphabet.sigma
    if bad.any():
        idx = int(np.argmax(bad))
        raise SymbolOutOfAlphabet(idx, int(arr[idx]), alphabet.sigma)


@dataclass(frozen=True)
class Pattern:
    """A validated search pattern with its precomputed lengths.

    ``km[k] == k * m`` for ``k`` in ``0 .. max_windows`` (index 0 is kept so
    the tuple can be indexed by window number directly).
    """

    symbols: bytes
    alphabet: Alphabet
    max_windows: int = DEFAULT_MAX_WINDOWS
    m: int = field(init=False)
    m1: int = field(init=False)
    km: tuple[int, ...] = field(init=False)
    distinct_count: int = field(init=False)
    array: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        symbols = as_bytes(self.symbols)
        if len(symbols) == 0:
            raise InvalidPattern("pattern must contain at least one symbol")
        validate_text(symbols, self.alphabet)
        m = len(symbols)
        object.__setattr__(self, "symbols", symbols)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "m1", m - 1)
        object.__setattr__(self, "km", tuple(k * m for k in range(self.max_windows + 1)))
        object.__setattr__(self, "distinct_count", len(set(symbols)))
        object.__setattr__(self, "array", np.frombuffer(symbols, dtype=np.uint8))

    def rightmost(self, limit: int | None = None) -> dict[int, int]:
        """Map each symbol to its rightmost position in ``symbols[:limit]``."""
        end = self.m if limit is None else limit
        return {c: i for i, c in enumerate(self.symbols[:end])}

    def __len__(self) -> int:
        return self.m


@dataclass(frozen=True)
class SearchBuffer:
    """Text followed by ``windows`` copies of the pattern.

    The first copy is the sentinel that stops the unrolled loop; the rest
    keep every probe ``s + k*m - 1`` (``k <= windows``) inside the buffer for
    any ``s <= n``.
    """

    data: bytes
    n: int
    pad_len: int
    windows: int
    array: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "array", np.frombuffer(self.data, dtype=np.uint8))

    @property
    def text(self) -> bytes:
        return self.data[: self.n]


def make_search_buffer(text: BytesLike, pattern: Pattern, windows: int = 1) -> SearchBuffer:
    if windows < 1:
        raise ValueError("windows must be >= 1")
    raw = as_bytes(text)
    return SearchBuffer(
        data=raw + pattern.symbols * windows,
        n=len(raw),
        pad_len=windows * pattern.m,
        windows=windows,
    )


def verify_match(buffer: SearchBuffer, pattern: Pattern, s: int) -> bool:
    data = buffer.data
    for j, c in enumerate(pattern.symbols):
        if data[s + j] != c:
            return False
    return True


@dataclass(frozen=True)
class MatchSet:
    """Strictly increasing 0-based start offsets of all occurrences."""

    positions: tuple[int, ...] = ()

    @classmethod
    def of(cls, positions: Iterable[int]) -> "MatchSet":
        return cls(tuple(int(p) for p in positions))

    def __len__(self) -> int:
        return len(self.positions)

    def __iter__(self) -> Iterator[int]:
        return iter(self.positions)

    def __contains__(self, p) -> bool:
        return p in self.positions

    def __eq__(self, other) -> bool:
        if isinstance(other, MatchSet):
            return self.positions == other.positions
        if isinstance(other, (list, tuple)):
            return self.positions == tuple(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.positions)
