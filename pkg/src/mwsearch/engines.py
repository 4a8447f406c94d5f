"""Search engines: the straightforward oracle, Horspool, Quick Search and the
N-window family (basic and unrolled loops)."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import _kernels
from .errors import InvalidSpec
from .model import (
    Alphabet,
    BytesLike,
    MatchSet,
    Pattern,
    SearchBuffer,
    as_bytes,
    make_search_buffer,
    validate_text,
)
from .tables import (
    MultiShiftTable,
    ShiftTable1D,
    TableKind,
    build_bmh_table,
    build_multi_table_blockfill,
    build_qs_table,
)


class EngineKind(str, Enum):
    SF = "sf"
    BMH = "bmh"
    QS = "qs"
    MULTI_WINDOW = "multi_window"


@dataclass(frozen=True)
class EngineSpec:
    kind: EngineKind
    windows: int = 2
    unrolled: bool = False
    instrumented: bool = False

    def __post_init__(self):
        try:
            object.__setattr__(self, "kind", EngineKind(self.kind))
        except ValueError:
            raise InvalidSpec(f"unknown engine kind {self.kind!r}") from None
        if self.unrolled and self.kind is not EngineKind.MULTI_WINDOW:
            raise InvalidSpec("only the multi-window engine has an unrolled variant")
        if self.kind is EngineKind.MULTI_WINDOW and self.windows < 1:
            raise InvalidSpec("multi-window engine needs at least one window")

    @property
    def buffer_windows(self) -> int:
        return self.windows if self.kind is EngineKind.MULTI_WINDOW else 1

    @property
    def name(self) -> str:
        """Short name used on the command line and in reports (``mw3u`` etc.)."""
        if self.kind is EngineKind.MULTI_WINDOW:
            return f"mw{self.windows}" + ("u" if self.unrolled else "")
        return self.kind.value

    @classmethod
    def parse(cls, name: str, instrumented: bool = False) -> "EngineSpec":
        """Inverse of :attr:`name`: ``sf``, ``bmh``, ``qs``, ``mw<N>`` or ``mw<N>u``."""
        key = name.strip().lower()
        if key in ("sf", "bmh", "qs"):
            return cls(EngineKind(key), instrumented=instrumented)
        if key.startswith("mw"):
            body = key[2:]
            unrolled = body.endswith("u")
            if unrolled:
                body = body[:-1]
            if body.isdigit():
                return cls(EngineKind.MULTI_WINDOW, int(body), unrolled, instrumented)
        raise InvalidSpec(f"unknown algorithm {name!r}")


def sf_search(text: BytesLike, pattern: Pattern) -> MatchSet:
    data = np.frombuffer(as_bytes(text), dtype=np.uint8)
    n = data.size
    out = _kernels.out_buffer(n)
    count, _, _ = _kernels.sf_kernel()(data, n, pattern.array, out)
    return MatchSet.of(out[:count].tolist())


def _require_kind(table: ShiftTable1D, kind: TableKind) -> None:
    if table.kind is not kind:
        raise InvalidSpec(f"expected a {kind.value} table, got {table.kind.value}")


def bmh_search(buffer: SearchBuffer, pattern: Pattern, table: ShiftTable1D) -> MatchSet:
    _require_kind(table, TableKind.BMH_FALLBACK)
    out = _kernels.out_buffer(buffer.n)
    count, _, _ = _kernels.bmh_kernel()(buffer.array, buffer.n, pattern.array, table.entries, out)
    return MatchSet.of(out[:count].tolist())


def qs_search(buffer: SearchBuffer, pattern: Pattern, table: ShiftTable1D) -> MatchSet:
    _require_kind(table, TableKind.QUICK_SEARCH)
    out = _kernels.out_buffer(buffer.n)
    count, _, _ = _kernels.qs_kernel()(buffer.array, buffer.n, pattern.array, table.entries, out)
    return MatchSet.of(out[:count].tolist())


def _multi_window(buffer, pattern, dn, d, unrolled):
    _require_kind(d, TableKind.BMH_FALLBACK)
    if dn.windows > buffer.windows:
        raise InvalidSpec(
            f"buffer is padded for {buffer.windows} windows but the table has {dn.windows}"
        )
    if dn.m != pattern.m:
        raise InvalidSpec("shift table was built for a different pattern length")
    kernel = _kernels.multi_window_kernel(dn.windows, unrolled)
    out = _kernels.out_buffer(buffer.n)
    count, _, _ = kernel(
        buffer.array, buffer.n, pattern.array, dn.entries, d.entries, dn.sigma, out
    )
    return MatchSet.of(out[:count].tolist())


def multi_window_search(
    buffer: SearchBuffer, pattern: Pattern, dn: MultiShiftTable, d: ShiftTable1D
) -> MatchSet:
    """Probe the last character of ``dn.windows`` adjacent windows per step.

    A zero table entry means the first window ends in ``P[m-1]``; that window
    is verified left to right and the start then advances by the Horspool
    shift of its last character. Any other entry is the advance itself.
    """
    return _multi_window(buffer, pattern, dn, d, unrolled=False)


def multi_window_search_unrolled(
    buffer: SearchBuffer, pattern: Pattern, dn: MultiShiftTable, d: ShiftTable1D
) -> MatchSet:
    """Like :func:`multi_window_search`, but the loop never tests the end of
    the text except on zero entries; the sentinel copy of the pattern at
    offset ``n`` guarantees one."""
    return _multi_window(buffer, pattern, dn, d, unrolled=True)


@dataclass(frozen=True)
class PreparedSearch:
    """Everything an engine needs, built once and reusable across runs."""

    spec: EngineSpec
    pattern: Pattern
    buffer: SearchBuffer
    d: ShiftTable1D | None = None
    dn: MultiShiftTable | None = None


def prepare(
    spec: EngineSpec,
    text: BytesLike,
    pattern: Pattern,
    max_table_bytes: int | None = None,
) -> PreparedSearch:
    dn = d = None
    if spec.kind is EngineKind.BMH:
        d = build_bmh_table(pattern)
    elif spec.kind is EngineKind.QS:
        d = build_qs_table(pattern)
    elif spec.kind is EngineKind.MULTI_WINDOW:
        dn = build_multi_table_blockfill(pattern, windows=spec.windows, max_bytes=max_table_bytes)
        d = build_bmh_table(pattern)
    buffer = make_search_buffer(text, pattern, spec.buffer_windows)
    return PreparedSearch(spec, pattern, buffer, d, dn)


def search_prepared(prep: PreparedSearch) -> MatchSet:
    kind = prep.spec.kind
    if kind is EngineKind.SF:
        return sf_search(prep.buffer.text, prep.pattern)
    if kind is EngineKind.BMH:
        return bmh_search(prep.buffer, prep.pattern, prep.d)
    if kind is EngineKind.QS:
        return qs_search(prep.buffer, prep.pattern, prep.d)
    if prep.spec.unrolled:
        return multi_window_search_unrolled(prep.buffer, prep.pattern, prep.dn, prep.d)
    return multi_window_search(prep.buffer, prep.pattern, prep.dn, prep.d)


def run_engine(
    spec: EngineSpec,
    text: BytesLike,
    pattern: BytesLike | Pattern,
    alphabet: Alphabet,
    max_table_bytes: int | None = None,
):
    """Validate inputs, build tables and buffer, and run the engine.

    Returns ``(matches, metrics)``; ``metrics`` is ``None`` unless the spec is
    instrumented.
    """
    text = as_bytes(text)
    validate_text(text, alphabet)
    if not isinstance(pattern, Pattern):
        pattern = Pattern(as_bytes(pattern), alphabet, max_windows=max(spec.buffer_windows, 1))
    elif pattern.alphabet != alphabet:
        raise InvalidSpec("pattern was validated against a different alphabet")
    prep = prepare(spec, text, pattern, max_table_bytes)
    if spec.instrumented:
        from .metrics import collect_metrics

        return collect_metrics(spec, prep.buffer, pattern, (prep.d, prep.dn))
    return search_prepared(prep), None


__all__ = [
    "EngineKind",
    "EngineSpec",
    "PreparedSearch",
    "bmh_search",
    "multi_window_search",
    "multi_window_search_unrolled",
    "prepare",
    "qs_search",
    "run_engine",
    "search_prepared",
    "sf_search",
]
