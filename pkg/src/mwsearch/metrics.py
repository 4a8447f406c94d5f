"""Event counters for instrumented searches and the static operation-count
model for one maximum-shift step of Horspool versus the double-window loop.

The instrumented loops here are plain Python re-implementations of the
compiled kernels that count every logical fetch. They are slow and meant for
analysis and for cross-checking the kernels, not for timing.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import asdict, dataclass, field
from enum import Enum

from .engines import EngineKind, EngineSpec
from .model import MatchSet, Pattern, SearchBuffer
from .tables import MultiShiftTable, ShiftTable1D


@dataclass
class Metrics:
    """Counters for one search.

    ``shift_histogram`` maps each *applied* advance of the window start to
    its frequency, so ``total_shift`` (their sum) equals the final window
    start. ``verifications`` counts window comparisons: every window for
    SF/BMH/QS, zero-entry candidates for the multi-window engines.
    """

    iterations: int = 0
    text_reads: int = 0
    table_reads: int = 0
    verifications: int = 0
    verify_symbol_compares: int = 0
    total_shift: int = 0
    shift_histogram: Counter = field(default_factory=Counter)

    def shift(self, amount: int) -> None:
        self.total_shift += amount
        self.shift_histogram[amount] += 1

    @property
    def shifts(self) -> int:
        return sum(self.shift_histogram.values())

    @property
    def mean_shift(self) -> float:
        shifts = self.shifts
        return self.total_shift / shifts if shifts else 0.0

    def summary(self) -> str:
        lines = [
            f"iterations:             {self.iterations}",
            f"text_reads:             {self.text_reads}",
            f"table_reads:            {self.table_reads}",
            f"verifications:          {self.verifications}",
            f"verify_symbol_compares: {self.verify_symbol_compares}",
            f"total_shift:            {self.total_shift}",
            f"mean_shift:             {self.mean_shift:.4f}",
        ]
        top = sorted(self.shift_histogram.items())
        lines.append("shift_histogram:        " + " ".join(f"{k}:{v}" for k, v in top))
        return "\n".join(lines)


class CostCase(str, Enum):
    BMH_TWO_ITERATIONS_MAX_SHIFT = "bmh_two_iterations_max_shift"
    DW_ONE_ITERATION_MAX_SHIFT = "dw_one_iteration_max_shift"


@dataclass(frozen=True)
class OpCounts:
    comparisons: int
    assignments: int
    memory_reads: int
    additions: int
    multiplications: int

    @property
    def total(self) -> int:
        return (
            self.comparisons
            + self.assignments
            + self.memory_reads
            + self.additions
            + self.multiplications
        )

    def as_dict(self) -> dict:
        return {**asdict(self), "total": self.total}


# Covering 2m text symbols when every probe misses the pattern: two Horspool
# iterations versus one double-window iteration, counted on the reference
# C-like loop shapes.
_COSTS = {
    CostCase.BMH_TWO_ITERATIONS_MAX_SHIFT: OpCounts(
        comparisons=4, assignments=4, memory_reads=28, additions=14, multiplications=0
    ),
    CostCase.DW_ONE_ITERATION_MAX_SHIFT: OpCounts(
        comparisons=2, assignments=2, memory_reads=10, additions=6, multiplications=1
    ),
}


def cost_model(case: CostCase | str) -> OpCounts:
    return _COSTS[CostCase(case)]


def _sf(buffer: SearchBuffer, pattern: Pattern, mt: Metrics) -> list[int]:
    data, p, m, n = buffer.data, pattern.symbols, pattern.m, buffer.n
    found = []
    s = 0
    while s <= n - m:
        mt.iterations += 1
        mt.verifications += 1
        j = 0
        while j < m:
            mt.text_reads += 1
            mt.verify_symbol_compares += 1
            if data[s + j] != p[j]:
                break
            j += 1
        if j == m:
            found.append(s)
        s += 1
        mt.shift(1)
    return found


def _bmh(buffer: SearchBuffer, pattern: Pattern, d: ShiftTable1D, mt: Metrics) -> list[int]:
    data, p, m, n = buffer.data, pattern.symbols, pattern.m, buffer.n
    m1 = m - 1
    entries = d.entries.tolist()
    found = []
    s = 0
    while s <= n - m:
        mt.iterations += 1
        mt.verifications += 1
        j = m1
        while j >= 0:
            mt.text_reads += 1
            mt.verify_symbol_compares += 1
            if data[s + j] != p[j]:
                break
            j -= 1
        if j < 0:
            found.append(s)
        mt.text_reads += 1
        mt.table_reads += 1
        r = entries[data[s + m1]]
        s += r
        mt.shift(r)
    return found


def _qs(buffer: SearchBuffer, pattern: Pattern, d: ShiftTable1D, mt: Metrics) -> list[int]:
    data, p, m, n = buffer.data, pattern.symbols, pattern.m, buffer.n
    entries = d.entries.tolist()
    found = []
    s = 0
    while s <= n - m:
        mt.iterations += 1
        mt.verifications += 1
        j = 0
        while j < m:
            mt.text_reads += 1
            mt.verify_symbol_compares += 1
            if data[s + j] != p[j]:
                break
            j += 1
        if j == m:
            found.append(s)
        mt.text_reads += 1
        mt.table_reads += 1
        r = entries[data[s + m]]
        s += r
        mt.shift(r)
    return found


def _multi_window(
    buffer: SearchBuffer,
    pattern: Pattern,
    dn: MultiShiftTable,
    d: ShiftTable1D,
    unrolled: bool,
    mt: Metrics,
) -> list[int]:
    data, p, m, n = buffer.data, pattern.symbols, pattern.m, buffer.n
    m1 = m - 1
    last = n - m
    sigma, windows = dn.sigma, dn.windows
    table = dn.entries.tolist()
    fallback = d.entries.tolist()
    found = []
    s = 0
    while unrolled or s < n:
        mt.iterations += 1
        idx = 0
        for k in range(1, windows + 1):
            idx = idx * sigma + data[s + k * m - 1]
        mt.text_reads += windows
        mt.table_reads += 1
        r = table[idx]
        if r == 0:
            if unrolled and s > last:
                break
            mt.verifications += 1
            j = 0
            while j < m:
                mt.text_reads += 1
                mt.verify_symbol_compares += 1
                if data[s + j] != p[j]:
                    break
                j += 1
            if j == m and s <= last:
                found.append(s)
            mt.text_reads += 1
            mt.table_reads += 1
            r = fallback[data[s + m1]]
        s += r
        mt.shift(r)
    return found


def collect_metrics(spec: EngineSpec, buffer: SearchBuffer, pattern: Pattern, tables=(None, None)):
    """Run the instrumented twin of ``spec``'s engine.

    ``tables`` is ``(d, dn)``: the 1-D table (Horspool or Quick Search, as the
    engine requires) and, for multi-window engines, the N-dimensional table.
    Returns ``(MatchSet, Metrics)``.
    """
    d, dn = tables
    mt = Metrics()
    kind = spec.kind
    if kind is EngineKind.SF:
        found = _sf(buffer, pattern, mt)
    elif kind is EngineKind.BMH:
        found = _bmh(buffer, pattern, d, mt)
    elif kind is EngineKind.QS:
        found = _qs(buffer, pattern, d, mt)
    else:
        found = _multi_window(buffer, pattern, dn, d, spec.unrolled, mt)
    return MatchSet.of(found), mt
