"""Seeded random corpora, wall-clock benchmarking and report formatting."""

from __future__ import annotations

import io
import logging
import time
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .engines import EngineKind, EngineSpec
from .errors import ConfigInvalid
from .model import Alphabet, Pattern, make_search_buffer
from .tables import build_bmh_table, build_multi_table_blockfill, build_qs_table

log = logging.getLogger(__name__)

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

_CHUNK = 1 << 20


def splitmix64(state: int) -> tuple[int, int]:
    """One splitmix64 step on Python ints: returns ``(new_state, output)``."""
    state = (state + GOLDEN_GAMMA) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * _MIX1) & MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & MASK64
    return state, z ^ (z >> 31)


def splitmix64_stream(seed: int, count: int, start: int = 0) -> np.ndarray:
    """Outputs ``start+1 .. start+count`` of the generator seeded with ``seed``.

    The state after ``k`` steps is ``seed + k * gamma``, so the stream can be
    produced without a sequential loop.
    """
    with np.errstate(over="ignore"):
        k = np.arange(start + 1, start + count + 1, dtype=np.uint64)
        z = np.uint64(seed & MASK64) + k * np.uint64(GOLDEN_GAMMA)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
        return z ^ (z >> np.uint64(31))


def gen_random_text(sigma: int, size: int, seed: int) -> bytes:
    """Uniform symbols ``next_random mod sigma`` from splitmix64(seed)."""
    Alphabet(sigma)
    if size < 0:
        raise ValueError("size must be non-negative")
    parts = []
    for start in range(0, size, _CHUNK):
        count = min(_CHUNK, size - start)
        parts.append((splitmix64_stream(seed, count, start) % np.uint64(sigma)).astype(np.uint8))
    if not parts:
        return b""
    return np.concatenate(parts).tobytes()


def derive_seed(seed: int, *labels: int) -> int:
    state = seed & MASK64
    for label in labels:
        _, state = splitmix64(state ^ (label & MASK64))
    return state


def parse_int_list(spec: str) -> list[int]:
    """``"2..12"`` (inclusive), ``"2,4,8"`` or a mix like ``"2..4,8"``."""
    values: list[int] = []
    for part in spec.split(","):
        part = part.strip()
        if not part:
            raise ValueError(f"empty item in {spec!r}")
        if ".." in part:
            lo, hi = (int(x) for x in part.split("..", 1))
            if hi < lo:
                raise ValueError(f"empty range {part!r}")
            values.extend(range(lo, hi + 1))
        else:
            values.append(int(part))
    return values


@dataclass
class BenchConfig:
    sigma: int
    text_size: int
    m_list: Sequence[int]
    algs: Sequence[EngineSpec]
    reps: int = 100
    patterns_per_cell: int = 10
    seed: int = 0
    warmup: int = 1
    max_table_bytes: int | None = None

    def __post_init__(self):
        self.algs = [a if isinstance(a, EngineSpec) else EngineSpec.parse(a) for a in self.algs]
        self.m_list = list(self.m_list)
        self.validate()

    def validate(self) -> None:
        if not 2 <= self.sigma <= 256:
            raise ConfigInvalid(f"sigma must be in [2, 256], got {self.sigma}")
        if not self.m_list or min(self.m_list) < 1:
            raise ConfigInvalid("pattern lengths must be >= 1")
        if self.text_size < max(self.m_list):
            raise ConfigInvalid("text_size must be at least the longest pattern")
        if self.reps < 1:
            raise ConfigInvalid("reps must be >= 1")
        if self.patterns_per_cell < 1:
            raise ConfigInvalid("patterns_per_cell must be >= 1")
        if self.warmup < 0:
            raise ConfigInvalid("warmup must be >= 0")
        if not self.algs:
            raise ConfigInvalid("no algorithms selected")
        if any(a.instrumented for a in self.algs):
            raise ConfigInvalid("instrumented engines cannot be benchmarked")

    def text(self) -> bytes:
        return gen_random_text(self.sigma, self.text_size, self.seed)

    def patterns(self, m: int) -> list[bytes]:
        return [
            gen_random_text(self.sigma, m, derive_seed(self.seed, m, i))
            for i in range(self.patterns_per_cell)
        ]


REPORT_FIELDS = (
    "alg",
    "sigma",
    "m",
    "n",
    "reps",
    "total_seconds",
    "seconds_per_rep",
    "match_count",
    "mean_shift",
    "table_build_seconds",
)


@dataclass
class BenchRow:
    alg: str
    sigma: int
    m: int
    n: int
    reps: int
    total_seconds: float
    seconds_per_rep: float
    match_count: int
    mean_shift: float
    table_build_seconds: float


@dataclass
class BenchReport:
    rows: list[BenchRow] = field(default_factory=list)

    def cell(self, alg: str, m: int) -> BenchRow:
        for row in self.rows:
            if row.alg == alg and row.m == m:
                return row
        raise KeyError((alg, m))

    @property
    def algs(self) -> list[str]:
        return list(dict.fromkeys(r.alg for r in self.rows))

    @property
    def m_values(self) -> list[int]:
        return sorted({r.m for r in self.rows})

    def check_consistency(self) -> None:
        counts: dict[tuple[int, int], set[int]] = {}
        for r in self.rows:
            counts.setdefault((r.sigma, r.m), set()).add(r.match_count)
        bad = {k: v for k, v in counts.items() if len(v) > 1}
        if bad:
            raise RuntimeError(f"engines disagree on match counts: {bad}")


class _Runner:
    """Prebuilt kernel call for one (engine, pattern) pair."""

    def __init__(self, spec: EngineSpec, text: bytes, pattern: Pattern, max_table_bytes):
        self.buffer = make_search_buffer(text, pattern, spec.buffer_windows)
        self.out = _kernels.out_buffer(self.buffer.n)
        data, n, pat = self.buffer.array, self.buffer.n, pattern.array
        t0 = time.perf_counter()
        if spec.kind is EngineKind.SF:
            args = (data, n, pat, self.out)
            pick = lambda track: _kernels.sf_kernel()  # noqa: E731
        elif spec.kind is EngineKind.BMH:
            d = build_bmh_table(pattern)
            args = (data, n, pat, d.entries, self.out)
            pick = _kernels.bmh_kernel
        elif spec.kind is EngineKind.QS:
            d = build_qs_table(pattern)
            args = (data, n, pat, d.entries, self.out)
            pick = _kernels.qs_kernel
        else:
            dn = build_multi_table_blockfill(pattern, windows=spec.windows, max_bytes=max_table_bytes)
            d = build_bmh_table(pattern)
            args = (data, n, pat, dn.entries, d.entries, dn.sigma, self.out)

            def pick(track, _w=spec.windows, _u=spec.unrolled, _s=dn.sigma):
                return _kernels.multi_window_kernel(_w, _u, track, _s)

        self.build_seconds = time.perf_counter() - t0
        self.args = args
        self.fast = pick(False)
        self.tracked = pick(True)

    def stats(self) -> tuple[int, int, int]:
        """``(match_count, shifts, total_shift)`` from one tracked pass."""
        count, shifts, final_s = self.tracked(*self.args)
        return int(count), int(shifts), int(final_s)

    def time(self, reps: int) -> float:
        fn, args = self.fast, self.args
        t0 = time.perf_counter()
        for _ in range(reps):
            fn(*args)
        return time.perf_counter() - t0


def _split_reps(reps: int, parts: int) -> list[int]:
    base, extra = divmod(reps, parts)
    return [base + (1 if i < extra else 0) for i in range(parts)]


def run_bench(config: BenchConfig, text: bytes | None = None) -> BenchReport:
    """Time every (algorithm, m) cell over the same text and patterns.

    Tables are built once per pattern and their build time is reported
    separately; ``config.reps`` search passes are spread evenly over the
    cell's patterns after ``config.warmup`` discarded passes per pattern.
    """
    config.validate()
    alphabet = Alphabet(config.sigma)
    if text is None:
        text = config.text()
    report = BenchReport()
    for m in config.m_list:
        patterns = [Pattern(p, alphabet) for p in config.patterns(m)]
        rep_split = _split_reps(config.reps, len(patterns))
        for spec in config.algs:
            total = build = 0.0
            matches = shifts = shifted = 0
            for pattern, reps in zip(patterns, rep_split):
                runner = _Runner(spec, text, pattern, config.max_table_bytes)
                build += runner.build_seconds
                count, n_shifts, final_s = runner.stats()
                matches += count
                shifts += n_shifts
                shifted += final_s
                if config.warmup:
                    runner.time(config.warmup)
                if reps:
                    total += runner.time(reps)
            row = BenchRow(
                alg=spec.name,
                sigma=config.sigma,
                m=m,
                n=len(text),
                reps=config.reps,
                total_seconds=total,
                seconds_per_rep=total / config.reps,
                match_count=matches,
                mean_shift=shifted / shifts if shifts else 0.0,
                table_build_seconds=build,
            )
            log.info("%s m=%d: %.6f s/rep", row.alg, m, row.seconds_per_rep)
            report.rows.append(row)
    report.check_consistency()
    return report


def best_of(reports: Iterable[BenchReport]) -> BenchReport:
    """Per-cell minimum timing across repeated runs of the same config."""
    reports = list(reports)
    best = BenchReport()
    for row in reports[0].rows:
        cells = [r.cell(row.alg, row.m) for r in reports]
        fastest = min(cells, key=lambda c: c.total_seconds)
        best.rows.append(fastest)
    return best


_LABELS = {"sf": "SF", "bmh": "BMH", "qs": "QS", "mw2": "DW", "mw3": "TW", "mw4": "QW"}


def alg_label(name: str) -> str:
    if name in _LABELS:
        return _LABELS[name]
    if name.endswith("u") and name[:-1] in _LABELS:
        return _LABELS[name[:-1]] + "u"
    return name.upper()


def _format_row(row: BenchRow) -> str:
    cells = []
    for name in REPORT_FIELDS:
        value = getattr(row, name)
        cells.append(f"{value:.6f}" if isinstance(value, float) else str(value))
    return ",".join(cells)


def emit_report(report: BenchReport, format: str = "csv") -> str:
    if format == "csv":
        lines = [",".join(REPORT_FIELDS)] + [_format_row(r) for r in report.rows]
        return "\n".join(lines) + "\n"
    if format != "table":
        raise ValueError(f"unknown report format {format!r}")

    algs = report.algs
    buf = io.StringIO()
    if report.rows:
        first = report.rows[0]
        buf.write(
            f"total running time in seconds, sigma={first.sigma}, n={first.n}, reps={first.reps}\n"
        )
    labels = [alg_label(a) for a in algs]
    width = max([10] + [len(x) + 2 for x in labels])
    buf.write(f"{'':<6}" + "".join(f"{x:>{width}}" for x in labels) + "\n")
    for m in report.m_values:
        cells = []
        for a in algs:
            try:
                cells.append(f"{report.cell(a, m).total_seconds:>{width}.3f}")
            except KeyError:
                cells.append(f"{'-':>{width}}")
        buf.write(f"{'m=' + str(m):<6}" + "".join(cells) + "\n")
    return buf.getvalue()
