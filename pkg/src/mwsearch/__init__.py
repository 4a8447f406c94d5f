"""Multi-window exact pattern matching.

Generalizes Boyer-Moore-Horspool by probing the last characters of N
adjacent windows per step through one N-dimensional shift table, so that a
single lookup can advance the search by up to ``N * m`` positions.
"""

from .bench import BenchConfig, BenchReport, emit_report, gen_random_text, run_bench
from .engines import (
    EngineKind,
    EngineSpec,
    bmh_search,
    multi_window_search,
    multi_window_search_unrolled,
    qs_search,
    run_engine,
    sf_search,
)
from .errors import (
    ConfigInvalid,
    InvalidAlphabet,
    InvalidPattern,
    InvalidSpec,
    MWSearchError,
    SymbolOutOfAlphabet,
    TableTooLarge,
)
from .metrics import CostCase, Metrics, OpCounts, collect_metrics, cost_model
from .model import (
    Alphabet,
    MatchSet,
    Pattern,
    SearchBuffer,
    make_search_buffer,
    validate_text,
    verify_match,
)
from .tables import (
    MultiShiftTable,
    ShiftTable1D,
    build_bmh_table,
    build_multi_table_blockfill,
    build_multi_table_naive,
    build_qs_table,
    lookup_shift,
    table_bytes,
)

__version__ = "0.1.0"
