"""Acceptance gate. Each test carries a ``criterion`` marker; the terminal
summary prints one PASS/FAIL line per criterion."""

import itertools
import math
import random
import time
import warnings
from functools import lru_cache

import numpy as np
import pytest

from mwsearch import (
    Alphabet,
    BenchConfig,
    CostCase,
    EngineKind,
    EngineSpec,
    Pattern,
    TableTooLarge,
    bmh_search,
    build_bmh_table,
    build_multi_table_blockfill,
    build_multi_table_naive,
    build_qs_table,
    collect_metrics,
    cost_model,
    make_search_buffer,
    multi_window_search,
    multi_window_search_unrolled,
    qs_search,
    run_bench,
    table_bytes,
)
from mwsearch.bench import best_of
from mwsearch.tables import DEFAULT_TABLE_CAP

from oracles import (
    horspool_shifts,
    minimal_consistent_table,
    naive_find_all,
    nearest_probe_table,
)

SIGMAS = (2, 4, 16, 32, 64, 256)
PATTERNS_PER_SIGMA = 100
TEXTS_PER_PATTERN = 17
WINDOWS = (1, 2, 3, 4)


def _texts_for(rng: random.Random, sigma: int, pattern: bytes) -> list[bytes]:
    m = len(pattern)
    sym = lambda: rng.randrange(sigma)  # noqa: E731
    texts = []
    for _ in range(9):
        n = rng.randint(0, 2048)
        texts.append(bytes(sym() for _ in range(n)))
    for _ in range(3):
        n = rng.randint(m, 2048)
        t = bytearray(sym() for _ in range(n))
        for _ in range(rng.randint(1, 6)):
            pos = rng.randint(0, n - m)
            t[pos:pos + m] = pattern
        texts.append(bytes(t))
    texts.append(bytes([pattern[0]]) * rng.randint(0, 300))
    texts.append(pattern)
    others = [x for x in range(sigma) if x != pattern[0]]
    texts.append(bytes(rng.choice(others) for _ in range(rng.randint(0, 2048))))
    texts.append(pattern[: rng.randint(0, m - 1)])
    texts.append(pattern * rng.randint(2, 8))
    assert len(texts) == TEXTS_PER_PATTERN
    return texts


def _patterns_for(rng: random.Random, sigma: int) -> list[bytes]:
    out = []
    for i in range(PATTERNS_PER_SIGMA):
        m = 1 + i % 16
        if i % 10 == 9:
            out.append(bytes([rng.randrange(sigma)]) * m)
        else:
            out.append(bytes(rng.randrange(sigma) for _ in range(m)))
    return out


@lru_cache(maxsize=None)
def randomized_suite():
    """Run every engine over the seeded suite.

    Returns ``(cases, results, oversized)``: ``results[name]`` lists one
    position tuple per case; ``oversized`` collects (sigma, N) pairs whose
    table exceeds the default memory cap (the engine must refuse them).
    """
    rng = random.Random(20240601)
    cases = []
    results = {name: [] for name in ["bmh", "qs"] + [f"mw{n}{u}" for n in WINDOWS for u in ("", "u")]}
    oversized = set()
    for sigma in SIGMAS:
        alphabet = Alphabet(sigma)
        for pattern_bytes in _patterns_for(rng, sigma):
            p = Pattern(pattern_bytes, alphabet, max_windows=max(WINDOWS))
            d1 = build_bmh_table(p)
            dq = build_qs_table(p)
            tables = {}
            for windows in WINDOWS:
                try:
                    tables[windows] = build_multi_table_blockfill(p, windows=windows)
                except TableTooLarge:
                    oversized.add((sigma, windows))
            for text in _texts_for(rng, sigma, pattern_bytes):
                cases.append((sigma, text, pattern_bytes, tuple(naive_find_all(text, pattern_bytes))))
                buf1 = make_search_buffer(text, p, 1)
                results["bmh"].append(bmh_search(buf1, p, d1).positions)
                results["qs"].append(qs_search(buf1, p, dq).positions)
                for windows in WINDOWS:
                    if windows not in tables:
                        results[f"mw{windows}"].append(None)
                        results[f"mw{windows}u"].append(None)
                        continue
                    buf = make_search_buffer(text, p, windows)
                    dn = tables[windows]
                    results[f"mw{windows}"].append(multi_window_search(buf, p, dn, d1).positions)
                    results[f"mw{windows}u"].append(
                        multi_window_search_unrolled(buf, p, dn, d1).positions
                    )
    return cases, results, oversized


@pytest.mark.criterion(1, "oracle equivalence over >= 10,000 randomized and adversarial cases")
def test_criterion_1_oracle_equivalence():
    t0 = time.perf_counter()
    cases, results, oversized = randomized_suite()
    assert len(cases) >= 10_000
    # 256^4 one-byte entries is 4 GiB; the only combination over the 64 MiB cap
    assert oversized == {(256, 4)}
    assert table_bytes(256, 4, 1) > DEFAULT_TABLE_CAP
    checked = 0
    for name, got in results.items():
        for (sigma, _text, _pat, expected), positions in zip(cases, got):
            if positions is None:
                assert (sigma, int(name[2])) in oversized
                continue
            assert positions == expected, (name, sigma, _pat)
            checked += 1
    with_matches = sum(1 for c in cases if c[3])
    elapsed = time.perf_counter() - t0
    print(f"{len(cases)} cases ({with_matches} with matches), {checked} engine runs, "
          f"{elapsed:.1f}s; mw4 at sigma=256 refused (TableTooLarge)")
    assert elapsed < 120


@pytest.mark.criterion(2, "exhaustive table correctness, sigma <= 6, m <= 5, N <= 3")
def test_criterion_2_table_correctness():
    t0 = time.perf_counter()
    tables = equal_to_oracle = 0
    for sigma in range(2, 7):
        alphabet = Alphabet(sigma)
        first = np.arange(sigma)
        for m in range(1, 6):
            for symbols in itertools.product(range(sigma), repeat=m):
                pattern = bytes(symbols)
                p = Pattern(pattern, alphabet, max_windows=3)
                d1 = np.array(horspool_shifts(pattern, sigma))
                assert build_bmh_table(p).entries.tolist() == d1.tolist()
                for windows in (1, 2, 3):
                    view = build_multi_table_naive(p, windows=windows).as_ndarray().astype(np.int64)
                    # (a) closed form
                    assert np.array_equal(view, nearest_probe_table(pattern, sigma, windows))
                    # (b) never beyond the minimal consistent shift
                    oracle = minimal_consistent_table(pattern, sigma, windows)
                    assert (view <= oracle).all()
                    equal_to_oracle += bool((view == oracle).all())
                    # (c) zero entries exactly where the first probe is P[m-1]
                    zero_rows = (first == pattern[-1]).reshape((sigma,) + (1,) * (windows - 1))
                    assert np.array_equal(view == 0, np.broadcast_to(zero_rows, view.shape))
                    # (d) first probe in P but not P[m-1]: same shift as Horspool
                    for i in set(pattern) - {pattern[-1]}:
                        assert (view[i] == d1[i]).all()
                    tables += 1
    elapsed = time.perf_counter() - t0
    print(f"{tables} tables checked in {elapsed:.1f}s; "
          f"{equal_to_oracle} equal the minimal consistent shift everywhere")
    assert elapsed < 60


@pytest.mark.criterion(3, "blockfill bit-identical to naive fill on 500 random configs")
def test_criterion_3_blockfill_equivalence():
    rng = random.Random(77)
    done = 0
    while done < 500:
        sigma = rng.randint(2, 64)
        windows = rng.randint(1, 4)
        m = rng.randint(1, 20)
        if table_bytes(sigma, windows, m) > DEFAULT_TABLE_CAP:
            continue
        if rng.random() < 0.2:
            symbols = bytes([rng.randrange(sigma)]) * m
        else:
            symbols = bytes(rng.randrange(sigma) for _ in range(m))
        p = Pattern(symbols, Alphabet(sigma), max_windows=windows)
        naive = build_multi_table_naive(p, windows=windows)
        fast = build_multi_table_blockfill(p, windows=windows)
        assert naive.entries.dtype == fast.entries.dtype
        assert naive.entries.tobytes() == fast.entries.tobytes(), (sigma, windows, symbols)
        done += 1
    print(f"{done} configurations identical")


@pytest.mark.criterion(4, "cost model reproduces the operation-count table")
def test_criterion_4_cost_model():
    bmh = cost_model(CostCase.BMH_TWO_ITERATIONS_MAX_SHIFT)
    dw = cost_model(CostCase.DW_ONE_ITERATION_MAX_SHIFT)
    assert (bmh.comparisons, bmh.assignments, bmh.memory_reads, bmh.additions,
            bmh.multiplications, bmh.total) == (4, 4, 28, 14, 0, 50)
    assert (dw.comparisons, dw.assignments, dw.memory_reads, dw.additions,
            dw.multiplications, dw.total) == (2, 2, 10, 6, 1, 21)
    assert bmh.total > 2 * dw.total
    print(f"BMH total {bmh.total}, DW total {dw.total}")


@pytest.mark.criterion(5, "table sizes 64 KiB / 32 KiB / 64 KiB")
@pytest.mark.parametrize("sigma, windows, expected", [(256, 2, 65536), (32, 3, 32768), (16, 4, 65536)])
def test_criterion_5_table_sizes(sigma, windows, expected):
    assert table_bytes(sigma, windows, 8) == expected
    p = Pattern(bytes(range(8)), Alphabet(sigma), max_windows=windows)
    assert build_multi_table_blockfill(p, windows=windows).nbytes == expected
    print(f"sigma={sigma} N={windows}: {expected} bytes")


@pytest.mark.criterion(6, "disjoint-alphabet regime: shifts of N*m, iteration counts")
def test_criterion_6_disjoint_regime():
    sigma = 32
    alphabet = Alphabet(sigma)
    rng = random.Random(6)
    for m in (1, 2, 3, 5, 8):
        pattern = bytes(rng.randrange(0, 8) for _ in range(m))
        p = Pattern(pattern, alphabet)
        d1 = build_bmh_table(p)
        for K in (1, 7, 40):
            iterations = {}
            for windows in WINDOWS:
                n = windows * m * K
                text = bytes(rng.randrange(8, sigma) for _ in range(n))
                dn = build_multi_table_blockfill(p, windows=windows)
                buf = make_search_buffer(text, p, windows)
                expect = math.ceil((n + 1) / (windows * m))
                for unrolled in (False, True):
                    spec = EngineSpec(EngineKind.MULTI_WINDOW, windows, unrolled, instrumented=True)
                    matches, mt = collect_metrics(spec, buf, p, (d1, dn))
                    assert matches == []
                    assert set(mt.shift_histogram) == {windows * m}
                    assert abs(mt.iterations - expect) <= 1
                    iterations[(windows, unrolled)] = mt.iterations
            # DW against BMH on one shared text of length 2*m*K
            text = bytes(rng.randrange(8, sigma) for _ in range(2 * m * K))
            _, bmh = collect_metrics(EngineSpec(EngineKind.BMH, instrumented=True),
                                     make_search_buffer(text, p, 1), p, (d1, None))
            _, dw = collect_metrics(EngineSpec(EngineKind.MULTI_WINDOW, 2, instrumented=True),
                                    make_search_buffer(text, p, 2), p,
                                    (d1, build_multi_table_blockfill(p, windows=2)))
            assert abs(2 * dw.iterations - bmh.iterations) <= 2
    print("all shifts equal N*m; DW iterations are half of BMH's")


def _table2_config(reps=100, seed=7, m_list=range(4, 10), algs=("bmh", "qs", "mw2", "mw3")):
    return BenchConfig(sigma=32, text_size=1 << 20, m_list=m_list, algs=list(algs),
                       reps=reps, patterns_per_cell=10, seed=seed, warmup=10)


@pytest.mark.bench
@pytest.mark.criterion(7, "benchmark ordering TW < BMH, TW < QS, DW < BMH, TW/BMH <= 0.95")
def test_criterion_7_benchmark_ordering():
    config = _table2_config()
    text = config.text()
    report = best_of(run_bench(config, text) for _ in range(3))
    failures = []
    for m in config.m_list:
        sec = {a: report.cell(a, m).seconds_per_rep for a in ("bmh", "qs", "mw2", "mw3")}
        ratio = sec["mw3"] / sec["bmh"]
        print(f"m={m}: BMH {sec['bmh'] * 1e3:.3f} ms  QS {sec['qs'] * 1e3:.3f} ms  "
              f"DW {sec['mw2'] * 1e3:.3f} ms  TW {sec['mw3'] * 1e3:.3f} ms  TW/BMH {ratio:.3f}")
        if not (sec["mw3"] < sec["bmh"] and sec["mw3"] < sec["qs"] and sec["mw2"] < sec["bmh"]
                and ratio <= 0.95):
            failures.append(m)
    assert not failures, f"ordering violated for m in {failures}"


@pytest.mark.criterion(8, "unrolled and basic multi-window loops agree; unrolled timing (soft)")
def test_criterion_8_unrolled_parity():
    cases, results, _ = randomized_suite()
    compared = 0
    for windows in WINDOWS:
        basic, unrolled = results[f"mw{windows}"], results[f"mw{windows}u"]
        for x, y in zip(basic, unrolled):
            assert x == y
            compared += x is not None
    print(f"{compared} basic/unrolled pairs identical")


@pytest.mark.bench
@pytest.mark.criterion(8, "unrolled and basic multi-window loops agree; unrolled timing (soft)")
def test_criterion_8_unrolled_timing_soft():
    config = _table2_config(m_list=[6], algs=("mw2", "mw2u", "mw3", "mw3u"))
    text = config.text()
    report = best_of(run_bench(config, text) for _ in range(3))
    for windows in (2, 3):
        basic = report.cell(f"mw{windows}", 6).seconds_per_rep
        unrolled = report.cell(f"mw{windows}u", 6).seconds_per_rep
        ratio = unrolled / basic
        verdict = "ok" if ratio <= 1.02 else "inverted (soft check, not failing)"
        print(f"N={windows}, m=6: unrolled/basic = {ratio:.3f} {verdict}")
        if ratio > 1.02:
            warnings.warn(f"unrolled N={windows} loop slower than basic: ratio {ratio:.3f}")
        assert math.isfinite(ratio)


@pytest.mark.criterion(9, "bench determinism: corpora, match counts, mean shifts")
def test_criterion_9_determinism():
    def run():
        config = BenchConfig(sigma=32, text_size=1 << 20, m_list=range(2, 13),
                             algs=["bmh", "qs", "mw2", "mw3"], reps=1, patterns_per_cell=10,
                             seed=7, warmup=0)
        text = config.text()
        patterns = [config.patterns(m) for m in config.m_list]
        report = run_bench(config, text)
        return text, patterns, [(r.alg, r.m, r.match_count, r.mean_shift) for r in report.rows]

    first, second = run(), run()
    assert first[0] == second[0]
    assert first[1] == second[1]
    assert first[2] == second[2]
    print(f"{len(first[2])} cells identical across two runs")
