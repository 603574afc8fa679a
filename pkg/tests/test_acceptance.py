"""Exit criteria. Each test prints one PASS/FAIL line in the terminal summary.

All comparisons are exact integers; time limits are wall-clock seconds
measured from cold caches.
"""
import json
import random
import subprocess
import sys
import time
from contextlib import contextmanager

import jsonschema
import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from lucastile import codes, lucas, partition
from lucastile.codes import enumerate_U, lagarias_shor_code
from lucastile.identities import lhs, rhs, verify_closed_form, verify_via_tiling_even, verify_via_tiling_odd
from lucastile.lucas import (
    brute_force_counts,
    lucas_number,
    lucas_vertex_masks,
    weight_count,
    weight_count_one_at,
    weight_count_zero_at,
)
from lucastile.partition import (
    LO_OR_HI,
    Factor,
    build_F,
    build_G,
    cylinder_check,
    subfamily,
    verify_bijection,
    volume_sum,
    weight_census,
)
from lucastile.report import REPORT_SCHEMA
from lucastile.selector import (
    boxes,
    verify_discrete_partition,
    verify_selector,
    verify_selector_quadratic,
)
from lucastile.tiling import mutate_code, twin_pair_check, voxel_cover_check
from oracles import U3_FIGURE, U5_DISPLAY

pytestmark = pytest.mark.acceptance


def _clear_caches():
    for fn in (codes.lagarias_shor_code, codes.independent_set_masks, codes.u_array,
               lucas.lucas_vertex_masks, partition.build_F, partition.build_G):
        fn.cache_clear()


@contextmanager
def criterion(number, title, limit):
    _clear_caches()
    start = time.perf_counter()
    status = "FAIL"
    try:
        yield
        elapsed = time.perf_counter() - start
        assert elapsed < limit, f"took {elapsed:.2f}s, limit {limit}s"
        status = "PASS"
    finally:
        elapsed = time.perf_counter() - start
        ACCEPTANCE_LINES.append(f"[{status}] criterion {number:>2}: {title} ({elapsed:.2f}s, limit {limit}s)")


def _cli(*args):
    return subprocess.run([sys.executable, "-m", "lucastile", *args], capture_output=True, text=True)


def _table_words(stdout):
    return {tuple(int(c) for c in line.split()) for line in stdout.strip().splitlines()[2:-1]}


def test_criterion_01_code_reproduction():
    with criterion(1, "U(5) and U(3) reproduced by code gen", 1.0):
        res5 = _cli("code", "gen", "-n", "5", "--set", "U", "--format", "table")
        res3 = _cli("code", "gen", "-n", "3", "--set", "U", "--format", "table")
        assert res5.returncode == 0 and res3.returncode == 0
        assert _table_words(res5.stdout) == set(U5_DISPLAY)
        assert _table_words(res3.stdout) == U3_FIGURE


def test_criterion_02_tiling_certification():
    with criterion(2, "tiling certified by twin-pair and voxel cover; mutants agree", 60.0):
        for n in (3, 5, 7, 9, 11, 13):
            assert twin_pair_check(lagarias_shor_code(n)).ok, n
        for n in (3, 5, 7, 9):
            assert voxel_cover_check(lagarias_shor_code(n)).ok, n
        rng = random.Random(20261016)
        for n in (3, 5, 7):
            code = lagarias_shor_code(n)
            broken = 0
            for _ in range(100):
                m = mutate_code(code, rng)
                twin, voxel = twin_pair_check(m), voxel_cover_check(m)
                assert twin.ok == voxel.ok, (n, m.words)
                broken += not twin.ok
            assert broken > 0


def _identity_sweep(identity_id):
    for r in verify_closed_form(identity_id, 200):
        assert r.ok, (identity_id, r.n)
    for n in range(3, 26, 2):
        r = verify_via_tiling_odd(identity_id, n)
        assert r.ok and r.lhs == lhs(identity_id, n), (identity_id, n)
    for m in range(2, 25, 2):
        r = verify_via_tiling_even(identity_id, m)
        assert r.ok and r.lhs == lhs(identity_id, m), (identity_id, m)


def test_criterion_03_identity_one():
    with criterion(3, "identity 1 exact: closed n<=200, tiling odd n<=25, G even n<=24", 30.0):
        assert [rhs(1, n) for n in (1, 2, 3)] == [1, 5, 7]
        _identity_sweep(1)


def test_criterion_04_identities_two_and_three():
    with criterion(4, "identities 2 and 3 exact over the same sweep", 30.0):
        _identity_sweep(2)
        _identity_sweep(3)


def test_criterion_05_volume_equations():
    with criterion(5, "F^i_LoOrHi = 2/3(2^n+1), F^i_Full = 1/3(2^n-2), census, odd n<=21", 60.0):
        for n in range(3, 22, 2):
            F = build_F(n)
            for i in range(1, n + 1):
                assert 3 * volume_sum(subfamily(F, i, LO_OR_HI)) == 2 * (2 ** n + 1), (n, i)
                assert 3 * volume_sum(subfamily(F, i, Factor.FULL)) == 2 ** n - 2, (n, i)
            census = weight_census(F)
            assert census[0] == 2
            for k in range(1, n + 1):
                assert census.get(k, 0) == weight_count(n, k), (n, k)


def test_criterion_06_even_case_structure():
    with criterion(6, "G volumes for odd n in 5..21; bijection b for odd n in 5..17", 60.0):
        for n in range(5, 22, 2):
            G = build_G(n)
            half = 2 ** (n - 1)
            assert volume_sum(G) == half
            assert 3 * volume_sum(subfamily(G, n, Factor.LO)) == 2 * (half - 1)
            assert 3 * volume_sum(subfamily(G, n, Factor.HI)) == half + 2
            for i in range(1, n):
                assert 3 * volume_sum(subfamily(G, i, Factor.FULL)) == half + 2, (n, i)
        for n in range(5, 18, 2):
            assert verify_bijection(n), n


def test_criterion_07_cylinders():
    with criterion(7, "cylinder property for F^i_LoOrHi and F^i_Full, odd n<=15", 60.0):
        for n in range(3, 16, 2):
            F = build_F(n)
            for i in range(1, n + 1):
                assert cylinder_check(subfamily(F, i, LO_OR_HI), i), (n, i)
                assert cylinder_check(subfamily(F, i, Factor.FULL), i), (n, i)


def test_criterion_08_selector():
    with criterion(8, "discrete partition and selector for odd n in 3..19", 60.0):
        for n in range(3, 20, 2):
            assert verify_discrete_partition(n), n
            assert verify_selector(n), n
            if n <= 11:
                assert verify_selector_quadratic(n), n
            selectable = sum(not b.is_all_ones for b in boxes(n))
            assert selectable == len(lucas_vertex_masks(n)) == lucas_number(n), n


def test_criterion_09_lucas_count_bridge():
    with criterion(9, "brute-force Lucas counts = closed forms n<=24; 2->0 substitution n<=25", 60.0):
        for n in range(1, 25):
            total, one_at = brute_force_counts(n)
            for k in range(n + 1):
                assert total[k] == weight_count(n, k), (n, k)
                for i in range(1, n + 1):
                    assert one_at[i - 1, k] == weight_count_one_at(n, k, i), (n, k, i)
                    assert total[k] - one_at[i - 1, k] == weight_count_zero_at(n, k, i), (n, k, i)
        for n in range(3, 26, 2):
            words = enumerate_U(n).as_array()
            bits = np.where(words == 2, 0, words).astype(np.uint64)
            masks = (bits << np.arange(n, dtype=np.uint64)).sum(axis=1)
            masks = np.sort(np.append(masks, np.uint64(0)))
            assert np.array_equal(masks, lucas_vertex_masks(n)), n


def test_criterion_10_cli_contract():
    with criterion(10, "exit codes, schema-valid JSON, deterministic report all -n 5", 60.0):
        assert _cli("tiling", "verify", "-n", "4").returncode == 2
        assert _cli("tiling", "verify").returncode == 2
        ok = _cli("identities", "check", "--id", "1", "--n-max", "200", "--via", "closed")
        assert ok.returncode == 0
        doc = json.loads(ok.stdout)
        assert len(doc["verdicts"]) == 200
        jsonschema.validate(doc, REPORT_SCHEMA)
        runs = [_cli("report", "all", "-n", "5") for _ in range(3)]
        assert all(r.returncode == 0 for r in runs)
        assert runs[0].stdout == runs[1].stdout == runs[2].stdout
        jsonschema.validate(json.loads(runs[0].stdout), REPORT_SCHEMA)
        for cmd in (("code", "gen", "-n", "5"), ("tiling", "verify", "-n", "5"),
                    ("partition", "stats", "-n", "7"), ("selector", "verify", "-n", "5"),
                    ("identities", "check", "--n-max", "12", "--via", "tiling")):
            res = _cli(*cmd)
            assert res.returncode == 0, cmd
            jsonschema.validate(json.loads(res.stdout), REPORT_SCHEMA)
