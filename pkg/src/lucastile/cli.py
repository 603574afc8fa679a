"""Command-line front end.

Exit status: 0 when every verdict holds, 1 when any fails, 2 on a usage
error. The report goes to stdout (or ``-o FILE``); diagnostics go to stderr.
"""
from __future__ import annotations

import argparse
import random
import sys
import time
from contextlib import contextmanager
from typing import Optional, Sequence

from . import __doc__ as _summary, __version__
from .codes import (
    enumerate_U,
    filter_even_threes,
    filter_odd_zeros,
    lagarias_shor_code,
    lagarias_shor_matrix,
    require_odd,
    subset_row_sums,
    transpose,
)
from .errors import UsageError
from .identities import (
    IDENTITY_IDS,
    termwise_decomposition_check,
    verify_closed_form,
    verify_via_tiling,
)
from .lucas import lucas_number, lucas_vertex_masks, weight_count
from .partition import (
    LO_OR_HI,
    Factor,
    build_F,
    build_G,
    build_R,
    cylinder_check,
    is_partition,
    subfamily,
    verify_bijection,
    volume_sum,
    weight_census,
)
from .report import FORMATS, Check, RunReport, Table, serialize, word_str
from .selector import (
    boxes,
    star_followed_by_one,
    verify_discrete_partition,
    verify_selector,
    verify_selector_quadratic,
)
from .tiling import (
    default_voxel_budget,
    disjoint_from_base,
    mutate_code,
    twin_pair_check,
    voxel_cover_check,
)

CODE_SETS = ("A", "AT", "VA", "VAT", "Ve", "Vo", "V", "U", "R")
SELECTOR_ORACLE_MAX_N = 11


class _Timer:
    def __init__(self):
        self.steps: dict[str, int] = {}

    @contextmanager
    def step(self, name: str):
        start = time.perf_counter_ns()
        yield
        self.steps[name] = self.steps.get(name, 0) + (time.perf_counter_ns() - start) // 1000


def _code_set(n: int, which: str) -> tuple[list, bool]:
    a = lagarias_shor_matrix(n)
    if which == "A":
        return list(a.rows), True
    if which == "AT":
        return list(transpose(a).rows), True
    if which in ("VA", "VAT", "Ve", "Vo"):
        sums = subset_row_sums(a if which in ("VA", "Ve") else transpose(a))
        distinct = len(sums) == 2 ** n
        if which == "Ve":
            sums = filter_even_threes(sums)
        elif which == "Vo":
            sums = filter_odd_zeros(sums)
        return list(sums.words), distinct
    if which == "V":
        code = lagarias_shor_code(n)
        return list(code.words), len(code) == 2 ** n
    if which == "U":
        require_odd(n)
        return list(enumerate_U(n).words), True
    require_odd(n, 5)
    return list(build_R(n).words), True


def cmd_code_gen(args, timer: _Timer) -> RunReport:
    n = args.n
    if n < 1:
        raise UsageError(f"n must be positive, got {n}")
    with timer.step("code"):
        words, ok = _code_set(n, args.set)
    detail = {"set": args.set, "size": len(words), "words": [word_str(w) for w in words]}
    table = Table(tuple(f"v{j + 1}" for j in range(n)), [tuple(w) for w in words])
    return RunReport("code gen", {"n": n, "set": args.set},
                     [Check("code", n, ok, detail)], table=table)


def _tiling_verdicts(n: int, oracle: str, budget: int, mutants: int, seed: int, timer: _Timer) -> list:
    require_odd(n)
    with timer.step("code"):
        code = lagarias_shor_code(n)
    verdicts = []
    if oracle in ("twin", "both"):
        with timer.step("twin_pair"):
            verdicts.append(twin_pair_check(code))
    if oracle in ("voxel", "both"):
        with timer.step("voxel_cover"):
            verdicts.append(voxel_cover_check(code, budget))
    with timer.step("base_intersection"):
        meeting = {w for w in code.words if not disjoint_from_base(w)}
        expected = set(enumerate_U(n).words) | {(0,) * n, (2,) * n}
    verdicts.append(Check("base_intersection", n, meeting == expected, {"words": len(meeting)}))
    if mutants:
        rng = random.Random(seed)
        agree = broken = 0
        with timer.step("mutants"):
            for _ in range(mutants):
                m = mutate_code(code, rng)
                twin, voxel = twin_pair_check(m).ok, voxel_cover_check(m, budget).ok
                agree += twin == voxel
                broken += not twin
        verdicts.append(Check("mutant_agreement", n, agree == mutants,
                              {"mutants": mutants, "agree": agree, "broken": broken, "seed": seed}))
    return verdicts


def cmd_tiling_verify(args, timer: _Timer) -> RunReport:
    verdicts = _tiling_verdicts(args.n, args.oracle, args.voxel_budget, args.mutants, args.seed, timer)
    params = {"n": args.n, "oracle": args.oracle, "voxel_budget": args.voxel_budget,
              "mutants": args.mutants, "seed": args.seed}
    return RunReport("tiling verify", params, verdicts)


def _partition_checks(n: int, timer: _Timer) -> tuple[list, Table]:
    require_odd(n)
    with timer.step("build_F"):
        F = build_F(n)
    checks = []
    with timer.step("partition"):
        checks.append(Check("F_partition", n, is_partition(F) and volume_sum(F) == 2 ** n,
                            {"boxes": len(F), "volume": str(volume_sum(F))}))
    census = weight_census(F)
    rows = []
    for k in range(n // 2 + 1):
        closed = 2 if k == 0 else weight_count(n, k)
        rows.append((n, k, census.get(k, 0), closed, census.get(k, 0) == closed))
    checks.append(Check("census", n, all(r[-1] for r in rows),
                        {"M_k": {str(k): m for k, m in census.items()}}))
    lohi_expected = 2 * (2 ** n + 1) // 3
    full_expected = (2 ** n - 2) // 3
    with timer.step("subfamilies"):
        full = [volume_sum(subfamily(F, i, Factor.FULL)) for i in range(1, n + 1)]
        lo = [volume_sum(subfamily(F, i, Factor.LO)) for i in range(1, n + 1)]
        hi = [volume_sum(subfamily(F, i, Factor.HI)) for i in range(1, n + 1)]
    checks.append(Check("volumes_lohi_full", n,
                        all(a + b == lohi_expected for a, b in zip(lo, hi)) and all(f == full_expected for f in full),
                        {"lohi": str(lohi_expected), "full": str(full_expected)}))
    checks.append(Check("reflection", n, lo == hi, {}))
    checks.append(Check("shift_recurrence", n,
                        all(hi[(i + 1) % n] == full[i] + 1 for i in range(n)), {}))
    with timer.step("cylinders"):
        cyl = all(cylinder_check(subfamily(F, i, which), i)
                  for i in range(1, n + 1) for which in (LO_OR_HI, Factor.FULL))
    checks.append(Check("cylinders", n, cyl, {}))
    with timer.step("build_G"):
        G = build_G(n)
        g_full = [volume_sum(subfamily(G, i, Factor.FULL)) for i in range(1, n)]
        g_lo = volume_sum(subfamily(G, n, Factor.LO))
        g_hi = volume_sum(subfamily(G, n, Factor.HI))
    half = 2 ** (n - 1)
    checks.append(Check("G_volumes", n,
                        volume_sum(G) == half and g_lo == 2 * (half - 1) // 3 and g_hi == (half + 2) // 3
                        and all(v == (half + 2) // 3 for v in g_full),
                        {"boxes": len(G), "volume": str(volume_sum(G)), "lo": str(g_lo), "hi": str(g_hi)}))
    if n >= 5:
        with timer.step("bijection"):
            checks.append(Check("bijection", n, verify_bijection(n), {"R": len(build_R(n))}))
    return checks, Table(("n", "k", "M_k", "closed_form", "match"), rows)


def cmd_partition_stats(args, timer: _Timer) -> RunReport:
    checks, table = _partition_checks(args.n, timer)
    return RunReport("partition stats", {"n": args.n}, checks, table=table)


def _identity_reports(ids: Sequence[int], ns: Sequence[int], via: str) -> list:
    out = []
    for i in ids:
        for n in ns:
            if via == "closed":
                out.extend(verify_closed_form(i, n)[-1:])
            else:
                out.append(verify_via_tiling(i, n))
    return out


def cmd_identities_check(args, timer: _Timer) -> RunReport:
    ids = IDENTITY_IDS if args.id is None else (args.id,)
    if args.n is not None:
        ns = [args.n]
    elif args.n_max is not None:
        ns = list(range(1 if args.via == "closed" else 2, args.n_max + 1))
    else:
        raise UsageError("give -n or --n-max")
    if args.via == "tiling" and min(ns) < 2:
        raise UsageError("the tiling path needs n >= 2")
    with timer.step("identities"):
        if args.via == "closed" and args.n is None:
            reports = [r for i in ids for r in verify_closed_form(i, args.n_max)]
        else:
            reports = _identity_reports(ids, ns, args.via)
    table = Table(("id", "n", "lhs", "rhs", "path", "ok"),
                  [(r.identity_id, r.n, r.lhs, r.rhs, r.path, r.ok) for r in reports])
    params = {"id": args.id if args.id is not None else "all", "n": args.n, "n_max": args.n_max, "via": args.via}
    return RunReport("identities check", params, reports, table=table)


def _selector_checks(n: int, timer: _Timer) -> list:
    require_odd(n)
    with timer.step("selector"):
        family = boxes(n)
        checks = [
            Check("discrete_partition", n, verify_discrete_partition(n, family), {"boxes": len(family)}),
            Check("selector", n, verify_selector(n), {}),
        ]
        selectable = sum(not b.is_all_ones for b in family)
        vertices = len(lucas_vertex_masks(n))
        checks.append(Check("selector_counts", n, selectable == vertices == lucas_number(n),
                            {"boxes": selectable, "vertices": vertices, "lucas": lucas_number(n)}))
        checks.append(Check("star_structure", n, all(star_followed_by_one(b.source) for b in family), {}))
    if n <= SELECTOR_ORACLE_MAX_N:
        with timer.step("selector_quadratic"):
            checks.append(Check("selector_quadratic", n, verify_selector_quadratic(n), {}))
    return checks


def cmd_selector_verify(args, timer: _Timer) -> RunReport:
    return RunReport("selector verify", {"n": args.n}, _selector_checks(args.n, timer))


def cmd_report_all(args, timer: _Timer) -> RunReport:
    n = args.n
    require_odd(n)
    budget = args.voxel_budget
    voxel = 4 ** n <= budget
    verdicts: list = []
    with timer.step("code"):
        u = enumerate_U(n)
        verdicts.append(Check("code", n, len(u) + 1 == lucas_number(n),
                              {"set": "U", "size": len(u), "words": [word_str(w) for w in u.words]}))
    verdicts += _tiling_verdicts(n, "both" if voxel else "twin", budget, 0, 0, timer)
    verdicts += _partition_checks(n, timer)[0]
    with timer.step("identities"):
        for m in (n, n - 1):
            verdicts += _identity_reports(IDENTITY_IDS, [m], "closed")
            verdicts += _identity_reports(IDENTITY_IDS, [m], "tiling")
        verdicts.append(Check("termwise_decomposition", n, termwise_decomposition_check(n), {}))
    verdicts += _selector_checks(n, timer)
    params = {"n": n, "voxel_budget": budget, "voxel_oracle": "run" if voxel else "skipped: over budget"}
    return RunReport("report all", params, verdicts)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=FORMATS, default="json")
    p.add_argument("-o", "--output", metavar="FILE", help="write the report here instead of stdout")
    p.add_argument("--timings", action="store_true", help="include per-step durations (microseconds)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lucastile", description=_summary)
    parser.add_argument("--version", action="version", version=f"lucastile {__version__}")
    groups = parser.add_subparsers(dest="group", required=True)

    def action(group: str, name: str, func, help: str) -> argparse.ArgumentParser:
        if group not in subs:
            g = groups.add_parser(group)
            subs[group] = g.add_subparsers(dest="action", required=True)
        p = subs[group].add_parser(name, help=help)
        p.set_defaults(func=func)
        _add_common(p)
        return p

    subs: dict = {}
    p = action("code", "gen", cmd_code_gen, "list the words of a code set")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--set", choices=CODE_SETS, default="U")

    p = action("tiling", "verify", cmd_tiling_verify, "certify the Lagarias-Shor tiling code")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--oracle", choices=("twin", "voxel", "both"), default="both")
    p.add_argument("--voxel-budget", type=int, default=default_voxel_budget())
    p.add_argument("--mutants", type=int, default=0, help="also compare both checks on this many broken codes")
    p.add_argument("--seed", type=int, default=0)

    p = action("partition", "stats", cmd_partition_stats, "box partition census and volume relations")
    p.add_argument("-n", type=int, required=True)

    p = action("identities", "check", cmd_identities_check, "evaluate the binomial identities")
    p.add_argument("--id", type=int, choices=IDENTITY_IDS)
    p.add_argument("-n", type=int)
    p.add_argument("--n-max", type=int)
    p.add_argument("--via", choices=("closed", "tiling"), default="closed")

    p = action("selector", "verify", cmd_selector_verify, "check the Lucas-cube selector property")
    p.add_argument("-n", type=int, required=True)

    p = action("report", "all", cmd_report_all, "run every check for one n")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--voxel-budget", type=int, default=default_voxel_budget())
    return parser


def run(argv: Optional[Sequence[str]] = None) -> tuple[int, Optional[RunReport]]:
    parser = build_parser()
    args = parser.parse_args(argv)
    timer = _Timer()
    try:
        report = args.func(args, timer)
    except UsageError as exc:
        print(f"lucastile: error: {exc}", file=sys.stderr)
        return 2, None
    if args.timings:
        report.timings = dict(sorted(timer.steps.items()))
    data = serialize(report, args.format)
    if args.output:
        with open(args.output, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    return (0 if report.ok else 1), report


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        code, _ = run(argv)
    except SystemExit as exc:  # argparse usage errors
        return int(exc.code or 0)
    return code


if __name__ == "__main__":
    sys.exit(main())
