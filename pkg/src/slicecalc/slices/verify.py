"""
Exhaustive invariant sweeps behind `slicecalc verify`.

Each suite is split into independent chunks that run on a thread pool; the
report is assembled in chunk order, so output does not depend on scheduling.
"""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field, replace
from typing import Callable, Dict, List, Optional, Tuple

from tqdm import tqdm

from ..config import Settings
from ..errors import InvalidSpecError
from ..reps.group import CyclicGroup, capped_valuation, require_odd_prime
from ..reps.virtual import dim_fixed, lam, regular_rep, v_j
from .classes import cp_pattern, equivalence_classes, vj_ceiling_identity, vj_condition
from .connectivity import (
    induced_sphere_in_tau,
    is_auto_equivalence,
    rho_shift_verdict,
    smash_verdict,
)

logger = logging.getLogger(__name__)


@dataclass
class ChunkResult:
    checked: int = 0
    failures: List[str] = field(default_factory=list)

    def check(self, ok: bool, message: str) -> None:
        self.checked += 1
        if not ok:
            self.failures.append(message)


@dataclass(frozen=True)
class SuiteReport:
    name: str
    checked: int
    failures: Tuple[str, ...]
    summary: str

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "suite": self.name,
            "checked": self.checked,
            "passed": self.passed,
            "failures": list(self.failures),
            "summary": self.summary,
        }


Chunk = Callable[[], ChunkResult]


def _run_chunks(name: str, chunks: List[Chunk], workers: int, progress: bool) -> ChunkResult:
    results: Dict[int, ChunkResult] = {}
    with ThreadPoolExecutor(max_workers=workers) as ex:
        futures = {ex.submit(fn): i for i, fn in enumerate(chunks)}
        for fut in tqdm(as_completed(futures), total=len(futures), desc=name, disable=not progress):
            results[futures[fut]] = fut.result()

    total = ChunkResult()
    for i in range(len(chunks)):
        total.checked += results[i].checked
        total.failures.extend(results[i].failures)
    return total


def _require_k(k: int) -> None:
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        raise InvalidSpecError(f"k must be a positive integer, got {k!r}")


# -----------------------------
# Suites
# -----------------------------

def _vj_equivalences(p: int, k: int, settings: Settings) -> Tuple[List[Chunk], Callable[[ChunkResult], str]]:
    horizon = settings.horizon_periods * p ** k

    def chunk(j: int) -> Chunk:
        def run() -> ChunkResult:
            out = ChunkResult()
            rep = v_j(p, k, j)
            for n in range(horizon):
                if not vj_condition(p, k, j, n):
                    continue
                verdict = smash_verdict(rep, n, 2 * p ** j)
                ok = verdict.is_equivalence and vj_ceiling_identity(p, k, j, n)
                out.check(ok, f"j={j} n={n}: {verdict.kind.value}")
            return out
        return run

    def summary(r: ChunkResult) -> str:
        tail = "all Equivalence" if not r.failures else f"{len(r.failures)} not Equivalence"
        return f"checked {r.checked} (j,n) cases: {tail}"

    return [chunk(j) for j in range(k)], summary


def _class_count(p: int, k: int, settings: Settings) -> Tuple[List[Chunk], Callable[[ChunkResult], str]]:
    modulus = p ** k
    counts: Dict[str, int] = {}

    def run() -> ChunkResult:
        out = ChunkResult()
        partition = equivalence_classes(p, k, settings.horizon_periods * modulus)
        counts["blocks"] = len(partition.blocks)
        out.check(len(partition.blocks) == partition.expected_count, f"{len(partition.blocks)} blocks")
        out.check(
            len(set(partition.rep_blocks)) == len(partition.rep_blocks),
            f"representatives share blocks: {list(zip(partition.representatives, partition.rep_blocks))}",
        )
        for periods in range(2, settings.horizon_periods + 1):
            other = equivalence_classes(p, k, periods * modulus)
            out.check(other.blocks == partition.blocks, f"partition changes at horizon {periods * modulus}")
        return out

    def summary(r: ChunkResult) -> str:
        rel = "=" if not r.failures else "!="
        return f"{counts.get('blocks', 0)} classes {rel} 2^{k}"

    return [run], summary


def _lambda_pattern(p: int, k: int, settings: Settings) -> Tuple[List[Chunk], Callable[[ChunkResult], str]]:
    def run() -> ChunkResult:
        out = ChunkResult()
        for row in cp_pattern(p):
            n = row.n
            expected = (n % 2 == 1 and n <= p - 2) or (n % 2 == 0 and 2 <= n <= p - 3)
            out.check(row.verdict.is_equivalence == expected, f"n={n}: {row.verdict.kind.value}")
        return out

    def summary(r: ChunkResult) -> str:
        return f"lambda pattern for C_{p}: {r.checked - len(r.failures)}/{r.checked} rows as expected"

    return [run], summary


def _induced_bound(p: int, k: int, settings: Settings) -> Tuple[List[Chunk], Callable[[ChunkResult], str]]:
    def chunk(m: int) -> Chunk:
        def run() -> ChunkResult:
            out = ChunkResult()
            group = CyclicGroup(m)
            for sub in group.subgroups():
                for mult in range(settings.induced_max_multiple + 1):
                    for n in range(mult * sub.order + 1):
                        res = induced_sphere_in_tau(group, sub, mult, n)
                        out.check(res.member, f"m={m} H={sub.label} k={mult} n={n}: witness C{res.witness_divisor}")
            return out
        return run

    def summary(r: ChunkResult) -> str:
        return f"checked {r.checked} (m,H,k,n) cases: {'bound holds' if not r.failures else 'bound fails'}"

    return [chunk(m) for m in range(1, settings.induced_max_order + 1)], summary


def _rho_periodicity(p: int, k: int, settings: Settings) -> Tuple[List[Chunk], Callable[[ChunkResult], str]]:
    bound = settings.rho_max_abs_n

    def chunk(m: int) -> Chunk:
        def run() -> ChunkResult:
            out = ChunkResult()
            group = CyclicGroup(m)
            inverse = -regular_rep(group)
            for n in range(-bound, bound + 1):
                forward = rho_shift_verdict(group, n)
                back = smash_verdict(inverse, n + m, -m)
                out.check(forward.is_equivalence and back.is_equivalence, f"m={m} n={n}")
            return out
        return run

    def summary(r: ChunkResult) -> str:
        tail = "all Equivalence" if not r.failures else f"{len(r.failures)} not Equivalence"
        return f"checked {r.checked} (m,n) rho-shifts: {tail}"

    return [chunk(m) for m in range(1, settings.rho_max_order + 1)], summary


def _valuation_criterion(p: int, k: int, settings: Settings) -> Tuple[List[Chunk], Callable[[ChunkResult], str]]:
    def chunk(e: int) -> Chunk:
        def run() -> ChunkResult:
            out = ChunkResult()
            m = p ** e
            group = CyclicGroup(m)
            for a in range(1, m):
                for b in range(1, m):
                    auto = is_auto_equivalence(lam(group, a) - lam(group, b))
                    expected = capped_valuation(a, p, e) == capped_valuation(b, p, e)
                    out.check(auto == expected, f"C{m} lambda({a})-lambda({b})")
            return out
        return run

    def summary(r: ChunkResult) -> str:
        return f"checked {r.checked} (a,b) pairs against capped valuations"

    return [chunk(e) for e in range(1, k + 1)], summary


def _vj_dimensions(p: int, k: int, settings: Settings) -> Tuple[List[Chunk], Callable[[ChunkResult], str]]:
    def run() -> ChunkResult:
        out = ChunkResult()
        for j in range(k):
            rep = v_j(p, k, j)
            out.check(rep.dimension == 2 * p ** j, f"dim V_{j} = {rep.dimension}")
            for d in range(k + 1):
                expected = 2 * p ** (j - d) if d <= j else 0
                got = dim_fixed(rep, p ** d)
                out.check(got == expected, f"V_{j} at C{p ** d}: {got} != {expected}")
        return out

    def summary(r: ChunkResult) -> str:
        return f"checked {r.checked} V_j dimensions for C_{p}^{k}"

    return [run], summary


SuiteBuilder = Callable[[int, int, Settings], Tuple[List[Chunk], Callable[[ChunkResult], str]]]

SUITES: Dict[str, SuiteBuilder] = {
    "thm43": _vj_equivalences,
    "cor44": _class_count,
    "thm45": _lambda_pattern,
    "prop210": _induced_bound,
    "rho": _rho_periodicity,
    "prop41": _valuation_criterion,
    "vjdims": _vj_dimensions,
}

ALIASES: Dict[str, str] = {
    "vj-equivalences": "thm43",
    "class-count": "cor44",
    "lambda-pattern": "thm45",
    "induced-bound": "prop210",
    "rho-periodicity": "rho",
    "valuation-criterion": "prop41",
    "vj-dimensions": "vjdims",
}


# Setting that --range overrides for each suite; the rest have fixed bounds.
RANGE_SETTINGS: Dict[str, str] = {
    "thm43": "horizon_periods",
    "cor44": "horizon_periods",
    "prop210": "induced_max_order",
    "rho": "rho_max_abs_n",
}


def with_range(key: str, settings: Settings, bound: Optional[int]) -> Settings:
    if bound is None:
        return settings
    name = RANGE_SETTINGS.get(key)
    if name is None:
        logger.debug("%s has no adjustable range, ignoring %s", key, bound)
        return settings
    return replace(settings, **{name: bound})


def suite_names(name: str) -> List[str]:
    key = name.strip().lower()
    if key == "all":
        return list(SUITES)
    key = ALIASES.get(key, key)
    if key not in SUITES:
        known = ", ".join([*SUITES, *ALIASES, "all"])
        raise InvalidSpecError(f"unknown suite {name!r}; expected one of {known}")
    return [key]


def run_suite(
    name: str,
    p: int,
    k: int,
    settings: Optional[Settings] = None,
    progress: bool = False,
    bound: Optional[int] = None,
) -> SuiteReport:
    require_odd_prime(p)
    _require_k(k)
    key = suite_names(name)[0]
    settings = with_range(key, settings or Settings(), bound)
    chunks, summarize = SUITES[key](p, k, settings)
    result = _run_chunks(key, chunks, settings.verify_workers, progress)
    report = SuiteReport(key, result.checked, tuple(result.failures), summarize(result))
    logger.info("%s: %s", key, report.summary)
    return report


def run_suites(
    name: str,
    p: int,
    k: int,
    settings: Optional[Settings] = None,
    progress: bool = False,
    bound: Optional[int] = None,
) -> List[SuiteReport]:
    require_odd_prime(p)
    _require_k(k)
    return [run_suite(s, p, k, settings, progress, bound) for s in suite_names(name)]
