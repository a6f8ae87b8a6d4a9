"""Enumeration of ordered fundamental tuples with a given index of rigidity.

The search walks candidate tuples ``V[0] >= V[1] >= ...`` in descending
lexicographic order and skips whole regions that cannot contain a solution.
Each pruning stage can be switched off by name to check that it is sound and
to measure what it buys.
"""
from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb
from typing import Iterable, Optional, Sequence

from .partitions import min_codim, next_partition, next_with_codim_gain, partitions, top_partition
from .tuples import SpectralTuple, fuchs_excess, idx, is_divisible

STAGES = ("1.5", "2.1", "2.3.1", "2.3.1*", "2.6.1")
WORKERS_ENV = "KACSTAR_WORKERS"


class BudgetExceeded(ValueError):
    pass


@dataclass(frozen=True)
class SearchBounds:
    idx_target: int
    order: int
    parts_cap: int  # L
    max_first_part: int  # T
    parts_min: int = 0
    parts_max: Optional[int] = None


@lru_cache(maxsize=None)
def _leg_ss(p: tuple) -> int:
    top = p[0]
    return sum((top - x) * x for x in p[1:])


@lru_cache(maxsize=None)
def _leg_sq(p: tuple) -> int:
    return sum(x * x for x in p)


def _parts_range(parts) -> tuple:
    if parts is None:
        return 0, None
    if isinstance(parts, int):
        return parts, parts
    lo, hi = parts
    return (lo or 0), hi


def max_first_part(D: int, I: int) -> int:
    """Largest T < D with (T - k) k <= I for k = D mod T, else 1."""
    for T in range(D - 1, 1, -1):
        K = D % T
        if (T - K) * K <= I:
            return T
    return 1


def search_bounds(idx_target: int, D: int, parts=None, disabled: Iterable[str] = ()) -> SearchBounds:
    I = -idx_target
    lo, hi = _parts_range(parts)
    L = 3 if D > I + 2 else I // 2 + 4
    if hi is not None:
        L = min(L, hi)
    T = D - 1 if "1.5" in disabled else max_first_part(D, I)
    return SearchBounds(idx_target, D, L, T, lo, hi)


def _closed_form_zero(D: int, lo: int, hi: Optional[int]) -> list:
    out = []
    if D == 2 and lo < 5 and (hi is None or hi > 3):
        out.append(((1, 1),) * 4)
    if lo < 4 and (hi is None or hi > 2):
        extra = {3: ((1, 1, 1),) * 3,
                 4: ((2, 2), (1, 1, 1, 1), (1, 1, 1, 1)),
                 6: ((3, 3), (2, 2, 2), (1,) * 6)}
        if D in extra:
            out.append(extra[D])
    return out


def _search(D: int, I: int, L: int, T: int, lo: int, disabled: frozenset,
            first: Optional[int] = None) -> tuple:
    """Main loop for a fixed order.

    Returns the hits in enumeration order and the number of candidate
    states visited.

    With ``first`` set, only the subtree whose leading part of leg 0 equals
    ``first`` is explored.
    """
    NP = [None] + [top_partition(D, i) for i in range(1, T + 1)]
    S1 = NP[1]
    start = NP[first] if first is not None else NP[T]
    V = [start] * L
    FS = "2.1" not in disabled and (D > I + 2 or (L == 3 and D > I))
    use_cod = "2.3.1" not in disabled
    if "2.3.1*" in disabled:
        def roll(p, d):
            return next_partition(p)
    else:
        roll = next_with_codim_gain
    use_261 = "2.6.1" not in disabled
    DD = D * D
    hits = []
    steps = 0
    while True:
        steps += 1
        if first is not None and V[0][0] < first:
            break
        if FS:
            a = V[0][0]
            if 3 * a < D:
                break
            if a + V[1][0] >= D:
                t = D - a - 1
                if t > 0:
                    V[1] = V[2] = NP[t]
                else:
                    nxt = next_partition(V[0])
                    if nxt is None:
                        break
                    V[0] = V[1] = V[2] = nxt
                    continue
            b = V[1][0]
            c = V[2][0]
            S = D - a - b - c
            if a + 2 * b < D or (b == 1 and S):
                if a == 1:
                    break
                V[0] = V[1] = V[2] = next_partition(V[0])
                continue
            if S > 0 or c + S < 1:
                V[1] = V[2] = next_partition(V[1])
                continue
            if S < 0:
                V[2] = NP[c + S]

        # 2.2
        S = -2 * D
        IL = 0
        while IL < L:
            S += D - V[IL][0]
            if S >= 0:
                break
            IL += 1
        if S < 0:
            LL = L - 1
            while LL >= 0:
                K = V[LL][0]
                if K + S > 0:
                    V[LL] = NP[K + S]
                    break
                S += K - 1
                V[LL] = S1
                LL -= 1
            if LL < 0:
                break
            for i in range(LL + 1, L):
                V[i] = V[LL]
            continue

        # 2.3
        if use_cod:
            SS = 0
            SS0 = 0
            K = 0
            while K <= IL:
                SS0 = SS
                SS += _leg_ss(V[K])
                if SS > I:
                    break
                K += 1
            if SS > I and V[K][0] != 1:
                W = roll(V[K], SS - I)
                if W is None:
                    t = V[K][0] - 1
                    while t > 0:
                        j = D % t
                        if SS0 + j * (t - j) <= I:
                            break
                        t -= 1
                    W = NP[t]
                for i in range(K, L):
                    V[i] = W
                continue

        # 2.4
        Ix = 2 * DD + I
        IxF = Ix
        J = 0
        while J < L:
            IxF = Ix
            Ix -= DD - _leg_sq(V[J])
            if Ix <= 0:
                break
            J += 1

        # 2.5
        if Ix == 0 and J >= IL and J + 1 >= lo:
            hits.append(tuple(V[:J + 1]))

        # 2.6
        if use_261 and Ix < 0 and IxF - min_codim(D, V[J][0]) < 0:
            J -= 1
        elif J >= L:
            J = L - 1
        i = J
        while i >= 0 and V[i][0] == 1:
            i -= 1
        if i < 0:
            break
        V[i] = next_partition(V[i])
        for k in range(i + 1, L):
            V[k] = V[i]
    return hits, steps


def _run_job(job) -> tuple:
    D, I, L, T, lo, disabled, first = job
    return _search(D, I, L, T, lo, disabled, first)


def _jobs(idx_target: int, order: int, parts, disabled: frozenset, split: bool) -> tuple:
    """Search jobs plus closed-form results, both per order."""
    I = -idx_target
    lo, hi = _parts_range(parts)
    if I % 2 or I < 0 or order < 0 or order == 1 or order > 3 * I + 6:
        return [], []
    if hi is not None and hi < 3:
        return [], []
    orders = range(2, 3 * I + 7) if order == 0 else [order]
    jobs, fixed = [], []
    for D in orders:
        if I == 0:
            fixed.extend(_closed_form_zero(D, lo, hi))
            continue
        b = search_bounds(idx_target, D, parts, disabled)
        if D > I + 2 and D == 3 * I + 6:
            e8 = ((D // 2,) * 2, (D // 3,) * 3, (D // 6,) * 5 + (D // 6 - 1, 1))
            if lo <= 3 and (hi is None or hi >= 3):
                fixed.append(e8)
            continue
        if b.parts_cap < 3:
            continue
        if split:
            for t in range(b.max_first_part, 0, -1):
                jobs.append((D, I, b.parts_cap, b.max_first_part, lo, disabled, t))
        else:
            jobs.append((D, I, b.parts_cap, b.max_first_part, lo, disabled, None))
    return jobs, fixed


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def _sort_key(legs) -> tuple:
    return (sum(legs[0]), legs)


def classify(idx_target: int, order: int = 0, parts=None, workers: Optional[int] = None,
             disabled: Iterable[str] = (), descending: bool = False) -> list:
    """Ordered fundamental tuples of index ``idx_target``.

    ``order`` 0 means every order.  ``parts`` is an int or a ``(lo, hi)``
    range on the number of partitions; ``hi`` below 3 admits nothing.  The
    result is sorted by order, then lexicographically, ascending unless
    ``descending``.  Odd or positive indices and impossible orders give ``[]``.
    """
    return search(idx_target, order, parts, workers, disabled, descending)[0]


def search(idx_target: int, order: int = 0, parts=None, workers: Optional[int] = None,
           disabled: Iterable[str] = (), descending: bool = False) -> tuple:
    """Like :func:`classify` but also returns the number of visited states."""
    disabled = frozenset(disabled)
    unknown = disabled - set(STAGES)
    if unknown:
        raise ValueError(f"unknown stage {sorted(unknown)[0]!r}")
    workers = default_workers() if workers is None else max(1, workers)
    jobs, found = _jobs(idx_target, order, parts, disabled, split=workers > 1)
    found = list(found)
    steps = 0
    if workers > 1 and len(jobs) > 1:
        # big subtrees first so the pool drains evenly
        jobs.sort(key=lambda j: (-j[0], -(j[6] or 0)))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_job, jobs, chunksize=1))
    else:
        results = [_run_job(job) for job in jobs]
    for hits, n in results:
        found.extend(hits)
        steps += n
    found = sorted(set(found), key=_sort_key, reverse=descending)
    return [SpectralTuple(legs) for legs in found], steps


# ------------------------------------------------------------ oracle

def _oracle_estimate(order: int, parts_max: int) -> int:
    total = 0
    for n in range(2, order + 1):
        k = sum(1 for _ in partitions(n)) - 1
        for p in range(3, parts_max + 1):
            total += comb(k + p - 1, p)
    return total


def oracle_classify(idx_target: int, ord_max: int, parts_max: int, budget: int = 5_000_000) -> list:
    """Exhaustive search over ordered monotone tuples, no pruning at all.

    Considers every multiset of non-trivial partitions with at most
    ``parts_max`` legs and order at most ``ord_max``.  Raises BudgetExceeded
    when more than ``budget`` candidates would be examined.
    """
    est = _oracle_estimate(ord_max, parts_max)
    if est > budget:
        raise BudgetExceeded(f"{est} candidates exceed the budget of {budget}")
    out = []
    for n in range(2, ord_max + 1):
        legs = [q for q in partitions(n) if len(q) > 1]
        for p in range(1, parts_max + 1):
            for combo in combinations_with_replacement(legs, p):
                cand = tuple(sorted(combo, reverse=True))
                if fuchs_excess(cand) < 0 or idx(cand) != idx_target:
                    continue
                if idx_target == 0 and is_divisible(SpectralTuple(cand)):
                    continue
                out.append(cand)
    out.sort(key=_sort_key)
    return [SpectralTuple(legs) for legs in out]


# ------------------------------------------------------------ benchmark

@dataclass(frozen=True)
class BenchResult:
    idx_target: int
    disabled: Optional[str]
    count: int
    elapsed: float
    steps: int = 0
    tuples: tuple = ()


def benchmark_ablation(idx_target: int, disabled_stage: Optional[str] = None,
                       workers: Optional[int] = None) -> BenchResult:
    """Time ``classify(idx_target)`` with one pruning stage switched off."""
    stages = () if disabled_stage in (None, "none") else (disabled_stage,)
    t0 = time.perf_counter()
    res, steps = search(idx_target, 0, workers=workers, disabled=stages)
    elapsed = time.perf_counter() - t0
    return BenchResult(idx_target, stages[0] if stages else None, len(res), elapsed, steps, tuple(res))


def family_tuples(m: int) -> dict:
    """The four extremal families of index 2 - 2m."""
    legs = {
        "D4": ((m, m),) * 3 + ((m, m - 1, 1),),
        "E6": ((m, m, m),) * 2 + ((m, m, m - 1, 1),),
        "E7": ((2 * m,) * 2, (m,) * 4, (m,) * 3 + (m - 1, 1)),
        "E8": ((3 * m,) * 2, (2 * m,) * 3, (m,) * 5 + (m - 1, 1)),
    }
    return {k: SpectralTuple(v).strip() for k, v in legs.items()}
