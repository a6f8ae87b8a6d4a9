"""Weyl group action on spectral types.

The simple reflection at a leg node swaps two adjacent multiplicities; the
reflection at the central node is folded together with a choice of one part
per leg into the reduction operator.  Repeating the greedy reduction (largest
part on every leg) walks any realizable tuple down to a fundamental tuple or to
the trivial tuple, and reversing the walk constructs it.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .tuples import SpectralTuple, canonical, idx, is_divisible


class NotRealizable(ValueError):
    """The tuple corresponds to no realizable positive root."""

    def __init__(self, m=None, reason: str = "not realizable"):
        super().__init__(reason)
        self.tuple = m


class StepNotApplicable(ValueError):
    pass


def _padded(m: SpectralTuple, positions: Sequence[int]) -> list:
    """Legs as lists, extended by trivial legs and trailing zeros so that every
    1-based position in ``positions`` exists."""
    n = m.order
    legs = [list(leg) for leg in m.legs]
    while len(legs) < len(positions):
        legs.append([n])
    for j, nu in enumerate(positions):
        if nu < 1:
            raise StepNotApplicable(f"position {nu} on leg {j} is not 1-based")
        if nu > len(legs[j]):
            legs[j].extend([0] * (nu - len(legs[j])))
    return legs


def reflect_leg(m: SpectralTuple, j: int, nu: int) -> SpectralTuple:
    """Simple reflection at node (j, nu): swap parts nu and nu+1 of leg j.

    A missing leg is a trivial one ``[n]`` and missing parts are zero, so the
    result may carry zero parts.
    """
    if j < 0 or nu < 1:
        raise IndexError(f"no node ({j}, {nu})")
    positions = [1] * j + [nu + 1]
    legs = _padded(m, positions)
    leg = legs[j]
    leg[nu - 1], leg[nu] = leg[nu], leg[nu - 1]
    return SpectralTuple(tuple(tuple(x) for x in legs))


def order_change(m: SpectralTuple, positions: Sequence[int]) -> int:
    """sum_j (n - m_{j,nu_j}) - 2n for 1-based positions, extending as needed."""
    n = m.order
    legs = _padded(m, positions)
    pos = list(positions) + [1] * (len(legs) - len(positions))
    return sum(n - legs[j][pos[j] - 1] for j in range(len(legs))) - 2 * n


def tbar(m: SpectralTuple, positions: Sequence[int]) -> SpectralTuple:
    """Raw central reflection at the chosen parts, no sorting and no stripping.

    The chosen part of every leg grows by the order change; legs without a
    position use part 1.  Involutive when applied twice with the same positions.
    """
    legs = _padded(m, positions)
    pos = list(positions) + [1] * (len(legs) - len(positions))
    delta = order_change(m, positions)
    for j, leg in enumerate(legs):
        leg[pos[j] - 1] += delta
        if leg[pos[j] - 1] < 0:
            raise StepNotApplicable(f"part {pos[j]} of leg {j} becomes negative")
    return SpectralTuple(tuple(tuple(x) for x in legs))


def reduce_step(m: SpectralTuple, positions: Sequence[int]) -> SpectralTuple:
    """Reduction operator: :func:`tbar`, then sort legs and drop zero parts."""
    return tbar(m, positions).strip()


@dataclass(frozen=True)
class ReductionStep:
    positions: tuple  # 1-based, one per leg
    delta: int


def greedy_positions(m: SpectralTuple) -> tuple:
    """0-based index of the first largest part of every leg."""
    return tuple(leg.index(max(leg)) for leg in m.legs)


def greedy_step(m: SpectralTuple) -> ReductionStep:
    pos = tuple(i + 1 for i in greedy_positions(m))
    return ReductionStep(pos, order_change(m, pos))


def reduce_to_fundamental(m: SpectralTuple):
    """Iterate greedy reductions.

    Returns ``(chain, real)`` where ``chain`` lists the monotone tuples from
    ``m`` (sorted) down to the fundamental or trivial tuple, and ``real`` tells
    whether the trivial tuple was reached.  Raises NotRealizable when a part
    would become negative.  The number of legs never changes.
    """
    chain = _reduction_chain(m)
    return chain[-1], _is_trivial(chain[-1])


def _is_trivial(m: SpectralTuple) -> bool:
    return m.order == 1


def _reduction_chain(m: SpectralTuple) -> list:
    cur = m.strip()
    chain = [cur]
    while cur.order > 1:
        n = cur.order
        d = 2 * n - sum(n - leg[0] for leg in cur.legs)
        if d <= 0:
            break
        legs = []
        for leg in cur.legs:
            top = leg[0] - d
            if top < 0:
                raise NotRealizable(m)
            legs.append((top,) + leg[1:])
        cur = SpectralTuple(tuple(legs)).strip()
        chain.append(cur)
    return chain


@dataclass(frozen=True)
class Analysis:
    pts: int
    order: int
    index: int
    fuchs: int
    rod: int
    redsp: tuple  # 0-based positions in the input's own leg order
    fundamental: SpectralTuple

    def as_list(self) -> list:
        return [self.pts, self.order, self.index, self.fuchs, self.rod,
                list(self.redsp), self.fundamental.to_list()]


def check_realizable(m: SpectralTuple, fund: SpectralTuple, real: bool) -> None:
    # divisible isotropic roots are roots but carry no irreducible system
    if not real and idx(fund) == 0 and is_divisible(fund):
        raise NotRealizable(m, "divisible root with index 0")


def analyze(m: SpectralTuple) -> Analysis:
    """Number of legs, order, index, reduction data and fundamental tuple.

    Raises :class:`NotRealizable` when ``m`` is not a realizable root and
    :class:`IllegalPartitions` (at construction of ``m``) for unequal sums.
    """
    fund, real = reduce_to_fundamental(m)
    check_realizable(m, fund, real)
    n = m.order
    redsp = greedy_positions(m)
    d = 2 * n - sum(n - max(leg) for leg in m.legs)
    rod = d if d > 0 and n > 1 else 0
    return Analysis(m.p, n, idx(m), 0, rod, redsp, fund)


def fundamental_of(m: SpectralTuple) -> SpectralTuple:
    fund, real = reduce_to_fundamental(m)
    check_realizable(m, fund, real)
    return fund


def construct(m: SpectralTuple) -> list:
    """Chain of monotone tuples from the fundamental (or trivial) tuple up to m,
    orders strictly increasing."""
    chain = _reduction_chain(m)
    check_realizable(m, chain[-1], _is_trivial(chain[-1]))
    return chain[::-1]


@dataclass
class RootTrace:
    base: SpectralTuple
    given: SpectralTuple
    reflections: list = field(default_factory=list)  # [increment, leg, node]; (0, 0) is a0

    def as_list(self) -> list:
        return [self.base.to_list(), self.given.to_list(), [list(r) for r in self.reflections]]


def root_construction(m: SpectralTuple) -> RootTrace:
    """Express m as simple reflections applied to its fundamental root.

    Reflections are listed in the order they are applied starting from the
    base; each record is ``[c, j, nu]`` where ``c`` is the increase of the
    coefficient at node (j, nu), and ``[c, 0, 0]`` stands for the central node.
    """
    n = m.order
    legs = [list(leg) for leg in m.legs]
    done: list = []
    while True:
        for j, leg in enumerate(legs):
            while True:
                nu = next((i for i in range(len(leg) - 1) if leg[i] < leg[i + 1]), None)
                if nu is None:
                    break
                done.append((leg[nu + 1] - leg[nu], j, nu + 1))
                leg[nu], leg[nu + 1] = leg[nu + 1], leg[nu]
        if n == 1:
            break
        d = 2 * n - sum(n - leg[0] for leg in legs)
        if d <= 0:
            break
        for leg in legs:
            leg[0] -= d
            if leg[0] < 0:
                raise NotRealizable(m)
        n -= d
        done.append((d, 0, 0))
    base = SpectralTuple(tuple(tuple(x for x in leg if x) for leg in legs))
    check_realizable(m, base, n == 1)
    return RootTrace(base, m, done[::-1])


# ------------------------------------------------------------ orbits

def _children(m: SpectralTuple, max_ord: int):
    """Tuples reached from the canonical tuple ``m`` by one order-increasing
    reduction operator, padded with any number of new trivial legs."""
    n = m.order
    choices = [sorted(set(leg) | {0}) for leg in m.legs]
    if m.p == 1 and m.legs[0] == (n,):
        choices = [[n, 0]]
    results = []

    def rec(j: int, acc: list, contrib: int):
        if j == len(choices):
            e = 0
            while True:
                delta = contrib + e * n - 2 * n
                if n + delta > max_ord:
                    break
                if delta > 0:
                    legs = []
                    for leg, v in zip(m.legs, acc):
                        if v == 0:
                            legs.append(leg + (delta,))
                        else:
                            k = leg.index(v)
                            legs.append(leg[:k] + (v + delta,) + leg[k + 1:])
                    legs.extend([(n, delta)] * e)
                    results.append(canonical(SpectralTuple(tuple(legs))))
                e += 1
            return
        for v in choices[j]:
            acc.append(v)
            rec(j + 1, acc, contrib + n - v)
            acc.pop()

    rec(0, [], 0)
    return results


def _arrange(m: SpectralTuple, std: Optional[int]) -> SpectralTuple:
    if std == 1:
        # shorter partitions first, then lexicographic
        return SpectralTuple(tuple(sorted(m.legs, key=lambda leg: (len(leg), leg))))
    return m


def orbit_up(seed: SpectralTuple, max_ord: int) -> list:
    """Canonical tuples of order <= max_ord reachable from ``seed`` by
    order-increasing reduction operators, seed included."""
    start = canonical(seed)
    if start.order > max_ord:
        return []
    seen = {start.legs: start}
    heap = [(start.order, start.legs)]
    while heap:
        _, key = heapq.heappop(heap)
        for child in _children(seen[key], max_ord):
            if child.legs not in seen:
                seen[child.legs] = child
                heapq.heappush(heap, (child.order, child.legs))
    return list(seen.values())


def _leg_count(m: SpectralTuple) -> int:
    n = m.order
    return sum(1 for leg in m.legs if leg != (n,))


def _select(tuples: Iterable[SpectralTuple], max_ord: int, eq: bool, parts) -> list:
    lo, hi = _parts_range(parts)
    out = []
    for m in tuples:
        if eq and m.order != max_ord:
            continue
        k = _leg_count(m)
        if lo is not None and k < lo:
            continue
        if hi is not None and k > hi:
            continue
        out.append(m)
    return out


def _parts_range(parts):
    if parts is None:
        return None, None
    if isinstance(parts, int):
        return parts, parts
    lo, hi = parts
    return lo, hi


def _sorted_output(tuples: list, std: Optional[int]) -> list:
    arranged = [_arrange(m, std) for m in tuples]
    if std == 1:
        arranged.sort(key=lambda m: (m.order, tuple((len(leg), leg) for leg in m.legs)))
    else:
        arranged.sort(key=lambda m: (m.order, m.legs))
    return arranged


def rigid_tuples(max_ord: int, eq: bool = False, parts=None, std: Optional[int] = 1) -> list:
    """Monotone rigid tuples (real roots with a0 in the support) of order <= max_ord."""
    if max_ord < 1:
        return []
    found = orbit_up(SpectralTuple(((1,),)), max_ord)
    return _sorted_output(_select(found, max_ord, eq, parts), std)


def orbit_tuples(seed: SpectralTuple, max_ord: int, eq: bool = False, parts=None,
                 std: Optional[int] = 1, basic: bool = False) -> list:
    """Monotone members of the Weyl orbit of ``seed`` with order <= max_ord,
    obtained upward from ``seed`` (or from its fundamental tuple if ``basic``)."""
    start = fundamental_of(seed) if basic else seed
    found = orbit_up(start, max_ord)
    return _sorted_output(_select(found, max_ord, eq, parts), std)


def orbit_generate(target: int, eq: bool = False, parts=None, std: Optional[int] = 1,
                   seed: Optional[SpectralTuple] = None, basic: bool = False, workers: int = 1) -> list:
    """Dispatch on the target: a positive ``target`` with no seed lists rigid
    tuples, a seed lists its orbit, and ``target <= 0`` lists the fundamental
    tuples of that index."""
    if seed is not None:
        return orbit_tuples(seed, target, eq, parts, std, basic)
    if target > 0:
        return rigid_tuples(target, eq, parts, std)
    from .fundamental import classify

    return classify(target, 0, parts, workers=workers)
