"""Integer partitions as non-increasing tuples of positive integers.

Partitions are plain tuples throughout the package; the helpers here never
mutate their inputs.  Order is descending lexicographic, so ``(5,)`` is the
first partition of 5 and ``(1, 1, 1, 1, 1)`` the last.
"""
from __future__ import annotations

from typing import Iterator, Optional, Sequence

Partition = tuple  # tuple[int, ...], non-increasing, positive parts


def make_partition(parts: Sequence[int]) -> Partition:
    """Validate ``parts`` and return them as a canonical tuple.

    Raises ValueError on an empty sequence, a non-positive part or an
    increase between consecutive parts.
    """
    p = tuple(int(x) for x in parts)
    if not p:
        raise ValueError("a partition needs at least one part")
    if p[-1] < 1:
        raise ValueError(f"non-positive part in {list(p)}")
    for a, b in zip(p, p[1:]):
        if a < b:
            raise ValueError(f"parts not non-increasing in {list(p)}")
    return p


def is_partition(parts: Sequence[int]) -> bool:
    try:
        make_partition(parts)
    except ValueError:
        return False
    return True


def top_partition(n: int, max_part: Optional[int] = None) -> Partition:
    """Greatest partition of ``n`` (descending lex) with all parts <= max_part.

    This is ``(k, ..., k, r)`` with ``0 < r <= k``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    k = n if max_part is None or max_part >= n else max_part
    if k < 1:
        raise ValueError("max_part must be positive")
    q, r = divmod(n, k)
    return (k,) * q + ((r,) if r else ())


def next_partition(p: Partition) -> Optional[Partition]:
    """Successor of ``p`` in descending lexicographic order, or None after 1^n."""
    if p[0] <= 1:
        return None
    # strip the trailing ones, lower the last part > 1 and refill greedily
    i = len(p) - 1
    while p[i] == 1:
        i -= 1
    k = p[i] - 1
    rest = (len(p) - 1 - i) + p[i]
    q, r = divmod(rest, k)
    return p[:i] + (k,) * q + ((r,) if r else ())


def partitions(n: int, max_part: Optional[int] = None) -> Iterator[Partition]:
    """All partitions of ``n`` with parts <= max_part, in descending lex order."""
    p: Optional[Partition] = top_partition(n, max_part)
    while p is not None:
        yield p
        p = next_partition(p)


def square_sum(p: Sequence[int]) -> int:
    return sum(x * x for x in p)


def codim(p: Sequence[int]) -> int:
    """n^2 - sum of squared parts; the dimension count of the conjugacy class."""
    n = sum(p)
    return n * n - square_sum(p)


def min_codim(n: int, max_part: int) -> int:
    """Smallest codim over partitions of ``n`` whose parts are all <= max_part."""
    if max_part >= n:
        return 0
    k = n % max_part
    return n * n - max_part * (n - k) - k * k


def next_with_codim_gain(p: Partition, d: int) -> Optional[Partition]:
    """First partition after ``p`` whose codim is at least ``d`` smaller.

    Equivalently the first successor ``q`` with ``square_sum(q) >=
    square_sum(p) + d``.  For ``d <= 0`` this is plain :func:`next_partition`.
    Returns None when no later partition of the same integer qualifies.

    Only successors that keep the leading prefix of ``p`` and lower one part
    are candidates; for each suffix the top partition below the current part
    maximises the square sum, so the rightmost suffix that can reach the target
    gives the answer.
    """
    if d <= 0:
        return next_partition(p)
    target = square_sum(p) + d
    total = 0
    sq = 0
    for k in range(len(p) - 1, -1, -1):
        w = p[k]
        total += w
        sq += w * w
        # lowering a part <= 2 produces only ones, which never gains
        if w > 2 and total * total - min_codim(total, w - 1) - sq >= d:
            return p[:k] + top_partition(total, w - 1)
    return None
