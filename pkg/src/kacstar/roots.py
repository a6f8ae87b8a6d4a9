"""Elements of the root lattice of the star-shaped Kac-Moody algebra.

A vector is ``n*a0 + sum n[j][nu-1] * a(j, nu)``: ``n`` is the coefficient of
the central node and ``legs[j]`` lists the coefficients along leg ``j`` moving
outward.  Legs beyond the stored ones, and coefficients beyond a stored leg,
are zero.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from math import gcd
from typing import Optional, Sequence

from .tuples import SpectralParseError, SpectralTuple, idx


class RootKind(str, Enum):
    REAL = "rigid-real-root"
    IMAGINARY = "indivisible-imaginary"
    DIVISIBLE_IMAGINARY = "divisible-imaginary"
    TYPE_A = "type-A"
    NOT_A_ROOT = "not-a-root"


class NotDominantShaped(ValueError):
    pass


def _trim(seq: Sequence[int]) -> tuple:
    seq = list(seq)
    while seq and seq[-1] == 0:
        seq.pop()
    return tuple(seq)


@dataclass(frozen=True)
class RootVector:
    n: int
    legs: tuple = ()

    def __post_init__(self):
        legs = [_trim(int(x) for x in leg) for leg in self.legs]
        while legs and not legs[-1]:
            legs.pop()
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "legs", tuple(legs))

    @classmethod
    def simple(cls, j: Optional[int] = None, nu: int = 0) -> "RootVector":
        """The simple root a0 (``j is None``) or a(j, nu) with nu >= 1."""
        if j is None:
            return cls(1)
        legs = [()] * j + [(0,) * (nu - 1) + (1,)]
        return cls(0, tuple(legs))

    def coeff(self, j: int, nu: int) -> int:
        if j < len(self.legs) and 1 <= nu <= len(self.legs[j]):
            return self.legs[j][nu - 1]
        return 0

    def coefficients(self) -> list:
        return [self.n] + [x for leg in self.legs for x in leg]

    def is_zero(self) -> bool:
        return not any(self.coefficients())

    def __neg__(self) -> "RootVector":
        return RootVector(-self.n, tuple(tuple(-x for x in leg) for leg in self.legs))

    def __add__(self, other: "RootVector") -> "RootVector":
        p = max(len(self.legs), len(other.legs))
        legs = []
        for j in range(p):
            a = self.legs[j] if j < len(self.legs) else ()
            b = other.legs[j] if j < len(other.legs) else ()
            k = max(len(a), len(b))
            legs.append(tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(k)))
        return RootVector(self.n + other.n, tuple(legs))

    def __rmul__(self, k: int) -> "RootVector":
        return RootVector(k * self.n, tuple(tuple(k * x for x in leg) for leg in self.legs))

    def __str__(self) -> str:
        return format_kac(self)


def inner(a: RootVector, b: RootVector) -> int:
    """The symmetric bilinear form with (a|a)=2 on simple roots and -1 on edges."""
    total = 2 * a.n * b.n
    for j in range(max(len(a.legs), len(b.legs))):
        x = a.legs[j] if j < len(a.legs) else ()
        y = b.legs[j] if j < len(b.legs) else ()
        k = max(len(x), len(y))
        x = x + (0,) * (k - len(x))
        y = y + (0,) * (k - len(y))
        if k:
            total -= a.n * y[0] + x[0] * b.n
        for i in range(k):
            total += 2 * x[i] * y[i]
            if i + 1 < k:
                total -= x[i] * y[i + 1] + x[i + 1] * y[i]
    return total


def tuple_to_root(m: SpectralTuple) -> RootVector:
    """n_{j,k} = m_{j,k+1} + ... + m_{j,n_j}."""
    legs = []
    for leg in m.legs:
        tail = []
        s = sum(leg)
        for x in leg[:-1]:
            s -= x
            tail.append(s)
        legs.append(tuple(tail))
    return RootVector(m.order, tuple(legs))


def root_to_tuple(a: RootVector, p_min: int = 1) -> SpectralTuple:
    """Inverse of :func:`tuple_to_root`, zero parts dropped, padded to p_min legs."""
    n = a.n
    if n < 1:
        raise NotDominantShaped("not a dominant-shaped vector: central coefficient must be positive")
    legs = []
    for leg in a.legs:
        chain = (n,) + leg + (0,)
        parts = [chain[i] - chain[i + 1] for i in range(len(chain) - 1)]
        if min(parts) < 0:
            raise NotDominantShaped(f"not a dominant-shaped vector: leg {list(leg)} exceeds {n} or increases")
        legs.append(tuple(x for x in parts if x))
    while len(legs) < p_min:
        legs.append((n,))
    if not legs:
        legs.append((n,))
    return SpectralTuple(tuple(legs))


def support_connected(a: RootVector) -> bool:
    """Whether the nodes with nonzero coefficient form a connected subdiagram."""
    nodes = {(j, i) for j, leg in enumerate(a.legs) for i, x in enumerate(leg) if x}
    if a.n:
        nodes.add(None)
    if not nodes:
        return False
    start = next(iter(nodes))
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        if v is None:
            nbrs = [(j, 0) for j in range(len(a.legs))]
        else:
            j, i = v
            nbrs = [(j, i + 1), (j, i - 1) if i else None]
        for w in nbrs:
            if w in nodes and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == nodes


def divisor(a: RootVector) -> int:
    g = 0
    for x in a.coefficients():
        g = gcd(g, x)
    return g


@dataclass(frozen=True)
class TupleClass:
    kind: RootKind
    index: int
    negative: bool = False
    fundamental: Optional[SpectralTuple] = None

    @property
    def is_root(self) -> bool:
        return self.kind is not RootKind.NOT_A_ROOT

    @property
    def realizable(self) -> bool:
        """Realizable as the spectral type of an irreducible Fuchsian system."""
        if self.negative:
            return False
        if self.kind in (RootKind.REAL, RootKind.IMAGINARY):
            return True
        return self.kind is RootKind.DIVISIBLE_IMAGINARY and self.index != 0


def classify_root(a: RootVector) -> TupleClass:
    """Decide whether ``a`` is a root and of which kind, by Weyl reduction."""
    from .weyl import NotRealizable, reduce_to_fundamental

    coeffs = a.coefficients()
    if not any(coeffs):
        raise ValueError("the zero vector is not classified")
    if min(coeffs) < 0:
        if max(coeffs) > 0:
            return TupleClass(RootKind.NOT_A_ROOT, inner(a, a))
        c = classify_root(-a)
        return TupleClass(c.kind, c.index, True, c.fundamental)
    norm = inner(a, a)
    if a.n == 0:
        # roots avoiding a0 live on one leg: a(j,i) + ... + a(j,k)
        legs = [leg for leg in a.legs if any(leg)]
        if len(legs) == 1 and support_connected(a) and set(legs[0]) <= {0, 1}:
            return TupleClass(RootKind.TYPE_A, norm)
        return TupleClass(RootKind.NOT_A_ROOT, norm)
    if not support_connected(a):
        return TupleClass(RootKind.NOT_A_ROOT, norm)
    try:
        m = root_to_tuple(a)
    except NotDominantShaped:
        return TupleClass(RootKind.NOT_A_ROOT, norm)
    try:
        fund, real = reduce_to_fundamental(m)
    except NotRealizable:
        return TupleClass(RootKind.NOT_A_ROOT, norm)
    if real:
        return TupleClass(RootKind.REAL, norm, fundamental=fund)
    kind = RootKind.DIVISIBLE_IMAGINARY if divisor(a) > 1 else RootKind.IMAGINARY
    return TupleClass(kind, norm, fundamental=fund)


# ------------------------------------------------------------ Kac form

def format_kac(a: RootVector, p: Optional[int] = None) -> str:
    legs = list(a.legs)
    if p is not None:
        legs += [()] * (p - len(legs))
    body = ",".join("[" + ",".join(str(x) for x in leg) + "]" for leg in legs)
    return f"[{a.n}" + ("," + body if legs else "") + "]"


def kac_form(m: SpectralTuple) -> str:
    """Bracketed coefficient form, one bracket per leg of ``m``."""
    return format_kac(tuple_to_root(m), m.p)


def parse_kac(text) -> RootVector:
    """Parse ``[n,[n01,...],[n11,...],...]`` (text or list)."""
    data = text
    if isinstance(text, str):
        s = "".join(text.split())
        try:
            data = json.loads(s)
        except json.JSONDecodeError as exc:
            raise SpectralParseError("bad Kac form", s, exc.pos) from None
    if not (isinstance(data, list) and data and isinstance(data[0], int)
            and all(isinstance(x, list) for x in data[1:])):
        raise SpectralParseError("expected [n,[...],...]", str(text), 0)
    return RootVector(data[0], tuple(tuple(x) for x in data[1:]))


def is_kac_text(text) -> bool:
    if isinstance(text, list):
        return bool(text) and isinstance(text[0], int)
    s = "".join(str(text).split())
    return s.startswith("[") and len(s) > 1 and (s[1].isdigit() or s[1] == "-")


def root_index(a: RootVector) -> int:
    return inner(a, a)


def tuple_index(m: SpectralTuple) -> int:
    return idx(m)
