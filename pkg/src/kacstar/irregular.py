"""Spectral types with unramified irregular singular points.

Several legs of a Fuchsian tuple may merge into one irregular point.  The
merged legs form a chain of partitions, each finer level grouping into
contiguous blocks that sum to the parts of the next coarser level.  A chain is
stored as a forest: the roots are the parts of the coarsest level and the
children of a node are the block of the next finer level under it.

Two notations are supported:

* pipe: levels finest first, joined by ``|`` (``1111|211,22``)
* paren: one parenthesis per level above the finest (``(1 1) (1) (1),2 2``)
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Optional, Sequence

from .tuples import (IllegalPartitions, SpectralParseError, SpectralTuple, format_leg, format_part,
                     idx, parse_leg)


@dataclass(frozen=True)
class Node:
    value: int
    children: tuple = ()

    def depth(self) -> int:
        return 1 + (self.children[0].depth() if self.children else 0)

    def key(self) -> tuple:
        return (self.value, tuple(c.key() for c in self.children))

    def canonical(self) -> "Node":
        kids = sorted((c.canonical() for c in self.children), key=Node.key, reverse=True)
        return Node(self.value, tuple(kids))

    def paren(self) -> str:
        if not self.children:
            return str(self.value)
        return "(" + " ".join(c.paren() for c in self.children) + ")"

    def nested(self):
        if not self.children:
            return self.value
        return [self.value, [c.nested() for c in self.children]]


def _level_nodes(roots: Sequence[Node], k: int) -> list:
    nodes = list(roots)
    for _ in range(k):
        nodes = [c for n in nodes for c in n.children]
    return nodes


@dataclass(frozen=True)
class Chain:
    """Refinement chain of one singular point; ``roots`` carry the coarsest level."""

    roots: tuple

    @classmethod
    def from_levels(cls, levels: Sequence[Sequence[int]]) -> "Chain":
        """Build from partitions written finest first, grouping contiguous blocks."""
        levels = [list(l) for l in levels]
        nodes = [Node(x) for x in levels[0]]
        for coarse in levels[1:]:
            grouped = []
            i = 0
            for c in coarse:
                block, s = [], 0
                while s < c and i < len(nodes):
                    block.append(nodes[i])
                    s += nodes[i].value
                    i += 1
                if s != c:
                    raise IllegalPartitions(levels)
                grouped.append(Node(c, tuple(block)))
            if i != len(nodes):
                raise IllegalPartitions(levels)
            nodes = grouped
        return cls(tuple(nodes))

    @property
    def length(self) -> int:
        return self.roots[0].depth()

    @property
    def rank(self) -> int:
        """Poincare rank of the singular point."""
        return self.length - 1

    @property
    def order(self) -> int:
        return sum(r.value for r in self.roots)

    def levels(self) -> list:
        """Partitions finest first, parts in written order."""
        return [tuple(n.value for n in _level_nodes(self.roots, k))
                for k in range(self.length - 1, -1, -1)]

    def canonical(self) -> "Chain":
        return Chain(tuple(sorted((r.canonical() for r in self.roots), key=Node.key, reverse=True)))

    def pipe(self) -> str:
        return "|".join(format_leg(l) for l in self.levels())

    def paren(self) -> str:
        return " ".join(r.paren() for r in self.roots)

    def nested(self) -> list:
        return [r.nested() for r in self.roots]

    def sort_key(self) -> tuple:
        return (self.length, tuple(sorted((r.value for r in self.roots), reverse=True)), self.pipe())


@dataclass(frozen=True)
class IrregularSpectrum:
    chains: tuple

    def __post_init__(self):
        orders = {c.order for c in self.chains}
        if len(orders) != 1 or 0 in orders:
            raise IllegalPartitions([c.levels() for c in self.chains])

    @property
    def order(self) -> int:
        return self.chains[0].order

    @property
    def points(self) -> int:
        return len(self.chains)

    @property
    def ranks(self) -> list:
        return [c.rank for c in self.chains]

    def unfold(self) -> SpectralTuple:
        """The Fuchsian tuple with one leg per level of every chain."""
        return SpectralTuple(tuple(l for c in self.chains for l in c.levels()))

    def canonical(self) -> "IrregularSpectrum":
        return IrregularSpectrum(tuple(sorted((c.canonical() for c in self.chains), key=Chain.sort_key)))

    def pipe(self) -> str:
        return ",".join(c.pipe() for c in self.chains)

    def paren(self) -> str:
        return ",".join(c.paren() for c in self.chains)

    def nested(self) -> list:
        return [c.nested() for c in self.chains]

    def format(self, style: str = "pipe") -> str:
        if style == "pipe":
            return self.pipe()
        if style == "paren":
            return self.paren()
        raise ValueError(f"unknown style {style!r}")

    def __str__(self) -> str:
        return self.pipe()


# ------------------------------------------------------------ parsing

def _parse_paren_chain(text: str, whole: str, offset: int) -> Chain:
    pos = 0

    def skip():
        nonlocal pos
        while pos < len(text) and text[pos] == " ":
            pos += 1

    def node() -> Node:
        nonlocal pos
        skip()
        if pos < len(text) and text[pos] == "(":
            pos += 1
            kids = []
            while True:
                skip()
                if pos >= len(text):
                    raise SpectralParseError("unbalanced parenthesis", whole, offset + pos)
                if text[pos] == ")":
                    pos += 1
                    break
                kids.append(node())
            if not kids:
                raise SpectralParseError("empty group", whole, offset + pos)
            return Node(sum(k.value for k in kids), tuple(kids))
        start = pos
        while pos < len(text) and text[pos].isdigit():
            pos += 1
        if start == pos:
            raise SpectralParseError("expected a part", whole, offset + pos)
        return Node(int(text[start:pos]))

    roots = []
    skip()
    while pos < len(text):
        roots.append(node())
        skip()
    if not roots:
        raise SpectralParseError("empty chain", whole, offset)
    depths = {leaf_depth for r in roots for leaf_depth in _leaf_depths(r)}
    if len(depths) != 1:
        raise SpectralParseError("leaves at different depths", whole, offset)
    return Chain(tuple(roots))


def _leaf_depths(n: Node, d: int = 1):
    if not n.children:
        yield d
    for c in n.children:
        yield from _leaf_depths(c, d + 1)


def _node_from_nested(x) -> Node:
    if isinstance(x, int):
        return Node(x)
    value, kids = x
    node = Node(value, tuple(_node_from_nested(k) for k in kids))
    if sum(k.value for k in node.children) != value:
        raise IllegalPartitions(x)
    return node


def parse_irregular(text) -> IrregularSpectrum:
    """Parse pipe notation, paren notation or the nested list form."""
    if isinstance(text, IrregularSpectrum):
        return text
    if isinstance(text, str) and text.strip().startswith("["):
        try:
            text = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SpectralParseError("bad list syntax", text, exc.pos) from None
    if isinstance(text, list):
        return IrregularSpectrum(tuple(Chain(tuple(_node_from_nested(x) for x in ch)) for ch in text))
    s = text.strip()
    chains = []
    pos = 0
    for chunk in s.split(","):
        if "(" in chunk or " " in chunk.strip():
            chains.append(_parse_paren_chain(chunk, s, pos))
        else:
            body = chunk.strip()
            levels, off = [], pos
            for lv in body.split("|"):
                levels.append(parse_leg(lv, off, s))
                off += len(lv) + 1
            chains.append(Chain.from_levels(levels))
        pos += len(chunk) + 1
    return IrregularSpectrum(tuple(chains))


# ------------------------------------------------------------ refinements

def _blocks(pool: tuple, target: int, start: int = 0) -> Iterator[tuple]:
    """Sub-multisets of ``pool`` (sorted ascending) summing to ``target``,
    as index tuples, ordered so that the descending parts come out in
    ascending lexicographic order."""
    # pool ascending; choose indices with non-decreasing values, skip equal duplicates
    def rec(i, remaining, chosen):
        if remaining == 0:
            yield tuple(chosen)
            return
        prev = None
        for k in range(i, len(pool)):
            v = pool[k]
            if v > remaining:
                break
            if v == prev:
                continue
            prev = v
            chosen.append(k)
            yield from rec(k + 1, remaining - v, chosen)
            chosen.pop()

    found = list(rec(start, target, []))
    found.sort(key=lambda ix: tuple(sorted((pool[k] for k in ix), reverse=True)))
    return iter(found)


def _distribute(nodes: list, finer: Sequence[int]) -> Iterator[list]:
    """Attach the parts of ``finer`` below the frontier ``nodes``, one block
    per node; yields the new frontier grouped per node."""
    pool = tuple(sorted(finer))

    def rec(i, pool):
        if i == len(nodes):
            if not pool:
                yield []
            return
        for ix in _blocks(pool, nodes[i]):
            block = tuple(sorted((pool[k] for k in ix), reverse=True))
            rest = tuple(x for k, x in enumerate(pool) if k not in ix)
            for tail in rec(i + 1, rest):
                yield [block] + tail

    yield from rec(0, pool)


def _forests(levels: Sequence[tuple]) -> Iterator[tuple]:
    """All forests with the given levels, coarsest first."""
    def build(values: Sequence[int], depth: int) -> Iterator[list]:
        # nested children lists for the given frontier values
        if depth == len(levels):
            yield [()] * len(values)
            return
        for blocks in _distribute(list(values), levels[depth]):
            flat = [x for b in blocks for x in b]
            for below in build(flat, depth + 1):
                it = iter(below)
                kids = []
                for b in blocks:
                    kids.append(tuple(Node(x, next(it)) for x in b))
                yield kids

    top = levels[0]
    for kids in build(top, 1):
        yield tuple(Node(v, k) for v, k in zip(top, kids))


def chain_variants(legs: Sequence[tuple]) -> list:
    """Refinement chains made of all of ``legs``, canonical and without repeats."""
    ordered = sorted(legs, key=lambda l: (len(l), tuple(sorted(l, reverse=True))))
    for a, b in zip(ordered, ordered[1:]):
        if len(a) == len(b) and sorted(a) != sorted(b):
            return []
    levels = [tuple(sorted(l, reverse=True)) for l in ordered]
    out, seen = [], set()
    for roots in _forests(levels):
        ch = Chain(roots).canonical()
        if ch not in seen:
            seen.add(ch)
            out.append(ch)
    return out


def _structures(legs: list) -> Iterator[list]:
    if not legs:
        yield []
        return
    yield [Chain.from_levels([l]) for l in legs]
    first, rest = legs[0], legs[1:]
    for k in range(len(legs), 1, -1):
        for combo in combinations(range(len(rest)), k - 1):
            members = [first] + [rest[i] for i in combo]
            others = [l for i, l in enumerate(rest) if i not in combo]
            for variant in chain_variants(members):
                for tail in _structures(others):
                    yield [variant] + tail
    alone = Chain.from_levels([first])
    for n, tail in enumerate(_structures(rest)):
        if n:
            yield [alone] + tail


def refinements(m: SpectralTuple) -> list:
    """Every irregular spectrum obtained by letting legs of ``m`` confluence,
    the unrefined tuple first."""
    legs = sorted(tuple(sorted(l, reverse=True)) for l in m.strip().legs)
    out, seen = [], set()
    for chains in _structures(legs):
        spec = IrregularSpectrum(tuple(chains)).canonical()
        if spec not in seen:
            seen.add(spec)
            out.append(spec)
    return out


# ------------------------------------------------------------ analysis

def _best_path(node: Node) -> tuple:
    """(sum along the path, child indices) of the first maximal root-to-leaf path."""
    if not node.children:
        return node.value, []
    best = None
    for i, c in enumerate(node.children):
        s, path = _best_path(c)
        if best is None or s > best[0]:
            best = (s, [i] + path)
    return node.value + best[0], best[1]


def _lower_path(node: Node, path: list, d: int) -> Optional[Node]:
    v = node.value - d
    if v < 0:
        from .weyl import NotRealizable

        raise NotRealizable(None)
    kids = list(node.children)
    if kids:
        i = path[0]
        new = _lower_path(kids[i], path[1:], d)
        kids = kids[:i] + ([new] if new is not None else []) + kids[i + 1:]
    if v == 0:
        return None
    return Node(v, tuple(kids))


@dataclass(frozen=True)
class IrregularAnalysis:
    points: int
    ranks: tuple
    rank: int
    index: int
    rod: int
    redsp: tuple
    spectrum: IrregularSpectrum
    reduced: IrregularSpectrum

    def as_list(self) -> list:
        return [self.points, list(self.ranks), self.rank, self.index, self.rod, list(self.redsp),
                self.spectrum.pipe(), self.spectrum.nested(), self.reduced.pipe(), self.reduced.nested()]

    def format_list(self) -> str:
        def js(x):
            return json.dumps(x, separators=(",", ":"))
        return (f"[{self.points},{js(list(self.ranks))},{self.rank},{self.index},{self.rod},"
                f"{js(list(self.redsp))},\n{self.spectrum.pipe()}, {js(self.spectrum.nested())},\n"
                f"{self.reduced.pipe()}, {js(self.reduced.nested())}]")

    def show(self) -> str:
        s, r = self.spectrum, self.reduced
        return "\n".join([
            f"{s.pipe()}   {s.paren()}",
            f"points:    {self.points}  with Poincare ranks  {json.dumps(list(self.ranks), separators=(',', ':'))}",
            f"rank:      {self.rank}",
            f"index:     {self.index}",
            f"reduct:    {self.rod} at {json.dumps(list(self.redsp), separators=(',', ':'))} -> {r.pipe()}   {r.paren()}",
        ])


def analyze_irregular(s: IrregularSpectrum) -> IrregularAnalysis:
    """Points, Poincare ranks, rank, index and one greedy reduction.

    On every chain the root-to-leaf path with the largest sum is lowered by
    the order drop; parts that reach zero disappear, written order is kept.
    """
    if not isinstance(s, IrregularSpectrum):
        s = parse_irregular(s)
    n = s.order
    chosen, paths, total = [], [], 0
    for ch in s.chains:
        best = None
        for i, r in enumerate(ch.roots):
            val, path = _best_path(r)
            if best is None or val > best[0]:
                best = (val, i, path)
        chosen.append(best[1])
        paths.append(best[2])
        total += ch.length * n - best[0]
    d = 2 * n - total
    rod = d if d > 0 and n > 1 else 0
    reduced = s
    if rod:
        chains = []
        for ch, i, path in zip(s.chains, chosen, paths):
            roots = list(ch.roots)
            new = _lower_path(roots[i], path, rod)
            roots = roots[:i] + ([new] if new is not None else []) + roots[i + 1:]
            chains.append(Chain(tuple(roots)))
        reduced = IrregularSpectrum(tuple(chains))
    return IrregularAnalysis(s.points, tuple(s.ranks), n, idx(s.unfold()), rod, tuple(chosen), s, reduced)
