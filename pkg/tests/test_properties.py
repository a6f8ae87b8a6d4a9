"""Invariants checked exhaustively on small orders and on random larger tuples."""
from itertools import combinations_with_replacement, product

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from kacstar.partitions import partitions
from kacstar.roots import RootVector, inner, root_to_tuple, support_connected, tuple_to_root
from kacstar.tuples import SpectralTuple, fuchs_excess, idx, square_defect
from kacstar.weyl import StepNotApplicable, reflect_leg, tbar

RANDOM = settings(max_examples=10_000, deadline=None, derandomize=True,
                  suppress_health_check=[HealthCheck.too_slow])


def compositions(n):
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in compositions(n - first):
            yield (first,) + rest


@st.composite
def tuples(draw, max_order=30, max_legs=6):
    n = draw(st.integers(2, max_order))
    p = draw(st.integers(1, max_legs))
    monotone = draw(st.booleans())
    legs = []
    for _ in range(p):
        k = draw(st.integers(1, min(n, 8)))
        cuts = sorted(draw(st.lists(st.integers(1, n - 1), min_size=k - 1, max_size=k - 1, unique=True))) \
            if k > 1 else []
        bounds = [0] + cuts + [n]
        leg = [b - a for a, b in zip(bounds, bounds[1:])]
        legs.append(tuple(sorted(leg, reverse=True) if monotone else leg))
    return SpectralTuple(tuple(legs))


def _same_up_to_zeros(a: SpectralTuple, b: SpectralTuple) -> bool:
    def trim(leg):
        leg = list(leg)
        while leg and leg[-1] == 0:
            leg.pop()
        return tuple(leg)
    la = [trim(l) for l in a.legs]
    lb = [trim(l) for l in b.legs]
    n = a.order
    while la and la[-1] == (n,):
        la.pop()
    while lb and lb[-1] == (n,):
        lb.pop()
    return la == lb


def _check_steps(m: SpectralTuple):
    i = idx(m)
    for j, leg in enumerate(m.legs):
        for nu in range(1, len(leg) + 1):
            r = reflect_leg(m, j, nu)
            assert idx(r) == i
            assert _same_up_to_zeros(reflect_leg(r, j, nu), m)
    pos = tuple(min(len(l), 1 + (j % 2)) for j, l in enumerate(m.legs))
    for positions in [(1,) * len(m.legs), pos]:
        try:
            t = tbar(m, positions)
        except StepNotApplicable:
            continue
        assert idx(t) == i
        assert _same_up_to_zeros(tbar(t, positions), m)


def _monotone(m: SpectralTuple) -> bool:
    return all(list(l) == sorted(l, reverse=True) for l in m.legs)


def _in_b(a: RootVector) -> bool:
    if not support_connected(a) or inner(a, RootVector.simple()) > 0:
        return False
    return all(inner(a, RootVector.simple(j, nu)) <= 0
               for j, leg in enumerate(a.legs) for nu in range(1, len(leg) + 2))


@pytest.mark.parametrize("n", range(1, 7))
def test_steps_exhaustive(n):
    comps = list(compositions(n))
    for combo in product(comps, repeat=3):
        _check_steps(SpectralTuple(combo))


@pytest.mark.parametrize("n", range(1, 7))
def test_root_invariants_exhaustive(n):
    comps = list(compositions(n))
    for combo in product(comps, repeat=3):
        m = SpectralTuple(combo)
        a = tuple_to_root(m)
        assert root_to_tuple(a, 3) == m
        assert inner(a, a) == idx(m)
        assert _in_b(a) == (_monotone(m) and fuchs_excess(m) >= 0)


@pytest.mark.parametrize("n", range(2, 9))
def test_identity_exhaustive(n):
    legs = list(partitions(n))
    for p in range(1, 6):
        for combo in combinations_with_replacement(legs, p):
            m = SpectralTuple(combo)
            assert fuchs_excess(m) * n + square_defect(m) == -idx(m)


@RANDOM
@given(tuples())
def test_random_instances(m):
    _check_steps(m)
    a = tuple_to_root(m)
    assert root_to_tuple(a, len(m.legs)) == m
    assert inner(a, a) == idx(m)
    assert _in_b(a) == (_monotone(m) and fuchs_excess(m) >= 0)
    if _monotone(m):
        assert fuchs_excess(m) * m.order + square_defect(m) == -idx(m)


@settings(max_examples=300, deadline=None)
@given(tuples(max_order=12, max_legs=4))
def test_central_step_is_root_reflection(m):
    # the T-step at first parts is the simple reflection at the central node
    positions = (1,) * len(m.legs)
    try:
        t = tbar(m, positions)
    except StepNotApplicable:
        return
    a = tuple_to_root(m)
    a0 = RootVector.simple()
    assert tuple_to_root(t) == a + (-inner(a, a0)) * a0
