import pytest

from kacstar.irregular import IrregularSpectrum
from kacstar.tuples import (IllegalPartitions, SpectralParseError, SpectralTuple, canonical, format_tuple,
                            fuchs_excess, idx, is_divisible, normalize_monotone, normalize_ordered, parse,
                            parse_leg, parse_tuple, square_defect)


def T(text):
    return parse_tuple(text)


@pytest.mark.parametrize("text,legs", [
    ("121,22,1111", [[1, 2, 1], [2, 2], [1, 1, 1, 1]]),
    ("121,22,1^4", [[1, 2, 1], [2, 2], [1, 1, 1, 1]]),
    ("43,322,1^7", [[4, 3], [3, 2, 2], [1] * 7]),
])
def test_parse_codec(text, legs):
    assert T(text).to_list() == legs


def test_letters_and_parenthesised_parts():
    assert parse_leg("a99") == [10, 9, 9]
    assert parse_leg("z") == [35]
    assert parse_leg("(40)(36)") == [40, 36]
    assert parse_leg("2^(12)") == [2] * 12
    m = SpectralTuple.of([[36, 10], [23, 23]])
    assert str(m) == "(36)a,nn"
    assert parse_leg("aa431") == [10, 10, 4, 3, 1]
    assert T(str(m)) == m


def test_list_inputs():
    assert T("[[1,2,1],[2,2],[1,1,1,1]]") == T("121,22,1111")
    assert T([[2, 1], [1, 1, 1]]).order == 3


@pytest.mark.parametrize("bad", ["", "12,,3", "1#", "^2", "(4", "[[1,2]", "11|11,11"])
def test_parse_errors(bad):
    with pytest.raises(SpectralParseError):
        T(bad)


def test_illegal_partitions():
    with pytest.raises(IllegalPartitions) as err:
        T("[[3,2],[2,2,1],[1,1,1,1]]")
    assert str(err.value) == "illegal partitions"


def test_zero_parts_and_strip():
    m = T("[[0,1,2,1],[2,0,2,0],[1,1,1,1]]")
    assert m.strip().to_list() == [[2, 1, 1], [2, 2], [1, 1, 1, 1]]


def test_normal_forms():
    m = T("121,1111,22")
    assert str(normalize_monotone(m)) == "211,1111,22"
    assert str(normalize_ordered(normalize_monotone(m))) == "22,211,1111"
    assert str(canonical(T("4,31,22,1111"))) == "31,22,1111"


def test_index_and_excess():
    assert idx(T("11,11,11,11")) == 0
    assert idx(T("211,22,1111")) == 2
    assert idx(T("66,444,2222211")) == -2
    assert fuchs_excess(T("11,11,11,11")) == 0
    assert fuchs_excess(T("21,21,21")) == -3
    assert square_defect(T("21,111")) == 1


def test_identity_on_examples():
    for text in ["21,21,111,111", "32,11111,11111", "44,332,11111111", "55,3331,22222"]:
        m = T(text)
        n = m.order
        assert fuchs_excess(m) * n + square_defect(m) == -idx(m)


def test_divisibility():
    assert is_divisible(T("22,22,22,22")) == 2
    assert is_divisible(T("66,444,2222211")) is None


def test_format_round_trip():
    for text in ["211,22,1111", "g1,h", "33,222,111111"]:
        assert format_tuple(T(text)) == text


def test_parse_dispatches_irregular():
    assert isinstance(parse("1111|211,22"), IrregularSpectrum)
    assert isinstance(parse("(1 1) (1) (1),2 2"), IrregularSpectrum)
    assert isinstance(parse("21,21,21,111"), SpectralTuple)
