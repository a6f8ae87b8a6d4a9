import json

import pytest

from kacstar.cli import main
from kacstar.irregular import parse_irregular
from kacstar.tuples import parse_tuple


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def norm(text):
    return [" ".join(line.split()) for line in text.strip().splitlines()]


CHECK = [
    (["[[1,2,1],[2,2],[1,1,1,1]]"], "[3,4,2,0,1,[ 1 0 0 ],[[1],[1],[1]]]"),
    (["121,22,1111"], "[3,4,2,0,1,[ 1 0 0 ],[[1],[1],[1]]]"),
    (["121,22,1^4"], "[3,4,2,0,1,[ 1 0 0 ],[[1],[1],[1]]]"),
    (["[[1,2,1],[2,2],[1,1,1,1]]", "--out", "kac"], "[4,[3,1],[2],[3,2,1]]"),
    (["[4,[3,1],[2],[3,2,1]]"], "[3,4,2,0,1,[ 1 0 0 ],[[1],[1],[1]]]"),
    (["[4,[3,1],[2],[3,2,1]]", "--out", "sp"], "[[1,2,1],[2,2],[1,1,1,1]]"),
    (["[[1,2,1],[2,2],[1,1,1,1]]", "--out", "sort"], "[[2,1,1],[2,2],[1,1,1,1]]"),
    (["[[1,2,1],[2,2],[1,1,1,1]]", "--out", "basic"], "[[1],[1],[1]]"),
    (["[[1,2,1],[2,2],[1,1,1,1]]", "--out", "construct"],
     "[\n [[1],[1],[1]],\n [[1,1],[1,1],[1,1]],\n [[1,1,1],[2,1],[1,1,1]],\n [[2,1,1],[2,2],[1,1,1,1]]\n]"),
    (["[[0,1,2,1],[2,0,2,0],[1,1,1,1]]", "--out", "strip"], "[[2,1,1],[2,2],[1,1,1,1]]"),
    (["21,21,21,21", "--out", "root"],
     "[[[1],[1],[1],[1]],[[2,1],[2,1],[2,1],[2,1]],\n[[1,3,1],[1,2,1],[1,1,1],[1,0,1],[2,0,0]]]"),
    (["21,21,21,111"], "[4,3,0,0,1,[ 0 0 0 0 ],[[1,1],[1,1],[1,1],[1,1]]]"),
    (["43,322,1^7"], "[3,7,0,0,1,[ 0 0 0 ],[[3,3],[2,2,2],[1,1,1,1,1,1]]]"),
]


@pytest.mark.parametrize("argv,expected", CHECK)
def test_check_golden(capsys, argv, expected):
    code, out = run(capsys, "check", *argv)
    assert code == 0
    assert norm(out) == norm(expected)


def test_check_illegal(capsys):
    code, out = run(capsys, "check", "[[3,2],[2,2,1],[1,1,1,1]]")
    assert code == 2 and norm(out) == ["illegal partitions", "-1"]


def test_check_not_realizable(capsys):
    code, out = run(capsys, "check", "31,31,31,22")
    assert code == 3 and norm(out) == ["not realizable", "0"]


ORBIT = [
    (["--max-ord", "4", "--eq", "--parts", "4", "--format", "json"],
     "[[[2,2],[2,2],[2,2],[3,1]],[[2,2],[3,1],[3,1],[2,1,1]]]"),
    (["--max-ord", "4", "--eq", "--parts", "4", "--format", "vector"], "[ 22,22,22,31 22,31,31,211 ]"),
    (["--max-ord", "4", "--eq", "--parts", "4", "--format", "vector", "--std", "-1"], "[ 31,22,22,22 31,31,22,211 ]"),
    (["--max-ord", "4", "--eq", "--parts", "4", "--format", "vector", "--std", "-1", "--descending"],
     "[ 31,31,22,211 31,22,22,22 ]"),
    (["--max-ord", "-2", "--parts", "4", "--format", "vector"], "[ 21,21,111,111 22,22,22,211 31,22,22,1111 ]"),
]


@pytest.mark.parametrize("argv,expected", ORBIT)
def test_orbit_golden(capsys, argv, expected):
    code, out = run(capsys, "orbit", *argv)
    assert code == 0 and norm(out) == norm(expected)


def test_orbit_of_seed_as_set(capsys):
    code, out = run(capsys, "orbit", "--max-ord", "4", "--eq", "--seed", "11,11,11,11", "--std", "-1",
                    "--format", "vector")
    assert code == 0
    items = out.strip()[1:-1].split()
    assert set(items) == {"31,31,22,1111", "31,22,22,211", "31,31,211,211", "31,31,31,31,22"}
    assert len(items) == 4


def test_refine_golden(capsys):
    code, out = run(capsys, "refine", "11,11,11,11")
    assert code == 0
    assert norm(out) == ["11,11,11,11", "11|11|11|11", "11,11|11|11", "11,11,11|11", "11|11,11|11"]
    code, out = run(capsys, "refine", "11,11,11,11", "--style", "paren")
    assert norm(out) == ["1 1,1 1,1 1,1 1", "(((1))) (((1)))", "1 1,((1)) ((1))", "1 1,1 1,(1) (1)",
                         "(1) (1),(1) (1)"]
    code, out = run(capsys, "refine", "42,21111,21111", "--style", "paren")
    assert norm(out) == ["2 1 1 1 1,2 1 1 1 1,4 2", "((1) (1) (1) (1)) ((2))", "((2) (1) (1)) ((1) (1))",
                         "4 2,(2) (1) (1) (1) (1)", "2 1 1 1 1,(1 1 1 1) (2)", "2 1 1 1 1,(2 1 1) (1 1)"]


def test_check_irregular_golden(capsys):
    code, out = run(capsys, "check-irregular", "1111|211,22")
    assert code == 0
    assert norm(out) == norm("""
        [2,[1,0],4,2,1,[0,0],
        1111|211,22, [[[2,[1,1]],[1,[1]],[1,[1]]],[2,2]],
        111|111,12, [[[1,[1]],[1,[1]],[1,[1]]],[1,2]]]""")
    code, out = run(capsys, "check-irregular", "1111|211,22", "--show")
    assert norm(out) == norm("""
        1111|211,22   (1 1) (1) (1),2 2
        points:    2  with Poincare ranks  [1,0]
        rank:      4
        index:     2
        reduct:    1 at [0,0] -> 111|111,12   (1) (1) (1),1 2""")
    code, out = run(capsys, "check-irregular", "1111|211|22", "--show")
    assert norm(out) == norm("""
        1111|211|22   ((1 1)) ((1) (1))
        points:    1  with Poincare ranks  [2]
        rank:      4
        index:     2
        reduct:    1 at [0] -> 111|111|12   ((1)) ((1) (1))""")


def test_classify(capsys):
    code, out = run(capsys, "classify", "--idx", "-2", "--parts", "4")
    assert code == 0 and norm(out) == ["21,21,111,111", "22,22,22,211", "31,22,22,1111"]
    code, out = run(capsys, "classify", "--idx", "0")
    assert len(norm(out)) == 4
    code, out = run(capsys, "classify", "--idx", "-6", "--parts", "3:3", "--workers", "2")
    assert code == 0 and all(line.count(",") == 2 for line in norm(out))


@pytest.mark.parametrize("argv", [
    ["classify", "--idx", "-1"],
    ["classify", "--idx", "2"],
    ["classify", "--idx", "-2", "--parts", "x"],
    ["bench", "--idx", "-2", "--ablate", "9.9"],
    ["check", "12,,3"],
    ["frobnicate"],
    [],
])
def test_usage_errors(capsys, argv):
    assert main(argv) == 1


def test_json_round_trips(capsys):
    _, out = run(capsys, "classify", "--idx", "-4", "--format", "json")
    data = json.loads(out)
    assert [str(parse_tuple(x)) for x in data] == norm(run(capsys, "classify", "--idx", "-4")[1])
    _, out = run(capsys, "orbit", "--max-ord", "5", "--format", "json")
    assert [str(parse_tuple(x)) for x in json.loads(out)] == norm(run(capsys, "orbit", "--max-ord", "5")[1])
    _, out = run(capsys, "refine", "42,21111,21111", "--format", "json")
    plain = norm(run(capsys, "refine", "42,21111,21111")[1])
    assert [parse_irregular(x).pipe() for x in json.loads(out)] == plain
    _, out = run(capsys, "check", "121,22,1111", "--format", "json")
    assert json.loads(out) == [3, 4, 2, 0, 1, [1, 0, 0], [[1], [1], [1]]]
    _, out = run(capsys, "check", "121,22,1111", "--out", "construct", "--format", "json")
    assert [str(parse_tuple(x)) for x in json.loads(out)][-1] == "211,22,1111"
    _, out = run(capsys, "check-irregular", "1111|211,22", "--format", "json")
    data = json.loads(out)
    assert parse_irregular(data[7]) == parse_irregular(data[6])
    assert parse_irregular(data[9]).pipe() == data[8]


def test_bench(capsys):
    code, out = run(capsys, "bench", "--idx", "-4", "--ablate", "none", "--ablate", "2.1", "--format", "json")
    rows = json.loads(out)
    assert code == 0 and [r["count"] for r in rows] == [37, 37]
    assert rows[1]["disabled"] == "2.1" and rows[1]["states"] >= rows[0]["states"]
