from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coposit.io import TensorFileError, format_tensor, parse_tensor, read_tensor, write_tensor
from coposit.tensor import SymTensor


def doc(entries, order=4, dim=3):
    return '{"order": %d, "dim": %d, "entries": [%s]}' % (order, dim, ", ".join(entries))


def test_decimals_are_exact():
    T = parse_tensor(doc(['{"index": [3, 2, 1, 1], "value": 2.1}', '{"index": [1,1,1,1], "value": "-1/3"}']))
    assert T[1, 1, 2, 3] == Fraction(21, 10)
    assert T[1, 1, 1, 1] == Fraction(-1, 3)
    assert T[2, 2, 2, 2] == 0


def test_integral_values_become_ints():
    T = parse_tensor(doc(['{"index": [1,1,1,1], "value": 1.0}', '{"index": [2,2,2,2], "value": "4/2"}']))
    assert type(T[1, 1, 1, 1]) is int and T[2, 2, 2, 2] == 2


@pytest.mark.parametrize(
    "text, needle",
    [
        ('{"order": 4, "dim": 3, "entries": [', "line 1"),
        (doc(['{"index": [1,2,3,4], "value": 1}']), "index"),
        (doc(['{"index": [1,1,1,1], "value": true}']), "entries[0].value"),
        (doc(['{"index": [1,1,1,1], "value": "x"}']), "entries[0].value"),
        (doc(['{"index": [1,1,1,1], "val": 1}']), "entries[0]"),
        (doc(['{"index": [1,1,"a",1], "value": 1}']), "entries[0].index"),
        ('{"order": 4, "dim": 3}', "missing"),
        ('{"order": 4, "dim": 3, "entries": [], "name": "x"}', "unknown"),
        ('{"order": "4", "dim": 3, "entries": []}', "order"),
        (doc(['{"index": [1,2,3,3], "value": 1}', '{"index": [3,3,2,1], "value": 2}']), "conflicting"),
        ('[1, 2]', "object"),
    ],
)
def test_malformed_input(text, needle):
    with pytest.raises(TensorFileError) as exc:
        parse_tensor(text)
    assert needle in str(exc.value)


def test_multiline_error_names_the_line():
    text = '{"order": 4,\n "dim": 3,\n "entries": [}\n'
    with pytest.raises(TensorFileError, match="line 3"):
        parse_tensor(text)


def test_missing_file(tmp_path):
    with pytest.raises(TensorFileError, match="cannot read"):
        read_tensor(tmp_path / "nope.json")


def test_format_omits_zeros_and_round_trips(tmp_path):
    T = SymTensor(4, 2, [1, 0, Fraction(-1, 2), 0, 3])
    text = format_tensor(T)
    assert text.count("index") == 3
    path = tmp_path / "t.json"
    write_tensor(T, path)
    assert read_tensor(path) == T


def test_floats_are_written_exactly():
    T = SymTensor(4, 2, [0.1, 0, 0, 0, 1])
    assert parse_tensor(format_tensor(T))[1, 1, 1, 1] == Fraction(0.1)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.fractions(-100, 100, max_denominator=50), min_size=15, max_size=15))
def test_round_trip_property(values):
    T = SymTensor(4, 3, values)
    assert parse_tensor(format_tensor(T)) == T


def test_matrix_files():
    M = parse_tensor(doc(['{"index": [1,2], "value": -1}', '{"index": [1,1], "value": 1}'], order=2, dim=2))
    assert (M.order, M.dim, M[2, 1]) == (2, 2, -1)
    assert np.array_equal(M.to_array(), [[1, -1], [-1, 0]])
