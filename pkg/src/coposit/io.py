"""Tensor files: a small JSON document with exact decimal and rational entries.

    {"order": 4, "dim": 3,
     "entries": [{"index": [1, 1, 1, 1], "value": 1},
                 {"index": [1, 1, 2, 3], "value": "-1/2"},
                 {"index": [1, 2, 2, 3], "value": 2.1}]}

Decimal literals are read exactly (2.1 is 21/10), strings are parsed as
``p/q`` or decimal rationals, and unknown keys are rejected.  Missing entries
are zero.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Union

from .tensor import SymTensor, TensorError

TOP_KEYS = {"order", "dim", "entries"}
ENTRY_KEYS = {"index", "value"}


class TensorFileError(ValueError):
    """Malformed tensor file; the message names the line or field."""


def _value(raw, where: str):
    if isinstance(raw, bool) or not isinstance(raw, (int, Fraction, str)):
        raise TensorFileError(f"{where}: value must be a number or a 'p/q' string")
    if isinstance(raw, str):
        try:
            raw = Fraction(raw.strip())
        except (ValueError, ZeroDivisionError):
            raise TensorFileError(f"{where}: cannot parse {raw!r} as a rational") from None
    return int(raw) if isinstance(raw, Fraction) and raw.denominator == 1 else raw


def _int_field(doc: dict, key: str) -> int:
    v = doc.get(key)
    if isinstance(v, bool) or not isinstance(v, int):
        raise TensorFileError(f"field '{key}': expected an integer")
    return v


def parse_tensor(text: str) -> SymTensor:
    try:
        doc = json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise TensorFileError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise TensorFileError("top level must be an object")
    extra = set(doc) - TOP_KEYS
    if extra:
        raise TensorFileError(f"unknown field(s): {', '.join(sorted(extra))}")
    missing = TOP_KEYS - set(doc)
    if missing:
        raise TensorFileError(f"missing field(s): {', '.join(sorted(missing))}")
    order, dim = _int_field(doc, "order"), _int_field(doc, "dim")
    if not isinstance(doc["entries"], list):
        raise TensorFileError("field 'entries': expected a list")
    pairs = []
    for n, e in enumerate(doc["entries"]):
        where = f"entries[{n}]"
        if not isinstance(e, dict):
            raise TensorFileError(f"{where}: expected an object")
        extra = set(e) - ENTRY_KEYS
        if extra or set(e) != ENTRY_KEYS:
            raise TensorFileError(f"{where}: expected exactly the fields 'index' and 'value'")
        idx = e["index"]
        if not isinstance(idx, list) or not all(isinstance(i, int) and not isinstance(i, bool) for i in idx):
            raise TensorFileError(f"{where}.index: expected a list of integers")
        pairs.append((tuple(idx), _value(e["value"], f"{where}.value")))
    try:
        return SymTensor.from_entries(dim, pairs, order=order)
    except TensorError as exc:
        raise TensorFileError(str(exc)) from None


def read_tensor(path: Union[str, Path]) -> SymTensor:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise TensorFileError(f"cannot read {path}: {exc.strerror}") from None
    return parse_tensor(text)


def _format_value(v) -> Union[int, str]:
    if isinstance(v, int):
        return v
    # floats are written exactly so that the file re-parses to the same tensor
    f = Fraction(v)
    return int(f) if f.denominator == 1 else str(f)


def format_tensor(T: SymTensor) -> str:
    """Line-oriented dump: one entry per line, canonical order, zeros omitted."""
    lines = [f'{{"order": {T.order}, "dim": {T.dim}, "entries": [']
    items = [(k, v) for k, v in T.entries().items() if v != 0]
    for n, (k, v) in enumerate(items):
        sep = "," if n + 1 < len(items) else ""
        lines.append(f'  {{"index": {list(k)}, "value": {json.dumps(_format_value(v))}}}{sep}')
    lines.append("]}")
    return "\n".join(lines) + "\n"


def write_tensor(T: SymTensor, path: Union[str, Path]) -> None:
    Path(path).write_text(format_tensor(T))
