"""Verdict values and the exact/banded comparison helpers shared by every test."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

# Half-width of the float band around zero inside which a comparison is undecided.
BAND = 1e-12


class Verdict(str, enum.Enum):
    STRICTLY_COPOSITIVE = "STRICTLY_COPOSITIVE"
    COPOSITIVE = "COPOSITIVE"
    NOT_COPOSITIVE = "NOT_COPOSITIVE"
    UNKNOWN = "UNKNOWN"

    def __str__(self) -> str:
        return self.value

    @property
    def is_copositive(self) -> bool:
        return self in (Verdict.STRICTLY_COPOSITIVE, Verdict.COPOSITIVE)


@dataclass(frozen=True)
class Decision:
    """Outcome of an analytic test.

    ``strictness_known`` is False when the criterion that fired only certifies
    copositivity, so a ``COPOSITIVE`` verdict says nothing about strictness.
    """

    verdict: Verdict
    method: str
    certificate: Optional[str] = None
    strictness_known: bool = True


def is_exact(*values) -> bool:
    return all(isinstance(v, (int, Fraction)) and not isinstance(v, bool) for v in values)


def sign(value) -> Optional[int]:
    """Sign of ``value``; ``None`` for a float inside the undecided band."""
    if is_exact(value):
        return (value > 0) - (value < 0)
    value = float(value)
    if math.isnan(value):
        return None
    if abs(value) <= BAND:
        return None
    return 1 if value > 0 else -1


def ge(a, b=0) -> Optional[bool]:
    s = sign(a - b)
    return None if s is None else s >= 0


def gt(a, b=0) -> Optional[bool]:
    s = sign(a - b)
    return None if s is None else s > 0


def cmp_root(lhs, radicand, *, negate: bool = False, strict: bool = False, k: int = 4) -> Optional[bool]:
    """Decide ``lhs >= ±radicand**(1/k)`` (``>`` when ``strict``), ``k`` even.

    Rational inputs are compared exactly by raising both sides to the k-th power.
    """
    if radicand < 0:
        raise ValueError("negative radicand")
    if is_exact(lhs, radicand):
        lhs = Fraction(lhs)
        if not negate:
            # lhs >= r  <=>  lhs >= 0 and lhs**k >= r
            if lhs < 0:
                return False
            p = lhs**k
            return p > radicand if strict else p >= radicand
        # lhs >= -r  <=>  lhs >= 0 or (-lhs)**k <= r
        if lhs > 0 or (lhs == 0 and (radicand > 0 or not strict)):
            return True
        p = (-lhs) ** k
        return p < radicand if strict else p <= radicand
    bound = float(radicand) ** (1.0 / k)
    if negate:
        bound = -bound
    return gt(float(lhs), bound) if strict else ge(float(lhs), bound)


def all3(values: Iterable[Optional[bool]]) -> Optional[bool]:
    """Three-valued AND: False dominates, then undecided."""
    seen_none = False
    for v in values:
        if v is False:
            return False
        if v is None:
            seen_none = True
    return None if seen_none else True


def any3(values: Iterable[Optional[bool]]) -> Optional[bool]:
    """Three-valued OR: True dominates, then undecided."""
    seen_none = False
    for v in values:
        if v is True:
            return True
        if v is None:
            seen_none = True
    return None if seen_none else False


def to_number(value):
    """Normalize a user value: ints and Fractions stay exact, everything else is float."""
    if isinstance(value, bool):
        raise TypeError("booleans are not tensor entries")
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else value
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        return to_number(Fraction(value))
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"non-finite entry {value!r}")
    return value
