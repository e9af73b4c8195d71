"""4th-order 3-dimensional tensors: the two ±1 families and root-bound sufficient tests.

Strict family: t_iiii = t_iiij = 1, free signs on the t_iijj and t_iijk.
Copositive family: t_iiii = t_iijj = 1, free signs on the t_iiij and t_iijk.

Mixed entries are named by their doubled index: m_1 = t1123, m_2 = t1223,
m_3 = t1233.  Both classifiers reorganize the case analysis around which
m_a are -1, which makes the index quantifiers explicit.  The rules here were
checked against the exact lattice oracle on every pattern; the literal
readings are kept as ``*_as_printed`` for comparison.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, ClassVar, Iterable, Iterator, Optional

from .oracle import DEFAULT_DENOMINATOR, default_workers, min_on_simplex, negative_point
from .tensor import SymTensor, TensorError
from .verdict import Decision, Verdict, all3, any3, cmp_root

PERMUTATIONS = tuple(itertools.permutations((1, 2, 3)))


def _mixed(a: int) -> tuple[int, int, int, int]:
    """Index of the mixed entry whose doubled index is ``a``."""
    return tuple(sorted((a, a, *({1, 2, 3} - {a}))))


def _iiij(i: int, j: int) -> tuple[int, int, int, int]:
    return (i, i, i, j)


def _iijj(i: int, j: int) -> tuple[int, int, int, int]:
    return (i, i, j, j)


class _Pattern:
    """A sign pattern stored as an integer; bit set means the entry is -1."""

    FREE: ClassVar[tuple[tuple[int, ...], ...]]
    FIXED: ClassVar[tuple[tuple[int, ...], ...]]

    __slots__ = ("bits",)

    def __init__(self, bits: int):
        if not 0 <= bits < 1 << len(self.FREE):
            raise ValueError(f"pattern {bits} out of range")
        self.bits = bits

    @classmethod
    def all(cls) -> Iterator["_Pattern"]:
        return (cls(b) for b in range(1 << len(cls.FREE)))

    @classmethod
    def size(cls) -> int:
        return 1 << len(cls.FREE)

    def sign(self, index) -> int:
        key = tuple(sorted(index))
        if key in self.FIXED or len(set(key)) == 1:
            return 1
        return -1 if self.bits >> self.FREE.index(key) & 1 else 1

    def to_tensor(self) -> SymTensor:
        return SymTensor.from_function(4, 3, self.sign)

    @classmethod
    def from_tensor(cls, T: SymTensor) -> "_Pattern":
        if (T.order, T.dim) != (4, 3):
            raise TensorError("expected a 4th-order 3-dimensional tensor")
        for idx in [(i,) * 4 for i in (1, 2, 3)] + list(cls.FIXED):
            if T[idx] != 1:
                raise TensorError(f"entry {idx} must be 1 in this family")
        bits = 0
        for b, idx in enumerate(cls.FREE):
            v = T[idx]
            if v not in (1, -1):
                raise TensorError(f"entry {idx} must be ±1")
            bits |= (v == -1) << b
        return cls(bits)

    @classmethod
    def matches(cls, T: SymTensor) -> bool:
        try:
            cls.from_tensor(T)
        except TensorError:
            return False
        return True

    def binary(self) -> str:
        return format(self.bits, f"0{len(self.FREE)}b")

    def permuted(self, perm) -> "_Pattern":
        return type(self).from_tensor(self.to_tensor().permuted(perm))

    def negative_mixed(self) -> tuple[int, ...]:
        return tuple(a for a in (1, 2, 3) if self.sign(_mixed(a)) == -1)

    def __eq__(self, other):
        return type(self) is type(other) and self.bits == other.bits

    def __hash__(self):
        return hash((type(self).__name__, self.bits))

    def __repr__(self):
        return f"{type(self).__name__}({self.binary()})"


class StrictPattern(_Pattern):
    """Bits 0-2: t1122, t1133, t2233; bits 3-5: t1123, t1223, t1233."""

    FREE = ((1, 1, 2, 2), (1, 1, 3, 3), (2, 2, 3, 3), (1, 1, 2, 3), (1, 2, 2, 3), (1, 2, 3, 3))
    FIXED = tuple(tuple(sorted(_iiij(i, j))) for i, j in itertools.permutations((1, 2, 3), 2))


class CopPattern(_Pattern):
    """Bits 0-5: t1112, t1113, t1222, t2223, t1333, t2333; bits 6-8: t1123, t1223, t1233."""

    FREE = (
        (1, 1, 1, 2),
        (1, 1, 1, 3),
        (1, 2, 2, 2),
        (2, 2, 2, 3),
        (1, 3, 3, 3),
        (2, 3, 3, 3),
        (1, 1, 2, 3),
        (1, 2, 2, 3),
        (1, 2, 3, 3),
    )
    FIXED = ((1, 1, 2, 2), (1, 1, 3, 3), (2, 2, 3, 3))


FAMILIES: dict[str, type[_Pattern]] = {"strict": StrictPattern, "cop": CopPattern}


def _perm_tag(i: int, j: int, k: int) -> str:
    return f"perm({i}{j}{k})"


def _two_negative_roles(p: _Pattern) -> Iterator[tuple[int, int, int]]:
    """(i, j, k) with m_i = m_j = -1 and m_k = +1, both orders of i and j."""
    neg = p.negative_mixed()
    (k,) = {1, 2, 3} - set(neg)
    yield neg[0], neg[1], k
    yield neg[1], neg[0], k


def strict_rule(p: StrictPattern) -> tuple[bool, str]:
    """Strict copositivity of a strict-family pattern, with the case that decided it.

    at most one m_a = -1                       strictly copositive
    m_i = m_j = -1, m_k = 1                    strictly copositive iff t_iijj = 1
                                               or t_iikk = t_jjkk = 1
    all m_a = -1                               strictly copositive iff every t_iijj = 1
    """
    neg = p.negative_mixed()
    if len(neg) <= 1:
        return True, "Thm3.4(1)"
    if len(neg) == 3:
        return all(p.sign(_iijj(i, j)) == 1 for i, j in itertools.combinations((1, 2, 3), 2)), "Thm3.4(3)"
    i, j, k = next(_two_negative_roles(p))
    if p.sign(_iijj(i, j)) == 1:
        return True, f"Thm3.4(2)/{_perm_tag(i, j, k)}"
    if p.sign(_iijj(i, k)) == 1 and p.sign(_iijj(j, k)) == 1:
        return True, f"Thm3.4(2*)/{_perm_tag(i, j, k)}"
    return False, "Thm3.4(2)"


def strict_copositive_pm1(p: StrictPattern) -> bool:
    return strict_rule(p)[0]


def strict_copositive_pm1_as_printed(p: StrictPattern) -> bool:
    """Literal reading: with two -1 mixed entries at i, j, require t_iijj = 1 only."""
    neg = p.negative_mixed()
    if len(neg) <= 1:
        return True
    if len(neg) == 3:
        return all(p.sign(_iijj(i, j)) == 1 for i, j in itertools.combinations((1, 2, 3), 2))
    return p.sign(_iijj(*neg)) == 1


def cop_rule(p: CopPattern) -> tuple[bool, str]:
    """Copositivity of a copositive-family pattern, with the case that decided it.

    no m_a = -1                 copositive
    m_i = -1 only               copositive iff not t_iiij = t_iiik = -1
    m_i = m_j = -1, m_k = 1     with A = t_iiij, B = t_jjji, C = t_iiik, D = t_jjjk:
                                copositive iff none of the pairs (A, C), (B, D),
                                (A, B) is entirely -1
    all m_a = -1                copositive iff every t_iiij = 1
    """
    neg = p.negative_mixed()
    if not neg:
        return True, "Thm3.8(1)"
    if len(neg) == 3:
        ok = all(p.sign(_iiij(i, j)) == 1 for i, j in itertools.permutations((1, 2, 3), 2))
        return ok, "Thm3.8(4)"
    if len(neg) == 1:
        (i,) = neg
        j, k = sorted({1, 2, 3} - {i})
        ok = not (p.sign(_iiij(i, j)) == -1 and p.sign(_iiij(i, k)) == -1)
        return ok, f"Thm3.8(2)/{_perm_tag(i, j, k)}"
    i, j, k = next(_two_negative_roles(p))
    a, b = p.sign(_iiij(i, j)), p.sign(_iiij(j, i))
    c, d = p.sign(_iiij(i, k)), p.sign(_iiij(j, k))
    ok = not (a == c == -1) and not (b == d == -1) and not (a == b == -1)
    return ok, f"Thm3.8(3)/{_perm_tag(i, j, k)}"


def copositive_pm1(p: CopPattern) -> bool:
    return cop_rule(p)[0]


def copositive_pm1_as_printed(p: CopPattern) -> bool:
    """Literal reading of the case list.

    The two-negative case asks only for at least one +1 among {t_iiij, t_iiik}
    over the doubled indices i of the -1 mixed entries.
    """
    neg = p.negative_mixed()
    if not neg:
        return True
    if len(neg) == 3:
        return all(p.sign(_iiij(i, j)) == 1 for i, j in itertools.permutations((1, 2, 3), 2))
    if len(neg) == 1:
        (i,) = neg
        j, k = sorted({1, 2, 3} - {i})
        return p.sign(_iiij(i, j)) * p.sign(_iiij(i, k)) == -1 or (
            p.sign(_iiij(i, j)) == 1 and p.sign(_iiij(i, k)) == 1
        )
    pool = [p.sign(_iiij(i, j)) for i in neg for j in {1, 2, 3} - {i}]
    return 1 in pool


def _negative_witness(T: SymTensor) -> Optional[str]:
    pt = negative_point(T, DEFAULT_DENOMINATOR)
    return None if pt is None else f"x=({pt})"


def classify_pm1(T: SymTensor) -> Optional[Decision]:
    """Exact decision for a tensor in either ±1 family; ``None`` outside both."""
    if StrictPattern.matches(T):
        ok, tag = strict_rule(StrictPattern.from_tensor(T))
        if ok:
            return Decision(Verdict.STRICTLY_COPOSITIVE, tag)
        w = _negative_witness(T)
        if w is not None:
            return Decision(Verdict.NOT_COPOSITIVE, "Thm3.4(necessity)", w)
        # not strict, no negative lattice value: fall through to the other family
    if CopPattern.matches(T):
        ok, tag = cop_rule(CopPattern.from_tensor(T))
        if ok:
            return Decision(Verdict.COPOSITIVE, tag, strictness_known=False)
        return Decision(Verdict.NOT_COPOSITIVE, "Thm3.8(necessity)", _negative_witness(T))
    return None


# ---------------------------------------------------------------- general tensors
#
# Every bound is a fourth root of a product of diagonal entries:
#   sqrt(t_iiii t_jjjj)                   = (t_iiii^2 t_jjjj^2)^(1/4)
#   t_iiii^(3/4) t_jjjj^(1/4)             = (t_iiii^3 t_jjjj)^(1/4)
#   t_aaaa^(1/2) t_bbbb^(1/4) t_cccc^(1/4) = (t_aaaa^2 t_bbbb t_cccc)^(1/4)
# so each test is an exact comparison for rational input.


class _Bounds:
    def __init__(self, T: SymTensor):
        if (T.order, T.dim) != (4, 3):
            raise TensorError("expected a 4th-order 3-dimensional tensor")
        d = T.diagonal()
        if not all(v > 0 for v in d):
            raise TensorError("sufficient conditions need t_iiii > 0")
        self.T = T
        self.d = {i: d[i - 1] for i in (1, 2, 3)}

    def iijj(self, i, j, negate):
        return cmp_root(self.T[_iijj(i, j)], self.d[i] ** 2 * self.d[j] ** 2, negate=negate)

    def iiij(self, i, j, negate):
        return cmp_root(self.T[_iiij(i, j)], self.d[i] ** 3 * self.d[j], negate=negate)

    def mixed(self, a, negate):
        b, c = sorted({1, 2, 3} - {a})
        return cmp_root(self.T[_mixed(a)], self.d[a] ** 2 * self.d[b] * self.d[c], negate=negate)

    def all_iijj(self, negate):
        return all3(self.iijj(i, j, negate) for i, j in itertools.combinations((1, 2, 3), 2))

    def all_iiij(self, negate):
        return all3(self.iiij(i, j, negate) for i, j in itertools.permutations((1, 2, 3), 2))

    def mixed_pattern(self, low: Iterable[int]):
        """Mixed entries in ``low`` above their negative bound, the rest above the positive one."""
        low = set(low)
        return all3(self.mixed(a, negate=a in low) for a in (1, 2, 3))


def _first(branches: Iterable[tuple[str, Callable[[], Optional[bool]]]]) -> Optional[str]:
    for tag, test in branches:
        if test() is True:
            return tag
    return None


def strict_branch(T: SymTensor) -> Optional[str]:
    """Name of the first strict sufficient condition that holds, else ``None``."""
    B = _Bounds(T)
    branches = []
    for a, name in zip((1, 2, 3), "abc"):
        branches.append(
            (
                f"Thm3.9(1)({name})",
                lambda a=a: all3([B.mixed_pattern([a]), B.all_iijj(True), B.all_iiij(False)]),
            )
        )
    branches.append(
        ("Thm3.10", lambda: all3([B.mixed_pattern([1, 2, 3]), B.all_iijj(False), B.all_iiij(False)]))
    )
    for low, name in (((1, 2), "a"), ((2, 3), "b"), ((1, 3), "c")):
        branches.append(
            (
                f"Thm3.11(1)({name})",
                lambda low=low: all3([B.mixed_pattern(low), B.all_iijj(False), B.all_iiij(False)]),
            )
        )
    return _first(branches)


def _one_of_positive(B: _Bounds, pairs) -> Optional[bool]:
    return any3(B.iiij(i, j, False) for i, j in pairs)


def cop_branch(T: SymTensor) -> Optional[str]:
    """Name of the first copositivity sufficient condition that holds, else ``None``."""
    B = _Bounds(T)
    branches = []
    for a, name in zip((1, 2, 3), "abc"):
        b, c = sorted({1, 2, 3} - {a})
        branches.append(
            (
                f"Thm3.9(2)({name})",
                lambda a=a, b=b, c=c: all3(
                    [
                        B.mixed_pattern([a]),
                        B.all_iijj(False),
                        B.all_iiij(True),
                        _one_of_positive(B, [(a, b), (a, c)]),
                    ]
                ),
            )
        )
    for (i, j), name in (((1, 2), "a"), ((2, 3), "b"), ((1, 3), "c")):
        (k,) = {1, 2, 3} - {i, j}
        branches.append(
            (
                f"Thm3.11(2)({name})",
                lambda i=i, j=j, k=k: all3(
                    [
                        B.mixed_pattern([i, j]),
                        B.all_iijj(False),
                        B.all_iiij(True),
                        _one_of_positive(B, [(i, j), (i, k)]),
                        _one_of_positive(B, [(j, i), (j, k)]),
                        _one_of_positive(B, [(i, j), (j, i)]),
                    ]
                ),
            )
        )
    branches.append(
        ("Cor3.6", lambda: all3([B.mixed_pattern([]), B.all_iijj(False), B.all_iiij(True)]))
    )
    return _first(branches)


def sufficient_strict_general(T: SymTensor) -> bool:
    """True certifies strict copositivity; False is inconclusive."""
    return strict_branch(T) is not None


def sufficient_cop_general(T: SymTensor) -> bool:
    """True certifies copositivity; False is inconclusive."""
    return cop_branch(T) is not None


# ---------------------------------------------------------------- enumeration


@dataclass(frozen=True)
class FamilyRow:
    pattern: _Pattern
    analytic: bool
    oracle: Verdict

    @property
    def agrees(self) -> bool:
        if isinstance(self.pattern, StrictPattern):
            return self.analytic == (self.oracle is Verdict.STRICTLY_COPOSITIVE)
        return self.analytic == self.oracle.is_copositive

    def line(self) -> str:
        return f"{self.pattern.binary()} {int(self.analytic)} {self.oracle.value}"


def _row(pattern: _Pattern, denominator: int) -> FamilyRow:
    classifier = strict_copositive_pm1 if isinstance(pattern, StrictPattern) else copositive_pm1
    report = min_on_simplex(pattern.to_tensor(), denominator, refine=True, workers=1)
    return FamilyRow(pattern, classifier(pattern), report.verdict)


def enumerate_family(
    family: str, denominator: int = DEFAULT_DENOMINATOR, workers: Optional[int] = None
) -> list[FamilyRow]:
    """Every pattern of the family with its analytic and oracle verdicts, ascending by bits."""
    try:
        cls = FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r} (expected strict or cop)") from None
    patterns = list(cls.all())
    workers = default_workers() if workers is None else workers
    if workers <= 1:
        return [_row(p, denominator) for p in patterns]
    with ThreadPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(lambda p: _row(p, denominator), patterns))


def write_table(rows: Iterable[FamilyRow], fh) -> None:
    for r in rows:
        fh.write(r.line() + "\n")


def read_table(fh, family: str) -> list[tuple[_Pattern, bool, Verdict]]:
    cls = FAMILIES[family]
    out = []
    for lineno, line in enumerate(fh, start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            bits, analytic, verdict = line.split()
            out.append((cls(int(bits, 2)), analytic == "1", Verdict(verdict)))
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    return out
