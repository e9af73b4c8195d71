import itertools
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from coposit.analysis import decide
from coposit.oracle import min_on_simplex
from coposit.quartic3d import (
    CopPattern,
    StrictPattern,
    classify_pm1,
    cop_branch,
    copositive_pm1,
    copositive_pm1_as_printed,
    enumerate_family,
    read_table,
    strict_branch,
    strict_copositive_pm1,
    strict_copositive_pm1_as_printed,
    strict_rule,
    sufficient_cop_general,
    sufficient_strict_general,
)
from coposit.tensor import SymTensor, TensorError, evaluate
from coposit.verdict import Verdict

from .helpers import (
    ALL_IIIJ,
    ALL_MIXED,
    all_iiij_negative_tensor,
    iiij_and_t1123_negative_tensor,
    mixed_and_t2233_negative_tensor,
    pm1_tensor,
    t1112_and_mixed_negative_tensor,
)

FIXTURES = Path(__file__).parent / "fixtures"
PERMS = list(itertools.permutations((1, 2, 3)))


def strict_pattern(negative):
    return StrictPattern.from_tensor(pm1_tensor(negative))


def cop_pattern(negative):
    return CopPattern.from_tensor(pm1_tensor(negative))


def test_family_sizes():
    assert StrictPattern.size() == 64 and len(list(StrictPattern.all())) == 64
    assert CopPattern.size() == 512 and len(list(CopPattern.all())) == 512


def test_pattern_round_trip():
    for p in CopPattern.all():
        assert CopPattern.from_tensor(p.to_tensor()) == p
    for p in StrictPattern.all():
        assert StrictPattern.from_tensor(p.to_tensor()) == p


def test_pattern_bit_order():
    assert StrictPattern(0b000001).sign((1, 1, 2, 2)) == -1
    assert StrictPattern(0b100000).sign((1, 2, 3, 3)) == -1
    assert CopPattern(0b000000001).sign((1, 1, 1, 2)) == -1
    assert CopPattern(0b100000000).sign((1, 2, 3, 3)) == -1
    assert StrictPattern(1).binary() == "000001"


def test_from_tensor_rejects_outside_family():
    with pytest.raises(TensorError):
        StrictPattern.from_tensor(pm1_tensor([(1, 1, 1, 2)]))
    assert not CopPattern.matches(pm1_tensor([(1, 1, 2, 2)]))


def test_strict_examples():
    assert strict_copositive_pm1(strict_pattern([(1, 1, 2, 3)]))
    assert strict_copositive_pm1(strict_pattern(ALL_MIXED))
    p = strict_pattern(ALL_MIXED + [(2, 2, 3, 3)])
    assert not strict_copositive_pm1(p)
    assert evaluate(mixed_and_t2233_negative_tensor(), (1, 1, 1)) == -3


def test_strict_rule_tags():
    assert strict_rule(StrictPattern(0)) == (True, "Thm3.4(1)")
    assert strict_rule(strict_pattern(ALL_MIXED))[1] == "Thm3.4(3)"


def test_cop_examples():
    assert copositive_pm1(CopPattern(0))
    assert copositive_pm1(cop_pattern(ALL_MIXED))
    assert not copositive_pm1(cop_pattern(ALL_IIIJ + [(1, 1, 2, 3)]))
    assert evaluate(iiij_and_t1123_negative_tensor(), (3, 1, 1)) == -87
    assert not copositive_pm1(cop_pattern([(1, 1, 1, 2)] + ALL_MIXED))
    assert evaluate(t1112_and_mixed_negative_tensor(), (4, 3, 2)) == -159


def test_all_iiij_negative_tensor_is_copositive_not_strict():
    T = all_iiij_negative_tensor()
    assert copositive_pm1(CopPattern.from_tensor(T))
    assert min_on_simplex(T).exact_min == 0


def _fixture(name, family):
    with open(FIXTURES / name) as fh:
        return read_table(fh, family)


def test_strict_fixture_matches_classifier():
    rows = _fixture("strict_family.txt", "strict")
    assert len(rows) == 64
    for p, analytic, oracle in rows:
        assert strict_copositive_pm1(p) == analytic == (oracle is Verdict.STRICTLY_COPOSITIVE)


def test_cop_fixture_matches_classifier():
    rows = _fixture("cop_family.txt", "cop")
    assert len(rows) == 512
    for p, analytic, oracle in rows:
        assert copositive_pm1(p) == analytic == oracle.is_copositive


def test_fixture_oracle_counts():
    strict = [v for _, _, v in _fixture("strict_family.txt", "strict")]
    cop = [v for _, _, v in _fixture("cop_family.txt", "cop")]
    assert strict.count(Verdict.STRICTLY_COPOSITIVE) == 48
    assert strict.count(Verdict.NOT_COPOSITIVE) == 16
    assert (cop.count(Verdict.STRICTLY_COPOSITIVE), cop.count(Verdict.COPOSITIVE)) == (163, 142)
    assert cop.count(Verdict.NOT_COPOSITIVE) == 207


def test_as_printed_strict_mismatches():
    bad = [p.bits for p in StrictPattern.all() if strict_copositive_pm1_as_printed(p) != strict_copositive_pm1(p)]
    assert bad == [25, 42, 52]


def test_as_printed_cop_mismatches():
    bad = [p.bits for p in CopPattern.all() if copositive_pm1_as_printed(p) != copositive_pm1(p)]
    assert len(bad) == 84
    assert bad[:3] == [195, 197, 199]


@pytest.mark.parametrize("perm", PERMS)
def test_strict_permutation_invariance(perm):
    for p in StrictPattern.all():
        assert strict_copositive_pm1(p.permuted(perm)) == strict_copositive_pm1(p)


@pytest.mark.parametrize("perm", PERMS)
def test_cop_permutation_invariance(perm):
    for p in CopPattern.all():
        assert copositive_pm1(p.permuted(perm)) == copositive_pm1(p)


def test_strict_family_row_is_cop_family_row_when_iiij_positive():
    # the two families meet where every fixed entry and every t_iiij is +1
    for p in StrictPattern.all():
        T = p.to_tensor()
        if CopPattern.matches(T) and strict_copositive_pm1(p):
            assert copositive_pm1(CopPattern.from_tensor(T))


def test_classify_pm1_necessity_witness():
    d = classify_pm1(mixed_and_t2233_negative_tensor())
    assert d.verdict is Verdict.NOT_COPOSITIVE
    assert d.method == "Thm3.4(necessity)"
    assert d.certificate.startswith("x=(")


def test_classify_pm1_outside_families():
    assert classify_pm1(pm1_tensor([(1, 1, 1, 2), (1, 1, 2, 2)])) is None


def test_sufficient_strict_examples():
    assert strict_branch(SymTensor.constant(4, 3, 1)).startswith("Thm3.9(1)")
    T = pm1_tensor(ALL_MIXED)
    assert strict_branch(T) == "Thm3.10"
    assert not sufficient_strict_general(SymTensor.constant(4, 3, 1).replace({(2, 2, 3, 3): -1.5}))


def test_sufficient_cop_examples():
    T = all_iiij_negative_tensor()
    assert cop_branch(T) == "Cor3.6"
    # x1 -> 2 x1, so t1111 = 16
    scaled = SymTensor.from_function(4, 3, lambda k: T[k] * 2 ** k.count(1))
    assert scaled[1, 1, 1, 1] == 16
    assert sufficient_cop_general(scaled)
    assert not sufficient_cop_general(pm1_tensor(ALL_IIIJ + [(1, 1, 2, 2), (1, 1, 3, 3), (2, 2, 3, 3)]))


def test_sufficient_needs_positive_diagonal():
    with pytest.raises(TensorError):
        sufficient_cop_general(SymTensor.constant(4, 3, 1).replace({(1, 1, 1, 1): 0}))


def test_all_mixed_negative_dominance():
    # entries above the all-mixed-negative pattern stay strictly copositive
    T = pm1_tensor(ALL_MIXED).replace({(1, 1, 2, 3): Fraction(-1, 2), (1, 1, 2, 2): 3})
    assert sufficient_strict_general(T)
    assert min_on_simplex(T).min_value > 0


def test_monotone_soundness():
    rng = np.random.default_rng(33)
    for p in CopPattern.all():
        if not copositive_pm1(p) or rng.random() > 0.3:
            continue
        T = p.to_tensor()
        bump = rng.uniform(0, 1, 15)
        bumped = SymTensor(4, 3, [v + float(b) for v, b in zip(T.values, bump)])
        assert min_on_simplex(bumped, 30).verdict.is_copositive


def test_normalization_invariance():
    rng = np.random.default_rng(8)
    for p in itertools.islice(CopPattern.all(), 0, 512, 17):
        T = p.to_tensor()
        r = [Fraction(int(v), 2) for v in rng.integers(1, 7, 3)]
        scaled = SymTensor.from_function(4, 3, lambda k: T[k] * r[k[0] - 1] * r[k[1] - 1] * r[k[2] - 1] * r[k[3] - 1])
        assert decide(scaled).verdict.is_copositive == copositive_pm1(p)


def test_enumerate_unknown_family():
    with pytest.raises(ValueError):
        enumerate_family("bogus")


def test_enumerate_strict_agrees():
    rows = enumerate_family("strict")
    assert len(rows) == 64 and all(r.agrees for r in rows)
    assert [r.line() for r in rows] == (FIXTURES / "strict_family.txt").read_text().splitlines()
