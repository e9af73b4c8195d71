from fractions import Fraction

from coposit.analysis import decide, run_check
from coposit.tensor import SymTensor, build_matrix
from coposit.verdict import Verdict

from .helpers import ALL_MIXED, all_iiij_negative_tensor, pm1_tensor, t1112_and_mixed_negative_tensor

ONES = SymTensor.constant(4, 3, 1)


def test_negative_diagonal_is_not_copositive():
    d = decide(ONES.replace({(2, 2, 2, 2): -1}))
    assert d.verdict is Verdict.NOT_COPOSITIVE and d.certificate == "x=e2 gives -1"


def test_pm1_families_route_to_their_rules():
    assert decide(pm1_tensor(ALL_MIXED)).verdict is Verdict.STRICTLY_COPOSITIVE
    d = decide(all_iiij_negative_tensor())
    assert d.verdict is Verdict.COPOSITIVE and not d.strictness_known
    assert decide(t1112_and_mixed_negative_tensor()).method == "Thm3.8(necessity)"


def test_scaled_pattern_is_classified_after_normalization():
    T = pm1_tensor(ALL_MIXED)
    scaled = SymTensor.from_function(4, 3, lambda k: T[k] * 3 ** k.count(2))
    assert decide(scaled).verdict is Verdict.STRICTLY_COPOSITIVE


def test_face_necessity():
    # x3 = 0 face is x1^4 - 6 x1^2 x2^2 + x2^4, negative at (1,1,0)
    T = SymTensor.constant(4, 3, 0).replace({(1, 1, 1, 1): 1, (2, 2, 2, 2): 1, (3, 3, 3, 3): 1, (1, 1, 2, 2): -1})
    d = decide(T)
    assert d.verdict is Verdict.NOT_COPOSITIVE
    assert d.method == "Thm1.3(face)"


def test_general_sufficient_condition_fires():
    T = ONES.replace({(1, 1, 2, 3): Fraction(-1, 2)}).scaled(2)
    assert decide(T).verdict is Verdict.STRICTLY_COPOSITIVE


def test_matrix_dispatch():
    assert decide(build_matrix([[1, -1], [-1, 1]])).method == "Thm1.2(2x2)"
    assert decide(build_matrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]]), strict=True).verdict is Verdict.STRICTLY_COPOSITIVE
    big = build_matrix([[1 if i == j else -1 for j in range(5)] for i in range(5)])
    assert decide(big).method == "Thm1.1"
    odd = build_matrix([[2 if i == j else 0 for j in range(4)] for i in range(4)])
    assert decide(odd).verdict is Verdict.UNKNOWN


def test_run_check_oracle_completes_unknown():
    odd = build_matrix([[2 if i == j else 0 for j in range(4)] for i in range(4)])
    r = run_check(odd, use_oracle=True)
    assert r.verdict is Verdict.STRICTLY_COPOSITIVE and r.method == "oracle"
    assert r.exit_code(strict=True) == 0


def test_exit_codes():
    r = run_check(all_iiij_negative_tensor())
    assert r.exit_code(strict=False) == 0 and r.exit_code(strict=True) == 2
    r = run_check(all_iiij_negative_tensor(), use_oracle=True)
    assert r.exit_code(strict=True) == 1
    assert run_check(t1112_and_mixed_negative_tensor()).exit_code(strict=False) == 1
