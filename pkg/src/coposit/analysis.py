"""Route a tensor to the analytic test that covers its order and dimension."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import matrix, quartic2d, quartic3d
from .oracle import DEFAULT_DENOMINATOR, DEFAULT_TOL, OracleReport, min_on_simplex
from .tensor import SymTensor, normalize_diagonal
from .verdict import Decision, Verdict


def _diagonal_necessity(T: SymTensor) -> Optional[Decision]:
    for i, d in enumerate(T.diagonal(), start=1):
        if d < 0:
            return Decision(Verdict.NOT_COPOSITIVE, "diagonal", f"x=e{i} gives {d}")
    for i, d in enumerate(T.diagonal(), start=1):
        if d == 0:
            return Decision(Verdict.UNKNOWN, "diagonal", f"t{str(i) * T.order} = 0 is outside the criteria")
    return None


def _face(T: SymTensor, i: int, j: int) -> SymTensor:
    """Restriction of a 4th-order 3-dim tensor to the coordinate plane spanned by i < j."""
    return SymTensor.from_function(4, 2, lambda idx: T[tuple((i, j)[a - 1] for a in idx)])


def _decide_matrix(M: SymTensor, strict: bool) -> Decision:
    if M.dim == 2:
        return matrix.copositive_2x2(M, strict)
    if M.dim == 3:
        return matrix.copositive_3x3(M, strict)
    if M.dim == 1:
        v = M[1, 1]
        if v > 0:
            return Decision(Verdict.STRICTLY_COPOSITIVE, "diagonal")
        return Decision(Verdict.COPOSITIVE if v == 0 else Verdict.NOT_COPOSITIVE, "diagonal")
    pm1 = all(M[i, i] == 1 for i in range(1, M.dim + 1)) and all(
        M[i, j] in (1, -1) for i in range(1, M.dim + 1) for j in range(i + 1, M.dim + 1)
    )
    if pm1:
        return matrix.baston_pm1(M)
    return _diagonal_necessity(M) or Decision(Verdict.UNKNOWN, "none", "no criterion for this matrix")


def _decide_quartic3d(T: SymTensor) -> Decision:
    found = _diagonal_necessity(T)
    if found is not None:
        return found
    N = normalize_diagonal(T)
    d = quartic3d.classify_pm1(N)
    if d is not None:
        return d
    tag = quartic3d.strict_branch(T)
    if tag is not None:
        return Decision(Verdict.STRICTLY_COPOSITIVE, tag)
    tag = quartic3d.cop_branch(T)
    if tag is not None:
        return Decision(Verdict.COPOSITIVE, tag, strictness_known=False)
    for i, j in ((1, 2), (1, 3), (2, 3)):
        (k,) = {1, 2, 3} - {i, j}
        face = quartic2d.classify_2d(_face(T, i, j))
        if face.verdict is Verdict.NOT_COPOSITIVE:
            return Decision(Verdict.NOT_COPOSITIVE, "Thm1.3(face)", f"restriction to x{k}=0 is not copositive")
    return Decision(Verdict.UNKNOWN, "none", "no sufficient condition holds and every face is copositive")


def decide(T: SymTensor, strict: bool = False) -> Decision:
    """The analytic verdict; ``strict`` asks the matrix and cubic tests for their strict variant."""
    if T.order == 2:
        return _decide_matrix(T, strict)
    if T.order == 3:
        if T.dim == 2:
            return quartic2d.copositive_cubic_2d(quartic2d.Cubic2Coeffs.from_tensor(T), strict)
        return _diagonal_necessity(T) or Decision(Verdict.UNKNOWN, "none", "no criterion for 3rd-order 3-dim tensors")
    if T.dim == 2:
        return _diagonal_necessity(T) or quartic2d.classify_2d(T)
    return _decide_quartic3d(T)


@dataclass(frozen=True)
class RunReport:
    verdict: Verdict
    method: str
    analytic: Decision
    oracle: Optional[OracleReport] = None

    @property
    def strictness_known(self) -> bool:
        return self.method == "oracle" or self.analytic.strictness_known

    def exit_code(self, strict: bool) -> int:
        """0 yes, 1 no, 2 undecided; with ``strict`` the question is strict copositivity."""
        if self.verdict is Verdict.NOT_COPOSITIVE:
            return 1
        if self.verdict is Verdict.UNKNOWN:
            return 2
        if not strict or self.verdict is Verdict.STRICTLY_COPOSITIVE:
            return 0
        return 1 if self.strictness_known else 2


def run_check(
    T: SymTensor,
    strict: bool = False,
    use_oracle: bool = False,
    tol: float = DEFAULT_TOL,
    denominator: int = DEFAULT_DENOMINATOR,
) -> RunReport:
    """Analytic decision, optionally completed by the simplex oracle.

    The oracle replaces an undecided analytic verdict, and settles strictness
    when the analytic test certified copositivity only.
    """
    d = decide(T, strict)
    if not use_oracle:
        return RunReport(d.verdict, d.method, d)
    rep = min_on_simplex(T, denominator, refine=T.dim <= 3, tol=tol)
    if d.verdict is Verdict.UNKNOWN:
        return RunReport(rep.verdict, "oracle", d, rep)
    if d.verdict is Verdict.COPOSITIVE and not d.strictness_known and rep.verdict is not Verdict.UNKNOWN:
        if rep.verdict is Verdict.STRICTLY_COPOSITIVE:
            return RunReport(rep.verdict, "oracle", d, rep)
        if rep.verdict is Verdict.COPOSITIVE:
            return RunReport(Verdict.COPOSITIVE, "oracle", d, rep)
    return RunReport(d.verdict, d.method, d, rep)
