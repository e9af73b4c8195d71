"""Copositivity of symmetric matrices.

Baston's criterion covers matrices with unit diagonal and ±1 off-diagonal
entries of any size; the closed-form tests cover 2x2 and 3x3 matrices:

    m11, m22 >= 0,  m12 + sqrt(m11 m22) >= 0                           (2x2)

    m_ii >= 0,  alpha, beta, gamma >= 0,
    m12 sqrt(m33) + m13 sqrt(m22) + m23 sqrt(m11)
        + sqrt(m11 m22 m33) + sqrt(2 alpha beta gamma) >= 0              (3x3)

with alpha = m12 + sqrt(m11 m22), beta = m13 + sqrt(m11 m33),
gamma = m23 + sqrt(m22 m33), and every inequality strict for strict
copositivity.
"""

from __future__ import annotations

import itertools
import math
from typing import Optional

import sympy as sp

from .tensor import SymTensor, TensorError
from .verdict import Decision, Verdict, all3, cmp_root, is_exact, sign

_X = sp.Symbol("x")


def _require_matrix(M: SymTensor, dim: Optional[int] = None) -> None:
    if M.order != 2:
        raise TensorError("expected a symmetric matrix (order-2 tensor)")
    if dim is not None and M.dim != dim:
        raise TensorError(f"expected a {dim}x{dim} matrix, got {M.dim}x{M.dim}")


def baston_pm1(M: SymTensor) -> Decision:
    """Copositive iff no triple r<s<t has m_rs = m_rt = m_st = -1.

    The criterion does not separate strict from non-strict copositivity, so a
    positive answer carries ``strictness_known=False``.
    """
    _require_matrix(M)
    n = M.dim
    for i in range(1, n + 1):
        if M[i, i] != 1:
            raise TensorError(f"Baston criterion needs m_{i}{i} = 1")
        for j in range(i + 1, n + 1):
            if M[i, j] not in (1, -1):
                raise TensorError(f"Baston criterion needs m_{i}{j} = ±1")
    for r, s, t in itertools.combinations(range(1, n + 1), 3):
        if M[r, s] == M[r, t] == M[s, t] == -1:
            return Decision(Verdict.NOT_COPOSITIVE, "Thm1.1", f"triple ({r},{s},{t})")
    return Decision(Verdict.COPOSITIVE, "Thm1.1", strictness_known=False)


def _pair_condition(M: SymTensor, i: int, j: int, strict: bool) -> Optional[bool]:
    # m_ij + sqrt(m_ii m_jj) >= 0, i.e. m_ij >= -(m_ii m_jj)**(1/2)
    return cmp_root(M[i, j], M[i, i] * M[j, j], negate=True, strict=strict, k=2)


def _decide(checks, strict: bool, method: str) -> Decision:
    """``checks(strict)`` yields (name, outcome) pairs, stopping at the first failure."""
    strict_outcome = None
    if strict:
        strict_outcome, _ = _run(checks(True))
        if strict_outcome is True:
            return Decision(Verdict.STRICTLY_COPOSITIVE, method)
    outcome, failed = _run(checks(False))
    if outcome is True:
        return Decision(Verdict.COPOSITIVE, method, strictness_known=strict_outcome is False)
    if outcome is False:
        return Decision(Verdict.NOT_COPOSITIVE, method, f"{failed} fails")
    return Decision(Verdict.UNKNOWN, method, f"{failed} within tolerance")


def _run(checks):
    pending = None
    for name, ok in checks:
        if ok is False:
            return False, name
        if ok is None and pending is None:
            pending = name
    return (True, None) if pending is None else (None, pending)


def copositive_2x2(M: SymTensor, strict: bool = False) -> Decision:
    _require_matrix(M, 2)

    def checks(s):
        cmp = (lambda v: _gt0(v)) if s else (lambda v: _ge0(v))
        yield "m11", cmp(M[1, 1])
        yield "m22", cmp(M[2, 2])
        yield "alpha", _pair_condition(M, 1, 2, s)

    return _decide(checks, strict, "Thm1.2(2x2)")


def copositive_3x3(M: SymTensor, strict: bool = False) -> Decision:
    _require_matrix(M, 3)

    def checks(s):
        cmp = _gt0 if s else _ge0
        for i in (1, 2, 3):
            ok = cmp(M[i, i])
            yield f"m{i}{i}", ok
            if ok is not True:
                # square roots below need a nonnegative diagonal
                return
        names = {(1, 2): "alpha", (1, 3): "beta", (2, 3): "gamma"}
        results = [(names[p], _pair_condition(M, *p, s)) for p in names]
        yield from results
        if all3(r for _, r in results) is not True:
            return
        yield "final expression", _final_sign(M, s)

    return _decide(checks, strict, "Thm1.2(3x3)")


def final_expression(M: SymTensor) -> float:
    """m12 sqrt(m33) + m13 sqrt(m22) + m23 sqrt(m11) + sqrt(m11 m22 m33) + sqrt(2 alpha beta gamma)."""
    m = {(i, j): float(M[i, j]) for i in (1, 2, 3) for j in (1, 2, 3)}
    a = m[1, 2] + math.sqrt(m[1, 1] * m[2, 2])
    b = m[1, 3] + math.sqrt(m[1, 1] * m[3, 3])
    g = m[2, 3] + math.sqrt(m[2, 2] * m[3, 3])
    return (
        m[1, 2] * math.sqrt(m[3, 3])
        + m[1, 3] * math.sqrt(m[2, 2])
        + m[2, 3] * math.sqrt(m[1, 1])
        + math.sqrt(m[1, 1] * m[2, 2] * m[3, 3])
        + math.sqrt(max(2 * a * b * g, 0.0))
    )


def _final_sign(M: SymTensor, strict: bool) -> Optional[bool]:
    if M.is_exact:
        s = _algebraic_sign(_final_symbolic(M))
    else:
        s = sign(final_expression(M))
    if s is None:
        return None
    return s > 0 if strict else s >= 0


def _final_symbolic(M: SymTensor) -> sp.Expr:
    m = {(i, j): sp.Rational(M[i, j]) for i in (1, 2, 3) for j in (1, 2, 3)}
    a = m[1, 2] + sp.sqrt(m[1, 1] * m[2, 2])
    b = m[1, 3] + sp.sqrt(m[1, 1] * m[3, 3])
    g = m[2, 3] + sp.sqrt(m[2, 2] * m[3, 3])
    return (
        m[1, 2] * sp.sqrt(m[3, 3])
        + m[1, 3] * sp.sqrt(m[2, 2])
        + m[2, 3] * sp.sqrt(m[1, 1])
        + sp.sqrt(m[1, 1] * m[2, 2] * m[3, 3])
        + sp.sqrt(2 * a * b * g)
    )


def _algebraic_sign(expr: sp.Expr) -> int:
    """Exact sign of a real algebraic number built from radicals."""
    approx = sp.N(expr, 50)
    if abs(approx) > sp.Float("1e-30"):
        return 1 if approx > 0 else -1
    if sp.minimal_polynomial(expr, _X) == _X:
        return 0
    # nonzero but tiny: more digits settle it
    approx = sp.N(expr, 400)
    return 1 if approx > 0 else -1


def _ge0(v) -> Optional[bool]:
    s = sign(v)
    return None if s is None else s >= 0


def _gt0(v) -> Optional[bool]:
    s = sign(v)
    return None if s is None else s > 0


def quadratic_form(M: SymTensor, x) -> object:
    _require_matrix(M)
    total = 0
    n = M.dim
    exact = M.is_exact and is_exact(*x)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            v = M[i, j]
            total += (v if exact else float(v)) * x[i - 1] * x[j - 1]
    return total
