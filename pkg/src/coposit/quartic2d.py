"""Binary cubic and quartic forms on the nonnegative quadrant.

After diagonal normalization a 4th-order 2-dimensional tensor is described by
three numbers,

    f(x1, x2) = x1^4 + 4a x1^3 x2 + 6b x1^2 x2^2 + 4c x1 x2^3 + x2^4,

i.e. a = t1112, b = t1122, c = t1222.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .tensor import SymTensor, TensorError, normalize_diagonal
from .verdict import BAND, Decision, Verdict, all3, any3, cmp_root, ge, gt, is_exact, to_number


@dataclass(frozen=True)
class Quartic2Coeffs:
    a: object
    b: object
    c: object

    def __post_init__(self):
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, to_number(getattr(self, name)))

    @classmethod
    def from_tensor(cls, T: SymTensor) -> "Quartic2Coeffs":
        if (T.order, T.dim) != (4, 2) or T[1, 1, 1, 1] != 1 or T[2, 2, 2, 2] != 1:
            raise TensorError("expected a 4th-order 2-dim tensor with unit diagonal")
        return cls(T[1, 1, 1, 2], T[1, 1, 2, 2], T[1, 2, 2, 2])

    def to_tensor(self) -> SymTensor:
        return SymTensor(4, 2, [1, self.a, self.b, self.c, 1])

    def __call__(self, x1, x2):
        return x1**4 + 4 * self.a * x1**3 * x2 + 6 * self.b * x1**2 * x2**2 + 4 * self.c * x1 * x2**3 + x2**4


@dataclass(frozen=True)
class Cubic2Coeffs:
    t111: object
    t112: object
    t122: object
    t222: object

    def __post_init__(self):
        for name in ("t111", "t112", "t122", "t222"):
            object.__setattr__(self, name, to_number(getattr(self, name)))

    @classmethod
    def from_tensor(cls, T: SymTensor) -> "Cubic2Coeffs":
        if (T.order, T.dim) != (3, 2):
            raise TensorError("expected a 3rd-order 2-dim tensor")
        return cls(T[1, 1, 1], T[1, 1, 2], T[1, 2, 2], T[2, 2, 2])

    def __call__(self, x1, x2):
        return (
            self.t111 * x1**3 + 3 * self.t112 * x1**2 * x2 + 3 * self.t122 * x1 * x2**2 + self.t222 * x2**3
        )


def discriminant_delta_prime(q: Quartic2Coeffs):
    """(1 - 4ac + 3b^2)^3 - 27 (b + 2abc - b^3 - c^2 - a^2)^2."""
    a, b, c = q.a, q.b, q.c
    return (1 - 4 * a * c + 3 * b * b) ** 3 - 27 * (b + 2 * a * b * c - b**3 - c * c - a * a) ** 2


def discriminant_delta(T: SymTensor):
    """The unnormalized discriminant; equals 4 * 12**3 * Delta' when the diagonal is 1."""
    t1111, t1112, t1122, t1222, t2222 = (T[k] for k in _KEYS)
    return 4 * 12**3 * (t1111 * t2222 - 4 * t1112 * t1222 + 3 * t1122**2) ** 3 - 72**2 * 6**2 * (
        t1111 * t1122 * t2222 + 2 * t1112 * t1122 * t1222 - t1122**3 - t1112**2 * t2222 - t1111 * t1222**2
    ) ** 2


_KEYS = ((1, 1, 1, 1), (1, 1, 1, 2), (1, 1, 2, 2), (1, 2, 2, 2), (2, 2, 2, 2))


def _sqrt_ge(lhs, radicand, negate=False) -> Optional[bool]:
    """``lhs >= ±sqrt(radicand)``; False when the radicand is negative (branch not applicable)."""
    if is_exact(radicand):
        if radicand < 0:
            return False
    elif float(radicand) < -BAND:
        return False
    elif float(radicand) <= BAND:
        radicand = 0.0
    return cmp_root(lhs, radicand, negate=negate, k=2)


def _abs_le_sqrt(v, radicand) -> Optional[bool]:
    # |v| <= sqrt(r)  <=>  v >= -sqrt(r) and -v >= -sqrt(r)
    return all3([_sqrt_ge(v, radicand, negate=True), _sqrt_ge(-v, radicand, negate=True)])


def lemma_branches(q: Quartic2Coeffs) -> dict[str, Optional[bool]]:
    """Outcome of each condition group, evaluated in the order (2), (1), (3)."""
    a, b, c = q.a, q.b, q.c
    out: dict[str, Optional[bool]] = {}
    out["2"] = all3([ge(a), ge(c), ge(1 + 3 * b)])
    d = discriminant_delta_prime(q)
    out["1"] = all3([ge(0, d), gt(a + c)])
    if out["2"] is True or out["1"] is True:
        return out
    if (is_exact(b) and 6 * b + 2 < 0) or (not is_exact(b) and float(6 * b + 2) < -BAND):
        out["3"] = False
        return out
    i = all3([ge(3 * b, -1), ge(3, 3 * b)])
    ii = all3([gt(b, 1), _sqrt_ge(a + c, 6 * b - 2, negate=True)]) if ge(b, 1) is not False else False
    out["3"] = all3([ge(d), _abs_le_sqrt(a - c, 6 * b + 2), any3([i, ii])])
    return out


def copositive_quartic_2d_normalized(q: Quartic2Coeffs) -> Decision:
    """Copositivity of x1^4 + 4a x1^3x2 + 6b x1^2x2^2 + 4c x1x2^3 + x2^4 on the quadrant.

    Copositive iff one of
      (1) Delta' <= 0 and a + c > 0,
      (2) a >= 0, c >= 0 and 1 + 3b >= 0,
      (3) Delta' >= 0, |a - c| <= sqrt(6b + 2) and either -1 <= 3b <= 3,
          or b > 1 and a + c >= -sqrt(6b - 2).
    Strictness is not decided here.
    """
    branches = lemma_branches(q)
    for name in ("2", "1", "3"):
        if branches.get(name) is True:
            return Decision(Verdict.COPOSITIVE, f"Lem2.1({name})", strictness_known=False)
    if any(v is None for v in branches.values()):
        return Decision(Verdict.UNKNOWN, "Lem2.1", "condition within tolerance", strictness_known=False)
    return Decision(Verdict.NOT_COPOSITIVE, "Lem2.1", "no condition group holds")


def _require_quartic2(T: SymTensor) -> None:
    if (T.order, T.dim) != (4, 2):
        raise TensorError("expected a 4th-order 2-dimensional tensor")
    if not (T[1, 1, 1, 1] > 0 and T[2, 2, 2, 2] > 0):
        raise TensorError("needs t1111 > 0 and t2222 > 0")


def copositive_quartic_2d(T: SymTensor) -> Decision:
    _require_quartic2(T)
    q = Quartic2Coeffs.from_tensor(normalize_diagonal(T))
    d = copositive_quartic_2d_normalized(q)
    return Decision(d.verdict, "Thm1.3/" + d.method, d.certificate, d.strictness_known)


def copositive_pm1_2d(q: Quartic2Coeffs) -> bool:
    """For a, b, c in {-1, 1}: copositive iff b = 1 or a = c = 1."""
    if any(v not in (-1, 1) for v in (q.a, q.b, q.c)):
        raise ValueError("entries must be ±1")
    return q.b == 1 or (q.a == 1 and q.c == 1)


def sufficient_2d(T: SymTensor, strict: bool) -> bool:
    """Root-bound sufficient conditions; ``False`` means inconclusive.

    strict:      t1112 >= t1111^(3/4) t2222^(1/4), t1122 >= -sqrt(t1111 t2222),
                 t1222 >= t1111^(1/4) t2222^(3/4)
    non-strict:  t1112 >= -t1111^(3/4) t2222^(1/4), t1122 >= sqrt(t1111 t2222),
                 t1222 >= -t1111^(1/4) t2222^(3/4)
    """
    _require_quartic2(T)
    p, q_ = T[1, 1, 1, 1], T[2, 2, 2, 2]
    checks = [
        cmp_root(T[1, 1, 1, 2], p**3 * q_, negate=not strict),
        cmp_root(T[1, 1, 2, 2], p**2 * q_**2, negate=strict),
        cmp_root(T[1, 2, 2, 2], p * q_**3, negate=not strict),
    ]
    return all3(checks) is True


def cubic_resultant(c3: Cubic2Coeffs):
    """4 t111 t122^3 + 4 t112^3 t222 + t111^2 t222^2 - 6 t111 t112 t122 t222 - 3 t112^2 t122^2."""
    a, p, q, d = c3.t111, c3.t112, c3.t122, c3.t222
    return 4 * a * q**3 + 4 * p**3 * d + a * a * d * d - 6 * a * p * q * d - 3 * p * p * q * q


def copositive_cubic_2d(c3: Cubic2Coeffs, strict: bool = False) -> Decision:
    """t111 >= 0, t222 >= 0 and either t112, t122 >= 0 or the resultant is >= 0
    (strict: t111, t222 and the resultant > 0).

    On the boundary t111 = 0 the resultant loses its information (it is 0 for
    any t122 when t112 = 0), so there the resultant branch also needs t112 > 0;
    likewise t122 > 0 when t222 = 0.
    """
    r = cubic_resultant(c3)

    def test(s):
        cmp = gt if s else ge
        via_resultant = all3(
            [cmp(r), any3([gt(c3.t111), gt(c3.t112)]), any3([gt(c3.t222), gt(c3.t122)])]
        )
        return all3([cmp(c3.t111), cmp(c3.t222), any3([all3([ge(c3.t112), ge(c3.t122)]), via_resultant])])

    strict_outcome = None
    if strict:
        strict_outcome = test(True)
        if strict_outcome is True:
            return Decision(Verdict.STRICTLY_COPOSITIVE, "Thm1.3(cubic)")
    outcome = test(False)
    if outcome is True:
        return Decision(Verdict.COPOSITIVE, "Thm1.3(cubic)", strictness_known=strict_outcome is False)
    if outcome is False:
        return Decision(Verdict.NOT_COPOSITIVE, "Thm1.3(cubic)")
    return Decision(Verdict.UNKNOWN, "Thm1.3(cubic)", "condition within tolerance")


def classify_2d(T: SymTensor, strict: bool = False) -> Decision:
    """Best available decision for a 4th-order 2-dim tensor with positive diagonal."""
    _require_quartic2(T)
    if sufficient_2d(T, strict=True):
        return Decision(Verdict.STRICTLY_COPOSITIVE, "Cor2.2(1)")
    if T[1, 1, 1, 1] == 1 and T[2, 2, 2, 2] == 1 and all(
        T[k] in (-1, 1) for k in _KEYS[1:4]
    ):
        q = Quartic2Coeffs.from_tensor(T)
        if copositive_pm1_2d(q):
            return Decision(Verdict.COPOSITIVE, "Lem2.2", strictness_known=False)
        return Decision(Verdict.NOT_COPOSITIVE, "Lem2.2", "x=(1,1)")
    if sufficient_2d(T, strict=False):
        return Decision(Verdict.COPOSITIVE, "Cor2.2(2)", strictness_known=False)
    return copositive_quartic_2d(T)


def quartic_root_scaling(T: SymTensor) -> tuple[float, float]:
    return tuple(float(T[(i,) * 4]) ** 0.25 for i in (1, 2))


def from_normalized(q: Quartic2Coeffs, t1111, t2222) -> SymTensor:
    """Tensor with the given diagonal whose normalization is ``q`` (inverts the scaling)."""
    r1 = _fourth_root(t1111)
    r2 = _fourth_root(t2222)
    return SymTensor(
        4, 2, [t1111, q.a * r1**3 * r2, q.b * r1**2 * r2**2, q.c * r1 * r2**3, t2222]
    )


def _fourth_root(v):
    if is_exact(v):
        f = Fraction(v)
        n, d = math.isqrt(math.isqrt(f.numerator)), math.isqrt(math.isqrt(f.denominator))
        if n**4 == f.numerator and d**4 == f.denominator:
            return Fraction(n, d)
    return float(v) ** 0.25
