"""Ternary quartic inequalities obtained from the ±1 family classifications.

Each inequality is stored in two printed forms, a long monomial form and a
compact form, both reduced to coefficient vectors over the 15 quartic
monomials in canonical key order.  The residual is LHS - RHS.

The two printed forms do not always agree (see ``FORMS_DIFFER``); where they
differ, the form that actually holds is the authoritative one used by
``residual``.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np
import sympy as sp

from .tensor import SymTensor, canonical_keys, monomials, multiplicity

X1, X2, X3 = sp.symbols("x1 x2 x3")
_NS = {"x1": X1, "x2": X2, "x3": X3}

_S = "x1**4 + x2**4 + x3**4"
_Q = "6*x1**2*x2**2 + 6*x1**2*x3**2 + 6*x2**2*x3**2"
_P = "4*x1**3*x3 + 4*x1*x2**3 + 4*x1*x3**3 + 4*x2**3*x3 + 4*x2*x3**3 + 4*x1**3*x2"


class InequalityId(str, enum.Enum):
    T312_i = "T312_i"
    T312_ii = "T312_ii"
    T312_iii = "T312_iii"
    T312_iv = "T312_iv"
    T312_v = "T312_v"
    T312_vi = "T312_vi"
    T312_vii = "T312_vii"
    T313_a = "T313_a"
    T313_b = "T313_b"
    T313_c = "T313_c"
    T313_d = "T313_d"
    T314_e = "T314_e"
    T314_f = "T314_f"
    T314_g = "T314_g"

    @property
    def strict(self) -> bool:
        return self.value.startswith("T312")

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class _Printed:
    expanded_lhs: str
    expanded_rhs: str
    compact_lhs: str
    compact_rhs: str
    # stated equality set as directions on the orthant, e.g. (1, 1, 0) for x1 = x2, x3 = 0
    locus: tuple[tuple[int, int, int], ...] = ()


_TABLE: dict[InequalityId, _Printed] = {
    InequalityId.T312_i: _Printed(
        f"{_S} + {_Q} + {_P}",
        "12*x1**2*x2*x3 + 12*x1*x2**2*x3 + 12*x1*x2*x3**2",
        "(x1 + x2 + x3)**4",
        "24*x1*x2*x3*(x1 + x2 + x3)",
    ),
    InequalityId.T312_ii: _Printed(
        f"{_S} + {_P} + 12*x1*x2**2*x3 + 12*x1*x2*x3**2",
        f"{_Q} + 12*x1**2*x2*x3",
        "(x1 + x2 + x3)**4",
        "12*(x1**2*x2**2 + x1**2*x3**2 + x2**2*x3**2 + 2*x1**2*x2*x3)",
    ),
    InequalityId.T312_iii: _Printed(
        f"{_S} + {_P} + 12*x1*x2**2*x3 + 12*x1**2*x2*x3",
        f"{_Q} + 12*x1*x2*x3**2",
        "(x1 + x2 + x3)**4",
        "12*(x1**2*x2**2 + x1**2*x3**2 + x2**2*x3**2 + 2*x1*x2*x3**2)",
    ),
    InequalityId.T312_iv: _Printed(
        f"{_S} + {_P} + 12*x1**2*x2*x3 + 12*x1*x2*x3**2",
        f"{_Q} + 12*x1*x2**2*x3",
        "(x1 + x2 + x3)**4",
        "12*(x1**2*x2**2 + x1**2*x3**2 + x2**2*x3**2 + 2*x1*x2**2*x3)",
    ),
    InequalityId.T312_v: _Printed(
        f"{_S} + 6*x1**2*x3**2 + {_P} + 12*x1*x2**2*x3",
        "6*x1**2*x2**2 + 6*x2**2*x3**2 + 12*x1**2*x2*x3 + 12*x1*x2*x3**2",
        "(x1 - x2 + x3)**4",
        "12*(x1**2*x2**2 + x2**2*x3**2)",
    ),
    InequalityId.T312_vi: _Printed(
        f"{_S} + 6*x2**2*x3**2 + {_P} + 12*x1**2*x2*x3",
        "6*x1**2*x3**2 + 6*x1**2*x2**2 + 12*x1*x2**2*x3 + 12*x1*x2*x3**2",
        "(x2 - x1 + x3)**4",
        "12*(x1**2*x3**2 + x2**2*x1**2)",
    ),
    InequalityId.T312_vii: _Printed(
        f"{_S} + 6*x1**2*x2**2 + {_P} + 12*x1*x2*x3**2",
        "6*x1**2*x3**2 + 6*x2**2*x3**2 + 12*x1*x2**2*x3 + 12*x1**2*x2*x3",
        "(x1 + x2 - x3)**4",
        "12*(x1**2*x3**2 + x2**2*x3**2)",
    ),
    InequalityId.T313_a: _Printed(
        f"{_S} + {_Q} + 12*x1**2*x2*x3 + 12*x1*x2*x3**2 + 12*x1*x2**2*x3",
        _P,
        "(x1 + x2 + x3)**4",
        "8*(x1**3*x3 + x1*x2**3 + x2**3*x3 + x2*x3**3 + x1**3*x2 + x1*x3**3)",
        ((1, 1, 0), (1, 0, 1), (0, 1, 1)),
    ),
    InequalityId.T313_b: _Printed(
        f"{_S} + {_Q} + 12*x1**2*x2*x3 + 12*x1*x2*x3**2 + 4*x1*x2**3",
        "4*x1**3*x3 + 4*x1*x3**3 + 4*x2**3*x3 + 4*x2*x3**3 + 4*x1**3*x2 + 12*x1*x2**2*x3",
        "(x1 + x2 - x3)**4",
        "8*x1**2*x2*(x1 - 3*x3)",
        ((0, 1, 1), (1, 0, 1)),
    ),
    InequalityId.T313_c: _Printed(
        f"{_S} + {_Q} + 12*x1*x2**2*x3 + 12*x1*x2*x3**2 + 4*x1**3*x3",
        "4*x1*x2**3 + 4*x1*x3**3 + 4*x2**3*x3 + 4*x2*x3**3 + 4*x1**3*x2 + 12*x1**2*x2*x3",
        "(x1 - x2 + x3)**4",
        "8*x1*x3**2*(x3 - 3*x2)",
        ((1, 1, 0), (0, 1, 1)),
    ),
    InequalityId.T313_d: _Printed(
        f"{_S} + {_Q} + 12*x1*x2**2*x3 + 12*x1**2*x2*x3 + 4*x2*x3**3",
        "4*x1**3*x3 + 4*x1*x3**3 + 4*x2**3*x3 + 4*x2*x3**3 + 4*x1**3*x2 + 12*x1*x2*x3**2",
        "(x2 + x3 - x1)**4",
        "8*x2**2*x3*(x2 - 3*x1)",
        ((1, 1, 0), (1, 0, 1)),
    ),
    InequalityId.T314_e: _Printed(
        f"{_S} + {_Q} + 4*x1**3*x2 + 4*x2**3*x3 + 12*x1*x2*x3**2",
        "4*x1*x2**3 + 4*x1*x3**3 + 4*x2*x3**3 + 4*x1**3*x3 + 12*x1**2*x2*x3 + 12*x1*x2**2*x3",
        "(x1 + x2 - x3)**4",
        "8*(x1*x2**3 - x2**3*x3)",
        ((1, 0, 1),),
    ),
    InequalityId.T314_f: _Printed(
        f"{_S} + {_Q} + 4*x1*x3**3 + 4*x2**3*x3 + 12*x1**2*x2*x3",
        "4*x1**3*x2 + 4*x2*x3**3 + 4*x1*x2**3 + 4*x1**3*x3 + 12*x1*x2*x3**2 + 12*x1*x2**2*x3",
        "(x3 + x2 - x1)**4",
        "8*(x2*x3**3 - x1*x3**3)",
        ((1, 0, 1),),
    ),
    InequalityId.T314_g: _Printed(
        f"{_S} + {_Q} + 4*x2*x3**3 + 4*x1**3*x3 + 12*x1*x2**2*x3",
        "4*x1*x2**3 + 4*x1*x3**3 + 4*x1**3*x2 + 4*x2**3*x3 + 12*x1**2*x2*x3 + 12*x1*x2*x3**2",
        "(x1 + x3 - x2)**4",
        "8*(x1*x3**3 - x2*x3**3)",
        ((1, 1, 0),),
    ),
}

# Tags whose two printed forms are different polynomials, and the form that holds.
FORMS_DIFFER = {
    InequalityId.T312_v: "expanded",
    InequalityId.T312_vi: "expanded",
    InequalityId.T312_vii: "expanded",
    InequalityId.T313_d: "compact",
}


def parse_id(tag) -> InequalityId:
    try:
        return InequalityId(str(tag))
    except ValueError:
        raise ValueError(f"unknown inequality {tag!r}") from None


def _coefficients(expr: str) -> tuple[int, ...]:
    poly = sp.Poly(sp.expand(sp.sympify(expr, locals=_NS)), X1, X2, X3)
    if any(sum(m) != 4 for m in poly.monoms()):
        raise ValueError(f"not a quartic form: {expr}")
    out = []
    for key in canonical_keys(4, 3):
        exps = tuple(key.count(i) for i in range(3))
        out.append(int(poly.coeff_monomial(X1 ** exps[0] * X2 ** exps[1] * X3 ** exps[2])))
    return tuple(out)


@functools.lru_cache(maxsize=None)
def coefficients(tag, form: str) -> tuple[int, ...]:
    """Residual coefficients per canonical monomial for ``form`` in {expanded, compact}."""
    p = _TABLE[parse_id(tag)]
    if form == "expanded":
        return _coefficients(f"({p.expanded_lhs}) - ({p.expanded_rhs})")
    if form == "compact":
        return _coefficients(f"({p.compact_lhs}) - ({p.compact_rhs})")
    raise ValueError(f"unknown form {form!r}")


def authoritative_form(tag) -> str:
    return FORMS_DIFFER.get(parse_id(tag), "compact")


def forms_agree(tag) -> bool:
    """Coefficient comparison of the two printed forms."""
    return coefficients(tag, "expanded") == coefficients(tag, "compact")


def as_tensor(tag, form: Optional[str] = None) -> SymTensor:
    """The symmetric tensor whose form is the residual polynomial."""
    c = coefficients(tag, form or authoritative_form(tag))
    return SymTensor(4, 3, [Fraction(v, multiplicity(k)) for v, k in zip(c, canonical_keys(4, 3))])


def _check_point(x: Sequence) -> None:
    if len(x) != 3:
        raise ValueError("inequalities take three coordinates")
    if any(v < 0 for v in x):
        raise ValueError("coordinates must be nonnegative")


def _value(coeffs, x):
    total = 0
    for c, key in zip(coeffs, canonical_keys(4, 3)):
        if c:
            term = c
            for i in key:
                term *= x[i]
            total += term
    return total


def residual(tag, x: Sequence):
    """LHS - RHS of the authoritative form; exact for rational ``x``."""
    _check_point(x)
    return _value(coefficients(tag, authoritative_form(tag)), list(x))


def expanded_equals_compact(tag, x: Sequence) -> tuple:
    """Residuals of the long and the compact printed forms at ``x``."""
    _check_point(x)
    x = list(x)
    return _value(coefficients(tag, "expanded"), x), _value(coefficients(tag, "compact"), x)


def stated_locus(tag) -> tuple[tuple[int, int, int], ...]:
    p = _TABLE[parse_id(tag)]
    if not p.locus:
        raise ValueError(f"{tag} has no stated equality case")
    return p.locus


def residual_many(tag, X: np.ndarray) -> np.ndarray:
    """Residuals at each row of an integer (exact) or float array."""
    coeffs = coefficients(tag, authoritative_form(tag))
    M = monomials(np.asarray(X), 4)
    dtype = M.dtype if M.dtype != np.int64 else np.int64
    return M @ np.array(coeffs, dtype=dtype)


def sample_simplex(rng: np.random.Generator, n: int, denominator: int = 10_000) -> np.ndarray:
    """``n`` random integer points with coordinate sum ``denominator`` (simplex points times d)."""
    cuts = np.sort(rng.integers(0, denominator + 1, size=(n, 2)), axis=1)
    return np.column_stack([cuts[:, 0], cuts[:, 1] - cuts[:, 0], denominator - cuts[:, 1]]).astype(np.int64)


@dataclass(frozen=True)
class SignCheck:
    tag: InequalityId
    samples: int
    min_value: Fraction
    argmin: tuple[int, int, int]
    denominator: int

    @property
    def passed(self) -> bool:
        return self.min_value > 0 if self.tag.strict else self.min_value >= 0


def sign_check(tag, samples: int = 100_000, seed: int = 0, denominator: int = 10_000) -> SignCheck:
    """Exact residual sign over random simplex points: > 0 for the strict ones, >= 0 otherwise."""
    tag = parse_id(tag)
    rng = np.random.default_rng([seed, list(InequalityId).index(tag)])
    X = sample_simplex(rng, samples, denominator)
    vals = residual_many(tag, X)
    i = int(np.argmin(vals))
    return SignCheck(
        tag, samples, Fraction(int(vals[i]), denominator**4), tuple(int(v) for v in X[i]), denominator
    )


@dataclass(frozen=True)
class LocusCheck:
    tag: InequalityId
    locus_points: int
    locus_failures: tuple[tuple[Fraction, ...], ...]
    off_locus_points: int
    off_locus_failures: tuple[tuple[Fraction, ...], ...]

    @property
    def passed(self) -> bool:
        return not self.locus_failures and not self.off_locus_failures


def equality_locus_check(
    tag, locus_points: int = 100, off_locus: int = 10_000, seed: int = 0, margin: float = 1e-2
) -> LocusCheck:
    """Exact zeros along each stated family, and positive residuals away from it.

    Along a family with direction ``v`` the points ``t v`` for t = 1/100..100/100
    are checked (``locus_points`` values of t).  Off-locus points are random
    simplex points whose max-norm distance to every normalized locus point is
    at least ``margin``.
    """
    tag = parse_id(tag)
    locus = stated_locus(tag)
    on_fail = []
    for v in locus:
        for s in range(1, locus_points + 1):
            t = Fraction(s, locus_points)
            x = tuple(t * c for c in v)
            if residual(tag, x) != 0:
                on_fail.append(x)
    rng = np.random.default_rng([seed, 7, list(InequalityId).index(tag)])
    d = 10_000
    centers = np.array([np.array(v, dtype=float) / sum(v) for v in locus])
    kept: list[np.ndarray] = []
    while sum(len(k) for k in kept) < off_locus:
        X = sample_simplex(rng, off_locus, d)
        dist = np.abs(X[:, None, :] / d - centers[None, :, :]).max(axis=2).min(axis=1)
        kept.append(X[dist >= margin])
    X = np.concatenate(kept)[:off_locus]
    vals = residual_many(tag, X)
    off_fail = tuple(tuple(Fraction(int(c), d) for c in X[i]) for i in np.flatnonzero(vals <= 0))
    return LocusCheck(tag, locus_points * len(locus), tuple(on_fail), len(X), off_fail)


def zero_directions(tag, denominator: int = 60) -> list[tuple[Fraction, ...]]:
    """Lattice points of the simplex where the residual vanishes exactly."""
    from .oracle import lattice

    pts = lattice(3, denominator)
    vals = residual_many(tag, pts)
    return [tuple(Fraction(int(c), denominator) for c in pts[i]) for i in np.flatnonzero(vals == 0)]


__all__ = [
    "InequalityId",
    "FORMS_DIFFER",
    "as_tensor",
    "authoritative_form",
    "coefficients",
    "equality_locus_check",
    "expanded_equals_compact",
    "forms_agree",
    "parse_id",
    "residual",
    "residual_many",
    "sign_check",
    "stated_locus",
    "zero_directions",
]
