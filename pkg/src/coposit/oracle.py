"""Brute-force ground truth: minimize the form over the standard simplex.

Every lattice point ``k / d`` with ``sum(k) = d`` is evaluated.  For tensors
with rational entries the form is scaled to integer coefficients and evaluated
at the integer vector ``k``; by homogeneity its sign equals the sign at
``k / d``, so lattice minima are exact rationals.  An optional float refinement
then searches shrinking neighbourhoods of the best lattice points.

This is a numerical oracle, not a certified global minimizer: a negative exact
lattice value proves non-copositivity, everything else is evidence.
"""

from __future__ import annotations

import functools
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .tensor import (
    SymTensor,
    TensorError,
    evaluate,
    gradient_form,
    monomials,
    multiplicities,
)
from .verdict import Verdict

DEFAULT_DENOMINATOR = 60
DEFAULT_TOL = 1e-7
REFINE_STEPS = 30
REFINE_POINTS = 11
REFINE_STARTS = 5
MAX_LATTICE = 5_000_000


@dataclass(frozen=True)
class SimplexPoint:
    numerators: tuple[int, ...]
    denominator: int

    def __post_init__(self):
        if self.denominator < 1 or any(k < 0 for k in self.numerators):
            raise ValueError("simplex point needs nonnegative numerators and a positive denominator")
        if sum(self.numerators) != self.denominator:
            raise ValueError(f"numerators {self.numerators} do not sum to {self.denominator}")

    @property
    def coords(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(k, self.denominator) for k in self.numerators)

    def as_float(self) -> np.ndarray:
        return np.array(self.numerators, dtype=float) / self.denominator

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.coords)


@dataclass(frozen=True)
class OracleReport:
    min_value: float
    exact_min: Optional[Fraction]
    argmin: SimplexPoint
    verdict: Verdict
    witness: Optional[tuple[int, object]]
    grid_denominator: int
    refined: bool
    refined_min: Optional[float] = None
    refined_point: Optional[tuple[float, ...]] = None

    @property
    def exact(self) -> bool:
        return self.exact_min is not None


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("COPOSIT_THREADS", "1")))
    except ValueError:
        return 1


@functools.lru_cache(maxsize=256)
def lattice(dim: int, denominator: int) -> np.ndarray:
    """All nonnegative integer vectors of length ``dim`` summing to ``denominator``, lexicographic."""
    if dim == 1:
        return np.array([[denominator]], dtype=np.int64)
    if dim == 2:
        a = np.arange(denominator + 1, dtype=np.int64)
        out = np.column_stack([a, denominator - a])
        out.setflags(write=False)
        return out
    blocks = []
    for a in range(denominator + 1):
        rest = lattice(dim - 1, denominator - a)
        blocks.append(np.column_stack([np.full(len(rest), a, dtype=np.int64), rest]))
    out = np.concatenate(blocks)
    out.setflags(write=False)
    return out


def integer_coefficients(T: SymTensor) -> tuple[list[int], int]:
    """Integer multiples of ``mult * t`` for each key, and the common scale they carry."""
    if not T.is_exact:
        raise TensorError("integer coefficients need rational entries")
    fr = [Fraction(v) for v in T.values]
    scale = math.lcm(*(f.denominator for f in fr))
    coeffs = [int(m * f * scale) for m, f in zip(multiplicities(T.order, T.dim), fr)]
    return coeffs, scale


def _lattice_values(T: SymTensor, pts: np.ndarray):
    """Form values at integer lattice vectors: exact ints for rational tensors, floats otherwise."""
    order = T.order
    if T.is_exact:
        coeffs, scale = integer_coefficients(T)
        d = int(pts[0].sum()) if len(pts) else 0
        bound = max((abs(c) for c in coeffs), default=0) * len(coeffs) * max(d, 1) ** order
        if bound < 2**62:
            return monomials(pts, order) @ np.array(coeffs, dtype=np.int64), scale
        M = monomials(pts.astype(object), order)
        return M.dot(np.array(coeffs, dtype=object)), scale
    coeffs = np.array([m * float(v) for m, v in zip(multiplicities(order, T.dim), T.values)])
    return monomials(pts.astype(float), order) @ coeffs, None


def _chunk_min(T: SymTensor, pts: np.ndarray, offset: int):
    if T.is_exact:
        coeffs, scale = integer_coefficients(T)
        d = int(pts[0].sum())
        size = sum(abs(c) for c in coeffs) * max(d, 1) ** T.order
        if size >= 2**62:
            # Float screen, then exact values only where the minimum can be:
            # the float error is far below 1e-12 * size at every point.
            fvals = monomials(pts.astype(float), T.order) @ np.array(coeffs, dtype=float)
            cand = np.flatnonzero(fvals <= fvals.min() + 2e-12 * size)
            exact = monomials(pts[cand].astype(object), T.order).dot(np.array(coeffs, dtype=object))
            j = min(range(len(cand)), key=lambda n: (exact[n], cand[n]))
            return exact[j], offset + int(cand[j]), scale, fvals
    vals, scale = _lattice_values(T, pts)
    i = int(np.argmin(vals)) if vals.dtype != object else min(range(len(vals)), key=vals.__getitem__)
    return vals[i], offset + i, scale, vals


def lattice_values(T: SymTensor, denominator: int) -> tuple[np.ndarray, np.ndarray, Optional[int]]:
    """Lattice points and the (integer-scaled) form values at each of them."""
    pts = lattice(T.dim, denominator)
    vals, scale = _lattice_values(T, pts)
    return pts, vals, scale


def _grid_minimum(T: SymTensor, denominator: int, workers: int):
    pts = lattice(T.dim, denominator)
    n = len(pts)
    workers = max(1, min(workers, n))
    if workers == 1:
        best, idx, scale, vals = _chunk_min(T, pts, 0)
    else:
        bounds = np.linspace(0, n, workers + 1).astype(int)
        with ThreadPoolExecutor(max_workers=workers) as ex:
            parts = list(
                ex.map(lambda ab: _chunk_min(T, pts[ab[0] : ab[1]], ab[0]), zip(bounds[:-1], bounds[1:]))
            )
        parts = [p for p in parts if p[1] < n]
        # min value, then lowest index: independent of worker count
        best, idx, scale, _ = min(parts, key=lambda p: (p[0], p[1]))
        vals = np.concatenate([p[3] for p in parts])
    return pts, vals, best, idx, scale


def _refine(T: SymTensor, starts: np.ndarray, h: float) -> tuple[float, np.ndarray]:
    """Shrinking-neighbourhood grid search from each start; returns the best value and point."""
    dim = T.dim
    steps = np.linspace(-1.0, 1.0, REFINE_POINTS)
    offsets = np.stack(np.meshgrid(*([steps] * dim), indexing="ij"), axis=-1).reshape(-1, dim)
    coeffs = np.array([m * float(v) for m, v in zip(multiplicities(T.order, T.dim), T.values)])
    cur = starts.astype(float)
    cur_val = monomials(cur, T.order) @ coeffs
    for _ in range(REFINE_STEPS):
        cand = cur[:, None, :] + h * offsets[None, :, :]
        cand = np.clip(cand, 0.0, None)
        s = cand.sum(axis=2, keepdims=True)
        cand = np.where(s > 0, cand / np.where(s > 0, s, 1.0), cur[:, None, :])
        flat = cand.reshape(-1, dim)
        vals = (monomials(flat, T.order) @ coeffs).reshape(len(cur), -1)
        j = np.argmin(vals, axis=1)
        better = vals[np.arange(len(cur)), j] < cur_val
        cur = np.where(better[:, None], cand[np.arange(len(cur)), j], cur)
        cur_val = np.where(better, vals[np.arange(len(cur)), j], cur_val)
        h /= 2.0
    k = int(np.argmin(cur_val))
    return float(cur_val[k]), cur[k]


def _verdict(exact_min, lattice_min: float, refined_min, tol: float) -> Verdict:
    m = lattice_min if refined_min is None else min(lattice_min, refined_min)
    if exact_min is not None:
        if exact_min < 0 or m < -tol:
            return Verdict.NOT_COPOSITIVE
        if m > tol:
            return Verdict.STRICTLY_COPOSITIVE
        if exact_min == 0:
            return Verdict.COPOSITIVE
        return Verdict.UNKNOWN
    if m > tol:
        return Verdict.STRICTLY_COPOSITIVE
    if m < -tol:
        return Verdict.NOT_COPOSITIVE
    return Verdict.COPOSITIVE


def min_on_simplex(
    T: SymTensor,
    denominator: int = DEFAULT_DENOMINATOR,
    refine: bool = True,
    tol: float = DEFAULT_TOL,
    workers: Optional[int] = None,
) -> OracleReport:
    if denominator < 1:
        raise ValueError("denominator must be >= 1")
    if math.comb(denominator + T.dim - 1, T.dim - 1) > MAX_LATTICE:
        raise ValueError(f"lattice of denominator {denominator} in dimension {T.dim} is too large")
    # the neighbourhood grid has REFINE_POINTS**dim points
    refine = refine and T.dim <= 3
    workers = default_workers() if workers is None else workers
    pts, vals, best, idx, scale = _grid_minimum(T, denominator, workers)
    argmin = SimplexPoint(tuple(int(v) for v in pts[idx]), denominator)
    if scale is not None:
        exact_min = Fraction(int(best), scale * denominator**T.order)
        lattice_min = float(exact_min)
    else:
        exact_min = None
        lattice_min = float(best) / denominator**T.order

    refined_min = refined_point = None
    if refine:
        order = np.lexsort((np.arange(len(vals)), np.asarray(vals, dtype=float)))
        starts = pts[order[: min(REFINE_STARTS, len(order))]] / denominator
        refined_min, point = _refine(T, starts, 1.0 / denominator)
        refined_point = tuple(float(v) for v in point)

    verdict = _verdict(exact_min, lattice_min, refined_min, tol)
    min_value = lattice_min if refined_min is None else min(lattice_min, refined_min)
    return OracleReport(
        min_value=min_value,
        exact_min=exact_min,
        argmin=argmin,
        verdict=verdict,
        witness=semi_positivity_witness(T, argmin.coords),
        grid_denominator=denominator,
        refined=refine,
        refined_min=refined_min,
        refined_point=refined_point,
    )


def oracle_verdict(
    T: SymTensor,
    tol: float = DEFAULT_TOL,
    denominator: int = DEFAULT_DENOMINATOR,
    refine: bool = True,
) -> Verdict:
    """Strict if the minimum exceeds ``tol``, not copositive below ``-tol``.

    Inside the band a rational tensor is called copositive only when the lattice
    minimum is an exact zero; otherwise the verdict is unknown.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    return min_on_simplex(T, denominator, refine=refine, tol=tol).verdict


def semi_positivity_witness(T: SymTensor, x: Sequence) -> Optional[tuple[int, object]]:
    """Smallest 1-based k with ``x_k > 0`` and ``(T x^{m-1})_k >= 0``, with that component.

    ``None`` means no such k exists at ``x``, which rules out copositivity.
    """
    if any(v < 0 for v in x) or all(v == 0 for v in x):
        raise ValueError("witness needs a nonzero nonnegative vector")
    y = gradient_form(T, x)
    for k, (xk, yk) in enumerate(zip(x, y), start=1):
        if xk > 0 and yk >= 0:
            return k, yk
    return None


def certify_strict_on_grid(T: SymTensor, denominator: int = DEFAULT_DENOMINATOR) -> bool:
    """Exact positivity at every lattice point, and nonnegativity one level finer."""
    if not all(isinstance(v, int) for v in T.values):
        raise TensorError("grid certification needs integer entries")
    _, vals, _ = lattice_values(T, denominator)
    if not (vals > 0).all():
        return False
    _, vals, _ = lattice_values(T, 2 * denominator)
    return bool((vals >= 0).all())


def negative_point(T: SymTensor, denominator: int = DEFAULT_DENOMINATOR) -> Optional[SimplexPoint]:
    """Lexicographically first lattice point of minimal, negative exact value, if any."""
    if not T.is_exact:
        raise TensorError("exact search needs rational entries")
    pts, vals, _ = lattice_values(T, denominator)
    i = int(np.argmin(vals)) if vals.dtype != object else min(range(len(vals)), key=vals.__getitem__)
    if vals[i] >= 0:
        return None
    point = SimplexPoint(tuple(int(v) for v in pts[i]), denominator)
    assert evaluate(T, point.numerators) < 0
    return point


