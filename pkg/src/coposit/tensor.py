"""Symmetric tensors stored on canonical (sorted) multi-indices.

A tensor of order m over dimension n keeps one value per nondecreasing index
tuple, in ``itertools.combinations_with_replacement`` order.  The associated
form is evaluated with multinomial multiplicities, so

    T x^m = sum_key mult(key) * t[key] * prod_{i in key} x_i

equals the full sum over all n**m ordered index tuples.

Indices are 1-based at the public boundary (``T[1, 1, 2, 3]``) and 0-based
inside the stored keys.
"""

from __future__ import annotations

import functools
import itertools
import math
from collections import Counter
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .verdict import is_exact, to_number

MAX_DIM = {2: None, 3: 3, 4: 3}


class TensorError(ValueError):
    """Bad tensor construction or use."""


@functools.lru_cache(maxsize=None)
def canonical_keys(order: int, dim: int) -> tuple[tuple[int, ...], ...]:
    return tuple(itertools.combinations_with_replacement(range(dim), order))


@functools.lru_cache(maxsize=None)
def key_position(order: int, dim: int) -> dict[tuple[int, ...], int]:
    return {k: i for i, k in enumerate(canonical_keys(order, dim))}


def multiplicity(key: Sequence[int]) -> int:
    """Number of distinct orderings of ``key``: m! / prod(repetition!)."""
    m = math.factorial(len(key))
    for c in Counter(key).values():
        m //= math.factorial(c)
    return m


@functools.lru_cache(maxsize=None)
def multiplicities(order: int, dim: int) -> tuple[int, ...]:
    return tuple(multiplicity(k) for k in canonical_keys(order, dim))


@functools.lru_cache(maxsize=None)
def exponent_matrix(order: int, dim: int) -> np.ndarray:
    """Row r holds the exponent of each coordinate in the monomial of key r."""
    keys = canonical_keys(order, dim)
    e = np.zeros((len(keys), dim), dtype=np.int64)
    for r, k in enumerate(keys):
        for i in k:
            e[r, i] += 1
    return e


def _check_dims(order: int, dim: int) -> None:
    if order not in (2, 3, 4):
        raise TensorError(f"order {order} not supported (2, 3 or 4)")
    limit = MAX_DIM[order]
    if dim < 1 or (limit is not None and dim > limit) or (order > 2 and dim < 2):
        raise TensorError(f"dimension {dim} out of range for order {order}")


class SymTensor:
    """Immutable symmetric tensor of order 2-4 with dense canonical storage.

    Entries are kept as given: ints and Fractions stay exact, floats stay float.
    Order 2 means a symmetric matrix and accepts any dimension; orders 3 and 4
    accept dimensions 2 and 3.
    """

    __slots__ = ("order", "dim", "values", "_hash")

    def __init__(self, order: int, dim: int, values: Sequence):
        _check_dims(order, dim)
        values = tuple(to_number(v) for v in values)
        if len(values) != len(canonical_keys(order, dim)):
            raise TensorError(
                f"expected {len(canonical_keys(order, dim))} canonical values, got {len(values)}"
            )
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("SymTensor is immutable")

    @classmethod
    def from_entries(cls, dim: int, entries, order: int = 4) -> "SymTensor":
        """Build from ``(index, value)`` pairs or a mapping; indices are 1-based, any order."""
        _check_dims(order, dim)
        pos = key_position(order, dim)
        values: list = [0] * len(pos)
        seen: dict[tuple[int, ...], object] = {}
        items = entries.items() if hasattr(entries, "items") else entries
        for index, value in items:
            index = tuple(int(i) for i in index)
            if len(index) != order:
                raise TensorError(f"index {index} has length {len(index)}, expected {order}")
            if any(i < 1 or i > dim for i in index):
                raise TensorError(f"index {index} out of range 1..{dim}")
            key = tuple(sorted(i - 1 for i in index))
            value = to_number(value)
            if key in seen and seen[key] != value:
                raise TensorError(
                    f"conflicting values for {_fmt_key(key)}: {seen[key]} and {value}"
                )
            seen[key] = value
            values[pos[key]] = value
        return cls(order, dim, values)

    @classmethod
    def from_function(cls, order: int, dim: int, fn) -> "SymTensor":
        """``fn`` receives each 1-based canonical index tuple."""
        return cls(order, dim, [fn(tuple(i + 1 for i in k)) for k in canonical_keys(order, dim)])

    @classmethod
    def constant(cls, order: int, dim: int, value=1) -> "SymTensor":
        return cls(order, dim, [value] * len(canonical_keys(order, dim)))

    @property
    def keys(self) -> tuple[tuple[int, ...], ...]:
        return canonical_keys(self.order, self.dim)

    @property
    def is_exact(self) -> bool:
        return is_exact(*self.values)

    def __getitem__(self, index) -> object:
        index = tuple(index)
        if len(index) != self.order or any(i < 1 or i > self.dim for i in index):
            raise TensorError(f"bad index {index}")
        return self.values[key_position(self.order, self.dim)[tuple(sorted(i - 1 for i in index))]]

    def entries(self) -> dict[tuple[int, ...], object]:
        """Mapping from 1-based canonical index to value."""
        return {tuple(i + 1 for i in k): v for k, v in zip(self.keys, self.values)}

    def diagonal(self) -> tuple:
        return tuple(self[(i,) * self.order] for i in range(1, self.dim + 1))

    def replace(self, updates) -> "SymTensor":
        """Copy with some entries changed; ``updates`` maps indices to values."""
        pos = key_position(self.order, self.dim)
        values = list(self.values)
        items = updates.items() if hasattr(updates, "items") else updates
        for index, value in items:
            values[pos[tuple(sorted(i - 1 for i in index))]] = value
        return SymTensor(self.order, self.dim, values)

    def permuted(self, perm: Sequence[int]) -> "SymTensor":
        """Relabel coordinates: the result has entry ``t[perm[i1], ..., perm[im]]`` at ``(i1, ..., im)``.

        ``perm`` is 1-based one-line notation, e.g. ``(2, 1, 3)``.
        """
        if sorted(perm) != list(range(1, self.dim + 1)):
            raise TensorError(f"{perm} is not a permutation of 1..{self.dim}")
        return SymTensor.from_function(
            self.order, self.dim, lambda idx: self[tuple(perm[i - 1] for i in idx)]
        )

    def scaled(self, factor) -> "SymTensor":
        return SymTensor(self.order, self.dim, [factor * v for v in self.values])

    def to_array(self) -> np.ndarray:
        """Dense float array of shape ``(dim,) * order`` with every ordering filled."""
        a = np.zeros((self.dim,) * self.order)
        for k, v in zip(self.keys, self.values):
            for p in set(itertools.permutations(k)):
                a[p] = float(v)
        return a

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymTensor):
            return NotImplemented
        return (self.order, self.dim, self.values) == (other.order, other.dim, other.values)

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((self.order, self.dim, self.values))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self) -> str:
        body = ", ".join(f"{_fmt_key(k)}: {v}" for k, v in zip(self.keys, self.values) if v != 0)
        return f"SymTensor(order={self.order}, dim={self.dim}, {{{body}}})"


# The two names the rest of the package documents; both are plain SymTensors.
SymTensor4 = SymTensor
SymMatrix = SymTensor


def _fmt_key(key: Iterable[int]) -> str:
    return "t" + "".join(str(i + 1) for i in key)


def build(dim: int, raw_entries, order: int = 4) -> SymTensor:
    """Construct a tensor from ``(multi-index, value)`` pairs; missing entries are 0."""
    return SymTensor.from_entries(dim, raw_entries, order=order)


def build_matrix(rows: Sequence[Sequence]) -> SymTensor:
    """Order-2 tensor from a full square array, which must be symmetric."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise TensorError("matrix must be square")
    entries = {}
    for i in range(n):
        for j in range(i, n):
            if rows[i][j] != rows[j][i]:
                raise TensorError(f"matrix not symmetric at ({i + 1},{j + 1})")
            entries[(i + 1, j + 1)] = rows[i][j]
    return SymTensor.from_entries(n, entries, order=2)


def _vector(T: SymTensor, x) -> list:
    x = [to_number(v) for v in x]
    if len(x) != T.dim:
        raise TensorError(f"vector of length {len(x)} does not match dimension {T.dim}")
    return x


def _promote(T: SymTensor, x: list):
    """Exact arithmetic when everything is rational, float otherwise."""
    if T.is_exact and is_exact(*x):
        return T.values, x
    return [float(v) for v in T.values], [float(v) for v in x]


def evaluate(T: SymTensor, x) -> object:
    """The form ``T x^m``."""
    x = _vector(T, x)
    values, x = _promote(T, x)
    total = 0
    for k, m, v in zip(T.keys, multiplicities(T.order, T.dim), values):
        if v == 0:
            continue
        term = m * v
        for i in k:
            term *= x[i]
        total += term
    return total


def gradient_form(T: SymTensor, x) -> tuple:
    """The vector ``T x^{m-1}``; ``order * T x^{m-1}`` is the gradient of ``T x^m``."""
    x = _vector(T, x)
    values, x = _promote(T, x)
    pos = key_position(T.order, T.dim)
    lower = canonical_keys(T.order - 1, T.dim)
    lower_mult = multiplicities(T.order - 1, T.dim)
    out = []
    for k in range(T.dim):
        total = 0
        for r, m in zip(lower, lower_mult):
            v = values[pos[tuple(sorted(r + (k,)))]]
            if v == 0:
                continue
            term = m * v
            for i in r:
                term *= x[i]
            total += term
        out.append(total)
    return tuple(out)


def evaluate_many(T: SymTensor, X: np.ndarray) -> np.ndarray:
    """Float evaluation at each row of ``X``."""
    X = np.asarray(X, dtype=float)
    coeffs = np.array([m * float(v) for m, v in zip(multiplicities(T.order, T.dim), T.values)])
    return monomials(X, T.order) @ coeffs


def monomials(X: np.ndarray, order: int) -> np.ndarray:
    """Matrix of canonical monomials, one row per point in ``X``.

    Works for float and integer (int64 or object) arrays alike.
    """
    E = exponent_matrix(order, X.shape[1])
    powers = [np.ones_like(X)]
    for _ in range(order):
        powers.append(powers[-1] * X)
    n_pts = X.shape[0]
    M = np.empty((n_pts, E.shape[0]), dtype=X.dtype)
    for r, row in enumerate(E):
        col = powers[row[0]][:, 0]
        for i in range(1, X.shape[1]):
            if row[i]:
                col = col * powers[row[i]][:, i]
        M[:, r] = col
    return M


def dominates(lo: SymTensor, hi: SymTensor) -> bool:
    """True iff every entry of ``lo`` is <= the matching entry of ``hi``."""
    if (lo.order, lo.dim) != (hi.order, hi.dim):
        raise TensorError("dominance needs tensors of the same shape")
    return all(a <= b for a, b in zip(lo.values, hi.values))


def _quartic_root(v):
    """``v ** 0.25``, exact when ``v`` is a rational fourth power."""
    if is_exact(v):
        f = Fraction(v)
        rn, rd = _iroot4(f.numerator), _iroot4(f.denominator)
        if rn is not None and rd is not None:
            return Fraction(rn, rd)
    return float(v) ** 0.25


def _iroot4(n: int):
    r = math.isqrt(math.isqrt(n))
    for c in (r, r + 1):
        if c**4 == n:
            return c
    return None


def normalize_diagonal(T: SymTensor) -> SymTensor:
    """Rescale so every diagonal entry is 1.

    Each occurrence of index a in a key multiplies the entry by ``t_aaaa**(-1/4)``
    (``t_aa**(-1/2)`` for matrices, generally ``t_a..a**(-1/order)``).  Then
    ``T y^m = T' x^m`` with ``x_a = t_aaaa**(1/4) y_a``.
    """
    diag = T.diagonal()
    if any(d <= 0 for d in diag):
        raise TensorError("diagonal normalization needs positive diagonal entries")
    if all(d == 1 for d in diag):
        return T
    if T.order == 4:
        roots = [_quartic_root(d) for d in diag]
    else:
        roots = [float(d) ** (1.0 / T.order) for d in diag]
    exact = is_exact(*roots)
    values = []
    for k, v in zip(T.keys, T.values):
        scale = 1
        for i in k:
            scale *= roots[i]
        if exact:
            values.append(Fraction(v) / scale if is_exact(v) else float(v) / float(scale))
        else:
            values.append(float(v) / float(scale))
    result = SymTensor(T.order, T.dim, values)
    # Diagonal is 1 by construction; pin it against rounding.
    return result.replace({(i,) * T.order: 1 for i in range(1, T.dim + 1)})


def scaling_point(T: SymTensor, y) -> list:
    """Map ``y`` to ``x`` with ``x_a = t_aaaa**(1/order) * y_a``."""
    return [float(d) ** (1.0 / T.order) * float(v) for d, v in zip(T.diagonal(), y)]
