"""Sparse nonnegative matrices with per-row rational entries.

Every transition operator in this package (the oriented-edge chain, the
vertex chain, and the unnormalized counting matrices) has rows of the form
(integer weight) / (integer row denominator), so a single representation
serves all of them and supports both exact Fraction arithmetic and fast
float arithmetic over the same data.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy import sparse

from .errors import NoConvergenceError

__all__ = ["RowRational", "gram_operator_norm", "symmetric_power_iteration"]


@dataclass(frozen=True)
class RowRational:
    """Square sparse matrix with entry (i, j) = weight / denom[i].

    cols[i] and weights[i] run in parallel; denom[i] is a positive integer.
    Row-stochastic instances have sum(weights[i]) == denom[i] for every i.
    Instances are immutable after construction.
    """

    size: int
    cols: tuple[tuple[int, ...], ...]
    weights: tuple[tuple[int, ...], ...]
    denoms: tuple[int, ...]

    @staticmethod
    def from_rows(rows: list[list[tuple[int, int]]], denoms: list[int]) -> "RowRational":
        """Build from per-row lists of (column, integer weight) pairs."""
        cols = tuple(tuple(c for c, _ in row) for row in rows)
        weights = tuple(tuple(w for _, w in row) for row in rows)
        return RowRational(len(rows), cols, weights, tuple(denoms))

    def entry(self, i: int, j: int) -> Fraction:
        for c, w in zip(self.cols[i], self.weights[i]):
            if c == j:
                return Fraction(w, self.denoms[i])
        return Fraction(0)

    def is_row_stochastic(self) -> bool:
        return all(sum(ws) == d for ws, d in zip(self.weights, self.denoms))

    def apply_left(self, v, exact: bool = False):
        """Return the row vector v @ M.

        In exact mode v holds Fractions (or ints) and the result is exact;
        otherwise floats.
        """
        zero = Fraction(0) if exact else 0.0
        out = [zero] * self.size
        for i, vi in enumerate(v):
            if not vi:
                continue
            d = self.denoms[i]
            if exact:
                for c, w in zip(self.cols[i], self.weights[i]):
                    out[c] += vi * Fraction(w, d)
            else:
                scale = vi / d
                for c, w in zip(self.cols[i], self.weights[i]):
                    out[c] += scale * w
        return out

    def apply_right(self, v, exact: bool = False):
        """Return the column vector M @ v."""
        zero = Fraction(0) if exact else 0.0
        out = [zero] * self.size
        for i in range(self.size):
            d = self.denoms[i]
            acc = zero
            for c, w in zip(self.cols[i], self.weights[i]):
                if exact:
                    acc += Fraction(w, d) * v[c]
                else:
                    acc += (w / d) * v[c]
            out[i] = acc
        return out

    def row_sums(self) -> list[Fraction]:
        return [Fraction(sum(ws), d) for ws, d in zip(self.weights, self.denoms)]

    def column_sums(self) -> list[Fraction]:
        out = [Fraction(0)] * self.size
        for i in range(self.size):
            d = self.denoms[i]
            for c, w in zip(self.cols[i], self.weights[i]):
                out[c] += Fraction(w, d)
        return out

    def to_scipy(self) -> sparse.csr_matrix:
        """Float CSR copy, for long iteration runs."""
        data, rows, cs = [], [], []
        for i in range(self.size):
            d = self.denoms[i]
            for c, w in zip(self.cols[i], self.weights[i]):
                rows.append(i)
                cs.append(c)
                data.append(w / d)
        return sparse.csr_matrix(
            (data, (rows, cs)), shape=(self.size, self.size), dtype=np.float64
        )


def symmetric_power_iteration(matvec, size: int, tol: float = 1e-13,
                              max_iter: int = 2000, seed: int = 0) -> tuple[float, int]:
    """Top eigenvalue of a symmetric positive-semidefinite operator.

    matvec maps a numpy vector to a numpy vector. Returns (eigenvalue,
    iterations used). Raises NoConvergenceError if Rayleigh quotients fail
    to stabilize within max_iter steps.
    """
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(size)
    v /= np.linalg.norm(v)
    prev = None
    for it in range(1, max_iter + 1):
        w = matvec(v)
        norm = np.linalg.norm(w)
        if norm == 0.0:
            return 0.0, it
        v = w / norm
        ray = float(v @ matvec(v))
        if prev is not None and abs(ray - prev) <= tol * max(1.0, abs(ray)):
            return ray, it
        prev = ray
    raise NoConvergenceError(
        f"power iteration did not stabilize within {max_iter} iterations"
    )


def gram_operator_norm(m: RowRational, tol: float = 1e-13, max_iter: int = 2000,
                       seed: int = 0) -> float:
    """Operator norm of M on Euclidean space, as sqrt of the top eigenvalue
    of the Gram matrix M^T M (symmetric, so power iteration is safe)."""
    a = m.to_scipy()
    at = a.T.tocsr()

    def matvec(v):
        return at @ (a @ v)

    top, _ = symmetric_power_iteration(matvec, m.size, tol=tol, max_iter=max_iter, seed=seed)
    return float(np.sqrt(max(top, 0.0)))
