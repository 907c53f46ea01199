"""Truncated formal power series with exact rational coefficients.

Just enough arithmetic for generating-function identities: ring
operations, inversion of units, and composition with series of positive
valuation. Operations on two truncations keep the shorter order, so a
degree-N verification stays honest about what it checked.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BadParamsError

__all__ = ["PowerSeries"]


@dataclass(frozen=True)
class PowerSeries:
    """Coefficients c_0 .. c_N of a series truncated at order N."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "coeffs", tuple(Fraction(c) for c in self.coeffs))
        if not self.coeffs:
            raise BadParamsError("a truncation needs at least the constant term")

    @staticmethod
    def constant(c, order: int) -> "PowerSeries":
        return PowerSeries((Fraction(c),) + (Fraction(0),) * order)

    @staticmethod
    def monomial(c, power: int, order: int) -> "PowerSeries":
        if power > order:
            return PowerSeries.constant(0, order)
        coeffs = [Fraction(0)] * (order + 1)
        coeffs[power] = Fraction(c)
        return PowerSeries(coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> Fraction:
        return self.coeffs[n]

    def truncate(self, order: int) -> "PowerSeries":
        if order >= self.order:
            return self
        return PowerSeries(self.coeffs[: order + 1])

    def _aligned(self, other: "PowerSeries") -> tuple["PowerSeries", "PowerSeries"]:
        n = min(self.order, other.order)
        return self.truncate(n), other.truncate(n)

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        a, b = self._aligned(other)
        return PowerSeries(tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        a, b = self._aligned(other)
        return PowerSeries(tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __mul__(self, other: "PowerSeries") -> "PowerSeries":
        a, b = self._aligned(other)
        n = a.order
        out = [Fraction(0)] * (n + 1)
        for i, x in enumerate(a.coeffs):
            if not x:
                continue
            for j in range(n + 1 - i):
                y = b.coeffs[j]
                if y:
                    out[i + j] += x * y
        return PowerSeries(out)

    def scale(self, c) -> "PowerSeries":
        c = Fraction(c)
        return PowerSeries(tuple(c * x for x in self.coeffs))

    def inverse(self) -> "PowerSeries":
        """Multiplicative inverse; requires a nonzero constant term."""
        if not self.coeffs[0]:
            raise BadParamsError("series with zero constant term has no inverse")
        n = self.order
        out = [Fraction(0)] * (n + 1)
        out[0] = 1 / self.coeffs[0]
        for k in range(1, n + 1):
            acc = sum((self.coeffs[i] * out[k - i] for i in range(1, k + 1)),
                      Fraction(0))
            out[k] = -acc / self.coeffs[0]
        return PowerSeries(out)

    def compose(self, inner: "PowerSeries") -> "PowerSeries":
        """self(inner(t)); inner must have zero constant term so that the
        truncated composition is well defined."""
        if inner.coeffs[0]:
            raise BadParamsError("composition needs inner constant term zero")
        n = min(self.order, inner.order)
        inner = inner.truncate(n)
        # Horner from the top coefficient down; each step one truncated
        # multiply by the inner series plus a constant.
        acc = PowerSeries.constant(self.coeffs[n], n)
        for k in range(n - 1, -1, -1):
            acc = acc * inner + PowerSeries.constant(self.coeffs[k], n)
        return acc

    def max_abs_diff(self, other: "PowerSeries") -> Fraction:
        a, b = self._aligned(other)
        return max((abs(x - y) for x, y in zip(a.coeffs, b.coeffs)),
                   default=Fraction(0))

    def is_zero(self) -> bool:
        return all(not c for c in self.coeffs)
