"""Dense complex-coefficient polynomials in the power basis.

This is the shared representation for the Jacobi polynomials, their
products, and every finite-part integrand.  Coefficients are carried in
double-double precision internally (shape-(4, n) float64 arrays holding
re_hi, re_lo, im_hi, im_lo); the public surface speaks ordinary complex.
The extra precision is not cosmetic: power-basis moment sums cancel by
factors that grow exponentially with degree, and the orthogonality
tolerances downstream are unreachable if coefficients carry only 1e-16
relative accuracy.
"""

from __future__ import annotations

from typing import Iterable, Sequence, Union

import numpy as np

from . import kernels
from ._dd import cdd_add, cdd_from_complex, cdd_mul, dd_mul_d

__all__ = ["DensePoly", "poly_combine", "poly_derivative", "poly_eval"]

TRIM_REL = 1e-14


def _trim_dd(arr: np.ndarray) -> np.ndarray:
    mags = np.abs(arr[0] + 1j * arr[2])
    top = mags.max() if len(mags) else 0.0
    if top == 0.0:
        return np.zeros((4, 1))
    n = len(mags)
    while n > 1 and mags[n - 1] <= TRIM_REL * top:
        n -= 1
    return np.ascontiguousarray(arr[:, :n])


class DensePoly:
    """Immutable dense polynomial; index k holds the coefficient of x^k."""

    __slots__ = ("_dd",)

    def __init__(self, coeffs: Iterable[complex]):
        cs = [complex(c) for c in coeffs]
        if not cs:
            cs = [0j]
        arr = np.zeros((4, len(cs)))
        arr[0] = [c.real for c in cs]
        arr[2] = [c.imag for c in cs]
        self._dd = _trim_dd(arr)

    @classmethod
    def _from_dd(cls, arr: np.ndarray, trim: bool = True) -> "DensePoly":
        self = object.__new__(cls)
        self._dd = _trim_dd(arr) if trim else np.ascontiguousarray(arr)
        return self

    @classmethod
    def zero(cls) -> "DensePoly":
        return cls([0])

    @classmethod
    def one(cls) -> "DensePoly":
        return cls([1])

    # -- views ------------------------------------------------------------

    @property
    def coeffs(self) -> list[complex]:
        a = self._dd
        return [complex(a[0, k] + a[1, k], a[2, k] + a[3, k])
                for k in range(a.shape[1])]

    @property
    def degree(self) -> int:
        return self._dd.shape[1] - 1

    def is_zero(self) -> bool:
        return self._dd.shape[1] == 1 and self._dd[0, 0] == 0.0 \
            and self._dd[1, 0] == 0.0 and self._dd[2, 0] == 0.0 \
            and self._dd[3, 0] == 0.0

    def coeff_dd(self, k: int):
        a = self._dd
        if k >= a.shape[1]:
            return (0.0, 0.0, 0.0, 0.0)
        return (a[0, k], a[1, k], a[2, k], a[3, k])

    def max_abs_coeff(self) -> float:
        a = self._dd
        return float(np.abs(a[0] + 1j * a[2]).max())

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "DensePoly") -> "DensePoly":
        return self._addsub(other, 1.0)

    def __sub__(self, other: "DensePoly") -> "DensePoly":
        return self._addsub(other, -1.0)

    def _addsub(self, other: "DensePoly", sign: float) -> "DensePoly":
        a, b = self._dd, other._dd
        n = max(a.shape[1], b.shape[1])
        out = np.zeros((4, n))
        for k in range(n):
            x = (a[0, k], a[1, k], a[2, k], a[3, k]) if k < a.shape[1] else (0.0,) * 4
            y = (b[0, k], b[1, k], b[2, k], b[3, k]) if k < b.shape[1] else (0.0,) * 4
            if sign < 0:
                y = (-y[0], -y[1], -y[2], -y[3])
            out[:, k] = cdd_add(x, y)
        return DensePoly._from_dd(out)

    def __mul__(self, other: Union["DensePoly", complex, float, int]):
        if isinstance(other, DensePoly):
            if self.is_zero() or other.is_zero():
                return DensePoly.zero()
            return DensePoly._from_dd(kernels.conv(self._dd, other._dd))
        return self.scale(other)

    __rmul__ = __mul__

    def __neg__(self) -> "DensePoly":
        out = -self._dd
        return DensePoly._from_dd(out, trim=False)

    def scale(self, s: complex) -> "DensePoly":
        s = cdd_from_complex(complex(s))
        a = self._dd
        out = np.zeros_like(a)
        for k in range(a.shape[1]):
            out[:, k] = cdd_mul((a[0, k], a[1, k], a[2, k], a[3, k]), s)
        return DensePoly._from_dd(out)

    def reflected(self) -> "DensePoly":
        """Coefficients of p(1 - x) (exact binomial transform)."""
        import math as _math

        from ._dd import cdd_mul_rdd, dd_from_int

        a = self._dd
        n = a.shape[1]
        acc = [(0.0, 0.0, 0.0, 0.0) for _ in range(n)]
        for j in range(n):
            cj = (a[0, j], a[1, j], a[2, j], a[3, j])
            for k in range(j + 1):
                bh, bl = dd_from_int(_math.comb(j, k) * (-1) ** k)
                acc[k] = cdd_add(acc[k], cdd_mul_rdd(cj, bh, bl))
        out = np.zeros((4, n))
        for k, c in enumerate(acc):
            out[:, k] = c
        return DensePoly._from_dd(out)

    def derivative(self, order: int = 1) -> "DensePoly":
        if order < 0:
            raise ValueError("derivative order must be nonnegative")
        a = self._dd
        for _ in range(order):
            n = a.shape[1]
            if n <= 1:
                return DensePoly.zero()
            out = np.zeros((4, n - 1))
            for k in range(1, n):
                rh, rl = dd_mul_d(a[0, k], a[1, k], float(k))
                ih, il = dd_mul_d(a[2, k], a[3, k], float(k))
                out[:, k - 1] = (rh, rl, ih, il)
            a = out
        return DensePoly._from_dd(a)

    def __call__(self, x: complex) -> complex:
        return complex(kernels.horner_many(self._dd, [complex(x)])[0])

    def eval_many(self, xs: Sequence[complex]) -> np.ndarray:
        return kernels.horner_many(self._dd, list(xs))

    def __repr__(self) -> str:
        return f"DensePoly({self.coeffs!r})"


def poly_combine(kind: str, p: DensePoly, q) -> DensePoly:
    """Combine polynomials: kind in {'add', 'sub', 'mul', 'scale'}."""
    if kind == "add":
        return p + q
    if kind == "sub":
        return p - q
    if kind == "mul":
        return p * q
    if kind == "scale":
        return p.scale(q)
    raise ValueError(f"unknown combine kind {kind!r}")


def poly_derivative(p: DensePoly, order: int = 1) -> DensePoly:
    return p.derivative(order)


def poly_eval(p: DensePoly, x: complex) -> complex:
    return p(x)
