"""Hadamard finite-part integration on [0, 1].

Three routes are implemented:

* ``finite_part_series`` is the constructive one-endpoint definition,
  x^alpha * sum c_n x^n / (n + alpha), valid for any exponent away from
  the nonpositive integers and equal to the convergent integral when
  Re alpha > 0.

* ``finite_part_poly_weight`` is the workhorse: for a polynomial times the
  weight x^alpha (1-x)^beta the finite part over [0, 1] is the coefficient
  sum against continued-Beta moments.  The moment table is built from one
  double-precision Beta seed by the exact ratio recurrence
  B(a+1, b) = B(a, b) * a/(a+b), carried in double-double so that the
  violent cancellation of power-basis sums meets the orthogonality
  tolerances.

* ``finite_part_split`` is an independent cross-validation route: split at
  an interior point, subtract a few Taylor terms of the analytic factor at
  each endpoint, integrate the singular terms in closed form and the
  regularized remainder by adaptive quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import quad

from . import kernels
from ._dd import (
    cdd_add_complex,
    cdd_div,
    cdd_from_complex,
    cdd_mul,
    cdd_to_complex,
)
from .errors import (
    InvalidParameters,
    NonConvergent,
    PoleError,
    QuadratureFailure,
)
from .poly import DensePoly
from .special import beta_fp, is_nonpositive_integer

__all__ = [
    "TaylorPiece",
    "AnalyticOnInterval",
    "moment_table",
    "finite_part_series",
    "finite_part_poly_weight",
    "finite_part_split",
]


def moment_table(params, max_degree: int) -> np.ndarray:
    """Continued-Beta moments B(alpha+1+j, beta+1), j = 0..max_degree.

    One transcendental seed, then the exact rational ratio recurrence in
    double-double.  Keeping all entries coherent relative to the same seed
    is what lets the off-diagonal Gram cancellation bottom out at the
    double-double floor instead of the seed's own 1e-15.
    """
    params.validate()
    a, b = params.alpha, params.beta
    seed = beta_fp(a + 1, b + 1)
    out = np.zeros((4, max_degree + 1))
    cur = cdd_from_complex(seed)
    out[:, 0] = cur
    ab = cdd_add_complex(cdd_from_complex(a), complex(b))  # exact two_sum embed
    for j in range(max_degree):
        num = cdd_add_complex(cdd_from_complex(a), complex(j + 1))
        den = cdd_add_complex(ab, complex(j + 2))
        cur = cdd_mul(cur, cdd_div(num, den))
        out[:, j + 1] = cur
    return out


def finite_part_poly_weight(params, p: DensePoly, table: np.ndarray | None = None,
                            with_envelope: bool = False):
    """H-int_0^1 p(x) x^alpha (1-x)^beta dx = sum_k p_k B(alpha+k+1, beta+1).

    Linear in p and exact up to Beta-evaluation error.  ``table``, when
    given, must come from moment_table(params, ...) for the same
    parameters.  ``with_envelope`` additionally returns the absolute-value
    sum of the terms, the scale against which the result's roundoff floor
    is judged.
    """
    params.validate()
    if table is None or table.shape[1] < p.degree + 1:
        table = moment_table(params, p.degree)
    val, envelope = kernels.weighted_dot(p._dd, table)
    out = cdd_to_complex(val)
    if with_envelope:
        return out, envelope
    return out


# ---------------------------------------------------------------------------
# series definition at one endpoint


@dataclass(frozen=True)
class TaylorPiece:
    """Local Taylor data of an analytic function at an interval endpoint.

    ``coeffs[n]`` multiplies (x - center)^n; ``radius`` is the (estimated)
    convergence radius.  ``growth_constant(r)`` returns the smallest C with
    |c_n| <= C r^(-n) over the stored coefficients, the heuristic check
    behind the radius claim.
    """

    center: int
    coeffs: tuple
    radius: float

    def __init__(self, center: int, coeffs: Sequence[complex], radius: float):
        if center not in (0, 1):
            raise ValueError("TaylorPiece center must be 0 or 1")
        if not radius > 0:
            raise ValueError("TaylorPiece radius must be positive")
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "coeffs", tuple(complex(c) for c in coeffs))
        object.__setattr__(self, "radius", float(radius))

    def growth_constant(self, r: float | None = None) -> float:
        r = self.radius / 2 if r is None else r
        c = 0.0
        for n, cn in enumerate(self.coeffs):
            c = max(c, abs(cn) * r**n)
        return c


def finite_part_series(alpha: complex, piece: TaylorPiece, x: float) -> complex:
    """H-int_0^x t^(alpha-1) f(t) dt = x^alpha sum_n c_n x^n / (n + alpha).

    Terms are added until the geometric tail bound drops below
    1e-13 * |partial sum| (early exit); a finite coefficient list that is
    exhausted first is summed completely, which is exact for polynomials.
    """
    alpha = complex(alpha)
    if is_nonpositive_integer(alpha):
        raise PoleError(f"series exponent alpha={alpha} is a nonpositive integer")
    if piece.center != 0:
        raise ValueError("finite_part_series expects a piece centered at 0")
    x = float(x)
    if not 0 < x < piece.radius:
        raise NonConvergent(
            f"x={x} outside (0, radius={piece.radius}) of the Taylor piece"
        )
    q = x / piece.radius if math.isfinite(piece.radius) else 0.0
    s = 0j
    xn = 1.0
    for n, c in enumerate(piece.coeffs):
        d = n + alpha
        if is_nonpositive_integer(d):
            raise PoleError(f"term exponent n+alpha = {d} hits a pole")
        t = c * xn / d
        s += t
        if n >= 2 and 0.0 < q < 1.0 and s != 0:
            tail = abs(t) * q / (1.0 - q)
            if tail < 1e-13 * abs(s):
                break
        xn *= x
    return (x ** alpha) * s


# ---------------------------------------------------------------------------
# split-and-subtract route


def _binom_series(exponent: complex, nterms: int) -> list[complex]:
    """(1 - x)^exponent = sum_j c_j x^j, radius 1."""
    out = [1.0 + 0j]
    for j in range(1, nterms):
        out.append(out[-1] * (exponent - (j - 1)) / j * (-1.0))
    return out


def _conv_trunc(a: Sequence[complex], b: Sequence[complex], n: int) -> list[complex]:
    out = [0j] * n
    for i, ai in enumerate(a):
        if i >= n:
            break
        for j, bj in enumerate(b):
            if i + j >= n:
                break
            out[i + j] += ai * bj
    return out


@dataclass(frozen=True)
class AnalyticOnInterval:
    """An evaluable analytic function with Taylor pieces at both endpoints."""

    fn: Callable[[float], complex]
    piece0: TaylorPiece
    piece1: TaylorPiece

    @classmethod
    def from_polynomial(cls, p: DensePoly) -> "AnalyticOnInterval":
        cs = p.coeffs
        d = len(cs) - 1
        shifted = [
            sum(math.comb(j, k) * cs[j] for j in range(k, d + 1))
            for k in range(d + 1)
        ]
        return cls(
            fn=lambda x, _p=p: _p(x),
            piece0=TaylorPiece(0, cs, math.inf),
            piece1=TaylorPiece(1, shifted, math.inf),
        )

    @classmethod
    def from_chebyshev(cls, model) -> "AnalyticOnInterval":
        """Endpoint Taylor data by basis conversion of the Chebyshev model.

        Uses the closed forms T_m^(k)(+-1) = (+-1)^(m-k) prod_{j<k}
        (m^2-j^2)/(2j+1), scaled by 2^k for the [0, 1] variable; no
        numerical differentiation.  Coefficient count is limited by the
        m^(2k) growth of the derivative formulas.
        """
        coeffs = model.coeffs
        M = len(coeffs) - 1
        nterms = min(30, max(10, M + 1))
        c0, c1 = [], []
        for k in range(nterms):
            s0 = 0j
            s1 = 0j
            for m, cm in enumerate(coeffs):
                prod = 1.0
                for j in range(k):
                    prod *= (m * m - j * j) / (2 * j + 1)
                    if prod == 0.0:
                        break
                if prod == 0.0:
                    continue
                s1 += cm * prod
                s0 += cm * prod * (-1.0 if (m - k) % 2 else 1.0)
            scale = 2.0 ** k / math.factorial(k)
            c0.append(s0 * scale)
            c1.append(s1 * scale)
        # Taylor radius from the fitted Bernstein parameter: distance from
        # the endpoint to the ellipse through which the model decays.
        rho = getattr(model, "decay_rate", math.inf)
        if math.isfinite(rho) and rho > 1:
            radius = max((rho + 1 / rho) / 4 - 0.5, 0.05)
        else:
            radius = math.inf
        return cls(
            fn=lambda x, _m=model: _m.evaluate(x),
            piece0=TaylorPiece(0, c0, radius),
            piece1=TaylorPiece(1, c1, radius),
        )


def _quad_complex(f: Callable[[float], complex], lo: float, hi: float,
                  epsabs: float) -> complex:
    vr, er = quad(lambda t: f(t).real, lo, hi, epsabs=epsabs, epsrel=1e-12,
                  limit=200)
    vi, ei = quad(lambda t: f(t).imag, lo, hi, epsabs=epsabs, epsrel=1e-12,
                  limit=200)
    if er + ei > 1e-9:
        raise QuadratureFailure(
            f"adaptive quadrature error estimate {er + ei:.2e} over ({lo}, {hi})"
        )
    return complex(vr, vi)


def _half_interval(exponent: complex, upper: float, analytic_coeffs: list,
                   analytic_fn: Callable[[float], complex], m: int,
                   sw_radius: float, radius: float) -> complex:
    """H-int_0^upper t^exponent F(t) dt with F analytic (series data given).

    The first m Taylor terms of F integrate in closed form over the whole
    piece (these carry the finite parts).  The remainder is handled in two
    zones: termwise-exact series integration on [0, r] (no quadrature ever
    sees the endpoint, whose power oscillates logarithmically for complex
    exponents) and adaptive quadrature of the smooth subtracted integrand
    on [r, upper].
    """
    head = 0j
    for j in range(min(m, len(analytic_coeffs))):
        e = exponent + j + 1
        if is_nonpositive_integer(e):
            raise PoleError(f"endpoint exponent {e} hits a pole")
        head += analytic_coeffs[j] * upper ** e / e

    r = min(sw_radius, upper)
    # termwise tail on [0, r]: exponents have real part >= 1 by the choice
    # of m, so no finite-part reading is needed here
    series_part = 0j
    last_mag = 0.0
    for j in range(m, len(analytic_coeffs)):
        e = exponent + j + 1
        term = analytic_coeffs[j] * r ** e / e
        series_part += term
        last_mag = abs(term)
    if math.isfinite(radius) and len(analytic_coeffs) > m:
        q = r / radius
        if 0.0 < q < 1.0:
            tail_bound = last_mag * q / (1.0 - q)
            if tail_bound > 1e-10 * (abs(series_part) + 1.0):
                raise QuadratureFailure(
                    f"Taylor remainder truncation {tail_bound:.2e} too large "
                    "on the series zone; supply more endpoint coefficients"
                )

    if r >= upper:
        return head + series_part

    def remainder(t: float) -> complex:
        ft = analytic_fn(t)
        sub = 0j
        tp = 1.0
        for j in range(min(m, len(analytic_coeffs))):
            sub += analytic_coeffs[j] * tp
            tp *= t
        return (t ** exponent) * (ft - sub)

    return head + series_part + _quad_complex(remainder, r, upper,
                                              epsabs=1e-12)


def finite_part_split(params, f: AnalyticOnInterval, split: float = 0.5,
                      m: int | None = None) -> complex:
    """H-int_0^1 f(x) x^alpha (1-x)^beta dx by split-and-subtract.

    Independent of the Beta-sum route: the two must agree for any f
    analytic on a neighborhood of [0, 1] (finite parts are additive over
    the interval).  Default subtraction order is
    ceil(max(-Re alpha, -Re beta, 0)) + 2, enough to leave a bounded
    regularized integrand with margin.
    """
    params.validate()
    a, b = params.alpha, params.beta
    if not 0.0 < split < 1.0:
        raise InvalidParameters(f"split={split} must lie in (0, 1)")
    if split >= f.piece0.radius or (1.0 - split) >= f.piece1.radius:
        raise NonConvergent(
            "split point outside a Taylor piece's convergence radius"
        )
    if m is None:
        m = math.ceil(max(-a.real, -b.real, 0.0)) + 2
    if m < math.ceil(max(-a.real, -b.real)) + 1:
        raise InvalidParameters(
            f"subtraction order m={m} too small for Re(alpha)={a.real}, "
            f"Re(beta)={b.real}"
        )

    # the binomial factor contributes its own Taylor terms: keep the
    # products long enough for the m-term head plus the series zone
    nterms = max(len(f.piece0.coeffs), len(f.piece1.coeffs)) + m + 24
    # left piece: F0(x) = (1-x)^beta f(x), singular exponent alpha
    F0 = _conv_trunc(f.piece0.coeffs, _binom_series(b, nterms), nterms)

    def F0_fn(x: float) -> complex:
        return (1.0 - x) ** b * f.fn(x)

    sw0 = min(0.1, f.piece0.radius / 4.0)
    left = _half_interval(a, split, F0, F0_fn, m, sw0, f.piece0.radius)

    # right piece, t = 1 - x: G0(t) = (1-t)^alpha f(1-t), singular exponent beta
    refl = [c * (-1) ** k for k, c in enumerate(f.piece1.coeffs)]
    G0 = _conv_trunc(refl, _binom_series(a, nterms), nterms)

    def G0_fn(t: float) -> complex:
        return (1.0 - t) ** a * f.fn(1.0 - t)

    sw1 = min(0.1, f.piece1.radius / 4.0)
    right = _half_interval(b, 1.0 - split, G0, G0_fn, m, sw1, f.piece1.radius)

    return left + right
