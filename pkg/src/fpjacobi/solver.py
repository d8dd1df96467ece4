"""Spectral solver for the inhomogeneous hypergeometric equation

    u'' + (a/x + b/(x-1)) u' + c/(x(1-x)) u = g(x)/(x(1-x))

on [0, 1], for g analytic in an ellipse with foci 0 and 1.  The basis
polynomials with weight parameters alpha = a-1, beta = b-1 are
eigenfunctions of the left side with eigenvalues lambda_n = n(n+a+b-1),
so expanding g termwise reduces the equation to the diagonal division
u_n = g_n / (c - lambda_n).  A solution exists and is unique exactly when
c avoids every lambda_n (resonance); the solver refuses to emit numbers
in the resonant case.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .basis import JacobiBasis, JacobiParams, default_degree_cap
from .errors import InvalidParameters, ResonantEigenvalue
from .expansion import (
    ChebyshevModel,
    JacobiExpansion,
    evaluate_expansion_many,
    expansion_coefficients,
)
from .poly import DensePoly
from .special import is_nonpositive_integer

__all__ = [
    "HypergeomProblem",
    "HypergeomSolution",
    "lambda_n",
    "check_resonance",
    "solve",
    "residual",
]

RESONANCE_TOL = 1e-8
NEAR_RESONANCE_TOL = 1e-4
AUTO_STOP_REL = 1e-13
AUTO_STOP_RUN = 3


def lambda_n(a: complex, b: complex, n: int) -> complex:
    """Eigenvalue n (n + a + b - 1) of the hypergeometric operator."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return n * (n + complex(a) + complex(b) - 1.0)


def check_resonance(a: complex, b: complex, c: complex, N: int,
                    tol: float = RESONANCE_TOL) -> list[int]:
    """All n <= N with |c - lambda_n| <= tol (1 + |lambda_n|).

    An empty list certifies solvability up to truncation N.
    """
    out = []
    c = complex(c)
    for n in range(N + 1):
        lam = lambda_n(a, b, n)
        if abs(c - lam) <= tol * (1.0 + abs(lam)):
            out.append(n)
    return out


@dataclass(frozen=True)
class HypergeomProblem:
    """Equation data (a, b, c) plus the inhomogeneity g.

    Validity: a, b must avoid {0, -1, -2, ...} and a+b must avoid
    {0, -1, -2, ...} (each within 1e-10), which is exactly what the basis
    with alpha = a-1, beta = b-1 requires.  The sharpest statement of
    unique analytic solvability also excludes a = 1 and b = 1;
    ``mode='strict'`` reproduces that, while the default permissive mode
    allows it (the weight is then regular at the corresponding endpoint
    and the construction goes through unchanged).
    """

    a: complex
    b: complex
    c: complex
    g: Union[ChebyshevModel, DensePoly]
    mode: str = "permissive"

    def __post_init__(self):
        object.__setattr__(self, "a", complex(self.a))
        object.__setattr__(self, "b", complex(self.b))
        object.__setattr__(self, "c", complex(self.c))
        # raises InvalidParameters on violation, incl. strict-mode a,b != 1
        self.params()

    def params(self) -> JacobiParams:
        a, b = self.a, self.b
        if is_nonpositive_integer(a) or is_nonpositive_integer(b):
            raise InvalidParameters(
                f"a={a}, b={b}: a and b must avoid 0, -1, -2, ..."
            )
        return JacobiParams(a - 1.0, b - 1.0, mode=self.mode)


@dataclass(frozen=True)
class HypergeomSolution:
    """Solution expansion plus the margin to the nearest eigenvalue."""

    expansion: JacobiExpansion
    resonance_margin: float
    basis: JacobiBasis
    g_coeffs: tuple
    warnings: tuple = ()

    def evaluate_many(self, xs) -> np.ndarray:
        return evaluate_expansion_many(self.expansion, self.basis, xs)

    def evaluate(self, x: complex) -> complex:
        return complex(self.evaluate_many([complex(x)])[0])


def _auto_truncation(g_coeffs: Sequence[complex]) -> int:
    mags = [abs(c) for c in g_coeffs]
    top = max(mags) if mags else 0.0
    if top == 0.0:
        return 0
    run = 0
    for n, m in enumerate(mags):
        if m < AUTO_STOP_REL * top:
            run += 1
            if run >= AUTO_STOP_RUN:
                return n
        else:
            run = 0
    return len(mags) - 1


def solve(problem: HypergeomProblem, N: int | None = None,
          resonance_tol: float = RESONANCE_TOL) -> HypergeomSolution:
    """Unique analytic-at-both-endpoints solution, coefficientwise.

    N = None picks the truncation automatically: expansion of g is cut
    where |g_n| stays below 1e-13 * max |g_k| for 3 consecutive n (the
    degree cap bounds the search).  Raises ResonantEigenvalue when c hits
    an eigenvalue within resonance_tol; a near miss (within 1e-4) only
    warns, but the division amplifies the error of that g_n accordingly.
    """
    params = problem.params()
    cap = default_degree_cap()
    build_n = cap if N is None else N
    if build_n < 0:
        raise ValueError("N must be nonnegative")
    basis = JacobiBasis(params, build_n)
    g_exp = expansion_coefficients(basis, problem.g, n_trunc=build_n)
    g_coeffs = list(g_exp.coeffs)
    if N is None:
        N = _auto_truncation(g_coeffs)
        g_coeffs = g_coeffs[:N + 1]

    resonant = check_resonance(problem.a, problem.b, problem.c, N,
                               tol=resonance_tol)
    blocked = [n for n in resonant if g_coeffs[n] != 0]
    if blocked:
        raise ResonantEigenvalue(blocked)

    notes = []
    margin = math.inf
    u = []
    for n in range(N + 1):
        lam = lambda_n(problem.a, problem.b, n)
        d = problem.c - lam
        margin = min(margin, abs(d))
        if n in resonant:
            # c sits on lambda_n but the resonant mode is unforced
            # (g_n = 0): the obstruction vanishes and u_n is free; take
            # the canonical representative u_n = 0.
            notes.append(
                f"resonant mode n={n} has vanishing forcing; returned the "
                "solution with u_n = 0 (solution not unique)"
            )
            warnings.warn(notes[-1], stacklevel=2)
            u.append(0j)
            continue
        rel = abs(d) / (1.0 + abs(lam))
        if rel <= NEAR_RESONANCE_TOL:
            notes.append(
                f"near-resonance at n={n}: |c - lambda_n| = {abs(d):.3e}; "
                "coefficient error amplified by the reciprocal"
            )
            warnings.warn(notes[-1], stacklevel=2)
        u.append(g_coeffs[n] / d)

    u_exp = JacobiExpansion(
        params=params,
        coeffs=tuple(u),
        n_trunc=N,
        tail_estimate=(abs(u[-1]) if u else 0.0) * (g_exp.term_scales[N] if g_exp.term_scales else 1.0),
        term_scales=g_exp.term_scales[:N + 1],
        noise_floors=g_exp.noise_floors[:N + 1],
        domain=g_exp.domain,
    )
    return HypergeomSolution(
        expansion=u_exp,
        resonance_margin=margin,
        basis=basis,
        g_coeffs=tuple(g_coeffs),
        warnings=tuple(notes),
    )


def residual(problem: HypergeomProblem, sol: HypergeomSolution,
             grid: Sequence[float]) -> float:
    """max over the grid of |x(1-x) u'' + [a(1-x) - bx] u' + c u - g|.

    The multiplied-through form extends continuously to the endpoints, so
    the grid may include 0 and 1.  Derivatives are exact polynomial
    differentiation of the truncated expansion.
    """
    grid = list(grid)
    if not grid:
        raise ValueError("residual grid must be nonempty")
    u_poly = DensePoly.zero()
    for n, un in enumerate(sol.expansion.coeffs):
        if un != 0:
            u_poly = u_poly + sol.basis.polys[n].scale(un)
    a, b, c = problem.a, problem.b, problem.c
    q = DensePoly([0, 1, -1])                      # x(1-x)
    lin = DensePoly([a]) - DensePoly([0, a + b])   # a(1-x) - bx = a - (a+b)x
    lhs_poly = q * u_poly.derivative(2) + lin * u_poly.derivative(1) \
        + u_poly.scale(c)
    xs = np.asarray(grid, dtype=np.complex128)
    lhs = lhs_poly.eval_many(xs)
    if isinstance(problem.g, DensePoly):
        gvals = problem.g.eval_many(xs)
    else:
        gvals = problem.g.eval_many(xs)
    return float(np.abs(lhs - gvals).max())
