"""Expansion of analytic functions on [0, 1] in the general-parameter
Jacobi basis.

An arbitrary analytic function enters through a shifted-Chebyshev
interpolant (sampled at Chebyshev-Lobatto points); each coefficient is
then a finite linear combination of continued-Beta moments, so no
singular or divergent integral is ever approximated by quadrature.  The
coefficient map is

    f_n = a_n^{-1} sum_m chat_m * H-int Ttilde_m p_n w,

computed, by linearity, as one exact Beta sum of the interpolant's
power-basis coefficients against p_n.

Every coefficient carries a noise-floor estimate (the absolute-value sum
of its Beta terms times the working precision); coefficients that land
below their floor are numerically indistinguishable from zero and are
chopped to exactly 0.  Without this, trailing coefficients of a rapidly
converging expansion would consist purely of amplified roundoff and
poison evaluation.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Sequence, Union

import numpy as np

from . import kernels
from ._dd import cdd_from_complex, cdd_mul_rdd, cdd_add, cdd_to_complex, dd_from_int
from .basis import JacobiBasis
from .errors import DegreeCapExceeded, EvaluationFailure, InsufficientData
from .poly import DensePoly

__all__ = [
    "ChebyshevModel",
    "EllipseDomain",
    "JacobiExpansion",
    "chebyshev_fit",
    "expansion_coefficients",
    "evaluate_expansion",
    "evaluate_expansion_many",
    "convergence_estimate",
]

MODEL_TRIM_REL = 1e-14
EPS_DD = 2.5e-32
NOISE_FACTOR = 8.0
RHO_INF = math.inf

_tcheb_cache: list[list[int]] = [[1], [-1, 2]]


def _tcheb_int(m: int) -> list[int]:
    """Power-basis coefficients of T_m(2x-1), exact integers."""
    while len(_tcheb_cache) <= m:
        cur = _tcheb_cache[-1]
        prev = _tcheb_cache[-2]
        nxt = [0] * (len(cur) + 1)
        for i, c in enumerate(cur):
            nxt[i + 1] += 4 * c
            nxt[i] -= 2 * c
        for i, c in enumerate(prev):
            nxt[i] -= c
        _tcheb_cache.append(nxt)
    return _tcheb_cache[m]


@dataclass(frozen=True)
class EllipseDomain:
    """Open ellipse with foci 0 and 1, Bernstein parameter rho > 1."""

    rho: float

    def __post_init__(self):
        if not self.rho > 1.0:
            raise ValueError("EllipseDomain needs rho > 1")

    @property
    def semi_major(self) -> float:
        return (self.rho + 1.0 / self.rho) / 4.0

    @property
    def semi_minor(self) -> float:
        return (self.rho - 1.0 / self.rho) / 4.0

    def contains(self, z: complex) -> bool:
        z = complex(z)
        return abs(z) + abs(z - 1.0) < (self.rho + 1.0 / self.rho) / 2.0


@dataclass(frozen=True)
class ChebyshevModel:
    """Shifted-Chebyshev coefficients of an analytic function on [0, 1].

    coeffs[m] multiplies Ttilde_m(x) = T_m(2x - 1); trailing coefficients
    below 1e-14 * max are trimmed at construction.  decay_rate is the
    least-squares geometric decay parameter of |coeffs| (inf when there is
    nothing to fit, e.g. constants).
    """

    coeffs: tuple
    decay_rate: float = field(default=math.inf)

    def __init__(self, coeffs: Sequence[complex], decay_rate: float | None = None):
        cs = [complex(c) for c in coeffs] or [0j]
        top = max(abs(c) for c in cs)
        n = len(cs)
        while n > 1 and abs(cs[n - 1]) < MODEL_TRIM_REL * top:
            n -= 1
        cs = cs[:n]
        object.__setattr__(self, "coeffs", tuple(cs))
        if decay_rate is None:
            decay_rate = _fit_decay([abs(c) for c in cs])
        object.__setattr__(self, "decay_rate", float(decay_rate))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def evaluate(self, x: complex) -> complex:
        """Clenshaw recurrence, valid for complex arguments."""
        u = 2.0 * complex(x) - 1.0
        b1 = 0j
        b2 = 0j
        for c in self.coeffs[:0:-1]:
            b1, b2 = 2.0 * u * b1 - b2 + c, b1
        return self.coeffs[0] + u * b1 - b2

    def eval_many(self, xs) -> np.ndarray:
        u = 2.0 * np.asarray(xs, dtype=np.complex128) - 1.0
        b1 = np.zeros_like(u)
        b2 = np.zeros_like(u)
        for c in self.coeffs[:0:-1]:
            b1, b2 = 2.0 * u * b1 - b2 + c, b1
        return self.coeffs[0] + u * b1 - b2

    def domain(self) -> EllipseDomain | None:
        if math.isfinite(self.decay_rate) and self.decay_rate > 1.0:
            return EllipseDomain(self.decay_rate)
        return None


def _fit_decay(mags: list[float]) -> float:
    pts = [(m, math.log(v)) for m, v in enumerate(mags) if v > 0.0]
    if len(pts) < 3:
        return math.inf
    n = len(pts)
    sx = sum(p[0] for p in pts)
    sy = sum(p[1] for p in pts)
    sxx = sum(p[0] * p[0] for p in pts)
    sxy = sum(p[0] * p[1] for p in pts)
    denom = n * sxx - sx * sx
    if denom == 0:
        return math.inf
    slope = (n * sxy - sx * sy) / denom
    if slope >= 0.0:
        return 1.0
    rho = math.exp(-slope)
    return rho


def chebyshev_fit(f: Callable[[float], complex], M: int) -> ChebyshevModel:
    """Interpolate f at the M+1 Chebyshev-Lobatto nodes mapped to [0, 1].

    Plain O(M^2) cosine-transform summation; M stays small enough here
    that an FFT would be noise.  Raises EvaluationFailure when f returns a
    non-finite value at a node.
    """
    if M < 1:
        raise ValueError("sampling degree M must be >= 1")
    xs = [(1.0 + math.cos(math.pi * j / M)) / 2.0 for j in range(M + 1)]
    vals = []
    for x in xs:
        try:
            v = complex(f(x))
        except Exception as exc:
            raise EvaluationFailure(f"f({x}) raised {exc!r}") from exc
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            raise EvaluationFailure(f"f({x}) = {v} is not finite")
        vals.append(v)
    coeffs = []
    for m in range(M + 1):
        s = 0.5 * vals[0]
        for j in range(1, M):
            s += vals[j] * math.cos(math.pi * j * m / M)
        s += 0.5 * vals[M] * (-1.0 if m % 2 else 1.0)
        coeffs.append((2.0 if 0 < m < M else 1.0) * s / M)
    return ChebyshevModel(coeffs)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class JacobiExpansion:
    """Truncated coefficient sequence in the basis p_0..p_{n_trunc}.

    ``noise_floors[n]`` is the resolution limit of coefficient n (working
    precision times the absolute-term envelope of its Beta sum, over
    |a_n|); coefficients are exactly 0 where the computed value fell below
    it.  ``term_scales[n]`` caches sup |p_n| on [0, 1], the factor that
    converts coefficient size into function-value contribution.
    tail_estimate is a heuristic upper bound on the dropped tail; no
    quantitative tail theory is claimed.
    """

    params: object
    coeffs: tuple
    n_trunc: int
    tail_estimate: float
    term_scales: tuple = ()
    noise_floors: tuple = ()
    domain: EllipseDomain | None = None


def _model_dd(model: Union[ChebyshevModel, DensePoly],
              reflect: bool = False):
    """Power-basis dd coefficients of the model (optionally of f(1-x)).

    Returns (coeff_array, transform_abs) where transform_abs, when not
    None, bounds the absolute error of each coefficient in units of the
    working precision (the binomial reflection of a dense polynomial
    cancels internally; that uncertainty must enter the noise floors).
    Reflection is exact for Chebyshev models: Ttilde_m(1-x) =
    (-1)^m Ttilde_m(x), a sign flip per coefficient.
    """
    if isinstance(model, DensePoly):
        if not reflect:
            return model._dd, None
        mags = np.abs(model._dd[0] + 1j * model._dd[2])
        d = len(mags) - 1
        transform_abs = np.array([
            sum(mags[j] * math.comb(j, k) for j in range(k, d + 1))
            for k in range(d + 1)
        ])
        return model.reflected()._dd, transform_abs
    coeffs = model.coeffs
    deg = len(coeffs) - 1
    acc = [(0.0, 0.0, 0.0, 0.0) for _ in range(deg + 1)]
    for m, cm in enumerate(coeffs):
        if reflect and m % 2:
            cm = -cm
        cdd = cdd_from_complex(cm)
        for i, t in enumerate(_tcheb_int(m)):
            if t == 0:
                continue
            th, tl = dd_from_int(t)
            acc[i] = cdd_add(acc[i], cdd_mul_rdd(cdd, th, tl))
    out = np.zeros((4, deg + 1))
    for i, c in enumerate(acc):
        out[:, i] = c
    return out, None


def expansion_coefficients(basis: JacobiBasis,
                           model: Union[ChebyshevModel, DensePoly],
                           n_trunc: int | None = None) -> JacobiExpansion:
    """Coefficients f_n = a_n^{-1} H-int f p_n w, as exact Beta sums."""
    if n_trunc is None:
        n_trunc = basis.n_max
    if n_trunc > basis.n_max:
        raise DegreeCapExceeded(
            f"truncation {n_trunc} exceeds basis n_max {basis.n_max}"
        )
    g_dd, transform_abs = _model_dd(model, reflect=basis.fp_swapped)
    g_deg = g_dd.shape[1] - 1
    chain = basis.fp_chain()
    table = basis.fp_moment_table(max(g_deg + basis.n_max, 2 * basis.n_max))
    table_abs = np.abs(table[0] + 1j * table[2])
    coeffs = []
    floors = []
    for n in range(n_trunc + 1):
        val, envelope = kernels.conv_dot(g_dd, chain[n]._dd, table)
        an = basis.norms[n]
        fn = cdd_to_complex(val) / an
        if basis.fp_swapped and n % 2:
            fn = -fn
        if transform_abs is not None:
            pn_abs = np.abs(chain[n]._dd[0] + 1j * chain[n]._dd[2])
            prod = np.convolve(transform_abs, pn_abs)
            envelope += float(prod @ table_abs[:len(prod)])
        floor = NOISE_FACTOR * EPS_DD * envelope / abs(an)
        if abs(fn) <= floor:
            fn = 0j
        coeffs.append(fn)
        floors.append(floor)
    scales = [basis.sup_norm(n) for n in range(n_trunc + 1)]
    tail = max(abs(coeffs[-1]), floors[-1]) * scales[-1]
    domain = model.domain() if isinstance(model, ChebyshevModel) else None
    return JacobiExpansion(
        params=basis.params,
        coeffs=tuple(coeffs),
        n_trunc=n_trunc,
        tail_estimate=tail,
        term_scales=tuple(scales),
        noise_floors=tuple(floors),
        domain=domain,
    )


def evaluate_expansion(exp: JacobiExpansion, basis: JacobiBasis,
                       x: complex) -> complex:
    """sum_n f_n p_n(x); warns (does not fail) outside the estimated domain."""
    x = complex(x)
    if exp.domain is not None and not exp.domain.contains(x):
        warnings.warn(
            f"evaluation point {x} lies outside the estimated convergence "
            f"ellipse (rho={exp.domain.rho:.3g}); result may diverge",
            stacklevel=2,
        )
    out = 0j
    for n, fn in enumerate(exp.coeffs):
        if fn != 0:
            out += fn * basis.polys[n](x)
    return out


def evaluate_expansion_many(exp: JacobiExpansion, basis: JacobiBasis,
                            xs) -> np.ndarray:
    xs = np.asarray(xs, dtype=np.complex128)
    out = np.zeros_like(xs)
    for n, fn in enumerate(exp.coeffs):
        if fn != 0:
            out += fn * basis.polys[n].eval_many(xs)
    return out


def convergence_estimate(exp: JacobiExpansion) -> float:
    """Geometric decay parameter of the expansion terms.

    Fits the slope of log(|f_n| * sup|p_n|) over the trailing window of
    nonzero coefficients and reports rho_hat = exp(-slope).  The sup-norm
    scale is what makes the slope a Bernstein-ellipse parameter: the raw
    f_n carry the factorial normalization of p_n, whose log is not linear
    in n.  A hard-truncated sequence (polynomial input: trailing
    coefficients identically zero well above the noise floor) reports the
    +inf sentinel.
    """
    terms = [abs(c) * s for c, s in zip(exp.coeffs, exp.term_scales)]
    nz = [n for n, c in enumerate(exp.coeffs) if c != 0]
    if not nz:
        return RHO_INF
    tmax = max(terms)
    last = nz[-1]
    trailing_zeros = exp.n_trunc - last
    if trailing_zeros >= 3 and terms[last] > 1e-8 * tmax:
        # coefficients vanished outright rather than decaying into the
        # floor: polynomial-type input
        return RHO_INF
    window = [n for n in nz if n >= 2]
    if len(window) < 8:
        raise InsufficientData(
            f"need >= 8 nonzero trailing coefficients, have {len(window)}"
        )
    window = window[-12:]
    xs = [float(n) for n in window]
    ys = [math.log(terms[n]) for n in window]
    n = len(xs)
    sx = sum(xs)
    sy = sum(ys)
    sxx = sum(v * v for v in xs)
    sxy = sum(u * v for u, v in zip(xs, ys))
    slope = (n * sxy - sx * sy) / (n * sxx - sx * sx)
    if slope >= 0.0:
        return 1.0
    rho = math.exp(-slope)
    return rho if rho < 1e6 else RHO_INF
