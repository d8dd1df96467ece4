"""Jacobi polynomials on [0, 1] for general complex weight parameters.

The weight is w(x) = x^alpha (1-x)^beta.  Two independent construction
routes are provided:

* ``jacobi_rodrigues`` expands d^n/dx^n [x^(n+alpha) (1-x)^(n+beta)] by the
  Leibniz rule with the weight divided out symbolically (pure exponent
  shifts, no numeric division by w);
* ``jacobi_via_recurrence`` maps the classical three-term recurrence from
  [-1, 1] through z = 1 - 2x, which turns the normalization constant into
  n! exactly.

Both produce the same polynomial with leading coefficient
(-1)^n (n+alpha+beta+1)_n; the pair is kept as a mutual cross-check.
Norms use the closed Gamma-ratio form; the Gram form is the finite-part
Beta sum of coefficient products, which is where orthogonality for
non-classical parameters actually gets verified.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field

import numpy as np

from . import finite_part, kernels
from ._dd import (
    CDD_ONE,
    cdd_add,
    cdd_add_complex,
    cdd_div,
    cdd_from_complex,
    cdd_mul,
    cdd_mul_d,
    cdd_neg,
    cdd_to_complex,
)
from .errors import (
    DegreeCapExceeded,
    InvalidParameters,
    PoleError,
    RecurrenceBreakdown,
)
from .poly import DensePoly
from .special import beta_fp, is_nonpositive_integer, log_gamma, pochhammer

__all__ = [
    "JacobiParams",
    "JacobiBasis",
    "default_degree_cap",
    "jacobi_rodrigues",
    "jacobi_via_recurrence",
    "norm_an",
    "gram_entry",
    "carlson_rn",
    "ode_residual_poly",
]

PARAM_TOL = 1e-10
BREAKDOWN_TOL = 1e-8
DEFAULT_CAP = 40


def default_degree_cap() -> int:
    """Degree cap; override with the FPJ_N_MAX_CAP environment variable."""
    raw = os.environ.get("FPJ_N_MAX_CAP")
    if raw is None:
        return DEFAULT_CAP
    try:
        cap = int(raw)
    except ValueError as exc:
        raise InvalidParameters(f"FPJ_N_MAX_CAP={raw!r} is not an integer") from exc
    if cap < 0:
        raise InvalidParameters("FPJ_N_MAX_CAP must be nonnegative")
    return cap


def _is_integer_leq(z: complex, bound: int, tol: float = PARAM_TOL) -> bool:
    if abs(z.imag) > tol:
        return False
    r = round(z.real)
    return r <= bound and abs(z.real - r) <= tol


@dataclass(frozen=True)
class JacobiParams:
    """Weight parameters (alpha, beta) with validity classification.

    ``permissive`` mode (default) excludes alpha, beta in {-1, -2, ...}
    and alpha+beta in {-2, -3, ...}; ``strict`` mode additionally rejects
    alpha = 0 and beta = 0.  The permissive default keeps the classical
    Legendre case alpha = beta = 0 usable (the weight is regular at an
    endpoint whose exponent is 0); strict mode reproduces the sharper
    exclusion under which general-parameter orthogonality is usually
    stated.
    """

    alpha: complex
    beta: complex
    mode: str = "permissive"

    def __post_init__(self):
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "beta", complex(self.beta))
        if self.mode not in ("permissive", "strict"):
            raise InvalidParameters(f"unknown mode {self.mode!r}")
        self.validate()

    def validate(self) -> None:
        a, b = self.alpha, self.beta
        if _is_integer_leq(a, -1):
            raise InvalidParameters(f"alpha={a} is a negative integer")
        if _is_integer_leq(b, -1):
            raise InvalidParameters(f"beta={b} is a negative integer")
        if _is_integer_leq(a + b, -2):
            raise InvalidParameters(
                f"alpha+beta={a + b} is an integer <= -2 (basis degenerates)"
            )
        if self.mode == "strict":
            if is_nonpositive_integer(a) or is_nonpositive_integer(b):
                raise InvalidParameters(
                    "strict mode excludes alpha = 0 and beta = 0 as well"
                )


# ---------------------------------------------------------------------------
# construction routes


def jacobi_rodrigues(params: JacobiParams, n: int,
                     cap: int | None = None) -> DensePoly:
    """Degree-n polynomial from the Rodrigues form, by Leibniz expansion.

    p_n = sum_k C(n,k) (-1)^(n-k) ff(n+alpha, k) ff(n+beta, n-k)
          * x^(n-k) (1-x)^k
    with ff the falling factorial; the weight never appears numerically.
    """
    params.validate()
    cap = default_degree_cap() if cap is None else cap
    if not 0 <= n:
        raise ValueError("degree must be nonnegative")
    if n > cap:
        raise DegreeCapExceeded(f"degree {n} exceeds cap {cap}")
    a, b = params.alpha, params.beta
    out = np.zeros((4, n + 1))
    acc = [(0.0, 0.0, 0.0, 0.0) for _ in range(n + 1)]
    for k in range(n + 1):
        ffa = CDD_ONE
        for j in range(k):
            ffa = cdd_mul(ffa, cdd_add_complex(cdd_from_complex(a), complex(n - j)))
        ffb = CDD_ONE
        for j in range(n - k):
            ffb = cdd_mul(ffb, cdd_add_complex(cdd_from_complex(b), complex(n - j)))
        base = cdd_mul(ffa, ffb)
        base = cdd_mul_d(base, float((-1) ** (n - k) * math.comb(n, k)))
        for j in range(k + 1):
            term = cdd_mul_d(base, float((-1) ** j * math.comb(k, j)))
            acc[n - k + j] = cdd_add(acc[n - k + j], term)
    for i, c in enumerate(acc):
        out[:, i] = c
    return DensePoly._from_dd(out)


def jacobi_via_recurrence(params: JacobiParams, n: int,
                          cap: int | None = None) -> DensePoly:
    """Degree-n polynomial via the three-term recurrence mapped to [0, 1].

    With p_m(x) = m! P_m(1 - 2x) the recurrence becomes
      p_{m+1} = (m+1) (A_m (1-2x) + B_m) p_m - (m+1) m C_m p_{m-1},
    the mapping constant D_m^{-1} (-2)^{-m} having simplified to m!.
    The m = 0 step is taken in the cancelled form
    p_1 = (alpha+1) - (alpha+beta+2) x, which stays finite at
    alpha+beta in {0, -1} where the raw A_0, B_0 quotients are 0/0.
    """
    params.validate()
    cap = default_degree_cap() if cap is None else cap
    if n > cap:
        raise DegreeCapExceeded(f"degree {n} exceeds cap {cap}")
    return _recurrence_chain(params, n)[n]


def _recurrence_chain(params: JacobiParams, n: int) -> list[DensePoly]:
    a, b = params.alpha, params.beta
    polys = [DensePoly.one()]
    if n >= 1:
        p1 = np.zeros((4, 2))
        p1[:, 0] = cdd_add_complex(cdd_from_complex(a), 1.0 + 0j)
        p1[:, 1] = cdd_neg(cdd_add_complex(cdd_from_complex(a + b), 2.0 + 0j))
        polys.append(DensePoly._from_dd(p1))
    ab = cdd_add(cdd_from_complex(a), cdd_from_complex(b))
    for m in range(1, n):
        s = cdd_add_complex(ab, complex(2 * m))        # 2m + a + b
        s1 = cdd_add_complex(s, 1.0 + 0j)              # 2m + a + b + 1
        s2 = cdd_add_complex(s, 2.0 + 0j)              # 2m + a + b + 2
        mab1 = cdd_add_complex(ab, complex(m + 1))     # m + a + b + 1
        # below ~1e-8 the division amplifies coefficient noise past any
        # useful accuracy even though the value is representable
        if abs(cdd_to_complex(s)) < BREAKDOWN_TOL or \
                abs(cdd_to_complex(mab1)) < BREAKDOWN_TOL:
            raise RecurrenceBreakdown(
                f"recurrence denominator vanishes at step m={m} "
                f"(2m+alpha+beta={cdd_to_complex(s)}, "
                f"m+alpha+beta+1={cdd_to_complex(mab1)})"
            )
        den = cdd_mul_d(cdd_mul(mab1, s), 2.0 * (m + 1))      # 2(m+1)(m+a+b+1)(2m+a+b)
        am = cdd_div(cdd_mul(cdd_mul(s1, s2), s), den)        # A_m
        asq = cdd_mul(cdd_from_complex(a), cdd_from_complex(a))
        bsq = cdd_mul(cdd_from_complex(b), cdd_from_complex(b))
        bm = cdd_div(cdd_mul(cdd_add(asq, cdd_neg(bsq)), s1), den)
        cden = cdd_mul_d(cdd_mul(mab1, s), float(m + 1))
        cm = cdd_div(
            cdd_mul(cdd_mul(cdd_add_complex(cdd_from_complex(a), complex(m)),
                            cdd_add_complex(cdd_from_complex(b), complex(m))),
                    s2),
            cden,
        )
        # p_{m+1} = [(m+1)(A+B) + (m+1)(-2A) x] p_m - (m+1) m C p_{m-1}
        u = cdd_mul_d(cdd_add(am, bm), float(m + 1))
        v = cdd_mul_d(am, -2.0 * (m + 1))
        w = cdd_mul_d(cm, float((m + 1) * m))

        pm = polys[m]._dd
        pm1 = polys[m - 1]._dd
        out = np.zeros((4, m + 2))
        cur = [(0.0, 0.0, 0.0, 0.0) for _ in range(m + 2)]
        for k in range(pm.shape[1]):
            ck = (pm[0, k], pm[1, k], pm[2, k], pm[3, k])
            cur[k] = cdd_add(cur[k], cdd_mul(u, ck))
            cur[k + 1] = cdd_add(cur[k + 1], cdd_mul(v, ck))
        for k in range(pm1.shape[1]):
            ck = (pm1[0, k], pm1[1, k], pm1[2, k], pm1[3, k])
            cur[k] = cdd_add(cur[k], cdd_neg(cdd_mul(w, ck)))
        for i, c in enumerate(cur):
            out[:, i] = c
        polys.append(DensePoly._from_dd(out, trim=False))
    return polys


# ---------------------------------------------------------------------------
# norms and Gram form


def norm_an(params: JacobiParams, n: int) -> complex:
    """Closed-form norm a_n = n! G(n+a+1) G(n+b+1) / ((2n+a+b+1) G(n+a+b+1)).

    n = 0 reduces to the continued Beta B(alpha+1, beta+1); that form stays
    finite at alpha+beta = -1 where the factor pair (2n+a+b+1) and
    Gamma(n+a+b+1) is a removable 0*inf.  For n >= 1 the log-Gamma route
    keeps degree-40 magnitudes out of overflow.
    """
    params.validate()
    if n < 0:
        raise ValueError("n must be nonnegative")
    a, b = params.alpha, params.beta
    if n == 0:
        return beta_fp(a + 1, b + 1)
    s = 2 * n + a + b + 1
    lg = (log_gamma(complex(n + 1)) + log_gamma(n + a + 1) + log_gamma(n + b + 1)
          - log_gamma(n + a + b + 1))
    import cmath

    return cmath.exp(lg) / s


def gram_entry(basis: "JacobiBasis", n: int, k: int) -> complex:
    """Finite-part inner product H-int p_n p_k w, via the exact Beta sum."""
    return basis.gram_entry(n, k)


def ode_residual_poly(params: JacobiParams, p: DensePoly, n: int) -> DensePoly:
    """x(1-x) p'' + [(alpha+1)(1-x) - (beta+1)x] p' + n(n+alpha+beta+1) p.

    Coefficientwise zero exactly when p solves the degree-n hypergeometric
    eigenvalue identity of this weight (multiplied-through form, regular at
    both endpoints).
    """
    a, b = params.alpha, params.beta
    x = DensePoly([0, 1])
    q = DensePoly([0, 1, -1])          # x(1-x)
    lin = DensePoly([a + 1]) - DensePoly([0, a + b + 2])  # (a+1) - (a+b+2)x
    lam = n * (n + a + b + 1)
    return q * p.derivative(2) + lin * p.derivative(1) + p.scale(lam)


def carlson_rn(params: JacobiParams, n: int) -> DensePoly:
    """Monic degree-n polynomial from the Beta-kernel average construction.

    R_n(z) = sum_j C(n,j) (-1)^j [B(b0+j, b1)/B(b0, b1)] z^(n-j) with
    b0 = -alpha-n, b1 = -beta-n, every B the analytic continuation.
    Proportional to p_n; the ratio is pinned down empirically by tests.
    """
    params.validate()
    a, b = params.alpha, params.beta
    b0 = -a - n
    b1 = -b - n
    denom = beta_fp(b0, b1)
    if denom == 0:
        raise PoleError(
            f"continued Beta B({b0}, {b1}) vanishes; ratio construction undefined"
        )
    coeffs = [0j] * (n + 1)
    for j in range(n + 1):
        coeffs[n - j] = ((-1) ** j * math.comb(n, j)
                         * beta_fp(b0 + j, b1) / denom)
    return DensePoly(coeffs)


# ---------------------------------------------------------------------------


@dataclass
class JacobiBasis:
    """Cached p_0..p_n_max with norms for one parameter pair.

    Construction is single-writer; a completed instance is immutable in
    practice and safe for concurrent reads.
    """

    params: JacobiParams
    n_max: int
    polys: list[DensePoly] = field(init=False, repr=False)
    norms: list[complex] = field(init=False, repr=False)

    def __post_init__(self):
        cap = default_degree_cap()
        if self.n_max > cap:
            raise DegreeCapExceeded(
                f"n_max={self.n_max} exceeds cap {cap} "
                "(set FPJ_N_MAX_CAP to raise it)"
            )
        if self.n_max < 0:
            raise ValueError("n_max must be nonnegative")
        self.params.validate()
        self.polys = _recurrence_chain(self.params, self.n_max)
        self.norms = [norm_an(self.params, n) for n in range(self.n_max + 1)]
        self._moments = None
        self._sup_norms = None
        # Finite-part sums may be computed in the reflected orientation
        # x -> 1-x, which swaps (alpha, beta) and flips p_n by (-1)^n.
        # The moment table of the orientation whose second exponent has
        # the larger real part decays fastest, which shrinks the
        # absolute-term envelope of the cancelling sums by orders of
        # magnitude.  Values are identical; only roundoff differs.
        a, b = self.params.alpha, self.params.beta
        self._fp_swap = a.real > b.real + 1e-12
        self._fp_params = JacobiParams(b, a, mode="permissive") \
            if self._fp_swap else self.params
        self._fp_chain = None
        self._fp_moments = None

    def poly(self, n: int) -> DensePoly:
        if n > self.n_max:
            raise DegreeCapExceeded(f"n={n} beyond basis n_max={self.n_max}")
        return self.polys[n]

    def norm(self, n: int) -> complex:
        if n > self.n_max:
            raise DegreeCapExceeded(f"n={n} beyond basis n_max={self.n_max}")
        return self.norms[n]

    def moment_table(self, max_degree: int) -> np.ndarray:
        """Continued-Beta moments B(alpha+j+1, beta+1), j = 0..max_degree."""
        if self._moments is None or self._moments.shape[1] <= max_degree:
            self._moments = finite_part.moment_table(self.params, max_degree)
        return self._moments

    def sup_norm(self, n: int) -> float:
        """max |p_n| on a fixed 65-point grid (term-magnitude scale)."""
        if self._sup_norms is None:
            grid = np.linspace(0.0, 1.0, 65)
            self._sup_norms = [
                float(np.abs(p.eval_many(grid)).max()) for p in self.polys
            ]
        return self._sup_norms[n]

    def fp_chain(self) -> list[DensePoly]:
        """Basis polynomials in the finite-part working orientation."""
        if not self._fp_swap:
            return self.polys
        if self._fp_chain is None:
            self._fp_chain = _recurrence_chain(self._fp_params, self.n_max)
        return self._fp_chain

    def fp_moment_table(self, max_degree: int) -> np.ndarray:
        """Moment table in the finite-part working orientation."""
        if not self._fp_swap:
            return self.moment_table(max_degree)
        if self._fp_moments is None or self._fp_moments.shape[1] <= max_degree:
            self._fp_moments = finite_part.moment_table(self._fp_params,
                                                        max_degree)
        return self._fp_moments

    @property
    def fp_swapped(self) -> bool:
        return self._fp_swap

    def gram_entry(self, n: int, k: int) -> complex:
        """H-int p_n p_k w as the exact finite-part Beta sum."""
        if n > self.n_max or k > self.n_max:
            raise DegreeCapExceeded(f"(n, k)=({n}, {k}) beyond n_max={self.n_max}")
        chain = self.fp_chain()
        table = self.fp_moment_table(2 * self.n_max)
        val, _ = kernels.conv_dot(chain[n]._dd, chain[k]._dd, table)
        out = cdd_to_complex(val)
        if self._fp_swap and (n + k) % 2:
            out = -out
        return out

    def gram_matrix(self) -> np.ndarray:
        m = self.n_max + 1
        out = np.empty((m, m), dtype=np.complex128)
        for n in range(m):
            for k in range(n + 1):
                v = self.gram_entry(n, k)
                out[n, k] = v
                out[k, n] = v
        return out

    def leading_coefficient(self, n: int) -> complex:
        """Reference leading coefficient (-1)^n (n+alpha+beta+1)_n."""
        a, b = self.params.alpha, self.params.beta
        return (-1) ** n * pochhammer(n + a + b + 1, n)
