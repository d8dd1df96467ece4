"""Hadamard finite-part routes: series definition, Beta sums, split path."""

import cmath
import math
import random

import pytest
from scipy.integrate import quad

from fpjacobi.basis import JacobiParams, jacobi_rodrigues
from fpjacobi.errors import NonConvergent, PoleError
from fpjacobi.finite_part import (
    AnalyticOnInterval,
    TaylorPiece,
    finite_part_poly_weight,
    finite_part_series,
    finite_part_split,
    moment_table,
)
from fpjacobi.poly import DensePoly
from fpjacobi.special import beta_fp

PARAM_SETS = [
    (-0.5, -0.5),
    (2.3, 1.7),
    (-1.5 + 0.3j, -2.4),
    (0.5, -1.7 + 0.2j),
]


# -- series definition ---------------------------------------------------------

def test_series_constant_singular():
    # H-int_0^1 t^(-3/2) dt with f = 1: exponent alpha = -1/2 gives -2 f(0)
    piece = TaylorPiece(0, [1.0], math.inf)
    assert finite_part_series(-0.5, piece, 1.0) == pytest.approx(-2.0, abs=1e-13)


def test_series_convergent_case():
    piece = TaylorPiece(0, [1.0], math.inf)
    assert finite_part_series(2.0, piece, 1.0) == pytest.approx(0.5, rel=1e-13)


def test_series_linear():
    # f(t) = t: single term c_1/(1 + alpha) = 1/(1/2) = 2
    piece = TaylorPiece(0, [0.0, 1.0], math.inf)
    assert finite_part_series(-0.5, piece, 1.0) == pytest.approx(2.0, rel=1e-13)


def test_series_geometric_tail():
    # f(t) = 1/(1-t/2) = sum (t/2)^n, radius 2; integral at alpha = 1:
    # int_0^1 f = 2 log 2, oracle by quadrature
    piece = TaylorPiece(0, [0.5 ** n for n in range(120)], 2.0)
    val = finite_part_series(1.0, piece, 1.0)
    ref, _ = quad(lambda t: 1.0 / (1.0 - t / 2.0), 0, 1, epsabs=1e-13)
    assert val == pytest.approx(ref, rel=1e-12)


def test_series_errors():
    piece = TaylorPiece(0, [1.0], 1.5)
    with pytest.raises(PoleError):
        finite_part_series(-2.0, piece, 1.0)
    with pytest.raises(NonConvergent):
        finite_part_series(0.5, piece, 1.6)
    with pytest.raises(NonConvergent):
        finite_part_series(0.5, piece, 0.0)
    with pytest.raises(ValueError):
        finite_part_series(0.5, TaylorPiece(1, [1.0], 1.0), 0.5)
    with pytest.raises(ValueError):
        TaylorPiece(0, [1.0], 0.0)
    with pytest.raises(ValueError):
        TaylorPiece(2, [1.0], 1.0)


# -- Beta-sum route -------------------------------------------------------------

def test_poly_weight_examples():
    assert finite_part_poly_weight(
        JacobiParams(0, 0), DensePoly([1])) == pytest.approx(1.0, rel=1e-13)
    # weight exponent -3/2 at 0: continued Beta B(-1/2, 1) = -2
    assert finite_part_poly_weight(
        JacobiParams(-1.5, 0), DensePoly([1])) == pytest.approx(-2.0, rel=1e-13)
    assert finite_part_poly_weight(
        JacobiParams(-0.5, -0.5), DensePoly([0, 1])) == pytest.approx(
        math.pi / 2, rel=1e-13)


def test_poly_weight_linearity():
    rng = random.Random(17)
    params = JacobiParams(-1.5 + 0.3j, -2.4)
    table = moment_table(params, 16)
    for _ in range(40):
        p = DensePoly([complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
                       for _ in range(rng.randint(1, 13))])
        q = DensePoly([complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
                       for _ in range(rng.randint(1, 13))])
        a = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        b = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        lhs = finite_part_poly_weight(params, p.scale(a) + q.scale(b), table)
        rhs = a * finite_part_poly_weight(params, p, table) \
            + b * finite_part_poly_weight(params, q, table)
        assert abs(lhs - rhs) <= 1e-12 * (abs(lhs) + abs(rhs) + 1)


def test_moment_table_matches_beta():
    params = JacobiParams(0.5, -1.7 + 0.2j)
    table = moment_table(params, 12)
    for j in (0, 1, 5, 12):
        direct = beta_fp(params.alpha + 1 + j, params.beta + 1)
        got = complex(table[0, j] + table[1, j], table[2, j] + table[3, j])
        assert got == pytest.approx(direct, rel=1e-12)


def test_analytic_continuation_in_alpha():
    # alpha -> FP(p; alpha) continuous across Re alpha = -1 along a small
    # arc, consistent with the continued-Beta formula at each point
    p = DensePoly([1.0, -0.3, 0.2])
    vals = []
    for t in range(-4, 5):
        alpha = complex(-1.0 + 0.05 * t, 0.3)
        params = JacobiParams(alpha, 0.5)
        v = finite_part_poly_weight(params, p)
        ref = sum(c * beta_fp(alpha + k + 1, 1.5)
                  for k, c in enumerate(p.coeffs))
        assert v == pytest.approx(ref, rel=1e-12)
        vals.append(v)
    steps = [abs(b - a) for a, b in zip(vals, vals[1:])]
    assert max(steps) < 10 * (min(steps) + 1e-6)  # no jump across the line


# -- split-and-subtract route ----------------------------------------------------

def test_split_constant_reduces_to_beta():
    for ab in PARAM_SETS:
        params = JacobiParams(*ab)
        f = AnalyticOnInterval.from_polynomial(DensePoly([1]))
        got = finite_part_split(params, f)
        ref = beta_fp(params.alpha + 1, params.beta + 1)
        assert got == pytest.approx(ref, rel=1e-9)


def test_split_matches_beta_sum_on_p1():
    params = JacobiParams(-1.5, 0.5)
    p1 = jacobi_rodrigues(params, 1)
    f = AnalyticOnInterval.from_polynomial(p1)
    got = finite_part_split(params, f)
    ref = finite_part_poly_weight(params, p1)
    assert got == pytest.approx(ref, rel=1e-9, abs=1e-12)


def test_split_convergent_case_matches_plain_quadrature():
    params = JacobiParams(0.3, 0.7)
    piece0 = TaylorPiece(0, [1 / math.factorial(k) for k in range(25)], math.inf)
    piece1 = TaylorPiece(
        1, [math.e / math.factorial(k) for k in range(25)], math.inf)
    f = AnalyticOnInterval(fn=lambda x: math.exp(x), piece0=piece0,
                           piece1=piece1)
    got = finite_part_split(params, f)
    ref, _ = quad(lambda x: math.exp(x), 0, 1, weight="alg",
                  wvar=(0.3, 0.7), epsabs=1e-12)
    assert got == pytest.approx(ref, rel=1e-9)


@pytest.mark.parametrize("ab", PARAM_SETS)
def test_two_path_equivalence_polynomials(ab):
    # degree <= 20 polynomials: split route vs Beta-sum route
    rng = random.Random(sum(ord(c) for c in str(ab)))
    params = JacobiParams(*ab)
    table = moment_table(params, 24)
    for deg in (3, 11, 20):
        p = DensePoly([complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
                       for _ in range(deg + 1)])
        f = AnalyticOnInterval.from_polynomial(p)
        ref = finite_part_poly_weight(params, p, table)
        got = finite_part_split(params, f)
        assert abs(got - ref) <= 1e-9 * (abs(ref) + 1)


def test_split_path_independence():
    # moving the split point and increasing the subtraction order must not
    # change the value (finite parts are additive over the interval)
    params = JacobiParams(-1.5 + 0.3j, -2.4)
    p = DensePoly([0.7, -0.2, 0.05, 0.3])
    f = AnalyticOnInterval.from_polynomial(p)
    base = finite_part_split(params, f, split=0.5)
    m0 = math.ceil(max(-params.alpha.real, -params.beta.real, 0.0)) + 2
    for split in (0.3, 0.5, 0.7):
        for m in (m0, m0 + 2):
            v = finite_part_split(params, f, split=split, m=m)
            assert abs(v - base) <= 1e-9 * (abs(base) + 1)


def test_split_chebyshev_model_pieces():
    # Taylor pieces derived from a Chebyshev interpolant (basis
    # conversion, not numerical differentiation)
    from fpjacobi.expansion import chebyshev_fit

    model = chebyshev_fit(lambda x: cmath.exp(x), 24)
    f = AnalyticOnInterval.from_chebyshev(model)
    # pieces must reproduce Taylor coefficients of exp at both endpoints;
    # the conversion amplifies coefficient noise like m^(2k), so the
    # tolerance widens with the derivative order
    for k in range(5):
        tol = 1e-10 * 14.0 ** (2 * k) + 1e-12
        assert f.piece0.coeffs[k] == pytest.approx(
            1 / math.factorial(k), rel=tol)
        assert f.piece1.coeffs[k] == pytest.approx(
            math.e / math.factorial(k), rel=tol)
    params = JacobiParams(0.3, 0.7)
    got = finite_part_split(params, f)
    ref, _ = quad(lambda x: math.exp(x), 0, 1, weight="alg",
                  wvar=(0.3, 0.7), epsabs=1e-12)
    assert got == pytest.approx(ref, rel=1e-9)


def test_split_errors():
    params = JacobiParams(-0.5, -0.5)
    f = AnalyticOnInterval.from_polynomial(DensePoly([1]))
    from fpjacobi.errors import InvalidParameters

    with pytest.raises(InvalidParameters):
        finite_part_split(params, f, split=0.0)
    with pytest.raises(InvalidParameters):
        finite_part_split(params, f, m=0)   # too small for Re alpha = -1/2? m>=1 needed
    piece = TaylorPiece(0, [1.0], 0.25)
    g = AnalyticOnInterval(fn=lambda x: 1.0, piece0=piece,
                           piece1=TaylorPiece(1, [1.0], math.inf))
    with pytest.raises(NonConvergent):
        finite_part_split(params, g, split=0.5)


def test_taylor_piece_growth_constant():
    piece = TaylorPiece(0, [1.0, 2.0, 4.0, 8.0], 0.5)
    assert piece.growth_constant(0.5) == pytest.approx(1.0)
