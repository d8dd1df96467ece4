"""Chebyshev sampling bridge and Jacobi-series expansion."""

import cmath
import math
import random

import numpy as np
import pytest

from fpjacobi.basis import JacobiBasis, JacobiParams
from fpjacobi.errors import DegreeCapExceeded, EvaluationFailure, InsufficientData
from fpjacobi.expansion import (
    EllipseDomain,
    chebyshev_fit,
    convergence_estimate,
    evaluate_expansion,
    evaluate_expansion_many,
    expansion_coefficients,
)
from fpjacobi.poly import DensePoly

RHO_POLE_AT_2 = 3 + 2 * math.sqrt(2)  # ellipse with foci {0,1} through x=2


# -- chebyshev_fit ---------------------------------------------------------------

def test_fit_constant():
    m = chebyshev_fit(lambda x: 1.0, 16)
    assert m.coeffs[0] == pytest.approx(1.0, rel=1e-14)
    assert len(m.coeffs) == 1  # trailing noise trimmed


def test_fit_linear():
    # x = (Ttilde_0 + Ttilde_1)/2
    m = chebyshev_fit(lambda x: x, 8)
    assert m.coeffs[0] == pytest.approx(0.5, rel=1e-14)
    assert m.coeffs[1] == pytest.approx(0.5, rel=1e-14)
    assert len(m.coeffs) == 2


def test_fit_exp_decay():
    m = chebyshev_fit(lambda x: math.exp(x), 40)
    mags = [abs(c) for c in m.coeffs]
    for a, b in zip(mags, mags[1:]):
        assert b < a  # strictly decaying
    assert m.decay_rate > 5.0


def test_fit_evaluation_failure():
    with pytest.raises(EvaluationFailure):
        chebyshev_fit(lambda x: 1.0 / (x - 0.5), 16)  # pole at a node
    with pytest.raises(EvaluationFailure):
        chebyshev_fit(lambda x: math.exp(2000.0), 4)


def test_model_evaluate_clenshaw():
    m = chebyshev_fit(lambda x: math.exp(x) * math.cos(3 * x), 48)
    for x in (0.0, 0.123, 0.5, 0.987, 1.0):
        assert m.evaluate(x) == pytest.approx(
            math.exp(x) * math.cos(3 * x), abs=1e-13)
    xs = np.linspace(0, 1, 17)
    np.testing.assert_allclose(
        m.eval_many(xs), np.exp(xs) * np.cos(3 * xs), atol=1e-13)


# -- EllipseDomain ----------------------------------------------------------------

def test_ellipse_membership():
    dom = EllipseDomain(RHO_POLE_AT_2)
    assert dom.contains(0.5)
    assert dom.contains(0.0) and dom.contains(1.0)
    assert dom.contains(1.9)        # inside: pole at exactly 2.0
    assert not dom.contains(2.0)    # the boundary passes through the pole
    assert not dom.contains(2.5)
    assert dom.semi_major == pytest.approx((RHO_POLE_AT_2 + 1 / RHO_POLE_AT_2) / 4)
    # semi-axes obey A^2 - B^2 = 1/4 (focal half-distance squared)
    assert dom.semi_major ** 2 - dom.semi_minor ** 2 == pytest.approx(0.25)
    with pytest.raises(ValueError):
        EllipseDomain(0.9)


# -- expansion coefficients --------------------------------------------------------

def test_expand_basis_polynomial_is_delta():
    basis = JacobiBasis(JacobiParams(-1.5 + 0.3j, -2.4), 8)
    exp_ = expansion_coefficients(basis, basis.polys[2])
    assert exp_.coeffs[2] == pytest.approx(1.0, rel=1e-10)
    for n, c in enumerate(exp_.coeffs):
        if n != 2:
            assert abs(c) <= 1e-10


def test_expand_linear_closed_form():
    # f(x) = x: f_0 = (alpha+1)/(alpha+beta+2), f_1 = -1/(alpha+beta+2)
    for ab in [(2.3, 1.7), (-1.5 + 0.3j, -2.4), (0.0, 0.0)]:
        params = JacobiParams(*ab)
        basis = JacobiBasis(params, 6)
        exp_ = expansion_coefficients(basis, DensePoly([0, 1]))
        s = params.alpha + params.beta + 2
        assert exp_.coeffs[0] == pytest.approx((params.alpha + 1) / s, rel=1e-12)
        assert exp_.coeffs[1] == pytest.approx(-1 / s, rel=1e-12)
        for c in exp_.coeffs[2:]:
            assert abs(c) <= 1e-12


@pytest.mark.parametrize("ab", [(-0.5, -0.5), (2.3, 1.7), (0.0, 0.0),
                                (0.5, -1.7 + 0.2j)])
def test_projection_idempotence(ab):
    # expand a degree-15 polynomial, synthesize the expansion back into a
    # polynomial, expand again: the coefficient vector must reproduce
    rng = random.Random(11)
    params = JacobiParams(*ab)
    basis = JacobiBasis(params, 15)
    p = DensePoly([complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
                   for _ in range(16)])
    f = expansion_coefficients(basis, p)
    q = DensePoly.zero()
    for n, c in enumerate(f.coeffs):
        q = q + basis.polys[n].scale(c)
    f2 = expansion_coefficients(basis, q)
    scale = max(abs(c) for c in f.coeffs)
    for c1, c2 in zip(f.coeffs, f2.coeffs):
        assert abs(c1 - c2) <= 1e-10 * scale


def test_projection_idempotence_within_floor_extreme_params():
    # at strongly non-classical complex parameters the O(1)-coefficient
    # synthesis is dominated by the wildest basis element; reconstruction
    # error must stay inside the advertised noise floor
    rng = random.Random(11)
    basis = JacobiBasis(JacobiParams(0.5, -1.7 + 0.2j), 15)
    coeffs = [complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
              for _ in range(16)]
    p = DensePoly.zero()
    for n, c in enumerate(coeffs):
        p = p + basis.polys[n].scale(c)
    exp_ = expansion_coefficients(basis, p)
    for n in range(16):
        bound = max(1e-10, 3.0 * exp_.noise_floors[n])
        assert abs(exp_.coeffs[n] - coeffs[n]) <= bound


def test_coefficient_map_linearity():
    params = JacobiParams(2.3, 1.7)
    basis = JacobiBasis(params, 10)
    p = DensePoly([0.3, -1.0, 0.2, 0.7])
    q = DensePoly([1.0, 0.5, -0.25])
    a, b = 0.7 - 0.2j, -1.3
    ep = expansion_coefficients(basis, p)
    eq = expansion_coefficients(basis, q)
    epq = expansion_coefficients(basis, p.scale(a) + q.scale(b))
    for n in range(11):
        want = a * ep.coeffs[n] + b * eq.coeffs[n]
        assert abs(epq.coeffs[n] - want) <= 1e-12 * (abs(want) + 1)


def test_exp_round_trip_classical():
    params = JacobiParams(-0.5, -0.5)
    basis = JacobiBasis(params, 25)
    model = chebyshev_fit(lambda x: math.exp(x), 58)
    exp_ = expansion_coefficients(basis, model)
    xs = np.linspace(0, 1, 101)
    vals = evaluate_expansion_many(exp_, basis, xs)
    assert np.abs(vals - np.exp(xs)).max() <= 1e-9


def test_exp_coefficients_match_gauss_chebyshev():
    # alpha = beta = -1/2: the classical inner products via Gauss-Chebyshev
    # quadrature, int_0^1 h(x)/sqrt(x(1-x)) dx = (pi/K) sum h(x_j)
    params = JacobiParams(-0.5, -0.5)
    basis = JacobiBasis(params, 12)
    model = chebyshev_fit(lambda x: math.exp(x), 40)
    exp_ = expansion_coefficients(basis, model)
    K = 400
    nodes = [(1 + math.cos((2 * j - 1) * math.pi / (2 * K))) / 2
             for j in range(1, K + 1)]
    for n in range(13):
        s = sum(math.exp(x) * basis.polys[n](x).real for x in nodes)
        fn_ref = (math.pi / K) * s / basis.norms[n].real
        assert exp_.coeffs[n].real == pytest.approx(fn_ref, rel=1e-8, abs=1e-8)


def test_round_trip_decay_until_floor():
    # sup error decreases geometrically with N until the noise floor
    params = JacobiParams(0.0, 0.0)
    xs = np.linspace(0, 1, 101)
    errs = []
    for N in (4, 8, 12, 16):
        basis = JacobiBasis(params, N)
        model = chebyshev_fit(lambda x: 1 / (2 - x), 2 * N + 8)
        exp_ = expansion_coefficients(basis, model)
        vals = evaluate_expansion_many(exp_, basis, xs)
        errs.append(np.abs(vals - 1 / (2 - xs)).max())
    for a, b in zip(errs, errs[1:]):
        assert b < a
    assert errs[-1] < 1e-9


def test_truncation_cap():
    basis = JacobiBasis(JacobiParams(0, 0), 5)
    with pytest.raises(DegreeCapExceeded):
        expansion_coefficients(basis, DensePoly([1]), n_trunc=6)


# -- evaluation ---------------------------------------------------------------------

def test_evaluate_examples():
    basis = JacobiBasis(JacobiParams(0.5, 0.5), 5)
    zero = expansion_coefficients(basis, DensePoly([0]))
    assert evaluate_expansion(zero, basis, 0.3) == 0
    one = expansion_coefficients(basis, DensePoly([1]))
    assert evaluate_expansion(one, basis, 0.77) == pytest.approx(1.0, rel=1e-12)
    xexp = expansion_coefficients(basis, DensePoly([0, 1]))
    assert evaluate_expansion(xexp, basis, 0.3) == pytest.approx(0.3, abs=1e-12)


def test_evaluate_outside_domain_warns():
    params = JacobiParams(0, 0)
    basis = JacobiBasis(params, 10)
    model = chebyshev_fit(lambda x: 1 / (2 - x), 28)
    exp_ = expansion_coefficients(basis, model)
    with pytest.warns(UserWarning):
        evaluate_expansion(exp_, basis, 3.0 + 0j)


# -- convergence estimate --------------------------------------------------------------

def test_rho_polynomial_sentinel():
    basis = JacobiBasis(JacobiParams(0, 0), 12)
    exp_ = expansion_coefficients(basis, DensePoly([1, 2, 3]))
    assert convergence_estimate(exp_) == math.inf


def test_rho_exp_large():
    basis = JacobiBasis(JacobiParams(0, 0), 25)
    model = chebyshev_fit(lambda x: math.exp(x), 58)
    exp_ = expansion_coefficients(basis, model)
    try:
        rho = convergence_estimate(exp_)
    except InsufficientData:
        pytest.skip("entire function decayed below floor too fast to fit")
    assert rho > 1.0


def test_rho_pole_at_two():
    basis = JacobiBasis(JacobiParams(0, 0), 30)
    model = chebyshev_fit(lambda x: 1 / (2 - x), 68)
    exp_ = expansion_coefficients(basis, model)
    rho = convergence_estimate(exp_)
    assert abs(rho - RHO_POLE_AT_2) <= 0.10 * RHO_POLE_AT_2


def test_rho_insufficient_data():
    basis = JacobiBasis(JacobiParams(0, 0), 6)
    model = chebyshev_fit(lambda x: 1 / (2 - x), 20)
    exp_ = expansion_coefficients(basis, model, n_trunc=6)
    with pytest.raises(InsufficientData):
        convergence_estimate(exp_)


def test_tail_estimate_invariant():
    basis = JacobiBasis(JacobiParams(0, 0), 20)
    model = chebyshev_fit(lambda x: 1 / (2 - x), 48)
    exp_ = expansion_coefficients(basis, model)
    assert exp_.tail_estimate >= abs(exp_.coeffs[-1]) * exp_.term_scales[-1]


def test_representation_stability_across_sampling():
    # two sampling degrees give the same coefficients
    basis = JacobiBasis(JacobiParams(1.5 - 0.5j, -1.8), 15)
    e1 = expansion_coefficients(basis, chebyshev_fit(lambda x: cmath.exp(x), 38))
    e2 = expansion_coefficients(basis, chebyshev_fit(lambda x: cmath.exp(x), 58))
    for c1, c2 in zip(e1.coeffs, e2.coeffs):
        assert abs(c1 - c2) <= 1e-9 * (abs(c1) + 1)
