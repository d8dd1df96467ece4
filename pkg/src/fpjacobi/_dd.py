"""Scalar double-double arithmetic (~31 significant decimal digits).

A real value is carried as an unevaluated pair ``(hi, lo)`` with
``|lo| <= ulp(hi)/2``; a complex value as a 4-tuple
``(re_hi, re_lo, im_hi, im_lo)``.

The finite-part Beta sums of this package cancel by many orders of
magnitude (the power-basis representation of high-degree polynomials is
exponentially ill-conditioned), so plain float64 cannot certify the
orthogonality tolerances.  Every quantity that feeds those sums is built
with the helpers below; the array-shaped hot loops live in the kernel
backends instead.

Error-free transformations follow Dekker (1971) and Knuth; division uses
three correction steps.  No fma is assumed.
"""

from __future__ import annotations

_SPLITTER = 134217729.0  # 2**27 + 1


def two_sum(a: float, b: float):
    s = a + b
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    return s, err


def fast_two_sum(a: float, b: float):
    # requires |a| >= |b|
    s = a + b
    err = b - (s - a)
    return s, err


def two_prod(a: float, b: float):
    p = a * b
    aa = _SPLITTER * a
    ahi = aa - (aa - a)
    alo = a - ahi
    bb = _SPLITTER * b
    bhi = bb - (bb - b)
    blo = b - bhi
    err = ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo
    return p, err


def dd_add(xh, xl, yh, yl):
    sh, sl = two_sum(xh, yh)
    eh, el = two_sum(xl, yl)
    sl += eh
    sh, sl = fast_two_sum(sh, sl)
    sl += el
    sh, sl = fast_two_sum(sh, sl)
    return sh, sl


def dd_sub(xh, xl, yh, yl):
    return dd_add(xh, xl, -yh, -yl)


def dd_mul(xh, xl, yh, yl):
    ph, pl = two_prod(xh, yh)
    pl += xh * yl + xl * yh
    return fast_two_sum(ph, pl)


def dd_mul_d(xh, xl, y):
    ph, pl = two_prod(xh, y)
    pl += xl * y
    return fast_two_sum(ph, pl)


def dd_div(xh, xl, yh, yl):
    q1 = xh / yh
    # r = x - q1*y
    th, tl = dd_mul_d(yh, yl, q1)
    rh, rl = dd_sub(xh, xl, th, tl)
    q2 = rh / yh
    th, tl = dd_mul_d(yh, yl, q2)
    rh, rl = dd_sub(rh, rl, th, tl)
    q3 = rh / yh
    qh, ql = fast_two_sum(q1, q2)
    return dd_add(qh, ql, q3, 0.0)


def dd_neg(xh, xl):
    return -xh, -xl


def dd_abs_hi(xh, xl) -> float:
    return abs(xh)


# ---------------------------------------------------------------------------
# complex double-double: (re_hi, re_lo, im_hi, im_lo)

CDD_ZERO = (0.0, 0.0, 0.0, 0.0)
CDD_ONE = (1.0, 0.0, 0.0, 0.0)


def cdd_from_complex(z: complex):
    z = complex(z)
    return (z.real, 0.0, z.imag, 0.0)


def cdd_to_complex(z) -> complex:
    return complex(z[0] + z[1], z[2] + z[3])


def cdd_add(x, y):
    rh, rl = dd_add(x[0], x[1], y[0], y[1])
    ih, il = dd_add(x[2], x[3], y[2], y[3])
    return (rh, rl, ih, il)


def cdd_sub(x, y):
    rh, rl = dd_sub(x[0], x[1], y[0], y[1])
    ih, il = dd_sub(x[2], x[3], y[2], y[3])
    return (rh, rl, ih, il)


def cdd_neg(x):
    return (-x[0], -x[1], -x[2], -x[3])


def cdd_mul(x, y):
    ar, al, ai, ail = x
    br, bl, bi, bil = y
    # real part: ar*br - ai*bi
    p1h, p1l = dd_mul(ar, al, br, bl)
    p2h, p2l = dd_mul(ai, ail, bi, bil)
    rh, rl = dd_sub(p1h, p1l, p2h, p2l)
    # imag part: ar*bi + ai*br
    p3h, p3l = dd_mul(ar, al, bi, bil)
    p4h, p4l = dd_mul(ai, ail, br, bl)
    ih, il = dd_add(p3h, p3l, p4h, p4l)
    return (rh, rl, ih, il)


def cdd_mul_d(x, y: float):
    rh, rl = dd_mul_d(x[0], x[1], y)
    ih, il = dd_mul_d(x[2], x[3], y)
    return (rh, rl, ih, il)


def cdd_div(x, y):
    br, bl, bi, bil = y
    # |y|^2 in dd
    n1h, n1l = dd_mul(br, bl, br, bl)
    n2h, n2l = dd_mul(bi, bil, bi, bil)
    nh, nl = dd_add(n1h, n1l, n2h, n2l)
    # x * conj(y)
    num = cdd_mul(x, (br, bl, -bi, -bil))
    rh, rl = dd_div(num[0], num[1], nh, nl)
    ih, il = dd_div(num[2], num[3], nh, nl)
    return (rh, rl, ih, il)


def cdd_abs_hi(x) -> float:
    return abs(complex(x[0], x[2]))


def cdd_add_complex(x, z: complex):
    # exact embed of a double complex, then dd add
    return cdd_add(x, (z.real, 0.0, z.imag, 0.0))


def cdd_mul_rdd(x, th: float, tl: float):
    # multiply a complex dd by a real dd scalar
    rh, rl = dd_mul(x[0], x[1], th, tl)
    ih, il = dd_mul(x[2], x[3], th, tl)
    return (rh, rl, ih, il)


def dd_from_int(t: int):
    """Exact double-double embed of an integer of up to ~106 bits."""
    hi = float(t)
    lo = float(t - int(hi))
    return hi, lo
