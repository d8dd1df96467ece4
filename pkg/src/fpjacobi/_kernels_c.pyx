# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel backend: double-double convolution / weighted-dot /
Horner loops.  Mirrors fpjacobi._kernels_py operation-for-operation, so
both backends return bit-identical values (the extension is built with
fp-contract disabled; fused multiply-adds would alter Dekker's error-free
transformations).
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

BACKEND = "compiled"

cdef double _SPLIT = 134217729.0  # 2**27 + 1


cdef struct dd:
    double hi
    double lo


cdef inline dd two_prod(double a, double b) noexcept nogil:
    cdef dd r
    cdef double p = a * b
    cdef double sa = _SPLIT * a
    cdef double ahi = sa - (sa - a)
    cdef double alo = a - ahi
    cdef double sb = _SPLIT * b
    cdef double bhi = sb - (sb - b)
    cdef double blo = b - bhi
    r.hi = p
    r.lo = ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo
    return r


cdef inline dd dd_mul(double xh, double xl, double yh, double yl) noexcept nogil:
    cdef dd p = two_prod(xh, yh)
    cdef double e = p.lo + (xh * yl + xl * yh)
    cdef dd r
    r.hi = p.hi + e
    r.lo = e - (r.hi - p.hi)
    return r


cdef inline dd dd_mul_d(double xh, double xl, double y) noexcept nogil:
    cdef dd p = two_prod(xh, y)
    cdef double e = p.lo + xl * y
    cdef dd r
    r.hi = p.hi + e
    r.lo = e - (r.hi - p.hi)
    return r


cdef inline dd dd_sub(double xh, double xl, double yh, double yl) noexcept nogil:
    cdef double sh = xh - yh
    cdef double bb = sh - xh
    cdef double e = (xh - (sh - bb)) + ((-yh) - bb)
    e += xl - yl
    cdef dd r
    r.hi = sh + e
    r.lo = e - (r.hi - sh)
    return r


cdef inline dd dd_add(double xh, double xl, double yh, double yl) noexcept nogil:
    cdef double sh = xh + yh
    cdef double bb = sh - xh
    cdef double e = (xh - (sh - bb)) + (yh - bb)
    e += xl + yl
    cdef dd r
    r.hi = sh + e
    r.lo = e - (r.hi - sh)
    return r


cdef inline double fabs_(double x) noexcept nogil:
    return -x if x < 0.0 else x


def conv_dot(cnp.ndarray[double, ndim=2] a,
             cnp.ndarray[double, ndim=2] b,
             cnp.ndarray[double, ndim=2] w):
    """sum_{i,j} a_i * b_j * w_{i+j} in double-double, plus abs envelope."""
    cdef double[:, ::1] av = np.ascontiguousarray(a)
    cdef double[:, ::1] bv = np.ascontiguousarray(b)
    cdef double[:, ::1] wv = np.ascontiguousarray(w)
    cdef Py_ssize_t na = av.shape[1], nb = bv.shape[1]
    cdef Py_ssize_t i, j, k
    cdef double xr, xrl, xi, xil, yr, yrl, yi, yil, zr, zrl, zi, zil, ax
    # two leading accumulator words plus a compensation word (absorbs the
    # residuals a plain dd add would discard; the Gram sums cancel by many
    # orders and the sloppy variant's operand-relative error is fatal there)
    cdef double srh = 0.0, srl = 0.0, src = 0.0
    cdef double sih = 0.0, sil = 0.0, sic = 0.0
    cdef double abs_sum = 0.0
    cdef double s1, s2, s3, e1, e2, e3, bb, vh, vl, rh, rl, wh, wl, oh, ol
    cdef dd p1, p2, p3, p4, tr, ti, ur, ui

    for i in range(na):
        xr = av[0, i]; xrl = av[1, i]; xi = av[2, i]; xil = av[3, i]
        ax = fabs_(xr) + fabs_(xi)
        if ax == 0.0 and xrl == 0.0 and xil == 0.0:
            continue
        for j in range(nb):
            yr = bv[0, j]; yrl = bv[1, j]; yi = bv[2, j]; yil = bv[3, j]
            k = i + j
            zr = wv[0, k]; zrl = wv[1, k]; zi = wv[2, k]; zil = wv[3, k]
            abs_sum += ax * (fabs_(yr) + fabs_(yi)) * (fabs_(zr) + fabs_(zi))

            p1 = dd_mul(xr, xrl, yr, yrl)
            p2 = dd_mul(xi, xil, yi, yil)
            tr = dd_sub(p1.hi, p1.lo, p2.hi, p2.lo)
            p3 = dd_mul(xr, xrl, yi, yil)
            p4 = dd_mul(xi, xil, yr, yrl)
            ti = dd_add(p3.hi, p3.lo, p4.hi, p4.lo)

            p1 = dd_mul(tr.hi, tr.lo, zr, zrl)
            p2 = dd_mul(ti.hi, ti.lo, zi, zil)
            ur = dd_sub(p1.hi, p1.lo, p2.hi, p2.lo)
            p3 = dd_mul(tr.hi, tr.lo, zi, zil)
            p4 = dd_mul(ti.hi, ti.lo, zr, zrl)
            ui = dd_add(p3.hi, p3.lo, p4.hi, p4.lo)

            # accumulate (exact two_sum chain, residuals -> c word)
            s1 = srh + ur.hi
            bb = s1 - srh
            e1 = (srh - (s1 - bb)) + (ur.hi - bb)
            s2 = srl + ur.lo
            bb = s2 - srl
            e2 = (srl - (s2 - bb)) + (ur.lo - bb)
            s3 = s2 + e1
            bb = s3 - s2
            e3 = (s2 - (s3 - bb)) + (e1 - bb)
            srh = s1
            srl = s3
            src += e2 + e3

            s1 = sih + ui.hi
            bb = s1 - sih
            e1 = (sih - (s1 - bb)) + (ui.hi - bb)
            s2 = sil + ui.lo
            bb = s2 - sil
            e2 = (sil - (s2 - bb)) + (ui.lo - bb)
            s3 = s2 + e1
            bb = s3 - s2
            e3 = (s2 - (s3 - bb)) + (e1 - bb)
            sih = s1
            sil = s3
            sic += e2 + e3

    vh = srh + srl
    bb = vh - srh
    vl = (srh - (vh - bb)) + (srl - bb)
    vl += src
    rh = vh + vl
    rl = vl - (rh - vh)

    wh = sih + sil
    bb = wh - sih
    wl = (sih - (wh - bb)) + (sil - bb)
    wl += sic
    oh = wh + wl
    ol = wl - (oh - wh)

    return (rh, rl, oh, ol), abs_sum


def conv(cnp.ndarray[double, ndim=2] a, cnp.ndarray[double, ndim=2] b):
    """Polynomial coefficient convolution in double-double."""
    cdef double[:, ::1] av = np.ascontiguousarray(a)
    cdef double[:, ::1] bv = np.ascontiguousarray(b)
    cdef Py_ssize_t na = av.shape[1], nb = bv.shape[1]
    out_arr = np.zeros((4, na + nb - 1))
    cdef double[:, ::1] ov = out_arr
    cdef Py_ssize_t i, j, k
    cdef double xr, xrl, xi, xil, yr, yrl, yi, yil
    cdef dd p1, p2, p3, p4, tr, ti, t

    for i in range(na):
        xr = av[0, i]; xrl = av[1, i]; xi = av[2, i]; xil = av[3, i]
        for j in range(nb):
            yr = bv[0, j]; yrl = bv[1, j]; yi = bv[2, j]; yil = bv[3, j]
            k = i + j

            p1 = dd_mul(xr, xrl, yr, yrl)
            p2 = dd_mul(xi, xil, yi, yil)
            tr = dd_sub(p1.hi, p1.lo, p2.hi, p2.lo)
            p3 = dd_mul(xr, xrl, yi, yil)
            p4 = dd_mul(xi, xil, yr, yrl)
            ti = dd_add(p3.hi, p3.lo, p4.hi, p4.lo)

            t = dd_add(ov[0, k], ov[1, k], tr.hi, tr.lo)
            ov[0, k] = t.hi; ov[1, k] = t.lo
            t = dd_add(ov[2, k], ov[3, k], ti.hi, ti.lo)
            ov[2, k] = t.hi; ov[3, k] = t.lo

    return out_arr


def horner_many(cnp.ndarray[double, ndim=2] p, xs):
    """Evaluate a dd polynomial at complex points; returns complex128 array."""
    cdef double[:, ::1] pv = np.ascontiguousarray(p)
    xs_arr = np.ascontiguousarray(np.asarray(xs, dtype=np.complex128))
    cdef double complex[::1] xv = xs_arr
    out_arr = np.empty(len(xs_arr), dtype=np.complex128)
    cdef double complex[::1] ov = out_arr
    cdef Py_ssize_t n = pv.shape[1], m = xv.shape[0]
    cdef Py_ssize_t t, k
    cdef double xr, xi, vrh, vrl, vih, vil
    cdef dd p1, p2, p3, p4, tr, ti, s

    for t in range(m):
        xr = xv[t].real
        xi = xv[t].imag
        vrh = pv[0, n - 1]; vrl = pv[1, n - 1]
        vih = pv[2, n - 1]; vil = pv[3, n - 1]
        for k in range(n - 2, -1, -1):
            p1 = dd_mul_d(vrh, vrl, xr)
            p2 = dd_mul_d(vih, vil, xi)
            tr = dd_sub(p1.hi, p1.lo, p2.hi, p2.lo)
            p3 = dd_mul_d(vrh, vrl, xi)
            p4 = dd_mul_d(vih, vil, xr)
            ti = dd_add(p3.hi, p3.lo, p4.hi, p4.lo)

            s = dd_add(tr.hi, tr.lo, pv[0, k], pv[1, k])
            vrh = s.hi; vrl = s.lo
            s = dd_add(ti.hi, ti.lo, pv[2, k], pv[3, k])
            vih = s.hi; vil = s.lo
        ov[t] = (vrh + vrl) + 1j * (vih + vil)
    return out_arr


def weighted_dot(c, w):
    """sum_j c_j * w_j in double-double, with the same abs_sum envelope."""
    one = np.zeros((4, 1))
    one[0, 0] = 1.0
    return conv_dot(one, np.asarray(c), np.asarray(w))
