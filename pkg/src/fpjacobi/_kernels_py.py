"""Pure-Python kernel backend.

Same contracts as the compiled backend ``fpjacobi._kernels_c``; the
double-double arithmetic is inlined into the loops (function-call overhead
would dominate otherwise).  Operation order matches the compiled code, so
the two backends produce bit-identical results.

Coefficient vectors arrive as numpy float64 arrays of shape (4, n) holding
rows (re_hi, re_lo, im_hi, im_lo).
"""

from __future__ import annotations

import numpy as np

_SPLIT = 134217729.0

BACKEND = "pure"


def conv_dot(a, b, w):
    """sum_{i,j} a_i * b_j * w_{i+j} in double-double.

    Returns ((re_hi, re_lo, im_hi, im_lo), abs_sum) where abs_sum
    accumulates |a_i|*|b_j|*|w_{i+j}| in the 1-norm |re|+|im| (a cheap
    upper-envelope used for noise-floor estimates).
    """
    arh, arl, aih, ail = (row.tolist() for row in a)
    brh, brl, bih, bil = (row.tolist() for row in b)
    wrh, wrl, wih, wil = (row.tolist() for row in w)
    na, nb = len(arh), len(brh)

    # accumulator: two leading words plus a compensation word absorbing
    # every residual the two-word renormalization would discard; the sum
    # error then comes from the dd products alone, which matters under
    # the (huge) cancellation of the Gram sums
    srh = srl = src = sih = sil = sic = 0.0
    abs_sum = 0.0
    for i in range(na):
        xr, xrl_, xi, xil_ = arh[i], arl[i], aih[i], ail[i]
        ax = abs(xr) + abs(xi)
        if ax == 0.0 and xrl_ == 0.0 and xil_ == 0.0:
            continue
        for j in range(nb):
            yr, yrl_, yi, yil_ = brh[j], brl[j], bih[j], bil[j]
            k = i + j
            zr, zrl_, zi, zil_ = wrh[k], wrl[k], wih[k], wil[k]
            abs_sum += ax * (abs(yr) + abs(yi)) * (abs(zr) + abs(zi))

            # t = a_i * b_j   (complex dd product, Dekker two_prod inline)
            # real: xr*yr - xi*yi ; imag: xr*yi + xi*yr
            p = xr * yr
            s1 = _SPLIT * xr
            h1 = s1 - (s1 - xr)
            l1 = xr - h1
            s2 = _SPLIT * yr
            h2 = s2 - (s2 - yr)
            l2 = yr - h2
            e = ((h1 * h2 - p) + h1 * l2 + l1 * h2) + l1 * l2
            e += xr * yrl_ + xrl_ * yr
            p1h = p + e
            p1l = e - (p1h - p)

            p = xi * yi
            s1 = _SPLIT * xi
            h1 = s1 - (s1 - xi)
            l1 = xi - h1
            s2 = _SPLIT * yi
            h2 = s2 - (s2 - yi)
            l2 = yi - h2
            e = ((h1 * h2 - p) + h1 * l2 + l1 * h2) + l1 * l2
            e += xi * yil_ + xil_ * yi
            p2h = p + e
            p2l = e - (p2h - p)

            trh = p1h - p2h
            bb = trh - p1h
            trl = (p1h - (trh - bb)) + ((-p2h) - bb)
            trl += p1l - p2l
            t = trh + trl
            trl = trl - (t - trh)
            trh = t

            p = xr * yi
            s1 = _SPLIT * xr
            h1 = s1 - (s1 - xr)
            l1 = xr - h1
            s2 = _SPLIT * yi
            h2 = s2 - (s2 - yi)
            l2 = yi - h2
            e = ((h1 * h2 - p) + h1 * l2 + l1 * h2) + l1 * l2
            e += xr * yil_ + xrl_ * yi
            p3h = p + e
            p3l = e - (p3h - p)

            p = xi * yr
            s1 = _SPLIT * xi
            h1 = s1 - (s1 - xi)
            l1 = xi - h1
            s2 = _SPLIT * yr
            h2 = s2 - (s2 - yr)
            l2 = yr - h2
            e = ((h1 * h2 - p) + h1 * l2 + l1 * h2) + l1 * l2
            e += xi * yrl_ + xil_ * yr
            p4h = p + e
            p4l = e - (p4h - p)

            tih = p3h + p4h
            bb = tih - p3h
            til = (p3h - (tih - bb)) + (p4h - bb)
            til += p3l + p4l
            t = tih + til
            til = til - (t - tih)
            tih = t

            # u = t * w_k  (complex dd product of dd operands)
            p = trh * zr
            s1 = _SPLIT * trh
            h1 = s1 - (s1 - trh)
            l1 = trh - h1
            s2 = _SPLIT * zr
            h2 = s2 - (s2 - zr)
            l2 = zr - h2
            e = ((h1 * h2 - p) + h1 * l2 + l1 * h2) + l1 * l2
            e += trh * zrl_ + trl * zr
            q1h = p + e
            q1l = e - (q1h - p)

            p = tih * zi
            s1 = _SPLIT * tih
            h1 = s1 - (s1 - tih)
            l1 = tih - h1
            s2 = _SPLIT * zi
            h2 = s2 - (s2 - zi)
            l2 = zi - h2
            e = ((h1 * h2 - p) + h1 * l2 + l1 * h2) + l1 * l2
            e += tih * zil_ + til * zi
            q2h = p + e
            q2l = e - (q2h - p)

            urh = q1h - q2h
            bb = urh - q1h
            url = (q1h - (urh - bb)) + ((-q2h) - bb)
            url += q1l - q2l
            t = urh + url
            url = url - (t - urh)
            urh = t

            p = trh * zi
            s1 = _SPLIT * trh
            h1 = s1 - (s1 - trh)
            l1 = trh - h1
            s2 = _SPLIT * zi
            h2 = s2 - (s2 - zi)
            l2 = zi - h2
            e = ((h1 * h2 - p) + h1 * l2 + l1 * h2) + l1 * l2
            e += trh * zil_ + trl * zi
            q3h = p + e
            q3l = e - (q3h - p)

            p = tih * zr
            s1 = _SPLIT * tih
            h1 = s1 - (s1 - tih)
            l1 = tih - h1
            s2 = _SPLIT * zr
            h2 = s2 - (s2 - zr)
            l2 = zr - h2
            e = ((h1 * h2 - p) + h1 * l2 + l1 * h2) + l1 * l2
            e += tih * zrl_ + til * zr
            q4h = p + e
            q4l = e - (q4h - p)

            uih = q3h + q4h
            bb = uih - q3h
            uil = (q3h - (uih - bb)) + (q4h - bb)
            uil += q3l + q4l
            t = uih + uil
            uil = uil - (t - uih)
            uih = t

            # accumulate: s += u  (exact two_sum chain, residuals -> c word)
            s1 = srh + urh
            bb = s1 - srh
            e1 = (srh - (s1 - bb)) + (urh - bb)
            s2 = srl + url
            bb = s2 - srl
            e2 = (srl - (s2 - bb)) + (url - bb)
            s3 = s2 + e1
            bb = s3 - s2
            e3 = (s2 - (s3 - bb)) + (e1 - bb)
            srh = s1
            srl = s3
            src += e2 + e3

            s1 = sih + uih
            bb = s1 - sih
            e1 = (sih - (s1 - bb)) + (uih - bb)
            s2 = sil + uil
            bb = s2 - sil
            e2 = (sil - (s2 - bb)) + (uil - bb)
            s3 = s2 + e1
            bb = s3 - s2
            e3 = (s2 - (s3 - bb)) + (e1 - bb)
            sih = s1
            sil = s3
            sic += e2 + e3

    # renormalize and fold in the compensation words
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
    ih_ = wh + wl
    il_ = wl - (ih_ - wh)

    return (rh, rl, ih_, il_), abs_sum


def conv(a, b):
    """Polynomial coefficient convolution in double-double."""
    na = a.shape[1]
    nb = b.shape[1]
    nc = na + nb - 1
    out = np.zeros((4, nc))
    orh, orl, oih, oil = (row.tolist() for row in out)
    arh, arl, aih, ail = (row.tolist() for row in a)
    brh, brl, bih, bil = (row.tolist() for row in b)
    for i in range(na):
        xr, xrl_, xi, xil_ = arh[i], arl[i], aih[i], ail[i]
        for j in range(nb):
            yr, yrl_, yi, yil_ = brh[j], brl[j], bih[j], bil[j]
            k = i + j

            p = xr * yr
            s1 = _SPLIT * xr
            h1 = s1 - (s1 - xr)
            l1 = xr - h1
            s2 = _SPLIT * yr
            h2 = s2 - (s2 - yr)
            l2 = yr - h2
            e = ((h1 * h2 - p) + h1 * l2 + l1 * h2) + l1 * l2
            e += xr * yrl_ + xrl_ * yr
            p1h = p + e
            p1l = e - (p1h - p)

            p = xi * yi
            s1 = _SPLIT * xi
            h1 = s1 - (s1 - xi)
            l1 = xi - h1
            s2 = _SPLIT * yi
            h2 = s2 - (s2 - yi)
            l2 = yi - h2
            e = ((h1 * h2 - p) + h1 * l2 + l1 * h2) + l1 * l2
            e += xi * yil_ + xil_ * yi
            p2h = p + e
            p2l = e - (p2h - p)

            trh = p1h - p2h
            bb = trh - p1h
            trl = (p1h - (trh - bb)) + ((-p2h) - bb)
            trl += p1l - p2l
            t = trh + trl
            trl = trl - (t - trh)
            trh = t

            p = xr * yi
            s1 = _SPLIT * xr
            h1 = s1 - (s1 - xr)
            l1 = xr - h1
            s2 = _SPLIT * yi
            h2 = s2 - (s2 - yi)
            l2 = yi - h2
            e = ((h1 * h2 - p) + h1 * l2 + l1 * h2) + l1 * l2
            e += xr * yil_ + xrl_ * yi
            p3h = p + e
            p3l = e - (p3h - p)

            p = xi * yr
            s1 = _SPLIT * xi
            h1 = s1 - (s1 - xi)
            l1 = xi - h1
            s2 = _SPLIT * yr
            h2 = s2 - (s2 - yr)
            l2 = yr - h2
            e = ((h1 * h2 - p) + h1 * l2 + l1 * h2) + l1 * l2
            e += xi * yrl_ + xil_ * yr
            p4h = p + e
            p4l = e - (p4h - p)

            tih = p3h + p4h
            bb = tih - p3h
            til = (p3h - (tih - bb)) + (p4h - bb)
            til += p3l + p4l
            t = tih + til
            til = til - (t - tih)
            tih = t

            # out[k] += t
            oh = orh[k]
            ol = orl[k]
            sh = oh + trh
            bb = sh - oh
            e = (oh - (sh - bb)) + (trh - bb)
            e += ol + trl
            orh[k] = sh + e
            orl[k] = e - (orh[k] - sh)

            oh = oih[k]
            ol = oil[k]
            sh = oh + tih
            bb = sh - oh
            e = (oh - (sh - bb)) + (tih - bb)
            e += ol + til
            oih[k] = sh + e
            oil[k] = e - (oih[k] - sh)

    out[0] = orh
    out[1] = orl
    out[2] = oih
    out[3] = oil
    return out


def horner_many(p, xs):
    """Evaluate a dd polynomial at complex points; returns complex128 array."""
    prh, prl, pih, pil = (row.tolist() for row in p)
    n = len(prh)
    xs = np.asarray(xs, dtype=np.complex128)
    out = np.empty(len(xs), dtype=np.complex128)
    for t, x in enumerate(xs.tolist()):
        xr = x.real
        xi = x.imag
        vrh = prh[n - 1]
        vrl = prl[n - 1]
        vih = pih[n - 1]
        vil = pil[n - 1]
        for k in range(n - 2, -1, -1):
            # v = v*x + c_k ; x is an exact double complex
            p_ = vrh * xr
            s1 = _SPLIT * vrh
            h1 = s1 - (s1 - vrh)
            l1 = vrh - h1
            s2 = _SPLIT * xr
            h2 = s2 - (s2 - xr)
            l2 = xr - h2
            e = ((h1 * h2 - p_) + h1 * l2 + l1 * h2) + l1 * l2
            e += vrl * xr
            p1h = p_ + e
            p1l = e - (p1h - p_)

            p_ = vih * xi
            s1 = _SPLIT * vih
            h1 = s1 - (s1 - vih)
            l1 = vih - h1
            s2 = _SPLIT * xi
            h2 = s2 - (s2 - xi)
            l2 = xi - h2
            e = ((h1 * h2 - p_) + h1 * l2 + l1 * h2) + l1 * l2
            e += vil * xi
            p2h = p_ + e
            p2l = e - (p2h - p_)

            trh = p1h - p2h
            bb = trh - p1h
            trl = (p1h - (trh - bb)) + ((-p2h) - bb)
            trl += p1l - p2l
            tt = trh + trl
            trl = trl - (tt - trh)
            trh = tt

            p_ = vrh * xi
            s1 = _SPLIT * vrh
            h1 = s1 - (s1 - vrh)
            l1 = vrh - h1
            s2 = _SPLIT * xi
            h2 = s2 - (s2 - xi)
            l2 = xi - h2
            e = ((h1 * h2 - p_) + h1 * l2 + l1 * h2) + l1 * l2
            e += vrl * xi
            p3h = p_ + e
            p3l = e - (p3h - p_)

            p_ = vih * xr
            s1 = _SPLIT * vih
            h1 = s1 - (s1 - vih)
            l1 = vih - h1
            s2 = _SPLIT * xr
            h2 = s2 - (s2 - xr)
            l2 = xr - h2
            e = ((h1 * h2 - p_) + h1 * l2 + l1 * h2) + l1 * l2
            e += vil * xr
            p4h = p_ + e
            p4l = e - (p4h - p_)

            tih = p3h + p4h
            bb = tih - p3h
            til = (p3h - (tih - bb)) + (p4h - bb)
            til += p3l + p4l
            tt = tih + til
            til = til - (tt - tih)
            tih = tt

            # + c_k
            ck_rh = prh[k]
            ck_rl = prl[k]
            sh = trh + ck_rh
            bb = sh - trh
            e = (trh - (sh - bb)) + (ck_rh - bb)
            e += trl + ck_rl
            vrh = sh + e
            vrl = e - (vrh - sh)

            ck_ih = pih[k]
            ck_il = pil[k]
            sh = tih + ck_ih
            bb = sh - tih
            e = (tih - (sh - bb)) + (ck_ih - bb)
            e += til + ck_il
            vih = sh + e
            vil = e - (vih - sh)

        out[t] = complex(vrh + vrl, vih + vil)
    return out


def weighted_dot(c, w):
    """sum_j c_j * w_j in double-double, with the same abs_sum envelope."""
    one = np.zeros((4, 1))
    one[0, 0] = 1.0
    return conv_dot(one, c, w)
