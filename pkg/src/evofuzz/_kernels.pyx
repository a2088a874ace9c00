# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementations of the hot comparison kernels.

Keep in lockstep with ``_kernels_py``: same names, same signatures, same
arithmetic up to summation order.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport exp, fabs

cnp.import_array()

NAME = "compiled"


def gaussian_samples(cnp.ndarray[cnp.float64_t, ndim=1] xs, double mean, double std):
    cdef Py_ssize_t n = xs.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(n)
    cdef Py_ssize_t i
    cdef double z, cut = 4.0 * std
    for i in range(n):
        if fabs(xs[i] - mean) > cut:
            out[i] = 0.0
        else:
            z = (xs[i] - mean) / std
            out[i] = exp(-0.5 * z * z)
    return out


def jaccard_it2_value(cnp.ndarray[cnp.float64_t, ndim=1] lower_a,
                      cnp.ndarray[cnp.float64_t, ndim=1] upper_a,
                      cnp.ndarray[cnp.float64_t, ndim=1] lower_b,
                      cnp.ndarray[cnp.float64_t, ndim=1] upper_b):
    cdef Py_ssize_t n = lower_a.shape[0]
    cdef double up_min = 0.0, up_max = 0.0, lo_min = 0.0, lo_max = 0.0
    cdef Py_ssize_t i
    for i in range(n):
        if upper_a[i] < upper_b[i]:
            up_min += upper_a[i]
            up_max += upper_b[i]
        else:
            up_min += upper_b[i]
            up_max += upper_a[i]
        if lower_a[i] < lower_b[i]:
            lo_min += lower_a[i]
            lo_max += lower_b[i]
        else:
            lo_min += lower_b[i]
            lo_max += lower_a[i]
    cdef double up_ratio = 1.0 if up_max == 0.0 else up_min / up_max
    cdef double lo_ratio = 1.0 if lo_max == 0.0 else lo_min / lo_max
    return 0.5 * (up_ratio + lo_ratio)


def zeng_li_value(cnp.ndarray[cnp.float64_t, ndim=1] lower_a,
                  cnp.ndarray[cnp.float64_t, ndim=1] upper_a,
                  cnp.ndarray[cnp.float64_t, ndim=1] lower_b,
                  cnp.ndarray[cnp.float64_t, ndim=1] upper_b):
    cdef Py_ssize_t n = lower_a.shape[0]
    cdef double total = 0.0
    cdef Py_ssize_t i
    for i in range(n):
        total += fabs(lower_a[i] - lower_b[i]) + fabs(upper_a[i] - upper_b[i])
    return 1.0 - total / (2.0 * n)


def hung_yang_value(cnp.ndarray[cnp.float64_t, ndim=2] slo_a,
                    cnp.ndarray[cnp.float64_t, ndim=2] sup_a,
                    cnp.ndarray[cnp.float64_t, ndim=2] slo_b,
                    cnp.ndarray[cnp.float64_t, ndim=2] sup_b,
                    cnp.ndarray[cnp.float64_t, ndim=1] z):
    cdef Py_ssize_t n_slices = slo_a.shape[0]
    cdef Py_ssize_t n_points = slo_a.shape[1]
    cdef double z_sum = 0.0, acc = 0.0, h, d_lo, d_up, hf
    cdef Py_ssize_t j, i
    for j in range(n_slices):
        z_sum += z[j]
    for i in range(n_points):
        hf = 0.0
        for j in range(n_slices):
            d_lo = fabs(slo_a[j, i] - slo_b[j, i])
            d_up = fabs(sup_a[j, i] - sup_b[j, i])
            h = d_lo if d_lo > d_up else d_up
            hf += z[j] * h
        acc += hf / z_sum
    cdef double val = 1.0 - acc / n_points
    if val < 0.0:
        return 0.0
    if val > 1.0:
        return 1.0
    return val


cdef double _grade(double u, double[:, ::1] slo, double[:, ::1] sup,
                   double[::1] z, Py_ssize_t n_slices, Py_ssize_t i) noexcept nogil:
    # Largest slice level whose interval at grid point i contains u; slices
    # are nested, so walk from the top level down.
    cdef Py_ssize_t j
    for j in range(n_slices - 1, -1, -1):
        if slo[j, i] <= u <= sup[j, i]:
            return z[j]
    return 0.0


def yang_lin_value(cnp.ndarray[cnp.float64_t, ndim=2] slo_a_arr,
                   cnp.ndarray[cnp.float64_t, ndim=2] sup_a_arr,
                   cnp.ndarray[cnp.float64_t, ndim=2] slo_b_arr,
                   cnp.ndarray[cnp.float64_t, ndim=2] sup_b_arr,
                   cnp.ndarray[cnp.float64_t, ndim=1] z_arr,
                   int per_interval):
    cdef double[:, ::1] slo_a = np.ascontiguousarray(slo_a_arr)
    cdef double[:, ::1] sup_a = np.ascontiguousarray(sup_a_arr)
    cdef double[:, ::1] slo_b = np.ascontiguousarray(slo_b_arr)
    cdef double[:, ::1] sup_b = np.ascontiguousarray(sup_b_arr)
    cdef double[::1] z = np.ascontiguousarray(z_arr)
    cdef Py_ssize_t n_slices = slo_a.shape[0]
    cdef Py_ssize_t n_points = slo_a.shape[1]
    cdef Py_ssize_t i, j, s
    cdef double u, f, g, uf, ug, num, den, acc = 0.0
    cdef double step
    for i in range(n_points):
        num = 0.0
        den = 0.0
        for j in range(2 * n_slices):
            for s in range(per_interval):
                step = s / <double>(per_interval - 1) if per_interval > 1 else 0.0
                if j < n_slices:
                    u = slo_a[j, i] + (sup_a[j, i] - slo_a[j, i]) * step
                else:
                    u = slo_b[j - n_slices, i] + \
                        (sup_b[j - n_slices, i] - slo_b[j - n_slices, i]) * step
                f = _grade(u, slo_a, sup_a, z, n_slices, i)
                g = _grade(u, slo_b, sup_b, z, n_slices, i)
                uf = u * f
                ug = u * g
                if uf < ug:
                    num += uf
                    den += ug
                else:
                    num += ug
                    den += uf
        acc += 1.0 if den == 0.0 else num / den
    return acc / n_points


def mohamed_abdaala_value(cnp.ndarray[cnp.float64_t, ndim=2] slo_a_arr,
                          cnp.ndarray[cnp.float64_t, ndim=2] sup_a_arr,
                          cnp.ndarray[cnp.float64_t, ndim=2] slo_b_arr,
                          cnp.ndarray[cnp.float64_t, ndim=2] sup_b_arr,
                          cnp.ndarray[cnp.float64_t, ndim=1] z_arr,
                          int per_interval):
    cdef double[:, ::1] slo_a = np.ascontiguousarray(slo_a_arr)
    cdef double[:, ::1] sup_a = np.ascontiguousarray(sup_a_arr)
    cdef double[:, ::1] slo_b = np.ascontiguousarray(slo_b_arr)
    cdef double[:, ::1] sup_b = np.ascontiguousarray(sup_b_arr)
    cdef double[::1] z = np.ascontiguousarray(z_arr)
    cdef Py_ssize_t n_slices = slo_a.shape[0]
    cdef Py_ssize_t n_points = slo_a.shape[1]
    cdef Py_ssize_t i, j, s
    cdef double u, sf, sg, num, den, acc = 0.0
    cdef double step
    for i in range(n_points):
        sf = 0.0
        sg = 0.0
        for j in range(2 * n_slices):
            for s in range(per_interval):
                step = s / <double>(per_interval - 1) if per_interval > 1 else 0.0
                if j < n_slices:
                    u = slo_a[j, i] + (sup_a[j, i] - slo_a[j, i]) * step
                else:
                    u = slo_b[j - n_slices, i] + \
                        (sup_b[j - n_slices, i] - slo_b[j - n_slices, i]) * step
                sf += 1.0 - u * _grade(u, slo_a, sup_a, z, n_slices, i)
                sg += 1.0 - u * _grade(u, slo_b, sup_b, z, n_slices, i)
        if sf < sg:
            num = sf
            den = sg
        else:
            num = sg
            den = sf
        acc += 1.0 if den == 0.0 else num / den
    return acc / n_points
