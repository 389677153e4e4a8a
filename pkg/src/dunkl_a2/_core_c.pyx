# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled twin of _core_py.core_sum; same contract, loop-based."""

from libc.math cimport exp, fmax


def core_sum(const double[::1] nu1, const double[::1] w1f1, const double[::1] w1g1,
             const double[::1] nu2, const double[::1] w2f2, const double[::1] w2g2,
             const double[::1] zn, const double[::1] zw,
             double a, double s, double l1, double l2, double l3, double peak):
    cdef Py_ssize_t m = zn.shape[0]
    cdef Py_ssize_t n1 = nu1.shape[0]
    cdef Py_ssize_t n2 = nu2.shape[0]
    cdef Py_ssize_t j, i
    cdef double t1, t2, phi1p, phi2p, phi1m, phi2m
    cdef double s1p, s2p, s1m, s2m, total = 0.0

    for j in range(m):
        t1 = s + a * zn[j]
        t2 = s - a * zn[j]
        phi1p = fmax(t1 * l1, t1 * l2)
        phi2p = fmax(t2 * l2, t2 * l3)
        phi1m = fmax(t2 * l1, t2 * l2)
        phi2m = fmax(t1 * l2, t1 * l3)
        s1p = 0.0
        s1m = 0.0
        for i in range(n1):
            s1p += w1f1[i] * exp(t1 * nu1[i] - phi1p)
            s1m += w1g1[i] * exp(t2 * nu1[i] - phi1m)
        s2p = 0.0
        s2m = 0.0
        for i in range(n2):
            s2p += w2f2[i] * exp(t2 * nu2[i] - phi2p)
            s2m += w2g2[i] * exp(t1 * nu2[i] - phi2m)
        total += zw[j] * (s1p * s2p * exp(phi1p + phi2p - peak)
                          + s1m * s2m * exp(phi1m + phi2m - peak))
    return total
