# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled integer kernels; same contract as the pure-Python module."""


def conv(list a, list b):
    cdef Py_ssize_t na = len(a), nb = len(b), i, j
    if na == 0 or nb == 0:
        return []
    cdef list out = [0] * (na + nb - 1)
    cdef object ai
    for i in range(na):
        ai = a[i]
        if ai:
            for j in range(nb):
                out[i + j] = out[i + j] + ai * b[j]
    return out


def sparse_mul(dict p, dict q):
    cdef dict out = {}
    cdef tuple ea, eb, e
    cdef Py_ssize_t k, n
    cdef object ca, cb, v
    for ea, ca in p.items():
        n = len(ea)
        for eb, cb in q.items():
            e = tuple([ea[k] + eb[k] for k in range(n)])
            v = out.get(e, 0) + ca * cb
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out
