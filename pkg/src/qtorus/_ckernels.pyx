# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; same signatures and results as ``_pykernels``."""

from libc.stdlib cimport malloc, calloc, free

ctypedef long long i64


cdef inline i64 _mod(i64 a, i64 m) nogil:
    cdef i64 r = a % m
    return r + m if r < 0 else r


cdef i64* _load_matrix(object h, int n, i64 ell) except NULL:
    cdef i64* buf = <i64*> malloc(n * n * sizeof(i64))
    if buf == NULL:
        raise MemoryError()
    cdef int i, j
    for i in range(n):
        row = h[i]
        for j in range(n):
            buf[i * n + j] = row[j] % ell
    return buf


cdef bint _is_central(const i64* hm, int n, i64 ell, const i64* s) nogil:
    cdef int i, j
    cdef i64 acc
    for j in range(n):
        acc = 0
        for i in range(n):
            acc = _mod(acc + hm[i * n + j] * s[i], ell)
        if acc != 0:
            return False
    return True


def image_count(h, long long ell):
    cdef int n = len(h)
    cdef i64 total = 1
    cdef int i, j, k
    for k in range(n):
        total *= ell
    cdef i64* hm = _load_matrix(h, n, ell)
    cdef i64* s = <i64*> calloc(n, sizeof(i64))
    cdef char* seen = <char*> calloc(total, 1)
    cdef i64 code, acc, count = 0, step
    if s == NULL or seen == NULL:
        free(hm); free(s); free(seen)
        raise MemoryError()
    try:
        with nogil:
            for step in range(total):
                code = 0
                for i in range(n):
                    acc = 0
                    for j in range(n):
                        acc = _mod(acc + hm[i * n + j] * s[j], ell)
                    code = code * ell + acc
                if not seen[code]:
                    seen[code] = 1
                    count += 1
                k = n - 1
                while k >= 0:
                    s[k] += 1
                    if s[k] < ell:
                        break
                    s[k] = 0
                    k -= 1
    finally:
        free(hm); free(s); free(seen)
    return count


def central_box_mask(h, long long ell, long long radius):
    cdef int n = len(h)
    cdef i64 side = 2 * radius + 1
    cdef i64 total = 1
    cdef int k
    for k in range(n):
        total *= side
    out = bytearray(total)
    cdef unsigned char[:] mv = out
    cdef i64* hm = _load_matrix(h, n, ell)
    cdef i64* s = <i64*> malloc(n * sizeof(i64))
    cdef i64 step
    if s == NULL:
        free(hm)
        raise MemoryError()
    for k in range(n):
        s[k] = -radius
    try:
        with nogil:
            for step in range(total):
                mv[step] = _is_central(hm, n, ell, s)
                k = n - 1
                while k >= 0:
                    s[k] += 1
                    if s[k] <= radius:
                        break
                    s[k] = -radius
                    k -= 1
    finally:
        free(hm); free(s)
    return bytes(out)


def first_central_in_box(h, long long ell, bounds):
    cdef int n = len(h)
    cdef i64* hm = _load_matrix(h, n, ell)
    cdef i64* s = <i64*> calloc(n, sizeof(i64))
    cdef i64* b = <i64*> malloc(n * sizeof(i64))
    cdef int k
    cdef bint found = False, nonzero
    if s == NULL or b == NULL:
        free(hm); free(s); free(b)
        raise MemoryError()
    try:
        for k in range(n):
            b[k] = bounds[k]
            if b[k] <= 0:
                return None
        with nogil:
            while True:
                nonzero = False
                for k in range(n):
                    if s[k] != 0:
                        nonzero = True
                        break
                if nonzero and _is_central(hm, n, ell, s):
                    found = True
                    break
                k = n - 1
                while k >= 0:
                    s[k] += 1
                    if s[k] < b[k]:
                        break
                    s[k] = 0
                    k -= 1
                if k < 0:
                    break
        if found:
            return tuple(s[k] for k in range(n))
        return None
    finally:
        free(hm); free(s); free(b)


def ordering_table(h, long long ell, lhs, rhs):
    cdef int n = len(h)
    cdef Py_ssize_t nl = len(lhs), nr = len(rhs), a, c
    cdef int i, j
    cdef i64 acc
    cdef i64* hm = _load_matrix(h, n, ell)
    cdef i64* w = <i64*> malloc(max(nl, 1) * n * sizeof(i64))
    cdef i64* t = <i64*> malloc(max(nr, 1) * n * sizeof(i64))
    cdef i64* sv = <i64*> malloc(n * sizeof(i64))
    if w == NULL or t == NULL or sv == NULL:
        free(hm); free(w); free(t); free(sv)
        raise MemoryError()
    try:
        for c in range(nr):
            vec = rhs[c]
            for j in range(n):
                t[c * n + j] = vec[j] % ell
        for a in range(nl):
            vec = lhs[a]
            for i in range(n):
                sv[i] = vec[i] % ell
            for j in range(n):
                acc = 0
                for i in range(j + 1, n):
                    acc = _mod(acc + hm[i * n + j] * sv[i], ell)
                w[a * n + j] = acc
        out = []
        for a in range(nl):
            row = [0] * nr
            for c in range(nr):
                acc = 0
                for j in range(n):
                    acc = _mod(acc + w[a * n + j] * t[c * n + j], ell)
                row[c] = acc
            out.append(row)
        return out
    finally:
        free(hm); free(w); free(t); free(sv)
