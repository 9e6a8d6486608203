# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels on int64 coordinates.

Callers (``ehrkit.kernels``) guarantee that every intermediate fits in
int64 and that facet scans see at most 64 points (tight sets are bitmasks).
"""

import numpy as np

from libc.stdlib cimport malloc, realloc, free

ctypedef long long i64
ctypedef unsigned long long u64


cdef inline i64 _gcd(i64 a, i64 b) noexcept nogil:
    cdef i64 t
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        t = a % b
        a = b
        b = t
    return a


cdef inline i64 _floordiv(i64 a, i64 b) noexcept nogil:
    # b > 0
    cdef i64 q = a / b
    if (a % b != 0) and (a < 0):
        q -= 1
    return q


cdef i64 _bareiss(i64* a, int n) noexcept nogil:
    """Determinant of the n x n row-major matrix ``a`` (overwritten)."""
    cdef int k, i, j, r
    cdef i64 prev = 1
    cdef i64 pivot, tmp
    cdef int sign = 1
    if n == 0:
        return 1
    for k in range(n - 1):
        if a[k * n + k] == 0:
            r = -1
            for i in range(k + 1, n):
                if a[i * n + k] != 0:
                    r = i
                    break
            if r < 0:
                return 0
            for j in range(n):
                tmp = a[k * n + j]
                a[k * n + j] = a[r * n + j]
                a[r * n + j] = tmp
            sign = -sign
        pivot = a[k * n + k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i * n + j] = (a[i * n + j] * pivot - a[i * n + k] * a[k * n + j]) / prev
        prev = pivot
    return sign * a[(n - 1) * n + n - 1]


def facet_scan(i64[:, ::1] pts, int d):
    cdef Py_ssize_t n = pts.shape[0]
    cdef int i, j, k, c, col, m1 = d - 1
    cdef i64 g, off, s
    cdef bint lo_side, hi_side, skip
    cdef u64 mask, tight
    cdef Py_ssize_t ntight = 0, cap = 64, t
    found = []
    if n < d:
        return found
    cdef int* idx = <int*> malloc(d * sizeof(int))
    cdef i64* rows = <i64*> malloc((m1 * d + 1) * sizeof(i64))
    cdef i64* minor = <i64*> malloc((m1 * m1 + 1) * sizeof(i64))
    cdef i64* normal = <i64*> malloc(d * sizeof(i64))
    cdef u64* masks = <u64*> malloc(cap * sizeof(u64))
    try:
        for i in range(d):
            idx[i] = i
        while True:
            mask = 0
            for i in range(d):
                mask |= (<u64> 1) << idx[i]
            skip = False
            for t in range(ntight):
                if (mask & masks[t]) == mask:
                    skip = True
                    break
            if not skip:
                for i in range(m1):
                    for k in range(d):
                        rows[i * d + k] = pts[idx[i + 1], k] - pts[idx[0], k]
                g = 0
                for col in range(d):
                    for i in range(m1):
                        c = 0
                        for k in range(d):
                            if k != col:
                                minor[i * m1 + c] = rows[i * d + k]
                                c += 1
                    normal[col] = _bareiss(minor, m1)
                    if col % 2 == 1:
                        normal[col] = -normal[col]
                    g = _gcd(g, normal[col])
                if g != 0:
                    off = 0
                    for k in range(d):
                        normal[k] = normal[k] / g
                        off += normal[k] * pts[idx[0], k]
                    lo_side = False
                    hi_side = False
                    tight = 0
                    for j in range(n):
                        s = -off
                        for k in range(d):
                            s += normal[k] * pts[j, k]
                        if s > 0:
                            hi_side = True
                        elif s < 0:
                            lo_side = True
                        else:
                            tight |= (<u64> 1) << j
                        if lo_side and hi_side:
                            break
                    if not (lo_side and hi_side):
                        if hi_side:
                            for k in range(d):
                                normal[k] = -normal[k]
                            off = -off
                        if ntight == cap:
                            cap *= 2
                            masks = <u64*> realloc(masks, cap * sizeof(u64))
                        masks[ntight] = tight
                        ntight += 1
                        found.append((tuple([normal[k] for k in range(d)]), off))
            i = d - 1
            while i >= 0 and idx[i] == n - d + i:
                i -= 1
            if i < 0:
                break
            idx[i] += 1
            for j in range(i + 1, d):
                idx[j] = idx[j - 1] + 1
    finally:
        free(idx)
        free(rows)
        free(minor)
        free(normal)
        free(masks)
    return found


cdef Py_ssize_t _scan(i64[:, ::1] normals, i64* bounds, i64[::1] lo, i64[::1] hi,
                      i64[:, ::1] out, bint collect) noexcept nogil:
    cdef Py_ssize_t f = normals.shape[0]
    cdef int d = lo.shape[0]
    cdef int last = d - 1
    cdef int i, q
    cdef Py_ssize_t total = 0, row = 0
    cdef i64 a, r, xl, xh, x
    cdef bint empty
    cdef i64* cur = <i64*> malloc((d + 1) * sizeof(i64))
    for i in range(last):
        cur[i] = lo[i]
    while True:
        xl = lo[last]
        xh = hi[last]
        empty = False
        for q in range(f):
            r = bounds[q]
            for i in range(last):
                r -= normals[q, i] * cur[i]
            a = normals[q, last]
            if a > 0:
                x = _floordiv(r, a)
                if x < xh:
                    xh = x
            elif a < 0:
                x = -_floordiv(r, -a)
                if x > xl:
                    xl = x
            elif r < 0:
                empty = True
            if empty or xl > xh:
                empty = True
                break
        if not empty:
            total += xh - xl + 1
            if collect:
                for x in range(xl, xh + 1):
                    for i in range(last):
                        out[row, i] = cur[i]
                    out[row, last] = x
                    row += 1
        i = last - 1
        while i >= 0 and cur[i] == hi[i]:
            cur[i] = lo[i]
            i -= 1
        if i < 0:
            break
        cur[i] += 1
    free(cur)
    return total


def scan_dilate(i64[:, ::1] normals, i64[::1] offsets, i64[::1] lo, i64[::1] hi,
                i64 m, bint strict, bint collect):
    cdef Py_ssize_t f = normals.shape[0]
    cdef int d = lo.shape[0]
    cdef Py_ssize_t q, total
    cdef i64[:, ::1] dummy = np.zeros((1, d), dtype=np.int64)
    cdef i64* bounds = <i64*> malloc((f + 1) * sizeof(i64))
    try:
        for q in range(f):
            bounds[q] = m * offsets[q] - (1 if strict else 0)
        total = _scan(normals, bounds, lo, hi, dummy, False)
        if not collect:
            return total
        out = np.empty((total, d), dtype=np.int64)
        if total:
            _scan(normals, bounds, lo, hi, out, True)
        return out
    finally:
        free(bounds)


def first_unreached(i64[:, ::1] prev, i64[:, ::1] base, i64[:, ::1] target,
                    i64[::1] lo, i64[::1] hi):
    cdef int d = lo.shape[0]
    cdef int i
    cdef Py_ssize_t a, b, size = 1
    cdef i64 key, shift = 0
    stride_arr = np.empty(d, dtype=np.int64)
    cdef i64[::1] stride = stride_arr
    for i in range(d - 1, -1, -1):
        stride[i] = size
        size *= hi[i] - lo[i] + 1
        shift += lo[i] * stride[i]
    seen_arr = np.zeros(size, dtype=np.uint8)
    cdef unsigned char[::1] seen = seen_arr
    kp_arr = np.zeros(prev.shape[0], dtype=np.int64)
    kb_arr = np.zeros(base.shape[0], dtype=np.int64)
    cdef i64[::1] kp = kp_arr
    cdef i64[::1] kb = kb_arr
    with nogil:
        for a in range(prev.shape[0]):
            for i in range(d):
                kp[a] += prev[a, i] * stride[i]
        for b in range(base.shape[0]):
            for i in range(d):
                kb[b] += base[b, i] * stride[i]
        for a in range(prev.shape[0]):
            for b in range(base.shape[0]):
                key = kp[a] + kb[b] - shift
                if 0 <= key < size:
                    seen[key] = 1
    for a in range(target.shape[0]):
        key = -shift
        for i in range(d):
            key += target[a, i] * stride[i]
        if key < 0 or key >= size or not seen[key]:
            return a
    return -1
