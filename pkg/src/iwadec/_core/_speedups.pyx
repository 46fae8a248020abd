# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernel: fraction-free elimination and cyclotomic convolution.

Arithmetic stays on Python ints (arbitrary precision is required); Cython
removes interpreter dispatch in the inner loops.
"""

from math import gcd

BACKEND = "cython"


cpdef tuple poly_trim(c):
    cdef Py_ssize_t n = len(c)
    while n and c[n - 1] == 0:
        n -= 1
    return tuple(c[:n])


cpdef tuple poly_mul(tuple a, tuple b):
    cdef Py_ssize_t la = len(a), lb = len(b), i, j
    if la == 0 or lb == 0:
        return ()
    cdef list out = [0] * (la + lb - 1)
    cdef object ai
    for i in range(la):
        ai = a[i]
        if ai:
            for j in range(lb):
                out[i + j] = out[i + j] + ai * b[j]
    return poly_trim(out)


cpdef tuple poly_sub(tuple a, tuple b):
    cdef Py_ssize_t la = len(a), lb = len(b), n = la if la > lb else lb, i
    cdef list out = [0] * n
    for i in range(la):
        out[i] = a[i]
    for i in range(lb):
        out[i] = out[i] - b[i]
    return poly_trim(out)


cpdef tuple poly_exact_div(tuple a, tuple b):
    cdef Py_ssize_t la = len(a), lb = len(b), k, j
    if la == 0:
        return ()
    cdef object lb_lead = b[lb - 1]
    cdef list rem = list(a)
    cdef list q = [0] * (la - lb + 1)
    cdef object c
    for k in range(la - lb, -1, -1):
        c = rem[k + lb - 1]
        if c % lb_lead:
            raise ArithmeticError("inexact polynomial division in Bareiss step")
        c = c // lb_lead
        q[k] = c
        if c:
            for j in range(lb):
                rem[k + j] = rem[k + j] - c * b[j]
    for k in range(la):
        if rem[k]:
            raise ArithmeticError("inexact polynomial division in Bareiss step")
    return poly_trim(q)


cdef tuple _poly_weight(tuple p):
    cdef object m = 0
    cdef object c
    for c in p:
        if c < 0:
            c = -c
        if c > m:
            m = c
    return (len(p), m)


def bareiss_poly(rows):
    cdef list m = [list(r) for r in rows]
    cdef Py_ssize_t nrow = len(m)
    cdef Py_ssize_t ncol = len(m[0]) if nrow else 0
    cdef tuple prev = (1,)
    cdef list pivots = []
    cdef Py_ssize_t h = 0, col, r, j, best
    cdef tuple piv, lead
    cdef list row, top
    for col in range(ncol):
        best = -1
        for r in range(h, nrow):
            if (<list>m[r])[col]:
                if best < 0 or _poly_weight((<list>m[r])[col]) < _poly_weight((<list>m[best])[col]):
                    best = r
        if best < 0:
            continue
        m[h], m[best] = m[best], m[h]
        piv = (<list>m[h])[col]
        top = <list>m[h]
        for r in range(h + 1, nrow):
            row = <list>m[r]
            lead = row[col]
            if lead:
                for j in range(col, ncol):
                    row[j] = poly_exact_div(
                        poly_sub(poly_mul(piv, row[j]), poly_mul(lead, top[j])), prev
                    )
            else:
                for j in range(col, ncol):
                    row[j] = poly_exact_div(poly_mul(piv, row[j]), prev)
        prev = piv
        pivots.append(col)
        h += 1
        if h == nrow:
            break
    cdef list echelon = []
    cdef object g, c
    cdef tuple e
    for r in range(h):
        row = <list>m[r]
        g = 0
        for e in row:
            for c in e:
                g = gcd(g, c)
        if g > 1:
            row = [tuple(c // g for c in e) for e in row]
        echelon.append(row)
    return h, echelon, pivots


def bareiss_int(rows):
    cdef list m = [list(r) for r in rows]
    cdef Py_ssize_t nrow = len(m)
    cdef Py_ssize_t ncol = len(m[0]) if nrow else 0
    cdef object prev = 1
    cdef list pivots = []
    cdef Py_ssize_t h = 0, col, r, j, best
    cdef object piv, lead, v, bv
    cdef list row, top
    for col in range(ncol):
        best = -1
        bv = 0
        for r in range(h, nrow):
            v = (<list>m[r])[col]
            if v:
                if v < 0:
                    v = -v
                if best < 0 or v < bv:
                    best = r
                    bv = v
        if best < 0:
            continue
        m[h], m[best] = m[best], m[h]
        top = <list>m[h]
        piv = top[col]
        for r in range(h + 1, nrow):
            row = <list>m[r]
            lead = row[col]
            if lead:
                for j in range(col, ncol):
                    row[j] = (piv * row[j] - lead * top[j]) // prev
            elif prev != 1:
                for j in range(col, ncol):
                    row[j] = piv * row[j] // prev
            else:
                for j in range(col, ncol):
                    row[j] = piv * row[j]
        prev = piv
        pivots.append(col)
        h += 1
        if h == nrow:
            break
    cdef list echelon = []
    cdef object g, c
    for r in range(h):
        row = <list>m[r]
        g = 0
        for c in row:
            g = gcd(g, c)
        if g > 1:
            row = [c // g for c in row]
        echelon.append(row)
    return h, echelon, pivots


def cyc_mul_int(a, b, red):
    cdef Py_ssize_t phi = len(a), i, j, k
    cdef list conv = [0] * (2 * phi - 1)
    cdef object ai, c, rj
    for i in range(phi):
        ai = a[i]
        if ai:
            for j in range(phi):
                conv[i + j] = conv[i + j] + ai * b[j]
    cdef list out = conv[:phi]
    cdef object row
    for k in range(phi, 2 * phi - 1):
        c = conv[k]
        if c:
            row = red[k - phi]
            for j in range(phi):
                rj = row[j]
                if rj:
                    out[j] = out[j] + c * rj
    return out
