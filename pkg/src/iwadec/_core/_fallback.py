"""Pure-Python twin of the compiled kernel.

Same API as ``_speedups``: fraction-free (Bareiss) elimination over Z and
Z[T], and cyclotomic coefficient convolution.  Entries of Z[T] matrices are
tuples of ints, low degree first, no trailing zeros, () for zero.
"""

from math import gcd

BACKEND = "python"


def poly_trim(c):
    n = len(c)
    while n and c[n - 1] == 0:
        n -= 1
    return tuple(c[:n])


def poly_mul(a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return poly_trim(out)


def poly_sub(a, b):
    n = max(len(a), len(b))
    out = [0] * n
    for i, ai in enumerate(a):
        out[i] = ai
    for i, bi in enumerate(b):
        out[i] -= bi
    return poly_trim(out)


def poly_exact_div(a, b):
    """Divide a by b in Z[T]; the division is known to be exact."""
    if not a:
        return ()
    lb = b[-1]
    rem = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for k in range(len(a) - len(b), -1, -1):
        c = rem[k + len(b) - 1]
        if c % lb:
            raise ArithmeticError("inexact polynomial division in Bareiss step")
        c //= lb
        q[k] = c
        if c:
            for j, bj in enumerate(b):
                rem[k + j] -= c * bj
    if any(rem):
        raise ArithmeticError("inexact polynomial division in Bareiss step")
    return poly_trim(q)


def _poly_weight(p):
    return (len(p), max(abs(c) for c in p))


def bareiss_poly(rows):
    """Fraction-free row echelon over Z[T].

    rows: list of list of int tuples.  Returns (rank, echelon, pivots) where
    echelon rows are content-reduced and pivots is the pivot column list.
    """
    m = [list(r) for r in rows]
    nrow = len(m)
    ncol = len(m[0]) if nrow else 0
    prev = (1,)
    pivots = []
    h = 0
    for col in range(ncol):
        best = -1
        for r in range(h, nrow):
            if m[r][col]:
                if best < 0 or _poly_weight(m[r][col]) < _poly_weight(m[best][col]):
                    best = r
        if best < 0:
            continue
        m[h], m[best] = m[best], m[h]
        piv = m[h][col]
        for r in range(h + 1, nrow):
            lead = m[r][col]
            if lead:
                row = m[r]
                top = m[h]
                for j in range(col, ncol):
                    row[j] = poly_exact_div(
                        poly_sub(poly_mul(piv, row[j]), poly_mul(lead, top[j])), prev
                    )
            else:
                row = m[r]
                for j in range(col, ncol):
                    row[j] = poly_exact_div(poly_mul(piv, row[j]), prev)
        prev = piv
        pivots.append(col)
        h += 1
        if h == nrow:
            break
    echelon = []
    for r in range(h):
        row = m[r]
        g = 0
        for e in row:
            for c in e:
                g = gcd(g, c)
        if g > 1:
            row = [tuple(c // g for c in e) for e in row]
        echelon.append(row)
    return h, echelon, pivots


def bareiss_int(rows):
    """Fraction-free row echelon over Z (degree-0 fast path)."""
    m = [list(r) for r in rows]
    nrow = len(m)
    ncol = len(m[0]) if nrow else 0
    prev = 1
    pivots = []
    h = 0
    for col in range(ncol):
        best = -1
        for r in range(h, nrow):
            v = m[r][col]
            if v and (best < 0 or abs(v) < abs(m[best][col])):
                best = r
        if best < 0:
            continue
        m[h], m[best] = m[best], m[h]
        piv = m[h][col]
        for r in range(h + 1, nrow):
            lead = m[r][col]
            row = m[r]
            top = m[h]
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
    echelon = []
    for r in range(h):
        row = m[r]
        g = 0
        for c in row:
            g = gcd(g, c)
        if g > 1:
            row = [c // g for c in row]
        echelon.append(row)
    return h, echelon, pivots


def cyc_mul_int(a, b, red):
    """Convolve two integer coefficient vectors and reduce mod Phi_N.

    a, b: length-phi sequences.  red: for k in [phi, 2*phi-1), the power-basis
    representation of zeta^k as a length-phi int vector.
    """
    phi = len(a)
    conv = [0] * (2 * phi - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                conv[i + j] += ai * bj
    out = conv[:phi]
    for k in range(phi, 2 * phi - 1):
        c = conv[k]
        if c:
            row = red[k - phi]
            for j in range(phi):
                rj = row[j]
                if rj:
                    out[j] += c * rj
    return out
