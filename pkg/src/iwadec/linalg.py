"""Exact linear algebra over the scalar field Q(zeta_N)(T).

Matrices are lists of rows of :class:`~iwadec.cyclo.RatFunc`.  Rank and
echelon computations route to the fraction-free integer kernels whenever all
entries have rational coefficients (the common case); matrices with genuinely
cyclotomic entries fall back to a generic Gaussian elimination over the field.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from ._core import bareiss_int, bareiss_poly
from .cyclo import CYC_ONE, RF_ONE, RF_ZERO, RatFunc, _p_divmod, _p_gcd, _p_mul


def _row_cleared(row):
    """Scale a row so every entry is a polynomial (denominators cleared)."""
    dens = []
    for e in row:
        if len(e.den) > 1 and not any(
            len(d) == len(e.den) and all(a == b for a, b in zip(d, e.den)) for d in dens
        ):
            dens.append(e.den)
    if not dens:
        return row
    mult = (CYC_ONE,)
    for d in dens:
        g = _p_gcd(mult, d)
        extra, _ = _p_divmod(d, g) if len(g) > 1 else (d, None)
        mult = _p_mul(mult, extra)
    scale = RatFunc(mult, (CYC_ONE,), _reduced=True)
    return [e * scale for e in row]


def _classify(rows):
    """Return ("int", m) | ("poly", m) | ("generic", rows) after row scaling.

    int rows carry int entries; poly rows carry int-tuple entries (Z[T]).
    Row scaling preserves row space and rank.
    """
    cleared = [_row_cleared(list(r)) for r in rows]
    is_const = True
    frac_rows = []
    for row in cleared:
        fr = []
        for e in row:
            if len(e.den) > 1:
                return "generic", cleared
            cs = []
            for c in e.num:
                if not c.is_rational():
                    return "generic", cleared
                cs.append(c.as_rational() / e.den[0].as_rational())
            if len(cs) > 1:
                is_const = False
            fr.append(cs)
        frac_rows.append(fr)
    out = []
    for fr in frac_rows:
        den = 1
        for cs in fr:
            for c in cs:
                den = den * c.denominator // gcd(den, c.denominator)
        if is_const:
            out.append([int(cs[0] * den) if cs else 0 for cs in fr])
        else:
            out.append(
                [tuple(int(c * den) for c in cs) if any(cs) else () for cs in fr]
            )
    return ("int", out) if is_const else ("poly", out)


def _rf_from_fraction(x: Fraction) -> RatFunc:
    return RatFunc.from_rational(x)


def _echelon_to_rf(kind, echelon):
    out = []
    for row in echelon:
        if kind == "int":
            out.append([RatFunc.from_rational(v) for v in row])
        else:
            out.append([RatFunc.from_int_polys(v) for v in row])
    return out


def _generic_echelon(rows):
    """Gaussian elimination over the field; returns (rank, rows, pivots)."""
    m = [list(r) for r in rows]
    nrow = len(m)
    ncol = len(m[0]) if nrow else 0
    pivots = []
    h = 0
    for col in range(ncol):
        sel = next((r for r in range(h, nrow) if not m[r][col].is_zero()), None)
        if sel is None:
            continue
        m[h], m[sel] = m[sel], m[h]
        inv = m[h][col].inv()
        m[h] = [v * inv for v in m[h]]
        for r in range(h + 1, nrow):
            f = m[r][col]
            if not f.is_zero():
                m[r] = [a - f * b for a, b in zip(m[r], m[h])]
        pivots.append(col)
        h += 1
        if h == nrow:
            break
    return h, m[:h], pivots


def echelon(rows):
    """Row echelon form over the field: (rank, rf_rows, pivot_columns)."""
    if not rows:
        return 0, [], []
    kind, data = _classify(rows)
    if kind == "int":
        rank, ech, pivots = bareiss_int(data)
        return rank, _echelon_to_rf("int", ech), pivots
    if kind == "poly":
        rank, ech, pivots = bareiss_poly(data)
        return rank, _echelon_to_rf("poly", ech), pivots
    return _generic_echelon(data)


def rank(rows) -> int:
    return echelon(rows)[0]


def rref(rows):
    """Reduced row echelon form: (rank, rows, pivots), pivots normalized to 1."""
    r, ech, pivots = echelon(rows)
    for i in range(r):
        inv = ech[i][pivots[i]].inv()
        ech[i] = [v * inv for v in ech[i]]
    for i in range(r - 1, -1, -1):
        col = pivots[i]
        for j in range(i):
            f = ech[j][col]
            if not f.is_zero():
                ech[j] = [a - f * b for a, b in zip(ech[j], ech[i])]
    return r, ech, pivots


def nullspace(rows):
    """Basis of the right kernel, one vector per free column."""
    if not rows:
        return []
    ncol = len(rows[0])
    r, red, pivots = rref(rows)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncol):
        if free in pivot_set:
            continue
        v = [RF_ZERO] * ncol
        v[free] = RF_ONE
        for i, col in enumerate(pivots):
            v[col] = -red[i][free]
        basis.append(v)
    return basis


def solve(rows, rhs):
    """One solution of rows * x = rhs, or None if inconsistent."""
    if not rows:
        return None
    ncol = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    r, red, pivots = rref(aug)
    if ncol in pivots:
        return None
    x = [RF_ZERO] * ncol
    for i, col in enumerate(pivots):
        x[col] = red[i][ncol]
    return x


def in_row_space(rows, vector) -> bool:
    """Whether vector lies in the span of the given rows."""
    base = rank(rows)
    return rank(list(rows) + [list(vector)]) == base
