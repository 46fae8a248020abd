"""Exact cyclotomic arithmetic and rational functions over cyclotomic fields.

A :class:`CycNumber` is an element of Q(zeta_N) stored as integer coordinates
in the power basis 1, zeta, ..., zeta^(phi(N)-1) over a single positive
denominator.  Elements of different conductors interoperate by lifting to the
lcm conductor; nothing is reduced to a smaller conductor unless asked.

:class:`RatFunc` is a reduced fraction of polynomials in one central variable
T with CycNumber coefficients; it is the scalar type used by all the algebra
layers above this module.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

from ._core import cyc_mul_int
from .errors import MalformedInputError, PreconditionError
from .numth import euler_phi, factorize, is_prime, lcm, units_mod


# ---------------------------------------------------------------------------
# cyclotomic polynomial and power-basis tables


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, low degree first."""
    if n < 1:
        raise MalformedInputError(f"conductor must be positive, got {n}")
    if n == 1:
        return (-1, 1)
    # (x^n - 1) / prod_{d | n, d < n} Phi_d, exact in Z[x]
    num = [0] * (n + 1)
    num[0], num[n] = -1, 1
    for d in range(1, n):
        if n % d == 0:
            num = _int_poly_exact_div(num, cyclotomic_poly(d))
    return tuple(num)


def _int_poly_exact_div(a, b):
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1] // b[-1]
        q[k] = c
        for j, bj in enumerate(b):
            a[k + j] -= c * bj
    assert not any(a), "cyclotomic division left a remainder"
    return q


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[int, ...], ...]:
    """zeta_n^k for 0 <= k < n, as integer vectors in the power basis."""
    phi = euler_phi(n)
    top = cyclotomic_poly(n)  # monic, degree phi
    rows = []
    cur = [0] * phi
    cur[0] = 1
    for _ in range(n):
        rows.append(tuple(cur))
        nxt = [0] + cur[: phi - 1]
        lead = cur[phi - 1]
        if lead:
            for j in range(phi):
                nxt[j] -= lead * top[j]
        cur = nxt
    assert cur == list(rows[0]) == [1] + [0] * (phi - 1)
    return tuple(rows)


@lru_cache(maxsize=None)
def _reduction_rows(n: int) -> tuple[tuple[int, ...], ...]:
    """zeta_n^k for phi <= k < 2*phi-1, the tail rows used after convolution."""
    phi = euler_phi(n)
    table = _power_table(n)
    return tuple(table[k % n] for k in range(phi, 2 * phi - 1))


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise MalformedInputError(f"expected a rational number, got {type(x).__name__}")


# ---------------------------------------------------------------------------
# CycNumber


class CycNumber:
    """An element of Q(zeta_n): integer coordinates over one denominator."""

    __slots__ = ("n", "num", "den")

    def __init__(self, n: int, num, den: int = 1, _normalized: bool = False):
        if den == 0:
            raise ZeroDivisionError("CycNumber with zero denominator")
        self.n = n
        if _normalized:
            self.num = tuple(num)
            self.den = den
            return
        num = list(num)
        phi = euler_phi(n)
        if len(num) != phi:
            raise MalformedInputError(
                f"conductor {n} needs {phi} coordinates, got {len(num)}"
            )
        if den < 0:
            den = -den
            num = [-c for c in num]
        g = den
        for c in num:
            g = gcd(g, c)
            if g == 1:
                break
        if g > 1:
            den //= g
            num = [c // g for c in num]
        self.num = tuple(num)
        self.den = den

    # -- constructors

    @classmethod
    def from_rational(cls, x) -> "CycNumber":
        x = _as_fraction(x)
        return cls(1, (x.numerator,), x.denominator, _normalized=x.denominator >= 1)

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> "CycNumber":
        if n < 1:
            raise MalformedInputError(f"conductor must be positive, got {n}")
        return cls(n, _power_table(n)[k % n], 1, _normalized=True)

    @classmethod
    def from_vector(cls, n: int, coeffs) -> "CycNumber":
        """Build from phi(n) rational coordinates in the power basis."""
        fr = [_as_fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            den = lcm(den, c.denominator)
        return cls(n, [int(c * den) for c in fr], den)

    # -- views

    @property
    def conductor(self) -> int:
        return self.n

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise PreconditionError("rationality", f"{self!r} is not rational")
        return Fraction(self.num[0], self.den)

    # -- conductor management

    def lift(self, m: int) -> "CycNumber":
        """Rewrite in Q(zeta_m) for a multiple m of the conductor."""
        if m == self.n:
            return self
        if m % self.n:
            raise MalformedInputError(f"{m} is not a multiple of conductor {self.n}")
        step = m // self.n
        table = _power_table(m)
        phi_m = euler_phi(m)
        out = [0] * phi_m
        for k, c in enumerate(self.num):
            if c:
                row = table[k * step]
                for j in range(phi_m):
                    if row[j]:
                        out[j] += c * row[j]
        return CycNumber(m, out, self.den)

    def reduce_to(self, m: int):
        """Rewrite in Q(zeta_m) for a divisor m of the conductor, or None."""
        if self.n % m:
            raise MalformedInputError(f"{m} does not divide conductor {self.n}")
        if m == self.n:
            return self
        step = self.n // m
        table = _power_table(self.n)
        phi_m, phi_n = euler_phi(m), euler_phi(self.n)
        # solve: sum_k a_k * zeta_n^(k*step) = self, a in Q^phi_m
        cols = [table[k * step % self.n] for k in range(phi_m)]
        sol = _solve_rational(
            [[Fraction(cols[c][r]) for c in range(phi_m)] for r in range(phi_n)],
            [Fraction(v) for v in self.coeffs],
        )
        if sol is None:
            return None
        return CycNumber.from_vector(m, sol)

    def minimal_conductor(self) -> int:
        for m in sorted(d for d in range(1, self.n + 1) if self.n % d == 0):
            if self.reduce_to(m) is not None:
                return m
        return self.n

    def canonical(self) -> "CycNumber":
        return self.reduce_to(self.minimal_conductor())

    # -- Galois action

    def galois(self, a: int) -> "CycNumber":
        """Apply zeta |-> zeta^a, for a coprime to the conductor."""
        n = self.n
        if gcd(a % n, n) != 1:
            raise MalformedInputError(f"{a} is not a unit mod {n}")
        table = _power_table(n)
        phi = euler_phi(n)
        out = [0] * phi
        for k, c in enumerate(self.num):
            if c:
                row = table[k * a % n]
                for j in range(phi):
                    if row[j]:
                        out[j] += c * row[j]
        return CycNumber(n, out, self.den)

    # -- arithmetic

    def _pair(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycNumber.from_rational(other)
        elif not isinstance(other, CycNumber):
            return None, None
        if self.n == other.n:
            return self, other
        m = lcm(self.n, other.n)
        return self.lift(m), other.lift(m)

    def __add__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        den = a.den * b.den // gcd(a.den, b.den)
        sa, sb = den // a.den, den // b.den
        return CycNumber(a.n, [sa * x + sb * y for x, y in zip(a.num, b.num)], den)

    __radd__ = __add__

    def __neg__(self):
        return CycNumber(self.n, [-c for c in self.num], self.den, _normalized=True)

    def __sub__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        if a.n == 1:
            return CycNumber(1, (a.num[0] * b.num[0],), a.den * b.den)
        if a.is_rational():
            return CycNumber(a.n, [a.num[0] * c for c in b.num], a.den * b.den)
        if b.is_rational():
            return CycNumber(a.n, [b.num[0] * c for c in a.num], a.den * b.den)
        out = cyc_mul_int(a.num, b.num, _reduction_rows(a.n))
        return CycNumber(a.n, out, a.den * b.den)

    __rmul__ = __mul__

    def inv(self) -> "CycNumber":
        if self.is_zero():
            raise ZeroDivisionError("inverting zero CycNumber")
        if self.is_rational():
            return CycNumber(self.n, (self.den,) + (0,) * (len(self.num) - 1), self.num[0])
        # extended Euclid of self (as a polynomial in zeta) against Phi_n
        phi_poly = [Fraction(c) for c in cyclotomic_poly(self.n)]
        u = _frac_poly_inverse_mod(list(self.coeffs), phi_poly)
        u += [Fraction(0)] * (len(self.num) - len(u))
        return CycNumber.from_vector(self.n, u[: len(self.num)])

    def __truediv__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return a * b.inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        out = CycNumber.from_rational(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.as_rational() == other
        if not isinstance(other, CycNumber):
            return NotImplemented
        a, b = self._pair(other)
        return a.num == b.num and a.den == b.den

    __hash__ = None

    def __repr__(self):
        if self.is_rational():
            return f"Cyc({Fraction(self.num[0], self.den)})"
        terms = "+".join(
            f"{Fraction(c, self.den)}*z{self.n}^{k}" for k, c in enumerate(self.num) if c
        )
        return f"Cyc[{terms}]"


CYC_ZERO = CycNumber.from_rational(0)
CYC_ONE = CycNumber.from_rational(1)


def _solve_rational(matrix, rhs):
    """Solve matrix*x = rhs over Q; None if inconsistent.

    matrix: list of rows of Fractions (may be non-square); returns one
    solution with free variables set to zero.
    """
    nrow = len(matrix)
    ncol = len(matrix[0]) if nrow else 0
    m = [row[:] + [rhs[i]] for i, row in enumerate(matrix)]
    piv_of_col = {}
    h = 0
    for col in range(ncol):
        sel = next((r for r in range(h, nrow) if m[r][col]), None)
        if sel is None:
            continue
        m[h], m[sel] = m[sel], m[h]
        inv = 1 / m[h][col]
        m[h] = [v * inv for v in m[h]]
        for r in range(nrow):
            if r != h and m[r][col]:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[h])]
        piv_of_col[col] = h
        h += 1
    for r in range(h, nrow):
        if m[r][ncol]:
            return None
    out = [Fraction(0)] * ncol
    for col, r in piv_of_col.items():
        out[col] = m[r][ncol]
    return out


def _frac_poly_inverse_mod(a, mod):
    """Inverse of polynomial a modulo the irreducible polynomial mod, over Q."""

    def trim(p):
        while p and not p[-1]:
            p.pop()
        return p

    def divmod_(p, q):
        p = p[:]
        qd, ql = len(q) - 1, q[-1]
        out = [Fraction(0)] * max(len(p) - qd, 0)
        for k in range(len(p) - qd - 1, -1, -1):
            c = p[k + qd] / ql
            out[k] = c
            if c:
                for j, qj in enumerate(q):
                    p[k + j] -= c * qj
        return out, trim(p)

    r0, r1 = mod[:], trim(a[:])
    s0, s1 = [Fraction(0)], [Fraction(1)]
    while len(r1) > 1:
        q, r = divmod_(r0, r1)
        r0, r1 = r1, r
        # s_next = s0 - q*s1
        prod = [Fraction(0)] * (len(q) + len(s1) - 1) if q and s1 else []
        for i, qi in enumerate(q):
            for j, sj in enumerate(s1):
                prod[i + j] += qi * sj
        nxt = [Fraction(0)] * max(len(s0), len(prod))
        for i, v in enumerate(s0):
            nxt[i] += v
        for i, v in enumerate(prod):
            nxt[i] -= v
        s0, s1 = s1, trim(nxt)
    if not r1:
        raise ZeroDivisionError("element shares a factor with the modulus")
    c = r1[0]
    return [v / c for v in s1]


# ---------------------------------------------------------------------------
# Galois machinery


class GaloisAut:
    """The automorphism zeta_n -> zeta_n^a of Q(zeta_n)."""

    __slots__ = ("conductor", "exponent")

    def __init__(self, conductor: int, exponent: int):
        if gcd(exponent % conductor, conductor) != 1:
            raise MalformedInputError(
                f"{exponent} is not a unit mod {conductor}"
            )
        self.conductor = conductor
        self.exponent = exponent % conductor if conductor > 1 else 1

    def apply(self, z: CycNumber) -> CycNumber:
        if self.conductor % z.conductor:
            z = z.lift(lcm(self.conductor, z.conductor))
        return z.galois(self.exponent)

    def __mul__(self, other: "GaloisAut") -> "GaloisAut":
        if self.conductor != other.conductor:
            raise MalformedInputError("composing automorphisms of different conductors")
        return GaloisAut(self.conductor, self.exponent * other.exponent)

    def __eq__(self, other):
        return (
            isinstance(other, GaloisAut)
            and self.conductor == other.conductor
            and self.exponent == other.exponent
        )

    def __hash__(self):
        return hash((self.conductor, self.exponent))

    def __repr__(self):
        return f"GaloisAut({self.conductor}, {self.exponent})"


class DecompGroup:
    """A subgroup of (Z/n)^x given by its exponent set."""

    __slots__ = ("conductor", "members")

    def __init__(self, conductor: int, members):
        self.conductor = conductor
        self.members = tuple(sorted(set(a % conductor if conductor > 1 else 1 for a in members)))
        for a in self.members:
            if gcd(a, conductor) != 1:
                raise MalformedInputError(f"{a} is not a unit mod {conductor}")

    def __contains__(self, a: int) -> bool:
        return (a % self.conductor if self.conductor > 1 else 1) in self.members

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def fixes(self, z: CycNumber) -> bool:
        z = z.lift(lcm(z.conductor, self.conductor))
        return all(z.galois(_lift_unit(a, self.conductor, z.conductor)) == z for a in self.members)

    def __repr__(self):
        return f"DecompGroup(mod {self.conductor}, {self.members})"


def _lift_unit(a: int, n: int, m: int) -> int:
    """Some unit mod m restricting to a mod n (m a multiple of n)."""
    for k in range(a, m + n, n):
        kk = k % m
        if kk and gcd(kk, m) == 1:
            return kk
    raise MalformedInputError(f"cannot lift unit {a} mod {n} to mod {m}")


def _crt(r1: int, n1: int, r2: int, n2: int) -> int:
    if n1 == 1:
        return r2 % n2 if n2 > 1 else 0
    if n2 == 1:
        return r1 % n1
    # n1, n2 coprime
    x = r1 + n1 * ((r2 - r1) * pow(n1, -1, n2) % n2)
    return x % (n1 * n2)


def decomposition_group(n: int, l: int) -> DecompGroup:
    """Galois group of Q_l(zeta_n) over Q_l inside (Z/n)^x.

    With n = l^a * m, gcd(l, m) = 1, this is the full (Z/l^a)^x on the wild
    part times the cyclic group generated by l on the tame part.
    """
    if n < 1:
        raise MalformedInputError(f"conductor must be positive, got {n}")
    if not is_prime(l) or l == 2:
        raise MalformedInputError(f"expected an odd prime, got {l}")
    a = factorize(n).get(l, 0) if n > 1 else 0
    la = l**a
    m = n // la
    tame = {1 % m if m > 1 else 1}
    if m > 1:
        x = l % m
        while x not in tame:
            tame.add(x)
            x = x * l % m
    members = [_crt(u, la, t, m) for u in units_mod(la) for t in tame]
    return DecompGroup(n, members)


def trace_to_fixed(z: CycNumber, group) -> CycNumber:
    """Sum of the images of z under every automorphism in the group."""
    if isinstance(group, DecompGroup):
        n = lcm(z.conductor, group.conductor)
        z = z.lift(n)
        exps = [_lift_unit(a, group.conductor, n) for a in group.members]
    else:
        exps = list(group)
        n = z.conductor
    out = CYC_ZERO
    for a in exps:
        out = out + z.galois(a)
    return out


# ---------------------------------------------------------------------------
# polynomials and rational functions in T over the cyclotomic fields


def _p_trim(c):
    c = list(c)
    while c and c[-1].is_zero():
        c.pop()
    return tuple(c)


def _p_add(a, b):
    out = list(a) + [CYC_ZERO] * (len(b) - len(a))
    for i, bi in enumerate(b):
        out[i] = out[i] + bi
    return _p_trim(out)


def _p_neg(a):
    return tuple(-c for c in a)


def _p_mul(a, b):
    if not a or not b:
        return ()
    out = [CYC_ZERO] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if not ai.is_zero():
            for j, bj in enumerate(b):
                out[i + j] = out[i + j] + ai * bj
    return _p_trim(out)


def _p_divmod(a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    lb_inv = b[-1].inv()
    q = [CYC_ZERO] * max(len(a) - len(b) + 1, 0)
    for k in range(len(a) - len(b), -1, -1):
        c = rem[k + len(b) - 1] * lb_inv
        q[k] = c
        if not c.is_zero():
            for j, bj in enumerate(b):
                rem[k + j] = rem[k + j] - c * bj
    return _p_trim(q), _p_trim(rem)


def _p_gcd(a, b):
    a, b = _p_trim(a), _p_trim(b)
    while b:
        _, r = _p_divmod(a, b)
        a, b = b, r
    if a:
        inv = a[-1].inv()
        a = tuple(c * inv for c in a)
    return a


def _p_scale(a, c: CycNumber):
    if c.is_zero():
        return ()
    return _p_trim([x * c for x in a])


class RatFunc:
    """A reduced fraction of polynomials in T with cyclotomic coefficients.

    The denominator is monic; the zero element has numerator ().
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _reduced: bool = False):
        if den is None:
            den = (CYC_ONE,)
        num, den = _p_trim(num), _p_trim(den)
        if not den:
            raise ZeroDivisionError("RatFunc with zero denominator")
        if not _reduced:
            g = _p_gcd(num, den)
            if len(g) > 1:
                num, _ = _p_divmod(num, g)
                den, _ = _p_divmod(den, g)
            lead = den[-1]
            if lead != CYC_ONE:
                inv = lead.inv()
                num = _p_scale(num, inv)
                den = _p_scale(den, inv)
        self.num = num
        self.den = den

    # -- constructors

    @classmethod
    def from_cyc(cls, c: CycNumber) -> "RatFunc":
        return cls((c,), (CYC_ONE,), _reduced=True) if not c.is_zero() else RF_ZERO_BUILDER()

    @classmethod
    def from_rational(cls, x) -> "RatFunc":
        return cls.from_cyc(CycNumber.from_rational(x))

    @classmethod
    def variable(cls) -> "RatFunc":
        return cls((CYC_ZERO, CYC_ONE), (CYC_ONE,), _reduced=True)

    @classmethod
    def from_int_polys(cls, num_ints, den_ints=(1,)) -> "RatFunc":
        num = tuple(CycNumber.from_rational(c) for c in num_ints)
        den = tuple(CycNumber.from_rational(c) for c in den_ints)
        return cls(num, den)

    # -- views

    def is_zero(self) -> bool:
        return not self.num

    def is_constant(self) -> bool:
        return len(self.num) <= 1 and len(self.den) == 1

    def as_cyc(self) -> CycNumber:
        if not self.is_constant():
            raise PreconditionError("constant", f"{self!r} is not constant in T")
        if not self.num:
            return CYC_ZERO
        return self.num[0] * self.den[0].inv()

    def conductor(self) -> int:
        n = 1
        for c in self.num + self.den:
            n = lcm(n, c.conductor)
        return n

    def is_rational_poly_pair(self):
        """If every coefficient is rational, return (num fracs, den fracs)."""
        try:
            return (
                tuple(c.as_rational() for c in self.num),
                tuple(c.as_rational() for c in self.den),
            )
        except PreconditionError:
            return None

    # -- arithmetic

    def __add__(self, other):
        other = _coerce_rf(other)
        if other is None:
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        num = _p_add(_p_mul(self.num, other.den), _p_mul(other.num, self.den))
        return RatFunc(num, _p_mul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(_p_neg(self.num), self.den, _reduced=True)

    def __sub__(self, other):
        other = _coerce_rf(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce_rf(other)
        if other is None:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return RF_ZERO
        return RatFunc(_p_mul(self.num, other.num), _p_mul(self.den, other.den))

    __rmul__ = __mul__

    def inv(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDivisionError("inverting zero RatFunc")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        other = _coerce_rf(other)
        if other is None:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        out = RF_ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def galois(self, a: int) -> "RatFunc":
        return RatFunc(
            tuple(c.galois(a) if c.conductor > 1 else c for c in self.num),
            tuple(c.galois(a) if c.conductor > 1 else c for c in self.den),
            _reduced=True,
        )

    def __eq__(self, other):
        other = _coerce_rf(other)
        if other is None:
            return NotImplemented
        # both reduced with monic denominators, so compare componentwise
        return (
            len(self.num) == len(other.num)
            and len(self.den) == len(other.den)
            and all(a == b for a, b in zip(self.num, other.num))
            and all(a == b for a, b in zip(self.den, other.den))
        )

    __hash__ = None

    def __repr__(self):
        def side(p):
            if not p:
                return "0"
            return " + ".join(f"({c!r})T^{k}" for k, c in enumerate(p))

        if len(self.den) == 1 and self.den[0] == CYC_ONE:
            return f"RatFunc[{side(self.num)}]"
        return f"RatFunc[({side(self.num)}) / ({side(self.den)})]"


def _coerce_rf(x):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, CycNumber):
        return RatFunc.from_cyc(x)
    if isinstance(x, (int, Fraction)):
        return RatFunc.from_rational(x)
    return None


def RF_ZERO_BUILDER():
    return RatFunc((), (CYC_ONE,), _reduced=True)


RF_ZERO = RF_ZERO_BUILDER()
RF_ONE = RatFunc((CYC_ONE,), (CYC_ONE,), _reduced=True)
RF_T = RatFunc.variable()
