"""The truncated crossed-product algebra and its idempotent calculus.

A is the K-span of the symbols h*gamma^i (h in H, 0 <= i < l^m) over the
scalar field K = Q(zeta)(T), with gamma*h = alpha(h)*gamma and gamma^{l^m} = T
central.  Elements are sparse; all identities (idempotency, centrality) are
verified exactly where the contract demands it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import linalg
from .chars import Character
from .cyclo import CycNumber, DecompGroup, RF_ONE, RF_T, RF_ZERO, RatFunc, trace_to_fixed
from .errors import MalformedInputError, PreconditionError
from .groups import GSpec


@lru_cache(maxsize=None)
def _alpha_images(spec: GSpec):
    return spec.alpha.power_images(spec.gamma_order)


def _coerce_scalar(x):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, CycNumber):
        return RatFunc.from_cyc(x)
    if isinstance(x, (int, Fraction)):
        return RatFunc.from_rational(x)
    return None


class AlgebraElement:
    """A sparse element of the truncated crossed product."""

    __slots__ = ("spec", "coeffs")

    def __init__(self, spec: GSpec, coeffs=None, _clean: bool = False):
        self.spec = spec
        if coeffs is None:
            coeffs = {}
        if _clean:
            self.coeffs = coeffs
        else:
            lm = spec.gamma_order
            n = spec.H.order
            clean = {}
            for (h, i), c in coeffs.items():
                if not (0 <= h < n and 0 <= i < lm):
                    raise MalformedInputError(f"support key ({h}, {i}) out of range")
                c = _coerce_scalar(c)
                if c is None:
                    raise MalformedInputError("coefficient is not a scalar")
                if not c.is_zero():
                    clean[(h, i)] = c
            self.coeffs = clean

    # -- constructors

    @classmethod
    def zero(cls, spec: GSpec) -> "AlgebraElement":
        return cls(spec, {}, _clean=True)

    @classmethod
    def one(cls, spec: GSpec) -> "AlgebraElement":
        return cls(spec, {(spec.H.identity, 0): RF_ONE}, _clean=True)

    @classmethod
    def basis(cls, spec: GSpec, h: int, i: int) -> "AlgebraElement":
        return cls(spec, {(h, i): RF_ONE})

    @classmethod
    def gamma(cls, spec: GSpec) -> "AlgebraElement":
        if spec.gamma_order == 1:
            # gamma itself equals the central variable at level m = 0
            return cls(spec, {(spec.H.identity, 0): RF_T}, _clean=True)
        return cls(spec, {(spec.H.identity, 1): RF_ONE}, _clean=True)

    # -- views

    def is_zero(self) -> bool:
        return not self.coeffs

    def support(self):
        return sorted(self.coeffs)

    def to_vector(self):
        """Dense coordinates in the basis (h, i) -> h*l^m + i."""
        lm = self.spec.gamma_order
        out = [RF_ZERO] * (self.spec.H.order * lm)
        for (h, i), c in self.coeffs.items():
            out[h * lm + i] = c
        return out

    @classmethod
    def from_vector(cls, spec: GSpec, vec) -> "AlgebraElement":
        lm = spec.gamma_order
        coeffs = {}
        for idx, c in enumerate(vec):
            if not c.is_zero():
                coeffs[divmod(idx, lm)] = c
        return cls(spec, coeffs, _clean=True)

    # -- arithmetic

    def _check(self, other: "AlgebraElement"):
        if self.spec is not other.spec:
            raise MalformedInputError("elements belong to different algebras")

    def __add__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        self._check(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            s = out.get(k, RF_ZERO) + c
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return AlgebraElement(self.spec, out, _clean=True)

    def __neg__(self):
        return AlgebraElement(
            self.spec, {k: -c for k, c in self.coeffs.items()}, _clean=True
        )

    def __sub__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self + (-other)

    def scale(self, x) -> "AlgebraElement":
        x = _coerce_scalar(x)
        if x is None:
            raise MalformedInputError("scale factor is not a scalar")
        if x.is_zero():
            return AlgebraElement.zero(self.spec)
        return AlgebraElement(
            self.spec, {k: c * x for k, c in self.coeffs.items()}, _clean=True
        )

    def __rmul__(self, other):
        x = _coerce_scalar(other)
        if x is None:
            return NotImplemented
        return self.scale(x)

    def __mul__(self, other):
        x = _coerce_scalar(other)
        if x is not None:
            return self.scale(x)
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        self._check(other)
        spec = self.spec
        lm = spec.gamma_order
        mult = spec.H.mult
        alpha = _alpha_images(spec)
        out: dict = {}
        for (h1, i1), c1 in self.coeffs.items():
            a_i = alpha[i1]
            for (h2, i2), c2 in other.coeffs.items():
                h = int(mult[h1, a_i[h2]])
                i = i1 + i2
                c = c1 * c2
                if i >= lm:
                    i -= lm
                    c = c * RF_T
                key = (h, i)
                s = out.get(key)
                if s is None:
                    out[key] = c
                else:
                    s = s + c
                    if s.is_zero():
                        del out[key]
                    else:
                        out[key] = s
        return AlgebraElement(spec, out, _clean=True)

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        if self.spec is not other.spec:
            return False
        if set(self.coeffs) != set(other.coeffs):
            return False
        return all(self.coeffs[k] == other.coeffs[k] for k in self.coeffs)

    __hash__ = None

    def __repr__(self):
        if not self.coeffs:
            return "Alg[0]"
        parts = [
            f"({c!r})*{self.spec.label(h)}g^{i}" for (h, i), c in sorted(self.coeffs.items())
        ]
        return "Alg[" + " + ".join(parts) + "]"


# ---------------------------------------------------------------------------
# idempotents


def idempotent_e_eta(spec: GSpec, eta: Character) -> AlgebraElement:
    """(eta(1)/|H|) sum_h eta(h^-1) h, supported on gamma-degree zero."""
    h_grp = spec.H
    n = h_grp.order
    lead = Fraction(eta.degree, n)
    coeffs = {}
    for h in range(n):
        v = eta.value_at(h_grp.inv(h))
        coeffs[(h, 0)] = RatFunc.from_cyc(v * lead)
    return AlgebraElement(spec, coeffs)


def gamma_orbit(spec: GSpec, eta: Character) -> list[Character]:
    """The orbit of eta under precomposition with alpha."""
    orbit = [eta]
    cur = eta.precompose(spec.alpha.images)
    while not cur.same_values(eta):
        orbit.append(cur)
        cur = cur.precompose(spec.alpha.images)
    return orbit


def idempotent_e_chi(spec: GSpec, orbit: list[Character], d: DecompGroup) -> AlgebraElement:
    """The D-rationalized central idempotent attached to a gamma-orbit."""
    if not orbit:
        raise MalformedInputError("empty character orbit")
    # verify closure under the gamma action
    keys = {_values_key(c) for c in orbit}
    for c in orbit:
        if _values_key(c.precompose(spec.alpha.images)) not in keys:
            raise MalformedInputError("orbit is not closed under the gamma action")
    closure = {}
    for c in orbit:
        for a in d.members:
            tw = c.twist(a)
            closure[_values_key(tw)] = tw
    out = AlgebraElement.zero(spec)
    for key in sorted(closure):
        out = out + idempotent_e_eta(spec, closure[key])
    return out


def _values_key(c: Character):
    return tuple((v.conductor, v.num, v.den) for v in c.values)


def idempotent_e_i(
    spec: GSpec, s_gen: int, s_order: int, i: int, d: DecompGroup
) -> AlgebraElement:
    """(1/|s|) sum_nu tr(zeta_i^{-nu}) s^nu for the cyclic subgroup <s_gen>.

    The trace is the field trace of the value field of beta_i: the sum over
    the image of d at the conductor of zeta_i = beta_i(s_gen).
    """
    from math import gcd

    h_grp = spec.H
    g = gcd(i, s_order)
    n_i = s_order // g  # order of the root of unity beta_i(s_gen)
    step = i // g if g else 0
    if n_i > 1:
        images = sorted({a % n_i for a in d.members})
    coeffs = {}
    for nu in range(s_order):
        if n_i > 1:
            tr = trace_to_fixed(CycNumber.zeta(n_i, (-step * nu) % n_i), images)
        else:
            tr = CycNumber.from_rational(1)
        coeffs[(h_grp.power(s_gen, nu), 0)] = RatFunc.from_cyc(
            tr * Fraction(1, s_order)
        )
    return AlgebraElement(spec, coeffs)


# ---------------------------------------------------------------------------
# ideals and centers


@dataclass
class Ideal:
    generator: AlgebraElement
    basis: list  # list of AlgebraElement, echelonized coordinates
    dim: int


def algebra_generators(spec: GSpec) -> list[AlgebraElement]:
    """Multiplicative generators: a generating set of H plus gamma."""
    h_grp = spec.H
    gens = []
    span = {h_grp.identity}
    for h in range(h_grp.order):
        if h not in span:
            gens.append(h)
            span = set(h_grp.closure(gens))
            if len(span) == h_grp.order:
                break
    out = [AlgebraElement.basis(spec, h, 0) for h in gens]
    if spec.gamma_order > 1:
        out.append(AlgebraElement.gamma(spec))
    return out


def verify_central_idempotent(e: AlgebraElement):
    spec = e.spec
    if not (e * e) == e:
        raise PreconditionError("e^2 = e", "element is not idempotent")
    for g in algebra_generators(spec):
        if not (e * g) == (g * e):
            raise PreconditionError(
                "e central", "element does not commute with the algebra generators"
            )


def ideal_of(e: AlgebraElement) -> Ideal:
    """Row-reduced basis of e*A; e is verified central idempotent first.

    e is supported on gamma-degree 0, or more generally e*(h,i) lands in the
    single gamma-degree block i when it is; the gamma-degree blocks of the row
    space are images of block 0 under the invertible right shift by gamma^i,
    so only block 0 is reduced explicitly.
    """
    verify_central_idempotent(e)
    spec = e.spec
    lm = spec.gamma_order
    n = spec.H.order
    if any(i != 0 for (_, i) in e.coeffs):
        # general (never hit by the idempotent families above): reduce everything
        rows = [
            (e * AlgebraElement.basis(spec, h, i)).to_vector()
            for h in range(n)
            for i in range(lm)
        ]
        rank, ech, _ = linalg.rref(rows)
        basis = [AlgebraElement.from_vector(spec, r) for r in ech]
        return Ideal(e, basis, rank)
    rows = []
    for h in range(n):
        prod = e * AlgebraElement.basis(spec, h, 0)
        vec = [RF_ZERO] * n
        for (hh, ii), c in prod.coeffs.items():
            if ii != 0:
                raise PreconditionError(
                    "block support", "degree-0 product left its block"
                )
            vec[hh] = c
        rows.append(vec)
    rank, ech, _ = linalg.rref(rows)
    basis = []
    for i in range(lm):
        for r in ech:
            coeffs = {(hh, i): c for hh, c in enumerate(r) if not c.is_zero()}
            basis.append(AlgebraElement(spec, coeffs, _clean=True))
    return Ideal(e, basis, rank * lm)


def center_of(ideal: Ideal):
    """Basis and dimension of the center of the ideal (as a unital algebra
    with identity the generating idempotent)."""
    spec = ideal.generator.spec
    lm = spec.gamma_order
    n_cols = spec.H.order * lm
    gens = algebra_generators(spec)
    rows = []
    cols = []
    for b in ideal.basis:
        col = []
        for g in gens:
            col.extend((b * g - g * b).to_vector())
        cols.append(col)
    if not cols:
        return [], 0
    n_eq = len(cols[0])
    rows = [[cols[k][r] for k in range(len(cols))] for r in range(n_eq)]
    kernel = linalg.nullspace(rows)
    basis = []
    for v in kernel:
        z = AlgebraElement.zero(spec)
        for k, c in enumerate(v):
            if not c.is_zero():
                z = z + ideal.basis[k].scale(c)
        basis.append(z)
    return basis, len(basis)
