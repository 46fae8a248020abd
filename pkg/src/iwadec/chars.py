"""Exact character tables (Burnside-Dixon) and character-orbit invariants.

Tables are computed by diagonalizing the class-sum algebra over a prime field
GF(p) with p = 1 (mod exp H), then lifting eigenvalue data to exact cyclotomic
values through discrete logarithms.  Every table is verified against the
orthogonality relations before it is returned; a failure aborts.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import isqrt

import numpy as np

from .cyclo import CYC_ZERO, CycNumber, DecompGroup, GaloisAut
from .errors import InternalConsistencyError, ResourceLimitError
from .groups import FiniteGroup, GSpec, conjugacy_classes
from .numth import is_prime, subgroup_generated

_PRIME_SEARCH_BOUND = 10**7
_FULL_ORTHO_LIMIT = 48


@dataclass(frozen=True)
class Character:
    """An irreducible character: one exact value per conjugacy class."""

    group: FiniteGroup
    classes: tuple[tuple[int, ...], ...]
    values: tuple[CycNumber, ...]

    @property
    def degree(self) -> int:
        ident = next(
            i for i, c in enumerate(self.classes) if self.group.identity in c
        )
        return int(self.values[ident].as_rational())

    def class_of(self, g: int) -> int:
        for i, c in enumerate(self.classes):
            if g in c:
                return i
        raise InternalConsistencyError("element missing from class partition")

    def value_at(self, g: int) -> CycNumber:
        return self.values[self.class_of(g)]

    def same_values(self, other: "Character") -> bool:
        return all(a == b for a, b in zip(self.values, other.values))

    def twist(self, exponent: int) -> "Character":
        """Apply the Galois automorphism zeta -> zeta^exponent to all values."""
        return Character(
            self.group,
            self.classes,
            tuple(v.galois(exponent) if v.conductor > 1 else v for v in self.values),
        )

    def precompose(self, images) -> "Character":
        """The character h -> chi(images[h]) for an automorphism images."""
        reps = [c[0] for c in self.classes]
        return Character(
            self.group,
            self.classes,
            tuple(self.value_at(images[r]) for r in reps),
        )


# ---------------------------------------------------------------------------
# mod-p linear algebra (numpy int64; p is small)


def _rref_modp(m, p):
    m = m.astype(np.int64) % p
    nrow, ncol = m.shape
    pivots = []
    h = 0
    for col in range(ncol):
        nz = np.nonzero(m[h:, col])[0]
        if len(nz) == 0:
            continue
        sel = h + nz[0]
        m[[h, sel]] = m[[sel, h]]
        m[h] = m[h] * pow(int(m[h, col]), -1, p) % p
        for r in range(nrow):
            if r != h and m[r, col]:
                m[r] = (m[r] - m[r, col] * m[h]) % p
        pivots.append(col)
        h += 1
        if h == nrow:
            break
    return m, pivots


def _nullspace_modp(m, p):
    red, pivots = _rref_modp(m, p)
    ncol = m.shape[1]
    free = [c for c in range(ncol) if c not in pivots]
    basis = np.zeros((ncol, len(free)), dtype=np.int64)
    for k, f in enumerate(free):
        basis[f, k] = 1
        for i, col in enumerate(pivots):
            basis[col, k] = (-red[i, f]) % p
    return basis


def _restriction_modp(b, ab, p):
    """R with b @ R = ab (b has full column rank)."""
    d = b.shape[1]
    red, pivots = _rref_modp(np.hstack([b, ab]), p)
    if pivots != list(range(d)):
        raise InternalConsistencyError("subspace is not invariant under the class algebra")
    return red[:d, d:]


# ---------------------------------------------------------------------------
# Dixon-Burnside table


def _dixon_prime(exponent: int, order: int) -> int:
    p = exponent + 1
    bound = 2 * isqrt(order) + 1
    while p < _PRIME_SEARCH_BOUND:
        if p > bound and is_prime(p):
            return p
        p += exponent
    raise ResourceLimitError(
        _PRIME_SEARCH_BOUND, "no usable prime for the modular character method"
    )


def _primitive_root(p: int) -> int:
    from .numth import factorize

    fac = factorize(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in fac):
            return g
    raise InternalConsistencyError("no primitive root found")


def _minpoly_roots(r_mat, p, rng):
    """All eigenvalues of a diagonalizable matrix over GF(p)."""
    d = r_mat.shape[0]
    found = set()
    dims = 0
    for _ in range(20):
        v = np.array([rng.randrange(p) for _ in range(d)], dtype=np.int64)
        krylov = [v % p]
        for _ in range(d):
            krylov.append(r_mat @ krylov[-1] % p)
        k_mat = np.stack(krylov, axis=1)
        # minimal combination: first column that is dependent on the previous
        coeffs = _nullspace_modp(k_mat, p)
        if coeffs.shape[1] == 0:
            continue
        # lowest-degree dependency
        col = coeffs[:, 0]
        deg = max(i for i in range(len(col)) if col[i])
        poly = [int(c) for c in col[: deg + 1]]
        lam = np.arange(p, dtype=np.int64)
        acc = np.zeros(p, dtype=np.int64)
        for c in reversed(poly):
            acc = (acc * lam + c) % p
        roots = set(int(x) for x in np.nonzero(acc == 0)[0])
        new = roots - found
        for root in sorted(new):
            ns = _nullspace_modp(
                (r_mat - root * np.eye(d, dtype=np.int64)) % p, p
            )
            if ns.shape[1]:
                found.add(root)
                dims += ns.shape[1]
        if dims >= d:
            break
    if dims < d:
        raise InternalConsistencyError("eigenvalue search failed to exhaust space")
    return sorted(found)


def character_table(h: FiniteGroup) -> list[Character]:
    """All irreducible characters with exact cyclotomic values."""
    classes = conjugacy_classes(h)
    r = len(classes)
    n = h.order
    class_of = {}
    for i, c in enumerate(classes):
        for g in c:
            class_of[g] = i
    reps = [c[0] for c in classes]
    e = h.exponent()
    p = _dixon_prime(e, n)
    # structure constants a[i][j][k]: #[x in C_i with x^-1 rep_k in C_j]
    a = np.zeros((r, r, r), dtype=np.int64)
    for k, zk in enumerate(reps):
        for i, ci in enumerate(classes):
            for x in ci:
                j = class_of[h.mul(h.inv(x), zk)]
                a[i, j, k] += 1
    # split the common eigenspaces of the class-sum matrices over GF(p)
    rng = random.Random(0xD1C0)
    spaces = [np.eye(r, dtype=np.int64)]
    for i in range(r):
        if all(b.shape[1] == 1 for b in spaces):
            break
        mat = a[i] % p  # (mat w)_j = sum_k a[i,j,k] w_k = omega(c_i) w_j
        nxt = []
        for b in spaces:
            if b.shape[1] == 1:
                nxt.append(b)
                continue
            rmat = _restriction_modp(b, mat @ b % p, p)
            for lam in _minpoly_roots(rmat, p, rng):
                ns = _nullspace_modp(
                    (rmat - lam * np.eye(b.shape[1], dtype=np.int64)) % p, p
                )
                if ns.shape[1]:
                    nxt.append(b @ ns % p)
        spaces = nxt
    if any(b.shape[1] != 1 for b in spaces) or len(spaces) != r:
        raise InternalConsistencyError("class algebra did not split into lines")

    ident = class_of[h.identity]
    inv_class = [class_of[h.inv(rep)] for rep in reps]
    sizes = [len(c) for c in classes]
    g0 = _primitive_root(p)
    z = pow(g0, (p - 1) // e, p)
    zeta_pows = {
        k: CycNumber.zeta(e, k) if e > 1 else CycNumber.from_rational(1)
        for k in range(e)
    }

    size_inv = [pow(s, -1, p) for s in sizes]
    valp_rows = []
    degrees = []
    for b in spaces:
        w = b[:, 0] % p
        w = w * pow(int(w[ident]), -1, p) % p  # normalize omega(identity) = 1
        t = 0
        for j in range(r):
            t += int(w[j]) * int(w[inv_class[j]]) * size_inv[j]
        t %= p
        d2 = n * pow(t, -1, p) % p
        deg = next((d for d in range(1, isqrt(n) + 1) if d * d % p == d2), None)
        if deg is None:
            raise InternalConsistencyError("character degree is not recoverable")
        degrees.append(deg)
        valp_rows.append([deg * int(w[j]) * size_inv[j] % p for j in range(r)])
    valp_all = np.array(valp_rows, dtype=np.int64)

    # lift chi(g_j) mod p to exact cyclotomic values, batched across characters
    zp = np.array([pow(z, x, p) for x in range(e)], dtype=np.int64)
    zmat_cache: dict[int, np.ndarray] = {}
    values_by_char: list[list] = [[] for _ in range(r)]
    for j, g in enumerate(reps):
        o = h.element_order(g)
        step = e // o
        pow_cls = []
        x = h.identity
        for _ in range(o):
            pow_cls.append(class_of[x])
            x = h.mul(x, g)
        zmat = zmat_cache.get(o)
        if zmat is None:
            tt, kk = np.meshgrid(np.arange(o), np.arange(o), indexing="ij")
            zmat = zp[(-tt * kk * step) % e]
            zmat_cache[o] = zmat
        # m[i, k] = o^-1 sum_t valp[i, g^t class] z^{-k t step}
        m = valp_all[:, pow_cls] @ zmat % p * pow(o, -1, p) % p
        if int(m.max()) > n:
            raise InternalConsistencyError("eigenvalue multiplicity out of range")
        for i in range(r):
            val = CYC_ZERO
            for k in np.nonzero(m[i])[0]:
                val = val + int(m[i, k]) * zeta_pows[int(k) * step % e]
            values_by_char[i].append(val)
    chars = [
        Character(h, tuple(classes), tuple(vals)) for vals in values_by_char
    ]

    chars.sort(key=_char_sort_key)
    _verify_orthogonality(h, chars, classes, inv_class, sizes)
    return chars


def _char_sort_key(c: Character):
    return (
        c.degree,
        tuple((v.conductor, v.num, v.den) for v in c.values),
    )


def _verify_orthogonality(h, chars, classes, inv_class, sizes):
    r = len(chars)
    n = h.order

    if r <= _FULL_ORTHO_LIMIT:
        pairs = [(i, j) for i in range(r) for j in range(i, r)]
    else:
        rng = random.Random(0x0A07)
        pairs = [(i, i) for i in range(r)]
        pairs += [(rng.randrange(r), rng.randrange(r)) for _ in range(200)]
    checker = _fast_inner_checker(h, chars, inv_class, sizes)
    for i, j in pairs:
        want = n if i == j else 0
        if checker is not None:
            ok = checker(i, j, want)
        else:
            s = CYC_ZERO
            for k in range(r):
                s = s + sizes[k] * (chars[i].values[k] * chars[j].values[inv_class[k]])
            ok = s == want
        if not ok:
            raise InternalConsistencyError(
                f"orthogonality fails for characters {i}, {j}"
            )
    if sum(c.degree**2 for c in chars) != n:
        raise InternalConsistencyError("degree squares do not sum to the order")


def _fast_inner_checker(h, chars, inv_class, sizes):
    """Batched exact inner products via int64 tensors, when coefficients are
    small enough that no intermediate can overflow; None means use the slow
    exact path."""
    from .cyclo import _reduction_rows
    from .numth import euler_phi

    e = h.exponent()
    if e == 1:
        return None
    phi = euler_phi(e)
    r = len(chars)
    x = np.zeros((r, r, phi), dtype=np.int64)
    for i, c in enumerate(chars):
        for k, v in enumerate(c.values):
            if v.den != 1:
                return None
            lifted = v if v.conductor == e else v.lift(e)
            x[i, k, :] = lifted.num
    mx = int(np.abs(x).max()) or 1
    if r * max(sizes) * mx * mx * (phi + 1) >= 2**62:
        return None
    red = np.array(_reduction_rows(e), dtype=np.int64)
    w = np.array(sizes, dtype=np.int64)
    inv_idx = np.array(inv_class, dtype=np.int64)

    def check(i, j, want):
        a = x[i] * w[:, None]
        b = x[j][inv_idx]
        m = np.einsum("ki,kj->ij", a, b)
        conv = np.zeros(2 * phi - 1, dtype=np.int64)
        for t in range(phi):
            conv[t : t + phi] += m[t]
        out = conv[:phi].copy()
        if phi > 1:
            out += conv[phi:] @ red
        return out[0] == want and not out[1:].any()

    return check


# ---------------------------------------------------------------------------
# actions and orbit invariants


def conj_action(eta: Character, g: int, spec: GSpec) -> Character:
    """eta^g with eta^g(h) = eta(g h g^-1), g an element of the truncation."""
    lm = spec.gamma_order
    k, i = divmod(g, lm)
    alpha_i = spec.alpha.power(i).images
    h_grp = spec.H
    images = [h_grp.conjugate(alpha_i[x], k) for x in range(h_grp.order)]
    return eta.precompose(images)


def galois_orbits(chars: list[Character], d: DecompGroup):
    """Partition indices into D-orbits; each orbit is sorted, orbits sorted by
    their minimal member."""
    index_of = {}
    for i, c in enumerate(chars):
        key = _char_sort_key(c)
        index_of[key] = i
    seen = set()
    orbits = []
    for i, c in enumerate(chars):
        if i in seen:
            continue
        orbit = set()
        frontier = [i]
        while frontier:
            j = frontier.pop()
            if j in orbit:
                continue
            orbit.add(j)
            for a in d.members:
                tw = chars[j].twist(a)
                k = index_of.get(_char_sort_key(tw))
                if k is None:
                    raise InternalConsistencyError(
                        "Galois twist left the character list"
                    )
                if k not in orbit:
                    frontier.append(k)
        seen |= orbit
        orbits.append(tuple(sorted(orbit)))
    return sorted(orbits, key=lambda o: o[0])


@dataclass(frozen=True)
class OrbitInvariants:
    """The gamma-orbit data of one H-character under a decomposition group."""

    eta: Character
    stabilizer: tuple[int, ...]
    w_chi: int
    v_chi: int
    g0_generator: GaloisAut
    g0_order: int
    l_conductor: int
    l_fixing: tuple[int, ...]
    eta_field_degree: int  # [Q_l(eta) : Q_l] as [D : Stab_D(eta)]
    l_degree: int  # [L : Q_l]


def _alpha_power_values(eta: Character, spec: GSpec, j: int):
    return eta.precompose(spec.alpha.power(j).images)


def orbit_invariants(eta: Character, spec: GSpec, d: DecompGroup) -> OrbitInvariants:
    lm = spec.gamma_order
    # w: least j >= 1 with eta o alpha^j = eta (an l-power dividing l^m)
    w = 1
    while w <= lm:
        if _alpha_power_values(eta, spec, w).same_values(eta):
            break
        w *= spec.l
    if w > lm:
        raise InternalConsistencyError("gamma-orbit length exceeds the truncation")
    # v: least j >= 1 with eta o alpha^j = eta^sigma for some sigma in D
    v = None
    sigma_v = 1
    for j in range(1, w + 1):
        tw = _alpha_power_values(eta, spec, j)
        for a in d.members:
            if eta.twist(a).same_values(tw):
                v = j
                sigma_v = a
                break
        if v is not None:
            break
    if v is None or w % v:
        raise InternalConsistencyError("orbit-twist length does not divide w")
    g0_order = w // v
    stab_d = tuple(a for a in d.members if eta.twist(a).same_values(eta))
    fixing = subgroup_generated(d.conductor, list(stab_d) + [sigma_v])
    # the full stabilizer in the truncated group: all of H times the gamma
    # powers that are multiples of w
    stab = tuple(
        sorted(
            h * lm + i
            for h in range(spec.H.order)
            for i in range(lm)
            if i % w == 0
        )
    )
    eta_deg = len(d.members) // len(stab_d)
    l_deg = len(d.members) // len(fixing)
    if eta_deg != l_deg * g0_order:
        raise InternalConsistencyError(
            "field degrees inconsistent with the orbit data"
        )
    return OrbitInvariants(
        eta=eta,
        stabilizer=stab,
        w_chi=w,
        v_chi=v,
        g0_generator=GaloisAut(d.conductor, sigma_v),
        g0_order=g0_order,
        l_conductor=d.conductor,
        l_fixing=fixing,
        eta_field_degree=eta_deg,
        l_degree=l_deg,
    )
