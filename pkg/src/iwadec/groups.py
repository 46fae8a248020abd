"""Finite group machinery and the finite truncation H x| Z/l^m.

Groups are closed multiplication tables over element indices.  The truncation
of H x| Gamma at level m keeps the Gamma-coordinate mod l^m; the wrap-around
power of gamma is not folded into the group (the algebra layer records it as
the central variable T).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    InternalConsistencyError,
    MalformedInputError,
    PreconditionError,
    ResourceLimitError,
)
from .numth import factorize, is_prime

_ASSOC_FULL_LIMIT = 200
DEFAULT_SUBGROUP_CAP = 200


class FiniteGroup:
    """A finite group as a closed multiplication table of element indices."""

    __slots__ = ("order", "mult", "identity", "inverse", "_orders")

    def __init__(self, mult, check: bool = True):
        mult = np.asarray(mult, dtype=np.int32)
        if mult.ndim != 2 or mult.shape[0] != mult.shape[1]:
            raise MalformedInputError("multiplication table must be square")
        n = mult.shape[0]
        self.order = n
        self.mult = mult
        self.mult.setflags(write=False)
        if mult.min() < 0 or mult.max() >= n:
            raise MalformedInputError("table entries out of range")
        ident = [e for e in range(n) if np.array_equal(mult[e], np.arange(n))]
        if len(ident) != 1 or not np.array_equal(mult[:, ident[0]], np.arange(n)):
            raise MalformedInputError("table has no two-sided identity")
        self.identity = ident[0]
        inv = np.full(n, -1, dtype=np.int32)
        for g in range(n):
            hits = np.nonzero(mult[g] == self.identity)[0]
            if len(hits) != 1 or mult[hits[0], g] != self.identity:
                raise MalformedInputError(f"element {g} has no two-sided inverse")
            inv[g] = hits[0]
        self.inverse = inv
        self.inverse.setflags(write=False)
        if check:
            self._check_associativity()
        self._orders = None

    def _check_associativity(self):
        n = self.order
        m = self.mult
        if n <= _ASSOC_FULL_LIMIT:
            # (ab)c == a(bc) checked on the full cube, vectorized per a
            bc = m  # m[b, c]
            for a in range(n):
                left = m[m[a]][:, np.arange(n)]  # m[m[a,b], c]
                right = m[a][bc]  # m[a, m[b,c]]
                if not np.array_equal(left, right):
                    raise MalformedInputError("multiplication table is not associative")
        else:
            rng = random.Random(0xA55)
            for _ in range(10 * n):
                a, b, c = (rng.randrange(n) for _ in range(3))
                if m[m[a, b], c] != m[a, m[b, c]]:
                    raise MalformedInputError("multiplication table is not associative")

    # -- constructors

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        idx = np.arange(n)
        return cls((idx[:, None] + idx[None, :]) % n, check=False)

    @classmethod
    def direct_product(cls, a: "FiniteGroup", b: "FiniteGroup") -> "FiniteGroup":
        """Indices are i*|B| + j for (a_i, b_j)."""
        nb = b.order
        am = np.kron(a.mult.astype(np.int64), np.full((nb, nb), nb, dtype=np.int64))
        bm = np.tile(b.mult, (a.order, a.order))
        return cls(am + bm, check=False)

    @classmethod
    def semidirect_cyclic(
        cls, n_grp: "FiniteGroup", k: int, aut: "GroupAut"
    ) -> "FiniteGroup":
        """N x| Z/k with the cyclic generator acting by aut; index = h*k + j."""
        if aut.domain is not n_grp and aut.domain.order != n_grp.order:
            raise MalformedInputError("action automorphism has the wrong domain")
        if not aut.power(k).is_identity():
            raise MalformedInputError(f"action order does not divide {k}")
        powers = aut.power_images(k)
        n = n_grp.order
        table = np.empty((n * k, n * k), dtype=np.int32)
        for h in range(n):
            for j in range(k):
                row = table[h * k + j]
                for h2 in range(n):
                    hh = n_grp.mult[h, powers[j][h2]]
                    base = hh * k
                    for j2 in range(k):
                        row[h2 * k + j2] = base + (j + j2) % k
        return cls(table)

    # -- basic queries

    def mul(self, a: int, b: int) -> int:
        return int(self.mult[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def power(self, g: int, k: int) -> int:
        if k < 0:
            return self.power(self.inv(g), -k)
        out = self.identity
        base = g
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def element_order(self, g: int) -> int:
        if self._orders is None:
            self._orders = {}
        o = self._orders.get(g)
        if o is None:
            o, x = 1, g
            while x != self.identity:
                x = self.mul(x, g)
                o += 1
            self._orders[g] = o
        return o

    def conjugate(self, g: int, by: int) -> int:
        return self.mul(self.mul(by, g), self.inv(by))

    def is_abelian(self) -> bool:
        return np.array_equal(self.mult, self.mult.T)

    def exponent(self) -> int:
        e = 1
        for g in range(self.order):
            o = self.element_order(g)
            e = e * o // np.gcd(e, o)
        return int(e)

    def cyclic_subgroup(self, g: int) -> tuple[int, ...]:
        out = [self.identity]
        x = g
        while x != self.identity:
            out.append(x)
            x = self.mul(x, g)
        return tuple(sorted(out))

    def closure(self, gens) -> tuple[int, ...]:
        seen = {self.identity}
        frontier = [self.identity]
        gens = list(gens)
        while frontier:
            a = frontier.pop()
            for g in gens:
                for b in (self.mul(a, g), self.mul(g, a)):
                    if b not in seen:
                        seen.add(b)
                        frontier.append(b)
        return tuple(sorted(seen))

    def is_subgroup(self, elems) -> bool:
        s = set(elems)
        return self.identity in s and all(
            self.mul(a, b) in s for a in s for b in s
        )

    def is_normal(self, elems) -> bool:
        s = set(elems)
        return all(self.conjugate(h, g) in s for h in s for g in range(self.order))

    def centralizer(self, elems) -> tuple[int, ...]:
        elems = list(elems)
        return tuple(
            g
            for g in range(self.order)
            if all(self.mul(g, h) == self.mul(h, g) for h in elems)
        )

    def center(self) -> tuple[int, ...]:
        return self.centralizer(range(self.order))

    def restrict(self, elems):
        """Subgroup as its own FiniteGroup plus the new->old index map."""
        elems = sorted(set(elems))
        if not self.is_subgroup(elems):
            raise PreconditionError("subgroup", "element set is not closed")
        pos = {g: i for i, g in enumerate(elems)}
        n = len(elems)
        table = np.empty((n, n), dtype=np.int32)
        for i, a in enumerate(elems):
            for j, b in enumerate(elems):
                table[i, j] = pos[self.mul(a, b)]
        return FiniteGroup(table, check=False), elems


class GroupAut:
    """An automorphism of a FiniteGroup, stored as a permutation of indices."""

    __slots__ = ("domain", "images")

    def __init__(self, domain: FiniteGroup, images, check: bool = True):
        self.domain = domain
        self.images = tuple(int(x) for x in images)
        if check:
            n = domain.order
            if sorted(self.images) != list(range(n)):
                raise MalformedInputError("automorphism images are not a permutation")
            for a in range(n):
                for b in range(n):
                    if self.images[domain.mul(a, b)] != domain.mul(
                        self.images[a], self.images[b]
                    ):
                        raise MalformedInputError(
                            "permutation is not multiplicative"
                        )

    @classmethod
    def identity(cls, domain: FiniteGroup) -> "GroupAut":
        return cls(domain, range(domain.order), check=False)

    @classmethod
    def from_power(cls, domain: FiniteGroup, k: int) -> "GroupAut":
        """h -> h^k; multiplicative on abelian groups for any k."""
        return cls(domain, [domain.power(g, k) for g in range(domain.order)])

    def __call__(self, g: int) -> int:
        return self.images[g]

    def is_identity(self) -> bool:
        return all(i == g for g, i in enumerate(self.images))

    def compose(self, other: "GroupAut") -> "GroupAut":
        # self after other
        return GroupAut(
            self.domain, [self.images[x] for x in other.images], check=False
        )

    def power(self, k: int) -> "GroupAut":
        out = GroupAut.identity(self.domain)
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        while k:
            if k & 1:
                out = out.compose(base)
            base = base.compose(base)
            k >>= 1
        return out

    def inverse(self) -> "GroupAut":
        inv = [0] * len(self.images)
        for g, i in enumerate(self.images):
            inv[i] = g
        return GroupAut(self.domain, inv, check=False)

    def power_images(self, upto: int) -> list[tuple[int, ...]]:
        """Images of self^j for 0 <= j < upto."""
        out = [tuple(range(self.domain.order))]
        cur = out[0]
        for _ in range(1, upto):
            cur = tuple(self.images[x] for x in cur)
            out.append(cur)
        return out

    def order(self) -> int:
        k, cur = 1, self
        while not cur.is_identity():
            cur = cur.compose(self)
            k += 1
        return k

    def fixed_points(self) -> tuple[int, ...]:
        return tuple(g for g, i in enumerate(self.images) if i == g)


@dataclass(frozen=True)
class GSpec:
    """H together with the action of the Gamma-generator and truncation level."""

    H: FiniteGroup
    alpha: GroupAut
    l: int
    m: int = field(default=-1)
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if not is_prime(self.l) or self.l == 2:
            raise MalformedInputError(f"l must be an odd prime, got {self.l}")
        if self.alpha.domain.order != self.H.order:
            raise MalformedInputError("alpha is not an automorphism of H")
        o = self.alpha.order()
        minimal = 0
        while o % self.l == 0:
            o //= self.l
            minimal += 1
        if o != 1:
            raise MalformedInputError(
                f"alpha must have order a power of {self.l}, got order {self.alpha.order()}"
            )
        if self.m == -1:
            object.__setattr__(self, "m", minimal)
        elif self.m != minimal:
            raise MalformedInputError(
                f"truncation level must be the minimal {minimal}, got {self.m}"
            )
        if self.labels is not None and len(self.labels) != self.H.order:
            raise MalformedInputError("labels length does not match |H|")

    @property
    def gamma_order(self) -> int:
        return self.l**self.m

    def group(self) -> FiniteGroup:
        return semidirect_truncation(self)

    def label(self, h: int) -> str:
        return self.labels[h] if self.labels else f"h{h}"


def semidirect_truncation(spec: GSpec) -> FiniteGroup:
    """The finite group on pairs (h, i), 0 <= i < l^m; index = h*l^m + i."""
    lm = spec.gamma_order
    n = spec.H.order
    powers = spec.alpha.power_images(lm)
    table = np.empty((n * lm, n * lm), dtype=np.int32)
    for h in range(n):
        hrow = spec.H.mult[h]
        for i in range(lm):
            row = table[h * lm + i]
            pw = powers[i]
            for h2 in range(n):
                base = hrow[pw[h2]] * lm
                for i2 in range(lm):
                    row[h2 * lm + i2] = base + (i + i2) % lm
    return FiniteGroup(table)


def conjugacy_classes(g: FiniteGroup) -> list[tuple[int, ...]]:
    """Conjugacy classes as sorted tuples, ordered by minimal element."""
    seen = [False] * g.order
    classes = []
    for x in range(g.order):
        if seen[x]:
            continue
        orbit = sorted({g.conjugate(x, by) for by in range(g.order)})
        for y in orbit:
            seen[y] = True
        classes.append(tuple(orbit))
    return classes


def greedy_p_subgroup(g: FiniteGroup, p: int, within=None) -> tuple[int, ...]:
    """A maximal p-subgroup grown by single-element extension.

    A p-subgroup below Sylow order always admits a p-element of its normalizer
    outside itself, so the greedy loop terminates at full Sylow order (inside
    the optional ambient subset `within`).
    """
    pool = sorted(within) if within is not None else list(range(g.order))
    target = 1
    n = len(pool)
    while n % p == 0:
        n //= p
        target *= p
    cur = (g.identity,)
    while len(cur) < target:
        for x in pool:
            if x in cur:
                continue
            o = g.element_order(x)
            while o % p == 0:
                o //= p
            if o != 1:
                continue
            cand = g.closure(set(cur) | {x})
            sz = len(cand)
            while sz % p == 0:
                sz //= p
            if sz == 1 and set(cand) <= set(pool):
                cur = cand
                break
        else:
            break
    return cur


@dataclass(frozen=True)
class ElementaryData:
    """Witness that G_fin decomposes as <s> x| (complement)."""

    q: int
    s_gen: int
    s_order: int
    complement: tuple[int, ...]
    complement_gens: tuple[int, ...]
    action_exponents: dict


def _exponent_on(g: FiniteGroup, s: int, s_order: int, u: int):
    """The k with u s u^-1 = s^k, or None if conjugation leaves <s>."""
    c = g.conjugate(s, u)
    x = g.identity
    for k in range(s_order):
        if x == c:
            return k
        x = g.mul(x, s)
    return None


def _normal_cyclic_of_order(g: FiniteGroup, order: int, inside=None):
    """Generators of normal cyclic subgroups of the given order."""
    pool = inside if inside is not None else range(g.order)
    seen = set()
    out = []
    for x in pool:
        if x in seen or g.element_order(x) != order:
            continue
        sub = g.cyclic_subgroup(x)
        seen.update(sub)
        if g.is_normal(sub):
            out.append(x)
    return out


def is_q_elementary(spec: GSpec, q: int):
    """Witness, if any, that the truncation is <s> x| U with decomposition-group
    action exponents (q = l: U an l-group; q != l: U = H_q x Gamma with H_q a
    q-group fixed by the action)."""
    g = spec.group()
    l = spec.l
    lm = spec.gamma_order
    if q == l:
        n_prime = g.order
        while n_prime % l == 0:
            n_prime //= l
        comp = greedy_p_subgroup(g, l)
        for s in _normal_cyclic_of_order(g, n_prime):
            sub = set(g.cyclic_subgroup(s))
            if len(comp) * n_prime != g.order or (set(comp) & sub) != {g.identity}:
                continue
            data = _finish_elementary(g, spec, q, s, n_prime, comp)
            if data is not None:
                return data
        return None
    # q != l: s inside H, complement = (q-Sylow of the fixed points of alpha) x Gamma
    h_order = spec.H.order
    s_order = h_order
    while s_order % q == 0:
        s_order //= q
    h_indices = [h * lm for h in range(h_order)]
    fixed = [h * lm for h in spec.alpha.fixed_points()]
    hq = greedy_p_subgroup(g, q, within=fixed)
    for s in _normal_cyclic_of_order(g, s_order, inside=h_indices):
        sub = set(g.cyclic_subgroup(s))
        if len(hq) * s_order != h_order or (set(hq) & sub) != {g.identity}:
            continue
        if lm > 1:
            comp = g.closure(set(hq) | {spec.H.identity * lm + 1})
        else:
            comp = hq
        if len(comp) != len(hq) * lm:
            continue
        data = _finish_elementary(g, spec, q, s, s_order, comp)
        if data is not None:
            return data
    return None


def _finish_elementary(g, spec, q, s, s_order, comp):
    from .cyclo import decomposition_group

    if len(comp) * s_order != g.order:
        return None
    # small generating set of the complement, greedily
    gens = []
    span = {g.identity}
    for x in sorted(comp):
        if x not in span:
            gens.append(x)
            span = set(g.closure(gens))
            if len(span) == len(comp):
                break
    dec = decomposition_group(s_order, spec.l) if s_order > 1 else None
    exps = {}
    for u in gens:
        k = _exponent_on(g, s, s_order, u)
        if k is None or (dec is not None and k not in dec):
            return None
        exps[u] = k
    data = ElementaryData(
        q=q,
        s_gen=s,
        s_order=s_order,
        complement=tuple(sorted(comp)),
        complement_gens=tuple(gens),
        action_exponents=exps,
    )
    _verify_elementary(g, data)
    return data


def _verify_elementary(g: FiniteGroup, data: ElementaryData):
    """Re-multiply <s> x complement and confirm it tiles the group."""
    sub = g.cyclic_subgroup(data.s_gen)
    seen = set()
    for c in sub:
        for u in data.complement:
            seen.add(g.mul(c, u))
    if len(seen) != g.order:
        raise InternalConsistencyError(
            "elementary decomposition does not tile the group"
        )
    for u in data.complement_gens:
        k = data.action_exponents[u]
        if g.conjugate(data.s_gen, u) != g.power(data.s_gen, k):
            raise InternalConsistencyError("recorded action exponent is wrong")


def subgroups_up_to_conjugacy(g: FiniteGroup, cap: int = DEFAULT_SUBGROUP_CAP):
    """All subgroups up to conjugacy: cyclic seeds closed under pairwise joins."""
    if g.order > cap:
        raise ResourceLimitError(cap, f"group order {g.order} exceeds cap {cap}")
    all_elems = range(g.order)

    def conjugates(sub):
        return {tuple(sorted(g.conjugate(h, by) for h in sub)) for by in all_elems}

    classes: list[tuple[int, ...]] = []
    class_orbits: list[set] = []

    def add(sub) -> bool:
        for orb in class_orbits:
            if sub in orb:
                return False
        orb = conjugates(sub)
        classes.append(min(orb))
        class_orbits.append(orb)
        return True

    add((g.identity,))
    for x in all_elems:
        add(g.cyclic_subgroup(x))
    grew = True
    while grew:
        grew = False
        snapshot = list(classes)
        orbits = list(class_orbits)
        for i, a in enumerate(snapshot):
            for j in range(i, len(snapshot)):
                for b in orbits[j]:
                    join = g.closure(set(a) | set(b))
                    if len(join) > max(len(a), len(b)) and add(join):
                        grew = True
    return sorted(classes, key=lambda s: (len(s), s))
