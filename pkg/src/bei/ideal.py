"""Ideals: reduced Groebner bases, membership, colon, products, powers."""

from __future__ import annotations

import heapq
import itertools
import threading
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .poly import LEX, W, Field, MonomialOrder, Polynomial, Ring, exact_quotient


class NotHomogeneous(ValueError):
    pass


@dataclass
class EngineStats:
    """Process-wide work counter; the unit of the search budget."""

    buchberger_runs: int = 0
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def bump(self) -> None:
        with self._lock:
            self.buchberger_runs += 1


STATS = EngineStats()


# ---------------------------------------------------------------------------
# Buchberger kernel on raw dicts {packed monomial: coefficient}
# ---------------------------------------------------------------------------


def _reduce_fp(f: dict, reducers: list, guard: int, p: int) -> dict:
    # reducers: (lm, [(mono, -coeff) of the monic tail])
    heap = [-m for m in f]
    heapq.heapify(heap)
    pop, push = heapq.heappop, heapq.heappush
    rem = {}
    while heap:
        m = -pop(heap)
        c = f.pop(m)
        if not c:
            continue
        mg = m | guard
        for lm, tail in reducers:
            if (mg - lm) & guard == guard:
                q = m - lm
                for tm, tc in tail:
                    mm = tm + q
                    old = f.get(mm)
                    if old is None:
                        if mm & guard:
                            raise OverflowError("exponent exceeds 127")
                        f[mm] = (c * tc) % p
                        push(heap, -mm)
                    else:
                        f[mm] = (old + c * tc) % p
                break
        else:
            rem[m] = c
    return rem


def _reduce_keyed(f: dict, reducers: list, guard: int, p: int, key) -> dict:
    # same as _reduce_fp for an arbitrary order key (and Q when p == 0)
    heap = [(-key(m), m) for m in f]
    heapq.heapify(heap)
    pop, push = heapq.heappop, heapq.heappush
    rem = {}
    while heap:
        _, m = pop(heap)
        c = f.pop(m)
        if not c:
            continue
        mg = m | guard
        for lm, tail in reducers:
            if (mg - lm) & guard == guard:
                q = m - lm
                for tm, tc in tail:
                    mm = tm + q
                    old = f.get(mm)
                    if old is None:
                        if mm & guard:
                            raise OverflowError("exponent exceeds 127")
                        v = c * tc
                        f[mm] = v % p if p else v
                        push(heap, (-key(mm), mm))
                    else:
                        v = old + c * tc
                        f[mm] = v % p if p else v
                break
        else:
            rem[m] = c
    return rem


def _identity(m):
    return m


class _Engine:
    """One Buchberger run (Gebauer-Moeller criteria, normal selection strategy)."""

    def __init__(self, ring: Ring, order: MonomialOrder):
        self.ring = ring
        self.field = ring.field
        self.p = ring.field.p
        kf = order.key_function(ring)
        self.lexlike = kf is None and self.p != 0
        self.key = kf or _identity
        self.polys: list[dict] = []
        self.lms: list[int] = []
        self.reducers: list = []  # aligned with self.active
        self.active: list[int] = []

    def lead(self, f: dict) -> int:
        return max(f) if self.key is _identity else max(f, key=self.key)

    def monic(self, f: dict) -> tuple[int, dict]:
        lm = self.lead(f)
        inv = self.field.inv(f[lm])
        p = self.p
        if p:
            return lm, {m: (c * inv) % p for m, c in f.items()}
        return lm, {m: c * inv for m, c in f.items()}

    def reduce(self, f: dict) -> dict:
        if self.lexlike:
            return _reduce_fp(f, self.reducers, self.ring.guard, self.p)
        return _reduce_keyed(f, self.reducers, self.ring.guard, self.p, self.key)

    def _tail(self, lm: int, f: dict) -> list:
        p = self.p
        if p:
            return [(m, (-c) % p) for m, c in f.items() if m != lm]
        return [(m, -c) for m, c in f.items() if m != lm]

    def run(self, gens: list[dict]) -> list[dict]:
        ring = self.ring
        key = self.key
        lcm, divides, coprime, deg = ring.lcm, ring.divides, ring.coprime, ring.deg
        pairs: dict[int, tuple[int, int, int]] = {}
        heap: list = []
        counter = itertools.count()

        def update(h: int):
            lh = self.lms[h]
            cand = list(self.active)
            kept: list[int] = []
            while cand:
                g1 = cand.pop()
                L1 = lcm(lh, self.lms[g1])
                if coprime(lh, self.lms[g1]):
                    kept.append(g1)
                    continue
                if any(divides(lcm(lh, self.lms[g2]), L1) for g2 in cand):
                    continue
                if any(divides(lcm(lh, self.lms[g2]), L1) for g2 in kept):
                    continue
                kept.append(g1)
            for pid in list(pairs):
                g1, g2, L = pairs[pid]
                if divides(lh, L) and lcm(self.lms[g1], lh) != L and lcm(lh, self.lms[g2]) != L:
                    del pairs[pid]
            for g in kept:
                if coprime(lh, self.lms[g]):
                    continue
                L = lcm(lh, self.lms[g])
                pid = next(counter)
                pairs[pid] = (g, h, L)
                heapq.heappush(heap, (deg(L), key(L), pid))
            keep = [(k, r) for k, r in zip(self.active, self.reducers) if not divides(lh, self.lms[k])]
            self.active = [k for k, _ in keep] + [h]
            self.reducers = [r for _, r in keep] + [(lh, self._tail(lh, self.polys[h]))]

        def add(f: dict):
            lm, f = self.monic(f)
            self.polys.append(f)
            self.lms.append(lm)
            update(len(self.polys) - 1)

        start = sorted((g for g in gens if g), key=lambda g: key(self.lead(g)))
        for g in start:
            r = self.reduce(dict(g))
            if r:
                add(r)
                if self.lms[-1] == 0:
                    return [{0: self.field.one()}]
        while heap:
            _, _, pid = heapq.heappop(heap)
            pr = pairs.pop(pid, None)
            if pr is None:
                continue
            i, j, L = pr
            s = self._spoly(i, j, L)
            r = self.reduce(s)
            if r:
                add(r)
                if self.lms[-1] == 0:
                    return [{0: self.field.one()}]
        return self._interreduce()

    def _spoly(self, i: int, j: int, L: int) -> dict:
        p = self.p
        qi, qj = L - self.lms[i], L - self.lms[j]
        out = {m + qi: c for m, c in self.polys[i].items() if m != self.lms[i]}
        g = self.ring.guard
        if any(m & g for m in out) or any((m + qj) & g for m in self.polys[j]):
            raise OverflowError("exponent exceeds 127")
        for m, c in self.polys[j].items():
            if m == self.lms[j]:
                continue
            mm = m + qj
            v = out.get(mm, 0) - c
            if p:
                v %= p
            if v:
                out[mm] = v
            else:
                out.pop(mm, None)
        return out

    def _interreduce(self) -> list[dict]:
        idx = list(self.active)
        out = []
        for k in idx:
            lm = self.lms[k]
            others = [(self.lms[o], self._tail(self.lms[o], self.polys[o])) for o in idx if o != k]
            tail = {m: c for m, c in self.polys[k].items() if m != lm}
            if self.lexlike:
                tail = _reduce_fp(tail, others, self.ring.guard, self.p)
            else:
                tail = _reduce_keyed(tail, others, self.ring.guard, self.p, self.key)
            tail[lm] = self.field.one()
            out.append((self.key(lm), tail))
        out.sort(key=lambda t: t[0], reverse=True)
        return [t for _, t in out]


def buchberger(ring: Ring, gens: Iterable[dict], order: MonomialOrder = LEX) -> list[dict]:
    """Reduced Groebner basis (monic, sorted by decreasing leading monomial)."""
    STATS.bump()
    gens = [dict(g) for g in gens if g]
    if not gens:
        return []
    return _Engine(ring, order).run(gens)


# ---------------------------------------------------------------------------
# Ideals
# ---------------------------------------------------------------------------


class Ideal:
    """Generators plus per-order cache of the reduced Groebner basis.

    Treated as immutable; the cache fills once per order (first computation
    wins under concurrent use).
    """

    def __init__(self, ring: Ring, generators: Iterable[Polynomial] = ()):
        self.ring = ring
        gens = []
        for g in generators:
            if not isinstance(g, Polynomial):
                raise TypeError("ideal generators must be Polynomials")
            if g.ring != ring:
                g = g.in_ring(ring)
            if g:
                gens.append(g)
        self.generators: tuple[Polynomial, ...] = tuple(gens)
        self._gb: dict[MonomialOrder, tuple[Polynomial, ...]] = {}
        self._lock = threading.Lock()

    @classmethod
    def unit(cls, ring: Ring) -> "Ideal":
        return cls(ring, [ring.one()])

    def __repr__(self):
        return f"Ideal({', '.join(map(str, self.generators)) or '0'})"

    def __len__(self):
        return len(self.generators)

    @property
    def field(self) -> Field:
        return self.ring.field

    @property
    def homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def is_zero(self) -> bool:
        return not self.generators

    def groebner(self, order: MonomialOrder = LEX) -> tuple[Polynomial, ...]:
        gb = self._gb.get(order)
        if gb is None:
            raw = buchberger(self.ring, (g.terms for g in self.generators), order)
            gb = tuple(Polynomial._raw(self.ring, t) for t in raw)
            with self._lock:
                gb = self._gb.setdefault(order, gb)
        return gb

    def is_unit(self) -> bool:
        gb = self.groebner()
        return len(gb) == 1 and set(gb[0].terms) == {0}

    def leading_monomials(self, order: MonomialOrder = LEX) -> list[int]:
        return [g.leading_monomial(order) for g in self.groebner(order)]

    def key(self, order: MonomialOrder = LEX) -> tuple:
        """Hashable canonical form: the reduced Groebner basis."""
        return (self.ring.n, self.ring.field.p) + tuple(
            tuple(sorted(g.terms.items())) for g in self.groebner(order)
        )

    def reduce(self, f: Polynomial, order: MonomialOrder = LEX) -> Polynomial:
        """Normal form of f modulo the Groebner basis."""
        gb = self.groebner(order)
        if not gb:
            return f
        ring = self.ring
        p = ring.field.p
        reds = []
        for g in gb:
            lm = g.leading_monomial(order)
            if p:
                reds.append((lm, [(m, (-c) % p) for m, c in g.terms.items() if m != lm]))
            else:
                reds.append((lm, [(m, -c) for m, c in g.terms.items() if m != lm]))
        kf = order.key_function(ring)
        if kf is None and p:
            rem = _reduce_fp(dict(f.terms), reds, ring.guard, p)
        else:
            rem = _reduce_keyed(dict(f.terms), reds, ring.guard, p, kf or _identity)
        return Polynomial._raw(ring, rem)

    def contains(self, f: Polynomial) -> bool:
        return self.reduce(f).is_zero()

    def __contains__(self, f: Polynomial) -> bool:
        return self.contains(f)

    def __add__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, self.generators + other.generators)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return product(self, other)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return ideal_equal(self, other)

    __hash__ = None

    def change_field(self, field: Field) -> "Ideal":
        return Ideal(self.ring.with_field(field), [g.change_field(field) for g in self.generators])

    def to_strings(self) -> list[str]:
        return [str(g) for g in self.generators]


def groebner(I: Ideal, order: MonomialOrder = LEX) -> tuple[Polynomial, ...]:
    return I.groebner(order)


def member(f: Polynomial, I: Ideal) -> bool:
    return I.contains(f)


def ideal_equal(I: Ideal, J: Ideal) -> bool:
    """I == J.  Reduced Groebner bases are unique, so equality of the two
    bases is equivalent to mutual membership of the generators."""
    if I.ring.n != J.ring.n or I.ring.field != J.ring.field:
        return False
    if I is J:
        return True
    return I.key() == J.key()


def ideal_equal_by_membership(I: Ideal, J: Ideal) -> bool:
    return all(J.contains(g) for g in I.generators) and all(I.contains(g) for g in J.generators)


def product(I: Ideal, J: Ideal) -> Ideal:
    return Ideal(I.ring, [a * b for a in I.generators for b in J.generators])


def power(I: Ideal, s: int) -> Ideal:
    if s < 1:
        if s == 0:
            return Ideal.unit(I.ring)
        raise ValueError("power must be >= 0")
    if s == 1:
        return I
    gens = []
    for combo in itertools.combinations_with_replacement(range(len(I.generators)), s):
        f = I.generators[combo[0]]
        for k in combo[1:]:
            f = f * I.generators[k]
        gens.append(f)
    return Ideal(I.ring, gens)


def _variable_blocks(ring: Ring, gens: Sequence[Polynomial]) -> list[tuple[int, list[int]]]:
    """Partition generators into groups with pairwise disjoint variable supports.

    Returns (support mask, generator indices) per group.
    """
    groups: list[tuple[int, list[int]]] = []
    for k, g in enumerate(gens):
        sup = 0
        for m in g.terms:
            sup |= ring.support(m)
        merged = [k]
        rest = []
        for gs, members in groups:
            if gs & sup:
                sup |= gs
                merged.extend(members)
            else:
                rest.append((gs, members))
        rest.append((sup, merged))
        groups = rest
    return groups


def colon_poly(I: Ideal, f: Polynomial, order: MonomialOrder = LEX, split: bool = True) -> Ideal:
    """I : <f>, computed as (I ∩ <f>) / f with I ∩ <f> obtained by eliminating t
    from <t*g_i> + <(1-t)*f>.

    With ``split`` the generators of I that share no variable with f (directly
    or through other generators) are set aside: for I = A + B with B in
    variables disjoint from A and f, I : f = (A : f) + B.
    """
    if f.is_zero():
        raise ZeroDivisionError("colon by the zero polynomial")
    ring = I.ring
    f = f.in_ring(ring) if f.ring != ring else f
    if I.is_zero():
        return Ideal(ring)
    if I.contains(f):
        return Ideal.unit(ring)
    gens = list(I.generators)
    bystander: list[Polynomial] = []
    if split:
        fsup = 0
        for m in f.terms:
            fsup |= ring.support(m)
        involved = []
        for sup, members in _variable_blocks(ring, gens):
            if sup & fsup:
                involved.extend(members)
            else:
                bystander.extend(gens[k] for k in members)
        if not involved:
            return I
        gens = [gens[k] for k in sorted(involved)]
        if bystander:
            sub = Ideal(ring, gens)
            if sub.contains(f):
                return Ideal.unit(ring)
    return Ideal(ring, _colon_by_elimination(ring, gens, f, order) + bystander)


def _colon_by_elimination(ring: Ring, gens: list[Polynomial], f: Polynomial, order: MonomialOrder) -> list[Polynomial]:
    ext = ring.extend(1)
    t = ext.t(1)
    fe = f.in_ring(ext)
    lifted = [t * g.in_ring(ext) for g in gens] + [(ext.one() - t) * fe]
    elim = MonomialOrder.elimination(1, rest=order)
    gb = buchberger(ext, (h.terms for h in lifted), elim)
    limit = 1 << (W * ring.nvars)
    out = []
    for h in gb:
        if all(m < limit for m in h):
            hp = Polynomial._raw(ring, h)
            try:
                out.append(exact_quotient(hp, f, order))
            except ArithmeticError:
                raise ArithmeticError("division-not-exact: intersection element not a multiple of f") from None
    return out


def intersect(I: Ideal, J: Ideal, order: MonomialOrder = LEX) -> Ideal:
    """I ∩ J by eliminating t from t*I + (1-t)*J."""
    ring = I.ring
    if I.is_zero() or J.is_zero():
        return Ideal(ring)
    ext = ring.extend(1)
    t = ext.t(1)
    lifted = [t * g.in_ring(ext) for g in I.generators] + [(ext.one() - t) * g.in_ring(ext) for g in J.generators]
    gb = buchberger(ext, (h.terms for h in lifted), MonomialOrder.elimination(1, rest=order))
    limit = 1 << (W * ring.nvars)
    return Ideal(ring, [Polynomial._raw(ring, h) for h in gb if all(m < limit for m in h)])


def minimal_generators(I: Ideal) -> list[Polynomial]:
    """A minimal subset of the given generators (graded Nakayama).

    Generators are taken by ascending degree; one is dropped when it already
    lies in the ideal of those kept so far.
    """
    if not I.homogeneous:
        raise NotHomogeneous("minimal generators are only defined here for homogeneous ideals")
    kept: list[Polynomial] = []
    for g in sorted(I.generators, key=lambda g: g.degree()):
        if kept and Ideal(I.ring, kept).contains(g):
            continue
        kept.append(g)
    return kept


def dsequence_colon_identity_check(I: Ideal, prefix: Sequence[Polynomial], u: Polynomial, s: int) -> bool:
    """((prefix) + I^s) : u  ==  ((prefix) : u) + I^(s-1)."""
    if s < 1:
        raise ValueError("s must be >= 1")
    ring = I.ring
    pre = Ideal(ring, prefix)
    left = colon_poly(pre + power(I, s), u)
    right = colon_poly(pre, u) + power(I, s - 1)
    return ideal_equal(left, right)
