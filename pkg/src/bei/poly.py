"""Exact sparse polynomials in x_1..x_n, y_1..y_n (plus optional auxiliary t's).

Monomials are exponent vectors packed into one Python int, 8 bits per
variable with the first variable in the most significant field.  With that
layout

* multiplication of monomials is integer addition,
* lex order (t_1 > ... > x_1 > ... > x_n > y_1 > ... > y_n) is integer order,
* divisibility and lcm are a handful of word operations (SWAR with a guard
  bit in each field).

Exponents must stay below 128.  Auxiliary variables sit above the x block,
so a monomial of the base ring keeps its integer value in an extended ring.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Iterator

W = 8  # bits per exponent field
FIELD = (1 << W) - 1
MAX_EXP = (1 << (W - 1)) - 1

DEFAULT_PRIME = 32003


class FieldMismatch(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Field:
    """Coefficient field: the rationals (``p == 0``) or F_p for an odd prime p."""

    p: int = 0

    def __post_init__(self):
        if self.p and (not _is_prime(self.p) or self.p == 2 or self.p >= 2**31):
            raise ValueError(f"field characteristic must be an odd prime < 2^31, got {self.p}")

    @classmethod
    def rationals(cls) -> "Field":
        return cls(0)

    @classmethod
    def prime(cls, p: int = DEFAULT_PRIME) -> "Field":
        return cls(p)

    @classmethod
    def parse(cls, text: str) -> "Field":
        """Accepts ``q``/``Q`` or ``fp:<p>`` (also ``Fp:<p>``)."""
        t = text.strip().lower()
        if t in ("q", "qq", "rationals"):
            return cls(0)
        if t.startswith("fp:"):
            return cls(int(t[3:]))
        if t == "fp":
            return cls(DEFAULT_PRIME)
        raise ValueError(f"unknown field {text!r}; use q or fp:<p>")

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    @property
    def name(self) -> str:
        return "Q" if self.p == 0 else f"Fp:{self.p}"

    def __str__(self) -> str:
        return self.name

    def coerce(self, c):
        if self.p:
            if isinstance(c, Fraction):
                return (c.numerator * pow(c.denominator, -1, self.p)) % self.p
            return int(c) % self.p
        return Fraction(c)

    def inv(self, c):
        if self.p:
            return pow(c, -1, self.p)
        return 1 / c

    def zero(self):
        return 0 if self.p else Fraction(0)

    def one(self):
        return 1 if self.p else Fraction(1)

    def lift(self, c) -> int | Fraction:
        """Symmetric representative, used for printing F_p coefficients."""
        if self.p:
            return c - self.p if c > self.p // 2 else c
        return c


class Ring:
    """k[t_1..t_a, x_1..x_n, y_1..y_n] with packed-int monomials.

    Variable index v (0-based) runs over t's, then x's, then y's.
    """

    def __init__(self, n: int, field: Field | None = None, aux: int = 0):
        if n < 0 or aux < 0:
            raise ValueError("negative variable count")
        self.n = n
        self.aux = aux
        self.field = field or Field.prime()
        self.nvars = aux + 2 * n
        N = self.nvars
        self._shifts = [W * (N - 1 - v) for v in range(N)]
        self.guard = sum(0x80 << (W * k) for k in range(N))
        self.low = sum(MAX_EXP << (W * k) for k in range(N))
        self._ones = sum(1 << (W * k) for k in range(N))
        self.base_bits = W * 2 * n  # everything below the auxiliary block
        self.ymask = (1 << (W * n)) - 1
        self._ones_n = sum(1 << (W * k) for k in range(n))
        self.names = [f"t{k + 1}" for k in range(aux)] + [f"x{i}" for i in range(1, n + 1)] + [
            f"y{i}" for i in range(1, n + 1)
        ]
        self._index = {name: v for v, name in enumerate(self.names)}

    # -- identity -----------------------------------------------------------
    def __eq__(self, other):
        return (
            isinstance(other, Ring)
            and self.n == other.n
            and self.aux == other.aux
            and self.field == other.field
        )

    def __hash__(self):
        return hash((self.n, self.aux, self.field))

    def __repr__(self):
        return f"Ring(n={self.n}, field={self.field.name}, aux={self.aux})"

    def extend(self, aux: int) -> "Ring":
        """Same base variables with ``aux`` auxiliary variables on top."""
        return Ring(self.n, self.field, self.aux + aux)

    def base(self) -> "Ring":
        return Ring(self.n, self.field, 0)

    def with_field(self, field: Field) -> "Ring":
        return Ring(self.n, field, self.aux)

    # -- monomials ----------------------------------------------------------
    def var_index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ValueError(f"unknown variable {name!r} in {self!r}") from None

    def mono_var(self, v: int, e: int = 1) -> int:
        if e > MAX_EXP:
            raise OverflowError("exponent too large")
        return e << self._shifts[v]

    def x_index(self, i: int) -> int:
        return self.aux + i - 1

    def y_index(self, i: int) -> int:
        return self.aux + self.n + i - 1

    def mono(self, exps: Iterable[int]) -> int:
        exps = list(exps)
        if len(exps) != self.nvars:
            raise ValueError("exponent vector has wrong length")
        m = 0
        for v, e in enumerate(exps):
            if e < 0 or e > MAX_EXP:
                raise OverflowError(f"exponent {e} out of range")
            m |= e << self._shifts[v]
        return m

    def exps(self, m: int) -> tuple[int, ...]:
        return tuple((m >> s) & FIELD for s in self._shifts)

    def deg(self, m: int) -> int:
        return ((m * self._ones) >> (W * (self.nvars - 1))) & FIELD

    def divides(self, a: int, b: int) -> bool:
        """True iff monomial a divides monomial b."""
        g = self.guard
        return ((b | g) - a) & g == g

    def lcm(self, a: int, b: int) -> int:
        g = (((b | self.guard) - a) & self.guard)
        mask = g - (g >> (W - 1))
        return (b & mask) | (a & ~mask & self.low)

    def gcd(self, a: int, b: int) -> int:
        g = (((b | self.guard) - a) & self.guard)
        mask = g - (g >> (W - 1))
        return (a & mask) | (b & ~mask & self.low)

    def support(self, m: int) -> int:
        """Guard-bit mask of the variables occurring in m."""
        return (m + self.low) & self.guard

    def coprime(self, a: int, b: int) -> bool:
        return self.support(a) & self.support(b) == 0

    def variables_of(self, m: int) -> list[int]:
        return [v for v, s in enumerate(self._shifts) if (m >> s) & FIELD]

    def is_base(self, m: int) -> bool:
        return m >> self.base_bits == 0

    def vertex_grade(self, m: int) -> int:
        """Packed Z^n degree (deg x_i + deg y_i per vertex) with the x-degree on top.

        Binomial edge ideals, their powers, products and colons are homogeneous
        for this grading.
        """
        xs = (m >> (W * self.n)) & self.ymask
        xdeg = ((xs * self._ones_n) >> (W * (self.n - 1))) & FIELD if self.n else 0
        return (xs + (m & self.ymask)) | (xdeg << (W * self.n))

    def mono_str(self, m: int) -> str:
        parts = []
        for v, s in enumerate(self._shifts):
            e = (m >> s) & FIELD
            if e == 1:
                parts.append(self.names[v])
            elif e:
                parts.append(f"{self.names[v]}^{e}")
        return "*".join(parts) if parts else "1"

    # -- polynomials --------------------------------------------------------
    def poly(self, terms: dict | None = None) -> "Polynomial":
        return Polynomial(self, terms or {})

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial(self, {0: self.field.one()})

    def const(self, c) -> "Polynomial":
        return Polynomial(self, {0: self.field.coerce(c)})

    def var(self, name: str) -> "Polynomial":
        return Polynomial(self, {self.mono_var(self.var_index(name)): self.field.one()})

    def x(self, i: int) -> "Polynomial":
        return Polynomial(self, {self.mono_var(self.x_index(i)): self.field.one()})

    def y(self, i: int) -> "Polynomial":
        return Polynomial(self, {self.mono_var(self.y_index(i)): self.field.one()})

    def t(self, k: int = 1) -> "Polynomial":
        return Polynomial(self, {self.mono_var(k - 1): self.field.one()})

    def edge_binomial(self, i: int, j: int) -> "Polynomial":
        """f_ij = x_i y_j - x_j y_i, normalized so that i < j."""
        if i == j:
            raise ValueError("loop edge")
        if i > j:
            i, j = j, i
        if not (1 <= i and j <= self.n):
            raise ValueError(f"edge {{{i},{j}}} outside 1..{self.n}")
        one = self.field.one()
        a = self.mono_var(self.x_index(i)) + self.mono_var(self.y_index(j))
        b = self.mono_var(self.x_index(j)) + self.mono_var(self.y_index(i))
        return Polynomial(self, {a: one, b: self.field.coerce(-1)})

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(self, text)


# ---------------------------------------------------------------------------
# Monomial orders
# ---------------------------------------------------------------------------


class MonomialOrder:
    """lex, degrevlex, or a block order with ``block`` auxiliary variables first.

    ``key_function(ring)`` returns None when the order coincides with integer
    comparison of packed monomials (lex, and block orders with lex on the
    rest), else an int-valued key compatible with multiplication.
    """

    def __init__(self, kind: str = "lex", block: int = 0, rest: "MonomialOrder | None" = None):
        if kind not in ("lex", "degrevlex", "block"):
            raise ValueError(f"unknown order {kind!r}")
        if kind == "block" and block < 1:
            raise ValueError("block order needs at least one eliminated variable")
        self.kind = kind
        self.block = block if kind == "block" else 0
        self.rest = (rest or LEX) if kind == "block" else None

    @classmethod
    def lex(cls) -> "MonomialOrder":
        return LEX

    @classmethod
    def degrevlex(cls) -> "MonomialOrder":
        return DEGREVLEX

    @classmethod
    def elimination(cls, block: int, rest: "MonomialOrder | None" = None) -> "MonomialOrder":
        return cls("block", block, rest)

    def _id(self):
        if self.kind == "block":
            return ("block", self.block, self.rest._id())
        return (self.kind,)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self._id() == other._id()

    def __hash__(self):
        return hash(self._id())

    def __repr__(self):
        if self.kind == "block":
            return f"MonomialOrder.elimination({self.block}, {self.rest!r})"
        return f"MonomialOrder.{self.kind}()"

    @property
    def is_lex_like(self) -> bool:
        return self.kind == "lex" or (self.kind == "block" and self.rest.is_lex_like)

    def key_function(self, ring: Ring) -> Callable[[int], int] | None:
        if self.is_lex_like:
            return None
        return _key_function(self, ring)

    def key(self, ring: Ring) -> Callable[[int], int]:
        kf = self.key_function(ring)
        return kf if kf is not None else _identity


def _identity(m: int) -> int:
    return m


LEX = MonomialOrder("lex")
DEGREVLEX = MonomialOrder("degrevlex")


@lru_cache(maxsize=None)
def _key_function(order: MonomialOrder, ring: Ring) -> Callable[[int], int]:
    if order.kind == "degrevlex":
        return _degrevlex_key(ring, 0)
    # block order whose rest is not lex-like: aux fields on top, rest keyed below
    rest = _degrevlex_key(ring, order.block)
    full = ring.nvars
    rest_bits = W * (full - order.block + 1) + W
    small = W * (full - order.block)
    block_mask = (1 << small) - 1

    def key(m: int) -> int:
        return ((m >> small) << rest_bits) | rest(m & block_mask)

    return key


def _degrevlex_key(ring: Ring, skip: int) -> Callable[[int], int]:
    # Encodes (deg, e_0+..+e_{N-2}, e_0+..+e_{N-3}, ..., e_0) over the
    # variables after the first `skip`; the encoding is additive and its
    # integer order is degrevlex.
    N = ring.nvars - skip
    shifts = [W * (N - 1 - v) for v in range(N)]
    cache: dict[int, int] = {}

    def key(m: int) -> int:
        k = cache.get(m)
        if k is None:
            e = [(m >> s) & FIELD for s in shifts]
            acc = sum(e)
            k = acc
            for v in range(N - 1, 0, -1):
                acc -= e[v]
                k = (k << W) | acc
            cache[m] = k
        return k

    return key


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------


class Polynomial:
    """Immutable sparse polynomial: dict packed-monomial -> nonzero coefficient."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: dict):
        self.ring = ring
        self.terms = {m: c for m, c in terms.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, ring: Ring, terms: dict) -> "Polynomial":
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.terms = terms
        obj._hash = None
        return obj

    # -- arithmetic ---------------------------------------------------------
    def _check(self, other: "Polynomial"):
        if not isinstance(other, Polynomial):
            raise TypeError(f"expected Polynomial, got {type(other).__name__}")
        if self.ring.field != other.ring.field:
            raise FieldMismatch(f"field mismatch: {self.ring.field} vs {other.ring.field}")
        if self.ring.n != other.ring.n:
            raise FieldMismatch(f"arity mismatch: n={self.ring.n} vs n={other.ring.n}")
        if self.ring.aux != other.ring.aux:
            return self.ring if self.ring.aux > other.ring.aux else other.ring
        return self.ring

    def _coerce(self, other):
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return other

    def __add__(self, other):
        other = self._coerce(other)
        ring = self._check(other)
        p = ring.field.p
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if p:
                v %= p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial._raw(ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.field.p
        if p:
            return Polynomial._raw(self.ring, {m: (-c) % p for m, c in self.terms.items()})
        return Polynomial._raw(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        ring = self._check(other)
        p = ring.field.p
        out: dict = {}
        get = out.get
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 + m2
                v = get(m, 0) + c1 * c2
                out[m] = v % p if p else v
        g = ring.guard
        if any(m & g for m in out):
            raise OverflowError("exponent exceeds 127")
        return Polynomial(ring, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def scale(self, c) -> "Polynomial":
        c = self.ring.field.coerce(c)
        p = self.ring.field.p
        if p:
            return Polynomial(self.ring, {m: (v * c) % p for m, v in self.terms.items()})
        return Polynomial(self.ring, {m: v * c for m, v in self.terms.items()})

    def mul_monomial(self, mono: int, c=None) -> "Polynomial":
        if c is None:
            return Polynomial._raw(self.ring, {m + mono: v for m, v in self.terms.items()})
        p = self.ring.field.p
        if p:
            return Polynomial(self.ring, {m + mono: (v * c) % p for m, v in self.terms.items()})
        return Polynomial(self.ring, {m + mono: v * c for m, v in self.terms.items()})

    def in_ring(self, ring: Ring) -> "Polynomial":
        """Re-home into a ring with the same base variables (adding/dropping aux)."""
        if ring.n != self.ring.n or ring.field != self.ring.field:
            raise FieldMismatch("cannot move polynomial between these rings")
        if ring.aux < self.ring.aux and any(m >> (W * ring.nvars) for m in self.terms):
            raise ValueError("polynomial involves auxiliary variables absent from target ring")
        return Polynomial._raw(ring, dict(self.terms))

    def change_field(self, field: Field) -> "Polynomial":
        ring = self.ring.with_field(field)
        return Polynomial(ring, {m: field.coerce(c) for m, c in self.terms.items()})

    # -- inspection ---------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring.field == other.ring.field and self.ring.n == other.ring.n and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.n, self.ring.field, frozenset(self.terms.items())))
        return self._hash

    def __len__(self):
        return len(self.terms)

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(self.ring.deg(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {self.ring.deg(m) for m in self.terms}
        return len(degs) <= 1

    def sorted_terms(self, order: MonomialOrder = LEX) -> list[tuple[int, object]]:
        key = order.key(self.ring)
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_monomial(self, order: MonomialOrder = LEX) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        kf = order.key_function(self.ring)
        return max(self.terms) if kf is None else max(self.terms, key=kf)

    def leading_coefficient(self, order: MonomialOrder = LEX):
        return self.terms[self.leading_monomial(order)]

    def monic(self, order: MonomialOrder = LEX) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.leading_coefficient(order)))

    def variables(self) -> set[int]:
        sup = 0
        for m in self.terms:
            sup |= self.ring.support(m)
        return {v for v in range(self.ring.nvars) if sup >> (W * (self.ring.nvars - 1 - v) + W - 1) & 1}

    def evaluate_swap(self) -> "Polynomial":
        """Image under x_i <-> y_i (all i)."""
        r = self.ring
        sh = W * r.n
        out = {}
        for m, c in self.terms.items():
            top = m >> r.base_bits << r.base_bits
            xs = (m >> sh) & r.ymask
            ys = m & r.ymask
            out[top | (ys << sh) | xs] = c
        return Polynomial._raw(r, out)

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


# ---------------------------------------------------------------------------
# Division and S-polynomials
# ---------------------------------------------------------------------------


def divide(f: Polynomial, divisors: list[Polynomial], order: MonomialOrder = LEX):
    """Multivariate division.  Returns (quotients, remainder) with
    f = sum(q_i * d_i) + r and no term of r divisible by any LM(d_i)."""
    if any(d.is_zero() for d in divisors):
        raise ZeroDivisionError("zero divisor in division")
    ring = f.ring
    for d in divisors:
        f._check(d)
    field = ring.field
    p = field.p
    kf = order.key(ring)
    lead = []
    for d in divisors:
        lm = d.leading_monomial(order)
        lead.append((lm, field.inv(d.terms[lm]), d))
    work = dict(f.terms)
    quot = [dict() for _ in divisors]
    rem = {}
    while work:
        m = max(work, key=kf)
        c = work.pop(m)
        for k, (lm, inv, d) in enumerate(lead):
            if ring.divides(lm, m):
                q = m - lm
                qc = c * inv
                if p:
                    qc %= p
                quot[k][q] = quot[k].get(q, 0) + qc
                for dm, dc in d.terms.items():
                    if dm == lm:
                        continue
                    mm = dm + q
                    v = work.get(mm, 0) - qc * dc
                    if p:
                        v %= p
                    if v:
                        work[mm] = v
                    else:
                        work.pop(mm, None)
                break
        else:
            rem[m] = c
    return [Polynomial(ring, q) for q in quot], Polynomial(ring, rem)


def normal_form(f: Polynomial, divisors: list[Polynomial], order: MonomialOrder = LEX) -> Polynomial:
    return divide(f, divisors, order)[1]


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder = LEX) -> Polynomial:
    if f.is_zero() or g.is_zero():
        raise ValueError("S-polynomial of zero")
    ring = f._check(g)
    field = ring.field
    lf, lg = f.leading_monomial(order), g.leading_monomial(order)
    L = ring.lcm(lf, lg)
    a = f.mul_monomial(L - lf, field.inv(f.terms[lf]))
    b = g.mul_monomial(L - lg, field.inv(g.terms[lg]))
    return a - b


def exact_quotient(h: Polynomial, f: Polynomial, order: MonomialOrder = LEX) -> Polynomial:
    """h / f, raising ArithmeticError unless f divides h exactly."""
    (q,), r = divide(h, [f], order)
    if r:
        raise ArithmeticError("division not exact")
    return q


# ---------------------------------------------------------------------------
# Text format:  c*x1^a*...*y3^b  with ^1 and unit coefficients elided
# ---------------------------------------------------------------------------


def format_polynomial(f: Polynomial, order: MonomialOrder = LEX) -> str:
    if not f.terms:
        return "0"
    field = f.ring.field
    out = []
    for m, c in f.sorted_terms(order):
        c = field.lift(c)
        neg = c < 0
        a = -c if neg else c
        ms = f.ring.mono_str(m)
        if ms == "1":
            body = str(a)
        elif a == 1:
            body = ms
        else:
            body = f"{a}*{ms}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append(("- " if neg else "+ ") + body)
    return " ".join(out)


_TERM = re.compile(r"\s*([+-]?)\s*([^+-]+)")


def parse_polynomial(ring: Ring, text: str) -> Polynomial:
    text = text.strip()
    if not text:
        raise ValueError("empty polynomial text")
    field = ring.field
    terms: dict = {}
    pos = 0
    first = True
    while pos < len(text):
        mt = _TERM.match(text, pos)
        if not mt or (not first and not mt.group(1)):
            raise ValueError(f"cannot parse polynomial at {text[pos:]!r}")
        first = False
        sign = -1 if mt.group(1) == "-" else 1
        coeff = Fraction(sign)
        mono = 0
        for factor in mt.group(2).strip().split("*"):
            factor = factor.strip()
            if not factor:
                raise ValueError(f"empty factor in {mt.group(2)!r}")
            if factor[0].isdigit():
                coeff *= Fraction(factor)
                continue
            name, _, e = factor.partition("^")
            e = int(e) if e else 1
            mono += ring.mono_var(ring.var_index(name.strip()), e)
        c = field.coerce(coeff)
        v = terms.get(mono, 0) + c
        terms[mono] = v % field.p if field.p else v
        pos = mt.end()
    return Polynomial(ring, terms)


def iter_monomials(ring: Ring, degree: int, variables: list[int] | None = None) -> Iterator[int]:
    """All monomials of a total degree in the given variables (default: all)."""
    vs = list(range(ring.nvars)) if variables is None else list(variables)
    units = [ring.mono_var(v) for v in vs]

    def rec(start: int, d: int, acc: int):
        if d == 0:
            yield acc
            return
        for k in range(start, len(units)):
            yield from rec(k, d - 1, acc + units[k])

    yield from rec(0, degree, 0)
