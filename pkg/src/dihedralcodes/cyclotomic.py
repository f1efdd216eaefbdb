"""Factorization of x^n - 1 over F_q and the canonical factor ordering.

Factors come from q-cyclotomic cosets: each coset C of Z_n gives the
minimal polynomial prod_{j in C} (x - zeta^j), where zeta is a primitive
n-th root of unity in the splitting field F_{q^s}, s = ord_n(q).  The
splitting field is built as F_q[z]/(M(z)) with M the lexicographically
least monic irreducible of degree s, so the whole computation is
deterministic.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from typing import Sequence

from .errors import Inconsistent, InvalidIndex, InvalidInput, NotCoprime
from .field import GF, Poly, factor_int, is_irreducible, least_irreducible, reciprocal_poly
from .field import x_pow_minus_one


def multiplicative_order(q: int, n: int) -> int:
    """Least s >= 1 with q^s = 1 (mod n); n = 1 gives 1."""
    if math.gcd(q, n) != 1:
        raise NotCoprime(f"gcd({n}, {q}) != 1")
    s, x = 1, q % n
    while x != 1 % n:
        x = (x * q) % n
        s += 1
    return s


def cyclotomic_cosets(q: int, n: int) -> list[list[int]]:
    """q-cyclotomic cosets of Z_n, ordered by their least element."""
    if math.gcd(q, n) != 1:
        raise NotCoprime(f"gcd({n}, {q}) != 1")
    seen: set[int] = set()
    cosets = []
    for j in range(n):
        if j in seen:
            continue
        coset, k = [], j
        while k not in coset:
            coset.append(k)
            k = (k * q) % n
        seen.update(coset)
        cosets.append(coset)
    return cosets


class _SplittingField:
    """F_{q^s} as tuples of length s over the base field F_q."""

    def __init__(self, base: GF, s: int) -> None:
        self.base = base
        self.s = s
        self.modulus = least_irreducible(base, s).coeffs
        self.one = (1,) + (0,) * (s - 1)

    def mul(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        F, s, mod = self.base, self.s, self.modulus
        prod = [0] * (2 * s - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] = F.add(prod[i + j], F.mul(x, y))
        for k in range(2 * s - 2, s - 1, -1):
            c = prod[k]
            if c:
                for j in range(s):
                    prod[k - s + j] = F.sub(prod[k - s + j], F.mul(c, mod[j]))
        return tuple(prod[:s])

    def sub(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(self.base.sub(x, y) for x, y in zip(a, b))

    def pow(self, a: tuple[int, ...], e: int) -> tuple[int, ...]:
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return result

    def root_of_unity(self, n: int) -> tuple[int, ...]:
        """First element, in lexicographic order, of multiplicative order n."""
        order = self.base.q**self.s - 1
        primes = list(factor_int(n)) if n > 1 else []
        for w in itertools.product(range(self.base.q), repeat=self.s):
            if not any(w):
                continue
            z = self.pow(w, order // n)
            if all(self.pow(z, n // ell) != self.one for ell in primes):
                return z
        raise AssertionError("unreachable: F_{q^s}^* is cyclic of order divisible by n")


def factor_cyclotomic(field: GF, n: int) -> list[Poly]:
    """Monic irreducible factors of x^n - 1 over ``field``, one per coset."""
    if n < 1:
        raise InvalidInput(f"n must be positive, got {n}")
    if math.gcd(n, field.q) != 1:
        raise NotCoprime(f"gcd({n}, {field.q}) != 1")
    ext = _SplittingField(field, multiplicative_order(field.q, n))
    zeta = ext.root_of_unity(n)
    powers = [ext.one]
    for _ in range(n - 1):
        powers.append(ext.mul(powers[-1], zeta))
    factors = []
    for coset in cyclotomic_cosets(field.q, n):
        poly = [ext.one]
        for j in coset:
            root = powers[j]
            nxt = [tuple([0] * ext.s)] * (len(poly) + 1)
            for k, c in enumerate(poly):
                nxt[k + 1] = tuple(field.add(x, y) for x, y in zip(nxt[k + 1], c))
                nxt[k] = ext.sub(nxt[k], ext.mul(root, c))
            poly = nxt
        if any(any(c[1:]) for c in poly):
            raise Inconsistent(f"minimal polynomial of coset {coset} left the base field")
        factors.append(Poly(field, [c[0] for c in poly]))
    return factors


@dataclass(frozen=True)
class FactorProfile:
    """x^n - 1 = f_0 ... f_r f_{r+1} ... f_{r+2t} in canonical order.

    Indices 0..r hold self-reciprocal factors (f_0 = x - 1, and f_1 = x + 1
    when n is even); index r + j is paired with r + j + t by reciprocation.
    """

    field: GF
    n: int
    factors: tuple[Poly, ...]
    r: int
    t: int

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(int(f.degree) for f in self.factors)

    @property
    def i0(self) -> tuple[int, ...]:
        return (0,) if self.n % 2 else (0, 1)

    @property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple((self.r + j, self.r + j + self.t) for j in range(1, self.t + 1))

    @property
    def pair_map(self) -> dict[int, tuple[int, int]]:
        return {j: (self.r + j, self.r + j + self.t) for j in range(1, self.t + 1)}

    def __len__(self) -> int:
        return len(self.factors)

    def __hash__(self) -> int:
        # profiles key many caches; hashing the factor tuple every time is wasteful
        try:
            return self.__dict__["_hash"]
        except KeyError:
            h = hash((self.field, self.n, self.factors))
            object.__setattr__(self, "_hash", h)
            return h

    def partner(self, i: int) -> int:
        """Index of f_i^*: i itself for i <= r, else the other pair member."""
        self.check_index(i)
        if i <= self.r:
            return i
        return i + self.t if i <= self.r + self.t else i - self.t

    def check_index(self, i: int) -> None:
        if not 0 <= i < len(self.factors):
            raise InvalidIndex(f"factor index {i} outside 0..{len(self.factors) - 1}")

    @functools.cached_property
    def modulus(self) -> Poly:
        return x_pow_minus_one(self.field, self.n)

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "n": self.n,
            "r": self.r,
            "t": self.t,
            "factors": [f.to_json() for f in self.factors],
            "degrees": list(self.degrees),
            "pairs": [list(pr) for pr in self.pairs],
        }


def build_profile(field: GF, n: int, factors: Sequence[Poly] | None = None) -> FactorProfile:
    """Validate ``factors`` of x^n - 1 and arrange them canonically."""
    if factors is None:
        factors = factor_cyclotomic(field, n)
    if math.gcd(n, field.q) != 1:
        raise NotCoprime(f"gcd({n}, {field.q}) != 1")
    product = Poly.one(field)
    for f in factors:
        if f.field != field or f.degree < 1 or f.lead != 1 or not is_irreducible(f):
            raise Inconsistent(f"{f} is not a monic irreducible over {field}")
        product = product * f
    if product != x_pow_minus_one(field, n) or len(set(factors)) != len(factors):
        raise Inconsistent(f"factors do not multiply to x^{n} - 1")

    x_minus_1 = Poly(field, (field.neg(1), 1))
    x_plus_1 = Poly(field, (1, 1))
    head = [x_minus_1]
    if n % 2 == 0:
        head.append(x_plus_1)
    rest = [f for f in factors if f not in head]
    self_rec = sorted((f for f in rest if reciprocal_poly(f) == f), key=Poly.sort_key)
    pairs = []
    for f in rest:
        g = reciprocal_poly(f)
        if g != f and f.sort_key() < g.sort_key():
            pairs.append((f, g))
    pairs.sort(key=lambda pr: pr[0].sort_key())
    ordered = head + self_rec + [f for f, _ in pairs] + [g for _, g in pairs]
    profile = FactorProfile(field, n, tuple(ordered), len(head) + len(self_rec) - 1, len(pairs))
    for i in range(len(head), profile.r + 1):
        if profile.degrees[i] % 2:
            raise Inconsistent(f"self-reciprocal factor {ordered[i]} has odd degree")
    return profile


@functools.lru_cache(maxsize=256)
def profile_for(field: GF, n: int) -> FactorProfile:
    """Cached ``build_profile(field, n)``."""
    return build_profile(field, n)
