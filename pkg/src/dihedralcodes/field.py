"""Exact arithmetic in F_{p^m} and in univariate polynomial rings over it.

Field elements are plain ints.  Over F_p an element is its residue in
[0, p).  Over F_{p^m} with m > 1 the base-p digits of the int, least
significant first, are the coefficients of the element written as a
residue modulo the field's defining polynomial, so element 1 + 2a over
F_9 is the int 1 + 2*3 = 7.

A :class:`Poly` stores ascending coefficients with no trailing zeros; the
zero polynomial has the empty coefficient tuple.
"""

from __future__ import annotations

import functools
import itertools
import json
import math
import re
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import InvalidInput, NotInvertible


def factor_int(n: int) -> dict[int, int]:
    """Prime factorization of a positive integer by trial division."""
    if n < 1:
        raise InvalidInput(f"cannot factor {n}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Split ``q`` into ``(p, m)`` with q = p^m."""
    if q < 2:
        raise InvalidInput(f"{q} is not a prime power")
    fac = factor_int(q)
    if len(fac) != 1:
        raise InvalidInput(f"{q} is not a prime power")
    ((p, m),) = fac.items()
    return p, m


class GF:
    """The finite field F_{p^m}.

    For m > 1 the field is F_p[a]/(modulus(a)); by default ``modulus`` is
    the lexicographically least monic irreducible of degree m, comparing
    coefficients from the constant term upwards.
    """

    def __init__(self, p: int, m: int = 1, modulus: Sequence[int] | None = None) -> None:
        if p < 2 or factor_int(p) != {p: 1}:
            raise InvalidInput(f"characteristic {p} is not prime")
        if m < 1:
            raise InvalidInput(f"extension degree must be >= 1, got {m}")
        self.p = p
        self.m = m
        self.q = p**m
        self.modulus: tuple[int, ...] | None = None
        if m == 1:
            if modulus is not None:
                raise InvalidInput("a prime field takes no modulus")
            return
        base = gf(p)
        if modulus is None:
            mod_poly = least_irreducible(base, m)
        else:
            mod_poly = Poly(base, tuple(int(c) for c in modulus))
            if mod_poly.degree != m or mod_poly.lead != 1 or not is_irreducible(mod_poly):
                raise InvalidInput(f"{mod_poly} is not a monic irreducible of degree {m}")
        self.modulus = mod_poly.coeffs
        self._build_tables()

    # -- construction -----------------------------------------------------

    def _digit_mul(self, a: int, b: int) -> int:
        p, m, mod = self.p, self.m, self.modulus
        da, db = self.to_vector(a), self.to_vector(b)
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        for k in range(2 * m - 2, m - 1, -1):
            c = prod[k]
            if c:
                for j in range(m + 1):
                    prod[k - m + j] = (prod[k - m + j] - c * mod[j]) % p
        return self.from_vector(prod[:m])

    def _build_tables(self) -> None:
        q = self.q
        order = q - 1
        for g in range(2, q):
            x, k = g, 1
            while x != 1:
                x = self._digit_mul(x, g)
                k += 1
            if k == order:
                break
        exp = [1] * (2 * order)
        for k in range(1, 2 * order):
            exp[k] = self._digit_mul(exp[k - 1], g)
        log = [0] * q
        for k in range(order):
            log[exp[k]] = k
        self._exp, self._log = exp, log
        self._exp_np = np.array(exp, dtype=np.int64)
        self._log_np = np.array(log, dtype=np.int64)
        self._powers = np.array([self.p**j for j in range(self.m)], dtype=np.int64)
        if self.p != 2:
            elems = [self.to_vector(a) for a in range(q)]
            self._neg = [self.from_vector([(-c) % self.p for c in v]) for v in elems]
            self._add = None
            if q <= 1024:
                self._add = [
                    [self.from_vector([(x + y) % self.p for x, y in zip(u, v)]) for v in elems]
                    for u in elems
                ]

    # -- identity ---------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, GF)
            and (self.p, self.m, self.modulus) == (other.p, other.m, other.modulus)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.m, self.modulus))

    def __repr__(self) -> str:
        return f"GF({self.p})" if self.m == 1 else f"GF({self.p}^{self.m})"

    # -- element encoding -------------------------------------------------

    def to_vector(self, a: int) -> tuple[int, ...]:
        """Coefficient vector over F_p (length m) of element ``a``."""
        out = []
        for _ in range(self.m):
            a, d = divmod(a, self.p)
            out.append(d)
        return tuple(out)

    def from_vector(self, v: Sequence[int]) -> int:
        if len(v) > self.m:
            raise InvalidInput(f"vector {list(v)} too long for {self}")
        return sum((int(c) % self.p) * self.p**j for j, c in enumerate(v))

    def element(self, value: int | Sequence[int]) -> int:
        """Canonical int for an F_p residue (m = 1) or a coefficient vector."""
        if isinstance(value, (int, np.integer)):
            value = int(value)
            if self.m == 1:
                return value % self.p
            if not 0 <= value < self.q:
                raise InvalidInput(f"{value} is not an element encoding of {self}")
            return value
        return self.from_vector(value)

    def element_json(self, a: int) -> int | list[int]:
        return a if self.m == 1 else list(self.to_vector(a))

    def element_str(self, a: int) -> str:
        if self.m == 1:
            return str(a)
        terms = []
        for j, c in enumerate(self.to_vector(a)):
            if c:
                mono = "" if j == 0 else ("a" if j == 1 else f"a^{j}")
                terms.append(str(c) if j == 0 else (mono if c == 1 else f"{c}{mono}"))
        return "+".join(terms) if terms else "0"

    def elements(self) -> range:
        return range(self.q)

    # -- scalar arithmetic ------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self._add is not None:
            return self._add[a][b]
        return self.from_vector([x + y for x, y in zip(self.to_vector(a), self.to_vector(b))])

    def neg(self, a: int) -> int:
        if self.m == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise NotInvertible("0 has no inverse")
        if self.m == 1:
            return pow(a, -1, self.p)
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if self.m == 1:
            return pow(a, e, self.p)
        if a == 0:
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    # -- numpy arithmetic -------------------------------------------------

    def _digits(self, A: np.ndarray) -> list[np.ndarray]:
        return [(A // pw) % self.p for pw in self._powers]

    def vadd(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        """Elementwise sum of two broadcastable int arrays."""
        if self.m == 1:
            return (A + B) % self.p
        if self.p == 2:
            return np.bitwise_xor(A, B)
        out = np.zeros(np.broadcast_shapes(np.shape(A), np.shape(B)), dtype=np.int64)
        for pw, da, db in zip(self._powers, self._digits(A), self._digits(B)):
            out += ((da + db) % self.p) * pw
        return out

    def vneg(self, A: np.ndarray) -> np.ndarray:
        if self.m == 1:
            return (-A) % self.p
        if self.p == 2:
            return np.array(A, dtype=np.int64, copy=True)
        out = np.zeros(np.shape(A), dtype=np.int64)
        for pw, da in zip(self._powers, self._digits(A)):
            out += ((-da) % self.p) * pw
        return out

    def vsub(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        return self.vadd(A, self.vneg(B))

    def vmul(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        if self.m == 1:
            return (A * B) % self.p
        A, B = np.broadcast_arrays(np.asarray(A, dtype=np.int64), np.asarray(B, dtype=np.int64))
        out = self._exp_np[self._log_np[A] + self._log_np[B]]
        out[(A == 0) | (B == 0)] = 0
        return out

    def vsum(self, A: np.ndarray, axis: int) -> np.ndarray:
        """Field sum of ``A`` along ``axis``."""
        A = np.asarray(A, dtype=np.int64)
        if self.m == 1:
            return A.sum(axis=axis) % self.p
        if self.p == 2:
            return np.bitwise_xor.reduce(A, axis=axis)
        out = 0
        for pw, da in zip(self._powers, self._digits(A)):
            out = out + (da.sum(axis=axis) % self.p) * pw
        return np.asarray(out, dtype=np.int64)

    def vdot(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        """Matrix product A @ B over the field."""
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        if self.m == 1:
            return (A @ B) % self.p
        return self.vsum(self.vmul(A[:, :, None], B[None, :, :]), axis=1)

    def tables(self) -> tuple[np.ndarray, np.ndarray]:
        """Full addition and multiplication tables as q x q arrays."""
        a = np.arange(self.q, dtype=np.int64)
        return self.vadd(a[:, None], a[None, :]), self.vmul(a[:, None], a[None, :])


@functools.lru_cache(maxsize=None)
def gf(q: int | str) -> GF:
    """The field of order ``q``; accepts 9, "9" or "3^2"."""
    if isinstance(q, str):
        text = q.strip()
        if "^" in text:
            p_text, m_text = text.split("^", 1)
            try:
                p, m = int(p_text), int(m_text)
            except ValueError:
                raise InvalidInput(f"cannot parse field order {q!r}") from None
            if p < 2 or m < 1 or factor_int(p) != {p: 1}:
                raise InvalidInput(f"{q!r} is not of the form prime^m")
            return gf(p**m)
        try:
            value = int(text)
        except ValueError:
            raise InvalidInput(f"cannot parse field order {q!r}") from None
        return gf(value)
    p, m = prime_power(int(q))
    return GF(p, m)


# ---------------------------------------------------------------------------
# polynomials over a field


def _strip(c: Sequence[int]) -> tuple[int, ...]:
    end = len(c)
    while end and c[end - 1] == 0:
        end -= 1
    return tuple(c[:end])


@dataclass(frozen=True)
class Poly:
    """Univariate polynomial over ``field`` with ascending ``coeffs``."""

    field: GF
    coeffs: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        F = self.field
        if F.m == 1:
            c = tuple(int(x) % F.p for x in self.coeffs)
        else:
            c = tuple(int(x) for x in self.coeffs)
            if any(not 0 <= x < F.q for x in c):
                raise InvalidInput(f"coefficients {c} out of range for {F}")
        object.__setattr__(self, "coeffs", _strip(c))

    @classmethod
    def zero(cls, field: GF) -> Poly:
        return cls(field, ())

    @classmethod
    def one(cls, field: GF) -> Poly:
        return cls(field, (1,))

    @classmethod
    def x(cls, field: GF) -> Poly:
        return cls(field, (0, 1))

    @classmethod
    def monomial(cls, field: GF, k: int, c: int = 1) -> Poly:
        return cls(field, (0,) * k + (c,))

    @classmethod
    def constant(cls, field: GF, c: int) -> Poly:
        return cls(field, (field.element(c),))

    # -- structure --------------------------------------------------------

    @property
    def degree(self) -> float:
        """Degree, with the zero polynomial at ``-inf``."""
        return len(self.coeffs) - 1 if self.coeffs else -math.inf

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def coeff(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        """(degree, coefficients low to high): the canonical ordering key."""
        return (len(self.coeffs) - 1, self.coeffs)

    def padded(self, length: int) -> tuple[int, ...]:
        if len(self.coeffs) > length:
            raise InvalidInput(f"{self} does not fit in {length} coefficients")
        return self.coeffs + (0,) * (length - len(self.coeffs))

    # -- ring operations --------------------------------------------------

    def _coerce(self, other: object) -> Poly:
        if isinstance(other, Poly):
            if other.field != self.field:
                raise InvalidInput("polynomials over different fields")
            return other
        if isinstance(other, (int, np.integer)):
            return Poly.constant(self.field, int(other))
        return NotImplemented

    def __add__(self, other: object) -> Poly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        F, a, b = self.field, self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = F.add(out[i], c)
        return Poly(F, out)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly(self.field, [self.field.neg(c) for c in self.coeffs])

    def __sub__(self, other: object) -> Poly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other: object) -> Poly:
        return (-self) + other

    def scale(self, c: int) -> Poly:
        F = self.field
        return Poly(F, [F.mul(c, x) for x in self.coeffs])

    def __mul__(self, other: object) -> Poly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        F, a, b = self.field, self.coeffs, other.coeffs
        if not a or not b:
            return Poly(F, ())
        out = [0] * (len(a) + len(b) - 1)
        add, mul = F.add, F.mul
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = add(out[i + j], mul(x, y))
        return Poly(F, out)

    __rmul__ = __mul__

    def __divmod__(self, other: Poly) -> tuple[Poly, Poly]:
        other = self._coerce(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        rem = list(self.coeffs)
        db = len(other.coeffs) - 1
        inv_lead = F.inv(other.lead)
        if len(rem) - 1 < db:
            return Poly(F, ()), self
        quot = [0] * (len(rem) - db)
        b = other.coeffs
        if F.m == 1:
            p = F.p
            for k in range(len(rem) - 1, db - 1, -1):
                c = rem[k] % p
                if c:
                    c = c * inv_lead % p
                    quot[k - db] = c
                    base = k - db
                    for j in range(db + 1):
                        rem[base + j] -= c * b[j]
            return Poly(F, quot), Poly(F, [r % p for r in rem[:db]])
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if c:
                c = F.mul(c, inv_lead)
                quot[k - db] = c
                for j in range(db + 1):
                    rem[k - db + j] = F.sub(rem[k - db + j], F.mul(c, b[j]))
        return Poly(F, quot), Poly(F, rem[:db])

    def __floordiv__(self, other: Poly) -> Poly:
        return divmod(self, other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return divmod(self, other)[1]

    def __call__(self, value: int) -> int:
        F = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, value), c)
        return acc

    def monic(self) -> Poly:
        if not self:
            raise InvalidInput("the zero polynomial has no monic associate")
        return self.scale(self.field.inv(self.lead))

    def derivative(self) -> Poly:
        F = self.field
        return Poly(F, [F.mul(k % F.p, c) for k, c in enumerate(self.coeffs)][1:])

    def reverse(self, degree: int | None = None) -> Poly:
        """x^degree * f(1/x); ``degree`` defaults to the actual degree."""
        if degree is None:
            degree = len(self.coeffs) - 1
        if len(self.coeffs) - 1 > degree:
            raise InvalidInput(f"{self} has degree above {degree}")
        return Poly(self.field, self.padded(degree + 1)[::-1])

    # -- presentation -----------------------------------------------------

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        F = self.field
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            cs = F.element_str(c)
            if F.m > 1 and "+" in cs:
                cs = f"({cs})"
            mono = "x" if k == 1 else f"x^{k}"
            if k == 0:
                terms.append(cs)
            else:
                terms.append(mono if c == 1 else f"{cs}{mono}")
        return "+".join(terms)

    def __repr__(self) -> str:
        return f"Poly({self.field!r}, {self})"

    def to_json(self) -> list:
        return [self.field.element_json(c) for c in self.coeffs]


def poly_from_json(field: GF, data: Sequence) -> Poly:
    if not isinstance(data, (list, tuple)):
        raise InvalidInput(f"polynomial must be a JSON array, got {data!r}")
    try:
        return Poly(field, [field.element(c) for c in data])
    except (TypeError, ValueError) as exc:
        raise InvalidInput(f"bad polynomial {data!r}: {exc}") from None


_TERM = re.compile(r"^([+-]?\d*)(?:(x)(?:\^(\d+))?)?$")


def parse_poly(field: GF, text: str) -> Poly:
    """Parse the human form ``1+2x+x^3`` (prime fields) or a JSON array."""
    text = text.replace(" ", "")
    if text.startswith("["):
        return poly_from_json(field, json.loads(text))
    if field.m != 1:
        raise InvalidInput("human polynomial form is only accepted over prime fields")
    if not text:
        raise InvalidInput("empty polynomial")
    acc = Poly.zero(field)
    for term in re.sub(r"(?<=.)-", "+-", text).split("+"):
        if not term:
            raise InvalidInput(f"cannot parse polynomial {text!r}")
        match = _TERM.match(term)
        if match is None or (not match.group(2) and match.group(1) in ("", "+", "-")):
            raise InvalidInput(f"cannot parse term {term!r}")
        coef_text, has_x, exp_text = match.groups()
        coef = int(coef_text + "1") if coef_text in ("", "+", "-") else int(coef_text)
        k = (int(exp_text) if exp_text else 1) if has_x else 0
        acc = acc + Poly.monomial(field, k, coef % field.p)
    return acc


def x_pow_minus_one(field: GF, n: int) -> Poly:
    """x^n - 1 over ``field``."""
    return Poly(field, (field.neg(1),) + (0,) * (n - 1) + (1,))


def poly_ext_gcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Return ``(g, u, v)`` with u*a + v*b = g = gcd(a, b) monic."""
    if a.field != b.field:
        raise InvalidInput("polynomials over different fields")
    if not a and not b:
        raise InvalidInput("gcd(0, 0) is undefined")
    F = a.field
    r0, r1 = a, b
    s0, s1 = Poly.one(F), Poly.zero(F)
    t0, t1 = Poly.zero(F), Poly.one(F)
    while r1:
        quot, rem = divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quot * s1
        t0, t1 = t1, t0 - quot * t1
    c = F.inv(r0.lead)
    return r0.scale(c), s0.scale(c), t0.scale(c)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd; cheaper than :func:`poly_ext_gcd` when cofactors are not needed."""
    if a.field != b.field:
        raise InvalidInput("polynomials over different fields")
    if not a and not b:
        raise InvalidInput("gcd(0, 0) is undefined")
    while b:
        a, b = b, a % b
    return a.monic()


def reciprocal_poly(f: Poly) -> Poly:
    """f*(x) = f(0)^{-1} x^{deg f} f(1/x)."""
    if not f or f.coeffs[0] == 0:
        raise InvalidInput(f"reciprocal of {f} needs a nonzero constant term")
    return f.reverse().scale(f.field.inv(f.coeffs[0]))


def poly_mul_mod(a: Poly, b: Poly, modulus: Poly) -> Poly:
    if modulus.degree < 1:
        raise InvalidInput("modulus must be nonconstant")
    return (a * b) % modulus


def poly_mod_pow(a: Poly, e: int, modulus: Poly) -> Poly:
    """a^e reduced modulo ``modulus``; negative ``e`` inverts first."""
    if modulus.degree < 1:
        raise InvalidInput("modulus must be nonconstant")
    if e < 0:
        a, e = poly_invert_mod(a, modulus), -e
    result = Poly.one(a.field) % modulus
    base = a % modulus
    while e:
        if e & 1:
            result = (result * base) % modulus
        e >>= 1
        if e:
            base = (base * base) % modulus
    return result


def poly_invert_mod(a: Poly, modulus: Poly) -> Poly:
    if modulus.degree < 1:
        raise InvalidInput("modulus must be nonconstant")
    g, u, _ = poly_ext_gcd(a % modulus, modulus)
    if g.degree != 0:
        raise NotInvertible(f"{a} is not invertible modulo {modulus}")
    return u % modulus


def is_irreducible(f: Poly) -> bool:
    """Ben-Or test: gcd(x^{q^i} - x, f) = 1 for i = 1..deg(f)/2."""
    if f.degree < 1:
        raise InvalidInput(f"{f} is constant")
    x = Poly.x(f.field)
    h = x % f
    for _ in range(int(f.degree) // 2):
        h = poly_mod_pow(h, f.field.q, f)
        if poly_gcd(h - x, f).degree > 0:
            return False
    return True


def monic_polys(field: GF, degree: int) -> Iterator[Poly]:
    """All monic polynomials of ``degree``, lexicographic from the constant term."""
    for low in itertools.product(range(field.q), repeat=degree):
        yield Poly(field, low + (1,))


def least_irreducible(field: GF, degree: int) -> Poly:
    if degree == 1:
        return Poly.x(field)
    for low in itertools.product(range(1, field.q), *[range(field.q)] * (degree - 1)):
        f = Poly(field, low + (1,))
        if field.q <= 64 and any(f(a) == 0 for a in field.elements()):
            continue
        if is_irreducible(f):
            return f
    raise AssertionError("unreachable: irreducibles exist in every degree")
