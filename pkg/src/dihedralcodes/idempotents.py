"""Primitive idempotents of A = F_q[x]/(x^n - 1) and the residue fields K_i.

epsilon_i is computed from the extended Euclidean identity
u_i F_i + v_i f_i = 1 with F_i = (x^n - 1)/f_i, as u_i F_i mod x^n - 1.
An independent closed form, -(1/n) * rev(rev(f_i)') * F_i, serves as a
cross-check.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterator

from .cyclotomic import FactorProfile
from .errors import Inconsistent, InvalidIndex, InvalidInput
from .field import Poly, factor_int, poly_ext_gcd, poly_invert_mod, poly_mod_pow


def _cofactor(profile: FactorProfile, i: int) -> Poly:
    quot, rem = divmod(profile.modulus, profile.factors[i])
    if rem:
        raise Inconsistent(f"{profile.factors[i]} does not divide x^{profile.n} - 1")
    return quot


@functools.lru_cache(maxsize=4096)
def primitive_idempotent(profile: FactorProfile, i: int) -> Poly:
    """epsilon_i as a representative of degree < n."""
    profile.check_index(i)
    cof = _cofactor(profile, i)
    g, u, _ = poly_ext_gcd(cof, profile.factors[i])
    if g.degree != 0:
        raise Inconsistent(f"f_{i} shares a factor with its cofactor")
    return (u * cof) % profile.modulus


def idempotents(profile: FactorProfile) -> tuple[Poly, ...]:
    return tuple(primitive_idempotent(profile, i) for i in range(len(profile)))


def closed_form_idempotent(profile: FactorProfile, i: int) -> Poly:
    """-(1/n) * rev(rev(f)') * (x^n - 1)/f, reversing the derivative at degree d - 1.

    The derivative is reversed with respect to its formal degree d - 1 even
    when its leading coefficient vanishes in characteristic p.
    """
    profile.check_index(i)
    f = profile.factors[i]
    F = profile.field
    d = int(f.degree)
    tilde_der = f.reverse().derivative().reverse(d - 1)
    scale = F.neg(F.inv(profile.n % F.p))
    return (tilde_der * _cofactor(profile, i)).scale(scale) % profile.modulus


def crosscheck_idempotent(profile: FactorProfile, i: int) -> bool:
    return closed_form_idempotent(profile, i) == primitive_idempotent(profile, i)


def embed(profile: FactorProfile, i: int, a: Poly) -> Poly:
    """phi_i(a) = epsilon_i * a mod x^n - 1 for a residue a of K_i."""
    profile.check_index(i)
    if a.degree >= profile.degrees[i]:
        raise InvalidInput(f"{a} is not reduced modulo f_{i}")
    return (primitive_idempotent(profile, i) * a) % profile.modulus


def inv_substitute(a: Poly, modulus: Poly, n: int) -> Poly:
    """a(x^{-1}) = a(x^{n-1}), reduced modulo ``modulus`` (which divides x^n - 1)."""
    F = a.field
    out = [0] * n
    for k, c in enumerate(a.coeffs):
        if c:
            j = (-k) % n
            out[j] = F.add(out[j], c)
    return Poly(F, out) % modulus


@dataclass(frozen=True)
class ResidueField:
    """K_i = F_q[x]/(f_i) for one factor of a profile."""

    profile: FactorProfile
    index: int

    def __post_init__(self) -> None:
        self.profile.check_index(self.index)

    @property
    def modulus(self) -> Poly:
        return self.profile.factors[self.index]

    @property
    def degree(self) -> int:
        return self.profile.degrees[self.index]

    @property
    def size(self) -> int:
        return self.profile.q**self.degree

    def elements(self) -> Iterator[Poly]:
        """All residues, lexicographic in (c_0, c_1, ...)."""
        F = self.profile.field
        for coeffs in itertools.product(range(F.q), repeat=self.degree):
            yield Poly(F, coeffs)

    def key(self, a: Poly) -> tuple[int, ...]:
        return a.padded(self.degree)

    def reduce(self, a: Poly) -> Poly:
        return a % self.modulus

    def mul(self, a: Poly, b: Poly) -> Poly:
        return (a * b) % self.modulus

    def inv(self, a: Poly) -> Poly:
        return poly_invert_mod(a, self.modulus)

    def pow(self, a: Poly, e: int) -> Poly:
        return poly_mod_pow(a, e, self.modulus)

    def bar(self, a: Poly) -> Poly:
        """a(x^{-1}) carried into the residue field of the reciprocal factor."""
        target = self.profile.factors[self.profile.partner(self.index)]
        return inv_substitute(a, target, self.profile.n)


def residue_field(profile: FactorProfile, i: int) -> ResidueField:
    return ResidueField(profile, i)


def multiplicative_order(rf: ResidueField, a: Poly) -> int:
    order = rf.size - 1
    one = Poly.one(rf.profile.field)
    if rf.reduce(a).is_zero:
        raise InvalidInput("0 has no multiplicative order")
    for ell, e in factor_int(order).items() if order > 1 else ():
        for _ in range(e):
            if rf.pow(a, order // ell) == one:
                order //= ell
            else:
                break
    return order


@functools.lru_cache(maxsize=1024)
def primitive_element(rf: ResidueField) -> Poly:
    """Least residue (lexicographic from the constant term) generating K_i^*."""
    target = rf.size - 1
    for a in rf.elements():
        if a and multiplicative_order(rf, a) == target:
            return a
    raise AssertionError("unreachable: K_i^* is cyclic")


def _check_norm_one_index(rf: ResidueField) -> None:
    prof = rf.profile
    if rf.index > prof.r or rf.index in prof.i0 or rf.degree % 2:
        raise InvalidIndex(
            f"index {rf.index} is not a self-reciprocal factor of even degree outside I_0"
        )


@functools.lru_cache(maxsize=1024)
def norm_one_subgroup(rf: ResidueField) -> tuple[Poly, ...]:
    """{g in K_i : g * g(x^{-1}) = 1}, sorted lexicographically.

    Generated as rho^{s(Q-1)} for s = 0..Q with Q = q^{d/2} and rho a
    primitive element.
    """
    _check_norm_one_index(rf)
    half = rf.profile.q ** (rf.degree // 2)
    step = rf.pow(primitive_element(rf), half - 1)
    elems, cur = [], Poly.one(rf.profile.field)
    for _ in range(half + 1):
        elems.append(cur)
        cur = rf.mul(cur, step)
    return tuple(sorted(set(elems), key=rf.key))


def norm_one_bruteforce(rf: ResidueField) -> tuple[Poly, ...]:
    """Exhaustive filter over all of K_i; the oracle for :func:`norm_one_subgroup`."""
    _check_norm_one_index(rf)
    one = Poly.one(rf.profile.field)
    return tuple(g for g in rf.elements() if rf.mul(g, rf.bar(g)) == one)
