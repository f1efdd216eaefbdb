"""Left dihedral codes as symbolic outer-code descriptors.

A left D_2n-code is a direct sum over the factors f_i of x^n - 1 of
concatenated codes A_i [] C_i, where C_i is an outer code in K_i^2.  Each
C_i is one of: the zero code, the whole of K_i^2, or a line spanned by a
normalized pair (g, 1) or (1, 0).  Duals, hulls and classifications are
computed per index on these specs without materializing matrices.
"""

from __future__ import annotations

import enum
import functools
import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

from .cyclotomic import FactorProfile, profile_for
from .errors import InvalidIndex, InvalidInput, NoSelfDualExists
from .field import Poly, gf, poly_from_json, poly_invert_mod
from .idempotents import ResidueField, norm_one_subgroup


class DualityClass(str, enum.Enum):
    ALL = "all"
    LCD = "lcd"
    SO = "so"
    SD = "sd"

    @classmethod
    def parse(cls, text: str) -> "DualityClass":
        key = text.strip().lower().replace("_", "-")
        aliases = {
            "all": cls.ALL,
            "lcd": cls.LCD,
            "so": cls.SO,
            "self-orthogonal": cls.SO,
            "selforthogonal": cls.SO,
            "sd": cls.SD,
            "self-dual": cls.SD,
            "selfdual": cls.SD,
        }
        if key not in aliases:
            raise InvalidInput(f"unknown duality class {text!r}")
        return aliases[key]


@dataclass(frozen=True)
class OuterSpec:
    kind: str  # "zero", "full" or "line"
    g1: Poly | None = None
    g2: Poly | None = None

    @property
    def dim(self) -> int:
        return {"zero": 0, "line": 1, "full": 2}[self.kind]

    def to_json(self, i: int) -> dict:
        out: dict = {"i": i, "kind": self.kind}
        if self.kind == "line":
            out["g1"] = self.g1.to_json()
            out["g2"] = self.g2.to_json()
        return out

    def __str__(self) -> str:
        if self.kind == "line":
            return f"({self.g1}, {self.g2})"
        return self.kind


ZERO = OuterSpec("zero")
FULL = OuterSpec("full")


@functools.lru_cache(maxsize=1 << 16)
def line(g1: Poly, g2: Poly, modulus: Poly) -> OuterSpec:
    """The line spanned by (g1, g2) in K^2, normalized to (g, 1) or (1, 0)."""
    a, b = g1 % modulus, g2 % modulus
    one = Poly.one(modulus.field)
    if b:
        return OuterSpec("line", (a * poly_invert_mod(b, modulus)) % modulus, one)
    if a:
        return OuterSpec("line", one, Poly.zero(modulus.field))
    raise InvalidInput("(0, 0) does not span a line")


def _const(profile: FactorProfile, c: int) -> Poly:
    return Poly.constant(profile.field, c)


@functools.lru_cache(maxsize=1 << 16)
def partner(profile: FactorProfile, i: int, spec: OuterSpec) -> OuterSpec:
    """Spec forced at the reciprocal index r+j+t by the spec at pair index i = r+j."""
    if spec.kind != "line":
        return spec
    rf = ResidueField(profile, i)
    target = profile.factors[profile.partner(i)]
    return line(rf.bar(spec.g2), rf.bar(spec.g1), target)


def _self_reciprocal_lines(profile: FactorProfile, i: int) -> list[OuterSpec]:
    one = _const(profile, 1)
    if i in profile.i0:
        gs = [one] if profile.q % 2 == 0 else [one, _const(profile, profile.field.neg(1))]
    else:
        gs = list(norm_one_subgroup(ResidueField(profile, i)))
    return [OuterSpec("line", g, one) for g in gs]


@functools.lru_cache(maxsize=4096)
def _allowed_specs(profile: FactorProfile, i: int, cls: DualityClass) -> tuple[OuterSpec, ...]:
    if not 0 <= i <= profile.r:
        raise InvalidIndex(f"index {i} is not self-reciprocal (0..{profile.r})")
    even = profile.q % 2 == 0
    if cls is DualityClass.SD and not even:
        raise NoSelfDualExists(f"no self-dual left D_{2 * profile.n}-codes over F_{profile.q}")
    lines = _self_reciprocal_lines(profile, i)
    if cls is DualityClass.ALL:
        return (ZERO, FULL, *lines)
    if cls is DualityClass.LCD:
        return (ZERO, FULL) if even else (ZERO, FULL, *lines)
    if cls is DualityClass.SO:
        return (ZERO, *lines) if even else (ZERO,)
    return tuple(lines)


def allowed_specs(profile: FactorProfile, i: int, cls: DualityClass = DualityClass.ALL) -> list[OuterSpec]:
    """Admissible outer codes at a self-reciprocal index 0 <= i <= r."""
    return list(_allowed_specs(profile, i, DualityClass(cls)))


@functools.lru_cache(maxsize=4096)
def _allowed_pair_specs(
    profile: FactorProfile, j: int, cls: DualityClass
) -> tuple[tuple[OuterSpec, OuterSpec], ...]:
    if not 1 <= j <= profile.t:
        raise InvalidIndex(f"pair index {j} outside 1..{profile.t}")
    i = profile.r + j
    even = profile.q % 2 == 0
    rf = ResidueField(profile, i)
    one, zero = _const(profile, 1), Poly.zero(profile.field)
    g_lines = [OuterSpec("line", g, one) for g in rf.elements()]
    first = OuterSpec("line", one, zero)
    if cls is DualityClass.ALL:
        opts = [ZERO, FULL, first, *g_lines]
    elif cls is DualityClass.LCD:
        opts = [ZERO, FULL] if even else [ZERO, FULL, *g_lines[1:]]
    elif cls is DualityClass.SO:
        opts = [ZERO, first, *g_lines] if even else [ZERO, first, g_lines[0]]
    else:
        opts = [first, *g_lines] if even else []
    return tuple((s, partner(profile, i, s)) for s in opts)


def allowed_pair_specs(
    profile: FactorProfile, j: int, cls: DualityClass = DualityClass.ALL
) -> list[tuple[OuterSpec, OuterSpec]]:
    """Joint options for the reciprocal pair (r+j, r+j+t), 1 <= j <= t."""
    return list(_allowed_pair_specs(profile, j, DualityClass(cls)))


@dataclass(frozen=True)
class CodeDescriptor:
    profile: FactorProfile
    specs: tuple[OuterSpec, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "specs", tuple(self.specs))

    @property
    def n(self) -> int:
        return self.profile.n

    @property
    def q(self) -> int:
        return self.profile.q

    def validate(self) -> "CodeDescriptor":
        prof = self.profile
        if len(self.specs) != len(prof):
            raise InvalidInput(f"expected {len(prof)} specs, got {len(self.specs)}")
        for i, spec in enumerate(self.specs):
            if spec.kind not in ("zero", "full", "line"):
                raise InvalidInput(f"unknown spec kind {spec.kind!r} at index {i}")
            if spec.kind == "line":
                d = prof.degrees[i]
                if spec.g1.degree >= d or spec.g2.degree >= d:
                    raise InvalidInput(f"spec at index {i} is not reduced modulo f_{i}")
                if spec != line(spec.g1, spec.g2, prof.factors[i]):
                    raise InvalidInput(f"line at index {i} is not normalized")
        for i in range(prof.r + 1):
            if self.specs[i] not in _allowed_specs(prof, i, DualityClass.ALL):
                raise InvalidInput(f"spec {self.specs[i]} is not admissible at index {i}")
        for i, k in prof.pairs:
            if self.specs[k] != partner(prof, i, self.specs[i]):
                raise InvalidInput(f"specs at {i} and {k} are not a reciprocal pair")
        return self

    def to_json(self) -> dict:
        return {"q": self.q, "n": self.n, "specs": [s.to_json(i) for i, s in enumerate(self.specs)]}

    @classmethod
    def from_json(cls, data: dict, profile: FactorProfile | None = None) -> "CodeDescriptor":
        try:
            if profile is None:
                profile = profile_for(gf(data["q"]), int(data["n"]))
            entries = sorted(data["specs"], key=lambda e: e["i"])
            if [e["i"] for e in entries] != list(range(len(profile))):
                raise InvalidInput("spec indices must cover 0..r+2t exactly once")
            specs = []
            for e in entries:
                kind = e["kind"]
                if kind == "line":
                    F = profile.field
                    specs.append(OuterSpec("line", poly_from_json(F, e["g1"]), poly_from_json(F, e["g2"])))
                else:
                    specs.append(OuterSpec(kind))
        except (KeyError, TypeError) as exc:
            raise InvalidInput(f"malformed descriptor: {exc}") from exc
        return cls(profile, tuple(specs)).validate()

    def __str__(self) -> str:
        return " ".join(f"{i}:{s}" for i, s in enumerate(self.specs))


def dim(desc: CodeDescriptor) -> int:
    return sum(d * s.dim for d, s in zip(desc.profile.degrees, desc.specs))


@functools.lru_cache(maxsize=1 << 16)
def _dual_spec(profile: FactorProfile, i: int, spec: OuterSpec) -> OuterSpec:
    if spec.kind == "zero":
        return FULL
    if spec.kind == "full":
        return ZERO
    if spec.g2.is_zero:
        return spec
    f = profile.factors[i]
    return line(-spec.g1, spec.g2, f)


def dual(desc: CodeDescriptor) -> CodeDescriptor:
    """Descriptor of the Euclidean dual code."""
    prof = desc.profile
    specs = list(desc.specs)
    for i in range(prof.r + 1):
        specs[i] = _dual_spec(prof, i, desc.specs[i])
    for i, k in prof.pairs:
        specs[i] = _dual_spec(prof, i, desc.specs[i])
        specs[k] = partner(prof, i, specs[i])
    return CodeDescriptor(prof, tuple(specs))


def meet(a: OuterSpec, b: OuterSpec) -> OuterSpec:
    """Intersection of two outer codes in the same K_i^2."""
    if a.kind == "zero" or b.kind == "zero":
        return ZERO
    if a.kind == "full":
        return b
    if b.kind == "full":
        return a
    return a if a == b else ZERO


def hull(desc: CodeDescriptor) -> CodeDescriptor:
    """Descriptor of C intersected with its Euclidean dual."""
    d = dual(desc)
    return CodeDescriptor(desc.profile, tuple(meet(a, b) for a, b in zip(desc.specs, d.specs)))


def classify(desc: CodeDescriptor) -> set[DualityClass]:
    out = {DualityClass.ALL}
    h = hull(desc)
    if all(s.kind == "zero" for s in h.specs):
        out.add(DualityClass.LCD)
    if h == desc:
        out.add(DualityClass.SO)
    if dual(desc) == desc:
        out.add(DualityClass.SD)
    return out


def is_member(desc: CodeDescriptor, cls: DualityClass) -> bool:
    """Membership in the option tables of ``cls`` (independent of :func:`classify`)."""
    prof = desc.profile
    try:
        ok = all(desc.specs[i] in _allowed_specs(prof, i, cls) for i in range(prof.r + 1))
    except NoSelfDualExists:
        return False
    return ok and all(
        (desc.specs[i], desc.specs[k]) in _allowed_pair_specs(prof, j, cls)
        for j, (i, k) in enumerate(prof.pairs, start=1)
    )


def count(profile: FactorProfile, cls: DualityClass = DualityClass.ALL) -> int:
    """Number of left D_2n-codes in ``cls``, from the closed product formulas."""
    cls = DualityClass(cls)
    q = profile.q
    degs = profile.degrees
    half = [q ** (degs[i] // 2) for i in range(len(profile.i0), profile.r + 1)]
    full = [q ** degs[i] for i, _ in profile.pairs]
    odd = q % 2 == 1
    head = 4 ** len(profile.i0) if odd else 3
    if cls is DualityClass.ALL:
        return head * math.prod(h + 3 for h in half) * math.prod(f + 3 for f in full)
    if cls is DualityClass.LCD:
        if not odd:
            return 2 ** (1 + profile.r + profile.t)
        return head * math.prod(h + 3 for h in half) * math.prod(f + 1 for f in full)
    if cls is DualityClass.SO:
        if odd:
            return 3**profile.t
        return 2 * math.prod(h + 2 for h in half) * math.prod(f + 2 for f in full)
    if odd:
        return 0
    return math.prod(h + 1 for h in half) * math.prod(f + 1 for f in full)


def _slots(profile: FactorProfile, cls: DualityClass) -> list[tuple[tuple[int, ...], Sequence]]:
    slots: list[tuple[tuple[int, ...], Sequence]] = []
    for i in range(profile.r + 1):
        slots.append(((i,), [(s,) for s in _allowed_specs(profile, i, cls)]))
    for j, pr in enumerate(profile.pairs, start=1):
        slots.append((pr, _allowed_pair_specs(profile, j, cls)))
    return slots


def _assemble(profile: FactorProfile, slots, choice) -> CodeDescriptor:
    specs: list[OuterSpec | None] = [None] * len(profile)
    for (idx, _), opt in zip(slots, choice):
        for i, s in zip(idx, opt):
            specs[i] = s
    return CodeDescriptor(profile, tuple(specs))


def enumerate_codes(
    profile: FactorProfile, cls: DualityClass = DualityClass.ALL, limit: int | None = None
) -> Iterator[CodeDescriptor]:
    """Every descriptor of ``cls`` once, first index varying slowest."""
    cls = DualityClass(cls)
    if cls is DualityClass.SD and profile.q % 2:
        return
    slots = _slots(profile, cls)
    stream = itertools.product(*(opts for _, opts in slots))
    for choice in itertools.islice(stream, limit):
        yield _assemble(profile, slots, choice)


def nth_descriptor(profile: FactorProfile, cls: DualityClass, k: int) -> CodeDescriptor:
    """The k-th descriptor (0-based) of :func:`enumerate_codes` without iterating."""
    cls = DualityClass(cls)
    if cls is DualityClass.SD and profile.q % 2:
        raise NoSelfDualExists(f"no self-dual left D_{2 * profile.n}-codes over F_{profile.q}")
    slots = _slots(profile, cls)
    total = math.prod(len(opts) for _, opts in slots)
    if not 0 <= k < total:
        raise InvalidInput(f"descriptor index {k} outside 0..{total - 1}")
    choice = []
    for _, opts in reversed(slots):
        k, digit = divmod(k, len(opts))
        choice.append(opts[digit])
    return _assemble(profile, slots, reversed(choice))
