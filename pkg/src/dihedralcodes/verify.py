"""Check symbolic descriptors against the brute-force matrix oracle."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .codes import (
    CodeDescriptor,
    DualityClass,
    OuterSpec,
    classify,
    count,
    dim,
    dual,
    enumerate_codes,
    hull,
    is_member,
    nth_descriptor,
)
from .cyclotomic import FactorProfile
from .errors import InvalidInput
from .idempotents import ResidueField, primitive_idempotent
from .matrices import (
    DEFAULT_BUDGET,
    block_generator,
    brute_dual,
    check_left_ideal,
    circulant_block,
    generator_matrix,
    gram,
    min_distance,
    rank,
    row_space_equal,
    row_space_intersection,
)

CHECKS = ("rank", "dual-dim", "dual", "hull", "classify", "table", "left-ideal", "gram")


def check_descriptor(desc: CodeDescriptor) -> list[str]:
    """Names of the oracle checks that ``desc`` fails (empty when all pass)."""
    n = desc.n
    G = generator_matrix(desc)
    k = rank(G)
    D = brute_dual(G)
    d_desc = dual(desc)
    inter = row_space_intersection(G, D)
    classes = classify(desc)
    failed = []
    if k != dim(desc):
        failed.append("rank")
    if dim(desc) + dim(d_desc) != 2 * n or D.rows != 2 * n - k:
        failed.append("dual-dim")
    if not row_space_equal(D, generator_matrix(d_desc)):
        failed.append("dual")
    if not row_space_equal(inter, generator_matrix(hull(desc))):
        failed.append("hull")
    expected = {DualityClass.ALL}
    if inter.rows == 0:
        expected.add(DualityClass.LCD)
    if inter.rows == k:
        expected.add(DualityClass.SO)
        if k == n:
            expected.add(DualityClass.SD)
    if classes != expected:
        failed.append("classify")
    if any((c in classes) != is_member(desc, c) for c in DualityClass):
        failed.append("table")
    if not check_left_ideal(G, n):
        failed.append("left-ideal")
    if k:
        gm = gram(G)
        if DualityClass.SO in classes and not gm.is_zero():
            failed.append("gram")
        elif DualityClass.LCD in classes and rank(gm) != k:
            failed.append("gram")
    return failed


@dataclass
class SweepReport:
    q: int
    n: int
    cls: DualityClass
    formula: int
    checked: int = 0
    full: bool = True
    failures: list[tuple[CodeDescriptor, list[str]]] = field(default_factory=list)

    @property
    def count_ok(self) -> bool:
        return not self.full or self.checked == self.formula

    @property
    def ok(self) -> bool:
        return self.count_ok and not self.failures

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "n": self.n,
            "class": self.cls.value,
            "formula": self.formula,
            "checked": self.checked,
            "full_sweep": self.full,
            "count_match": self.count_ok,
            "failures": [{"descriptor": d.to_json(), "checks": f} for d, f in self.failures],
            "status": "pass" if self.ok else "fail",
        }


def select(
    profile: FactorProfile,
    cls: DualityClass,
    limit: int | None = None,
    sample: int | None = None,
    seed: int = 0,
):
    """Descriptors to check: all, the first ``limit``, or ``sample`` seeded picks."""
    if sample is not None:
        total = count(profile, cls)
        picks = sorted(random.Random(seed).sample(range(total), min(sample, total)))
        return (nth_descriptor(profile, cls, k) for k in picks)
    return enumerate_codes(profile, cls, limit)


def run_sweep(
    profile: FactorProfile,
    cls: DualityClass = DualityClass.ALL,
    limit: int | None = None,
    sample: int | None = None,
    seed: int = 0,
) -> SweepReport:
    cls = DualityClass(cls)
    report = SweepReport(profile.q, profile.n, cls, count(profile, cls))
    report.full = limit is None and sample is None
    for desc in select(profile, cls, limit, sample, seed):
        report.checked += 1
        failed = check_descriptor(desc)
        if failed:
            report.failures.append((desc, failed))
    return report


@dataclass(frozen=True)
class SelfDualTally:
    """The self-dual count obtained three independent ways."""

    q: int
    n: int
    formula: int
    enumerated: int
    gram_verified: int

    @property
    def consistent(self) -> bool:
        return self.formula == self.enumerated == self.gram_verified

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "n": self.n,
            "formula": self.formula,
            "enumerated": self.enumerated,
            "gram_verified": self.gram_verified,
            "consistent": self.consistent,
        }


def tally_self_dual(profile: FactorProfile) -> SelfDualTally:
    """Closed formula, size of the enumeration, and number passing G G^T = 0 with rank n."""
    descs = list(enumerate_codes(profile, DualityClass.SD))
    verified = 0
    for d in descs:
        G = generator_matrix(d)
        if rank(G) == profile.n and gram(G).is_zero():
            verified += 1
    return SelfDualTally(profile.q, profile.n, count(profile, DualityClass.SD), len(descs), verified)


def inner_distance(profile: FactorProfile, i: int, budget: int = DEFAULT_BUDGET) -> int | None:
    """Minimum distance of the minimal cyclic code A_i generated by epsilon_i."""
    eps = primitive_idempotent(profile, i)
    return min_distance(circulant_block(eps, profile.degrees[i], profile.n), budget)


def outer_distance(profile: FactorProfile, i: int, spec: OuterSpec) -> int | None:
    """Minimum distance of C_i in K_i^2, by sweeping every codeword."""
    if spec.kind == "zero":
        return None
    if spec.kind == "full":
        return 1
    rf = ResidueField(profile, i)
    best = None
    for c in rf.elements():
        if not c:
            continue
        w = sum(1 for g in (spec.g1, spec.g2) if rf.mul(c, g))
        best = w if best is None else min(best, w)
    return best


@dataclass(frozen=True)
class BlockBound:
    index: int
    spec: OuterSpec
    distance: int
    inner: int
    outer: int

    @property
    def holds(self) -> bool:
        return self.distance >= self.inner * self.outer


def concatenation_bound(
    profile: FactorProfile, i: int, spec: OuterSpec, budget: int = DEFAULT_BUDGET
) -> BlockBound:
    """d(A_i [] C_i) against d(A_i) * d(C_i) for one nonzero block."""
    if spec.kind == "zero":
        raise InvalidInput("the zero block has no minimum distance")
    G = block_generator(profile, i, spec)
    return BlockBound(
        i, spec, min_distance(G, budget), inner_distance(profile, i, budget), outer_distance(profile, i, spec)
    )
