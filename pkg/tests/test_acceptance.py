"""Acceptance criteria, one test per criterion, each reporting PASS or FAIL."""

import os
import subprocess
import sys
import time

import pytest

from dihedralcodes import codes, cyclotomic, idempotents
from dihedralcodes.codes import ZERO, CodeDescriptor, DualityClass, allowed_pair_specs, allowed_specs, count, enumerate_codes
from dihedralcodes.cyclotomic import profile_for
from dihedralcodes.field import gf, parse_poly
from dihedralcodes.idempotents import crosscheck_idempotent, primitive_idempotent
from dihedralcodes.matrices import (
    brute_dual,
    check_left_ideal,
    generator_matrix,
    rank,
    row_space_equal,
    row_space_intersection,
)
from dihedralcodes.verify import concatenation_bound, tally_self_dual

SWEEP = [(2, 3), (2, 5), (2, 7), (2, 9), (2, 15), (2, 21), (3, 4), (3, 5), (3, 8), (3, 10), (3, 13)]


def _clear_caches():
    profile_for.cache_clear()
    idempotents.primitive_idempotent.cache_clear()
    codes._allowed_specs.cache_clear()


# -- reference data ----------------------------------------------------------

FACTORS = {
    (2, 21): ["x+1", "x^2+x+1", "x^3+x+1", "x^6+x^5+x^4+x^2+1", "x^3+x^2+1", "x^6+x^4+x^2+x+1"],
    (3, 10): ["x-1", "x+1", "x^4+x^3+x^2+x+1", "x^4+2x^3+x^2+2x+1"],
    (3, 13): ["x-1", "x^3+x^2+2", "x^3+x^2+x+2", "x^3+2x+2", "x^3+2x^2+2x+2"],
}
PAIRS = {(2, 21): [(2, 4), (3, 5)], (3, 10): [], (3, 13): [(1, 3), (2, 4)]}
RT = {(2, 21): (1, 2), (3, 10): (3, 0), (3, 13): (0, 2)}

IDEMPOTENTS = {
    (2, 21): [
        "+".join(f"x^{j}" for j in range(21)),
        "x+x^2+x^4+x^5+x^7+x^8+x^10+x^11+x^13+x^14+x^16+x^17+x^19+x^20",
        "1+x+x^2+x^4+x^7+x^8+x^9+x^11+x^14+x^15+x^16+x^18",
        "x^5+x^7+x^10+x^13+x^14+x^17+x^19+x^20",
        "1+x^3+x^5+x^6+x^7+x^10+x^12+x^13+x^14+x^17+x^19+x^20",
        "x+x^2+x^4+x^7+x^8+x^11+x^14+x^16",
    ],
    (3, 10): [
        "1+x+x^2+x^3+x^4+x^5+x^6+x^7+x^8+x^9",
        "1+2x+x^2+2x^3+x^4+2x^5+x^6+2x^7+x^8+2x^9",
        "1+2x+2x^2+2x^3+2x^4+x^5+2x^6+2x^7+2x^8+2x^9",
        "1+x+2x^2+x^3+2x^4+2x^5+2x^6+x^7+2x^8+x^9",
    ],
    (3, 13): [
        "1+x+x^2+x^3+x^4+x^5+x^6+x^7+x^8+x^9+x^10+x^11+x^12",
        "2x^2+2x^4+2x^5+2x^6+x^7+x^8+2x^10+x^11+2x^12",
        "x+x^3+2x^4+2x^7+2x^8+x^9+2x^10+2x^11+2x^12",
        "2x+x^2+2x^3+x^5+x^6+2x^7+2x^8+2x^9+2x^11",
        "2x+2x^2+2x^3+x^4+2x^5+2x^6+2x^9+x^10+x^12",
    ],
}

COUNT_TABLE = {
    # n: (N(n,3), N_LCD(n,3), N(n,9), N_LCD(n,9))
    4: (96, 96, 192, 160),
    5: (48, 48, 576, 576),
    7: (120, 120, 2928, 2920),
    8: (1152, 960, 27648, 16000),
    10: (2304, 2304, 331776, 331776),
    11: (984, 976, 236208, 236200),
    13: (3600, 3136, 2143296, 2131600),
    14: (14400, 14400, 8573184, 8526400),
    16: (96768, 78720, 195084288, 107584000),
    17: (26256, 26256, 172344384, 172344384),
    19: (78744, 78744, 1549681968, 1549681960),
    20: (1161216, 1133568, 28092137472, 22308618240),
}

SELF_DUAL_TABLE = {
    # n: N_SD for q = 2, 4, 8, 16
    5: (5, 25, 65, 289),
    7: (9, 65, 729, 4097),
    9: (27, 325, 6561, 69649),
    11: (33, 1025, 32769, 1048577),
    13: (65, 4225, 274625, 16785409),
    15: (255, 36125, 2396745, 410338673),
    17: (289, 83521, 16785409, 6975757441),
}


# -- shared sweep ------------------------------------------------------------


@pytest.fixture(scope="module")
def sweep():
    """Per-profile failure lists from the full descriptor sweep, plus timing."""
    failures = {"dual": [], "hull": [], "classify": [], "left-ideal": []}
    checked = 0
    start = time.perf_counter()
    for q, n in SWEEP:
        P = profile_for(gf(q), n)
        for d in enumerate_codes(P, DualityClass.ALL):
            checked += 1
            G = generator_matrix(d)
            k = rank(G)
            D = brute_dual(G)
            dd = codes.dual(d)
            if not row_space_equal(D, generator_matrix(dd)) or codes.dim(d) + codes.dim(dd) != 2 * n or k + D.rows != 2 * n:
                failures["dual"].append(d)
            inter = row_space_intersection(G, D)
            if not row_space_equal(inter, generator_matrix(codes.hull(d))):
                failures["hull"].append(d)
            found = codes.classify(d)
            if (DualityClass.LCD in found) != (inter.rows == 0) or (DualityClass.SO in found) != (inter.rows == k):
                failures["classify"].append(d)
            if not check_left_ideal(G, n):
                failures["left-ideal"].append(d)
    return failures, checked, time.perf_counter() - start


# -- criteria ----------------------------------------------------------------


def test_criterion_01_factorizations(verdict):
    _clear_caches()
    start = time.perf_counter()
    problems = []
    for (q, n), texts in FACTORS.items():
        F = gf(q)
        P = profile_for(F, n)
        expected = [parse_poly(F, t) for t in texts]
        if sorted(P.factors, key=lambda f: f.sort_key()) != sorted(expected, key=lambda f: f.sort_key()):
            problems.append(f"factors ({q},{n})")
        # self-reciprocal factors in the same positions, pairs matched as unordered sets
        if list(P.factors[: P.r + 1]) != expected[: P.r + 1]:
            problems.append(f"self-reciprocal order ({q},{n})")
        got_pairs = {frozenset((P.factors[i], P.factors[k])) for i, k in P.pairs}
        want_pairs = {frozenset((expected[i], expected[k])) for i, k in PAIRS[(q, n)]}
        if got_pairs != want_pairs:
            problems.append(f"pairs ({q},{n})")
        if (P.r, P.t) != RT[(q, n)]:
            problems.append(f"(r,t) ({q},{n})")
    elapsed = time.perf_counter() - start
    if elapsed >= 1.0:
        problems.append(f"took {elapsed:.2f}s")
    verdict("1 factorizations", not problems, "; ".join(problems) or f"{elapsed:.3f}s")


def test_criterion_02_idempotents(verdict):
    _clear_caches()
    start = time.perf_counter()
    problems = []
    for (q, n), texts in IDEMPOTENTS.items():
        F = gf(q)
        P = profile_for(F, n)
        for i, text in enumerate(texts):
            # locate the factor by polynomial, since the order of a reciprocal pair may differ
            j = P.factors.index(parse_poly(F, FACTORS[(q, n)][i]))
            if primitive_idempotent(P, j) != parse_poly(F, text):
                problems.append(f"eps for {FACTORS[(q, n)][i]} at ({q},{n})")
        bad = [i for i in range(len(P)) if not crosscheck_idempotent(P, i)]
        if bad:
            problems.append(f"crosscheck ({q},{n}) {bad}")
    elapsed = time.perf_counter() - start
    if elapsed >= 1.0:
        problems.append(f"took {elapsed:.2f}s")
    verdict("2 idempotents", not problems, "; ".join(problems) or f"{elapsed:.3f}s")


def test_criterion_03_counts(verdict):
    _clear_caches()
    start = time.perf_counter()
    A, L, S, O = DualityClass.ALL, DualityClass.LCD, DualityClass.SD, DualityClass.SO
    checks = [
        ((2, 21, A), 11055),
        ((2, 21, O), 5280),
        ((3, 10, L), 2304),
        ((3, 13, A), 3600),
        ((3, 13, L), 3136),
    ]
    for n, row in COUNT_TABLE.items():
        checks += [((3, n, A), row[0]), ((3, n, L), row[1]), ((9, n, A), row[2]), ((9, n, L), row[3])]
    for n, row in SELF_DUAL_TABLE.items():
        checks += [((q, n, S), v) for q, v in zip((2, 4, 8, 16), row)]
    wrong = [f"{key}: {count(profile_for(gf(key[0]), key[1]), key[2])} != {v}"
             for key, v in checks if count(profile_for(gf(key[0]), key[1]), key[2]) != v]
    elapsed = time.perf_counter() - start
    problems = wrong + ([f"took {elapsed:.2f}s"] if elapsed >= 1.0 else [])
    verdict("3 counts", not problems, "; ".join(problems) or f"{len(checks)} values, {elapsed:.3f}s")


def test_criterion_04_self_dual_adjudication(verdict):
    start = time.perf_counter()
    t = tally_self_dual(profile_for(gf(2), 21))
    elapsed = time.perf_counter() - start
    note = f"formula={t.formula} enumerated={t.enumerated} gram_verified={t.gram_verified}"
    printed = 1365
    if t.formula != printed:
        note += f"; the printed value {printed} is inconsistent with the formula value {t.formula}"
    ok = t.consistent and elapsed < 30
    verdict("4 self-dual adjudication", ok, f"{note}; {elapsed:.1f}s")


def test_criterion_05_duality_oracle(verdict, sweep):
    failures, checked, elapsed = sweep
    bad = failures["dual"]
    verdict("5 duality oracle", not bad and elapsed < 600,
            f"{checked} descriptors, {len(bad)} failures, {elapsed:.0f}s")


def test_criterion_06_hull_oracle(verdict, sweep):
    failures, checked, _ = sweep
    bad = failures["hull"] + failures["classify"]
    verdict("6 hull oracle", not bad, f"{checked} descriptors, {len(bad)} failures")


def test_criterion_07_left_ideal(verdict, sweep):
    failures, checked, _ = sweep
    bad = failures["left-ideal"]
    verdict("7 left-ideal closure", not bad, f"{checked} descriptors, {len(bad)} failures")


def test_criterion_08_stream_counts(verdict):
    problems = []
    for q, n in SWEEP:
        P = profile_for(gf(q), n)
        for cls in DualityClass:
            listed = sum(1 for _ in enumerate_codes(P, cls))
            formula = count(P, cls)
            if cls is DualityClass.SD and q % 2:
                if formula != 0 or listed != 0:
                    problems.append(f"({q},{n}) sd expected explicit zero")
            elif listed != formula:
                problems.append(f"({q},{n}) {cls.value}: {listed} != {formula}")
    verdict("8 stream-count consistency", not problems, "; ".join(problems) or f"{len(SWEEP)} profiles x 4 classes")


def _single_blocks():
    picks = []
    for q, n in SWEEP:
        P = profile_for(gf(q), n)
        for i in range(len(P)):
            if i <= P.r:
                specs = allowed_specs(P, i, DualityClass.ALL)
            else:
                j = next((j for j, (a, _) in enumerate(P.pairs, start=1) if a == i), None)
                if j is None:
                    continue
                specs = [a for a, _ in allowed_pair_specs(P, j, DualityClass.ALL)]
            nonzero = [s for s in specs if s != ZERO]
            # one line spec and the full spec per index
            lines = [s for s in nonzero if s.kind == "line" and s.g1 and s.g2]
            for s in (lines[-1:] if lines else []) + [s for s in nonzero if s.kind == "full"]:
                picks.append((P, i, s))
    # spread the 20 picks evenly over the candidate list
    step = len(picks) / 20
    return [picks[int(k * step)] for k in range(20)]


def test_criterion_09_concatenation_bound(verdict):
    start = time.perf_counter()
    blocks = _single_blocks()
    results = [concatenation_bound(P, i, s) for P, i, s in blocks]
    bad = [(P.q, P.n, b.index, str(b.spec)) for (P, _, _), b in zip(blocks, results) if not b.holds]
    elapsed = time.perf_counter() - start
    verdict("9 concatenation bound", len(results) == 20 and not bad and elapsed < 300,
            f"{len(results)} blocks, {len(bad)} violations, {elapsed:.1f}s")


def _cli(*args, seed):
    env = dict(os.environ, PYTHONHASHSEED=str(seed))
    proc = subprocess.run([sys.executable, "-m", "dihedralcodes", *args], capture_output=True, env=env, check=False)
    return proc.returncode, proc.stdout


def test_criterion_10_determinism(verdict):
    cases = [
        ("enumerate", "-q", "3", "-n", "10", "--class", "lcd", "--format", "json"),
        ("enumerate", "-q", "2", "-n", "21", "--sample", "40", "--seed", "5", "--format", "json"),
        ("verify", "-q", "3", "-n", "8", "--sample", "30", "--seed", "9", "--format", "json"),
        ("verify", "-q", "2", "-n", "9", "--self-dual-tally"),
    ]
    problems = []
    for argv in cases:
        first, second = _cli(*argv, seed=1), _cli(*argv, seed=2)
        if first != second or first[0] != 0 or not first[1]:
            problems.append(" ".join(argv))
    verdict("10 determinism", not problems, "; ".join(problems) or f"{len(cases)} commands run twice")
