"""Explicit generator matrices over F_q and the brute-force linear algebra oracle.

Matrices are dense int64 numpy arrays of field-element encodings.  Every
routine here works from coordinates alone, so it can check the symbolic
results of :mod:`dihedralcodes.codes` independently.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .codes import CodeDescriptor, OuterSpec
from .cyclotomic import FactorProfile
from .errors import BudgetExceeded, InvalidInput
from .field import GF, Poly
from .idempotents import primitive_idempotent

DEFAULT_BUDGET = 2**24


@dataclass(frozen=True, eq=False)
class MatrixFq:
    field: GF
    data: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.data, dtype=np.int64)
        if arr.ndim != 2:
            raise InvalidInput(f"matrix data must be 2-dimensional, got shape {arr.shape}")
        object.__setattr__(self, "data", arr)

    @classmethod
    def zeros(cls, field: GF, rows: int, cols: int) -> "MatrixFq":
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, field: GF, k: int) -> "MatrixFq":
        return cls(field, np.eye(k, dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MatrixFq):
            return NotImplemented
        return self.field == other.field and np.array_equal(self.data, other.data)

    def __matmul__(self, other: "MatrixFq") -> "MatrixFq":
        if self.cols != other.rows:
            raise InvalidInput(f"cannot multiply {self.shape} by {other.shape}")
        return MatrixFq(self.field, self.field.vdot(self.data, other.data))

    @property
    def T(self) -> "MatrixFq":
        return MatrixFq(self.field, self.data.T.copy())

    def vstack(self, other: "MatrixFq") -> "MatrixFq":
        if self.cols != other.cols:
            raise InvalidInput(f"column mismatch: {self.cols} vs {other.cols}")
        return MatrixFq(self.field, np.vstack([self.data, other.data]))

    def is_zero(self) -> bool:
        return not self.data.any()

    def tolist(self) -> list[list]:
        F = self.field
        return [[F.element_json(int(v)) for v in row] for row in self.data]

    def to_text(self) -> str:
        F = self.field
        cells = [[F.element_str(int(v)) for v in row] for row in self.data]
        width = max((len(c) for row in cells for c in row), default=1)
        return "\n".join(" ".join(c.rjust(width) for c in row) for row in cells)

    def to_csv(self) -> str:
        F = self.field
        if F.m == 1:
            return "\n".join(",".join(str(int(v)) for v in row) for row in self.data)
        return "\n".join(",".join(F.element_str(int(v)) for v in row) for row in self.data)


# -- construction ----------------------------------------------------------


def _coeff_row(a: Poly, n: int) -> np.ndarray:
    if a.degree >= n:
        raise InvalidInput(f"{a} is not reduced modulo x^{n} - 1")
    return np.array(a.padded(n), dtype=np.int64)


def circulant_block(a: Poly, k: int, n: int) -> MatrixFq:
    """[a]_k: rows a, xa, ..., x^{k-1}a mod x^n - 1."""
    if not 1 <= k <= n:
        raise InvalidInput(f"k must lie in 1..{n}, got {k}")
    row = _coeff_row(a, n)
    return MatrixFq(a.field, np.stack([np.roll(row, j) for j in range(k)]))


def block_generator(profile: FactorProfile, i: int, spec: OuterSpec, keep_zero_rows: bool = False) -> MatrixFq:
    """Generator of the single concatenated block A_i [] C_i inside F_q^{2n}."""
    M = _block_generator(profile, i, spec, keep_zero_rows)
    return MatrixFq(M.field, M.data.copy())


@functools.lru_cache(maxsize=1 << 14)
def _block_generator(profile: FactorProfile, i: int, spec: OuterSpec, keep_zero_rows: bool) -> MatrixFq:
    M = _build_block(profile, i, spec, keep_zero_rows)
    M.data.setflags(write=False)
    return M


def _build_block(profile: FactorProfile, i: int, spec: OuterSpec, keep_zero_rows: bool) -> MatrixFq:
    F, n, d = profile.field, profile.n, profile.degrees[i]
    eps = primitive_idempotent(profile, i)
    if spec.kind == "zero":
        return MatrixFq.zeros(F, 1 if keep_zero_rows else 0, 2 * n)
    if spec.kind == "full":
        blk = circulant_block(eps, d, n).data
        z = np.zeros_like(blk)
        return MatrixFq(F, np.block([[blk, z], [z, blk]]))
    left = circulant_block((eps * spec.g1) % profile.modulus, d, n).data if spec.g1 else np.zeros((d, n), dtype=np.int64)
    right = circulant_block((eps * spec.g2) % profile.modulus, d, n).data if spec.g2 else np.zeros((d, n), dtype=np.int64)
    return MatrixFq(F, np.hstack([left, right]))


def generator_matrix(desc: CodeDescriptor, keep_zero_rows: bool = False) -> MatrixFq:
    """Stacked block generators; zero specs add no rows unless ``keep_zero_rows``."""
    prof = desc.profile
    blocks = [_block_generator(prof, i, s, keep_zero_rows).data for i, s in enumerate(desc.specs)]
    return MatrixFq(prof.field, np.vstack(blocks) if blocks else np.zeros((0, 2 * prof.n), dtype=np.int64))


# -- elimination -----------------------------------------------------------


def _rref_gf2(A: np.ndarray) -> tuple[np.ndarray, list[int]]:
    # rows packed into Python ints, column c at bit c
    rows, cols = A.shape
    weights = [1 << c for c in range(cols)]
    packed = [sum(w for w, v in zip(weights, row) if v) for row in A.tolist()]
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        bit = weights[c]
        k = next((k for k in range(r, rows) if packed[k] & bit), None)
        if k is None:
            continue
        packed[r], packed[k] = packed[k], packed[r]
        pr = packed[r]
        for j in range(rows):
            if j != r and packed[j] & bit:
                packed[j] ^= pr
        pivots.append(c)
        r += 1
        if r == rows:
            break
    out = np.array([[(v >> c) & 1 for c in range(cols)] for v in packed[:r]], dtype=np.int64)
    return out.reshape(r, cols), pivots


def _rref(F: GF, A: np.ndarray) -> tuple[np.ndarray, list[int]]:
    if F.q == 2:
        return _rref_gf2(np.asarray(A))
    A = np.array(A, dtype=np.int64, copy=True)
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if not len(nz):
            continue
        k = r + int(nz[0])
        if k != r:
            A[[r, k]] = A[[k, r]]
        lead = int(A[r, c])
        if lead != 1:
            A[r] = F.vmul(A[r], F.inv(lead))
        others = np.flatnonzero(A[:, c])
        others = others[others != r]
        if len(others):
            A[others] = F.vsub(A[others], F.vmul(A[others, c][:, None], A[r][None, :]))
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rref(M: MatrixFq) -> tuple[MatrixFq, list[int]]:
    """Reduced row echelon form with zero rows dropped, and the pivot columns."""
    R, piv = _rref(M.field, M.data)
    return MatrixFq(M.field, R), piv


def rank(M: MatrixFq) -> int:
    return len(_rref(M.field, M.data)[1])


def null_space(M: MatrixFq) -> MatrixFq:
    """Basis (as rows) of {v : M v^T = 0}."""
    F = M.field
    R, piv = _rref(F, M.data)
    cols = M.cols
    free = [c for c in range(cols) if c not in set(piv)]
    N = np.zeros((len(free), cols), dtype=np.int64)
    for k, f in enumerate(free):
        N[k, f] = 1
        if piv:
            N[k, piv] = F.vneg(R[:, f])
    return MatrixFq(F, N)


def brute_dual(G: MatrixFq) -> MatrixFq:
    """Generator of the Euclidean dual of the row space of G."""
    return null_space(G)


def row_space_equal(A: MatrixFq, B: MatrixFq) -> bool:
    if A.cols != B.cols:
        return False
    return np.array_equal(_rref(A.field, A.data)[0], _rref(B.field, B.data)[0])


def row_space_intersection(A: MatrixFq, B: MatrixFq) -> MatrixFq:
    """Basis of rowspace(A) & rowspace(B) via the left kernel of the stacked bases."""
    if A.cols != B.cols:
        raise InvalidInput(f"column mismatch: {A.cols} vs {B.cols}")
    F = A.field
    Ra, Rb = _rref(F, A.data)[0], _rref(F, B.data)[0]
    if not len(Ra) or not len(Rb):
        return MatrixFq.zeros(F, 0, A.cols)
    S = MatrixFq(F, np.vstack([Ra, Rb]))
    W = null_space(S.T).data
    if not len(W):
        return MatrixFq.zeros(F, 0, A.cols)
    return MatrixFq(F, _rref(F, F.vdot(W[:, : len(Ra)], Ra))[0])


def gram(G: MatrixFq) -> MatrixFq:
    return G @ G.T


# -- codewords -------------------------------------------------------------


def _span_table(F: GF, basis: np.ndarray) -> np.ndarray:
    table = np.zeros((1, basis.shape[1]), dtype=np.int64)
    for b in basis:
        table = np.vstack([F.vadd(table, F.vmul(np.int64(c), b)[None, :]) for c in F.elements()])
    return table


def min_distance(G: MatrixFq, budget: int = DEFAULT_BUDGET) -> int | None:
    """Minimum nonzero Hamming weight of the row space, by exhaustive sweep.

    Returns None for the zero code.  Raises BudgetExceeded when the code has
    more than ``budget`` codewords.
    """
    F = G.field
    R = _rref(F, G.data)[0]
    k = len(R)
    if k == 0:
        return None
    total = F.q**k
    if total > budget:
        raise BudgetExceeded(total, budget)
    low = 0
    while low < k and F.q ** (low + 1) <= 1 << 14:
        low += 1
    table = _span_table(F, R[:low])
    heads = _span_table(F, R[low:])
    best = G.cols + 1
    for h in heads:
        words = F.vadd(table, h[None, :])
        w = np.count_nonzero(words, axis=1)
        w = w[w > 0]
        if len(w):
            best = min(best, int(w.min()))
    return best


def check_left_ideal(G: MatrixFq, n: int) -> bool:
    """Closure of the row space under (a, b) -> (xa, xb) and (a, b) -> (b(x^-1), a(x^-1))."""
    if G.cols != 2 * n:
        raise InvalidInput(f"expected {2 * n} columns, got {G.cols}")
    F = G.field
    R = _rref(F, G.data)[0]
    if not len(R):
        return True
    a, b = R[:, :n], R[:, n:]
    shifted = np.hstack([np.roll(a, 1, axis=1), np.roll(b, 1, axis=1)])
    flip = (-np.arange(n)) % n
    swapped = np.hstack([b[:, flip], a[:, flip]])
    k = len(R)
    return all(len(_rref(F, np.vstack([R, img]))[1]) == k for img in (shifted, swapped))
