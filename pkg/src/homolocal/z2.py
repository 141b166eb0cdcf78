"""Sparse linear algebra over Z2.

Columns travel as sorted row-index lists in :class:`SparseZ2Matrix` and as
Python ``int`` bitsets inside the kernels (bit ``i`` set means row ``i``
holds a 1), which gives packed XOR for free.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np


def bits_to_indices(bits: int) -> list[int]:
    out = []
    while bits:
        low = bits & -bits
        out.append(low.bit_length() - 1)
        bits ^= low
    return out


def indices_to_bits(indices: Iterable[int]) -> int:
    bits = 0
    for i in indices:
        bits ^= 1 << i
    return bits


@dataclass
class SparseZ2Matrix:
    n_rows: int
    n_cols: int
    columns: list[list[int]]
    check: bool = True

    def __post_init__(self):
        if len(self.columns) != self.n_cols:
            raise ValueError(f"expected {self.n_cols} columns, got {len(self.columns)}")
        if self.check:
            for j, col in enumerate(self.columns):
                for a, b in itertools.pairwise(col):
                    if a >= b:
                        raise ValueError(f"column {j} is not strictly increasing")
                if col and (col[0] < 0 or col[-1] >= self.n_rows):
                    raise ValueError(f"column {j} has a row index out of range")

    def __eq__(self, other):
        if not isinstance(other, SparseZ2Matrix):
            return NotImplemented
        return (self.n_rows, self.n_cols, self.columns) == (other.n_rows, other.n_cols, other.columns)

    @property
    def shape(self) -> tuple[int, int]:
        return self.n_rows, self.n_cols

    @property
    def nnz(self) -> int:
        return sum(len(c) for c in self.columns)

    @classmethod
    def from_bitcols(cls, n_rows: int, cols: Sequence[int]) -> SparseZ2Matrix:
        return cls(n_rows, len(cols), [bits_to_indices(c) for c in cols], check=False)

    @classmethod
    def from_dense(cls, array) -> SparseZ2Matrix:
        a = np.asarray(array) % 2
        m, n = a.shape
        return cls(m, n, [np.flatnonzero(a[:, j]).tolist() for j in range(n)], check=False)

    @classmethod
    def identity(cls, n: int) -> SparseZ2Matrix:
        return cls(n, n, [[i] for i in range(n)], check=False)

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.n_rows, self.n_cols), dtype=np.uint8)
        for j, col in enumerate(self.columns):
            out[col, j] = 1
        return out

    def bitcols(self) -> list[int]:
        return [indices_to_bits(c) for c in self.columns]

    def hstack(self, other: SparseZ2Matrix) -> SparseZ2Matrix:
        if other.n_rows != self.n_rows:
            raise ValueError("row counts differ")
        return SparseZ2Matrix(self.n_rows, self.n_cols + other.n_cols,
                              self.columns + other.columns, check=False)

    def select_columns(self, keep: Sequence[int]) -> SparseZ2Matrix:
        return SparseZ2Matrix(self.n_rows, len(keep), [self.columns[j] for j in keep], check=False)

    def restrict_rows(self, keep: Sequence[int]) -> SparseZ2Matrix:
        """Submatrix on the listed rows, renumbered in the given order."""
        new_of = {r: i for i, r in enumerate(keep)}
        cols = [sorted(new_of[r] for r in col if r in new_of) for col in self.columns]
        return SparseZ2Matrix(len(keep), self.n_cols, cols, check=False)

    def permute(self, row_order: Sequence[int], col_order: Sequence[int]) -> SparseZ2Matrix:
        """Row ``i`` of the result is row ``row_order[i]`` of self, same for columns."""
        return self.select_columns(col_order).restrict_rows(row_order)

    def transpose(self) -> SparseZ2Matrix:
        rows: list[list[int]] = [[] for _ in range(self.n_rows)]
        for j, col in enumerate(self.columns):
            for i in col:
                rows[i].append(j)
        return SparseZ2Matrix(self.n_cols, self.n_rows, rows, check=False)

    def __matmul__(self, other: SparseZ2Matrix) -> SparseZ2Matrix:
        if self.n_cols != other.n_rows:
            raise ValueError("inner dimensions differ")
        mine = self.bitcols()
        out = []
        for col in other.columns:
            acc = 0
            for k in col:
                acc ^= mine[k]
            out.append(acc)
        return SparseZ2Matrix.from_bitcols(self.n_rows, out)

    def dumps(self) -> str:
        """Triplet text: ``rows cols`` header, then one ``r c`` line per 1."""
        lines = [f"{self.n_rows} {self.n_cols}"]
        for j, col in enumerate(self.columns):
            lines.extend(f"{i} {j}" for i in col)
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> SparseZ2Matrix:
        rows = [ln.split() for ln in text.splitlines() if ln.strip()]
        m, n = int(rows[0][0]), int(rows[0][1])
        cols: list[set[int]] = [set() for _ in range(n)]
        for r, c in rows[1:]:
            cols[int(c)] ^= {int(r)}
        return cls(m, n, [sorted(c) for c in cols])


@dataclass
class ReductionResult:
    R: SparseZ2Matrix
    V: SparseZ2Matrix
    low: list[int | None]

    @property
    def zero_columns(self) -> list[int]:
        return [j for j, lo in enumerate(self.low) if lo is None]


def reduce_bitcols(cols: Sequence[int]) -> tuple[list[int], list[int], list[int | None]]:
    """Left-to-right column reduction on bitset columns.

    Returns reduced columns, the V columns (bit ``j`` = original column j)
    and the low row of every column.
    """
    pivot: dict[int, int] = {}
    R, V, low = [], [], []
    for i, col in enumerate(cols):
        v = 1 << i
        while col:
            lo = col.bit_length() - 1
            j = pivot.get(lo)
            if j is None:
                break
            col ^= R[j]
            v ^= V[j]
        R.append(col)
        V.append(v)
        if col:
            lo = col.bit_length() - 1
            pivot[lo] = i
            low.append(lo)
        else:
            low.append(None)
    return R, V, low


def column_reduce(M: SparseZ2Matrix) -> ReductionResult:
    """Persistence-style reduction ``R = M V`` with V unit upper triangular."""
    R, V, low = reduce_bitcols(M.bitcols())
    return ReductionResult(
        SparseZ2Matrix.from_bitcols(M.n_rows, R),
        SparseZ2Matrix.from_bitcols(M.n_cols, V),
        low,
    )


class Echelon:
    """Incrementally grown column space, keyed by lowest-row pivot.

    ``tags`` optionally track which tagged inputs a stored vector is built
    from, as a bitmask; this is how class coordinates are read off.
    """

    def __init__(self):
        self._pivot: dict[int, int] = {}
        self._tag: dict[int, int] = {}

    def __len__(self) -> int:
        return len(self._pivot)

    def reduce(self, vec: int, tag: int = 0) -> tuple[int, int]:
        pivot, tags = self._pivot, self._tag
        while vec:
            lo = vec.bit_length() - 1
            p = pivot.get(lo)
            if p is None:
                break
            vec ^= p
            tag ^= tags[lo]
        return vec, tag

    def add(self, vec: int, tag: int = 0) -> bool:
        """Insert ``vec``; True when it raised the rank."""
        vec, tag = self.reduce(vec, tag)
        if not vec:
            return False
        lo = vec.bit_length() - 1
        self._pivot[lo] = vec
        self._tag[lo] = tag
        return True

    def contains(self, vec: int) -> bool:
        return self.reduce(vec)[0] == 0

    def copy(self) -> Echelon:
        out = Echelon()
        out._pivot = dict(self._pivot)
        out._tag = dict(self._tag)
        return out


def rank_bitcols(cols: Iterable[int]) -> int:
    e = Echelon()
    for c in cols:
        e.add(c)
    return len(e)


def rank_dense(M: SparseZ2Matrix) -> int:
    """Exact Z2 rank by Gaussian elimination."""
    if M.n_rows == 0 or M.n_cols == 0:
        return 0
    return rank_bitcols(M.bitcols())


# -- randomized rank --------------------------------------------------------

# A trial sketches the matrix to (s + OVERSAMPLE) square instead of s square:
# over Z2 a uniform s x s product is nonsingular only ~8% of the time, while
# two extra rows and columns lift the per-trial success above 1/2.
OVERSAMPLE = 2


def _batched_ranks(stack: np.ndarray) -> np.ndarray:
    """Z2 ranks of a (t, k, k) 0/1 stack by vectorised elimination on packed rows."""
    t, k, _ = stack.shape
    a = np.packbits(stack.astype(np.uint8), axis=2)  # (t, k, ceil(k / 8))
    ranks = np.zeros(t, dtype=np.int64)
    row_ids = np.arange(k)[None, :]
    for col in range(k):
        bit = (a[:, :, col >> 3] >> (7 - (col & 7))) & 1
        # candidate pivot rows: index >= current rank with a 1 in this column
        live = bit.astype(bool) & (row_ids >= ranks[:, None])
        has = live.any(axis=1)
        if not has.any():
            continue
        sel = np.flatnonzero(has)
        pr = live[sel].argmax(axis=1)
        rk = ranks[sel]
        top = a[sel, rk].copy()
        a[sel, rk] = a[sel, pr]
        a[sel, pr] = top
        pivot_rows = a[sel, rk]
        mask = bit[sel]
        mask[np.arange(len(sel)), pr] = 0
        mask[np.arange(len(sel)), rk] = 0
        a[sel] ^= mask[:, :, None] * pivot_rows[:, None, :]
        ranks[sel] += 1
    return ranks


# a probe first draws this many sketches and only draws the rest of its
# trials (as one stack) when none of them certifies; refuted probes pay for
# every trial, certified ones usually for the first batch only
FIRST_BATCH = 4


def _random_bits(rng: np.random.Generator, shape) -> np.ndarray:
    """Uniform 0/1 float32 array, drawn a byte at a time."""
    *lead, last = shape
    raw = rng.integers(0, 256, size=(*lead, (last + 7) // 8), dtype=np.uint8)
    return np.unpackbits(raw, axis=-1, count=last).astype(np.float32)


def _sketch_ranks(A: np.ndarray, s: int, trials: int, rng: np.random.Generator) -> np.ndarray:
    m, n = A.shape
    k = s + OVERSAMPLE
    P = _random_bits(rng, (trials, k, m))
    Q = _random_bits(rng, (trials, n, k))
    # float32 products are exact below 2**24 summands
    PA = (P.reshape(trials * k, m) @ A).astype(np.int32) & 1
    PAQ = np.matmul(PA.reshape(trials, k, n).astype(np.float32), Q).astype(np.int32) & 1
    return _batched_ranks(PAQ.astype(np.uint8))


def _probe(A: np.ndarray, s: int, trials: int, rng: np.random.Generator) -> int:
    """Best sketch rank over ``trials`` sketches, stopping early once one reaches s."""
    first = min(FIRST_BATCH, trials)
    best = int(_sketch_ranks(A, s, first, rng).max())
    if best < s and trials > first:
        best = max(best, int(_sketch_ranks(A, s, trials - first, rng).max()))
    return best


def peel_singletons(columns: Sequence[Sequence[int]]) -> tuple[int, list[list[int]]]:
    """Strip rows and columns holding a single 1, exactly.

    If column c is nonzero only in row r (or row r only in column c), the
    other entries of that row (column) can be cleared by elimination, so
    the rank is 1 + the rank with row r and column c deleted.  Returns the
    rank peeled off and the remaining nonzero columns.
    """
    cols = {j: set(c) for j, c in enumerate(columns) if c}
    rows: dict[int, set[int]] = {}
    for j, c in cols.items():
        for r in c:
            rows.setdefault(r, set()).add(j)
    peeled = 0
    stack = [("c", j) for j, c in cols.items() if len(c) == 1]
    stack += [("r", r) for r, c in rows.items() if len(c) == 1]

    def drop_col(j):
        for r in cols.pop(j):
            rc = rows[r]
            rc.discard(j)
            if len(rc) == 1:
                stack.append(("r", r))
            elif not rc:
                del rows[r]

    def drop_row(r):
        for j in rows.pop(r):
            cj = cols[j]
            cj.discard(r)
            if len(cj) == 1:
                stack.append(("c", j))
            elif not cj:
                del cols[j]

    while stack:
        kind, key = stack.pop()
        if kind == "c":
            if key not in cols or len(cols[key]) != 1:
                continue
            (r,) = cols[key]
            drop_col(key)
            if r in rows:
                drop_row(r)
        else:
            if key not in rows or len(rows[key]) != 1:
                continue
            (j,) = rows[key]
            drop_row(key)
            if j in cols:
                drop_col(j)
        peeled += 1
    return peeled, [sorted(cols[j]) for j in sorted(cols)]


def rank_randomized(M: SparseZ2Matrix, seed: int, trials: int = 20) -> int:
    """Monte Carlo rank with one-sided error: never above the true rank.

    Binary search on the rank.  Probing ``s`` draws up to ``trials`` random
    sketches ``P M Q`` of order s + OVERSAMPLE.  Ranks never grow under
    multiplication, so every sketch rank is a certified lower bound.  If
    every sketch falls short of ``s``, ``s`` is declared above the rank,
    which is wrong with probability below 2**-trials per probe.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if M.n_rows == 0 or M.n_cols == 0 or M.nnz == 0:
        return 0
    rng = np.random.default_rng(np.random.SeedSequence(seed & (2**64 - 1)))
    # Exact pre-pass: singleton rows and columns are peeled off, zero rows
    # and columns dropped; only the remaining core is sketched.
    peeled, cols = peel_singletons(M.columns)
    if not cols:
        return peeled
    rows = sorted({r for c in cols for r in c})
    A = np.zeros((len(rows), len(cols)), dtype=np.float32)
    pos = {r: i for i, r in enumerate(rows)}
    for j, c in enumerate(cols):
        A[[pos[r] for r in c], j] = 1
    m, n = A.shape
    lo, hi = 1, min(m, n)  # nonzero matrix: rank >= 1 is certain
    # The first probe sits at the top of the range: an oversampled sketch of
    # full order usually certifies the whole rank at once, leaving a single
    # refuting probe just above it.
    s = hi
    while lo < hi:
        best = _probe(A, s, trials, rng)
        lo = max(lo, best)  # any sketch rank is a certified lower bound
        if best < s:
            hi = s - 1
        if lo >= hi:
            break
        if best < s + OVERSAMPLE:
            # the sketch was not saturated, so its rank is likely the true one
            s = lo + 1
        else:
            s = (lo + hi + 1) // 2
    return peeled + lo


def derive_seed(seed: int, *keys: int) -> int:
    """Independent 64-bit child seed for a (seed, keys...) path."""
    ss = np.random.SeedSequence(seed & (2**64 - 1), spawn_key=tuple(keys))
    hi, lo = ss.generate_state(2, dtype=np.uint32)
    return (int(hi) << 32) | int(lo)
