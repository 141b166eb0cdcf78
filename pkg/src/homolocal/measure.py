"""Measuring and localizing the smallest nontrivial homology class.

Two ways to find the smallest geodesic ball carrying a nonbounding cycle:
``bmin_naive`` runs persistence from every vertex; ``bmin_improved`` runs it
once and then walks the vertices breadth-first, asking only whether the
ball one step smaller than the current best still carries a class.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .complex import Chain, SimplicialComplex, betti, geodesic_ball, geodesic_filter
from .errors import InternalInconsistency, NoNontrivialClass
from .persistence import first_essential_birth
from .z2 import (
    Echelon,
    SparseZ2Matrix,
    derive_seed,
    indices_to_bits,
    rank_randomized,
    reduce_bitcols,
)

# "auto" hands matrices with more rows or columns than this to exact elimination;
# bitset elimination is far cheaper than batches of numpy sketches past this size
RANDOMIZED_MAX_SIDE = 64
# dense escalation after a disputed randomized answer is capped at this many columns
ESCALATION_MAX_COLS = 4096


@dataclass
class Diagnostics:
    rank_rechecks: int = 0
    escalations: int = 0
    unresolved: int = 0
    carriage_tests: int = 0

    def as_dict(self) -> dict:
        return {
            "carriage_tests": self.carriage_tests,
            "rank_rechecks": self.rank_rechecks,
            "escalations": self.escalations,
            "unresolved": self.unresolved,
        }


@dataclass
class BasisCycles:
    """Representative cycles of some basis of H_d."""

    dim: int
    cycles: list[Chain] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.cycles)


@dataclass(frozen=True)
class Measurement:
    size: int
    cycle: Chain
    center: int


def boundary_echelon(K: SimplicialComplex, d: int) -> Echelon:
    """Column space of the (d+1)-boundary matrix, i.e. B_d(K)."""
    e = Echelon()
    if d + 1 <= K.dim:
        for facets in K.facets(d + 1):
            e.add(indices_to_bits(facets))
    return e


def require_classes(K: SimplicialComplex, d: int) -> int:
    if d < 1:
        raise ValueError("dimension must be at least 1")
    b = betti(K, d)
    if b == 0:
        raise NoNontrivialClass(f"H_{d} is trivial")
    return b


def cycle_basis_bits(K: SimplicialComplex, d: int, columns: Sequence[int]) -> list[int]:
    """Cycles spanning Z_d of the given d-simplices, from zero columns of R.

    Returned in reduction order, as bitsets over d-simplex indices.
    """
    if d == 0:
        return [1 << i for i in columns]
    facets = K.facets(d)
    cols = [indices_to_bits(facets[i]) for i in columns]
    _, V, low = reduce_bitcols(cols)
    out = []
    for c, lo in enumerate(low):
        if lo is None:
            bits, v = 0, V[c]
            while v:
                b = v & -v
                bits |= 1 << columns[b.bit_length() - 1]
                v ^= b
            out.append(bits)
    return out


def precompute_basis_cycles(K: SimplicialComplex, d: int) -> BasisCycles:
    """Reduce the d-boundary matrix and keep the cycles that add a new class."""
    b = betti(K, d)
    out = BasisCycles(d)
    if b == 0:
        return out
    span = boundary_echelon(K, d)
    for z in cycle_basis_bits(K, d, list(range(K.n(d)))):
        if span.add(z):
            out.cycles.append(Chain.from_bits(d, z))
            if len(out.cycles) == b:
                break
    if len(out.cycles) != b:
        raise InternalInconsistency(f"found {len(out.cycles)} of {b} basis cycles")
    return out


def _r_of(K: SimplicialComplex, d: int, p: int):
    return first_essential_birth(K, geodesic_filter(K, p), d)


def bmin_naive(K: SimplicialComplex, d: int, threads: int = 1) -> tuple[int, int]:
    """Centre and radius of the smallest ball carrying a nonbounding d-cycle."""
    require_classes(K, d)
    vertices = K.original_vertices
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            radii = list(pool.map(lambda p: _r_of(K, d, p), vertices))
    else:
        radii = [_r_of(K, d, p) for p in vertices]
    best = None
    for p, r in zip(vertices, radii):
        if r is not None and (best is None or r < best[1]):
            best = (p, r)
    if best is None:
        raise InternalInconsistency("no vertex sees an essential class")
    return best


def _restricted_bitcols(cols: Sequence[Sequence[int]], outside: Sequence[int]) -> list[int]:
    pos = {r: k for k, r in enumerate(outside)}
    out = []
    for col in cols:
        bits = 0
        for r in col:
            k = pos.get(r)
            if k is not None:
                bits |= 1 << k
        out.append(bits)
    return out


def _dense_gap(b_cols: list[int], h_cols: list[int]) -> int:
    """rank([B | H]) - rank(B) with one shared elimination."""
    e = Echelon()
    for c in b_cols:
        e.add(c)
    return sum(e.add(c) for c in h_cols)


def _randomized_gap(b_cols, h_cols, n_rows, seed, trials) -> int:
    B = SparseZ2Matrix.from_bitcols(n_rows, b_cols)
    Z = SparseZ2Matrix.from_bitcols(n_rows, b_cols + h_cols)
    return (rank_randomized(Z, derive_seed(seed, 1), trials)
            - rank_randomized(B, derive_seed(seed, 2), trials))


def contains_nonbounding(
    K: SimplicialComplex,
    ball_mask: list[list[bool]],
    H: BasisCycles,
    seed: int = 0,
    *,
    method: str = "randomized",
    trials: int = 20,
    diagnostics: Diagnostics | None = None,
) -> bool:
    """Does the subcomplex carry a d-cycle that is nonbounding in K?

    With rows restricted to the d-simplices outside the subcomplex, it does
    exactly when rank([D | H]) - rank(D) differs from the Betti number,
    D being the (d+1)-boundary matrix and H the basis cycles.
    """
    d = H.dim
    beta = len(H)
    diag = diagnostics if diagnostics is not None else Diagnostics()
    diag.carriage_tests += 1
    inside = ball_mask[d] if d < len(ball_mask) else []
    if beta == 0 or not any(inside):
        return False
    outside = [i for i in range(K.n(d)) if not inside[i]]
    up = K.facets(d + 1) if d + 1 <= K.dim else []
    b_cols = _restricted_bitcols(up, outside)
    h_cols = _restricted_bitcols([z.simplices for z in H.cycles], outside)
    n_rows, n_cols = len(outside), len(b_cols) + len(h_cols)

    if method == "auto":
        method = "randomized" if max(n_rows, n_cols) <= RANDOMIZED_MAX_SIDE else "dense"
    if method == "dense":
        return _dense_gap(b_cols, h_cols) != beta
    if method != "randomized":
        raise ValueError(f"unknown rank method {method!r}")

    gap = _randomized_gap(b_cols, h_cols, n_rows, seed, trials)
    disputed = False
    if gap == beta:
        # a randomized "no" is re-checked once with a fresh seed
        diag.rank_rechecks += 1
        again = _randomized_gap(b_cols, h_cols, n_rows, derive_seed(seed, 3), trials)
        if again == beta:
            return False
        gap, disputed = again, True
    if disputed or not 0 <= gap <= beta:
        if n_cols <= ESCALATION_MAX_COLS:
            diag.escalations += 1
            return _dense_gap(b_cols, h_cols) != beta
        diag.unresolved += 1
    return gap != beta


def bfs_order(K: SimplicialComplex, root: int) -> list[int]:
    seen = {root}
    order, queue = [root], deque([root])
    while queue:
        u = queue.popleft()
        for w in K.adjacency[u]:
            if w not in seen:
                seen.add(w)
                order.append(w)
                queue.append(w)
    return order


def bmin_improved(
    K: SimplicialComplex,
    d: int,
    H: BasisCycles | None = None,
    seed: int = 0,
    *,
    method: str = "auto",
    trials: int = 20,
    diagnostics: Diagnostics | None = None,
) -> tuple[int, int]:
    """Breadth-first Bmin: one persistence run per component, then carriage tests.

    Neighbouring centres have first-essential radii within one of each
    other, so at each later vertex only the ball of radius r_min - 1 needs
    testing.
    """
    require_classes(K, d)
    if H is None:
        H = precompute_basis_cycles(K, d)
    diag = diagnostics if diagnostics is not None else Diagnostics()
    best = None
    test_no = 0
    for comp in K.components:
        order = bfs_order(K, comp[0])
        r_min = _r_of(K, d, order[0])
        if r_min is None:
            continue  # this component carries no class
        p_min = order[0]
        for p in order[1:]:
            if r_min == 0:
                break
            f = geodesic_filter(K, p)
            mask = geodesic_ball(K, f, r_min - 1)
            test_no += 1
            if contains_nonbounding(K, mask, H, derive_seed(seed, test_no), method=method,
                                    trials=trials, diagnostics=diag):
                r_min -= 1
                p_min = p
        if best is None or (r_min, p_min) < best[::-1]:
            best = (p_min, r_min)
    if best is None:
        raise InternalInconsistency("no component carries a class")
    return best


def nonbounding_candidates(K, d, columns, boundary_span: Echelon):
    """Cycle-basis elements over ``columns`` that are nonbounding, in order."""
    for z in cycle_basis_bits(K, d, columns):
        if not boundary_span.contains(z):
            yield z


def localized_cycle(
    K: SimplicialComplex, d: int, p_min: int, r_min: int, boundary_span: Echelon | None = None
) -> Chain:
    """First cycle of the ball B(p_min, r_min) that is nonbounding in K."""
    mask = geodesic_ball(K, geodesic_filter(K, p_min), r_min)
    columns = [i for i, inside in enumerate(mask[d]) if inside]
    span = boundary_span if boundary_span is not None else boundary_echelon(K, d)
    for z in nonbounding_candidates(K, d, columns, span):
        return Chain.from_bits(d, z)
    raise InternalInconsistency(f"ball ({p_min}, {r_min}) carries no nonbounding {d}-cycle")


def measure_smallest(
    K: SimplicialComplex,
    d: int,
    mode: str = "improved",
    seed: int = 0,
    *,
    onedim_modified: bool = False,
    threads: int = 1,
    trials: int = 20,
    method: str = "auto",
    diagnostics: Diagnostics | None = None,
) -> Measurement:
    if mode == "naive":
        p, r = bmin_naive(K, d, threads=threads)
    elif mode == "improved":
        p, r = bmin_improved(K, d, seed=seed, method=method, trials=trials,
                             diagnostics=diagnostics)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    if onedim_modified and d == 1:
        from .onedim import localized_cycle_1d

        z = localized_cycle_1d(K, p, r)
    else:
        z = localized_cycle(K, d, p, r)
    return Measurement(r, z, p)
