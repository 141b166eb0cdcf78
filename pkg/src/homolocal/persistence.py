"""Filtration order, persistence pairing and first essential birth.

The global incidence matrix is never built: each boundary block is reduced
in filtration order, which yields the same pairs for any order in which
faces precede cofaces.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .complex import INF, FilterAssignment, SimplicialComplex
from .z2 import reduce_bitcols


@dataclass(frozen=True)
class SimplexOrdering:
    order: list[tuple[int, int]]  # (dim, index) in filtration order
    position: list[list[int]]  # position[d][i]: rank of simplex (d, i) in order


@dataclass(frozen=True)
class Pair:
    dim: int  # dimension of the birth simplex
    birth: int  # index of the birth simplex within ``dim``
    death: int  # index of the death simplex within ``dim + 1``
    birth_value: object
    death_value: object


@dataclass(frozen=True)
class Essential:
    dim: int
    simplex: int
    birth_value: object


@dataclass
class PersistencePairing:
    pairs: list[Pair] = field(default_factory=list)
    essential: list[Essential] = field(default_factory=list)

    def essential_in(self, d: int) -> list[Essential]:
        return [e for e in self.essential if e.dim == d]

    def dumps(self) -> str:
        """``dim birth death`` per line, ``inf`` for classes that never die."""
        rows = [(p.dim, p.birth_value, p.death_value) for p in self.pairs]
        rows += [(e.dim, e.birth_value, INF) for e in self.essential]
        return "".join(f"{d} {b} {x}\n" for d, b, x in rows)


def _sort_key(f: FilterAssignment, d: int):
    values = f.simplex_values[d]
    # INF sorts after every int; the key tuple keeps (dimension, index) ties
    return lambda i: (values[i] is INF, 0 if values[i] is INF else values[i], d, i)


def simplex_ordering(K: SimplicialComplex, f: FilterAssignment) -> SimplexOrdering:
    entries = []
    for d in range(K.dim + 1):
        values = f.simplex_values[d]
        for i in range(K.n(d)):
            v = values[i]
            entries.append((v is INF, 0 if v is INF else v, d, i))
    entries.sort()
    order = [(d, i) for _, _, d, i in entries]
    position = [[0] * K.n(d) for d in range(K.dim + 1)]
    for pos, (d, i) in enumerate(order):
        position[d][i] = pos
    return SimplexOrdering(order, position)


def _dim_order(K: SimplicialComplex, f: FilterAssignment, d: int) -> list[int]:
    """d-simplices in filtration order (same relative order as the global one)."""
    if K.n(d) == 0:
        return []
    return sorted(range(K.n(d)), key=_sort_key(f, d))


def _reduce_block(K, f, d, row_order, col_order, skip=frozenset()):
    """Reduce boundary block d; returns {col simplex: low row simplex} for nonzero columns."""
    row_pos = [0] * K.n(d - 1)
    for p, i in enumerate(row_order):
        row_pos[i] = p
    facets = K.facets(d)
    cols = []
    for j in col_order:
        if j in skip:
            cols.append(0)
            continue
        bits = 0
        for i in facets[j]:
            bits |= 1 << row_pos[i]
        cols.append(bits)
    _R, _, low = reduce_bitcols(cols)
    return {col_order[c]: row_order[lo] for c, lo in enumerate(low) if lo is not None}


def persistence_pairs(
    K: SimplicialComplex, f: FilterAssignment, dims: range | None = None
) -> PersistencePairing:
    """Birth/death pairs and essential simplices.

    ``dims`` limits the birth dimensions reported; only the boundary blocks
    needed for them are reduced.
    """
    if dims is None:
        dims = range(K.dim + 1)
    wanted = [d for d in dims if 0 <= d <= K.dim]
    orders = {}

    def order(d):
        if d not in orders:
            orders[d] = _dim_order(K, f, d)
        return orders[d]

    # killed_by[d]: {(d+1)-simplex: d-simplex it kills}.  Blocks run top-down
    # so d-simplices already known to be births are cleared from block d.
    killed_by: dict[int, dict[int, int]] = {}
    negative: dict[int, set[int]] = {}
    needed = sorted({d + 1 for d in wanted} | {d for d in wanted if d >= 1}, reverse=True)
    for d in needed:
        if d > K.dim or d < 1:
            continue
        clear = set(killed_by[d].values()) if d in killed_by else set()
        lows = _reduce_block(K, f, d, order(d - 1), order(d), skip=clear)
        killed_by[d - 1] = lows
        negative[d] = set(lows)

    out = PersistencePairing()
    for d in wanted:
        fv = f.simplex_values
        kills = killed_by.get(d, {})  # (d+1)-simplex -> d-simplex
        paired = set(kills.values())
        for death, birth in _ordered_pairs(kills, order(d + 1)):
            out.pairs.append(Pair(d, birth, death, fv[d][birth], fv[d + 1][death]))
        neg = negative.get(d, set())
        for i in order(d):
            if i not in neg and i not in paired:
                out.essential.append(Essential(d, i, fv[d][i]))
    return out


def _ordered_pairs(kills, death_order):
    for death in death_order:
        if death in kills:
            yield death, kills[death]


def first_essential_birth(K: SimplicialComplex, f: FilterAssignment, d: int):
    """Smallest finite birth value of an essential d-simplex, or None."""
    best = None
    for e in persistence_pairs(K, f, range(d, d + 1)).essential:
        v = e.birth_value
        if v is not INF and (best is None or v < best):
            best = v
    return best
