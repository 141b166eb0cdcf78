"""Exhaustive ground truth for desk-sized complexes.

Everything here is deliberately slow and literal.  Homology classes are
identified by their coordinates in a fixed basis (a bitmask with one bit
per basis class) so that "all 2^beta - 1 classes" can be scanned directly.
"""

from __future__ import annotations

from collections import deque
from itertools import combinations

import networkx as nx

from .complex import (
    INF,
    Chain,
    SimplicialComplex,
    bfs_distances,
    geodesic_ball,
    geodesic_filter,
)
from .errors import NoNontrivialClass, TooLarge
from .z2 import Echelon, SparseZ2Matrix, column_reduce, indices_to_bits

MAX_CYCLE_DIM = 20
MAX_BETTI = 4
MAX_STATES = 1 << 20


def _cycle_space_basis(K: SimplicialComplex, d: int, columns: list[int]) -> list[int]:
    if d == 0:
        return [1 << i for i in columns]
    facets = K.facets(d)
    M = SparseZ2Matrix(K.n(d - 1), len(columns), [facets[i] for i in columns], check=False)
    red = column_reduce(M)
    out = []
    for c in red.zero_columns:
        out.append(indices_to_bits(columns[k] for k in red.V.columns[c]))
    return out


class HomologyCoordinates:
    """Coordinates of d-cycles of K in one fixed basis of H_d(K)."""

    def __init__(self, K: SimplicialComplex, d: int):
        self.K, self.d = K, d
        span = Echelon()
        if d + 1 <= K.dim:
            for facets in K.facets(d + 1):
                span.add(indices_to_bits(facets))
        self.basis: list[int] = []
        for z in _cycle_space_basis(K, d, list(range(K.n(d)))):
            if span.add(z, 1 << len(self.basis)):
                self.basis.append(z)
        self._span = span

    @property
    def betti(self) -> int:
        return len(self.basis)

    def of(self, z) -> int:
        bits = z.bits if isinstance(z, Chain) else z
        rest, tag = self._span.reduce(bits)
        if rest:
            raise ValueError("not a cycle")
        return tag

    def representative(self, mask: int) -> Chain:
        bits = 0
        for k, z in enumerate(self.basis):
            if mask >> k & 1:
                bits ^= z
        return Chain.from_bits(self.d, bits)

    def classes(self) -> range:
        return range(1, 1 << self.betti)



def carried_span(K: SimplicialComplex, coords: HomologyCoordinates, mask_d: list[bool]) -> Echelon:
    """Subspace of H_d(K) (as coordinate masks) carried by the given d-simplices."""
    columns = [i for i, inside in enumerate(mask_d) if inside]
    span = Echelon()
    for z in _cycle_space_basis(K, coords.d, columns):
        c = coords.of(z)
        if c:
            span.add(c)
    return span


def localized_representative(K: SimplicialComplex, coords: HomologyCoordinates, h: int,
                            size: int | None = None) -> tuple[int, Chain]:
    """A centre and a cycle of class ``h`` inside a smallest ball carrying ``h``."""
    size = class_sizes(K, coords.d, coords)[h] if size is None else size
    for p in K.original_vertices:
        mask = geodesic_ball(K, geodesic_filter(K, p), size)[coords.d]
        columns = [i for i, inside in enumerate(mask) if inside]
        span, ball_cycles = Echelon(), []
        for z in _cycle_space_basis(K, coords.d, columns):
            if span.add(coords.of(z), 1 << len(ball_cycles)):
                ball_cycles.append(z)
        rest, tag = span.reduce(h)
        if rest == 0:
            bits = 0
            for k, z in enumerate(ball_cycles):
                if tag >> k & 1:
                    bits ^= z
            return p, Chain.from_bits(coords.d, bits)
    raise ValueError(f"no ball of radius {size} carries class {h}")


def enumerate_cycles(K: SimplicialComplex, d: int) -> list[Chain]:
    """All 2^dim(Z_d) cycles, zero included."""
    basis = _cycle_space_basis(K, d, list(range(K.n(d))))
    if len(basis) > MAX_CYCLE_DIM:
        raise TooLarge(f"cycle space has dimension {len(basis)} > {MAX_CYCLE_DIM}")
    out = []
    for pick in range(1 << len(basis)):
        bits = 0
        for k, z in enumerate(basis):
            if pick >> k & 1:
                bits ^= z
        out.append(Chain.from_bits(d, bits))
    return out


def class_sizes(K: SimplicialComplex, d: int, coords: HomologyCoordinates | None = None) -> dict[int, int]:
    """Size of every nontrivial class by scanning every centre and radius."""
    coords = coords or HomologyCoordinates(K, d)
    beta = coords.betti
    sizes: dict[int, int] = {}
    for p in K.original_vertices:
        f = geodesic_filter(K, p)
        finite = [v for v in f.vertex_values if v is not INF]
        for r in range(max(finite) + 1):
            span = carried_span(K, coords, geodesic_ball(K, f, r)[d])
            for h in coords.classes():
                if (h not in sizes or r < sizes[h]) and span.contains(h):
                    sizes[h] = r
            if len(span) == beta:
                break
    return sizes


def brute_size(K: SimplicialComplex, d: int, z: Chain) -> int:
    coords = HomologyCoordinates(K, d)
    h = coords.of(z)
    if h == 0:
        raise ValueError("cycle is bounding; its class has no size")
    return class_sizes(K, d, coords)[h]


def greedy_basis(sizes: dict[int, int]) -> list[tuple[int, int]]:
    """(class, size) chosen by the matroid greedy over all classes."""
    chosen, span = [], Echelon()
    for h in sorted(sizes, key=lambda h: (sizes[h], h)):
        if span.add(h):
            chosen.append((h, sizes[h]))
    return chosen


def brute_optimal_basis(K: SimplicialComplex, d: int) -> list[int]:
    """Sorted size multiset of an optimal basis."""
    coords = HomologyCoordinates(K, d)
    if coords.betti > MAX_BETTI:
        raise TooLarge(f"betti number {coords.betti} > {MAX_BETTI}")
    if coords.betti == 0:
        return []
    return [s for _, s in greedy_basis(class_sizes(K, d, coords))]


# -- metric quantities --------------------------------------------------------

def distance_table(K: SimplicialComplex) -> dict[int, list]:
    return {p: bfs_distances(K, p) for p in K.original_vertices}


def radius(K: SimplicialComplex, z: Chain, dist=None) -> int:
    dist = dist or distance_table(K)
    vs = z.vertices(K)
    return min(max(dist[p][q] for q in vs) for p in K.original_vertices)


def diameter(K: SimplicialComplex, z: Chain, dist=None) -> int:
    dist = dist or distance_table(K)
    vs = sorted(z.vertices(K))
    if len(vs) < 2:
        return 0
    return max(dist[a][b] for a, b in combinations(vs, 2))


def min_diameter(K: SimplicialComplex, d: int, h: int, coords: HomologyCoordinates | None = None,
                 dist=None) -> int:
    """Smallest diameter of a cycle in class ``h`` (coordinate mask).

    A cycle has diameter <= D iff its vertices are pairwise within D, i.e.
    lie in a clique of the "within D" graph; the full subcomplex on a
    maximal clique then carries it.
    """
    coords = coords or HomologyCoordinates(K, d)
    dist = dist or distance_table(K)
    verts = K.original_vertices
    top = max(x for p in verts for x in dist[p] if x is not INF)
    for D in range(top + 1):
        G = nx.Graph()
        G.add_nodes_from(verts)
        G.add_edges_from((a, b) for a, b in combinations(verts, 2)
                         if dist[a][b] is not INF and dist[a][b] <= D)
        for clique in nx.find_cliques(G):
            members = set(clique)
            mask = [not K.sealed[d][i] and set(s) <= members
                    for i, s in enumerate(K.simplices[d])]
            if carried_span(K, coords, mask).contains(h):
                return D
    raise ValueError("class is not carried by any vertex set")


def shortest_cycle_size_oracle(K: SimplicialComplex, z: Chain) -> int:
    """Fewest edges of a 1-cycle homologous to ``z``.

    Breadth-first search in the cover whose states are (vertex, class of
    the walk so far); a cheapest cycle is a union of closed walks, so the
    answer combines closed-walk lengths over splittings of the class.
    """
    if z.dim != 1:
        raise ValueError("only 1-cycles")
    coords = HomologyCoordinates(K, 1)
    target = coords.of(z)
    if target == 0:
        raise ValueError("cycle is bounding")
    n_masks = 1 << coords.betti
    verts = K.original_vertices
    if len(verts) * n_masks > MAX_STATES:
        raise TooLarge("covering graph too large")

    label = _edge_labels(K, coords)
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in verts}
    for e, (a, b) in enumerate(K.simplices[1]):
        if K.sealed[1][e]:
            continue
        adj[a].append((b, label[e]))
        adj[b].append((a, label[e]))

    walk = [None] * n_masks
    for v in verts:
        seen = {(v, 0): 0}
        queue = deque([(v, 0)])
        while queue:
            u, m = queue.popleft()
            du = seen[(u, m)]
            for w, lab in adj[u]:
                state = (w, m ^ lab)
                if state not in seen:
                    seen[state] = du + 1
                    queue.append(state)
        for m in range(1, n_masks):
            x = seen.get((v, m))
            if x is not None and (walk[m] is None or x < walk[m]):
                walk[m] = x

    best = list(walk)
    changed = True
    while changed:
        changed = False
        for h in range(1, n_masks):
            for h1 in range(1, n_masks):
                h2 = h ^ h1
                if h2 == 0 or best[h1] is None or best[h2] is None:
                    continue
                cand = best[h1] + best[h2]
                if best[h] is None or cand < best[h]:
                    best[h] = cand
                    changed = True
    return best[target]


def _edge_labels(K: SimplicialComplex, coords: HomologyCoordinates) -> list[int]:
    """Class of each edge's fundamental cycle over a BFS spanning forest."""
    parent_edge: dict[int, int | None] = {}
    for comp in K.components:
        root = comp[0]
        parent_edge[root] = None
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in K.adjacency[u]:
                if w not in parent_edge:
                    parent_edge[w] = K.index((min(u, w), max(u, w)))
                    queue.append(w)

    def path_bits(v):
        bits = 0
        while parent_edge[v] is not None:
            e = parent_edge[v]
            bits ^= 1 << e
            a, b = K.simplices[1][e]
            v = a if b == v else b
        return bits

    tree = {e for e in parent_edge.values() if e is not None}
    labels = []
    for e, (a, b) in enumerate(K.simplices[1]):
        if K.sealed[1][e] or e in tree:
            labels.append(0)
            continue
        labels.append(coords.of((1 << e) ^ path_bits(a) ^ path_bits(b)))
    return labels


def shortest_cycle_by_coset(K: SimplicialComplex, z: Chain) -> int:
    """Same quantity by walking the whole coset z + B_1 in Gray-code order."""
    gens = []
    span = Echelon()
    if K.dim >= 2:
        for facets in K.facets(2):
            b = indices_to_bits(facets)
            if span.add(b):
                gens.append(b)
    if len(gens) > MAX_CYCLE_DIM:
        raise TooLarge(f"coset has 2^{len(gens)} elements")
    cur = z.bits
    best = cur.bit_count() if cur else None
    for k in range(1, 1 << len(gens)):
        cur ^= gens[(k & -k).bit_length() - 1]
        if cur and (best is None or cur.bit_count() < best):
            best = cur.bit_count()
    return best


def carries_by_enumeration(K: SimplicialComplex, d: int, mask: list[list[bool]],
                           cap: int = 16) -> bool:
    """Enumerate every cycle inside the subcomplex and test each for bounding."""
    columns = [i for i, inside in enumerate(mask[d]) if inside]
    basis = _cycle_space_basis(K, d, columns)
    if len(basis) > cap:
        raise TooLarge(f"{len(basis)} carried cycle generators > {cap}")
    span = Echelon()
    if d + 1 <= K.dim:
        for facets in K.facets(d + 1):
            span.add(indices_to_bits(facets))
    for pick in range(1, 1 << len(basis)):
        bits = 0
        for k, z in enumerate(basis):
            if pick >> k & 1:
                bits ^= z
        if not span.contains(bits):
            return True
    return False


def require_nontrivial(coords: HomologyCoordinates):
    if coords.betti == 0:
        raise NoNontrivialClass(f"H_{coords.d} is trivial")
