"""Short localized 1-cycles.

Sorting the ball's edges by (filter value, smaller endpoint value) before
the reduction makes every edge used to reduce a column a "lower" edge, one
whose endpoints sit at consecutive distances from the centre.  The
resulting cycle is one closing edge plus two descending paths, so it has
at most 2r + 1 edges.
"""

from __future__ import annotations

from .complex import INF, Chain, SimplicialComplex, geodesic_ball, geodesic_filter
from .errors import InternalInconsistency
from .measure import boundary_echelon
from .z2 import Echelon, bits_to_indices, reduce_bitcols


def edge_sort_key(K: SimplicialComplex, f):
    vv = f.vertex_values
    ev = f.simplex_values[1]

    def key(e):
        a, b = K.simplices[1][e]
        return (ev[e], min(vv[a], vv[b]), e)

    return key


def localized_cycle_1d(K: SimplicialComplex, p_min: int, r_min: int,
                       boundary_span: Echelon | None = None) -> Chain:
    f = geodesic_filter(K, p_min)
    mask = geodesic_ball(K, f, r_min)
    edges = sorted((e for e, inside in enumerate(mask[1]) if inside), key=edge_sort_key(K, f))
    vv = f.vertex_values
    # rows ascend by distance so that "low" is the endpoint farther out
    row_order = sorted((v for v, inside in enumerate(mask[0]) if inside),
                       key=lambda v: (vv[v], v))
    span = boundary_span if boundary_span is not None else boundary_echelon(K, 1)
    z = _first_nonbounding_sorted(K, edges, row_order, span)
    if z is None:
        raise InternalInconsistency(f"ball ({p_min}, {r_min}) carries no nonbounding 1-cycle")
    return Chain.from_bits(1, z)


def _first_nonbounding_sorted(K, edges, row_order, span):
    row_pos = {v: k for k, v in enumerate(row_order)}
    cols = []
    for e in edges:
        a, b = K.simplices[1][e]
        cols.append((1 << row_pos[a]) | (1 << row_pos[b]))
    _, V, low = reduce_bitcols(cols)
    for c, lo in enumerate(low):
        if lo is not None:
            continue
        z = 0
        for k in bits_to_indices(V[c]):
            z |= 1 << edges[k]
        if not span.contains(z):
            return z
    return None


def is_lower_edge(K: SimplicialComplex, f, e: int) -> bool:
    a, b = K.simplices[1][e]
    va, vb = f.vertex_values[a], f.vertex_values[b]
    return va is not INF and vb is not INF and va != vb
