"""Small named complexes with known homology, used by tests and ``homolocal oracle``."""

from __future__ import annotations

import itertools

from .complex import SimplicialComplex, build_complex


def hollow_triangle() -> SimplicialComplex:
    return build_complex([[0, 1], [0, 2], [1, 2]])


def filled_triangle() -> SimplicialComplex:
    return build_complex([[0, 1, 2]])


def cycle_graph(n: int) -> SimplicialComplex:
    return build_complex([[i, (i + 1) % n] for i in range(n)])


def pentagon() -> SimplicialComplex:
    return cycle_graph(5)


def wedge() -> SimplicialComplex:
    """Two hollow triangles glued at vertex 0."""
    return build_complex([[0, 1], [1, 2], [0, 2], [0, 3], [3, 4], [0, 4]])


def _grid_triangles(W: int, H: int, removed=frozenset(), wrap=False):
    """Triangles of a W x H grid of unit squares, each cut along the same diagonal."""
    if wrap:
        vid = lambda x, y: (y % H) * W + (x % W)
    else:
        vid = lambda x, y: y * (W + 1) + x
    tris = []
    for y in range(H):
        for x in range(W):
            if (x, y) in removed:
                continue
            a, b, c, d = vid(x, y), vid(x + 1, y), vid(x, y + 1), vid(x + 1, y + 1)
            tris.append([a, b, d])
            tris.append([a, c, d])
    return tris


def grid_disk(W: int = 4, H: int = 3) -> SimplicialComplex:
    return build_complex(_grid_triangles(W, H))


def grid_with_holes(W: int, H: int, holes) -> SimplicialComplex:
    """Grid disk minus rectangular blocks of cells ``(x, y, w, h)``."""
    removed = {(x, y) for x0, y0, w, h in holes
               for x in range(x0, x0 + w) for y in range(y0, y0 + h)}
    return build_complex(_grid_triangles(W, H, removed))


def two_hole_annulus() -> SimplicialComplex:
    """Disk with a one-cell hole and a two-by-two hole.

    Class sizes are 2 and 4, and the class winding around both holes has
    size 5, so an optimal basis must skip it.
    """
    return grid_with_holes(8, 5, [(1, 3, 1, 1), (5, 1, 2, 2)])


def octahedron() -> SimplicialComplex:
    """Boundary of the octahedron: poles 0 and 5 over the square 1-2-3-4."""
    ring = [1, 2, 3, 4]
    faces = []
    for pole in (0, 5):
        for a, b in zip(ring, ring[1:] + ring[:1]):
            faces.append([pole, a, b])
    return build_complex(faces)


def grid_torus(n: int, m: int | None = None) -> SimplicialComplex:
    """n x m periodic grid, every square cut along the same diagonal.

    Needs n, m >= 3 to be a simplicial complex.  The diagonal direction is
    symmetric in the two axes, so both handle classes have the same size.
    """
    m = n if m is None else m
    if n < 3 or m < 3:
        raise ValueError("grid torus needs both sides >= 3")
    return build_complex(_grid_triangles(n, m, wrap=True))


def torus_with_tail(n: int = 4, tail: int = 3) -> SimplicialComplex:
    """Grid torus with a dangling path hanging off vertex 0."""
    tris = _grid_triangles(n, n, wrap=True)
    base = n * n
    path = [0] + list(range(base, base + tail))
    return build_complex(tris + [[a, b] for a, b in itertools.pairwise(path)])


def tetra_ring(n: int = 10) -> SimplicialComplex:
    """Solid ring of tetrahedra {i, i+1, i+2, i+3} mod n; a thickened circle."""
    return build_complex([[(i + k) % n for k in range(4)] for i in range(n)])


def two_triangles() -> SimplicialComplex:
    """Two disjoint hollow triangles, for component handling."""
    return build_complex([[0, 1], [1, 2], [0, 2], [10, 11], [11, 12], [10, 12]])


# name -> (builder, dimensions with classes worth measuring)
SUITE = {
    "hollow_triangle": (hollow_triangle, (1,)),
    "pentagon": (pentagon, (1,)),
    "wedge": (wedge, (1,)),
    "two_hole_annulus": (two_hole_annulus, (1,)),
    "octahedron": (octahedron, (2,)),
    "torus_with_tail": (torus_with_tail, (1, 2)),
    "tetra_ring": (tetra_ring, (1,)),
}


def suite_complexes():
    for name, (build, dims) in SUITE.items():
        yield name, build(), dims
