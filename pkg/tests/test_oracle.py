"""The brute-force oracles checked against each other and against hand counts."""

import pytest

from homolocal.complex import Chain, build_complex, geodesic_ball, geodesic_filter
from homolocal.errors import TooLarge
from homolocal.measure import contains_nonbounding, precompute_basis_cycles
from homolocal.oracle import (
    HomologyCoordinates,
    brute_optimal_basis,
    brute_size,
    carried_span,
    class_sizes,
    diameter,
    enumerate_cycles,
    localized_representative,
    min_diameter,
    radius,
    shortest_cycle_by_coset,
    shortest_cycle_size_oracle,
)
from homolocal.suite import (
    filled_triangle,
    grid_torus,
    hollow_triangle,
    octahedron,
    pentagon,
    tetra_ring,
    torus_with_tail,
    two_hole_annulus,
    wedge,
)


@pytest.mark.parametrize("build, count", [(hollow_triangle, 2), (wedge, 4), (filled_triangle, 2)])
def test_enumerate_cycles(build, count):
    K = build()
    cycles = enumerate_cycles(K, 1)
    assert len(cycles) == count
    assert len({c.simplices for c in cycles}) == count


def test_enumeration_cap():
    with pytest.raises(TooLarge):
        enumerate_cycles(grid_torus(5), 1)  # cycle space of dimension 26


def test_brute_sizes():
    H = hollow_triangle()
    assert brute_size(H, 1, Chain(1, (0, 1, 2))) == 1
    P = pentagon()
    assert brute_size(P, 1, Chain(1, tuple(range(5)))) == 2
    with pytest.raises(ValueError):
        brute_size(filled_triangle(), 1, Chain(1, (0, 1, 2)))


def test_annulus_class_sizes():
    K = two_hole_annulus()
    sizes = sorted(class_sizes(K, 1).values())
    assert sizes == [2, 4, 5]
    assert max(sizes) > 4


@pytest.mark.parametrize("build, d, expected", [
    (hollow_triangle, 1, [1]),
    (wedge, 1, [1, 1]),
    (two_hole_annulus, 1, [2, 4]),
    (octahedron, 2, [2]),
    (torus_with_tail, 1, [2, 2]),
    (torus_with_tail, 2, [2]),
    (tetra_ring, 1, [2]),
    (filled_triangle, 1, []),
])
def test_brute_optimal_basis(build, d, expected):
    assert brute_optimal_basis(build(), d) == expected


def test_betti_cap():
    # five disjoint loops
    tops = [[3 * k + a, 3 * k + b] for k in range(5) for a, b in ((0, 1), (1, 2), (0, 2))]
    with pytest.raises(TooLarge):
        brute_optimal_basis(build_complex(tops), 1)


def test_coordinates_are_a_basis():
    K = wedge()
    c = HomologyCoordinates(K, 1)
    assert c.betti == 2
    masks = {c.of(z) for z in enumerate_cycles(K, 1)}
    assert masks == {0, 1, 2, 3}
    with pytest.raises(ValueError):
        c.of(Chain(1, (0,)))


@pytest.mark.parametrize("build, expected", [
    (hollow_triangle, {1: 3}),
    (pentagon, {1: 5}),
    (wedge, {1: 3, 2: 3, 3: 6}),
    (lambda: grid_torus(3), {1: 3, 2: 3, 3: 3}),
    (tetra_ring, {1: 4}),
])
def test_shortest_cycle_two_ways(build, expected):
    K = build()
    c = HomologyCoordinates(K, 1)
    got = {}
    for h in c.classes():
        z = c.representative(h)
        got[h] = shortest_cycle_size_oracle(K, z)
        assert got[h] == shortest_cycle_by_coset(K, z)
    assert got == expected


def test_shortest_cycle_on_larger_complexes():
    K = two_hole_annulus()
    c = HomologyCoordinates(K, 1)
    got = sorted(shortest_cycle_size_oracle(K, c.representative(h)) for h in c.classes())
    assert got == [4, 8, 12]
    T = torus_with_tail()
    c = HomologyCoordinates(T, 1)
    assert [shortest_cycle_size_oracle(T, c.representative(h)) for h in c.classes()] == [4, 4, 4]
    with pytest.raises(TooLarge):
        shortest_cycle_by_coset(T, c.representative(1))


def test_radius_and_diameter():
    P = pentagon()
    loop = Chain(1, tuple(range(5)))
    assert radius(P, loop) == 2
    assert diameter(P, loop) == 2
    assert min_diameter(P, 1, 1) == 2
    W = wedge()
    c = HomologyCoordinates(W, 1)
    assert [min_diameter(W, 1, h, c) for h in c.classes()] == [1, 1, 2]


def test_min_diameter_lower_bounds_every_representative():
    K = wedge()
    c = HomologyCoordinates(K, 1)
    for z in enumerate_cycles(K, 1):
        h = c.of(z)
        if h:
            assert diameter(K, z) >= min_diameter(K, 1, h, c)


@pytest.mark.parametrize("build, d", [
    (hollow_triangle, 1), (pentagon, 1), (wedge, 1), (octahedron, 2), (tetra_ring, 1),
])
def test_ball_carriage_agrees_with_rank_test(build, d):
    """Carried span nonzero exactly when the relative rank test says so."""
    K = build()
    c = HomologyCoordinates(K, d)
    H = precompute_basis_cycles(K, d)
    for p in K.original_vertices:
        f = geodesic_filter(K, p)
        for r in range(4):
            mask = geodesic_ball(K, f, r)
            carried = len(carried_span(K, c, mask[d])) > 0
            assert carried == contains_nonbounding(K, mask, H, method="dense")


def test_localized_representative():
    K = two_hole_annulus()
    c = HomologyCoordinates(K, 1)
    sizes = class_sizes(K, 1, c)
    for h in c.classes():
        p, z = localized_representative(K, c, h)
        assert c.of(z) == h
        mask = geodesic_ball(K, geodesic_filter(K, p), sizes[h])[1]
        assert all(mask[i] for i in z.simplices)
    with pytest.raises(ValueError):
        localized_representative(K, c, 3, size=1)
