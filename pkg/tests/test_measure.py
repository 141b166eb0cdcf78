import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homolocal.complex import (
    Chain,
    build_complex,
    geodesic_ball,
    geodesic_filter,
    is_cycle,
)
from homolocal.errors import NoNontrivialClass
from homolocal.measure import (
    Diagnostics,
    bmin_improved,
    bmin_naive,
    boundary_echelon,
    contains_nonbounding,
    localized_cycle,
    measure_smallest,
    precompute_basis_cycles,
)
from homolocal.oracle import (
    HomologyCoordinates,
    carried_span,
    carries_by_enumeration,
    radius,
)
from homolocal.suite import (
    filled_triangle,
    hollow_triangle,
    octahedron,
    pentagon,
    suite_complexes,
    torus_with_tail,
    two_hole_annulus,
    two_triangles,
    wedge,
)


def full_subcomplex_mask(K, keep):
    return [[set(s) <= keep for s in level] for level in K.simplices]


def test_basis_cycles_examples():
    H = precompute_basis_cycles(hollow_triangle(), 1)
    assert [z.simplices for z in H.cycles] == [(0, 1, 2)]
    assert len(precompute_basis_cycles(filled_triangle(), 1)) == 0
    W = wedge()
    B = precompute_basis_cycles(W, 1)
    assert len(B) == 2
    assert all(is_cycle(W, z) for z in B.cycles)
    assert HomologyCoordinates(W, 1).of(B.cycles[0]) != HomologyCoordinates(W, 1).of(B.cycles[1])


def test_basis_cycles_are_independent_on_suite():
    for _, K, dims in suite_complexes():
        for d in dims:
            H = precompute_basis_cycles(K, d)
            span = boundary_echelon(K, d)
            assert all(span.add(z.bits) for z in H.cycles)


def test_bmin_naive_examples():
    assert bmin_naive(hollow_triangle(), 1) == (0, 1)
    assert bmin_naive(two_hole_annulus(), 1)[1] == 2
    with pytest.raises(NoNontrivialClass):
        bmin_naive(filled_triangle(), 1)
    with pytest.raises(ValueError):
        bmin_naive(hollow_triangle(), 0)


def test_bmin_naive_threads_do_not_matter():
    K = two_hole_annulus()
    assert bmin_naive(K, 1, threads=4) == bmin_naive(K, 1, threads=1)


def test_carriage_trivial_cases():
    K = hollow_triangle()
    H = precompute_basis_cycles(K, 1)
    empty = [[False] * K.n(d) for d in range(K.dim + 1)]
    everything = [[True] * K.n(d) for d in range(K.dim + 1)]
    for method in ("randomized", "dense"):
        assert not contains_nonbounding(K, empty, H, method=method)
        assert contains_nonbounding(K, everything, H, method=method)
    with pytest.raises(ValueError):
        contains_nonbounding(K, everything, H, method="magic")


def test_carriage_on_torus_with_tail():
    K = torus_with_tail()
    H = precompute_basis_cycles(K, 1)
    coords = HomologyCoordinates(K, 1)
    f = geodesic_filter(K, K.vertex(18))  # far end of the tail
    patch = geodesic_ball(K, f, 4)  # tail plus the star of the attaching vertex
    assert sum(patch[0]) == 10
    assert not carries_by_enumeration(K, 1, patch)
    assert not contains_nonbounding(K, patch, H, seed=5)
    around = geodesic_ball(K, f, 5)
    assert len(carried_span(K, coords, around[1])) == 2
    assert contains_nonbounding(K, around, H, seed=5)


small_tops = st.lists(
    st.lists(st.integers(0, 6), min_size=2, max_size=3, unique=True), min_size=1, max_size=9
)


@settings(max_examples=80, deadline=None)
@given(small_tops, st.data())
def test_carriage_soundness_on_small_complexes(tops, data):
    K = build_complex(tops)
    for d in (1, 2):
        if d > K.dim or K.n(d) > 16:
            continue
        H = precompute_basis_cycles(K, d)
        if not len(H):
            continue
        keep = set(data.draw(st.lists(st.integers(0, K.n_vertices - 1), unique=True)))
        mask = full_subcomplex_mask(K, keep)
        truth = carries_by_enumeration(K, d, mask)
        seed = data.draw(st.integers(0, 2**32))
        assert contains_nonbounding(K, mask, H, seed, method="randomized") == truth
        assert contains_nonbounding(K, mask, H, method="dense") == truth


@pytest.mark.parametrize("build, d, r", [
    (hollow_triangle, 1, 1), (two_hole_annulus, 1, 2), (octahedron, 2, 2), (pentagon, 1, 2),
])
def test_bmin_improved_examples(build, d, r):
    K = build()
    assert bmin_improved(K, d)[1] == r == bmin_naive(K, d)[1]


def test_improved_randomized_path_matches():
    K = two_hole_annulus()
    diag = Diagnostics()
    _p, r = bmin_improved(K, 1, seed=3, method="randomized", diagnostics=diag)
    assert r == 2
    assert diag.carriage_tests > 0 and diag.unresolved == 0


def test_improved_with_a_single_trial_stays_correct():
    # weak sketches get rechecked and escalated rather than trusted
    K = two_hole_annulus()
    diag = Diagnostics()
    assert bmin_improved(K, 1, seed=11, method="randomized", trials=1, diagnostics=diag)[1] == 2
    assert diag.rank_rechecks > 0


def test_components_are_handled_separately():
    K = two_triangles()
    assert bmin_naive(K, 1) == bmin_improved(K, 1) == (0, 1)
    # a component with no class does not stop the search
    K = build_complex([[0, 1, 2], [5, 6], [6, 7], [5, 7], [7, 8]])
    assert bmin_improved(K, 1)[1] == bmin_naive(K, 1)[1] == 1


def test_localized_cycle_examples():
    H = hollow_triangle()
    assert localized_cycle(H, 1, 0, 1).simplices == (0, 1, 2)

    O = octahedron()
    z = localized_cycle(O, 2, 0, 2)
    assert len(z) == 8

    A = two_hole_annulus()
    p, r = bmin_naive(A, 1)
    z = localized_cycle(A, 1, p, r)
    coords = HomologyCoordinates(A, 1)
    assert is_cycle(A, z) and coords.of(z) != 0
    mask = geodesic_ball(A, geodesic_filter(A, p), r)
    assert all(mask[1][i] for i in z.simplices)
    assert radius(A, z) <= 2


def test_measure_smallest_examples():
    m = measure_smallest(hollow_triangle(), 1)
    assert (m.size, len(m.cycle)) == (1, 3)
    assert measure_smallest(two_hole_annulus(), 1, "naive").size == 2
    with pytest.raises(ValueError):
        measure_smallest(hollow_triangle(), 1, mode="fast")
    with pytest.raises(NoNontrivialClass):
        measure_smallest(filled_triangle(), 1)


def test_measurement_invariants_on_suite():
    for _, K, dims in suite_complexes():
        for d in dims:
            naive = measure_smallest(K, d, "naive")
            improved = measure_smallest(K, d, "improved", seed=9)
            assert naive.size == improved.size >= 1
            for m in (naive, improved):
                mask = geodesic_ball(K, geodesic_filter(K, m.center), m.size)
                assert all(mask[d][i] for i in m.cycle.simplices)
                assert is_cycle(K, m.cycle)
                assert not boundary_echelon(K, d).contains(m.cycle.bits)
                assert radius(K, m.cycle) <= m.size


def test_chain_dimension_of_result():
    m = measure_smallest(octahedron(), 2)
    assert isinstance(m.cycle, Chain) and m.cycle.dim == 2
