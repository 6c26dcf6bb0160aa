import json
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from spernerlab import complex as cx
from spernerlab.complex import Triangulation, boundary_complex, check_antipodal_symmetry, validate_triangulation
from spernerlab.generators import barycentric_subdivide, cross_standard, freudenthal_cube, generate, grid_simplex
from spernerlab.geometry import Kind, Polytope

CROSS2 = Polytope(Kind.CROSS, 2)


def _subdivided_cross2():
    """cross:2 with the edge [e1, e2] split at its midpoint on one side only."""
    coords = {0: (0, 0), 1: (1, 0), 2: (0, 1), 3: (-1, 0), 4: (0, -1), 5: (F(1, 2), F(1, 2))}
    tris = [(0, 1, 5), (0, 2, 5), (0, 2, 3), (0, 3, 4), (0, 1, 4)]
    return Triangulation.from_maximal(coords, tris, CROSS2)


def test_faces_and_closure():
    assert set(cx.faces((1, 2, 3), 1)) == {(1, 2), (1, 3), (2, 3)}
    assert cx.closure([(0, 1, 2)]) == {(0,), (1,), (2,), (0, 1), (0, 2), (1, 2), (0, 1, 2)}


def test_cross_standard_is_valid():
    assert validate_triangulation(cross_standard(2)).ok


def test_overlap_is_an_intersection_violation():
    T = Triangulation.from_maximal({0: (0,), 1: (1,), 2: (F(-1, 2),), 3: (F(1, 2),)},
                                   [(0, 1), (2, 3)])
    assert cx.INTERSECTION in validate_triangulation(T).kinds()


def test_missing_edge_is_a_face_closure_violation():
    T = Triangulation({0: (0, 0), 1: (1, 0), 2: (0, 1)},
                      [(0,), (1,), (2,), (0, 1), (1, 2), (0, 1, 2)])
    assert validate_triangulation(T).kinds() == {cx.FACE_CLOSURE}


def test_missing_triangle_breaks_coverage():
    T = cross_standard(2)
    T2 = Triangulation.from_maximal(T.coords, T.maximal[1:], T.domain)
    report = validate_triangulation(T2)
    assert cx.COVERAGE in report.kinds()


def test_degenerate_and_duplicate_vertices():
    T = Triangulation.from_maximal({0: (0, 0), 1: (1, 1), 2: (2, 2)}, [(0, 1, 2)])
    assert cx.DEGENERATE in validate_triangulation(T).kinds()
    T = Triangulation.from_maximal({0: (0, 0), 1: (1, 0), 2: (0, 1), 3: (1, 0)},
                                   [(0, 1, 2), (0, 2, 3)])
    assert cx.DUPLICATE_VERTEX in validate_triangulation(T).kinds()


def test_vertex_outside_domain():
    T = Triangulation.from_maximal({0: (0, 0), 1: (2, 0), 2: (0, 1)}, [(0, 1, 2)], CROSS2)
    assert not validate_triangulation(T).ok


@settings(max_examples=30, deadline=None)
@given(st.sets(st.integers(0, 23), max_size=23))
def test_dropping_maximal_simplices_breaks_coverage_exactly_when_nonempty(drop):
    T = barycentric_subdivide(cross_standard(2))
    keep = [s for i, s in enumerate(T.maximal) if i not in drop]
    report = validate_triangulation(Triangulation.from_maximal(T.coords, keep, T.domain),
                                    check_pairs=False)
    assert report.ok == (not drop)


def test_boundary_examples():
    Tb = boundary_complex(cross_standard(2))
    assert len(Tb.edges) == 4 and len(Tb.vertices) == 4
    assert {tuple(sorted(map(tuple, Tb.points(e)))) for e in Tb.edges} == {
        ((-1, 0), (0, -1)), ((-1, 0), (0, 1)), ((0, -1), (1, 0)), ((0, 1), (1, 0))}
    Tb = boundary_complex(freudenthal_cube(2, 1))
    assert len(Tb.vertices) == 4 and len(Tb.edges) == 4
    Tb = boundary_complex(grid_simplex(2, 1))
    assert len(Tb.vertices) == 3 and len(Tb.edges) == 3 and Tb.dimension == 1


def test_boundary_complex_counts_on_refinements():
    # a k-grid on the square has 4k boundary edges
    for k in (1, 2, 3):
        assert len(boundary_complex(freudenthal_cube(2, k)).edges) == 4 * k
    # one barycentric round splits each of the 8 boundary triangles of the octahedron into 6
    assert len(boundary_complex(generate("bary(cross:3,rounds=1)")).maximal) == 48


def test_boundary_needs_domain():
    T = Triangulation.from_maximal({0: (0, 0), 1: (1, 0), 2: (0, 1)}, [(0, 1, 2)])
    with pytest.raises(ValueError):
        boundary_complex(T)


def test_boundary_of_boundary_is_face_closed():
    Tb = boundary_complex(generate("cross:3"))
    assert all(f in Tb.simplices for s in Tb.simplices for f in cx.faces(s) if f)


def test_antipodal_symmetry_examples():
    for n in (1, 2, 3):
        assert check_antipodal_symmetry(boundary_complex(cross_standard(n))).ok
    assert not check_antipodal_symmetry(boundary_complex(_subdivided_cross2())).ok
    assert check_antipodal_symmetry(boundary_complex(barycentric_subdivide(cross_standard(3)))).ok


def test_subdivided_example_is_still_a_triangulation():
    assert validate_triangulation(_subdivided_cross2()).ok


def test_antipodal_symmetry_unsupported_on_simplex():
    report = check_antipodal_symmetry(boundary_complex(grid_simplex(2, 1)))
    assert not report.ok and cx.UNSUPPORTED in report.kinds()


def test_json_round_trip():
    T = generate("bary(cube:2:k=1,rounds=1)")
    data = json.loads(json.dumps(cx.triangulation_to_json(T)))
    assert data["dim"] == 2
    assert data["domain"]["kind"] == "CUBE" and data["domain"]["scale"] == "1/1"
    assert all(isinstance(c, str) and "/" in c for v in data["vertices"] for c in v["coords"])
    back = cx.triangulation_from_json(data)
    assert back.coords == T.coords
    assert back.simplices == T.simplices
    assert back.domain == T.domain


def test_report_json_and_ok():
    report = cx.ValidationReport()
    assert report.ok
    report.add(cx.COVERAGE, (0, 1), detail="x")
    assert not report.ok
    assert report.to_json()["ok"] is False


def test_negation_helpers():
    T = cross_standard(2)
    idx = T.index
    e1, m1 = idx[(1, 0)], idx[(-1, 0)]
    assert T.negate_vertex(e1) == m1
    assert T.negate_vertex(idx[(0, 0)]) == idx[(0, 0)]
    T2 = _subdivided_cross2()
    assert T2.negate_vertex(5) is None
