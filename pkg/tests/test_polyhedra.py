"""Polyhedra: canonical forms, faces, complexes, refinement, triangulation."""

import random
from fractions import Fraction

from conftest import box, segment, simplex

from tropform.polyhedra import (
    EMPTY,
    Complex,
    all_faces,
    affine_image,
    complex_from_cells,
    faces,
    from_generators,
    from_halfspaces,
    intersect,
    refine,
    simplex_volume,
    triangulate,
    truncate,
    validate_complex,
)


def test_empty_and_point():
    p = from_halfspaces([((1,), Fraction(0)), ((-1,), Fraction(-1))], 1)
    assert p.is_empty
    pt = from_halfspaces([((1,), Fraction(2)), ((-1,), Fraction(-2))], 1)
    assert pt.dim == 0
    assert pt.vertices == ((Fraction(2),),)


def test_square_geometry():
    sq = box(2)
    assert sq.dim == 2
    assert len(sq.vertices) == 4
    assert sq.is_bounded
    assert len(faces(sq, 1)) == 4
    assert len(faces(sq, 2)) == 4
    assert faces(sq, 0) == [sq]


def test_canonical_identity_from_redundant_descriptions():
    a = box(2)
    extra = [((1, 1), Fraction(5))] + list(a.halfspaces)
    b = from_halfspaces(extra, 2)
    assert a.key() == b.key()
    assert a == b
    c = from_generators([(0, 0), (1, 0), (0, 1), (1, 1),
                         (Fraction(1, 2), Fraction(1, 2))], [], [], 2)
    assert c == a


def test_unbounded_cells():
    quad = from_halfspaces([((-1, 0), Fraction(0)), ((0, -1), Fraction(0))], 2)
    assert quad.dim == 2
    assert not quad.is_bounded
    assert len(quad.rays) == 2
    line = from_halfspaces([((0, 1), Fraction(0)), ((0, -1), Fraction(0))], 2)
    assert line.dim == 1
    assert len(line.lineality) == 1


def test_lower_dimensional_cell():
    diag = segment((0, 0), (2, 2))
    assert diag.dim == 1
    assert diag.direction_lattice.basis == ((1, 1),)
    assert len(diag.equalities) == 1


def test_contains_and_rel_interior():
    s = simplex(3)
    x = s.rel_interior_point()
    assert s.contains(x)
    assert not s.contains((2, 0, 0))
    for f in faces(s, 1):
        assert s.contains(f.rel_interior_point())


def test_intersect():
    quad = from_halfspaces([((-1, 0), Fraction(0)), ((0, -1), Fraction(0))], 2)
    window = box(2, -1, 1)
    assert intersect(quad, window) == box(2, 0, 1)
    assert intersect(box(2, 0, 1), box(2, 2, 3)).is_empty


def test_affine_image():
    sq = box(2)
    img = affine_image([[1, 0]], (Fraction(0),), sq)
    assert img == box(1, 0, 1)
    shear = affine_image([[1, 1], [0, 1]], (0, 0), sq)
    assert shear.dim == 2
    assert set(shear.vertices) == {(0, 0), (1, 0), (1, 1), (2, 1)}


def test_complex_face_closure_and_validation():
    sq = box(2)
    cx = complex_from_cells([sq])
    assert len(cx.cells_of_dim(1)) == 4
    assert len(cx.cells_of_dim(0)) == 4
    assert validate_complex(cx) == []
    # overlapping cells whose intersection is not a common face
    bad = Complex([box(2, 0, 2), box(2, 1, 3)])
    assert validate_complex(bad) != []


def test_refine_segments():
    c = complex_from_cells([segment((0,), (2,))])
    d = complex_from_cells([segment((0,), (1,)), segment((1,), (2,))])
    r = refine(c, d)
    assert validate_complex(r) == []
    tops = r.maximal_cells()
    assert sorted(cell.vertices for cell in tops) == \
        sorted([((Fraction(0),), (Fraction(1),)), ((Fraction(1),), (Fraction(2),))])


def test_truncate_quadrant():
    quad = from_halfspaces([((-1, 0), Fraction(0)), ((0, -1), Fraction(0))], 2)
    cx = complex_from_cells([quad])
    t = truncate(cx, box(2, -1, 1))
    assert validate_complex(t) == []
    assert t.maximal_cells() == [box(2, 0, 1)]


def test_triangulate_cube():
    cube = box(3)
    tets = triangulate(cube)
    assert len(tets) == 6
    total = sum(simplex_volume(t) for t in tets)
    assert total == 1


def test_triangulate_random_polytopes(seed=2):
    rng = random.Random(seed)
    for _ in range(10):
        pts = [tuple(Fraction(rng.randint(-3, 3)) for _ in range(2))
               for _ in range(6)]
        p = from_generators(pts, [], [], 2)
        if p.dim < 2:
            continue
        tris = triangulate(p)
        vol = sum(simplex_volume(t) for t in tris)
        assert vol > 0
        # each simplex sits inside p
        for t in tris:
            for v in t:
                assert p.contains(v)


def test_empty_marker():
    assert EMPTY.is_empty
    assert EMPTY.dim == -1
    assert all_faces(box(1)) is not None
