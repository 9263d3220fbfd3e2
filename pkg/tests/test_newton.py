import pytest

from wlysing.errors import ResourceCapExceeded
from wlysing.local_algebra import milnor_number
from wlysing.newton import (
    face_function,
    is_convenient,
    is_newton_nondegenerate,
    nd_check_2face,
    nd_check_edge,
    newton_number_2d,
    newton_number_3d,
    newton_number_stabilized,
    newton_polyhedron,
)
from wlysing.poly import parse


def P2(text):
    return parse(text, ("x", "y"))


def test_segment():
    poly = newton_polyhedron(P2("x^2+y^3"))
    assert set(poly.vertices) == {(2, 0), (0, 3)}
    (edge,) = poly.faces_of_dim(1)
    assert edge.covector == (3, 2) and edge.d_value == 6 and edge.lattice_volume == 1


def test_triangle_lattice_area():
    poly = newton_polyhedron(parse("x^2+y^2+z^2"))
    (tri,) = poly.faces_of_dim(2)
    assert tri.covector == (1, 1, 1) and tri.d_value == 2 and tri.lattice_volume == 2


def test_noncompact_case_has_no_compact_two_face():
    f = parse("u^4*v*w + u^5", ("u", "v", "w"))
    poly = newton_polyhedron(f)
    assert len(poly.faces_of_dim(0)) == 2
    assert len(poly.faces_of_dim(1)) == 1
    assert poly.faces_of_dim(2) == []


def test_face_functions():
    f = P2("x^2+y^3+x*y")
    edge = newton_polyhedron(P2("x^2+y^3")).faces_of_dim(1)[0]
    assert face_function(f, edge) == P2("x^2+y^3")
    g = parse("x^2+y^2+z^2")
    assert face_function(g, newton_polyhedron(g).faces_of_dim(2)[0]) == g
    h = parse("x^4+y^5+z^10")
    vertex = [v for v in newton_polyhedron(h).faces_of_dim(0) if v.vertices == ((4, 0, 0),)][0]
    assert face_function(h, vertex) == parse("x^4")


def test_convenience():
    assert is_convenient(P2("x^2+y^3"))
    assert not is_convenient(P2("x^3+x*y^3"))
    assert is_convenient(parse("x^2+y^2+z^2"))


@pytest.mark.parametrize("text,nu", [("x^2+y^3", 2), ("x^3+y^4", 6), ("x^3+x*y+y^3", 1)])
def test_newton_number_2d(text, nu):
    assert newton_number_2d(P2(text)) == nu


@pytest.mark.parametrize("text,nu", [("x^2+y^2+z^2", 1), ("x^2+y^3+z^6", 10)])
def test_newton_number_3d(text, nu):
    f = parse(text)
    assert newton_number_3d(f) == nu == milnor_number(f)


def test_stabilized():
    assert newton_number_stabilized(P2("x^3+x*y^3")) == 7 == milnor_number(P2("x^3+x*y^3"))
    assert newton_number_stabilized(P2("x^2+y^3")) == 2
    # x^2*y + x*y^2 = xy(x + y) is D4 and isolated; x^2*y is not
    assert newton_number_stabilized(P2("x^2*y+x*y^2")) == 4 == milnor_number(P2("x^2*y+x*y^2"))
    with pytest.raises(ResourceCapExceeded):
        newton_number_stabilized(P2("x^2*y"), n_cap=40)


def test_edge_nondegeneracy():
    f = P2("x^2+y^3")
    assert nd_check_edge(f, newton_polyhedron(f).faces_of_dim(1)[0])
    g = P2("(x+y)^2")
    assert not nd_check_edge(g, newton_polyhedron(g).faces_of_dim(1)[0])
    h = P2("x^4+y^6")
    edge = newton_polyhedron(h).faces_of_dim(1)[0]
    assert edge.lattice_volume == 2 and nd_check_edge(h, edge)


def test_two_face_nondegeneracy(quartic):
    f = parse("x^2+y^2+z^2")
    assert nd_check_2face(f, newton_polyhedron(f).faces_of_dim(2)[0])
    g = parse("(x+y+z)^2")
    assert not nd_check_2face(g, newton_polyhedron(g).faces_of_dim(2)[0])
    delta = newton_polyhedron(quartic).faces_of_dim(2)[0]
    assert not nd_check_2face(quartic, delta)
    assert is_newton_nondegenerate(quartic, proper_only_of=delta)
    assert not is_newton_nondegenerate(quartic)


def test_serialization_is_exact():
    d = newton_polyhedron(parse("x^2+y^3+z^6")).to_dict()
    assert all(isinstance(face["lattice_volume"], (int, str)) for face in d["faces"])
    assert all(isinstance(v, int) for face in d["faces"] for v in face["covector"])
