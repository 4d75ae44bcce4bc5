import random
from itertools import combinations

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from mixedjoin.newton import (
    Budget,
    check_strong_nondegeneracy,
    compact_faces,
    criticality_residual,
    face_function,
    is_convenient,
    newton_polytope,
    polytope_from_points,
)
from mixedjoin.polyparse import MixedPolynomial, multiply, parse

F1 = "(z1 + z2)*(z1 + 2*z2)*conj(z1 + 3*z2)"


def faces_of(src):
    return compact_faces(newton_polytope(parse(src)))


def test_vertices_examples():
    assert newton_polytope(parse("z1^2 + zb2^2")).vertices == ((0, 2), (2, 0))
    np_ = newton_polytope(parse(F1))
    assert np_.vertices == ((0, 3), (3, 0))
    assert set(np_.generators) == {(0, 3), (1, 2), (2, 1), (3, 0)}
    assert newton_polytope(parse("z1*zb1")).vertices == ((2,),)


def test_zero_polynomial_rejected():
    with pytest.raises(ValueError):
        newton_polytope(MixedPolynomial.zero(2))


def test_segment_faces():
    faces = faces_of("z1^2 + zb2^2")
    assert [(f.normal, f.points, f.dim) for f in faces] == [
        ((1, 1), ((0, 2), (2, 0)), 1),
        ((2, 1), ((0, 2),), 0),
        ((1, 2), ((2, 0),), 0),
    ]


def test_single_vertex_n1():
    faces = faces_of("z1*zb1")
    assert len(faces) == 1 and faces[0].dim == 0


def test_collinear_generators_share_the_face():
    top = faces_of(F1)[0]
    assert top.dim == 1 and len(top.points) == 4


def test_dominated_generators_are_not_on_faces():
    faces = faces_of("z1^3 + zb2^3 + z1^2*z2 + z1*z2")
    assert all((2, 1) not in f.points for f in faces)
    assert {f.points for f in faces if f.dim == 1} == {((0, 3), (1, 1)), ((1, 1), (3, 0))}


def test_three_variable_brieskorn_faces():
    faces = faces_of("z1^2 + z2^3 + z3^5")
    assert [f.dim for f in faces] == [2, 1, 1, 1, 0, 0, 0]
    assert faces[0].normal == (15, 10, 6)


def test_noncompact_faces_excluded():
    # z1 z2: the only compact face is the vertex (1, 1)
    faces = faces_of("z1*z2")
    assert [(f.points, f.dim) for f in faces] == [(((1, 1),), 0)]


def test_face_function_examples():
    p = parse("z1^2 + zb2^2 + z1^2*z2")
    seg, v1, v2 = compact_faces(newton_polytope(p))
    assert face_function(p, seg) == parse("z1^2 + zb2^2")
    assert face_function(p, v2) == parse("z1^2", 2)
    f1 = parse(F1)
    assert face_function(f1, compact_faces(newton_polytope(f1))[0]) == f1
    with pytest.raises(ValueError):
        face_function(parse("z1^3 + z2^3"), seg)


def test_is_convenient():
    assert is_convenient(parse("z1^2 + zb2^2"))
    assert not is_convenient(parse("z1*z2"))
    assert is_convenient(parse("z1^2 + z2^3 + z3^7"))
    assert not is_convenient(parse("z1^2 + z1*z2"))


def test_monomial_rule():
    (r,) = check_strong_nondegeneracy(parse("z1*zb1"))
    assert r.verdict == "DegenerateWitness" and r.method == "exact-monomial"
    assert r.residual < 1e-8 and all(w != 0 for w in r.witness)
    (r,) = check_strong_nondegeneracy(parse("z1^3"))
    assert r.verdict == "ExactlyNondegenerate"
    (r,) = check_strong_nondegeneracy(parse("z1^2*zb1"))
    assert r.verdict == "ExactlyNondegenerate"


def test_mixed_monomial_with_equal_total_degrees_is_regular():
    # z1 * zb2 has as many z's as zb's yet its real Jacobian has rank 2 everywhere
    p = parse("z1*zb2")
    assert criticality_residual(p, [0.3 + 1j, -2 + 0.5j]) > 0.1
    (r,) = check_strong_nondegeneracy(p)
    assert r.verdict == "ExactlyNondegenerate"


def test_residual_is_zero_on_critical_points():
    assert criticality_residual(parse("(z1 + z2)^2"), [1, -1]) < 1e-15
    assert criticality_residual(parse("z1*zb1 - z2*zb2"), [1, 1j]) < 1e-15
    assert criticality_residual(parse("z1^2 + zb2^2"), [1, 1j]) > 0.1
    with pytest.raises(ValueError):
        criticality_residual(parse("z1 + z2"), [1, 0])


def test_join_building_blocks_nondegenerate():
    for src in ("z1^2 + zb2^2", "z1^2 + z2^3 + z3^4", F1):
        reports = check_strong_nondegeneracy(parse(src), seed=0)
        assert {r.verdict for r in reports} <= {"ExactlyNondegenerate", "NoWitnessFound"}


def test_numeric_witnesses_found():
    for src in ("(z1 + z2)^2", "z1*zb1 - z2*zb2 + z1^3", "z1^2*zb1 + z1*zb1^2 + z1^3 + zb1^3"):
        reports = check_strong_nondegeneracy(parse(src), seed=0)
        top = reports[0]
        assert top.verdict == "DegenerateWitness", src
        assert top.residual < 1e-8
        assert criticality_residual(face_function(parse(src), top.face), top.witness) < 1e-8


def test_witness_survives_scaling():
    p = parse("(z1 + z2)^2")
    (top, *_) = check_strong_nondegeneracy(p, seed=1)
    assert criticality_residual(p * 5, top.witness) < 1e-8
    assert criticality_residual(p * parse("1+2i", 2), top.witness) < 1e-8


def test_reports_are_deterministic_and_labelled():
    p = parse("z1^2 + zb2^2 + z1*z2^5")
    a = [r.to_json() for r in check_strong_nondegeneracy(p, seed=7)]
    b = [r.to_json() for r in check_strong_nondegeneracy(p, seed=7)]
    assert a == b
    probabilistic = [r for r in a if r["verdict"] == "NoWitnessFound"]
    assert probabilistic and all("probabilistic" in r["note"] for r in probabilistic)


def test_budget_validation():
    with pytest.raises(ValueError):
        Budget(samples=0)
    with pytest.raises(ValueError):
        check_strong_nondegeneracy(MixedPolynomial.zero(1))


def test_surjectivity_is_advisory():
    (top, *_) = check_strong_nondegeneracy(parse("z1^2 + zb2^2"))
    assert top.surjectivity["advisory"] is True
    assert top.surjectivity["targets"] == 8
    assert top.verdict == "NoWitnessFound"


# -- properties ---------------------------------------------------------------


def in_gamma_plus(point, vertices):
    """Exact LP feasibility: is point in conv(vertices) + R^n_+ ?

    Standard form: sum l_i (v_i, 1) + sum s_j (e_j, 0) = (point, 1) with
    l, s >= 0.  A feasible system has a basic feasible solution, so trying
    every square column basis with exact rational solves decides it.
    """
    n = len(point)
    cols = [list(v) + [1] for v in vertices] + [[int(i == j) for i in range(n)] + [0] for j in range(n)]
    rhs = sympy.Matrix(list(point) + [1])
    for basis in combinations(range(len(cols)), n + 1):
        a = sympy.Matrix([[cols[c][r] for c in basis] for r in range(n + 1)])
        if a.det() == 0:
            continue
        x = a.LUsolve(rhs)
        if all(v >= 0 for v in x):
            return True
    return False


@st.composite
def point_sets(draw, max_n=3):
    n = draw(st.integers(1, max_n))
    pts = draw(st.lists(st.tuples(*[st.integers(0, 4)] * n), min_size=1, max_size=6))
    return n, pts


@settings(max_examples=40)
@given(point_sets())
def test_generators_lie_in_gamma_plus(data):
    n, pts = data
    np_ = polytope_from_points(n, pts)
    verts = list(np_.vertices)
    for g in np_.generators:
        assert in_gamma_plus(g, verts)
    for v in verts:
        others = [w for w in verts if w != v]
        assert not others or not in_gamma_plus(v, others)


@given(point_sets())
def test_face_points_share_minimal_weight(data):
    n, pts = data
    np_ = polytope_from_points(n, pts)
    for f in compact_faces(np_):
        assert all(w > 0 for w in f.normal)
        values = [sum(a * b for a, b in zip(f.normal, g)) for g in np_.generators]
        assert {sum(a * b for a, b in zip(f.normal, p)) for p in f.points} == {min(values)}
    assert {f.points[0] for f in compact_faces(np_) if f.dim == 0} == set(np_.vertices)


def test_minkowski_sum_of_random_products():
    rng = random.Random(5)
    for _ in range(20):
        n = rng.randint(1, 3)

        def rand_poly():
            terms = []
            for _ in range(rng.randint(1, 4)):
                nu = tuple(rng.randint(0, 2) for _ in range(n))
                mu = tuple(rng.randint(0, 2) for _ in range(n))
                terms.append(((nu, mu), rng.randint(1, 97)))
            return MixedPolynomial(n, terms)

        p, q = rand_poly(), rand_poly()
        pq = multiply(p, q)
        sums = {tuple(a + b for a, b in zip(g, h)) for g in p.radial_exponents() for h in q.radial_exponents()}
        verts = newton_polytope(pq).vertices
        assert set(verts) <= sums
        ref = polytope_from_points(n, sums).vertices
        assert verts == ref


@settings(max_examples=30)
@given(point_sets(max_n=2))
def test_face_function_generators_on_face(data):
    n, pts = data
    p = MixedPolynomial(n, [((pt, (0,) * n), 1) for pt in pts])
    for f in compact_faces(newton_polytope(p)):
        ff = face_function(p, f)
        assert set(newton_polytope(ff).generators) <= set(f.points)
