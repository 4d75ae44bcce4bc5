import random

import numpy as np
import pytest
import sympy
from hypothesis import given, strategies as st

from mixedjoin.intpoly import IntPolynomial
from mixedjoin.seifert import (
    NonUnimodularError,
    SeifertForm,
    brieskorn_form,
    check_congruent,
    congruence_invariants,
    congruent_transform,
    det,
    extend,
    join_tensor,
    kron,
    lambda_matrix,
    monodromy_charpoly,
    monodromy_matrix,
    smith_diagonal,
    sum_of_squares_form,
)

from oracles import sympy_charpoly_det

TREFOIL = [[-1, 0], [1, -1]]
FIG8 = [[1, 1], [0, -1]]  # a standard figure-eight Seifert matrix


def M(rows):
    return tuple(tuple(r) for r in rows)


def test_lambda_matrix():
    assert lambda_matrix(3).entries == M([[1, 0], [-1, 1]])
    assert lambda_matrix(2).entries == M([[1]])
    assert lambda_matrix(-3).entries == M([[1, -1], [0, 1]])
    assert lambda_matrix(1).entries == ()
    assert lambda_matrix(-1).rank == 0
    with pytest.raises(ValueError):
        lambda_matrix(0)


def test_unimodularity_enforced():
    with pytest.raises(NonUnimodularError):
        SeifertForm([[2]])
    assert not SeifertForm.relaxed([[2]]).unimodular
    with pytest.raises(NonUnimodularError):
        join_tensor(SeifertForm.relaxed([[2]]), 1, lambda_matrix(2), 1)


def test_join_tensor_examples():
    l1 = SeifertForm([[0, -1], [-1, 2]], k=1)
    for m in range(2, 7):
        l2 = sum_of_squares_form(m)
        sign = (-1) ** (m * (m - 1) // 2)
        assert join_tensor(l1, 2, l2, m).entries == M([[0, -sign], [-sign, 2 * sign]])
    assert join_tensor(lambda_matrix(1), 2, lambda_matrix(3), 1).entries == ()
    # lambda_2 joined with itself in one variable each: sign (-1)^1
    assert join_tensor(lambda_matrix(2), 1, lambda_matrix(2), 1).entries == M([[-1]])


def test_join_tensor_tracks_k():
    assert join_tensor(brieskorn_form([2, 3]), 2, brieskorn_form([2]), 1).k == 2


def test_brieskorn_form_examples():
    assert brieskorn_form([2, 3]).entries == M([[-1, 0], [1, -1]])
    assert brieskorn_form([2, 2]).entries == M([[-1]])
    for n in range(1, 7):
        assert brieskorn_form([2] * n).entries == M([[(-1) ** (n * (n + 1) // 2)]])
    for bad in ([], [1, 3], [0], [2, -1]):
        with pytest.raises(ValueError):
            brieskorn_form(bad)


def test_sum_of_squares_sign_convention():
    assert [sum_of_squares_form(m).entries[0][0] for m in range(1, 6)] == [1, -1, -1, 1, 1]


def test_extend_examples():
    assert extend(SeifertForm([[0, 1], [1, 2]]), [0, 0], 1).entries == M([[0, 1, 0], [1, 2, 0], [0, 0, 1]])
    assert extend(lambda_matrix(1), [], -1).entries == M([[-1]])
    assert extend(SeifertForm([[1]]), [5], 1).entries == M([[1, 0], [5, 1]])
    with pytest.raises(ValueError):
        extend(SeifertForm([[1]]), [5], 2)
    with pytest.raises(ValueError):
        extend(SeifertForm([[1]]), [5, 1], 1)


def test_congruence_invariants_examples():
    inv = congruence_invariants(SeifertForm(TREFOIL))
    assert inv.alexander == IntPolynomial([1, -1, 1])
    inv = congruence_invariants(SeifertForm([[1]]))
    assert (inv.det, inv.smith, inv.signature) == (1, (1,), 1)
    assert inv.alexander == IntPolynomial([-1, 1])
    inv = congruence_invariants(SeifertForm([[0, -1], [-1, 2]]))
    assert inv.det == -1 and inv.signature == 0


def test_signature_against_numpy():
    rng = random.Random(3)
    for _ in range(50):
        n = rng.randint(1, 4)
        a = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
        inv = congruence_invariants(SeifertForm.relaxed(a))
        sym = np.array(a) + np.array(a).T
        ev = np.linalg.eigvalsh(sym)
        tol = 1e-9
        assert inv.signature == int((ev > tol).sum() - (ev < -tol).sum())
        assert inv.symmetric_rank == int((abs(ev) > tol).sum())


def test_smith_against_sympy():
    from sympy.matrices.normalforms import smith_normal_form

    rng = random.Random(4)
    for _ in range(30):
        n = rng.randint(1, 4)
        a = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(n)]
        snf = smith_normal_form(sympy.Matrix(a), domain=sympy.ZZ)
        ref = sorted(abs(int(snf[i, i])) for i in range(n))
        mine = smith_diagonal(M(a))
        assert sorted(mine) == ref
        assert all(mine[i + 1] % mine[i] == 0 for i in range(n - 1) if mine[i])


def test_check_congruent_examples():
    v = check_congruent(SeifertForm([[0, -1], [-1, 2]]), SeifertForm([[0, 1], [1, 2]]))
    assert v.status == "CongruentWitness"
    assert v.witness == M([[1, 0], [0, -1]])
    v = check_congruent(SeifertForm([[1]]), SeifertForm([[-1]]))
    assert v.status == "DistinguishedByInvariant" and v.separating_invariant[0] == "det"


def test_check_congruent_three_by_three():
    a = SeifertForm.relaxed([[0, 1, 0], [1, 2, 0], [0, 0, 1]])
    b = SeifertForm([[1, 0, 0], [0, 1, 0], [0, 0, -1]])
    v = check_congruent(a, b)
    assert v.status == "CongruentWitness" and v.depth <= 8
    assert congruent_transform(v.witness, a.entries) == b.entries
    assert abs(det(v.witness)) == 1


def test_check_congruent_reports_unknown_when_budget_exhausted():
    a = SeifertForm([[1, 0], [0, 1]])
    u = ((1, 3), (0, 1))
    b = SeifertForm(congruent_transform(((2, 1), (1, 1)), congruent_transform(u, a.entries)))
    assert check_congruent(a, b, depth=1).status == "Unknown"


def test_monodromy_charpoly_examples():
    assert monodromy_charpoly(SeifertForm(TREFOIL)) == IntPolynomial([1, -1, 1])
    assert monodromy_charpoly(SeifertForm(FIG8)) == IntPolynomial([1, -3, 1])
    assert monodromy_charpoly(lambda_matrix(1)) == IntPolynomial([1])
    assert monodromy_charpoly(SeifertForm([[-1]])) == IntPolynomial([1, -1])
    assert monodromy_matrix(SeifertForm(TREFOIL)) == M([[1, -1], [1, 0]])
    with pytest.raises(NonUnimodularError):
        monodromy_charpoly(SeifertForm.relaxed([[2]]))


def test_conventions_share_charpoly_and_match_sympy():
    for exps in ([2, 3], [3, 4], [2, 5], [3, 3, 2]):
        l = brieskorn_form(exps)
        left = monodromy_charpoly(l, "left")
        assert left == monodromy_charpoly(l, "right")
        assert left.to_list() == sympy_charpoly_det([list(r) for r in monodromy_matrix(l)])


# -- properties ---------------------------------------------------------------


def random_unimodular(rng, n, moves=6):
    u = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(rng.randint(1, moves)):
        kind = rng.randrange(3)
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if kind == 0 and n > 1:
            c = rng.choice([-2, -1, 1, 2])
            u[i] = [x + c * y for x, y in zip(u[i], u[j])]
        elif kind == 1 and n > 1:
            u[i], u[j] = u[j], u[i]
        else:
            u[i] = [-x for x in u[i]]
    return M(u)


def random_form(rng, n):
    # upper unitriangular conjugated randomly: always unimodular
    a = [[(rng.randint(-2, 2) if j > i else int(i == j) * rng.choice([1, -1])) for j in range(n)] for i in range(n)]
    return congruent_transform(random_unimodular(rng, n), M(a))


@given(st.integers(0, 2**32 - 1))
def test_kron_det_law(seed):
    rng = random.Random(seed)
    a = random_form(rng, rng.randint(1, 3))
    b = random_form(rng, rng.randint(1, 3))
    assert det(kron(a, b)) == det(a) ** len(b) * det(b) ** len(a)


@given(st.integers(0, 2**32 - 1))
def test_invariants_stable_under_congruence(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 4)
    a = SeifertForm(random_form(rng, n))
    b = SeifertForm(congruent_transform(random_unimodular(rng, n), a.entries))
    assert congruence_invariants(a) == congruence_invariants(b)
    assert monodromy_charpoly(a) == monodromy_charpoly(b)


@given(st.integers(0, 2**32 - 1))
def test_extend_preserves_abs_det(seed):
    rng = random.Random(seed)
    n = rng.randint(0, 3)
    a = SeifertForm(random_form(rng, n)) if n else lambda_matrix(1)
    e = extend(a, [rng.randint(-4, 4) for _ in range(n)], rng.choice([1, -1]))
    assert abs(det(e.entries)) == abs(det(a.entries)) if n else abs(det(e.entries)) == 1
