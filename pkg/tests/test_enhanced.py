import itertools

import pytest

from mixedjoin.enhanced import (
    EnhancedMilnor,
    base_cases,
    brieskorn_enhanced,
    join_enhanced,
    witness,
)
from mixedjoin.newton import is_convenient
from mixedjoin.polyparse import parse

E = EnhancedMilnor


def test_invariant_validation():
    with pytest.raises(ValueError):
        E(3, 2)
    with pytest.raises(ValueError):
        E(-1, 0)
    with pytest.raises(ValueError):
        E(2, 1).display()


def test_display_sign():
    assert E(3, 1, k=2).display() == (-3, 1)
    assert E(4, 1, k=3).display() == (4, 1)


def test_join_examples():
    for p in range(1, 6):
        for exps in ([2], [3, 4], [2, 2, 5]):
            prod = 1
            for a in exps:
                prod *= a - 1
            assert join_enhanced(E(2 * p, 1), brieskorn_enhanced(exps)).pair == (2 * p * prod, prod % 2)
            assert join_enhanced(E(1, 1), brieskorn_enhanced(exps)).pair == (prod, prod % 2)
    assert join_enhanced(E(7, 1), E(1, 0)).pair == (7, 1)


def test_join_k_is_caller_supplied():
    assert join_enhanced(E(2, 1, k=1), E(1, 0, k=0)).k is None
    assert join_enhanced(E(2, 1, k=1), E(1, 0, k=0), k=2).k == 2


def test_condition_flag_propagates():
    assert join_enhanced(E(2, 1), E(1, 0, condition_assumed=False)).condition_assumed is False
    assert all(row["invariant"].condition_assumed for row in base_cases())


def test_brieskorn_enhanced():
    assert brieskorn_enhanced([2, 2, 2]).pair == (1, 0)
    assert brieskorn_enhanced([6, 2, 2]).pair == (5, 0)
    assert brieskorn_enhanced([3, 4]).pair == (6, 0)
    with pytest.raises(ValueError):
        brieskorn_enhanced([])
    with pytest.raises(ValueError):
        brieskorn_enhanced([1, 3])


def test_base_cases():
    rows = {r["name"]: r for r in base_cases()}
    assert rows["f1(p=1)"]["invariant"].pair == (2, 1)
    assert rows["f1(p=1)"]["polynomial"] == parse("(z1 + z2)*(z1 + 2*z2)*conj(z1 + 3*z2)")
    assert rows["f2"]["invariant"].pair == (1, 1)
    assert rows["f2"]["polynomial"] == parse("z1^2 + zb2^2")
    assert rows["f3=w1^2"]["invariant"].pair == (1, 0)


def test_witness_examples():
    w = witness(4, 3)
    assert w.recipe == "even" and w.parameters["p"] == 2
    assert w.polynomial.n == 4 and w.invariant.display() == (4, 1)
    w = witness(1, 2)
    assert w.recipe == "odd"
    assert w.polynomial == parse("z1^2 + zb2^2 + z3^2")
    assert w.invariant.display() == (-1, 1)
    w = witness(3, 2)
    assert w.polynomial == parse("z1^2 + zb2^2 + z3^4")
    assert w.invariant.display() == (-3, 1)


def test_witness_errors():
    with pytest.raises(ValueError):
        witness(0, 3)
    with pytest.raises(ValueError):
        witness(2, 1)


@pytest.mark.parametrize("ell, k", list(itertools.product(range(1, 11), range(2, 6))))
def test_witness_invariants_and_convenience(ell, k):
    w = witness(ell, k)
    assert w.invariant.pair == (ell, 1)
    assert w.variable_count == k + 1 == w.polynomial.n
    assert w.recompute() == w.invariant
    assert is_convenient(w.polynomial)
    # round trip through the printed form
    assert parse(str(w.polynomial), w.polynomial.n) == w.polynomial


def test_join_commutative_associative_exhaustive():
    values = [E(mu, lam) for mu in range(0, 21) for lam in (0, 1)]
    for a in values:
        for b in values:
            assert join_enhanced(a, b).pair == join_enhanced(b, a).pair
    small = [E(mu, lam) for mu in range(0, 8) for lam in (0, 1)]
    for a, b, c in itertools.product(small, repeat=3):
        assert join_enhanced(join_enhanced(a, b), c).pair == join_enhanced(a, join_enhanced(b, c)).pair


def test_lambda_parity_law():
    for m1, m2 in itertools.product(range(21), repeat=2):
        assert join_enhanced(E(m1, 0), E(m2, 0)).lam == 0
        if m1 % 2 == 0:
            # an even partner kills the other side's lambda contribution
            for l2 in (0, 1):
                assert join_enhanced(E(m1, 1), E(m2, l2)).lam == m2 % 2
