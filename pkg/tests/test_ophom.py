import random

import pytest

from volform import ophom as oh
from volform import randgen as rg
from volform.forms import basis_form, d, function_form
from volform.scalars import poly_ring

R2, R3 = poly_ring(2), poly_ring(3)


def op(n, k, terms):
    R = poly_ring(n)
    return oh.DiffOp(n, k, 1, {key: (R.const(c) if not hasattr(c, "derive") else c,)
                               for key, c in terms.items()})


CURL = op(2, 1, {((1,), (1, 0)): 1, ((0,), (0, 1)): -1})
EXTRACT2 = op(2, 2, {((0, 1), (0, 0)): 1})


def test_apply_examples():
    a = d(function_form(R2.var(0) * R2.var(1)))
    assert oh.apply(CURL, a) == (R2.zero(),)
    ext = op(2, 1, {((1,), (0, 0)): 1})
    assert oh.apply(ext, basis_form(R2, [1], R2.var(0))) == (R2.var(0),)
    assert oh.apply(oh.zero_op(2, 1, 1), a) == (R2.zero(),)


def test_compose_d_examples():
    assert oh.compose_d(EXTRACT2) == CURL
    assert not oh.compose_d(oh.zero_op(2, 2, 1))


def test_compose_iota_euler_examples():
    ident = op(2, 0, {((), (0, 0)): 1})
    want = op(2, 1, {((0,), (0, 0)): R2.var(0), ((1,), (0, 0)): R2.var(1)})
    assert oh.compose_iota_euler(ident) == want
    d1 = op(2, 0, {((), (1, 0)): 1})
    want = op(2, 1, {((0,), (0, 0)): 1, ((0,), (1, 0)): R2.var(0), ((1,), (1, 0)): R2.var(1)})
    assert oh.compose_iota_euler(d1) == want
    assert not oh.compose_iota_euler(oh.zero_op(2, 0, 1))


def test_truncate_examples():
    D = op(2, 0, {((), (1, 0)): 1, ((), (1, 1)): R2.var(0)})
    assert oh.truncate(D, 1) == op(2, 0, {((), (1, 0)): 1})
    assert oh.truncate(D, 5) == D
    rng = random.Random(4)
    for _ in range(5):
        D = rg.diffop(rng, 3, 1, order=3)
        assert oh.truncate(D, 2) == oh.truncate_by_evaluation(D, 2)


def test_factor_examples():
    fac = oh.factor_through_d(CURL)
    assert fac.ok and fac.Q == EXTRACT2
    assert not oh.factor_through_d(oh.zero_op(2, 1, 1)).Q
    top = op(3, 2, {((1, 2), (1, 0, 0)): 1, ((0, 2), (0, 1, 0)): -1, ((0, 1), (0, 0, 1)): 1})
    fac = oh.factor_through_d(top)
    assert fac.ok and fac.Q == op(3, 3, {((0, 1, 2), (0, 0, 0)): 1})


def test_factor_rejects():
    with pytest.raises(oh.OperatorError):
        oh.factor_through_d(op(2, 1, {((0,), (0, 0)): 1}))  # does not kill exact forms
    with pytest.raises(oh.OperatorError):
        oh.factor_through_d(op(2, 0, {((), (1, 0)): 1}))


@pytest.mark.parametrize("n", [2, 3])
def test_random_factorisations(n):
    rng = random.Random(n)
    for _ in range(5):
        k = rng.randint(1, n - 1)
        Q0 = rg.diffop(rng, n, k + 1, order=3)
        D = oh.compose_d(Q0)
        fac = oh.factor_through_d(D)
        assert fac.ok
        assert oh.compose_d(fac.Q) == D


def test_euler():
    assert all(oh.euler_eigencheck(k, l, 3) for k in range(3) for l in range(4))


def test_json_roundtrip():
    rng = random.Random(9)
    D = rg.diffop(rng, 3, 2, order=2)
    assert oh.from_json(oh.to_json(D)) == D
