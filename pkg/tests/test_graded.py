import pytest

from volform import graded as gr


@pytest.mark.parametrize("k,dim", [(0, 3), (1, 8), (2, 15), (3, 24)])
def test_dimensions(k, dim):
    assert len(gr.basis_divfree(3, k)) == dim == gr.divfree_dim_formula(3, k)


def test_basis_members_are_divfree():
    from volform.forms import divergence
    assert all(not divergence(X) for X in gr.basis_divfree(3, 2).vectors)


@pytest.mark.parametrize("n,k,l", [(3, 1, 1), (3, 0, 2), (4, 2, 2), (3, 1, 3)])
def test_grading(n, k, l):
    assert gr.grading_check(n, k, l)


def test_whitehead():
    assert gr.whitehead_h1(3) == 0
    assert gr.whitehead_h1(3, coefficients="trivial") == 0


@pytest.mark.parametrize("n,k", [(3, 2), (3, 3)])
def test_intertwiners_and_endomorphisms(n, k):
    assert gr.intertwiner_dim(n, k) == 0
    assert gr.endo_dim_tensor(n, k) == 2


def test_representation_law():
    rho = gr.rep_on_divfree(3, 2)
    assert rho.check(gr.sl_generators(3))


def test_pruning_is_exact():
    src, tgt = gr.rep_on_divfree(3, 2), gr.rep_on_fields(3, 2)
    assert gr.equivariant_dim(src, tgt, prune=True) == gr.equivariant_dim(src, tgt, prune=False)


def test_rep_table():
    rows = gr.rep_table(3, 2)
    assert [r["dim"] for r in rows] == [3, 8, 15]
    assert rows[2]["endo"] == 2 and rows[2]["intertwiner"] == 0
