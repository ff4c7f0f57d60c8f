"""Block matrix arithmetic: product, supertranspose, Ber, inverses, JSON."""

import pytest

from superkit.errors import NotInvertible, ParityError
from superkit.sampling import per_sample_rng, rand_gl
from superkit.supermatrix import (SuperMatrix, h_form, matrix_from_json,
                                  matrix_to_json)
from superkit.superpoly import grassmann_signature


def _diag(sig, *scalars):
    n = len(scalars)
    return SuperMatrix(n - 1, 1, [[sig.scalar(scalars[i]) if i == j else sig.zero()
                                   for j in range(n)] for i in range(n)])


def test_identity_absorbs(sig3):
    rng = per_sample_rng(3, 0)
    x = rand_gl(2, 1, sig3, rng)
    i = SuperMatrix.identity(2, 1, sig3)
    assert i @ x == x
    assert x @ i == x


def test_elementary_products(sig3):
    e12 = SuperMatrix.elementary(2, 1, sig3, 0, 1)
    e23 = SuperMatrix.elementary(2, 1, sig3, 1, 2)
    e13 = SuperMatrix.elementary(2, 1, sig3, 0, 2)
    assert e12 @ e23 == e13
    assert (e12 @ e13) == SuperMatrix.zeros(2, 1, sig3)


def test_supertranspose_identity(sig3):
    i = SuperMatrix.identity(2, 1, sig3)
    assert i.supertranspose() == i


def test_supertranspose_of_h_is_plain_transpose(sig3):
    # H has zero odd blocks, so the supertranspose is the ordinary
    # transpose; H itself is antisymmetric in the top block and is NOT
    # fixed.  The convention is pinned by the expanded conformal
    # equations, not by this matrix.
    h = h_form(sig3)
    hst = h.supertranspose()
    plain = SuperMatrix(2, 1, [[h.entries[j][i] for j in range(3)]
                               for i in range(3)])
    assert hst == plain
    assert hst != h


def test_supertranspose_antihomomorphism(sig3):
    for i in range(100):
        rng = per_sample_rng(5, i)
        x = rand_gl(2, 1, sig3, rng)
        y = rand_gl(2, 1, sig3, rng)
        assert (x @ y).supertranspose() == y.supertranspose() @ x.supertranspose()


def test_supertrace(sig3):
    assert SuperMatrix.identity(2, 1, sig3).supertrace() == 1
    e11 = SuperMatrix.elementary(2, 1, sig3, 0, 0)
    e33 = SuperMatrix.elementary(2, 1, sig3, 2, 2)
    assert e11.supertrace() == 1
    assert e33.supertrace() == -1


def test_supertrace_cyclic(sig3):
    for i in range(30):
        rng = per_sample_rng(9, i)
        x = rand_gl(2, 1, sig3, rng)
        y = rand_gl(2, 1, sig3, rng)
        assert (x @ y).supertrace() == (y @ x).supertrace()


def test_berezinian_identity(sig3):
    assert SuperMatrix.identity(2, 1, sig3).berezinian() == sig3.one()


def test_berezinian_of_scalar_matrix(sig3):
    a = sig3.scalar(3) + sig3.monomial({"t1": 1, "t2": 1})
    m = SuperMatrix.identity(2, 1, sig3).scale(a)
    assert m.berezinian() == a


def test_berezinian_unipotent_block(sig3):
    z, o = sig3.zero(), sig3.one()
    m = SuperMatrix(2, 1, [[o, o, z], [z, o, z], [z, z, o]])
    assert m.berezinian() == sig3.one()


def test_berezinian_multiplicative_sample(sig3):
    for i in range(20):
        rng = per_sample_rng(13, i)
        x = rand_gl(2, 1, sig3, rng)
        y = rand_gl(2, 1, sig3, rng)
        assert (x @ y).berezinian() == x.berezinian() * y.berezinian()


def test_berezinian_of_inverse(sig3):
    for i in range(20):
        rng = per_sample_rng(17, i)
        x = rand_gl(2, 1, sig3, rng)
        assert x.minverse().berezinian() == x.berezinian().invert()


def test_minverse_examples(sig3):
    i = SuperMatrix.identity(2, 1, sig3)
    assert i.minverse() == i
    d = _diag(sig3, 2, 3, 5)
    from fractions import Fraction
    dinv = SuperMatrix(2, 1, [[sig3.scalar(Fraction(1, c)) if r == k else sig3.zero()
                               for k, c in enumerate((2, 3, 5))]
                              for r, _ in enumerate((2, 3, 5))])
    assert d.minverse() == dinv
    n = SuperMatrix.elementary(2, 1, sig3, 0, 2).scale(sig3.gen("t1"))
    assert (i + n).minverse() == i - n


def test_minverse_round_trip(sig3):
    i = SuperMatrix.identity(2, 1, sig3)
    for k in range(30):
        rng = per_sample_rng(19, k)
        x = rand_gl(2, 1, sig3, rng)
        assert x @ x.minverse() == i
        assert x.minverse() @ x == i


def test_is_invertible(sig3):
    i = SuperMatrix.identity(2, 1, sig3)
    assert i.is_invertible()
    assert not SuperMatrix.elementary(2, 1, sig3, 0, 0).is_invertible()
    n = SuperMatrix.elementary(2, 1, sig3, 0, 2).scale(sig3.gen("t1"))
    assert (i + n).is_invertible()
    with pytest.raises(NotInvertible):
        SuperMatrix.elementary(2, 1, sig3, 0, 0).minverse()


def test_h_form_frozen(sig3):
    h = h_form(sig3)
    rows = [["0", "1", "0"], ["-1", "0", "0"], ["0", "0", "-1"]]
    assert matrix_to_json(h)["entries"] == rows
    assert h.is_invertible()
    assert h.is_even_matrix()


def test_json_round_trip(sig3):
    rng = per_sample_rng(23, 0)
    x = rand_gl(2, 1, sig3, rng)
    assert matrix_from_json(matrix_to_json(x), sig3) == x


def test_json_checks_block_parity(sig3):
    bad = {"m": 2, "n": 1, "entries": [["1", "0", "0"],
                                       ["0", "1", "0"],
                                       ["0", "t1*t2", "1"]]}
    with pytest.raises(ParityError):
        matrix_from_json(bad, sig3)


def test_expm_nilpotent(sig3):
    n = SuperMatrix.elementary(2, 1, sig3, 0, 2).scale(sig3.gen("t1"))
    e = n.expm()
    assert e == SuperMatrix.identity(2, 1, sig3) + n
    assert e.is_invertible()
