"""Membership predicates and factorizations for the 2|1 matrix groups."""

import pytest

from superkit.errors import ConventionMismatch, MembershipError
from superkit.morphisms import AlgebraMorphism
from superkit.sampling import per_sample_rng, rand_even_unit
from superkit.supergroups import (expand_C_equations, factor_C, in_spo_lie,
                                  is_C, is_SC, is_SpO, sample_SC,
                                  spo_component)
from superkit.supermatrix import SuperMatrix
from superkit.superpoly import RingSignature, transport
from superkit.fields import RATIONALS


def _diag(sig, *scalars):
    return SuperMatrix(2, 1, [[sig.scalar(scalars[i]) if i == j else sig.zero()
                               for j in range(3)] for i in range(3)])


def _upper(sig):
    z, o = sig.zero(), sig.one()
    return SuperMatrix(2, 1, [[o, o, z], [z, o, z], [z, z, o]])


def test_is_spo(sig3):
    assert is_SpO(SuperMatrix.identity(2, 1, sig3))
    assert is_SpO(_upper(sig3))
    assert not is_SpO(_diag(sig3, 1, 2, 1))


def test_is_c_scalar_matrix(sig3):
    a = sig3.scalar(2) + sig3.monomial({"t1": 1, "t3": 1})
    ok, z = is_C(SuperMatrix.identity(2, 1, sig3).scale(a))
    assert ok and z == a * a


def test_is_c_on_spo_member(sig3):
    ok, z = is_C(_upper(sig3))
    assert ok and z == sig3.one()


def test_is_c_rejects_diag121(sig3):
    ok, z = is_C(_diag(sig3, 1, 2, 1))
    assert not ok and z == 4


def test_is_sc(sig3):
    assert is_SC(SuperMatrix.identity(2, 1, sig3))
    assert is_SC(_diag(sig3, -1, -1, 1))
    assert not is_SC(_diag(sig3, 1, 1, -1))


def test_factor_c_scalar(sig3):
    fac = factor_C(_diag(sig3, 3, 3, 3))
    assert fac.scalar == 3
    assert fac.special == SuperMatrix.identity(2, 1, sig3)


def test_factor_c_fixes_sc_members(sig3):
    s = sample_SC(3, 1001)
    fac = factor_C(s)
    assert fac.scalar == sig3.one()
    assert fac.special == s


def test_factor_c_flip(sig3):
    fac = factor_C(_diag(sig3, 1, 1, -1))
    assert fac.scalar == -sig3.one()
    assert fac.special == _diag(sig3, -1, -1, 1)
    assert is_SC(fac.special)


def test_factor_c_rejects_non_members(sig3):
    with pytest.raises(MembershipError):
        factor_C(_diag(sig3, 1, 2, 1))


def test_spo_component(sig3):
    i = SuperMatrix.identity(2, 1, sig3)
    assert spo_component(i) == "identity"
    assert spo_component(i.scale(sig3.scalar(-1))) == "other"
    assert spo_component(_diag(sig3, -1, -1, 1)) == "identity"
    with pytest.raises(MembershipError):
        spo_component(_diag(sig3, 1, 2, 1))


def test_in_spo_lie(sig3):
    assert in_spo_lie(SuperMatrix.zeros(2, 1, sig3))
    # infinitesimal version of the upper unipotent one-parameter subgroup
    z = sig3.zero()
    n = SuperMatrix(2, 1, [[z, sig3.one(), z], [z, z, z], [z, z, z]])
    assert in_spo_lie(n)
    assert not in_spo_lie(SuperMatrix.identity(2, 1, sig3))


def test_sample_sc_postcondition():
    for seed in (0, 7, 123, 4242):
        s = sample_SC(3, seed)
        assert is_SC(s)
        assert is_SpO(s)
        assert s.berezinian() == s.sig.one()


def test_sample_sc_rank_two():
    s = sample_SC(2, 5)
    assert is_SC(s)


def test_expand_c_equations_shape():
    rels = expand_C_equations("standard")
    assert len(rels) == 4
    assert all(not r.is_zero() for r in rels)


def test_expand_c_equations_flipped_convention():
    with pytest.raises(ConventionMismatch):
        expand_C_equations("flipped")


def _substitute(rels, a, b, c, d, e):
    src = rels[0].sig
    dst = RingSignature(RATIONALS, (), ())
    vals = {"a": a, "b": b, "c": c, "d": d, "e": e}
    images = {}
    for name, _ in src.even_gens:
        images[name] = dst.scalar(vals[name])
    for name in src.odd_gens:
        images[name] = dst.zero()
    f = AlgebraMorphism(src, dst, images)
    return [f.apply(r) for r in rels]


def test_c_equations_vanish_on_spo_witness():
    rels = expand_C_equations("standard")
    assert all(v.is_zero() for v in _substitute(rels, 1, 1, 0, 1, 1))


def test_c_equations_reject_diag121():
    rels = expand_C_equations("standard")
    values = _substitute(rels, 1, 0, 0, 2, 1)
    assert any(not v.is_zero() for v in values)


def test_spo_is_plus_minus_sc(sig3):
    for i in range(20):
        s = sample_SC(3, 3000 + i)
        flip = s.scale(sig3.scalar(-1)) if i % 2 else s
        assert is_SpO(flip)
        assert flip.berezinian() ** 2 == sig3.one()
        comp = spo_component(flip)
        assert comp == ("other" if i % 2 else "identity")
        recovered = flip.scale(flip.berezinian().invert())
        assert is_SC(recovered)


def test_c_is_scalars_times_sc(sig3):
    for i in range(20):
        rng = per_sample_rng(31, i)
        a = rand_even_unit(sig3, rng)
        s = sample_SC(3, 5000 + i)
        g = s.scale(a)
        ok, z = is_C(g)
        assert ok and z == a * a
        fac = factor_C(g)
        assert fac.scalar == a * s.berezinian()
        assert fac.special == g.scale(fac.scalar.invert())
