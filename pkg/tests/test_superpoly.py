"""Ring arithmetic: canonical form, products, bodies, inverses, morphisms."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from superkit.errors import NotInvertible, ParityError, SignatureMismatch, TooLarge
from superkit.fields import RATIONALS, FieldSpec
from superkit.morphisms import AlgebraMorphism, compose_morphisms
from superkit.superpoly import (RingSignature, SuperPoly, grassmann_signature,
                                normalize, transport)

LAURENT = RingSignature(RATIONALS, (("x", True),), ("t1", "t2", "t3"))


def test_field_rejects_char_two():
    with pytest.raises(Exception):
        FieldSpec(2)
    with pytest.raises(Exception):
        FieldSpec(9)
    assert FieldSpec(5).p == 5


def test_normalize_sign_rule(sig3):
    swapped = normalize(sig3, [({}, ("t2", "t1"), 1)])
    assert swapped == -sig3.monomial({"t1": 1, "t2": 1})


def test_normalize_kills_odd_squares(sig3):
    assert normalize(sig3, [({}, ("t1", "t1"), 1)]).is_zero()


def test_even_factors_are_central():
    x, t1 = LAURENT.gen("x"), LAURENT.gen("t1")
    assert x * t1 + t1 * x == 2 * (x * t1)


def test_mul_projector(sig3):
    t1 = sig3.gen("t1")
    assert (1 + t1) * (1 - t1) == sig3.one()


def test_mul_anticommutes(sig3):
    t1, t2 = sig3.gen("t1"), sig3.gen("t2")
    assert t1 * t2 == -(t2 * t1)


def test_mul_soul_square():
    x = LAURENT.gen("x")
    soul = LAURENT.monomial({"t1": 1, "t2": 1})
    assert (x + soul) * (x - soul) == x * x


def test_body():
    x = LAURENT.gen("x")
    soul = LAURENT.monomial({"t1": 1, "t2": 1})
    p = LAURENT.scalar(3) + LAURENT.gen("t1") + x * soul
    assert p.body() == 3
    assert soul.body().is_zero()
    assert (x.invert() + soul).body() == LAURENT.monomial({"x": -1})


def test_invert_scalar(sig3):
    assert sig3.scalar(2).invert() == Fraction(1, 2)


def test_invert_unipotent(sig3):
    soul = sig3.monomial({"t1": 1, "t2": 1})
    p = sig3.one() + soul
    assert p.invert() == sig3.one() - soul
    assert p * p.invert() == sig3.one()


def test_invert_laurent_unit():
    x = LAURENT.gen("x")
    p = x * (1 + LAURENT.monomial({"x": -1, "t1": 1, "t2": 1}))
    expected = LAURENT.monomial({"x": -1}) - LAURENT.monomial({"x": -2, "t1": 1, "t2": 1})
    assert p.invert() == expected
    assert p * p.invert() == LAURENT.one()


def test_invert_rejects_non_units():
    with pytest.raises(NotInvertible):
        (LAURENT.gen("x") + 1).invert()
    with pytest.raises(NotInvertible):
        LAURENT.gen("t1").invert()
    with pytest.raises(NotInvertible):
        LAURENT.zero().invert()


def test_invert_seeded_units(sig4):
    # two-sided inverse over the rank-4 ring, 200 draws
    rng = random.Random(7)
    odd = sig4.odd_gens
    for _ in range(200):
        p = sig4.scalar(rng.choice((1, -1, 2, -2, 3, Fraction(1, 2))))
        for _ in range(rng.randint(0, 4)):
            i, j = rng.sample(range(4), 2)
            p = p + sig4.monomial({odd[i]: 1, odd[j]: 1}, rng.randint(-2, 2))
        inv = p.invert()
        assert p * inv == sig4.one()
        assert inv * p == sig4.one()


def test_monomial_guards():
    with pytest.raises(ParityError):
        LAURENT.monomial({"t1": -1})
    with pytest.raises(ParityError):
        LAURENT.monomial({"t1": 2})
    with pytest.raises(SignatureMismatch):
        LAURENT.gen("nope")
    nonlaurent = RingSignature(RATIONALS, (("y", False),), ())
    with pytest.raises(NotInvertible):
        nonlaurent.monomial({"y": -1})


def test_signature_mismatch_on_mixed_arithmetic(sig3, sig2):
    with pytest.raises(SignatureMismatch):
        sig3.gen("t1") * sig2.gen("t1")


def test_derive_power_rule_on_laurent():
    x = LAURENT.gen("x")
    p = LAURENT.monomial({"x": -1})
    assert p.derive({"x": LAURENT.one()}, 0) == -LAURENT.monomial({"x": -2})
    assert (x * x).derive({"x": LAURENT.one()}, 0) == 2 * x


def test_derive_odd_koszul_sign():
    # odd derivation passing over the leading odd factor flips sign
    sig = RingSignature(RATIONALS, (), ("a", "b"))
    p = sig.monomial({"a": 1, "b": 1})
    d = p.derive({"b": sig.one()}, 1)
    assert d == -sig.gen("a")
    assert p.derive({"a": sig.one()}, 1) == sig.gen("b")


def test_divide_by_gen():
    x, t1 = LAURENT.gen("x"), LAURENT.gen("t1")
    p = x * (1 + t1 * LAURENT.gen("t2"))
    q = p.divide_by_gen("x")
    assert q is not None and x * q == p
    assert (t1 * LAURENT.gen("t2")).divide_by_gen("t2") == -t1
    assert LAURENT.one().divide_by_gen("t1") is None


def test_transport_between_signatures(sig3):
    p = sig3.monomial({"t1": 1, "t2": 1}, 5)
    bigger = RingSignature(RATIONALS, (("x", True),), ("t1", "t2", "t3"))
    moved = transport(p, bigger)
    assert moved.sig == bigger
    assert transport(moved, sig3) == p
    with pytest.raises(SignatureMismatch):
        transport(LAURENT.gen("x"), sig3)


def test_term_cap(monkeypatch):
    monkeypatch.setenv("SUPERKIT_MAX_TERMS", "3")
    sig = grassmann_signature(3)
    p = sig.gen("t1") + sig.gen("t2") + sig.gen("t3")
    q = sig.one() + sig.monomial({"t1": 1, "t2": 1})
    with pytest.raises(TooLarge):
        p * q  # t1 + t2 + t3 + t1*t2*t3 exceeds the cap


@st.composite
def homogeneous_pairs(draw):
    sig = grassmann_signature(3)
    words = {0: [(), ("t1", "t2"), ("t1", "t3"), ("t2", "t3")],
             1: [("t1",), ("t2",), ("t3",), ("t1", "t2", "t3")]}

    def element(parity):
        terms = draw(st.lists(
            st.tuples(st.sampled_from(words[parity]),
                      st.integers(min_value=-4, max_value=4)),
            min_size=0, max_size=3))
        return normalize(sig, [({}, w, c) for w, c in terms])

    pp, pq = draw(st.sampled_from([0, 1])), draw(st.sampled_from([0, 1]))
    return element(pp), pp, element(pq), pq


@given(homogeneous_pairs())
def test_supercommutativity(data):
    p, pp, q, pq, = data
    sign = -1 if pp and pq else 1
    assert p * q == sign * (q * p)


@given(homogeneous_pairs())
def test_body_multiplicative(data):
    p, _, q, _ = data
    assert (p * q).body() == p.body() * q.body()


def _phi01():
    # the basic chart change of the projective line, restated over plain names
    src = RingSignature(RATIONALS, (("u", True),), ("zeta",))
    dst = RingSignature(RATIONALS, (("v", True),), ("zeta",))
    inv = dst.monomial({"v": -1})
    return AlgebraMorphism(src, dst, {"u": inv, "zeta": dst.gen("zeta") * inv})


def test_apply_morphism_examples():
    f = _phi01()
    src = f.source
    assert f.apply(src.gen("u")) == f.target.monomial({"v": -1})
    assert f.apply(src.gen("zeta")) == f.target.monomial({"v": -1, "zeta": 1})
    ident = AlgebraMorphism.identity(src)
    p = src.monomial({"u": 2, "zeta": 1}, 7)
    assert ident.apply(p) == p


def test_morphism_checks_parity_and_units():
    src = RingSignature(RATIONALS, (("u", True),), ("zeta",))
    with pytest.raises(ParityError):
        AlgebraMorphism(src, src, {"u": src.gen("zeta"), "zeta": src.gen("zeta")})
    with pytest.raises(NotInvertible):
        # laurent generator must land on a unit
        AlgebraMorphism(src, src, {"u": src.gen("u") + 1, "zeta": src.gen("zeta")})


def test_morphism_homomorphism_law_seeded():
    f = _phi01()
    src = f.source
    rng = random.Random(11)

    def rand():
        p = src.zero()
        for _ in range(rng.randint(0, 3)):
            p = p + src.monomial(
                {"u": rng.randint(-2, 2), "zeta": rng.randint(0, 1)},
                rng.randint(-3, 3))
        return p

    for _ in range(100):
        p, q = rand(), rand()
        assert f.apply(p * q) == f.apply(p) * f.apply(q)
        assert f.apply(p + q) == f.apply(p) + f.apply(q)


def test_compose_morphisms_identity_laws():
    f = _phi01()
    back = AlgebraMorphism(f.target, f.source,
                           {"v": f.source.monomial({"u": -1}),
                            "zeta": f.source.gen("zeta") * f.source.monomial({"u": -1})})
    assert compose_morphisms(back, f) == AlgebraMorphism.identity(f.source)
    assert compose_morphisms(f, AlgebraMorphism.identity(f.source)) == f
    assert compose_morphisms(AlgebraMorphism.identity(f.target), f) == f
