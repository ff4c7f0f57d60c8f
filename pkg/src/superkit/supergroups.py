"""Membership tests, factorizations and samplers for the (2|1) matrix groups
attached to the bilinear form H: the form-preserving group, its conformal
enlargement (preservation up to an even unit), and the Berezinian-1 slice.

Conventions proved out by expand_C_equations: with the standard
supertranspose, the conformal membership identity  B^st H B = Ber(B)^2 H
expands to exactly four independent polynomial relations in the generic
matrix entries; the flipped supertranspose fails to reproduce them.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import ConventionMismatch, MembershipError, SignatureMismatch
from .fields import RATIONALS, FieldSpec
from .superpoly import RingSignature, SuperPoly, grassmann_signature
from .supermatrix import SuperMatrix, h_form


def _require_2_1(b: SuperMatrix):
    if (b.m, b.n) != (2, 1):
        raise SignatureMismatch(f"need a 2|1 matrix, got {b.m}|{b.n}")


def is_SpO(b: SuperMatrix) -> bool:
    """Exact form preservation: B^st H B == H."""
    _require_2_1(b)
    h = h_form(b.sig)
    return b.supertranspose() @ h @ b == h


def is_C(b: SuperMatrix) -> tuple[bool, SuperPoly]:
    """Form preservation up to the derived unit Ber(B)^2, which is returned
    either way (it is the only candidate multiplier)."""
    _require_2_1(b)
    z = b.berezinian() ** 2
    h = h_form(b.sig)
    return (b.supertranspose() @ h @ b == h.scale(z), z)


def is_SC(b: SuperMatrix) -> bool:
    ok, _ = is_C(b)
    return ok and b.berezinian() == b.sig.one()


@dataclass(frozen=True)
class CFactorization:
    scalar: SuperPoly
    special: SuperMatrix


def factor_C(b: SuperMatrix) -> CFactorization:
    """Split a conformal element as (even unit) * (Berezinian-1 element).

    Ber(cM) = c * Ber(M) in size 2|1, so dividing by Ber lands exactly on
    the Ber = 1 slice.
    """
    ok, _ = is_C(b)
    if not ok:
        raise MembershipError("matrix does not preserve the form up to a unit")
    scalar = b.berezinian()
    special = b.scale(scalar.invert())
    if special.berezinian() != b.sig.one() or not is_SC(special):
        raise MembershipError("factorization postcondition failed")
    return CFactorization(scalar, special)


def spo_component(b: SuperMatrix) -> str:
    """'identity' on the Ber = 1 component, 'other' on the Ber = -1 one."""
    if not is_SpO(b):
        raise MembershipError("matrix does not preserve the form")
    return "identity" if b.berezinian() == b.sig.one() else "other"


def in_spo_lie(x: SuperMatrix) -> bool:
    """Infinitesimal form preservation: X^st H + H X == 0."""
    _require_2_1(x)
    h = h_form(x.sig)
    lhs = (x.supertranspose() @ h) + (h @ x)
    return lhs == SuperMatrix.zeros(2, 1, x.sig)


# -- sampler -----------------------------------------------------------------

_SL2_WORDS = (((1, 1), (0, 1)), ((1, -1), (0, 1)),
              ((1, 0), (1, 1)), ((1, 0), (-1, 1)))


def _random_odd_element(sig: RingSignature, rng: random.Random) -> SuperPoly:
    """Sum of up to two terms c * theta-monomial, c in {0,+-1,+-2}, odd
    degree at most 3.  Keeps expression swell bounded while exercising
    nilpotents."""
    q = len(sig.odd_gens)
    words = [(i,) for i in range(q)]
    if q >= 3:
        words += [(i, j, k) for i in range(q) for j in range(i + 1, q)
                  for k in range(j + 1, q)]
    acc = sig.zero()
    for _ in range(rng.randint(1, 2)):
        c = rng.choice((0, 1, -1, 2, -2))
        if c == 0:
            continue
        word = rng.choice(words)
        powers = {sig.odd_gens[i]: 1 for i in word}
        acc = acc + sig.monomial(powers, c)
    return acc


def sample_SC(q: int, seed: int, field: FieldSpec = RATIONALS) -> SuperMatrix:
    """Seeded element of the Ber = 1 form-preserving group over Lambda_q:
    a word in the standard SL2 generators times exp of an odd infinitesimal
    element.  Membership is asserted before returning."""
    if q < 2:
        raise ValueError("need at least two odd generators")
    rng = random.Random(seed)
    sig = grassmann_signature(q, field)
    z, o = sig.zero(), sig.one()
    a2 = [[o, z], [z, o]]
    for _ in range(rng.randint(0, 6)):
        g = rng.choice(_SL2_WORDS)
        gm = [[sig.scalar(v) for v in row] for row in g]
        a2 = [[a2[i][0] * gm[0][j] + a2[i][1] * gm[1][j] for j in range(2)]
              for i in range(2)]
    diag = SuperMatrix(2, 1, [[a2[0][0], a2[0][1], z],
                              [a2[1][0], a2[1][1], z],
                              [z, z, o]])
    alpha = _random_odd_element(sig, rng)
    beta = _random_odd_element(sig, rng)
    n = SuperMatrix(2, 1, [[z, z, alpha],
                           [z, z, beta],
                           [beta, -alpha, z]])
    if not in_spo_lie(n):
        raise MembershipError("odd sample escaped the Lie condition")
    g = diag @ n.expm()
    if not is_SC(g):
        raise MembershipError("sampler postcondition failed")
    return g


# -- symbolic expansion of the membership equations --------------------------

def _generic_signature(field: FieldSpec = RATIONALS) -> RingSignature:
    return RingSignature(
        field,
        (("a", False), ("b", False), ("c", False), ("d", False), ("e", True)),
        ("alpha", "beta", "gamma", "delta"))


def generic_conformal_matrix(sig: RingSignature) -> SuperMatrix:
    g = sig.gen
    return SuperMatrix(2, 1, [[g("a"), g("b"), g("alpha")],
                              [g("c"), g("d"), g("beta")],
                              [g("gamma"), g("delta"), g("e")]])


def _canonical_relation(p: SuperPoly) -> SuperPoly:
    """Shift out the e-denominators and scale the leading coefficient to 1,
    so relations can be compared up to sign and unit monomial multiple."""
    if p.is_zero():
        return p
    sig = p.sig
    _, e_idx = sig._gen("e")
    shift = -min(exps[e_idx] for (exps, _), _ in p.terms)
    if shift:
        p = p * sig.monomial({"e": shift})
    lead = p.terms[0][1]
    return p * sig.scalar(sig.field.inv(lead))


def expand_C_equations(convention: str = "standard",
                       field: FieldSpec = RATIONALS) -> list[SuperPoly]:
    """Expand B^st H B - Ber(B)^2 H over the generic entry ring and return
    the distinct nonzero entries in canonical form.

    Exactly four independent relations must come out, matching the known
    closed-subgroup equations; any other outcome means the supertranspose
    sign convention is wrong and raises ConventionMismatch.
    """
    sig = _generic_signature(field)
    g = sig.gen
    b = generic_conformal_matrix(sig)
    z = b.berezinian() ** 2
    h = h_form(sig)
    diff = (b.supertranspose(convention) @ h @ b) - h.scale(z)
    found = {_canonical_relation(p) for row in diff.entries for p in row
             if not p.is_zero()}

    targets = {
        g("e") ** 2 + 2 * g("alpha") * g("beta") - z,
        g("a") * g("d") - g("b") * g("c") - g("gamma") * g("delta") - z,
        g("a") * g("beta") - g("c") * g("alpha") - g("e") * g("gamma"),
        g("b") * g("beta") - g("d") * g("alpha") - g("e") * g("delta"),
    }
    targets = {_canonical_relation(p) for p in targets}
    if found != targets:
        raise ConventionMismatch(
            f"expansion produced {len(found)} relations that do not match "
            f"the expected four; flip the supertranspose convention")
    return sorted(found, key=lambda p: (len(p.terms), p.to_string()))
