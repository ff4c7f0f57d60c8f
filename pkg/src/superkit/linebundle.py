"""Cocycle normalization for line bundles on the 1|1 projective line.

A bundle is given by one transition function g on the overlap of the two
charts: an invertible even element of Lambda_q[x, 1/x, xi].  Over the
local coefficient ring every such g factors as h0^-1 * x^n * h1 with h0
regular on the x-chart and h1 regular on the 1/x-chart, so the integer n
classifies the bundle.  normalize_cocycle computes that factorization
exactly: a log/exp splitting of the nilpotent part handles the even
direction, and a further unit fixes the one term (xi at x-degree 0) that
the splitting can leave stranded where the second chart cannot read it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotInvertible, NotUnit, ParityError, RegularityFailure
from .fields import RATIONALS, FieldSpec
from .superpoly import RingSignature, SuperPoly


def cocycle_sig(q: int, field: FieldSpec = RATIONALS) -> RingSignature:
    """The overlap ring: x inverted, odd coordinate xi, q Grassmann thetas.

    xi sits first among the odd generators so that chart-level degree
    counts read off the leading word position.
    """
    return RingSignature(field, (("x", True),),
                         ("xi",) + tuple(f"t{i}" for i in range(1, q + 1)))


def _x_exp(p: SuperPoly, term_key) -> int:
    exps, _ = term_key
    return exps[0]


def degree(g: SuperPoly) -> int:
    """The x-exponent of the body monomial of an invertible even cocycle."""
    if not g.is_homogeneous(0):
        raise ParityError("a cocycle must be even")
    if not g.is_invertible():
        raise NotUnit("cocycle body is not a unit monomial")
    body = g.body()
    (exps, _), _ = body.terms[0]
    return exps[0]


def _u0_regular(h: SuperPoly) -> bool:
    return all(_x_exp(h, key) >= 0 for key, _ in h.terms)


def _u1_regular(h: SuperPoly) -> bool:
    # on the far chart the coordinates are 1/x and xi/x, so a xi-term
    # needs one spare negative power of x
    for (exps, word), _ in h.terms:
        bound = -1 if 0 in word else 0
        if exps[0] > bound:
            return False
    return True


def _x_slice(h: SuperPoly, e: int) -> SuperPoly:
    terms = tuple(t for t in h.terms if _x_exp(h, t[0]) == e)
    return SuperPoly(h.sig, terms)


def _nilpotent_exp(v: SuperPoly) -> SuperPoly:
    field = v.sig.field
    acc = v.sig.one()
    term = v.sig.one()
    k = 1
    while True:
        term = term * v * field.inv(k)
        if term.is_zero():
            return acc
        acc = acc + term
        k += 1


def _nilpotent_log1p(v: SuperPoly) -> SuperPoly:
    field = v.sig.field
    acc = v.sig.zero()
    power = v
    k = 1
    while not power.is_zero():
        coeff = field.inv(k) if k % 2 else field.neg(field.inv(k))
        acc = acc + power * coeff
        power = power * v
        k += 1
    return acc


@dataclass(frozen=True)
class Trivialization:
    """The factorization data: h0 * g = x^n * h1 with both h regular units."""

    h0: SuperPoly
    h1: SuperPoly
    n: int

    def __post_init__(self):
        for h, reg, side in ((self.h0, _u0_regular, "x-chart"),
                             (self.h1, _u1_regular, "1/x-chart")):
            if not h.is_homogeneous(0):
                raise ParityError(f"{side} factor is not even")
            if not h.is_invertible():
                raise NotUnit(f"{side} factor is not a unit")
            if not reg(h):
                raise RegularityFailure(f"{side} factor leaves its chart")


def normalize_cocycle(g: SuperPoly) -> Trivialization:
    """Factor g as h0^-1 * x^n * h1 exactly.

    Writes g = c * x^n * (1 + nu) with nu nilpotent, splits
    log(1 + nu) into the positive x-degrees (absorbed into h0) and the
    rest (absorbed, with c, into h1).  If h1 then carries a xi-term at
    x-degree 0, which the second chart cannot represent, both factors
    are multiplied by the inverse of h1's full x-degree-0 slice; the
    common unit cancels in h0 * g * h1^-1, so the identity survives
    while the stranded term moves into h0 where it is regular.
    """
    field = g.sig.field
    q = len(g.sig.odd_gens)
    if field.p and field.p < q + 1:
        # the series below divide by integers up to the nilpotency order
        raise NotInvertible(
            f"characteristic {field.p} too small for {q} odd generators")
    n = degree(g)
    (_, _), c = g.body().terms[0]
    nu = g * g.sig.monomial({"x": -n}, field.inv(c)) - 1
    log = _nilpotent_log1p(nu)
    log_plus = SuperPoly(g.sig, tuple(t for t in log.terms if _x_exp(log, t[0]) > 0))
    log_minus = log - log_plus
    h0 = _nilpotent_exp(-log_plus)
    h1 = g.sig.scalar(c) * _nilpotent_exp(log_minus)
    slice0 = _x_slice(h1, 0)
    if any(0 in word for (_, word), _ in slice0.terms):
        u = slice0.invert()
        h0 = u * h0
        h1 = u * h1
    triv = Trivialization(h0, h1, n)
    if h0 * g != g.sig.monomial({"x": n}) * h1:
        raise RegularityFailure("factorization identity failed")
    return triv
