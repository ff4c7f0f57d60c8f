"""The SUSY structure on the 1|1 projective line.

Everything here works over a ring with homogeneous coordinates z0, z1
and an odd coordinate zeta (plus Grassmann constants).  The structure is
carried by the form s = z1 dz0 - z0 dz1 - zeta dzeta; its kernel among
linear vector fields is spanned by the Euler field and one odd field per
chart, whose chart restriction generates the SUSY distribution.

Two sign conventions are fixed here and validated by anchor identities
(s kills the Euler field and the distribution lift, and the restricted
generator squares to d/dw):
- the evaluation pairing reads coefficients left to right,
  (a dz)(c del_z) = a*c, with dz_i(del_z_j) = delta_ij, dzeta(del_zeta) = 1;
- the differential is an odd operator, so substituting a linear change
  of coordinates into dz_j costs d(g z)_j = sum_k (-1)^|g_jk| g_jk dz_k.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (ChartMiss, ConventionMismatch, NotInvertible, NotOdd,
                     ParityError, SignatureMismatch)
from .fields import RATIONALS, FieldSpec
from .morphisms import AlgebraMorphism
from .superpoly import RingSignature, SuperPoly, normalize, transport
from .supergroups import is_C
from .supermatrix import SuperMatrix


def susy_sig(q: int, field: FieldSpec = RATIONALS) -> RingSignature:
    """Homogeneous coordinates of P^{1|1} over Lambda_q, zeta leading."""
    return RingSignature(field, (("z0", False), ("z1", False)),
                         ("zeta",) + tuple(f"t{i}" for i in range(1, q + 1)))


def chart_ring(chart: int, q: int, field: FieldSpec = RATIONALS) -> RingSignature:
    """Affine coordinates: (w, eta) on chart 1, (u, eta) on chart 0."""
    if chart not in (0, 1):
        raise ChartMiss(f"P^1|1 has charts 0 and 1, not {chart}")
    name = "w" if chart == 1 else "u"
    return RingSignature(field, ((name, False),),
                         ("eta",) + tuple(f"t{i}" for i in range(1, q + 1)))


def _structural(sig: RingSignature):
    for name in ("z0", "z1", "zeta"):
        if not sig.has_gen(name):
            raise SignatureMismatch(f"ring has no generator {name!r}")
    i0 = next(i for i, (n, _) in enumerate(sig.even_gens) if n == "z0")
    i1 = next(i for i, (n, _) in enumerate(sig.even_gens) if n == "z1")
    iz = sig.odd_gens.index("zeta")
    return i0, i1, iz


def _coord_degree(p: SuperPoly, term) -> int:
    i0, i1, iz = _structural(p.sig)
    (exps, word), _ = term
    return exps[i0] + exps[i1] + (1 if iz in word else 0)


def _is_linear(p: SuperPoly) -> bool:
    return all(_coord_degree(p, t) == 1 for t in p.terms)


def _is_constant(p: SuperPoly) -> bool:
    return all(_coord_degree(p, t) == 0 for t in p.terms)


@dataclass(frozen=True)
class LinearOneForm:
    """a0 dz0 + a1 dz1 + b dzeta with linear coefficients, even in total."""

    a0: SuperPoly
    a1: SuperPoly
    b: SuperPoly

    def __post_init__(self):
        sig = self.a0.sig
        _structural(sig)
        for c, par, slot in ((self.a0, 0, "dz0"), (self.a1, 0, "dz1"),
                             (self.b, 1, "dzeta")):
            if c.sig != sig:
                raise SignatureMismatch("form coefficients over mixed rings")
            if not _is_linear(c):
                raise ParityError(f"coefficient of {slot} is not linear")
            if not c.is_homogeneous(par):
                raise ParityError(f"coefficient of {slot} has the wrong parity")

    @property
    def sig(self) -> RingSignature:
        return self.a0.sig


@dataclass(frozen=True)
class LinearVectorField:
    """c0 del_z0 + c1 del_z1 + e del_zeta, homogeneous of the given parity."""

    c0: SuperPoly
    c1: SuperPoly
    e: SuperPoly
    parity: int

    def __post_init__(self):
        sig = self.c0.sig
        _structural(sig)
        for c, par, slot in ((self.c0, self.parity, "del_z0"),
                             (self.c1, self.parity, "del_z1"),
                             (self.e, (self.parity + 1) % 2, "del_zeta")):
            if c.sig != sig:
                raise SignatureMismatch("field coefficients over mixed rings")
            if not _is_linear(c):
                raise ParityError(f"coefficient of {slot} is not linear")
            if not c.is_homogeneous(par):
                raise ParityError(f"coefficient of {slot} has the wrong parity")

    @property
    def sig(self) -> RingSignature:
        return self.c0.sig


def s_form(sig: RingSignature) -> LinearOneForm:
    """s = z1 dz0 - z0 dz1 - zeta dzeta."""
    return LinearOneForm(sig.gen("z1"), -sig.gen("z0"), -sig.gen("zeta"))


def euler_field(sig: RingSignature) -> LinearVectorField:
    return LinearVectorField(sig.gen("z0"), sig.gen("z1"), sig.gen("zeta"), 0)


def distribution_lift(sig: RingSignature, chart: int) -> LinearVectorField:
    """The odd field whose chart restriction generates the distribution."""
    zero = sig.zero()
    if chart == 1:
        return LinearVectorField(sig.gen("zeta"), zero, sig.gen("z1"), 1)
    if chart == 0:
        return LinearVectorField(zero, -sig.gen("zeta"), sig.gen("z0"), 1)
    raise ChartMiss(f"P^1|1 has charts 0 and 1, not {chart}")


def pair(omega: LinearOneForm, v: LinearVectorField) -> SuperPoly:
    """Evaluation pairing, coefficients multiplied left to right."""
    if omega.sig != v.sig:
        raise SignatureMismatch("form and field over different rings")
    return omega.a0 * v.c0 + omega.a1 * v.c1 + omega.b * v.e


def form_from_matrix(m: SuperMatrix) -> LinearOneForm:
    """The form whose dz_k-coefficient is row k of m times (z0, z1, zeta)."""
    if (m.m, m.n) != (2, 1):
        raise SignatureMismatch("need a 2|1 matrix")
    sig = m.sig
    coords = (sig.gen("z0"), sig.gen("z1"), sig.gen("zeta"))
    rows = [sum((m.entries[k][p] * coords[p] for p in range(3)),
                start=sig.zero()) for k in range(3)]
    return LinearOneForm(rows[0], rows[1], rows[2])


def _coordinate_substitution(g: SuperMatrix) -> AlgebraMorphism:
    # z |-> g z on generators; everything else is fixed
    sig = g.sig
    coords = (sig.gen("z0"), sig.gen("z1"), sig.gen("zeta"))
    images = {n: sig.gen(n) for n, _ in sig.even_gens}
    images.update({n: sig.gen(n) for n in sig.odd_gens})
    for j, name in enumerate(("z0", "z1", "zeta")):
        images[name] = sum((g.entries[j][k] * coords[k] for k in range(3)),
                           start=sig.zero())
    return AlgebraMorphism(sig, sig, images)


def pullback_s(g: SuperMatrix) -> LinearOneForm:
    """Substitute z |-> g z and dz |-> g dz (d odd) into s.

    Invertibility of g is deliberately not required: the substitution is
    defined for every even matrix, which lets the identity
    pullback_s(g) = form_from_matrix(g^st H g) be verified over a ring
    of generic entries.  The SUSY-preservation predicate is the place
    where invertibility matters, and it checks it.
    """
    if (g.m, g.n) != (2, 1):
        raise SignatureMismatch("need a 2|1 matrix")
    if not g.is_even_matrix():
        raise ParityError("only even matrices act on the coordinates")
    sig = g.sig
    sub = _coordinate_substitution(g)
    s = s_form(sig)
    coeffs = (s.a0, s.a1, s.b)
    out = []
    for k in range(3):
        total = sig.zero()
        for j in range(3):
            entry = g.entries[j][k]
            if (j < 2) != (k < 2):
                entry = -entry  # d passes an odd entry of g
            total = total + sub.apply(coeffs[j]) * entry
        out.append(total)
    return LinearOneForm(out[0], out[1], out[2])


def transform_field(g: SuperMatrix, v: LinearVectorField) -> LinearVectorField:
    """Conjugate v by the coordinate change of g: Sub_g^-1 after v after Sub_g."""
    if not g.is_invertible():
        raise NotInvertible("field transport needs an invertible matrix")
    sub = _coordinate_substitution(g)
    back = _coordinate_substitution(g.minverse())
    images = {"z0": v.c0, "z1": v.c1, "zeta": v.e}

    def push(name: str) -> SuperPoly:
        return back.apply(sub.apply(v.sig.gen(name)).derive(images, v.parity))

    return LinearVectorField(push("z0"), push("z1"), push("zeta"), v.parity)


@dataclass(frozen=True, eq=False)
class ChartDerivation:
    """A derivation of a chart ring, given by its generator images.

    Grassmann constants map to 0; the super-Leibniz rule is supplied by
    the evaluator.
    """

    chart: int
    sig: RingSignature
    images: dict[str, SuperPoly]
    parity: int

    def __post_init__(self):
        for name in (self.coord_name(), "eta"):
            img = self.images.get(name)
            if img is None:
                raise SignatureMismatch(f"no image for {name!r}")
            if img.sig != self.sig:
                raise SignatureMismatch(f"image of {name!r} over the wrong ring")
            want = (self.parity + self.sig.parity_of(name)) % 2
            if not img.is_homogeneous(want):
                raise ParityError(f"image of {name!r} breaks the declared parity")

    def coord_name(self) -> str:
        return "w" if self.chart == 1 else "u"

    def apply(self, p: SuperPoly) -> SuperPoly:
        return p.derive(self.images, self.parity)

    def is_zero(self) -> bool:
        return all(img.is_zero() for img in self.images.values())

    def __eq__(self, other):
        if not isinstance(other, ChartDerivation):
            return NotImplemented
        if (self.chart, self.sig) != (other.chart, other.sig):
            return False
        names = (self.coord_name(), "eta")
        if any(self.images[n] != other.images[n] for n in names):
            return False
        return self.parity == other.parity or self.is_zero()

    def __repr__(self):
        w = self.coord_name()
        return (f"ChartDerivation(chart={self.chart}, {w} -> "
                f"{self.images[w]}, eta -> {self.images['eta']})")


def restrict_to_chart(v: LinearVectorField, chart: int) -> ChartDerivation:
    """The chart derivation D(w) = v(z0/z1), D(eta) = v(zeta/z1) on chart 1,
    and symmetrically (with u = z1/z0) on chart 0.

    Quotients are computed in the localized homogeneous ring, then
    rewritten in the chart coordinates: a monomial z0^a z1^b zeta^c maps
    to w^a eta^c, which needs a + b + c = 0.  Linearity of v makes every
    restricted value invariant, so the rewrite never fails on legal
    input.  zeta and eta share the leading word position, hence no signs.
    """
    sig = v.sig
    i0, i1, iz = _structural(sig)
    if {i0, i1} != {0, 1} or iz != 0:
        raise SignatureMismatch("chart restriction expects the plain z0, z1, zeta ring")
    if chart not in (0, 1):
        raise ChartMiss(f"P^1|1 has charts 0 and 1, not {chart}")
    field = sig.field
    thetas = sig.odd_gens[1:]
    loc = RingSignature(field, (("z0", chart == 0), ("z1", chart == 1)),
                        sig.odd_gens)
    den = "z1" if chart == 1 else "z0"
    num = "z0" if chart == 1 else "z1"
    images = {"z0": transport(v.c0, loc), "z1": transport(v.c1, loc),
              "zeta": transport(v.e, loc)}
    target = chart_ring(chart, len(thetas), field)

    coord = target.even_gens[0][0]
    odd_names = ("eta",) + thetas  # position-preserving: zeta and eta both lead

    def dehomogenize(p: SuperPoly) -> SuperPoly:
        keep = 0 if chart == 1 else 1  # the exponent that survives as w or u
        raw = []
        for (exps, word), c in p.terms:
            if exps[0] + exps[1] + (1 if 0 in word else 0) != 0:
                raise ChartMiss("value is not invariant under rescaling")
            raw.append(({coord: exps[keep]}, tuple(odd_names[i] for i in word), c))
        return normalize(target, raw)

    dinv = loc.monomial({den: -1})
    d_even = (loc.gen(num) * dinv).derive(images, v.parity)
    d_eta = (loc.gen("zeta") * dinv).derive(images, v.parity)
    return ChartDerivation(chart, target,
                           {coord: dehomogenize(d_even),
                            "eta": dehomogenize(d_eta)}, v.parity)


def super_bracket(d1: ChartDerivation, d2: ChartDerivation) -> ChartDerivation:
    """[d1, d2] = d1 d2 - (-1)^{|d1||d2|} d2 d1, evaluated on generators."""
    if (d1.chart, d1.sig) != (d2.chart, d2.sig):
        raise SignatureMismatch("brackets need derivations of one chart")
    sign = -1 if d1.parity * d2.parity % 2 else 1
    images = {}
    for name in (d1.coord_name(), "eta"):
        cross = d2.apply(d1.images[name])
        images[name] = d1.apply(d2.images[name]) - sign * cross
    return ChartDerivation(d1.chart, d1.sig, images, (d1.parity + d2.parity) % 2)


def frobenius_check(d: ChartDerivation) -> bool:
    """Whether d, d squared frame the chart's 1|1 tangent everywhere.

    Decomposes [d,d]/2 as a*del_w + b*d by solving on the generators; d
    frames the chart exactly when a is a unit.  Over the polynomial
    chart ring a unit at every point must be a unit constant, so the
    test is a.is_invertible() after reduction along d's eta-component.
    """
    if d.parity != 1:
        raise NotOdd("the Frobenius test applies to odd derivations")
    half = d.sig.field.inv(2)
    sq = super_bracket(d, d)
    w = d.coord_name()
    b_eta, b_w = sq.images["eta"] * half, sq.images[w] * half
    d_eta = d.images["eta"]
    if not d_eta.is_invertible():
        return False
    b = b_eta * d_eta.invert()
    a = b_w - b * d.images[w]
    return a.is_invertible()


def is_susy_preserving(g: SuperMatrix):
    """Whether the coordinate change of g scales s by an even unit constant.

    Computed two independent ways and cross-checked: the pullback of s
    must be t*s coefficient-for-coefficient with t an invertible even
    constant, and g must satisfy the conformal equations, in which case
    t is the squared berezinian.  Returns (True, t) or (False, None);
    the answer is a class function of the projective linear group, so
    rescaling g by an even unit does not change it.
    """
    if not g.is_even_matrix():
        raise ParityError("only even matrices induce maps of P^1|1")
    if not g.is_invertible():
        raise NotInvertible("only invertible matrices induce automorphisms")
    base = g.sig
    if base.even_gens:
        raise SignatureMismatch("matrix coefficients must be Grassmann constants")
    sig = RingSignature(base.field, (("z0", False), ("z1", False)),
                        ("zeta",) + base.odd_gens)
    lift = SuperMatrix(2, 1, [[transport(g.entries[r][c], sig) for c in range(3)]
                              for r in range(3)])
    pulled = pullback_s(lift)
    t0 = pulled.a0.divide_by_gen("z1")
    t1 = pulled.a1.divide_by_gen("z0")
    t2 = pulled.b.divide_by_gen("zeta")
    proportional = (t0 is not None and t1 is not None and t2 is not None
                    and t0 == -t1 and t0 == -t2
                    and _is_constant(t0) and t0.is_homogeneous(0)
                    and t0.is_invertible())
    conformal, square = is_C(g)
    if proportional != conformal:
        raise ConventionMismatch(
            "pullback proportionality and the conformal equations disagree")
    if not proportional:
        return False, None
    t = transport(t0, base)
    if t != square:
        raise ConventionMismatch("the scale of s is not the squared berezinian")
    return True, t
