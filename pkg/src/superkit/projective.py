"""Charts of projective superspace and the matrix action on its points.

P^{m|n} is covered by m+1 affine charts U_i with even coordinates
x_k^i = z_k/z_i (k != i) and odd coordinates xi_l^i = zeta_l/z_i.  This
module builds the chart rings, the change-of-chart morphisms between
them, points over a Grassmann coefficient ring, the action of an
invertible (m+1|n)-supermatrix on points, and the coordinate-level map
that such a matrix induces on a chart.  It ends with the two-chart
automorphism of P^{1|2} that no matrix induces.
"""

from __future__ import annotations

from .errors import (ChartMiss, MembershipError, NotInvertible,
                     SignatureMismatch)
from .fields import RATIONALS, FieldSpec
from .morphisms import AlgebraMorphism, compose_morphisms
from .superpoly import RingSignature, SuperPoly, transport
from .supermatrix import SuperMatrix


def x_name(k: int, i: int) -> str:
    return f"x{k}_{i}"


def xi_name(l: int, i: int) -> str:
    return f"xi{l}_{i}"


def chart_signature(m: int, n: int, i: int, field: FieldSpec = RATIONALS,
                    laurent=(), thetas: tuple[str, ...] = ()) -> RingSignature:
    """Coordinate ring of the chart U_i of P^{m|n}.

    Even generators x{k}_{i} for k != i in increasing k, odd generators
    xi{1}_{i}..xi{n}_{i}; `laurent` lists the k whose generator is
    inverted.  `thetas` appends odd Grassmann coefficients, kept last so
    that chart generators occupy the leading word positions.
    """
    if not (m >= 1 and n >= 0 and 0 <= i <= m):
        raise SignatureMismatch(f"no chart {i} on P^{m}|{n}")
    flags = set(laurent)
    if not flags <= {k for k in range(m + 1) if k != i}:
        raise SignatureMismatch(f"laurent indices {sorted(flags)} not coordinates of chart {i}")
    even = tuple((x_name(k, i), k in flags) for k in range(m + 1) if k != i)
    odd = tuple(xi_name(l, i) for l in range(1, n + 1)) + tuple(thetas)
    return RingSignature(field, even, odd)


def chart_change(i: int, j: int, m: int, n: int, field: FieldSpec = RATIONALS,
                 extra_laurent=(), thetas: tuple[str, ...] = ()) -> AlgebraMorphism:
    """The change of charts O(U_j)[1/x_i^j] -> O(U_i)[1/x_j^i].

    Sends x_k^j to x_k^i/x_j^i, x_i^j to 1/x_j^i and xi_l^j to
    xi_l^i/x_j^i.  `extra_laurent` further localizes the source at the
    listed x_k^j; the target then inverts the matching x_k^i as well, so
    that composites on deeper overlaps stay within signature.
    """
    if i == j:
        raise SignatureMismatch("chart change needs two distinct charts")
    extra = set(extra_laurent) - {i}
    source = chart_signature(m, n, j, field, laurent={i} | extra, thetas=thetas)
    target = chart_signature(m, n, i, field, laurent={j} | extra, thetas=thetas)
    inv = target.monomial({x_name(j, i): -1})
    images: dict[str, SuperPoly] = {}
    for k in range(m + 1):
        if k == j:
            continue
        images[x_name(k, j)] = inv if k == i else target.gen(x_name(k, i)) * inv
    for l in range(1, n + 1):
        images[xi_name(l, j)] = target.gen(xi_name(l, i)) * inv
    for name in thetas:
        images[name] = target.gen(name)
    return AlgebraMorphism(source, target, images)


class ProjPoint:
    """A point of P^{m|n} over a Grassmann coefficient ring.

    Stored as homogeneous coordinates: m+1 even entries and n odd ones,
    all constants (their common signature has no even generators).  At
    least one even entry must be invertible; over the local coefficient
    ring this is exactly membership in some chart.  Two coordinate
    tuples denote the same point when one is an even unit times the
    other, so equality and hashing go through a canonical rescaling: the
    first invertible entry is made 1.  Invertibility is preserved by
    unit rescaling, hence the chosen index is an invariant of the point.
    """

    __slots__ = ("m", "n", "even", "odd", "_canon")

    def __init__(self, even, odd=()):
        self.even = tuple(even)
        self.odd = tuple(odd)
        if not self.even:
            raise MembershipError("a projective point needs an even coordinate")
        self.m = len(self.even) - 1
        self.n = len(self.odd)
        sig = self.even[0].sig
        if sig.even_gens:
            raise SignatureMismatch("point coordinates must be Grassmann constants")
        for z in self.even:
            if z.sig != sig:
                raise SignatureMismatch("coordinates over mixed rings")
            if not z.is_homogeneous(0):
                raise MembershipError("even coordinate slot holds an odd value")
        for z in self.odd:
            if z.sig != sig:
                raise SignatureMismatch("coordinates over mixed rings")
            if not z.is_homogeneous(1):
                raise MembershipError("odd coordinate slot holds an even value")
        if not any(z.is_invertible() for z in self.even):
            raise MembershipError("no coordinate with unit body: not a point of any chart")
        self._canon = None

    @property
    def sig(self) -> RingSignature:
        return self.even[0].sig

    def chart_index(self) -> int:
        """Index of the first chart containing the point."""
        for k, z in enumerate(self.even):
            if z.is_invertible():
                return k
        raise MembershipError("no coordinate with unit body")  # unreachable

    def _canonical(self):
        if self._canon is None:
            u = self.even[self.chart_index()].invert()
            self._canon = (tuple(u * z for z in self.even),
                           tuple(u * z for z in self.odd))
        return self._canon

    def __eq__(self, other):
        if not isinstance(other, ProjPoint):
            return NotImplemented
        return (self.m, self.n) == (other.m, other.n) and \
            self._canonical() == other._canonical()

    def __hash__(self):
        return hash((self.m, self.n, self._canonical()))

    def __repr__(self):
        coords = ", ".join(str(z) for z in self.even + self.odd)
        return f"ProjPoint({coords})"


def normalize_point(p: ProjPoint, i: int) -> list[SuperPoly]:
    """Affine coordinates of p in the chart U_i.

    Returns z_k/z_i for k != i in increasing k, then the odd
    coordinates over z_i.  Raises ChartMiss when z_i has nilpotent body.
    """
    if not 0 <= i <= p.m:
        raise ChartMiss(f"no chart {i} on P^{p.m}|{p.n}")
    if not p.even[i].is_invertible():
        raise ChartMiss(f"coordinate {i} has no unit body")
    u = p.even[i].invert()
    return [u * z for k, z in enumerate(p.even) if k != i] + [u * z for z in p.odd]


def act(t: SuperMatrix, p: ProjPoint) -> ProjPoint:
    """Move p by the invertible matrix t: coordinates map to t times them.

    Scalar matrices act trivially, so this is a PGL action on points.
    """
    if t.sig != p.sig or (t.m, t.n) != (p.m + 1, p.n):
        raise SignatureMismatch("matrix does not match the point's space")
    if not t.is_invertible():
        raise NotInvertible("the action needs an invertible matrix")
    vec = p.even + p.odd
    d = len(vec)
    rows = [sum((t.entries[r][c] * vec[c] for c in range(d)), start=p.sig.zero())
            for r in range(d)]
    return ProjPoint(rows[:p.m + 1], rows[p.m + 1:])


def _negative_gens(p: SuperPoly) -> set[str]:
    names = set()
    for (exps, _), _ in p.terms:
        for a, (name, _) in zip(exps, p.sig.even_gens):
            if a < 0:
                names.add(name)
    return names


def induced_chart_map(t: SuperMatrix, i: int, extra_laurent=()) -> AlgebraMorphism:
    """The coordinate map t induces on the chart U_i.

    Substitutes the homogeneous linear images and divides by the image
    of z_i, so x_k^i maps to (sum_c t[k,c] w_c) / (sum_c t[i,c] w_c)
    with w the chart coordinates extended by w_i = 1.  The target is the
    chart ring localized at exactly the generators the images (and the
    inverses owed to `extra_laurent` source localizations) need.  Raises
    NotInvertible when the denominator's body is not a unit monomial on
    the chart; the map is partial in that case, and deliberately so.
    """
    m, n = t.m - 1, t.n
    if t.sig.even_gens:
        raise SignatureMismatch("matrix coefficients must be Grassmann constants")
    if not t.is_invertible():
        raise NotInvertible("only invertible matrices induce chart maps")
    field = t.sig.field
    thetas = t.sig.odd_gens
    extra = set(extra_laurent)
    scratch = chart_signature(m, n, i, field,
                              laurent=[k for k in range(m + 1) if k != i],
                              thetas=thetas)
    vec = [scratch.one() if c == i else scratch.gen(x_name(c, i))
           for c in range(m + 1)]
    vec += [scratch.gen(xi_name(l, i)) for l in range(1, n + 1)]
    d = m + 1 + n
    rows = [sum((transport(t.entries[r][c], scratch) * vec[c] for c in range(d)),
                start=scratch.zero()) for r in range(d)]
    dinv = rows[i].invert()
    raw: dict[str, SuperPoly] = {}
    for k in range(m + 1):
        if k != i:
            raw[x_name(k, i)] = rows[k] * dinv
    for l in range(1, n + 1):
        raw[xi_name(l, i)] = rows[m + l] * dinv
    needed: set[str] = set()
    for img in raw.values():
        needed |= _negative_gens(img)
    for k in extra:
        # the morphism must invert these images; localize for their inverses
        needed |= _negative_gens(raw[x_name(k, i)].invert())
    needed_ks = [k for k in range(m + 1) if k != i and x_name(k, i) in needed]
    source = chart_signature(m, n, i, field, laurent=extra, thetas=thetas)
    target = chart_signature(m, n, i, field, laurent=needed_ks, thetas=thetas)
    images = {name: transport(img, target) for name, img in raw.items()}
    for name in thetas:
        images[name] = target.gen(name)
    return AlgebraMorphism(source, target, images)


def induced_maps_commute(t: SuperMatrix, i: int, j: int) -> bool:
    """Whether t's chart maps agree across the change of charts i, j.

    Compares phi_i composed with the chart change against the chart
    change composed with phi_j, generator by generator, inside a common
    deep localization of the chart-i ring.  Partiality caveat: raises
    NotInvertible when either induced map fails to exist on the overlap.
    """
    m, n = t.m - 1, t.n
    field = t.sig.field
    thetas = t.sig.odd_gens
    phi_i = induced_chart_map(t, i, extra_laurent=(j,))
    phi_j = induced_chart_map(t, j, extra_laurent=(i,))
    change = chart_change(i, j, m, n, field, thetas=thetas)
    fj = [k for k in range(m + 1)
          if k != j and phi_j.target.is_laurent(x_name(k, j))]
    change_after = chart_change(i, j, m, n, field,
                                extra_laurent=fj, thetas=thetas)
    deep = chart_signature(m, n, i, field,
                           laurent=[k for k in range(m + 1) if k != i],
                           thetas=thetas)
    names = [x_name(k, j) for k in range(m + 1) if k != j]
    names += [xi_name(l, j) for l in range(1, n + 1)]
    for name in names:
        lhs = phi_i.apply(change.apply(change.source.gen(name)))
        rhs = change_after.apply(
            transport(phi_j.apply(phi_j.source.gen(name)), change_after.source))
        if transport(lhs, deep) != transport(rhs, deep):
            return False
    return True


def p12_witness(field: FieldSpec = RATIONALS):
    """The two-chart automorphism of P^{1|2} that no matrix induces.

    On U_0 with coordinates (u, mu1, mu2) it sends u to u + mu1*mu2 and
    fixes the odd coordinates; on U_1 with (v, nu1, nu2) it sends v to
    v - nu1*nu2.  Returns the pair of chart morphisms and a report
    checking that each piece is invertible, that the pieces glue across
    the chart change (v to 1/u, nu_l to mu_l/u), and that the mu1*mu2
    coefficient in the u-image is a unit.  A matrix-induced map can only
    carry a nilpotent coefficient there, so a unit witnesses an
    automorphism of P^{1|2} beyond the matrix group's reach.
    """
    u_sig = RingSignature(field, (("u", False),), ("mu1", "mu2"))
    v_sig = RingSignature(field, (("v", False),), ("nu1", "nu2"))
    u, mu1, mu2 = u_sig.gen("u"), u_sig.gen("mu1"), u_sig.gen("mu2")
    v, nu1, nu2 = v_sig.gen("v"), v_sig.gen("nu1"), v_sig.gen("nu2")
    phi0 = AlgebraMorphism(u_sig, u_sig, {"u": u + mu1 * mu2, "mu1": mu1, "mu2": mu2})
    phi0_inv = AlgebraMorphism(u_sig, u_sig, {"u": u - mu1 * mu2, "mu1": mu1, "mu2": mu2})
    phi1 = AlgebraMorphism(v_sig, v_sig, {"v": v - nu1 * nu2, "nu1": nu1, "nu2": nu2})
    phi1_inv = AlgebraMorphism(v_sig, v_sig, {"v": v + nu1 * nu2, "nu1": nu1, "nu2": nu2})
    ident0, ident1 = AlgebraMorphism.identity(u_sig), AlgebraMorphism.identity(v_sig)
    invertible = (compose_morphisms(phi0, phi0_inv) == ident0
                  and compose_morphisms(phi0_inv, phi0) == ident0
                  and compose_morphisms(phi1, phi1_inv) == ident1
                  and compose_morphisms(phi1_inv, phi1) == ident1)
    loc = RingSignature(field, (("u", True),), ("mu1", "mu2"))
    uinv = loc.monomial({"u": -1})
    change = AlgebraMorphism(v_sig, loc, {
        "v": uinv, "nu1": loc.gen("mu1") * uinv, "nu2": loc.gen("mu2") * uinv})
    phi0_loc = AlgebraMorphism(loc, loc, {name: transport(img, loc)
                                          for name, img in phi0.images.items()})
    glues = compose_morphisms(change, phi1) == compose_morphisms(phi0_loc, change)
    coeff = phi0.images["u"].coefficient(((0,), (0, 1)))
    report = {
        "invertible": invertible,
        "glues": glues,
        "mu_coefficient": field.fmt(coeff),
        "coefficient_is_unit": not field.is_zero(coeff),
        "u_image": phi0.images["u"].to_string(),
        "v_image": phi1.images["v"].to_string(),
    }
    return (phi0, phi1), report
