"""Conjugation action on the full matrix algebra, packed as one big matrix,
and the reconstruction of a conjugator from its action.

Packing convention.  Positions (i,j) index the elementary matrices; even
positions (both indices on the same side of the m|n split) come first, then
odd positions, each group lexicographic.  The naive array
X[(k,l),(p,q)] = psi(e_pq)_{kl} is NOT multiplicative for matrices with odd
entries: composing two conjugations introduces Koszul signs when coefficients
pass the basis elements.  Storing the twisted entries

    X[(k,l),(p,q)] = (-1)^((|l|+|q|)(|p|+|q|)) * psi(e_pq)_{kl}

makes plain block-matrix multiplication agree with composition exactly,
sends the identity to the identity, and keeps the even-supermatrix block
pattern.  The twist is its own inverse, so unpacking uses the same sign.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (DegenerateIdempotent, NotAutomorphism, NotInvertible,
                     SignatureMismatch)
from .superpoly import RingSignature
from .supermatrix import SuperMatrix


def basis_positions(m: int, n: int) -> list[tuple[int, int]]:
    d = m + n
    par = lambda k: 0 if k < m else 1
    even = [(i, j) for i in range(d) for j in range(d) if par(i) == par(j)]
    odd = [(i, j) for i in range(d) for j in range(d) if par(i) != par(j)]
    return even + odd


@dataclass(frozen=True)
class ConjRep:
    """Action on the matrix algebra in the packed basis; size
    (m^2+n^2)|(2mn) over the coefficient ring."""
    m: int
    n: int
    psi: SuperMatrix

    def __post_init__(self):
        want = (self.m * self.m + self.n * self.n, 2 * self.m * self.n)
        if (self.psi.m, self.psi.n) != want:
            raise SignatureMismatch(
                f"packed matrix must be {want[0]}|{want[1]}")


def _twist_sign(m: int, k: int, l: int, p: int, q: int) -> int:
    par = lambda t: 0 if t < m else 1
    return -1 if ((par(l) + par(q)) * (par(p) + par(q))) % 2 else 1


def pack_images(m: int, n: int, images: dict) -> ConjRep:
    """images[(p,q)] = the matrix image of e_pq; applies the twist."""
    pos = basis_positions(m, n)
    sig = next(iter(images.values())).sig
    rows = []
    for (k, l) in pos:
        row = []
        for (p, q) in pos:
            v = images[(p, q)].entries[k][l]
            if _twist_sign(m, k, l, p, q) < 0:
                v = -v
            row.append(v)
        rows.append(row)
    return ConjRep(m, n, SuperMatrix(m * m + n * n, 2 * m * n, rows))


def unpack_images(rep: ConjRep) -> dict:
    """Inverse of pack_images: the matrix image of each basis position."""
    pos = basis_positions(rep.m, rep.n)
    d = rep.m + rep.n
    sig = rep.psi.sig
    out = {}
    for col, (p, q) in enumerate(pos):
        img = [[sig.zero()] * d for _ in range(d)]
        for row, (k, l) in enumerate(pos):
            v = rep.psi.entries[row][col]
            if _twist_sign(rep.m, k, l, p, q) < 0:
                v = -v
            img[k][l] = v
        out[(p, q)] = SuperMatrix(rep.m, rep.n, img)
    return out


def conj_rep(t: SuperMatrix) -> ConjRep:
    """The action X -> T X T^-1 in the packed basis.

    Multiplicative (conj_rep(T1 T2) = conj_rep(T1) @ conj_rep(T2)) and
    blind to even unit scalars, which is the quotient-by-scalars property.
    """
    tinv = t.minverse()
    m, n = t.m, t.n
    images = {}
    for (p, q) in basis_positions(m, n):
        e = SuperMatrix.elementary(m, n, t.sig, p, q)
        images[(p, q)] = t @ e @ tinv
    return pack_images(m, n, images)


def check_relations(rep: ConjRep) -> bool:
    """The characterizing identities of a conjugation action: the diagonal
    images resolve the identity, and images compose like matrix units
    (psi(e_ij) psi(e_kl) = delta_jk psi(e_il))."""
    images = unpack_images(rep)
    m, n = rep.m, rep.n
    d = m + n
    sig = rep.psi.sig
    total = SuperMatrix.zeros(m, n, sig)
    for i in range(d):
        total = total + images[(i, i)]
    if total != SuperMatrix.identity(m, n, sig):
        return False
    zero = SuperMatrix.zeros(m, n, sig)
    for (i, j) in basis_positions(m, n):
        for (k, l) in basis_positions(m, n):
            prod = images[(i, j)] @ images[(k, l)]
            want = images[(i, l)] if j == k else zero
            if prod != want:
                return False
    return True


def reconstruct_T(rep: ConjRep) -> SuperMatrix:
    """Recover a conjugator from its action, up to an even unit scalar.

    The first diagonal image is a rank-one idempotent; any of its columns
    with invertible body generates the image line, and hitting that column
    with the psi(e_i0) transports it to the other coordinate lines.  The
    result is normalized so its first invertible-body entry is 1 and then
    verified by re-deriving the action.
    """
    if not check_relations(rep):
        raise NotAutomorphism("packed matrix fails the composition relations")
    images = unpack_images(rep)
    m, n = rep.m, rep.n
    d = m + n
    p0 = images[(0, 0)]
    col = None
    for j in range(d):
        if any(p0.entries[i][j].body().is_invertible() for i in range(d)):
            col = j
            break
    if col is None:
        raise DegenerateIdempotent("no column of the first idempotent image "
                                   "has an invertible body")
    t1 = [p0.entries[i][col] for i in range(d)]
    cols = []
    for i in range(d):
        img = images[(i, 0)]
        cols.append([sum((img.entries[r][k] * t1[k] for k in range(d)),
                         start=img.sig.zero()) for r in range(d)])
    entries = [[cols[j][i] for j in range(d)] for i in range(d)]
    t = SuperMatrix(m, n, entries)
    unit = None
    for row in t.entries:
        for v in row:
            if v.is_invertible():
                unit = v
                break
        if unit is not None:
            break
    if unit is None:
        raise DegenerateIdempotent("reconstructed matrix has no unit entry")
    t = t.scale(unit.invert())
    try:
        again = conj_rep(t)
    except NotInvertible:
        raise NotAutomorphism("reconstructed matrix is not invertible")
    if again != rep:
        raise NotAutomorphism("reconstructed matrix does not induce the "
                              "given action")
    return t


def rep_to_json(rep: ConjRep) -> dict:
    from .supermatrix import matrix_to_json
    return {"m": rep.m, "n": rep.n, "psi": matrix_to_json(rep.psi)}


def rep_from_json(data: dict, sig: RingSignature) -> ConjRep:
    from .supermatrix import matrix_from_json
    try:
        m = int(data["m"])
        n = int(data["n"])
        psi = matrix_from_json(data["psi"], sig)
    except (KeyError, TypeError, ValueError) as exc:
        raise SignatureMismatch(f"bad packed-action encoding: {exc}") from None
    return ConjRep(m, n, psi)
