"""Block (m|n) supermatrix arithmetic over a shared ring signature.

A group-flavored ("even") supermatrix has even entries in the diagonal A, D
blocks and odd entries in the off-diagonal B, C blocks.  Determinants only
ever touch the A/D blocks, whose entries are central, so the classical
formulas apply verbatim; everything else (supertranspose, Berezinian, block
inversion) is written against that convention.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import (NotInvertible, ParityError, SignatureMismatch,
                     SuperkitError)
from .superpoly import RingSignature, SuperPoly


class SuperMatrix:
    __slots__ = ("m", "n", "sig", "entries")

    def __init__(self, m: int, n: int, entries):
        self.m = m
        self.n = n
        rows = tuple(tuple(row) for row in entries)
        d = m + n
        if len(rows) != d or any(len(r) != d for r in rows):
            raise SignatureMismatch(f"need a {d}x{d} entry array")
        sig = rows[0][0].sig
        for row in rows:
            for p in row:
                if p.sig != sig:
                    raise SignatureMismatch("entries over different signatures")
        self.sig = sig
        self.entries = rows

    # -- constructors ----------------------------------------------------

    @staticmethod
    def from_rows(m: int, n: int, rows) -> "SuperMatrix":
        return SuperMatrix(m, n, rows)

    @staticmethod
    def identity(m: int, n: int, sig: RingSignature) -> "SuperMatrix":
        d = m + n
        return SuperMatrix(m, n, [[sig.one() if i == j else sig.zero()
                                   for j in range(d)] for i in range(d)])

    @staticmethod
    def zeros(m: int, n: int, sig: RingSignature) -> "SuperMatrix":
        d = m + n
        return SuperMatrix(m, n, [[sig.zero()] * d for _ in range(d)])

    @staticmethod
    def elementary(m: int, n: int, sig: RingSignature, i: int, j: int,
                   value=None) -> "SuperMatrix":
        d = m + n
        v = sig.one() if value is None else value
        return SuperMatrix(m, n, [[v if (r, c) == (i, j) else sig.zero()
                                   for c in range(d)] for r in range(d)])

    def pos_parity(self, k: int) -> int:
        return 0 if k < self.m else 1

    # -- ring operations ---------------------------------------------------

    def _check_like(self, other: "SuperMatrix"):
        if (self.m, self.n) != (other.m, other.n):
            raise SignatureMismatch("block dimension mismatch")
        if self.sig != other.sig:
            raise SignatureMismatch("signature mismatch")

    def __matmul__(self, other: "SuperMatrix") -> "SuperMatrix":
        self._check_like(other)
        d = self.m + self.n
        rows = []
        for i in range(d):
            row = []
            for j in range(d):
                acc = self.sig.zero()
                for k in range(d):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            rows.append(row)
        return SuperMatrix(self.m, self.n, rows)

    def __add__(self, other: "SuperMatrix") -> "SuperMatrix":
        self._check_like(other)
        return SuperMatrix(self.m, self.n,
                           [[a + b for a, b in zip(r1, r2)]
                            for r1, r2 in zip(self.entries, other.entries)])

    def __sub__(self, other: "SuperMatrix") -> "SuperMatrix":
        self._check_like(other)
        return SuperMatrix(self.m, self.n,
                           [[a - b for a, b in zip(r1, r2)]
                            for r1, r2 in zip(self.entries, other.entries)])

    def __neg__(self) -> "SuperMatrix":
        return SuperMatrix(self.m, self.n,
                           [[-a for a in r] for r in self.entries])

    def scale(self, c) -> "SuperMatrix":
        """Left multiplication by a scalar ring element."""
        if isinstance(c, (int, Fraction)):
            c = self.sig.scalar(c)
        return SuperMatrix(self.m, self.n,
                           [[c * a for a in r] for r in self.entries])

    def __eq__(self, other):
        if not isinstance(other, SuperMatrix):
            return NotImplemented
        return (self.m, self.n) == (other.m, other.n) and \
            self.entries == other.entries

    def __hash__(self):
        return hash((self.m, self.n, self.entries))

    def __repr__(self):
        body = "; ".join(", ".join(str(e) for e in row) for row in self.entries)
        return f"SuperMatrix({self.m}|{self.n}: [{body}])"

    def is_even_matrix(self) -> bool:
        for i, row in enumerate(self.entries):
            for j, p in enumerate(row):
                want = (self.pos_parity(i) + self.pos_parity(j)) % 2
                if not p.is_homogeneous(want):
                    return False
        return True

    # -- super operations --------------------------------------------------

    def supertranspose(self, convention: str = "standard") -> "SuperMatrix":
        """Block transpose with a sign on one odd block.

        standard: A->A^T, B->C^T, C->-B^T, D->D^T; the alternative flips
        which odd block picks up the sign.  Only even inputs are meaningful.
        """
        d = self.m + self.n
        rows = []
        for i in range(d):
            row = []
            for j in range(d):
                v = self.entries[j][i]
                pi, pj = self.pos_parity(i), self.pos_parity(j)
                if convention == "standard":
                    sign = -1 if (pi * (pi + pj)) % 2 else 1
                elif convention == "flipped":
                    sign = -1 if (pj * (pi + pj)) % 2 else 1
                else:
                    raise ValueError(f"unknown convention {convention!r}")
                row.append(-v if sign < 0 else v)
            rows.append(row)
        return SuperMatrix(self.m, self.n, rows)

    def supertrace(self) -> SuperPoly:
        acc = self.sig.zero()
        for i in range(self.m):
            acc = acc + self.entries[i][i]
        for i in range(self.m, self.m + self.n):
            acc = acc - self.entries[i][i]
        return acc

    def _block(self, rows, cols):
        return [[self.entries[i][j] for j in cols] for i in rows]

    def blocks(self):
        er = range(self.m)
        orng = range(self.m, self.m + self.n)
        return (self._block(er, er), self._block(er, orng),
                self._block(orng, er), self._block(orng, orng))

    def berezinian(self) -> SuperPoly:
        """det(A - B D^-1 C) / det(D), falling back to the A-block formula."""
        a, b, c, d = self.blocks()
        if self.n == 0:
            return _det(self.sig, a)
        if self.m == 0:
            return _det(self.sig, d).invert()
        det_d = _det(self.sig, d)
        if det_d.is_invertible():
            dinv = _inv_even_block(self.sig, d, det_d)
            s = _mat_sub(a, _mat_mul(self.sig, _mat_mul(self.sig, b, dinv), c))
            return _det(self.sig, s) * det_d.invert()
        det_a = _det(self.sig, a)
        if det_a.is_invertible():
            ainv = _inv_even_block(self.sig, a, det_a)
            s = _mat_sub(d, _mat_mul(self.sig, _mat_mul(self.sig, c, ainv), b))
            return det_a * _det(self.sig, s).invert()
        raise NotInvertible("neither diagonal block is invertible")

    def is_invertible(self) -> bool:
        a, _, _, d = self.blocks()
        ok_a = self.m == 0 or _det(self.sig, a).is_invertible()
        ok_d = self.n == 0 or _det(self.sig, d).is_invertible()
        return ok_a and ok_d

    def minverse(self) -> "SuperMatrix":
        """Exact inverse by block elimination (both diagonal blocks must be
        invertible, which is the membership test for the general linear
        supergroup)."""
        sig = self.sig
        a, b, c, d = self.blocks()
        if self.n == 0:
            det_a = _det(sig, a)
            if not det_a.is_invertible():
                raise NotInvertible("A block is not invertible")
            return SuperMatrix(self.m, 0, _inv_even_block(sig, a, det_a))
        if self.m == 0:
            det_d = _det(sig, d)
            if not det_d.is_invertible():
                raise NotInvertible("D block is not invertible")
            return SuperMatrix(0, self.n, _inv_even_block(sig, d, det_d))
        det_a = _det(sig, a)
        if not det_a.is_invertible():
            raise NotInvertible("A block is not invertible")
        ainv = _inv_even_block(sig, a, det_a)
        # Schur complement of A; even entries, so its det test is classical
        s = _mat_sub(d, _mat_mul(sig, _mat_mul(sig, c, ainv), b))
        det_s = _det(sig, s)
        if not det_s.is_invertible():
            raise NotInvertible("D block is not invertible")
        sinv = _inv_even_block(sig, s, det_s)
        ab = _mat_mul(sig, ainv, b)        # A^-1 B
        ca = _mat_mul(sig, c, ainv)        # C A^-1
        top_left = _mat_add(ainv, _mat_mul(sig, _mat_mul(sig, ab, sinv), ca))
        top_right = _mat_neg(_mat_mul(sig, ab, sinv))
        bot_left = _mat_neg(_mat_mul(sig, sinv, ca))
        rows = []
        for i in range(self.m):
            rows.append(list(top_left[i]) + list(top_right[i]))
        for i in range(self.n):
            rows.append(list(bot_left[i]) + list(sinv[i]))
        return SuperMatrix(self.m, self.n, rows)

    def expm(self, max_power: int = 64) -> "SuperMatrix":
        """exp of a nilpotent matrix; terminates when powers vanish."""
        sig = self.sig
        acc = SuperMatrix.identity(self.m, self.n, sig)
        term = acc
        for k in range(1, max_power + 1):
            try:
                inv_k = sig.field.inv(sig.field.coerce(k))
            except ZeroDivisionError:
                raise NotInvertible(
                    f"1/{k} does not exist in characteristic {sig.field.p}")
            term = (term @ self).scale(sig.scalar(inv_k))
            if all(e.is_zero() for row in term.entries for e in row):
                return acc
            acc = acc + term
        raise SuperkitError("matrix exponential did not terminate; "
                            "input must be nilpotent")


# -- plain even-block helpers (entries commute) -----------------------------

def _mat_mul(sig, x, y):
    rn = len(x)
    cn = len(y[0])
    kn = len(y)
    out = []
    for i in range(rn):
        row = []
        for j in range(cn):
            acc = sig.zero()
            for k in range(kn):
                acc = acc + x[i][k] * y[k][j]
            row.append(acc)
        out.append(row)
    return out


def _mat_add(x, y):
    return [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(x, y)]


def _mat_sub(x, y):
    return [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(x, y)]


def _mat_neg(x):
    return [[-a for a in r] for r in x]


def _det(sig, block) -> SuperPoly:
    n = len(block)
    if n == 0:
        return sig.one()
    if n == 1:
        return block[0][0]
    if n == 2:
        return block[0][0] * block[1][1] - block[0][1] * block[1][0]
    acc = sig.zero()
    for j in range(n):
        if block[0][j].is_zero():
            continue
        minor = [[block[i][k] for k in range(n) if k != j]
                 for i in range(1, n)]
        term = block[0][j] * _det(sig, minor)
        acc = acc + (-term if j % 2 else term)
    return acc


def _inv_even_block(sig, block, det=None):
    """Adjugate inverse; needs only det invertible in the ring, which is the
    right criterion over non-local coefficient rings too."""
    n = len(block)
    if det is None:
        det = _det(sig, block)
    dinv = det.invert()
    if n == 1:
        return [[dinv]]
    out = [[sig.zero()] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [[block[r][c] for c in range(n) if c != j]
                     for r in range(n) if r != i]
            cof = _det(sig, minor)
            if (i + j) % 2:
                cof = -cof
            out[j][i] = cof * dinv
    return out


def h_form(sig: RingSignature) -> SuperMatrix:
    """The fixed (2|1) bilinear-form matrix: symplectic 2x2 block plus -1."""
    z, o = sig.zero(), sig.one()
    return SuperMatrix(2, 1, [[z, o, z], [-o, z, z], [z, z, -o]])


# -- JSON encoding -----------------------------------------------------------

def matrix_to_json(mat: SuperMatrix) -> dict:
    return {"m": mat.m, "n": mat.n,
            "entries": [[e.to_string() for e in row] for row in mat.entries]}


def matrix_from_json(data: dict, sig: RingSignature) -> SuperMatrix:
    from .parsing import parse_expr
    try:
        m = int(data["m"])
        n = int(data["n"])
        raw = data["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise SignatureMismatch(f"bad matrix encoding: {exc}") from None
    d = m + n
    if len(raw) != d or any(len(r) != d for r in raw):
        raise SignatureMismatch(f"need {d}x{d} entries for a {m}|{n} matrix")
    rows = []
    for i, row in enumerate(raw):
        out = []
        for j, text in enumerate(row):
            p = parse_expr(sig, text)
            want = (0 if i < m else 1) + (0 if j < m else 1)
            if not p.is_homogeneous(want % 2):
                raise ParityError(
                    f"entry ({i},{j}) = {text!r} breaks the block parity")
            out.append(p)
        rows.append(out)
    return SuperMatrix(m, n, rows)
