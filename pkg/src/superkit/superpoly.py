"""Exact arithmetic in finitely generated supercommutative algebras.

An element is a finite sum of terms  c * x1^a1 ... xr^ar * o_{i1} ... o_{ik}
where the x's are even generators (Laurent exponents allowed when flagged),
the o's are odd generators listed with strictly increasing index, and c is a
nonzero exact scalar.  Reordering odd factors costs the sign of the
permutation; a repeated odd factor kills the term.

Canonical form: terms are keyed by (even exponent vector, odd index word) and
stored sorted by (total degree, exponents, word).  Equal elements always have
identical representations, which makes equality, hashing and golden-file
formatting trivial.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .errors import NotInvertible, ParityError, SignatureMismatch, TooLarge
from .fields import RATIONALS, FieldSpec, Scalar

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")

# (even exponent tuple, strictly increasing odd index tuple)
Key = tuple[tuple[int, ...], tuple[int, ...]]


def max_terms() -> int:
    """Term-count cap, from SUPERKIT_MAX_TERMS (protects against swell)."""
    raw = os.environ.get("SUPERKIT_MAX_TERMS", "200000")
    try:
        return int(raw)
    except ValueError:
        return 200000


@dataclass(frozen=True)
class RingSignature:
    """Fixed, ordered generator list over a ground field.

    even_gens: tuple of (name, laurent flag); laurent generators may carry
    negative exponents (the localization at that generator).
    odd_gens: tuple of names; squares vanish.
    """

    field: FieldSpec
    even_gens: tuple[tuple[str, bool], ...]
    odd_gens: tuple[str, ...]

    def __post_init__(self):
        names = [n for n, _ in self.even_gens] + list(self.odd_gens)
        if len(set(names)) != len(names):
            raise SignatureMismatch(f"duplicate generator names in {names}")
        for n in names:
            if not _NAME_RE.match(n):
                raise SignatureMismatch(f"bad generator name {n!r}")

    @cached_property
    def _lookup(self) -> dict[str, tuple[str, int]]:
        table: dict[str, tuple[str, int]] = {}
        for i, (n, _) in enumerate(self.even_gens):
            table[n] = ("even", i)
        for i, n in enumerate(self.odd_gens):
            table[n] = ("odd", i)
        return table

    def has_gen(self, name: str) -> bool:
        return name in self._lookup

    def parity_of(self, name: str) -> int:
        kind, _ = self._gen(name)
        return 0 if kind == "even" else 1

    def is_laurent(self, name: str) -> bool:
        kind, i = self._gen(name)
        return kind == "even" and self.even_gens[i][1]

    def _gen(self, name: str) -> tuple[str, int]:
        try:
            return self._lookup[name]
        except KeyError:
            raise SignatureMismatch(f"unknown generator {name!r}") from None

    # -- element constructors ------------------------------------------

    def zero(self) -> "SuperPoly":
        return SuperPoly(self, ())

    def one(self) -> "SuperPoly":
        return self.scalar(1)

    def scalar(self, c) -> "SuperPoly":
        c = self.field.coerce(c)
        if self.field.is_zero(c):
            return self.zero()
        key = ((0,) * len(self.even_gens), ())
        return SuperPoly(self, ((key, c),))

    def gen(self, name: str) -> "SuperPoly":
        return self.monomial({name: 1})

    def monomial(self, powers: dict[str, int], coeff=1) -> "SuperPoly":
        """Single term from generator powers; odd powers must be 0 or 1."""
        c = self.field.coerce(coeff)
        if self.field.is_zero(c):
            return self.zero()
        exps = [0] * len(self.even_gens)
        odd: list[int] = []
        for name, k in powers.items():
            kind, i = self._gen(name)
            if k == 0:
                continue
            if kind == "even":
                if k < 0 and not self.even_gens[i][1]:
                    raise NotInvertible(
                        f"negative exponent on non-laurent generator {name!r}")
                exps[i] += k
            else:
                if k != 1:
                    raise ParityError(f"odd generator {name!r} with exponent {k}")
                odd.append(i)
        if len(set(odd)) != len(odd):
            return self.zero()
        return SuperPoly(self, (((tuple(exps), tuple(sorted(odd))), c),))


def grassmann_signature(q: int, field: FieldSpec = RATIONALS,
                        prefix: str = "t") -> RingSignature:
    """Lambda_q: the test base ring with odd generators t1..tq."""
    return RingSignature(field, (), tuple(f"{prefix}{i}" for i in range(1, q + 1)))


def _merge_words(w1: tuple[int, ...], w2: tuple[int, ...]):
    """Merge sorted odd words; returns (sign, merged) or None on a repeat."""
    if not w1:
        return 1, w2
    if not w2:
        return 1, w1
    out: list[int] = []
    sign = 1
    i = j = 0
    n1 = len(w1)
    while i < n1 and j < len(w2):
        a, b = w1[i], w2[j]
        if a == b:
            return None
        if a < b:
            out.append(a)
            i += 1
        else:
            # b jumps over the n1-i remaining factors of w1
            out.append(b)
            j += 1
            if (n1 - i) & 1:
                sign = -sign
    out.extend(w1[i:])
    out.extend(w2[j:])
    return sign, tuple(out)


def _term_sort_key(item):
    (exps, odd), _ = item
    return (sum(exps) + len(odd), exps, odd)


class SuperPoly:
    """Immutable element of a supercommutative ring; see module docstring."""

    __slots__ = ("sig", "terms", "_hash")

    def __init__(self, sig: RingSignature, terms: tuple):
        # terms must already be canonical; use the constructors / operators
        self.sig = sig
        self.terms = terms
        self._hash = None

    @staticmethod
    def _from_dict(sig: RingSignature, data: dict) -> "SuperPoly":
        f = sig.field
        items = tuple(sorted(
            ((k, c) for k, c in data.items() if not f.is_zero(c)),
            key=_term_sort_key))
        if len(items) > max_terms():
            raise TooLarge(f"{len(items)} terms exceeds SUPERKIT_MAX_TERMS")
        return SuperPoly(sig, items)

    # -- predicates ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_homogeneous(self, parity: int) -> bool:
        """True when every term has the given parity (zero passes both)."""
        return all(len(odd) % 2 == parity for (_, odd), _ in self.terms)

    def parity(self):
        """0, 1, or None for mixed; the zero element reports 0."""
        ps = {len(odd) % 2 for (_, odd), _ in self.terms}
        if len(ps) > 1:
            return None
        return ps.pop() if ps else 0

    def body(self) -> "SuperPoly":
        """Kill every odd generator (the classical shadow)."""
        return SuperPoly(self.sig, tuple(t for t in self.terms if not t[0][1]))

    def soul(self) -> "SuperPoly":
        return SuperPoly(self.sig, tuple(t for t in self.terms if t[0][1]))

    def is_invertible(self) -> bool:
        bt = self.body().terms
        if len(bt) != 1:
            return False
        (exps, _), _ = bt[0]
        return all(e == 0 or lau for e, (_, lau) in zip(exps, self.sig.even_gens))

    # -- arithmetic ----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, SuperPoly):
            if other.sig != self.sig:
                raise SignatureMismatch("operands over different signatures")
            return other
        if isinstance(other, (int, Fraction)):
            return self.sig.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        f = self.sig.field
        data = dict(self.terms)
        for k, c in other.terms:
            acc = f.add(data.get(k, f.zero()), c)
            if f.is_zero(acc):
                data.pop(k, None)
            else:
                data[k] = acc
        return SuperPoly._from_dict(self.sig, data)

    __radd__ = __add__

    def __neg__(self):
        f = self.sig.field
        return SuperPoly(self.sig, tuple((k, f.neg(c)) for k, c in self.terms))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        f = self.sig.field
        data: dict[Key, Scalar] = {}
        for (e1, w1), c1 in self.terms:
            for (e2, w2), c2 in other.terms:
                merged = _merge_words(w1, w2)
                if merged is None:
                    continue
                sign, w = merged
                e = tuple(a + b for a, b in zip(e1, e2))
                c = f.mul(c1, c2)
                if sign < 0:
                    c = f.neg(c)
                k = (e, w)
                acc = f.add(data.get(k, f.zero()), c)
                if f.is_zero(acc):
                    data.pop(k, None)
                else:
                    data[k] = acc
        return SuperPoly._from_dict(self.sig, data)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.invert() ** (-n)
        acc = self.sig.one()
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base_needed = n >> 1
            if base_needed:
                base = base * base
            n = base_needed
        return acc

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.invert()

    def invert(self) -> "SuperPoly":
        """Exact inverse of a unit.

        The body must be c * (monomial in laurent generators); the rest is
        nilpotent since every one of its terms carries an odd generator, so
        the geometric series terminates.
        """
        bt = self.body().terms
        if len(bt) != 1:
            raise NotInvertible(f"body of {self} is not a unit monomial")
        (exps, _), c = bt[0]
        for e, (name, lau) in zip(exps, self.sig.even_gens):
            if e != 0 and not lau:
                raise NotInvertible(f"body involves non-laurent generator {name!r}")
        f = self.sig.field
        binv = SuperPoly(self.sig,
                         (((tuple(-e for e in exps), ()), f.inv(c)),))
        nu = binv * self.soul()
        acc = self.sig.one()
        power = self.sig.one()
        for _ in range(len(self.sig.odd_gens) + 1):
            power = power * (-nu)
            if power.is_zero():
                break
            acc = acc + power
        return binv * acc

    # -- structure -----------------------------------------------------

    def coefficient(self, key: Key):
        """Exact scalar at a canonical key (0 when absent)."""
        for k, c in self.terms:
            if k == key:
                return c
        return self.sig.field.zero()

    def constant_term(self):
        return self.coefficient(((0,) * len(self.sig.even_gens), ()))

    def derive(self, images: dict[str, "SuperPoly"], parity: int) -> "SuperPoly":
        """Apply the superderivation D with D(gen) = images[gen].

        Missing generators map to 0.  Graded Leibniz: passing D of parity p
        over an odd factor costs (-1)^p; even factors are free.  Powers use
        the integer rule D(x^a) = a x^(a-1) D(x), valid for a < 0 as well.
        """
        sig = self.sig
        f = sig.field
        result = sig.zero()
        img = {}
        for name, p in images.items():
            kind, i = sig._gen(name)
            img[(kind, i)] = p
        for (exps, word), c in self.terms:
            # even factors first (they are central, the derivative lands left
            # of the odd word with no sign)
            for i, a in enumerate(exps):
                if a == 0:
                    continue
                di = img.get(("even", i))
                if di is None or di.is_zero():
                    continue
                rest = list(exps)
                rest[i] = a - 1
                lead = SuperPoly(sig, (((tuple(rest), ()), f.coerce(c * a)),)) \
                    if not f.is_zero(f.coerce(c * a)) else sig.zero()
                tail = SuperPoly(sig, ((((0,) * len(exps), word), f.one()),)) \
                    if word else sig.one()
                result = result + lead * di * tail
            # odd factors, with the Koszul sign for the factors jumped over
            for pos, oi in enumerate(word):
                di = img.get(("odd", oi))
                if di is None or di.is_zero():
                    continue
                sign = -1 if (parity * pos) % 2 else 1
                cc = f.neg(c) if sign < 0 else c
                left = SuperPoly(sig, (((exps, word[:pos]), cc),))
                right = SuperPoly(sig, ((((0,) * len(exps), word[pos + 1:]),
                                         f.one()),)) if word[pos + 1:] else sig.one()
                result = result + left * di * right
        return result

    def divide_by_gen(self, name: str):
        """Exact left quotient u with gen * u == self; None when impossible."""
        sig = self.sig
        kind, idx = sig._gen(name)
        f = sig.field
        data: dict[Key, Scalar] = {}
        for (exps, word), c in self.terms:
            if kind == "even":
                if exps[idx] < 1 and not sig.even_gens[idx][1]:
                    return None
                e = list(exps)
                e[idx] -= 1
                data[(tuple(e), word)] = c
            else:
                if idx not in word:
                    return None
                pos = word.index(idx)
                w = word[:pos] + word[pos + 1:]
                data[(exps, w)] = f.neg(c) if pos % 2 else c
        q = SuperPoly._from_dict(sig, data)
        if sig.gen(name) * q != self:
            return None
        return q

    # -- formatting ----------------------------------------------------

    def to_string(self) -> str:
        if not self.terms:
            return "0"
        f = self.sig.field
        rendered = []
        for (exps, word), c in self.terms:
            neg = isinstance(c, (int, Fraction)) and f.p == 0 and c < 0
            mag = -c if neg else c
            factors = []
            for e, (name, _) in zip(exps, self.sig.even_gens):
                if e == 0:
                    continue
                factors.append(name if e == 1 else f"{name}^{e}")
            for i in word:
                factors.append(self.sig.odd_gens[i])
            if not factors:
                rendered.append((neg, str(mag)))
            elif mag == f.one():
                rendered.append((neg, "*".join(factors)))
            else:
                rendered.append((neg, str(mag) + "*" + "*".join(factors)))
        out = []
        for i, (neg, text) in enumerate(rendered):
            if i == 0:
                out.append(("-" if neg else "") + text)
            else:
                out.append((" - " if neg else " + ") + text)
        return "".join(out)

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"SuperPoly({self.to_string()})"

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.sig.scalar(other)
        if not isinstance(other, SuperPoly):
            return NotImplemented
        return self.sig == other.sig and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.sig, self.terms))
        return self._hash


def normalize(sig: RingSignature, raw_terms) -> SuperPoly:
    """Canonical element from raw (powers-by-name, odd word, coeff) triples.

    Odd words may arrive in any order with repeats; the permutation sign is
    applied and repeated-factor words are dropped.
    """
    f = sig.field
    data: dict[Key, Scalar] = {}
    for powers, word, coeff in raw_terms:
        c = f.coerce(coeff)
        if f.is_zero(c):
            continue
        exps = [0] * len(sig.even_gens)
        for name, k in dict(powers).items():
            kind, i = sig._gen(name)
            if kind != "even":
                raise ParityError(f"{name!r} is odd; list it in the word")
            if k < 0 and not sig.even_gens[i][1]:
                raise NotInvertible(
                    f"negative exponent on non-laurent generator {name!r}")
            exps[i] += k
        idxs = []
        for name in word:
            kind, i = sig._gen(name)
            if kind != "odd":
                raise ParityError(f"{name!r} is even; use the powers map")
            idxs.append(i)
        if len(set(idxs)) != len(idxs):
            continue
        sign = 1
        # insertion sort, counting transpositions
        for a in range(1, len(idxs)):
            b = a
            while b > 0 and idxs[b - 1] > idxs[b]:
                idxs[b - 1], idxs[b] = idxs[b], idxs[b - 1]
                sign = -sign
                b -= 1
        if sign < 0:
            c = f.neg(c)
        key = (tuple(exps), tuple(idxs))
        acc = f.add(data.get(key, f.zero()), c)
        if f.is_zero(acc):
            data.pop(key, None)
        else:
            data[key] = acc
    return SuperPoly._from_dict(sig, data)


def transport(p: SuperPoly, new_sig: RingSignature) -> SuperPoly:
    """Rewrite p over a signature containing the same-named generators.

    Used to move elements between localizations of one ring (laurent flags
    may differ; dropping a flag requires the exponents to allow it) and to
    embed a small ring into a larger one.
    """
    if p.sig == new_sig:
        return p
    data: dict[Key, Scalar] = {}
    n_even = len(new_sig.even_gens)
    for (exps, word), c in p.terms:
        e = [0] * n_even
        for a, (name, _) in zip(exps, p.sig.even_gens):
            if a == 0:
                continue
            kind, i = new_sig._gen(name)
            if kind != "even":
                raise ParityError(f"{name!r} changed parity between signatures")
            if a < 0 and not new_sig.even_gens[i][1]:
                raise NotInvertible(
                    f"negative exponent on non-laurent generator {name!r}")
            e[i] = a
        w = []
        for i in word:
            name = p.sig.odd_gens[i]
            kind, j = new_sig._gen(name)
            if kind != "odd":
                raise ParityError(f"{name!r} changed parity between signatures")
            w.append(j)
        sign = 1
        for a in range(1, len(w)):
            b = a
            while b > 0 and w[b - 1] > w[b]:
                w[b - 1], w[b] = w[b], w[b - 1]
                sign = -sign
                b -= 1
        key = (tuple(e), tuple(w))
        f = new_sig.field
        cc = f.coerce(c)
        if sign < 0:
            cc = f.neg(cc)
        acc = f.add(data.get(key, f.zero()), cc)
        if f.is_zero(acc):
            data.pop(key, None)
        else:
            data[key] = acc
    return SuperPoly._from_dict(new_sig, data)
