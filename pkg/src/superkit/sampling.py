"""Seeded generators for the property suites.

Every suite draws one rng per sample, derived as seed * SAMPLE_STRIDE +
index, so single samples can be replayed from a failure report without
rerunning the stream.  Bodies are kept in small integer ranges: exact
arithmetic swells quickly and nothing here needs large coefficients.
"""

from __future__ import annotations

import random

from .projective import ProjPoint
from .superpoly import RingSignature, SuperPoly
from .supermatrix import SuperMatrix

SAMPLE_STRIDE = 1_000_003

_UNIT_BODIES = (1, -1, 2, -2, 3)


def per_sample_rng(seed: int, index: int) -> random.Random:
    return random.Random(seed * SAMPLE_STRIDE + index)


def rand_even_soul(sig: RingSignature, rng: random.Random) -> SuperPoly:
    """A nilpotent even element: a few products of two odd generators."""
    odd = sig.odd_gens
    acc = sig.zero()
    if len(odd) < 2:
        return acc
    for _ in range(rng.randint(0, 2)):
        i, j = rng.sample(range(len(odd)), 2)
        acc = acc + sig.monomial({odd[i]: 1, odd[j]: 1}, rng.choice([1, -1, 2]))
    return acc


def rand_odd(sig: RingSignature, rng: random.Random) -> SuperPoly:
    acc = sig.zero()
    for _ in range(rng.randint(0, 2)):
        name = rng.choice(sig.odd_gens)
        acc = acc + sig.monomial({name: 1}, rng.choice([1, -1, 2]))
    return acc


def rand_even_unit(sig: RingSignature, rng: random.Random) -> SuperPoly:
    return sig.scalar(rng.choice(_UNIT_BODIES)) + rand_even_soul(sig, rng)


def _int_matrix_invertible(k: int, rng: random.Random) -> list[list[int]]:
    def det(m):
        if len(m) == 1:
            return m[0][0]
        total = 0
        for j in range(len(m)):
            minor = [row[:j] + row[j + 1:] for row in m[1:]]
            total += (-1) ** j * m[0][j] * det(minor)
        return total

    while True:
        m = [[rng.randint(-3, 3) for _ in range(k)] for _ in range(k)]
        if det(m) != 0:
            return m


def rand_gl(m: int, n: int, sig: RingSignature, rng: random.Random) -> SuperMatrix:
    """An invertible even-block-invertible matrix: unit body plus noise."""
    a = _int_matrix_invertible(m, rng)
    d = _int_matrix_invertible(n, rng) if n else []
    size = m + n
    rows = []
    for r in range(size):
        row = []
        for c in range(size):
            if (r < m) == (c < m):
                body = a[r][c] if r < m else d[r - m][c - m]
                row.append(sig.scalar(body) + rand_even_soul(sig, rng))
            else:
                row.append(rand_odd(sig, rng))
        rows.append(row)
    out = SuperMatrix(m, n, rows)
    assert out.is_invertible()
    return out


def rand_c_violating(sig: RingSignature, rng: random.Random) -> SuperMatrix:
    """A 2|1 invertible matrix whose body fails the conformal equations.

    At body level the equations collapse to det(A) = e^2, so drawing
    det(A) avoiding both 0 and e^2 guarantees failure.
    """
    while True:
        a, b, c, d = (rng.randint(-3, 3) for _ in range(4))
        e = rng.choice(_UNIT_BODIES)
        if a * d - b * c not in (0, e * e):
            break
    rows = [[sig.scalar(a), sig.scalar(b)], [sig.scalar(c), sig.scalar(d)]]
    out = [[rows[r][c] + rand_even_soul(sig, rng) for c in range(2)] +
           [rand_odd(sig, rng)] for r in range(2)]
    out.append([rand_odd(sig, rng), rand_odd(sig, rng),
                sig.scalar(e) + rand_even_soul(sig, rng)])
    return SuperMatrix(2, 1, out)


def rand_point(m: int, n: int, sig: RingSignature, rng: random.Random) -> ProjPoint:
    even = [sig.scalar(rng.randint(-3, 3)) + rand_even_soul(sig, rng)
            for _ in range(m + 1)]
    even[rng.randrange(m + 1)] = rand_even_unit(sig, rng)
    odd = [rand_odd(sig, rng) for _ in range(n)]
    p = ProjPoint(even, odd)
    # the local coefficient ring guarantees membership in some chart;
    # the sampler keeps that a structural property of its output
    assert any(zc.is_invertible() for zc in p.even)
    return p


def safe_projective_matrix(m: int, n: int, sig: RingSignature,
                           rng: random.Random) -> SuperMatrix:
    """Block permutation times diagonal units times unipotent soul.

    The body of each row is a single scaled basis vector, so every
    induced chart map of the output has a monomial denominator and the
    chart-compatibility properties quantify over a nonempty domain.
    """
    size = m + 1 + n
    perm = list(range(m + 1))
    rng.shuffle(perm)
    podd = list(range(m + 1, size))
    rng.shuffle(podd)
    perm += podd
    rows = [[sig.zero()] * size for _ in range(size)]
    for r in range(size):
        rows[r][perm[r]] = sig.scalar(rng.choice(_UNIT_BODIES))
    base = SuperMatrix(m + 1, n, rows)
    noise = [[(sig.one() if r == c else sig.zero()) +
              (rand_even_soul(sig, rng) if (r <= m) == (c <= m)
               else rand_odd(sig, rng))
              for c in range(size)] for r in range(size)]
    return base @ SuperMatrix(m + 1, n, noise)


def rand_regular_unit(sig: RingSignature, rng: random.Random,
                      side: int) -> SuperPoly:
    """A unit regular on one chart of the cocycle ring: side 0 keeps
    x-exponents nonnegative, side 1 nonpositive with xi-terms below 0."""
    h = sig.scalar(rng.choice(_UNIT_BODIES))
    odd = sig.odd_gens
    words = [(a, b) for a in odd for b in odd if a < b]
    if len(odd) >= 4:
        words.append(odd[:4])
    for _ in range(rng.randint(0, 4)):
        e = rng.randint(0, 3) if side == 0 else -rng.randint(0, 3)
        word = rng.choice(words)
        if side == 1 and "xi" in word and e == 0:
            e = -1 - rng.randint(0, 2)
        mono = {"x": e}
        mono.update({w: 1 for w in word})
        h = h + sig.monomial(mono, rng.choice([1, -1, 2]))
    return h
