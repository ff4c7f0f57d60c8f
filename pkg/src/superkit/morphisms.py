"""Generator-substitution homomorphisms between supercommutative rings.

A morphism is determined by the images of the source generators; images must
preserve parity, and a laurent-flagged generator needs an invertible image
(checked once, at construction, with the inverse cached for negative powers).
"""

from __future__ import annotations

from .errors import NotInvertible, ParityError, SignatureMismatch
from .superpoly import RingSignature, SuperPoly


class AlgebraMorphism:
    def __init__(self, source: RingSignature, target: RingSignature,
                 images: dict[str, SuperPoly]):
        self.source = source
        self.target = target
        self.images: dict[str, SuperPoly] = {}
        names = [n for n, _ in source.even_gens] + list(source.odd_gens)
        for name in names:
            if name not in images:
                raise SignatureMismatch(f"no image for generator {name!r}")
            img = images[name]
            if img.sig != target:
                raise SignatureMismatch(f"image of {name!r} is over the wrong ring")
            if not img.is_homogeneous(source.parity_of(name)):
                raise ParityError(f"image of {name!r} breaks parity")
            self.images[name] = img
        self._inverses: dict[str, SuperPoly] = {}
        for name, lau in source.even_gens:
            if lau:
                # fails loudly here rather than deep inside a substitution
                self._inverses[name] = self.images[name].invert()

    @staticmethod
    def identity(sig: RingSignature) -> "AlgebraMorphism":
        images = {n: sig.gen(n) for n, _ in sig.even_gens}
        images.update({n: sig.gen(n) for n in sig.odd_gens})
        return AlgebraMorphism(sig, sig, images)

    def apply(self, p: SuperPoly) -> SuperPoly:
        if p.sig != self.source:
            raise SignatureMismatch("element not over the morphism source")
        tgt = self.target
        out = tgt.zero()
        pow_cache: dict[tuple[str, int], SuperPoly] = {}

        def even_power(name: str, k: int) -> SuperPoly:
            got = pow_cache.get((name, k))
            if got is None:
                base = self.images[name] if k > 0 else self._inverses[name]
                got = base ** abs(k)
                pow_cache[(name, k)] = got
            return got

        for (exps, word), c in p.terms:
            acc = tgt.scalar(c)
            for e, (name, _) in zip(exps, p.sig.even_gens):
                if e == 0:
                    continue
                if e < 0 and name not in self._inverses:
                    raise NotInvertible(
                        f"image of {name!r} has no cached inverse")
                acc = acc * even_power(name, e)
            for i in word:
                acc = acc * self.images[p.sig.odd_gens[i]]
                if acc.is_zero():
                    break
            out = out + acc
        return out

    def __eq__(self, other):
        if not isinstance(other, AlgebraMorphism):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.images == other.images)

    def __repr__(self):
        ims = ", ".join(f"{n} -> {p}" for n, p in self.images.items())
        return f"AlgebraMorphism({ims})"


def compose_morphisms(f: AlgebraMorphism, g: AlgebraMorphism) -> AlgebraMorphism:
    """f after g: source g.source, target f.target."""
    if f.source != g.target:
        raise SignatureMismatch("compose: f.source != g.target")
    images = {name: f.apply(img) for name, img in g.images.items()}
    return AlgebraMorphism(g.source, f.target, images)


def apply_morphism(f: AlgebraMorphism, p: SuperPoly) -> SuperPoly:
    return f.apply(p)
