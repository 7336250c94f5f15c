"""Derivations on graded algebras, defined by their generator images.

A derivation is stored extensionally (one image polynomial per generator)
and extended to the whole algebra by linearity and the Leibniz rule on
demand.  A declared degree m is validated eagerly: the image of every
weight-w generator must be homogeneous of weight w + m (or zero).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import (
    AlgebraError,
    AlgebraSpec,
    GradedPoly,
    Monomial,
    as_q,
    weight_of,
)


class MissingImageError(AlgebraError):
    """A generator appearing in the argument has no image under the derivation."""


class Derivation:
    """Map generator-name -> image polynomial, extended by Leibniz."""

    def __init__(self, algebra: AlgebraSpec, images, degree=None, name=None):
        self.algebra = algebra
        self.images = {}
        for gname, img in dict(images).items():
            algebra.weight(gname)
            if isinstance(img, str):
                img = algebra.parse(img)
            if not img.algebra.compatible(algebra):
                raise AlgebraError(f"image of {gname!r} lives over a different algebra")
            self.images[gname] = img
        self.degree = None if degree is None else as_q(degree)
        self.name = name
        if self.degree is not None:
            self._check_degree()

    def _check_degree(self):
        for gname, img in self.images.items():
            if img.is_zero():
                continue
            w = weight_of(img)
            expected = self.algebra.weight(gname) + self.degree
            if w != expected:
                raise AlgebraError(
                    f"derivation image of {gname!r} has weight {w}, "
                    f"expected {expected} for a degree-{self.degree} derivation"
                )

    def image(self, gname) -> GradedPoly:
        try:
            return self.images[gname]
        except KeyError:
            raise MissingImageError(
                f"no derivation image for generator {gname!r}"
            ) from None

    def __call__(self, f: GradedPoly) -> GradedPoly:
        return apply(self, f)

    def __repr__(self):
        label = self.name or "Derivation"
        imgs = ", ".join(f"{g} -> {p!r}" for g, p in self.images.items())
        return f"<{label}: {imgs}>"


def apply(d: Derivation, f: GradedPoly) -> GradedPoly:
    """Apply d to f via linearity and the Leibniz rule."""
    alg = f.algebra
    out = alg.zero()
    for mono, coef in f.terms.items():
        for gname, e in mono.exps:
            img = d.image(gname)
            if img.is_zero():
                continue
            lowered = dict(mono.exps)
            lowered[gname] = e - 1
            cofactor = GradedPoly(alg, {Monomial(lowered): coef * e})
            out = out + cofactor * img
    return out


def iterate(d: Derivation, f: GradedPoly, n: int) -> GradedPoly:
    """n-fold application; iterate(d, f, 0) is f."""
    if n < 0:
        raise ValueError("iteration count must be non-negative")
    out = f
    for _ in range(n):
        out = apply(d, out)
    return out


def commutator(a: Derivation, b: Derivation, algebra: AlgebraSpec = None) -> Derivation:
    """The derivation [a, b]: g -> a(b(g)) - b(a(g)) on each generator g."""
    algebra = algebra or a.algebra
    images = {}
    for gname, _ in algebra.generators:
        images[gname] = apply(a, b.image(gname)) - apply(b, a.image(gname))
    degree = None
    if a.degree is not None and b.degree is not None:
        degree = a.degree + b.degree
    return Derivation(algebra, images, degree=degree)


def weight_derivation(algebra: AlgebraSpec) -> Derivation:
    """The derivation sending each generator g to weight(g) * g."""
    images = {
        name: algebra.gen(name) * w for name, w in algebra.generators
    }
    return Derivation(algebra, images, degree=0, name="W")


@dataclass
class Sl2Report:
    """Per-generator diagnostics for the three sl2 commutator relations."""

    entries: list = field(default_factory=list)  # (relation, generator, ok, diff)

    @property
    def passed(self) -> bool:
        return all(ok for _, _, ok, _ in self.entries)

    def failures(self):
        return [(r, g, d) for r, g, ok, d in self.entries if not ok]

    def __str__(self):
        status = "pass" if self.passed else "fail"
        lines = [f"sl2 triple check: {status}"]
        for rel, gen, ok, diff in self.entries:
            if not ok:
                lines.append(f"  {rel} fails on {gen}: difference {diff!r}")
        return "\n".join(lines)


def check_sl2_triple(D: Derivation, W: Derivation, delta: Derivation,
                     algebra: AlgebraSpec = None) -> Sl2Report:
    """Check [D,delta]=W, [W,D]=2D, [W,delta]=-2delta on every generator."""
    algebra = algebra or D.algebra
    report = Sl2Report()
    checks = [
        ("[D,delta]=W", commutator(D, delta, algebra),
         lambda g: W.image(g)),
        ("[W,D]=2D", commutator(W, D, algebra),
         lambda g: D.image(g) * 2),
        ("[W,delta]=-2delta", commutator(W, delta, algebra),
         lambda g: delta.image(g) * Fraction(-2)),
    ]
    for label, lhs, rhs_of in checks:
        for gname, _ in algebra.generators:
            diff = lhs.image(gname) - rhs_of(gname)
            report.entries.append((label, gname, diff.is_zero(), diff))
    return report
