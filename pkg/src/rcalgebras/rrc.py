"""Ramanujan systems of Rankin-Cohen type.

An RRC system on k[t1..td] is a derivation of the shape

    D t1 = t1^2 + P1(t2..td),      weight(t1) = 2,
    D tj = wj t1 tj + Pj(t2..td),  j >= 2,

with each Pj free of t1 and homogeneous of weight wj + 2.  Designating the
weight-2 generator and stripping the t1-terms recovers canonical data
(Serre-type derivation Pj, weight-4 element P1) on the subalgebra, and the
converse construction rebuilds the system from canonical data.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    AlgebraError,
    AlgebraSpec,
    GradedPoly,
    embed,
    exact_divide,
    reduce_mod_relations,
    weight_of,
)
from .brackets import CanonicalData
from .derivations import Derivation, apply


class RRCShapeError(ValueError):
    """The derivation does not have the RRC shape; carries all violations."""

    def __init__(self, violations):
        super().__init__("; ".join(violations))
        self.violations = list(violations)


@dataclass
class RRCSystem:
    """A certified RRC system: algebra, derivation, distinguished generator,
    and the t1-free parts P_j keyed by generator name (t1's entry is P1)."""

    algebra: AlgebraSpec
    D: Derivation
    t1: str
    parts: dict


def _mentions(f: GradedPoly, name: str) -> bool:
    return any(m.exponent(name) for m in f.terms)


def certify_rrc(D: Derivation, algebra: AlgebraSpec, t1: str = None) -> RRCSystem:
    """Check the RRC shape and homogeneity constraints; raise RRCShapeError
    with the full violation list otherwise."""
    if t1 is None:
        t1 = algebra.generators[0][0]
    violations = []
    if algebra.weight(t1) != 2:
        violations.append(f"designated generator {t1!r} has weight "
                          f"{algebra.weight(t1)}, not 2")
    parts = {}
    t1_poly = algebra.gen(t1)
    for name, w in algebra.generators:
        image = D.image(name)
        if name == t1:
            p = image - t1_poly * t1_poly
            expected_w = Fraction(4)
        else:
            p = image - t1_poly * algebra.gen(name) * w
            expected_w = w + 2
        if _mentions(p, t1):
            violations.append(f"P-part of {name!r} mentions {t1!r}: {p!r}")
            continue
        pw = weight_of(p)
        if not (p.is_zero() or pw == expected_w):
            violations.append(
                f"P-part of {name!r} has weight {pw}, expected {expected_w}"
            )
            continue
        parts[name] = p
    if violations:
        raise RRCShapeError(violations)
    return RRCSystem(algebra=algebra, D=D, t1=t1, parts=parts)


def strip_rrc(system: RRCSystem):
    """Canonical data on the subalgebra without t1: the Serre-type images are
    the P-parts, the weight-4 element is P1."""
    base = AlgebraSpec(
        system.algebra.grading_denominator,
        [(n, w) for n, w in system.algebra.generators if n != system.t1],
    )
    images = {}
    for name, _ in base.generators:
        p = system.parts[name]
        images[name] = GradedPoly(base, p.terms)
    partial = Derivation(base, images, degree=2, name="partial")
    lam = GradedPoly(base, system.parts[system.t1].terms)
    return base, CanonicalData(partial, lam)


def from_canonical(base: AlgebraSpec, cd: CanonicalData, t1: str = "t1") -> RRCSystem:
    """The RRC system presenting base[t1] with D t1 = t1^2 + L, D tj = wj t1 tj + d(tj)."""
    if t1 in dict(base.generators):
        raise AlgebraError(f"name {t1!r} collides with a base generator")
    algebra = AlgebraSpec(
        base.grading_denominator,
        [(t1, Fraction(2))] + list(base.generators),
        relations=base.relation_exprs,
    )
    t1_poly = algebra.gen(t1)
    images = {t1: t1_poly * t1_poly + embed(cd.lam, algebra)}
    for name, w in base.generators:
        d_img = embed(apply(cd.partial, base.gen(name)), algebra)
        images[name] = t1_poly * algebra.gen(name) * w + d_img
    D = Derivation(algebra, images, degree=2, name="D")
    return certify_rrc(D, algebra, t1)


def rrc_sl2_data(system: RRCSystem):
    """The (D, W, delta) triple attached to an RRC system: W the weight
    derivation and delta = -d/dt1."""
    from .derivations import weight_derivation

    algebra = system.algebra
    delta_images = {name: algebra.zero() for name, _ in algebra.generators}
    delta_images[system.t1] = algebra.const(-1)
    delta = Derivation(algebra, delta_images, degree=-2, name="delta")
    return system.D, weight_derivation(algebra), delta


@dataclass
class CaseI:
    """Exact divisions succeeded: canonical data recovered on the algebra."""

    canonical: CanonicalData


@dataclass
class CaseII:
    """Divisions failed: the reciprocal of F is adjoined instead."""

    algebra: AlgebraSpec       # original algebra plus the reciprocal generator
    reciprocal: str            # its name; weight is -weight(F)
    t1: str                    # fresh weight-2 name used by d_reciprocal
    d_reciprocal: GradedPoly   # -w * t1 * reciprocal, over algebra + t1


def _is_zero_divisor(F: GradedPoly, algebra: AlgebraSpec) -> bool:
    """Sound cheap test for the supported cases: relation-free algebras have
    no zero divisors; with a single relation R, F is flagged when F reduces
    to 0 or divides R with a nonzero cofactor."""
    if F.is_zero():
        return True
    if not algebra.relations:
        return False
    if len(algebra.relations) > 1:
        raise AlgebraError("zero-divisor detection supports at most one relation")
    if reduce_mod_relations(F, algebra).is_zero():
        return True
    cof = exact_divide(algebra.relations[0], F)
    return cof is not None and not reduce_mod_relations(cof, algebra).is_zero()


def from_bracket_data(M: AlgebraSpec, F: GradedPoly, bracket1: dict,
                      bracket2FF: GradedPoly, t1: str = "t1",
                      reciprocal: str = None):
    """Recover canonical data from first brackets against F and [F,F]_2.

    bracket1 maps each generator name g to [F, g]_1.  When all the exact
    divisions succeed the algebra itself is canonical (CaseI); otherwise the
    reciprocal of F is adjoined (CaseII).
    """
    w = F.homogeneous_weight()
    if w == 0 or w == -1:
        raise ValueError("the construction divides by w^2(w+1); w in {0,-1} is excluded")
    if _is_zero_divisor(F, M):
        raise ValueError("F must not be a zero divisor")
    lam = exact_divide(bracket2FF, F * F * (w * w * (w + 1)))
    partial_images = {}
    ok = lam is not None and (lam.is_zero() or weight_of(lam) == 4)
    if ok:
        for name, _ in M.generators:
            img = exact_divide(bracket1[name], F * w)
            if img is None:
                ok = False
                break
            partial_images[name] = img
    if ok:
        partial = Derivation(M, partial_images, degree=2, name="partial")
        return CaseI(CanonicalData(partial, lam))
    if reciprocal is None:
        reciprocal = "recip_F"
    extended = AlgebraSpec(
        M.grading_denominator,
        list(M.generators) + [(reciprocal, -w)],
    )
    with_t1 = AlgebraSpec(
        M.grading_denominator,
        [(t1, Fraction(2))] + list(extended.generators),
    )
    d_recip = with_t1.gen(t1) * with_t1.gen(reciprocal) * (-w)
    return CaseII(algebra=extended, reciprocal=reciprocal, t1=t1,
                  d_reciprocal=d_recip)
