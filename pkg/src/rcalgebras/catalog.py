"""Built-in algebras and systems, addressable by bare name.

Two kinds of entries:

* canonical entries (classical, negweights, fracweights) carry a base
  algebra with Serre-type data and a fresh name for the weight-2 element
  the extension adjoins;
* standard entries (ramanujan, ramanujan_rescaled, mirror_quintic) carry a
  full algebra with its degree-2 derivation and designate which generator
  plays the weight-2 quasi-element.

The classical weight-4 element is E4 times CLASSICAL_LAMBDA_COEFF; the sign
of that constant is calibrated against the q-expansion oracle (see
calibrate_classical_lambda) and frozen here with a regression test.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import AlgebraSpec
from .brackets import CanonicalData, canonical_bracket
from .derivations import Derivation, weight_derivation
from .extension import ExtensionSpec, build_extension
from . import qseries


#: Coefficient c with Lambda = c * E4 reproducing the classical bracket.
#: Calibrated empirically: the canonical bracket with c = -1/144 matches the
#: q-expansion bracket of the Eisenstein series; c = +1/144 does not.
CLASSICAL_LAMBDA_COEFF = Fraction(-1, 144)


@dataclass
class AlgebraSystem:
    """A named algebra with whatever structure it carries."""

    name: str
    kind: str                      # "canonical" or "standard"
    algebra: AlgebraSpec           # base (canonical) or full (standard)
    e2_name: str                   # fresh name (canonical) / designated gen (standard)
    canonical: CanonicalData = None
    derivation: Derivation = None  # the standard D, for standard entries
    delta: Derivation = None
    assignment_factory: callable = None
    extras: dict = field(default_factory=dict)
    _ext: ExtensionSpec = field(default=None, repr=False)

    def extension(self) -> ExtensionSpec:
        """The E2-extension of a canonical entry (cached)."""
        if self.kind != "canonical":
            raise ValueError(f"{self.name} is not a canonical entry")
        if self._ext is None:
            self._ext = build_extension(self.algebra, self.canonical, self.e2_name)
        return self._ext

    def full_algebra(self) -> AlgebraSpec:
        return self.extension().extended if self.kind == "canonical" else self.algebra

    def standard_derivation(self) -> Derivation:
        return self.extension().D if self.kind == "canonical" else self.derivation

    def sl2_triple(self):
        """(D, W, delta) on the full algebra."""
        algebra = self.full_algebra()
        D = self.standard_derivation()
        W = weight_derivation(algebra)
        delta = self.delta
        if delta is None:
            images = {name: algebra.zero() for name, _ in algebra.generators}
            images[self.e2_name] = algebra.const(-1)
            delta = Derivation(algebra, images, degree=-2, name="delta")
        return D, W, delta

    def assignment(self, order: int) -> dict:
        if self.assignment_factory is None:
            raise ValueError(f"{self.name} has no q-expansion assignment")
        return self.assignment_factory(self, order)


def _classical() -> AlgebraSystem:
    base = AlgebraSpec(1, [("E4", 4), ("E6", 6)])
    partial = Derivation(
        base,
        {"E4": "-1/3*E6", "E6": "-1/2*E4^2"},
        degree=2,
        name="partial",
    )
    lam = base.gen("E4") * CLASSICAL_LAMBDA_COEFF
    return AlgebraSystem(
        name="classical",
        kind="canonical",
        algebra=base,
        e2_name="e2",
        canonical=CanonicalData(partial, lam),
        assignment_factory=lambda sys, order: qseries.classical_assignment(
            sys.extension(), order
        ),
    )


def _ramanujan() -> AlgebraSystem:
    algebra = AlgebraSpec(1, [("t1", 2), ("t2", 4), ("t3", 6)])
    D = Derivation(
        algebra,
        {
            "t1": "1/12*t1^2 - 1/12*t2",
            "t2": "1/3*t1*t2 - 1/3*t3",
            "t3": "1/2*t1*t3 - 1/2*t2^2",
        },
        degree=2,
        name="D",
    )
    delta = Derivation(
        algebra,
        {"t1": algebra.const(-12), "t2": algebra.zero(), "t3": algebra.zero()},
        degree=-2,
        name="delta",
    )

    def assign(sys, order):
        return {
            "t1": qseries.eisenstein(2, order),
            "t2": qseries.eisenstein(4, order),
            "t3": qseries.eisenstein(6, order),
        }

    return AlgebraSystem(
        name="ramanujan",
        kind="standard",
        algebra=algebra,
        e2_name="t1",
        derivation=D,
        delta=delta,
        assignment_factory=assign,
    )


def _ramanujan_rescaled() -> AlgebraSystem:
    algebra = AlgebraSpec(1, [("t1", 2), ("t2", 4), ("t3", 6)])
    D = Derivation(
        algebra,
        {
            "t1": "t1^2 - 1/144*t2",
            "t2": "4*t1*t2 - 1/3*t3",
            "t3": "6*t1*t3 - 1/2*t2^2",
        },
        degree=2,
        name="D",
    )
    delta = Derivation(
        algebra,
        {"t1": algebra.const(-1), "t2": algebra.zero(), "t3": algebra.zero()},
        degree=-2,
        name="delta",
    )

    def assign(sys, order):
        return {
            "t1": qseries.eisenstein(2, order) * Fraction(1, 12),
            "t2": qseries.eisenstein(4, order),
            "t3": qseries.eisenstein(6, order),
        }

    return AlgebraSystem(
        name="ramanujan_rescaled",
        kind="standard",
        algebra=algebra,
        e2_name="t1",
        derivation=D,
        delta=delta,
        assignment_factory=assign,
    )


MIRROR_QUINTIC_RELATION = "t8*t5*t1^5 - t5^2*t8 - 1"


def _mirror_quintic() -> AlgebraSystem:
    weights = [("t1", 1), ("t2", 2), ("t3", 3), ("t4", 0),
               ("t5", 5), ("t6", 1), ("t7", 2), ("t8", -10)]
    algebra = AlgebraSpec(1, weights, relations=[MIRROR_QUINTIC_RELATION])
    D = Derivation(
        algebra,
        {
            "t1": "t1*t2 + t3",
            "t2": "t2^2 - 1/625*t3^3*t4*t5*t8",
            "t3": "3*t2*t3 + 1/625*t3^3*t5*t6*t8",
            "t4": "-t7",
            "t5": "5*t2*t5",
            "t6": "t2*t6 + 3125*t1^3 - 2*t3*t4",
            "t7": "2*t2*t7 - 625*t1*t3 + 1/625*t3^3*t4^2*t5*t8",
            "t8": "-10*t2*t8 - 5*t1^4*t3*t5*t8^2",
        },
        degree=2,
        name="D",
    )
    delta_images = {name: algebra.zero() for name, _ in weights}
    delta_images["t2"] = algebra.const(-1)
    delta = Derivation(algebra, delta_images, degree=-2, name="delta")

    # the vector field before the sign/shear change of coordinates
    pre = Derivation(
        algebra,
        {
            "t1": "t3 - t1*t2",
            "t2": "1/625*t3^3*t4*t5*t8 - t2^2",
            "t3": "1/625*t3^3*t5*t6*t8 - 3*t2*t3",
            "t4": "-t2*t4 - t7",
            "t5": "-5*t2*t5",
            "t6": "3125*t1^3 - t2*t6 - 2*t3*t4",
            "t7": "-625*t1*t3 - t2*t7",
            "t8": "-5*t1^4*t3*t5*t8^2 + 10*t2*t8",
        },
        degree=2,
        name="pre_D",
    )
    pre_delta_images = {name: algebra.zero() for name, _ in weights}
    pre_delta_images["t2"] = algebra.one()
    pre_delta_images["t7"] = -algebra.gen("t4")
    pre_delta = Derivation(algebra, pre_delta_images, degree=-2, name="pre_delta")

    return AlgebraSystem(
        name="mirror_quintic",
        kind="standard",
        algebra=algebra,
        e2_name="t2",
        derivation=D,
        delta=delta,
        extras={
            "pre_derivation": pre,
            "pre_delta": pre_delta,
            # involutive change of coordinates linking pre to D
            "substitution": {"t2": "-t2", "t7": "t7 + t2*t4"},
        },
    )


def _negweights() -> AlgebraSystem:
    # Pure negative weights force Lambda = 0 (no weight-4 elements exist)
    # and pin the Serre-type images up to scale.
    base = AlgebraSpec(1, [("n1", -1), ("n2", -2), ("n3", -3)])
    partial = Derivation(
        base,
        {"n1": base.zero(), "n2": base.const(2), "n3": base.gen("n1")},
        degree=2,
        name="partial",
    )
    return AlgebraSystem(
        name="negweights",
        kind="canonical",
        algebra=base,
        e2_name="E2",
        canonical=CanonicalData(partial, base.zero()),
    )


def _fracweights() -> AlgebraSystem:
    base = AlgebraSpec(2, [("h", Fraction(1, 2)), ("u", Fraction(5, 2))])
    partial = Derivation(
        base,
        {"h": "u", "u": "h^4*u"},
        degree=2,
        name="partial",
    )
    lam = base.parse("h^8 - 2*h^3*u")
    return AlgebraSystem(
        name="fracweights",
        kind="canonical",
        algebra=base,
        e2_name="E2",
        canonical=CanonicalData(partial, lam),
    )


_BUILDERS = {
    "classical": _classical,
    "ramanujan": _ramanujan,
    "ramanujan_rescaled": _ramanujan_rescaled,
    "mirror_quintic": _mirror_quintic,
    "negweights": _negweights,
    "fracweights": _fracweights,
}

BUILTIN_NAMES = tuple(sorted(_BUILDERS))


def builtin(name: str) -> AlgebraSystem:
    """A fresh instance of a built-in system."""
    try:
        return _BUILDERS[name]()
    except KeyError:
        raise KeyError(
            f"unknown builtin algebra {name!r}; available: {', '.join(BUILTIN_NAMES)}"
        ) from None


def calibrate_classical_lambda(n_max: int = 3, order: int = 12) -> Fraction:
    """Decide the sign of the classical weight-4 element empirically.

    Both candidates +-E4/144 are run through the bracket comparison against
    the q-expansion oracle bracket; exactly one matches and its coefficient
    is returned.
    """
    winners = []
    for coeff in (Fraction(1, 144), Fraction(-1, 144)):
        base = AlgebraSpec(1, [("E4", 4), ("E6", 6)])
        partial = Derivation(
            base, {"E4": "-1/3*E6", "E6": "-1/2*E4^2"}, degree=2
        )
        cd = CanonicalData(partial, base.gen("E4") * coeff)
        asg = {
            "E4": qseries.eisenstein(4, order),
            "E6": qseries.eisenstein(6, order),
        }
        ok = True
        for f_name, k in (("E4", 4), ("E6", 6)):
            for g_name, l in (("E4", 4), ("E6", 6)):
                for n in range(n_max + 1):
                    symbolic = canonical_bracket(
                        cd, base.gen(f_name), base.gen(g_name), n
                    )
                    oracle = qseries.q_bracket(
                        asg[f_name], asg[g_name], k, l, n
                    )
                    if qseries.evaluate(symbolic, asg) != oracle:
                        ok = False
        if ok:
            winners.append(coeff)
    if len(winners) != 1:
        raise AssertionError(f"calibration did not single out a sign: {winners}")
    return winners[0]
