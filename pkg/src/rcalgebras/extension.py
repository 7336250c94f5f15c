"""Adjoining a weight-2 quasi-element E2 to a canonical algebra.

Given a base algebra M with Serre-type derivation d and weight-4 element L,
the extension M[E2] carries the degree-2 derivation

    D(f) = d(f) + k*E2*f   (f a base generator of weight k),
    D(E2) = L + E2^2,

under which the canonical bracket on M agrees with the standard bracket of
D.  The Serre-type derivation itself extends by d(E2) = L - E2^2, which is
what the iterate recursion for E2 (weight 2) uses.  The Psi_n ladder holds
the E2-free parts of those iterates:

    Psi_0 = 0,  Psi_1 = L,  Psi_{j+1} = d(Psi_j) + j(j+1) L Psi_{j-1}.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from .algebra import (
    AlgebraError,
    AlgebraSpec,
    GradedPoly,
    Monomial,
    embed,
    gen_binomial,
    pochhammer,
)
from .brackets import CanonicalData, canonical_bracket, canonical_iterate, standard_bracket
from .derivations import Derivation, apply, iterate


class ExtensionSpec:
    """Base algebra, canonical data, and the derived structure on M[E2]."""

    def __init__(self, base: AlgebraSpec, cd: CanonicalData, e2_name: str = "E2"):
        if e2_name in dict(base.generators):
            raise AlgebraError(f"extension name {e2_name!r} collides with a generator")
        self.base = base
        self.cd = cd
        self.e2_name = e2_name
        self.extended = AlgebraSpec(
            base.grading_denominator,
            list(base.generators) + [(e2_name, Fraction(2))],
            relations=base.relation_exprs,
        )
        self.e2 = self.extended.gen(e2_name)
        lam = self.lift(cd.lam)
        d_images = {}
        partial_images = {}
        for name, w in base.generators:
            dg = self.lift(apply(cd.partial, base.gen(name)))
            d_images[name] = dg + self.e2 * self.extended.gen(name) * w
            partial_images[name] = dg
        d_images[e2_name] = lam + self.e2 * self.e2
        partial_images[e2_name] = lam - self.e2 * self.e2
        self.D = Derivation(self.extended, d_images, degree=2, name="D")
        self.partial_ext = Derivation(self.extended, partial_images, degree=2,
                                      name="partial")
        self.cd_ext = CanonicalData(self.partial_ext, lam)
        self.lam = lam
        self._psi = [self.extended.zero(), lam]
        self._psi_lock = threading.Lock()

    def lift(self, f: GradedPoly) -> GradedPoly:
        """View a base polynomial inside the extended algebra."""
        if f.algebra.compatible(self.extended):
            return f
        return embed(f, self.extended)

    def psi(self, n: int) -> GradedPoly:
        """The E2-free ladder element Psi_n (weight 2n+2), memoized."""
        if n < 0:
            raise ValueError("psi index must be non-negative")
        with self._psi_lock:
            while len(self._psi) <= n:
                j = len(self._psi) - 1
                nxt = apply(self.partial_ext, self._psi[j]) + \
                    self.lam * self._psi[j - 1] * (j * (j + 1))
                self._psi.append(nxt)
            return self._psi[n]

    def partial_iterate(self, f: GradedPoly, n: int) -> GradedPoly:
        """Canonical iterate over the extension; on E2 this uses d(E2)=L-E2^2."""
        return canonical_iterate(self.cd_ext, self.lift(f), n)

    def d_power(self, f: GradedPoly, n: int) -> GradedPoly:
        return iterate(self.D, self.lift(f), n)


def build_extension(base: AlgebraSpec, cd: CanonicalData, e2_name: str = "E2") -> ExtensionSpec:
    """Construct M[E2] with its degree-2 derivation from canonical data."""
    return ExtensionSpec(base, cd, e2_name)


def e2_profile(f: GradedPoly, ext: ExtensionSpec) -> dict:
    """Coefficients of powers of E2: f = sum_i c_i E2^i with each c_i E2-free.

    Only nonzero coefficients appear; membership in the base algebra is
    exactly "no key >= 1".
    """
    f = ext.lift(f)
    name = ext.e2_name
    groups = {}
    for m, c in f.terms.items():
        i = m.exponent(name)
        stripped = Monomial({n: e for n, e in m.exps if n != name})
        groups.setdefault(i, {})[stripped] = c
    return {i: GradedPoly(ext.extended, t) for i, t in sorted(groups.items())}


def in_base(f: GradedPoly, ext: ExtensionSpec) -> bool:
    return all(i == 0 for i in e2_profile(f, ext))


@dataclass
class BracketEqualityReport:
    """Canonical vs standard bracket comparison for n = 0..n_max."""

    entries: list = field(default_factory=list)  # (n, ok, difference)

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.entries)

    def __str__(self):
        status = "pass" if self.passed else "fail"
        bad = [str(n) for n, ok, _ in self.entries if not ok]
        tail = f" (differs at n = {', '.join(bad)})" if bad else ""
        return f"bracket equality up to n={len(self.entries) - 1}: {status}{tail}"


def verify_bracket_equality(ext: ExtensionSpec, f: GradedPoly, g: GradedPoly,
                            n_max: int) -> BracketEqualityReport:
    """Compare the canonical bracket with the standard bracket of D."""
    f = ext.lift(f)
    g = ext.lift(g)
    report = BracketEqualityReport()
    for n in range(n_max + 1):
        canon = canonical_bracket(ext.cd_ext, f, g, n)
        std = standard_bracket(ext.D, f, g, n)
        diff = canon - std
        report.entries.append((n, diff.is_zero(), diff))
    return report


def psi(ext: ExtensionSpec, n: int) -> GradedPoly:
    return ext.psi(n)


def partial_iter_expansion(ext: ExtensionSpec, f: GradedPoly, n: int) -> GradedPoly:
    """Expansion of the n-th canonical iterate through powers of E2:

        sum_{j=0}^n (-1)^{n-j} n! (k+j)_{n-j} / ((n-j)! j!) E2^{n-j} D^j f.
    """
    f = ext.lift(f)
    if f.is_zero():
        return ext.extended.zero()
    k = f.homogeneous_weight()
    out = ext.extended.zero()
    djf = f
    for j in range(n + 1):
        if j > 0:
            djf = apply(ext.D, djf)
        c = (
            Fraction((-1) ** (n - j))
            * factorial(n)
            * pochhammer(k + j, n - j)
            / (factorial(n - j) * factorial(j))
        )
        if c:
            out = out + (ext.e2 ** (n - j)) * djf * c
    return out


def d_power_e2(ext: ExtensionSpec, n: int) -> GradedPoly:
    """D^{n+1} E2, asserted against its closed form in E2-powers and Psi."""
    value = ext.d_power(ext.e2, n + 1)
    closed = ext.extended.zero()
    for j in range(n + 2):
        c = Fraction(
            factorial(n + 1) * factorial(n + 2),
            factorial(j) * factorial(j + 1) * factorial(n + 1 - j),
        )
        closed = closed + (ext.e2 ** (n + 1 - j)) * ext.psi(j) * c
    closed = closed + (ext.e2 ** (n + 2)) * factorial(n + 1)
    if not (value - closed).is_zero():
        raise AssertionError(
            f"closed form for D^{n + 1} E2 disagrees with iterated application"
        )
    return value


def kk_theta_f(ext: ExtensionSpec, f: GradedPoly, n: int) -> GradedPoly:
    """The operator D^{n+1} f - (n+k) [E2, f]_{D,n} for base elements f."""
    f = ext.lift(f)
    if f.is_zero():
        return ext.extended.zero()
    k = f.homogeneous_weight()
    if not in_base(f, ext):
        raise ValueError("theta operator argument must be free of E2")
    bracket = standard_bracket(ext.D, ext.e2, f, n)
    return ext.d_power(f, n + 1) - bracket * (n + k)


def kk_theta_f_closed(ext: ExtensionSpec, f: GradedPoly, n: int) -> GradedPoly:
    """Closed form: d_{(n+1)} f - (n+k) sum_j (-1)^j C(n+1, n-j) C(n+k-1, j) Psi_j d_{(n-j)} f."""
    f = ext.lift(f)
    if f.is_zero():
        return ext.extended.zero()
    k = f.homogeneous_weight()
    acc = ext.extended.zero()
    for j in range(n + 1):
        c = Fraction((-1) ** j) * comb(n + 1, n - j) * gen_binomial(n + k - 1, j)
        if c:
            acc = acc + ext.psi(j) * ext.partial_iterate(f, n - j) * c
    return ext.partial_iterate(f, n + 1) - acc * (n + k)


def kk_theta_e2(ext: ExtensionSpec, n: int) -> GradedPoly:
    """(1 + (-1)^n) D^{n+1} E2 - (n+2) [E2, E2]_{D,n}; zero for odd n."""
    bracket = standard_bracket(ext.D, ext.e2, ext.e2, n)
    lead = ext.d_power(ext.e2, n + 1) * (1 + (-1) ** n)
    return lead - bracket * (n + 2)


def kk_theta_e2_closed(ext: ExtensionSpec, n: int) -> GradedPoly:
    """Closed form for even n: 2 Psi_{n+1} - (n+2) sum_j (-1)^j C(n+1,n-j) C(n+1,j) Psi_j Psi_{n-j}."""
    if n % 2 == 1:
        raise ValueError("the closed form applies to even n only")
    acc = ext.extended.zero()
    for j in range(n + 1):
        c = Fraction((-1) ** j) * comb(n + 1, n - j) * comb(n + 1, j)
        acc = acc + ext.psi(j) * ext.psi(n - j) * c
    return ext.psi(n + 1) * 2 - acc * (n + 2)
