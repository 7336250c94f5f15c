"""Truncated formal power series in X and Cohen-Kuznetsov series.

For weight k not a non-positive integer the series coefficients are stored
in a normalization that divides out the weight-dependent global constant,
leaving the exact rational 1/(n! (k)_n); every identity checked here is
homogeneous in that constant, so nothing irrational ever enters.  For
k in Z_{<=0} the series splits into a minus part (X^0..X^{-k}, integral
factorials as printed) and a plus part (X^{-k+1} onward).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .algebra import AlgebraSpec, GradedPoly, pochhammer
from .extension import ExtensionSpec


class XSeries:
    """Polynomial coefficients of X^0..X^order; arithmetic truncates."""

    __slots__ = ("algebra", "coeffs", "order")

    def __init__(self, algebra: AlgebraSpec, coeffs, order: int):
        if order < 0:
            raise ValueError("series order must be non-negative")
        self.algebra = algebra
        coeffs = list(coeffs)[: order + 1]
        while len(coeffs) < order + 1:
            coeffs.append(algebra.zero())
        self.coeffs = tuple(coeffs)
        self.order = order

    @staticmethod
    def zero(algebra, order):
        return XSeries(algebra, [], order)

    @staticmethod
    def one(algebra, order):
        return XSeries(algebra, [algebra.one()], order)

    def _match(self, other):
        if not isinstance(other, XSeries):
            raise TypeError("expected an XSeries")
        if self.order != other.order:
            raise ValueError("series orders differ")
        return other

    def __add__(self, other):
        other = self._match(other)
        return XSeries(
            self.algebra,
            [a + b for a, b in zip(self.coeffs, other.coeffs)],
            self.order,
        )

    def __sub__(self, other):
        other = self._match(other)
        return XSeries(
            self.algebra,
            [a - b for a, b in zip(self.coeffs, other.coeffs)],
            self.order,
        )

    def __neg__(self):
        return XSeries(self.algebra, [-a for a in self.coeffs], self.order)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GradedPoly)):
            return XSeries(
                self.algebra, [a * other for a in self.coeffs], self.order
            )
        other = self._match(other)
        out = [self.algebra.zero() for _ in range(self.order + 1)]
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j in range(self.order + 1 - i):
                b = other.coeffs[j]
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return XSeries(self.algebra, out, self.order)

    __rmul__ = __mul__

    def alternate(self) -> "XSeries":
        """The substitution X -> -X."""
        return XSeries(
            self.algebra,
            [c * ((-1) ** i) for i, c in enumerate(self.coeffs)],
            self.order,
        )

    def __eq__(self, other):
        return (
            isinstance(other, XSeries)
            and self.order == other.order
            and all(a == b for a, b in zip(self.coeffs, other.coeffs))
        )

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def __repr__(self):
        parts = [f"({c!r})*X^{i}" for i, c in enumerate(self.coeffs) if not c.is_zero()]
        return " + ".join(parts) if parts else "0"


@dataclass
class CKPair:
    """Split CK series: minus part only for non-positive integer weight."""

    minus: XSeries
    plus: XSeries
    weight: Fraction
    normalized: bool  # True when the 1/(k-1)! global constant was divided out

    @property
    def total(self) -> XSeries:
        return self.minus + self.plus


D_POWER = "D-power"
CANONICAL_ITERATE = "canonical-iterate"


def _derivative_ladder(d_kind: str, f: GradedPoly, order: int, ext: ExtensionSpec):
    if d_kind == D_POWER:
        out = [ext.lift(f)]
        for _ in range(order):
            out.append(ext.D(out[-1]))
        return out
    if d_kind == CANONICAL_ITERATE:
        return [ext.partial_iterate(f, n) for n in range(order + 1)]
    raise ValueError(f"unknown derivative kind {d_kind!r}")


def is_nonpositive_integer(k) -> bool:
    return Fraction(k).denominator == 1 and k <= 0


def ck_series(d_kind: str, f: GradedPoly, order: int, ext: ExtensionSpec) -> CKPair:
    """CK series of a homogeneous element, split into minus/plus parts."""
    f = ext.lift(f)
    alg = ext.extended
    if f.is_zero():
        z = XSeries.zero(alg, order)
        return CKPair(z, z, Fraction(0), normalized=False)
    k = f.homogeneous_weight()
    ladder = _derivative_ladder(d_kind, f, order, ext)
    minus = [alg.zero() for _ in range(order + 1)]
    plus = [alg.zero() for _ in range(order + 1)]
    if is_nonpositive_integer(k):
        neg_k = int(-k)
        for n in range(order + 1):
            if n <= neg_k:
                c = Fraction((-1) ** n * factorial(neg_k - n), factorial(n))
                minus[n] = ladder[n] * c
            else:
                c = Fraction(1, factorial(n) * factorial(int(k) + n - 1))
                plus[n] = ladder[n] * c
        return CKPair(
            XSeries(alg, minus, order), XSeries(alg, plus, order), k, normalized=False
        )
    for n in range(order + 1):
        plus[n] = ladder[n] * (Fraction(1) / (factorial(n) * pochhammer(k, n)))
    return CKPair(
        XSeries(alg, minus, order), XSeries(alg, plus, order), k, normalized=True
    )


def exp_series(g: GradedPoly, order: int, sign: int = 1) -> XSeries:
    """The formal exponential sum_j (sign*g)^j / j! X^j."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    alg = g.algebra
    coeffs = []
    power = alg.one()
    for j in range(order + 1):
        if j:
            power = power * g * sign
        coeffs.append(power * Fraction(1, factorial(j)))
    return XSeries(alg, coeffs, order)


def a_n_term(ext: ExtensionSpec, f: GradedPoly, n: int) -> GradedPoly:
    """The correction term (-1)^n sum_{j=0}^{-k} (-k-j)!/(j!(n-j)!) E2^{n-j} D^j f."""
    f = ext.lift(f)
    k = f.homogeneous_weight()
    if not is_nonpositive_integer(k):
        raise ValueError("the correction terms exist for non-positive integer weight")
    neg_k = int(-k)
    if n < neg_k + 1:
        raise ValueError(f"the correction terms start at n = {neg_k + 1}")
    out = ext.extended.zero()
    djf = f
    for j in range(neg_k + 1):
        if j:
            djf = ext.D(djf)
        c = Fraction(factorial(neg_k - j), factorial(j) * factorial(n - j))
        out = out + (ext.e2 ** (n - j)) * djf * c
    return out * ((-1) ** n)


@dataclass
class Lemma42Report:
    """Coefficientwise comparison of exp(-E2 X) * CK_D against CK_partial."""

    weight: Fraction
    order: int
    entries: list = field(default_factory=list)  # (identity, ok)

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.entries)

    def __str__(self):
        status = "pass" if self.passed else "fail"
        bad = [name for name, ok in self.entries if not ok]
        tail = f" (failing: {', '.join(bad)})" if bad else ""
        return f"CK transfer at weight {self.weight}, order {self.order}: {status}{tail}"


def verify_lemma42(ext: ExtensionSpec, f: GradedPoly, order: int) -> Lemma42Report:
    """Check the exponential intertwining of the two CK series of f."""
    f = ext.lift(f)
    k = f.homogeneous_weight()
    report = Lemma42Report(weight=k, order=order)
    emx = exp_series(ext.e2, order, sign=-1)
    ck_d = ck_series(D_POWER, f, order, ext)
    ck_p = ck_series(CANONICAL_ITERATE, f, order, ext)
    if not is_nonpositive_integer(k):
        report.entries.append(
            ("exp(-E2 X) CK_D = CK_partial", (emx * ck_d.plus) == ck_p.plus)
        )
        return report
    neg_k = int(-k)
    corrected = ck_p.minus + XSeries(
        ext.extended,
        [
            ext.extended.zero() if n <= neg_k else a_n_term(ext, f, n)
            for n in range(order + 1)
        ],
        order,
    )
    report.entries.append(
        ("exp(-E2 X) CK_D^- = CK_partial^- + sum A_n X^n", (emx * ck_d.minus) == corrected)
    )
    report.entries.append(
        ("exp(-E2 X) CK_D^+ = CK_partial^+", (emx * ck_d.plus) == ck_p.plus)
    )
    return report
