"""Classical q-expansion oracle: exact truncated series over Q.

Everything is plain rational arithmetic on coefficient lists; no floating
point appears anywhere.  The Eisenstein series use the constant-term-1
normalization with the -24 / 240 / -504 divisor-sum coefficients, which is
the normalization under which the Ramanujan system holds (checked, not
assumed, by check_ramanujan).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .algebra import GradedPoly, as_q, pochhammer


class QSeries:
    """Coefficients of q^0..q^order with exact ring arithmetic."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs, order: int = None):
        coeffs = [as_q(c) for c in coeffs]
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError("series order must be non-negative")
        coeffs = coeffs[: order + 1]
        while len(coeffs) < order + 1:
            coeffs.append(Fraction(0))
        self.coeffs = tuple(coeffs)
        self.order = order

    @staticmethod
    def constant(c, order):
        return QSeries([as_q(c)], order)

    @staticmethod
    def zero(order):
        return QSeries([], order)

    def _match(self, other):
        if isinstance(other, (int, Fraction)):
            other = QSeries.constant(other, self.order)
        if not isinstance(other, QSeries):
            raise TypeError("expected a QSeries")
        if self.order != other.order:
            raise ValueError("series orders differ")
        return other

    def __add__(self, other):
        other = self._match(other)
        return QSeries([a + b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    __radd__ = __add__

    def __neg__(self):
        return QSeries([-a for a in self.coeffs], self.order)

    def __sub__(self, other):
        return self + (-self._match(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = as_q(other)
            return QSeries([a * c for a in self.coeffs], self.order)
        other = self._match(other)
        out = [Fraction(0)] * (self.order + 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j in range(self.order + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] += a * b
        return QSeries(out, self.order)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("series powers must be non-negative")
        out = QSeries.constant(1, self.order)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QSeries.constant(other, self.order)
        return (
            isinstance(other, QSeries)
            and self.order == other.order
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.coeffs, self.order))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def q_derivative(self) -> "QSeries":
        """The operator q d/dq: coefficient a_n goes to n a_n."""
        return QSeries([n * a for n, a in enumerate(self.coeffs)], self.order)

    def __repr__(self):
        return "QSeries[" + ", ".join(str(c) for c in self.coeffs) + "]"


def sigma(k: int, n: int) -> int:
    """Divisor power sum: sum of d^k over the divisors d of n."""
    if n < 1:
        raise ValueError("divisor sums are defined for positive n")
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d ** k
            e = n // d
            if e != d:
                total += e ** k
        d += 1
    return total


def eisenstein(weight: int, order: int) -> QSeries:
    """E2, E4 or E6 with constant term 1."""
    scale = {2: -24, 4: 240, 6: -504}
    power = {2: 1, 4: 3, 6: 5}
    if weight not in scale:
        raise ValueError("Eisenstein weights available here: 2, 4, 6")
    coeffs = [Fraction(1)]
    for n in range(1, order + 1):
        coeffs.append(Fraction(scale[weight] * sigma(power[weight], n)))
    return QSeries(coeffs, order)


def evaluate(f: GradedPoly, assignment: dict) -> QSeries:
    """Ring homomorphism sending each generator to its assigned series."""
    orders = {s.order for s in assignment.values()}
    if len(orders) != 1:
        raise ValueError("all assigned series must share one truncation order")
    order = orders.pop()
    out = QSeries.zero(order)
    powers = {}
    for mono, coef in f.terms.items():
        term = QSeries.constant(coef, order)
        for name, e in mono.exps:
            if name not in assignment:
                raise KeyError(f"no series assigned to generator {name!r}")
            key = (name, e)
            if key not in powers:
                powers[key] = assignment[name] ** e
            term = term * powers[key]
        out = out + term
    return out


def q_bracket(f: QSeries, g: QSeries, k, l, n: int) -> QSeries:
    """Rankin-Cohen bracket computed directly on q-expansions with q d/dq."""
    k = as_q(k)
    l = as_q(l)
    df = [f]
    dg = [g]
    for _ in range(n):
        df.append(df[-1].q_derivative())
        dg.append(dg[-1].q_derivative())
    out = QSeries.zero(f.order)
    for j in range(n + 1):
        c = (
            Fraction((-1) ** j)
            * pochhammer(k + j, n - j)
            * pochhammer(l + n - j, j)
            / (factorial(j) * factorial(n - j))
        )
        if c:
            out = out + df[j] * dg[n - j] * c
    return out


@dataclass
class RamanujanReport:
    order: int
    residuals: list = field(default_factory=list)  # (name, QSeries)

    @property
    def passed(self) -> bool:
        return all(r.is_zero() for _, r in self.residuals)

    def __str__(self):
        status = "pass" if self.passed else "fail"
        bad = [name for name, r in self.residuals if not r.is_zero()]
        tail = f" (nonzero: {', '.join(bad)})" if bad else ""
        return f"Ramanujan system residuals through q^{self.order}: {status}{tail}"


def check_ramanujan(order: int, perturb: dict = None) -> RamanujanReport:
    """Residuals of the Ramanujan system for (E2, E4, E6), all zero when exact.

    perturb maps a series name to an additive QSeries tweak; used as a
    falsifiability control.
    """
    e2 = eisenstein(2, order)
    e4 = eisenstein(4, order)
    e6 = eisenstein(6, order)
    if perturb:
        e2 = e2 + perturb.get("E2", QSeries.zero(order))
        e4 = e4 + perturb.get("E4", QSeries.zero(order))
        e6 = e6 + perturb.get("E6", QSeries.zero(order))
    report = RamanujanReport(order=order)
    report.residuals.append(
        ("E2' = (E2^2 - E4)/12", e2.q_derivative() - (e2 * e2 - e4) * Fraction(1, 12))
    )
    report.residuals.append(
        ("E4' = (E2 E4 - E6)/3", e4.q_derivative() - (e2 * e4 - e6) * Fraction(1, 3))
    )
    report.residuals.append(
        ("E6' = (E2 E6 - E4^2)/2", e6.q_derivative() - (e2 * e6 - e4 * e4) * Fraction(1, 2))
    )
    return report


def weight_basis_exponents(weight: int):
    """Exponent pairs (a, b) with 4a + 6b = weight, a, b >= 0."""
    if weight < 0 or weight % 2 == 1:
        return []
    out = []
    for b in range(weight // 6 + 1):
        rest = weight - 6 * b
        if rest >= 0 and rest % 4 == 0:
            out.append((rest // 4, b))
    return sorted(out)


def solve_exact(rows, rhs):
    """Exact Gaussian elimination; returns the unique solution, None when the
    system is inconsistent, and raises when the equations cannot pin every
    unknown down."""
    m = [list(map(as_q, row)) + [as_q(b)] for row, b in zip(rows, rhs)]
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        m[r] = [x / m[r][c] for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                factor = m[i][c]
                m[i] = [x - factor * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    for i in range(r, len(m)):
        if m[i][-1] != 0:
            return None
    if len(pivots) < ncols:
        raise ValueError("underdetermined system: not enough equations")
    sol = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        sol[c] = m[i][-1]
    return sol


def express_in_basis(s: QSeries, weight: int, order: int):
    """Exact coordinates of s in the monomial basis E4^a E6^b of the given
    weight, or None when s is not in the span."""
    expos = weight_basis_exponents(weight)
    if order < len(expos) + 2:
        raise ValueError(
            f"order {order} too small for a dimension-{len(expos)} space"
        )
    if s.order < order:
        raise ValueError("series is shorter than the requested matching order")
    if not expos:
        return {} if s.is_zero() else None
    e4 = eisenstein(4, order)
    e6 = eisenstein(6, order)
    basis = [(e4 ** a) * (e6 ** b) for a, b in expos]
    rows = [[col.coeffs[n] for col in basis] for n in range(order + 1)]
    rhs = [s.coeffs[n] for n in range(order + 1)]
    sol = solve_exact(rows, rhs)
    if sol is None:
        return None
    return {expos[i]: sol[i] for i in range(len(expos))}


def classical_assignment(ext, order: int) -> dict:
    """Series assignment for the classical extension: the adjoined weight-2
    element maps to E2/12, the base generators to E4 and E6."""
    return {
        ext.e2_name: eisenstein(2, order) * Fraction(1, 12),
        "E4": eisenstein(4, order),
        "E6": eisenstein(6, order),
    }
