"""Weighted sparse polynomials over Q with exact rational arithmetic.

The scalar field is Q, realized by :class:`fractions.Fraction` (always in
lowest terms, positive denominator, no rounding).  An :class:`AlgebraSpec`
declares named generators with rational weights whose denominators divide a
grading denominator N; a :class:`GradedPoly` is a sparse term map over those
generators.  Everything here is immutable after construction and safe to
share between threads.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial


class AlgebraError(ValueError):
    """Malformed algebra data (bad weights, duplicate names, ...)."""


class InhomogeneousError(ValueError):
    """An operation that needs a single weight got a mixed-weight polynomial."""


class ReductionLimitError(RuntimeError):
    """Relation reduction did not terminate within the step bound."""


#: weight_of() sentinels
ZERO = "zero"
INHOMOGENEOUS = "inhomogeneous"


def as_q(x) -> Fraction:
    """Coerce an int, string like ``-3/4``, or Fraction to an exact rational."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as a rational number")


def pochhammer(x, n: int) -> Fraction:
    """Rising factorial (x)_n = x(x+1)...(x+n-1), with (x)_0 = 1."""
    if n < 0:
        raise ValueError("pochhammer index must be non-negative")
    x = as_q(x)
    out = Fraction(1)
    for i in range(n):
        out *= x + i
    return out


def gen_binomial(x, j: int) -> Fraction:
    """Generalized binomial coefficient x(x-1)...(x-j+1)/j! for rational x."""
    if j < 0:
        raise ValueError("binomial index must be non-negative")
    return pochhammer(as_q(x) - j + 1, j) / factorial(j)


class Monomial:
    """Exponent map over generator names; the empty map is the unit."""

    __slots__ = ("exps", "_hash")

    def __init__(self, exps=()):
        d = dict(exps)
        self.exps = tuple(sorted((n, e) for n, e in d.items() if e != 0))
        for _, e in self.exps:
            if e < 0 or not isinstance(e, int):
                raise AlgebraError(f"negative or non-integer exponent in {d!r}")
        self._hash = hash(self.exps)

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return isinstance(other, Monomial) and self.exps == other.exps

    def __mul__(self, other):
        d = dict(self.exps)
        for n, e in other.exps:
            d[n] = d.get(n, 0) + e
        return Monomial(d)

    def exponent(self, name) -> int:
        return dict(self.exps).get(name, 0)

    def degree(self) -> int:
        """Total degree (sum of exponents)."""
        return sum(e for _, e in self.exps)

    def divides(self, other) -> bool:
        od = dict(other.exps)
        return all(e <= od.get(n, 0) for n, e in self.exps)

    def quotient(self, other) -> "Monomial":
        """self / other, assuming other.divides(self)."""
        d = dict(self.exps)
        for n, e in other.exps:
            d[n] = d.get(n, 0) - e
        return Monomial(d)

    def names(self):
        return [n for n, _ in self.exps]

    def __repr__(self):
        if not self.exps:
            return "Monomial(1)"
        return "Monomial(" + "*".join(f"{n}^{e}" for n, e in self.exps) + ")"

    @staticmethod
    def unit() -> "Monomial":
        return Monomial()


class AlgebraSpec:
    """Graded polynomial algebra: generators with weights in (1/N)Z.

    Relations are given as expression strings (parsed over the algebra
    itself); a single relation is all the reduction machinery supports.
    """

    def __init__(self, grading_denominator, generators, relations=()):
        n = int(grading_denominator)
        if n < 1:
            raise AlgebraError("grading denominator must be a positive integer")
        self.grading_denominator = n
        gens = []
        seen = set()
        for name, w in generators:
            if name in seen:
                raise AlgebraError(f"duplicate generator name {name!r}")
            seen.add(name)
            w = as_q(w)
            if (w * n).denominator != 1:
                raise AlgebraError(
                    f"weight {w} of {name!r} is not an integer multiple of 1/{n}"
                )
            gens.append((name, w))
        self.generators = tuple(gens)
        self._weights = dict(self.generators)
        self._order = {name: i for i, (name, _) in enumerate(self.generators)}
        self.relation_exprs = tuple(relations)
        # parse_expr lives in exprs.py, which imports this module
        from .exprs import parse_expr

        self.relations = tuple(parse_expr(r, self) for r in self.relation_exprs)

    # -- basic queries -------------------------------------------------

    def names(self):
        return [n for n, _ in self.generators]

    def weight(self, name) -> Fraction:
        try:
            return self._weights[name]
        except KeyError:
            raise AlgebraError(f"unknown generator {name!r}") from None

    def compatible(self, other) -> bool:
        return (
            self is other
            or (
                self.grading_denominator == other.grading_denominator
                and self.generators == other.generators
            )
        )

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraSpec)
            and self.grading_denominator == other.grading_denominator
            and self.generators == other.generators
            and self.relation_exprs == other.relation_exprs
        )

    def __hash__(self):
        return hash((self.grading_denominator, self.generators))

    def __repr__(self):
        gens = ", ".join(f"{n}:{w}" for n, w in self.generators)
        return f"AlgebraSpec(1/{self.grading_denominator}Z; {gens})"

    # -- element constructors ------------------------------------------

    def zero(self) -> "GradedPoly":
        return GradedPoly(self, {})

    def one(self) -> "GradedPoly":
        return self.const(1)

    def const(self, c) -> "GradedPoly":
        return GradedPoly(self, {Monomial.unit(): as_q(c)})

    def gen(self, name) -> "GradedPoly":
        self.weight(name)
        return GradedPoly(self, {Monomial({name: 1}): Fraction(1)})

    def parse(self, text) -> "GradedPoly":
        from .exprs import parse_expr

        return parse_expr(text, self)

    # -- monomial helpers ----------------------------------------------

    def monomial_weight(self, m: Monomial) -> Fraction:
        return sum((e * self.weight(n) for n, e in m.exps), Fraction(0))

    def monomial_key(self, m: Monomial):
        """Sort key for the degree-lexicographic order (declared gen order)."""
        vec = tuple(m.exponent(n) for n in self.names())
        return (m.degree(), vec)


class GradedPoly:
    """Sparse polynomial: map from monomials to nonzero rational coefficients."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: AlgebraSpec, terms):
        self.algebra = algebra
        clean = {}
        for m, c in dict(terms).items():
            c = as_q(c)
            if c != 0:
                for name in m.names():
                    algebra.weight(name)
                clean[m] = c
        self.terms = clean

    # -- ring structure -------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, GradedPoly):
            if not self.algebra.compatible(other.algebra):
                raise AlgebraError("polynomials live over different algebras")
            return other
        return self.algebra.const(as_q(other))

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m, Fraction(0)) + c
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
        return GradedPoly(self.algebra, terms)

    __radd__ = __add__

    def __neg__(self):
        return GradedPoly(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, GradedPoly):
            c = as_q(other)
            return GradedPoly(self.algebra, {m: c * v for m, v in self.terms.items()})
        other = self._coerce(other)
        terms = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 * m2
                s = terms.get(m, Fraction(0)) + c1 * c2
                if s:
                    terms[m] = s
                else:
                    terms.pop(m, None)
        return GradedPoly(self.algebra, terms)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        c = as_q(scalar)
        if c == 0:
            raise ZeroDivisionError("division of a polynomial by zero")
        return self * (Fraction(1) / c)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers must be non-negative integers")
        out = self.algebra.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def __eq__(self, other):
        if isinstance(other, GradedPoly):
            return self.algebra.compatible(other.algebra) and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.algebra.const(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # -- grading ----------------------------------------------------------

    def weight(self):
        """Common weight, or the ZERO / INHOMOGENEOUS sentinel strings."""
        return weight_of(self)

    def homogeneous_weight(self) -> Fraction:
        """Weight of a homogeneous polynomial; raises on mixed weights.

        The zero polynomial has no distinguished weight either; callers that
        accept zero should test is_zero() first.
        """
        w = weight_of(self)
        if isinstance(w, str):
            raise InhomogeneousError(f"expected a homogeneous polynomial, got {w}")
        return w

    def constant_term(self) -> Fraction:
        return self.terms.get(Monomial.unit(), Fraction(0))

    def coefficient(self, m: Monomial) -> Fraction:
        return self.terms.get(m, Fraction(0))

    def leading_monomial(self) -> Monomial:
        """Largest monomial in the degree-lexicographic order."""
        if not self.terms:
            raise ValueError("the zero polynomial has no leading monomial")
        return max(self.terms, key=self.algebra.monomial_key)

    def __repr__(self):
        from .exprs import format_poly

        return format_poly(self)


def weight_of(f: GradedPoly):
    """Weight of f: a Fraction if homogeneous, else ZERO or INHOMOGENEOUS.

    The zero polynomial is homogeneous of every weight, reported as ZERO.
    """
    weights = {f.algebra.monomial_weight(m) for m in f.terms}
    if not weights:
        return ZERO
    if len(weights) == 1:
        return weights.pop()
    return INHOMOGENEOUS


def homogeneous_components(f: GradedPoly) -> dict:
    """Split f into its homogeneous parts, keyed by weight; they re-sum to f."""
    parts = {}
    for m, c in f.terms.items():
        w = f.algebra.monomial_weight(m)
        parts.setdefault(w, {})[m] = c
    return {w: GradedPoly(f.algebra, t) for w, t in sorted(parts.items())}


def substitute(f: GradedPoly, mapping: dict) -> GradedPoly:
    """Replace generators by polynomials; names not in mapping stay themselves.

    Mapping values may be polynomials or expression strings over f's algebra.
    """
    alg = f.algebra
    images = {}
    for name, value in mapping.items():
        alg.weight(name)
        images[name] = alg.parse(value) if isinstance(value, str) else value
    out = alg.zero()
    for m, c in f.terms.items():
        term = alg.const(c)
        for name, e in m.exps:
            base = images.get(name, alg.gen(name))
            term = term * base ** e
        out = out + term
    return out


def embed(f: GradedPoly, target: AlgebraSpec) -> GradedPoly:
    """Reinterpret f over a larger algebra containing the same generators."""
    for name in {n for m in f.terms for n in m.names()}:
        if target.weight(name) != f.algebra.weight(name):
            raise AlgebraError(
                f"generator {name!r} changes weight between algebras"
            )
    return GradedPoly(target, f.terms)


def exact_divide(num: GradedPoly, den: GradedPoly):
    """Quotient num/den when den divides num exactly, else None.

    Cancels leading terms greedily; in the deg-lex monomial order this
    succeeds precisely for exact divisibility.
    """
    if den.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    alg = num.algebra
    lm = den.leading_monomial()
    lc = den.terms[lm]
    quot = alg.zero()
    rem = num
    while not rem.is_zero():
        rlm = rem.leading_monomial()
        if not lm.divides(rlm):
            return None
        piece = GradedPoly(alg, {rlm.quotient(lm): rem.terms[rlm] / lc})
        quot = quot + piece
        rem = rem - piece * den
    return quot


def reduce_mod_relations(f: GradedPoly, algebra: AlgebraSpec = None,
                         step_bound: int = 100_000) -> GradedPoly:
    """Normal form of f under leading-term replacement by the relations.

    Each relation R rewrites its leading monomial as the (negated, rescaled)
    tail; repeated replacement terminates for the single-relation algebras
    used here.  A step bound guards against accidental non-termination.
    """
    algebra = algebra or f.algebra
    if not algebra.relations:
        raise AlgebraError("algebra declares no relations to reduce by")
    rules = []
    for rel in algebra.relations:
        lm = rel.leading_monomial()
        lc = rel.terms[lm]
        tail = rel - GradedPoly(algebra, {lm: lc})
        rules.append((lm, (-tail) * (Fraction(1) / lc)))

    steps = 0
    current = f if f.algebra is algebra else embed(f, algebra)
    while True:
        hit = None
        for m in sorted(current.terms, key=algebra.monomial_key, reverse=True):
            for lm, rhs in rules:
                if lm.divides(m):
                    hit = (m, lm, rhs)
                    break
            if hit:
                break
        if hit is None:
            return current
        steps += 1
        if steps > step_bound:
            raise ReductionLimitError(
                f"relation reduction exceeded {step_bound} steps; "
                f"last polynomial had {len(current.terms)} terms"
            )
        m, lm, rhs = hit
        c = current.terms[m]
        cofactor = GradedPoly(algebra, {m.quotient(lm): c})
        current = current - GradedPoly(algebra, {m: c}) + cofactor * rhs
