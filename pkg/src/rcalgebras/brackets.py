"""Rankin-Cohen brackets: standard (from a degree-2 derivation) and
canonical (from a Serre-type derivation and a weight-4 element).

Both brackets take homogeneous arguments of weights k, l and produce a
homogeneous element of weight k + l + 2n.  Pochhammer coefficients are
evaluated exactly in Q, so fractional and negative weights need no special
casing; the support windows of the negative-weight regime are provided
separately as a verification aid, not as a fast path.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .algebra import GradedPoly, InhomogeneousError, pochhammer, weight_of
from .derivations import Derivation, apply


@dataclass(frozen=True)
class CanonicalData:
    """A Serre-type degree-2 derivation together with a weight-4 element."""

    partial: Derivation
    lam: GradedPoly

    def __post_init__(self):
        if self.partial.degree != 2:
            raise ValueError("the Serre-type derivation must be declared degree 2")
        w = weight_of(self.lam)
        if not (self.lam.is_zero() or w == 4):
            raise ValueError(f"the weight-4 element has weight {w}")


def _homogeneous_weight(f: GradedPoly, what: str) -> Fraction:
    w = weight_of(f)
    if isinstance(w, str):
        if f.is_zero():
            return Fraction(0)
        raise InhomogeneousError(f"{what} must be homogeneous")
    return w


def standard_bracket(D: Derivation, f: GradedPoly, g: GradedPoly, n: int) -> GradedPoly:
    """n-th bracket sum_j (-1)^j (k+j)_{n-j} (l+n-j)_j / (j!(n-j)!) D^j f D^{n-j} g."""
    if n < 0:
        raise ValueError("bracket order must be non-negative")
    if f.is_zero() or g.is_zero():
        return f.algebra.zero()
    k = _homogeneous_weight(f, "bracket argument f")
    l = _homogeneous_weight(g, "bracket argument g")
    df = [f]
    dg = [g]
    for _ in range(n):
        df.append(apply(D, df[-1]))
        dg.append(apply(D, dg[-1]))
    out = f.algebra.zero()
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


def canonical_iterate(cd: CanonicalData, h: GradedPoly, j: int) -> GradedPoly:
    """The recursion p_0 = h, p_1 = dh, p_{j+1} = d(p_j) + j(j+k-1) L p_{j-1}."""
    if j < 0:
        raise ValueError("iterate index must be non-negative")
    if h.is_zero():
        return h.algebra.zero()
    k = _homogeneous_weight(h, "canonical iterate argument")
    prev, cur = None, h
    for i in range(j):
        nxt = apply(cd.partial, cur)
        if i >= 1:
            nxt = nxt + cd.lam * prev * (Fraction(i) * (i + k - 1))
        prev, cur = cur, nxt
    return cur


def canonical_bracket(cd: CanonicalData, f: GradedPoly, g: GradedPoly, n: int) -> GradedPoly:
    """The bracket with the canonical iterates in place of derivation powers."""
    if n < 0:
        raise ValueError("bracket order must be non-negative")
    if f.is_zero() or g.is_zero():
        return f.algebra.zero()
    k = _homogeneous_weight(f, "bracket argument f")
    l = _homogeneous_weight(g, "bracket argument g")
    pf = [canonical_iterate(cd, f, j) for j in range(n + 1)]
    pg = [canonical_iterate(cd, g, j) for j in range(n + 1)]
    out = f.algebra.zero()
    for j in range(n + 1):
        c = (
            Fraction((-1) ** j)
            * pochhammer(k + j, n - j)
            * pochhammer(l + n - j, j)
            / (factorial(j) * factorial(n - j))
        )
        if c:
            out = out + pf[j] * pg[n - j] * c
    return out


EMPTY_WINDOW = "empty"


def bracket_support_window(k: int, l: int, n: int):
    """Inclusive j-range (lo, hi) of the nonzero bracket coefficients, for
    negative integer weights l <= k < 0; the forced-zero band reports "empty".
    """
    if not (isinstance(k, int) and isinstance(l, int)):
        raise ValueError("support windows are defined for integer weights only")
    if not (l <= k < 0):
        raise ValueError("support windows require l <= k < 0")
    if n < 0:
        raise ValueError("bracket order must be non-negative")
    if n <= -k:
        return (0, n)
    if n <= -l:
        return (-k + 1, n)
    if n <= -k - l + 1:
        return EMPTY_WINDOW
    return (-k + 1, n + l - 1)
