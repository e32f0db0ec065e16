"""Concave toric weight functions and their Newton convex bodies.

Two families are representable exactly:

* `PiecewiseLinearMin` -- g(x) = min_i (<slope_i, x> + offset_i) with
  componentwise non-negative slopes.  Its body has the same interior as
  the Newton polyhedron built on the slopes; offsets never change any
  verdict.
* `PowerProduct` -- g(x) = k * x_1^a_1 ... x_n^a_n with k > 0 and
  sum(a) <= 1 (the concavity threshold).  Body membership is decided
  exactly by clearing the denominators of the exponents and comparing
  integer powers; no floating point enters any verdict.

`homogenized_value` is the monomial-valuation weight of the attached
torus-invariant psh function along w (the limit of g(tw)/t), and
`valuative_membership` is the valuation-based membership test with an
exact certificate for non-members.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import List, Optional, Sequence, Tuple, Union

from .lp import ZERO, InputError, frac, fvec
from .newton import (BOUNDARY, EXTERIOR, INTERIOR, PointClassification,
                     Vector, build, classify, dot, vector)


@dataclass(frozen=True)
class PiecewiseLinearMin:
    pieces: Tuple[Tuple[Vector, Fraction], ...]  # (slope, offset)

    @property
    def dimension(self) -> int:
        return len(self.pieces[0][0])


@dataclass(frozen=True)
class PowerProduct:
    scale: Fraction            # k
    exponents: Vector          # alpha, componentwise >= 0, sum <= 1

    @property
    def dimension(self) -> int:
        return len(self.exponents)


ConcaveToricFunction = Union[PiecewiseLinearMin, PowerProduct]


@dataclass(frozen=True)
class ValuativeReport:
    member: bool
    margin: Optional[Fraction] = None    # member: a certified gap delta
    certificate: Optional[Vector] = None  # non-member: valuation weight w


def pwl_min(pieces: Sequence[Tuple[Sequence, object]]) -> PiecewiseLinearMin:
    if not pieces:
        raise InputError("need at least one affine piece")
    parsed = []
    n = None
    for slope, offset in pieces:
        s = fvec(slope)
        if n is None:
            n = len(s)
        elif len(s) != n:
            raise InputError("mixed dimensions in pieces")
        if any(c < 0 for c in s):
            raise InputError("slopes must be componentwise non-negative")
        parsed.append((s, frac(offset)))
    return PiecewiseLinearMin(tuple(parsed))


def power_product(k, exponents: Sequence) -> PowerProduct:
    kf = frac(k)
    if kf <= 0:
        raise InputError("the factor k must be positive")
    al = fvec(exponents)
    if not al:
        raise InputError("need at least one exponent")
    if any(a < 0 for a in al):
        raise InputError("exponents must be non-negative")
    if sum(al, ZERO) > 1:
        raise InputError("sum of exponents exceeds 1; the function "
                         "would not be concave")
    return PowerProduct(kf, al)


def _iroot(value: int, k: int) -> Optional[int]:
    """Exact integer k-th root, or None."""
    if value < 0:
        return None
    if value in (0, 1) or k == 1:
        return value
    r = int(round(value ** (1.0 / k)))
    for cand in range(max(r - 2, 0), r + 3):
        if cand ** k == value:
            return cand
    return None


def _rational_root(value: Fraction, k: int) -> Optional[Fraction]:
    num = _iroot(value.numerator, k)
    if num is None:
        return None
    den = _iroot(value.denominator, k)
    if den is None:
        return None
    return Fraction(num, den)


def _power_data(g: PowerProduct) -> Tuple[int, List[int]]:
    """Common denominator q and integer numerators p_i of the exponents."""
    q = lcm(*[a.denominator for a in g.exponents]) if g.exponents else 1
    return q, [int(a * q) for a in g.exponents]


def _power_value_pow_q(g: PowerProduct, x: Vector) -> Tuple[Fraction, int]:
    """(k * prod x^alpha) ** q as an exact rational, with q."""
    q, ps = _power_data(g)
    val = g.scale ** q
    for xi, p in zip(x, ps):
        if p:
            val *= xi ** p
    return val, q


def evaluate(g: ConcaveToricFunction, x: Sequence):
    """g(x); exact rational when possible, else a float."""
    if isinstance(g, PiecewiseLinearMin):
        xv = vector(x, g.dimension)
        return min(dot(s, xv) + off for s, off in g.pieces)
    xv = vector(x, g.dimension)
    if any(v < 0 for v in xv):
        raise InputError("evaluation point must be componentwise >= 0")
    if any(xi == 0 and a > 0 for xi, a in zip(xv, g.exponents)):
        return Fraction(0)
    vq, q = _power_value_pow_q(g, xv)
    exact = _rational_root(vq, q)
    if exact is not None:
        return exact
    prod = float(g.scale)
    for xi, a in zip(xv, g.exponents):
        if a:
            prod *= float(xi) ** float(a)
    return prod


def homogenized_value(g: ConcaveToricFunction, w: Sequence):
    """lim g(tw)/t -- the Kiselman number of the attached weight along w."""
    wv = vector(w)
    if len(wv) != g.dimension:
        raise InputError("dimension mismatch")
    if all(v == 0 for v in wv):
        raise InputError("the direction w must be non-zero")
    if any(v < 0 for v in wv):
        raise InputError("the direction w must be componentwise >= 0")
    if isinstance(g, PiecewiseLinearMin):
        return min(dot(s, wv) for s, _ in g.pieces)
    if sum(g.exponents, ZERO) < 1:
        return Fraction(0)
    return evaluate(g, wv)


def _body_margin_power(g: PowerProduct, lam: Vector,
                       iterations: int = 40) -> Fraction:
    """Certified dyadic lower bound for the interior margin of lam.

    The exact margin solves a polynomial equation and is irrational in
    general; the bisection bound still satisfies lam - margin*1 in the
    closed body.
    """
    support = [i for i, a in enumerate(g.exponents) if a > 0]
    if not support:
        pos = [v for v in lam if v > 0]
        return min(pos) if len(pos) == len(lam) else Fraction(1)
    if sum(g.exponents, ZERO) < 1:
        return min(lam[i] for i in support) / 2

    def in_closure(eps: Fraction) -> bool:
        shifted = tuple(v - eps for v in lam)
        if any(shifted[i] < 0 for i in support):
            return False
        vq, q = _power_value_pow_q(g, tuple(
            (s / a if a > 0 else Fraction(0))
            for s, a in zip(shifted, g.exponents)))
        return vq / g.scale ** q >= g.scale ** q

    lo = ZERO
    hi = min(lam[i] for i in support)
    for _ in range(iterations):
        mid = (lo + hi) / 2
        if in_closure(mid):
            lo = mid
        else:
            hi = mid
    return lo


def _power_ratio_sign(g: PowerProduct, lam: Vector) -> int:
    """Sign of prod_{a_i>0} (lam_i/a_i)^{a_i} - k, decided exactly."""
    q, ps = _power_data(g)
    lhs = Fraction(1)
    for li, ai, p in zip(lam, g.exponents, ps):
        if p:
            if li == 0:
                return -1
            lhs *= (li / ai) ** p
    rhs = g.scale ** q
    return (lhs > rhs) - (lhs < rhs)


def _power_separating_direction(g: PowerProduct, lam: Vector) -> Vector:
    """A weight w >= 0 with ghat(w) >= <w, lam>, strict off the boundary."""
    support = [i for i, a in enumerate(g.exponents) if a > 0]
    zero_support = [i for i in support if lam[i] == 0]
    if not zero_support:
        return tuple(a / li if a > 0 else Fraction(0)
                     for li, a in zip(lam, g.exponents))
    # lam vanishes on the support: push mass along that axis until the
    # homogeneous value exactly beats <w, lam>.
    i = zero_support[0]
    q, ps = _power_data(g)
    m = 1
    while True:
        w = tuple(Fraction(1) + (Fraction(m) if j == i else ZERO)
                  for j in range(g.dimension))
        ghat_q = g.scale ** q
        for wj, p in zip(w, ps):
            if p:
                ghat_q *= wj ** p
        if ghat_q >= dot(w, lam) ** q:
            return w
        m *= 2


def classify_in_body(g: ConcaveToricFunction,
                     lam: Sequence) -> PointClassification:
    """Locate lam relative to the Newton convex body of g, exactly.

    Verdicts refer to the closure of the body (the polyhedron of the
    homogenization); all downstream theorems consume interiors only.
    """
    lv = vector(lam)
    if len(lv) != g.dimension:
        raise InputError("dimension mismatch")
    if any(v < 0 for v in lv):
        raise InputError("the point must be componentwise >= 0")
    if isinstance(g, PiecewiseLinearMin):
        P = build([s for s, _ in g.pieces])
        return classify(P, lv, Fraction(1))
    if sum(g.exponents, ZERO) < 1:
        support = [i for i, a in enumerate(g.exponents) if a > 0]
        if all(lv[i] > 0 for i in support):
            return PointClassification(
                INTERIOR, margin=_body_margin_power(g, lv))
        bad = next(i for i in support if lv[i] == 0)
        w = tuple(Fraction(1) if j == bad else ZERO
                  for j in range(g.dimension))
        return PointClassification(EXTERIOR, witness=w)
    sign = _power_ratio_sign(g, lv)
    if sign > 0:
        return PointClassification(INTERIOR, margin=_body_margin_power(g, lv))
    w = _power_separating_direction(g, lv)
    verdict = BOUNDARY if sign == 0 else EXTERIOR
    return PointClassification(verdict, witness=w)


def exp_integrable(g: ConcaveToricFunction) -> bool:
    """Does exp(g) have finite integral over the positive orthant?"""
    zero = (ZERO,) * g.dimension
    return classify_in_body(g, zero).verdict == INTERIOR


def exp_integrable_shifted(g: ConcaveToricFunction, shift: Sequence) -> bool:
    """Does exp(g - <shift, .>) have finite integral over the orthant?"""
    sv = vector(shift, g.dimension)
    if any(v < 0 for v in sv):
        raise InputError("shift must be componentwise >= 0")
    return classify_in_body(g, sv).verdict == INTERIOR


def certificate_slack(g: ConcaveToricFunction, beta: Sequence,
                      w: Vector) -> int:
    """Sign of ghat(w) - (<w, beta> + |w|), decided exactly.

    >= 0 certifies that beta is NOT a member (the valuation ratio is
    at least 1 along w).
    """
    bv = vector(beta, g.dimension)
    bound = dot(w, bv) + sum(w, ZERO)
    if isinstance(g, PiecewiseLinearMin):
        ghat = homogenized_value(g, w)
        return (ghat > bound) - (ghat < bound)
    if sum(g.exponents, ZERO) < 1:
        return (0 > bound) - (0 < bound) if bound != 0 else 0
    vq, q = _power_value_pow_q(g, w)
    rq = bound ** q
    return (vq > rq) - (vq < rq)


def valuative_membership(g: ConcaveToricFunction,
                         beta: Sequence) -> ValuativeReport:
    """Membership of z^beta decided through monomial valuations.

    Member iff beta + 1 lies in the interior of the body; non-members
    carry a weight w with ghat(w) >= <w, beta> + |w| exactly.
    """
    bv = vector(beta, g.dimension)
    if any(v < 0 for v in bv):
        raise InputError("beta must be componentwise >= 0")
    lam = tuple(b + 1 for b in bv)
    cls = classify_in_body(g, lam)
    if cls.verdict == INTERIOR:
        # lam - margin*1 in the closed body gives ratio <= 1 - delta
        delta = cls.margin / max(lam)
        return ValuativeReport(True, margin=delta)
    w = cls.witness
    if certificate_slack(g, bv, w) < 0:  # pragma: no cover - soundness net
        raise AssertionError("witness fails the valuative inequality")
    return ValuativeReport(False, certificate=w)


def gradient_sample(g: PowerProduct, sample_points: Sequence[Sequence],
                    bump=Fraction(1, 10)) -> List[Vector]:
    """Interior points of the body built from gradients of g.

    Each sample v must be strictly positive; the returned point is a
    rational approximation of grad g(v) pushed up by `bump` in every
    coordinate, asserted Interior by the exact classifier.
    """
    if not isinstance(g, PowerProduct):
        raise InputError("gradient sampling is defined for power products")
    mu = frac(bump)
    if mu <= 0:
        raise InputError("bump must be positive")
    out: List[Vector] = []
    for point in sample_points:
        v = vector(point, g.dimension)
        if any(x <= 0 for x in v):
            raise InputError("sample points must be strictly positive")
        gv = evaluate(g, v)
        if isinstance(gv, Fraction):
            grad = tuple(a * gv / x for a, x in zip(g.exponents, v))
        else:
            grad = tuple(
                Fraction(float(a) * gv / float(x)).limit_denominator(10 ** 9)
                for a, x in zip(g.exponents, v))
        candidate = tuple(gi + mu for gi in grad)
        for _ in range(8):
            if classify_in_body(g, candidate).verdict == INTERIOR:
                break
            candidate = tuple(ci + mu / 2 for ci in candidate)
        else:  # pragma: no cover
            raise AssertionError("failed to certify a gradient sample")
        out.append(candidate)
    return out
