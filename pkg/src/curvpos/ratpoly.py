"""Exact rational polynomial algebra: gcd, Sturm chains, resultants, discriminants.

Everything in this module is exact.  Scalars are ``fractions.Fraction``;
univariate polynomials are dense coefficient lists; bivariate polynomials are
sparse exponent->coefficient maps.  Sign decisions (root counting, root
isolation, discriminant vanishing) are therefore decisions, not estimates.

Conventions fixed here and relied on elsewhere:

* ``discriminant(a) = (-1)^(d(d-1)/2) * resultant(a, a') / lc(a)``.
* ``resultant`` is the determinant of the Sylvester matrix with deg(b) rows
  of a's coefficients on top of deg(a) rows of b's coefficients.
* ``subdiscriminant_first(a)`` is the first principal subresultant
  coefficient of (a, a'), defined as the determinant of the Sylvester-style
  matrix truncated by one block row on each side (no leading-coefficient or
  sign normalization).  Together with the discriminant it detects repeated
  multiple roots: disc = 0 and subdisc_1 = 0  iff  deg gcd(a, a') >= 2.
* Sturm counts are over half-open intervals (lo, hi], with zeros dropped
  when counting sign variations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence


def _sign(x) -> int:
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


class UniPoly:
    """Dense univariate polynomial over the rationals.

    ``coeffs[k]`` is the coefficient of the k-th power.  The trailing
    coefficient is nonzero, or the list is empty (the zero polynomial,
    degree -1 by convention).
    """

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable = (), var: str = "x"):
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = cs
        self.var = var

    @classmethod
    def zero(cls, var: str = "x") -> "UniPoly":
        return cls((), var)

    @classmethod
    def from_roots(cls, roots: Iterable, var: str = "x") -> "UniPoly":
        p = cls((1,), var)
        for r in roots:
            p = p * cls((-Fraction(r), 1), var)
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __eq__(self, other) -> bool:
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    __hash__ = None

    def __neg__(self) -> "UniPoly":
        return UniPoly([-c for c in self.coeffs], self.var)

    def _coerce(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            if other.coeffs and self.coeffs and other.var != self.var:
                raise ValueError(f"variable mismatch: {self.var} vs {other.var}")
            return other
        return UniPoly([Fraction(other)], self.var)

    def __add__(self, other) -> "UniPoly":
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(
            [self[k] + other[k] for k in range(n)], self.var or other.var
        )

    __radd__ = __add__

    def __sub__(self, other) -> "UniPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "UniPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "UniPoly":
        if not isinstance(other, UniPoly):
            c = Fraction(other)
            return UniPoly([c * a for a in self.coeffs], self.var)
        other = self._coerce(other)
        if self.is_zero or other.is_zero:
            return UniPoly.zero(self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "UniPoly":
        result = UniPoly([1], self.var)
        for _ in range(n):
            result = result * self
        return result

    def __divmod__(self, other: "UniPoly"):
        other = self._coerce(other)
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UniPoly.zero(self.var), UniPoly(rem, self.var)
        quo = [Fraction(0)] * (dq + 1)
        blc = other.lc
        for k in range(dq, -1, -1):
            c = rem[k + other.degree] / blc
            quo[k] = c
            if c != 0:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return UniPoly(quo, self.var), UniPoly(rem, self.var)

    def __floordiv__(self, other: "UniPoly") -> "UniPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return divmod(self, other)[1]

    def evaluate(self, x):
        """Horner evaluation; exact for Fraction/int input, float for float."""
        if isinstance(x, float):
            acc = 0.0
            for c in reversed(self.coeffs):
                acc = acc * x + float(c)
            return acc
        x = Fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "UniPoly":
        return UniPoly(
            [k * c for k, c in enumerate(self.coeffs)][1:], self.var
        )

    def monic(self) -> "UniPoly":
        if self.is_zero:
            raise ValueError("cannot normalize the zero polynomial")
        lc = self.lc
        if lc == 1:
            return self
        return UniPoly([c / lc for c in self.coeffs], self.var)

    def __repr__(self) -> str:
        if self.is_zero:
            return "UniPoly(0)"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self[k]
            if c == 0:
                continue
            if k == 0:
                terms.append(f"{c}")
            elif k == 1:
                terms.append(f"{c}*{self.var}")
            else:
                terms.append(f"{c}*{self.var}^{k}")
        return "UniPoly(" + " + ".join(terms) + ")"


# ---------------------------------------------------------------------------
# Internal integer-coefficient toolkit.
#
# Sign sequences are invariant under multiplication of each chain element by
# a positive constant, so Sturm chains and gcd remainder sequences are kept
# as primitive integer coefficient lists.  This bounds coefficient swell and
# lets point evaluations run on plain ints.
# ---------------------------------------------------------------------------


def _itrim(c: list) -> list:
    while c and c[-1] == 0:
        c.pop()
    return c


def _iprimitive(c: list) -> list:
    """Divide by the (positive) integer content."""
    g = 0
    for x in c:
        g = math.gcd(g, abs(x))
        if g == 1:
            return c
    if g <= 1:
        return c
    return [x // g for x in c]


def _to_int_poly(p: UniPoly) -> list:
    """Primitive integer coefficients equal to a positive multiple of p."""
    den_lcm = 1
    for c in p.coeffs:
        den_lcm = den_lcm * c.denominator // math.gcd(den_lcm, c.denominator)
    return _iprimitive([int(c * den_lcm) for c in p.coeffs])


def _iprem(a: list, b: list) -> list:
    """Pseudo-remainder lc(b)^(da-db+1) * a  mod  b, over the integers."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    d = len(a) - 1 - db + 1
    while r and len(r) - 1 >= db:
        top = r[-1]
        shift = len(r) - 1 - db
        r = [x * lb for x in r]
        for j in range(db + 1):
            r[shift + j] -= top * b[j]
        _itrim(r)
        d -= 1
    if r and d > 0:
        scale = lb**d
        r = [x * scale for x in r]
    return r


def _ieval_num(c: list, num: int, den: int) -> int:
    """Integer den^deg * p(num/den); same sign as p(num/den) for den > 0."""
    acc = c[-1]
    dp = 1
    for k in range(len(c) - 2, -1, -1):
        dp *= den
        acc = acc * num + c[k] * dp
    return acc


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd via a primitive pseudo-remainder sequence."""
    if a.is_zero and b.is_zero:
        raise ValueError("gcd of zero polynomials undefined")
    if a.is_zero:
        return b.monic()
    if b.is_zero:
        return a.monic()
    var = a.var
    A, B = _to_int_poly(a), _to_int_poly(b)
    if len(A) < len(B):
        A, B = B, A
    while B:
        R = _iprimitive(_iprem(A, B))
        A, B = B, R
    return UniPoly(A, var).monic()


def squarefree_part(a: UniPoly) -> UniPoly:
    """Monic a / gcd(a, a'); shares a's roots, all simple."""
    if a.is_zero:
        raise ValueError("square-free part of the zero polynomial undefined")
    if a.degree == 0:
        return UniPoly([1], a.var)
    g = poly_gcd(a, a.derivative())
    if g.degree == 0:
        return a.monic()
    q, r = divmod(a, g)
    if not r.is_zero:
        raise RuntimeError("gcd does not divide its input; internal error")
    return q.monic()


@dataclass
class SturmChain:
    """Signed remainder chain of a square-free polynomial.

    ``polys`` is the public Fraction view; ``_ipolys`` carries the same chain
    as primitive integer lists (each a positive multiple of the Fraction
    element) used for fast exact sign evaluation.
    """

    polys: list = field(default_factory=list)
    _ipolys: list = field(default_factory=list, repr=False)

    def _signs_at(self, point) -> list:
        if point is None:
            raise ValueError("use variations_at_infinity for unbounded ends")
        f = Fraction(point)
        num, den = f.numerator, f.denominator
        return [_sign(_ieval_num(c, num, den)) for c in self._ipolys]

    @staticmethod
    def _count(signs: Sequence[int]) -> int:
        nz = [s for s in signs if s != 0]
        return sum(1 for u, v in zip(nz, nz[1:]) if u != v)

    def variations(self, point) -> int:
        """Sign variations at a rational point, zeros dropped."""
        return self._count(self._signs_at(point))

    def variations_at_infinity(self, positive: bool) -> int:
        signs = []
        for c in self._ipolys:
            s = _sign(c[-1])
            if not positive and (len(c) - 1) % 2 == 1:
                s = -s
            signs.append(s)
        return self._count(signs)

    def count_roots(self, lo=None, hi=None) -> int:
        """Distinct real roots in (lo, hi]; None means the infinite end."""
        va = self.variations_at_infinity(False) if lo is None else self.variations(lo)
        vb = self.variations_at_infinity(True) if hi is None else self.variations(hi)
        return va - vb


def sturm_chain(a: UniPoly) -> SturmChain:
    """Signed remainder chain p0 = a, p1 = a', p_{k+1} = -rem(p_{k-1}, p_k).

    Rejects input with repeated roots: take squarefree_part first.  Chain
    elements are normalized by positive constants only, which leaves every
    sign-variation count unchanged.
    """
    if a.is_zero:
        raise ValueError("Sturm chain of the zero polynomial undefined")
    ip = [_to_int_poly(a)]
    if a.degree >= 1:
        ip.append(_to_int_poly(a.derivative()))
    while len(ip[-1]) - 1 > 0:
        prev, cur = ip[-2], ip[-1]
        rem = _iprem(prev, cur)
        if not rem:
            raise ValueError(
                "input is not square-free; call squarefree_part first"
            )
        # _iprem scales by lc^(delta+1); flip so the element is a positive
        # multiple of -(prev mod cur)
        delta = (len(prev) - 1) - (len(cur) - 1)
        if delta < 0:
            delta = 0
        scale_negative = cur[-1] < 0 and (delta + 1) % 2 == 1
        rem = [-x for x in rem] if not scale_negative else list(rem)
        ip.append(_iprimitive(rem))
    if len(ip) > 1 and len(ip[-1]) == 0:
        raise ValueError("input is not square-free; call squarefree_part first")
    polys = [UniPoly(c, a.var) for c in ip]
    return SturmChain(polys, ip)


def count_real_roots(a: UniPoly, lo=None, hi=None) -> int:
    """Distinct real roots of a in (lo, hi]; None endpoints mean +-infinity."""
    if a.is_zero:
        raise ValueError("root count of the zero polynomial undefined")
    if lo is not None and hi is not None and not Fraction(lo) < Fraction(hi):
        raise ValueError("empty interval: need lo < hi")
    if a.degree == 0:
        return 0
    return sturm_chain(squarefree_part(a)).count_roots(lo, hi)


def cauchy_root_bound(a: UniPoly) -> Fraction:
    """1 + max |a_k / a_d|: every real root lies strictly inside (-B, B)."""
    if a.is_zero or a.degree == 0:
        return Fraction(1)
    lead = abs(a.lc)
    return 1 + max(abs(c) for c in a.coeffs[:-1]) / lead


@dataclass
class RootInterval:
    """One real root of a polynomial, exactly isolated.

    The root lies in [lower, upper]; when lower == upper it is that rational
    number exactly.  ``sign_class`` is 'zero' only for the pinned root 0.
    """

    lower: Fraction
    upper: Fraction
    multiplicity_in_squarefree_part: int = 1
    sign_class: str = "positive"

    @property
    def pinned(self) -> bool:
        return self.lower == self.upper

    def midpoint(self) -> Fraction:
        return (self.lower + self.upper) / 2

    def width(self) -> Fraction:
        return self.upper - self.lower

    def refined_float(self) -> float:
        return float(self.midpoint())


DEFAULT_ISOLATION_TOL = Fraction(1, 2**32)


def _classify(lower: Fraction, upper: Fraction, pinned: bool) -> str:
    if pinned and lower == 0:
        return "zero"
    if upper <= 0:
        return "negative"
    if lower >= 0:
        return "positive"
    raise RuntimeError("unclassified interval straddles zero")


def isolate_real_roots(a: UniPoly, tol: Fraction = DEFAULT_ISOLATION_TOL):
    """Disjoint isolating intervals, one per distinct real root of a.

    Sturm-guided bisection from the Cauchy bound.  Once an interval holds a
    single root, refinement continues on sign changes of the square-free part
    alone until the width drops below ``tol`` or the root is pinned exactly
    (bisection midpoints and any integer inside the interval are tested).
    Intervals straddling zero are split at zero first, so the sign class is
    always decided exactly.
    """
    if a.is_zero:
        raise ValueError("cannot isolate roots of the zero polynomial")
    g = squarefree_part(a)
    if g.degree == 0:
        return []
    chain = sturm_chain(g)
    gz = chain._ipolys[0]

    def gsign(p: Fraction) -> int:
        return _sign(_ieval_num(gz, p.numerator, p.denominator))

    bound = cauchy_root_bound(g)
    total = chain.count_roots(None, None)
    if total == 0:
        return []

    results = []

    def _make_pinned(r: Fraction) -> RootInterval:
        return RootInterval(r, r, 1, _classify(r, r, True))

    def refine(lo: Fraction, hi: Fraction):
        # exactly one root strictly inside (lo, hi); endpoints are not roots
        slo = gsign(lo)
        if lo < 0 < hi:
            s0 = gsign(Fraction(0))
            if s0 == 0:
                results.append(_make_pinned(Fraction(0)))
                return
            if s0 != slo:
                hi = Fraction(0)
            else:
                lo, slo = Fraction(0), s0
        integers_checked = False
        while hi - lo >= tol:
            if not integers_checked and hi - lo <= 2:
                integers_checked = True
                n = math.floor(lo) + 1
                while n < hi:
                    if gsign(Fraction(n)) == 0:
                        results.append(_make_pinned(Fraction(n)))
                        return
                    n += 1
            mid = (lo + hi) / 2
            sm = gsign(mid)
            if sm == 0:
                results.append(_make_pinned(mid))
                return
            if sm == slo:
                lo = mid
            else:
                hi = mid
        results.append(RootInterval(lo, hi, 1, _classify(lo, hi, False)))

    def split_point(lo: Fraction, hi: Fraction) -> Fraction:
        # a bisection point that is not itself a root (roots are finite)
        width = hi - lo
        mid = (lo + hi) / 2
        step = width / 8
        while gsign(mid) == 0:
            mid += step
            step /= 2
        return mid

    # worklist of (lo, hi, count) with invariant: endpoints are not roots and
    # the open interval holds `count` roots
    stack = [(-bound, bound, total)]
    while stack:
        lo, hi, count = stack.pop()
        if count == 0:
            continue
        if count == 1:
            refine(lo, hi)
            continue
        mid = split_point(lo, hi)
        left = chain.count_roots(lo, mid)
        stack.append((lo, mid, left))
        stack.append((mid, hi, count - left))

    results.sort(key=lambda r: (r.lower, r.upper))
    return results


# ---------------------------------------------------------------------------
# Determinants, resultants, discriminants.
# ---------------------------------------------------------------------------


def bareiss_determinant(rows: Sequence[Sequence]) -> Fraction:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    m = [[Fraction(x) for x in r] for r in rows]
    n = len(m)
    if n == 0:
        return Fraction(1)
    if any(len(r) != n for r in m):
        raise ValueError("determinant needs a square matrix")
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i = m[i]
            row_k = m[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - mik * row_k[j]) / prev
            row_i[k] = Fraction(0)
        prev = pivot
    return sign * m[n - 1][n - 1]


def sylvester_matrix(a: UniPoly, b: UniPoly):
    """(da+db)-square Sylvester matrix: db rows of a over da rows of b."""
    if a.is_zero or b.is_zero or a.degree < 1 or b.degree < 1:
        raise ValueError("Sylvester matrix requires two nonconstant polynomials")
    da, db = a.degree, b.degree
    n = da + db
    rows = []
    for i in range(db):
        rows.append(
            [a[da - (j - i)] if 0 <= j - i <= da else Fraction(0) for j in range(n)]
        )
    for i in range(da):
        rows.append(
            [b[db - (j - i)] if 0 <= j - i <= db else Fraction(0) for j in range(n)]
        )
    return rows


def resultant(a: UniPoly, b: UniPoly) -> Fraction:
    """det of the Sylvester matrix, by exact fraction-free elimination."""
    return bareiss_determinant(sylvester_matrix(a, b))


def _resultant_prs(a: UniPoly, b: UniPoly) -> Fraction:
    """Resultant through the remainder sequence; cheap for high degrees.

    Tracks the scalar corrections of pseudo-division and content stripping,
    so everything but a single Fraction accumulator runs on integers.
    """
    if a.is_zero or b.is_zero:
        return Fraction(0)
    if a.degree == 0 and b.degree == 0:
        return Fraction(1)
    scale_a = Fraction(1)
    A = _to_int_poly(a)
    scale_a = a.lc / Fraction(A[-1])
    B = _to_int_poly(b)
    scale_b = b.lc / Fraction(B[-1])
    # res(c*A, d*B) = c^db d^da res(A, B)
    acc = scale_a**b.degree * scale_b**a.degree
    da, db = len(A) - 1, len(B) - 1
    if da < db:
        A, B = B, A
        da, db = db, da
        if (da * db) % 2 == 1:
            acc = -acc
    while db > 0:
        Rt = _iprem(A, B)
        if not Rt:
            return Fraction(0)
        cont = 0
        for x in Rt:
            cont = math.gcd(cont, abs(x))
            if cont == 1:
                break
        R = [x // cont for x in Rt] if cont > 1 else Rt
        dr = len(R) - 1
        lb = B[-1]
        delta = da - db
        # res(A,B) = (-1)^(da db) lb^(da-dr) (cont / lb^(delta+1))^db res(B,R)
        factor = Fraction(lb) ** (da - dr) * (
            Fraction(cont) / Fraction(lb) ** (delta + 1)
        ) ** db
        if (da * db) % 2 == 1:
            factor = -factor
        acc *= factor
        A, B = B, R
        da, db = db, dr
    return acc * Fraction(B[-1]) ** da


def discriminant(a: UniPoly) -> Fraction:
    """(-1)^(d(d-1)/2) * res(a, a') / lc(a); zero iff a has a multiple root."""
    d = a.degree
    if d < 2:
        raise ValueError("discriminant requires degree >= 2")
    res = (
        resultant(a, a.derivative())
        if d <= 12
        else _resultant_prs(a, a.derivative())
    )
    sign = -1 if (d * (d - 1) // 2) % 2 == 1 else 1
    return sign * res / a.lc


def subdiscriminant_first(a: UniPoly) -> Fraction:
    """First principal subresultant coefficient of (a, a').

    Determinant of the Sylvester-style matrix of (a, a') with one block row
    removed from each side and the two trailing columns dropped.  With the
    discriminant also zero, its vanishing is exactly deg gcd(a, a') >= 2.
    """
    p = a.degree
    if p < 3:
        raise ValueError("first subdiscriminant requires degree >= 3")
    b = a.derivative()
    q = b.degree
    t = p + q - 2
    rows = []
    for s in range(q - 2, -1, -1):
        rows.append(
            [
                a[p + q - 2 - c - s] if 0 <= p + q - 2 - c - s <= p else Fraction(0)
                for c in range(t)
            ]
        )
    for s in range(p - 2, -1, -1):
        rows.append(
            [
                b[p + q - 2 - c - s] if 0 <= p + q - 2 - c - s <= q else Fraction(0)
                for c in range(t)
            ]
        )
    return bareiss_determinant(rows)


def char_poly(matrix: Sequence[Sequence]) -> UniPoly:
    """det(xI - M) by the Faddeev-LeVerrier trace recursion, exact."""
    n = len(matrix)
    m = [[Fraction(x) for x in row] for row in matrix]
    if any(len(row) != n for row in m):
        raise ValueError("characteristic polynomial needs a square matrix")
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    aux = [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    for k in range(1, n + 1):
        prod = [
            [sum(m[i][t] * aux[t][j] for t in range(n)) for j in range(n)]
            for i in range(n)
        ]
        ck = -sum(prod[i][i] for i in range(n)) / k
        coeffs[n - k] = ck
        aux = [
            [prod[i][j] + (ck if i == j else 0) for j in range(n)] for i in range(n)
        ]
    return UniPoly(coeffs, "x")


def interpolate_univariate(xs: Sequence, ys: Sequence, var: str = "x") -> UniPoly:
    """Exact Newton interpolation through (xs[i], ys[i]) with distinct xs."""
    n = len(xs)
    if n != len(ys):
        raise ValueError("point count mismatch")
    xs = [Fraction(x) for x in xs]
    coef = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = UniPoly.zero(var)
    basis = UniPoly([1], var)
    for i in range(n):
        poly = poly + basis * coef[i]
        basis = basis * UniPoly([-xs[i], 1], var)
    return poly


class BiPoly:
    """Sparse exact bivariate polynomial: {(m, n): coefficient of x^m y^n}."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        self.coeffs = {}
        if coeffs:
            for (m, n), c in dict(coeffs).items():
                c = Fraction(c)
                if c != 0:
                    self.coeffs[(int(m), int(n))] = c

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, m: int, n: int) -> Fraction:
        return self.coeffs.get((m, n), Fraction(0))

    @property
    def total_degree(self) -> int:
        if not self.coeffs:
            return -1
        return max(m + n for m, n in self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, BiPoly) and self.coeffs == other.coeffs

    __hash__ = None

    def __add__(self, other: "BiPoly") -> "BiPoly":
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, Fraction(0)) + c
        return BiPoly(out)

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, Fraction(0)) - c
        return BiPoly(out)

    def __mul__(self, other) -> "BiPoly":
        if not isinstance(other, BiPoly):
            c = Fraction(other)
            return BiPoly({k: v * c for k, v in self.coeffs.items()})
        out = {}
        for (m1, n1), c1 in self.coeffs.items():
            for (m2, n2), c2 in other.coeffs.items():
                k = (m1 + m2, n1 + n2)
                out[k] = out.get(k, Fraction(0)) + c1 * c2
        return BiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "BiPoly":
        result = BiPoly({(0, 0): 1})
        for _ in range(n):
            result = result * self
        return result

    def evaluate(self, x, y) -> Fraction:
        x, y = Fraction(x), Fraction(y)
        acc = Fraction(0)
        for (m, n), c in self.coeffs.items():
            acc += c * x**m * y**n
        return acc

    def eval_x(self, x0) -> UniPoly:
        """Exact substitution x = x0, returning a polynomial in y."""
        x0 = Fraction(x0)
        deg_y = max((n for _, n in self.coeffs), default=-1)
        out = [Fraction(0)] * (deg_y + 1)
        for (m, n), c in self.coeffs.items():
            out[n] += c * x0**m
        return UniPoly(out, "y")

    def eval_y(self, y0) -> UniPoly:
        """Exact substitution y = y0, returning a polynomial in x."""
        y0 = Fraction(y0)
        deg_x = max((m for m, _ in self.coeffs), default=-1)
        out = [Fraction(0)] * (deg_x + 1)
        for (m, n), c in self.coeffs.items():
            out[m] += c * y0**n
        return UniPoly(out, "x")

    def homogeneous_part(self, k: int) -> "BiPoly":
        """The degree-k homogeneous component: sum over m + n = k."""
        return BiPoly({(m, n): c for (m, n), c in self.coeffs.items() if m + n == k})

    def derivative_x(self) -> "BiPoly":
        return BiPoly(
            {(m - 1, n): m * c for (m, n), c in self.coeffs.items() if m > 0}
        )

    def derivative_y(self) -> "BiPoly":
        return BiPoly(
            {(m, n - 1): n * c for (m, n), c in self.coeffs.items() if n > 0}
        )

    def items_sorted(self):
        return sorted(self.coeffs.items(), key=lambda kv: (kv[0][0] + kv[0][1], kv[0]))

    def __repr__(self) -> str:
        if self.is_zero:
            return "BiPoly(0)"
        parts = [f"{c}*x^{m}*y^{n}" for (m, n), c in self.items_sorted()]
        return "BiPoly(" + " + ".join(parts) + ")"


def bipoly_eval_x(p: BiPoly, x0) -> UniPoly:
    """Module-level alias for BiPoly.eval_x."""
    return p.eval_x(x0)


def homogeneous_part(p: BiPoly, k: int) -> BiPoly:
    """Module-level alias for BiPoly.homogeneous_part."""
    return p.homogeneous_part(k)
