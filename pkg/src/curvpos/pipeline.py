"""The exact decision pipeline for sectional positivity of 4-curvature operators.

Given a symmetric operator R on 2-forms, build p(x, y) = det(R - xI - yK)
exactly, take q(x) = disc_y(p), and classify the real roots of q.  On the
generic stratum (q not identically zero and disc(q) != 0) the real roots of q
are exactly the critical values of sectional curvature, so their signs decide
positivity and their extremes bound the curvature.  Off that stratum only the
sufficiency direction survives, and the verdict falls back to the numeric
oracle, clearly labeled.

Root signs are decided by exact Sturm counts; no algebraic-number arithmetic
is ever needed for the verdict.  Critical-point coordinates are reported as
exact isolating intervals plus floating-point refinements; critical points at
non-rational coordinates are certified by outward-rounded interval
arithmetic (|a10| must dominate the enclosures of |a00|, |a01| by a factor of
1000), and marked uncertified when that margin fails.
"""

from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .curvature import (
    BASIS_PAIRS,
    CurvatureOperator,
    K_MATRIX,
    split_plane_float,
    validate_operator,
    wedge_self,
)
from .ratpoly import (
    BiPoly,
    DEFAULT_ISOLATION_TOL,
    RootInterval,
    UniPoly,
    bareiss_determinant,
    char_poly,
    discriminant,
    interpolate_univariate,
    isolate_real_roots,
    poly_gcd,
)

_GRID = [Fraction(k) for k in range(-3, 4)]
_CURVE_GRID = [Fraction(k) for k in range(-30, 31)]
_CROSSCHECK_SEED = 20240817
CERTIFICATION_MARGIN = 1000.0


class Verdict(enum.Enum):
    POSITIVE = "POSITIVE"
    NONNEGATIVE = "NONNEGATIVE"
    NOT_NONNEGATIVE = "NOT_NONNEGATIVE"
    POSITIVE_SUFFICIENT_ONLY = "POSITIVE_SUFFICIENT_ONLY"
    DEGENERATE_FALLBACK = "DEGENERATE_FALLBACK"


@dataclass
class CharacteristicSurface:
    """p(x, y) = det(R - xI - yK) with its checked structure.

    Invariants verified at construction: the y^6 coefficient is the constant
    -1, the x^6 coefficient is +1, the total degree is at most 6, and
    p(x, 0) equals det(R - xI) computed independently by trace recursion.
    """

    p: BiPoly
    y_leading: Fraction
    char_slice: UniPoly


def _det_shifted(R: CurvatureOperator, x, y) -> Fraction:
    return bareiss_determinant(R.shifted(x, y))


def _crosscheck_points(count: int, taken):
    rng = random.Random(_CROSSCHECK_SEED)
    points = []
    while len(points) < count:
        pt = Fraction(rng.randint(-999, 999), rng.randint(2, 97))
        if pt not in taken and pt not in points:
            points.append(pt)
    return points


def characteristic_surface(R: CurvatureOperator) -> CharacteristicSurface:
    """Exact bivariate determinant by grid evaluation and interpolation.

    Evaluates det(R - xI - yK) on the 7x7 integer grid, interpolates to the
    coefficient table, and cross-checks at 3 extra rational points before
    verifying the structural invariants.  Any mismatch is an internal
    consistency failure, not a property of the input.
    """
    if not isinstance(R, CurvatureOperator):
        R = CurvatureOperator(R)
    per_x = []
    for x in _GRID:
        vals = [_det_shifted(R, x, y) for y in _GRID]
        per_x.append(interpolate_univariate(_GRID, vals, "y"))
    coeffs = {}
    for j in range(7):
        col = interpolate_univariate(_GRID, [f[j] for f in per_x], "x")
        for m in range(col.degree + 1):
            if col[m] != 0:
                coeffs[(m, j)] = col[m]
    p = BiPoly(coeffs)

    pts = _crosscheck_points(6, set(_GRID))
    for xc, yc in zip(pts[:3], pts[3:]):
        if p.evaluate(xc, yc) != _det_shifted(R, xc, yc):
            raise RuntimeError(
                "characteristic surface interpolation failed cross-check"
            )

    if p.coeff(0, 6) != -1 or any(p.coeff(m, 6) != 0 for m in range(1, 7)):
        raise RuntimeError("y^6 coefficient of det(R - xI - yK) is not -1")
    if p.coeff(6, 0) != 1:
        raise RuntimeError("x^6 coefficient of det(R - xI - yK) is not +1")
    if p.total_degree > 6:
        raise RuntimeError("det(R - xI - yK) exceeds total degree 6")
    char_slice = p.eval_y(0)
    if char_slice != char_poly(R.entries):
        raise RuntimeError("p(x, 0) disagrees with the trace-recursion "
                           "characteristic polynomial")
    return CharacteristicSurface(p=p, y_leading=Fraction(-1), char_slice=char_slice)


def discriminant_curve(s: CharacteristicSurface) -> UniPoly:
    """q(x) = disc_y(p(x, y)), exactly.

    p is degree 6 in y with constant leading coefficient -1 for every x, so
    the y-discriminant is well defined pointwise; q has degree at most 30.
    Evaluated at 61 integer points, interpolated, degree-checked, and
    cross-checked at 3 extra rational points.  The identically-zero q is a
    valid return (the degenerate stratum), not an error.
    """
    vals = []
    for x in _CURVE_GRID:
        f = s.p.eval_x(x)
        if f.degree != 6 or f.lc != -1:
            raise RuntimeError("y-slice of p is not degree 6 with lc -1")
        vals.append(discriminant(f))
    q = interpolate_univariate(_CURVE_GRID, vals, "x")
    if q.degree > 30:
        raise RuntimeError("disc_y(p) exceeded the degree-30 bound")
    for xc in _crosscheck_points(3, set(_CURVE_GRID)):
        if q.evaluate(xc) != discriminant(s.p.eval_x(xc)):
            raise RuntimeError("discriminant curve failed cross-check")
    return q


@dataclass
class GenericityInfo:
    q_is_identically_zero: bool
    disc_q: Fraction | None
    generic: bool


def genericity(q: UniPoly) -> GenericityInfo:
    """disc(q) and the generic flag: q not identically zero and disc(q) != 0.

    For degree 0 or 1 the discriminant is taken to be 1 (no multiple roots
    are possible), keeping the flag meaningful on the edge cases.
    """
    if q.is_zero:
        return GenericityInfo(True, None, False)
    disc_q = discriminant(q) if q.degree >= 2 else Fraction(1)
    return GenericityInfo(False, disc_q, disc_q != 0)


def _sign_pattern_critical(coeffs) -> bool:
    """Neither all strictly one sign nor strictly alternating nonzero.

    ``coeffs`` lists the first nonzero homogeneous part on the line y = 1.
    A zero among them defeats both strict patterns, so it forces criticality;
    this matches the use of a01 = 0 with a10 != 0 as a critical point.
    """
    if all(c > 0 for c in coeffs) or all(c < 0 for c in coeffs):
        return False
    if all(c != 0 for c in coeffs) and all(
        a * b < 0 for a, b in zip(coeffs, coeffs[1:])
    ):
        return False
    return True


def is_critical_point(R: CurvatureOperator, x1, y1):
    """Exact critical-point test at a rational candidate (x1, y1).

    Translates the operator, expands det exactly, finds the smallest k with
    a nonzero degree-k homogeneous part P_k, and applies the sign-pattern
    test to the coefficients of P_k(x, 1).  Returns (is_critical, k); k is
    the kernel dimension of R - x1 I - y1 K.
    """
    shifted = CurvatureOperator(R.shifted(Fraction(x1), Fraction(y1)))
    p_hat = characteristic_surface(shifted).p
    if p_hat.is_zero:
        raise RuntimeError("translated determinant vanished identically")
    for k in range(p_hat.total_degree + 1):
        part = p_hat.homogeneous_part(k)
        if not part.is_zero:
            coeffs = [part.coeff(m, k - m) for m in range(k, -1, -1)]
            return _sign_pattern_critical(coeffs), k
    raise RuntimeError("no nonzero homogeneous part found")


@dataclass
class CriticalPoint:
    """A certified (or attempted) critical point attached to a root of q."""

    x1_interval: RootInterval
    x1: float
    y1: float
    y1_residual: float
    kernel_dimension: int
    certified: bool
    exact: bool
    plane: tuple | None = None
    y1_exact: Fraction | None = None
    a00: object = None
    a01: object = None
    a10: object = None
    a00_bound: float | None = None
    a01_bound: float | None = None
    a10_lower: float | None = None


# ---------------------------------------------------------------------------
# Outward-rounded interval arithmetic, just enough for the certification.
# ---------------------------------------------------------------------------

_INF = math.inf


class _Iv:
    __slots__ = ("lo", "hi")

    def __init__(self, lo: float, hi: float):
        self.lo = lo
        self.hi = hi

    @classmethod
    def point(cls, x: float) -> "_Iv":
        return cls(math.nextafter(x, -_INF), math.nextafter(x, _INF))

    @classmethod
    def from_fraction(cls, fr: Fraction) -> "_Iv":
        f = float(fr)
        return cls(math.nextafter(f, -_INF), math.nextafter(f, _INF))

    @classmethod
    def hull(cls, a: float, b: float) -> "_Iv":
        lo, hi = (a, b) if a <= b else (b, a)
        return cls(math.nextafter(lo, -_INF), math.nextafter(hi, _INF))

    def __add__(self, other: "_Iv") -> "_Iv":
        return _Iv(
            math.nextafter(self.lo + other.lo, -_INF),
            math.nextafter(self.hi + other.hi, _INF),
        )

    def __mul__(self, other: "_Iv") -> "_Iv":
        cands = (
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        )
        return _Iv(
            math.nextafter(min(cands), -_INF), math.nextafter(max(cands), _INF)
        )

    def abs_upper(self) -> float:
        return max(abs(self.lo), abs(self.hi))

    def abs_lower(self) -> float:
        if self.lo <= 0.0 <= self.hi:
            return 0.0
        return min(abs(self.lo), abs(self.hi))


def _iv_eval_bipoly(p: BiPoly, X: _Iv, Y: _Iv) -> _Iv:
    deg_x = max((m for m, _ in p.coeffs), default=0)
    deg_y = max((n for _, n in p.coeffs), default=0)
    xp = [_Iv(1.0, 1.0)]
    for _ in range(deg_x):
        xp.append(xp[-1] * X)
    yp = [_Iv(1.0, 1.0)]
    for _ in range(deg_y):
        yp.append(yp[-1] * Y)
    acc = _Iv(0.0, 0.0)
    for (m, n), c in p.coeffs.items():
        acc = acc + (_Iv.from_fraction(c) * xp[m]) * yp[n]
    return acc


# ---------------------------------------------------------------------------
# Numeric helpers on the surface.
# ---------------------------------------------------------------------------


class _SurfaceNumerics:
    """Float coefficient tables for p and the partials used by refinement."""

    def __init__(self, s: CharacteristicSurface):
        self.p = s.p
        self.px = s.p.derivative_x()
        self.py = s.p.derivative_y()
        self.pxy = self.py.derivative_x()
        self.pyy = self.py.derivative_y()
        self.tables = {
            name: self._table(poly)
            for name, poly in (
                ("p", self.p),
                ("px", self.px),
                ("py", self.py),
                ("pxy", self.pxy),
                ("pyy", self.pyy),
            )
        }

    @staticmethod
    def _table(poly: BiPoly) -> np.ndarray:
        t = np.zeros((7, 7))
        for (m, n), c in poly.coeffs.items():
            t[m, n] = float(c)
        return t

    def val(self, name: str, x: float, y: float) -> float:
        return float(np.polynomial.polynomial.polyval2d(x, y, self.tables[name]))

    def y_slice(self, x: float) -> np.ndarray:
        """Coefficients (ascending in y) of p(x, .)."""
        powers = x ** np.arange(7)
        return powers @ self.tables["p"]

    def newton_refine(self, x: float, y: float, iters: int = 60):
        """Joint Newton on (p = 0, dp/dy = 0); returns (x, y, last_step)."""
        step = math.inf
        for _ in range(iters):
            f0 = self.val("p", x, y)
            f1 = self.val("py", x, y)
            j00 = self.val("px", x, y)
            j01 = f1
            j10 = self.val("pxy", x, y)
            j11 = self.val("pyy", x, y)
            det = j00 * j11 - j01 * j10
            if det == 0 or not math.isfinite(det):
                break
            dx = (f0 * j11 - f1 * j01) / det
            dy = (j00 * f1 - j10 * f0) / det
            x -= dx
            y -= dy
            step = abs(dx) + abs(dy)
            if step < 1e-15 * (1.0 + abs(x) + abs(y)):
                break
        return x, y, step


def _float_kernel(R: CurvatureOperator, x: float, y: float):
    """Kernel data of R - xI - yK near a critical point, in floats."""
    M = np.array(R.float_rows()) - x * np.eye(6) - y * np.array(
        [[float(v) for v in row] for row in K_MATRIX]
    )
    w, vecs = np.linalg.eigh(M)
    scale = max(1.0, float(np.abs(w).max()))
    kdim = int(np.sum(np.abs(w) < 1e-6 * scale))
    idx = int(np.argmin(np.abs(w)))
    v = vecs[:, idx]
    return kdim, v


def _exact_nullspace(rows):
    """Basis of the nullspace of an exact matrix, by Gaussian elimination."""
    m = [list(r) for r in rows]
    nrows, ncols = len(m), len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, nrows):
            if m[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -m[i][fc]
        basis.append(vec)
    return basis


def _split_plane_exact(v):
    """Exact spanning pair of the plane of a decomposable rational 2-form."""
    W = [[Fraction(0)] * 4 for _ in range(4)]
    for a, (i, j) in enumerate(BASIS_PAIRS):
        W[i][j] = Fraction(v[a])
        W[j][i] = -Fraction(v[a])
    cols = [[W[r][c] for r in range(4)] for c in range(4)]
    u = next((c for c in cols if any(x != 0 for x in c)), None)
    if u is None:
        raise ValueError("zero 2-form has no plane")
    for w in cols:
        for a in range(4):
            for b in range(a + 1, 4):
                if u[a] * w[b] - u[b] * w[a] != 0:
                    return tuple(u), tuple(w)
    raise ValueError("2-form is not decomposable (rank > 2)")


def enumerate_critical_points(
    R: CurvatureOperator,
    s: CharacteristicSurface,
    roots,
    generic: bool = True,
):
    """Critical points above each isolated real root of q.

    For a rational-pinned root the whole chain runs exactly: the multiple
    y-roots come from gcd(f, f'), and the sign-pattern test certifies the
    point with its kernel dimension.  For an irrational root the point is
    refined by joint Newton in floats and certified by interval arithmetic:
    the enclosure of |a10| must exceed 1000 times the enclosures of |a00| and
    |a01| over the isolating box.

    Returns (critical_points, contract_violations).  In the generic case a
    root with no real multiple y-root contradicts the theory and is reported,
    never dropped.
    """
    points: list[CriticalPoint] = []
    violations: list[str] = []
    numerics = _SurfaceNumerics(s)
    for interval in roots:
        if interval.pinned:
            found = _exact_points_at(R, s, interval, numerics, generic)
        else:
            found = _float_points_at(R, s, interval, numerics)
        if not found:
            msg = (
                f"no real multiple y-root found above the q-root in "
                f"[{interval.lower}, {interval.upper}]"
            )
            if generic:
                violations.append(
                    "contract violation (generic case guarantees a real "
                    "multiple root): " + msg
                )
            else:
                violations.append("note (non-generic case): " + msg)
            continue
        if generic and not any(cp.certified for cp in found):
            violations.append(
                f"contract violation: no certified critical point above the "
                f"q-root in [{interval.lower}, {interval.upper}]"
            )
        points.extend(found)
    return points, violations


def _exact_points_at(R, s, interval, numerics, generic):
    x1 = interval.lower
    f = s.p.eval_x(x1)
    g = poly_gcd(f, f.derivative())
    if g.degree == 0:
        return []
    found = []
    if g.degree == 1:
        y_candidates = [(-g[0] / g[1], None)]
    else:
        y_candidates = []
        for yiv in isolate_real_roots(g):
            if yiv.pinned:
                y_candidates.append((yiv.lower, None))
            else:
                y_candidates.append((None, yiv))
    for y_exact, yiv in y_candidates:
        if y_exact is not None:
            crit, kdim = is_critical_point(R, x1, y_exact)
            shifted_rows = R.shifted(x1, y_exact)
            p_hat = characteristic_surface(CurvatureOperator(shifted_rows)).p
            plane = None
            if crit and kdim >= 1:
                kernel = _exact_nullspace(shifted_rows)
                null_forms = [v for v in kernel if wedge_self(v) == 0]
                if null_forms:
                    u, w = _split_plane_exact(null_forms[0])
                    plane = (
                        tuple(float(c) for c in u),
                        tuple(float(c) for c in w),
                    )
            found.append(
                CriticalPoint(
                    x1_interval=interval,
                    x1=float(x1),
                    y1=float(y_exact),
                    y1_residual=0.0,
                    kernel_dimension=kdim,
                    certified=crit,
                    exact=True,
                    plane=plane,
                    y1_exact=y_exact,
                    a00=p_hat.coeff(0, 0),
                    a01=p_hat.coeff(0, 1),
                    a10=p_hat.coeff(1, 0),
                )
            )
        else:
            cp = _certify_float_point(
                R, numerics, interval, float(x1), float(yiv.midpoint())
            )
            if cp is not None:
                found.append(cp)
    return found


def _float_points_at(R, s, interval, numerics):
    x0 = interval.refined_float()
    fc = numerics.y_slice(x0)
    scale = max(1.0, float(np.abs(fc).max()))
    dfc = fc[1:] * np.arange(1, 7)
    roots = np.roots(dfc[::-1])
    candidates = []
    for r in roots:
        if abs(r.imag) > 1e-6 * (1.0 + abs(r.real)):
            continue
        yc = float(r.real)
        fval = float(np.polynomial.polynomial.polyval(yc, fc))
        local = scale * max(1.0, abs(yc)) ** 6
        if abs(fval) > 1e-6 * local:
            continue
        candidates.append(yc)
    found = []
    for yc in candidates:
        cp = _certify_float_point(R, numerics, interval, x0, yc)
        if cp is None:
            continue
        if any(
            abs(cp.y1 - other.y1) < 1e-8 * (1.0 + abs(cp.y1)) for other in found
        ):
            continue
        found.append(cp)
    return found


def _certify_float_point(R, numerics, interval, x0, y0):
    x, y, step = numerics.newton_refine(x0, y0)
    if not (math.isfinite(x) and math.isfinite(y)):
        return None
    residual = abs(numerics.val("p", x, y)) + abs(numerics.val("py", x, y))
    X = _Iv(
        math.nextafter(float(interval.lower), -_INF),
        math.nextafter(float(interval.upper), _INF),
    )
    delta = max(1e-9, 4.0 * step)
    Y = _Iv.hull(y - delta, y + delta)
    a00 = _iv_eval_bipoly(numerics.p, X, Y)
    a01 = _iv_eval_bipoly(numerics.py, X, Y)
    a10 = _iv_eval_bipoly(numerics.px, X, Y)
    a10_lower = a10.abs_lower()
    bound = max(a00.abs_upper(), a01.abs_upper())
    kdim, v = _float_kernel(R, x, y)
    wedge = abs(float(wedge_self([float(c) for c in v])))
    certified = (
        a10_lower > CERTIFICATION_MARGIN * bound
        and wedge < 1e-9
        and interval.lower <= Fraction(x) <= interval.upper
    )
    plane = _split_plane_float(v) if wedge < 1e-6 else None
    return CriticalPoint(
        x1_interval=interval,
        x1=x,
        y1=y,
        y1_residual=residual,
        kernel_dimension=kdim,
        certified=certified,
        exact=False,
        plane=plane,
        a00=numerics.val("p", x, y),
        a01=numerics.val("py", x, y),
        a10=numerics.val("px", x, y),
        a00_bound=a00.abs_upper(),
        a01_bound=a01.abs_upper(),
        a10_lower=a10_lower,
    )


@dataclass
class AnalysisReport:
    p: BiPoly
    q: UniPoly
    q_is_identically_zero: bool
    disc_q: Fraction | None
    generic: bool
    root_intervals: list
    verdict: Verdict
    bounds: tuple | None
    critical_points: list
    contract_violations: list = field(default_factory=list)
    oracle_comparison: dict | None = None
    validation: object = None


def analyze(
    R: CurvatureOperator,
    isolation_tol: Fraction = DEFAULT_ISOLATION_TOL,
    attach_oracle: bool = False,
    attach_witness: bool = False,
    seed: int = 0,
    restarts: int = 200,
) -> AnalysisReport:
    """Run the full pipeline and emit the verdict.

    Verdict logic:

    * q identically zero: DEGENERATE_FALLBACK, with the numeric oracle and
      the strong-positivity witness attached (the exact theory is silent).
    * generic (disc q != 0): no roots <= 0 means POSITIVE; a root exactly at
      zero and none below means NONNEGATIVE; any negative root means
      NOT_NONNEGATIVE.  Bounds are the smallest and largest root intervals.
    * q nonzero but disc q = 0: only sufficiency survives.  All roots
      strictly positive gives POSITIVE_SUFFICIENT_ONLY (still a certificate
      of positivity); anything else is DEGENERATE_FALLBACK with the oracle
      attached, because the theory genuinely does not decide it.
    """
    if not isinstance(R, CurvatureOperator):
        R = CurvatureOperator(R)
    validation = validate_operator(R)
    s = characteristic_surface(R)
    q = discriminant_curve(s)
    info = genericity(q)
    violations: list[str] = []
    roots: list[RootInterval] = []
    critical_points: list[CriticalPoint] = []
    bounds = None

    if info.q_is_identically_zero:
        verdict = Verdict.DEGENERATE_FALLBACK
    else:
        roots = isolate_real_roots(q, isolation_tol)
        negatives = sum(1 for r in roots if r.sign_class == "negative")
        has_zero = any(r.sign_class == "zero" for r in roots)
        critical_points, violations = enumerate_critical_points(
            R, s, roots, generic=info.generic
        )
        if info.generic:
            if not roots:
                violations.append(
                    "contract violation: generic operator with no real roots "
                    "of q (extrema must exist on the compact Grassmannian)"
                )
                verdict = Verdict.DEGENERATE_FALLBACK
            elif negatives > 0:
                verdict = Verdict.NOT_NONNEGATIVE
            elif has_zero:
                verdict = Verdict.NONNEGATIVE
            else:
                verdict = Verdict.POSITIVE
            if roots:
                bounds = (roots[0], roots[-1])
        else:
            if roots and negatives == 0 and not has_zero:
                verdict = Verdict.POSITIVE_SUFFICIENT_ONLY
            else:
                if not roots:
                    violations.append(
                        "contract violation: q nonzero with no real roots"
                    )
                verdict = Verdict.DEGENERATE_FALLBACK

    oracle_comparison = None
    if attach_oracle or attach_witness or verdict is Verdict.DEGENERATE_FALLBACK:
        oracle_comparison = {}
        if attach_oracle or verdict is Verdict.DEGENERATE_FALLBACK:
            from .oracle import optimize

            oracle_comparison["oracle"] = optimize(
                R, mode="harvest", restarts=restarts, seed=seed
            )
        if attach_witness or verdict is Verdict.DEGENERATE_FALLBACK:
            from .strongpos import witness

            oracle_comparison["witness"] = witness(R)

    return AnalysisReport(
        p=s.p,
        q=q,
        q_is_identically_zero=info.q_is_identically_zero,
        disc_q=info.disc_q,
        generic=info.generic,
        root_intervals=roots,
        verdict=verdict,
        bounds=bounds,
        critical_points=critical_points,
        contract_violations=violations,
        oracle_comparison=oracle_comparison,
        validation=validation,
    )
