"""The 2-form algebra in dimension 4: basis, volume form, curvature operators.

The fixed basis of the 6-dimensional space of 2-forms is

    e1^e2, e1^e3, e1^e4, e2^e3, e2^e4, e3^e4

(lexicographic), with orientation e1^e2^e3^e4 positive.  The inner product
makes these six basis forms orthonormal, so ``v I v = 1`` is the literal
unit-sphere constraint.  All serialized matrices are read in this basis.

A 2-form is a plain length-6 sequence (Fractions for exact work, floats in
the numeric oracle).  A curvature operator is a symmetric 6x6 matrix of
Fractions wrapped in :class:`CurvatureOperator`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .ratpoly import UniPoly, char_poly

#: Index pairs (i, j), 0-based, of the basis 2-forms e_{i+1} ^ e_{j+1}.
BASIS_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))

BASIS_TAG = "e12,e13,e14,e23,e24,e34"

#: Nonzero entries of the volume form K: (row, col, value).
_K_ENTRIES = ((0, 5, 1), (5, 0, 1), (1, 4, -1), (4, 1, -1), (2, 3, 1), (3, 2, 1))


def volume_form():
    """The 4-volume form acting on 2-forms, as a 6x6 matrix of Fractions.

    K pairs e12<->e34, e13<->-e24, e14<->e23; K^2 = I, trace K = 0,
    eigenvalues +1 and -1 with multiplicity 3 each.
    """
    rows = [[Fraction(0)] * 6 for _ in range(6)]
    for i, j, v in _K_ENTRIES:
        rows[i][j] = Fraction(v)
    return tuple(tuple(r) for r in rows)


K_MATRIX = volume_form()


def apply_matrix(matrix, v: Sequence):
    return [sum(matrix[i][j] * v[j] for j in range(6)) for i in range(6)]


def quadratic_form(matrix, v: Sequence):
    return sum(v[i] * matrix[i][j] * v[j] for i in range(6) for j in range(6))


def wedge_self(v: Sequence):
    """v K v; this is 2 * (coefficient of the volume form in v ^ v).

    A 2-form is decomposable exactly when this vanishes.
    """
    return 2 * (v[0] * v[5] - v[1] * v[4] + v[2] * v[3])


def norm_squared(v: Sequence):
    return sum(c * c for c in v)


def plucker(u: Sequence, w: Sequence):
    """The wedge u ^ w as a 6-vector over the fixed basis.

    Always decomposable; unit norm whenever u, w are orthonormal.
    """
    return [u[i] * w[j] - u[j] * w[i] for i, j in BASIS_PAIRS]


def sectional_value(R: "CurvatureOperator", v: Sequence):
    """The quadratic form v R v.

    This is the sectional curvature of the plane carried by v when v is a
    unit decomposable 2-form; for other v it is just the raw quadratic form.
    """
    return quadratic_form(R.entries, v)


class CurvatureOperator:
    """A symmetric 6x6 exact matrix over the fixed 2-form basis."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        rows = tuple(tuple(Fraction(x) for x in row) for row in entries)
        if len(rows) != 6 or any(len(r) != 6 for r in rows):
            raise ValueError("curvature operator must be a 6x6 matrix")
        for i in range(6):
            for j in range(i + 1, 6):
                if rows[i][j] != rows[j][i]:
                    raise ValueError(
                        f"matrix is not symmetric at ({i},{j}): "
                        f"{rows[i][j]} != {rows[j][i]}"
                    )
        self.entries = rows

    def __eq__(self, other) -> bool:
        return isinstance(other, CurvatureOperator) and self.entries == other.entries

    __hash__ = None

    def apply(self, v: Sequence):
        return apply_matrix(self.entries, v)

    def shifted(self, x, y):
        """The matrix R - x*I - y*K as plain rows (not necessarily a valid R)."""
        x, y = Fraction(x), Fraction(y)
        rows = [list(r) for r in self.entries]
        for i in range(6):
            rows[i][i] -= x
        for i, j, v in _K_ENTRIES:
            rows[i][j] -= y * v
        return rows

    def characteristic_polynomial(self) -> UniPoly:
        """det(xI - R), exact, via the Faddeev-LeVerrier recursion."""
        return char_poly(self.entries)

    def float_rows(self):
        return [[float(x) for x in row] for row in self.entries]

    def __repr__(self) -> str:
        return f"CurvatureOperator({[list(map(str, r)) for r in self.entries]})"


@dataclass
class OperatorValidation:
    symmetric: bool
    trace_rk: Fraction | None
    warnings: list


def validate_operator(R) -> OperatorValidation:
    """Check symmetry (mandatory) and report trace(R K) (informational).

    trace(R K) != 0 means the operator does not satisfy the first Bianchi
    identity; the analysis still applies to any symmetric operator, so this
    is only a warning.  Accepts a CurvatureOperator or raw 6x6 rows.
    """
    rows = R.entries if isinstance(R, CurvatureOperator) else [
        [Fraction(x) for x in row] for row in R
    ]
    warnings = []
    symmetric = all(
        rows[i][j] == rows[j][i] for i in range(6) for j in range(i + 1, 6)
    )
    if not symmetric:
        return OperatorValidation(False, None, ["matrix is not symmetric"])
    trace_rk = sum(
        rows[i][j] * K_MATRIX[j][i] for i in range(6) for j in range(6)
    )
    if trace_rk != 0:
        warnings.append(
            f"trace(R K) = {trace_rk} != 0: Bianchi pairing is nonzero "
            "(analysis is unaffected)"
        )
    return OperatorValidation(True, trace_rk, warnings)


def two_form_to_skew(v: Sequence) -> np.ndarray:
    """The 4x4 skew matrix carrying the same components as the 2-form."""
    W = np.zeros((4, 4))
    for a, (i, j) in enumerate(BASIS_PAIRS):
        W[i, j] = float(v[a])
        W[j, i] = -float(v[a])
    return W


def split_plane_float(v: Sequence):
    """Orthonormal (u, w) spanning the plane of a near-decomposable 2-form.

    The plane is the top 2-dimensional eigenspace of W^T W for the skew
    matrix W of v; the pair is oriented so plucker(u, w) matches +v.
    """
    vf = np.asarray([float(c) for c in v], dtype=float)
    W = two_form_to_skew(vf)
    _, vecs = np.linalg.eigh(W.T @ W)
    u = vecs[:, -1]
    w = vecs[:, -2]
    if float(np.dot(plucker(u, w), vf)) < 0:
        u, w = w, u
    return tuple(float(c) for c in u), tuple(float(c) for c in w)


# ---------------------------------------------------------------------------
# Fixture builders.
# ---------------------------------------------------------------------------


def constant_curvature(c) -> CurvatureOperator:
    """c * I: the operator of constant sectional curvature c."""
    c = Fraction(c)
    return CurvatureOperator(
        [[c if i == j else Fraction(0) for j in range(6)] for i in range(6)]
    )


def diagonal(*values) -> CurvatureOperator:
    if len(values) == 1 and isinstance(values[0], (list, tuple)):
        values = tuple(values[0])
    if len(values) != 6:
        raise ValueError("diagonal builder needs 6 values")
    vals = [Fraction(v) for v in values]
    return CurvatureOperator(
        [[vals[i] if i == j else Fraction(0) for j in range(6)] for i in range(6)]
    )


def product_spheres() -> CurvatureOperator:
    """The S^2 x S^2 model operator diag(1, 0, 0, 0, 0, 1)."""
    return diagonal(1, 0, 0, 0, 0, 1)


def random_symmetric(seed: int, entry_bound: int = 5) -> CurvatureOperator:
    """Seeded random symmetric operator with integer entries.

    Draws the upper triangle (diagonal included) uniformly from
    [-entry_bound, entry_bound] and mirrors it, so entries stay integers.
    Reproducible: the same seed always gives the same operator.
    """
    rng = random.Random(seed)
    rows = [[Fraction(0)] * 6 for _ in range(6)]
    for i in range(6):
        for j in range(i, 6):
            v = Fraction(rng.randint(-entry_bound, entry_bound))
            rows[i][j] = v
            rows[j][i] = v
    return CurvatureOperator(rows)
