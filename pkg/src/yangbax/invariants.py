"""Quadratic invariants of five/six/eight-vertex matrices.

Entries are read with 1-based flat positions ``X_rc``::

    X11 X22 X33 X44   diagonal
    X23 X32           middle off-diagonal pair
    X14 X41           anti-corners (eight-vertex form only)

For the eight-vertex form ``[[x1,0,0,x3],[0,x2,x4,0],[0,x5,x2,0],[x6,0,0,x1]]``
the pairs ``X23, X32`` (``x4, x5``) and ``X14, X41`` (``x3, x6``) enter only
``p9``; the second pair vanishes on the six-vertex form.
"""
from __future__ import annotations

from dataclasses import dataclass

from .core import RATIONAL, Matrix, as_scalars, is_zero


@dataclass(frozen=True)
class PVector:
    p1: object
    p2: object
    p5: object
    p6: object
    p9: object

    def as_dict(self) -> dict:
        return {"p1": self.p1, "p2": self.p2, "p5": self.p5, "p6": self.p6, "p9": self.p9}


@dataclass(frozen=True)
class SixVertexInvariants:
    """Ratios of p-polynomials; ``None`` where the denominator vanishes."""

    Delta: object
    delta: object
    delta_prime: object


@dataclass(frozen=True)
class EightVertexInvariants:
    Delta1: object
    Delta2: object


def p_polys(m: Matrix) -> PVector:
    x11, x22, x33, x44 = m[0, 0], m[1, 1], m[2, 2], m[3, 3]
    x23, x32, x14, x41 = m[1, 2], m[2, 1], m[0, 3], m[3, 0]
    return PVector(
        p1=x11 * x22 + x33 * x44,
        p2=x11 * x22 - x33 * x44,
        p5=x11 * x33 + x22 * x44,
        p6=x11 * x33 - x22 * x44,
        p9=x11 * x44 + x22 * x33 - x23 * x32 - x14 * x41,
    )


def _ratio(num, den, tol):
    return None if is_zero(den, tol) else num / den


def six_vertex_invariants(m: Matrix, tol: float | None = None) -> SixVertexInvariants:
    p = p_polys(m)
    return SixVertexInvariants(
        Delta=_ratio(p.p1 ** 2 - p.p2 ** 2, p.p9 ** 2, tol),
        delta=_ratio(p.p1 + p.p2, p.p1 - p.p2, tol),
        delta_prime=_ratio(p.p5 - p.p6, p.p5 + p.p6, tol),
    )


def eight_vertex_invariants_from_params(x, y, z, v) -> EightVertexInvariants:
    _, (x, y, z, v) = as_scalars(x, y, z, v)
    xyz = x * y * z
    return EightVertexInvariants(
        Delta1=v * (2 * v - xyz - x - y - z) / xyz,
        Delta2=(v - x) * (v - y) * (v - z) * (v - xyz) / (xyz * xyz),
    )


def eight_vertex_invariants_from_matrix(m: Matrix, tol: float | None = None) -> EightVertexInvariants:
    """Global invariants from a single matrix.

    ``Delta1 = -2 p9/p5``; ``Delta2`` is the product of the anti-diagonal
    entries over the product of the diagonal entries, the orientation that
    agrees with the parameter formula.
    """
    p = p_polys(m)
    diag = m[0, 0] * m[1, 1] * m[2, 2] * m[3, 3]
    anti = m[0, 3] * m[1, 2] * m[2, 1] * m[3, 0]
    return EightVertexInvariants(
        Delta1=_ratio(-2 * p.p9, p.p5, tol),
        Delta2=_ratio(anti, diag, tol),
    )


def is_free_fermion(m: Matrix, tol: float | None = None) -> bool:
    p9 = p_polys(m).p9
    if m.mode == RATIONAL:
        return p9 == 0
    scale = m.max_abs() ** 2
    return abs(p9) <= (1e-9 if tol is None else tol) * max(scale, 1e-300)


def is_six_vertex_form(m: Matrix, tol: float | None = None) -> bool:
    """Zero pattern of the six-vertex ansatz (five-vertex included)."""
    allowed = {(0, 0), (1, 1), (1, 2), (2, 1), (2, 2), (3, 3)}
    return all(is_zero(m[r, c], tol) for r in range(4) for c in range(4) if (r, c) not in allowed)


def is_eight_vertex_form(m: Matrix, tol: float | None = None) -> bool:
    """Zero pattern of the eight-vertex ansatz (secondary-diagonal symmetry not required)."""
    allowed = {(0, 0), (1, 1), (2, 2), (3, 3), (1, 2), (2, 1), (0, 3), (3, 0)}
    return all(is_zero(m[r, c], tol) for r in range(4) for c in range(4) if (r, c) not in allowed)
