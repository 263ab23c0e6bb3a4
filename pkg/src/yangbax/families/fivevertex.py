"""The two five-vertex solution families (``X32 = 0``, ``X11 = 1``)."""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Union

from ..core import (
    COMPLEX,
    ConstraintError,
    DegenerateWarning,
    Matrix,
    Triplet,
    as_scalars,
    is_zero,
)


@dataclass(frozen=True)
class FiveVertex1Params:
    """Global invariant ``d``, colors ``q1..q3`` and gauge variables ``g1..g3``."""

    d: object
    q1: object
    q2: object
    q3: object
    g1: object = 1
    g2: object = 1
    g3: object = 1


def r5a(d, qi, qj, gi=1, gj=1, mode: str | None = None) -> Matrix:
    mode, (d, qi, qj, gi, gj) = as_scalars(d, qi, qj, gi, gj, mode=mode)
    return Matrix(
        [
            [1, 0, 0, 0],
            [0, d * qi, (1 - d * d) * gi / gj, 0],
            [0, 0, d / qj, 0],
            [0, 0, 0, qi / qj],
        ],
        mode,
    )


def build_5v_first(p: FiveVertex1Params) -> Triplet:
    """``A = R5a(1,2), B = R5a(1,3), C = R5a(2,3)``."""
    mode, vals = as_scalars(p.d, p.q1, p.q2, p.q3, p.g1, p.g2, p.g3)
    names = ("d", "q1", "q2", "q3", "g1", "g2", "g3")
    for name, v in zip(names, vals):
        if is_zero(v):
            raise ConstraintError(f"{name} must be nonzero", relation=f"{name} != 0")
    d, q1, q2, q3, g1, g2, g3 = vals
    if is_zero(1 - d * d):
        warnings.warn("d^2 = 1: the off-diagonal entries vanish and the triplet is diagonal", DegenerateWarning, stacklevel=2)
    return Triplet(
        r5a(d, q1, q2, g1, g2, mode),
        r5a(d, q1, q3, g1, g3, mode),
        r5a(d, q2, q3, g2, g3, mode),
    )


def build_5v_raw(x2, x3, x4, y3, a, b, c) -> Triplet:
    """The unparametrized first solution; requires ``a c = b (1 - x2 x3 / x4)``."""
    mode, (x2, x3, x4, y3, a, b, c) = as_scalars(x2, x3, x4, y3, a, b, c)
    gap = a * c - b * (1 - x2 * x3 / x4)
    if not is_zero(gap):
        raise ConstraintError(f"a*c != b*(1-x2*x3/x4) (residual {gap})", relation="a*c == b*(1-x2*x3/x4)", residual=gap)
    A = Matrix([[1, 0, 0, 0], [0, x2, a, 0], [0, 0, x3, 0], [0, 0, 0, x4]], mode)
    B = Matrix([[1, 0, 0, 0], [0, x2, b, 0], [0, 0, y3, 0], [0, 0, 0, x4 * y3 / x3]], mode)
    C = Matrix([[1, 0, 0, 0], [0, x2 / x4, c, 0], [0, 0, y3, 0], [0, 0, 0, y3 / x3]], mode)
    return Triplet(A, B, C)


def raw_from_first(p: FiveVertex1Params) -> dict:
    """Raw coordinates ``x2 = d q1, x3 = d/q2, x4 = q1/q2, y3 = d/q3`` and off-diagonals."""
    _, (d, q1, q2, q3, g1, g2, g3) = as_scalars(p.d, p.q1, p.q2, p.q3, p.g1, p.g2, p.g3)
    e = 1 - d * d
    return {
        "x2": d * q1,
        "x3": d / q2,
        "x4": q1 / q2,
        "y3": d / q3,
        "a": e * g1 / g2,
        "b": e * g1 / g3,
        "c": e * g2 / g3,
    }


# ---------------------------------------------------------------------------
# second solution (free-fermion type)


@dataclass(frozen=True)
class ExplicitGauge:
    g12: object
    g13: object
    g23: object


@dataclass(frozen=True)
class UniformGauge:
    """``g_ij = (1 - p_i q_i)^alpha (1 - p_j q_j)^(1 - alpha)``.

    ``q1`` and ``p3`` do not appear in the matrices; they are the spurious
    parameters the uniform gauge drags in. Their default 0 makes the
    corresponding factor 1.
    """

    alpha: object
    q1: object = 0
    p3: object = 0


@dataclass(frozen=True)
class FiveVertexFFParams:
    p1: object
    p2: object
    q2: object
    q3: object
    gauge: Union[ExplicitGauge, UniformGauge]


def r5b(pi, qj, gij, mode: str | None = None) -> Matrix:
    mode, (pi, qj, gij) = as_scalars(pi, qj, gij, mode=mode)
    return Matrix([[1, 0, 0, 0], [0, pi, gij, 0], [0, 0, qj, 0], [0, 0, 0, -pi * qj]], mode)


def _power(base, alpha, mode):
    if mode == COMPLEX:
        return complex(base) ** complex(alpha)
    if alpha.denominator != 1:
        raise ConstraintError(
            f"exact uniform gauge needs an integer alpha, got {alpha}", relation="alpha in Z"
        )
    if base == 0 and alpha < 0:
        raise ConstraintError("1 - p_i q_i vanishes", relation="1 - p_i*q_i != 0")
    return base ** int(alpha)


def uniform_gauge_values(p1, p2, q2, q3, gauge: UniformGauge, mode: str | None = None):
    mode, (p1, p2, q2, q3, alpha, q1, p3) = as_scalars(p1, p2, q2, q3, gauge.alpha, gauge.q1, gauge.p3, mode=mode)
    e = {1: 1 - p1 * q1, 2: 1 - p2 * q2, 3: 1 - p3 * q3}
    for i, v in e.items():
        if is_zero(v):
            raise ConstraintError(f"1 - p{i}*q{i} vanishes", relation=f"1 - p{i}*q{i} != 0")
    one = 1 - alpha

    def g(i, j):
        return _power(e[i], alpha, mode) * _power(e[j], one, mode)

    return g(1, 2), g(1, 3), g(2, 3)


def build_5v_ff(p: FiveVertexFFParams, tol: float | None = None) -> Triplet:
    """``A = R5b(1,2), B = R5b(1,3), C = R5b(2,3)`` subject to ``g12 g23 = g13 (1 - p2 q2)``."""
    if isinstance(p.gauge, UniformGauge):
        g12, g13, g23 = uniform_gauge_values(p.p1, p.p2, p.q2, p.q3, p.gauge)
    else:
        g12, g13, g23 = p.gauge.g12, p.gauge.g13, p.gauge.g23
    mode, (p1, p2, q2, q3, g12, g13, g23) = as_scalars(p.p1, p.p2, p.q2, p.q3, g12, g13, g23)
    gap = g12 * g23 - g13 * (1 - p2 * q2)
    if not is_zero(gap, tol):
        raise ConstraintError(
            f"g12*g23 != g13*(1-p2*q2) (residual {gap})",
            relation="g12*g23 == g13*(1-p2*q2)",
            residual=gap,
        )
    return Triplet(r5b(p1, q2, g12, mode), r5b(p1, q3, g13, mode), r5b(p2, q3, g23, mode))


def constant_5v(p, q, mode: str | None = None) -> Matrix:
    """Constant solution ``[[1,0,0,0],[0,p,1-pq,0],[0,0,q,0],[0,0,0,1]]``."""
    mode, (p, q) = as_scalars(p, q, mode=mode)
    return Matrix([[1, 0, 0, 0], [0, p, 1 - p * q, 0], [0, 0, q, 0], [0, 0, 0, 1]], mode)
