"""Six-vertex solutions: the asymmetric family and the free-fermion SL(2) family.

Six-vertex matrices here carry unit off-diagonal entries ``X23 = X32 = 1``
and are described by their diagonal ``dp(X) = [X11, X22, X33, X44]``.
"""
from __future__ import annotations

import cmath
import itertools
import warnings
from dataclasses import dataclass

from ..core import (
    COMPLEX,
    ConstraintError,
    DegenerateWarning,
    Matrix,
    Triplet,
    as_scalars,
    is_zero,
)


def six_vertex_matrix(x11, x22, x33, x44, mode: str | None = None) -> Matrix:
    mode, (x11, x22, x33, x44) = as_scalars(x11, x22, x33, x44, mode=mode)
    return Matrix([[x11, 0, 0, 0], [0, x22, 1, 0], [0, 1, x33, 0], [0, 0, 0, x44]], mode)


def dp(m: Matrix) -> tuple:
    return (m[0, 0], m[1, 1], m[2, 2], m[3, 3])


# ---------------------------------------------------------------------------
# asymmetric six-vertex


@dataclass(frozen=True)
class SixVertexRational:
    a: object
    b: object
    c: object
    d: object
    e: object
    f: object

    @property
    def h(self):
        _, (a, b, c, d, e, f) = as_scalars(self.a, self.b, self.c, self.d, self.e, self.f)
        return e * f + (a * d * e - b * c * f) * (e - f)


@dataclass(frozen=True)
class SixVertexTrig:
    """Spectral parameters ``lambdaA`` and ``lambdaC``; ``lambdaB = lambdaA + lambdaC``."""

    gamma: float
    q1: complex
    q2: complex
    q3: complex
    lambdaA: float
    lambdaC: float

    @property
    def lambdaB(self):
        return self.lambdaA + self.lambdaC


def r6v(gamma, qp, q, lam) -> Matrix:
    """Trigonometric matrix with ``R11 = (q/q') sin(gamma - lam)/sin(gamma)``.

    Argument order follows the usual ``R(gamma, q', q, lambda)``: the first
    color is ``q'``.
    """
    gamma, qp, q, lam = (complex(v) for v in (gamma, qp, q, lam))
    s = cmath.sin(gamma)
    if abs(s) == 0:
        raise ConstraintError("sin(gamma) vanishes", relation="sin(gamma) != 0")
    u = cmath.sin(gamma - lam) / s
    v = cmath.sin(lam) / s
    return six_vertex_matrix(q / qp * u, q * qp * v, v / (q * qp), qp / q * u, mode=COMPLEX)


def build_6v_asym(p) -> Triplet:
    if isinstance(p, SixVertexTrig):
        if is_zero(cmath.sin(complex(p.gamma)), 0.0):
            raise ConstraintError("sin(gamma) vanishes", relation="sin(gamma) != 0")
        return Triplet(
            r6v(p.gamma, p.q1, p.q2, p.lambdaA),
            r6v(p.gamma, p.q1, p.q3, p.lambdaA + p.lambdaC),
            r6v(p.gamma, p.q2, p.q3, p.lambdaC),
        )
    mode, (a, b, c, d, e, f) = as_scalars(p.a, p.b, p.c, p.d, p.e, p.f)
    for name, v in zip("abcdef", (a, b, c, d, e, f)):
        if is_zero(v):
            raise ConstraintError(f"{name} must be nonzero", relation=f"{name} != 0")
    h = e * f + (a * d * e - b * c * f) * (e - f)
    if is_zero(h):
        raise ConstraintError("h = e*f + (a*d*e - b*c*f)*(e - f) vanishes", relation="h != 0", residual=h)
    if is_zero(e - f):
        warnings.warn(
            "e = f: A loses its X22 and X33 entries and its six-vertex invariants are undefined",
            DegenerateWarning,
            stacklevel=2,
        )
    w = e + b * c * (f - e)
    C = six_vertex_matrix(a, b, c, d, mode)
    B = six_vertex_matrix(a * e, b * f / h, c * f, d * e / h, mode)
    A = six_vertex_matrix(w, b * d * (f - e) / h, c * a * (f - e), w / h, mode)
    return Triplet(A, B, C)


def rational_from_triplet(t: Triplet) -> SixVertexRational:
    """Recover ``(a, ..., f)`` from ``dp(C) = [a, b, c, d]``, ``B11 = a e``, ``B33 = c f``."""
    a, b, c, d = dp(t.C)
    return SixVertexRational(a, b, c, d, t.B[0, 0] / a, t.B[2, 2] / c)


def perm_plus_identity(u, mode: str | None = None) -> Matrix:
    """``P + u I``, the singular limit of the trigonometric family."""
    mode, (u,) = as_scalars(u, mode=mode)
    return Matrix([[1 + u, 0, 0, 0], [0, u, 1, 0], [0, 1, u, 0], [0, 0, 0, 1 + u]], mode)


def factorization(t: Triplet) -> tuple:
    """The two factors of the reduced six-vertex equation, in ``dp(B)``, ``dp(C)``."""
    b1, b2, b3, _ = dp(t.B)
    c1, c2, c3, c4 = dp(t.C)
    first = (
        b1 * b2 * b3
        + c3 * c4 * b1 * b1 * b2
        - c2 * c3 * b1 * b2 * b3
        - c1 * c4 * b1 * b2 * b3
        - c1 * c2 * b3
        + c1 * c2 * b2 * b3 * b3
    )
    second = 1 - c2 * c3 - c1 * c4
    return first, second


def six_vertex_equations(t: Triplet) -> tuple:
    """Residuals of the six polynomial equations left after setting off-diagonals to 1."""
    a1, a2, a3, a4 = dp(t.A)
    b1, b2, b3, b4 = dp(t.B)
    c1, c2, c3, c4 = dp(t.C)
    return (
        b2 * a1 - b1 * a2 - c2,
        -b1 - c2 * a3 + c1 * a1,
        -a3 - c3 * b1 + c1 * b3,
        a2 - c4 * b2 + c2 * b4,
        b4 - c4 * a4 + c3 * a2,
        b4 * a3 - b3 * a4 + c3,
    )


@dataclass
class TrigRelations:
    """Residuals of the circle relations under principal and best sign choices."""

    sqrt_delta: tuple
    delta_residual: float
    vA_residual: float
    uB_residual: float
    best_residual: float
    best_signs: tuple

    @property
    def principal_residual(self) -> float:
        return max(self.delta_residual, self.vA_residual, self.uB_residual)

    @property
    def sign_flip_only(self) -> bool:
        """Relations hold only after flipping some square-root branches."""
        return self.best_residual < self.principal_residual and self.best_signs != (1,) * 6


def _relation_residuals(u, v):
    s = []
    for ui, vi in zip(u, v):
        den = ui * ui + vi * vi - 1
        s.append(2 * ui * vi / den if den != 0 else complex("inf"))
    r_delta = max(abs(s[0] - s[1]), abs(s[0] - s[2]), abs(s[1] - s[2]))
    r_v = abs(v[0] - (v[1] * u[2] - v[2] * u[1]))
    r_u = abs(u[1] - (u[0] * u[2] - v[0] * v[2]))
    return tuple(s), r_delta, r_v, r_u


def trig_relations_check(t: Triplet) -> TrigRelations:
    """Extract ``u = sqrt(X11 X44)``, ``v = sqrt(X22 X33)`` per slot and test the circle relations."""
    u, v = [], []
    for name, m in zip("ABC", t):
        if not (is_zero(m[1, 2] - 1) and is_zero(m[2, 1] - 1)):
            raise ValueError(f"{name}: off-diagonal entries must be 1")
        x11, x22, x33, x44 = (complex(x) for x in dp(m))
        if x11 * x44 == 0 or x22 * x33 == 0:
            raise ConstraintError(f"{name}: vanishing fourth-root base", relation="X11*X44*X22*X33 != 0")
        u.append(cmath.sqrt(x11 * x44))
        v.append(cmath.sqrt(x22 * x33))
    s, r_delta, r_v, r_u = _relation_residuals(u, v)
    best, best_signs = max(r_delta, r_v, r_u), (1,) * 6
    for signs in itertools.product((1, -1), repeat=6):
        uu = [su * x for su, x in zip(signs[:3], u)]
        vv = [sv * x for sv, x in zip(signs[3:], v)]
        _, a, b, c = _relation_residuals(uu, vv)
        if max(a, b, c) < best - 1e-15:
            best, best_signs = max(a, b, c), signs
    return TrigRelations(s, r_delta, r_v, r_u, best, best_signs)


# ---------------------------------------------------------------------------
# free-fermion six-vertex


def _det2(g: Matrix):
    return g[0, 0] * g[1, 1] - g[0, 1] * g[1, 0]


def _inv_unimodular(g: Matrix) -> Matrix:
    return Matrix([[g[1, 1], -g[0, 1]], [-g[1, 0], g[0, 0]]], g.mode)


@dataclass(frozen=True)
class SL2Pair:
    hatB: Matrix
    hatC: Matrix
    tol: float | None = None

    def __post_init__(self):
        for name in ("hatB", "hatC"):
            g = getattr(self, name)
            if g.n != 2:
                raise ValueError(f"{name} must be 2x2")
            d = _det2(g)
            if not is_zero(d - 1, self.tol):
                raise ConstraintError(f"det {name} = {d} != 1", relation=f"det {name} == 1", residual=d - 1)

    @property
    def hatA(self) -> Matrix:
        return _inv_unimodular(self.hatC) @ self.hatB


def sl2_embed(hat: Matrix) -> Matrix:
    """``[[u, w], [s, t]] -> dp = [u, -w, s, t]`` with unit off-diagonals."""
    return six_vertex_matrix(hat[0, 0], -hat[0, 1], hat[1, 0], hat[1, 1], mode=hat.mode)


def sl2_hat(m: Matrix) -> Matrix:
    """Inverse of :func:`sl2_embed` on the diagonal."""
    return Matrix([[m[0, 0], -m[1, 1]], [m[2, 2], m[3, 3]]], m.mode)


def build_6v_ff(p: SL2Pair) -> Triplet:
    return Triplet(sl2_embed(p.hatA), sl2_embed(p.hatB), sl2_embed(p.hatC))


def euler_sl2(q, theta, qp) -> Matrix:
    """``diag(q, 1/q) . rot(theta) . diag(1/q', q')``."""
    q, theta, qp = complex(q), complex(theta), complex(qp)
    c, s = cmath.cos(theta), cmath.sin(theta)
    return Matrix([[q * c / qp, -q * qp * s], [s / (q * qp), qp * c / q]], COMPLEX)
