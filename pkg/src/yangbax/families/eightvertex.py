"""The seven-parameter eight-vertex solution, its birational K-maps and gauge fixings."""
from __future__ import annotations

import cmath
import warnings
from dataclasses import dataclass, replace
from fractions import Fraction

import numpy as np

from ..core import (
    COMPLEX,
    RATIONAL,
    ConstraintError,
    DegenerateWarning,
    Matrix,
    NoExactRootError,
    Triplet,
    as_scalars,
    is_zero,
    sqrt,
)
from ..invariants import eight_vertex_invariants_from_params
from ..symmetry import normalize_generator


@dataclass(frozen=True)
class EightVertexParams:
    """Gauge variables ``a, b, c`` and gauge-invariant coordinates ``x, y, z, v``."""

    a: object
    b: object
    c: object
    x: object
    y: object
    z: object
    v: object

    @property
    def xyzv(self) -> tuple:
        return (self.x, self.y, self.z, self.v)

    def scalars(self):
        return as_scalars(self.a, self.b, self.c, self.x, self.y, self.z, self.v)


def _require_nonzero(pairs):
    for name, value in pairs:
        if is_zero(value):
            raise ConstraintError(f"{name} vanishes", relation=f"{name} != 0", residual=value)


def build_8v(p: EightVertexParams, warn: bool = True) -> Triplet:
    mode, (a, b, c, x, y, z, v) = p.scalars()
    _require_nonzero(
        [
            ("c*y", c * y), ("b*z", b * z), ("a*y*z", a * y * z),
            ("c*x", c * x), ("a*z", a * z), ("b*x*z", b * x * z),
            ("b*x", b * x), ("a*y", a * y), ("c*x*y", c * x * y),
        ]
    )
    xyz = x * y * z
    if warn:
        for name, w in (("x", x), ("y", y), ("z", z), ("xyz", xyz)):
            if is_zero(v - w):
                warnings.warn(
                    f"v = {name}: an off-diagonal entry vanishes and the triplet leaves the generic eight-vertex stratum",
                    DegenerateWarning,
                    stacklevel=2,
                )
    A = Matrix(
        [
            [1, 0, 0, a],
            [0, x, b * (v - x) / (c * y), 0],
            [0, c * (v - xyz) / (b * z), x, 0],
            [(v - y) * (v - z) / (a * y * z), 0, 0, 1],
        ],
        mode,
    )
    B = Matrix(
        [
            [1, 0, 0, b],
            [0, y, a * (v - x) / (c * x), 0],
            [0, c * (v - z) / (a * z), y, 0],
            [(v - y) * (v - xyz) / (b * x * z), 0, 0, 1],
        ],
        mode,
    )
    C = Matrix(
        [
            [1, 0, 0, c],
            [0, z, a * (v - xyz) / (b * x), 0],
            [0, b * (v - z) / (a * y), z, 0],
            [(v - y) * (v - x) / (c * x * y), 0, 0, 1],
        ],
        mode,
    )
    return Triplet(A, B, C)


def k_map_8v(gen: str, p: EightVertexParams) -> EightVertexParams:
    """Birational action of one generator on ``(a, b, c; x, y, z, v)``."""
    gen = normalize_generator(gen)
    _, (a, b, c, x, y, z, v) = p.scalars()
    xyz = x * y * z
    if gen == "Ka":
        _require_nonzero([("a*y*z", a * y * z), ("v-x-xyz", v - x - xyz)])
        return EightVertexParams(
            -(v - y) * (v - z) / (a * y * z),
            c * (v - z) / (a * z),
            b * (v - z) / (a * y),
            (v - z - y) * x / (v - x - xyz),
            y,
            z,
            z - v + y,
        )
    if gen == "Kb":
        _require_nonzero([("b*x*z", b * x * z), ("v-xyz-y", v - xyz - y)])
        return EightVertexParams(
            c * (v - xyz) / (b * z),
            -(v - z - x) * (v - y) * (v - xyz) / (b * x * z * (v - xyz - y)),
            a * (v - xyz) / (b * x),
            x,
            (v - z - x) * y / (v - xyz - y),
            z,
            z - v + x,
        )
    _require_nonzero([("c*x*y", c * x * y), ("v-xyz-z", v - xyz - z)])
    return EightVertexParams(
        b * (v - x) / (c * y),
        a * (v - x) / (c * x),
        -(v - y) * (v - x) / (c * x * y),
        x,
        y,
        (v - x - y) * z / (v - xyz - z),
        x - v + y,
    )


# ---------------------------------------------------------------------------
# q-parameters


@dataclass(frozen=True)
class EightVertexDerived:
    q1: object
    q2: object
    q3: object
    q4: object
    Lambda: object
    Delta1: object
    Delta2: object

    @property
    def q(self) -> tuple:
        return (self.q1, self.q2, self.q3, self.q4)


def q_squares_8v(x, y, z, v) -> tuple:
    """``q_i^2``; rational whenever the inputs are, no square root needed."""
    _, (x, y, z, v) = as_scalars(x, y, z, v)
    xyz = x * y * z
    return tuple(w * w / xyz for w in (v - x, v - xyz, v - z, v - y))


def q_from_xyzv(x, y, z, v, root=None) -> tuple:
    """``q_i`` with ``root`` (default: principal) as the branch of ``sqrt(xyz)``."""
    _, (x, y, z, v) = as_scalars(x, y, z, v)
    s = sqrt(x * y * z) if root is None else root
    return ((v - x) / s, (v - x * y * z) / s, (v - z) / s, (v - y) / s)


def xyzv_from_q(Lambda, q1, q2, q3, q4) -> tuple:
    l2 = Lambda - q2
    return ((Lambda - q1) * l2, (Lambda - q4) * l2, (Lambda - q3) * l2, Lambda * l2)


def _lambda_quartic_roots(q) -> np.ndarray:
    """Roots of ``prod(L - q_i) - 1``."""
    coeffs = np.array([1.0 + 0j])
    for qi in q:
        coeffs = np.convolve(coeffs, np.array([1.0, -complex(qi)]))
    coeffs[-1] -= 1.0
    return np.roots(coeffs)


def solve_lambda(q, x, y=None, z=None, v=None):
    """Root of the Lambda quartic selected by the residual of ``x = (L-q1)(L-q2)``.

    Ties are broken by the residual over all of ``x, y, z, v`` that are given.
    """
    targets = [t for t in (x, y, z, v) if t is not None]

    def key(lam):
        rec = xyzv_from_q(lam, *(complex(qi) for qi in q))
        first = abs(rec[0] - complex(x))
        rest = max(abs(r - complex(t)) for r, t in zip(rec, targets))
        return (round(first, 9), rest)

    roots = _lambda_quartic_roots(q)
    return min(roots, key=key)


def _snap_exact(value: complex, check) -> Fraction:
    if abs(value.imag) > 1e-9 * max(1.0, abs(value)):
        raise NoExactRootError(f"Lambda = {value} is not real")
    for bound in (10 ** 6, 10 ** 9, 10 ** 12):
        cand = Fraction(value.real).limit_denominator(bound)
        if check(cand):
            return cand
    raise NoExactRootError(f"Lambda = {value} has no exact rational form")


def derived_8v(p) -> EightVertexDerived:
    """``q_1..q_4``, ``Lambda`` and both invariants from ``(x, y, z, v)``.

    Exact mode needs ``xyz`` to be a perfect square; otherwise
    :class:`NoExactRootError` is raised and :func:`q_squares_8v` is the
    exact alternative.
    """
    x, y, z, v = p.xyzv if isinstance(p, EightVertexParams) else p
    mode, (x, y, z, v) = as_scalars(x, y, z, v)
    q = q_from_xyzv(x, y, z, v)
    lam = solve_lambda(q, x, y, z, v)
    if mode == RATIONAL:

        def exact_ok(cand):
            prod = 1
            for qi in q:
                prod *= cand - qi
            return prod == 1 and xyzv_from_q(cand, *q)[0] == x

        lam = _snap_exact(complex(lam), exact_ok)
    else:
        lam = complex(lam)
    inv = eight_vertex_invariants_from_params(x, y, z, v)
    return EightVertexDerived(*q, lam, inv.Delta1, inv.Delta2)


def delta1_expressions(d: EightVertexDerived, x, y, z) -> tuple:
    """The four equal expressions of ``Delta1`` in ``Lambda`` and the ``q_i``."""
    q1, q2, q3, q4 = d.q
    lam = d.Lambda
    return (
        -2 * lam * lam + lam * (q1 + q2 + q3 + q4),
        q1 * q2 + q3 * q4 - x - 1 / x,
        q1 * q3 + q2 * q4 - y - 1 / y,
        q2 * q3 + q1 * q4 - z - 1 / z,
    )


def antidiagonal_from_q(p: EightVertexParams, d: EightVertexDerived | None = None) -> tuple:
    """Entries ``(X14, X23, X32, X41)`` of A, B and C written through the ``q_i``."""
    mode, (a, b, c, x, y, z, v) = p.scalars()
    if d is None:
        d = derived_8v(p)
    q1, q2, q3, q4 = d.q
    ad_a = (a, b / c * sqrt(x * z / y) * q1, c / b * sqrt(x * y / z) * q2, x / a * q3 * q4)
    ad_b = (b, a / c * sqrt(y * z / x) * q1, c / a * sqrt(x * y / z) * q3, y / b * q2 * q4)
    ad_c = (c, a / b * sqrt(y * z / x) * q2, b / a * sqrt(x * z / y) * q3, z / c * q1 * q4)
    return ad_a, ad_b, ad_c


def antidiagonal(m: Matrix) -> tuple:
    return (m[0, 3], m[1, 2], m[2, 1], m[3, 0])


# ---------------------------------------------------------------------------
# gauge fixing


def q_roots(tau, Delta1, Delta2) -> tuple:
    """Roots of ``tau Q^2 - Q (tau^2 + tau Delta1 + 1) + tau Delta2 = 0``, larger magnitude first."""
    tau, d1, d2 = complex(tau), complex(Delta1), complex(Delta2)
    if tau == 0:
        raise ConstraintError("tau vanishes", relation="tau != 0")
    s = tau * tau + tau * d1 + 1
    disc = cmath.sqrt(s * s - 4 * tau * tau * d2)
    r1, r2 = (s + disc) / (2 * tau), (s - disc) / (2 * tau)
    return (r1, r2) if abs(r1) >= abs(r2) else (r2, r1)


def _gauge_function(f, tau, Delta2, Q):
    if callable(f):
        return complex(f(tau))
    if f == "one":
        return 1 + 0j
    if f == "tau":
        return complex(tau)
    if f == "symmetric":
        return cmath.sqrt(tau * Delta2 / Q)
    raise ValueError(f"unknown gauge function {f!r}; expected 'one', 'tau', 'symmetric' or a callable")


def r8v_gaugefixed(tau, Delta1, Delta2, f="one", omega=1, branch=0):
    """``R(tau, Delta1, Delta2)`` with ``Q`` picked from :func:`q_roots` by ``branch``.

    ``branch`` is 0 for the larger-magnitude root (the default, continuous
    with the elliptic formula), 1 for the other one, or an explicit ``Q``.
    Returns the matrix and the ``Q`` used.
    """
    tau, d2, omega = complex(tau), complex(Delta2), complex(omega)
    if branch in (0, 1):
        Q = q_roots(tau, Delta1, Delta2)[branch]
    else:
        Q = complex(branch)
    if Q == 0:
        raise ConstraintError("Q vanishes", relation="Q != 0")
    ft = _gauge_function(f, tau, d2, Q)
    if ft == 0:
        raise ConstraintError("f(tau) vanishes", relation="f(tau) != 0")
    m = Matrix(
        [
            [1, 0, 0, ft],
            [0, tau, omega * ft * Q, 0],
            [0, tau / (omega * ft), tau, 0],
            [tau * d2 / (ft * Q), 0, 0, 1],
        ],
        COMPLEX,
    )
    return m, Q


def symmetric_gauge_abc(x, y, z, v, phi1=1, phi2=1, phi3=1, root=None) -> tuple:
    """``a = sqrt(x/(q1 q2)) phi1 phi2`` and cyclic analogues for ``b``, ``c``."""
    q1, q2, q3, _ = q_from_xyzv(x, y, z, v, root)
    _, (x, y, z, phi1, phi2, phi3, q1, q2, q3) = as_scalars(x, y, z, phi1, phi2, phi3, q1, q2, q3)
    _require_nonzero([("q1*q2", q1 * q2), ("q1*q3", q1 * q3), ("q2*q3", q2 * q3)])
    return (
        sqrt(x / (q1 * q2)) * phi1 * phi2,
        sqrt(y / (q1 * q3)) * phi1 * phi3,
        sqrt(z / (q2 * q3)) * phi2 * phi3,
    )


def symmetric_gauge_params(x, y, z, v) -> EightVertexParams:
    """Parameters in the gauge ``phi_i = Delta2^(1/4)`` where all three matrices are symmetric."""
    x, y, z, v = (complex(w) for w in (x, y, z, v))
    d2 = eight_vertex_invariants_from_params(x, y, z, v).Delta2
    phi = cmath.sqrt(cmath.sqrt(d2))
    a, b, c = symmetric_gauge_abc(x, y, z, v, phi, phi, phi)
    return EightVertexParams(a, b, c, x, y, z, v)


def with_gauge(p: EightVertexParams, a, b, c) -> EightVertexParams:
    return replace(p, a=a, b=b, c=c)
