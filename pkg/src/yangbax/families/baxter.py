"""Baxter's symmetric eight-vertex matrix and its elliptic parametrization."""
from __future__ import annotations

import math
from dataclasses import dataclass

from ..core import (
    COMPLEX,
    DEFAULT_TOL,
    Matrix,
    Triplet,
    triplet_projective_distance,
)
from ..elliptic import EllipticModulus, jacobi, sn
from ..symmetry import GaugeElement, apply_aut_word, apply_gauge

# i*sigma_x: a determinant-one gauge element that swaps the two basis states
_ISX = Matrix([[0, 1j], [1j, 0]], COMPLEX)
_ONE = Matrix.identity(2, COMPLEX)


@dataclass(frozen=True)
class BaxterParams:
    sigma: float
    chi: float
    gamma: float
    k: float

    def __post_init__(self):
        EllipticModulus(self.k)

    @property
    def rho(self) -> float:
        return self.sigma + self.chi

    def shifted(self, dsigma: float = 0.0, dchi: float = 0.0) -> "BaxterParams":
        return BaxterParams(self.sigma + dsigma, self.chi + dchi, self.gamma, self.k)


def baxter_weights(alpha, gamma, k) -> tuple:
    """``(a, b, c, d) = (sn(g-a), sn(a), sn(g), k sn(a) sn(g) sn(g-a))``."""
    s_a, s_g, s_ga = sn(alpha, k), sn(gamma, k), sn(gamma - alpha, k)
    return s_ga, s_a, s_g, k * s_a * s_g * s_ga


def r_baxter(alpha, gamma, k) -> Matrix:
    """Symmetric eight-vertex matrix with diagonal ``sn(g-a), sn(a), sn(a), sn(g-a)``.

    The corners carry the full weight ``k sn(a) sn(g) sn(g-a)``; without
    the ``sn(g-a)`` factor the triplet does not solve the equation.
    """
    a, b, c, d = baxter_weights(alpha, gamma, k)
    return Matrix(
        [[a, 0, 0, d], [0, b, c, 0], [0, c, b, 0], [d, 0, 0, a]],
        COMPLEX,
    )


def build_8v_baxter(p: BaxterParams) -> Triplet:
    """``A = R(chi), B = R(sigma + chi), C = R(sigma)``."""
    return Triplet(
        r_baxter(p.chi, p.gamma, p.k),
        r_baxter(p.rho, p.gamma, p.k),
        r_baxter(p.sigma, p.gamma, p.k),
    )


def elliptic_xyzv(p: BaxterParams) -> tuple:
    """Rational coordinates ``(x, y, z, v)`` of the Baxter point."""
    g, k = p.gamma, p.k

    def s(u):
        return sn(u, k)

    x = s(p.chi) / s(g - p.chi)
    y = s(p.rho) / s(g - p.rho)
    z = s(p.sigma) / s(g - p.sigma)
    v = s(p.rho) * (s(p.sigma) * s(p.chi) + s(g) * s(g - p.rho)) / (
        s(g - p.chi) * s(g - p.rho) * s(g - p.sigma)
    )
    return x, y, z, v


def elliptic_invariants(gamma, k) -> tuple:
    """``(-2 cn(g) dn(g), sn(g)^4 k^2)``, the moduli attached to ``(gamma, k)``."""
    s, c, d = jacobi(gamma, k)
    return -2.0 * c * d, s ** 4 * k * k


def elliptic_q(p: BaxterParams) -> tuple:
    g, k = p.gamma, p.k
    sg = sn(g, k)

    def w(u):
        return sn(u, k) * sn(g - u, k)

    ws, wr, wc = w(p.sigma), w(p.rho), w(p.chi)
    return (
        sg * math.sqrt(ws / (wr * wc)),
        sg * math.sqrt(wr / (ws * wc)),
        sg * math.sqrt(wc / (ws * wr)),
        sg * k * k * math.sqrt(wc * wr * ws),
    )


def elliptic_Q(alpha, gamma, k) -> float:
    """``Q = sn(g)^2 / (sn(a) sn(g - a))`` on the spectral parameter ``alpha``."""
    return sn(gamma, k) ** 2 / (sn(alpha, k) * sn(gamma - alpha, k))


# Single steps move both spectral slots by gamma, up to a discrete gauge
# that swaps the basis in one space.
SHIFT_STEPS = {
    "chi": (("Ka", "Kb"), (_ISX, _ONE, _ONE)),
    "sigma": (("Kc", "Ka"), (_ONE, _ISX, _ONE)),
}


@dataclass
class EllipticActionReport:
    chi_shift: float
    sigma_shift: float
    chi_shift_squared: float
    sigma_shift_squared: float

    def ok(self, tol: float) -> bool:
        return max(self.chi_shift, self.sigma_shift, self.chi_shift_squared, self.sigma_shift_squared) <= tol


def _shift_distance(p: BaxterParams, which: str, times: int) -> float:
    word, gauge = SHIFT_STEPS[which]
    t = build_8v_baxter(p)
    if times == 1:
        moved = apply_gauge(GaugeElement(*gauge), apply_aut_word(word, t))
    else:
        moved = apply_aut_word(word * times, t)
    delta = times * p.gamma
    target = p.shifted(dchi=delta) if which == "chi" else p.shifted(dsigma=delta, dchi=-delta)
    return triplet_projective_distance(moved, build_8v_baxter(target))


def aut_elliptic_action(p: BaxterParams) -> EllipticActionReport:
    """Distances between K-words on the Baxter triplet and the shifted triplets.

    ``[Ka, Kb]`` sends ``chi -> chi + gamma`` with ``sigma`` fixed, so
    ``rho -> rho + gamma``; ``[Kc, Ka]`` sends ``sigma -> sigma + gamma`` with
    ``rho`` fixed. Single steps are compared after the discrete gauge in
    :data:`SHIFT_STEPS`, squared steps directly.
    """
    return EllipticActionReport(
        _shift_distance(p, "chi", 1),
        _shift_distance(p, "sigma", 1),
        _shift_distance(p, "chi", 2),
        _shift_distance(p, "sigma", 2),
    )


def aut_elliptic_action_check(p: BaxterParams, tol: float | None = None) -> bool:
    return aut_elliptic_action(p).ok(1e-8 if tol is None else tol)


def quarter_period_gamma(k: float) -> float:
    """``gamma = K(k)``: four shifts by ``gamma`` span one full period of sn."""
    return EllipticModulus(k).K


__all__ = [
    "BaxterParams",
    "DEFAULT_TOL",
    "EllipticActionReport",
    "SHIFT_STEPS",
    "aut_elliptic_action",
    "aut_elliptic_action_check",
    "baxter_weights",
    "build_8v_baxter",
    "elliptic_Q",
    "elliptic_invariants",
    "elliptic_q",
    "elliptic_xyzv",
    "quarter_period_gamma",
    "r_baxter",
]
