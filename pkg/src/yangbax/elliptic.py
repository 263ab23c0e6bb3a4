"""Real Jacobi elliptic functions via the arithmetic-geometric mean."""
from __future__ import annotations

import math
from dataclasses import dataclass

_EPS = 1e-15
_MAX_STEPS = 64


def _check_modulus(k: float) -> float:
    k = float(k)
    if not 0.0 <= k < 1.0:
        raise ValueError(f"elliptic modulus must satisfy 0 <= k < 1, got {k}")
    return k


def agm(a: float, b: float) -> float:
    for _ in range(_MAX_STEPS):
        if abs(a - b) <= _EPS * abs(a):
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return 0.5 * (a + b)


def complete_K(k: float) -> float:
    """Complete elliptic integral of the first kind, ``K(k) = pi / (2 AGM(1, k'))``."""
    k = _check_modulus(k)
    return math.pi / (2.0 * agm(1.0, math.sqrt((1.0 - k) * (1.0 + k))))


@dataclass(frozen=True)
class EllipticModulus:
    k: float

    def __post_init__(self):
        _check_modulus(self.k)

    @property
    def kprime(self) -> float:
        return math.sqrt((1.0 - self.k) * (1.0 + self.k))

    @property
    def K(self) -> float:
        return complete_K(self.k)


def _ladder(k: float):
    """AGM ladder ``(a_n, c_n)`` run until ``c_n`` drops below machine precision."""
    a, b, c = 1.0, math.sqrt((1.0 - k) * (1.0 + k)), k
    aa, cc = [a], [c]
    for _ in range(_MAX_STEPS):
        if abs(c) <= _EPS:
            break
        a, b, c = 0.5 * (a + b), math.sqrt(a * b), 0.5 * (a - b)
        aa.append(a)
        cc.append(c)
    return aa, cc


def jacobi(u: float, k: float) -> tuple[float, float, float]:
    """``(sn, cn, dn)`` of real argument ``u`` and modulus ``k``."""
    k = _check_modulus(k)
    u = float(u)
    if k == 0.0:
        return math.sin(u), math.cos(u), 1.0
    quarter = complete_K(k)
    period = 4.0 * quarter
    u = u - period * round(u / period)
    aa, cc = _ladder(k)
    n = len(aa) - 1
    phi = (2.0 ** n) * aa[n] * u
    for i in range(n, 0, -1):
        phi = 0.5 * (phi + math.asin(cc[i] / aa[i] * math.sin(phi)))
    s, c = math.sin(phi), math.cos(phi)
    # dn > 0 on the real line, and this form stays accurate at cn = 0
    d = math.sqrt(1.0 - k * k * s * s)
    return s, c, d


def sn(u: float, k: float) -> float:
    return jacobi(u, k)[0]


def cn(u: float, k: float) -> float:
    return jacobi(u, k)[1]


def dn(u: float, k: float) -> float:
    return jacobi(u, k)[2]
