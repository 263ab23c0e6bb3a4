"""Inversion group generators, partial transpositions and the gauge group."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .core import (
    DEFAULT_TOL,
    RATIONAL,
    ConstraintError,
    Matrix,
    SingularMatrixError,
    Triplet,
    as_scalars,
    is_zero,
    kron,
    to_scalar,
)

GENERATORS = ("Ka", "Kb", "Kc")
RIGHT_TO_LEFT = "right-to-left"
LEFT_TO_RIGHT = "left-to-right"


# ---------------------------------------------------------------------------
# elementary operations on a 4x4 matrix R^{ij}_{kl}


def _permute(m: Matrix, perm) -> Matrix:
    """Entry ``(i,j;k,l)`` of the result is entry ``perm(i,j,k,l)`` of ``m``."""
    rows = []
    for i in (0, 1):
        for j in (0, 1):
            row = []
            for k in (0, 1):
                for l in (0, 1):
                    a, b, c, d = perm(i, j, k, l)
                    row.append(m[2 * a + b, 2 * c + d])
            rows.append(tuple(row))
    return Matrix._raw(tuple(rows), m.mode, 4)


def transpose_full(m: Matrix) -> Matrix:
    return m.T


def transpose_left(m: Matrix) -> Matrix:
    """``(t_l R)^{ij}_{kl} = R^{kj}_{il}``."""
    return _permute(m, lambda i, j, k, l: (k, j, i, l))


def transpose_right(m: Matrix) -> Matrix:
    """``(t_r R)^{ij}_{kl} = R^{il}_{kj}``."""
    return _permute(m, lambda i, j, k, l: (i, l, k, j))


def projective_inverse(m: Matrix) -> Matrix:
    """Matrix inverse with the multiplicative factor fixed to 1."""
    return m.inverse()


_OPS = {
    "t": transpose_full,
    "tl": transpose_left,
    "tr": transpose_right,
    "I": projective_inverse,
}


def compose(symbols: Sequence[str], m: Matrix, order: str = RIGHT_TO_LEFT) -> Matrix:
    """Apply an operator string such as ``["tr", "I", "tl"]`` to ``m``.

    ``RIGHT_TO_LEFT`` treats the string as a composition of maps (rightmost
    acts first); ``LEFT_TO_RIGHT`` applies the leftmost symbol first.
    """
    seq = reversed(symbols) if order == RIGHT_TO_LEFT else symbols
    for s in seq:
        m = _OPS[s](m)
    return m


# K_a: [tI A, t_l B, t_l C]; K_b: [t_l A, t_r I t_l B, t_r C]; K_c: [t_r A, t_r B, tI C]
K_TABLE = {
    "Ka": (("t", "I"), ("tl",), ("tl",)),
    "Kb": (("tl",), ("tr", "I", "tl"), ("tr",)),
    "Kc": (("tr",), ("tr",), ("t", "I")),
}


_ALIASES = {"a": "Ka", "b": "Kb", "c": "Kc", "ka": "Ka", "kb": "Kb", "kc": "Kc"}


def normalize_generator(gen: str) -> str:
    key = _ALIASES.get(str(gen).strip().lower())
    if key is None:
        raise ValueError(f"unknown generator {gen!r}; expected one of {GENERATORS}")
    return key


def apply_K(gen: str, t: Triplet, order: str = RIGHT_TO_LEFT) -> Triplet:
    """One of the three inversion-group involutions on a triplet."""
    ops = K_TABLE[normalize_generator(gen)]
    try:
        return Triplet(*(compose(o, m, order) for o, m in zip(ops, t)))
    except SingularMatrixError as exc:
        raise SingularMatrixError(f"{normalize_generator(gen)}: {exc}") from None


def parse_word(word: str | Iterable[str]) -> tuple[str, ...]:
    """``"a,b,c"`` or ``["Ka", "Kb"]`` -> ``("Ka", "Kb", ...)``."""
    if isinstance(word, str):
        parts = [p for p in word.replace(" ", ",").split(",") if p]
    else:
        parts = list(word)
    return tuple(normalize_generator(p) for p in parts)


def apply_aut_word(word, t: Triplet, order: str = RIGHT_TO_LEFT) -> Triplet:
    """Apply generators left to right: ``[Ka, Kb]`` means Ka first, then Kb."""
    for gen in parse_word(word):
        t = apply_K(gen, t, order)
    return t


# ---------------------------------------------------------------------------
# orbits


@dataclass
class OrbitResult:
    points: list
    period: int | None = None
    word: tuple = field(default_factory=tuple)

    @property
    def closed(self) -> bool:
        return self.period is not None


def _normal_form(t: Triplet):
    """Pivot-normalized entries of each slot; hashable in rational mode."""
    out = []
    for m in t:
        xs = m.entries()
        p = next(i for i, v in enumerate(xs) if v != 0)
        out.append(tuple(v / xs[p] for v in xs))
    return tuple(out)


def orbit(t: Triplet, step, max_iter: int = 512, tol: float | None = None) -> OrbitResult:
    """Iterate ``step`` until the triplet returns projectively to an earlier point.

    ``points[0]`` is the start. When a return is detected at iteration ``n``
    the returning point is appended and ``period`` is ``n - m`` where ``m`` is
    the index of the matched earlier point.
    """
    word = parse_word(step)
    if not word:
        raise ValueError("orbit step must be a non-empty word")
    tol = DEFAULT_TOL if tol is None else tol
    points = [t]
    if t.mode == RATIONAL:
        seen = {_normal_form(t): 0}
        cur = t
        for n in range(1, max_iter + 1):
            cur = apply_aut_word(word, cur)
            points.append(cur)
            key = _normal_form(cur)
            if key in seen:
                return OrbitResult(points, n - seen[key], word)
            seen[key] = n
        return OrbitResult(points, None, word)

    history = [np.array([m.entries() for m in t], dtype=complex)]
    cur = t
    for n in range(1, max_iter + 1):
        cur = apply_aut_word(word, cur)
        points.append(cur)
        vec = np.array([m.entries() for m in cur], dtype=complex)
        past = np.stack(history)
        match = np.ones(len(history), dtype=bool)
        for s in range(3):
            w = vec[s]
            p = int(np.argmax(np.abs(w)))
            den = past[:, s, p]
            ok = np.abs(den) > tol * abs(w[p])
            safe = np.where(ok, den, 1)
            diff = np.abs(past[:, s, :] / safe[:, None] - w / w[p]).max(axis=1)
            match &= ok & (diff <= tol)
        hits = np.flatnonzero(match)
        if hits.size:
            return OrbitResult(points, n - int(hits[0]), word)
        history.append(vec)
    return OrbitResult(points, None, word)


# ---------------------------------------------------------------------------
# gauge group


def _det2(g: Matrix):
    return g[0, 0] * g[1, 1] - g[0, 1] * g[1, 0]


def _check_unimodular(g: Matrix, name: str, tol: float | None):
    if g.n != 2:
        raise ValueError(f"{name} must be 2x2")
    d = _det2(g)
    if not is_zero(d - 1, tol):
        raise ConstraintError(f"det {name} = {d} != 1", relation=f"det {name} == 1", residual=d - 1)


def _inv2(g: Matrix) -> Matrix:
    d = _det2(g)
    if d == 0:
        raise SingularMatrixError("gauge matrix is singular")
    return Matrix([[g[1, 1] / d, -g[0, 1] / d], [-g[1, 0] / d, g[0, 0] / d]], g.mode)


@dataclass(frozen=True)
class GaugeElement:
    """``(g1, g2, g3)`` with each ``gi`` in SL(2)."""

    g1: Matrix
    g2: Matrix
    g3: Matrix
    tol: float | None = None

    def __post_init__(self):
        for name in ("g1", "g2", "g3"):
            _check_unimodular(getattr(self, name), name, self.tol)

    @classmethod
    def identity(cls, mode: str = RATIONAL) -> "GaugeElement":
        i = Matrix.identity(2, mode)
        return cls(i, i, i)

    def __iter__(self):
        return iter((self.g1, self.g2, self.g3))

    @property
    def mode(self) -> str:
        return self.g1.mode


@dataclass(frozen=True)
class DiagonalGauge:
    """Element ``diag(t_i, 1/t_i)`` of the diagonal subgroup."""

    t1: object
    t2: object
    t3: object

    def __post_init__(self):
        for name in ("t1", "t2", "t3"):
            if getattr(self, name) == 0:
                raise ConstraintError(f"{name} must be nonzero", relation=f"{name} != 0")

    def to_gauge(self, mode: str | None = None) -> GaugeElement:
        mode, ts = as_scalars(self.t1, self.t2, self.t3, mode=mode)
        one = to_scalar(1, mode)
        gs = [Matrix.diag(t, one / t, mode=mode) for t in ts]
        return GaugeElement(*gs)


def apply_gauge(g, t: Triplet) -> Triplet:
    """Similarity action ``A -> (g1 x g2)^-1 A (g1 x g2)`` and likewise on B, C."""
    if isinstance(g, DiagonalGauge):
        g = g.to_gauge(t.mode)
    g1, g2, g3 = g
    inv = [_inv2(x) for x in (g1, g2, g3)]

    def conj(m, i, j):
        return kron(inv[i], inv[j]) @ m @ kron((g1, g2, g3)[i], (g1, g2, g3)[j])

    a, b, c = t
    return Triplet(conj(a, 0, 1), conj(b, 0, 2), conj(c, 1, 2))


def conjugate_gauge(gen: str, g: GaugeElement) -> GaugeElement:
    """``g'`` with ``K . g = g' . K``: transposed inverses on the slots K transposes."""
    gen = normalize_generator(gen)
    ti = [_inv2(x).T for x in g]
    g1, g2, g3 = g
    if gen == "Ka":
        return GaugeElement(ti[0], ti[1], g3)
    if gen == "Kb":
        return GaugeElement(ti[0], g2, ti[2])
    return GaugeElement(g1, ti[1], ti[2])
