"""Random non-degenerate parameter samples for every family.

Exact families draw small integers from ``[-9, 9] \\ {0}``; samples on a
singular locus are rejected and the rejection is logged.
"""
from __future__ import annotations

import logging
import math
import random
import warnings
from fractions import Fraction
from typing import Callable

from .core import (
    ConstraintError,
    DegenerateWarning,
    Matrix,
    RATIONAL,
    SingularMatrixError,
    Triplet,
)
from .families import baxter, eightvertex, fivevertex, sixvertex
from .symmetry import GENERATORS, apply_K

log = logging.getLogger(__name__)


def nonzero_int(rng: random.Random, bound: int = 9) -> int:
    n = 0
    while n == 0:
        n = rng.randint(-bound, bound)
    return n


def _ints(rng, n):
    return [nonzero_int(rng) for _ in range(n)]


def _unimodular(rng: random.Random) -> Matrix:
    """Product of three elementary integer matrices."""
    m = Matrix.identity(2, RATIONAL)
    for i in range(3):
        n = rng.randint(-3, 3)
        e = [[1, n], [0, 1]] if i % 2 == 0 else [[1, 0], [n, 1]]
        m = m @ Matrix(e, RATIONAL)
    return m


def _draw_5v1(rng):
    d, q1, q2, q3, g1, g2, g3 = _ints(rng, 7)
    return fivevertex.FiveVertex1Params(d, q1, q2, q3, g1, g2, g3)


def _draw_5vff_explicit(rng):
    p1, p2, q2, q3, g12, g13 = _ints(rng, 6)
    g23 = Fraction(g13 * (1 - p2 * q2), g12)
    if g23 == 0:
        raise ConstraintError("1 - p2*q2 vanishes", relation="1 - p2*q2 != 0")
    return fivevertex.FiveVertexFFParams(p1, p2, q2, q3, fivevertex.ExplicitGauge(g12, g13, g23))


def _draw_5vff_uniform(rng):
    p1, p2, q2, q3, q1, p3 = _ints(rng, 6)
    alpha = rng.randint(-2, 2)
    return fivevertex.FiveVertexFFParams(p1, p2, q2, q3, fivevertex.UniformGauge(alpha, q1, p3))


def _draw_6v_rational(rng):
    return sixvertex.SixVertexRational(*_ints(rng, 6))


def _draw_6vff(rng):
    hb, hc = _unimodular(rng), _unimodular(rng)
    pair = sixvertex.SL2Pair(hb, hc)
    for name, h in (("hatA", pair.hatA), ("hatB", hb), ("hatC", hc)):
        if h[0, 0] == 0 or h[1, 1] == 0:
            raise SingularMatrixError(f"{name} has a vanishing diagonal entry")
    return pair


def _draw_8v(rng):
    return eightvertex.EightVertexParams(*_ints(rng, 7))


def _draw_6v_trig(rng):
    gamma = rng.uniform(0.2, math.pi - 0.2)
    qs = [rng.choice((-1, 1)) * rng.uniform(0.5, 2.0) for _ in range(3)]
    return sixvertex.SixVertexTrig(gamma, *qs, rng.uniform(-2, 2), rng.uniform(-2, 2))


def _draw_baxter(rng):
    return baxter.BaxterParams(rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(0.2, 2.0), rng.uniform(0.0, 0.95))


# name -> (draw, build)
FAMILIES: dict[str, tuple[Callable, Callable]] = {
    "5v1": (_draw_5v1, fivevertex.build_5v_first),
    "5vff-explicit": (_draw_5vff_explicit, fivevertex.build_5v_ff),
    "5vff-uniform": (_draw_5vff_uniform, fivevertex.build_5v_ff),
    "6v-asym-rational": (_draw_6v_rational, sixvertex.build_6v_asym),
    "6vff": (_draw_6vff, sixvertex.build_6v_ff),
    "8v": (_draw_8v, eightvertex.build_8v),
    "6v-asym-trig": (_draw_6v_trig, sixvertex.build_6v_asym),
    "8v-baxter": (_draw_baxter, baxter.build_8v_baxter),
}
EXACT_FAMILIES = ("5v1", "5vff-explicit", "5vff-uniform", "6v-asym-rational", "6vff", "8v")
FLOAT_FAMILIES = ("6v-asym-trig", "8v-baxter")


def _aut_safe(t: Triplet) -> bool:
    try:
        for gen in GENERATORS:
            apply_K(gen, apply_K(gen, t))
    except SingularMatrixError:
        return False
    return True


def sample_family(
    family: str,
    n: int,
    rng: random.Random | int | None = None,
    aut_safe: bool = False,
    accept: Callable | None = None,
    max_tries: int = 100_000,
):
    """``n`` pairs ``(params, triplet)`` avoiding constraint violations and degenerate strata.

    With ``aut_safe`` every generator (and its square) must be applicable,
    i.e. the sample avoids the singular loci of the inversions.
    """
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    draw, build = FAMILIES[family]
    out, rejected = [], 0
    while len(out) < n:
        if len(out) + rejected >= max_tries:
            raise RuntimeError(f"{family}: only {len(out)} of {n} samples after {max_tries} draws")
        try:
            with warnings.catch_warnings():
                warnings.simplefilter("error", DegenerateWarning)
                params = draw(rng)
                t = build(params)
        except (ConstraintError, SingularMatrixError, DegenerateWarning) as exc:
            rejected += 1
            log.debug("%s: rejected sample (%s)", family, exc)
            continue
        if aut_safe and not _aut_safe(t):
            rejected += 1
            log.debug("%s: rejected sample on an inversion singular locus: %s", family, params)
            continue
        if accept is not None and not accept(params, t):
            rejected += 1
            log.debug("%s: rejected by caller: %s", family, params)
            continue
        out.append((params, t))
    if rejected:
        log.info("%s: %d samples rejected on singular loci", family, rejected)
    return out
