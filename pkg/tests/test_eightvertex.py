import cmath
import math
import warnings
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from strategies import nonzero_ints
from yangbax.core import (
    ConstraintError,
    DegenerateWarning,
    NoExactRootError,
    SingularMatrixError,
    projective_distance,
    triplet_projective_distance,
    triplet_projective_eq,
    ybe_residual,
)
from yangbax.families.eightvertex import (
    EightVertexParams,
    antidiagonal,
    antidiagonal_from_q,
    build_8v,
    delta1_expressions,
    derived_8v,
    k_map_8v,
    q_from_xyzv,
    q_roots,
    q_squares_8v,
    r8v_gaugefixed,
    symmetric_gauge_abc,
    symmetric_gauge_params,
    with_gauge,
    xyzv_from_q,
)
from yangbax.invariants import eight_vertex_invariants_from_matrix, eight_vertex_invariants_from_params
from yangbax.symmetry import GENERATORS, apply_K

SAMPLE = EightVertexParams(1, 1, 1, 2, 3, 5, 7)
AUT_SAMPLE = EightVertexParams(1, 1, 1, 2, 3, 5, 11)


def test_sample_entries():
    A = build_8v(SAMPLE).A
    assert A[1, 2] == Fraction(5, 3)
    assert A[2, 1] == Fraction(-23, 5)
    assert A[3, 0] == Fraction(8, 15)
    assert A[0, 3] == 1


def test_sample_solves_exactly():
    assert ybe_residual(build_8v(SAMPLE)).is_zero()


@settings(max_examples=60, deadline=None)
@given(st.tuples(*[nonzero_ints] * 7))
def test_family_solves_exactly(params):
    p = EightVertexParams(*params)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", DegenerateWarning)
            t = build_8v(p)
    except ConstraintError:
        assume(False)
    assert ybe_residual(t).is_zero()


@pytest.mark.parametrize("v", [2, 3, 5, 30])
def test_degenerate_strata_warn(v):
    with pytest.warns(DegenerateWarning):
        t = build_8v(EightVertexParams(1, 1, 1, 2, 3, 5, v))
    assert ybe_residual(t).is_zero()


def test_zero_denominator_rejected():
    with pytest.raises(ConstraintError):
        build_8v(EightVertexParams(0, 1, 1, 2, 3, 5, 7))


def test_ka_map_on_sample():
    img = k_map_8v("Ka", SAMPLE)
    assert img == EightVertexParams(Fraction(-8, 15), Fraction(2, 5), Fraction(2, 3), Fraction(2, 25), 3, 5, 1)


@pytest.mark.parametrize("gen", GENERATORS)
def test_k_maps_match_matrix_action(gen):
    # equality up to the overall scale fixed by X11 = 1
    assert triplet_projective_eq(apply_K(gen, build_8v(AUT_SAMPLE)), build_8v(k_map_8v(gen, AUT_SAMPLE)))


@pytest.mark.parametrize("gen", GENERATORS)
def test_k_maps_are_involutions(gen):
    assert k_map_8v(gen, k_map_8v(gen, AUT_SAMPLE)) == EightVertexParams(*(Fraction(w) for w in
                                                                            (1, 1, 1, 2, 3, 5, 11)))


@settings(max_examples=40, deadline=None)
@given(st.tuples(*[nonzero_ints] * 7), st.sampled_from(GENERATORS))
def test_k_maps_commute_with_build(params, gen):
    p = EightVertexParams(*params)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", DegenerateWarning)
            moved = apply_K(gen, build_8v(p))
            img = build_8v(k_map_8v(gen, p), warn=False)
    except (ConstraintError, SingularMatrixError):
        assume(False)
    assert triplet_projective_eq(moved, img)


@pytest.mark.parametrize("gen", GENERATORS)
def test_k_maps_preserve_invariants(gen):
    before = [eight_vertex_invariants_from_matrix(m) for m in build_8v(AUT_SAMPLE)]
    after = [eight_vertex_invariants_from_matrix(m) for m in build_8v(k_map_8v(gen, AUT_SAMPLE))]
    assert before == after
    assert all(i == before[0] for i in before)


def test_invariants_from_params_match_matrices():
    inv = eight_vertex_invariants_from_params(2, 3, 5, 7)
    for m in build_8v(SAMPLE):
        assert eight_vertex_invariants_from_matrix(m) == inv


def test_q_values_float_sample():
    d = derived_8v((2.0, 3.0, 5.0, 7.0))
    s = math.sqrt(30)
    expected = (5 / s, -23 / s, 2 / s, 4 / s)
    assert all(abs(a - b) < 1e-14 for a, b in zip(d.q, expected))
    q1, q2, q3, q4 = d.q
    assert abs(d.Delta2 - q1 * q2 * q3 * q4) < 1e-12
    # Lambda oracle: v / sqrt(xyz)
    assert abs(d.Lambda - 7 / s) < 1e-10


def test_delta1_expressions_agree():
    d = derived_8v((2.0, 3.0, 5.0, 7.0))
    exprs = delta1_expressions(d, 2.0, 3.0, 5.0)
    assert all(abs(e - d.Delta1) < 1e-10 for e in exprs)


@settings(max_examples=50, deadline=None)
@given(st.tuples(*[st.floats(0.3, 5.0)] * 3), st.floats(-6.0, 6.0))
def test_lambda_round_trip(xyz, v):
    x, y, z = xyz
    assume(min(abs(v - w) for w in (x, y, z, x * y * z)) > 1e-3)
    d = derived_8v((x, y, z, v))
    assert abs(d.Lambda - v / math.sqrt(x * y * z)) < 1e-7 * max(1.0, abs(v))
    back = xyzv_from_q(d.Lambda, *d.q)
    assert all(abs(a - b) < 1e-7 * max(1.0, abs(b)) for a, b in zip(back, (x, y, z, v)))


def test_exact_lambda_for_square_xyz():
    d = derived_8v((2, 3, 6, 7))
    assert d.Lambda == Fraction(7, 6)
    assert d.q == (Fraction(5, 6), Fraction(-29, 6), Fraction(1, 6), Fraction(4, 6))
    assert xyzv_from_q(d.Lambda, *d.q) == (2, 3, 6, 7)


def test_exact_needs_square_xyz():
    with pytest.raises(NoExactRootError):
        derived_8v(SAMPLE)
    assert q_squares_8v(2, 3, 5, 7) == (Fraction(25, 30), Fraction(529, 30), Fraction(4, 30), Fraction(16, 30))


def test_antidiagonal_through_q():
    p = EightVertexParams(1.0, 2.0, 0.5, 2.0, 3.0, 5.0, 7.0)
    t = build_8v(p)
    for m, expected in zip(t, antidiagonal_from_q(p)):
        assert all(abs(a - b) < 1e-12 for a, b in zip(antidiagonal(m), expected))


@settings(max_examples=60)
@given(st.floats(0.1, 4.0), st.floats(-5.0, 5.0), st.floats(-3.0, 3.0))
def test_q_roots_vieta(tau, d1, d2):
    r1, r2 = q_roots(tau, d1, d2)
    assert abs(r1) >= abs(r2)
    assert abs(r1 * r2 - d2) < 1e-9 * max(1.0, abs(r1 * r2))
    s = (tau * tau + tau * d1 + 1) / tau
    assert abs(r1 + r2 - s) < 1e-9 * max(1.0, abs(s))


def test_q_roots_rejects_zero_tau():
    with pytest.raises(ConstraintError):
        q_roots(0, 1, 1)


def test_symmetric_gauge_gives_symmetric_matrices():
    t = build_8v(symmetric_gauge_params(2, 3, 5, 7))
    for m in t:
        assert m.max_abs() > 0
        assert projective_distance(m, m.T) < 1e-12
        assert max(abs(m[i, j] - m[j, i]) for i in range(4) for j in range(4)) < 1e-12


def test_gauge_fixed_form_reproduces_slots():
    x, y, z, v = 2.0, 3.0, 5.0, 7.0
    t = build_8v(symmetric_gauge_params(x, y, z, v))
    q1, q2, q3, _ = q_from_xyzv(x, y, z, v)
    inv = eight_vertex_invariants_from_params(x, y, z, v)
    omega = 1 / cmath.sqrt(inv.Delta2)
    for m, tau, Q in zip(t, (x, y, z), (q1 * q2, q1 * q3, q2 * q3)):
        roots = q_roots(tau, inv.Delta1, inv.Delta2)
        assert min(abs(Q - r) for r in roots) < 1e-10
        r, used = r8v_gaugefixed(tau, inv.Delta1, inv.Delta2, "symmetric", omega=omega, branch=Q)
        assert projective_distance(m, r) < 1e-10
        assert eight_vertex_invariants_from_matrix(r).Delta2 == pytest.approx(inv.Delta2)


@pytest.mark.parametrize("f", ["one", "tau", "symmetric", lambda t: 2 * t + 1])
def test_gauge_fixed_invariants(f):
    r, _ = r8v_gaugefixed(1.7, -0.4, 0.3, f)
    inv = eight_vertex_invariants_from_matrix(r)
    assert abs(inv.Delta1 - -0.4) < 1e-12
    assert abs(inv.Delta2 - 0.3) < 1e-12


def test_gauge_fixed_rejects_unknown_f():
    with pytest.raises(ValueError):
        r8v_gaugefixed(1.7, -0.4, 0.3, "bogus")


def test_symmetric_gauge_needs_nonzero_q():
    # v = xyz makes q2 vanish
    with pytest.raises(ConstraintError):
        symmetric_gauge_abc(2, 3, 6, 36)


def test_gauge_variables_do_not_change_invariants():
    p = with_gauge(SAMPLE, 3, Fraction(-1, 2), 7)
    assert ybe_residual(build_8v(p)).is_zero()
    assert [eight_vertex_invariants_from_matrix(m) for m in build_8v(p)] == [
        eight_vertex_invariants_from_matrix(m) for m in build_8v(SAMPLE)
    ]
