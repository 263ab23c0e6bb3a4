"""Acceptance gate: one test (or a few) per criterion, one summary line each."""
import json
import math
import random
import time
import warnings
from fractions import Fraction
from pathlib import Path

import pytest

from test_elliptic import _oracle
from yangbax.cli import EXIT_CONSTRAINT, EXIT_FAIL, EXIT_OK, EXIT_USAGE, main
from yangbax.core import (
    RATIONAL,
    DegenerateWarning,
    ConstraintError,
    Matrix,
    SingularMatrixError,
    Triplet,
    projective_distance,
    residual_norm,
    triplet_projective_distance,
    triplet_projective_eq,
    ybe_residual,
)
from yangbax.document import TripletDocument
from yangbax.elliptic import complete_K, jacobi
from yangbax.families.baxter import (
    BaxterParams,
    aut_elliptic_action,
    build_8v_baxter,
    elliptic_invariants,
    elliptic_xyzv,
)
from yangbax.families.eightvertex import EightVertexParams, build_8v, k_map_8v
from yangbax.families.sixvertex import (
    SixVertexRational,
    SixVertexTrig,
    build_6v_asym,
    factorization,
    r6v,
)
from yangbax.invariants import (
    eight_vertex_invariants_from_matrix,
    eight_vertex_invariants_from_params,
    p_polys,
    six_vertex_invariants,
)
from yangbax.sampling import EXACT_FAMILIES, FLOAT_FAMILIES, sample_family
from yangbax.symmetry import (
    GENERATORS,
    LEFT_TO_RIGHT,
    GaugeElement,
    apply_K,
    apply_gauge,
    conjugate_gauge,
    orbit,
    projective_inverse,
    transpose_left,
)

GOLDEN = Path(__file__).parent / "golden"


def _max_float_residual(t):
    return float(residual_norm(t))


# 1 -------------------------------------------------------------------------


def test_criterion_1_exact_residuals(criterion):
    start = time.perf_counter()
    worst = {}
    for family in EXACT_FAMILIES:
        res = [ybe_residual(t).max_abs() for _, t in sample_family(family, 100, 1001)]
        worst[family] = max(res)
    elapsed = time.perf_counter() - start
    zero = all(w == 0 for w in worst.values())
    criterion(1, "exact zero", zero, f"{len(worst)} families x 100")
    criterion(1, "runtime", elapsed < 5.0, f"{elapsed:.2f} s")
    assert zero, worst
    assert elapsed < 5.0


# 2 -------------------------------------------------------------------------


def test_criterion_2_float_residuals(criterion):
    worst = {f: max(_max_float_residual(t) for _, t in sample_family(f, 100, 2002)) for f in FLOAT_FAMILIES}
    ok = all(w < 1e-9 for w in worst.values())
    criterion(2, "float residual", ok, ", ".join(f"{k} {v:.1e}" for k, v in worst.items()))
    assert ok, worst


# 3 -------------------------------------------------------------------------


def _solution_check(t, tol=1e-9):
    if t.mode == RATIONAL:
        return ybe_residual(t).is_zero()
    return _max_float_residual(t) < tol


def test_criterion_3_preservation_and_involution(criterion):
    bad = []
    for family in EXACT_FAMILIES + FLOAT_FAMILIES:
        for _, t in sample_family(family, 10, 3003, aut_safe=True):
            for gen in GENERATORS:
                img = apply_K(gen, t)
                if not _solution_check(img):
                    bad.append((family, gen, "residual"))
                back = apply_K(gen, img)
                same = triplet_projective_eq(back, t) if t.mode == RATIONAL else triplet_projective_distance(back, t) < 1e-9
                if not same:
                    bad.append((family, gen, "K^2"))
    criterion(3, "preservation + K^2 (right-to-left)", not bad, f"{len(bad)} failures")
    assert not bad, bad[:5]


def test_criterion_3_left_to_right_reading_fails(criterion):
    # the left-to-right reading of the composite strings must break preservation on some family
    broken = []
    for family in EXACT_FAMILIES + FLOAT_FAMILIES:
        for _, t in sample_family(family, 10, 3004, aut_safe=True):
            for gen in GENERATORS:
                try:
                    img = apply_K(gen, t, LEFT_TO_RIGHT)
                except SingularMatrixError:
                    broken.append((family, gen))
                    continue
                if not _solution_check(img):
                    broken.append((family, gen))
    criterion(3, "left-to-right demonstrated failing", bool(broken),
              "both readings coincide on every sample" if not broken else f"{len(broken)} failures")
    assert broken, "left-to-right reading preserved every solution"


# 4 -------------------------------------------------------------------------


def _random_sl2(rng):
    a = Fraction(rng.choice([i for i in range(-5, 6) if i]), rng.randint(1, 4))
    b = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
    c = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
    return Matrix([[a, b], [c, (1 + b * c) / a]], RATIONAL)


def _random_matrix(rng):
    return Matrix([[rng.randint(-4, 4) for _ in range(4)] for _ in range(4)], RATIONAL)


def test_criterion_4_gauge_intertwining(criterion):
    rng = random.Random(4004)
    solutions = [t for _, t in sample_family("8v", 25, rng)]
    checked, bad = 0, 0
    for n in range(50):
        g = GaugeElement(_random_sl2(rng), _random_sl2(rng), _random_sl2(rng))
        t = solutions[n] if n < 25 else Triplet(*(_random_matrix(rng) for _ in range(3)))
        for gen in GENERATORS:
            try:
                lhs = apply_K(gen, apply_gauge(g, t))
                rhs = apply_gauge(conjugate_gauge(gen, g), apply_K(gen, t))
            except SingularMatrixError:
                continue
            checked += 1
            bad += not triplet_projective_eq(lhs, rhs)
    ok = bad == 0 and checked >= 100
    criterion(4, "K g = g' K", ok, f"{checked} checks, {bad} mismatches")
    assert ok


# 5 -------------------------------------------------------------------------


def test_criterion_5_invariant_constancy(criterion):
    rng = random.Random(5005)
    done, bad = 0, 0
    while done < 100:
        p = EightVertexParams(*(rng.choice([i for i in range(-9, 10) if i]) for _ in range(7)))
        base = eight_vertex_invariants_from_params(*p.xyzv)
        if base.Delta1 is None or base.Delta2 is None:
            continue
        try:
            images = [k_map_8v(g, p) for g in GENERATORS]
            moved = [eight_vertex_invariants_from_params(*q.xyzv) for q in images]
        except (ConstraintError, ZeroDivisionError):
            continue
        done += 1
        bad += any(m != base for m in moved)
        x, y, z, v = p.xyzv
        for perm in ((y, x, z), (z, y, x), (x, z, y), (y, z, x), (z, x, y)):
            bad += eight_vertex_invariants_from_params(*perm, v) != base
    criterion(5, "invariance", bad == 0, "100 samples, 3 maps, 5 permutations")

    target = (Fraction(-91, 15), Fraction(-46, 45))
    from_params = eight_vertex_invariants_from_params(2, 3, 5, 7)
    values_ok = (from_params.Delta1, from_params.Delta2) == target
    for m in build_8v(EightVertexParams(1, 1, 1, 2, 3, 5, 7)):
        inv = eight_vertex_invariants_from_matrix(m)
        pp = p_polys(m)
        anti = m[0, 3] * m[1, 2] * m[2, 1] * m[3, 0]
        diag = m[0, 0] * m[1, 1] * m[2, 2] * m[3, 3]
        values_ok &= (inv.Delta1, inv.Delta2) == target
        values_ok &= -2 * pp.p9 / pp.p5 == target[0] and anti / diag == target[1]
    criterion(5, "(2,3,5,7) values", values_ok, "-91/15, -46/45")
    assert bad == 0
    assert values_ok


# 6 -------------------------------------------------------------------------


def test_criterion_6_six_vertex_structure(criterion):
    sample = [six_vertex_invariants(m).Delta for m in build_6v_asym(SixVertexRational(1, 2, 3, 4, 5, 6))]
    global_ok = sample == [Fraction(32, 27)] * 3
    bad_delta, bad_fact, bad_cross = 0, 0, 0
    for _, t in sample_family("6v-asym-rational", 50, 6006):
        A, B, C = (six_vertex_invariants(m) for m in t)
        bad_delta += not (A.Delta == B.Delta == C.Delta)
        bad_fact += factorization(t)[0] != 0
        bad_cross += not (A.delta_prime == B.delta_prime and A.delta == C.delta_prime and B.delta == C.delta)
    for _, t in sample_family("6vff", 50, 6007):
        bad_fact += factorization(t)[1] != 0
    for _, t in sample_family("6v-asym-trig", 50, 6008):
        A, B, C = (six_vertex_invariants(m) for m in t)
        bad_delta += max(abs(A.Delta - B.Delta), abs(A.Delta - C.Delta)) > 1e-8 * max(1.0, abs(A.Delta))
        bad_cross += abs(A.delta_prime - B.delta_prime) > 1e-8 * max(1.0, abs(A.delta_prime))
    criterion(6, "global Delta (32/27)", global_ok and bad_delta == 0)
    criterion(6, "factorization", bad_fact == 0)
    criterion(6, "cross-slot delta/delta'", bad_cross == 0)
    assert global_ok and bad_delta == 0 and bad_fact == 0 and bad_cross == 0


# 7 -------------------------------------------------------------------------


def test_criterion_7_shift_law_and_orbits(criterion):
    worst = 0.0
    rng = random.Random(7007)
    for _ in range(20):
        g, q, qp, lam = rng.uniform(0.2, 1.4), rng.uniform(0.5, 2), rng.uniform(0.5, 2), rng.uniform(-1, 1)
        m = r6v(g, q, qp, lam)
        step = transpose_left(projective_inverse(transpose_left(projective_inverse(m))))
        worst = max(worst, projective_distance(step, r6v(g, q, qp, lam + 2 * g)))
    criterion(7, "(t_l I)^2 shift", worst < 1e-10, f"max {worst:.1e}")
    closed = orbit(build_6v_asym(SixVertexTrig(math.pi / 4, 1, 1, 1, 0.3, 0.2)), "a,b,a,b").period
    open_ = orbit(build_6v_asym(SixVertexTrig(1.0, 1, 1, 1, 0.3, 0.2)), "a,b,a,b", max_iter=512).period
    criterion(7, "period 4 at pi/4", closed == 4, f"period {closed}")
    criterion(7, "no period <= 512 at 1", open_ is None)
    assert worst < 1e-10 and closed == 4 and open_ is None


# 8 -------------------------------------------------------------------------

ELLIPTIC = BaxterParams(0.3, 0.5, 1.1, 0.6)


def test_criterion_8_moduli(criterion):
    x, y, z, v = elliptic_xyzv(ELLIPTIC)
    inv = eight_vertex_invariants_from_params(x, y, z, v)
    e1, e2 = elliptic_invariants(ELLIPTIC.gamma, ELLIPTIC.k)
    d1_ok = abs(inv.Delta1 - e1) < 1e-10
    d2_ok = abs(inv.Delta2 - e2) < 1e-10
    criterion(8, "Delta2 = sn^4 k^2", d2_ok, f"diff {abs(inv.Delta2 - e2):.1e}")
    criterion(8, "Delta1 = -2 cn dn", d1_ok, f"got {inv.Delta1.real:.6f}, target {e1:.6f}")
    assert d2_ok
    assert d1_ok


def test_criterion_8_baxter_triplet(criterion):
    res = _max_float_residual(build_8v_baxter(ELLIPTIC))
    rep = aut_elliptic_action(ELLIPTIC)
    t0 = build_8v_baxter(BaxterParams(0.3, 0.5, 1.1, 0.0))
    corners = max(abs(m[i, j]) for m in t0 for i, j in ((0, 3), (3, 0)))
    criterion(8, "residual", res < 1e-9, f"{res:.1e}")
    criterion(8, "KaKb: rho -> rho + gamma", rep.chi_shift < 1e-8, f"{rep.chi_shift:.1e}")
    criterion(8, "k = 0 anti-corners", corners < 1e-14)
    assert res < 1e-9 and rep.chi_shift < 1e-8 and corners < 1e-14


# 9 -------------------------------------------------------------------------


def test_criterion_9_elliptic_quality(criterion):
    rng = random.Random(9009)
    worst = 0.0
    for _ in range(1000):
        k = rng.uniform(0.0, 0.99)
        u, w = rng.uniform(-10, 10), rng.uniform(-10, 10)
        su, cu, du = jacobi(u, k)
        sw, cw, dw = jacobi(w, k)
        den = 1 - k * k * su * su * sw * sw
        s, c, d = jacobi(u + w, k)
        K = complete_K(k)
        sK, cK, dK = jacobi(K, k)
        worst = max(
            worst,
            abs(su * su + cu * cu - 1),
            abs(du * du + k * k * su * su - 1),
            abs(s - (su * cw * dw + sw * cu * du) / den),
            abs(c - (cu * cw - su * sw * du * dw) / den),
            abs(d - (du * dw - k * k * su * sw * cu * cw) / den),
            abs(sK - 1), abs(cK), abs(dK - math.sqrt(1 - k * k)),
        )
    oracle = 0.0
    for _ in range(100):
        k = rng.uniform(0.0, 0.95)
        u = rng.uniform(-3, 3) * complete_K(k)
        oracle = max(oracle, max(abs(a - b) for a, b in zip(jacobi(u, k), _oracle(u, k))))
    criterion(9, "identities", worst < 1e-11, f"max {worst:.1e}")
    criterion(9, "integral inversion oracle", oracle < 1e-10, f"max {oracle:.1e}")
    assert worst < 1e-11 and oracle < 1e-10


# 10 ------------------------------------------------------------------------


def _cli(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out


def test_criterion_10_cli(tmp_path, capsys, criterion):
    doc = tmp_path / "t.json"
    goldens_ok = True
    code, out = _cli(["build", "8v", "x=2", "y=3", "z=5", "v=7"], capsys)
    goldens_ok &= code == 0 and out == (GOLDEN / "build_8v.json").read_text()
    doc.write_text(out)
    for argv, name in (
        (["verify", "--in", str(doc)], "verify_8v.txt"),
        (["invariants", "--in", str(doc)], "invariants_8v.json"),
        (["transform", "--in", str(doc), "--gauge", "t1=2,t2=3,t3=5"], "transform_gauge.json"),
        (["convert", "--from", "xyzv", "--to", "q", "x=2", "y=3", "z=6", "v=7"], "convert_xyzv_q_exact.json"),
        (["selftest", "--seed", "0", "--samples", "5"], "selftest.txt"),
    ):
        code, out = _cli(argv, capsys)
        goldens_ok &= code == 0 and out == (GOLDEN / name).read_text()
    trig, csv_path = tmp_path / "trig.json", tmp_path / "o.csv"
    _cli(["build", "6v-asym-trig", "gamma=pi/4", "q1=1", "q2=1", "q3=1", "lambdaA=0.3", "lambdaC=0.2", "--out", str(trig)],
         capsys)
    code, out = _cli(["orbit", "--in", str(trig), "--word", "a,b,a,b", "--csv", str(csv_path)], capsys)
    goldens_ok &= out == (GOLDEN / "orbit_summary.json").read_text()
    goldens_ok &= csv_path.read_text() == (GOLDEN / "orbit.csv").read_text()
    src = tmp_path / "w.json"
    _cli(["build", "8v", "x=2", "y=3", "z=5", "v=11", "--out", str(src)], capsys)
    code, out = _cli(["transform", "--in", str(src), "--word", "a,b"], capsys)
    goldens_ok &= out == (GOLDEN / "transform_word.json").read_text()

    again = tmp_path / "again.json"
    TripletDocument.load(doc).save(again)
    round_trip = again.read_text() == doc.read_text() and TripletDocument.load(again).triplet == TripletDocument.load(doc).triplet

    codes = []
    data = json.loads(doc.read_text())
    data["matrices"]["A"][1][1] = "3/1"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(data))
    codes.append(_cli(["verify", "--in", str(doc)], capsys)[0] == EXIT_OK)
    codes.append(_cli(["verify", "--in", str(bad)], capsys)[0] == EXIT_FAIL)
    codes.append(_cli(["verify", "--in", str(tmp_path / "missing.json")], capsys)[0] == EXIT_USAGE)
    codes.append(_cli(["build", "5vff", "p1=2", "p2=3", "q2=5", "q3=7", "g12=1", "g13=1", "g23=1"], capsys)[0]
                 == EXIT_CONSTRAINT)
    criterion(10, "goldens", goldens_ok)
    criterion(10, "bit-exact rational round trip", round_trip)
    criterion(10, "exit codes", all(codes))
    assert goldens_ok and round_trip and all(codes)
