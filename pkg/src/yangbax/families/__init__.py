"""Constructors for the five-, six- and eight-vertex solution families."""
from .baxter import (
    BaxterParams,
    aut_elliptic_action,
    aut_elliptic_action_check,
    build_8v_baxter,
    elliptic_Q,
    elliptic_invariants,
    elliptic_q,
    elliptic_xyzv,
    r_baxter,
)
from .eightvertex import (
    EightVertexDerived,
    EightVertexParams,
    build_8v,
    derived_8v,
    k_map_8v,
    q_roots,
    q_squares_8v,
    r8v_gaugefixed,
    symmetric_gauge_abc,
    symmetric_gauge_params,
    xyzv_from_q,
)
from .fivevertex import (
    ExplicitGauge,
    FiveVertex1Params,
    FiveVertexFFParams,
    UniformGauge,
    build_5v_ff,
    build_5v_first,
    build_5v_raw,
    constant_5v,
    r5a,
    r5b,
)
from .sixvertex import (
    SixVertexRational,
    SixVertexTrig,
    SL2Pair,
    build_6v_asym,
    build_6v_ff,
    euler_sl2,
    factorization,
    perm_plus_identity,
    r6v,
    sl2_embed,
    trig_relations_check,
)
