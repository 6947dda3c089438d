"""Acceptance suite: ten numbered criteria, one pass/fail line each.

Each test prints its own "criterion N PASS/FAIL" line; run with -v (or -s)
to see them.  Criterion 7 for alpha = 3 requires a four-step resolution of
k over a 14-variable Gorenstein quotient whose step-4 kernel basis is an
8 GB dense matrix; that exceeds this machine's working budget, so the test
fails honestly with the infeasibility evidence (see the decisions ledger),
while the supporting facts (three linear steps over the extension, the
exact nonlinear step over R itself) are verified in criterion 7's
companion test.
"""

import time

import pytest

from gor.artinian import (
    canonical_module,
    is_superlevel,
    socle_dimensions,
    type_and_level,
    unimodality,
)
from gor.constructions import (
    build,
    ci_t_values,
    cm_hilbert,
    idealized_h_vector,
    idealized_hilbert,
    inequality_witness,
    reconstruct_R_from_idealization,
    roos_dual_module,
)
from gor.errors import InfeasibleSizeError
from gor.fields import GF, QQ
from gor.groebner import build_quotient
from gor.homology import (
    betti_over_S,
    euler_identity_check,
    gorenstein_symmetry_check,
    linear_steps,
    regularity,
    resolve_k_over_R,
    subadditivity_report,
    t_values,
    tor_of_module,
)
from gor.idealization import idealize, verify_idealization
from gor.series import gulliksen_check_1, gulliksen_check_2

F = GF(32003)


def report(n, ok, detail=""):
    line = f"criterion {n} {'PASS' if ok else 'FAIL'}"
    if detail:
        line += f": {detail}"
    print(line)


def quotient(family, **kw):
    return build_quotient(build(family, field=F, **kw))


def test_criterion_01_sec3_betti_table():
    t0 = time.time()
    R = quotient("roos4")
    B = betti_over_S(R)
    want = {(0, 0): 1, (1, 2): 6, (2, 3): 4, (2, 4): 9, (3, 5): 12, (4, 6): 4}
    ty, level = type_and_level(R)
    dt = time.time() - t0
    ok = B.beta == want and regularity(B) == 2 and (ty, level) == (4, True) \
        and is_superlevel(R) and dt < 5
    report(1, ok, f"betti, reg 2, type 4, superlevel in {dt:.1f}s")
    assert B.beta == want
    assert regularity(B) == 2
    assert (ty, level) == (4, True)
    assert is_superlevel(R)
    assert dt < 5


def test_criterion_02_sec3_idealization():
    t0 = time.time()
    R = quotient("roos4")
    res = idealize(R)
    B = betti_over_S(res.model)
    checks = verify_idealization(res, betti_fn=betti_over_S)
    dt = time.time() - t0
    ok = (
        res.ring.n == 8
        and regularity(B) == 3
        and res.is_quadratic()
        and type_and_level(res.model) == (1, True)
        and gorenstein_symmetry_check(B, res.model.top)
        and res.model.h_vector() == (1, 8, 8, 1)
        and checks["all_ok"]
        and dt < 60
    )
    report(2, ok, f"codim 8, reg 3, quadratic Gorenstein, (1,8,8,1) in {dt:.1f}s")
    assert res.ring.n == 8
    assert regularity(B) == 3
    assert res.is_quadratic()
    assert type_and_level(res.model) == (1, True)
    assert gorenstein_symmetry_check(B, res.model.top)
    assert res.model.h_vector() == (1, 8, 8, 1)
    assert checks["all_ok"]
    assert dt < 60


def test_criterion_03_sec3_codim_plus_type():
    R = quotient("roos4")
    ty, _ = type_and_level(R)
    ok = R.ring.n + ty == 8
    report(3, ok, f"codim + type = {R.ring.n + ty} meets the bound with equality")
    assert R.ring.n + ty == 8


def test_criterion_04_lemma42_cm_family():
    t0 = time.time()
    results = {}
    for m in (2, 3):
        R = quotient("cm", m=m)
        assert all(R.hf(i) == cm_hilbert(m, i) for i in range(m + 3))
        B = betti_over_S(R)
        assert regularity(B) == m
        assert t_values(B)[2] == m + 2
        assert is_superlevel(R)
        results[m] = time.time() - t0
    # non-Koszul detection at m = 2: first nonlinear syzygy at step 3
    # (frozen regression value from this engine, within the <= 6 allowance)
    prof = resolve_k_over_R(quotient("cm", m=2), 3)
    assert linear_steps(prof) == 2
    assert prof.graded(3) == {3: 24, 4: 5}
    ok = results[2] < 10 and results[3] < 300
    report(4, ok, f"m=2 at {results[2]:.1f}s, m=3 at {results[3]:.1f}s, "
                  "nonlinear step 3 at m=2")
    assert ok


def test_criterion_05_sec4_example_m3():
    t0 = time.time()
    R = quotient("cm", m=3)
    B = betti_over_S(R)
    want = {(0, 0): 1, (1, 2): 7, (2, 4): 21, (2, 5): 14, (3, 6): 105,
            (4, 7): 132, (5, 8): 70, (6, 9): 14}
    assert B.beta == want
    assert R.h_vector() == (1, 6, 14, 14)
    ts = t_values(B)
    assert subadditivity_report(ts) == [(1, 1)]

    res = idealize(R)
    assert res.model.h_vector() == (1, 20, 28, 20, 1)
    Bt = betti_over_S(res.model, max_i=2)
    tst = t_values(Bt)
    assert tst[1] == 2 and tst[2] == 5
    assert subadditivity_report({0: 0, 1: tst[1], 2: tst[2]}) == [(1, 1)]
    dt = time.time() - t0
    ok = dt < 600
    report(5, ok, f"full table of R, t1=2, t2=5 for the extension in {dt:.1f}s")
    assert ok


def test_criterion_06_theorem43_formula_suite():
    t0 = time.time()
    # the spec's criterion prints 1958 for the degree-3 entry; the paper's
    # proof text and the spec's own formula examples both give 1988, which
    # the exact formula confirms (see the decisions ledger)
    assert idealized_h_vector(7) == (1, 1444, 2092, 1988, 1820, 1988, 2092, 1444, 1)
    uni, idx = unimodality(idealized_h_vector(7))
    assert not uni and idx is not None
    cert = {"wlp_impossible": True, "non_unimodality_index": idx}
    assert cert["wlp_impossible"]
    assert idealized_hilbert(8, 3) == 6732 < 7191 == idealized_hilbert(8, 2)
    assert idealized_hilbert(9, 3) == 24054 < 25346 == idealized_hilbert(9, 2)
    assert idealized_hilbert(10, 1) == 58806 > 48279 == idealized_hilbert(10, 5)
    for m in range(7, 65):
        assert inequality_witness(m)["passes"]
    dt = time.time() - t0
    ok = dt < 1
    report(6, ok, f"formula suite (m = 7..64, both parities) in {dt:.2f}s")
    assert ok


def _sec5_common(alpha):
    R = quotient("roos-alpha", alpha=alpha)
    assert R.hilbert == [1, 6, 8]
    ty, level = type_and_level(R)
    assert (ty, level) == (8, True)
    assert is_superlevel(R)
    res = idealize(R)
    assert res.ring.n == 14
    assert res.model.top == 3  # reg of an Artinian module is its top degree
    assert res.model.h_vector() == (1, 14, 14, 1)
    assert res.is_quadratic()
    return res


def test_criterion_07_sec5_alpha2():
    t0 = time.time()
    res = _sec5_common(2)
    prof = resolve_k_over_R(res.model, 3)
    assert linear_steps(prof) == 2
    dt = time.time() - t0
    ok = dt < 600
    report(7, ok, f"alpha=2: linear for exactly 2 steps (probed to 3) in {dt:.1f}s")
    assert ok


def test_criterion_07_sec5_alpha3_probed_to_four_steps():
    # the criterion as stated: probe the resolution of k over the
    # 14-variable extension to alpha + 1 = 4 steps.  The step-4 kernel
    # basis is a 30408 x 32942 dense matrix (~8 GB), beyond this machine;
    # the companion test below carries the feasible part of the evidence.
    t0 = time.time()
    res = _sec5_common(3)
    try:
        prof = resolve_k_over_R(res.model, 4)
    except InfeasibleSizeError as exc:
        report(7, False, f"alpha=3 probe to 4 steps infeasible after "
                         f"{time.time() - t0:.0f}s ({exc})")
        pytest.fail(f"alpha=3 four-step probe exceeds the working budget: {exc}")
    assert linear_steps(prof) == 3
    report(7, True, f"alpha=3: linear for exactly 3 steps in {time.time() - t0:.1f}s")


def test_criterion_07_sec5_alpha3_supporting_evidence():
    # feasible part: three linear steps over the extension, and the exact
    # nonlinear step over R itself (Tor_4(k)_5 != 0 over R injects into
    # Tor over the extension via the split algebra retraction)
    t0 = time.time()
    R = quotient("roos-alpha", alpha=3)
    prof_R = resolve_k_over_R(R, 4)
    assert linear_steps(prof_R) == 3
    assert prof_R.graded(4).get(5, 0) > 0
    res = idealize(R)
    prof = resolve_k_over_R(res.model, 3)
    assert linear_steps(prof) == 3
    dt = time.time() - t0
    ok = dt < 3600
    report(7, ok, f"alpha=3 supporting: 3 linear steps over the extension, "
                  f"nonlinear step 4 over R, in {dt:.1f}s")
    assert ok


def test_criterion_08_sec5_internals():
    t0 = time.time()
    for a in (2, 3):
        assert reconstruct_R_from_idealization(a, field=F)["ok"]
        N = roos_dual_module(a, F)
        for i in (1, 2, 3):
            assert tor_of_module(N, i).get(i + 1, 0) == 0
    assert gulliksen_check_1(2, 2)
    assert gulliksen_check_2(2, 2)
    dt = time.time() - t0
    ok = dt < 900
    report(8, ok, f"reconstruction, Tor vanishing, Gulliksen order 2 in {dt:.1f}s")
    assert ok


CORPUS = [
    ("roos4", {}),
    ("cm", {"m": 2}),
    ("ci", {"degrees": (2, 2, 2)}),
    ("ci", {"degrees": (3, 2, 2)}),
    ("stanley", {}),
    ("roos-alpha", {"alpha": 2}),
]


def test_criterion_09_property_suites():
    for family, kw in CORPUS:
        Rp = build_quotient(build(family, field=F, **kw))
        B = betti_over_S(Rp)
        assert euler_identity_check(B, Rp.hilbert), family
        w = canonical_module(Rp)
        assert all(w.dim_at(-i) == Rp.hf(i) for i in range(Rp.top + 1)), family
        ty, _ = type_and_level(Rp)
        assert ty == sum(socle_dimensions(Rp).values()), family
        if ty == 1:
            hv = Rp.h_vector()
            assert hv == hv[::-1], family
        # characteristic independence: the rational Betti table agrees
        Bq = betti_over_S(build_quotient(build(family, field=QQ, **kw)))
        assert Bq.beta == B.beta, family
    for degs in ((2, 2, 2), (3, 2, 2)):
        B = betti_over_S(build_quotient(build("ci", field=F, degrees=degs)))
        got = t_values(B)
        assert tuple(got[i] for i in range(1, 4)) == ci_t_values(degs)
    report(9, True, f"property suites over {len(CORPUS)} corpus algebras, both fields")


def test_criterion_10_stanley_footnote():
    t0 = time.time()
    R = quotient("stanley")
    res = idealize(R)
    assert res.model.h_vector() == (1, 13, 12, 13, 1)
    assert not res.is_quadratic()
    assert any(g.degree() > 2 for g in res.ideal.generators)
    dt = time.time() - t0
    ok = dt < 30
    report(10, ok, f"(1,13,12,13,1), non-quadratic in {dt:.1f}s")
    assert ok
