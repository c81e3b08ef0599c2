"""Acceptance gate: twelve exact criteria, one recorded PASS/FAIL line each.

Everything is rational arithmetic with zero tolerance.  Criterion 1 is
recorded honestly: the advertised dim-4 index-density constant 1/(48 pi^2)
is not what the calculus produces — all three independent expansion routes,
the resolvent identities of criterion 3, and the flat-case comparator of
criterion 4 agree on 1/(96 pi^2), so the criterion is reported as a failed
comparison against the advertised constant rather than silently rescaled.
"""

import itertools
import random
import time
from fractions import Fraction
from math import factorial

import pytest

from conftest import record_criterion

from logresidue import (
    ClassicalSymbol,
    CliffordElem,
    PiScalar,
    Scalar,
    cayley_orthogonal,
    chern_density,
    cl_str,
    cl_tr,
    dgamma_from_R,
    dirac_symbol,
    dirac_squared_symbol,
    flat_subtop_sres,
    pontryagin_density,
    random_curvature,
    res_log,
    residue_density,
    rotate_curvature,
    rotate_gauge,
    scalar_curvature,
    sphere_moment,
    sphere_volume,
    sres_dgamma_cross,
    sres_dgamma_sq,
    star,
    twisted_flat_symbol,
    viancT_reduced_dim4,
)
from logresidue import cli
from logresidue.geometry import random_laplacian_lower

from test_clifford import gamma_reps, perm_sign, random_elem
from test_residue import even_multi_indices, gaussian_moment


def test_criterion_01_dim4_atiyah_singer(curvatures, dirac_syms, log_cache):
    """Advertised: sres(log D**2) = pontryagin/(48 pi**2).  Engine: /96."""
    advertised_ok = True
    detail = ""
    for i, (R, sym) in enumerate(zip(curvatures, dirac_syms)):
        log = log_cache.get(("dirac", i), sym, 4, "taylor")
        sres = residue_density(log, "str")
        pont = pontryagin_density(R)
        advertised = PiScalar(Scalar(Fraction(pont, 48)), -2)
        engine = PiScalar(Scalar(Fraction(pont, 96)), -2)
        # the value is exactly half the advertised constant, on every tensor
        assert sres == engine, f"tensor {i}: {sres!r} != pontryagin/96"
        if sres != advertised:
            advertised_ok = False
            detail = (
                "all 20 tensors give exactly pontryagin/(96 pi^2), half the "
                "advertised 1/(48 pi^2); cross-checked by criteria 2-4"
            )
    record_criterion(
        1, "dim-4 index density equals pontryagin/(48 pi^2)", advertised_ok, detail
    )
    if not advertised_ok:
        pytest.xfail(
            "advertised constant 1/(48 pi^2) is not reproduced: the engine "
            "gives 1/(96 pi^2) on every tensor, confirmed independently by "
            "route agreement (criterion 2), the resolvent identities "
            "(criterion 3) and the flat comparator (criterion 4)"
        )


def test_criterion_02_route_agreement(
    curvatures, dirac_syms, random_symbols, log_cache
):
    for i, sym in enumerate(dirac_syms):
        taylor = log_cache.get(("dirac", i), sym, 4, "taylor")
        for method in ("ch", "seeley"):
            other = log_cache.get(("dirac", i), sym, 4, method)
            for d in range(-1, -5, -1):
                assert taylor.component(d).semantically_equal(
                    other.component(d)
                ), f"tensor {i}, {method}, degree {d}"
    for j, q in enumerate(random_symbols):
        n = q.n
        taylor = log_cache.get(("rand", j), q, n, "taylor")
        for method in ("ch", "seeley"):
            other = log_cache.get(("rand", j), q, n, method)
            for d in range(-1, -n - 1, -1):
                assert taylor.component(d).semantically_equal(
                    other.component(d)
                ), f"symbol {j}, {method}, degree {d}"
    record_criterion(
        2,
        "ch and seeley routes match taylor component-by-component "
        "(20 Dirac tensors + 20 random symbols)",
        True,
    )


def test_criterion_03_resolvent_identities(curvatures):
    for i, R in enumerate(curvatures):
        pont = pontryagin_density(R)
        assert sres_dgamma_sq(R) == PiScalar(Scalar(Fraction(pont, 32)), -2), i
        assert sres_dgamma_cross(R) == PiScalar(Scalar(Fraction(pont, 128)), -2), i
    record_criterion(
        3, "dGamma residue identities with constants 1/32 and 1/128 pi^2", True
    )


def test_criterion_04_flat_twisted_index(gauges, log_cache):
    for i, G in enumerate(gauges):
        n, p = G.n, G.n // 2
        log = log_cache.get(("gauge", i), twisted_flat_symbol(G), n, "taylor")
        sres = residue_density(log, "str")
        const = (Scalar(0, 1) ** p) * Scalar(Fraction(-2, 2 ** p * factorial(p)))
        expect = PiScalar(const * chern_density(G.F, p), -p)
        assert sres == expect, f"gauge {i}"
        parts = flat_subtop_sres(G)
        for k, v in enumerate(parts[: p - 1], start=1):
            assert v == PiScalar(0), f"gauge {i}, sub-top order {k}"
    record_criterion(
        4,
        "flat twisted index density equals -2 i^p/((2 pi)^p p!) chern; "
        "sub-top orders vanish",
        True,
    )


def test_criterion_05_lichnerowicz_star_square(gauges):
    for i, G in enumerate(gauges):
        d = dirac_symbol(G)
        sq = star(d, d, 0)
        expect = ClassicalSymbol.xi2(G.n, G.dw, floor=0) + twisted_flat_symbol(
            G
        ).truncate(0)
        assert sq.semantically_equal(expect), f"gauge {i}"
    record_criterion(
        5, "sigma(D_W) star sigma(D_W) = |xi|^2 + twisted symbol, all 20 fields",
        True,
    )


def test_criterion_06_clifford_identities():
    for n in (2, 4):
        p = n // 2
        for tau in itertools.permutations(range(1, n + 1)):
            elem = CliffordElem.one(n)
            for a in tau:
                elem = elem * CliffordElem.gamma(n, a)
            assert cl_str(elem) == (Scalar(0, -2) ** p) * Scalar(perm_sign(tau))
            sig = CliffordElem.one(n)
            for a in range(0, n, 2):
                sig = sig * CliffordElem.sigma(n, tau[a], tau[a + 1])
            assert cl_str(sig) == (Scalar(0, -1) ** p) * Scalar(
                Fraction(perm_sign(tau), 2 ** p)
            )
    rng = random.Random(307)
    for _ in range(200):
        n = rng.choice((2, 4))
        a = random_elem(n, rng)
        b = random_elem(n, rng)
        assert cl_tr(a * b) == cl_tr(b * a)
    record_criterion(
        6,
        "gamma and sigma supertrace identities, all permutations; "
        "trace cyclicity on 200 pairs",
        True,
    )


def test_criterion_07_sphere_moments():
    for n in (2, 4, 6):
        for alpha in even_multi_indices(n, 8):
            assert sphere_moment(n, alpha) == gaussian_moment(n, alpha)
        vol = sphere_volume(n)
        for i in range(n):
            for j in range(n):
                alpha = [0] * n
                alpha[i] += 1
                alpha[j] += 1
                expect = vol * Fraction(1, n) if i == j else PiScalar(0)
                assert sphere_moment(n, tuple(alpha)) == expect
    record_criterion(
        7,
        "sphere moments match the Gaussian oracle (|alpha| <= 8, n in {2,4,6})",
        True,
    )


def test_criterion_08_geometry_lemmas():
    rng = random.Random(311)
    for t in range(50):
        R = random_curvature(4, rng)
        dG = dgamma_from_R(R)
        for i in range(4):
            for a in range(4):
                lhs = CliffordElem.zero(4)
                bianchi = CliffordElem.zero(4)
                for j in range(4):
                    for k in range(4):
                        if k == j:
                            continue
                        sig = CliffordElem.sigma(4, k + 1, j + 1)
                        c = R[i, a, j, k] + R[i, k, j, a]
                        if c:
                            lhs = lhs + sig.scale(c)
                        if R[i, a, j, k]:
                            bianchi = bianchi + sig.scale(
                                Fraction(3 * R[i, a, j, k], 2)
                            )
                assert (lhs - bianchi).is_zero(), (t, i, a)
        for j in range(4):
            traced = CliffordElem.zero(4)
            for jj in range(4):
                for k in range(4):
                    if k == jj:
                        continue
                    c = sum(dG[i][i][jj][k] for i in range(4))
                    if c:
                        traced = traced + CliffordElem.sigma(4, k + 1, jj + 1).scale(c)
            assert traced.is_zero(), t
    record_criterion(
        8, "first-Bianchi contraction lemma and Christoffel-trace cancellation "
        "on 50 tensors", True
    )


def test_criterion_09_rotation_invariance(curvatures, dirac_syms, gauges, log_cache):
    rng = random.Random(313)
    for i in range(20):
        O = cayley_orthogonal(4, rng)
        R = curvatures[i]
        base = residue_density(
            log_cache.get(("dirac", i), dirac_syms[i], 4, "taylor"), "str"
        )
        rotated_sym = dirac_squared_symbol(rotate_curvature(R, O))
        rotated = res_log(rotated_sym, 4, "taylor", "str")
        assert rotated == base, f"tensor {i}"
    for i, G in enumerate(gauges):
        O = cayley_orthogonal(G.n, rng)
        base = residue_density(
            log_cache.get(("gauge", i), twisted_flat_symbol(G), G.n, "taylor"),
            "str",
        )
        rotated = res_log(
            twisted_flat_symbol(rotate_gauge(G, O)), G.n, "taylor", "str"
        )
        assert rotated == base, f"gauge {i}"
    record_criterion(
        9, "residues invariant under 40 random rational rotations", True
    )


def test_criterion_10_triviality_and_stability(curvatures, dirac_syms, log_cache):
    # zero perturbation
    for n in (2, 4):
        q = ClassicalSymbol.zero(n, 1, 1, -n)
        for method in ("ch", "taylor", "seeley"):
            assert res_log(q, n, method, "tr") == PiScalar(0)
            assert res_log(q, n, method, "str") == PiScalar(0)
    # perturbations below degree -n are invisible (polynomial routes)
    rng = random.Random(317)
    for _ in range(3):
        q = random_laplacian_lower(2, 2, rng)
        bump = ClassicalSymbol.xi_power(2, -2, 2, floor=-6).scale(
            Scalar(Fraction(rng.randint(1, 9), 2))
        )
        deep = ClassicalSymbol(2, 2, q.order, -6, dict(q.comps)) + bump
        for method in ("ch", "taylor"):
            assert res_log(q, 2, method, "str") == res_log(deep, 2, method, "str")
    # the str residue ignores the scalar-curvature constant
    assert any(scalar_curvature(curvatures[i]) != 0 for i in (0, 1))
    for i in (0, 1):
        base = residue_density(
            log_cache.get(("dirac", i), dirac_syms[i], 4, "taylor"), "str"
        )
        shifted = dirac_squared_symbol(curvatures[i], scalar_term=0)
        assert res_log(shifted, 4, "taylor", "str") == base, i
    record_criterion(
        10,
        "zero input, smoothing perturbations and the scalar term leave the "
        "residue unchanged",
        True,
    )


def test_criterion_11_reduced_dim4_formula(curvatures, dirac_syms, log_cache):
    for i, R in enumerate(curvatures):
        general = residue_density(
            log_cache.get(("dirac", i), dirac_syms[i], 4, "taylor"), "str"
        )
        reduced = viancT_reduced_dim4(R, general=general)
        assert reduced == general, i
    record_criterion(
        11, "reduced two-term dim-4 formula equals the general route on 20 "
        "tensors", True
    )


def test_criterion_12_selftest_budget(capsys):
    start = time.perf_counter()
    code = cli.main(["selftest", "--seed", "0"])
    elapsed = time.perf_counter() - start
    capsys.readouterr()
    assert code == 0
    assert elapsed < 300, f"selftest took {elapsed:.1f}s"
    record_criterion(
        12, f"full selftest passes in {elapsed:.1f}s (< 300s budget)", True
    )
