"""Fourier-symbol pipeline: constructors, dominance, K, term measures,
majorant assembly, localization, ellipticity, Groenwall."""

import cmath
import math

import numpy as np
import pytest

from levysym.checks import (
    FourierSymbol,
    assemble_majorant,
    audit_ellipticity,
    build_term_measure,
    check_dominance,
    compute_K,
    fd_derivative,
    fourier_symbol_of_product_cosine,
    groenwall_recursion_table,
    groenwall_verify,
    localize_fourierize,
    plateau_bump,
    term_measure,
    verify_term_measure,
)
from levysym.errors import ViolatedDominance
from levysym.symbols import (
    BrownianNegative,
    ConstantSymbol,
    ProductCosine,
    SymmetricDoubling,
    eval_symbol,
)

PRODCOS = ProductCosine(BrownianNegative())
XGRID = np.linspace(-math.pi, math.pi, 101)


def constant_fourier_symbol(psi=None):
    psi = BrownianNegative() if psi is None else psi
    return FourierSymbol(k=1.0, a0=lambda u: psi.psi(u), terms={})


# ----------------------------------------------------------------------
# closed-form constructor
# ----------------------------------------------------------------------
def test_product_cosine_coefficients():
    fs = fourier_symbol_of_product_cosine(BrownianNegative())
    assert fs.a0(2.0) == pytest.approx(-2.0)
    assert fs.terms[1][0](2.0) == pytest.approx(1.0)
    assert fs.terms[-1][0](2.0) == pytest.approx(1.0)
    assert fs.terms[1][1](2.0) == 0j
    assert fs.a0(0.0) == 0.0
    rng = np.random.default_rng(0)
    for _ in range(30):
        x = float(rng.uniform(-4, 4))
        u = float(rng.uniform(-6, 6))
        assert abs(fs.reconstruct(x, u) - eval_symbol(PRODCOS, x, u)) < 1e-14 * (
            1 + u * u
        )


# ----------------------------------------------------------------------
# dominance and K
# ----------------------------------------------------------------------
def test_dominance_constant_and_product():
    assert check_dominance(constant_fourier_symbol()).passed
    rep = check_dominance(fourier_symbol_of_product_cosine(BrownianNegative()))
    assert rep.passed  # sits exactly at equality
    assert rep.worst_margin == pytest.approx(0.0, abs=1e-12)


def test_dominance_constructed_violation():
    fs = FourierSymbol(
        k=1.0, a0=lambda u: 0j, terms={1: (lambda u: 1.0 + 0j, lambda u: 0j)}
    )
    rep = check_dominance(fs)
    assert not rep.passed
    assert rep.worst_margin == pytest.approx(-1.0)


def test_dominance_and_K_invariant_under_reindexing():
    # n -> -n with (a, b) -> (a, -b) leaves both checks unchanged
    def a1(u):
        return -0.25 * u * u + 0.1j

    def b1(u):
        return 0.05 * u + 0j

    fs = FourierSymbol(k=1.3, a0=lambda u: -u * u + 0j, terms={2: (a1, b1)})
    flipped = FourierSymbol(
        k=1.3, a0=fs.a0, terms={-2: (a1, lambda u: -b1(u))}
    )
    u = np.linspace(-10, 10, 41)
    da = check_dominance(fs, u)
    db = check_dominance(flipped, u)
    assert np.allclose(da.margin, db.margin)
    assert compute_K(fs, u).K == pytest.approx(compute_K(flipped, u).K)


def test_K_values():
    assert compute_K(constant_fourier_symbol()).K == 0.0
    fs = fourier_symbol_of_product_cosine(BrownianNegative())
    rep = compute_K(fs)
    assert 0.49 <= rep.K <= 0.5
    # doubling psi doubles K

    class Doubled:
        def psi(self, u):
            return -u * u

    rep2 = compute_K(fourier_symbol_of_product_cosine(Doubled()))
    assert rep2.K == pytest.approx(2.0 * rep.K)


# ----------------------------------------------------------------------
# term measures
# ----------------------------------------------------------------------
def test_build_term_measure_trivial_cases():
    from levysym.measures import dirac

    assert build_term_measure(0.0, "cos", 1.0, 0.7) == dirac(0, 1.0, "u1")
    P = build_term_measure(1.5, "sin", 2.0, 0.0)
    assert P == dirac(0, 2.0, "u2")


def test_term_measure_atom_oracle():
    # exp(mu) weight at 0 for mu = (delta_1 + delta_-1)/2: sum over even m of
    # (1/2)^m/m! * C(m, m/2), scaled by e^-1 -- brute-force big-int series
    P = build_term_measure(1.0, "cos", 1.0, 1.0, tol=1e-14)
    oracle = math.exp(-1.0) * sum(
        0.5**m / math.factorial(m) * math.comb(m, m // 2) for m in range(0, 60, 2)
    )
    assert P.weights[0].real == pytest.approx(oracle, abs=1e-12)
    assert oracle == pytest.approx(0.46575961, abs=5e-9)


def test_term_measure_fourier_identity():
    rng = np.random.default_rng(5)
    for kind in ("cos", "sin"):
        b = complex(rng.normal(), rng.normal())
        a = abs(b) + 0.3
        t, spacing = 0.6, 1.7
        P = term_measure(a, b, kind, spacing, t, tol=1e-13)
        trig = math.cos if kind == "cos" else math.sin
        for x in np.linspace(-2.0, 2.0, 21):
            target = cmath.exp(t * (b * trig(spacing * x) - a))
            assert abs(P.fourier(x) - target) < 1e-10


def test_verify_term_measure_flags_hypothesis_breach():
    # Re(a) < |b|: tv bound may fail, report must flag the breach
    rep_obj = term_measure(0.1, 2.0, "cos", 1.0, 1.0, tol=1e-12)
    rep = verify_term_measure(rep_obj, 0.1, 2.0, "cos", 1.0, 1.0, XGRID)
    assert not rep.hypothesis_ok
    assert rep.tv_norm > 1.0


def test_term_measure_rejects_bad_t():
    with pytest.raises(ValueError):
        term_measure(1.0, 1.0, "cos", 1.0, 1.5)


# ----------------------------------------------------------------------
# majorant assembly
# ----------------------------------------------------------------------
def test_majorant_constant_symbol():
    fs = constant_fourier_symbol()
    P, rep = assemble_majorant(fs, 2.0, 0.5, 1, XGRID)
    assert rep.all_ok
    assert P.total_mass() == pytest.approx(cmath.exp(0.5 * -2.0), abs=1e-12)
    assert rep.K_sigma == 0.0


def test_majorant_t_zero_is_identity():
    fs = fourier_symbol_of_product_cosine(BrownianNegative())
    P, rep = assemble_majorant(fs, 1.0, 0.0, 1, XGRID)
    assert rep.all_ok
    assert P.total_mass() == pytest.approx(1.0)
    assert P.moment(2) == pytest.approx(0.0)


def test_majorant_product_cosine_cross_validated():
    # independent check: numeric Fourier inversion of exp(t q(., u)) in x
    fs = fourier_symbol_of_product_cosine(BrownianNegative())
    u, t = 1.0, 0.5
    P, rep = assemble_majorant(fs, u, t, 1, XGRID, tol=1e-8)
    assert rep.all_ok
    # the transform is 2pi-periodic in x, so P's atoms on Z are the Fourier
    # coefficients of x -> exp(t q(x, u)); quadrature gives them independently
    M = 512
    xs = 2.0 * math.pi * np.arange(M) / M
    vals = np.array([cmath.exp(t * eval_symbol(PRODCOS, x, u)) for x in xs])
    for j in (-2, -1, 0, 1, 3):
        coeff = np.mean(vals * np.exp(-1j * j * xs))
        assert abs(P.weights.get(j, 0j) - coeff) < 1e-9
    assert rep.weighted_mass <= 1.0 + 0.5 * t + 1e-6


def test_majorant_rejects_broken_dominance():
    fs = FourierSymbol(
        k=1.0, a0=lambda u: 1.0 + 0j, terms={1: (lambda u: 0.5 + 0j, lambda u: 0j)}
    )
    with pytest.raises(ViolatedDominance):
        assemble_majorant(fs, 1.0, 1.0, 1, XGRID)


def test_majorant_transform_residual_shrinks_with_exp_tol():
    fs = fourier_symbol_of_product_cosine(BrownianNegative())
    _, loose = assemble_majorant(fs, 5.0, 1.0, 1, XGRID, exp_tol=1e-6)
    _, tight = assemble_majorant(fs, 5.0, 1.0, 1, XGRID, exp_tol=1e-10)
    assert tight.transform_error < loose.transform_error


# ----------------------------------------------------------------------
# localization
# ----------------------------------------------------------------------
def test_bump_plateau_and_support():
    ys = np.linspace(0.26, 0.74, 25)
    assert np.allclose(plateau_bump(ys), 1.0)
    assert plateau_bump(np.array([0.0, 0.05, 0.95, 1.0])).max() == 0.0
    mid = plateau_bump(np.array([0.2, 0.8]))
    assert np.all((mid > 0.0) & (mid < 1.0))


def test_localize_constant_symbol():
    fs = localize_fourierize(ConstantSymbol(BrownianNegative()), 0.3, 2, nmax=16)
    assert fs.a0(2.0) == pytest.approx(-2.0, abs=1e-12)
    worst = max(
        abs(a_fn(2.0)) + abs(b_fn(2.0)) for a_fn, b_fn in fs.terms.values()
    )
    assert worst < 1e-12
    assert check_dominance(fs).passed
    assert fs.truncation_residual(2.0) < 1e-10


def test_localize_plateau_reconstruction():
    fs = localize_fourierize(PRODCOS, 0.0, 1, nmax=64)
    for u in (0.25, 0.5, 1.0):
        for x in np.linspace(-0.25, 0.25, 17):
            assert abs(fs.reconstruct(x, u) - eval_symbol(PRODCOS, x, u)) <= 1e-6


def test_localize_reconstruction_consistent_with_reported_residual():
    fs = localize_fourierize(PRODCOS, 0.0, 1, nmax=64)
    for u in (0.5, 1.0, 2.0):
        worst = max(
            abs(fs.reconstruct(x, u) - eval_symbol(PRODCOS, x, u))
            for x in np.linspace(-0.25, 0.25, 17)
        )
        assert worst <= 3.0 * fs.truncation_residual(u) + 1e-12


def test_localize_away_from_degenerate_point():
    # at x0 = pi the symbol is elliptic; reconstruction still exact on plateau
    fs = localize_fourierize(PRODCOS, math.pi, 1, nmax=64)
    for x in np.linspace(math.pi - 0.25, math.pi + 0.25, 9):
        assert abs(fs.reconstruct(x, 1.0) - eval_symbol(PRODCOS, x, 1.0)) <= 1e-6


def test_localize_rejects_domain_exit():
    from levysym.errors import DomainError
    from levysym.symbols import IncreasingDoubling

    with pytest.raises(DomainError):
        localize_fourierize(IncreasingDoubling(), 0.0, 1, nmax=8)


# ----------------------------------------------------------------------
# ellipticity audit
# ----------------------------------------------------------------------
def test_fd_derivative_polynomial():
    f = lambda x: x**3 + 2.0 * x
    assert fd_derivative(f, 1.5, 1) == pytest.approx(3 * 1.5**2 + 2.0, rel=1e-9)
    assert fd_derivative(f, 1.5, 2) == pytest.approx(9.0, rel=1e-7)
    assert fd_derivative(f, 1.5, 3) == pytest.approx(6.0, rel=1e-5)


def test_fd_derivative_oscillatory_needs_u_scaling():
    # cos(xu) at u = 300: resolved by the u-scaled ladder rungs
    u = 300.0
    f = lambda x: math.cos(x * u)
    d = fd_derivative(f, 0.001, 1, u_scale=u)
    assert d == pytest.approx(-u * math.sin(0.3), rel=1e-6)


def test_fd_derivative_zero_function_stable():
    assert fd_derivative(lambda x: 0.0, 0.5, 2) == 0.0


def test_audit_counterexample_fails_smoothness():
    audit = audit_ellipticity(
        SymmetricDoubling(), BrownianNegative(), 0.0, 1e-3, max_order=1
    )
    assert audit.elliptic_ratio[1] > 100.0
    assert 1.7 <= audit.slope <= 2.3


def test_audit_product_cosine_passes():
    audit = audit_ellipticity(PRODCOS, BrownianNegative(), 0.0, 1e-3, max_order=1,
                              bound=1.1)
    assert audit.elliptic_ok
    assert all(v <= 1.1 for v in audit.growth_ratio.values())
    assert -0.2 <= audit.slope <= 0.2


def test_audit_constant_symbol():
    audit = audit_ellipticity(
        ConstantSymbol(BrownianNegative()), BrownianNegative(), 0.0, 1.0,
        max_order=3, ugrid=np.geomspace(1.0, 50.0, 11),
    )
    assert audit.floor_ratio == pytest.approx(1.0)
    assert max(audit.growth_ratio.values()) < 1e-8


def test_audit_order3_stable_at_generic_point():
    audit = audit_ellipticity(
        PRODCOS, BrownianNegative(), 1.0, 0.5, max_order=3,
        ugrid=np.geomspace(1.0, 100.0, 15),
    )
    assert audit.elliptic_ratio[1] <= 1.0 + 1e-6
    assert audit.growth_ratio[3] <= 0.5 + 1e-6


def test_audit_order3_near_degenerate_point():
    # at x0 = pi the third x-derivative of the product symbol nearly
    # vanishes; the audit must classify it as noise-level, not unstable
    audit = audit_ellipticity(
        PRODCOS, BrownianNegative(), 3.14159, 0.5, max_order=3,
        ugrid=np.geomspace(1.0, 50.0, 9),
    )
    assert audit.floor_ratio == pytest.approx(1.0 - math.cos(3.14159 - 0.5), abs=1e-6)
    assert audit.growth_ratio[2] <= 0.5 + 1e-9


def test_fd_derivative_abs_tol_accepts_noise_level():
    # derivative ~1e-6 of the function scale: relative certification is
    # impossible in double precision, absolute tolerance accepts it
    f = lambda x: 1.0 + 1e-6 * math.sin(x)
    val = fd_derivative(f, 0.0, 3, abs_tol=1e-6)
    assert abs(val - (-1e-6)) < 1e-7


def test_audit_rejects_zero_frequency():
    with pytest.raises(ValueError):
        audit_ellipticity(PRODCOS, BrownianNegative(), 0.0, 1.0,
                          ugrid=np.array([0.0, 1.0]))


# ----------------------------------------------------------------------
# Groenwall
# ----------------------------------------------------------------------
def test_groenwall_exponential_with_matching_beta():
    c, T = 1.3, 1.0
    ts = np.linspace(0.0, T, 21)
    phis = 2.0 * np.exp(c * ts)
    # e^{c d} <= 1 + c d + beta(d) with beta(d) = e^{cT} c^2 d^2 / 2 * phi-scale
    beta = lambda d: 2.0 * math.exp(c * T) * c * c * d * d / 2.0 * math.exp(c * T)
    rep = groenwall_verify(ts, phis, c, beta)
    assert rep.hypothesis_ok
    assert rep.conclusion_ok


def test_groenwall_flags_violating_table():
    ts = [0.0, 0.5, 1.0]
    phis = [1.0, 1.0 + 2 * 0.5 * 1.0, 1.0 + 2 * 1.0]  # phi = 1 + 2 c t, beta = 0
    rep = groenwall_verify(ts, phis, 1.0)
    assert not rep.hypothesis_ok
    assert rep.first_violation is not None


def test_groenwall_recursion_tables():
    for c in (0.5, 2.0):
        for steps in (10, 100, 1000):
            ts, phis = groenwall_recursion_table(1.0, c, 1.0, steps)
            rep = groenwall_verify(ts, phis, c)
            assert rep.conclusion_ok
    ts, phis = groenwall_recursion_table(0.0, 2.0, 1.0, 100)
    assert max(abs(p) for p in phis) <= 1e-15
    rep = groenwall_verify(ts, phis, 2.0)
    assert rep.conclusion_ok and rep.hypothesis_ok


def test_groenwall_beta_as_table():
    ts = [0.0, 0.5]
    phis = [1.0, 1.4]
    rep = groenwall_verify(ts, phis, 0.5, beta={0.5: 0.2})
    assert rep.hypothesis_ok    # 1.4 <= 1.25 + 0.2
    assert not rep.conclusion_ok  # 1.4 > e^0.25
