"""Statistics layer: closed moments against big-integer oracles, CLT
estimates, ECF machinery, exact support audits, Dynkin residuals."""

import math
from fractions import Fraction

import numpy as np
import pytest

from levysym.errors import DegenerateSample, RepresentationLost
from levysym.mcstats import (
    Sample,
    closed_moment,
    dynkin_residual,
    ecf,
    ecf_distance,
    ecf_report_csv,
    moment_ci,
    moment_report_csv,
    support_audit,
)
from levysym.simulate import ExactState, SimConfig, jump_rule_of, simulate_ensemble
from levysym.symbols import (
    IncreasingDoublingApprox,
    LatticeUnit,
    SymmetricDoublingApprox,
    TestFunction,
)

K1 = LatticeUnit.parse("1")
KS2 = LatticeUnit.parse("sqrt2")


def _sample_of_floats(values, horizon=1.0):
    return Sample(tuple(values), horizon)


# ----------------------------------------------------------------------
# closed moments
# ----------------------------------------------------------------------
def test_closed_moment_frozen_values():
    assert closed_moment("symmetric_doubling", 2, 1.0) == pytest.approx(1.0)
    assert closed_moment("symmetric_doubling", 3, 1.0) == 0.0
    assert closed_moment("symmetric_doubling", 4, 1.0) == pytest.approx(3.5)
    assert closed_moment("increasing_doubling", 2, 1.0) == pytest.approx(1.5)
    assert closed_moment("increasing_doubling", 3, 1.0) == pytest.approx(3.5)
    assert closed_moment("symmetric_doubling", 0, 0.3) == 1.0


def test_closed_moment_bigint_oracle():
    # independent exact-arithmetic evaluation of the product formulas
    for n in range(0, 13):
        for t in (0.25, 1.0, 2.0):
            if n % 2 == 0:
                half = n // 2
                prod = Fraction(1)
                for k in range(1, half + 1):
                    prod *= Fraction(2 ** (2 * k - 1) - 1)
                expect = float(prod / math.factorial(half)) * t**half
            else:
                expect = 0.0
            assert closed_moment("symmetric_doubling", n, t) == pytest.approx(expect)
            prod = Fraction(1)
            for k in range(1, n + 1):
                prod *= Fraction(2**k - 1)
            expect_inc = float(prod / math.factorial(n)) * t**n
            assert closed_moment("increasing_doubling", n, t) == pytest.approx(
                expect_inc
            )


def test_increasing_moments_grow_from_order_two():
    vals = [closed_moment("increasing_doubling", n, 1.0) for n in range(2, 8)]
    assert all(b > a for a, b in zip(vals, vals[1:]))


# ----------------------------------------------------------------------
# CLT estimates
# ----------------------------------------------------------------------
def test_moment_ci_constant_sample():
    est = moment_ci(_sample_of_floats([2.0] * 50), 3)
    assert est.mean == pytest.approx(8.0)
    assert est.se == 0.0


def test_moment_ci_needs_two_points():
    with pytest.raises(DegenerateSample):
        moment_ci(_sample_of_floats([1.0]), 1)
    with pytest.raises(DegenerateSample):
        Sample((), 1.0)


def test_ecf_trivial_values():
    sample = _sample_of_floats([0.0, 0.0, 0.0])
    est = ecf(sample, [0.0, 1.0, 5.0])
    assert np.allclose(est.mean, 1.0)
    est2 = ecf(_sample_of_floats(np.random.default_rng(0).normal(size=100)), [0.0])
    assert est2.mean[0] == 1.0
    assert est2.se[0] == 0.0


def test_ecf_symmetric_sample_imag_small():
    rng = np.random.default_rng(1)
    xs = rng.normal(size=4000)
    xs = np.concatenate([xs, -xs])  # exactly symmetric
    est = ecf(_sample_of_floats(xs), [0.7, 2.0])
    assert np.max(np.abs(est.mean.imag)) < 1e-12


def test_ecf_distance_identical_is_zero():
    xs = np.random.default_rng(2).normal(size=500)
    a = _sample_of_floats(xs)
    rep = ecf_distance(a, _sample_of_floats(xs.copy()), refine=False)
    assert rep.distance == 0.0


def test_ecf_distance_requires_same_horizon():
    a = _sample_of_floats([0.0, 1.0], horizon=1.0)
    b = _sample_of_floats([0.0, 1.0], horizon=2.0)
    with pytest.raises(ValueError):
        ecf_distance(a, b)


def test_ecf_distance_null_calibration():
    # independent ensembles of the same law: distance within 5x SE bound
    rng = np.random.default_rng(3)
    a = _sample_of_floats(rng.normal(size=4000))
    b = _sample_of_floats(rng.normal(size=4000))
    rep = ecf_distance(a, b)
    assert rep.distance <= 5.0 * rep.se_bound


def test_ecf_distance_separates_shifted_laws():
    rng = np.random.default_rng(4)
    a = _sample_of_floats(rng.normal(size=4000))
    b = _sample_of_floats(rng.normal(size=4000) + 1.0)
    rep = ecf_distance(a, b)
    assert rep.distance > 10.0 * rep.se_bound


# ----------------------------------------------------------------------
# support audits
# ----------------------------------------------------------------------
def test_support_audit_exactness():
    states = (
        ExactState("1", 1.0, 0, 0),
        ExactState("1", 1.0, 1, 5),
        ExactState("1", 1.0, -8, 0),
    )
    audit = support_audit(Sample(states, 1.0), "1")
    assert audit.clean and audit.nonzero_total == 2
    # off-lattice mantissa
    audit2 = support_audit(Sample(states + (ExactState("1", 1.0, 3, 1),), 1.0), "1")
    assert audit2.off_lattice == 1
    # cross-lattice: every nonzero state is off; zero belongs everywhere
    cross = support_audit(Sample(states, 1.0), "sqrt2")
    assert cross.off_lattice == 2


def test_support_audit_dyadic_kind():
    states = (ExactState("1", 1.0, 5, 3), ExactState("1", 1.0, 1, 0))
    audit = support_audit(Sample(states, 1.0), "1", kind="dyadic", scale=3)
    assert audit.clean
    neg = Sample((ExactState("1", 1.0, -1, 2),), 1.0)
    assert support_audit(neg, "1", kind="dyadic", scale=3).off_lattice == 1


def test_support_audit_rejects_floats():
    with pytest.raises(RepresentationLost):
        support_audit(_sample_of_floats([0.5, 1.0]), "1")


def test_law_converges_as_resolution_grows():
    # the limit law puts no mass on the origin (instant diffusion away);
    # the approximations hold ~2^-n of it there, the one statistic with a
    # visible trend in n -- polynomial-moment biases vanish identically.
    def zero_mass_median(n):
        fracs = []
        for seed in range(10):
            rule = jump_rule_of(SymmetricDoublingApprox(K1, n))
            res = simulate_ensemble(
                rule, rule.initial_state(),
                SimConfig(horizon=1.0, seed=3000 + seed, paths=2000),
            )
            fracs.append(sum(s.is_zero for s in res.endpoints) / 2000.0)
        return float(np.median(fracs))

    coarse, fine = zero_mass_median(4), zero_mass_median(10)
    assert coarse > 5.0 * fine
    # second moment stays pinned at the closed form at both resolutions
    for n in (4, 10):
        rule = jump_rule_of(SymmetricDoublingApprox(K1, n))
        res = simulate_ensemble(
            rule, rule.initial_state(), SimConfig(horizon=1.0, seed=77, paths=5000)
        )
        est = moment_ci(Sample.from_ensemble(res), 2)
        assert abs(est.mean - 1.0) <= 4.0 * est.se


def test_ecf_null_calibration_on_simulator_output():
    # two independent ensembles of the same law: distance within 5x SE bound
    rule = jump_rule_of(SymmetricDoublingApprox(K1, 6))
    def sample(seed):
        res = simulate_ensemble(
            rule, rule.initial_state(), SimConfig(horizon=1.0, seed=seed, paths=3000)
        )
        return Sample.from_ensemble(res)

    rep = ecf_distance(sample(501), sample(502))
    assert rep.distance <= 5.0 * rep.se_bound


def test_simulated_supports_are_disjoint():
    out = {}
    for token, unit in (("1", K1), ("sqrt2", KS2)):
        rule = jump_rule_of(SymmetricDoublingApprox(unit, 6))
        res = simulate_ensemble(
            rule, rule.initial_state(), SimConfig(horizon=1.0, seed=21, paths=500)
        )
        out[token] = Sample.from_ensemble(res)
    for own, other in (("1", "sqrt2"), ("sqrt2", "1")):
        own_audit = support_audit(out[own], own)
        assert own_audit.clean
        cross = support_audit(out[own], other)
        assert cross.off_lattice == cross.nonzero_total > 0


# ----------------------------------------------------------------------
# Dynkin residuals
# ----------------------------------------------------------------------
def test_dynkin_constant_function_is_exact():
    spec = IncreasingDoublingApprox(K1, 0)
    tf = TestFunction(lambda x: 3.0, lambda x: 0.0, lambda x: 0.0)
    rule = jump_rule_of(spec)
    rep = dynkin_residual(
        spec, tf, rule.initial_state(), 1.0, np.linspace(0.0, 1.0, 5), 200, 9
    )
    assert rep.residual == pytest.approx(0.0, abs=1e-14)
    assert rep.se == 0.0


def test_dynkin_poisson_identity():
    spec = IncreasingDoublingApprox(K1, 0)
    tf = TestFunction(lambda x: x, lambda x: 1.0, lambda x: 0.0)
    rule = jump_rule_of(spec)
    rep = dynkin_residual(
        spec, tf, rule.initial_state(), 1.0, np.linspace(0.0, 1.0, 6), 5000, 31
    )
    assert abs(rep.residual) <= 4.0 * rep.se + 1e-12
    assert rep.quadrature_error == pytest.approx(0.0, abs=1e-12)


def test_dynkin_grid_validation():
    spec = IncreasingDoublingApprox(K1, 0)
    tf = TestFunction(lambda x: x, lambda x: 1.0, lambda x: 0.0)
    x0 = jump_rule_of(spec).initial_state()
    with pytest.raises(ValueError):
        dynkin_residual(spec, tf, x0, 1.0, [0.0, 0.5, 0.9], 100, 1)


# ----------------------------------------------------------------------
# report formats
# ----------------------------------------------------------------------
def test_report_csvs():
    text = moment_report_csv([(2, 1.001, 0.01, 1.0, 0.001, True)])
    assert text.splitlines()[0] == "order,mc_mean,mc_se,closed_form,abs_error,pass"
    assert text.splitlines()[1].endswith(",true")
    a = ecf(_sample_of_floats([0.0, 1.0]), [0.0, 2.0])
    b = ecf(_sample_of_floats([0.5, 1.5]), [0.0, 2.0])
    csv = ecf_report_csv(a, b)
    assert csv.splitlines()[0] == "u,re_a,im_a,re_b,im_b,weighted_abs_diff"
    assert len(csv.splitlines()) == 3
