"""Symbol evaluations against triplets, generator closed forms, audits,
and the JSON wire format."""

import cmath
import math

import numpy as np
import pytest

from levysym.errors import DomainError
from levysym.symbols import (
    BrownianNegative,
    ConstantSymbol,
    IncreasingDoubling,
    IncreasingDoublingApprox,
    LatticeUnit,
    LevyTriplet,
    ProductCosine,
    SymmetricDoubling,
    SymmetricDoublingApprox,
    TestFunction,
    TripletExponent,
    TripletField,
    apply_generator,
    boundedness_audit,
    eval_symbol,
    hoelder_modulus,
    spec_from_json,
    spec_to_json,
    triplet_of,
    truncation,
)

K1 = LatticeUnit.parse("1")
KS2 = LatticeUnit.parse("sqrt2")

ALL_SPECS = [
    SymmetricDoubling(),
    SymmetricDoublingApprox(K1, 3),
    SymmetricDoublingApprox(KS2, 10),
    IncreasingDoubling(),
    IncreasingDoublingApprox(K1, 4),
    ProductCosine(BrownianNegative()),
    ConstantSymbol(BrownianNegative()),
    ProductCosine(TripletExponent(LevyTriplet(drift=0.2, jumps=((1.5, 0.7),)))),
]


def test_truncation_function():
    assert truncation(0.5) == 0.5
    assert truncation(-1.0) == -1.0
    assert truncation(1.5) == 0.0


def test_symmetric_closed_values():
    q = SymmetricDoubling()
    assert q.value(0.0, 2.0) == pytest.approx(-2.0)
    assert q.value(1.0, math.pi).real == pytest.approx(-2.0)
    assert q.value(1.0, math.pi).imag == 0.0


def test_increasing_domain():
    q = IncreasingDoubling()
    assert q.value(0.0, 3.0) == pytest.approx(3j)
    with pytest.raises(DomainError):
        q.value(-0.1, 1.0)
    with pytest.raises(DomainError):
        triplet_of(q, -1.0)


@pytest.mark.parametrize("spec", ALL_SPECS, ids=lambda s: type(s).__name__)
def test_symbol_axioms(spec):
    rng = np.random.default_rng(3)
    for _ in range(40):
        x = float(rng.uniform(0.0, 4.0))  # stay in every state space
        u = float(rng.uniform(-8.0, 8.0))
        q = eval_symbol(spec, x, u)
        assert eval_symbol(spec, x, 0.0) == 0.0
        assert q.real <= 1e-12
        # hermitian symmetry
        assert cmath.isclose(
            eval_symbol(spec, x, -u), q.conjugate(), abs_tol=1e-12, rel_tol=1e-12
        )


@pytest.mark.parametrize("spec", ALL_SPECS, ids=lambda s: type(s).__name__)
def test_eval_matches_triplet_exponent(spec):
    rng = np.random.default_rng(7)
    for _ in range(60):
        x = float(rng.uniform(0.0, 4.0))
        u = float(rng.uniform(-8.0, 8.0))
        trip = triplet_of(spec, x)
        if not trip.finite_activity and not isinstance(
            spec, (SymmetricDoubling, ConstantSymbol, ProductCosine)
        ):
            continue
        assert abs(eval_symbol(spec, x, u) - trip.exponent(u)) < 1e-10 * (1 + u * u)


def test_symmetric_triplet_at_zero_not_simulable():
    trip = triplet_of(SymmetricDoubling(), 0.0)
    assert trip.diffusion == 1.0
    assert not trip.finite_activity
    assert triplet_of(SymmetricDoublingApprox(K1, 2), 0.0).finite_activity


def test_approx_triplet_frozen_region():
    spec = SymmetricDoublingApprox(K1, 0)
    trip = triplet_of(spec, 0.0)
    assert trip.jumps == ((1.0, 0.5), (-1.0, 0.5))
    assert trip.drift == 0.0
    spec2 = IncreasingDoublingApprox(K1, 0)
    trip2 = triplet_of(spec2, 5.0)  # clamped to h = 1
    assert trip2.jumps == ((1.0, 1.0),)


def test_generator_closed_forms():
    x_sq = TestFunction(lambda x: x * x, lambda x: 2.0 * x, lambda x: 2.0)
    ident = TestFunction(lambda x: x, lambda x: 1.0, lambda x: 0.0)
    const = TestFunction(lambda x: 4.0, lambda x: 0.0, lambda x: 0.0)
    spec31 = SymmetricDoublingApprox(K1, 6)
    spec32 = IncreasingDoublingApprox(K1, 6)
    for x in (0.0, 2.0**-6, 0.375, 1.0, -3.0, 17.25):
        assert apply_generator(spec31, x_sq, x) == pytest.approx(1.0, abs=1e-12)
        assert apply_generator(spec31, const, x) == pytest.approx(0.0, abs=1e-12)
    for x in (0.0, 0.25, 1.0, 3.5, 100.0):
        assert apply_generator(spec32, ident, x) == pytest.approx(1.0, abs=1e-12)
    # outer region matches the printed difference quotients exactly
    f = TestFunction(
        lambda x: math.sin(x), lambda x: math.cos(x), lambda x: -math.sin(x)
    )
    x = 0.75
    expected = (math.sin(2 * x) - 2 * math.sin(x) + math.sin(0.0)) / (2 * x * x)
    assert apply_generator(spec31, f, x) == pytest.approx(expected, abs=1e-12)
    h = IncreasingDoublingApprox(K1, 6).clamp(x)
    expected32 = (math.sin(x + h) - math.sin(x)) / h
    assert apply_generator(spec32, f, x) == pytest.approx(expected32, abs=1e-12)


def test_finite_difference_testfunction_flagged():
    tf = TestFunction.from_finite_differences(lambda x: x**3)
    assert tf.finite_difference
    assert tf.grad(2.0) == pytest.approx(12.0, rel=1e-8)
    assert tf.hess(2.0) == pytest.approx(12.0, rel=1e-4)


def test_boundedness_audit():
    grid = np.linspace(-5.0, 5.0, 41)
    rep = boundedness_audit(SymmetricDoubling(), grid)
    assert rep.sup == pytest.approx(1.0, abs=1e-12)
    rep2 = boundedness_audit(ConstantSymbol(BrownianNegative()), grid)
    assert rep2.sup == pytest.approx(1.0)
    # clamped increasing symbol: g bounded by 1 + cap on any grid
    spec = IncreasingDoublingApprox(K1, 2)
    rep3 = boundedness_audit(spec, np.linspace(0.0, 100.0, 51))
    assert rep3.sup <= 1.0 + 4.0 + 1e-12
    # unclamped increasing symbol: g grows linearly, flagged by the sup
    rep4 = boundedness_audit(IncreasingDoubling(), np.linspace(0.0, 100.0, 51))
    assert rep4.sup >= 100.0


def test_hoelder_modulus():
    spec = ProductCosine(BrownianNegative())
    ugrid = np.linspace(-60.0, 60.0, 1201)
    rows = hoelder_modulus(spec, [(0.0, 0.0), (0.0, math.pi)], ugrid)
    assert rows[0].modulus == 0.0
    assert rows[1].modulus == pytest.approx(1.0, abs=2e-3)
    sym = hoelder_modulus(spec, [(math.pi, 0.0)], ugrid)
    assert sym[0].modulus == pytest.approx(rows[1].modulus)
    bounded = hoelder_modulus(
        spec, [(0.0, 1.0)], ugrid, sup_q_norm=1.0, sup_dq_norm=0.5
    )
    assert bounded[0].closed_bound == pytest.approx(0.5)


def test_json_round_trip():
    for spec in ALL_SPECS:
        text = spec_to_json(spec)
        assert spec_from_json(text) == spec
    wire = spec_to_json(SymmetricDoublingApprox(KS2, 10))
    assert '"variant": "ex31approx"' in wire
    assert '"tag": "sqrt2"' in wire


def test_triplet_field_not_serializable():
    spec = TripletField(lambda x: LevyTriplet(jumps=((1.0, 1.0),)))
    assert eval_symbol(spec, 0.3, 2.0) == triplet_of(spec, 0.3).exponent(2.0)
    with pytest.raises(TypeError):
        spec_to_json(spec)


def test_lattice_unit_tokens():
    assert LatticeUnit.parse("sqrt2").value == pytest.approx(math.sqrt(2.0))
    assert LatticeUnit.parse("1.5").tag == "1.5"
    assert LatticeUnit.parse("cbrt2").value == pytest.approx(2.0 ** (1 / 3))
    with pytest.raises(ValueError):
        LatticeUnit.parse("-2")
