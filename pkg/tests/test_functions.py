import math
from fractions import Fraction

import numpy as np
import pytest

from guessbound.functions import (
    AffineFamily,
    BalancedPredicateFamily,
    ComposedFamily,
    EnumerationCapError,
    ExplicitFamily,
    FunctionTable,
    InnerProductFamily,
    UniformFunctionFamily,
    agreement_coefficient,
    agreement_matrix,
    collision_matrix,
    collision_probability,
    collision_probability_mc,
    compose,
    enumerate_predicates,
    is_two_universal,
    sample_function,
)
from guessbound.rng import stream


def random_two_universal_family(rng, input_bits, output_bits):
    """Affine family scrambled by domain/output permutations; stays two-universal."""
    base = AffineFamily(input_bits, output_bits)
    perm = rng.permutation(2**input_bits)
    tables = []
    for _, t in base.support():
        out_perm = rng.permutation(2**output_bits)
        tables.append(FunctionTable(out_perm[t.values[perm]], t.range_size))
    return ExplicitFamily(tables)


def test_function_table_validation():
    with pytest.raises(ValueError):
        FunctionTable(np.array([0, 2]), 2)
    with pytest.raises(ValueError):
        FunctionTable(np.array([], dtype=int), 2)
    t = FunctionTable(np.array([0, 1, 1, 0]), 2)
    assert t.domain_size == 4 and t(2) == 1
    assert t.is_balanced()
    assert not FunctionTable(np.array([0, 0, 0, 1]), 2).is_balanced()


def test_function_table_json_round_trip():
    t = FunctionTable(np.array([3, 0, 2, 1]), 4)
    assert t.to_json() == [3, 0, 2, 1]
    assert FunctionTable.from_json(t.to_json(), 4) == t


def test_enumerate_predicates_counts():
    assert len(enumerate_predicates(2, balanced=True)) == 2
    assert len(enumerate_predicates(4, balanced=True)) == 6
    assert len(enumerate_predicates(4, balanced=False)) == 16
    for n in range(1, 9):
        tables = enumerate_predicates(n)
        assert len(tables) == 2**n
        assert len(set(tables)) == 2**n
        if n % 2 == 0:
            balanced = enumerate_predicates(n, balanced=True)
            assert len(balanced) == math.comb(n, n // 2)
            assert all(t.is_balanced() for t in balanced)


def test_enumeration_caps():
    with pytest.raises(EnumerationCapError):
        enumerate_predicates(17)
    with pytest.raises(EnumerationCapError):
        list(UniformFunctionFamily(17, 2).support())
    with pytest.raises(EnumerationCapError):
        collision_probability(UniformFunctionFamily(64, 2), 0, 1)


def test_support_weights_sum_to_one():
    families = [
        UniformFunctionFamily(4, 2),
        UniformFunctionFamily(3, 3),
        BalancedPredicateFamily(6),
        AffineFamily(3, 2),
        InnerProductFamily(3),
    ]
    for family in families:
        weights, values = family.support_matrix()
        assert weights.sum() == pytest.approx(1.0, abs=1e-12)
        assert values.shape == (family.support_size(), family.domain_size)
        assert values.max() < family.range_size


def test_sampling_determinism():
    rng = np.random.default_rng(0)
    for _ in range(100):
        seed = int(rng.integers(0, 2**63))
        family = [
            UniformFunctionFamily(5, 3),
            BalancedPredicateFamily(6),
            AffineFamily(3, 2),
            InnerProductFamily(4),
            ComposedFamily(BalancedPredicateFamily(4), AffineFamily(3, 2)),
        ][int(rng.integers(0, 5))]
        assert sample_function(family, seed) == sample_function(family, seed)


def test_sampled_balanced_predicates_are_balanced():
    family = BalancedPredicateFamily(2)
    support = [t for _, t in family.support()]
    for seed in range(20):
        assert sample_function(family, seed) in support


def test_affine_sampling_reproducible():
    family = AffineFamily(2, 1)
    assert sample_function(family, 123) == sample_function(family, 123)
    support = [t for _, t in family.support()]
    assert sample_function(family, 7) in support


def test_uniform_sampler_frequencies():
    # all 16 predicates on a 4-element domain within 3 sigma of 1/16
    family = UniformFunctionFamily(4, 2)
    rng = stream(42)
    samples = 100_000
    counts = np.zeros(16)
    for _ in range(samples):
        table = family.sample(rng)
        counts[int(table.values @ (1 << np.arange(4)))] += 1
    freq = counts / samples
    sigma = math.sqrt((1 / 16) * (15 / 16) / samples)
    assert np.abs(freq - 1 / 16).max() <= 3 * sigma


def test_collision_probability_uniform_all():
    assert collision_probability(UniformFunctionFamily(4, 2), 0, 3) == pytest.approx(0.5)
    assert collision_probability(UniformFunctionFamily(3, 4), 1, 2) == pytest.approx(0.25)


def test_collision_probability_affine_exact_half():
    family = AffineFamily(3, 1)
    for x in range(8):
        for xp in range(x + 1, 8):
            assert collision_probability(family, x, xp) == pytest.approx(0.5, abs=1e-15)


def test_collision_probability_balanced():
    for m in (2, 4, 6, 8, 16):
        family = BalancedPredicateFamily(m)
        expected = float(Fraction(m - 2, 2 * (m - 1)))
        assert collision_probability(family, 0, m - 1) == pytest.approx(expected, abs=1e-12)


def test_collision_probability_same_point_rejected():
    with pytest.raises(ValueError):
        collision_probability(UniformFunctionFamily(4, 2), 1, 1)
    with pytest.raises(ValueError):
        collision_probability_mc(UniformFunctionFamily(4, 2), 1, 1, 10, 0)


def test_collision_probability_mc_agrees():
    family = BalancedPredicateFamily(8)
    exact = collision_probability(family, 2, 5)
    estimate, stderr = collision_probability_mc(family, 2, 5, 20_000, seed=11)
    assert stderr < 0.005
    assert abs(estimate - exact) <= 4 * stderr


def test_is_two_universal_verdicts():
    assert is_two_universal(UniformFunctionFamily(4, 2)).two_universal
    assert is_two_universal(AffineFamily(3, 2)).two_universal
    assert is_two_universal(InnerProductFamily(4)).two_universal
    assert is_two_universal(BalancedPredicateFamily(6)).two_universal

    constant = ExplicitFamily(
        [FunctionTable(np.zeros(4, dtype=int), 2), FunctionTable(np.ones(4, dtype=int), 2)]
    )
    report = is_two_universal(constant)
    assert not report.two_universal
    assert report.worst_probability == pytest.approx(1.0)


def test_is_two_universal_domain_cap():
    with pytest.raises(EnumerationCapError):
        is_two_universal(AffineFamily(9, 1))


def test_compose_identity_outer_preserves_distribution():
    identity = ExplicitFamily([FunctionTable(np.array([0, 1]), 2)])
    inner = BalancedPredicateFamily(4)
    composed = compose(identity, inner)
    assert {t for _, t in composed.support()} == {t for _, t in inner.support()}
    weights = [w for w, _ in composed.support()]
    assert np.allclose(weights, 1.0 / 6.0)


def test_compose_deterministic_inner_collision():
    # with g fixed and g(x) != g(x'), the composed collision probability is
    # exactly the balanced-predicate collision probability on the range
    for bits in (1, 2, 3):
        size = 2**bits
        g = FunctionTable(np.arange(size).repeat(2) % size, size)
        inner = ExplicitFamily([g])
        composed = compose(BalancedPredicateFamily(size), inner)
        x, xp = 0, 2  # g(0) = 0, g(2) = 1 for every bits value
        assert g(x) != g(xp)
        expected = float(Fraction(size - 2, 2 * (size - 1)))
        assert collision_probability(composed, x, xp) == pytest.approx(expected, abs=1e-12)


def test_compose_affine_with_balanced_outer():
    composed = compose(BalancedPredicateFamily(4), AffineFamily(4, 2))
    report = is_two_universal(composed)
    assert report.two_universal
    assert report.threshold == pytest.approx(0.5)


def test_composition_preserves_two_universality():
    # random two-universal inner families, balanced outer
    rng = np.random.default_rng(13)
    cases = 0
    for output_bits, max_input in ((1, 4), (2, 3), (3, 2)):
        for _ in range(17):
            input_bits = int(rng.integers(1, max_input + 1))
            inner = random_two_universal_family(rng, input_bits, output_bits)
            assert is_two_universal(inner).two_universal
            composed = compose(BalancedPredicateFamily(2**output_bits), inner)
            assert is_two_universal(composed).two_universal
            cases += 1
    assert cases >= 50


def test_weighted_explicit_family():
    # non-uniform weights: collision probability is the weighted average
    tables = [
        FunctionTable(np.array([0, 0]), 2),  # collides everywhere
        FunctionTable(np.array([0, 1]), 2),  # never collides
    ]
    family = ExplicitFamily(tables, weights=[0.25, 0.75])
    assert collision_probability(family, 0, 1) == pytest.approx(0.25)
    assert is_two_universal(family).two_universal
    heavy_constant = ExplicitFamily(tables, weights=[0.75, 0.25])
    assert collision_probability(heavy_constant, 0, 1) == pytest.approx(0.75)
    assert not is_two_universal(heavy_constant).two_universal
    counts = {0: 0, 1: 0}
    rng = stream(31)
    for _ in range(2000):
        counts[family.sample(rng)(1)] += 1
    assert abs(counts[1] / 2000 - 0.75) < 0.05


def test_agreement_coefficient_values():
    family = BalancedPredicateFamily(4)
    assert agreement_coefficient(family, 2, 2) == 1.0
    assert agreement_coefficient(family, 0, 3) == pytest.approx(-1.0 / 3.0, abs=1e-12)
    assert agreement_coefficient(UniformFunctionFamily(4, 2), 0, 1) == pytest.approx(0.0)
    with pytest.raises(ValueError):
        agreement_coefficient(UniformFunctionFamily(3, 3), 0, 1)


def test_agreement_matrix_balanced_closed_form():
    for m in (2, 4, 8, 16):
        family = BalancedPredicateFamily(m)
        matrix = agreement_matrix(family)
        off = -1.0 / (m - 1)
        expected = np.full((m, m), off)
        np.fill_diagonal(expected, 1.0)
        assert np.abs(matrix - expected).max() <= 1e-12


def test_collision_matrix_symmetry():
    matrix = collision_matrix(AffineFamily(3, 1))
    assert np.allclose(matrix, matrix.T)
    assert np.allclose(np.diag(matrix), 1.0)


def test_family_json_shapes():
    family = AffineFamily(3, 2)
    blob = family.to_json(seed=9)
    assert blob == {
        "kind": "affine-gf2",
        "params": {"input_bits": 3, "output_bits": 2},
        "seed": 9,
    }
    composed = compose(BalancedPredicateFamily(4), family)
    blob = composed.to_json()
    assert blob["kind"] == "composed"
    assert blob["params"]["inner"]["kind"] == "affine-gf2"
    assert blob["params"]["outer"]["kind"] == "uniform-balanced"
