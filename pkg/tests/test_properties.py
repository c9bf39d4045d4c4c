import numpy as np
import pytest

from ctigbench.causal_core import (
    AdjacencySpec,
    CausalModel,
    generate_sequence,
    sample_random_model,
)
from ctigbench.ctig_builder import five_node_preset, build_ctig_model
from ctigbench.errors import CapacityError, EstimationError, ParameterError
from ctigbench.properties import (
    estimate_pns,
    interventional_pns_oracle,
    is_markovian,
    is_monotonic_bruteforce,
    is_monotonic_closed_form,
    monotonicity_survey,
    structural_checks,
)


def model_with_theta(theta, rates=None, tau_bar=1.0):
    theta = np.asarray(theta, dtype=float)
    rates = np.ones(theta.shape[0]) if rates is None else np.asarray(rates, dtype=float)
    return CausalModel(rates, theta, tau_bar)


class TestClosedForm:
    def test_positive_influence_is_monotone(self):
        model = model_with_theta([[0.0, 0.7], [0.0, 0.0]])
        assert is_monotonic_closed_form(model, 0, 1) is True

    def test_negative_influence_is_not(self):
        model = model_with_theta([[0.0, -0.1], [0.0, 0.0]])
        assert is_monotonic_closed_form(model, 0, 1) is False

    def test_non_parent_is_an_error(self):
        model = model_with_theta([[0.0, 0.0], [0.0, 0.0]])
        with pytest.raises(ParameterError):
            is_monotonic_closed_form(model, 0, 1)


class TestBruteForce:
    def test_negative_influence_witnessed_by_empty_subset(self):
        model = model_with_theta([[0.0, -0.1, 0.4], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]])
        verdict = is_monotonic_bruteforce(model, 0, 1)
        assert verdict.verdict is False
        assert verdict.witness == ()

    def test_nonnegative_influence_always_monotone(self):
        model = model_with_theta([[0.3, 0.2, -0.9], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]])
        for j in (0, 1):
            assert is_monotonic_bruteforce(model, 0, j).verdict is True

    def test_cap_enforced(self):
        n = 23
        theta = np.zeros((n, n))
        theta[0, 1:] = 0.01
        model = model_with_theta(theta)
        with pytest.raises(CapacityError):
            is_monotonic_bruteforce(model, 0, 1, cap=20)

    def test_witness_actually_violates(self):
        rng = np.random.default_rng(0)
        found = 0
        for seed in range(40):
            model = sample_random_model(6, AdjacencySpec.erdos_renyi(0.6), seed=seed)
            for i in range(model.n):
                for j in model.parents(i):
                    verdict = is_monotonic_bruteforce(model, i, int(j))
                    if verdict.verdict:
                        continue
                    found += 1
                    subset_sum = sum(model.theta[i, k] for k in verdict.witness)
                    assert subset_sum >= 0.0
                    assert model.theta[i, int(j)] + subset_sum < 0.0
        assert found > 0

    def test_agrees_with_closed_form_across_models(self):
        for seed in range(50):
            model = sample_random_model(6, AdjacencySpec.erdos_renyi(0.6), seed=seed)
            for i in range(model.n):
                for j in model.parents(i):
                    closed = is_monotonic_closed_form(model, i, int(j))
                    brute = is_monotonic_bruteforce(model, i, int(j)).verdict
                    assert closed == brute

    def test_survey_covers_all_structural_pairs(self):
        model = sample_random_model(5, AdjacencySpec.erdos_renyi(0.5), seed=9)
        expected = sum(model.parents(i).size for i in range(model.n))
        assert len(monotonicity_survey(model)) == expected


class TestMarkovian:
    def test_diagonal_support(self):
        model = model_with_theta([[0.5, 0.0], [0.0, -0.4]])
        assert is_markovian(model) is True

    def test_off_diagonal_entry(self):
        model = model_with_theta([[0.5, 0.1], [0.0, -0.4]])
        assert is_markovian(model) is False

    def test_zero_matrix_vacuously_diagonal(self):
        model = model_with_theta(np.zeros((3, 3)))
        assert is_markovian(model) is True


class TestStructuralChecks:
    @pytest.mark.parametrize("seed", [0, 1])
    def test_sampled_models_pass(self, seed):
        model = sample_random_model(5, AdjacencySpec.erdos_renyi(0.7), seed=seed)
        assert all(v.verdict for v in structural_checks(model))

    def test_zero_model_passes(self):
        assert all(v.verdict for v in structural_checks(model_with_theta(np.zeros((4, 4)))))

    def test_ctig_model_passes(self):
        model, _, _ = build_ctig_model(five_node_preset(seed=2))
        assert all(v.verdict for v in structural_checks(model))


class TestPns:
    def test_single_positive_parent(self):
        # effect fires for both flag values (0.6 >= 0 and empty sum >= 0):
        # both conditionals are 1, both estimates are exactly 0
        model = model_with_theta([[0.0, 0.6], [0.0, 0.0]], rates=[1.0, 1.0])
        triggers, seq = generate_sequence(model, 5000.0, seed=0)
        estimate = estimate_pns(seq, triggers[0], 0, 1, model.tau_bar)
        assert estimate.value == 0.0
        assert estimate.count_active >= 500 and estimate.count_inactive >= 500
        oracle = interventional_pns_oracle(model, 0, 1, 5000.0, seed=0)
        assert oracle == 0.0

    def test_single_negative_parent(self):
        # flag 1 blocks (sum -0.6 < 0), flag 0 fires: conditionals 0 vs 1
        model = model_with_theta([[0.0, -0.6], [0.0, 0.0]], rates=[1.0, 1.0])
        triggers, seq = generate_sequence(model, 5000.0, seed=1)
        estimate = estimate_pns(seq, triggers[0], 0, 1, model.tau_bar)
        assert estimate.value == -1.0
        assert is_monotonic_closed_form(model, 0, 1) is False  # precondition violated
        oracle = interventional_pns_oracle(model, 0, 1, 5000.0, seed=1)
        assert oracle == -1.0

    def test_two_parent_case_matches_oracle(self):
        theta = np.zeros((3, 3))
        theta[0, 1] = 0.5
        theta[0, 2] = -0.8
        model = model_with_theta(theta, rates=[1.0, 1.0, 1.0])
        triggers, seq = generate_sequence(model, 10_000.0, seed=2)
        estimate = estimate_pns(seq, triggers[0], 0, 1, model.tau_bar)
        oracle = interventional_pns_oracle(model, 0, 1, 10_000.0, seed=2)
        assert abs(estimate.value - oracle) <= 0.05

    def test_forcing_a_non_parent_is_a_no_op(self):
        model = model_with_theta([[0.0, 0.5, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]])
        assert interventional_pns_oracle(model, 0, 2, 2000.0, seed=3) == 0.0

    def test_empty_cell_is_an_estimation_error(self):
        # parent rate so high its flag is (almost surely) always on
        model = model_with_theta([[0.0, 0.4], [0.0, 0.0]], rates=[1.0, 50.0])
        triggers, seq = generate_sequence(model, 500.0, seed=4)
        with pytest.raises(EstimationError):
            estimate_pns(seq, triggers[0], 0, 1, model.tau_bar)

    def test_estimate_range(self):
        for seed in range(5):
            model = sample_random_model(4, AdjacencySpec.erdos_renyi(0.8), seed=seed)
            triggers, seq = generate_sequence(model, 2000.0, seed=seed)
            for i in range(model.n):
                for j in model.parents(i):
                    try:
                        est = estimate_pns(seq, triggers[i], i, int(j), model.tau_bar)
                    except EstimationError:
                        continue
                    assert -1.0 <= est.value <= 1.0
