import numpy as np
import pytest

from config import MONOTONE_SLACK
from src.channel import (
    CpMap,
    StinespringDilation,
    choi_distance,
    compose,
    depolarizing,
    entanglement_fidelity,
    identity_channel,
)
from src.errors import DegenerateInput, NormalizationError
from src.ingestion import (
    make_rng,
    random_channel,
    random_density,
    random_dilation,
    random_ensemble,
    random_overlap_instance,
    random_povm,
    random_pure,
    random_rw_functional,
)
from src.iterate import (
    IterationTrace,
    StopReason,
    channel_fidelity_functional,
    iterate_overlap_to_convergence,
    iterate_povm_to_convergence,
    iterate_rw_to_convergence,
    overlap_iterate,
    overlap_lambda_at,
    overlap_q,
    overlap_seminorm,
    recovery_functional,
    run_to_convergence,
    rw_iterate,
    rw_lambda,
    small_angle_guess,
)
from src.measure import Ensemble, helstrom_optimal
from src.numlin import maximally_entangled, trace_norm
from src.overlap import OverlapInstance, hat, overlap_bounds, overlap_lambda, quadratic_overlapper

HELSTROM_ZERO_PLUS = (1 + 1 / np.sqrt(2)) / 2

def halve_towards_one(x: float) -> float:
    return (x + 1) / 2


def test_run_to_convergence_stops_on_tolerance():
    final, trace = run_to_convergence(0.0, halve_towards_one, lambda x: (x, x), tol=1e-6)
    assert trace.stop_reason is StopReason.TOLERANCE
    assert trace.converged
    assert abs(final - 1.0) < 1e-5
    assert trace.steps == len(trace.objectives) - 1


def test_run_to_convergence_stops_on_max_iters():
    final, trace = run_to_convergence(0.0, halve_towards_one, lambda x: (x, x), tol=1e-12, max_iters=3)
    assert trace.stop_reason is StopReason.MAX_ITERS
    assert not trace.converged
    assert trace.steps == 3
    assert final == pytest.approx(0.875)


def test_run_to_convergence_rejects_bad_settings():
    with pytest.raises(NormalizationError):
        run_to_convergence(0.0, halve_towards_one, lambda x: (x, x), tol=0.0)
    with pytest.raises(NormalizationError):
        run_to_convergence(0.0, halve_towards_one, lambda x: (x, x), max_iters=0)


def test_degenerate_steps():
    def first_fails(x):
        raise DegenerateInput("no successor")

    with pytest.raises(DegenerateInput):
        run_to_convergence(0.0, first_fails, lambda x: (x, x))

    def later_fails(x):
        if x >= 0.5:
            raise DegenerateInput("no successor")
        return halve_towards_one(x)

    final, trace = run_to_convergence(0.0, later_fails, lambda x: (x, x))
    assert trace.stop_reason is StopReason.DEGENERATE
    assert trace.steps == 1
    assert final == 0.5


def test_trace_reports_decreases():
    trace = IterationTrace()
    for objective in (0.25, 0.16, 0.36):
        trace.record(objective, 0.0)
    assert trace.decreases() == [1]
    assert not trace.is_monotone()
    assert trace.final_objective == pytest.approx(0.36)
    assert set(trace.to_dict()) == {
        "label", "seminorms", "lambda", "objectives", "stop_reason", "steps", "converged", "oracle_value",
    }


def test_trace_oracle_sandwich():
    trace = IterationTrace(oracle_value=0.81)
    trace.record(0.64, 0.8)
    trace.record(0.81, 0.9)
    assert trace.satisfies_oracle_sandwich()
    trace.record(0.9, 0.9)
    assert not trace.satisfies_oracle_sandwich()


@pytest.mark.parametrize("seed", range(100))
def test_jrf_iteration_is_monotone(seed):
    rng = make_rng(300 + seed)
    m, d = 2 + seed % 4, 2 + (seed // 4) % 3
    e = random_ensemble(rng, m, d)
    _, trace = iterate_povm_to_convergence(e, start=random_povm(rng, m, d), tol=1e-14, max_iters=50)
    assert trace.is_monotone(MONOTONE_SLACK)
    if m == 2:
        assert trace.satisfies_oracle_sandwich()


def test_jrf_identity_start_on_zero_one_plus(zero_one_plus):
    final, trace = iterate_povm_to_convergence(zero_one_plus)
    assert abs(trace.objectives[0] - HELSTROM_ZERO_PLUS) < 1e-9
    assert abs(trace.oracle_value - HELSTROM_ZERO_PLUS) < 1e-9
    assert trace.converged
    assert final.is_complete


@pytest.mark.parametrize("seed", range(5))
def test_jrf_reaches_helstrom_for_pure_pairs(seed):
    rng = make_rng(700 + seed)
    e = Ensemble.from_pure([0.6, 0.4], [random_pure(rng, 2), random_pure(rng, 2)])
    _, trace = iterate_povm_to_convergence(e, tol=1e-13, max_iters=2000)
    optimum = helstrom_optimal(e)[0]
    assert trace.final_objective >= optimum - 1e-6
    assert trace.final_objective <= optimum + 1e-9


@pytest.mark.parametrize("seed", range(12))
def test_jrf_reaches_helstrom_for_mixed_pairs(seed):
    rng = make_rng(1000 + seed)
    e = random_ensemble(rng, 2, 2 + seed % 3)
    _, trace = iterate_povm_to_convergence(e, tol=1e-15, max_iters=5000)
    optimum = helstrom_optimal(e)[0]
    assert trace.is_monotone(MONOTONE_SLACK)
    assert trace.final_objective >= optimum - 1e-6
    assert trace.final_objective <= optimum + 1e-9


def test_jrf_from_perfect_start_stops_at_once(orthogonal_pair):
    _, povm = helstrom_optimal(orthogonal_pair)
    _, trace = iterate_povm_to_convergence(orthogonal_pair, start=povm)
    assert trace.steps == 1
    assert trace.converged
    assert abs(trace.final_objective - 1.0) < 1e-12


def test_channel_fidelity_fixed_point_at_identity():
    f = channel_fidelity_functional(2)
    identity = identity_channel(2)
    assert f.value(identity) == pytest.approx(4.0)
    assert rw_lambda(f, identity) == pytest.approx(2.0)
    assert choi_distance(rw_iterate(f, identity), identity) < 1e-10
    final, trace = iterate_rw_to_convergence(f, identity)
    assert trace.converged and trace.steps == 1
    assert choi_distance(final, identity) < 1e-10


@pytest.mark.parametrize("seed", range(100))
def test_rw_iteration_is_monotone(seed):
    rng = make_rng(40 + seed)
    f = random_rw_functional(rng, 2, 3)
    final, trace = iterate_rw_to_convergence(f, random_channel(rng, 2, 3), tol=1e-14, max_iters=50)
    assert trace.is_monotone(MONOTONE_SLACK)
    assert final.is_operation
    assert all(
        trace.seminorms[i + 1] >= trace.lambda_values[i] - 1e-9 for i in range(len(trace.seminorms) - 1)
    )


def test_recovery_functional_is_entanglement_fidelity(rng):
    channel = random_channel(rng, 2, 3)
    rho = random_density(rng, 2)
    f = recovery_functional(channel, rho)
    r = random_channel(rng, 3, 2)
    assert abs(f.value(r) - entanglement_fidelity(compose(r, channel), rho)) < 1e-12


def test_rw_recovery_of_depolarizing_channel():
    rho = np.eye(2) / 2
    f = recovery_functional(depolarizing(0.5, 2), rho)
    _, trace = iterate_rw_to_convergence(f, identity_channel(2))
    assert trace.final_objective >= 4 / 7 - 1e-6
    assert trace.is_monotone(MONOTONE_SLACK)


def test_rw_needs_an_operation_to_start():
    with pytest.raises(NormalizationError):
        iterate_rw_to_convergence(channel_fidelity_functional(2), CpMap.from_kraus([2 * np.eye(2)]))


@pytest.mark.parametrize("dims", [(2, 2, 2), (2, 3, 2), (3, 2, 2)])
def test_small_angle_iterate_is_quadratic_overlapper(dims, rng):
    instance = random_overlap_instance(rng, *dims)
    guess = small_angle_guess(instance)
    assert abs(overlap_seminorm(instance, guess) ** 2 - hat(instance).trace) < 1e-10
    assert abs(trace_norm(overlap_q(instance, guess)) - overlap_lambda(instance)) < 1e-10
    assert abs(overlap_lambda_at(instance, guess) ** 2 - overlap_bounds(instance).lambda_sq) < 1e-10
    successor = overlap_iterate(instance, guess)
    assert choi_distance(successor.to_map(), quadratic_overlapper(instance)) < 1e-8


@pytest.mark.parametrize("seed", range(100))
def test_overlap_iteration_is_monotone(seed):
    rng = make_rng(60 + seed)
    instance = random_overlap_instance(rng, 2, 2, 2)
    start = random_dilation(rng, 2, 2, 4)
    final, trace = iterate_overlap_to_convergence(instance, start=start, tol=1e-14, max_iters=30)
    assert trace.is_monotone(MONOTONE_SLACK)
    assert final.contraction_norm() <= 1 + 1e-9


def test_overlap_iteration_from_small_angle_guess_beats_lower_bound(rng):
    instance = random_overlap_instance(rng, 2, 3, 2)
    report = overlap_bounds(instance)
    _, trace = iterate_overlap_to_convergence(instance, max_iters=200)
    assert abs(trace.objectives[0] - report.achieved) < 1e-9
    assert trace.final_objective >= report.lambda_sq - 1e-9
    assert trace.final_objective <= report.upper + 1e-9


def test_overlap_iteration_on_perfect_instance():
    phi = maximally_entangled(2)
    instance = OverlapInstance(dim_k=2, dim_h=2, dim_l=2, mu=phi @ phi.conj().T, phi=phi)
    _, trace = iterate_overlap_to_convergence(instance)
    assert trace.converged
    assert abs(trace.final_objective - 1.0) < 1e-9


def test_overlap_iteration_needs_a_contraction(rng):
    instance = random_overlap_instance(rng, 2, 2, 2)
    u = random_dilation(rng, 2, 2, 2)
    stretched = StinespringDilation(dim_in=2, dim_out=2, dim_env=2, isometry=2 * u.isometry)
    with pytest.raises(NormalizationError):
        iterate_overlap_to_convergence(instance, start=stretched)
