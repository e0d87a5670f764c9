#pragma once

#include <optional>
#include <span>
#include <vector>

#include "spq/layout.hpp"
#include "spq/model.hpp"
#include "spq/statevector.hpp"

namespace spq::dqa {

/// Linear annealing schedule with the Trotter step absorbed: layer t in
/// [1, T] uses cost angle t/T and mixer angle 1 - t/T. T = 0 means no layers
/// (initial state only).
struct AnnealSchedule {
    unsigned T = 1;

    double cost_angle(unsigned t) const { return static_cast<double>(t) / T; }
    double mixer_angle(unsigned t) const { return 1.0 - static_cast<double>(t) / T; }
};

struct ScenarioOverlap {
    Bits xi = 0;
    /// Probability mass on the optimal y set given xi; empty when the state
    /// carries no weight on xi.
    std::optional<double> overlap;
};

struct DqaDiagnostics {
    double expectation_hq = 0.0;
    double phi_exact = 0.0;
    /// expectation_hq - phi_exact.
    double delta = 0.0;
    /// delta rebuilt from the per-scenario conditional amplitudes.
    double delta_decomposed = 0.0;
    std::vector<ScenarioOverlap> overlaps;

    /// Smallest defined overlap (1 when none are defined).
    double worst_overlap() const;
};

/// Unitary (Householder reflection) whose first column is `target`, as a
/// DenseUnitary on `qubits`. `target` must be real, unit-norm, length
/// 2^|qubits|. Returns an empty sequence when target is |0...0>.
OperatorSequence prepare_real_state(std::span<const double> target,
                                    std::vector<unsigned> qubits, std::string label);

/// Uniform superposition of all weight-k strings on `qubits`
/// (defaults to [0, n) when empty).
OperatorSequence prepare_dicke(unsigned n, unsigned k, std::vector<unsigned> qubits = {});

/// sum_w sqrt(p(w)) |xi_w> on `qubits`: H layer for the uniform case, X gates
/// for a point mass, a dense preparation otherwise.
OperatorSequence prepare_distribution(const DiscreteDistribution& dist,
                                      std::vector<unsigned> qubits = {});

/// Cost phase layer exp(i gamma q) for the unit commitment instance:
/// CP(gamma c_j) on (xi_j, y_j) for every turbine.
OperatorSequence cost_layer(const UnitCommitmentModel& model, const RegisterLayout& layout,
                            double gamma);

/// Penalty layer: X(xi_j) CP(gamma c_r) X(xi_j) for every turbine.
OperatorSequence penalty_layer(const UnitCommitmentModel& model, const RegisterLayout& layout,
                               double gamma);

/// Product of PartialSwap(beta) over y pairs j < k, j-major.
OperatorSequence hamming_mixer_layer(const RegisterLayout& layout, double beta);

/// Scenario-controlled annealing circuit for the unit commitment instance.
/// Throws std::invalid_argument when x > d or widths disagree.
OperatorSequence build_dqa(const UnitCommitmentModel& model, unsigned x,
                           const DiscreteDistribution& dist, const AnnealSchedule& schedule,
                           const RegisterLayout& layout);

/// Same construction for a generic diagonal problem: diagonal cost phase
/// exp(i a q) over y and xi, then the problem's mixer on y.
OperatorSequence build_dqa(const GenericDiagonalProblem& problem,
                           const DiscreteDistribution& dist, const AnnealSchedule& schedule,
                           const RegisterLayout& layout);

/// Runs seq on |0...0> over the layout's qubits.
StateVector run_dqa(const OperatorSequence& seq, const RegisterLayout& layout);

/// <H_Q> computed exactly from the amplitudes.
double expectation_hq(const StateVector& state, const CostTable& table,
                      const RegisterLayout& layout);

/// The per-scenario optimized state sum_w sqrt(p(w)) |y*_w>|xi_w> over the
/// layout's qubits.
StateVector optimal_state(const CostTable& table, const DiscreteDistribution& dist,
                          const RegisterLayout& layout);

/// Circuit preparing optimal_state from |0...0> on y and xi.
OperatorSequence prepare_optimal_state(const CostTable& table, const DiscreteDistribution& dist,
                                       const RegisterLayout& layout);

/// Residual temperature and per-scenario convergence of a state.
DqaDiagnostics residual_diagnostics(const StateVector& state, const CostTable& table,
                                    const DiscreteDistribution& dist,
                                    const RegisterLayout& layout);

/// Fast exact path for the annealing circuit. The scenario register only
/// controls diagonal phases and the mixer never touches it, so each scenario's
/// block evolves independently inside the feasible subspace of y. Produces the
/// same diagnostics as build_dqa + run_dqa + residual_diagnostics without
/// materializing the full state vector.
DqaDiagnostics anneal_by_scenario(const CostTable& table, const DiscreteDistribution& dist,
                                  const AnnealSchedule& schedule, MixerKind mixer);

} // namespace spq::dqa
