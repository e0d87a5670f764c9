#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "spq/layout.hpp"
#include "spq/oracle.hpp"
#include "spq/statevector.hpp"

namespace spq::qae {

/// The requested register does not fit the simulator.
class BudgetExceeded : public std::length_error {
  public:
    using std::length_error::length_error;
};

enum class QpeMethod {
    /// H layer, controlled Q^(2^j) gate by gate on each estimate qubit, QFT^dagger.
    ControlledCircuit,
    /// Builds sum_b |b> Q^b A|0> / sqrt(M) directly (M - 1 Grover steps on the
    /// system qubits), then the same QFT^dagger. Same state, far fewer gates.
    PowerSeries,
};

struct QaeConfig {
    unsigned m = 6;
    std::size_t repetitions = 1;
    std::uint64_t rng_seed = 0;
    QpeMethod method = QpeMethod::PowerSeries;

    std::size_t M() const { return std::size_t{1} << m; }
    /// Applications of A (or its adjoint) in one run: 2^(m+1) - 1.
    std::size_t a_applications() const { return 2 * M() - 1; }
    /// Throws std::invalid_argument unless 1 <= m <= 12 and repetitions >= 1.
    void validate() const;
};

struct EstimateResult {
    Index b = 0;
    double a_hat = 0.0;
    double phi_hat = 0.0;
    std::optional<double> a_true;
    std::optional<bool> within_bound;
};

/// A = oracle after annealer.
OperatorSequence build_A(const OperatorSequence& dqa, const OperatorSequence& oracle);

/// Q = A S_0 A^dagger S_psi0 in operator notation, i.e. applied as: phase flip on
/// ancilla = |0>, A^dagger, reflection about |0...0> of the system qubits, A.
/// Throws std::invalid_argument when the layout has no ancilla.
OperatorSequence build_grover(const OperatorSequence& A, const RegisterLayout& layout);

/// QFT |x> = M^(-1/2) sum_k exp(2 pi i x k / M) |k>, with qubits[0] the
/// least significant bit. Swaps are built from three CX gates.
OperatorSequence qft(const std::vector<unsigned>& qubits);
OperatorSequence inverse_qft(const std::vector<unsigned>& qubits);

/// Probability of ancilla = |1> after A on |0...0>.
double exact_amplitude(const OperatorSequence& A, const RegisterLayout& layout);

/// Final QPE state over the full layout (system and estimate qubits).
/// Throws BudgetExceeded when the layout is wider than kMaxQubits.
StateVector qpe_state(const OperatorSequence& A, const RegisterLayout& layout,
                      QpeMethod method);

/// sin^2(pi b / 2^m).
double grid_value(Index b, unsigned m);

/// pi / M + pi^2 / M^2.
double error_bound(std::size_t M);

/// |a_hat - a_true| <= error_bound(M).
bool error_bound_check(double a_hat, double a_true, std::size_t M);

/// Exact distribution of the measured b.
std::vector<double> estimate_distribution(const StateVector& qpe, const RegisterLayout& layout);

/// Draws config.repetitions samples of b from one QPE state and converts
/// each to a_hat and phi_hat (through the oracle readback). a_true and
/// within_bound are always filled from the exact amplitude of A.
std::vector<EstimateResult> run_qae(const OperatorSequence& A, const QaeConfig& config,
                                    const RegisterLayout& layout,
                                    const oracle::OracleKind& kind);

/// Same as run_qae but from an already computed QPE state.
std::vector<EstimateResult> sample_estimates(const StateVector& qpe, double a_true,
                                             const QaeConfig& config,
                                             const RegisterLayout& layout,
                                             const oracle::OracleKind& kind);

/// Frequency of ancilla = |1> over `shots` samples of A|0...0>.
double mc_estimate(const OperatorSequence& A, std::size_t shots, const RegisterLayout& layout,
                   std::uint64_t rng_seed);

/// Frequency of successes in `shots` Bernoulli(a) draws.
double mc_estimate_from_amplitude(double a, std::size_t shots, Rng& rng);

/// Median of values (mean of the two middle elements for even counts).
double median(std::vector<double> values);

} // namespace spq::qae
