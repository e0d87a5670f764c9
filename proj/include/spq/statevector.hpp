#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "spq/gate.hpp"
#include "spq/random.hpp"

namespace spq {

/// Simulator cap. Beyond this the dense vector no longer fits a desktop.
inline constexpr unsigned kMaxQubits = 24;

/// Dense amplitude vector over num_qubits qubits. Qubit q is bit q of the
/// amplitude index (little-endian).
class StateVector {
  public:
    /// |0...0>.
    explicit StateVector(unsigned num_qubits);

    /// Takes ownership of `amplitudes`; throws std::invalid_argument unless
    /// the length is a power of two and the norm is 1 within 1e-10.
    static StateVector from_amplitudes(std::vector<Complex> amplitudes);

    /// Computational basis state |index>.
    static StateVector basis(unsigned num_qubits, Index index);

    unsigned num_qubits() const { return num_qubits_; }
    std::size_t size() const { return amps_.size(); }

    std::span<const Complex> amplitudes() const { return amps_; }
    std::span<Complex> amplitudes() { return amps_; }
    const Complex& operator[](Index i) const { return amps_[i]; }

    double norm() const;

  private:
    StateVector(unsigned num_qubits, std::vector<Complex> amps)
        : num_qubits_(num_qubits), amps_(std::move(amps)) {}

    unsigned num_qubits_;
    std::vector<Complex> amps_;
};

/// <lhs|rhs>.
Complex inner_product(const StateVector& lhs, const StateVector& rhs);

/// |<lhs|rhs>|^2.
double fidelity(const StateVector& lhs, const StateVector& rhs);

/// Largest per-amplitude |lhs_i - rhs_i|.
double max_abs_difference(const StateVector& lhs, const StateVector& rhs);

enum class Direction { Forward, Adjoint };

/// Applies one gate in place after validating it against the state width.
void apply(StateVector& state, const Gate& gate);

/// Forward: gates in order. Adjoint: adjoint gates in reverse order.
void apply_sequence(StateVector& state, const OperatorSequence& seq,
                    Direction direction = Direction::Forward);

/// Applies seq `repetitions` times on the subspace where `control` is |1>,
/// by adding the control to every gate. Throws std::invalid_argument if the
/// control collides with a qubit used by seq.
void apply_controlled_sequence(StateVector& state, const OperatorSequence& seq,
                               unsigned control, std::size_t repetitions = 1);

/// Probability that `qubit` reads `outcome`.
double marginal_probability(const StateVector& state, unsigned qubit, int outcome);

/// Joint distribution of the listed qubits; entry v has bit i equal to the
/// outcome of qubits[i].
std::vector<double> register_distribution(const StateVector& state,
                                          std::span<const unsigned> qubits);

/// Draws from a discrete distribution given as (unnormalized) weights.
class DiscreteSampler {
  public:
    explicit DiscreteSampler(std::span<const double> weights);
    Index operator()(Rng& rng) const;

  private:
    std::vector<double> cdf_;
};

/// Samples the listed qubits once. The state is not collapsed.
Index measure_register(const StateVector& state, std::span<const unsigned> qubits, Rng& rng);

/// `shots` independent samples of the listed qubits from the same state.
std::vector<Index> sample_register(const StateVector& state, std::span<const unsigned> qubits,
                                   std::size_t shots, Rng& rng);

/// Integer formed by bits qubits[0], qubits[1], ... of index (qubits[0] lowest).
Index gather_bits(Index index, std::span<const unsigned> qubits);

/// Inverse of gather_bits: places bit i of value at position qubits[i].
Index scatter_bits(Index value, std::span<const unsigned> qubits);

} // namespace spq
