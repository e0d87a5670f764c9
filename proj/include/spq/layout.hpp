#pragma once

#include <optional>
#include <vector>

#include "spq/gate.hpp"

namespace spq {

/// Contiguous qubit range [first, first + count).
struct QubitRange {
    unsigned first = 0;
    unsigned count = 0;

    unsigned end() const { return first + count; }
    std::vector<unsigned> qubits() const;
    bool overlaps(const QubitRange& other) const;
    /// Value of this register inside a full basis index.
    Index extract(Index basis) const {
        return count == 0 ? 0 : (basis >> first) & ((Index{1} << count) - 1);
    }
    Index place(Index value) const { return value << first; }
};

/// Role-to-qubit assignment. y occupies the low qubits, the scenario register
/// sits directly above it, then the QAE ancilla, then the estimate register.
struct RegisterLayout {
    QubitRange y;
    QubitRange xi;
    std::optional<unsigned> ancilla;
    QubitRange estimate;

    /// y = [0, n_y), xi = [n_y, n_y + n_xi), no ancilla/estimate.
    static RegisterLayout dqa_only(unsigned n_y, unsigned n_xi);
    /// dqa_only plus ancilla at n_y + n_xi and m estimate qubits above it.
    static RegisterLayout with_qae(unsigned n_y, unsigned n_xi, unsigned m);

    /// y + xi (+ ancilla).
    unsigned system_qubits() const;
    /// Every qubit in the layout.
    unsigned total_qubits() const;
    std::vector<unsigned> system_qubit_list() const;

    /// Throws std::invalid_argument when ranges overlap.
    void validate() const;
};

} // namespace spq
