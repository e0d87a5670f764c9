#include "spq/gate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace spq {

double unitarity_defect(std::size_t dim, std::span<const Complex> data) {
    double worst = 0.0;
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            Complex acc{0.0, 0.0};
            for (std::size_t k = 0; k < dim; ++k) {
                acc += std::conj(data[k * dim + r]) * data[k * dim + c];
            }
            if (r == c) {
                acc -= 1.0;
            }
            worst = std::max(worst, std::abs(acc));
        }
    }
    return worst;
}

std::shared_ptr<const DenseMatrix> make_unitary(std::size_t dim, std::vector<Complex> data,
                                                double tol) {
    if (dim == 0 || data.size() != dim * dim) {
        throw std::invalid_argument("dense unitary: data size does not match dimension");
    }
    const double defect = unitarity_defect(dim, data);
    if (!(defect <= tol)) {
        throw std::invalid_argument("dense unitary: matrix is not unitary (defect " +
                                    std::to_string(defect) + ")");
    }
    return std::shared_ptr<const DenseMatrix>(new DenseMatrix(dim, std::move(data)));
}

DenseMatrix DenseMatrix::adjoint() const {
    std::vector<Complex> out(data_.size());
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t c = 0; c < dim_; ++c) {
            out[c * dim_ + r] = std::conj(data_[r * dim_ + c]);
        }
    }
    return DenseMatrix(dim_, std::move(out));
}

std::string to_string(GateKind kind) {
    switch (kind) {
    case GateKind::H: return "H";
    case GateKind::X: return "X";
    case GateKind::RX: return "RX";
    case GateKind::RY: return "RY";
    case GateKind::Phase: return "Phase";
    case GateKind::PartialSwap: return "PartialSwap";
    case GateKind::DenseUnitary: return "DenseUnitary";
    case GateKind::Diagonal: return "Diagonal";
    case GateKind::MultiplexedRY: return "MultiplexedRY";
    case GateKind::Reflection0: return "Reflection0";
    case GateKind::AncillaPhaseFlip: return "AncillaPhaseFlip";
    }
    return "?";
}

std::vector<unsigned> qubits_of(const Gate& gate) {
    std::vector<unsigned> out = gate.targets;
    out.insert(out.end(), gate.selectors.begin(), gate.selectors.end());
    for (const auto& c : gate.controls) {
        out.push_back(c.qubit);
    }
    return out;
}

namespace {

std::size_t expected_targets(GateKind kind) {
    switch (kind) {
    case GateKind::H:
    case GateKind::X:
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::Phase:
    case GateKind::MultiplexedRY:
    case GateKind::AncillaPhaseFlip: return 1;
    case GateKind::PartialSwap: return 2;
    default: return 0; // variable
    }
}

} // namespace

void validate(const Gate& gate, unsigned num_qubits) {
    const auto all = qubits_of(gate);
    std::unordered_set<unsigned> seen;
    for (unsigned q : all) {
        if (q >= num_qubits) {
            throw std::out_of_range(to_string(gate.kind) + ": qubit " + std::to_string(q) +
                                    " out of range for " + std::to_string(num_qubits) +
                                    " qubits");
        }
        if (!seen.insert(q).second) {
            throw std::invalid_argument(to_string(gate.kind) + ": qubit " + std::to_string(q) +
                                        " used more than once");
        }
    }
    const std::size_t n_targets = expected_targets(gate.kind);
    if (n_targets != 0 && gate.targets.size() != n_targets) {
        throw std::invalid_argument(to_string(gate.kind) + ": wrong number of targets");
    }
    if (gate.targets.empty()) {
        throw std::invalid_argument(to_string(gate.kind) + ": no targets");
    }
    switch (gate.kind) {
    case GateKind::DenseUnitary:
        if (!gate.matrix || gate.matrix->dim() != (std::size_t{1} << gate.targets.size())) {
            throw std::invalid_argument("DenseUnitary: matrix dimension does not match targets");
        }
        break;
    case GateKind::Diagonal:
        if (!gate.table || gate.table->size() != (std::size_t{1} << gate.targets.size())) {
            throw std::invalid_argument("Diagonal: table size does not match targets");
        }
        break;
    case GateKind::MultiplexedRY:
        if (!gate.table || gate.table->size() != (std::size_t{1} << gate.selectors.size())) {
            throw std::invalid_argument("MultiplexedRY: table size does not match selectors");
        }
        break;
    default:
        if (!gate.selectors.empty()) {
            throw std::invalid_argument(to_string(gate.kind) + ": selectors not supported");
        }
        break;
    }
}

Gate adjoint(const Gate& gate) {
    Gate out = gate;
    switch (gate.kind) {
    case GateKind::H:
    case GateKind::X:
    case GateKind::Reflection0:
    case GateKind::AncillaPhaseFlip: break;
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::Phase:
    case GateKind::PartialSwap:
    case GateKind::Diagonal:
    case GateKind::MultiplexedRY: out.angle = -gate.angle; break;
    case GateKind::DenseUnitary:
        out.matrix = std::make_shared<const DenseMatrix>(gate.matrix->adjoint());
        break;
    }
    return out;
}

Gate with_control(Gate gate, Control control) {
    const auto used = qubits_of(gate);
    if (std::find(used.begin(), used.end(), control.qubit) != used.end()) {
        throw std::invalid_argument("control qubit " + std::to_string(control.qubit) +
                                    " collides with " + to_string(gate.kind) + " operands");
    }
    gate.controls.push_back(control);
    return gate;
}

namespace gates {

namespace {
Gate single(GateKind kind, unsigned q, double angle = 0.0) {
    Gate g;
    g.kind = kind;
    g.targets = {q};
    g.angle = angle;
    return g;
}
} // namespace

Gate h(unsigned q) { return single(GateKind::H, q); }
Gate x(unsigned q) { return single(GateKind::X, q); }
Gate cx(unsigned control, unsigned target) {
    return with_control(single(GateKind::X, target), {control, true});
}
Gate rx(unsigned q, double theta) { return single(GateKind::RX, q, theta); }
Gate ry(unsigned q, double theta) { return single(GateKind::RY, q, theta); }
Gate phase(unsigned q, double theta) { return single(GateKind::Phase, q, theta); }

Gate controlled_phase(unsigned control, unsigned target, double theta) {
    return with_control(phase(target, theta), {control, true});
}

Gate ccry(unsigned control0, unsigned control1, unsigned target, double theta) {
    return with_control(with_control(ry(target, theta), {control0, true}), {control1, true});
}

Gate partial_swap(unsigned j, unsigned k, double beta) {
    Gate g;
    g.kind = GateKind::PartialSwap;
    g.targets = {j, k};
    g.angle = beta;
    return g;
}

Gate dense(std::vector<unsigned> targets, std::shared_ptr<const DenseMatrix> matrix) {
    Gate g;
    g.kind = GateKind::DenseUnitary;
    g.targets = std::move(targets);
    g.matrix = std::move(matrix);
    return g;
}

Gate diagonal(std::vector<unsigned> qubits, std::shared_ptr<const std::vector<double>> table,
              double scale) {
    Gate g;
    g.kind = GateKind::Diagonal;
    g.targets = std::move(qubits);
    g.table = std::move(table);
    g.angle = scale;
    return g;
}

Gate multiplexed_ry(unsigned target, std::vector<unsigned> selectors,
                    std::shared_ptr<const std::vector<double>> angles, double scale) {
    Gate g;
    g.kind = GateKind::MultiplexedRY;
    g.targets = {target};
    g.selectors = std::move(selectors);
    g.table = std::move(angles);
    g.angle = scale;
    return g;
}

Gate reflection_zero(std::vector<unsigned> qubits) {
    Gate g;
    g.kind = GateKind::Reflection0;
    g.targets = std::move(qubits);
    return g;
}

Gate ancilla_phase_flip(unsigned q) { return single(GateKind::AncillaPhaseFlip, q); }

} // namespace gates

void OperatorSequence::append(const OperatorSequence& other) {
    gates.insert(gates.end(), other.gates.begin(), other.gates.end());
}

OperatorSequence OperatorSequence::adjoint() const {
    OperatorSequence out;
    out.label = label + "^dagger";
    out.gates.reserve(gates.size());
    for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
        out.gates.push_back(spq::adjoint(*it));
    }
    return out;
}

OperatorSequence OperatorSequence::controlled(Control control) const {
    OperatorSequence out;
    out.label = "C-" + label;
    out.gates.reserve(gates.size());
    for (const auto& g : gates) {
        out.gates.push_back(with_control(g, control));
    }
    return out;
}

unsigned OperatorSequence::width() const {
    unsigned w = 0;
    for (const auto& g : gates) {
        for (unsigned q : qubits_of(g)) {
            w = std::max(w, q + 1);
        }
    }
    return w;
}

} // namespace spq
