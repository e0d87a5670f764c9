#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace spq {

using Complex = std::complex<double>;
using Index = std::uint64_t;

/// Row-major square matrix. Only constructible through make_unitary(),
/// which checks unitarity, so every instance reaching a kernel is unitary.
class DenseMatrix {
  public:
    std::size_t dim() const { return dim_; }
    const Complex& operator()(std::size_t row, std::size_t col) const {
        return data_[row * dim_ + col];
    }
    std::span<const Complex> data() const { return data_; }

    DenseMatrix adjoint() const;

    friend std::shared_ptr<const DenseMatrix>
    make_unitary(std::size_t dim, std::vector<Complex> data, double tol);

  private:
    DenseMatrix(std::size_t dim, std::vector<Complex> data)
        : dim_(dim), data_(std::move(data)) {}

    std::size_t dim_;
    std::vector<Complex> data_;
};

/// Throws std::invalid_argument if data is not dim*dim or
/// max|U^dagger U - I| > tol.
std::shared_ptr<const DenseMatrix>
make_unitary(std::size_t dim, std::vector<Complex> data, double tol = 1e-10);

/// Max-norm deviation of U^dagger U from the identity.
double unitarity_defect(std::size_t dim, std::span<const Complex> data);

enum class GateKind {
    H,
    X,
    RX,
    RY,
    Phase,
    PartialSwap,
    DenseUnitary,
    Diagonal,
    MultiplexedRY,
    Reflection0,
    AncillaPhaseFlip,
};

std::string to_string(GateKind kind);

struct Control {
    unsigned qubit;
    bool on_one = true;

    bool operator==(const Control&) const = default;
};

/// A single gate. Interpretation of the fields by kind:
///   H, X                 targets[0]
///   RX, RY, Phase        targets[0], rotation `angle` (radians)
///   PartialSwap          targets[0..1], exp(-i angle/2 (XX+YY))
///   DenseUnitary         targets (targets[0] is the least significant local
///                        bit of the matrix index), `matrix`
///   Diagonal             phase exp(i * angle * table[v]) where v is the value
///                        of the target qubits
///   MultiplexedRY        RY(angle * table[v]) on targets[0], v the value of
///                        `selectors`
///   Reflection0          negates the amplitude where every target is |0>
///   AncillaPhaseFlip     negates the amplitude where targets[0] is |0>
/// Every kind accepts arbitrary `controls`.
struct Gate {
    GateKind kind = GateKind::H;
    std::vector<unsigned> targets;
    std::vector<unsigned> selectors;
    std::vector<Control> controls;
    double angle = 0.0;
    std::shared_ptr<const DenseMatrix> matrix;
    std::shared_ptr<const std::vector<double>> table;
};

/// Throws std::out_of_range for qubit indices >= num_qubits and
/// std::invalid_argument for overlapping targets/selectors/controls or
/// malformed payloads.
void validate(const Gate& gate, unsigned num_qubits);

Gate adjoint(const Gate& gate);

/// Returns gate with an extra control. Throws std::invalid_argument if the
/// control qubit is already used by the gate.
Gate with_control(Gate gate, Control control);

/// Every qubit the gate touches (targets, selectors, controls).
std::vector<unsigned> qubits_of(const Gate& gate);

namespace gates {

Gate h(unsigned q);
Gate x(unsigned q);
Gate cx(unsigned control, unsigned target);
Gate rx(unsigned q, double theta);
Gate ry(unsigned q, double theta);
Gate phase(unsigned q, double theta);
/// CP(theta): phase e^{i theta} on |11> of (control, target).
Gate controlled_phase(unsigned control, unsigned target, double theta);
/// RY(theta) on target iff both controls are |1>.
Gate ccry(unsigned control0, unsigned control1, unsigned target, double theta);
Gate partial_swap(unsigned j, unsigned k, double beta);
Gate dense(std::vector<unsigned> targets, std::shared_ptr<const DenseMatrix> matrix);
Gate diagonal(std::vector<unsigned> qubits, std::shared_ptr<const std::vector<double>> table,
              double scale = 1.0);
Gate multiplexed_ry(unsigned target, std::vector<unsigned> selectors,
                    std::shared_ptr<const std::vector<double>> angles, double scale = 1.0);
Gate reflection_zero(std::vector<unsigned> qubits);
Gate ancilla_phase_flip(unsigned q);

} // namespace gates

/// Ordered gate program; gates[0] is applied first.
struct OperatorSequence {
    std::vector<Gate> gates;
    std::string label;

    void append(const Gate& gate) { gates.push_back(gate); }
    void append(const OperatorSequence& other);

    /// Conjugate-transposed gates in reverse order.
    OperatorSequence adjoint() const;

    /// Same program with `control` added to every gate.
    OperatorSequence controlled(Control control) const;

    /// One past the highest qubit index touched (0 for an empty sequence).
    unsigned width() const;

    bool empty() const { return gates.empty(); }
    std::size_t size() const { return gates.size(); }
};

} // namespace spq
