#include "spq/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace spq {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

Index bit(unsigned q) { return Index{1} << q; }

// Inserts a zero bit at each position of `sorted_positions` (ascending).
inline Index insert_zeros(Index k, std::span<const unsigned> sorted_positions) {
    for (unsigned p : sorted_positions) {
        const Index low = k & (bit(p) - 1);
        k = ((k >> p) << (p + 1)) | low;
    }
    return k;
}

// Fixed bits of a gate: every target (forced 0) and every control (forced to
// its polarity). fn(base) is called for each basis index matching that pattern.
struct Pattern {
    std::vector<unsigned> positions;
    Index value = 0;
    unsigned free_bits = 0;
};

Pattern make_pattern(unsigned num_qubits, std::span<const unsigned> zero_bits,
                     std::span<const Control> controls) {
    Pattern p;
    p.positions.assign(zero_bits.begin(), zero_bits.end());
    for (const auto& c : controls) {
        p.positions.push_back(c.qubit);
        if (c.on_one) {
            p.value |= bit(c.qubit);
        }
    }
    std::sort(p.positions.begin(), p.positions.end());
    p.free_bits = num_qubits - static_cast<unsigned>(p.positions.size());
    return p;
}

template <class Fn>
void for_each_base(const Pattern& p, Fn&& fn) {
    const Index count = Index{1} << p.free_bits;
    if (p.positions.empty()) {
        for (Index k = 0; k < count; ++k) {
            fn(k);
        }
        return;
    }
    for (Index k = 0; k < count; ++k) {
        fn(insert_zeros(k, p.positions) | p.value);
    }
}

// Offsets (relative to a base with all `qubits` zero) of each local index.
std::vector<Index> local_offsets(std::span<const unsigned> qubits) {
    const std::size_t dim = std::size_t{1} << qubits.size();
    std::vector<Index> out(dim);
    for (std::size_t v = 0; v < dim; ++v) {
        out[v] = scatter_bits(v, qubits);
    }
    return out;
}

void apply_h(std::span<Complex> a, const Pattern& p, Index t) {
    for_each_base(p, [&](Index i0) {
        const Complex x = a[i0];
        const Complex y = a[i0 | t];
        a[i0] = (x + y) * kInvSqrt2;
        a[i0 | t] = (x - y) * kInvSqrt2;
    });
}

void apply_2x2(std::span<Complex> a, const Pattern& p, Index t, Complex m00, Complex m01,
               Complex m10, Complex m11) {
    for_each_base(p, [&](Index i0) {
        const Complex x = a[i0];
        const Complex y = a[i0 | t];
        a[i0] = m00 * x + m01 * y;
        a[i0 | t] = m10 * x + m11 * y;
    });
}

void apply_dense(std::span<Complex> a, const Pattern& p, const Gate& g) {
    const auto offsets = local_offsets(g.targets);
    const std::size_t dim = offsets.size();
    const DenseMatrix& m = *g.matrix;
    std::vector<Complex> in(dim);
    for_each_base(p, [&](Index base) {
        for (std::size_t v = 0; v < dim; ++v) {
            in[v] = a[base | offsets[v]];
        }
        for (std::size_t r = 0; r < dim; ++r) {
            Complex acc{0.0, 0.0};
            const Complex* row = &m(r, 0);
            for (std::size_t c = 0; c < dim; ++c) {
                acc += row[c] * in[c];
            }
            a[base | offsets[r]] = acc;
        }
    });
}

bool contiguous(std::span<const unsigned> qubits) {
    for (std::size_t i = 1; i < qubits.size(); ++i) {
        if (qubits[i] != qubits[0] + i) {
            return false;
        }
    }
    return true;
}

template <class Fn>
void with_selector(std::span<const unsigned> qubits, Fn&& fn) {
    if (!qubits.empty() && contiguous(qubits)) {
        const unsigned shift = qubits[0];
        const Index mask = (Index{1} << qubits.size()) - 1;
        fn([shift, mask](Index i) { return (i >> shift) & mask; });
    } else {
        fn([qubits](Index i) { return gather_bits(i, qubits); });
    }
}

void apply_diagonal(std::span<Complex> a, const Pattern& p, const Gate& g) {
    const auto& table = *g.table;
    std::vector<Complex> phases(table.size());
    for (std::size_t v = 0; v < table.size(); ++v) {
        phases[v] = std::polar(1.0, g.angle * table[v]);
    }
    with_selector(g.targets, [&](auto select) {
        for_each_base(p, [&](Index i) { a[i] *= phases[select(i)]; });
    });
}

void apply_multiplexed_ry(std::span<Complex> a, const Pattern& p, const Gate& g) {
    const auto& table = *g.table;
    std::vector<double> cs(table.size());
    std::vector<double> sn(table.size());
    for (std::size_t v = 0; v < table.size(); ++v) {
        cs[v] = std::cos(0.5 * g.angle * table[v]);
        sn[v] = std::sin(0.5 * g.angle * table[v]);
    }
    const Index t = bit(g.targets[0]);
    with_selector(g.selectors, [&](auto select) {
        for_each_base(p, [&](Index i0) {
            const Index v = select(i0);
            const Complex x = a[i0];
            const Complex y = a[i0 | t];
            a[i0] = cs[v] * x - sn[v] * y;
            a[i0 | t] = sn[v] * x + cs[v] * y;
        });
    });
}

void apply_unchecked(StateVector& state, const Gate& g) {
    const unsigned n = state.num_qubits();
    auto a = state.amplitudes();
    switch (g.kind) {
    case GateKind::H: {
        const auto p = make_pattern(n, g.targets, g.controls);
        apply_h(a, p, bit(g.targets[0]));
        break;
    }
    case GateKind::X: {
        const auto p = make_pattern(n, g.targets, g.controls);
        const Index t = bit(g.targets[0]);
        for_each_base(p, [&](Index i0) { std::swap(a[i0], a[i0 | t]); });
        break;
    }
    case GateKind::RX: {
        const auto p = make_pattern(n, g.targets, g.controls);
        const double c = std::cos(0.5 * g.angle);
        const Complex s{0.0, -std::sin(0.5 * g.angle)};
        apply_2x2(a, p, bit(g.targets[0]), c, s, s, c);
        break;
    }
    case GateKind::RY: {
        const auto p = make_pattern(n, g.targets, g.controls);
        const double c = std::cos(0.5 * g.angle);
        const double s = std::sin(0.5 * g.angle);
        apply_2x2(a, p, bit(g.targets[0]), c, -s, s, c);
        break;
    }
    case GateKind::Phase: {
        // Only the |1> half of the target changes; fix the target bit to 1.
        std::vector<Control> fixed = g.controls;
        fixed.push_back({g.targets[0], true});
        const auto p = make_pattern(n, {}, fixed);
        const Complex ph = std::polar(1.0, g.angle);
        for_each_base(p, [&](Index i) { a[i] *= ph; });
        break;
    }
    case GateKind::PartialSwap: {
        // Block acts on |01>,|10> of (targets[0], targets[1]).
        std::vector<Control> fixed = g.controls;
        fixed.push_back({g.targets[0], true});
        fixed.push_back({g.targets[1], false});
        const auto p = make_pattern(n, {}, fixed);
        const Index flip = bit(g.targets[0]) | bit(g.targets[1]);
        const double c = std::cos(g.angle);
        const Complex s{0.0, -std::sin(g.angle)};
        for_each_base(p, [&](Index i) {
            const Index j = i ^ flip;
            const Complex x = a[i];
            const Complex y = a[j];
            a[i] = c * x + s * y;
            a[j] = s * x + c * y;
        });
        break;
    }
    case GateKind::DenseUnitary: {
        const auto p = make_pattern(n, g.targets, g.controls);
        apply_dense(a, p, g);
        break;
    }
    case GateKind::Diagonal: {
        const auto p = make_pattern(n, {}, g.controls);
        apply_diagonal(a, p, g);
        break;
    }
    case GateKind::MultiplexedRY: {
        const auto p = make_pattern(n, g.targets, g.controls);
        apply_multiplexed_ry(a, p, g);
        break;
    }
    case GateKind::Reflection0: {
        std::vector<Control> fixed = g.controls;
        for (unsigned q : g.targets) {
            fixed.push_back({q, false});
        }
        const auto p = make_pattern(n, {}, fixed);
        for_each_base(p, [&](Index i) { a[i] = -a[i]; });
        break;
    }
    case GateKind::AncillaPhaseFlip: {
        const auto p = make_pattern(n, g.targets, g.controls);
        for_each_base(p, [&](Index i) { a[i] = -a[i]; });
        break;
    }
    }
}

} // namespace

StateVector::StateVector(unsigned num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits > kMaxQubits) {
        throw std::length_error("state vector: " + std::to_string(num_qubits) +
                                " qubits exceeds the simulator cap of " +
                                std::to_string(kMaxQubits));
    }
    amps_.assign(std::size_t{1} << num_qubits, Complex{0.0, 0.0});
    amps_[0] = 1.0;
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes) {
    const std::size_t len = amplitudes.size();
    if (len == 0 || (len & (len - 1)) != 0) {
        throw std::invalid_argument("state vector: length must be a power of two");
    }
    const auto n = static_cast<unsigned>(std::countr_zero(len));
    if (n > kMaxQubits) {
        throw std::length_error("state vector: exceeds the simulator cap");
    }
    StateVector out(n, std::move(amplitudes));
    if (std::abs(out.norm() - 1.0) > 1e-10) {
        throw std::invalid_argument("state vector: amplitudes are not normalized");
    }
    return out;
}

StateVector StateVector::basis(unsigned num_qubits, Index index) {
    StateVector out(num_qubits);
    if (index >= out.size()) {
        throw std::out_of_range("state vector: basis index out of range");
    }
    out.amps_[0] = 0.0;
    out.amps_[index] = 1.0;
    return out;
}

double StateVector::norm() const {
    double s = 0.0;
    for (const auto& z : amps_) {
        s += std::norm(z);
    }
    return std::sqrt(s);
}

Complex inner_product(const StateVector& lhs, const StateVector& rhs) {
    if (lhs.size() != rhs.size()) {
        throw std::invalid_argument("inner product: width mismatch");
    }
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < lhs.size(); ++i) {
        acc += std::conj(lhs[i]) * rhs[i];
    }
    return acc;
}

double fidelity(const StateVector& lhs, const StateVector& rhs) {
    return std::norm(inner_product(lhs, rhs));
}

double max_abs_difference(const StateVector& lhs, const StateVector& rhs) {
    if (lhs.size() != rhs.size()) {
        throw std::invalid_argument("difference: width mismatch");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < lhs.size(); ++i) {
        worst = std::max(worst, std::abs(lhs[i] - rhs[i]));
    }
    return worst;
}

void apply(StateVector& state, const Gate& gate) {
    validate(gate, state.num_qubits());
    apply_unchecked(state, gate);
}

void apply_sequence(StateVector& state, const OperatorSequence& seq, Direction direction) {
    for (const auto& g : seq.gates) {
        validate(g, state.num_qubits());
    }
    if (direction == Direction::Forward) {
        for (const auto& g : seq.gates) {
            apply_unchecked(state, g);
        }
    } else {
        for (auto it = seq.gates.rbegin(); it != seq.gates.rend(); ++it) {
            apply_unchecked(state, adjoint(*it));
        }
    }
}

void apply_controlled_sequence(StateVector& state, const OperatorSequence& seq,
                               unsigned control, std::size_t repetitions) {
    const OperatorSequence controlled = seq.controlled({control, true});
    for (const auto& g : controlled.gates) {
        validate(g, state.num_qubits());
    }
    for (std::size_t r = 0; r < repetitions; ++r) {
        for (const auto& g : controlled.gates) {
            apply_unchecked(state, g);
        }
    }
}

Index gather_bits(Index index, std::span<const unsigned> qubits) {
    Index v = 0;
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        v |= ((index >> qubits[i]) & 1U) << i;
    }
    return v;
}

Index scatter_bits(Index value, std::span<const unsigned> qubits) {
    Index out = 0;
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        out |= ((value >> i) & 1U) << qubits[i];
    }
    return out;
}

double marginal_probability(const StateVector& state, unsigned qubit, int outcome) {
    if (qubit >= state.num_qubits()) {
        throw std::out_of_range("marginal probability: qubit out of range");
    }
    if (outcome != 0 && outcome != 1) {
        throw std::invalid_argument("marginal probability: outcome must be 0 or 1");
    }
    const Index mask = bit(qubit);
    const Index want = outcome == 1 ? mask : 0;
    double p = 0.0;
    const auto a = state.amplitudes();
    for (Index i = 0; i < a.size(); ++i) {
        if ((i & mask) == want) {
            p += std::norm(a[i]);
        }
    }
    return p;
}

std::vector<double> register_distribution(const StateVector& state,
                                          std::span<const unsigned> qubits) {
    for (unsigned q : qubits) {
        if (q >= state.num_qubits()) {
            throw std::out_of_range("register distribution: qubit out of range");
        }
    }
    std::vector<unsigned> sorted(qubits.begin(), qubits.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument("register distribution: repeated qubit");
    }
    std::vector<double> dist(std::size_t{1} << qubits.size(), 0.0);
    const auto a = state.amplitudes();
    with_selector(qubits, [&](auto select) {
        for (Index i = 0; i < a.size(); ++i) {
            dist[select(i)] += std::norm(a[i]);
        }
    });
    return dist;
}

DiscreteSampler::DiscreteSampler(std::span<const double> weights) {
    if (weights.empty()) {
        throw std::invalid_argument("sampler: no outcomes");
    }
    cdf_.resize(weights.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] < 0.0) {
            throw std::invalid_argument("sampler: negative weight");
        }
        acc += weights[i];
        cdf_[i] = acc;
    }
    if (!(acc > 0.0)) {
        throw std::invalid_argument("sampler: zero total weight");
    }
    for (auto& c : cdf_) {
        c /= acc;
    }
}

Index DiscreteSampler::operator()(Rng& rng) const {
    const double u = uniform01(rng);
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    if (it == cdf_.end()) {
        --it;
    }
    return static_cast<Index>(it - cdf_.begin());
}

Index measure_register(const StateVector& state, std::span<const unsigned> qubits, Rng& rng) {
    const auto dist = register_distribution(state, qubits);
    return DiscreteSampler(dist)(rng);
}

std::vector<Index> sample_register(const StateVector& state, std::span<const unsigned> qubits,
                                   std::size_t shots, Rng& rng) {
    const auto dist = register_distribution(state, qubits);
    const DiscreteSampler sampler(dist);
    std::vector<Index> out(shots);
    for (auto& s : out) {
        s = sampler(rng);
    }
    return out;
}

} // namespace spq
