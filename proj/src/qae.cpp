#include "spq/qae.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace spq::qae {

void QaeConfig::validate() const {
    if (m < 1 || m > 12) {
        throw std::invalid_argument("QAE: m must be in [1, 12], got " + std::to_string(m));
    }
    if (repetitions < 1) {
        throw std::invalid_argument("QAE: repetitions must be at least 1");
    }
}

OperatorSequence build_A(const OperatorSequence& dqa, const OperatorSequence& oracle) {
    OperatorSequence a;
    a.label = "A";
    a.append(dqa);
    a.append(oracle);
    return a;
}

OperatorSequence build_grover(const OperatorSequence& A, const RegisterLayout& layout) {
    if (!layout.ancilla) {
        throw std::invalid_argument("Grover operator: layout has no ancilla");
    }
    const auto system = layout.system_qubit_list();
    for (const auto& g : A.gates) {
        for (unsigned q : qubits_of(g)) {
            if (std::find(system.begin(), system.end(), q) == system.end()) {
                throw std::invalid_argument("Grover operator: A touches a non-system qubit");
            }
        }
    }
    OperatorSequence q;
    q.label = "Q";
    q.append(gates::ancilla_phase_flip(*layout.ancilla));
    q.append(A.adjoint());
    q.append(gates::reflection_zero(system));
    q.append(A);
    return q;
}

namespace {

void append_swap(OperatorSequence& seq, unsigned a, unsigned b) {
    seq.append(gates::cx(a, b));
    seq.append(gates::cx(b, a));
    seq.append(gates::cx(a, b));
}

} // namespace

OperatorSequence qft(const std::vector<unsigned>& qubits) {
    OperatorSequence seq;
    seq.label = "QFT";
    const auto m = static_cast<unsigned>(qubits.size());
    for (unsigned j = m; j-- > 0;) {
        seq.append(gates::h(qubits[j]));
        for (unsigned k = j; k-- > 0;) {
            seq.append(gates::controlled_phase(qubits[k], qubits[j],
                                               std::numbers::pi / double(Index{1} << (j - k))));
        }
    }
    for (unsigned i = 0; i < m / 2; ++i) {
        append_swap(seq, qubits[i], qubits[m - 1 - i]);
    }
    return seq;
}

OperatorSequence inverse_qft(const std::vector<unsigned>& qubits) {
    auto seq = qft(qubits).adjoint();
    seq.label = "QFT^dagger";
    return seq;
}

double exact_amplitude(const OperatorSequence& A, const RegisterLayout& layout) {
    if (!layout.ancilla) {
        throw std::invalid_argument("amplitude: layout has no ancilla");
    }
    StateVector s(layout.system_qubits());
    apply_sequence(s, A);
    return marginal_probability(s, *layout.ancilla, 1);
}

namespace {

void check_budget(const RegisterLayout& layout) {
    if (layout.total_qubits() > kMaxQubits) {
        throw BudgetExceeded("QAE needs " + std::to_string(layout.total_qubits()) +
                             " qubits; the simulator cap is " + std::to_string(kMaxQubits));
    }
}

} // namespace

StateVector qpe_state(const OperatorSequence& A, const RegisterLayout& layout,
                      QpeMethod method) {
    layout.validate();
    check_budget(layout);
    const unsigned n_sys = layout.system_qubits();
    const unsigned m = layout.estimate.count;
    if (m == 0) {
        throw std::invalid_argument("QPE: layout has no estimate register");
    }
    const auto est = layout.estimate.qubits();
    const auto grover = build_grover(A, layout);

    if (method == QpeMethod::ControlledCircuit) {
        StateVector state(layout.total_qubits());
        apply_sequence(state, A);
        for (unsigned q : est) {
            apply(state, gates::h(q));
        }
        for (unsigned j = 0; j < m; ++j) {
            apply_controlled_sequence(state, grover, est[j], std::size_t{1} << j);
        }
        apply_sequence(state, inverse_qft(est));
        return state;
    }

    if (layout.estimate.first != n_sys) {
        throw std::invalid_argument("QPE: estimate register must sit directly above the system");
    }
    const std::size_t M = std::size_t{1} << m;
    const std::size_t sys_dim = std::size_t{1} << n_sys;
    StateVector sys(n_sys);
    apply_sequence(sys, A);
    std::vector<Complex> amps(sys_dim * M);
    const double w = 1.0 / std::sqrt(static_cast<double>(M));
    for (std::size_t b = 0; b < M; ++b) {
        if (b > 0) {
            apply_sequence(sys, grover);
        }
        const auto src = sys.amplitudes();
        for (std::size_t i = 0; i < sys_dim; ++i) {
            amps[b * sys_dim + i] = w * src[i];
        }
    }
    // Renormalize the accumulated rounding before the strict norm check.
    double norm2 = 0.0;
    for (const auto& a : amps) {
        norm2 += std::norm(a);
    }
    const double scale = 1.0 / std::sqrt(norm2);
    for (auto& a : amps) {
        a *= scale;
    }
    auto state = StateVector::from_amplitudes(std::move(amps));
    apply_sequence(state, inverse_qft(est));
    return state;
}

double grid_value(Index b, unsigned m) {
    const double s = std::sin(std::numbers::pi * static_cast<double>(b) /
                              static_cast<double>(Index{1} << m));
    return s * s;
}

double error_bound(std::size_t M) {
    const double inv = std::numbers::pi / static_cast<double>(M);
    return inv + inv * inv;
}

bool error_bound_check(double a_hat, double a_true, std::size_t M) {
    return std::abs(a_hat - a_true) <= error_bound(M);
}

std::vector<double> estimate_distribution(const StateVector& qpe, const RegisterLayout& layout) {
    const auto est = layout.estimate.qubits();
    return register_distribution(qpe, est);
}

std::vector<EstimateResult> sample_estimates(const StateVector& qpe, double a_true,
                                             const QaeConfig& config,
                                             const RegisterLayout& layout,
                                             const oracle::OracleKind& kind) {
    config.validate();
    if (layout.estimate.count != config.m) {
        throw std::invalid_argument("QAE: estimate register width differs from m");
    }
    const auto dist = estimate_distribution(qpe, layout);
    DiscreteSampler sampler(dist);
    Rng rng(config.rng_seed);
    std::vector<EstimateResult> out;
    out.reserve(config.repetitions);
    for (std::size_t r = 0; r < config.repetitions; ++r) {
        EstimateResult e;
        e.b = sampler(rng);
        e.a_hat = grid_value(e.b, config.m);
        e.phi_hat = oracle::readback(e.a_hat, kind);
        e.a_true = a_true;
        e.within_bound = error_bound_check(e.a_hat, a_true, config.M());
        out.push_back(e);
    }
    return out;
}

std::vector<EstimateResult> run_qae(const OperatorSequence& A, const QaeConfig& config,
                                    const RegisterLayout& layout,
                                    const oracle::OracleKind& kind) {
    config.validate();
    const auto state = qpe_state(A, layout, config.method);
    return sample_estimates(state, exact_amplitude(A, layout), config, layout, kind);
}

double mc_estimate_from_amplitude(double a, std::size_t shots, Rng& rng) {
    if (shots == 0) {
        throw std::invalid_argument("MC estimate: shots must be positive");
    }
    std::size_t ones = 0;
    for (std::size_t s = 0; s < shots; ++s) {
        ones += uniform01(rng) < a ? 1 : 0;
    }
    return static_cast<double>(ones) / static_cast<double>(shots);
}

double mc_estimate(const OperatorSequence& A, std::size_t shots, const RegisterLayout& layout,
                   std::uint64_t rng_seed) {
    if (!layout.ancilla) {
        throw std::invalid_argument("MC estimate: layout has no ancilla");
    }
    StateVector s(layout.system_qubits());
    apply_sequence(s, A);
    Rng rng(rng_seed);
    const unsigned anc[] = {*layout.ancilla};
    const auto samples = sample_register(s, anc, shots, rng);
    std::size_t ones = std::count(samples.begin(), samples.end(), Index{1});
    return static_cast<double>(ones) / static_cast<double>(shots);
}

double median(std::vector<double> values) {
    if (values.empty()) {
        throw std::invalid_argument("median of an empty set");
    }
    const std::size_t n = values.size();
    std::nth_element(values.begin(), values.begin() + n / 2, values.end());
    const double hi = values[n / 2];
    if (n % 2 == 1) {
        return hi;
    }
    const double lo = *std::max_element(values.begin(), values.begin() + n / 2);
    return 0.5 * (lo + hi);
}

} // namespace spq::qae
