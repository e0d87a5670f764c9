#include "spq/dqa.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace spq::dqa {

double DqaDiagnostics::worst_overlap() const {
    double worst = 1.0;
    for (const auto& o : overlaps) {
        if (o.overlap) {
            worst = std::min(worst, *o.overlap);
        }
    }
    return worst;
}

OperatorSequence prepare_real_state(std::span<const double> target, std::vector<unsigned> qubits,
                                    std::string label) {
    const std::size_t dim = std::size_t{1} << qubits.size();
    if (target.size() != dim) {
        throw std::invalid_argument("state preparation: target length does not match qubits");
    }
    const double norm2 = std::inner_product(target.begin(), target.end(), target.begin(), 0.0);
    if (std::abs(norm2 - 1.0) > 1e-10) {
        throw std::invalid_argument("state preparation: target is not normalized");
    }
    OperatorSequence seq;
    seq.label = std::move(label);
    // v = e0 - target; I - 2 v v^T / (v^T v) maps e0 to target.
    std::vector<double> v(target.begin(), target.end());
    for (auto& x : v) {
        x = -x;
    }
    v[0] += 1.0;
    const double vv = std::inner_product(v.begin(), v.end(), v.begin(), 0.0);
    if (vv < 1e-24) {
        return seq;
    }
    std::vector<Complex> m(dim * dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            m[r * dim + c] = (r == c ? 1.0 : 0.0) - 2.0 * v[r] * v[c] / vv;
        }
    }
    seq.append(gates::dense(std::move(qubits), make_unitary(dim, std::move(m))));
    return seq;
}

OperatorSequence prepare_dicke(unsigned n, unsigned k, std::vector<unsigned> qubits) {
    if (k > n) {
        throw std::invalid_argument("Dicke state: weight " + std::to_string(k) + " exceeds " +
                                    std::to_string(n) + " qubits");
    }
    if (qubits.empty()) {
        qubits.resize(n);
        std::iota(qubits.begin(), qubits.end(), 0U);
    }
    if (qubits.size() != n) {
        throw std::invalid_argument("Dicke state: qubit list does not match n");
    }
    const auto support = strings_of_weight(n, k);
    std::vector<double> target(std::size_t{1} << n, 0.0);
    const double amp = 1.0 / std::sqrt(static_cast<double>(support.size()));
    for (Bits y : support) {
        target[y] = amp;
    }
    return prepare_real_state(target, std::move(qubits),
                              "Dicke(" + std::to_string(n) + "," + std::to_string(k) + ")");
}

OperatorSequence prepare_distribution(const DiscreteDistribution& dist,
                                      std::vector<unsigned> qubits) {
    const unsigned n = dist.n_xi();
    if (qubits.empty()) {
        qubits.resize(n);
        std::iota(qubits.begin(), qubits.end(), 0U);
    }
    if (qubits.size() != n) {
        throw std::invalid_argument("distribution: qubit list does not match n_xi");
    }
    OperatorSequence seq;
    seq.label = "V_xi";
    if (dist.is_uniform()) {
        for (unsigned q : qubits) {
            seq.append(gates::h(q));
        }
        return seq;
    }
    const auto& entries = dist.entries();
    const auto nonzero = std::count_if(entries.begin(), entries.end(),
                                       [](const Scenario& e) { return e.probability > 0.0; });
    if (nonzero == 1) {
        const auto it = std::find_if(entries.begin(), entries.end(),
                                     [](const Scenario& e) { return e.probability > 0.0; });
        for (unsigned i = 0; i < n; ++i) {
            if ((it->xi >> i) & 1U) {
                seq.append(gates::x(qubits[i]));
            }
        }
        return seq;
    }
    std::vector<double> target(std::size_t{1} << n, 0.0);
    for (const auto& e : entries) {
        target[e.xi] = std::sqrt(e.probability);
    }
    // Renormalize away the up-to-1e-12 slack allowed in the pmf.
    const double norm = std::sqrt(std::inner_product(target.begin(), target.end(),
                                                     target.begin(), 0.0));
    for (auto& t : target) {
        t /= norm;
    }
    seq.append(prepare_real_state(target, std::move(qubits), "V_xi"));
    return seq;
}

namespace {

void check_widths(const RegisterLayout& layout, unsigned n_y, unsigned n_xi) {
    layout.validate();
    if (layout.y.count != n_y || layout.xi.count != n_xi) {
        throw std::invalid_argument("layout: register widths do not match the problem");
    }
}

} // namespace

OperatorSequence cost_layer(const UnitCommitmentModel& model, const RegisterLayout& layout,
                            double gamma) {
    OperatorSequence seq;
    seq.label = "U_C";
    for (unsigned j = 0; j < model.n_y; ++j) {
        seq.append(gates::controlled_phase(layout.xi.first + j, layout.y.first + j,
                                           gamma * model.c[j]));
    }
    return seq;
}

OperatorSequence penalty_layer(const UnitCommitmentModel& model, const RegisterLayout& layout,
                               double gamma) {
    OperatorSequence seq;
    seq.label = "U_P";
    for (unsigned j = 0; j < model.n_y; ++j) {
        const unsigned wind = layout.xi.first + j;
        seq.append(gates::x(wind));
        seq.append(gates::controlled_phase(wind, layout.y.first + j, gamma * model.c_r));
        seq.append(gates::x(wind));
    }
    return seq;
}

OperatorSequence hamming_mixer_layer(const RegisterLayout& layout, double beta) {
    OperatorSequence seq;
    seq.label = "U_M";
    const unsigned n = layout.y.count;
    for (unsigned j = 0; j + 1 < n; ++j) {
        for (unsigned k = j + 1; k < n; ++k) {
            seq.append(gates::partial_swap(layout.y.first + j, layout.y.first + k, beta));
        }
    }
    return seq;
}

OperatorSequence build_dqa(const UnitCommitmentModel& model, unsigned x,
                           const DiscreteDistribution& dist, const AnnealSchedule& schedule,
                           const RegisterLayout& layout) {
    model.validate();
    if (x > model.d) {
        throw std::invalid_argument("DQA: x exceeds demand");
    }
    check_widths(layout, model.n_y, dist.n_xi());
    if (dist.n_xi() != model.n_y) {
        throw std::invalid_argument("DQA: unit commitment needs one wind bit per turbine");
    }
    OperatorSequence seq;
    seq.label = "U_UC(T=" + std::to_string(schedule.T) + ")";
    seq.append(prepare_dicke(model.n_y, model.d - x, layout.y.qubits()));
    seq.append(prepare_distribution(dist, layout.xi.qubits()));
    for (unsigned t = 1; t <= schedule.T; ++t) {
        const double gamma = schedule.cost_angle(t);
        seq.append(cost_layer(model, layout, gamma));
        seq.append(penalty_layer(model, layout, gamma));
        seq.append(hamming_mixer_layer(layout, schedule.mixer_angle(t)));
    }
    return seq;
}

OperatorSequence build_dqa(const GenericDiagonalProblem& problem,
                           const DiscreteDistribution& dist, const AnnealSchedule& schedule,
                           const RegisterLayout& layout) {
    problem.validate();
    const auto& table = problem.table;
    check_widths(layout, table.n_y, table.n_xi);
    if (dist.n_xi() != table.n_xi) {
        throw std::invalid_argument("DQA: distribution width does not match the problem");
    }
    OperatorSequence seq;
    seq.label = "U_generic(T=" + std::to_string(schedule.T) + ")";
    if (problem.mixer == MixerKind::TransverseField) {
        for (unsigned q : layout.y.qubits()) {
            seq.append(gates::h(q));
        }
    } else {
        seq.append(prepare_dicke(table.n_y, problem.hamming_weight, layout.y.qubits()));
    }
    seq.append(prepare_distribution(dist, layout.xi.qubits()));

    // The table is indexed y | xi << n_y, which is the value of the qubit
    // list y..., xi... in that order.
    auto cost_qubits = layout.y.qubits();
    const auto xq = layout.xi.qubits();
    cost_qubits.insert(cost_qubits.end(), xq.begin(), xq.end());
    const auto shared_table = std::make_shared<const std::vector<double>>(table.values);

    for (unsigned t = 1; t <= schedule.T; ++t) {
        seq.append(gates::diagonal(cost_qubits, shared_table, schedule.cost_angle(t)));
        const double beta = schedule.mixer_angle(t);
        if (problem.mixer == MixerKind::TransverseField) {
            for (unsigned q : layout.y.qubits()) {
                seq.append(gates::rx(q, 2.0 * beta));
            }
        } else {
            seq.append(hamming_mixer_layer(layout, beta));
        }
    }
    return seq;
}

StateVector run_dqa(const OperatorSequence& seq, const RegisterLayout& layout) {
    StateVector state(layout.total_qubits());
    apply_sequence(state, seq);
    return state;
}

double expectation_hq(const StateVector& state, const CostTable& table,
                      const RegisterLayout& layout) {
    const auto a = state.amplitudes();
    double e = 0.0;
    for (Index i = 0; i < a.size(); ++i) {
        const double p = std::norm(a[i]);
        if (p != 0.0) {
            e += p * diagonal_cost_lookup(table, layout, i);
        }
    }
    return e;
}

StateVector optimal_state(const CostTable& table, const DiscreteDistribution& dist,
                          const RegisterLayout& layout) {
    std::vector<Complex> amps(std::size_t{1} << layout.total_qubits(), Complex{0.0, 0.0});
    for (const auto& e : dist.entries()) {
        const Bits y = brute_force_recourse(table, e.xi).y;
        amps[layout.y.place(y) | layout.xi.place(e.xi)] += std::sqrt(e.probability);
    }
    double norm2 = 0.0;
    for (const auto& a : amps) {
        norm2 += std::norm(a);
    }
    for (auto& a : amps) {
        a /= std::sqrt(norm2);
    }
    return StateVector::from_amplitudes(std::move(amps));
}

OperatorSequence prepare_optimal_state(const CostTable& table, const DiscreteDistribution& dist,
                                       const RegisterLayout& layout) {
    auto qubits = layout.y.qubits();
    const auto xq = layout.xi.qubits();
    qubits.insert(qubits.end(), xq.begin(), xq.end());
    std::vector<double> target(std::size_t{1} << qubits.size(), 0.0);
    for (const auto& e : dist.entries()) {
        const Bits y = brute_force_recourse(table, e.xi).y;
        target[y | (e.xi << table.n_y)] = std::sqrt(e.probability);
    }
    const double norm = std::sqrt(std::inner_product(target.begin(), target.end(),
                                                     target.begin(), 0.0));
    for (auto& t : target) {
        t /= norm;
    }
    return prepare_real_state(target, std::move(qubits), "psi*");
}

namespace {

// Adds the per-scenario terms of the residual temperature given the
// conditional distribution of y for scenario xi.
struct ScenarioAccumulator {
    double delta_decomposed = 0.0;

    std::optional<double> add(const CostTable& table, Bits xi, double p_dist,
                              std::span<const Bits> ys, std::span<const double> cond) {
        const auto best = brute_force_recourse(table, xi);
        double overlap = 0.0;
        double alpha_star = 0.0;
        double rest = 0.0;
        for (std::size_t i = 0; i < ys.size(); ++i) {
            const double q = table.at(ys[i], xi);
            if (ys[i] == best.y) {
                alpha_star = cond[i];
            } else {
                rest += cond[i] * q;
            }
            if (std::abs(q - best.cost) <= 1e-12) {
                overlap += cond[i];
            }
        }
        delta_decomposed += p_dist * (rest + alpha_star * best.cost - best.cost);
        return overlap;
    }
};

} // namespace

DqaDiagnostics residual_diagnostics(const StateVector& state, const CostTable& table,
                                    const DiscreteDistribution& dist,
                                    const RegisterLayout& layout) {
    if (layout.y.count != table.n_y || layout.xi.count != table.n_xi) {
        throw std::invalid_argument("diagnostics: layout does not match the cost table");
    }
    DqaDiagnostics out;
    out.expectation_hq = expectation_hq(state, table, layout);
    out.phi_exact = expected_value_exact(table, dist);
    out.delta = out.expectation_hq - out.phi_exact;

    // Joint (y, xi) probabilities, summing out any other qubits.
    const std::size_t dim_y = std::size_t{1} << table.n_y;
    const std::size_t dim_xi = std::size_t{1} << table.n_xi;
    std::vector<double> joint(dim_y * dim_xi, 0.0);
    const auto a = state.amplitudes();
    for (Index i = 0; i < a.size(); ++i) {
        joint[layout.y.extract(i) + dim_y * layout.xi.extract(i)] += std::norm(a[i]);
    }

    std::vector<Bits> ys(dim_y);
    std::iota(ys.begin(), ys.end(), Bits{0});
    std::vector<double> cond(dim_y);
    ScenarioAccumulator acc;
    for (const auto& e : dist.entries()) {
        const double* row = &joint[dim_y * e.xi];
        const double marginal = std::accumulate(row, row + dim_y, 0.0);
        ScenarioOverlap so{e.xi, std::nullopt};
        if (marginal > 1e-300) {
            for (std::size_t y = 0; y < dim_y; ++y) {
                cond[y] = row[y] / marginal;
            }
            so.overlap = acc.add(table, e.xi, e.probability, ys, cond);
        }
        out.overlaps.push_back(so);
    }
    out.delta_decomposed = acc.delta_decomposed;
    return out;
}

namespace {

// One 2x2 block [[c, s], [s, c]] applied to rows u and v of a [D][S] array.
inline void rotate_rows(Complex* __restrict ru, Complex* __restrict rv, std::size_t s_count,
                        double c, double s_imag) {
    for (std::size_t s = 0; s < s_count; ++s) {
        const double xr = ru[s].real();
        const double xi = ru[s].imag();
        const double yr = rv[s].real();
        const double yi = rv[s].imag();
        // c*x + (i*s_imag)*y
        ru[s] = Complex{c * xr - s_imag * yi, c * xi + s_imag * yr};
        rv[s] = Complex{c * yr - s_imag * xi, c * yi + s_imag * xr};
    }
}

struct RowPair {
    std::uint32_t u;
    std::uint32_t v;
};

} // namespace

DqaDiagnostics anneal_by_scenario(const CostTable& table, const DiscreteDistribution& dist,
                                  const AnnealSchedule& schedule, MixerKind mixer) {
    const auto& ys = table.feasible;
    const std::size_t dim = ys.size();
    if (dim == 0) {
        throw std::invalid_argument("anneal: empty feasible set");
    }
    std::vector<Bits> xis;
    std::vector<double> probs;
    for (const auto& e : dist.entries()) {
        if (e.probability > 0.0) {
            xis.push_back(e.xi);
            probs.push_back(e.probability);
        }
    }
    const std::size_t n_s = xis.size();

    // Position of each feasible y in the subspace basis.
    std::vector<std::int64_t> position(std::size_t{1} << table.n_y, -1);
    for (std::size_t i = 0; i < dim; ++i) {
        position[ys[i]] = static_cast<std::int64_t>(i);
    }

    // Mixer factors in application order. Each is a list of row pairs sharing
    // one rotation.
    std::vector<std::vector<RowPair>> factors;
    auto pairs_for_flip = [&](Bits flip, auto&& wants) {
        std::vector<RowPair> pairs;
        for (std::size_t i = 0; i < dim; ++i) {
            if (!wants(ys[i])) {
                continue;
            }
            const auto j = position[ys[i] ^ flip];
            if (j < 0) {
                throw std::invalid_argument("anneal: feasible set not closed under the mixer");
            }
            pairs.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
        }
        return pairs;
    };
    if (mixer == MixerKind::HammingWeight) {
        for (unsigned j = 0; j + 1 < table.n_y; ++j) {
            for (unsigned k = j + 1; k < table.n_y; ++k) {
                const Bits bj = Bits{1} << j;
                const Bits bk = Bits{1} << k;
                factors.push_back(pairs_for_flip(
                    bj | bk, [=](Bits y) { return (y & bj) != 0 && (y & bk) == 0; }));
            }
        }
    } else {
        if (dim != (std::size_t{1} << table.n_y)) {
            throw std::invalid_argument("anneal: transverse field needs every y feasible");
        }
        for (unsigned j = 0; j < table.n_y; ++j) {
            const Bits bj = Bits{1} << j;
            factors.push_back(pairs_for_flip(bj, [=](Bits y) { return (y & bj) == 0; }));
        }
    }

    // amps[d * n_s + s]: amplitude of feasible y_d conditioned on scenario s.
    std::vector<Complex> amps(dim * n_s, Complex{1.0 / std::sqrt(static_cast<double>(dim)), 0.0});
    std::vector<double> cost(dim * n_s);
    for (std::size_t d = 0; d < dim; ++d) {
        for (std::size_t s = 0; s < n_s; ++s) {
            cost[d * n_s + s] = table.at(ys[d], xis[s]);
        }
    }

    for (unsigned t = 1; t <= schedule.T; ++t) {
        const double gamma = schedule.cost_angle(t);
        for (std::size_t i = 0; i < amps.size(); ++i) {
            amps[i] *= std::polar(1.0, gamma * cost[i]);
        }
        const double beta = schedule.mixer_angle(t);
        const double c = std::cos(beta);
        const double s = -std::sin(beta);
        for (const auto& factor : factors) {
            for (const auto& pr : factor) {
                rotate_rows(&amps[pr.u * n_s], &amps[pr.v * n_s], n_s, c, s);
            }
        }
    }

    DqaDiagnostics out;
    out.phi_exact = expected_value_exact(table, dist);
    std::vector<double> cond(dim);
    ScenarioAccumulator acc;
    double energy = 0.0;
    std::size_t next = 0;
    for (const auto& e : dist.entries()) {
        if (!(e.probability > 0.0)) {
            out.overlaps.push_back({e.xi, std::nullopt});
            continue;
        }
        const std::size_t s = next++;
        for (std::size_t d = 0; d < dim; ++d) {
            cond[d] = std::norm(amps[d * n_s + s]);
            energy += e.probability * cond[d] * cost[d * n_s + s];
        }
        out.overlaps.push_back({e.xi, acc.add(table, e.xi, e.probability, ys, cond)});
    }
    out.expectation_hq = energy;
    out.delta = out.expectation_hq - out.phi_exact;
    out.delta_decomposed = acc.delta_decomposed;
    return out;
}

} // namespace spq::dqa
