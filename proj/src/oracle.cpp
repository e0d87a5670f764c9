#include "spq/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

namespace spq::oracle {

namespace {

constexpr double kBoundSlack = 1e-12;

} // namespace

OracleKind OracleKind::exact(Bounds bounds) {
    return {OracleVariant::Exact, bounds, std::numbers::pi};
}

OracleKind OracleKind::sin_normalized(Bounds bounds) {
    if (!(bounds.upper > 0.0)) {
        throw std::invalid_argument("sin oracle: normalized scale needs q_u > 0");
    }
    return {OracleVariant::SinApprox, bounds, std::numbers::pi / bounds.upper};
}

OracleKind OracleKind::sin_literal(Bounds bounds) {
    return {OracleVariant::SinApprox, bounds, std::numbers::pi};
}

void OracleKind::validate() const {
    if (!(bounds.upper > bounds.lower)) {
        throw std::invalid_argument("oracle: bounds need q_u > q_l");
    }
    if (variant == OracleVariant::SinApprox) {
        if (!(angle_scale > 0.0)) {
            throw std::invalid_argument("sin oracle: angle scale must be positive");
        }
        if (angle_scale * bounds.upper > std::numbers::pi * (1.0 + 1e-12)) {
            throw std::invalid_argument("sin oracle: angle_scale * q_u = " +
                                        std::to_string(angle_scale * bounds.upper) +
                                        " exceeds pi and would alias");
        }
    }
}

double qbar(const Bounds& bounds, double q) {
    if (!(bounds.upper > bounds.lower)) {
        throw std::invalid_argument("qbar: bounds need q_u > q_l");
    }
    if (q < bounds.lower - kBoundSlack || q > bounds.upper + kBoundSlack) {
        throw std::domain_error("qbar: cost " + std::to_string(q) + " outside [" +
                                std::to_string(bounds.lower) + ", " +
                                std::to_string(bounds.upper) + "]");
    }
    return std::clamp((q - bounds.lower) / (bounds.upper - bounds.lower), 0.0, 1.0);
}

Bounds table_bounds(const CostTable& table) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    const Bits n_scen = Bits{1} << table.n_xi;
    for (Bits xi = 0; xi < n_scen; ++xi) {
        for (Bits y : table.feasible) {
            lo = std::min(lo, table.at(y, xi));
            hi = std::max(hi, table.at(y, xi));
        }
    }
    return {lo, hi};
}

OperatorSequence build_exact(const CostTable& table, const Bounds& bounds,
                             const RegisterLayout& layout) {
    if (!layout.ancilla) {
        throw std::invalid_argument("oracle: layout has no ancilla");
    }
    if (layout.y.count != table.n_y || layout.xi.count != table.n_xi) {
        throw std::invalid_argument("oracle: layout does not match the cost table");
    }
    std::vector<bool> feasible(std::size_t{1} << table.n_y, false);
    for (Bits y : table.feasible) {
        feasible[y] = true;
    }
    auto angles = std::make_shared<std::vector<double>>(table.values.size());
    const Bits y_mask = (Bits{1} << table.n_y) - 1;
    for (std::size_t i = 0; i < angles->size(); ++i) {
        const double q = table.values[i];
        const double qb =
            feasible[i & y_mask]
                ? qbar(bounds, q)
                : std::clamp((q - bounds.lower) / (bounds.upper - bounds.lower), 0.0, 1.0);
        (*angles)[i] = 2.0 * std::asin(std::sqrt(qb));
    }
    auto selectors = layout.y.qubits();
    const auto xq = layout.xi.qubits();
    selectors.insert(selectors.end(), xq.begin(), xq.end());

    OperatorSequence seq;
    seq.label = "F_exact";
    seq.append(gates::multiplexed_ry(*layout.ancilla, std::move(selectors), std::move(angles)));
    return seq;
}

OperatorSequence build_sin(const UnitCommitmentModel& model, double angle_scale,
                           const RegisterLayout& layout) {
    if (!layout.ancilla) {
        throw std::invalid_argument("oracle: layout has no ancilla");
    }
    if (layout.y.count != model.n_y || layout.xi.count != model.n_y) {
        throw std::invalid_argument("oracle: layout does not match the instance");
    }
    const unsigned anc = *layout.ancilla;
    OperatorSequence seq;
    seq.label = "F_sin";
    for (unsigned j = 0; j < model.n_y; ++j) {
        const unsigned y = layout.y.first + j;
        const unsigned w = layout.xi.first + j;
        seq.append(gates::ccry(w, y, anc, angle_scale * model.c[j]));
        seq.append(gates::x(w));
        seq.append(gates::ccry(w, y, anc, angle_scale * model.c_r));
        seq.append(gates::x(w));
    }
    return seq;
}

OperatorSequence build_oracle(const OracleKind& kind, const UnitCommitmentModel& model,
                              unsigned x, const RegisterLayout& layout) {
    kind.validate();
    if (kind.variant == OracleVariant::Exact) {
        return build_exact(CostTable::for_unit_commitment(model, x), kind.bounds, layout);
    }
    return build_sin(model, kind.angle_scale, layout);
}

double sin_oracle_readback(double a_hat, double angle_scale) {
    if (!(a_hat >= 0.0 && a_hat <= 1.0)) {
        throw std::domain_error("readback: estimate outside [0, 1]");
    }
    return 2.0 / angle_scale * std::asin(std::sqrt(a_hat));
}

double readback(double a_hat, const OracleKind& kind) {
    if (kind.variant == OracleVariant::SinApprox) {
        return sin_oracle_readback(a_hat, kind.angle_scale);
    }
    if (!(a_hat >= 0.0 && a_hat <= 1.0)) {
        throw std::domain_error("readback: estimate outside [0, 1]");
    }
    return a_hat * (kind.bounds.upper - kind.bounds.lower) + kind.bounds.lower;
}

double sin_mixture_bias(std::span<const double> weights, std::span<const double> costs,
                        double angle_scale) {
    if (weights.size() != costs.size()) {
        throw std::invalid_argument("mixture bias: size mismatch");
    }
    double a = 0.0;
    double mean = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        const double s = std::sin(angle_scale * costs[i] / 2.0);
        a += weights[i] * s * s;
        mean += weights[i] * costs[i];
        total += weights[i];
    }
    return sin_oracle_readback(std::clamp(a / total, 0.0, 1.0), angle_scale) - mean / total;
}

double sin_mixture_bias(const StateVector& state, const CostTable& table,
                        const RegisterLayout& layout, double angle_scale) {
    std::vector<double> weights;
    std::vector<double> costs;
    const auto amps = state.amplitudes();
    for (Index i = 0; i < amps.size(); ++i) {
        const double p = std::norm(amps[i]);
        if (p > 0.0) {
            weights.push_back(p);
            costs.push_back(diagonal_cost_lookup(table, layout, i));
        }
    }
    return sin_mixture_bias(weights, costs, angle_scale);
}

} // namespace spq::oracle
