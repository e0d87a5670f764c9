#pragma once

#include <numbers>
#include <span>

#include "spq/gate.hpp"
#include "spq/layout.hpp"
#include "spq/model.hpp"
#include "spq/statevector.hpp"

namespace spq::oracle {

enum class OracleVariant { Exact, SinApprox };

/// Payoff oracle selection. angle_scale is the RY angle per unit cost and is
/// only used by SinApprox.
struct OracleKind {
    OracleVariant variant = OracleVariant::Exact;
    Bounds bounds;
    double angle_scale = std::numbers::pi;

    static OracleKind exact(Bounds bounds);
    /// angle_scale = pi / q_u, so the most expensive branch rotates fully to |1>.
    static OracleKind sin_normalized(Bounds bounds);
    /// angle_scale = pi regardless of the bounds.
    static OracleKind sin_literal(Bounds bounds);

    /// Throws std::invalid_argument when q_u <= q_l, or for SinApprox when
    /// angle_scale * q_u > pi (the rotation would alias).
    void validate() const;
};

/// (q - q_l) / (q_u - q_l). Throws std::domain_error when q lies outside the
/// bounds by more than 1e-12; values inside that slack are clamped.
double qbar(const Bounds& bounds, double q);

/// Smallest and largest cost over the table's feasible (y, xi) pairs.
Bounds table_bounds(const CostTable& table);

/// Exact oracle: RY(2 asin sqrt(qbar(q(y, xi)))) on the ancilla, multiplexed
/// over every (y, xi) basis state. Infeasible y (never reached from the
/// annealer) have their angle clamped to [0, pi].
OperatorSequence build_exact(const CostTable& table, const Bounds& bounds,
                             const RegisterLayout& layout);

/// Sin oracle: for each turbine j, CCRY(s c_j) on (xi_j, y_j) and
/// X(xi_j) CCRY(s c_r) X(xi_j), all targeting the ancilla.
OperatorSequence build_sin(const UnitCommitmentModel& model, double angle_scale,
                           const RegisterLayout& layout);

/// Dispatches on kind.variant. Throws std::invalid_argument when the layout
/// has no ancilla or widths disagree.
OperatorSequence build_oracle(const OracleKind& kind, const UnitCommitmentModel& model,
                              unsigned x, const RegisterLayout& layout);

/// Maps a normalized estimate back to cost units: a (q_u - q_l) + q_l for
/// Exact, (2 / s) asin(sqrt(a)) for SinApprox. Throws std::domain_error
/// unless 0 <= a <= 1.
double readback(double a_hat, const OracleKind& kind);

/// SinApprox inversion alone.
double sin_oracle_readback(double a_hat, double angle_scale);

/// Bias of the SinApprox readback on a mixture of branches:
/// readback(sum_i w_i sin^2(s q_i / 2)) - sum_i w_i q_i.
double sin_mixture_bias(std::span<const double> weights, std::span<const double> costs,
                        double angle_scale);

/// The same bias evaluated over the (y, xi) distribution of a state.
double sin_mixture_bias(const StateVector& state, const CostTable& table,
                        const RegisterLayout& layout, double angle_scale);

} // namespace spq::oracle
