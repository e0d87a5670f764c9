#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "spq/layout.hpp"

namespace spq {

using Bits = std::uint64_t;

/// A y bitstring violating the demand constraint was passed where a feasible
/// one is required.
class InfeasibleDecision : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Binary stochastic unit commitment: gas output x at cost c_x per unit,
/// turbine j at cost c[j] when its wind blows, recourse cost c_r when a
/// committed turbine has no wind. Demand constraint: popcount(y) + x = d.
struct UnitCommitmentModel {
    unsigned n_y = 0;
    double c_x = 0.4;
    std::vector<double> c;
    double c_r = 1.0;
    unsigned d = 0;

    /// Throws std::invalid_argument unless 0 < c_j < c_x < c_r and |c| = n_y.
    void validate() const;

    /// c_j drawn uniformly from [cost_lo, cost_hi] with the given seed;
    /// d = n_y.
    static UnitCommitmentModel generate(unsigned n_y, std::uint64_t seed, double c_x = 0.4,
                                        double c_r = 1.0, double cost_lo = 0.01,
                                        double cost_hi = 0.2);
};

struct Scenario {
    Bits xi = 0;
    double probability = 0.0;
};

/// Discrete random variable over n_xi-bit scenarios.
class DiscreteDistribution {
  public:
    /// Throws std::invalid_argument on duplicate or oversized scenarios,
    /// negative probabilities, or a total differing from 1 by more than 1e-12.
    DiscreteDistribution(unsigned n_xi, std::vector<Scenario> entries);

    static DiscreteDistribution uniform(unsigned n_xi);
    static DiscreteDistribution point_mass(unsigned n_xi, Bits xi);

    unsigned n_xi() const { return n_xi_; }
    const std::vector<Scenario>& entries() const { return entries_; }
    /// Probability of scenario xi (0 when absent).
    double probability(Bits xi) const;
    bool is_uniform() const;

  private:
    unsigned n_xi_;
    std::vector<Scenario> entries_;
};

struct Bounds {
    double lower = 0.0;
    double upper = 1.0;
};

/// q(x, y, xi) = sum_j y_j (c_j xi_j + c_r (1 - xi_j)). Throws
/// InfeasibleDecision when popcount(y) != d - x.
double second_stage_cost(const UnitCommitmentModel& model, unsigned x, Bits y, Bits xi);

/// The same sum without the feasibility check.
double second_stage_cost_unchecked(const UnitCommitmentModel& model, Bits y, Bits xi);

/// q_l = 0, q_u = c_r (d - x).
Bounds cost_bounds(const UnitCommitmentModel& model, unsigned x);

struct RecourseSolution {
    Bits y = 0;
    double cost = 0.0;
};

/// All n-bit strings of Hamming weight k in increasing order.
std::vector<Bits> strings_of_weight(unsigned n, unsigned k);

/// Exhaustive minimum over feasible y; ties go to the smallest y.
/// Throws std::invalid_argument when x > d.
RecourseSolution brute_force_recourse(const UnitCommitmentModel& model, unsigned x, Bits xi);

/// phi(x) = sum_w p(w) Q(x, xi_w).
double expected_value_exact(const UnitCommitmentModel& model, unsigned x,
                            const DiscreteDistribution& dist);

/// o(x) = c_x x + phi(x).
double objective_exact(const UnitCommitmentModel& model, unsigned x,
                       const DiscreteDistribution& dist);

/// Diagonal of H_Q over the (y, xi) registers for one fixed first-stage
/// decision: values[y | (xi << n_y)] = q(y, xi). Defined on every y, feasible
/// or not.
struct CostTable {
    unsigned n_y = 0;
    unsigned n_xi = 0;
    std::vector<double> values;
    /// y strings the recourse minimum ranges over.
    std::vector<Bits> feasible;

    double at(Bits y, Bits xi) const { return values[y | (xi << n_y)]; }

    static CostTable for_unit_commitment(const UnitCommitmentModel& model, unsigned x);
};

/// Tie-broken minimum of a cost table over its feasible set for one scenario.
RecourseSolution brute_force_recourse(const CostTable& table, Bits xi);

/// sum_w p(w) min_y q(y, xi_w) over the feasible set.
double expected_value_exact(const CostTable& table, const DiscreteDistribution& dist);

/// H_Q diagonal entry of a full basis index: decodes y and xi through layout.
double diagonal_cost_lookup(const CostTable& table, const RegisterLayout& layout, Index basis);

/// Mixer family for the generic problem mode.
enum class MixerKind {
    /// sum_j X_j on y; initial state |+...+>; every y feasible.
    TransverseField,
    /// Partial swaps over all y pairs; Dicke initial state of weight k.
    HammingWeight,
};

/// A diagonal-cost problem over y and xi registers, independent of the unit
/// commitment instance.
struct GenericDiagonalProblem {
    CostTable table;
    MixerKind mixer = MixerKind::TransverseField;
    unsigned hamming_weight = 0;

    /// Builds the table from cost(y, xi); feasible set follows the mixer.
    static GenericDiagonalProblem from_function(unsigned n_y, unsigned n_xi,
                                                const std::function<double(Bits, Bits)>& cost,
                                                MixerKind mixer = MixerKind::TransverseField,
                                                unsigned hamming_weight = 0);

    /// H_Q = Z_0 Z_1 with qubit 0 computational and qubit 1 the scenario.
    static GenericDiagonalProblem zz_pair();

    /// Every scenario is a spin-flip gauge copy of one base spin glass
    /// f(y) = sum_j h_j z_j + sum_{j<k} J_jk z_j z_k: q(y, xi) = f(y XOR mask(xi))
    /// with mask bit j equal to xi bit (j mod n_xi).
    static GenericDiagonalProblem sign_flip_family(unsigned n_y, unsigned n_xi,
                                                   std::uint64_t seed);

    void validate() const;
};

} // namespace spq
