#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spq/dqa.hpp"
#include "spq/instance_io.hpp"
#include "spq/model.hpp"
#include "spq/oracle.hpp"
#include "spq/qae.hpp"

namespace spq::harness {

enum class PhiMode {
    /// phi~ = <H_Q> of the annealed state, no sampling.
    ExactExpectation,
    /// phi~ = <H_Q> of the brute-force optimal state (infinite-T surrogate).
    OptimalState,
    /// Full annealer + oracle + amplitude estimation.
    Qae,
};

enum class OracleChoice { Exact, Sin, SinLiteral };

OracleChoice parse_oracle_choice(std::string_view text);
std::string to_string(OracleChoice choice);

struct OuterLoopOptions {
    PhiMode mode = PhiMode::ExactExpectation;
    unsigned T = 1;
    // Qae mode only.
    unsigned m = 6;
    OracleChoice oracle = OracleChoice::Sin;
    /// Median of this many estimates per x.
    unsigned amplify = 1;
    std::uint64_t seed = 0;
    qae::QpeMethod method = qae::QpeMethod::PowerSeries;
};

struct ObjectiveRow {
    unsigned x = 0;
    double phi_exact = 0.0;
    double o_exact = 0.0;
    double expectation_hq = 0.0;
    double delta = 0.0;
    double phi_tilde = 0.0;
    double o_tilde = 0.0;
    // Qae mode only.
    std::optional<Index> b;
    std::optional<double> a_hat;
    std::optional<double> a_true;
    std::optional<bool> within_bound;
    /// SinApprox readback bias on the annealed state.
    std::optional<double> sin_bias;
};

struct ObjectiveTable {
    std::vector<ObjectiveRow> rows;
    unsigned x_star = 0;
    unsigned x_tilde_star = 0;
};

/// Bounds used for the oracle at x. Equal to cost_bounds except at x = d,
/// where every cost is 0 and the range is widened to [0, c_r].
Bounds oracle_bounds(const UnitCommitmentModel& model, unsigned x);

oracle::OracleKind make_oracle_kind(OracleChoice choice, const Bounds& bounds);

/// Estimates phi~(x) for one first-stage decision.
ObjectiveRow evaluate_x(const UnitCommitmentModel& model, const DiscreteDistribution& dist,
                        unsigned x, const OuterLoopOptions& options);

/// Scans x in [0, d]; argmins break ties toward the smaller x.
ObjectiveTable outer_loop(const UnitCommitmentModel& model, const DiscreteDistribution& dist,
                          const OuterLoopOptions& options);

/// sum_x |o~(x) - o(x)| / o(x).
double relative_objective_error(const ObjectiveTable& table);
/// |o(x~*) - o(x*)| / o(x*).
double minima_error(const ObjectiveTable& table);

double pearson(const std::vector<double>& a, const std::vector<double>& b);

/// Runs fn(i) for i in [0, n) on `workers` threads. Each index is handled
/// exactly once; results must be written to per-index slots by fn.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& fn);

// Sweep of the annealing-time rules over random instances.

struct Fig3Config {
    std::uint64_t master_seed = 20240601;
    std::vector<unsigned> n_y_values{4, 6, 8, 10};
    unsigned instances = 30;
    unsigned workers = 1;
};

struct Fig3Run {
    unsigned n_y = 0;
    unsigned instance = 0;
    std::uint64_t seed = 0;
    std::string rule;
    unsigned T = 0;
    ObjectiveTable table;
    double metric_a = 0.0;
    double metric_b = 0.0;
};

struct Fig3Summary {
    unsigned n_y = 0;
    std::string rule;
    unsigned T = 0;
    double a_min = 0, a_median = 0, a_max = 0;
    double b_min = 0, b_median = 0, b_max = 0;
};

struct Fig3Result {
    std::vector<Fig3Run> runs;
    std::vector<Fig3Summary> summary;
};

Fig3Result experiment_fig3(const Fig3Config& config);

// Estimate densities of amplitude estimation versus plain sampling.

struct Fig4Config {
    std::uint64_t instance_seed = 3;
    unsigned n_y = 3;
    unsigned x = 1;
    std::vector<unsigned> m_values{5, 6, 7, 8};
    std::size_t samples = 10000;
    double bin_width = 0.02237;
    std::uint64_t master_seed = 20240602;
};

struct Fig4MResult {
    unsigned m = 0;
    std::size_t mc_shots = 0;
    double a_true = 0.0;
    double phi_exact = 0.0;
    std::vector<double> qae_phi;
    std::vector<double> mc_phi;
    std::vector<Index> qae_b;
    /// Exact distribution of b.
    std::vector<double> b_distribution;
    double qae_rmse = 0.0;
    double mc_rmse = 0.0;
    double qae_exact_rmse = 0.0;
    double mc_exact_rmse = 0.0;
    double within_bound_rate = 0.0;
    double within_bound_exact = 0.0;
};

struct Fig4Result {
    UnitCommitmentModel model;
    Bounds bounds;
    std::vector<Fig4MResult> per_m;
};

Fig4Result experiment_fig4(const Fig4Config& config);

// Full pipeline surfaces.

struct Fig5Setting {
    unsigned n_y = 4;
    unsigned m = 6;
    unsigned T = 10;
};

struct Fig5Config {
    std::vector<Fig5Setting> settings{{4, 6, 10}, {5, 6, 15}, {6, 5, 20}};
    unsigned repetitions = 10;
    OracleChoice oracle = OracleChoice::Sin;
    unsigned amplify = 1;
    std::uint64_t master_seed = 20240603;
    unsigned workers = 1;
};

struct Fig5Run {
    Fig5Setting setting;
    unsigned repetition = 0;
    std::uint64_t instance_seed = 0;
    std::uint64_t measurement_seed = 0;
    ObjectiveTable table;
    double correlation = 0.0;
};

struct Fig5Result {
    std::vector<Fig5Run> runs;
};

Fig5Result experiment_fig5(const Fig5Config& config);

// Configuration files and outputs.

Fig3Config parse_fig3_config(std::string_view json_text);
Fig4Config parse_fig4_config(std::string_view json_text);
Fig5Config parse_fig5_config(std::string_view json_text);
std::string read_file(const std::filesystem::path& path);

/// Each writer emits CSV tables plus a meta.json with the configuration.
/// Timings go to timing.json only, so every other file is reproducible.
void write_fig3(const Fig3Result& result, const Fig3Config& config,
                const std::filesystem::path& dir);
void write_fig4(const Fig4Result& result, const Fig4Config& config,
                const std::filesystem::path& dir);
void write_fig5(const Fig5Result& result, const Fig5Config& config,
                const std::filesystem::path& dir);
void write_timing(const std::filesystem::path& dir, double seconds);

/// Objective table as CSV (header + one line per x).
std::string objective_csv(const ObjectiveTable& table);

} // namespace spq::harness
