#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "reference.hpp"
#include "spq/harness.hpp"

using namespace spq;
using namespace spq::harness;

namespace {

UnitCommitmentModel two_turbines() { return {2, 0.4, {0.1, 0.2}, 1.0, 2}; }

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

std::filesystem::path scratch_dir(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("spq_test_" + name);
    std::filesystem::remove_all(p);
    return p;
}

} // namespace

TEST(OuterLoop, OptimalStateReproducesObjective) {
    const auto m = two_turbines();
    OuterLoopOptions opt;
    opt.mode = PhiMode::OptimalState;
    const auto t = outer_loop(m, DiscreteDistribution::uniform(2), opt);
    ASSERT_EQ(t.rows.size(), 3U);
    const double phi0 = ref::uc_phi_uniform(m.c, m.c_r, 2);
    const double expected[] = {phi0, 0.75, 0.8};
    for (int x = 0; x < 3; ++x) {
        EXPECT_NEAR(t.rows[x].o_exact, expected[x], 1e-12);
        EXPECT_NEAR(t.rows[x].o_tilde, t.rows[x].o_exact, 1e-10);
    }
    EXPECT_EQ(t.x_star, 1U);
    EXPECT_EQ(t.x_tilde_star, 1U);
    EXPECT_NEAR(minima_error(t), 0.0, 1e-15);
}

TEST(OuterLoop, ExpectationModeMatchesFullCircuit) {
    const auto m = UnitCommitmentModel::generate(3, 77);
    const auto u = DiscreteDistribution::uniform(3);
    OuterLoopOptions opt;
    opt.T = 5;
    const auto t = outer_loop(m, u, opt);
    const auto layout = RegisterLayout::dqa_only(3, 3);
    for (const auto& r : t.rows) {
        const auto s = dqa::run_dqa(dqa::build_dqa(m, r.x, u, {5}, layout), layout);
        const auto table = CostTable::for_unit_commitment(m, r.x);
        EXPECT_NEAR(r.expectation_hq, dqa::expectation_hq(s, table, layout), 1e-12);
        EXPECT_NEAR(r.delta, r.expectation_hq - r.phi_exact, 1e-12);
    }
}

TEST(OuterLoop, QaeModeLastPointIsGasOnly) {
    const auto m = UnitCommitmentModel::generate(3, 5);
    OuterLoopOptions opt;
    opt.mode = PhiMode::Qae;
    opt.T = 4;
    opt.m = 4;
    opt.seed = 3;
    const auto t = outer_loop(m, DiscreteDistribution::uniform(3), opt);
    const auto& last = t.rows.back();
    EXPECT_EQ(last.x, 3U);
    EXPECT_EQ(*last.b, 0U);
    EXPECT_DOUBLE_EQ(last.o_tilde, m.c_x * 3);
    for (const auto& r : t.rows) {
        EXPECT_TRUE(r.sin_bias.has_value());
        EXPECT_GE(r.o_tilde, m.c_x * r.x);
    }
}

TEST(OuterLoop, AmplifyTakesMedian) {
    const auto m = UnitCommitmentModel::generate(2, 6);
    OuterLoopOptions opt;
    opt.mode = PhiMode::Qae;
    opt.oracle = OracleChoice::Exact;
    opt.T = 3;
    opt.m = 5;
    opt.amplify = 7;
    const auto row = evaluate_x(m, DiscreteDistribution::uniform(2), 0, opt);
    // The median of grid values is itself a grid value.
    const auto kind = make_oracle_kind(OracleChoice::Exact, oracle_bounds(m, 0));
    bool on_grid = false;
    for (Index b = 0; b < 32; ++b) {
        on_grid |= std::abs(oracle::readback(qae::grid_value(b, 5), kind) - row.phi_tilde) < 1e-12;
    }
    EXPECT_TRUE(on_grid);
}

TEST(Metrics, RelativeErrorAndPearson) {
    ObjectiveTable t;
    t.rows = {{0, 0, 2.0, 0, 0, 0, 3.0}, {1, 0, 1.0, 0, 0, 0, 1.0}};
    t.x_star = 1;
    t.x_tilde_star = 1;
    EXPECT_DOUBLE_EQ(relative_objective_error(t), 0.5);
    EXPECT_DOUBLE_EQ(minima_error(t), 0.0);
    EXPECT_NEAR(pearson({1, 2, 3}, {2, 4, 6}), 1.0, 1e-15);
    EXPECT_NEAR(pearson({1, 2, 3}, {3, 2, 1}), -1.0, 1e-15);
}

TEST(ParallelFor, EachIndexOnce) {
    std::vector<int> hits(100, 0);
    parallel_for(100, 4, [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) {
        EXPECT_EQ(h, 1);
    }
    EXPECT_THROW(parallel_for(10, 3, [](std::size_t i) {
                     if (i == 5) throw std::runtime_error("x");
                 }),
                 std::runtime_error);
}

TEST(Config, ParsingAndRejection) {
    const auto c3 = parse_fig3_config(R"({"n_y": [4], "instances": 2})");
    EXPECT_EQ(c3.n_y_values, std::vector<unsigned>{4});
    EXPECT_THROW(parse_fig3_config(R"({"bogus": 1})"), ConfigError);
    EXPECT_THROW(parse_fig3_config("[1,2"), ConfigError);
    const auto c5 = parse_fig5_config(R"({"settings": [{"n_y": 3, "m": 4, "T": 5}], "oracle": "exact"})");
    EXPECT_EQ(c5.settings.size(), 1U);
    EXPECT_EQ(c5.oracle, OracleChoice::Exact);
    EXPECT_THROW(parse_fig5_config(R"({"oracle": "cubic"})"), ConfigError);
    EXPECT_THROW(parse_fig4_config(R"({"m": [13]})"), ConfigError);
}

TEST(Experiments, Fig3OutputsAreReproducible) {
    Fig3Config c;
    c.n_y_values = {3};
    c.instances = 3;
    const auto d1 = scratch_dir("fig3a");
    const auto d2 = scratch_dir("fig3b");
    const auto r = experiment_fig3(c);
    write_fig3(r, c, d1);
    c.workers = 2;
    write_fig3(experiment_fig3(c), c, d2);
    for (const char* f : {"runs.csv", "metrics.csv", "summary.csv"}) {
        EXPECT_EQ(slurp(d1 / f), slurp(d2 / f)) << f;
    }
    for (const auto& run : r.runs) {
        for (const auto& row : run.table.rows) {
            EXPECT_NEAR(row.delta, row.expectation_hq - row.phi_exact, 1e-9);
            EXPECT_NEAR(row.phi_exact, ref::uc_phi_uniform(
                UnitCommitmentModel::generate(3, run.seed).c, 1.0, 3 - row.x), 1e-12);
        }
        if (run.table.x_star == run.table.x_tilde_star) {
            EXPECT_EQ(run.metric_b, 0.0);
        }
    }
}

TEST(Experiments, Fig4SmallRun) {
    Fig4Config c;
    c.n_y = 2;
    c.m_values = {4, 6};
    c.samples = 2000;
    const auto r = experiment_fig4(c);
    ASSERT_EQ(r.per_m.size(), 2U);
    for (const auto& pm : r.per_m) {
        EXPECT_NEAR(pm.mc_exact_rmse,
                    std::sqrt(pm.a_true * (1 - pm.a_true) / pm.mc_shots) *
                        (r.bounds.upper - r.bounds.lower),
                    1e-12);
        EXPECT_NEAR(pm.mc_rmse, pm.mc_exact_rmse, 0.2 * pm.mc_exact_rmse);
        double total = 0;
        for (double p : pm.b_distribution) total += p;
        EXPECT_NEAR(total, 1.0, 1e-10);
    }
    const auto d = scratch_dir("fig4");
    write_fig4(r, c, d);
    EXPECT_TRUE(std::filesystem::exists(d / "histograms.csv"));
    EXPECT_TRUE(std::filesystem::exists(d / "meta.json"));
}

TEST(Experiments, Fig5SmallRunIsReproducible) {
    Fig5Config c;
    c.settings = {{3, 4, 4}};
    c.repetitions = 2;
    const auto a = experiment_fig5(c);
    const auto b = experiment_fig5(c);
    const auto d1 = scratch_dir("fig5a");
    const auto d2 = scratch_dir("fig5b");
    write_fig5(a, c, d1);
    write_fig5(b, c, d2);
    EXPECT_EQ(slurp(d1 / "surface.csv"), slurp(d2 / "surface.csv"));
    EXPECT_EQ(slurp(d1 / "runs.csv"), slurp(d2 / "runs.csv"));
    EXPECT_NE(a.runs[0].instance_seed, a.runs[1].instance_seed);
}
