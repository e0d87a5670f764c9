#include <chrono>
#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "spq/harness.hpp"
#include "spq/instance_io.hpp"

namespace {

constexpr int kExitInvalidConfig = 2;
constexpr int kExitBudget = 3;

using nlohmann::json;
using namespace spq;

json row_json(const harness::ObjectiveRow& r) {
    json j{{"x", r.x},
           {"phi_exact", r.phi_exact},
           {"o_exact", r.o_exact},
           {"expectation_hq", r.expectation_hq},
           {"delta", r.delta},
           {"phi_tilde", r.phi_tilde},
           {"o_tilde", r.o_tilde}};
    if (r.b) {
        j["b"] = *r.b;
        j["a_hat"] = *r.a_hat;
        j["a_true"] = *r.a_true;
        j["within_bound"] = *r.within_bound;
    }
    if (r.sin_bias) {
        j["sin_bias"] = *r.sin_bias;
    }
    return j;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Scenario-controlled annealing and amplitude estimation for two-stage "
                 "stochastic unit commitment"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "Estimate phi(x) for one first-stage decision");
    std::string run_instance;
    unsigned run_x = 0;
    unsigned run_T = 10;
    std::string run_oracle = "sin";
    unsigned run_m = 6;
    std::uint64_t run_seed = 0;
    unsigned run_amplify = 1;
    std::string run_method = "power";
    bool run_expectation = false;
    run->add_option("--instance", run_instance, "Instance JSON file")->required();
    run->add_option("--x", run_x, "Gas units")->required();
    run->add_option("--T", run_T, "Annealing layers");
    run->add_option("--oracle", run_oracle, "exact | sin | sin_literal");
    run->add_option("--m", run_m, "Estimate qubits");
    run->add_option("--seed", run_seed, "Measurement seed");
    run->add_option("--amplify", run_amplify, "Median of k estimates");
    run->add_option("--method", run_method, "QPE construction: power | controlled");
    run->add_flag("--expectation", run_expectation,
                  "Skip amplitude estimation and report the exact <H_Q>");

    // exact
    auto* exact = app.add_subcommand("exact", "Classical brute-force objective table");
    std::string exact_instance;
    exact->add_option("--instance", exact_instance, "Instance JSON file")->required();

    // experiment
    auto* exp = app.add_subcommand("experiment", "Reproduce one of the experiment sweeps");
    std::string exp_kind;
    std::string exp_config;
    std::string exp_out;
    unsigned exp_amplify = 0;
    exp->add_option("kind", exp_kind, "fig3 | fig4 | fig5")
        ->required()
        ->check(CLI::IsMember({"fig3", "fig4", "fig5"}));
    exp->add_option("--config", exp_config, "Experiment JSON (defaults when omitted)");
    exp->add_option("--out", exp_out, "Output directory")->required();
    exp->add_option("--amplify", exp_amplify, "Median of k estimates per x (fig5)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInvalidConfig;
    }

    try {
        if (*run) {
            const auto inst = load_instance(run_instance);
            harness::OuterLoopOptions opt;
            opt.mode = run_expectation ? harness::PhiMode::ExactExpectation : harness::PhiMode::Qae;
            opt.T = run_T;
            opt.m = run_m;
            opt.oracle = harness::parse_oracle_choice(run_oracle);
            opt.seed = run_seed;
            opt.amplify = run_amplify;
            if (run_method == "power") {
                opt.method = qae::QpeMethod::PowerSeries;
            } else if (run_method == "controlled") {
                opt.method = qae::QpeMethod::ControlledCircuit;
            } else {
                throw ConfigError("--method must be power or controlled");
            }
            if (!run_expectation) {
                qae::QaeConfig{run_m, run_amplify, run_seed, opt.method}.validate();
            }
            const auto row = harness::evaluate_x(inst.model, inst.distribution, run_x, opt);
            std::cout << row_json(row).dump(2) << "\n";
        } else if (*exact) {
            const auto inst = load_instance(exact_instance);
            harness::OuterLoopOptions opt;
            opt.mode = harness::PhiMode::OptimalState;
            const auto table = harness::outer_loop(inst.model, inst.distribution, opt);
            json rows = json::array();
            for (const auto& r : table.rows) {
                rows.push_back({{"x", r.x}, {"phi", r.phi_exact}, {"o", r.o_exact}});
            }
            std::cout << json{{"rows", rows}, {"x_star", table.x_star}}.dump(2) << "\n";
        } else if (*exp) {
            const std::string text = exp_config.empty() ? "{}" : harness::read_file(exp_config);
            const auto start = std::chrono::steady_clock::now();
            if (exp_kind == "fig3") {
                const auto cfg = harness::parse_fig3_config(text);
                harness::write_fig3(harness::experiment_fig3(cfg), cfg, exp_out);
            } else if (exp_kind == "fig4") {
                const auto cfg = harness::parse_fig4_config(text);
                harness::write_fig4(harness::experiment_fig4(cfg), cfg, exp_out);
            } else {
                auto cfg = harness::parse_fig5_config(text);
                if (exp_amplify > 0) {
                    cfg.amplify = exp_amplify;
                }
                harness::write_fig5(harness::experiment_fig5(cfg), cfg, exp_out);
            }
            const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
            harness::write_timing(exp_out, took.count());
            std::cerr << exp_kind << " written to " << exp_out << "\n";
        }
    } catch (const std::length_error& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kExitBudget;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return kExitInvalidConfig;
    } catch (const std::domain_error& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return kExitInvalidConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
