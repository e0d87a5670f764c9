#include "spq/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace spq::harness {

using nlohmann::json;

OracleChoice parse_oracle_choice(std::string_view text) {
    if (text == "exact") {
        return OracleChoice::Exact;
    }
    if (text == "sin") {
        return OracleChoice::Sin;
    }
    if (text == "sin_literal") {
        return OracleChoice::SinLiteral;
    }
    throw ConfigError("oracle must be exact, sin or sin_literal, got '" + std::string(text) + "'");
}

std::string to_string(OracleChoice choice) {
    switch (choice) {
    case OracleChoice::Exact:
        return "exact";
    case OracleChoice::Sin:
        return "sin";
    case OracleChoice::SinLiteral:
        return "sin_literal";
    }
    return "?";
}

Bounds oracle_bounds(const UnitCommitmentModel& model, unsigned x) {
    auto b = cost_bounds(model, x);
    if (!(b.upper > b.lower)) {
        b.upper = b.lower + model.c_r;
    }
    return b;
}

oracle::OracleKind make_oracle_kind(OracleChoice choice, const Bounds& bounds) {
    switch (choice) {
    case OracleChoice::Exact:
        return oracle::OracleKind::exact(bounds);
    case OracleChoice::Sin:
        return oracle::OracleKind::sin_normalized(bounds);
    case OracleChoice::SinLiteral:
        return oracle::OracleKind::sin_literal(bounds);
    }
    throw std::logic_error("unknown oracle choice");
}

namespace {

void fill_qae(ObjectiveRow& row, const UnitCommitmentModel& model, unsigned x,
              const DiscreteDistribution& dist, const CostTable& table,
              const OuterLoopOptions& opt) {
    const auto layout = RegisterLayout::with_qae(model.n_y, model.n_y, opt.m);
    const auto dqa_layout = RegisterLayout::dqa_only(model.n_y, model.n_y);
    const auto dqa_seq = dqa::build_dqa(model, x, dist, {opt.T}, layout);

    StateVector annealed(dqa_layout.total_qubits());
    apply_sequence(annealed, dqa_seq);
    const auto diag = dqa::residual_diagnostics(annealed, table, dist, dqa_layout);
    row.expectation_hq = diag.expectation_hq;
    row.delta = diag.delta;

    const auto kind = make_oracle_kind(opt.oracle, oracle_bounds(model, x));
    const auto A = qae::build_A(dqa_seq, oracle::build_oracle(kind, model, x, layout));
    qae::QaeConfig cfg;
    cfg.m = opt.m;
    cfg.repetitions = std::max(1U, opt.amplify);
    cfg.rng_seed = derive_seed(opt.seed, x);
    cfg.method = opt.method;
    const auto results = qae::run_qae(A, cfg, layout, kind);

    std::vector<double> phis;
    for (const auto& r : results) {
        phis.push_back(r.phi_hat);
    }
    row.phi_tilde = qae::median(phis);
    row.b = results.front().b;
    row.a_hat = results.front().a_hat;
    row.a_true = results.front().a_true;
    row.within_bound = results.front().within_bound;
    if (kind.variant == oracle::OracleVariant::SinApprox) {
        row.sin_bias = oracle::sin_mixture_bias(annealed, table, dqa_layout, kind.angle_scale);
    }
}

} // namespace

ObjectiveRow evaluate_x(const UnitCommitmentModel& model, const DiscreteDistribution& dist,
                        unsigned x, const OuterLoopOptions& options) {
    model.validate();
    if (dist.n_xi() != model.n_y) {
        throw std::invalid_argument("distribution width must equal n_y");
    }
    if (x > model.d) {
        throw std::invalid_argument("x exceeds demand d");
    }
    ObjectiveRow row;
    row.x = x;
    const auto table = CostTable::for_unit_commitment(model, x);
    row.phi_exact = expected_value_exact(table, dist);
    row.o_exact = model.c_x * x + row.phi_exact;
    switch (options.mode) {
    case PhiMode::ExactExpectation: {
        const auto diag =
            dqa::anneal_by_scenario(table, dist, {options.T}, MixerKind::HammingWeight);
        row.expectation_hq = diag.expectation_hq;
        row.delta = diag.delta;
        row.phi_tilde = diag.expectation_hq;
        break;
    }
    case PhiMode::OptimalState: {
        const auto layout = RegisterLayout::dqa_only(model.n_y, model.n_y);
        row.expectation_hq =
            dqa::expectation_hq(dqa::optimal_state(table, dist, layout), table, layout);
        row.delta = row.expectation_hq - row.phi_exact;
        row.phi_tilde = row.expectation_hq;
        break;
    }
    case PhiMode::Qae:
        fill_qae(row, model, x, dist, table, options);
        break;
    }
    row.o_tilde = model.c_x * x + row.phi_tilde;
    return row;
}

ObjectiveTable outer_loop(const UnitCommitmentModel& model, const DiscreteDistribution& dist,
                          const OuterLoopOptions& options) {
    ObjectiveTable out;
    for (unsigned x = 0; x <= model.d; ++x) {
        out.rows.push_back(evaluate_x(model, dist, x, options));
    }
    for (const auto& r : out.rows) {
        if (r.o_exact < out.rows[out.x_star].o_exact) {
            out.x_star = r.x;
        }
        if (r.o_tilde < out.rows[out.x_tilde_star].o_tilde) {
            out.x_tilde_star = r.x;
        }
    }
    return out;
}

double relative_objective_error(const ObjectiveTable& table) {
    double sum = 0.0;
    for (const auto& r : table.rows) {
        sum += std::abs(r.o_tilde - r.o_exact) / r.o_exact;
    }
    return sum;
}

double minima_error(const ObjectiveTable& table) {
    const double best = table.rows[table.x_star].o_exact;
    return std::abs(table.rows[table.x_tilde_star].o_exact - best) / best;
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size() || a.size() < 2) {
        throw std::invalid_argument("pearson: need two equal-length series of length >= 2");
    }
    const double n = static_cast<double>(a.size());
    double ma = 0, mb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;
    double sab = 0, saa = 0, sbb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    if (saa == 0.0 || sbb == 0.0) {
        return 0.0;
    }
    return sab / std::sqrt(saa * sbb);
}

void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& fn) {
    workers = std::max(1U, workers);
    if (workers == 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < std::min<std::size_t>(workers, n); ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < n; i = next++) {
                    try {
                        fn(i);
                    } catch (...) {
                        std::lock_guard lock(error_mutex);
                        if (!error) {
                            error = std::current_exception();
                        }
                    }
                }
            });
        }
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

namespace {

double median_of(std::vector<double> v) { return qae::median(std::move(v)); }

} // namespace

Fig3Result experiment_fig3(const Fig3Config& config) {
    struct Task {
        unsigned n_y;
        unsigned instance;
    };
    std::vector<Task> tasks;
    for (unsigned n_y : config.n_y_values) {
        for (unsigned i = 0; i < config.instances; ++i) {
            tasks.push_back({n_y, i});
        }
    }
    const char* rules[] = {"linear", "quadratic"};
    std::vector<Fig3Run> runs(tasks.size() * 2);
    parallel_for(tasks.size(), config.workers, [&](std::size_t k) {
        const auto [n_y, i] = tasks[k];
        const std::uint64_t seed = derive_seed(config.master_seed, std::uint64_t{n_y} * 1000 + i);
        const auto model = UnitCommitmentModel::generate(n_y, seed);
        const auto dist = DiscreteDistribution::uniform(n_y);
        for (int r = 0; r < 2; ++r) {
            OuterLoopOptions opt;
            opt.mode = PhiMode::ExactExpectation;
            opt.T = r == 0 ? n_y : n_y * n_y;
            auto& run = runs[2 * k + r];
            run.n_y = n_y;
            run.instance = i;
            run.seed = seed;
            run.rule = rules[r];
            run.T = opt.T;
            run.table = outer_loop(model, dist, opt);
            run.metric_a = relative_objective_error(run.table);
            run.metric_b = minima_error(run.table);
        }
    });

    Fig3Result result;
    result.runs = std::move(runs);
    for (unsigned n_y : config.n_y_values) {
        for (const char* rule : rules) {
            Fig3Summary s;
            s.n_y = n_y;
            s.rule = rule;
            std::vector<double> a, b;
            for (const auto& run : result.runs) {
                if (run.n_y == n_y && run.rule == rule) {
                    a.push_back(run.metric_a);
                    b.push_back(run.metric_b);
                    s.T = run.T;
                }
            }
            if (a.empty()) {
                continue;
            }
            s.a_min = *std::min_element(a.begin(), a.end());
            s.a_max = *std::max_element(a.begin(), a.end());
            s.a_median = median_of(a);
            s.b_min = *std::min_element(b.begin(), b.end());
            s.b_max = *std::max_element(b.begin(), b.end());
            s.b_median = median_of(b);
            result.summary.push_back(s);
        }
    }
    return result;
}

Fig4Result experiment_fig4(const Fig4Config& config) {
    Fig4Result result;
    result.model = UnitCommitmentModel::generate(config.n_y, config.instance_seed);
    const auto& model = result.model;
    if (config.x >= model.d) {
        throw ConfigError("fig4: x must be below d so that q_u > q_l");
    }
    const auto dist = DiscreteDistribution::uniform(config.n_y);
    const auto table = CostTable::for_unit_commitment(model, config.x);
    result.bounds = cost_bounds(model, config.x);
    const double range = result.bounds.upper - result.bounds.lower;
    const double phi = expected_value_exact(table, dist);

    for (unsigned m : config.m_values) {
        Fig4MResult r;
        r.m = m;
        r.phi_exact = phi;
        const auto layout = RegisterLayout::with_qae(config.n_y, config.n_y, m);
        const auto A = qae::build_A(dqa::prepare_optimal_state(table, dist, layout),
                                    oracle::build_exact(table, result.bounds, layout));
        r.a_true = qae::exact_amplitude(A, layout);
        const auto state = qae::qpe_state(A, layout, qae::QpeMethod::PowerSeries);
        r.b_distribution = qae::estimate_distribution(state, layout);

        qae::QaeConfig cfg;
        cfg.m = m;
        cfg.repetitions = config.samples;
        cfg.rng_seed = derive_seed(config.master_seed, m);
        const auto kind = oracle::OracleKind::exact(result.bounds);
        const auto est = qae::sample_estimates(state, r.a_true, cfg, layout, kind);

        r.mc_shots = 2 * cfg.M();
        Rng mc_rng(derive_seed(config.master_seed, 1000 + m));
        double se_q = 0, se_m = 0;
        std::size_t inside = 0;
        for (const auto& e : est) {
            r.qae_b.push_back(e.b);
            r.qae_phi.push_back(e.phi_hat);
            se_q += (e.phi_hat - phi) * (e.phi_hat - phi);
            inside += *e.within_bound ? 1 : 0;
            const double f = qae::mc_estimate_from_amplitude(r.a_true, r.mc_shots, mc_rng);
            const double mc_phi = oracle::readback(f, kind);
            r.mc_phi.push_back(mc_phi);
            se_m += (mc_phi - phi) * (mc_phi - phi);
        }
        const double n = static_cast<double>(est.size());
        r.qae_rmse = std::sqrt(se_q / n);
        r.mc_rmse = std::sqrt(se_m / n);
        r.within_bound_rate = static_cast<double>(inside) / n;

        double ex = 0, wb = 0;
        for (std::size_t b = 0; b < r.b_distribution.size(); ++b) {
            const double ab = qae::grid_value(b, m);
            ex += r.b_distribution[b] * (ab - r.a_true) * (ab - r.a_true);
            if (qae::error_bound_check(ab, r.a_true, cfg.M())) {
                wb += r.b_distribution[b];
            }
        }
        r.qae_exact_rmse = std::sqrt(ex) * range;
        r.mc_exact_rmse = std::sqrt(r.a_true * (1 - r.a_true) / r.mc_shots) * range;
        r.within_bound_exact = wb;
        result.per_m.push_back(std::move(r));
    }
    return result;
}

Fig5Result experiment_fig5(const Fig5Config& config) {
    struct Task {
        std::size_t setting;
        unsigned rep;
    };
    std::vector<Task> tasks;
    for (std::size_t s = 0; s < config.settings.size(); ++s) {
        for (unsigned r = 0; r < config.repetitions; ++r) {
            tasks.push_back({s, r});
        }
    }
    Fig5Result result;
    result.runs.resize(tasks.size());
    parallel_for(tasks.size(), config.workers, [&](std::size_t k) {
        const auto [s, rep] = tasks[k];
        const auto& setting = config.settings[s];
        auto& run = result.runs[k];
        run.setting = setting;
        run.repetition = rep;
        run.instance_seed = derive_seed(config.master_seed, s * 1000 + rep);
        run.measurement_seed = derive_seed(run.instance_seed, 1);
        const auto model = UnitCommitmentModel::generate(setting.n_y, run.instance_seed);
        OuterLoopOptions opt;
        opt.mode = PhiMode::Qae;
        opt.T = setting.T;
        opt.m = setting.m;
        opt.oracle = config.oracle;
        opt.amplify = config.amplify;
        opt.seed = run.measurement_seed;
        run.table = outer_loop(model, DiscreteDistribution::uniform(setting.n_y), opt);
        std::vector<double> ot, oe;
        for (const auto& row : run.table.rows) {
            ot.push_back(row.o_tilde);
            oe.push_back(row.o_exact);
        }
        run.correlation = pearson(ot, oe);
    });
    return result;
}

// ---------------------------------------------------------------------------
// Configuration parsing

namespace {

void check_keys(const json& j, const std::set<std::string>& allowed, const char* what) {
    if (!j.is_object()) {
        throw ConfigError(std::string(what) + ": configuration must be a JSON object");
    }
    for (const auto& [key, value] : j.items()) {
        if (!allowed.count(key)) {
            throw ConfigError(std::string(what) + ": unknown key '" + key + "'");
        }
    }
}

template <class F>
auto parse_config(std::string_view text, const char* what, F&& body) {
    try {
        return body(json::parse(text));
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string(what) + ": " + e.what());
    }
}

} // namespace

Fig3Config parse_fig3_config(std::string_view text) {
    return parse_config(text, "fig3", [](const json& j) {
        check_keys(j, {"kind", "master_seed", "n_y", "instances", "workers"}, "fig3");
        Fig3Config c;
        c.master_seed = j.value("master_seed", c.master_seed);
        c.n_y_values = j.value("n_y", c.n_y_values);
        c.instances = j.value("instances", c.instances);
        c.workers = j.value("workers", c.workers);
        if (c.n_y_values.empty() || c.instances == 0) {
            throw ConfigError("fig3: need at least one n_y and one instance");
        }
        for (unsigned n : c.n_y_values) {
            if (n < 1 || n > 12) {
                throw ConfigError("fig3: n_y must be in [1, 12]");
            }
        }
        return c;
    });
}

Fig4Config parse_fig4_config(std::string_view text) {
    return parse_config(text, "fig4", [](const json& j) {
        check_keys(j,
                   {"kind", "instance_seed", "n_y", "x", "m", "samples", "bin_width",
                    "master_seed"},
                   "fig4");
        Fig4Config c;
        c.instance_seed = j.value("instance_seed", c.instance_seed);
        c.n_y = j.value("n_y", c.n_y);
        c.x = j.value("x", c.x);
        c.m_values = j.value("m", c.m_values);
        c.samples = j.value("samples", c.samples);
        c.bin_width = j.value("bin_width", c.bin_width);
        c.master_seed = j.value("master_seed", c.master_seed);
        if (c.samples == 0 || !(c.bin_width > 0) || c.m_values.empty()) {
            throw ConfigError("fig4: samples, bin_width and m must be positive/non-empty");
        }
        for (unsigned m : c.m_values) {
            if (m < 1 || m > 12) {
                throw ConfigError("fig4: m must be in [1, 12]");
            }
        }
        return c;
    });
}

Fig5Config parse_fig5_config(std::string_view text) {
    return parse_config(text, "fig5", [](const json& j) {
        check_keys(j, {"kind", "settings", "repetitions", "oracle", "amplify", "master_seed",
                       "workers"},
                   "fig5");
        Fig5Config c;
        if (j.contains("settings")) {
            c.settings.clear();
            for (const auto& s : j.at("settings")) {
                c.settings.push_back({s.at("n_y").get<unsigned>(), s.at("m").get<unsigned>(),
                                      s.at("T").get<unsigned>()});
            }
        }
        c.repetitions = j.value("repetitions", c.repetitions);
        if (j.contains("oracle")) {
            c.oracle = parse_oracle_choice(j.at("oracle").get<std::string>());
        }
        c.amplify = j.value("amplify", c.amplify);
        c.master_seed = j.value("master_seed", c.master_seed);
        c.workers = j.value("workers", c.workers);
        if (c.settings.empty() || c.repetitions == 0 || c.amplify == 0) {
            throw ConfigError("fig5: settings, repetitions and amplify must be positive");
        }
        for (const auto& s : c.settings) {
            if (s.m < 1 || s.m > 12 || s.n_y < 1 || s.n_y > 12) {
                throw ConfigError("fig5: n_y and m must be in [1, 12]");
            }
        }
        return c;
    });
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open " + path.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// ---------------------------------------------------------------------------
// Output

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::ofstream open_out(const std::filesystem::path& dir, const char* name) {
    std::filesystem::create_directories(dir);
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + (dir / name).string());
    }
    return out;
}

template <class T>
std::string opt(const std::optional<T>& v) {
    if (!v) {
        return "";
    }
    if constexpr (std::is_same_v<T, bool>) {
        return *v ? "1" : "0";
    } else if constexpr (std::is_integral_v<T>) {
        return std::to_string(*v);
    } else {
        return num(*v);
    }
}

const char* kObjectiveHeader =
    "x,phi_exact,o_exact,expectation_hq,delta,phi_tilde,o_tilde,b,a_hat,a_true,within_bound,"
    "sin_bias";

std::string objective_line(const ObjectiveRow& r) {
    return std::to_string(r.x) + "," + num(r.phi_exact) + "," + num(r.o_exact) + "," +
           num(r.expectation_hq) + "," + num(r.delta) + "," + num(r.phi_tilde) + "," +
           num(r.o_tilde) + "," + opt(r.b) + "," + opt(r.a_hat) + "," + opt(r.a_true) + "," +
           opt(r.within_bound) + "," + opt(r.sin_bias);
}

void write_meta(const std::filesystem::path& dir, const json& meta) {
    open_out(dir, "meta.json") << meta.dump(2) << "\n";
}

} // namespace

std::string objective_csv(const ObjectiveTable& table) {
    std::string out = std::string(kObjectiveHeader) + "\n";
    for (const auto& r : table.rows) {
        out += objective_line(r) + "\n";
    }
    return out;
}

void write_fig3(const Fig3Result& result, const Fig3Config& config,
                const std::filesystem::path& dir) {
    {
        auto out = open_out(dir, "runs.csv");
        out << "n_y,instance,seed,rule,T," << kObjectiveHeader << "\n";
        for (const auto& run : result.runs) {
            for (const auto& r : run.table.rows) {
                out << run.n_y << "," << run.instance << "," << run.seed << "," << run.rule
                    << "," << run.T << "," << objective_line(r) << "\n";
            }
        }
    }
    {
        auto out = open_out(dir, "metrics.csv");
        out << "n_y,instance,seed,rule,T,relative_error,minima_error,x_star,x_tilde_star\n";
        for (const auto& run : result.runs) {
            out << run.n_y << "," << run.instance << "," << run.seed << "," << run.rule << ","
                << run.T << "," << num(run.metric_a) << "," << num(run.metric_b) << ","
                << run.table.x_star << "," << run.table.x_tilde_star << "\n";
        }
    }
    {
        auto out = open_out(dir, "summary.csv");
        out << "n_y,rule,T,relative_error_min,relative_error_median,relative_error_max,"
               "minima_error_min,minima_error_median,minima_error_max\n";
        for (const auto& s : result.summary) {
            out << s.n_y << "," << s.rule << "," << s.T << "," << num(s.a_min) << ","
                << num(s.a_median) << "," << num(s.a_max) << "," << num(s.b_min) << ","
                << num(s.b_median) << "," << num(s.b_max) << "\n";
        }
    }
    write_meta(dir, {{"kind", "fig3"},
                     {"master_seed", config.master_seed},
                     {"n_y", config.n_y_values},
                     {"instances", config.instances}});
}

void write_fig4(const Fig4Result& result, const Fig4Config& config,
                const std::filesystem::path& dir) {
    {
        auto out = open_out(dir, "summary.csv");
        out << "m,mc_shots,a_true,phi_exact,qae_rmse,mc_rmse,qae_exact_rmse,mc_exact_rmse,"
               "within_bound_rate,within_bound_exact,error_bound\n";
        for (const auto& r : result.per_m) {
            out << r.m << "," << r.mc_shots << "," << num(r.a_true) << "," << num(r.phi_exact)
                << "," << num(r.qae_rmse) << "," << num(r.mc_rmse) << ","
                << num(r.qae_exact_rmse) << "," << num(r.mc_exact_rmse) << ","
                << num(r.within_bound_rate) << "," << num(r.within_bound_exact) << ","
                << num(qae::error_bound(std::size_t{1} << r.m)) << "\n";
        }
    }
    {
        auto out = open_out(dir, "histograms.csv");
        out << "m,method,bin_left,bin_right,mass\n";
        for (const auto& r : result.per_m) {
            for (const auto& [method, values] :
                 {std::pair{"qae", &r.qae_phi}, std::pair{"mc", &r.mc_phi}}) {
                std::map<long, std::size_t> bins;
                for (double v : *values) {
                    ++bins[static_cast<long>(std::floor(v / config.bin_width))];
                }
                for (const auto& [bin, count] : bins) {
                    out << r.m << "," << method << "," << num(bin * config.bin_width) << ","
                        << num((bin + 1) * config.bin_width) << ","
                        << num(static_cast<double>(count) / values->size()) << "\n";
                }
            }
        }
    }
    {
        auto out = open_out(dir, "qae_distribution.csv");
        out << "m,b,a_grid,phi_grid,probability\n";
        const double range = result.bounds.upper - result.bounds.lower;
        for (const auto& r : result.per_m) {
            for (std::size_t b = 0; b < r.b_distribution.size(); ++b) {
                const double a = qae::grid_value(b, r.m);
                out << r.m << "," << b << "," << num(a) << ","
                    << num(a * range + result.bounds.lower) << "," << num(r.b_distribution[b])
                    << "\n";
            }
        }
    }
    {
        auto out = open_out(dir, "estimates.csv");
        out << "m,sample,qae_b,qae_phi,mc_phi\n";
        for (const auto& r : result.per_m) {
            for (std::size_t i = 0; i < r.qae_phi.size(); ++i) {
                out << r.m << "," << i << "," << r.qae_b[i] << "," << num(r.qae_phi[i]) << ","
                    << num(r.mc_phi[i]) << "\n";
            }
        }
    }
    write_meta(dir, {{"kind", "fig4"},
                     {"instance_seed", config.instance_seed},
                     {"n_y", config.n_y},
                     {"x", config.x},
                     {"m", config.m_values},
                     {"samples", config.samples},
                     {"bin_width", config.bin_width},
                     {"master_seed", config.master_seed},
                     {"c", result.model.c},
                     {"q_l", result.bounds.lower},
                     {"q_u", result.bounds.upper}});
}

void write_fig5(const Fig5Result& result, const Fig5Config& config,
                const std::filesystem::path& dir) {
    {
        auto out = open_out(dir, "surface.csv");
        out << "n_y,m,T,repetition," << kObjectiveHeader << "\n";
        for (const auto& run : result.runs) {
            for (const auto& r : run.table.rows) {
                out << run.setting.n_y << "," << run.setting.m << "," << run.setting.T << ","
                    << run.repetition << "," << objective_line(r) << "\n";
            }
        }
    }
    {
        auto out = open_out(dir, "runs.csv");
        out << "n_y,m,T,repetition,instance_seed,measurement_seed,x_star,x_tilde_star,match,"
               "correlation\n";
        for (const auto& run : result.runs) {
            out << run.setting.n_y << "," << run.setting.m << "," << run.setting.T << ","
                << run.repetition << "," << run.instance_seed << "," << run.measurement_seed
                << "," << run.table.x_star << "," << run.table.x_tilde_star << ","
                << (run.table.x_star == run.table.x_tilde_star ? 1 : 0) << ","
                << num(run.correlation) << "\n";
        }
    }
    json settings = json::array();
    for (const auto& s : config.settings) {
        settings.push_back({{"n_y", s.n_y}, {"m", s.m}, {"T", s.T}});
    }
    write_meta(dir, {{"kind", "fig5"},
                     {"settings", settings},
                     {"repetitions", config.repetitions},
                     {"oracle", to_string(config.oracle)},
                     {"amplify", config.amplify},
                     {"master_seed", config.master_seed}});
}

void write_timing(const std::filesystem::path& dir, double seconds) {
    open_out(dir, "timing.json") << json{{"wall_seconds", seconds}}.dump(2) << "\n";
}

} // namespace spq::harness
