#include "spq/instance_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace spq {

using nlohmann::json;

Bits parse_bitstring(std::string_view text, unsigned width) {
    if (text.size() != width) {
        throw ConfigError("bitstring '" + std::string(text) + "' should have " +
                          std::to_string(width) + " characters");
    }
    Bits v = 0;
    for (char ch : text) {
        if (ch != '0' && ch != '1') {
            throw ConfigError("bitstring '" + std::string(text) + "' has a non-binary digit");
        }
        v = (v << 1) | static_cast<Bits>(ch - '0');
    }
    return v;
}

std::string format_bitstring(Bits value, unsigned width) {
    std::string s(width, '0');
    for (unsigned j = 0; j < width; ++j) {
        if ((value >> j) & 1U) {
            s[width - 1 - j] = '1';
        }
    }
    return s;
}

namespace {

DiscreteDistribution parse_distribution(const json& j, unsigned n_xi) {
    if (j.is_null()) {
        return DiscreteDistribution::uniform(n_xi);
    }
    const auto type = j.value("type", std::string("uniform"));
    if (type == "uniform") {
        return DiscreteDistribution::uniform(n_xi);
    }
    if (type != "explicit") {
        throw ConfigError("distribution type must be 'uniform' or 'explicit', got '" + type + "'");
    }
    std::vector<Scenario> entries;
    for (const auto& e : j.at("entries")) {
        Scenario s;
        const auto& xi = e.at("xi");
        s.xi = xi.is_string() ? parse_bitstring(xi.get<std::string>(), n_xi) : xi.get<Bits>();
        s.probability = e.at("p").get<double>();
        entries.push_back(s);
    }
    return DiscreteDistribution(n_xi, std::move(entries));
}

} // namespace

Instance parse_instance(std::string_view json_text) {
    try {
        const json j = json::parse(json_text);
        Instance inst;
        const auto n_y = j.at("n_y").get<unsigned>();
        if (j.contains("seed")) {
            inst.seed = j.at("seed").get<std::uint64_t>();
        }
        const double c_x = j.value("c_x", 0.4);
        const double c_r = j.value("c_r", 1.0);
        if (j.contains("c")) {
            inst.model.n_y = n_y;
            inst.model.c_x = c_x;
            inst.model.c_r = c_r;
            inst.model.c = j.at("c").get<std::vector<double>>();
        } else if (inst.seed) {
            inst.model = UnitCommitmentModel::generate(n_y, *inst.seed, c_x, c_r);
        } else {
            throw ConfigError("instance needs either 'c' or 'seed'");
        }
        inst.model.d = j.value("d", n_y);
        inst.model.validate();
        inst.distribution =
            parse_distribution(j.contains("distribution") ? j.at("distribution") : json(), n_y);
        return inst;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("instance: ") + e.what());
    }
}

Instance load_instance(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open instance file " + path.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str());
}

std::string instance_to_json(const Instance& instance) {
    const auto& m = instance.model;
    json j;
    j["n_y"] = m.n_y;
    j["c_x"] = m.c_x;
    j["c"] = m.c;
    j["c_r"] = m.c_r;
    j["d"] = m.d;
    if (instance.seed) {
        j["seed"] = *instance.seed;
    }
    const auto& dist = instance.distribution;
    if (dist.is_uniform()) {
        j["distribution"] = {{"type", "uniform"}};
    } else {
        json entries = json::array();
        for (const auto& e : dist.entries()) {
            entries.push_back({{"xi", format_bitstring(e.xi, dist.n_xi())}, {"p", e.probability}});
        }
        j["distribution"] = {{"type", "explicit"}, {"entries", entries}};
    }
    return j.dump(2);
}

} // namespace spq
