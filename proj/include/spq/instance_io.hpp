#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "spq/model.hpp"

namespace spq {

/// Malformed instance or experiment configuration.
class ConfigError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

struct Instance {
    UnitCommitmentModel model;
    DiscreteDistribution distribution = DiscreteDistribution::uniform(0);
    /// Seed used to draw c when the file omits it.
    std::optional<std::uint64_t> seed;
};

/// Instance JSON:
///   {"n_y": 4, "c_x": 0.4, "c": [...], "c_r": 1.0, "d": 4, "seed": 7,
///    "distribution": {"type": "uniform"}
///                  | {"type": "explicit", "entries": [{"xi": "0101", "p": 0.5}, ...]}}
/// c may be omitted when seed is given (costs drawn from [0.01, 0.2]); d
/// defaults to n_y; the distribution defaults to uniform. Scenario strings
/// are written most significant bit first, so the last character is turbine 0.
/// Throws ConfigError on any schema or validation failure.
Instance parse_instance(std::string_view json_text);
Instance load_instance(const std::filesystem::path& path);
std::string instance_to_json(const Instance& instance);

/// "0101" <-> integer with bit j = character n - 1 - j.
Bits parse_bitstring(std::string_view text, unsigned width);
std::string format_bitstring(Bits value, unsigned width);

} // namespace spq
