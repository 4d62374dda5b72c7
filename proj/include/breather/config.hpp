#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "breather/lattice.hpp"

namespace breather {

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class ModelKind { nonreciprocal, hermitian, creutz };

std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& name);

struct SweepSpec {
    std::string parameter;  // one of: i_in, gamma0, gammas, kappa, nu, i_sat
    double min = 0.0;
    double max = 0.0;
    int count = 0;
    bool log_spacing = true;

    /// The i-th grid value, identical regardless of execution order.
    double value_at(int i) const;
};

/// One experiment: a single run or a sweep, plus the artifacts to emit.
/// Defaults scale with nu: dt = 1e-3/nu, t_final = 100/nu, averaging window
/// [50, 100]/nu, stride sized for ~2000 stored samples.
struct ExperimentConfig {
    std::string name = "run";
    ModelKind model = ModelKind::nonreciprocal;
    LatticeParams params;
    double i_in = 0.0;
    double t_final = 0.0;
    double dt = 0.0;
    int stride = 0;
    double window_start = 0.0;
    double window_end = 0.0;
    std::optional<SweepSpec> sweep;
    std::vector<std::string> outputs;  // subset of known output kinds
    std::vector<double> profile;       // static profile for spectrum output; empty = [gammas]
    bool store_amplitudes = false;
};

/// Known values for ExperimentConfig::outputs.
const std::vector<std::string>& known_outputs();

/// Parses and validates a JSON config. Unknown keys and invariant violations
/// raise ConfigError naming the offending key path.
ExperimentConfig parse_config(const std::string& json_text);

/// Inverse of parse_config: parse_config(serialize_config(c)) == c.
std::string serialize_config(const ExperimentConfig& config);

}  // namespace breather
