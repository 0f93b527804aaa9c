#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pacdyn/grid.hpp"
#include "pacdyn/model.hpp"
#include "pacdyn/stepper.hpp"

namespace pacdyn {

enum class ExampleId { Ex1, Ex2, Ex3, Ex4Wetting, Ex4NonWetting, Custom };

/// "ex1", "ex2", "ex3", "ex4_30", "ex4_150", "custom".
std::string example_name(ExampleId id);
/// Throws ConfigError for unknown names.
ExampleId parse_example_name(std::string_view name);

struct KappaMode {
    enum class Kind { FactorOfH, Absolute };
    Kind kind = Kind::FactorOfH;
    double value = 2.0;

    double resolve(double h) const { return kind == Kind::FactorOfH ? value * h : value; }
};

struct RunConfig {
    ExampleId example = ExampleId::Ex1;
    int N = 200;
    double dt = 1e-3;
    KappaMode kappa_mode;
    double gamma1 = 100.0;
    double gamma2 = 100.0;
    double S1 = 100.0;
    double S2 = 100.0;
    SurfacePotentialSpec surface;
    double steady_tol = 1e-6;
    long max_steps = 100000;
    long snapshot_every = 1000;
    double linear_tol = 1e-11;
    int linear_max_iter = 0;
    double field_bound = 8.0;
    std::string output_dir = "run";
    std::uint64_t seed = 0;
    /// Custom runs only: a snapshot file, or "random" for uniform noise in
    /// [-1, 1] drawn from `seed`.
    std::string initial_field;

    ModelParams model_params() const;
    StepperConfig stepper_config() const;
    /// Throws ConfigError / InvalidGridError naming the offending key.
    void validate() const;
};

/// Defaults for a built-in example (surface potential chosen per example).
RunConfig default_config(ExampleId id);

/// Parses a UTF-8 JSON document. Unknown keys, wrong types and out-of-range
/// values are rejected with a ConfigError whose message starts with the key path.
RunConfig parse_config(std::string_view json_text);

/// JSON echo of a configuration, accepted back by parse_config.
std::string config_to_json(const RunConfig& cfg, int indent = 2);

/// Initial field of a built-in example on grid g. `kappa` sets the interface
/// width of the droplet in the contact-line examples.
Field init_example(ExampleId id, const GridSpec& g, double kappa);
Field init_example(ExampleId id, const GridSpec& g);

/// Initial field for any configuration, including custom ones.
Field initial_field(const RunConfig& cfg, const GridSpec& g);

struct ExampleInfo {
    ExampleId id;
    std::string name;
    std::string description;
    RunConfig defaults;
};

std::vector<ExampleInfo> builtin_examples();

} // namespace pacdyn
