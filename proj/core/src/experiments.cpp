#include "pacdyn/experiments.hpp"

#include <cmath>
#include <random>

#include <json.hpp>

#include "pacdyn/io.hpp"

namespace pacdyn {

using nlohmann::json;

namespace {

constexpr double kTie = 1e-12;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
    throw ConfigError(path + ": " + message);
}

double get_number(const json& v, const std::string& path) {
    if (!v.is_number()) fail(path, "expected a number");
    return v.get<double>();
}

long get_integer(const json& v, const std::string& path) {
    if (!v.is_number_integer()) fail(path, "expected an integer");
    return v.get<long>();
}

std::string get_string(const json& v, const std::string& path) {
    if (!v.is_string()) fail(path, "expected a string");
    return v.get<std::string>();
}

double positive(const json& v, const std::string& path) {
    const double x = get_number(v, path);
    if (!(x > 0.0) || !std::isfinite(x)) fail(path, "must be positive");
    return x;
}

void parse_kappa(const json& v, KappaMode& mode) {
    if (!v.is_object() || v.size() != 1) {
        fail("kappa_mode", "expected an object with exactly one of factor_of_h, absolute");
    }
    const auto& [key, value] = *v.items().begin();
    if (key == "factor_of_h") {
        mode = {KappaMode::Kind::FactorOfH, positive(value, "kappa_mode.factor_of_h")};
    } else if (key == "absolute") {
        mode = {KappaMode::Kind::Absolute, positive(value, "kappa_mode.absolute")};
    } else {
        fail("kappa_mode." + key, "unknown key");
    }
}

void parse_surface(const json& v, SurfacePotentialSpec& s) {
    if (!v.is_object()) fail("surface", "expected an object");
    SurfacePotentialSpec out = s;
    if (v.contains("type")) {
        const std::string type = get_string(v["type"], "surface.type");
        if (type == "double_well") {
            out.kind = SurfaceKind::DoubleWell;
        } else if (type == "moving_contact_line") {
            out.kind = SurfaceKind::MovingContactLine;
        } else {
            fail("surface.type", "expected double_well or moving_contact_line, got " + type);
        }
    }
    for (const auto& [key, value] : v.items()) {
        if (key == "type") continue;
        if (key == "theta_s") {
            out.theta_s_deg = get_number(value, "surface.theta_s");
            if (!(out.theta_s_deg > 0.0 && out.theta_s_deg < 180.0)) {
                fail("surface.theta_s", "must lie in (0, 180) degrees");
            }
        } else if (key == "gamma_tilde") {
            out.gamma_tilde = positive(value, "surface.gamma_tilde");
        } else {
            fail("surface." + key, "unknown key");
        }
    }
    s = out;
}

json surface_json(const SurfacePotentialSpec& s) {
    json j = {{"type", s.name()}};
    if (s.kind == SurfaceKind::MovingContactLine) {
        j["theta_s"] = s.theta_s_deg;
        j["gamma_tilde"] = s.gamma_tilde;
    }
    return j;
}

bool in_closed(double v, double lo, double hi) { return v >= lo - kTie && v <= hi + kTie; }

} // namespace

std::string example_name(ExampleId id) {
    switch (id) {
        case ExampleId::Ex1: return "ex1";
        case ExampleId::Ex2: return "ex2";
        case ExampleId::Ex3: return "ex3";
        case ExampleId::Ex4Wetting: return "ex4_30";
        case ExampleId::Ex4NonWetting: return "ex4_150";
        case ExampleId::Custom: return "custom";
    }
    return "custom";
}

ExampleId parse_example_name(std::string_view name) {
    for (ExampleId id : {ExampleId::Ex1, ExampleId::Ex2, ExampleId::Ex3, ExampleId::Ex4Wetting,
                         ExampleId::Ex4NonWetting, ExampleId::Custom}) {
        if (example_name(id) == name) return id;
    }
    throw ConfigError("example: unknown example '" + std::string(name) + "'");
}

ModelParams RunConfig::model_params() const {
    return {kappa_mode.resolve(1.0 / N), gamma1, gamma2, S1, S2};
}

StepperConfig RunConfig::stepper_config() const {
    StepperConfig c;
    c.dt = dt;
    c.linear_tol = linear_tol;
    c.linear_max_iter = linear_max_iter;
    c.steady_tol = steady_tol;
    c.max_steps = max_steps;
    c.field_bound = field_bound;
    return c;
}

void RunConfig::validate() const {
    if (N < 4) throw InvalidGridError("N: grid needs N >= 4 cells per side, got " + std::to_string(N));
    auto pos = [](double v, const char* key) {
        if (!(v > 0.0) || !std::isfinite(v)) fail(key, "must be positive");
    };
    pos(dt, "dt");
    pos(kappa_mode.value, "kappa_mode");
    pos(gamma1, "gamma1");
    pos(gamma2, "gamma2");
    pos(S1, "S1");
    pos(S2, "S2");
    pos(steady_tol, "steady_tol");
    pos(field_bound, "field_bound");
    if (!(linear_tol > 0.0 && linear_tol < 1.0)) fail("linear_tol", "must lie in (0, 1)");
    if (linear_max_iter < 0) fail("linear_max_iter", "must be non-negative");
    if (max_steps < 0) fail("max_steps", "must be non-negative");
    if (snapshot_every < 1) fail("snapshot_every", "must be at least 1");
    try {
        surface.validate();
    } catch (const ConfigError& e) {
        throw ConfigError(std::string("surface: ") + e.what());
    }
    if (example == ExampleId::Custom && initial_field.empty()) {
        fail("initial_field", "required when example is custom");
    }
}

RunConfig default_config(ExampleId id) {
    RunConfig c;
    c.example = id;
    if (id == ExampleId::Ex4Wetting) c.surface = SurfacePotentialSpec::moving_contact_line(30.0);
    if (id == ExampleId::Ex4NonWetting) c.surface = SurfacePotentialSpec::moving_contact_line(150.0);
    return c;
}

RunConfig parse_config(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text.begin(), json_text.end());
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("<document>: malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) fail("<document>", "expected a JSON object");

    ExampleId id = ExampleId::Custom;
    if (doc.contains("example")) {
        id = parse_example_name(get_string(doc["example"], "example"));
    } else {
        fail("example", "required key missing");
    }
    RunConfig c = default_config(id);

    for (const auto& [key, value] : doc.items()) {
        if (key == "example") continue;
        if (key == "N") {
            const long n = get_integer(value, "N");
            if (n < 4) throw InvalidGridError("N: grid needs N >= 4 cells per side, got " + std::to_string(n));
            if (n > 1 << 15) fail("N", "too large");
            c.N = static_cast<int>(n);
        } else if (key == "dt") {
            c.dt = positive(value, "dt");
        } else if (key == "kappa_mode") {
            parse_kappa(value, c.kappa_mode);
        } else if (key == "gamma1") {
            c.gamma1 = positive(value, "gamma1");
        } else if (key == "gamma2") {
            c.gamma2 = positive(value, "gamma2");
        } else if (key == "S1") {
            c.S1 = positive(value, "S1");
        } else if (key == "S2") {
            c.S2 = positive(value, "S2");
        } else if (key == "surface") {
            parse_surface(value, c.surface);
        } else if (key == "steady_tol") {
            c.steady_tol = positive(value, "steady_tol");
        } else if (key == "max_steps") {
            c.max_steps = get_integer(value, "max_steps");
        } else if (key == "snapshot_every") {
            c.snapshot_every = get_integer(value, "snapshot_every");
        } else if (key == "linear_tol") {
            c.linear_tol = get_number(value, "linear_tol");
        } else if (key == "linear_max_iter") {
            const long n = get_integer(value, "linear_max_iter");
            if (n < 0 || n > (1L << 30)) fail("linear_max_iter", "out of range");
            c.linear_max_iter = static_cast<int>(n);
        } else if (key == "field_bound") {
            c.field_bound = positive(value, "field_bound");
        } else if (key == "output_dir") {
            c.output_dir = get_string(value, "output_dir");
        } else if (key == "seed") {
            if (!value.is_number_unsigned()) fail("seed", "expected a non-negative integer");
            c.seed = value.get<std::uint64_t>();
        } else if (key == "initial_field") {
            c.initial_field = get_string(value, "initial_field");
        } else {
            fail(key, "unknown key");
        }
    }
    c.validate();
    return c;
}

std::string config_to_json(const RunConfig& c, int indent) {
    json j;
    j["example"] = example_name(c.example);
    j["N"] = c.N;
    j["dt"] = c.dt;
    j["kappa_mode"] = c.kappa_mode.kind == KappaMode::Kind::FactorOfH
                          ? json{{"factor_of_h", c.kappa_mode.value}}
                          : json{{"absolute", c.kappa_mode.value}};
    j["gamma1"] = c.gamma1;
    j["gamma2"] = c.gamma2;
    j["S1"] = c.S1;
    j["S2"] = c.S2;
    j["surface"] = surface_json(c.surface);
    j["steady_tol"] = c.steady_tol;
    j["max_steps"] = c.max_steps;
    j["snapshot_every"] = c.snapshot_every;
    j["linear_tol"] = c.linear_tol;
    j["linear_max_iter"] = c.linear_max_iter;
    j["field_bound"] = c.field_bound;
    j["output_dir"] = c.output_dir;
    j["seed"] = c.seed;
    if (!c.initial_field.empty()) j["initial_field"] = c.initial_field;
    return j.dump(indent);
}

Field init_example(ExampleId id, const GridSpec& g, double kappa) {
    Field u(g.node_count());
    constexpr double pi = 3.14159265358979323846;
    for (std::size_t n = 0; n < u.size(); ++n) {
        const double x = g.x(n);
        const double y = g.y(n);
        switch (id) {
            case ExampleId::Ex1:
                u[n] = g.on_boundary(n) ? 1.0 : 0.0;
                break;
            case ExampleId::Ex2:
                u[n] = (in_closed(x, 0.25, 0.75) && in_closed(y, 0.0, 0.5)) ? 1.0 : -1.0;
                break;
            case ExampleId::Ex3:
                u[n] = 0.3 + 0.01 * std::cos(6.0 * pi * x) * std::cos(6.0 * pi * y);
                break;
            case ExampleId::Ex4Wetting:
            case ExampleId::Ex4NonWetting: {
                // Semicircular droplet of radius 0.25 sitting on the bottom wall.
                const double r = std::hypot(x - 0.5, y);
                u[n] = std::tanh((0.25 - r) / (std::sqrt(2.0) * kappa));
                break;
            }
            case ExampleId::Custom:
                throw ConfigError("example: custom runs take their initial field from initial_field");
        }
    }
    return u;
}

Field init_example(ExampleId id, const GridSpec& g) { return init_example(id, g, 2.0 * g.spacing()); }

Field initial_field(const RunConfig& cfg, const GridSpec& g) {
    if (cfg.example != ExampleId::Custom) return init_example(cfg.example, g, cfg.model_params().kappa);
    if (cfg.initial_field == "random") {
        std::mt19937_64 rng(cfg.seed);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        Field u(g.node_count());
        for (double& v : u) v = dist(rng);
        return u;
    }
    Snapshot snap;
    try {
        snap = read_snapshot_file(cfg.initial_field);
    } catch (const IoError& e) {
        throw ConfigError(std::string("initial_field: ") + e.what());
    }
    if (snap.N != g.cells()) {
        fail("initial_field", "snapshot has N=" + std::to_string(snap.N) + " but the run uses N=" +
                                  std::to_string(g.cells()));
    }
    return snap.u;
}

std::vector<ExampleInfo> builtin_examples() {
    return {
        {ExampleId::Ex1, "ex1", "phi0 = 0 in the bulk, 1 on the boundary; double-well surface potential",
         default_config(ExampleId::Ex1)},
        {ExampleId::Ex2, "ex2",
         "phi0 = 1 on [0.25,0.75]x[0,0.5], -1 elsewhere; double-well surface potential",
         default_config(ExampleId::Ex2)},
        {ExampleId::Ex3, "ex3", "phi0 = 0.3 + 0.01 cos(6 pi x) cos(6 pi y); double-well surface potential",
         default_config(ExampleId::Ex3)},
        {ExampleId::Ex4Wetting, "ex4_30",
         "droplet on the bottom wall; moving contact line potential, theta_s = 30 deg",
         default_config(ExampleId::Ex4Wetting)},
        {ExampleId::Ex4NonWetting, "ex4_150",
         "droplet on the bottom wall; moving contact line potential, theta_s = 150 deg",
         default_config(ExampleId::Ex4NonWetting)},
    };
}

} // namespace pacdyn
