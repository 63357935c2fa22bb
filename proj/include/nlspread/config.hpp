#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nlspread/initial_data.hpp"
#include "nlspread/kernel.hpp"
#include "nlspread/model_params.hpp"
#include "nlspread/simulator.hpp"

namespace nlspread {

// One `name(arg=value, ...)` clause from the config (kernels, nonlinearities,
// initial data). Bare names parse as empty argument lists.
struct Spec {
    std::string name;
    std::vector<std::pair<std::string, std::string>> args;

    bool operator==(const Spec&) const = default;

    bool has(const std::string& key) const;
    double num(const std::string& key) const;
    double num_or(const std::string& key, double fallback) const;
    std::string str(const std::string& key) const;
    void set_num(const std::string& key, double value);
    std::string to_string() const;
};

Spec parse_spec(const std::string& text);

// Flat `key = value` scenario file with dotted sections.
struct ScenarioConfig {
    double alpha = 0.0;
    double beta = 0.0;
    Spec g, h;                // nonlinearities (required)
    Spec kernel_u, kernel_v;  // dispersal kernels (required)
    double grid_dx = 0.1;
    double grid_halfwidth = 0.0;  // 0 = size automatically from the speeds
    double dt = 0.05;
    double horizon = 200.0;
    int snapshot_stride = 20;
    Spec initial;
    double front_nu = 0.1;
    double front_fit_window = 0.5;
    std::uint64_t seed = 1;

    bool operator==(const ScenarioConfig&) const = default;
};

// Key/value lines with their source line numbers, order preserved.
struct RawConfig {
    struct Entry {
        std::string key, value;
        int line = 0;
    };
    std::vector<Entry> entries;

    void set(const std::string& key, const std::string& value);
    const std::string* find(const std::string& key) const;
};

RawConfig parse_raw_config(const std::string& text);
// `key=value` override, as given on the command line.
void apply_set(RawConfig& raw, const std::string& assignment);
// Sweep axis: a plain key, `kernel.{u,v}.sigma` (symmetric one-parameter
// family rewrite), or `<key>.<arg>` patching one argument of a spec value.
void apply_axis(RawConfig& raw, const std::string& axis, double value);

ScenarioConfig build_config(const RawConfig& raw);
ScenarioConfig parse_config(const std::string& text);

std::string serialize_config(const ScenarioConfig& cfg);
std::string config_hash(const ScenarioConfig& cfg);  // 16 hex digits

// Materialization into model objects.
Kernel make_kernel(const Spec& s);
Nonlinearity make_nonlinearity(const Spec& s, double cap);
ModelParams make_params(const ScenarioConfig& cfg);
InitialData make_initial(const ScenarioConfig& cfg);
SimOptions make_sim_options(const ScenarioConfig& cfg);

}  // namespace nlspread
