#include "nlspread/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <sstream>

#include "nlspread/csv.hpp"

namespace nlspread {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

double parse_number(const std::string& v, const std::string& what) {
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0')
        throw ConfigError(what + ": not a number: '" + v + "'");
    return x;
}

}  // namespace

bool Spec::has(const std::string& key) const {
    return std::any_of(args.begin(), args.end(), [&](const auto& a) { return a.first == key; });
}

double Spec::num(const std::string& key) const {
    for (const auto& a : args)
        if (a.first == key) return parse_number(a.second, name + "." + key);
    throw ConfigError(name + ": missing argument '" + key + "'");
}

double Spec::num_or(const std::string& key, double fallback) const {
    return has(key) ? num(key) : fallback;
}

std::string Spec::str(const std::string& key) const {
    for (const auto& a : args)
        if (a.first == key) return a.second;
    throw ConfigError(name + ": missing argument '" + key + "'");
}

void Spec::set_num(const std::string& key, double value) {
    for (auto& a : args)
        if (a.first == key) {
            a.second = format_double_exact(value);
            return;
        }
    args.emplace_back(key, format_double_exact(value));
}

std::string Spec::to_string() const {
    if (args.empty()) return name;
    std::string out = name + "(";
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out += ", ";
        if (!args[i].first.empty()) out += args[i].first + "=";
        out += args[i].second;
    }
    return out + ")";
}

Spec parse_spec(const std::string& text) {
    const std::string s = trim(text);
    Spec spec;
    const auto open = s.find('(');
    if (open == std::string::npos) {
        spec.name = s;
        if (spec.name.empty()) throw ConfigError("empty spec");
        return spec;
    }
    if (s.back() != ')') throw ConfigError("unbalanced parentheses in spec: " + s);
    spec.name = trim(s.substr(0, open));
    const std::string inner = s.substr(open + 1, s.size() - open - 2);
    std::string item;
    std::stringstream ss(inner);
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            spec.args.emplace_back("", item);  // positional (paths)
        else
            spec.args.emplace_back(trim(item.substr(0, eq)), trim(item.substr(eq + 1)));
    }
    return spec;
}

void RawConfig::set(const std::string& key, const std::string& value) {
    for (auto& e : entries)
        if (e.key == key) {
            e.value = value;
            return;
        }
    entries.push_back({key, value, 0});
}

const std::string* RawConfig::find(const std::string& key) const {
    for (const auto& e : entries)
        if (e.key == key) return &e.value;
    return nullptr;
}

RawConfig parse_raw_config(const std::string& text) {
    RawConfig raw;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");
        for (const auto& e : raw.entries)
            if (e.key == key)
                throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key +
                                  "' (first set on line " + std::to_string(e.line) + ")");
        raw.entries.push_back({key, value, lineno});
    }
    return raw;
}

void apply_set(RawConfig& raw, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw ConfigError("--set expects key=value, got '" + assignment + "'");
    raw.set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

void apply_axis(RawConfig& raw, const std::string& axis, double value) {
    if (raw.find(axis) != nullptr) {
        raw.set(axis, format_double_exact(value));
        return;
    }
    // kernel.{u,v}.sigma selects the symmetric one-parameter family of the
    // existing kernel kind.
    if (axis == "kernel.u.sigma" || axis == "kernel.v.sigma") {
        const std::string key = axis.substr(0, 8);
        const std::string* cur = raw.find(key);
        if (cur == nullptr) throw ConfigError("axis '" + axis + "': no such kernel in config");
        const Spec spec = parse_spec(*cur);
        Spec repl;
        if (spec.name == "normal") {
            repl.name = "normal";
            repl.args = {{"mean", format_double_exact(spec.num_or("mean", 0.0))},
                         {"var", format_double_exact(value)}};
        } else if (spec.name == "uniform") {
            repl.name = "uniform";
            repl.args = {{"lower", format_double_exact(-value)},
                         {"upper", format_double_exact(value)}};
        } else {
            throw ConfigError("axis '" + axis + "': kernel kind '" + spec.name +
                              "' has no sigma family");
        }
        raw.set(key, repl.to_string());
        return;
    }
    // <key>.<arg>: patch one named argument of a spec-valued key.
    const auto dot = axis.rfind('.');
    if (dot != std::string::npos) {
        std::string key = axis.substr(0, dot);
        const std::string arg = axis.substr(dot + 1);
        const std::string* cur = raw.find(key);
        if (cur == nullptr && key == "initial") {
            key = "initial.kind";
            cur = raw.find(key);
        }
        if (cur != nullptr) {
            Spec spec = parse_spec(*cur);
            spec.set_num(arg, value);
            raw.set(key, spec.to_string());
            return;
        }
    }
    throw ConfigError("sweep axis '" + axis + "' matches no config key");
}

namespace {

const char* kKnownKeys[] = {"alpha",        "beta",          "g",
                            "h",            "kernel.u",      "kernel.v",
                            "grid.dx",      "grid.halfwidth", "time.dt",
                            "time.horizon", "time.snapshot_stride", "initial.kind",
                            "front.nu",     "front.fit_window", "seed"};

}  // namespace

ScenarioConfig build_config(const RawConfig& raw) {
    for (const auto& e : raw.entries) {
        const bool known = std::any_of(std::begin(kKnownKeys), std::end(kKnownKeys),
                                       [&](const char* k) { return e.key == k; });
        if (!known)
            throw ConfigError("line " + std::to_string(e.line) + ": unknown key '" + e.key + "'");
    }
    const auto required = [&](const char* key) -> const std::string& {
        const std::string* v = raw.find(key);
        if (v == nullptr) throw ConfigError(std::string("missing required key '") + key + "'");
        return *v;
    };
    const auto num_or = [&](const char* key, double fallback) {
        const std::string* v = raw.find(key);
        return v ? parse_number(*v, key) : fallback;
    };

    ScenarioConfig cfg;
    cfg.alpha = parse_number(required("alpha"), "alpha");
    cfg.beta = parse_number(required("beta"), "beta");
    cfg.g = parse_spec(required("g"));
    cfg.h = parse_spec(required("h"));
    cfg.kernel_u = parse_spec(required("kernel.u"));
    cfg.kernel_v = parse_spec(required("kernel.v"));
    cfg.grid_dx = num_or("grid.dx", 0.1);
    cfg.grid_halfwidth = num_or("grid.halfwidth", 0.0);
    cfg.dt = num_or("time.dt", 0.05);
    cfg.horizon = num_or("time.horizon", 200.0);
    cfg.snapshot_stride = static_cast<int>(num_or("time.snapshot_stride", 20));
    const std::string* init = raw.find("initial.kind");
    cfg.initial = init ? parse_spec(*init)
                       : parse_spec("bump(center=0, halfwidth=5, height=0.5)");
    cfg.front_nu = num_or("front.nu", 0.1);
    cfg.front_fit_window = num_or("front.fit_window", 0.5);
    cfg.seed = static_cast<std::uint64_t>(num_or("seed", 1.0));
    return cfg;
}

ScenarioConfig parse_config(const std::string& text) {
    return build_config(parse_raw_config(text));
}

std::string serialize_config(const ScenarioConfig& cfg) {
    std::string out;
    out += "alpha = " + format_double_exact(cfg.alpha) + "\n";
    out += "beta = " + format_double_exact(cfg.beta) + "\n";
    out += "g = " + cfg.g.to_string() + "\n";
    out += "h = " + cfg.h.to_string() + "\n";
    out += "kernel.u = " + cfg.kernel_u.to_string() + "\n";
    out += "kernel.v = " + cfg.kernel_v.to_string() + "\n";
    out += "grid.dx = " + format_double_exact(cfg.grid_dx) + "\n";
    out += "grid.halfwidth = " + format_double_exact(cfg.grid_halfwidth) + "\n";
    out += "time.dt = " + format_double_exact(cfg.dt) + "\n";
    out += "time.horizon = " + format_double_exact(cfg.horizon) + "\n";
    out += "time.snapshot_stride = " + std::to_string(cfg.snapshot_stride) + "\n";
    out += "initial.kind = " + cfg.initial.to_string() + "\n";
    out += "front.nu = " + format_double_exact(cfg.front_nu) + "\n";
    out += "front.fit_window = " + format_double_exact(cfg.front_fit_window) + "\n";
    out += "seed = " + std::to_string(cfg.seed) + "\n";
    return out;
}

std::string config_hash(const ScenarioConfig& cfg) {
    const std::string s = serialize_config(cfg);
    std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Kernel make_kernel(const Spec& s) {
    if (s.name == "normal") return Kernel::normal(s.num_or("mean", 0.0), s.num("var"));
    if (s.name == "uniform") return Kernel::uniform(s.num("lower"), s.num("upper"));
    if (s.name == "dirac") return Kernel::dirac();
    if (s.name == "table") {
        if (s.args.empty()) throw ConfigError("table(...) needs a CSV path");
        const CsvTable t = read_csv(s.args.front().second);
        if (t.rows.empty() || t.rows.front().size() < 2)
            throw ConfigError("kernel table needs x,density columns");
        const double dx = t.rows.size() > 1 ? t.rows[1][0] - t.rows[0][0] : 0.0;
        if (!(dx > 0.0)) throw ConfigError("kernel table x column must increase uniformly");
        std::vector<double> w;
        w.reserve(t.rows.size());
        for (std::size_t i = 0; i < t.rows.size(); ++i) {
            const double expect = t.rows[0][0] + static_cast<double>(i) * dx;
            if (std::abs(t.rows[i][0] - expect) > 1e-9 * (1.0 + std::abs(expect)))
                throw ConfigError("kernel table x column must be uniformly spaced");
            w.push_back(t.rows[i][1]);
        }
        return Kernel::tabulated(dx, t.rows[0][0], std::move(w));
    }
    throw ConfigError("unknown kernel kind '" + s.name + "'");
}

Nonlinearity make_nonlinearity(const Spec& s, double cap) {
    if (s.name == "saturating") return Nonlinearity::saturating(s.num("slope0"), cap);
    if (s.name == "linear") return Nonlinearity::linear(cap);
    if (s.name == "custom") {
        if (s.args.empty()) throw ConfigError("custom(...) needs a CSV path");
        const CsvTable t = read_csv(s.args.front().second);
        std::vector<double> xs, ys;
        for (const auto& r : t.rows) {
            if (r.size() < 2) throw ConfigError("nonlinearity table needs x,y columns");
            xs.push_back(r[0]);
            ys.push_back(r[1]);
        }
        return Nonlinearity::custom(std::move(xs), std::move(ys));
    }
    throw ConfigError("unknown nonlinearity '" + s.name + "'");
}

ModelParams make_params(const ScenarioConfig& cfg) {
    return ModelParams(cfg.alpha, cfg.beta, make_nonlinearity(cfg.g, cfg.beta),
                       make_nonlinearity(cfg.h, cfg.alpha));
}

InitialData make_initial(const ScenarioConfig& cfg) {
    const Spec& s = cfg.initial;
    if (s.name == "bump")
        return InitialData::bump(s.num_or("center", 0.0), s.num_or("halfwidth", 5.0),
                                 s.num_or("height", 0.5));
    if (s.name == "exptail")
        return InitialData::exponential_tail(s.num("lambda"), s.num_or("amplitude", 0.5),
                                             s.num_or("plateau", 10.0), s.num_or("center", 0.0));
    if (s.name == "custom") {
        if (s.args.empty()) throw ConfigError("custom(...) needs a CSV path");
        const CsvTable t = read_csv(s.args.front().second);
        std::vector<double> xs, us, vs;
        for (const auto& r : t.rows) {
            if (r.size() < 3) throw ConfigError("initial data table needs x,u,v columns");
            xs.push_back(r[0]);
            us.push_back(r[1]);
            vs.push_back(r[2]);
        }
        return InitialData::custom(std::move(xs), std::move(us), std::move(vs));
    }
    throw ConfigError("unknown initial data kind '" + s.name + "'");
}

SimOptions make_sim_options(const ScenarioConfig& cfg) {
    SimOptions o;
    o.dt = cfg.dt;
    o.snapshot_stride = cfg.snapshot_stride;
    o.front_nu = cfg.front_nu;
    o.fit_window = cfg.front_fit_window;
    return o;
}

}  // namespace nlspread
