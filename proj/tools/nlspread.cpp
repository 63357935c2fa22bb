// Command-line front end: scenario configuration, analysis commands, the
// time-domain simulator, parameter sweeps, and the oracle suite.

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "nlspread/config.hpp"
#include "nlspread/convolution.hpp"
#include "nlspread/csv.hpp"
#include "nlspread/dispersion.hpp"
#include "nlspread/oracles.hpp"
#include "nlspread/simulator.hpp"

namespace fs = std::filesystem;
using namespace nlspread;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitMath = 3;
constexpr int kExitSimAbort = 4;

struct CommonArgs {
    std::string config_path;
    std::vector<std::string> sets;
    std::string out_dir = "out";
    int jobs = 1;
    bool unproven = false;
};

RawConfig load_raw(const CommonArgs& a) {
    if (a.config_path.empty()) throw ConfigError("--config is required");
    RawConfig raw = parse_raw_config(read_text_file(a.config_path));
    for (const auto& s : a.sets) apply_set(raw, s);
    return raw;
}

ScenarioConfig load_config(const CommonArgs& a) { return build_config(load_raw(a)); }

std::string speeds_row(const ScenarioConfig& cfg) {
    const ModelParams p = make_params(cfg);
    const Kernel k1 = make_kernel(cfg.kernel_u);
    const Kernel k2 = make_kernel(cfg.kernel_v);
    const SpeedProfile prof = locate_speeds(p, k1, k2);
    return csv_row({format_double(prof.lambda_l), format_double(prof.lambda_r),
                    format_double(prof.c_l), format_double(prof.c_r),
                    to_string(prof.classification)});
}

std::string kappa_row(const ScenarioConfig& cfg) {
    const ModelParams p = make_params(cfg);
    const Kernel k1 = make_kernel(cfg.kernel_u);
    return csv_row({format_double(kappa_index(p, k1))});
}

MobilityFamily family_of(const ScenarioConfig& cfg) {
    const Spec& s = cfg.kernel_v;
    if (s.name == "normal" && s.num_or("mean", 0.0) == 0.0) return MobilityFamily::NormalVariance;
    if (s.name == "uniform" && s.num("lower") == -s.num("upper"))
        return MobilityFamily::UniformHalfwidth;
    throw ConfigError("kernel.v = " + s.to_string() +
                      " is not a recognized one-parameter mobility family "
                      "(centered normal or symmetric uniform)");
}

std::string sigma_star_row(const ScenarioConfig& cfg, bool unproven) {
    const ModelParams p = make_params(cfg);
    const Kernel k1 = make_kernel(cfg.kernel_u);
    if (k1.kind() == KernelKind::Tabulated && !unproven)
        throw DomainError(
            "critical mobility for general kernels rests on the unproven E(k1) "
            "generalization; pass --unproven to enable it");
    const MobilityFamily fam = family_of(cfg);
    const double kappa = kappa_index(p, k1);
    try {
        const double ss = sigma_star(p, k1, fam);
        return csv_row({format_double(kappa), format_double(ss)});
    } catch (const NoCriticalValue&) {
        return csv_row({format_double(kappa), ""});
    }
}

// Automatic half-width: far enough that fronts stay clear of the boundary
// over the horizon, with at least twelve truncation radii of margin.
double auto_halfwidth(const ScenarioConfig& cfg, const ModelParams& p, const Kernel& k1,
                      const Kernel& k2) {
    const SpeedProfile prof = locate_speeds(p, k1, k2);
    const double cmax = std::max(std::abs(prof.c_l), std::abs(prof.c_r));
    const double radius = std::max(k1.support_radius(), k2.support_radius());
    return 1.5 * cmax * cfg.horizon + std::max(50.0, 12.0 * radius);
}

struct SimulateOutput {
    fs::path dir;
    std::string summary_row;
};

SimulateOutput run_simulate(const ScenarioConfig& cfg, const std::string& out_root) {
    const ModelParams p = make_params(cfg);
    const Kernel k1 = make_kernel(cfg.kernel_u);
    const Kernel k2 = make_kernel(cfg.kernel_v);
    const SpeedProfile prof = locate_speeds(p, k1, k2);

    const double hw =
        cfg.grid_halfwidth > 0.0 ? cfg.grid_halfwidth : auto_halfwidth(cfg, p, k1, k2);
    const Grid grid = Grid::symmetric(hw, cfg.grid_dx);
    Simulator sim(p, k1, k2, grid, make_sim_options(cfg));
    const SimResult res = sim.run(make_initial(cfg), cfg.horizon);

    std::string snapshots = "t,x,u,v\n";
    for (const auto& s : res.snapshots)
        for (int i = 0; i < grid.n; ++i)
            snapshots += csv_row({format_double(s.t), format_double(grid.x(i)),
                                  format_double(s.u[static_cast<std::size_t>(i)]),
                                  format_double(s.v[static_cast<std::size_t>(i)])});

    std::string fronts = "t,x_left,x_right\n";
    for (const auto& f : res.trace.samples)
        fronts += csv_row(
            {format_double(f.t), format_double(f.x_left), format_double(f.x_right)});

    const double rel_l = std::abs(res.fit.speed_left - prof.c_l) / std::abs(prof.c_l);
    const double rel_r = std::abs(res.fit.speed_right - prof.c_r) / std::abs(prof.c_r);
    std::string summary =
        "c_left_fit,c_right_fit,r2_left,r2_right,c_l_star,c_r_star,rel_err_left,rel_err_right\n";
    const std::string row = csv_row(
        {format_double(res.fit.speed_left), format_double(res.fit.speed_right),
         format_double(res.fit.r2_left), format_double(res.fit.r2_right),
         format_double(prof.c_l), format_double(prof.c_r), format_double(rel_l),
         format_double(rel_r)});
    summary += row;

    SimulateOutput out;
    out.dir = fs::path(out_root) / config_hash(cfg);
    fs::create_directories(out.dir);
    write_text_file((out.dir / "snapshots.csv").string(), snapshots);
    write_text_file((out.dir / "fronts.csv").string(), fronts);
    write_text_file((out.dir / "summary.csv").string(), summary);
    out.summary_row = row;
    return out;
}

int run_validate(const ScenarioConfig& cfg) {
    const ModelParams p = make_params(cfg);
    const Kernel k1 = make_kernel(cfg.kernel_u);
    const Kernel k2 = make_kernel(cfg.kernel_v);
    bool all_ok = true;
    const auto report = [&](const std::string& name, bool ok, const std::string& detail) {
        std::cout << (ok ? "[ ok ] " : "[FAIL] ") << name;
        if (!detail.empty()) std::cout << " — " << detail;
        std::cout << "\n";
        if (!ok) all_ok = false;
    };

    const double horizon = std::min(cfg.horizon, 50.0);
    ScenarioConfig small = cfg;
    small.horizon = horizon;
    const double hw = small.grid_halfwidth > 0.0 ? small.grid_halfwidth
                                                 : auto_halfwidth(small, p, k1, k2);
    const Grid grid = Grid::symmetric(hw, cfg.grid_dx);
    SimOptions opts = make_sim_options(cfg);
    opts.snapshot_stride = std::max(1, opts.snapshot_stride / 2);

    // Direct vs spectral convolution on seeded random data.
    {
        std::mt19937_64 rng(cfg.seed);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        const TabulatedKernel kw = k1.discretize(cfg.grid_dx);
        Grid cg = Grid::symmetric(std::max(hw / 4.0, 8.0 * k1.support_radius()), cfg.grid_dx);
        std::vector<double> f(static_cast<std::size_t>(cg.n)), a(f.size()), b(f.size());
        for (double& x : f) x = unif(rng);
        ConvolutionEngine direct(kw, cg, ConvolutionEngine::Path::Direct);
        ConvolutionEngine spectral(kw, cg, ConvolutionEngine::Path::Spectral);
        direct.apply(f, a);
        spectral.apply(f, b);
        double diff = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i) diff = std::max(diff, std::abs(a[i] - b[i]));
        report("direct vs spectral convolution", diff < 1e-10,
               "max |diff| = " + format_double(diff));
    }

    // Comparison principle on ordered random initial pairs.
    {
        std::mt19937_64 rng(cfg.seed + 1);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        bool ok = true;
        for (int trial = 0; trial < 10 && ok; ++trial) {
            const double center = (unif(rng) - 0.5) * 0.2 * hw;
            const double width = 2.0 + 8.0 * unif(rng);
            const double height = 0.2 + 0.7 * unif(rng);
            const double shrink = 0.2 + 0.75 * unif(rng);
            Simulator sim_hi(p, k1, k2, grid, opts);
            Simulator sim_lo(p, k1, k2, grid, opts);
            const SimResult hi =
                sim_hi.run(InitialData::bump(center, width, height), horizon / 2.0);
            const SimResult lo =
                sim_lo.run(InitialData::bump(center, width, height * shrink), horizon / 2.0);
            ok = check_comparison(hi, lo);
        }
        report("comparison principle (10 ordered pairs)", ok, "");
    }

    // Monotone symmetry preservation (symmetric setups only).
    {
        Simulator sim(p, k1, k2, grid, opts);
        if (sim.symmetric_kernels()) {
            bool ok = true;
            const SimResult res = sim.run(InitialData::bump(0.0, 5.0, 0.5), horizon);
            for (const auto& s : res.snapshots)
                ok = ok && check_monotone(s, true) == MonotoneStatus::Holds;
            report("monotone symmetry preservation", ok, "");
        } else {
            std::cout << "[ -- ] monotone symmetry preservation — not applicable "
                         "(asymmetric kernels)\n";
        }
    }

    // Upper-solution domination for the compactly supported data class.
    {
        Simulator sim(p, k1, k2, grid, opts);
        const Kernel t1 = Kernel::tabulated(sim.table1());
        const Kernel t2 = Kernel::tabulated(sim.table2());
        const SpeedProfile dprof = locate_speeds(p, t1, t2);
        const InitialData init = InitialData::bump(0.0, 5.0, 0.5);
        std::vector<double> u0, v0;
        init.fill(grid, u0, v0);
        UpperEnvelope env = upper_envelope(p, t1, t2, dprof);
        env.gamma = 2.0 * std::max(env.gamma, domination_gamma(env, grid, u0, v0));
        check_initial_domination(env, grid, u0, v0);
        const SimResult res = sim.run(init, horizon);
        const bool ok = check_domination(env, res, 1e-8);
        report("upper-solution domination", ok, "Gamma = " + format_double(env.gamma));
    }

    return all_ok ? 0 : 1;
}

struct SweepResult {
    double value;
    std::string row;    // command CSV row without trailing newline
    std::string error;  // empty on success
};

int run_sweep(const CommonArgs& common, const std::string& axis, std::vector<double> values,
              const std::string& command) {
    std::sort(values.begin(), values.end());
    std::vector<SweepResult> results(values.size());
    std::mutex mu;
    std::size_t next = 0;

    const auto worker = [&] {
        for (;;) {
            std::size_t idx;
            {
                std::lock_guard<std::mutex> lock(mu);
                if (next >= values.size()) return;
                idx = next++;
            }
            SweepResult r;
            r.value = values[idx];
            try {
                RawConfig raw = load_raw(common);
                apply_axis(raw, axis, values[idx]);
                const ScenarioConfig cfg = build_config(raw);
                std::string row;
                if (command == "speeds" || command == "classify")
                    row = speeds_row(cfg);
                else if (command == "kappa")
                    row = kappa_row(cfg);
                else if (command == "sigma-star")
                    row = sigma_star_row(cfg, common.unproven);
                else if (command == "simulate")
                    row = run_simulate(cfg, common.out_dir).summary_row;
                else
                    throw ConfigError("sweep: unknown command '" + command + "'");
                if (!row.empty() && row.back() == '\n') row.pop_back();
                r.row = row;
            } catch (const std::exception& e) {
                std::string msg = e.what();
                std::replace(msg.begin(), msg.end(), ',', ';');
                std::replace(msg.begin(), msg.end(), '\n', ' ');
                r.error = msg;
            }
            {
                std::lock_guard<std::mutex> lock(mu);
                results[idx] = std::move(r);
            }
        }
    };

    const int jobs = std::max(1, common.jobs);
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    const char* headers = nullptr;
    if (command == "speeds" || command == "classify")
        headers = "value,lambda_l,lambda_r,c_l,c_r,class,error";
    else if (command == "kappa")
        headers = "value,kappa,error";
    else if (command == "sigma-star")
        headers = "value,kappa,sigma_star,error";
    else
        headers =
            "value,c_left_fit,c_right_fit,r2_left,r2_right,c_l_star,c_r_star,rel_err_left,"
            "rel_err_right,error";
    std::cout << headers << "\n";

    const std::string empty_cols = [&] {
        std::string h = headers;
        const auto commas = std::count(h.begin(), h.end(), ',');
        return std::string(static_cast<std::size_t>(commas) - 1, ',');
    }();

    std::size_t succeeded = 0;
    for (const auto& r : results) {
        if (r.error.empty()) {
            std::cout << format_double(r.value) << "," << r.row << ",\n";
            ++succeeded;
        } else {
            std::cout << format_double(r.value) << empty_cols << r.error << "\n";
        }
    }
    return succeeded > 0 ? 0 : kExitMath;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spreading-speed analysis and simulation for a two-component "
                 "nonlocal-dispersal epidemic model"};
    app.require_subcommand(1);

    CommonArgs common;
    std::string axis, command = "speeds", values_arg;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", common.config_path, "scenario config file");
        sub->add_option("--set", common.sets, "override: key=value")->take_all();
        sub->add_option("--out", common.out_dir, "output directory root");
        sub->add_option("--jobs", common.jobs, "worker pool size");
        sub->add_flag("--unproven", common.unproven,
                      "enable the general-kernel critical-mobility extension");
    };

    CLI::App* speeds = app.add_subcommand("speeds", "spreading speeds and direction class");
    CLI::App* classify = app.add_subcommand("classify", "propagation direction class");
    CLI::App* kappa = app.add_subcommand("kappa", "asymmetry threshold index");
    CLI::App* sigma = app.add_subcommand("sigma-star", "critical mobility of the v component");
    CLI::App* simulate = app.add_subcommand("simulate", "time-domain run with front tracking");
    CLI::App* sweep = app.add_subcommand("sweep", "run a command over a parameter axis");
    CLI::App* validate = app.add_subcommand("validate", "proof-derived oracle suite");
    for (CLI::App* sub : {speeds, classify, kappa, sigma, simulate, sweep, validate})
        add_common(sub);
    sweep->add_option("--axis", axis, "parameter path to sweep")->required();
    sweep->add_option("--values", values_arg, "comma-separated values")->required();
    sweep->add_option("--command", command, "speeds|classify|kappa|sigma-star|simulate");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitConfig;
    }

    try {
        if (speeds->parsed() || classify->parsed()) {
            std::cout << "lambda_l,lambda_r,c_l,c_r,class\n" << speeds_row(load_config(common));
        } else if (kappa->parsed()) {
            std::cout << "kappa\n" << kappa_row(load_config(common));
        } else if (sigma->parsed()) {
            std::cout << "kappa,sigma_star\n"
                      << sigma_star_row(load_config(common), common.unproven);
        } else if (simulate->parsed()) {
            const SimulateOutput out = run_simulate(load_config(common), common.out_dir);
            std::cout << out.dir.string() << "\n";
        } else if (sweep->parsed()) {
            std::vector<double> values;
            std::stringstream ss(values_arg);
            std::string item;
            while (std::getline(ss, item, ','))
                if (!item.empty()) values.push_back(std::strtod(item.c_str(), nullptr));
            if (values.empty()) throw ConfigError("--values is empty");
            return run_sweep(common, axis, values, command);
        } else if (validate->parsed()) {
            return run_validate(load_config(common));
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const SimulationAbort& e) {
        std::cerr << "simulation aborted: " << e.what() << "\n";
        return kExitSimAbort;
    } catch (const MathError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMath;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
