// fou: command line front end.
//
//   fou constants  --h <v> [--theta <v>] [--sigma <v>] [--json]
//   fou simulate   --h --theta --sigma --t --delta --seed --out <csv>
//   fou estimate   --estimator {tilde|hat-oracle|hat-prime|hat-ito} --in <csv>
//                  [--theta-true <v>] --sigma --h
//   fou experiment --config <json> --out <dir> [--workers <n>]
//
// Exit status: 0 ok, 1 a verdict failed, 2 usage or config error, 3 numerical error.

#include "fou/asymptotics.hpp"
#include "fou/error.hpp"
#include "fou/estimators.hpp"
#include "fou/fbm.hpp"
#include "fou/fou.hpp"
#include "fou/harness.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerdict = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_path_csv(const fou::SamplePath& path, const std::string& file) {
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) throw fou::IoError("cannot write " + file);
    out << "t,x\n";
    for (std::size_t k = 0; k < path.values.size(); ++k) {
        out << fmt17(path.grid.point(k)) << ',' << fmt17(path.values[k]) << '\n';
    }
    if (!out) throw fou::IoError("cannot write " + file);
}

// Reads a `t,x` CSV on a uniform grid starting at 0.
fou::SamplePath read_path_csv(const std::string& file, double h) {
    std::ifstream in(file);
    if (!in) throw fou::IoError("cannot read " + file);
    std::string line;
    if (!std::getline(in, line) || line != "t,x") {
        throw fou::IoError(file + ": expected header t,x");
    }
    std::vector<double> ts, xs;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto comma = line.find(',');
        char* end = nullptr;
        const double t = std::strtod(line.c_str(), &end);
        const bool t_ok = comma != std::string::npos && end == line.c_str() + comma;
        const double x = t_ok ? std::strtod(line.c_str() + comma + 1, &end) : 0.0;
        if (!t_ok || *end != '\0') {
            throw fou::IoError(file + ":" + std::to_string(lineno) + ": malformed row");
        }
        ts.push_back(t);
        xs.push_back(x);
    }
    if (ts.size() < 2) throw fou::IoError(file + ": need at least two rows");
    if (ts.front() != 0.0) throw fou::IoError(file + ": grid must start at t = 0");

    const fou::TimeGrid grid(ts.back(), ts.size() - 1);
    for (std::size_t k = 0; k < ts.size(); ++k) {
        if (std::abs(ts[k] - grid.point(k)) > 1e-9 * grid.t_max()) {
            throw fou::IoError(file + ":" + std::to_string(k + 2) + ": grid is not uniform");
        }
    }
    return {grid, std::move(xs), fou::PathLabel::Fou, fou::HurstParameter(h)};
}

void print_constants(const fou::ConstantsTable& t, bool as_json) {
    if (as_json) {
        std::cout << fou::constants_to_json(t);
        return;
    }
    const std::pair<const char*, std::optional<double>> rows[] = {
        {"h", t.h},
        {"theta", t.theta},
        {"sigma", t.sigma},
        {"alpha_h", t.alpha_h},
        {"sigma_h_sq", t.sigma_h_sq},
        {"delta_h", t.delta_h},
        {"gamma_h", t.gamma_h},
        {"d_h", t.d_h},
        {"f_h", t.f_h},
        {"ergodic_limit", t.ergodic_limit},
        {"correction_limit", t.correction_limit},
        {"clt_variance_hat", t.clt_variance_hat},
        {"clt_variance_tilde", t.clt_variance_tilde},
        {"f_variance_limit", t.f_variance_limit},
    };
    for (const auto& [name, value] : rows) {
        std::printf("%-20s %s\n", name, value ? fmt17(*value).c_str() : "-");
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fractional Ornstein-Uhlenbeck simulation and drift estimation"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "Print this help message and exit"); // -h would clash with --h

    double h = 0.5, theta = 1.0, sigma = 1.0;

    auto* constants = app.add_subcommand("constants", "Print the asymptotic constants for one H");
    bool as_json = false;
    constants->add_option("--h", h, "Hurst index")->required();
    constants->add_option("--theta", theta)->capture_default_str();
    constants->add_option("--sigma", sigma)->capture_default_str();
    constants->add_flag("--json", as_json, "JSON instead of aligned text");

    auto* simulate = app.add_subcommand("simulate", "Simulate one fOU path to CSV");
    double t_max = 0.0, delta = 0.01;
    std::uint64_t seed = 0;
    std::string out_file, scheme_name = "midpoint";
    simulate->add_option("--h", h)->required();
    simulate->add_option("--theta", theta)->required();
    simulate->add_option("--sigma", sigma)->required();
    simulate->add_option("--t", t_max, "Horizon T")->required();
    simulate->add_option("--delta", delta)->required();
    simulate->add_option("--seed", seed)->required();
    simulate->add_option("--out", out_file, "Output CSV (t,x)")->required();
    simulate->add_option("--scheme", scheme_name)
        ->check(CLI::IsMember({"euler", "integrating-factor", "midpoint"}))
        ->capture_default_str();

    auto* estimate = app.add_subcommand("estimate", "Estimate theta from a path CSV");
    std::string estimator_name, in_file;
    std::optional<double> theta_true;
    estimate->add_option("--estimator", estimator_name)
        ->required()
        ->check(CLI::IsMember({"tilde", "hat-oracle", "hat-prime", "hat-ito"}));
    estimate->add_option("--in", in_file)->required()->check(CLI::ExistingFile);
    estimate->add_option("--theta-true", theta_true, "True theta (hat-oracle only)");
    estimate->add_option("--sigma", sigma)->required();
    estimate->add_option("--h", h)->required();

    auto* experiment = app.add_subcommand("experiment", "Run a Monte Carlo experiment");
    std::string config_file, out_dir;
    unsigned workers = 0;
    experiment->add_option("--config", config_file)->required();
    experiment->add_option("--out", out_dir)->required();
    experiment->add_option("--workers", workers, "Threads (0 = all cores)")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*constants) {
            print_constants(fou::constants_table(h, theta, sigma), as_json);
            return kExitOk;
        }
        if (*simulate) {
            const fou::FouScheme scheme = scheme_name == "euler"
                                              ? fou::FouScheme::EulerLangevin
                                          : scheme_name == "integrating-factor"
                                              ? fou::FouScheme::IntegratingFactor
                                              : fou::FouScheme::MidpointIntegratingFactor;
            const fou::FouParams params(theta, sigma, fou::HurstParameter(h));
            const fou::SamplePath fbm =
                fou::generate_fbm(fou::TimeGrid::with_step(t_max, delta), params.h, seed);
            write_path_csv(fou::simulate_fou(params, fbm, scheme), out_file);
            return kExitOk;
        }
        if (*estimate) {
            const fou::EstimatorKind kind = *fou::parse_estimator(estimator_name);
            const fou::SamplePath path = read_path_csv(in_file, h);
            fou::EstimationResult r{};
            switch (kind) {
            case fou::EstimatorKind::ThetaTilde:
                r = fou::theta_tilde(path, sigma, path.hurst);
                break;
            case fou::EstimatorKind::ThetaHatOracle:
                if (!theta_true) {
                    std::cerr << "error: hat-oracle needs --theta-true\n";
                    return kExitUsage;
                }
                r = fou::theta_hat_oracle(path, sigma, path.hurst, *theta_true);
                break;
            case fou::EstimatorKind::ThetaHatPrime:
                r = fou::theta_hat_prime(path);
                break;
            case fou::EstimatorKind::ThetaHatIto:
                r = fou::theta_hat_ito(path);
                break;
            }
            nlohmann::json j{{"estimator", fou::to_string(r.estimator)},
                             {"estimate", r.estimate},
                             {"T", r.t_max},
                             {"h", r.h},
                             {"inputs_digest", r.inputs_digest}};
            std::cout << j.dump(2) << '\n';
            return kExitOk;
        }
        if (*experiment) {
            const fou::ExperimentConfig config = fou::load_config(config_file);
            fou::RunOptions options;
            options.workers = workers;
            const fou::ExperimentReport report = fou::run_experiment(config, options);
            fou::write_report(report, out_dir);
            if (report.low_power) {
                std::cout << "low power: n_reps < " << fou::kMinRepsForVerdict
                          << ", no verdicts issued\n";
            }
            for (const fou::Verdict& v : report.verdicts) {
                std::cout << (v.passed ? "PASS " : "FAIL ") << v.check << ": observed "
                          << fmt17(v.observed) << ", target " << fmt17(v.target)
                          << ", tolerance " << fmt17(v.tolerance) << " (" << v.rule << ")\n";
            }
            return report.passed() ? kExitOk : kExitVerdict;
        }
    } catch (const fou::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitUsage;
}
