#include "fou/harness.hpp"

#include "fou/error.hpp"
#include "fou/parallel.hpp"
#include "fou/seed.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace fou {

using nlohmann::json;

namespace {

constexpr std::array<std::pair<ExperimentKind, std::string_view>, 4> kKindNames{{
    {ExperimentKind::Ergodic, "ergodic"},
    {ExperimentKind::Consistency, "consistency"},
    {ExperimentKind::Clt, "clt"},
    {ExperimentKind::FVariance, "f-variance"},
}};

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_short(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

void require_kind(const ExperimentConfig& config, ExperimentKind kind) {
    if (config.kind != kind) {
        throw ConfigError("experiment kind is " + std::string(to_string(config.kind)) +
                          ", expected " + std::string(to_string(kind)));
    }
}

// Estimator used for F_T: θ̂_ito is the only computable θ̂ at H = 1/2.
EstimatorKind f_variance_estimator(double h) {
    return h == 0.5 ? EstimatorKind::ThetaHatIto : EstimatorKind::ThetaHatOracle;
}

// Simulates every (horizon, rep) pair and stores value(path, horizon index) in
// slot horizon·n_reps + rep.
template <class ValueFn>
std::vector<ReplicationRecord> replicate(const ExperimentConfig& config, const RunOptions& options,
                                         ValueFn&& value) {
    const std::size_t n_reps = config.n_reps;
    std::vector<ReplicationRecord> records(config.t_values.size() * n_reps);
    for (std::size_t i = 0; i < config.t_values.size(); ++i) {
        const double t = config.t_values[i];
        const FbmGenerator generator(TimeGrid::with_step(t, config.delta), config.params.h,
                                     options.fbm_method);
        parallel_for(n_reps, options.workers, [&](std::size_t rep) {
            const std::uint64_t seed = derive_seed(config.master_seed, i, rep);
            const SamplePath fbm = generator.generate(seed);
            const SamplePath path = simulate_fou(config.params, fbm, options.scheme);
            records[i * n_reps + rep] = {rep, seed, t, value(path, i)};
        });
    }
    return records;
}

HorizonSummary horizon(double t, const std::vector<double>& values) {
    HorizonSummary s;
    s.t = t;
    s.values = stats::summarize(values);
    return s;
}

std::vector<double> values_at(const std::vector<ReplicationRecord>& records, std::size_t horizon,
                              std::size_t n_reps) {
    std::vector<double> out(n_reps);
    for (std::size_t r = 0; r < n_reps; ++r) out[r] = records[horizon * n_reps + r].value;
    return out;
}

ExperimentReport make_report(const ExperimentConfig& config) {
    const FouParams& p = config.params;
    ExperimentReport report{config, constants_table(p.h.value(), p.theta, p.sigma), {}, {}, {}, false};
    report.low_power = config.n_reps < kMinRepsForVerdict;
    return report;
}

std::vector<double> corrections(const ExperimentConfig& config) {
    std::vector<double> out;
    for (double t : config.t_values) {
        out.push_back(correction_integral(config.params.theta, config.params.h, t));
    }
    return out;
}

double estimate(EstimatorKind kind, const SamplePath& path, const FouParams& params,
                double correction) {
    switch (kind) {
    case EstimatorKind::ThetaTilde:
        return theta_tilde(path, params.sigma, params.h).estimate;
    case EstimatorKind::ThetaHatOracle:
        return theta_hat_oracle(path, params.sigma, params.h, params.theta, correction).estimate;
    case EstimatorKind::ThetaHatPrime:
        return theta_hat_prime(path).estimate;
    case EstimatorKind::ThetaHatIto:
        return theta_hat_ito(path).estimate;
    }
    return 0.0;
}

Verdict within(std::string check, double observed, double target, double tolerance,
               std::string rule) {
    return {std::move(check), std::abs(observed - target) <= tolerance, observed, target, tolerance,
            std::move(rule)};
}

std::string t_label(double t) { return "T=" + fmt_short(t); }

template <class T>
json optional_json(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

json summary_json(const stats::Summary& s) {
    return {{"n", s.n}, {"mean", s.mean}, {"variance", s.variance}, {"std_error", s.std_error}};
}

json params_json(const FouParams& p) {
    return {{"theta", p.theta}, {"sigma", p.sigma}, {"h", p.h.value()}};
}

json config_json(const ExperimentConfig& c) {
    json j;
    j["kind"] = to_string(c.kind);
    j["params"] = params_json(c.params);
    j["t_values"] = c.t_values;
    j["delta"] = c.delta;
    j["n_reps"] = c.n_reps;
    j["master_seed"] = c.master_seed;
    j["estimator"] = to_string(c.estimator);
    j["output_path"] = c.output_path;
    return j;
}

json constants_json(const ConstantsTable& t) {
    json j;
    j["h"] = t.h;
    j["theta"] = t.theta;
    j["sigma"] = t.sigma;
    j["alpha_h"] = optional_json(t.alpha_h);
    j["sigma_h_sq"] = optional_json(t.sigma_h_sq);
    j["delta_h"] = optional_json(t.delta_h);
    j["gamma_h"] = optional_json(t.gamma_h);
    j["d_h"] = optional_json(t.d_h);
    j["f_h"] = optional_json(t.f_h);
    j["ergodic_limit"] = optional_json(t.ergodic_limit);
    j["correction_limit"] = optional_json(t.correction_limit);
    j["clt_variance_hat"] = optional_json(t.clt_variance_hat);
    j["clt_variance_tilde"] = optional_json(t.clt_variance_tilde);
    j["f_variance_limit"] = optional_json(t.f_variance_limit);
    return j;
}

std::size_t line_of(std::string_view text, std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + byte, '\n'));
}

void reject_unknown(const json& obj, std::initializer_list<std::string_view> allowed,
                    std::string_view where) {
    for (const auto& item : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
            throw ConfigError("unknown key \"" + item.key() + "\"" +
                              (where.empty() ? std::string() : " in " + std::string(where)));
        }
    }
}

const json& field(const json& obj, const std::string& name) {
    auto it = obj.find(name);
    if (it == obj.end()) throw ConfigError("missing key \"" + name + "\"");
    return *it;
}

double number_field(const json& obj, const std::string& name) {
    const json& v = field(obj, name);
    if (!v.is_number()) throw ConfigError("\"" + name + "\" must be a number");
    return v.get<double>();
}

std::uint64_t unsigned_field(const json& obj, const std::string& name) {
    const json& v = field(obj, name);
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return v.get<std::uint64_t>();
    throw ConfigError("\"" + name + "\" must be a non-negative integer");
}

std::string string_field(const json& obj, const std::string& name) {
    const json& v = field(obj, name);
    if (!v.is_string()) throw ConfigError("\"" + name + "\" must be a string");
    return v.get<std::string>();
}

} // namespace

std::string_view to_string(ExperimentKind kind) noexcept {
    for (const auto& [k, name] : kKindNames) {
        if (k == kind) return name;
    }
    return "unknown";
}

std::optional<ExperimentKind> parse_experiment_kind(std::string_view name) noexcept {
    for (const auto& [k, n] : kKindNames) {
        if (n == name) return k;
    }
    return std::nullopt;
}

bool ExperimentConfig::operator==(const ExperimentConfig& o) const {
    return kind == o.kind && params.theta == o.params.theta && params.sigma == o.params.sigma &&
           params.h == o.params.h && t_values == o.t_values && delta == o.delta &&
           n_reps == o.n_reps && master_seed == o.master_seed && estimator == o.estimator &&
           output_path == o.output_path;
}

void validate(const ExperimentConfig& c) {
    if (c.n_reps < 2) throw ConfigError("n_reps must be at least 2");
    if (!(c.delta > 0.0) || !std::isfinite(c.delta)) throw ConfigError("delta must be positive");
    if (c.t_values.empty()) throw ConfigError("t_values must not be empty");
    for (std::size_t i = 0; i < c.t_values.size(); ++i) {
        const double t = c.t_values[i];
        if (!(t > 0.0) || !std::isfinite(t)) throw ConfigError("t_values must be positive");
        if (i > 0 && !(t > c.t_values[i - 1])) {
            throw ConfigError("t_values must be strictly increasing");
        }
        const double steps = t / c.delta;
        if (std::abs(steps - std::round(steps)) > 1e-9 * steps) {
            throw ConfigError("T = " + fmt_short(t) + " is not a multiple of delta");
        }
    }

    const double h = c.params.h.value();
    if (h < 0.5) throw DomainError("experiments need H >= 1/2, got H = " + fmt_short(h));
    const auto need_h_above_half = [&](std::string_view what) {
        if (!(h > 0.5)) {
            throw ConfigError(std::string(what) + " needs H > 1/2, got H = " + fmt_short(h));
        }
    };
    const auto check_estimator = [&](EstimatorKind e) {
        switch (e) {
        case EstimatorKind::ThetaTilde:
        case EstimatorKind::ThetaHatOracle:
            need_h_above_half(to_string(e));
            break;
        case EstimatorKind::ThetaHatIto:
            if (h != 0.5) {
                throw ConfigError("hat-ito needs H = 1/2, got H = " + fmt_short(h));
            }
            break;
        case EstimatorKind::ThetaHatPrime:
            break;
        }
    };

    switch (c.kind) {
    case ExperimentKind::Ergodic:
        break;
    case ExperimentKind::Consistency:
        check_estimator(c.estimator);
        break;
    case ExperimentKind::Clt:
        if (h >= 0.75) {
            throw DomainError("the CLT holds for H < 3/4, got H = " + fmt_short(h));
        }
        if (c.estimator == EstimatorKind::ThetaHatPrime) {
            throw ConfigError("hat-prime has no central limit around theta");
        }
        check_estimator(c.estimator);
        break;
    case ExperimentKind::FVariance:
        if (h >= 0.75) {
            throw DomainError("the F_T variance limit needs H < 3/4, got H = " + fmt_short(h));
        }
        if (c.estimator != f_variance_estimator(h)) {
            throw ConfigError("f-variance at H = " + fmt_short(h) + " uses estimator " +
                              std::string(to_string(f_variance_estimator(h))));
        }
        break;
    }
}

bool ExperimentReport::passed() const noexcept {
    return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.passed; });
}

ExperimentReport run_ergodic(const ExperimentConfig& config, const RunOptions& options) {
    require_kind(config, ExperimentKind::Ergodic);
    validate(config);
    ExperimentReport report = make_report(config);
    report.records = replicate(config, options, [&](const SamplePath& path, std::size_t i) {
        return integrated_square(path) / config.t_values[i];
    });
    const double target = *report.constants.ergodic_limit;
    for (std::size_t i = 0; i < config.t_values.size(); ++i) {
        HorizonSummary s = horizon(config.t_values[i], values_at(report.records, i, config.n_reps));
        s.target = target;
        report.summaries.push_back(s);
    }
    if (report.low_power) return report;
    for (std::size_t i = 0; i < report.summaries.size(); ++i) {
        const HorizonSummary& s = report.summaries[i];
        report.verdicts.push_back(within(t_label(s.t) + " mean", s.values.mean, target,
                                         3.0 * s.values.std_error, "|mean - target| <= 3 SE"));
        if (i > 0) {
            const double prev = report.summaries[i - 1].values.variance;
            report.verdicts.push_back({t_label(s.t) + " variance nonincreasing",
                                       s.values.variance <= 1.1 * prev, s.values.variance, prev,
                                       0.1 * prev, "variance <= 1.1 * previous variance"});
        }
    }
    return report;
}

ExperimentReport run_consistency(const ExperimentConfig& config, const RunOptions& options) {
    require_kind(config, ExperimentKind::Consistency);
    validate(config);
    ExperimentReport report = make_report(config);
    const std::vector<double> correction =
        config.estimator == EstimatorKind::ThetaHatOracle ? corrections(config)
                                                          : std::vector<double>(config.t_values.size());
    report.records = replicate(config, options, [&](const SamplePath& path, std::size_t i) {
        return estimate(config.estimator, path, config.params, correction[i]);
    });

    const double theta = config.params.theta;
    const bool negative_control = config.estimator == EstimatorKind::ThetaHatPrime;
    for (std::size_t i = 0; i < config.t_values.size(); ++i) {
        const std::vector<double> v = values_at(report.records, i, config.n_reps);
        HorizonSummary s = horizon(config.t_values[i], v);
        double mae = 0.0;
        for (double x : v) mae += std::abs(x - theta);
        s.mean_abs_error = mae / static_cast<double>(v.size());
        s.median = stats::median(v);
        s.max_value = *std::max_element(v.begin(), v.end());
        s.target = negative_control ? 0.0 : theta;
        report.summaries.push_back(s);
    }
    if (report.low_power) return report;

    const HorizonSummary& last = report.summaries.back();
    if (negative_control) {
        report.verdicts.push_back({t_label(last.t) + " negative control",
                                   *last.max_value < kNegativeControlCeiling, *last.max_value, 0.0,
                                   kNegativeControlCeiling, "max estimate < ceiling"});
        return report;
    }
    for (std::size_t i = 1; i < report.summaries.size(); ++i) {
        const HorizonSummary& s = report.summaries[i];
        const double prev = *report.summaries[i - 1].mean_abs_error;
        report.verdicts.push_back({t_label(s.t) + " MAE decreasing", *s.mean_abs_error < prev,
                                   *s.mean_abs_error, prev, 0.0, "MAE < previous MAE"});
    }
    report.verdicts.push_back(within(t_label(last.t) + " mean", last.values.mean, theta,
                                     3.0 * last.values.std_error, "|mean - theta| <= 3 SE"));
    return report;
}

ExperimentReport run_clt(const ExperimentConfig& config, const RunOptions& options) {
    require_kind(config, ExperimentKind::Clt);
    validate(config);
    ExperimentReport report = make_report(config);
    const std::vector<double> correction =
        config.estimator == EstimatorKind::ThetaHatOracle ? corrections(config)
                                                          : std::vector<double>(config.t_values.size());
    report.records = replicate(config, options, [&](const SamplePath& path, std::size_t i) {
        return estimate(config.estimator, path, config.params, correction[i]);
    });

    const CltVariances targets = clt_variances(config.params);
    const double target =
        config.estimator == EstimatorKind::ThetaTilde ? *targets.var_tilde : targets.var_hat;
    const double theta = config.params.theta;
    for (std::size_t i = 0; i < config.t_values.size(); ++i) {
        const double t = config.t_values[i];
        const std::vector<double> v = values_at(report.records, i, config.n_reps);
        std::vector<double> z(v.size()), standardized(v.size());
        for (std::size_t r = 0; r < v.size(); ++r) {
            z[r] = std::sqrt(t) * (v[r] - theta);
            standardized[r] = z[r] / std::sqrt(target);
        }
        HorizonSummary s = horizon(t, v);
        s.z = stats::summarize(z);
        s.ks_statistic = stats::ks_statistic_normal(standardized);
        s.target = target;
        report.summaries.push_back(s);
    }
    if (report.low_power) return report;

    const double ks_limit = stats::ks_critical_001(config.n_reps);
    for (const HorizonSummary& s : report.summaries) {
        report.verdicts.push_back(within(t_label(s.t) + " z variance", s.z->variance, target,
                                         0.15 * target, "|var(z) - target| <= 0.15 target"));
        report.verdicts.push_back({t_label(s.t) + " KS", *s.ks_statistic < ks_limit,
                                   *s.ks_statistic, 0.0, ks_limit, "KS < 1.63/sqrt(n)"});
    }
    return report;
}

ExperimentReport run_f_variance(const ExperimentConfig& config, const RunOptions& options) {
    require_kind(config, ExperimentKind::FVariance);
    validate(config);
    ExperimentReport report = make_report(config);
    const bool brownian = config.params.h.value() == 0.5;
    const std::vector<double> correction =
        brownian ? std::vector<double>(config.t_values.size()) : corrections(config);
    const double theta = config.params.theta;
    report.records = replicate(config, options, [&](const SamplePath& path, std::size_t i) {
        const double theta_hat = estimate(config.estimator, path, config.params, correction[i]);
        return f_statistic(path, theta_hat, theta);
    });

    for (std::size_t i = 0; i < config.t_values.size(); ++i) {
        const double t = config.t_values[i];
        const std::vector<double> v = values_at(report.records, i, config.n_reps);
        HorizonSummary s = horizon(t, v);
        s.second_moment = stats::summarize_squares(v);
        s.target = brownian ? finite_t_variance_bm(theta, config.params.sigma, t)
                            : *report.constants.f_variance_limit;
        report.summaries.push_back(s);
    }
    if (report.low_power) return report;

    for (const HorizonSummary& s : report.summaries) {
        if (brownian) {
            report.verdicts.push_back(within(t_label(s.t) + " E(F^2)", s.second_moment->mean,
                                             *s.target, 3.0 * s.second_moment->std_error,
                                             "|E(F^2) - finite-T value| <= 3 SE"));
        } else {
            report.verdicts.push_back(within(t_label(s.t) + " E(F^2)", s.second_moment->mean,
                                             *s.target, 0.1 * *s.target,
                                             "|E(F^2) - limit| <= 0.1 limit"));
        }
    }
    return report;
}

ExperimentReport run_experiment(const ExperimentConfig& config, const RunOptions& options) {
    switch (config.kind) {
    case ExperimentKind::Ergodic: return run_ergodic(config, options);
    case ExperimentKind::Consistency: return run_consistency(config, options);
    case ExperimentKind::Clt: return run_clt(config, options);
    case ExperimentKind::FVariance: return run_f_variance(config, options);
    }
    throw ConfigError("unknown experiment kind");
}

ExperimentConfig parse_config(std::string_view text) {
    json j;
    try {
        j = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ConfigError("config line " + std::to_string(line_of(text, e.byte)) + ": " + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    reject_unknown(j, {"kind", "params", "t_values", "delta", "n_reps", "master_seed", "estimator",
                       "output_path"},
                   "");

    const std::string kind_name = string_field(j, "kind");
    const auto kind = parse_experiment_kind(kind_name);
    if (!kind) throw ConfigError("\"kind\": unknown experiment kind \"" + kind_name + "\"");

    const json& p = field(j, "params");
    if (!p.is_object()) throw ConfigError("\"params\" must be an object");
    reject_unknown(p, {"theta", "sigma", "h"}, "params");
    const double h = number_field(p, "h");
    if (!(h > 0.0 && h < 1.0)) throw ConfigError("\"h\" must lie in (0, 1)");
    const double theta = number_field(p, "theta");
    const double sigma = number_field(p, "sigma");
    if (!(theta > 0.0)) throw ConfigError("\"theta\" must be positive");
    if (!(sigma > 0.0)) throw ConfigError("\"sigma\" must be positive");

    const json& ts = field(j, "t_values");
    if (!ts.is_array()) throw ConfigError("\"t_values\" must be an array of numbers");
    std::vector<double> t_values;
    for (const json& t : ts) {
        if (!t.is_number()) throw ConfigError("\"t_values\" must be an array of numbers");
        t_values.push_back(t.get<double>());
    }

    const std::string estimator_name = string_field(j, "estimator");
    const auto estimator = parse_estimator(estimator_name);
    if (!estimator) {
        throw ConfigError("\"estimator\": unknown estimator \"" + estimator_name + "\"");
    }

    ExperimentConfig c{*kind, FouParams(theta, sigma, HurstParameter(h)), std::move(t_values), 0.01, 2, 0,
                       *estimator, ""};
    c.delta = number_field(j, "delta");
    c.n_reps = unsigned_field(j, "n_reps");
    c.master_seed = unsigned_field(j, "master_seed");
    if (j.contains("output_path")) c.output_path = string_field(j, "output_path");
    validate(c);
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read config " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_config(buf.str());
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

std::string config_to_json(const ExperimentConfig& config) {
    return config_json(config).dump(2) + "\n";
}

std::string constants_to_json(const ConstantsTable& table) {
    return constants_json(table).dump(2) + "\n";
}

std::string report_to_json(const ExperimentReport& report) {
    json j;
    j["config"] = config_json(report.config);
    j["constants"] = constants_json(report.constants);
    j["low_power"] = report.low_power;
    j["passed"] = report.passed();

    json summaries = json::array();
    for (const HorizonSummary& s : report.summaries) {
        json e;
        e["T"] = s.t;
        e["values"] = summary_json(s.values);
        if (s.mean_abs_error) e["mean_abs_error"] = *s.mean_abs_error;
        if (s.median) e["median"] = *s.median;
        if (s.max_value) e["max"] = *s.max_value;
        if (s.z) e["z"] = summary_json(*s.z);
        if (s.ks_statistic) e["ks_statistic"] = *s.ks_statistic;
        if (s.second_moment) e["second_moment"] = summary_json(*s.second_moment);
        e["target"] = optional_json(s.target);
        summaries.push_back(e);
    }
    j["summaries"] = summaries;

    json verdicts = json::array();
    for (const Verdict& v : report.verdicts) {
        verdicts.push_back({{"check", v.check},
                            {"passed", v.passed},
                            {"observed", v.observed},
                            {"target", v.target},
                            {"tolerance", v.tolerance},
                            {"rule", v.rule}});
    }
    j["verdicts"] = verdicts;

    json records = json::array();
    for (const ReplicationRecord& r : report.records) {
        records.push_back({{"rep", r.rep}, {"seed", r.seed}, {"T", r.t}, {"value", r.value}});
    }
    j["records"] = records;
    return j.dump(2) + "\n";
}

std::string records_to_csv(const ExperimentReport& report) {
    std::string out = "rep,seed,T,value\n";
    for (const ReplicationRecord& r : report.records) {
        out += std::to_string(r.rep) + ',' + std::to_string(r.seed) + ',' + fmt17(r.t) + ',' +
               fmt17(r.value) + '\n';
    }
    return out;
}

void write_report(const ExperimentReport& report, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
    const auto write = [](const std::filesystem::path& path, const std::string& content) {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        out << content;
        if (!out) throw IoError("cannot write " + path.string());
    };
    write(dir / "report.json", report_to_json(report));
    write(dir / "records.csv", records_to_csv(report));
}

} // namespace fou
