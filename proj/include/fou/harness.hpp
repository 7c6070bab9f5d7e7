#pragma once

// Monte Carlo experiments: configuration, replication, summaries, verdicts and
// report files.
//
// Replication r at horizon index i uses seed derive_seed(master_seed, i, r).
// Replications run concurrently but each writes only its own slot, and all
// summaries are computed afterwards in (horizon, replication) order, so
// outputs do not depend on the worker count or on execution order.

#include "fou/asymptotics.hpp"
#include "fou/estimators.hpp"
#include "fou/fou.hpp"
#include "fou/stats.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fou {

enum class ExperimentKind { Ergodic, Consistency, Clt, FVariance };

std::string_view to_string(ExperimentKind kind) noexcept;
std::optional<ExperimentKind> parse_experiment_kind(std::string_view name) noexcept;

struct ExperimentConfig {
    ExperimentKind kind;
    FouParams params;
    std::vector<double> t_values;
    double delta = 0.01;
    std::uint64_t n_reps = 2;
    std::uint64_t master_seed = 0;
    EstimatorKind estimator = EstimatorKind::ThetaTilde;
    std::string output_path;

    bool operator==(const ExperimentConfig& other) const;
};

/// Checks the config invariants (n_reps >= 2, delta > 0, t_values non-empty,
/// strictly increasing, multiples of delta) and the estimator/H pairing.
/// Raises ConfigError, or DomainError for an H where the limit results do not hold.
void validate(const ExperimentConfig& config);

struct ReplicationRecord {
    std::uint64_t rep;
    std::uint64_t seed;
    double t;
    double value; // (1/T)∫X², an estimate, or F_T depending on the kind
};

struct HorizonSummary {
    double t;
    stats::Summary values;                  // of the recorded values
    std::optional<double> mean_abs_error;   // consistency
    std::optional<double> median;           // consistency
    std::optional<double> max_value;        // consistency
    std::optional<stats::Summary> z;        // clt: z = √T(estimate - θ)
    std::optional<double> ks_statistic;     // clt
    std::optional<stats::Summary> second_moment; // f-variance: of F_T²
    std::optional<double> target;           // limit the summary is compared with
};

struct Verdict {
    std::string check;
    bool passed;
    double observed;
    double target;
    double tolerance;
    std::string rule;
};

struct ExperimentReport {
    ExperimentConfig config;
    ConstantsTable constants;
    std::vector<ReplicationRecord> records; // sorted by (horizon, rep)
    std::vector<HorizonSummary> summaries;  // one per horizon, same order
    std::vector<Verdict> verdicts;
    bool low_power = false; // n_reps below kMinRepsForVerdict: no verdicts issued

    bool passed() const noexcept;
};

inline constexpr std::uint64_t kMinRepsForVerdict = 30;

/// Estimates of θ̂' above this at the final horizon fail the negative control.
inline constexpr double kNegativeControlCeiling = 0.02;

struct RunOptions {
    unsigned workers = 0; // 0 = hardware concurrency
    FouScheme scheme = FouScheme::MidpointIntegratingFactor;
    FbmMethod fbm_method = FbmMethod::CirculantEmbedding;
};

ExperimentReport run_ergodic(const ExperimentConfig& config, const RunOptions& options = {});
ExperimentReport run_consistency(const ExperimentConfig& config, const RunOptions& options = {});
ExperimentReport run_clt(const ExperimentConfig& config, const RunOptions& options = {});
ExperimentReport run_f_variance(const ExperimentConfig& config, const RunOptions& options = {});

/// Dispatches on config.kind.
ExperimentReport run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

/// Parses a JSON config. Unknown keys, missing keys and type mismatches raise
/// ConfigError naming the field (and line, for syntax errors).
ExperimentConfig parse_config(std::string_view json_text);
ExperimentConfig load_config(const std::filesystem::path& path);
std::string config_to_json(const ExperimentConfig& config);

/// Writes <dir>/report.json and <dir>/records.csv (header rep,seed,T,value,
/// 17 significant digits). Creates `dir` if needed; raises IoError.
void write_report(const ExperimentReport& report, const std::filesystem::path& dir);

std::string report_to_json(const ExperimentReport& report);
std::string records_to_csv(const ExperimentReport& report);

/// Constants table as JSON (null for entries outside their domain).
std::string constants_to_json(const ConstantsTable& table);

} // namespace fou
