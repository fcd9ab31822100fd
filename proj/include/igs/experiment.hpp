#pragma once

// Experiment configuration and result serialization behind the CLI:
// JSON config -> solver runs -> deterministic CSV or JSON output.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "igs/oracle.hpp"
#include "igs/region.hpp"

namespace igs {

// Thrown for malformed or inconsistent configuration input.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class OutputFormat { csv, json };
enum class RateUnits { nats, bits };

struct OutputSpec {
    OutputFormat format = OutputFormat::csv;
    RateUnits units = RateUnits::nats;
    std::string path;  // empty = write to stdout
};

struct ExperimentConfig {
    Channel channel;
    PowerConstraint powers;          // resolved from snr_db when given
    std::optional<double> snr_db;    // kept for reporting
    std::vector<double> alphas;
    SolverConfig solver;
    GridSpec oracle_grid;
    OutputSpec output;
};

// Parses and validates a config document. The channel is given as
// {"h11": [re, im], ...}; exactly one of "snr_db" (P1 = P2 = 10^(snr/10)
// times noise_var 1) or "powers" ({"p1", "p2", "noise_var"}) selects the
// power constraint; "alpha_grid" is a point count or an explicit list.
// Throws ConfigError on any schema or value problem.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);  // ConfigError on I/O

// One output row. Oracle rows report the implied profile
// alpha = R1 / (R1 + R2) and R_total = R1 + R2.
struct ResultRow {
    double alpha = 0.0;
    Scheme scheme = Scheme::proper_optimal;
    double r_total = 0.0;
    RatePair rates;
    Signaling signaling;
};

struct CompareSummary {
    double max_improvement = 0.0;   // improper over proper profile rate
    double mean_improvement = 0.0;
    double max_shortfall = 0.0;     // improper below the oracle front
};

struct RunResult {
    std::vector<ResultRow> rows;
    std::optional<CompareSummary> summary;
    std::vector<std::string> errors;  // per-alpha solver failures
};

// Proper and improper boundary sweeps (two rows per profile split).
RunResult run_region(const ExperimentConfig& cfg);

// run_region plus oracle rows and the improvement/shortfall summary.
RunResult run_compare(const ExperimentConfig& cfg);

// Rates achieved by an explicit signaling under the configured channel and
// powers. Throws ValidationError listing the violated conditions.
RatePair run_rate(const ExperimentConfig& cfg, const Signaling& sig);

// Canonical float rendering (%.9g, -0 collapsed to 0) shared by all output.
std::string format_double(double v);
const char* scheme_name(Scheme s);

// Fixed column order; floats rendered with %.9g so output is byte-stable.
// The summary, when present, is appended as '#'-prefixed trailer lines.
std::string format_csv(const RunResult& result, RateUnits units);
std::string format_json(const RunResult& result, RateUnits units);

// Serializes per cfg.output and writes to path or stdout.
// Throws std::ios_base::failure when the file cannot be written.
void write_output(const ExperimentConfig& cfg, const RunResult& result);

}  // namespace igs
