#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "edgeworth/estimator.hpp"

namespace edgeworth {

/// Config file / CSV shape problems. Exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Model or test-function resolution problems. Exit code 3.
class ResolveError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Numeric degeneracy at run time. Exit code 4.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    std::string model_name;
    std::map<std::string, double> model_params;
    bool hypotheses_asserted_by_user = false;
    std::string f_id;
    std::map<std::string, double> f_params;
    double horizon = 1.0;
    std::vector<long> n_list;
    long m = -1;  // -1: auto rule max(64, ceil(8 sqrt(n)))
    long paths = 0;
    std::uint64_t seed = 0;
    std::string mode = "coupled";
    bool antithetic = false;
    int threads = 0;
    int quadrature_nodes = 64;
    std::string output = "report.csv";
};

/// Parse and validate a JSON config file. Throws ConfigError.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const std::string& json_text);

/// Frozen report CSV header (preceded by a "# schema=1" comment line).
extern const char* kReportCsvHeader;
extern const char* kCltCsvHeader;

GModel resolve_model(const ExperimentConfig& config);
TestFunction resolve_test_function(const ExperimentConfig& config);

/// Run the convergence experiment and write the report CSV. Output bytes
/// are deterministic in (config, seed) regardless of thread count.
void run_experiment(const ExperimentConfig& config);
std::string report_to_csv(const ExperimentReport& report);

/// Run the stable-CLT variance check over every n in n_list.
void run_clt_experiment(const ExperimentConfig& config);

/// Fast invariant suite; returns 0 on all-pass, 1 otherwise, naming the
/// first failing invariant on the stream.
int selftest(std::ostream& log);

}  // namespace edgeworth
