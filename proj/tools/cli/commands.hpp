#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "treelab/metrics.hpp"

namespace treelab::cli {

/// Process exit statuses; each failure class has its own code.
enum class ExitCode : int {
    Ok = 0,
    Internal = 1,
    Usage = 2,
    BadDataset = 3,
    InvalidFolds = 4,
    OutputError = 5,
    SchemaMismatch = 6,
    TraceTooLarge = 7,
};

class CliError : public std::runtime_error {
public:
    CliError(ExitCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ExitCode code() const noexcept { return code_; }

private:
    ExitCode code_;
};

inline constexpr std::string_view kReportHeader =
    "dataset,algorithm,k,b,c,d,seed,cpu_seconds,nodes_explored,peak_stack_words,model_words,accuracy";
inline constexpr std::string_view kPlotHeader = "dataset,algorithm,k,cpu_seconds,nodes_explored,mean_nodes_per_tree";
inline constexpr std::string_view kMemoryHeader =
    "dataset,algorithm,k,mean_peak_stack_words,max_peak_stack_words,mean_model_words,max_model_words";

struct ModelOptions {
    std::size_t bootstraps = 100;
    std::size_t min_count = 5;
    std::size_t max_depth = 20;
    std::uint64_t seed = 0;
    bool has_header = true;
};

struct BenchmarkOptions {
    std::filesystem::path dataset;
    std::vector<Algorithm> algorithms{Algorithm::Eager, Algorithm::Lazy, Algorithm::Batched};
    std::vector<std::size_t> folds{10};
    ModelOptions model;
    std::size_t jobs = 1;
    std::filesystem::path out = "benchmark.csv";
    bool record_timing = true;
};

struct PredictOptions {
    std::filesystem::path train;
    std::filesystem::path test;
    Algorithm algorithm = Algorithm::Batched;
    ModelOptions model;
    std::filesystem::path out = "predictions.csv";
};

struct TraceOptions {
    std::filesystem::path train;
    std::filesystem::path test;
    Algorithm algorithm = Algorithm::Batched;
    ModelOptions model{1, 5, 20, 0, true};
    std::filesystem::path out = "trace.txt";
    std::size_t max_lines = 10'000;
    bool force = false;
};

/// Companion files written next to the benchmark report.
std::filesystem::path plot_path(const std::filesystem::path& report);
std::filesystem::path memory_path(const std::filesystem::path& report);

/// "10,40" or ranges "10:400:10" (start:stop:step, inclusive), comma-separated.
std::vector<std::size_t> parse_fold_list(std::string_view text);
/// "dt,lazy,batched" or "all".
std::vector<Algorithm> parse_algorithm_list(std::string_view text);

void run_benchmark(const BenchmarkOptions& options, std::ostream& log);
void run_predict(const PredictOptions& options);
void run_trace(const TraceOptions& options);

/// Full command-line entry point; returns the process exit status.
int run_cli(int argc, const char* const* argv);

}  // namespace treelab::cli
