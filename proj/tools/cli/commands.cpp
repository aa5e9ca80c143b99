#include "cli/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "treelab/algorithms.hpp"
#include "treelab/crossval.hpp"
#include "treelab/dataset.hpp"
#include "treelab/format.hpp"
#include "treelab/trace.hpp"

namespace treelab::cli {

namespace {

std::size_t parse_count(std::string_view text) {
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw CliError(ExitCode::Usage, "not a count: '" + std::string(text) + "'");
    }
    return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos - start));
        if (pos == std::string_view::npos) {
            return parts;
        }
        start = pos + 1;
    }
}

Dataset load_training(const std::filesystem::path& path, bool has_header) {
    try {
        return load_csv(path, {.has_header = has_header});
    } catch (const DatasetError& e) {
        throw CliError(ExitCode::BadDataset, e.what());
    }
}

Dataset load_query(const std::filesystem::path& path, const Dataset& schema, bool has_header) {
    try {
        return load_csv_with_schema(path, schema, {.has_header = has_header});
    } catch (const SchemaError& e) {
        throw CliError(ExitCode::SchemaMismatch, e.what());
    } catch (const DatasetError& e) {
        throw CliError(ExitCode::BadDataset, e.what());
    }
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw CliError(ExitCode::OutputError, "cannot write '" + path.string() + "'");
    }
    return out;
}

void finish_output(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) {
        throw CliError(ExitCode::OutputError, "error writing '" + path.string() + "'");
    }
}

BaggingParams bagging_params(const ModelOptions& model) {
    BaggingParams params{model.bootstraps, {model.min_count, model.max_depth}, model.seed};
    if (model.bootstraps < 1 || model.min_count < 1) {
        throw CliError(ExitCode::Usage, "bootstraps and min-count must be at least 1");
    }
    return params;
}

std::vector<RowIndex> every_row(const Dataset& data) {
    std::vector<RowIndex> rows(data.row_count());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        rows[r] = static_cast<RowIndex>(r);
    }
    return rows;
}

double mean(std::uint64_t total, std::size_t count) {
    return count == 0 ? 0.0 : static_cast<double>(total) / static_cast<double>(count);
}

}  // namespace

std::filesystem::path plot_path(const std::filesystem::path& report) {
    auto path = report;
    return path.replace_extension(".plot.csv");
}

std::filesystem::path memory_path(const std::filesystem::path& report) {
    auto path = report;
    return path.replace_extension(".memory.csv");
}

std::vector<std::size_t> parse_fold_list(std::string_view text) {
    std::vector<std::size_t> folds;
    for (const auto item : split(text, ',')) {
        const auto range = split(item, ':');
        if (range.size() == 1) {
            folds.push_back(parse_count(item));
            continue;
        }
        if (range.size() != 3) {
            throw CliError(ExitCode::Usage, "fold range must be start:stop:step, got '" + std::string(item) + "'");
        }
        const std::size_t start = parse_count(range[0]);
        const std::size_t stop = parse_count(range[1]);
        const std::size_t step = parse_count(range[2]);
        if (step == 0 || start > stop) {
            throw CliError(ExitCode::Usage, "empty fold range '" + std::string(item) + "'");
        }
        for (std::size_t k = start; k <= stop; k += step) {
            folds.push_back(k);
        }
    }
    return folds;
}

std::vector<Algorithm> parse_algorithm_list(std::string_view text) {
    if (text == "all") {
        return {Algorithm::Eager, Algorithm::Lazy, Algorithm::Batched};
    }
    std::vector<Algorithm> algorithms;
    for (const auto item : split(text, ',')) {
        try {
            const Algorithm a = parse_algorithm(item);
            if (std::find(algorithms.begin(), algorithms.end(), a) == algorithms.end()) {
                algorithms.push_back(a);
            }
        } catch (const std::invalid_argument& e) {
            throw CliError(ExitCode::Usage, e.what());
        }
    }
    return algorithms;
}

void run_benchmark(const BenchmarkOptions& options, std::ostream& log) {
    if (options.algorithms.empty()) {
        throw CliError(ExitCode::Usage, "no algorithms selected");
    }
    if (options.folds.empty()) {
        throw CliError(ExitCode::InvalidFolds, "no fold counts given");
    }
    const Dataset data = load_training(options.dataset, options.model.has_header);
    for (const std::size_t k : options.folds) {
        if (k < 2 || k > data.row_count()) {
            throw CliError(ExitCode::InvalidFolds, "fold count " + std::to_string(k) + " outside [2, " +
                                                       std::to_string(data.row_count()) + "]");
        }
    }
    const BaggingParams params = bagging_params(options.model);

    const auto plot_file = plot_path(options.out);
    const auto memory_file = memory_path(options.out);
    std::ofstream report = open_output(options.out);
    std::ofstream plot = open_output(plot_file);
    std::ofstream memory = open_output(memory_file);
    report << kReportHeader << '\n';
    plot << kPlotHeader << '\n';
    memory << kMemoryHeader << '\n';

    const auto timing = [&](double seconds) {
        return options.record_timing ? format_fixed(seconds, 6) : std::string("NA");
    };

    for (const std::size_t k : options.folds) {
        const FoldPlan plan = make_folds(data.row_count(), k, options.model.seed);
        for (const Algorithm algorithm : options.algorithms) {
            const CrossValidationResult cv = run_cross_validation(data, algorithm, plan, params, options.jobs);

            std::uint64_t peak_sum = 0;
            std::uint64_t peak_max = 0;
            std::uint64_t model_sum = 0;
            std::uint64_t model_max = 0;
            for (const auto& fold : cv.folds) {
                peak_sum += fold.metrics.peak_stack_words;
                peak_max = std::max(peak_max, fold.metrics.peak_stack_words);
                model_sum += fold.metrics.model_words;
                model_max = std::max(model_max, fold.metrics.model_words);
            }
            const std::string tag(algorithm_tag(algorithm));
            report << data.name() << ',' << tag << ',' << k << ',' << params.bootstraps << ','
                   << params.split.min_count << ',' << params.split.max_depth << ',' << options.model.seed << ','
                   << timing(cv.totals.cpu_seconds) << ',' << cv.totals.nodes_explored << ',' << peak_max << ','
                   << model_max << ',' << format_number(cv.accuracy()) << '\n';
            plot << data.name() << ',' << tag << ',' << k << ',' << timing(cv.totals.cpu_seconds) << ','
                 << cv.totals.nodes_explored << ','
                 << format_number(mean(cv.totals.nodes_explored, k * params.bootstraps)) << '\n';
            memory << data.name() << ',' << tag << ',' << k << ',' << format_number(mean(peak_sum, k)) << ','
                   << peak_max << ',' << format_number(mean(model_sum, k)) << ',' << model_max << '\n';

            log << data.name() << ' ' << tag << " k=" << k << " nodes=" << cv.totals.nodes_explored
                << " cpu=" << format_fixed(cv.totals.cpu_seconds, 3) << "s accuracy=" << format_number(cv.accuracy())
                << (cv.totals.cpu_time_is_wall_clock ? " (wall clock)" : "") << '\n';
        }
    }
    finish_output(report, options.out);
    finish_output(plot, plot_file);
    finish_output(memory, memory_file);
}

void run_predict(const PredictOptions& options) {
    const Dataset train = load_training(options.train, options.model.has_header);
    const Dataset test = load_query(options.test, train, options.model.has_header);
    const BaggingParams params = bagging_params(options.model);
    std::ofstream out = open_output(options.out);

    const FitPredictResult result =
        fit_predict(options.algorithm, train, every_row(train), test, every_row(test), params);
    for (const auto& name : train.class_names()) {
        out << "p_" << name << ',';
    }
    out << "predicted\n";
    for (std::size_t j = 0; j < result.probabilities.rows(); ++j) {
        for (const double p : result.probabilities.row(j)) {
            out << format_number(p) << ',';
        }
        out << train.class_names()[result.probabilities.argmax(j)] << '\n';
    }
    finish_output(out, options.out);
}

void run_trace(const TraceOptions& options) {
    const Dataset train = load_training(options.train, options.model.has_header);
    const Dataset test = load_query(options.test, train, options.model.has_header);
    const BaggingParams params = bagging_params(options.model);

    TraceLog trace;
    fit_predict(options.algorithm, train, every_row(train), test, every_row(test), params, &trace);
    if (trace.size() > options.max_lines && !options.force) {
        throw CliError(ExitCode::TraceTooLarge, "trace has " + std::to_string(trace.size()) +
                                                    " lines, above the limit of " +
                                                    std::to_string(options.max_lines) + "; pass --force");
    }
    std::ofstream out = open_output(options.out);
    write_trace(out, trace, options.algorithm);
    finish_output(out, options.out);
}

namespace {

void add_model_flags(CLI::App& command, ModelOptions& model, bool no_header_flag = true) {
    command.add_option("--bootstraps,-b", model.bootstraps, "Number of bootstrap rounds")->capture_default_str();
    command.add_option("--min-count,-c", model.min_count, "Minimum training rows to expand a node")
        ->capture_default_str();
    command.add_option("--max-depth,-d", model.max_depth, "Maximum expansion depth (root = 0)")->capture_default_str();
    command.add_option("--seed", model.seed, "Base random seed (TREELAB_SEED overrides)")->capture_default_str();
    if (no_header_flag) {
        command.add_flag("--no-header{false}", model.has_header, "CSV files have no header row");
    }
}

std::uint64_t seed_override(std::uint64_t fallback) {
    const char* env = std::getenv("TREELAB_SEED");
    if (env == nullptr || *env == '\0') {
        return fallback;
    }
    std::uint64_t seed = 0;
    const std::string_view text(env);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), seed);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw CliError(ExitCode::Usage, "TREELAB_SEED is not an unsigned integer: '" + std::string(text) + "'");
    }
    return seed;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"treelab: eager, lazy and batched lazy bagged decision trees"};
    app.require_subcommand(1);

    BenchmarkOptions bench;
    std::string bench_algorithms = "all";
    std::string bench_folds = "10";
    auto* benchmark = app.add_subcommand("benchmark", "k-fold cross-validation cost benchmark");
    benchmark->add_option("--dataset", bench.dataset, "Labeled CSV dataset")->required();
    benchmark->add_option("--algorithms", bench_algorithms, "dt,lazy,batched or all")->capture_default_str();
    benchmark->add_option("--folds", bench_folds, "Fold counts, e.g. 10,40 or 10:400:10")->capture_default_str();
    benchmark->add_option("--jobs", bench.jobs, "Folds run in parallel")->capture_default_str();
    benchmark->add_option("--out", bench.out, "Report CSV path")->capture_default_str();
    benchmark->add_flag("--no-timing{false}", bench.record_timing, "Write NA instead of CPU seconds");
    add_model_flags(*benchmark, bench.model);

    PredictOptions predict;
    std::string predict_algorithm = "batched";
    auto* predict_cmd = app.add_subcommand("predict", "Train on one CSV and write class probabilities for another");
    predict_cmd->add_option("--train", predict.train, "Labeled training CSV")->required();
    predict_cmd->add_option("--test", predict.test, "Test CSV (class column optional)")->required();
    predict_cmd->add_option("--algorithm", predict_algorithm, "dt, lazy or batched")->capture_default_str();
    predict_cmd->add_option("--out", predict.out, "Prediction CSV path")->capture_default_str();
    add_model_flags(*predict_cmd, predict.model);

    TraceOptions trace;
    std::string trace_algorithm = "batched";
    auto* trace_cmd = app.add_subcommand("trace", "Write the node exploration sequence of one run");
    trace_cmd->add_option("--train", trace.train, "Labeled training CSV")->required();
    trace_cmd->add_option("--test", trace.test, "Test CSV (class column optional)")->required();
    trace_cmd->add_option("--algorithm", trace_algorithm, "dt, lazy or batched")->capture_default_str();
    trace_cmd->add_option("--out", trace.out, "Trace file path")->capture_default_str();
    trace_cmd->add_option("--max-lines", trace.max_lines, "Refuse larger traces unless --force")
        ->capture_default_str();
    trace_cmd->add_flag("--force", trace.force, "Write traces above --max-lines");
    add_model_flags(*trace_cmd, trace.model);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int status = app.exit(e);
        return status == 0 ? 0 : static_cast<int>(ExitCode::Usage);
    }

    try {
        if (*benchmark) {
            bench.algorithms = parse_algorithm_list(bench_algorithms);
            bench.folds = parse_fold_list(bench_folds);
            bench.model.seed = seed_override(bench.model.seed);
            run_benchmark(bench, std::cerr);
        } else if (*predict_cmd) {
            predict.algorithm = parse_algorithm_list(predict_algorithm).at(0);
            predict.model.seed = seed_override(predict.model.seed);
            run_predict(predict);
        } else if (*trace_cmd) {
            trace.algorithm = parse_algorithm_list(trace_algorithm).at(0);
            trace.model.seed = seed_override(trace.model.seed);
            run_trace(trace);
        }
    } catch (const CliError& e) {
        std::cerr << "treelab: " << e.what() << '\n';
        return static_cast<int>(e.code());
    } catch (const std::exception& e) {
        std::cerr << "treelab: " << e.what() << '\n';
        return static_cast<int>(ExitCode::Internal);
    }
    return 0;
}

}  // namespace treelab::cli
