#include "treelab/metrics.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>
#include <string>

#if defined(__linux__)
#include <sys/resource.h>
#endif

namespace treelab {

namespace {

bool thread_cpu_seconds(double& out) noexcept {
#if defined(__linux__) && defined(RUSAGE_THREAD)
    rusage usage{};
    if (getrusage(RUSAGE_THREAD, &usage) != 0) {
        return false;
    }
    const auto seconds = [](const timeval& tv) {
        return static_cast<double>(tv.tv_sec) + static_cast<double>(tv.tv_usec) * 1e-6;
    };
    out = seconds(usage.ru_utime) + seconds(usage.ru_stime);
    return true;
#else
    (void)out;
    return false;
#endif
}

double wall_seconds() noexcept {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

}  // namespace

std::string_view algorithm_tag(Algorithm algorithm) noexcept {
    switch (algorithm) {
        case Algorithm::Eager: return "DT";
        case Algorithm::Lazy: return "L-DT";
        case Algorithm::Batched: return "BL-DT";
    }
    return "?";
}

std::string_view algorithm_name(Algorithm algorithm) noexcept {
    switch (algorithm) {
        case Algorithm::Eager: return "dt";
        case Algorithm::Lazy: return "lazy";
        case Algorithm::Batched: return "batched";
    }
    return "?";
}

Algorithm parse_algorithm(std::string_view name) {
    for (const Algorithm a : {Algorithm::Eager, Algorithm::Lazy, Algorithm::Batched}) {
        if (name == algorithm_name(a) || name == algorithm_tag(a)) {
            return a;
        }
    }
    throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

RunMetrics& RunMetrics::merge(const RunMetrics& other) noexcept {
    nodes_explored += other.nodes_explored;
    peak_stack_words = std::max(peak_stack_words, other.peak_stack_words);
    model_words += other.model_words;
    cpu_seconds += other.cpu_seconds;
    cpu_time_is_wall_clock = cpu_time_is_wall_clock || other.cpu_time_is_wall_clock;
    return *this;
}

void StackMeter::charge_frame(std::uint64_t train_count, std::uint64_t test_count) noexcept {
    live_ += (train_count + test_count) * kWordsPerIndex;
    peak_ = std::max(peak_, live_);
}

void StackMeter::release_frame(std::uint64_t train_count, std::uint64_t test_count) {
    const std::uint64_t words = (train_count + test_count) * kWordsPerIndex;
    if (words > live_) {
        throw std::logic_error("stack accounting: releasing " + std::to_string(words) + " words with only " +
                               std::to_string(live_) + " live");
    }
    live_ -= words;
}

CpuTimer::CpuTimer() noexcept {
    wall_clock_ = !thread_cpu_seconds(start_);
    if (wall_clock_) {
        start_ = wall_seconds();
    }
}

double CpuTimer::elapsed_seconds() const noexcept {
    double now = 0.0;
    if (wall_clock_ || !thread_cpu_seconds(now)) {
        now = wall_seconds();
    }
    return std::max(0.0, now - start_);
}

}  // namespace treelab
