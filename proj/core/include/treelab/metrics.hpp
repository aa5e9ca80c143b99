#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <utility>

namespace treelab {

enum class Algorithm { Eager, Lazy, Batched };

/// Report tag: "DT", "L-DT" or "BL-DT".
std::string_view algorithm_tag(Algorithm algorithm) noexcept;
/// Command-line name: "dt", "lazy" or "batched".
std::string_view algorithm_name(Algorithm algorithm) noexcept;
Algorithm parse_algorithm(std::string_view name);

/// Word model: one word per stored row index, four per stored tree node.
inline constexpr std::uint64_t kWordsPerIndex = 1;
inline constexpr std::uint64_t kWordsPerNode = 4;

/// Cost counters for one algorithm run.
struct RunMetrics {
    Algorithm algorithm = Algorithm::Eager;
    std::uint64_t nodes_explored = 0;
    std::uint64_t peak_stack_words = 0;
    std::uint64_t model_words = 0;  // eager only
    double cpu_seconds = 0.0;
    bool cpu_time_is_wall_clock = false;

    /// Sums nodes, model words and CPU time; keeps the larger peak.
    RunMetrics& merge(const RunMetrics& other) noexcept;

    friend bool operator==(const RunMetrics&, const RunMetrics&) = default;
};

/// Tracks live stack words for frames holding training and test row indices.
class StackMeter {
public:
    void charge_frame(std::uint64_t train_count, std::uint64_t test_count) noexcept;
    /// Throws std::logic_error if more words are released than are live.
    void release_frame(std::uint64_t train_count, std::uint64_t test_count);

    std::uint64_t live_words() const noexcept { return live_; }
    std::uint64_t peak_words() const noexcept { return peak_; }

private:
    std::uint64_t live_ = 0;
    std::uint64_t peak_ = 0;
};

/// Charges a frame for the lifetime of the guard.
class FrameCharge {
public:
    FrameCharge(StackMeter& meter, std::uint64_t train_count, std::uint64_t test_count)
        : meter_(meter), train_(train_count), test_(test_count) {
        meter_.charge_frame(train_, test_);
    }
    ~FrameCharge() { meter_.release_frame(train_, test_); }

    FrameCharge(const FrameCharge&) = delete;
    FrameCharge& operator=(const FrameCharge&) = delete;

private:
    StackMeter& meter_;
    std::uint64_t train_;
    std::uint64_t test_;
};

/// User + kernel CPU time of the calling thread. Falls back to a monotonic
/// wall clock where the platform has no per-thread CPU accounting.
class CpuTimer {
public:
    CpuTimer() noexcept;

    double elapsed_seconds() const noexcept;
    bool uses_wall_clock() const noexcept { return wall_clock_; }

private:
    double start_ = 0.0;
    bool wall_clock_ = false;
};

/// Runs fn and returns {its CPU seconds, whether the wall clock was used}.
template <typename Fn>
std::pair<double, bool> cpu_time(Fn&& fn) {
    CpuTimer timer;
    std::forward<Fn>(fn)();
    return {timer.elapsed_seconds(), timer.uses_wall_clock()};
}

}  // namespace treelab
