#include "treelab/splitcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace treelab {

namespace {

double entropy_of(std::span<const std::uint64_t> counts, std::uint64_t total) {
    const double n = static_cast<double>(total);
    double h = 0.0;
    for (const std::uint64_t c : counts) {
        if (c > 0) {
            const double p = static_cast<double>(c) / n;
            h -= p * std::log2(p);
        }
    }
    return h;
}

// c * log2(c) for integer counts, grown on demand.
class XLogXTable {
public:
    void reserve(std::uint64_t max_count) {
        if (max_count < values_.size()) {
            return;
        }
        const std::size_t first = values_.size();
        values_.resize(max_count + 1);
        for (std::size_t c = std::max<std::size_t>(first, 1); c < values_.size(); ++c) {
            values_[c] = static_cast<double>(c) * std::log2(static_cast<double>(c));
        }
    }
    double operator[](std::uint64_t count) const noexcept { return values_[count]; }

private:
    std::vector<double> values_{0.0};
};

XLogXTable& xlogx() {
    thread_local XLogXTable table;
    return table;
}

// n * H(side) = n log2 n - sum c log2 c, so the weighted child entropy is
// (1/n) * sum over sides of (n_s log2 n_s - sum c log2 c).
double side_term(const XLogXTable& table, std::span<const std::uint64_t> counts, std::uint64_t total) {
    double sum = table[total];
    for (const std::uint64_t c : counts) {
        sum -= table[c];
    }
    return sum;
}

double gain_kernel(double parent_entropy, std::uint64_t parent_total,
                   std::span<const std::uint64_t> invalid_counts, std::uint64_t invalid_total,
                   std::span<const std::uint64_t> valid_counts, std::uint64_t valid_total) {
    const XLogXTable& table = xlogx();
    return parent_entropy - (side_term(table, invalid_counts, invalid_total) +
                             side_term(table, valid_counts, valid_total)) /
                                static_cast<double>(parent_total);
}

double midpoint_threshold(double lo, double hi) {
    const double mid = std::midpoint(lo, hi);
    // Adjacent doubles can round up to hi; lo keeps "<= threshold" equal to "<= lo".
    return mid < hi ? mid : lo;
}

struct Scratch {
    std::vector<std::uint64_t> keys;
    std::vector<std::uint64_t> bucket_counts;  // rank-major, class-minor
    std::vector<std::uint64_t> valid;
    std::vector<std::uint64_t> invalid;
};

Scratch& scratch() {
    thread_local Scratch s;
    return s;
}

class CandidateTracker {
public:
    void offer(const Condition& cond, double gain) {
        if (!best_ || gain > best_->gain + kGainTolerance) {
            best_ = ScoredCondition{cond, gain};
        }
    }
    std::optional<ScoredCondition> result() const {
        if (!best_ || best_->gain <= kGainTolerance) {
            return std::nullopt;
        }
        return best_;
    }

private:
    std::optional<ScoredCondition> best_;
};

// Evaluates every "value <= threshold" split of one numeric attribute given
// per-rank class counts visited in ascending rank order.
template <typename ForEachRank>
void sweep_numeric(std::size_t attribute, std::span<const double> distinct, const LabelHistogram& parent,
                   double parent_entropy, ForEachRank&& for_each_rank, CandidateTracker& tracker) {
    auto& s = scratch();
    const std::size_t h = parent.class_count();
    s.valid.assign(h, 0);
    s.invalid.resize(h);
    std::uint64_t valid_total = 0;
    std::optional<std::uint32_t> previous;
    for_each_rank([&](std::uint32_t rank, std::span<const std::uint64_t> counts, std::uint64_t total) {
        if (previous) {
            // Boundary between previous and rank: rows so far form the valid side.
            for (std::size_t f = 0; f < h; ++f) {
                s.invalid[f] = parent.counts()[f] - s.valid[f];
            }
            const double gain = gain_kernel(parent_entropy, parent.total(), s.invalid,
                                            parent.total() - valid_total, s.valid, valid_total);
            tracker.offer(Condition::numeric_le(attribute, midpoint_threshold(distinct[*previous], distinct[rank])),
                          gain);
        }
        for (std::size_t f = 0; f < h; ++f) {
            s.valid[f] += counts[f];
        }
        valid_total += total;
        previous = rank;
    });
}

void scan_numeric(const Dataset& data, std::span<const RowIndex> rows, std::size_t attribute,
                  const LabelHistogram& parent, double parent_entropy, CandidateTracker& tracker) {
    auto& s = scratch();
    const std::size_t h = parent.class_count();
    const auto distinct = data.distinct_values(attribute);
    const std::size_t ranks = distinct.size();

    if (ranks * h <= 4 * rows.size()) {
        // Dense counting over every distinct value of the column.
        s.bucket_counts.assign(ranks * h, 0);
        for (const RowIndex r : rows) {
            ++s.bucket_counts[data.rank(r, attribute) * h + data.label(r)];
        }
        sweep_numeric(attribute, distinct, parent, parent_entropy,
                      [&](auto&& visit) {
                          for (std::uint32_t rank = 0; rank < ranks; ++rank) {
                              const std::span<const std::uint64_t> counts(&s.bucket_counts[rank * h], h);
                              const std::uint64_t total = std::accumulate(counts.begin(), counts.end(),
                                                                          std::uint64_t{0});
                              if (total > 0) {
                                  visit(rank, counts, total);
                              }
                          }
                      },
                      tracker);
        return;
    }

    // Sparse: sort (rank, label) keys of the rows present.
    s.keys.resize(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        s.keys[i] = (static_cast<std::uint64_t>(data.rank(rows[i], attribute)) << 32) | data.label(rows[i]);
    }
    std::sort(s.keys.begin(), s.keys.end());
    std::vector<std::uint64_t> counts(h);
    sweep_numeric(attribute, distinct, parent, parent_entropy,
                  [&](auto&& visit) {
                      std::size_t i = 0;
                      while (i < s.keys.size()) {
                          const auto rank = static_cast<std::uint32_t>(s.keys[i] >> 32);
                          std::fill(counts.begin(), counts.end(), 0);
                          std::uint64_t total = 0;
                          for (; i < s.keys.size() && static_cast<std::uint32_t>(s.keys[i] >> 32) == rank; ++i) {
                              ++counts[static_cast<std::uint32_t>(s.keys[i])];
                              ++total;
                          }
                          visit(rank, counts, total);
                      }
                  },
                  tracker);
}

void scan_categorical(const Dataset& data, std::span<const RowIndex> rows, std::size_t attribute,
                      const LabelHistogram& parent, double parent_entropy, CandidateTracker& tracker) {
    auto& s = scratch();
    const std::size_t h = parent.class_count();
    const std::size_t codes = data.attribute(attribute).categories.size();
    s.bucket_counts.assign(codes * h, 0);
    for (const RowIndex r : rows) {
        ++s.bucket_counts[data.rank(r, attribute) * h + data.label(r)];
    }
    s.invalid.resize(h);
    for (std::uint32_t code = 0; code < codes; ++code) {
        const std::span<const std::uint64_t> valid(&s.bucket_counts[code * h], h);
        const std::uint64_t valid_total = std::accumulate(valid.begin(), valid.end(), std::uint64_t{0});
        if (valid_total == 0 || valid_total == parent.total()) {
            continue;
        }
        for (std::size_t f = 0; f < h; ++f) {
            s.invalid[f] = parent.counts()[f] - valid[f];
        }
        const double gain = gain_kernel(parent_entropy, parent.total(), s.invalid,
                                        parent.total() - valid_total, valid, valid_total);
        tracker.offer(Condition::categorical_eq(attribute, code), gain);
    }
}

void require_non_empty(const LabelHistogram& hist) {
    if (hist.total() == 0) {
        throw std::invalid_argument("empty label histogram");
    }
}

}  // namespace

LabelHistogram::LabelHistogram(std::initializer_list<std::uint64_t> counts) : counts_(counts) {
    total_ = std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

LabelHistogram LabelHistogram::of(const Dataset& data, std::span<const RowIndex> rows) {
    LabelHistogram hist(data.class_count());
    for (const RowIndex r : rows) {
        ++hist.counts_[data.label(r)];
    }
    hist.total_ = rows.size();
    return hist;
}

LabelHistogram& LabelHistogram::operator+=(const LabelHistogram& other) {
    if (other.counts_.size() != counts_.size()) {
        throw std::invalid_argument("histogram class counts differ");
    }
    for (std::size_t f = 0; f < counts_.size(); ++f) {
        counts_[f] += other.counts_[f];
    }
    total_ += other.total_;
    return *this;
}

double entropy(const LabelHistogram& hist) {
    require_non_empty(hist);
    return entropy_of(hist.counts(), hist.total());
}

double information_gain(const LabelHistogram& parent, const LabelHistogram& invalid_side,
                        const LabelHistogram& valid_side) {
    if (invalid_side.total() == 0 || valid_side.total() == 0) {
        throw std::invalid_argument("information gain needs two non-empty sides");
    }
    if (invalid_side + valid_side != parent) {
        throw std::invalid_argument("split sides do not sum to the parent histogram");
    }
    xlogx().reserve(parent.total());
    return gain_kernel(entropy(parent), parent.total(), invalid_side.counts(), invalid_side.total(),
                       valid_side.counts(), valid_side.total());
}

ClassIndex majority_class(const LabelHistogram& hist) {
    require_non_empty(hist);
    const auto counts = hist.counts();
    return static_cast<ClassIndex>(std::max_element(counts.begin(), counts.end()) - counts.begin());
}

bool is_pure(const LabelHistogram& hist) {
    require_non_empty(hist);
    const auto counts = hist.counts();
    return std::count_if(counts.begin(), counts.end(), [](std::uint64_t c) { return c > 0; }) == 1;
}

void SplitParams::validate() const {
    if (min_count < 1) {
        throw std::invalid_argument("min_count must be at least 1");
    }
}

std::optional<ScoredCondition> best_condition(const Dataset& data, std::span<const RowIndex> rows) {
    if (rows.empty()) {
        throw std::invalid_argument("best_condition on an empty row set");
    }
    const LabelHistogram parent = LabelHistogram::of(data, rows);
    const double parent_entropy = entropy(parent);
    xlogx().reserve(parent.total());
    CandidateTracker tracker;
    for (std::size_t a = 0; a < data.attribute_count(); ++a) {
        if (data.attribute(a).kind == AttributeKind::Numeric) {
            scan_numeric(data, rows, a, parent, parent_entropy, tracker);
        } else {
            scan_categorical(data, rows, a, parent, parent_entropy, tracker);
        }
    }
    return tracker.result();
}

Partition partition(const Condition& cond, const Dataset& data, std::span<const RowIndex> rows) {
    Partition out;
    for (const RowIndex r : rows) {
        (cond.holds(data, r) ? out.valid : out.invalid).push_back(r);
    }
    return out;
}

}  // namespace treelab
