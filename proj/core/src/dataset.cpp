#include "treelab/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <optional>
#include <string_view>
#include <unordered_map>

#include "treelab/rng.hpp"

namespace treelab {

namespace {

constexpr std::uint32_t kUnknownRank = std::numeric_limits<std::uint32_t>::max();

std::string_view trim(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = text.find_last_not_of(" \t\r\n");
    return text.substr(first, last - first + 1);
}

// Splits one CSV record. Double-quoted fields may contain commas and "" escapes.
std::vector<std::string> split_record(std::string_view line) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    bool was_quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(ch);
            }
        } else if (ch == '"' && trim(field).empty()) {
            field.clear();
            quoted = true;
            was_quoted = true;
        } else if (ch == ',') {
            fields.emplace_back(was_quoted ? field : std::string(trim(field)));
            field.clear();
            was_quoted = false;
        } else {
            field.push_back(ch);
        }
    }
    fields.emplace_back(was_quoted ? field : std::string(trim(field)));
    return fields;
}

bool is_missing(std::string_view cell) { return cell.empty() || cell == "?"; }

std::optional<double> parse_number(std::string_view cell) {
    double value = 0.0;
    const char* begin = cell.data();
    const char* end = cell.data() + cell.size();
    if (begin != end && *begin == '+') {
        ++begin;
    }
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
        return std::nullopt;
    }
    return value;
}

std::string default_column_name(std::size_t index, std::size_t count) {
    return index + 1 == count ? "class" : "x" + std::to_string(index);
}

}  // namespace

Dataset::Dataset(std::string name, std::vector<Attribute> attributes,
                 std::vector<std::vector<double>> columns, std::vector<ClassIndex> labels,
                 std::vector<std::string> class_names)
    : name_(std::move(name)),
      attributes_(std::move(attributes)),
      columns_(std::move(columns)),
      labels_(std::move(labels)),
      class_names_(std::move(class_names)) {
    if (attributes_.empty()) {
        throw DatasetError("dataset needs at least one attribute");
    }
    if (columns_.size() != attributes_.size()) {
        throw DatasetError("column count does not match attribute count");
    }
    row_count_ = columns_.front().size();
    if (row_count_ == 0) {
        throw DatasetError("dataset has no rows");
    }
    if (row_count_ > std::numeric_limits<RowIndex>::max()) {
        throw DatasetError("dataset has too many rows");
    }
    if (class_names_.size() < 2) {
        throw DatasetError("dataset needs at least two classes");
    }
    if (!labels_.empty() && labels_.size() != row_count_) {
        throw DatasetError("label count does not match row count");
    }
    for (const ClassIndex label : labels_) {
        if (label >= class_names_.size()) {
            throw DatasetError("label out of range");
        }
    }

    ranks_.resize(columns_.size());
    distinct_.resize(columns_.size());
    for (std::size_t a = 0; a < columns_.size(); ++a) {
        const auto& column = columns_[a];
        if (column.size() != row_count_) {
            throw DatasetError("ragged column '" + attributes_[a].name + "'");
        }
        auto& ranks = ranks_[a];
        auto& distinct = distinct_[a];
        ranks.resize(row_count_);
        if (attributes_[a].kind == AttributeKind::Categorical) {
            const std::size_t categories = attributes_[a].categories.size();
            distinct.resize(categories);
            std::iota(distinct.begin(), distinct.end(), 0.0);
            for (std::size_t r = 0; r < row_count_; ++r) {
                const double code = column[r];
                if (code == kUnknownCategory) {
                    ranks[r] = kUnknownRank;
                    continue;
                }
                if (code < 0 || code >= static_cast<double>(categories) || code != std::floor(code)) {
                    throw DatasetError("invalid category code in column '" + attributes_[a].name + "'");
                }
                ranks[r] = static_cast<std::uint32_t>(code);
            }
        } else {
            for (const double v : column) {
                if (!std::isfinite(v)) {
                    throw DatasetError("non-finite value in column '" + attributes_[a].name + "'");
                }
            }
            distinct.assign(column.begin(), column.end());
            std::sort(distinct.begin(), distinct.end());
            distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
            for (std::size_t r = 0; r < row_count_; ++r) {
                const auto it = std::lower_bound(distinct.begin(), distinct.end(), column[r]);
                ranks[r] = static_cast<std::uint32_t>(it - distinct.begin());
            }
        }
    }
}

namespace {

CsvTable read_table(const std::filesystem::path& path, const CsvOptions& options, std::size_t min_width) {
    std::ifstream in(path);
    if (!in) {
        throw DatasetError("cannot open '" + path.string() + "'");
    }

    CsvTable table;
    std::string line;
    std::size_t width = 0;
    bool header_pending = options.has_header;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (trim(line).empty()) {
            continue;
        }
        auto fields = split_record(line);
        if (width == 0) {
            width = fields.size();
            if (width < min_width) {
                throw DatasetError("'" + path.string() + "' needs at least " + std::to_string(min_width) +
                                   " columns");
            }
        } else if (fields.size() != width) {
            throw DatasetError("'" + path.string() + "' line " + std::to_string(line_number) +
                               ": expected " + std::to_string(width) + " fields, got " +
                               std::to_string(fields.size()));
        }
        if (header_pending) {
            table.column_names = std::move(fields);
            header_pending = false;
            continue;
        }
        if (std::any_of(fields.begin(), fields.end(),
                        [](const std::string& cell) { return is_missing(cell); })) {
            ++table.dropped_rows;
            continue;
        }
        table.rows.push_back(std::move(fields));
    }
    if (width == 0) {
        throw DatasetError("'" + path.string() + "' is empty");
    }
    if (table.column_names.empty()) {
        for (std::size_t c = 0; c < width; ++c) {
            table.column_names.push_back(default_column_name(c, width));
        }
    }

    const std::size_t typed = std::max<std::size_t>(width, 2) - 1;
    table.kinds.assign(typed, AttributeKind::Numeric);
    for (std::size_t c = 0; c < typed; ++c) {
        for (const auto& row : table.rows) {
            if (!parse_number(row[c])) {
                table.kinds[c] = AttributeKind::Categorical;
                break;
            }
        }
    }
    return table;
}

}  // namespace

CsvTable read_csv_table(const std::filesystem::path& path, const CsvOptions& options) {
    return read_table(path, options, 2);
}

Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options) {
    CsvTable table = read_csv_table(path, options);
    if (table.rows.empty()) {
        throw DatasetError("'" + path.string() + "' has no data rows after dropping missing values");
    }
    const std::size_t m = table.kinds.size();
    const std::size_t n = table.rows.size();

    std::vector<Attribute> attributes(m);
    std::vector<std::vector<double>> columns(m, std::vector<double>(n));
    for (std::size_t c = 0; c < m; ++c) {
        attributes[c].name = table.column_names[c];
        attributes[c].kind = table.kinds[c];
        std::unordered_map<std::string, std::size_t> codes;
        for (std::size_t r = 0; r < n; ++r) {
            const std::string& cell = table.rows[r][c];
            if (table.kinds[c] == AttributeKind::Numeric) {
                columns[c][r] = *parse_number(cell);
                continue;
            }
            auto [it, inserted] = codes.try_emplace(cell, attributes[c].categories.size());
            if (inserted) {
                attributes[c].categories.push_back(cell);
            }
            columns[c][r] = static_cast<double>(it->second);
        }
    }

    std::vector<std::string> class_names;
    std::unordered_map<std::string, ClassIndex> class_codes;
    std::vector<ClassIndex> labels(n);
    for (std::size_t r = 0; r < n; ++r) {
        const std::string& cell = table.rows[r][m];
        auto [it, inserted] = class_codes.try_emplace(cell, static_cast<ClassIndex>(class_names.size()));
        if (inserted) {
            class_names.push_back(cell);
        }
        labels[r] = it->second;
    }
    if (class_names.size() < 2) {
        throw DatasetError("'" + path.string() + "' has fewer than 2 distinct classes");
    }
    return Dataset(path.stem().string(), std::move(attributes), std::move(columns), std::move(labels),
                   std::move(class_names));
}

Dataset load_csv_with_schema(const std::filesystem::path& path, const Dataset& schema,
                             const CsvOptions& options) {
    CsvTable table = read_table(path, options, 1);
    if (table.rows.empty()) {
        throw DatasetError("'" + path.string() + "' has no data rows after dropping missing values");
    }
    const std::size_t m = schema.attribute_count();
    const std::size_t width = table.column_names.size();
    const bool labeled = width == m + 1;
    if (!labeled && width != m) {
        throw SchemaError("'" + path.string() + "' has " + std::to_string(width) + " columns, expected " +
                          std::to_string(m) + " or " + std::to_string(m + 1));
    }
    if (options.has_header) {
        for (std::size_t c = 0; c < m; ++c) {
            if (table.column_names[c] != schema.attribute(c).name) {
                throw SchemaError("column " + std::to_string(c) + " is '" + table.column_names[c] +
                                  "', expected '" + schema.attribute(c).name + "'");
            }
        }
    }

    const std::size_t n = table.rows.size();
    std::vector<std::vector<double>> columns(m, std::vector<double>(n));
    for (std::size_t c = 0; c < m; ++c) {
        const Attribute& attribute = schema.attribute(c);
        for (std::size_t r = 0; r < n; ++r) {
            const std::string& cell = table.rows[r][c];
            if (attribute.kind == AttributeKind::Numeric) {
                const auto number = parse_number(cell);
                if (!number) {
                    throw SchemaError("non-numeric value '" + cell + "' in numeric column '" +
                                      attribute.name + "'");
                }
                columns[c][r] = *number;
            } else {
                const auto& cats = attribute.categories;
                const auto it = std::find(cats.begin(), cats.end(), cell);
                columns[c][r] = it == cats.end() ? kUnknownCategory : static_cast<double>(it - cats.begin());
            }
        }
    }

    std::vector<ClassIndex> labels;
    if (labeled) {
        const auto& names = schema.class_names();
        labels.resize(n);
        for (std::size_t r = 0; r < n; ++r) {
            const auto it = std::find(names.begin(), names.end(), table.rows[r][m]);
            if (it == names.end()) {
                throw SchemaError("unknown class '" + table.rows[r][m] + "'");
            }
            labels[r] = static_cast<ClassIndex>(it - names.begin());
        }
    }
    return Dataset(path.stem().string(), schema.attributes(), std::move(columns), std::move(labels),
                   schema.class_names());
}

std::vector<RowIndex> FoldPlan::test_rows(std::size_t fold) const {
    std::vector<RowIndex> rows;
    for (std::size_t r = 0; r < assignment.size(); ++r) {
        if (assignment[r] == fold) {
            rows.push_back(static_cast<RowIndex>(r));
        }
    }
    return rows;
}

std::vector<RowIndex> FoldPlan::train_rows(std::size_t fold) const {
    std::vector<RowIndex> rows;
    for (std::size_t r = 0; r < assignment.size(); ++r) {
        if (assignment[r] != fold) {
            rows.push_back(static_cast<RowIndex>(r));
        }
    }
    return rows;
}

std::size_t FoldPlan::fold_size(std::size_t fold) const {
    return static_cast<std::size_t>(std::count(assignment.begin(), assignment.end(), fold));
}

FoldPlan make_folds(std::size_t n_rows, std::size_t k, std::uint64_t seed) {
    if (k < 2 || k > n_rows) {
        throw std::invalid_argument("fold count " + std::to_string(k) + " outside [2, " +
                                    std::to_string(n_rows) + "]");
    }
    std::vector<RowIndex> order(n_rows);
    std::iota(order.begin(), order.end(), RowIndex{0});
    SplitMix64 rng(seed);
    for (std::size_t i = n_rows - 1; i > 0; --i) {
        std::swap(order[i], order[rng.bounded(i + 1)]);
    }
    FoldPlan plan{k, seed, std::vector<std::uint32_t>(n_rows)};
    for (std::size_t i = 0; i < n_rows; ++i) {
        plan.assignment[order[i]] = static_cast<std::uint32_t>(i % k);
    }
    return plan;
}

std::vector<RowIndex> bootstrap(std::span<const RowIndex> train_indices, std::uint64_t seed) {
    if (train_indices.empty()) {
        throw std::invalid_argument("bootstrap of an empty training set");
    }
    SplitMix64 rng(seed);
    std::vector<RowIndex> sample(train_indices.size());
    for (auto& slot : sample) {
        slot = train_indices[rng.bounded(train_indices.size())];
    }
    return sample;
}

}  // namespace treelab
