#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace treelab {

using RowIndex = std::uint32_t;
using ClassIndex = std::uint32_t;

enum class AttributeKind { Numeric, Categorical };

/// Category code stored for a value that the training schema has never seen.
inline constexpr double kUnknownCategory = -1.0;

struct Attribute {
    std::string name;
    AttributeKind kind = AttributeKind::Numeric;
    std::vector<std::string> categories;  // code -> text, categorical only

    friend bool operator==(const Attribute&, const Attribute&) = default;
};

/// Raised when a file cannot be read or does not yield a usable table.
class DatasetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when a file does not match the schema it is loaded against.
class SchemaError : public DatasetError {
public:
    using DatasetError::DatasetError;
};

/// Column-major table of attributes plus an integer-coded class column.
///
/// Cells are stored as doubles; categorical cells hold their dense code.
/// Each attribute also carries a dense rank per row (position of the value
/// among the column's sorted distinct values) used by the split search.
/// A dataset loaded against another's schema may be unlabeled, in which
/// case labels() is empty but class_names() is still populated.
class Dataset {
public:
    Dataset(std::string name, std::vector<Attribute> attributes,
            std::vector<std::vector<double>> columns, std::vector<ClassIndex> labels,
            std::vector<std::string> class_names);

    const std::string& name() const noexcept { return name_; }
    std::size_t row_count() const noexcept { return row_count_; }
    std::size_t attribute_count() const noexcept { return attributes_.size(); }
    std::size_t class_count() const noexcept { return class_names_.size(); }

    const Attribute& attribute(std::size_t index) const { return attributes_.at(index); }
    const std::vector<Attribute>& attributes() const noexcept { return attributes_; }
    const std::vector<std::string>& class_names() const noexcept { return class_names_; }

    double value(std::size_t row, std::size_t attribute) const noexcept {
        return columns_[attribute][row];
    }
    std::span<const double> column(std::size_t attribute) const { return columns_.at(attribute); }

    bool has_labels() const noexcept { return !labels_.empty(); }
    ClassIndex label(std::size_t row) const noexcept { return labels_[row]; }
    std::span<const ClassIndex> labels() const noexcept { return labels_; }

    std::uint32_t rank(std::size_t row, std::size_t attribute) const noexcept {
        return ranks_[attribute][row];
    }
    /// Sorted distinct values of a numeric column (category codes for categorical ones).
    std::span<const double> distinct_values(std::size_t attribute) const {
        return distinct_.at(attribute);
    }

private:
    std::string name_;
    std::vector<Attribute> attributes_;
    std::vector<std::vector<double>> columns_;
    std::vector<ClassIndex> labels_;
    std::vector<std::string> class_names_;
    std::vector<std::vector<std::uint32_t>> ranks_;
    std::vector<std::vector<double>> distinct_;
    std::size_t row_count_ = 0;
};

enum class MissingPolicy { DropRow };

struct CsvOptions {
    bool has_header = true;
    MissingPolicy missing_policy = MissingPolicy::DropRow;
};

/// Raw CSV contents after missing-row filtering, with attribute kinds inferred.
/// The final column holds the class text and is never typed.
struct CsvTable {
    std::vector<std::string> column_names;
    std::vector<std::vector<std::string>> rows;
    std::vector<AttributeKind> kinds;  // one per non-label column
    std::size_t dropped_rows = 0;
};

CsvTable read_csv_table(const std::filesystem::path& path, const CsvOptions& options = {});

/// Loads a labeled CSV. Last column is the class; "?" or empty cells are missing.
Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options = {});

/// Loads a CSV encoded with the attribute kinds, category codes and classes of
/// `schema`. The class column may be absent; unseen categories get
/// kUnknownCategory and never satisfy an equality test.
Dataset load_csv_with_schema(const std::filesystem::path& path, const Dataset& schema,
                             const CsvOptions& options = {});

/// Unstratified k-fold assignment: seeded shuffle, then round-robin.
struct FoldPlan {
    std::size_t k = 0;
    std::uint64_t seed = 0;
    std::vector<std::uint32_t> assignment;

    std::vector<RowIndex> test_rows(std::size_t fold) const;
    std::vector<RowIndex> train_rows(std::size_t fold) const;
    std::size_t fold_size(std::size_t fold) const;
};

FoldPlan make_folds(std::size_t n_rows, std::size_t k, std::uint64_t seed);

/// |train_indices| draws with replacement from train_indices.
std::vector<RowIndex> bootstrap(std::span<const RowIndex> train_indices, std::uint64_t seed);

}  // namespace treelab
