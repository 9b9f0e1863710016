#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace caea {

struct Dataset {
    std::string name;
    std::vector<std::vector<double>> points;
    std::vector<int> labels;                // contiguous 0..C-1
    std::vector<std::string> class_names;   // index = class id

    std::size_t size() const { return points.size(); }
    int dim() const {
        return points.empty() ? 0 : static_cast<int>(points.front().size());
    }
    int num_classes() const { return static_cast<int>(class_names.size()); }
};

/// Reads a comma-separated file: numeric features plus one categorical label
/// column (label_column = -1 means the last column, otherwise a 0-based
/// index). Features parse as 64-bit floats with '.' decimal point; no
/// normalization is applied. Labels map to 0..C-1 in first-appearance order.
/// Ragged rows, non-numeric features, or an empty file raise data_error with
/// the offending line number.
Dataset load_csv(const std::string& path, bool has_header, int label_column);

/// Writes points and class names back out in load_csv's shape (no header,
/// label last), with round-trip float formatting.
void write_csv(const Dataset& ds, const std::string& path);

enum class StreamMode { stationary, nonstationary };

/// Presentation order for a subset of a dataset. Stationary: one uniform
/// shuffle of the indices. Nonstationary: classes in ascending id order,
/// shuffled within each class, then concatenated. Deterministic per seed.
std::vector<std::size_t> order_stream(const Dataset& ds,
                                      std::vector<std::size_t> indices,
                                      StreamMode mode, std::uint64_t seed);

struct FoldPlan {
    int repeats = 0;
    int folds = 0;
    // assignments[r][i] = fold of instance i in repeat r
    std::vector<std::vector<int>> assignments;
};

/// Stratified cross-validation plan: per repeat, each class is shuffled and
/// dealt round-robin so every fold's class counts differ by at most one
/// instance, as do the total fold sizes. Deterministic per seed; each repeat
/// draws from its own derived sub-seed.
FoldPlan make_folds(const Dataset& ds, int repeats, int folds,
                    std::uint64_t seed);

/// Shortest decimal form of a double that parses back to the same bits.
std::string format_double(double value);

}  // namespace caea
