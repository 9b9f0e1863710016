#include "core/dataio.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "core/errors.hpp"
#include "core/rng.hpp"

namespace caea {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_feature(const std::string& field, std::size_t line_no,
                     std::size_t column) {
    const std::string t = trim(field);
    double value = 0.0;
    const auto* first = t.data();
    const auto* last = t.data() + t.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || t.empty()) {
        throw data_error("line " + std::to_string(line_no) + ", column " +
                         std::to_string(column + 1) +
                         ": not a numeric feature: '" + t + "'");
    }
    return value;
}

}  // namespace

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

Dataset load_csv(const std::string& path, bool has_header, int label_column) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open dataset file: " + path);

    Dataset ds;
    ds.name = std::filesystem::path(path).stem().string();
    std::map<std::string, int> label_ids;

    std::string line;
    std::size_t line_no = 0;
    std::size_t expected_columns = 0;
    bool header_pending = has_header;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        if (header_pending) {
            header_pending = false;
            continue;
        }
        const auto fields = split_fields(line);
        if (expected_columns == 0) {
            expected_columns = fields.size();
            if (expected_columns < 2) {
                throw data_error("line " + std::to_string(line_no) +
                                 ": need at least one feature and a label");
            }
        } else if (fields.size() != expected_columns) {
            throw data_error("line " + std::to_string(line_no) + ": expected " +
                             std::to_string(expected_columns) +
                             " columns, found " +
                             std::to_string(fields.size()));
        }
        const std::size_t label_idx =
            label_column < 0 ? expected_columns - 1
                             : static_cast<std::size_t>(label_column);
        if (label_idx >= expected_columns) {
            throw data_error("label column " + std::to_string(label_column) +
                             " out of range for " +
                             std::to_string(expected_columns) + " columns");
        }
        std::vector<double> features;
        features.reserve(expected_columns - 1);
        for (std::size_t c = 0; c < fields.size(); ++c) {
            if (c == label_idx) continue;
            features.push_back(parse_feature(fields[c], line_no, c));
        }
        const std::string label = trim(fields[label_idx]);
        if (label.empty()) {
            throw data_error("line " + std::to_string(line_no) +
                             ": empty label field");
        }
        auto [it, inserted] =
            label_ids.emplace(label, static_cast<int>(label_ids.size()));
        if (inserted) ds.class_names.push_back(label);
        ds.points.push_back(std::move(features));
        ds.labels.push_back(it->second);
    }
    if (ds.points.empty()) {
        throw data_error("dataset file has no data rows: " + path);
    }
    return ds;
}

void write_csv(const Dataset& ds, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw data_error("cannot write dataset file: " + path);
    for (std::size_t i = 0; i < ds.points.size(); ++i) {
        for (double v : ds.points[i]) out << format_double(v) << ',';
        out << ds.class_names.at(static_cast<std::size_t>(ds.labels[i])) << '\n';
    }
}

std::vector<std::size_t> order_stream(const Dataset& ds,
                                      std::vector<std::size_t> indices,
                                      StreamMode mode, std::uint64_t seed) {
    if (indices.empty()) {
        throw std::invalid_argument("order_stream: empty index set");
    }
    std::sort(indices.begin(), indices.end());  // canonical starting order
    SplitMix64 rng(seed);
    if (mode == StreamMode::stationary) {
        shuffle_in_place(indices, rng);
        return indices;
    }
    std::vector<std::size_t> ordered;
    ordered.reserve(indices.size());
    for (int cls = 0; cls < ds.num_classes(); ++cls) {
        std::vector<std::size_t> block;
        for (std::size_t i : indices) {
            if (ds.labels[i] == cls) block.push_back(i);
        }
        shuffle_in_place(block, rng);
        ordered.insert(ordered.end(), block.begin(), block.end());
    }
    return ordered;
}

FoldPlan make_folds(const Dataset& ds, int repeats, int folds,
                    std::uint64_t seed) {
    if (repeats < 1) throw std::invalid_argument("make_folds: repeats < 1");
    if (folds < 2) throw std::invalid_argument("make_folds: folds < 2");
    if (ds.size() < static_cast<std::size_t>(folds)) {
        throw std::invalid_argument("make_folds: fewer instances than folds");
    }
    constexpr std::uint64_t kFoldStream = 0xf01d;
    FoldPlan plan;
    plan.repeats = repeats;
    plan.folds = folds;
    plan.assignments.resize(static_cast<std::size_t>(repeats));
    for (int r = 0; r < repeats; ++r) {
        SplitMix64 rng(
            derive_seed(seed, kFoldStream, static_cast<std::uint64_t>(r)));
        auto& assign = plan.assignments[static_cast<std::size_t>(r)];
        assign.assign(ds.size(), -1);
        std::size_t dealt = 0;  // rotation carries across classes
        for (int cls = 0; cls < ds.num_classes(); ++cls) {
            std::vector<std::size_t> members;
            for (std::size_t i = 0; i < ds.size(); ++i) {
                if (ds.labels[i] == cls) members.push_back(i);
            }
            shuffle_in_place(members, rng);
            for (std::size_t i : members) {
                assign[i] = static_cast<int>(dealt % static_cast<std::size_t>(folds));
                ++dealt;
            }
        }
    }
    return plan;
}

}  // namespace caea
