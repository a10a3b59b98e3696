// dataset.hpp
#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <memory>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "abc/backend.hpp"
#include "abc/random.hpp"

namespace abc {

/// Dense binary-classification dataset, row-major features.
struct Dataset {
    std::size_t rows{0};
    std::size_t cols{0};
    std::vector<double> features;
    std::vector<std::uint8_t> labels;

    std::span<const double> row(std::size_t i) const { return {features.data() + i * cols, cols}; }
};

struct CsvOptions {
    bool header{false};
    char delimiter{','};
    bool normalize{true};
};

inline void min_max_normalize(Dataset& d) {
    for (std::size_t j = 0; j < d.cols; ++j) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (std::size_t i = 0; i < d.rows; ++i) {
            lo = std::min(lo, d.features[i * d.cols + j]);
            hi = std::max(hi, d.features[i * d.cols + j]);
        }
        const double span = hi - lo;
        for (std::size_t i = 0; i < d.rows; ++i) {
            double& v = d.features[i * d.cols + j];
            v = span > 0.0 ? (v - lo) / span : 0.0;
        }
    }
}

namespace detail {

inline double parse_field(std::string_view f, const std::string& where) {
    while (!f.empty() && (f.front() == ' ' || f.front() == '\t')) f.remove_prefix(1);
    while (!f.empty() && (f.back() == ' ' || f.back() == '\t' || f.back() == '\r')) f.remove_suffix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
    if (ec != std::errc{} || ptr != f.data() + f.size() || f.empty())
        throw BackendError(where + ": non-numeric field '" + std::string(f) + "'");
    return v;
}

}  // namespace detail

/// Numeric features, last column is the label in {0,1}.
inline Dataset load_csv(const std::string& path, const CsvOptions& opts = {}) {
    std::ifstream in(path);
    if (!in) throw BackendError("cannot open dataset '" + path + "'");
    Dataset d;
    std::string line;
    std::size_t line_no = 0;
    std::vector<double> fields;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 && opts.header) continue;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const std::string where = path + ":" + std::to_string(line_no);
        fields.clear();
        std::string_view rest(line);
        while (true) {
            const auto pos = rest.find(opts.delimiter);
            fields.push_back(detail::parse_field(rest.substr(0, pos), where));
            if (pos == std::string_view::npos) break;
            rest.remove_prefix(pos + 1);
        }
        if (fields.size() < 2) throw BackendError(where + ": need at least one feature and a label");
        if (d.rows == 0) d.cols = fields.size() - 1;
        if (fields.size() - 1 != d.cols)
            throw BackendError(where + ": expected " + std::to_string(d.cols + 1) + " fields, got " +
                               std::to_string(fields.size()));
        const double label = fields.back();
        if (label != 0.0 && label != 1.0) throw BackendError(where + ": label must be 0 or 1");
        d.features.insert(d.features.end(), fields.begin(), fields.end() - 1);
        d.labels.push_back(static_cast<std::uint8_t>(label));
        ++d.rows;
    }
    if (d.rows == 0) throw BackendError("dataset '" + path + "' has no rows");
    if (opts.normalize) min_max_normalize(d);
    return d;
}

enum class Part { Train, Test };

/// A seeded random train/test partition of a dataset. Each part is stored as a
/// permuted index list, so a sample of size s is the length-s prefix and samples
/// at growing sizes are nested.
class DatasetHandle {
public:
    DatasetHandle(std::shared_ptr<const Dataset> data, double holdout, std::uint64_t seed)
        : data_(std::move(data)), holdout_(holdout), seed_(seed) {
        if (!data_) throw std::invalid_argument("dataset handle: null dataset");
        if (!(holdout > 0.0 && holdout < 1.0)) throw std::invalid_argument("holdout ratio must lie in (0,1)");
        const auto n = data_->rows;
        const auto n_test = static_cast<std::size_t>(std::llround(holdout * static_cast<double>(n)));
        if (n_test < 1 || n_test >= n)
            throw std::invalid_argument("holdout ratio leaves an empty train or test part");
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::mt19937_64 rng(derive_seed({seed, 0x5eed}));
        std::shuffle(perm.begin(), perm.end(), rng);
        test_idx_.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n_test));
        train_idx_.assign(perm.begin() + static_cast<std::ptrdiff_t>(n_test), perm.end());
    }

    const Dataset& data() const { return *data_; }
    double holdout() const { return holdout_; }
    std::uint64_t seed() const { return seed_; }
    std::int64_t train_size() const { return static_cast<std::int64_t>(train_idx_.size()); }
    std::int64_t test_size() const { return static_cast<std::int64_t>(test_idx_.size()); }

    std::span<const std::size_t> sample_nested(Part part, std::int64_t size) const {
        const auto& idx = part == Part::Train ? train_idx_ : test_idx_;
        if (size < 0 || static_cast<std::size_t>(size) > idx.size())
            throw BackendError("sample size " + std::to_string(size) + " exceeds " +
                               (part == Part::Train ? "training" : "test") + " part size " +
                               std::to_string(idx.size()));
        return {idx.data(), static_cast<std::size_t>(size)};
    }

private:
    std::shared_ptr<const Dataset> data_;
    double holdout_;
    std::uint64_t seed_;
    std::vector<std::size_t> train_idx_;
    std::vector<std::size_t> test_idx_;
};

}  // namespace abc
