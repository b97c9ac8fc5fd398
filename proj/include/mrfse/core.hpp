#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mrfse {

/// Finite symbol set. Codes are indices into `labels`; a code always fits in
/// one byte (loaders reject alphabets with more than 255 symbols).
struct Alphabet {
    std::vector<std::string> labels;

    int size() const { return static_cast<int>(labels.size()); }
    std::optional<int> code_of(std::string_view label) const;

    /// Enforces size >= 2 and pairwise-distinct labels.
    void validate() const;

    bool operator==(const Alphabet&) const = default;
};

/// Observed variable set; index in `names` is the vertex id.
struct VertexSet {
    std::vector<std::string> names;

    int count() const { return static_cast<int>(names.size()); }
    std::optional<int> id_of(std::string_view name) const;
    void validate() const;

    bool operator==(const VertexSet&) const = default;
};

/// Immutable n x p matrix of symbol codes. Rows are observations.
struct Sample {
    Alphabet alphabet;
    VertexSet vertices;
    std::vector<std::uint8_t> data;  // row-major, n * p entries
    std::int64_t n = 0;

    int p() const { return vertices.count(); }
    std::uint8_t at(std::int64_t row, int vertex) const {
        return data[static_cast<std::size_t>(row) * p() + vertex];
    }
    std::span<const std::uint8_t> row(std::int64_t i) const {
        return {data.data() + static_cast<std::size_t>(i) * p(), static_cast<std::size_t>(p())};
    }
    void validate() const;
};

/// A configuration a_W: symbols assigned to a strictly increasing vertex list.
/// The empty configuration (W = {}) is valid.
struct Configuration {
    std::vector<int> vertices;
    std::vector<std::uint8_t> symbols;

    void validate() const;

    bool operator==(const Configuration&) const = default;
};

/// Codes each series as 1 where the value strictly increased from the previous
/// time point, 0 otherwise (ties give 0). T points yield T-1 observations.
Sample binarize_series(const std::vector<std::string>& names,
                       const std::vector<std::vector<double>>& series);

/// Keeps rows 0, step, 2*step, ...; the result has ceil(n/step) rows.
Sample thin_sample(const Sample& s, std::int64_t step);

}  // namespace mrfse
