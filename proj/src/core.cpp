#include "mrfse/core.hpp"

#include <algorithm>
#include <unordered_set>

#include "mrfse/errors.hpp"

namespace mrfse {

std::optional<int> Alphabet::code_of(std::string_view label) const {
    for (int i = 0; i < size(); ++i) {
        if (labels[i] == label) return i;
    }
    return std::nullopt;
}

void Alphabet::validate() const {
    if (labels.size() < 2) throw FormatError("alphabet must have at least 2 symbols");
    if (labels.size() > 255) throw CapacityError("alphabet exceeds 255 symbols");
    std::unordered_set<std::string> seen(labels.begin(), labels.end());
    if (seen.size() != labels.size()) throw ArgumentError("alphabet labels must be distinct");
}

std::optional<int> VertexSet::id_of(std::string_view name) const {
    for (int i = 0; i < count(); ++i) {
        if (names[i] == name) return i;
    }
    return std::nullopt;
}

void VertexSet::validate() const {
    if (names.empty()) throw ArgumentError("vertex set must be nonempty");
    std::unordered_set<std::string> seen(names.begin(), names.end());
    if (seen.size() != names.size()) throw ArgumentError("vertex names must be distinct");
}

void Sample::validate() const {
    alphabet.validate();
    vertices.validate();
    if (n < 1) throw FormatError("sample must contain at least one observation");
    if (data.size() != static_cast<std::size_t>(n) * p())
        throw ArgumentError("sample data size does not match n x p");
    for (std::uint8_t code : data) {
        if (code >= alphabet.size()) throw ArgumentError("symbol code out of alphabet range");
    }
}

void Configuration::validate() const {
    if (symbols.size() != vertices.size())
        throw ArgumentError("configuration symbols and vertices must align");
    for (std::size_t i = 1; i < vertices.size(); ++i) {
        if (vertices[i - 1] >= vertices[i])
            throw ArgumentError("configuration vertices must be strictly increasing");
    }
}

Sample binarize_series(const std::vector<std::string>& names,
                       const std::vector<std::vector<double>>& series) {
    if (names.size() != series.size())
        throw ArgumentError("series count does not match variable names");
    if (series.empty()) throw FormatError("no price series given");

    const std::size_t points = series.front().size();
    for (const auto& s : series) {
        if (s.size() != points) throw FormatError("price series have unequal lengths");
    }
    if (points < 2) throw FormatError("insufficient data: need at least 2 price points");

    Sample out;
    out.alphabet.labels = {"0", "1"};
    out.vertices.names = names;
    out.n = static_cast<std::int64_t>(points - 1);
    out.data.resize(static_cast<std::size_t>(out.n) * series.size());
    for (std::size_t d = 1; d < points; ++d) {
        for (std::size_t v = 0; v < series.size(); ++v) {
            // strictly greater than the previous point; ties code as 0
            out.data[(d - 1) * series.size() + v] = series[v][d] > series[v][d - 1] ? 1 : 0;
        }
    }
    out.validate();
    return out;
}

Sample thin_sample(const Sample& s, std::int64_t step) {
    if (step < 1) throw ArgumentError("thinning step must be positive");
    Sample out;
    out.alphabet = s.alphabet;
    out.vertices = s.vertices;
    out.n = (s.n + step - 1) / step;
    out.data.reserve(static_cast<std::size_t>(out.n) * s.p());
    for (std::int64_t i = 0; i < s.n; i += step) {
        auto row = s.row(i);
        out.data.insert(out.data.end(), row.begin(), row.end());
    }
    return out;
}

}  // namespace mrfse
