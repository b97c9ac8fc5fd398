#include "mrfse/csv.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "mrfse/errors.hpp"

namespace mrfse {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

// Reads a CSV into header + token rows; strips trailing CR, skips trailing
// blank lines, errors on ragged rows with the offending line number.
struct RawCsv {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

RawCsv read_raw(std::istream& in, const std::string& source_name) {
    RawCsv raw;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() && in.peek() == std::char_traits<char>::eof()) break;
        auto fields = split_line(line);
        if (raw.header.empty()) {
            raw.header = std::move(fields);
            continue;
        }
        if (fields.size() != raw.header.size()) {
            throw FormatError(source_name + ": row " + std::to_string(line_no) + ": expected " +
                              std::to_string(raw.header.size()) + " fields, got " +
                              std::to_string(fields.size()));
        }
        raw.rows.push_back(std::move(fields));
    }
    if (raw.header.empty()) throw FormatError(source_name + ": empty file");
    if (raw.rows.empty()) throw FormatError(source_name + ": no observations");
    return raw;
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError(path + ": cannot open file");
    return in;
}

}  // namespace

Sample load_sample(std::istream& in, const std::string& source_name) {
    RawCsv raw = read_raw(in, source_name);

    // Alphabet: sorted distinct tokens across all cells, codes in that order.
    std::map<std::string, int> codes;
    for (const auto& row : raw.rows) {
        for (const auto& tok : row) codes.emplace(tok, 0);
    }
    if (codes.size() > 255) throw CapacityError(source_name + ": more than 255 distinct symbols");
    int next = 0;
    for (auto& [tok, code] : codes) code = next++;

    Sample s;
    s.vertices.names = raw.header;
    for (const auto& [tok, code] : codes) s.alphabet.labels.push_back(tok);
    s.n = static_cast<std::int64_t>(raw.rows.size());
    s.data.reserve(raw.rows.size() * raw.header.size());
    for (const auto& row : raw.rows) {
        for (const auto& tok : row) s.data.push_back(static_cast<std::uint8_t>(codes.at(tok)));
    }
    s.validate();
    return s;
}

Sample load_sample(const std::string& path) {
    auto in = open_or_throw(path);
    return load_sample(in, path);
}

PriceSeries load_price_series(std::istream& in, const std::string& source_name) {
    RawCsv raw = read_raw(in, source_name);

    PriceSeries out;
    out.names = raw.header;
    out.series.resize(raw.header.size());
    for (std::size_t r = 0; r < raw.rows.size(); ++r) {
        for (std::size_t v = 0; v < raw.header.size(); ++v) {
            const std::string& tok = raw.rows[r][v];
            double value = 0.0;
            const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
            if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
                throw FormatError(source_name + ": row " + std::to_string(r + 2) +
                                  ": not a real number: '" + tok + "'");
            }
            out.series[v].push_back(value);
        }
    }
    return out;
}

PriceSeries load_price_series(const std::string& path) {
    auto in = open_or_throw(path);
    return load_price_series(in, path);
}

}  // namespace mrfse
