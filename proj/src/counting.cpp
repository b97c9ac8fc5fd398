#include "mrfse/counting.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

#include "mrfse/errors.hpp"

namespace mrfse {

namespace {

// Above this many cells the dense radix path would waste more than it saves;
// fall back to hashing the packed configuration bytes.
constexpr std::int64_t kDenseCellLimit = 1 << 16;

}  // namespace

CountTable::CountTable(int target, std::vector<int> cond_set, int alphabet_size)
    : target_(target), cond_set_(std::move(cond_set)), alphabet_size_(alphabet_size) {}

void CountTable::append_row(std::span<const std::uint8_t> config,
                            std::span<const std::int64_t> counts) {
    configs_.insert(configs_.end(), config.begin(), config.end());
    counts_.insert(counts_.end(), counts.begin(), counts.end());
    std::int64_t row_sum = 0;
    for (std::int64_t c : counts) row_sum += c;
    row_totals_.push_back(row_sum);
    total_ += row_sum;
}

std::optional<std::size_t> CountTable::find_row(std::span<const std::uint8_t> config) const {
    if (config.size() != static_cast<std::size_t>(width())) return std::nullopt;
    std::size_t lo = 0;
    std::size_t hi = row_count();
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        const auto row = row_config(mid);
        if (std::lexicographical_compare(row.begin(), row.end(), config.begin(), config.end())) {
            lo = mid + 1;
        } else if (std::equal(row.begin(), row.end(), config.begin(), config.end())) {
            return mid;
        } else {
            hi = mid;
        }
    }
    return std::nullopt;
}

CountTable build_counts(const Sample& s, int v, std::span<const int> w_set) {
    const int p = s.p();
    if (v < 0 || v >= p) throw ArgumentError("target vertex id out of range");

    std::vector<int> w(w_set.begin(), w_set.end());
    std::sort(w.begin(), w.end());
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] < 0 || w[i] >= p) throw ArgumentError("conditioning vertex id out of range");
        if (i > 0 && w[i] == w[i - 1]) throw ArgumentError("conditioning set has duplicate ids");
        if (w[i] == v) throw ArgumentError("target vertex cannot belong to the conditioning set");
    }

    const int a = s.alphabet.size();
    const int width = static_cast<int>(w.size());
    CountTable table(v, w, a);

    // Dense path: mixed-radix index over the conditioning symbols, first
    // vertex most significant so ascending indices are lexicographic configs.
    std::int64_t cells = 1;
    bool dense = true;
    for (int i = 0; i < width; ++i) {
        cells *= a;
        if (cells > kDenseCellLimit) {
            dense = false;
            break;
        }
    }

    std::vector<std::uint8_t> config(width);
    if (dense) {
        std::vector<std::int64_t> grid(static_cast<std::size_t>(cells) * a, 0);
        for (std::int64_t i = 0; i < s.n; ++i) {
            const auto row = s.row(i);
            std::int64_t idx = 0;
            for (int j = 0; j < width; ++j) idx = idx * a + row[w[j]];
            ++grid[static_cast<std::size_t>(idx) * a + row[v]];
        }
        for (std::int64_t idx = 0; idx < cells; ++idx) {
            const auto* counts = grid.data() + static_cast<std::size_t>(idx) * a;
            std::int64_t row_sum = 0;
            for (int sym = 0; sym < a; ++sym) row_sum += counts[sym];
            if (row_sum == 0) continue;
            std::int64_t rem = idx;
            for (int j = width - 1; j >= 0; --j) {
                config[j] = static_cast<std::uint8_t>(rem % a);
                rem /= a;
            }
            table.append_row(config, {counts, static_cast<std::size_t>(a)});
        }
        return table;
    }

    // Sparse path: hash the packed one-byte-per-vertex key, then emit rows in
    // lexicographic configuration order.
    std::unordered_map<std::string, std::vector<std::int64_t>> cellmap;
    std::string key(static_cast<std::size_t>(width), '\0');
    for (std::int64_t i = 0; i < s.n; ++i) {
        const auto row = s.row(i);
        for (int j = 0; j < width; ++j) key[j] = static_cast<char>(row[w[j]]);
        auto [it, inserted] = cellmap.try_emplace(key);
        if (inserted) it->second.assign(a, 0);
        ++it->second[row[v]];
    }
    std::vector<const std::string*> keys;
    keys.reserve(cellmap.size());
    for (const auto& [k, counts] : cellmap) keys.push_back(&k);
    std::sort(keys.begin(), keys.end(), [](const std::string* x, const std::string* y) {
        return std::lexicographical_compare(
            x->begin(), x->end(), y->begin(), y->end(),
            [](char l, char r) { return static_cast<unsigned char>(l) < static_cast<unsigned char>(r); });
    });
    for (const std::string* k : keys) {
        for (int j = 0; j < width; ++j) config[j] = static_cast<std::uint8_t>((*k)[j]);
        const auto& counts = cellmap.at(*k);
        table.append_row(config, counts);
    }
    return table;
}

double empirical_conditional(const CountTable& t, const Configuration& a_w, std::uint8_t a_v) {
    a_w.validate();
    if (a_w.vertices != t.cond_set())
        throw ArgumentError("configuration vertices do not match the conditioning set");
    if (a_v >= t.alphabet_size()) throw ArgumentError("symbol code out of alphabet range");
    const auto row = t.find_row(a_w.symbols);
    if (!row) throw UndefinedConditionalError("conditional undefined: configuration never observed");
    return static_cast<double>(t.row_counts(*row)[a_v]) / static_cast<double>(t.row_total(*row));
}

}  // namespace mrfse
