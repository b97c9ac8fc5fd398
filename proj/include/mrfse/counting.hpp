#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mrfse/core.hpp"

namespace mrfse {

/// Contingency counts for one target vertex v and one conditioning set W.
///
/// Rows are the configurations a_W that actually occur in the sample (never a
/// zero-count row), sorted lexicographically by symbol codes. Row i holds the
/// per-symbol counts N(a_v, a_W); the row total is N(a_W). Storage is flat to
/// keep the exhaustive subset search cache-friendly.
class CountTable {
public:
    CountTable(int target, std::vector<int> cond_set, int alphabet_size);

    int target() const { return target_; }
    const std::vector<int>& cond_set() const { return cond_set_; }
    int alphabet_size() const { return alphabet_size_; }
    int width() const { return static_cast<int>(cond_set_.size()); }

    std::size_t row_count() const { return row_totals_.size(); }
    std::int64_t total() const { return total_; }

    std::span<const std::uint8_t> row_config(std::size_t i) const {
        return {configs_.data() + i * width(), static_cast<std::size_t>(width())};
    }
    std::span<const std::int64_t> row_counts(std::size_t i) const {
        return {counts_.data() + i * alphabet_size_, static_cast<std::size_t>(alphabet_size_)};
    }
    std::int64_t row_total(std::size_t i) const { return row_totals_[i]; }

    /// Binary search over the sorted rows; empty when the configuration was
    /// never observed.
    std::optional<std::size_t> find_row(std::span<const std::uint8_t> config) const;

    // Construction interface used by build_counts.
    void append_row(std::span<const std::uint8_t> config, std::span<const std::int64_t> counts);

private:
    int target_;
    std::vector<int> cond_set_;
    int alphabet_size_;
    std::int64_t total_ = 0;
    std::vector<std::uint8_t> configs_;     // row_count * width
    std::vector<std::int64_t> counts_;      // row_count * alphabet_size
    std::vector<std::int64_t> row_totals_;  // row_count
};

/// Exact counts N(a_W) and N(a_v, a_W) over the sample. W may be empty (one
/// row with the marginal counts of X_v) and is given in any order.
CountTable build_counts(const Sample& s, int v, std::span<const int> w_set);

/// p_hat(a_v | a_W) = N(a_v, a_W) / N(a_W). The configuration's vertex list
/// must equal the table's conditioning set; requesting an unseen
/// configuration throws UndefinedConditionalError.
double empirical_conditional(const CountTable& t, const Configuration& a_w, std::uint8_t a_v);

}  // namespace mrfse
