#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mrfse/core.hpp"

namespace mrfse {

// CSV conventions: UTF-8, comma-separated, mandatory header row of variable
// names, no quoting. Tokens are taken verbatim (trailing CR stripped).

/// Loads a symbol CSV. The alphabet is the lexicographically sorted set of
/// distinct tokens seen anywhere in the data rows; codes follow that order.
Sample load_sample(const std::string& path);
Sample load_sample(std::istream& in, const std::string& source_name);

/// Price-series CSV: header of variable names, one row of real values per
/// time point. Returned per-variable series align with the returned names.
struct PriceSeries {
    std::vector<std::string> names;
    std::vector<std::vector<double>> series;
};
PriceSeries load_price_series(const std::string& path);
PriceSeries load_price_series(std::istream& in, const std::string& source_name);

}  // namespace mrfse
