#include "mrfse/scoring.hpp"

#include <cmath>
#include <limits>

#include "mrfse/errors.hpp"

namespace mrfse {

void DiscreteDistribution::validate() const {
    double sum = 0.0;
    for (double p : probs) {
        if (p < 0.0) throw ArgumentError("distribution entries must be nonnegative");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw ArgumentError("distribution must sum to 1");
}

double log_pseudo_likelihood(const CountTable& t) {
    if (t.row_count() == 0) throw ArgumentError("count table is empty");
    double log_pl = 0.0;
    for (std::size_t r = 0; r < t.row_count(); ++r) {
        const auto counts = t.row_counts(r);
        const double row_total = static_cast<double>(t.row_total(r));
        for (std::int64_t c : counts) {
            if (c == 0) continue;  // cells with p_hat = 0 never enter the product
            log_pl += static_cast<double>(c) * std::log(static_cast<double>(c) / row_total);
        }
    }
    return log_pl;
}

double alphabet_power(int alphabet_size, int k) {
    double value = 1.0;
    for (int i = 0; i < k; ++i) value *= alphabet_size;
    return value;
}

PenalizedScore penalized_score(const CountTable& t, double c, std::int64_t n) {
    if (c <= 0.0) throw ArgumentError("penalty constant must be positive");
    if (n < 1) throw ArgumentError("sample size must be positive");
    if (n != t.total()) throw ArgumentError("n does not match the table's total count");

    PenalizedScore score;
    score.c = c;
    score.set_size = t.width();
    score.log_pl = log_pseudo_likelihood(t);
    score.penalty = c * alphabet_power(t.alphabet_size(), t.width()) * std::log(static_cast<double>(n));
    score.total = score.log_pl - score.penalty;
    return score;
}

double kl_divergence(const DiscreteDistribution& p, const DiscreteDistribution& q) {
    if (p.size() != q.size()) throw ArgumentError("distributions must have equal length");
    double d = 0.0;
    for (int a = 0; a < p.size(); ++a) {
        if (p[a] == 0.0) continue;
        if (q[a] == 0.0) return std::numeric_limits<double>::infinity();
        d += p[a] * std::log(p[a] / q[a]);
    }
    return d;
}

double chi_square_bound(const DiscreteDistribution& p, const DiscreteDistribution& q) {
    if (p.size() != q.size()) throw ArgumentError("distributions must have equal length");
    double bound = 0.0;
    for (int a = 0; a < p.size(); ++a) {
        if (q[a] == 0.0) continue;
        const double diff = p[a] - q[a];
        bound += diff * diff / q[a];
    }
    return bound;
}

}  // namespace mrfse
