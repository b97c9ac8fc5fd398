#pragma once

#include <cstdint>
#include <vector>

#include "mrfse/counting.hpp"

namespace mrfse {

/// Penalized pseudo-likelihood value for one candidate set.
/// total = log_pl - penalty with penalty = c * |A|^|W| * ln(n).
/// Natural logarithms throughout.
struct PenalizedScore {
    double log_pl = 0.0;
    double penalty = 0.0;
    double total = 0.0;
    double c = 0.0;
    int set_size = 0;
};

/// Probability vector over the alphabet; entries >= 0 and summing to 1
/// within 1e-12.
struct DiscreteDistribution {
    std::vector<double> probs;

    int size() const { return static_cast<int>(probs.size()); }
    double operator[](int a) const { return probs[a]; }
    void validate() const;

    bool operator==(const DiscreteDistribution&) const = default;
};

/// Log of the maximal pseudo-likelihood for the table's (v, W):
///   sum over observed a_W, and over a_v with positive empirical probability,
///   of N(a_v, a_W) * ln p_hat(a_v | a_W).
/// Zero-probability cells contribute nothing; the result is always <= 0.
double log_pseudo_likelihood(const CountTable& t);

/// |A|^k as an exact double (all practical k keep the value below 2^53).
double alphabet_power(int alphabet_size, int k);

PenalizedScore penalized_score(const CountTable& t, double c, std::int64_t n);

/// Kullback-Leibler divergence D(p; q) = sum_a p(a) ln(p(a)/q(a)).
/// Conventions: a term is 0 when p(a) = 0; the result is +infinity when
/// p(a) > q(a) = 0 for some a. Zero iff p == q.
double kl_divergence(const DiscreteDistribution& p, const DiscreteDistribution& q);

/// Chi-square upper bound sum_{a: q(a)>0} (p(a)-q(a))^2 / q(a); dominates the
/// divergence whenever the divergence is finite.
double chi_square_bound(const DiscreteDistribution& p, const DiscreteDistribution& q);

}  // namespace mrfse
