#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mrfse/core.hpp"
#include "mrfse/estimation.hpp"

namespace mrfse {

/// Cross-validation output. fold_losses[i][f] is the held-out loss of grid
/// value i on fold f; chosen_c minimizes the mean fold loss (ties go to the
/// smaller constant).
struct CVResult {
    std::vector<double> grid;
    std::vector<std::vector<double>> fold_losses;  // grid x folds
    std::vector<std::int64_t> fold_sizes;
    double chosen_c = 0.0;
    int folds = 0;
    std::uint64_t seed = 0;
    GraphMode mode = GraphMode::And;

    std::vector<double> mean_losses() const;
};

/// k-fold cross-validation for the penalizing constant. Rows are shuffled
/// with the seeded stream and dealt into near-equal folds. The loss of a fold
/// is the mean over held-out rows and vertices of -ln p_hat(x_v | x_ne(v)),
/// with the neighborhoods and conditionals fitted on the training rows; a
/// validation cell whose conditional is unavailable (configuration unseen in
/// training, or a zero training count for the observed symbol) contributes
/// ln|A| instead, keeping every loss finite. `mode` is recorded in the result
/// for provenance; the loss itself is per-vertex.
CVResult cross_validate_c(const Sample& s, std::vector<double> grid, int folds,
                          std::uint64_t seed, GraphMode mode,
                          std::optional<int> max_size = {}, int threads = 1);

}  // namespace mrfse
