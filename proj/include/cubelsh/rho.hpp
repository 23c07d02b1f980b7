#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "cubelsh/boolean_function.hpp"
#include "cubelsh/fourier.hpp"
#include "cubelsh/weights.hpp"

namespace cubelsh {

/// The (alpha, beta) correlation pair the rho functional is evaluated at.
/// Valid region: 0 <= beta < alpha <= 1. Negative correlations are rejected.
struct RhoParams {
    RhoParams(double alpha_value, double beta_value);

    double alpha;
    double beta;
};

/// Finite-support probability distribution over Boolean functions of one dimension.
class FunctionDistribution {
public:
    using Atom = std::pair<BooleanFunction, double>;

    /// Validates positive probabilities summing to 1 within 1e-12 and a common dimension.
    explicit FunctionDistribution(std::vector<Atom> atoms);

    /// Point mass on a single function.
    static FunctionDistribution point_mass(BooleanFunction f);

    /// The uniform distribution over all 2d dictators +/- x_i.
    static FunctionDistribution uniform_dictators(int dimension);

    int dimension() const { return dimension_; }
    const std::vector<Atom>& atoms() const { return atoms_; }

private:
    std::vector<Atom> atoms_;
    int dimension_;
};

/// w_k = E_{h ~ H}[W^k[h]]: the probability-weighted average of the atoms' profiles.
WeightAssignment expected_weight_profile(const FunctionDistribution& distribution);

/// p_alpha for the distribution: (1 + s(alpha))/2 with s evaluated on the
/// expected weight profile. Equals the atom-weighted average of per-function
/// collision probabilities.
double collision_probability_dist(const FunctionDistribution& distribution, double alpha);

/// rho = log(1/p_alpha) / log(1/p_beta), natural logarithm.
/// p_beta = 1 raises DegenerateDenominator; p_alpha = 1 with p_beta < 1 gives 0.
double rho(const FunctionDistribution& distribution, const RhoParams& params);

/// The same functional on the reduced variable: rho = log((1+s(alpha))/2) / log((1+s(beta))/2).
double rho_from_weights(const WeightAssignment& weights, const RhoParams& params);

/// Internal form on a raw weight vector (no simplex re-validation); used by the
/// optimizers. Returns +infinity when s(beta) = 1 so degenerate corners lose.
double rho_from_raw_weights(const std::vector<double>& weights, const RhoParams& params);

/// Closed form for the uniform-dictator family: log((1+alpha)/2) / log((1+beta)/2).
/// Returns 0 at alpha = 1.
double bitsampling_rho(const RhoParams& params);

/// General-family reference curves. `odonnell` = log(1/alpha)/log(1/beta) is
/// present for 0 < beta < alpha < 1 (alpha = 1 with beta > 0 is rejected);
/// `hypercontractive` = (1-alpha)/(1+alpha) is present only for beta = 0.
struct ReferenceBounds {
    std::optional<double> odonnell;
    std::optional<double> hypercontractive;
};

ReferenceBounds reference_lower_bounds(const RhoParams& params);

} // namespace cubelsh
