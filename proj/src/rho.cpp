#include "cubelsh/rho.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace cubelsh {

RhoParams::RhoParams(double alpha_value, double beta_value) : alpha(alpha_value), beta(beta_value) {
    if (!(beta >= 0.0) || !(beta < alpha) || !(alpha <= 1.0)) {
        throw InvalidArgument("rho parameters require 0 <= beta < alpha <= 1, got alpha=" +
                              std::to_string(alpha) + ", beta=" + std::to_string(beta));
    }
}

FunctionDistribution::FunctionDistribution(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
    if (atoms_.empty()) {
        throw InvalidArgument("function distribution needs at least one atom");
    }
    dimension_ = atoms_.front().first.dimension();
    double total = 0.0;
    for (const auto& [function, probability] : atoms_) {
        if (function.dimension() != dimension_) {
            throw InvalidArgument("all atoms must share one dimension");
        }
        if (!(probability > 0.0)) {
            throw InvalidArgument("atom probabilities must be positive");
        }
        total += probability;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw InvalidArgument("atom probabilities must sum to 1 within 1e-12, got " +
                              std::to_string(total));
    }
}

FunctionDistribution FunctionDistribution::point_mass(BooleanFunction f) {
    std::vector<Atom> atoms;
    atoms.emplace_back(std::move(f), 1.0);
    return FunctionDistribution(std::move(atoms));
}

FunctionDistribution FunctionDistribution::uniform_dictators(int dimension) {
    std::vector<Atom> atoms;
    const double probability = 1.0 / (2.0 * dimension);
    for (int i = 1; i <= dimension; ++i) {
        atoms.emplace_back(make_dictator(dimension, i, +1), probability);
        atoms.emplace_back(make_dictator(dimension, i, -1), probability);
    }
    return FunctionDistribution(std::move(atoms));
}

WeightAssignment expected_weight_profile(const FunctionDistribution& distribution) {
    std::vector<double> expected(static_cast<std::size_t>(distribution.dimension()) + 1, 0.0);
    for (const auto& [function, probability] : distribution.atoms()) {
        const WeightAssignment profile = weight_profile(wht(function));
        for (std::size_t k = 0; k < expected.size(); ++k) {
            expected[k] += probability * profile[k];
        }
    }
    return WeightAssignment(std::move(expected));
}

double collision_probability_dist(const FunctionDistribution& distribution, double alpha) {
    if (alpha < 0.0 || alpha > 1.0) {
        throw InvalidArgument("correlation must lie in [0, 1], got " + std::to_string(alpha));
    }
    return (1.0 + evaluate_s(expected_weight_profile(distribution), alpha)) / 2.0;
}

double rho(const FunctionDistribution& distribution, const RhoParams& params) {
    return rho_from_weights(expected_weight_profile(distribution), params);
}

double rho_from_raw_weights(const std::vector<double>& weights, const RhoParams& params) {
    const double p_alpha = (1.0 + evaluate_s(weights, params.alpha)) / 2.0;
    const double p_beta = (1.0 + evaluate_s(weights, params.beta)) / 2.0;
    if (p_beta >= 1.0) {
        return std::numeric_limits<double>::infinity();
    }
    if (p_alpha >= 1.0) {
        return 0.0;
    }
    return std::log(p_alpha) / std::log(p_beta);
}

double rho_from_weights(const WeightAssignment& weights, const RhoParams& params) {
    const double p_beta = (1.0 + evaluate_s(weights, params.beta)) / 2.0;
    if (p_beta >= 1.0) {
        throw DegenerateDenominator(p_beta);
    }
    const double p_alpha = (1.0 + evaluate_s(weights, params.alpha)) / 2.0;
    if (p_alpha >= 1.0) {
        return 0.0;
    }
    return std::log(p_alpha) / std::log(p_beta);
}

double bitsampling_rho(const RhoParams& params) {
    if (params.alpha >= 1.0) {
        return 0.0;
    }
    return std::log((1.0 + params.alpha) / 2.0) / std::log((1.0 + params.beta) / 2.0);
}

ReferenceBounds reference_lower_bounds(const RhoParams& params) {
    ReferenceBounds bounds;
    if (params.beta == 0.0) {
        bounds.hypercontractive = (1.0 - params.alpha) / (1.0 + params.alpha);
    } else {
        if (params.alpha >= 1.0) {
            throw InvalidArgument("the log(1/alpha)/log(1/beta) bound needs alpha strictly inside (0, 1)");
        }
        bounds.odonnell = std::log(1.0 / params.alpha) / std::log(1.0 / params.beta);
    }
    return bounds;
}

} // namespace cubelsh
