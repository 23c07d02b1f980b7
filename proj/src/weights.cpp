#include "cubelsh/weights.hpp"

#include <cmath>
#include <string>

namespace cubelsh {

WeightAssignment::WeightAssignment(std::vector<double> weights) : weights_(std::move(weights)) {
    if (weights_.empty()) {
        throw InvalidArgument("weight assignment must have at least one entry");
    }
    double sum = 0.0;
    for (std::size_t k = 0; k < weights_.size(); ++k) {
        if (weights_[k] < 0.0) {
            // Tolerate float dust from simplex arithmetic, nothing more.
            if (weights_[k] > -1e-12) {
                weights_[k] = 0.0;
            } else {
                throw InvalidArgument("weight at degree " + std::to_string(k) +
                                      " is negative: " + std::to_string(weights_[k]));
            }
        }
        sum += weights_[k];
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw InvalidArgument("weights must sum to 1 within 1e-12, got " + std::to_string(sum));
    }
}

WeightAssignment unit_weight(int max_degree, int degree) {
    if (degree < 0 || degree > max_degree) {
        throw InvalidArgument("unit weight degree out of range");
    }
    std::vector<double> w(static_cast<std::size_t>(max_degree) + 1, 0.0);
    w[degree] = 1.0;
    return WeightAssignment(std::move(w));
}

double evaluate_s(const std::vector<double>& weights, double x) {
    if (x < 0.0 || x > 1.0) {
        throw InvalidArgument("s(x) is defined for x in [0, 1], got " + std::to_string(x));
    }
    double value = 0.0;
    for (std::size_t k = weights.size(); k-- > 0;) {
        value = value * x + weights[k];
    }
    return value;
}

double evaluate_s(const WeightAssignment& weights, double x) {
    return evaluate_s(weights.values(), x);
}

} // namespace cubelsh
