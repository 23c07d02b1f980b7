#pragma once

#include <cstddef>
#include <vector>

#include "cubelsh/errors.hpp"

namespace cubelsh {

/// Degree-weight vector (w_0, ..., w_d): nonnegative entries summing to 1.
/// Entry k is the (expected) Fourier weight at degree k, so the vector is a
/// probability distribution over degrees.
class WeightAssignment {
public:
    /// Validates nonnegativity and that the entries sum to 1 within 1e-12.
    explicit WeightAssignment(std::vector<double> weights);

    /// Number of entries, d+1.
    std::size_t size() const { return weights_.size(); }
    /// Highest degree d.
    int max_degree() const { return static_cast<int>(weights_.size()) - 1; }
    double operator[](std::size_t degree) const { return weights_[degree]; }
    const std::vector<double>& values() const { return weights_; }

    bool operator==(const WeightAssignment& other) const { return weights_ == other.weights_; }

private:
    std::vector<double> weights_;
};

/// Point mass at one degree: w_degree = 1, everything else 0.
WeightAssignment unit_weight(int max_degree, int degree);

/// s(x) = sum_k w_k x^k, evaluated by Horner's rule. For x in [0,1] the value
/// lies in [0,1] because the weights are a convex combination.
double evaluate_s(const WeightAssignment& weights, double x);

/// Same polynomial on a raw weight vector; used by optimizers that move mass
/// around before re-validating.
double evaluate_s(const std::vector<double>& weights, double x);

} // namespace cubelsh
