#pragma once

#include <cstdint>
#include <vector>

#include "cubelsh/boolean_function.hpp"
#include "cubelsh/rng.hpp"
#include "cubelsh/weights.hpp"

namespace cubelsh {

/// A real-valued function on the hypercube, e.g. the output of the noise operator.
struct RealFunction {
    int dimension;
    std::vector<double> values; // indexed by PointIndex, length 2^dimension
};

RealFunction to_real(const BooleanFunction& f);

/// The 2^d coefficients of the multilinear expansion f = sum_S fhat(S) x^S.
/// Coefficients are indexed by the subset bitmask S (bit j-1 set <=> j in S).
class FourierSpectrum {
public:
    FourierSpectrum(int dimension, std::vector<double> coefficients);

    int dimension() const { return dimension_; }
    std::size_t size() const { return coefficients_.size(); }
    double operator[](std::uint32_t subset_mask) const { return coefficients_[subset_mask]; }
    const std::vector<double>& coefficients() const { return coefficients_; }

private:
    int dimension_;
    std::vector<double> coefficients_;
};

/// Walsh-Hadamard transform via the in-place butterfly, O(d 2^d).
/// Coefficients carry the 2^-d normalization: fhat(S) = E_x[f(x) x^S].
FourierSpectrum wht(const RealFunction& f);
FourierSpectrum wht(const BooleanFunction& f);

/// Evaluates f(x) = sum_S fhat(S) x^S at every point; no scaling is applied,
/// so inverse_wht(wht(f)) reproduces f.
RealFunction inverse_wht(const FourierSpectrum& spectrum);

/// W^k = sum over |S| = k of fhat(S)^2.
double fourier_weight(const FourierSpectrum& spectrum, int degree);

/// The full degree-weight vector (W^0, ..., W^d). For a Boolean-valued function
/// the entries sum to 1 (Parseval); a residual beyond 1e-9 raises NotBooleanValued.
WeightAssignment weight_profile(const FourierSpectrum& spectrum);

/// <f, g> = E_x[f(x) g(x)] = 2^-d sum_x f(x) g(x).
double inner_product(const RealFunction& f, const RealFunction& g);

/// Applies T_alpha: scales each coefficient by alpha^|S| (with alpha^0 = 1).
FourierSpectrum noise_operator(const FourierSpectrum& spectrum, double alpha);

/// Noise stability E[f(x) f(y)] over alpha-correlated pairs, evaluated through
/// the spectrum: sum_S alpha^|S| fhat(S)^2.
double stability(const BooleanFunction& f, double alpha);

/// Same degree-weighted sum starting from a precomputed profile.
double stability(const WeightAssignment& profile, double alpha);

/// Independent route to the stability: direct enumeration of all pairs, weighting
/// f(x) f(y) by the channel probability ((1+a)/2)^(d-h) ((1-a)/2)^h for Hamming
/// distance h. O(4^d), so capped at d <= 6.
double stability_bruteforce(const BooleanFunction& f, double alpha);

/// p_alpha = (1 + stability)/2: probability that f agrees on an alpha-correlated pair.
double collision_probability(const BooleanFunction& f, double alpha);

struct CollisionEstimate {
    double estimate;
    double std_error; // sqrt(p(1-p)/trials)
    std::uint64_t trials;
};

/// Samples alpha-correlated pairs and counts agreements of f.
CollisionEstimate monte_carlo_collision(const BooleanFunction& f, double alpha,
                                        std::uint64_t trials, Rng& rng);

} // namespace cubelsh
