#include "cubelsh/fourier.hpp"

#include <bit>
#include <cmath>
#include <string>

namespace cubelsh {

namespace {

void check_correlation(double alpha) {
    if (alpha < -1.0 || alpha > 1.0) {
        throw InvalidArgument("correlation must lie in [-1, 1], got " + std::to_string(alpha));
    }
}

// In-place butterfly: after the pass, out[S] = sum_x in[x] * (-1)^popcount(x & S).
void hadamard_in_place(std::vector<double>& values) {
    for (std::size_t half = 1; half < values.size(); half <<= 1) {
        for (std::size_t block = 0; block < values.size(); block += half << 1) {
            for (std::size_t i = block; i < block + half; ++i) {
                const double a = values[i];
                const double b = values[i + half];
                values[i] = a + b;
                values[i + half] = a - b;
            }
        }
    }
}

} // namespace

RealFunction to_real(const BooleanFunction& f) {
    RealFunction r{f.dimension(), std::vector<double>(f.size())};
    for (std::size_t p = 0; p < f.size(); ++p) r.values[p] = f.table()[p];
    return r;
}

FourierSpectrum::FourierSpectrum(int dimension, std::vector<double> coefficients)
    : dimension_(dimension), coefficients_(std::move(coefficients)) {
    if (dimension < 1 || dimension > kMaxFunctionDimension) {
        throw InvalidArgument("spectrum dimension out of range");
    }
    if (coefficients_.size() != std::size_t{1} << dimension) {
        throw InvalidArgument("spectrum for d=" + std::to_string(dimension) + " needs " +
                              std::to_string(std::size_t{1} << dimension) + " coefficients");
    }
}

FourierSpectrum wht(const RealFunction& f) {
    if (f.dimension < 1 || f.dimension > kMaxFunctionDimension ||
        f.values.size() != std::size_t{1} << f.dimension) {
        throw InvalidArgument("malformed real function");
    }
    std::vector<double> coefficients = f.values;
    hadamard_in_place(coefficients);
    const double scale = 1.0 / static_cast<double>(std::size_t{1} << f.dimension);
    for (double& c : coefficients) c *= scale;
    return {f.dimension, std::move(coefficients)};
}

FourierSpectrum wht(const BooleanFunction& f) { return wht(to_real(f)); }

RealFunction inverse_wht(const FourierSpectrum& spectrum) {
    RealFunction f{spectrum.dimension(), spectrum.coefficients()};
    hadamard_in_place(f.values);
    return f;
}

double fourier_weight(const FourierSpectrum& spectrum, int degree) {
    if (degree < 0 || degree > spectrum.dimension()) {
        throw InvalidArgument("degree " + std::to_string(degree) + " out of range [0, " +
                              std::to_string(spectrum.dimension()) + "]");
    }
    double weight = 0.0;
    for (std::uint32_t mask = 0; mask < spectrum.size(); ++mask) {
        if (std::popcount(mask) == degree) {
            weight += spectrum[mask] * spectrum[mask];
        }
    }
    return weight;
}

WeightAssignment weight_profile(const FourierSpectrum& spectrum) {
    std::vector<double> weights(static_cast<std::size_t>(spectrum.dimension()) + 1, 0.0);
    for (std::uint32_t mask = 0; mask < spectrum.size(); ++mask) {
        weights[std::popcount(mask)] += spectrum[mask] * spectrum[mask];
    }
    double total = 0.0;
    for (double w : weights) total += w;
    if (std::abs(total - 1.0) > 1e-9) {
        throw NotBooleanValued("squared coefficients sum to " + std::to_string(total) +
                               "; the spectrum does not come from a +/-1-valued function");
    }
    return WeightAssignment(std::move(weights));
}

double inner_product(const RealFunction& f, const RealFunction& g) {
    if (f.dimension != g.dimension || f.values.size() != g.values.size()) {
        throw InvalidArgument("inner product requires matching dimensions");
    }
    double sum = 0.0;
    for (std::size_t p = 0; p < f.values.size(); ++p) sum += f.values[p] * g.values[p];
    return sum / static_cast<double>(f.values.size());
}

FourierSpectrum noise_operator(const FourierSpectrum& spectrum, double alpha) {
    check_correlation(alpha);
    std::vector<double> scaled = spectrum.coefficients();
    std::vector<double> alpha_pow(static_cast<std::size_t>(spectrum.dimension()) + 1, 1.0);
    for (std::size_t k = 1; k < alpha_pow.size(); ++k) alpha_pow[k] = alpha_pow[k - 1] * alpha;
    for (std::uint32_t mask = 0; mask < scaled.size(); ++mask) {
        scaled[mask] *= alpha_pow[std::popcount(mask)];
    }
    return {spectrum.dimension(), std::move(scaled)};
}

double stability(const WeightAssignment& profile, double alpha) {
    check_correlation(alpha);
    double sum = 0.0;
    double alpha_pow = 1.0;
    for (std::size_t k = 0; k < profile.size(); ++k) {
        sum += alpha_pow * profile[k];
        alpha_pow *= alpha;
    }
    return sum;
}

double stability(const BooleanFunction& f, double alpha) {
    check_correlation(alpha);
    const FourierSpectrum spectrum = wht(f);
    double sum = 0.0;
    std::vector<double> alpha_pow(static_cast<std::size_t>(f.dimension()) + 1, 1.0);
    for (std::size_t k = 1; k < alpha_pow.size(); ++k) alpha_pow[k] = alpha_pow[k - 1] * alpha;
    for (std::uint32_t mask = 0; mask < spectrum.size(); ++mask) {
        sum += alpha_pow[std::popcount(mask)] * spectrum[mask] * spectrum[mask];
    }
    return sum;
}

double stability_bruteforce(const BooleanFunction& f, double alpha) {
    check_correlation(alpha);
    const int d = f.dimension();
    if (d > 6) {
        throw UnsupportedScale("pair enumeration is O(4^d); d=" + std::to_string(d) +
                               " exceeds the d <= 6 cap");
    }
    const double keep = (1.0 + alpha) / 2.0;
    const double flip = (1.0 - alpha) / 2.0;
    std::vector<double> channel(static_cast<std::size_t>(d) + 1);
    for (int h = 0; h <= d; ++h) {
        channel[h] = std::pow(keep, d - h) * std::pow(flip, h);
    }
    const std::size_t points = f.size();
    double sum = 0.0;
    for (PointIndex x = 0; x < points; ++x) {
        for (PointIndex y = 0; y < points; ++y) {
            const int h = std::popcount(x ^ y);
            sum += channel[h] * f.table()[x] * f.table()[y];
        }
    }
    return sum / static_cast<double>(points);
}

double collision_probability(const BooleanFunction& f, double alpha) {
    return (1.0 + stability(f, alpha)) / 2.0;
}

CollisionEstimate monte_carlo_collision(const BooleanFunction& f, double alpha,
                                        std::uint64_t trials, Rng& rng) {
    check_correlation(alpha);
    if (trials == 0) {
        throw InvalidArgument("monte carlo estimate needs at least one trial");
    }
    std::uint64_t agreements = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const CorrelatedPair pair = sample_correlated_pair(f.dimension(), alpha, rng);
        if (f.table()[pair.x] == f.table()[pair.y]) ++agreements;
    }
    const double estimate = static_cast<double>(agreements) / static_cast<double>(trials);
    const double std_error = std::sqrt(estimate * (1.0 - estimate) / static_cast<double>(trials));
    return {estimate, std_error, trials};
}

} // namespace cubelsh
