#include "cubelsh/optimality.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

namespace cubelsh {

namespace {

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::vector<double> powers_of(double x, int max_degree) {
    std::vector<double> p(static_cast<std::size_t>(max_degree) + 1, 1.0);
    for (int k = 1; k <= max_degree; ++k) p[k] = p[k - 1] * x;
    return p;
}

std::vector<std::uint64_t> dictator_ordinals(int dimension) {
    std::vector<std::uint64_t> ordinals;
    for (int i = 1; i <= dimension; ++i) {
        ordinals.push_back(ordinal_of(make_dictator(dimension, i, +1)));
        ordinals.push_back(ordinal_of(make_dictator(dimension, i, -1)));
    }
    std::sort(ordinals.begin(), ordinals.end());
    return ordinals;
}

void require_interior(const RhoParams& params, const char* who) {
    if (params.beta <= 0.0 || params.alpha >= 1.0) {
        throw InvalidArgument(std::string(who) + " requires 0 < beta < alpha < 1");
    }
}

std::string describe_pair(const RhoParams& params) {
    std::ostringstream out;
    out << "(alpha=" << params.alpha << ", beta=" << params.beta << ")";
    return out.str();
}

} // namespace

WeightProfileTable enumerate_weight_profiles(int dimension) {
    const std::uint64_t count = function_count(dimension);
    const std::size_t points = std::size_t{1} << dimension;
    WeightProfileTable table;
    table.dimension = dimension;
    table.profiles.resize(count);

    std::vector<double> values(points);
    for (std::uint64_t ordinal = 0; ordinal < count; ++ordinal) {
        for (std::size_t p = 0; p < points; ++p) {
            values[p] = (ordinal >> p) & 1u ? -1.0 : 1.0;
        }
        for (std::size_t half = 1; half < points; half <<= 1) {
            for (std::size_t block = 0; block < points; block += half << 1) {
                for (std::size_t i = block; i < block + half; ++i) {
                    const double a = values[i];
                    const double b = values[i + half];
                    values[i] = a + b;
                    values[i + half] = a - b;
                }
            }
        }
        std::vector<double> profile(static_cast<std::size_t>(dimension) + 1, 0.0);
        const double scale = 1.0 / static_cast<double>(points);
        for (std::uint32_t mask = 0; mask < points; ++mask) {
            const double coefficient = values[mask] * scale;
            profile[std::popcount(mask)] += coefficient * coefficient;
        }
        table.profiles[ordinal] = std::move(profile);
    }
    return table;
}

bool ExhaustiveResult::argmin_is_exactly_dictators() const {
    std::vector<std::uint64_t> found;
    found.reserve(argmin.size());
    for (const BooleanFunction& f : argmin) found.push_back(ordinal_of(f));
    std::sort(found.begin(), found.end());
    return found == dictator_ordinals(dimension);
}

ExhaustiveResult exhaustive_min_rho(int dimension, const RhoParams& params, double tolerance) {
    return exhaustive_min_rho(enumerate_weight_profiles(dimension), params, tolerance);
}

ExhaustiveResult exhaustive_min_rho(const WeightProfileTable& table, const RhoParams& params,
                                    double tolerance, double dictator_rho_bias) {
    if (params.alpha >= 1.0) {
        throw InvalidArgument("exhaustive minimization requires alpha < 1");
    }
    const int d = table.dimension;
    const std::vector<double> alpha_pow = powers_of(params.alpha, d);
    const std::vector<double> beta_pow = powers_of(params.beta, d);
    const std::vector<std::uint64_t> dictators = dictator_ordinals(d);

    const auto rho_of = [&](std::uint64_t ordinal) -> double {
        const std::vector<double>& w = table.profiles[ordinal];
        double s_beta = 0.0;
        double s_alpha = 0.0;
        for (int k = 0; k <= d; ++k) {
            s_beta += w[k] * beta_pow[k];
            s_alpha += w[k] * alpha_pow[k];
        }
        const double p_beta = (1.0 + s_beta) / 2.0;
        if (p_beta >= 1.0) return std::numeric_limits<double>::quiet_NaN(); // skip: constants
        const double p_alpha = (1.0 + s_alpha) / 2.0;
        double value = p_alpha >= 1.0 ? 0.0 : std::log(p_alpha) / std::log(p_beta);
        if (dictator_rho_bias != 0.0 &&
            std::binary_search(dictators.begin(), dictators.end(), ordinal)) {
            value += dictator_rho_bias;
        }
        return value;
    };

    double min_rho = std::numeric_limits<double>::infinity();
    std::vector<double> rhos(table.profiles.size());
    for (std::uint64_t ordinal = 0; ordinal < table.profiles.size(); ++ordinal) {
        const double value = rho_of(ordinal);
        rhos[ordinal] = value;
        if (!std::isnan(value) && value < min_rho) min_rho = value;
    }

    ExhaustiveResult result{d, params, min_rho, {}, 2 * d};
    for (std::uint64_t ordinal = 0; ordinal < rhos.size(); ++ordinal) {
        if (!std::isnan(rhos[ordinal]) && rhos[ordinal] <= min_rho + tolerance) {
            result.argmin.push_back(function_from_ordinal(d, ordinal));
        }
    }
    return result;
}

DictatorCensus verify_dictator_characterization(int dimension) {
    const WeightProfileTable table = enumerate_weight_profiles(dimension);
    std::vector<std::uint64_t> members;
    for (std::uint64_t ordinal = 0; ordinal < table.profiles.size(); ++ordinal) {
        if (std::abs(table.profiles[ordinal][1] - 1.0) <= 1e-9) {
            members.push_back(ordinal);
        }
    }
    return {members.size(), members == dictator_ordinals(dimension)};
}

// --- simplex optimization ----------------------------------------------------

namespace {

// Visits every point of the simplex grid {w >= 0, sum w = 1} with entries that
// are multiples of 1/units.
template <typename Visit>
void for_each_simplex_point(int bins, int units, Visit&& visit) {
    std::vector<int> counts(bins, 0);
    const auto recurse = [&](auto&& self, int bin, int remaining) -> void {
        if (bin == bins - 1) {
            counts[bin] = remaining;
            visit(counts);
            return;
        }
        for (int c = 0; c <= remaining; ++c) {
            counts[bin] = c;
            self(self, bin + 1, remaining - c);
        }
    };
    recurse(recurse, 0, units);
}

} // namespace

WeightOptimum refine_weights(std::vector<double> start, const RhoParams& params,
                             double initial_step, int refine_iters) {
    if (start.size() < 2) {
        throw InvalidArgument("weight vector needs at least degrees 0 and 1");
    }
    double sum = 0.0;
    for (double w : start) {
        if (w < -1e-12) throw InvalidArgument("start point has a negative weight");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw InvalidArgument("start point must lie on the probability simplex");
    }

    constexpr double kFinalStep = 1e-8;
    std::uint64_t evaluations = 0;
    const auto objective = [&](const std::vector<double>& w) {
        ++evaluations;
        return rho_from_raw_weights(w, params);
    };

    std::vector<double> current = std::move(start);
    double best = objective(current);
    double step = initial_step;
    bool converged = false;

    for (int iter = 0; iter < refine_iters; ++iter) {
        bool improved = false;
        for (std::size_t from = 0; from < current.size(); ++from) {
            if (current[from] <= 0.0) continue;
            const double amount = std::min(step, current[from]);
            for (std::size_t to = 0; to < current.size(); ++to) {
                if (to == from) continue;
                std::vector<double> candidate = current;
                candidate[from] -= amount;
                candidate[to] += amount;
                if (candidate[from] < 0.0) candidate[from] = 0.0;
                const double value = objective(candidate);
                if (value < best) {
                    best = value;
                    current = std::move(candidate);
                    improved = true;
                    break;
                }
            }
        }
        if (!improved) {
            step /= 2.0;
            if (step < kFinalStep) {
                converged = true;
                break;
            }
        }
    }

    return {WeightAssignment(current), best, converged, evaluations};
}

WeightOptimum optimize_weights(int dimension, const RhoParams& params, double grid_resolution,
                               int refine_iters) {
    if (dimension < 1) throw InvalidArgument("dimension must be >= 1");
    if (params.beta <= 0.0) {
        throw InvalidArgument("weight optimization requires beta > 0");
    }
    if (!(grid_resolution > 0.0 && grid_resolution <= 0.5)) {
        throw InvalidArgument("grid resolution must lie in (0, 0.5]");
    }

    const int bins = dimension + 1;
    const int units = std::max(1, static_cast<int>(std::lround(1.0 / grid_resolution)));
    std::vector<double> best_point;
    double best_value = std::numeric_limits<double>::infinity();
    std::uint64_t grid_evaluations = 0;

    for_each_simplex_point(bins, units, [&](const std::vector<int>& counts) {
        std::vector<double> w(counts.size());
        for (std::size_t k = 0; k < counts.size(); ++k) {
            w[k] = static_cast<double>(counts[k]) / units;
        }
        ++grid_evaluations;
        const double value = rho_from_raw_weights(w, params);
        if (value < best_value) {
            best_value = value;
            best_point = std::move(w);
        }
    });

    WeightOptimum refined = refine_weights(std::move(best_point), params, grid_resolution, refine_iters);
    refined.evaluations += grid_evaluations;
    return refined;
}

// --- lemma checks ------------------------------------------------------------

ContinuousWeightSpec::ContinuousWeightSpec(std::vector<Term> terms) : terms_(std::move(terms)) {
    if (terms_.empty()) throw InvalidArgument("weight spec needs at least one term");
    double sum = 0.0;
    for (auto& [weight, exponent] : terms_) {
        if (weight < 0.0) {
            if (weight > -1e-12) weight = 0.0;
            else throw InvalidArgument("weight spec entries must be nonnegative");
        }
        if (exponent < 1.0) throw InvalidArgument("weight spec exponents must satisfy kappa >= 1");
        sum += weight;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw InvalidArgument("weight spec weights must sum to 1 within 1e-12");
    }
}

double ContinuousWeightSpec::evaluate(double x) const {
    if (x < 0.0 || x > 1.0) throw InvalidArgument("s(x) is defined for x in [0, 1]");
    double value = 0.0;
    for (const auto& [weight, exponent] : terms_) {
        value += weight * std::pow(x, exponent);
    }
    return value;
}

GammaProbe::GammaProbe(double gamma_value) : gamma(gamma_value) {
    if (!(gamma >= 1.0)) {
        throw InvalidArgument("gamma must satisfy gamma >= 1, got " + std::to_string(gamma));
    }
}

CheckReport check_lemma_w0(const RhoParams& params, int interior_samples, Rng& rng) {
    require_interior(params, "check_lemma_w0");
    Stopwatch watch;
    CheckReport report;
    report.name = "lemma-w0";
    report.grid = describe_pair(params) + ", " + std::to_string(interior_samples) +
                  " interior weight vectors, d in [1, 8]";

    constexpr double kStep = 1e-6;
    for (int sample = 0; sample < interior_samples; ++sample) {
        const int d = 1 + static_cast<int>(rng.next_below(8));
        std::vector<double> w(static_cast<std::size_t>(d) + 1, 0.0);
        w[0] = rng.uniform(0.01, 0.99);
        const double rest = 1.0 - w[0];
        if (d == 1) {
            w[1] = rest;
        } else {
            const double share = rng.uniform(0.05, 0.95);
            w[1] = rest * share;
            double total = 0.0;
            std::vector<double> raw(static_cast<std::size_t>(d) - 1);
            for (double& g : raw) {
                g = -std::log(1.0 - rng.next_double());
                total += g;
            }
            for (int k = 2; k <= d; ++k) {
                w[k] = rest * (1.0 - share) * raw[k - 2] / total;
            }
        }

        // central difference of rho in the (w0 <- w1) exchange direction
        std::vector<double> up = w, down = w;
        up[0] += kStep;
        up[1] -= kStep;
        down[0] -= kStep;
        down[1] += kStep;
        const double derivative =
            (rho_from_raw_weights(up, params) - rho_from_raw_weights(down, params)) / (2.0 * kStep);
        ++report.cases;
        if (!(derivative > 0.0)) {
            std::ostringstream msg;
            msg << "d(rho)/d(w0) = " << derivative << " <= 0 at w0=" << w[0] << ", w1=" << w[1]
                << ", d=" << d << " " << describe_pair(params);
            report.violations.push_back(msg.str());
        }

        // g(x) = (1+s(x))/(1-x) * log((1+s(x))/2) must decrease on (0, 1)
        const auto g = [&](double x) {
            const double s = evaluate_s(w, x);
            return (1.0 + s) / (1.0 - x) * std::log((1.0 + s) / 2.0);
        };
        double previous = g(0.05);
        for (double x = 0.10; x < 0.96; x += 0.05) {
            const double value = g(x);
            ++report.cases;
            if (!(value < previous)) {
                std::ostringstream msg;
                msg << "g(x) not decreasing at x=" << x << " (g=" << value << ", previous=" << previous
                    << ") for sampled weights with w0=" << w[0];
                report.violations.push_back(msg.str());
            }
            previous = value;
        }
    }

    // monomial inequality s_k'(x)(1-x) + s_k(x) <= 1 for s_k(x) = x^k
    for (int k = 0; k <= 8; ++k) {
        for (double x = 0.05; x < 1.0; x += 0.05) {
            const double value = (k == 0 ? 0.0 : k * std::pow(x, k - 1)) * (1.0 - x) + std::pow(x, k);
            ++report.cases;
            if (value > 1.0 + 1e-12) {
                std::ostringstream msg;
                msg << "monomial bound failed: k=" << k << ", x=" << x << ", value=" << value;
                report.violations.push_back(msg.str());
            }
        }
    }

    report.elapsed_seconds = watch.seconds();
    return report;
}

CheckReport check_gamma_reduction(const RhoParams& params, const GammaProbe& gamma, int trials,
                                  Rng& rng) {
    require_interior(params, "check_gamma_reduction");
    Stopwatch watch;
    CheckReport report;
    report.name = "gamma-reduction";
    {
        std::ostringstream grid;
        grid << describe_pair(params) << ", gamma=" << gamma.gamma << ", " << trials << " mixtures";
        report.grid = grid.str();
    }

    const double beta = params.beta;
    const double g = gamma.gamma;

    std::vector<double> alpha_grid;
    for (double t = 0.1; t < 0.95; t += 0.1) {
        alpha_grid.push_back(beta + (1.0 - beta) * t);
    }
    alpha_grid.push_back(params.alpha);

    const auto check_spec = [&](const ContinuousWeightSpec& spec, const char* kind) {
        const double at_beta = spec.evaluate(beta);
        ++report.cases;
        if (std::abs(at_beta - std::pow(beta, g)) > 1e-9) {
            std::ostringstream msg;
            msg << kind << " mixture violates its own constraint: s(beta)=" << at_beta
                << " vs beta^gamma=" << std::pow(beta, g);
            report.violations.push_back(msg.str());
            return;
        }
        for (double a : alpha_grid) {
            ++report.cases;
            const double bound = std::pow(a, g);
            const double value = spec.evaluate(a);
            if (value > bound + 1e-12) {
                std::ostringstream msg;
                msg << kind << " mixture exceeds x^gamma at x=" << a << ": s=" << value
                    << " > " << bound << " (gamma=" << g << ", beta=" << beta << ")";
                report.violations.push_back(msg.str());
            }
        }
    };

    // equality case: the single exponent gamma reproduces x^gamma on the nose
    check_spec(ContinuousWeightSpec({{1.0, g}}), "single-term");

    if (g > 1.0) {
        for (int trial = 0; trial < trials; ++trial) {
            double gamma0 = rng.uniform(1.0, g);
            double gamma1 = rng.uniform(g, std::max(g + 1.0, 10.0));
            if (g - gamma0 < 1e-3) gamma0 = std::max(1.0, g - 1e-3);
            if (gamma1 - g < 1e-3) gamma1 = g + 1e-3;

            const double b0 = std::pow(beta, gamma0);
            const double bg = std::pow(beta, g);
            const double b1 = std::pow(beta, gamma1);

            // two terms straddling gamma, weights solving s(beta) = beta^gamma
            const double w0 = (bg - b1) / (b0 - b1);
            check_spec(ContinuousWeightSpec({{w0, gamma0}, {1.0 - w0, gamma1}}), "two-term");

            // three terms: residual mass on gamma itself, transfer ratio phi(beta)
            const double phi_beta = (b0 - bg) / (bg - b1);
            const double a = rng.uniform(0.05, 0.95) / (1.0 + phi_beta);
            const double c = a * phi_beta;
            check_spec(ContinuousWeightSpec({{a, gamma0}, {1.0 - a - c, g}, {c, gamma1}}),
                       "three-term");

            // phi(x) = (x^g0 - x^g)/(x^g - x^g1) strictly decreasing on (0, 1)
            const auto phi = [&](double x) {
                return (std::pow(x, gamma0) - std::pow(x, g)) /
                       (std::pow(x, g) - std::pow(x, gamma1));
            };
            double previous = phi(0.05);
            for (double x = 0.10; x < 0.96; x += 0.05) {
                const double value = phi(x);
                ++report.cases;
                if (!(value < previous)) {
                    std::ostringstream msg;
                    msg << "phi not decreasing at x=" << x << " for exponents (" << gamma0 << ", "
                        << g << ", " << gamma1 << ")";
                    report.violations.push_back(msg.str());
                }
                previous = value;
            }

            // equivalent form: lambda0 x^l0 / (1 - x^l0) > lambda1 x^l1 / (1 - x^l1)
            const double lambda0 = gamma0 - g;
            const double lambda1 = gamma1 - g;
            for (double x = 0.05; x < 0.96; x += 0.05) {
                const double lhs = lambda0 * std::pow(x, lambda0) / (1.0 - std::pow(x, lambda0));
                const double rhs = lambda1 * std::pow(x, lambda1) / (1.0 - std::pow(x, lambda1));
                ++report.cases;
                if (!(lhs > rhs)) {
                    std::ostringstream msg;
                    msg << "lambda inequality failed at x=" << x << " for lambdas (" << lambda0
                        << ", " << lambda1 << ")";
                    report.violations.push_back(msg.str());
                }
            }
        }
    }

    report.elapsed_seconds = watch.seconds();
    return report;
}

CheckReport check_rho_gamma_increasing(const RhoParams& params, std::span<const double> gamma_grid) {
    require_interior(params, "check_rho_gamma_increasing");
    if (gamma_grid.size() < 2) throw InvalidArgument("gamma grid needs at least two points");
    for (std::size_t i = 0; i < gamma_grid.size(); ++i) {
        if (gamma_grid[i] < 1.0) throw InvalidArgument("gamma grid entries must be >= 1");
        if (i > 0 && gamma_grid[i] <= gamma_grid[i - 1]) {
            throw InvalidArgument("gamma grid must be sorted strictly ascending");
        }
    }

    Stopwatch watch;
    CheckReport report;
    report.name = "rho-gamma-increasing";
    {
        std::ostringstream grid;
        grid << describe_pair(params) << ", " << gamma_grid.size() << " gamma points in ["
             << gamma_grid.front() << ", " << gamma_grid.back() << "]";
        report.grid = grid.str();
    }

    const auto rho_gamma = [&](double g) {
        return std::log((1.0 + std::pow(params.alpha, g)) / 2.0) /
               std::log((1.0 + std::pow(params.beta, g)) / 2.0);
    };

    if (gamma_grid.front() == 1.0) {
        ++report.cases;
        if (std::abs(rho_gamma(1.0) - bitsampling_rho(params)) > 1e-12) {
            report.violations.push_back("rho(1) does not match the closed bit-sampling form");
        }
    }

    std::vector<double> values;
    values.reserve(gamma_grid.size());
    for (double g : gamma_grid) values.push_back(rho_gamma(g));

    for (std::size_t i = 1; i < values.size(); ++i) {
        ++report.cases;
        if (!(values[i] > values[i - 1])) {
            std::ostringstream msg;
            msg << "rho(gamma) not increasing between gamma=" << gamma_grid[i - 1] << " and "
                << gamma_grid[i] << " at " << describe_pair(params);
            report.violations.push_back(msg.str());
        }
    }

    constexpr double kStep = 1e-6;
    for (std::size_t i = 1; i + 1 < gamma_grid.size(); ++i) {
        const double g = gamma_grid[i];
        const double derivative = (rho_gamma(g + kStep) - rho_gamma(g - kStep)) / (2.0 * kStep);
        ++report.cases;
        if (!(derivative > 0.0)) {
            std::ostringstream msg;
            msg << "central difference of rho(gamma) not positive at gamma=" << g << " "
                << describe_pair(params);
            report.violations.push_back(msg.str());
        }
    }

    // limit behavior: rho(gamma) stays below 1. Once alpha^gamma drops under
    // double precision the ratio saturates at exactly 1, so the strict check
    // only applies while the numerator is representable.
    if (std::pow(params.alpha, gamma_grid.back()) >= 1e-14) {
        ++report.cases;
        if (!(values.back() < 1.0)) {
            report.violations.push_back("rho(gamma) reached 1 at the last grid point");
        }
    } else {
        ++report.cases;
        if (values.back() > 1.0) {
            report.violations.push_back("rho(gamma) exceeded its limit 1");
        }
    }

    report.elapsed_seconds = watch.seconds();
    return report;
}

CheckReport check_log_inequality(std::span<const double> x_grid) {
    Stopwatch watch;
    CheckReport report;
    report.name = "log-inequality";
    report.grid = std::to_string(x_grid.size()) + " positive grid points";

    for (double x : x_grid) {
        if (!(x > 0.0)) throw InvalidArgument("log inequality grid requires x > 0");
        const double slack = (x - 1.0) - std::log(x);
        ++report.cases;
        if (slack < -1e-12) {
            std::ostringstream msg;
            msg << "log x > x - 1 at x=" << x << " (slack " << slack << ")";
            report.violations.push_back(msg.str());
        }
        // near-equality is only allowed in a vanishing neighborhood of x = 1
        if (slack <= 1e-12 && std::abs(x - 1.0) > 1e-5) {
            std::ostringstream msg;
            msg << "equality holds away from x=1 at x=" << x;
            report.violations.push_back(msg.str());
        }
    }

    report.elapsed_seconds = watch.seconds();
    return report;
}

// --- whole-suite driver ------------------------------------------------------

namespace {

std::vector<double> grid_values(double step) {
    std::vector<double> values;
    for (double v = step; v < 1.0 - 1e-9; v += step) values.push_back(v);
    return values;
}

std::vector<RhoParams> grid_pairs(double step) {
    std::vector<RhoParams> pairs;
    const std::vector<double> values = grid_values(step);
    for (double alpha : values) {
        for (double beta : values) {
            if (beta < alpha) pairs.emplace_back(alpha, beta);
        }
    }
    return pairs;
}

void merge(CheckReport& into, const CheckReport& part) {
    into.cases += part.cases;
    into.violations.insert(into.violations.end(), part.violations.begin(), part.violations.end());
    into.elapsed_seconds += part.elapsed_seconds;
}

} // namespace

std::vector<CheckReport> run_verification(const VerificationConfig& config) {
    if (config.d_max < 1 || config.d_max > 4) {
        throw UnsupportedScale("exhaustive verification supports d_max in [1, 4]; d_max=" +
                               std::to_string(config.d_max) + " would need " +
                               (config.d_max == 5 ? std::string("4294967296 (2^32)")
                                                  : "2^(2^" + std::to_string(config.d_max) + ")") +
                               " truth tables per grid pair");
    }

    std::vector<CheckReport> reports;
    const std::vector<RhoParams> pairs = grid_pairs(config.grid_step);
    Rng rng(config.seed);

    // 1. exhaustive main-theorem scan
    {
        Stopwatch watch;
        CheckReport report;
        report.name = "main-theorem-exhaustive";
        {
            std::ostringstream grid;
            grid << "d in [1, " << config.d_max << "], alpha/beta step " << config.grid_step << " ("
                 << pairs.size() << " pairs)";
            report.grid = grid.str();
        }
        for (int d = 1; d <= config.d_max; ++d) {
            const WeightProfileTable table = enumerate_weight_profiles(d);
            for (const RhoParams& params : pairs) {
                const ExhaustiveResult result =
                    exhaustive_min_rho(table, params, config.tolerance, config.dictator_rho_bias);
                const double expected = bitsampling_rho(params);
                ++report.cases;
                if (std::abs(result.min_rho - expected) > config.tolerance) {
                    std::ostringstream msg;
                    msg << "min rho " << result.min_rho << " differs from closed form " << expected
                        << " at d=" << d << " " << describe_pair(params);
                    report.violations.push_back(msg.str());
                }
                ++report.cases;
                if (!result.argmin_is_exactly_dictators()) {
                    std::ostringstream msg;
                    msg << "argmin set (" << result.argmin.size() << " functions) is not the "
                        << result.dictator_count_expected << " dictators at d=" << d << " "
                        << describe_pair(params);
                    report.violations.push_back(msg.str());
                }
            }
        }
        report.elapsed_seconds = watch.seconds();
        reports.push_back(std::move(report));
    }

    // 2. dictator characterization
    {
        Stopwatch watch;
        CheckReport report;
        report.name = "dictator-characterization";
        report.grid = "d in [1, " + std::to_string(config.d_max) + "]";
        for (int d = 1; d <= config.d_max; ++d) {
            const DictatorCensus census = verify_dictator_characterization(d);
            ++report.cases;
            if (census.count != static_cast<std::uint64_t>(2 * d) || !census.set_is_exactly_dictators) {
                std::ostringstream msg;
                msg << "W^1=1 census at d=" << d << " has " << census.count
                    << " members (expected " << 2 * d << " dictators)"
                    << (census.set_is_exactly_dictators ? "" : "; set mismatch");
                report.violations.push_back(msg.str());
            }
        }
        report.elapsed_seconds = watch.seconds();
        reports.push_back(std::move(report));
    }

    // 3. simplex optimizer must land on e1
    {
        Stopwatch watch;
        CheckReport report;
        report.name = "optimizer-convergence";
        const std::size_t stride = std::max<std::size_t>(1, pairs.size() / 10);
        std::vector<RhoParams> sample;
        for (std::size_t i = 0; i < pairs.size(); i += stride) sample.push_back(pairs[i]);
        {
            std::ostringstream grid;
            grid << "d=" << config.d_max << ", " << sample.size() << " (alpha, beta) pairs";
            report.grid = grid.str();
        }
        for (const RhoParams& params : sample) {
            const WeightOptimum optimum = optimize_weights(config.d_max, params, 0.05, 400);
            double distance = 0.0;
            for (std::size_t k = 0; k < optimum.weights.size(); ++k) {
                const double target = k == 1 ? 1.0 : 0.0;
                distance = std::max(distance, std::abs(optimum.weights[k] - target));
            }
            ++report.cases;
            if (!optimum.converged || distance > 1e-6) {
                std::ostringstream msg;
                msg << "optimizer ended " << distance << " away from e1 (converged="
                    << optimum.converged << ") at " << describe_pair(params);
                report.violations.push_back(msg.str());
            }
            ++report.cases;
            if (std::abs(optimum.rho_value - bitsampling_rho(params)) > config.tolerance) {
                std::ostringstream msg;
                msg << "optimizer value " << optimum.rho_value << " differs from closed form at "
                    << describe_pair(params);
                report.violations.push_back(msg.str());
            }
        }
        report.elapsed_seconds = watch.seconds();
        reports.push_back(std::move(report));
    }

    // 4. weight-level uniqueness on the coarse simplex grid
    {
        Stopwatch watch;
        CheckReport report;
        report.name = "weight-uniqueness";
        const std::vector<RhoParams> interior = {
            {0.9, 0.5}, {0.7, 0.3}, {0.4, 0.2}};
        report.grid = "simplex resolution 0.05 at d=4, 3 interior (alpha, beta) pairs";
        for (const RhoParams& params : interior) {
            const double base = bitsampling_rho(params);
            for_each_simplex_point(5, 20, [&](const std::vector<int>& counts) {
                if (counts[1] == 20) return; // e1 itself
                std::vector<double> w(counts.size());
                for (std::size_t k = 0; k < counts.size(); ++k) w[k] = counts[k] / 20.0;
                const double value = rho_from_raw_weights(w, params);
                if (std::isinf(value)) return; // w0 = 1 corner has no finite rho
                ++report.cases;
                if (!(value - base > 1e-12)) {
                    std::ostringstream msg;
                    msg << "grid point with rho " << value << " does not exceed the dictator value "
                        << base << " at " << describe_pair(params);
                    report.violations.push_back(msg.str());
                }
            });
        }
        report.elapsed_seconds = watch.seconds();
        reports.push_back(std::move(report));
    }

    // 5. lemma battery over the interior grid
    {
        CheckReport w0_total;
        w0_total.name = "lemma-w0";
        w0_total.grid = std::to_string(pairs.size()) + " grid pairs x " +
                        std::to_string(config.interior_samples) + " samples";
        for (const RhoParams& params : pairs) {
            Rng child = rng.split();
            merge(w0_total, check_lemma_w0(params, config.interior_samples, child));
        }
        reports.push_back(std::move(w0_total));
    }
    {
        CheckReport gamma_total;
        gamma_total.name = "gamma-reduction";
        const std::vector<double> probes = {1.0, 1.5, 2.0, 3.0, 5.0};
        gamma_total.grid = std::to_string(pairs.size()) + " grid pairs x gammas {1, 1.5, 2, 3, 5}";
        for (const RhoParams& params : pairs) {
            for (double g : probes) {
                Rng child = rng.split();
                merge(gamma_total, check_gamma_reduction(params, GammaProbe(g), config.gamma_trials, child));
            }
        }
        reports.push_back(std::move(gamma_total));
    }
    {
        CheckReport rho_total;
        rho_total.name = "rho-gamma-increasing";
        const std::vector<double> grid = {1.0, 1.5, 2.0, 3.0, 5.0, 10.0, 50.0};
        rho_total.grid = std::to_string(pairs.size()) + " grid pairs x gamma grid {1..50}";
        for (const RhoParams& params : pairs) {
            merge(rho_total, check_rho_gamma_increasing(params, grid));
        }
        reports.push_back(std::move(rho_total));
    }
    {
        const std::vector<double> xs = {1e-6, 1e-3, 0.1, 0.5, 0.9, 0.999,  1.0,
                                        1.001, 1.1, 2.0, 10.0, 1000.0, 1e6};
        reports.push_back(check_log_inequality(xs));
    }

    return reports;
}

} // namespace cubelsh
