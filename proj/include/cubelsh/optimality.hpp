#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cubelsh/boolean_function.hpp"
#include "cubelsh/rho.hpp"
#include "cubelsh/rng.hpp"
#include "cubelsh/weights.hpp"

namespace cubelsh {

// --- exhaustive minimization -------------------------------------------------

/// Degree-weight profiles of every Boolean function on d bits (d <= 4), indexed
/// by function ordinal. Computing them once lets many (alpha, beta) pairs reuse
/// the enumeration.
struct WeightProfileTable {
    int dimension;
    std::vector<std::vector<double>> profiles; // [ordinal][degree]
};

WeightProfileTable enumerate_weight_profiles(int dimension);

struct ExhaustiveResult {
    int dimension;
    RhoParams params;
    double min_rho;
    /// Every function whose rho lies within the grouping tolerance of the minimum.
    std::vector<BooleanFunction> argmin;
    /// 2d: how many minimizers the dictator family predicts.
    int dictator_count_expected;

    /// True when argmin is exactly the set { +/- x_i : i in [d] }.
    bool argmin_is_exactly_dictators() const;
};

/// Scans all 2^(2^d) functions, skipping those with p_beta = 1 (for beta < 1
/// these are precisely the constants), and collects the minimizers of rho.
/// `dictator_rho_bias` perturbs the rho of dictator functions and exists only
/// so the verification harness can prove it detects failures; it is 0 in any
/// real run.
ExhaustiveResult exhaustive_min_rho(int dimension, const RhoParams& params, double tolerance);
ExhaustiveResult exhaustive_min_rho(const WeightProfileTable& table, const RhoParams& params,
                                    double tolerance, double dictator_rho_bias = 0.0);

struct DictatorCensus {
    std::uint64_t count;            // functions with W^1 = 1 within 1e-9
    bool set_is_exactly_dictators;  // the census equals { +/- x_i }
};

/// Enumerates all functions on d bits and identifies those with full weight at
/// degree 1.
DictatorCensus verify_dictator_characterization(int dimension);

// --- simplex optimization ----------------------------------------------------

struct WeightOptimum {
    WeightAssignment weights;
    double rho_value;
    bool converged;
    std::uint64_t evaluations;
};

/// Coarse simplex-grid search followed by coordinate-exchange refinement with a
/// halving step (stops at step 1e-8). Degenerate corners with p_beta = 1 score
/// +infinity, so the optimizer moves off them.
WeightOptimum optimize_weights(int dimension, const RhoParams& params, double grid_resolution,
                               int refine_iters);

/// Just the refinement stage, from an explicit start point on the simplex.
WeightOptimum refine_weights(std::vector<double> start, const RhoParams& params,
                             double initial_step, int refine_iters);

// --- lemma checks ------------------------------------------------------------

/// Relaxed weight specification: pairs (weight, exponent) with real exponents
/// kappa >= 1, weights nonnegative and summing to 1. s(x) = sum w x^kappa.
class ContinuousWeightSpec {
public:
    using Term = std::pair<double, double>; // (weight, exponent)

    explicit ContinuousWeightSpec(std::vector<Term> terms);

    const std::vector<Term>& terms() const { return terms_; }
    double evaluate(double x) const;

private:
    std::vector<Term> terms_;
};

/// The exponent gamma >= 1 parameterizing the constraint s(beta) = beta^gamma.
struct GammaProbe {
    explicit GammaProbe(double gamma_value);
    double gamma;
};

/// Outcome of one numeric check: how many cases ran and which ones violated the
/// claimed inequality. An empty violation list means the check passed.
struct CheckReport {
    std::string name;
    std::string grid; // human-readable description of the parameter grid
    std::uint64_t cases = 0;
    std::vector<std::string> violations;
    double elapsed_seconds = 0.0;

    bool passed() const { return violations.empty(); }
};

/// Moving weight from degree 1 back to degree 0 must increase rho: verified by
/// central finite differences (step 1e-6) on sampled interior weight vectors,
/// together with the monotonicity of g(x) = (1+s(x))/(1-x) * log((1+s(x))/2)
/// and the monomial inequality s'(x)(1-x) + s(x) <= 1.
CheckReport check_lemma_w0(const RhoParams& params, int interior_samples, Rng& rng);

/// Among relaxed specs with s(beta) = beta^gamma fixed, the single exponent
/// s(x) = x^gamma maximizes s(alpha): verified on sampled two- and three-term
/// mixtures, plus monotonicity of the transfer ratio phi and of
/// psi(t) = t x^t / (1 - x^t).
CheckReport check_gamma_reduction(const RhoParams& params, const GammaProbe& gamma, int trials,
                                  Rng& rng);

/// rho(gamma) = log((1+alpha^gamma)/2) / log((1+beta^gamma)/2) increases in
/// gamma: checked across the grid and by central differences at interior points.
CheckReport check_rho_gamma_increasing(const RhoParams& params, std::span<const double> gamma_grid);

/// log x <= x - 1 with equality only at x = 1.
CheckReport check_log_inequality(std::span<const double> x_grid);

// --- whole-suite driver ------------------------------------------------------

struct VerificationConfig {
    int d_max = 4;
    double grid_step = 0.1;         // alpha/beta grid spacing on (0, 1)
    double tolerance = 1e-9;        // min-rho match and argmin grouping tolerance
    int interior_samples = 100;     // lemma-w0 sample count per (alpha, beta)
    int gamma_trials = 50;          // mixtures per gamma probe
    std::uint64_t seed = 1;
    double dictator_rho_bias = 0.0; // fault injection for harness self-tests
};

/// Runs the full battery: exhaustive minimization over the grid for each
/// d <= d_max, dictator characterization, optimizer convergence, weight-level
/// uniqueness, and all lemma checks.
std::vector<CheckReport> run_verification(const VerificationConfig& config);

} // namespace cubelsh
