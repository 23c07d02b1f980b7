#pragma once

#include <cstdint>
#include <vector>

#include "cubelsh/lsh_index.hpp"

namespace cubelsh {

/// Planted-pair workload: n random d-bit rows, `planted` query points generated
/// near distinct base rows at correlation alpha, index parameters derived from
/// (n, alpha, beta).
struct BenchConfig {
    std::uint64_t n = 10000;
    std::uint32_t d = 128;
    double alpha = 0.9;
    double beta = 0.5;
    std::uint32_t planted = 100;
    std::uint64_t seed = 42;
    /// Pairs per collision-rate stratum; every stratum contributes pairs * L events.
    std::uint64_t collision_pairs = 20000;
};

/// One collision-rate measurement at an exact Hamming distance, compared with
/// the closed-form per-table collision probability ((1+a)/2)^k at the realized
/// pair correlation a = 1 - 2r/d.
struct CollisionStratum {
    std::uint32_t dimension;
    std::uint32_t distance;
    double correlation; // 1 - 2*distance/dimension
    double expected;    // ((1+correlation)/2)^k
    double measured;
    double sigma; // calibrated estimator deviation (collision_rate_sigma)
    std::uint64_t events;

    bool within_3_sigma() const {
        return measured >= expected - 3 * sigma && measured <= expected + 3 * sigma;
    }
};

struct BenchReport {
    IndexParams params;
    std::uint64_t n;
    std::uint32_t planted;
    /// Fraction of planted base rows recovered by their query's candidate set.
    double recall;
    /// Closed-form expectation of the recall for the realized planted distances:
    /// E_r[1 - (1 - ((d-r)/d)^k)^L].
    double expected_recall;
    double mean_candidates;
    double build_seconds;
    double query_seconds;
    /// Strata at the realizable distances bracketing alpha on the bench
    /// dimension, plus one stratum on the nearest dimension where alpha is
    /// exactly realizable (so the ((1+alpha)/2)^k form applies verbatim).
    std::vector<CollisionStratum> collision;
};

/// Distances bracketing the target correlation: r = d(1-alpha)/2 rounded down
/// and up, with the up-rounding probability chosen so the expected correlation
/// is exactly alpha.
struct PlantedDistanceSplit {
    std::uint32_t low;
    std::uint32_t high;
    double high_probability;
};

PlantedDistanceSplit planted_distance_split(std::uint32_t dimension, double alpha);

/// Smallest dimension >= `at_least` on which correlation alpha corresponds to an
/// integer Hamming distance; 0 when none exists within the search span.
std::uint32_t alpha_exact_dimension(std::uint32_t at_least, double alpha);

BenchReport run_planted_benchmark(const BenchConfig& config);

} // namespace cubelsh
