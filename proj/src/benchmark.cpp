#include "cubelsh/benchmark.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <unordered_set>

#include "cubelsh/errors.hpp"

namespace cubelsh {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

CollisionStratum measure_stratum(const LshIndex& index, std::uint32_t dimension,
                                 std::uint32_t distance, std::uint64_t pair_count, Rng& rng) {
    std::vector<std::pair<BitVector, BitVector>> pairs;
    pairs.reserve(pair_count);
    for (std::uint64_t i = 0; i < pair_count; ++i) {
        BitVector x = random_bit_vector(dimension, rng);
        BitVector y = flip_distinct_bits(x, distance, rng);
        pairs.emplace_back(std::move(x), std::move(y));
    }
    const CollisionRate rate = index.measure_collision_rate(pairs);

    CollisionStratum stratum;
    stratum.dimension = dimension;
    stratum.distance = distance;
    stratum.correlation = 1.0 - 2.0 * distance / dimension;
    stratum.expected = std::pow((1.0 + stratum.correlation) / 2.0, index.params().key_bits);
    stratum.measured = rate.rate;
    stratum.sigma = collision_rate_sigma(dimension, distance, index.params().key_bits, pair_count,
                                         index.params().table_count);
    stratum.events = rate.events;
    return stratum;
}

} // namespace

PlantedDistanceSplit planted_distance_split(std::uint32_t dimension, double alpha) {
    const double target = dimension * (1.0 - alpha) / 2.0;
    const auto low = static_cast<std::uint32_t>(std::floor(target));
    const auto high = static_cast<std::uint32_t>(std::ceil(target));
    return {low, high, target - low};
}

std::uint32_t alpha_exact_dimension(std::uint32_t at_least, double alpha) {
    for (std::uint32_t d = at_least; d < at_least + 4096; ++d) {
        const double target = d * (1.0 - alpha) / 2.0;
        if (std::abs(target - std::round(target)) < 1e-9 && std::round(target) >= 1.0) {
            return d;
        }
    }
    return 0;
}

BenchReport run_planted_benchmark(const BenchConfig& config) {
    if (config.planted == 0 || config.n < config.planted) {
        throw InvalidArgument("benchmark needs 1 <= planted <= n");
    }

    Rng root(config.seed);
    Rng data_rng = root.split();
    Rng plant_rng = root.split();
    Rng collision_rng = root.split();

    const BinaryDataset data = BinaryDataset::random(config.n, config.d, data_rng);
    const IndexParams params = derive_params(config.n, config.d, config.alpha, config.beta,
                                             config.seed);

    const auto build_start = std::chrono::steady_clock::now();
    const LshIndex index = LshIndex::build(data, params);
    const double build_seconds = seconds_since(build_start);

    // distinct base rows, each paired with a query at the planted distance;
    // sorted so the draw order is independent of hash-set iteration order
    std::unordered_set<std::uint64_t> chosen;
    while (chosen.size() < config.planted) {
        chosen.insert(plant_rng.next_below(config.n));
    }
    std::vector<std::uint64_t> bases(chosen.begin(), chosen.end());
    std::sort(bases.begin(), bases.end());
    const PlantedDistanceSplit split = planted_distance_split(config.d, config.alpha);

    struct PlantedQuery {
        std::uint64_t base;
        std::uint32_t distance;
        BitVector q;
    };
    std::vector<PlantedQuery> queries;
    queries.reserve(config.planted);
    double expected_recall = 0.0;
    for (std::uint64_t base : bases) {
        const std::uint32_t r =
            plant_rng.bernoulli(split.high_probability) ? split.high : split.low;
        queries.push_back({base, r, flip_distinct_bits(data.row(base), r, plant_rng)});
        const double per_table = std::pow((config.d - r) / static_cast<double>(config.d),
                                          params.key_bits);
        expected_recall += 1.0 - std::pow(1.0 - per_table, params.table_count);
    }
    expected_recall /= config.planted;

    std::uint64_t hits = 0;
    std::uint64_t candidates_total = 0;
    const auto query_start = std::chrono::steady_clock::now();
    for (const PlantedQuery& planted : queries) {
        const std::vector<QueryHit> result = index.query(data, planted.q);
        candidates_total += result.size();
        for (const QueryHit& hit : result) {
            if (hit.row == planted.base) {
                ++hits;
                break;
            }
        }
    }
    const double query_seconds = seconds_since(query_start);

    BenchReport report{params,
                       config.n,
                       config.planted,
                       static_cast<double>(hits) / config.planted,
                       expected_recall,
                       static_cast<double>(candidates_total) / config.planted,
                       build_seconds,
                       query_seconds,
                       {}};

    // collision model at the realizable distances around alpha
    report.collision.push_back(
        measure_stratum(index, config.d, split.low, config.collision_pairs, collision_rng));
    if (split.high != split.low) {
        report.collision.push_back(
            measure_stratum(index, config.d, split.high, config.collision_pairs, collision_rng));
    }

    // exact-alpha stratum: an empty index on the nearest dimension where alpha
    // maps to an integer distance, same (k, L, seed)
    if (const std::uint32_t exact_d = alpha_exact_dimension(config.d, config.alpha)) {
        const IndexParams exact_params(exact_d, params.key_bits, params.table_count, params.seed,
                                       params.alpha, params.beta);
        const LshIndex exact_index = LshIndex::build(BinaryDataset(exact_d), exact_params);
        const auto exact_r = static_cast<std::uint32_t>(
            std::llround(exact_d * (1.0 - config.alpha) / 2.0));
        report.collision.push_back(
            measure_stratum(exact_index, exact_d, exact_r, config.collision_pairs, collision_rng));
    }

    return report;
}

} // namespace cubelsh
