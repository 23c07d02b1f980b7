#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cubelsh/bits.hpp"
#include "cubelsh/dataset.hpp"
#include "cubelsh/rng.hpp"

namespace cubelsh {

/// Parameters of a bit-sampling index over d-bit vectors: L tables, each keyed
/// by k coordinates sampled uniformly with replacement.
///
/// (alpha, beta) are the correlations the parameters were derived for; a Hamming
/// distance r corresponds to correlation 1 - 2r/d throughout.
struct IndexParams {
    IndexParams(std::uint32_t dimension, std::uint32_t key_bits, std::uint32_t table_count,
                std::uint64_t seed, double alpha, double beta);

    std::uint32_t dimension;
    std::uint32_t key_bits;    // k
    std::uint32_t table_count; // L
    std::uint64_t seed;
    double alpha;
    double beta;

    bool operator==(const IndexParams& other) const = default;
};

/// k = ceil(ln n / ln(1/p_beta)) with p_beta = (1+beta)/2, and L = ceil(n^rho)
/// with rho the closed-form bit-sampling exponent; both forced to at least 1.
IndexParams derive_params(std::uint64_t n, std::uint32_t dimension, double alpha, double beta,
                          std::uint64_t seed = 1);

struct QueryHit {
    std::uint64_t row;
    std::uint32_t distance;

    bool operator==(const QueryHit& other) const = default;
};

struct CollisionRate {
    double rate = 0.0;
    std::uint64_t events = 0;
    std::vector<double> per_table; // filled only when requested
};

/// Immutable after build; any number of threads may query concurrently.
class LshIndex {
public:
    /// Hashes every dataset row into all L tables. Coordinates are a pure
    /// function of (seed, d, k, L), so rebuilding with the same parameters
    /// reproduces the index bit for bit.
    static LshIndex build(const BinaryDataset& data, const IndexParams& params);

    const IndexParams& params() const { return params_; }
    const std::vector<std::vector<std::uint32_t>>& sampled_coordinates() const {
        return coordinates_;
    }

    /// The packed k-bit key of `v` in the given table.
    std::string key_for(const BitVector& v, std::uint32_t table) const;

    /// Union of the query's L buckets, deduplicated, annotated with exact
    /// Hamming distances against `data`, optionally filtered to distance <=
    /// radius, sorted by (distance, row).
    std::vector<QueryHit> query(const BinaryDataset& data, const BitVector& q,
                                std::optional<std::uint32_t> radius = std::nullopt) const;

    /// Fraction of (pair, table) events where both vectors share the table key.
    /// For pairs at exact Hamming distance r the expectation is ((d-r)/d)^k,
    /// i.e. ((1+a)/2)^k at the pair correlation a = 1 - 2r/d.
    CollisionRate measure_collision_rate(
        std::span<const std::pair<BitVector, BitVector>> pairs, bool per_table = false) const;

    std::uint64_t indexed_rows() const { return indexed_rows_; }

    bool operator==(const LshIndex& other) const {
        return params_ == other.params_ && coordinates_ == other.coordinates_ &&
               tables_ == other.tables_;
    }

private:
    friend void save_index(const LshIndex&, std::ostream&);
    friend LshIndex load_index(std::istream&);

    LshIndex() : params_(1, 1, 1, 0, 0.5, 0.0) {}

    IndexParams params_;
    std::vector<std::vector<std::uint32_t>> coordinates_; // [table][draw], 0-based
    std::vector<std::unordered_map<std::string, std::vector<std::uint64_t>>> tables_;
    std::uint64_t indexed_rows_ = 0;
};

/// Standard deviation of the measured collision rate for `pairs` pairs at exact
/// Hamming distance r evaluated against `tables` independently sampled tables.
/// Accounts for both the per-event Bernoulli noise and the shared
/// coordinate-sample noise within each table, so "within 3 sigma" bands are
/// calibrated for this estimator.
double collision_rate_sigma(std::uint32_t dimension, std::uint32_t distance, std::uint32_t key_bits,
                            std::uint64_t pairs, std::uint32_t tables);

/// Index file: magic "BLI1", u32 version, then three checksummed sections
/// (params, coordinates, tables). Integers little-endian; buckets are written
/// in sorted key order so equal indexes serialize to equal bytes.
void save_index(const LshIndex& index, std::ostream& out);
void save_index(const LshIndex& index, const std::string& path);
LshIndex load_index(std::istream& in);
LshIndex load_index(const std::string& path);

} // namespace cubelsh
